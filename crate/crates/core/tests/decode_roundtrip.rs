use fuchsian_codes::codebook::{bd2_min, default_code, reference_code, Codebook, REFERENCE_SIZES};
use fuchsian_codes::decode::{decode, ml_decode, pra_bound, DecodeOptions};
use fuchsian_codes::fuchsian::{catalog, SUPPORTED_GROUPS};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn reference_codes() -> Vec<Codebook> {
    SUPPORTED_GROUPS
        .iter()
        .flat_map(|&d| {
            REFERENCE_SIZES
                .iter()
                .map(move |&q| reference_code(catalog(d).unwrap(), q).unwrap())
        })
        .collect()
}

fn check_noiseless(code: &Codebook) {
    let opts = DecodeOptions::default();
    let bound = pra_bound(code.depth(), code.group().m());
    for e in code.entries() {
        let r = decode(e.point, code, &opts);
        let label = format!("D={} q={} {}", code.group().d, code.len(), e.element);
        assert_eq!(r.index, Some(e.index), "{label}");
        assert_eq!(r.counter.step3_count as usize, e.depth, "{label}");
        assert!(r.counter.total_ops <= bound, "{label}");
        assert!(r.t.inverse().same_class(&e.element), "{label}");
    }
}

#[test]
fn reference_codes_round_trip() {
    for code in reference_codes() {
        check_noiseless(&code);
    }
}

#[test]
fn larger_codes_round_trip() {
    for (d, q) in [(6, 32), (6, 64), (6, 128), (10, 32), (15, 32)] {
        check_noiseless(&default_code(catalog(d).unwrap(), q).unwrap());
    }
}

#[test]
fn reference_depths() {
    let g = catalog(6).unwrap();
    let depths: Vec<usize> = REFERENCE_SIZES
        .iter()
        .map(|&q| reference_code(g, q).unwrap().depth())
        .collect();
    assert_eq!(depths, vec![1, 1, 2]);
}

#[test]
fn ml_matches_rescan() {
    let pts = reference_code(catalog(6).unwrap(), 16).unwrap().points();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let y = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-2.5..2.5));
        let (i, _) = ml_decode(y, &pts);
        let best = pts
            .iter()
            .map(|p| (y - p).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(((y - pts[i]).norm() - best).abs() < 1e-15);
        assert!(pts[..i].iter().all(|p| (y - p).norm() > best));
    }
}

fn code_strategy() -> impl Strategy<Value = (usize, usize)> {
    (0..SUPPORTED_GROUPS.len() * REFERENCE_SIZES.len()).prop_flat_map(|c| (Just(c), 0..16usize))
}

proptest! {
    #[test]
    fn inside_border_decodes_correctly((c, k) in code_strategy(), angle in 0.0f64..std::f64::consts::TAU, frac in 0.0f64..0.99) {
        let codes = reference_codes();
        let code = &codes[c];
        let e = &code.entries()[k % code.len()];
        let radius = bd2_min(code).unwrap().sqrt() * frac;
        let y = e.point + Complex64::from_polar(radius, angle);
        let r = decode(y, code, &DecodeOptions::default());
        prop_assert_eq!(r.index, Some(e.index));
    }

    #[test]
    fn ops_never_exceed_bound(c in 0..9usize, x in -3.0f64..3.0, y in -4.0f64..4.0) {
        let codes = reference_codes();
        let code = &codes[c];
        let r = decode(Complex64::new(x, y), code, &DecodeOptions::default());
        prop_assert!(r.counter.total_ops <= pra_bound(code.depth(), code.group().m()));
    }
}
