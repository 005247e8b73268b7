use num_complex::Complex64;

use super::Codebook;
use crate::error::Result;

/// Average energy `(1/|C|) Σ |x|²`.
pub fn p_av(points: &[Complex64]) -> f64 {
    points.iter().map(|p| p.norm_sqr()).sum::<f64>() / points.len() as f64
}

/// Smallest squared distance between distinct points; infinite for fewer than two.
pub fn d2_min(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min((p - q).norm_sqr());
        }
    }
    best
}

/// Smallest squared distance from a codeword to the border of its tile.
///
/// The border of the tile γ(F) around γ(τ) is bounded by the images γ(s) of
/// the domain sides; the real axis is added since it separates the two sign
/// branches. Full circles are used, not only the arcs on the tile.
/// Negation maps the lower entries' tiles to the upper ones, so only upper
/// entries are scanned.
pub fn bd2_min(code: &Codebook) -> Result<f64> {
    let mut best = f64::INFINITY;
    for e in code.upper() {
        let x = e.point;
        let mut d = x.im.abs();
        for s in &code.group().sides {
            d = d.min(s.image(&e.element)?.distance(x));
        }
        best = best.min(d * d);
    }
    Ok(best)
}

/// Normalized minimum distance `d²_min / P_av`.
pub fn delta_ml(points: &[Complex64]) -> f64 {
    d2_min(points) / p_av(points)
}

/// Normalized border distance `bd²_min / P_av`.
pub fn delta_pra(code: &Codebook) -> Result<f64> {
    Ok(bd2_min(code)? / p_av(&code.points()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{build_code, qam, reference_code};
    use crate::fuchsian::{catalog, Word};

    #[test]
    fn qam_metrics() {
        let q = qam(1).unwrap().points;
        assert_eq!(p_av(&q), 2.0);
        assert_eq!(d2_min(&q), 4.0);
        assert_eq!(delta_ml(&q), 2.0);
    }

    #[test]
    fn four_nuf_metrics() {
        let code = reference_code(catalog(6).unwrap(), 4).unwrap();
        let pts = code.points();
        assert!((p_av(&pts) - 0.191_668_429).abs() < 1e-8);
        assert!((d2_min(&pts) - 0.230_223_034).abs() < 1e-8);
        assert!((delta_ml(&pts) - 1.2011).abs() < 1e-4);
    }

    #[test]
    fn single_tile_border() {
        let g = catalog(6).unwrap();
        let code = build_code(g, g.tau, &[Word::identity()]).unwrap();
        assert_eq!(d2_min(&code.points()), 1.0);
        let bd = bd2_min(&code).unwrap();
        assert!((bd - 0.010_147).abs() < 1e-5, "{bd}");
    }

    #[test]
    fn scale_invariance() {
        let pts = reference_code(catalog(6).unwrap(), 8).unwrap().points();
        let scaled: Vec<Complex64> = pts.iter().map(|p| p * 3.7).collect();
        assert!((delta_ml(&pts) - delta_ml(&scaled)).abs() < 1e-12);
    }
}
