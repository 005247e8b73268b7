//! AWGN channel and Monte Carlo symbol error rate measurement.
//!
//! SNR convention: SNR = P_av / σ², with σ² the total complex noise variance,
//! i.e. σ²/2 per real dimension.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::erf::erfc;

use crate::codebook::{p_av, Codebook, QamConstellation};
use crate::decode::{decode, ml_decode, DecodeOptions};
use crate::error::{Error, Result};

/// Trials per independently seeded block.
pub const DEFAULT_PARTITION: u64 = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Pra,
    Ml,
}

impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pra" => Ok(DecoderKind::Pra),
            "ml" => Ok(DecoderKind::Ml),
            _ => Err(Error::Parse(format!("unknown decoder {s:?} (pra, ml)"))),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::Pra => "pra",
            DecoderKind::Ml => "ml",
        })
    }
}

/// What is transmitted.
#[derive(Clone, Debug)]
pub enum Constellation {
    Nuf(Codebook),
    Qam(QamConstellation),
}

impl Constellation {
    pub fn points(&self) -> Vec<Complex64> {
        match self {
            Constellation::Nuf(c) => c.points(),
            Constellation::Qam(q) => q.points.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Constellation::Nuf(c) => format!("{}-nuf-d{}", c.len(), c.group().d),
            Constellation::Qam(q) => format!("{}-qam", q.points.len()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChannelConfig {
    pub snr_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub decoder: DecoderKind,
    pub partition: u64,
    pub parallel: bool,
    pub decode: DecodeOptions,
}

impl ChannelConfig {
    pub fn new(snr_db: Vec<f64>, trials: u64, seed: u64, decoder: DecoderKind) -> Self {
        ChannelConfig {
            snr_db,
            trials,
            seed,
            decoder,
            partition: DEFAULT_PARTITION,
            parallel: true,
            decode: DecodeOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if self.snr_db.is_empty() {
            return Err(Error::Config("SNR list is empty".into()));
        }
        if self.partition == 0 {
            return Err(Error::Config("partition size must be positive".into()));
        }
        if self.snr_db.len() as u64 > u32::MAX as u64
            || self.trials / self.partition >= u32::MAX as u64
        {
            return Err(Error::Config("too many SNR points or partitions".into()));
        }
        Ok(())
    }
}

/// One SNR point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimRecord {
    pub snr_db: f64,
    pub sigma: f64,
    pub trials: u64,
    pub symbol_errors: u64,
    pub ser: f64,
    pub mean_ops: f64,
    pub max_ops: u64,
    pub mean_iters: f64,
    /// Decodes that returned no codeword (already counted as errors).
    pub failures: u64,
    pub decoder: DecoderKind,
    pub constellation: String,
    /// Transmissions per codeword index.
    #[serde(skip)]
    pub usage: Vec<u64>,
}

/// σ from `σ² = P_av / 10^{SNR/10}`.
pub fn snr_to_sigma(p_av: f64, snr_db: f64) -> f64 {
    (p_av / 10f64.powf(snr_db / 10.0)).sqrt()
}

/// Complex Gaussian noise with variance σ²/2 per component.
pub fn awgn_sample<R: Rng + ?Sized>(sigma: f64, rng: &mut R) -> Complex64 {
    if sigma == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = sigma / std::f64::consts::SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Gaussian tail `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Symbol error rate of 4-QAM with ML detection: 1 − (1 − Q(√SNR))².
pub fn qpsk_ser(snr_db: f64) -> f64 {
    let snr = 10f64.powf(snr_db / 10.0);
    let p = q_function(snr.sqrt());
    1.0 - (1.0 - p) * (1.0 - p)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    errors: u64,
    failures: u64,
    ops_sum: u64,
    ops_max: u64,
    iters_sum: u64,
    usage: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.errors += other.errors;
        self.failures += other.failures;
        self.ops_sum += other.ops_sum;
        self.ops_max = self.ops_max.max(other.ops_max);
        self.iters_sum += other.iters_sum;
        if self.usage.is_empty() {
            self.usage = other.usage;
        } else {
            for (a, b) in self.usage.iter_mut().zip(other.usage) {
                *a += b;
            }
        }
        self
    }
}

struct Run<'a> {
    constellation: &'a Constellation,
    points: Vec<Complex64>,
    config: &'a ChannelConfig,
}

impl Run<'_> {
    fn partition(&self, snr_idx: usize, part: u64, sigma: f64) -> Tally {
        let cfg = self.config;
        let start = part * cfg.partition;
        let count = cfg.partition.min(cfg.trials - start);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(((snr_idx as u64) << 32) | part);
        let n = self.points.len();
        let mut t = Tally {
            usage: vec![0; n],
            ..Tally::default()
        };
        for _ in 0..count {
            let tx = rng.random_range(0..n);
            let y = self.points[tx] + awgn_sample(sigma, &mut rng);
            let (rx, ops, iters) = match (cfg.decoder, self.constellation) {
                (DecoderKind::Pra, Constellation::Nuf(code)) => {
                    let r = decode(y, code, &cfg.decode);
                    if r.index.is_none() {
                        t.failures += 1;
                    }
                    (r.index, r.counter.total_ops, r.counter.step3_count)
                }
                _ => {
                    let (i, ops) = ml_decode(y, &self.points);
                    (Some(i), ops, 0)
                }
            };
            t.usage[tx] += 1;
            if rx != Some(tx) {
                t.errors += 1;
            }
            t.ops_sum += ops;
            t.ops_max = t.ops_max.max(ops);
            t.iters_sum += iters;
        }
        t
    }
}

/// Runs the sweep. Trials are split into fixed blocks, each with its own
/// ChaCha stream derived from (seed, SNR index, block index), so serial and
/// parallel runs produce identical records.
pub fn monte_carlo(
    config: &ChannelConfig,
    constellation: &Constellation,
) -> Result<Vec<SimRecord>> {
    config.validate()?;
    if config.decoder == DecoderKind::Pra && matches!(constellation, Constellation::Qam(_)) {
        return Err(Error::Unsupported(
            "point reduction needs a Fuchsian codebook".into(),
        ));
    }
    let run = Run {
        constellation,
        points: constellation.points(),
        config,
    };
    let energy = p_av(&run.points);
    let parts = config.trials.div_ceil(config.partition);
    let mut records = Vec::with_capacity(config.snr_db.len());
    for (si, &snr) in config.snr_db.iter().enumerate() {
        let sigma = snr_to_sigma(energy, snr);
        let tally = if config.parallel {
            (0..parts)
                .into_par_iter()
                .map(|p| run.partition(si, p, sigma))
                .reduce(Tally::default, Tally::merge)
        } else {
            (0..parts)
                .map(|p| run.partition(si, p, sigma))
                .fold(Tally::default(), Tally::merge)
        };
        let n = config.trials as f64;
        records.push(SimRecord {
            snr_db: snr,
            sigma,
            trials: config.trials,
            symbol_errors: tally.errors,
            ser: tally.errors as f64 / n,
            mean_ops: tally.ops_sum as f64 / n,
            max_ops: tally.ops_max,
            mean_iters: tally.iters_sum as f64 / n,
            failures: tally.failures,
            decoder: config.decoder,
            constellation: constellation.label(),
            usage: tally.usage,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{qam, reference_code};
    use crate::fuchsian::catalog;

    #[test]
    fn sigma_convention() {
        assert!((snr_to_sigma(2.0, 0.0).powi(2) - 2.0).abs() < 1e-12);
        assert!((snr_to_sigma(2.0, 10.0).powi(2) - 0.2).abs() < 1e-12);
        assert!((snr_to_sigma(0.191_668_6, 20.0).powi(2) - 0.001_916_686).abs() < 1e-9);
    }

    #[test]
    fn zero_sigma_is_silent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(awgn_sample(0.0, &mut rng), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn noise_stream_is_reproducible() {
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            (0..16)
                .map(|_| awgn_sample(1.0, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn q_function_values() {
        assert!((q_function(0.0) - 0.5).abs() < 1e-15);
        let q1 = q_function(1.0);
        // statrs erfc is accurate to about 1e-10 here
        assert!((q1 - 0.158_655_253_931_457_07).abs() < 1e-10, "{q1}");
    }

    #[test]
    fn pra_on_qam_is_rejected() {
        let cfg = ChannelConfig::new(vec![10.0], 10, 1, DecoderKind::Pra);
        let c = Constellation::Qam(qam(1).unwrap());
        assert!(matches!(monte_carlo(&cfg, &c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bad_configs() {
        let c = Constellation::Qam(qam(1).unwrap());
        let cfg = ChannelConfig::new(vec![], 10, 1, DecoderKind::Ml);
        assert!(matches!(monte_carlo(&cfg, &c), Err(Error::Config(_))));
        let cfg = ChannelConfig::new(vec![1.0], 0, 1, DecoderKind::Ml);
        assert!(matches!(monte_carlo(&cfg, &c), Err(Error::Config(_))));
    }

    #[test]
    fn noiseless_nuf_has_no_errors() {
        let code = reference_code(catalog(6).unwrap(), 16).unwrap();
        let cfg = ChannelConfig::new(vec![f64::INFINITY], 5000, 3, DecoderKind::Pra);
        let recs = monte_carlo(&cfg, &Constellation::Nuf(code)).unwrap();
        assert_eq!(recs[0].sigma, 0.0);
        assert_eq!(recs[0].symbol_errors, 0);
        assert!(recs[0].max_ops <= 110);
    }
}
