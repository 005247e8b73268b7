//! Point reduction decoding, maximum-likelihood baseline and cost bounds.
//!
//! Cost accounting: a side test is 5 operations, one reduction step (matrix
//! accumulation plus Möbius update) is 19, and the final evaluation of the
//! decoded word is 7. After a step through side `g`, the side of `g⁻¹` is not
//! tested in the next pass, so later passes cost at most 5(M−1).

use num_complex::Complex64;

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::fuchsian::{FuchsianGroup, GroupElement, MEMBERSHIP_TOL};

pub const SIDE_TEST_OPS: u64 = 5;
pub const STEP_OPS: u64 = 19;
pub const FINAL_OPS: u64 = 7;

/// Published CRP percentages for Γ(6,1), κ0 = 1, by code size.
pub const REFERENCE_CRP: [(usize, f64); 7] = [
    (4, 0.0),
    (8, 0.0),
    (16, 0.0),
    (64, 5.79),
    (256, 70.40),
    (512, 83.68),
    (1024, 91.08),
];

/// Published experimental depths ℓ(C) for Γ(6,1) codes, by code size.
pub const REFERENCE_DEPTHS: [(usize, usize); 9] = [
    (4, 1),
    (8, 1),
    (16, 2),
    (32, 3),
    (64, 3),
    (128, 4),
    (256, 5),
    (512, 5),
    (1024, 6),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub circle_checks: u64,
    pub step3_count: u64,
    /// Comparisons spent choosing among several violated sides. Kept apart
    /// from `total_ops`.
    pub selection_ops: u64,
    pub total_ops: u64,
}

impl OpCounter {
    fn settle(&mut self, with_final: bool) {
        self.total_ops = SIDE_TEST_OPS * self.circle_checks
            + STEP_OPS * self.step3_count
            + if with_final { FINAL_OPS } else { 0 };
    }
}

/// Outcome of a reduction run.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub point: Complex64,
    /// Accumulated product with `t(z) = point`.
    pub t: GroupElement,
    pub counter: OpCounter,
    /// False when the step budget ran out before reaching the domain.
    pub converged: bool,
}

/// Reduction with a step budget. Each pass tests every side except the one
/// just crossed and applies the most deeply violated side.
fn reduce(z: Complex64, group: &FuchsianGroup, max_steps: usize) -> Result<Reduction> {
    let mut z = z;
    let mut t = GroupElement::identity(group.radicand);
    let mut counter = OpCounter::default();
    let mut skip: Option<usize> = None;
    loop {
        let mut best: Option<(usize, f64)> = None;
        let mut violated = 0u64;
        for (i, side) in group.sides.iter().enumerate() {
            if skip == Some(i) {
                continue;
            }
            counter.circle_checks += 1;
            if let Some(depth) = side.violation(z, MEMBERSHIP_TOL) {
                violated += 1;
                if best.is_none_or(|(_, b)| depth > b) {
                    best = Some((i, depth));
                }
            }
        }
        counter.selection_ops += violated.saturating_sub(1);
        let Some((i, _)) = best else {
            counter.settle(false);
            return Ok(Reduction {
                point: z,
                t,
                counter,
                converged: true,
            });
        };
        if counter.step3_count as usize >= max_steps {
            counter.settle(false);
            return Ok(Reduction {
                point: z,
                t,
                counter,
                converged: false,
            });
        }
        let side = &group.sides[i];
        z = side.element.mobius(z)?;
        t = side.element.mul(&t);
        counter.step3_count += 1;
        skip = Some(side.paired);
    }
}

/// Reduces `z` into the closed fundamental domain.
///
/// `total_ops` excludes the final 7 operations of a decode.
pub fn pra_reduce(z: Complex64, group: &FuchsianGroup, max_iter: usize) -> Result<Reduction> {
    if z.im.is_nan() || z.im <= 0.0 {
        return Err(Error::Domain(format!("{z} is not in the upper half-plane")));
    }
    let r = reduce(z, group, max_iter)?;
    if !r.converged {
        return Err(Error::NonTermination(max_iter));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeOptions {
    pub max_iter: usize,
    /// Give up after ℓ(C) steps: deeper tiles contain no codeword.
    pub cap_at_depth: bool,
    /// On failure, fall back to the nearest codeword.
    pub nearest_fallback: bool,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            max_iter: 1000,
            cap_at_depth: true,
            nearest_fallback: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecodeResult {
    /// Codeword index, `None` on failure.
    pub index: Option<usize>,
    pub reduced_point: Complex64,
    pub t: GroupElement,
    /// +1 when `y` was reduced directly, −1 when `−y` was.
    pub sign_branch: i8,
    pub counter: OpCounter,
    pub used_fallback: bool,
}

/// Decodes a received sample with the point reduction algorithm.
///
/// `Im y = 0` takes the upper branch.
pub fn decode(y: Complex64, code: &Codebook, opts: &DecodeOptions) -> DecodeResult {
    let group = code.group();
    let sign_branch: i8 = if y.im < 0.0 { -1 } else { 1 };
    let z = if sign_branch < 0 { -y } else { y };
    let budget = if opts.cap_at_depth {
        opts.max_iter.min(code.depth())
    } else {
        opts.max_iter
    };
    let reduction = reduce(z, group, budget).unwrap_or_else(|_| Reduction {
        point: z,
        t: GroupElement::identity(group.radicand),
        counter: OpCounter::default(),
        converged: false,
    });
    let mut counter = reduction.counter;
    let base = if reduction.converged {
        code.index_of(&reduction.t.inverse())
    } else {
        None
    };
    let mut index = base.map(|i| {
        if sign_branch < 0 {
            i + code.half_len()
        } else {
            i
        }
    });
    counter.settle(index.is_some());
    let mut used_fallback = false;
    if index.is_none() && opts.nearest_fallback {
        let (i, ops) = ml_decode(y, &code.points());
        index = Some(i);
        counter.total_ops += ops;
        used_fallback = true;
    }
    DecodeResult {
        index,
        reduced_point: reduction.point,
        t: reduction.t,
        sign_branch,
        counter,
        used_fallback,
    }
}

/// Exhaustive nearest-point search; ties go to the lowest index.
///
/// Returns the index and the nominal cost 5|C| − 1.
pub fn ml_decode(y: Complex64, points: &[Complex64]) -> (usize, u64) {
    assert!(!points.is_empty(), "ML decoding needs at least one point");
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        let d = (y - p).norm_sqr();
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    (best, ml_ops(points.len()))
}

pub fn ml_ops(size: usize) -> u64 {
    5 * size as u64 - 1
}

/// Worst-case decode cost ℓ(5M+14) + 5M + 7.
pub fn pra_bound(depth: usize, m: usize) -> u64 {
    let (l, m) = (depth as u64, m as u64);
    l * (5 * m + 14) + 5 * m + 7
}

/// Depth bound κ0(log2(|C|+2) − 2).
pub fn depth_bound(size: usize, kappa0: f64) -> f64 {
    kappa0 * ((size as f64 + 2.0).log2() - 2.0)
}

/// Cost bound with the logarithmic depth bound substituted for ℓ.
pub fn r_bar(size: usize, m: usize, kappa0: f64) -> f64 {
    let m = m as f64;
    (5.0 * m + 14.0) * depth_bound(size, kappa0) + 5.0 * m + 7.0
}

/// Complexity reduction percentage relative to ML; negative when ML is cheaper.
pub fn crp(size: usize, m: usize, kappa0: f64) -> f64 {
    let ml = ml_ops(size) as f64;
    100.0 * (ml - r_bar(size, m, kappa0)) / ml
}
