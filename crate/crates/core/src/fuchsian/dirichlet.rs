//! Dirichlet domain centred at a point τ, from a finite piece of the orbit.
//!
//! Each element A contributes the half-plane of points at least as close to τ
//! as to A⁻¹τ. In the Klein model centred at τ these half-planes are straight
//! half-planes, so the domain is a convex polygon obtained by clipping.

use std::collections::HashSet;

use num_complex::Complex64;

use super::geometry::hyperbolic_distance;
use super::{Boundary, GroupElement, Keep, Side};
use crate::error::{Error, Result};
use crate::exact::QuadMatrix;

struct HalfPlane {
    normal: Complex64,
    offset: f64,
}

/// All classes mod ±Id reachable by words of length ≤ `max_len`, identity
/// excluded, in breadth-first order with letters g1, g1⁻¹, g2, g2⁻¹, ….
fn orbit_elements(generators: &[GroupElement], max_len: usize) -> Vec<GroupElement> {
    let radicand = generators[0].matrix().radicand();
    let letters: Vec<GroupElement> = generators
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    let id = GroupElement::identity(radicand);
    let mut seen: HashSet<QuadMatrix> = HashSet::from([id.key()]);
    let mut out = Vec::new();
    let mut frontier = vec![id];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for a in &frontier {
            for l in &letters {
                let b = a.mul(l);
                if seen.insert(b.key()) {
                    next.push(b);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn to_disk(z: Complex64, tau: Complex64) -> Complex64 {
    (z - tau) / (z - tau.conj())
}

/// Clips a polygon (vertex, owner of the edge leaving it) by `re(k·n̄) ≤ t`.
fn clip(
    poly: Vec<(Complex64, Option<usize>)>,
    h: &HalfPlane,
    owner: usize,
) -> Vec<(Complex64, Option<usize>)> {
    let f = |k: Complex64| (k * h.normal.conj()).re - h.offset;
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (p, op) = poly[i];
        let (q, _) = poly[(i + 1) % n];
        let (fp, fq) = (f(p), f(q));
        if fp <= 0.0 {
            out.push((p, op));
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let x = p + (q - p) * (fp / (fp - fq));
            out.push((x, if fp <= 0.0 { Some(owner) } else { op }));
        }
    }
    out
}

/// Geodesic bisector of τ and w in the upper half-plane, oriented to keep τ.
///
/// With τ = a+bi and w = c+di, z is at least as close to τ as to w iff
/// (d−b)|z|² − 2x(ad−bc) + d|τ|² − b|w|² ≤ 0.
fn bisector(tau: Complex64, w: Complex64) -> (Boundary, Keep) {
    let (a, b, c, d) = (tau.re, tau.im, w.re, w.im);
    let lin = a * d - b * c;
    let constant = d * tau.norm_sqr() - b * w.norm_sqr();
    if (d - b).abs() < 1e-14 * b.max(d) {
        let x = constant / (2.0 * lin);
        let keep = if lin > 0.0 { Keep::Right } else { Keep::Left };
        return (Boundary::Line { x }, keep);
    }
    let center = lin / (d - b);
    let radius = (center * center - constant / (d - b)).sqrt();
    let keep = if d > b {
        Keep::Interior
    } else {
        Keep::Exterior
    };
    (Boundary::Circle { center, radius }, keep)
}

pub(super) fn dirichlet_sides(
    generators: &[GroupElement],
    tau: Complex64,
    max_len: usize,
) -> Result<Vec<Side>> {
    let elements = orbit_elements(generators, max_len);
    let mut planes = Vec::with_capacity(elements.len());
    for a in &elements {
        let w = a.inverse().mobius(tau)?;
        let rho = hyperbolic_distance(w, tau);
        let k = to_disk(w, tau);
        planes.push(HalfPlane {
            normal: k / k.norm(),
            offset: (rho / 2.0).tanh(),
        });
    }
    let mut poly: Vec<(Complex64, Option<usize>)> =
        [(-2.0, -2.0), (2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)]
            .into_iter()
            .map(|(x, y)| (Complex64::new(x, y), None))
            .collect();
    for (i, h) in planes.iter().enumerate() {
        poly = clip(poly, h, i);
    }
    if poly.iter().any(|(k, _)| k.norm() >= 1.0 - 1e-9) {
        return Err(Error::Domain(
            "orbit too small: Dirichlet polygon is not compact".into(),
        ));
    }
    let n = poly.len();
    let mut owners: Vec<usize> = Vec::new();
    for i in 0..n {
        if (poly[i].0 - poly[(i + 1) % n].0).norm() <= 1e-9 {
            continue;
        }
        let o = poly[i]
            .1
            .ok_or_else(|| Error::Domain("polygon edge without an owner".into()))?;
        if !owners.contains(&o) {
            owners.push(o);
        }
    }
    owners.sort_unstable();

    let chosen: Vec<&GroupElement> = owners.iter().map(|&o| &elements[o]).collect();
    let mut sides = Vec::with_capacity(chosen.len());
    for a in &chosen {
        let inv = a.inverse();
        let paired = chosen
            .iter()
            .position(|b| b.same_class(&inv))
            .ok_or_else(|| Error::Domain(format!("side {a} has no paired side")))?;
        let (boundary, keep) = bisector(tau, inv.mobius(tau)?);
        sides.push(Side {
            element: (*a).clone(),
            boundary,
            keep,
            paired,
        });
    }
    Ok(sides)
}
