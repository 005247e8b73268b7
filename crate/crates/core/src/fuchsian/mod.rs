//! Arithmetic Fuchsian groups Γ(D,1): generators, fundamental domains, depth.

mod catalog;
mod dirichlet;
pub mod geometry;
mod words;

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

pub use catalog::{catalog, DomainKind, FuchsianGroup, Relation, SUPPORTED_GROUPS};
pub use geometry::{hyperbolic_distance, isometric_circle, mobius, GenCircle, IsometricCircle};
pub use words::{Letter, Word};

use crate::decode::pra_reduce;
use crate::error::{Error, Result};
use crate::exact::QuadMatrix;

/// A point within this Euclidean distance of a side counts as on the closed domain.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Default cap on κ for [`enumerate_sk`].
pub const DEPTH_CAP: usize = 8;

/// Iteration guard used when measuring depth.
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Exact determinant-one matrix with the word that produced it.
#[derive(Clone, Debug)]
pub struct GroupElement {
    matrix: QuadMatrix,
    word: Word,
    float: [f64; 4],
}

impl GroupElement {
    pub fn new(matrix: QuadMatrix, word: Word) -> Result<Self> {
        if !matrix.has_unit_det() {
            return Err(Error::Domain(format!(
                "{matrix} does not have determinant 1"
            )));
        }
        Ok(GroupElement::trusted(matrix, word))
    }

    /// Skips the determinant check; for products and inverses of group elements.
    fn trusted(matrix: QuadMatrix, word: Word) -> Self {
        let float = matrix.to_f64();
        GroupElement {
            matrix,
            word,
            float,
        }
    }

    pub fn identity(radicand: u32) -> Self {
        GroupElement::trusted(QuadMatrix::identity(radicand), Word::identity())
    }

    pub fn matrix(&self) -> &QuadMatrix {
        &self.matrix
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Entries `[a11, a12, a21, a22]` in double precision.
    pub fn entries(&self) -> &[f64; 4] {
        &self.float
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement::trusted(&self.matrix * &rhs.matrix, self.word.concat(&rhs.word))
    }

    pub fn inverse(&self) -> GroupElement {
        let m = self
            .matrix
            .inverse()
            .expect("group elements have determinant 1");
        GroupElement::trusted(m, self.word.inverse())
    }

    pub fn mobius(&self, z: Complex64) -> Result<Complex64> {
        mobius(&self.float, z)
    }

    pub fn isometric_circle(&self) -> Result<IsometricCircle> {
        isometric_circle(&self.float)
    }

    /// Canonical representative of the class modulo ±Id.
    pub fn key(&self) -> QuadMatrix {
        self.matrix.canonical()
    }

    pub fn same_class(&self, other: &GroupElement) -> bool {
        self.matrix.eq_up_to_sign(&other.matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity_up_to_sign()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// Geodesic carrying a side of the fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    /// Circle centered on the real axis.
    Circle { center: f64, radius: f64 },
    /// Vertical line `Re z = x`.
    Line { x: f64 },
}

/// Which side of the boundary belongs to the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    Exterior,
    Interior,
    Left,
    Right,
}

/// One side of the fundamental domain. A point violating it is moved back
/// toward the domain by `element`.
#[derive(Clone, Debug)]
pub struct Side {
    pub element: GroupElement,
    pub boundary: Boundary,
    pub keep: Keep,
    /// Index of the side carrying `element⁻¹`.
    pub paired: usize,
}

impl Side {
    /// How far past the side `z` lies, if it violates it by more than `tol`.
    ///
    /// The returned value is the hyperbolic `sinh` distance to the geodesic
    /// times `Im z`, so values for one point are directly comparable.
    pub fn violation(&self, z: Complex64, tol: f64) -> Option<f64> {
        match (self.boundary, self.keep) {
            (Boundary::Circle { center, radius }, keep) => {
                let dist = (z - center).norm();
                let outside = match keep {
                    Keep::Exterior => dist < radius - tol,
                    Keep::Interior => dist > radius + tol,
                    _ => unreachable!("circle sides keep interior or exterior"),
                };
                outside.then(|| (dist * dist - radius * radius).abs() / (2.0 * radius))
            }
            (Boundary::Line { x }, keep) => {
                let outside = match keep {
                    Keep::Left => z.re > x + tol,
                    Keep::Right => z.re < x - tol,
                    _ => unreachable!("line sides keep left or right"),
                };
                outside.then(|| (z.re - x).abs())
            }
        }
    }

    /// Boundary as a curve in ℂ.
    pub fn curve(&self) -> GenCircle {
        match self.boundary {
            Boundary::Circle { center, radius } => GenCircle::Circle {
                center: Complex64::new(center, 0.0),
                radius,
            },
            Boundary::Line { x } => GenCircle::Line {
                point: Complex64::new(x, 0.0),
                direction: Complex64::new(0.0, 1.0),
            },
        }
    }

    /// Three points of the geodesic in the open upper half-plane.
    pub fn samples(&self) -> [Complex64; 3] {
        match self.boundary {
            Boundary::Circle { center, radius } => [0.4, 1.6, 2.7]
                .map(|t: f64| Complex64::new(center + radius * t.cos(), radius * t.sin())),
            Boundary::Line { x } => [0.5, 1.0, 2.0].map(|y| Complex64::new(x, y)),
        }
    }

    /// Image of the side's geodesic under `g`.
    pub fn image(&self, g: &GroupElement) -> Result<GenCircle> {
        geometry::image_of(g.entries(), self.samples())
    }
}

/// Membership in the closed fundamental domain. On failure the first violated
/// side in catalog order is returned.
pub fn in_fundamental_domain(
    z: Complex64,
    group: &FuchsianGroup,
    tol: f64,
) -> (bool, Option<usize>) {
    match group
        .sides
        .iter()
        .position(|s| s.violation(z, tol).is_some())
    {
        Some(i) => (false, Some(i)),
        None => (true, None),
    }
}

/// Number of reduction steps needed to bring `z` into the domain.
pub fn depth_of_point(z: Complex64, group: &FuchsianGroup) -> Result<usize> {
    Ok(pra_reduce(z, group, DEFAULT_MAX_ITER)?.counter.step3_count as usize)
}

/// Depth of `g`: reduction steps for `g(probe)`. The reduction must land back
/// on `probe`, otherwise the probe was not interior.
pub fn depth(g: &GroupElement, group: &FuchsianGroup, probe: Complex64) -> Result<usize> {
    let r = pra_reduce(g.mobius(probe)?, group, DEFAULT_MAX_ITER)?;
    if (r.point - probe).norm() > 1e-7 {
        return Err(Error::Domain(format!(
            "reduction of {g}({probe}) ended at {} instead of the probe",
            r.point
        )));
    }
    Ok(r.counter.step3_count as usize)
}

/// Elements of depth at most κ, grouped by depth, with the counts θ.
#[derive(Clone, Debug)]
pub struct SkEnumeration {
    /// `(element, depth)` in discovery order: by depth, then by generation order.
    pub elements: Vec<(GroupElement, usize)>,
    /// `theta[k]` = number of classes mod ±Id with depth ≤ k.
    pub theta: Vec<usize>,
}

/// Breadth-first enumeration of S^κ, depths measured at the group's center.
pub fn enumerate_sk(group: &FuchsianGroup, kappa: usize) -> Result<SkEnumeration> {
    enumerate_sk_capped(group, kappa, DEPTH_CAP)
}

pub fn enumerate_sk_capped(
    group: &FuchsianGroup,
    kappa: usize,
    cap: usize,
) -> Result<SkEnumeration> {
    if kappa > cap {
        return Err(Error::Cap {
            requested: kappa,
            cap,
        });
    }
    let id = GroupElement::identity(group.radicand);
    let mut seen: HashMap<QuadMatrix, usize> = HashMap::new();
    seen.insert(id.key(), 0);
    let mut elements = vec![(id.clone(), 0)];
    let mut theta = vec![1];
    let mut level = vec![id];
    for k in 1..=kappa {
        let mut next = Vec::new();
        for a in &level {
            for side in &group.sides {
                let b = side.element.mul(a);
                let key = b.key();
                if seen.contains_key(&key) {
                    continue;
                }
                let d = depth(&b, group, group.tau)?;
                seen.insert(key, d);
                if d == k {
                    next.push(b);
                }
            }
        }
        elements.extend(next.iter().map(|g| (g.clone(), k)));
        theta.push(theta[k - 1] + next.len());
        level = next;
    }
    Ok(SkEnumeration { elements, theta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g6() -> &'static FuchsianGroup {
        catalog(6).unwrap()
    }

    #[test]
    fn membership_examples() {
        let g = g6();
        assert_eq!(
            in_fundamental_domain(c(0.0, 0.5), g, MEMBERSHIP_TOL),
            (true, None)
        );
        assert_eq!(
            in_fundamental_domain(c(0.0, 2.0), g, MEMBERSHIP_TOL),
            (false, Some(4))
        );
        assert_eq!(
            in_fundamental_domain(c(-0.5, 0.3), g, MEMBERSHIP_TOL),
            (false, Some(1))
        );
    }

    #[test]
    fn boundary_counts_as_inside() {
        let g = g6();
        // on the unit circle and outside all four small circles
        assert!(in_fundamental_domain(c(0.0, 1.0), g, MEMBERSHIP_TOL).0);
    }

    #[test]
    fn depths() {
        let g = g6();
        let id = GroupElement::identity(3);
        assert_eq!(depth(&id, g, g.tau).unwrap(), 0);
        let g3 = g.element(&"g3".parse().unwrap()).unwrap();
        assert_eq!(depth(&g3, g, g.tau).unwrap(), 1);
        let w = g.element(&"g1^-1*g3".parse().unwrap()).unwrap();
        assert_eq!(depth(&w, g, g.tau).unwrap(), 2);
        assert_eq!(depth_of_point(c(0.0, 2.0), g).unwrap(), 1);
    }

    #[test]
    fn small_enumerations() {
        let g = g6();
        let s0 = enumerate_sk(g, 0).unwrap();
        assert_eq!(s0.theta, vec![1]);
        let s1 = enumerate_sk(g, 1).unwrap();
        assert_eq!(s1.theta, vec![1, 6]);
        for w in ["Id", "g1", "g1^-1", "g2", "g2^-1", "g3"] {
            let e = g.element(&w.parse().unwrap()).unwrap();
            assert!(s1.elements.iter().any(|(x, _)| x.same_class(&e)), "{w}");
        }
        assert!(matches!(
            enumerate_sk(g, 9),
            Err(Error::Cap {
                requested: 9,
                cap: 8
            })
        ));
    }

    #[test]
    fn side_images_of_g3() {
        let g = g6();
        let g3 = &g.sides[4];
        match g3.image(&g3.element).unwrap() {
            GenCircle::Circle { center, radius } => {
                assert!(center.norm() < 1e-9);
                assert!((radius - 1.0).abs() < 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
