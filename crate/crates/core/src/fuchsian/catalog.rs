use std::sync::OnceLock;

use num_complex::Complex64;

use super::dirichlet::dirichlet_sides;
use super::{Boundary, GroupElement, Keep, Side, Word, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::exact::QuadMatrix;

pub const SUPPORTED_GROUPS: [u32; 3] = [6, 10, 15];

/// Longest generator word whose orbit point bounds the Dirichlet domains.
const DIRICHLET_WORD_LEN: usize = 5;

/// How the fundamental domain was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    /// Intersection of isometric-circle half-planes for a fixed side list.
    Isometric,
    /// Dirichlet domain centred at the code center, computed at load.
    Dirichlet,
}

/// Presentation relation: `word^exponent = ±Id`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub word: Word,
    pub exponent: u32,
}

#[derive(Debug)]
pub struct FuchsianGroup {
    pub d: u32,
    pub radicand: u32,
    pub generators: Vec<GroupElement>,
    pub relations: Vec<Relation>,
    /// Sides of the fundamental domain in scan order; `sides[i].element` is the
    /// i-th member of G.
    pub sides: Vec<Side>,
    /// Default code center, interior to the domain.
    pub tau: Complex64,
    pub domain: DomainKind,
    /// Side count quoted in the literature for the domain used there.
    pub reference_m: usize,
}

impl FuchsianGroup {
    /// Number of sides, M = |G_ext| + |G_int| (lines counted too).
    pub fn m(&self) -> usize {
        self.sides.len()
    }

    pub fn g_ext(&self) -> impl Iterator<Item = &GroupElement> {
        self.sides
            .iter()
            .filter(|s| s.keep == Keep::Exterior)
            .map(|s| &s.element)
    }

    pub fn g_int(&self) -> impl Iterator<Item = &GroupElement> {
        self.sides
            .iter()
            .filter(|s| s.keep == Keep::Interior)
            .map(|s| &s.element)
    }

    /// Exact product of a generator word.
    pub fn element(&self, word: &Word) -> Result<GroupElement> {
        let gens: Vec<QuadMatrix> = self.generators.iter().map(|g| g.matrix().clone()).collect();
        let m = word.evaluate(&gens, self.radicand)?;
        GroupElement::new(m, word.clone())
    }

    /// Rechecks the generator determinants, the relations and the side pairing.
    pub fn verify(&self) -> Result<()> {
        for g in &self.generators {
            if !g.matrix().has_unit_det() {
                return Err(Error::Domain(format!("generator {g} has determinant ≠ 1")));
            }
        }
        for r in &self.relations {
            let m = self.element(&r.word)?.matrix().pow(r.exponent);
            if !m.is_identity_up_to_sign() {
                return Err(Error::Domain(format!(
                    "relation ({})^{} is not ±Id",
                    r.word, r.exponent
                )));
            }
        }
        for (i, s) in self.sides.iter().enumerate() {
            let p = &self.sides[s.paired];
            if p.paired != i || !p.element.same_class(&s.element.inverse()) {
                return Err(Error::Domain(format!("side {} is not paired", s.element)));
            }
        }
        if !self.is_strictly_interior(self.tau) {
            return Err(Error::Domain("center is not interior".into()));
        }
        Ok(())
    }

    /// True when `z` satisfies every side with margin.
    pub fn is_strictly_interior(&self, z: Complex64) -> bool {
        z.im > 0.0
            && self
                .sides
                .iter()
                .all(|s| s.violation(z, -MEMBERSHIP_TOL).is_none())
    }
}

/// The catalog entry for Γ(D,1), built and verified on first use.
pub fn catalog(d: u32) -> Result<&'static FuchsianGroup> {
    static G6: OnceLock<FuchsianGroup> = OnceLock::new();
    static G10: OnceLock<FuchsianGroup> = OnceLock::new();
    static G15: OnceLock<FuchsianGroup> = OnceLock::new();
    let cell = match d {
        6 => &G6,
        10 => &G10,
        15 => &G15,
        _ => return Err(Error::UnsupportedGroup(d)),
    };
    Ok(cell.get_or_init(|| {
        let g = build(d).unwrap_or_else(|e| panic!("catalog entry D={d} is inconsistent: {e}"));
        g.verify()
            .unwrap_or_else(|e| panic!("catalog entry D={d} failed verification: {e}"));
        g
    }))
}

fn gen(num: [(i64, i64); 4], a: u32, index: u8) -> Result<GroupElement> {
    GroupElement::new(QuadMatrix::from_halves(num, a), Word::letter(index, false))
}

fn relation(word: &str, exponent: u32) -> Relation {
    Relation {
        word: word.parse().expect("static relation word"),
        exponent,
    }
}

fn build(d: u32) -> Result<FuchsianGroup> {
    match d {
        6 => {
            let a = 3;
            let generators = vec![
                gen([(1, 1), (3, -1), (-3, -1), (1, -1)], a, 0)?,
                gen([(1, 1), (-3, 1), (3, 1), (1, -1)], a, 1)?,
                gen([(0, 0), (2, 0), (-2, 0), (0, 0)], a, 2)?,
            ];
            let members = [
                (generators[0].clone(), Keep::Exterior, 1),
                (generators[0].inverse(), Keep::Exterior, 0),
                (generators[1].clone(), Keep::Exterior, 3),
                (generators[1].inverse(), Keep::Exterior, 2),
                (generators[2].clone(), Keep::Interior, 4),
            ];
            let sides = members
                .into_iter()
                .map(|(element, keep, paired)| {
                    let c = element.isometric_circle()?;
                    Ok(Side {
                        element,
                        boundary: Boundary::Circle {
                            center: c.center,
                            radius: c.radius,
                        },
                        keep,
                        paired,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FuchsianGroup {
                d,
                radicand: a,
                generators,
                relations: vec![
                    relation("g1", 3),
                    relation("g2", 3),
                    relation("g3", 2),
                    relation("g1^-1*g3*g2", 2),
                ],
                sides,
                tau: Complex64::new(0.0, 0.5),
                domain: DomainKind::Isometric,
                reference_m: 5,
            })
        }
        10 => {
            let a = 2;
            let generators = vec![
                gen([(1, 1), (-1, 1), (-5, -5), (1, -1)], a, 0)?,
                gen([(1, 1), (1, -1), (5, 5), (1, -1)], a, 1)?,
                gen([(6, 4), (0, 0), (0, 0), (6, -4)], a, 2)?,
            ];
            let tau = Complex64::new(0.0, 0.4);
            Ok(FuchsianGroup {
                d,
                radicand: a,
                sides: dirichlet_sides(&generators, tau, DIRICHLET_WORD_LEN)?,
                generators,
                relations: vec![
                    relation("g1", 3),
                    relation("g2", 3),
                    relation("g3^-1*g1", 3),
                    relation("g3^-1*g2", 3),
                ],
                tau,
                domain: DomainKind::Dirichlet,
                reference_m: 6,
            })
        }
        15 => {
            let a = 3;
            let generators = vec![
                gen([(-4, 3), (0, -1), (0, 5), (-4, -3)], a, 0)?,
                gen([(3, 0), (1, 0), (5, 0), (3, 0)], a, 1)?,
                gen([(4, 2), (0, 0), (0, 0), (4, -2)], a, 2)?,
            ];
            let tau = Complex64::new(0.0, 0.9);
            Ok(FuchsianGroup {
                d,
                radicand: a,
                sides: dirichlet_sides(&generators, tau, DIRICHLET_WORD_LEN)?,
                generators,
                relations: vec![relation("g1*g3", 3), relation("g3*g2^-1*g1*g2", 3)],
                tau,
                domain: DomainKind::Dirichlet,
                reference_m: 8,
            })
        }
        _ => Err(Error::UnsupportedGroup(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_group() {
        assert_eq!(catalog(7).unwrap_err(), Error::UnsupportedGroup(7));
    }

    #[test]
    fn gamma6_data() {
        let g = catalog(6).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(g.generators[2].entries(), &[0.0, 1.0, -1.0, 0.0]);
        assert_eq!(g.g_ext().count(), 4);
        assert_eq!(g.g_int().count(), 1);
        let c = g.sides[0].element.isometric_circle().unwrap();
        assert!((c.center + 0.154_700_538_379_251_5).abs() < 1e-12);
        assert!((c.radius - 0.422_649_730_810_374_2).abs() < 1e-12);
        let c = g.sides[1].element.isometric_circle().unwrap();
        assert!((c.center + 0.577_350_269_189_625_8).abs() < 1e-12);
    }

    #[test]
    fn all_groups_verify() {
        for d in SUPPORTED_GROUPS {
            catalog(d).unwrap().verify().unwrap();
        }
    }

    #[test]
    fn dirichlet_side_counts() {
        assert_eq!(catalog(10).unwrap().m(), 10);
        assert_eq!(catalog(15).unwrap().m(), 12);
    }
}
