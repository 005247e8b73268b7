use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::QuadMatrix;
use crate::fuchsian::{depth, enumerate_sk, FuchsianGroup, GroupElement, Word, DEPTH_CAP};

/// Code sizes with a built-in reference set of words.
pub const REFERENCE_SIZES: [usize; 3] = [4, 8, 16];

#[derive(Clone, Debug)]
pub struct CodeEntry {
    pub index: usize,
    pub sign: i8,
    pub element: GroupElement,
    pub point: Complex64,
    pub depth: usize,
}

/// Codewords `+γ(τ)` at indices `0..N` and `−γ(τ)` at `N..2N`.
#[derive(Clone, Debug)]
pub struct Codebook {
    group: &'static FuchsianGroup,
    tau: Complex64,
    entries: Vec<CodeEntry>,
    depth: usize,
    lookup: HashMap<QuadMatrix, usize>,
}

impl Codebook {
    pub fn group(&self) -> &'static FuchsianGroup {
        self.group
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn entries(&self) -> &[CodeEntry] {
        &self.entries
    }

    /// Upper half-plane entries, one per group element.
    pub fn upper(&self) -> &[CodeEntry] {
        &self.entries[..self.half_len()]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// N, the number of distinct group elements.
    pub fn half_len(&self) -> usize {
        self.entries.len() / 2
    }

    /// ℓ(C), the largest element depth.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.point).collect()
    }

    /// Upper-half index of `g` (mod ±Id), if it is a code element.
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.lookup.get(&g.key()).copied()
    }
}

/// Builds `{±γ(τ) : γ ∈ S}` from generator words.
pub fn build_code(
    group: &'static FuchsianGroup,
    tau: Complex64,
    words: &[Word],
) -> Result<Codebook> {
    if !group.is_strictly_interior(tau) {
        return Err(Error::Center(tau.to_string()));
    }
    let n = words.len();
    let mut lookup = HashMap::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for (index, w) in words.iter().enumerate() {
        let element = group.element(w)?;
        if lookup.insert(element.key(), index).is_some() {
            return Err(Error::Duplicate(w.to_string()));
        }
        let point = element.mobius(tau)?;
        let d = depth(&element, group, tau)?;
        upper.push(CodeEntry {
            index,
            sign: 1,
            element,
            point,
            depth: d,
        });
    }
    let lower: Vec<CodeEntry> = upper
        .iter()
        .map(|e| CodeEntry {
            index: e.index + n,
            sign: -1,
            element: e.element.clone(),
            point: -e.point,
            depth: e.depth,
        })
        .collect();
    let depth = upper.iter().map(|e| e.depth).max().unwrap_or(0);
    let mut entries = upper;
    entries.extend(lower);
    Ok(Codebook {
        group,
        tau,
        entries,
        depth,
        lookup,
    })
}

/// Built-in word sets for q = 4, 8, 16.
///
/// For Γ(6,1), q = 16 the listed element `g2 g3` is replaced by `g2⁻¹ g3`:
/// only the latter maps τ to the listed codeword (5/13)(−3+2√3) − (4/13)i(−2+√3).
pub fn reference_words(d: u32, q: usize) -> Result<Vec<Word>> {
    let list: &[&str] = match (d, q) {
        (6, 4) => &["Id", "g1^-1"],
        (6, 8) => &["Id", "g1^-1", "g2^-1", "g3"],
        (6, 16) => &[
            "Id", "g1^-1", "g2^-1", "g3", "g1", "g2", "g1^-1*g3", "g2^-1*g3",
        ],
        (10, 4) => &["Id", "g1^-1"],
        (10, 8) => &["Id", "g1^-1", "g2^-1", "g1"],
        (10, 16) => &[
            "Id", "g1^-1", "g2^-1", "g1", "g2", "g1*g2^-1", "g2*g1^-1", "g3^-1",
        ],
        (15, 4) => &["Id", "g2"],
        (15, 8) => &["Id", "g2", "g1", "g2^-1"],
        (15, 16) => &[
            "Id",
            "g2",
            "g1",
            "g2^-1",
            "g1^-1",
            "g3^-1",
            "g2^-1*g1*g2",
            "g2^-1*g1^-1*g2",
        ],
        (6 | 10 | 15, _) => {
            return Err(Error::Unsupported(format!(
                "no built-in word set for q={q}"
            )))
        }
        _ => return Err(Error::UnsupportedGroup(d)),
    };
    list.iter().map(|s| s.parse()).collect()
}

pub fn reference_code(group: &'static FuchsianGroup, q: usize) -> Result<Codebook> {
    build_code(group, group.tau, &reference_words(group.d, q)?)
}

/// N words of minimal depth: the first N of S^κ ordered by depth, word length,
/// then lexicographic word, for the smallest κ with θ_κ ≥ N.
pub fn choose_s(group: &FuchsianGroup, n: usize) -> Result<Vec<Word>> {
    let mut kappa = 0;
    let mut sk = enumerate_sk(group, 0)?;
    while sk.theta[kappa] < n {
        kappa += 1;
        if kappa > DEPTH_CAP {
            return Err(Error::Cap {
                requested: n,
                cap: sk.theta[DEPTH_CAP],
            });
        }
        sk = enumerate_sk(group, kappa)?;
    }
    let mut cands: Vec<(usize, Word)> = sk
        .elements
        .into_iter()
        .map(|(g, d)| (d, g.word().clone()))
        .collect();
    cands.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
    Ok(cands.into_iter().take(n).map(|(_, w)| w).collect())
}

/// The built-in set when there is one, otherwise a minimal-depth choice.
pub fn default_code(group: &'static FuchsianGroup, q: usize) -> Result<Codebook> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "code size must be even and ≥ 2, got {q}"
        )));
    }
    if REFERENCE_SIZES.contains(&q) {
        return reference_code(group, q);
    }
    build_code(group, group.tau, &choose_s(group, q / 2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::catalog;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn four_nuf() {
        let g = catalog(6).unwrap();
        let code = reference_code(g, 4).unwrap();
        let pts = code.points();
        assert_eq!(pts.len(), 4);
        assert!((pts[0] - c(0.0, 0.5)).norm() < 1e-12);
        assert!((pts[1] - c(-0.331_501_153, 0.153_113_816)).norm() < 1e-8);
        assert!((pts[2] + pts[0]).norm() < 1e-15);
        assert_eq!(code.entries()[3].sign, -1);
        assert_eq!(code.depth(), 1);
    }

    #[test]
    fn reference_set_depths() {
        let g = catalog(6).unwrap();
        let depths: Vec<usize> = [4, 8, 16]
            .iter()
            .map(|&q| reference_code(g, q).unwrap().depth())
            .collect();
        assert_eq!(depths, [1, 1, 2]);
    }

    #[test]
    fn rejects_bad_center_and_duplicates() {
        let g = catalog(6).unwrap();
        let words = reference_words(6, 4).unwrap();
        assert!(matches!(
            build_code(g, c(0.0, 2.0), &words),
            Err(Error::Center(_))
        ));
        // on the unit circle
        assert!(matches!(
            build_code(g, c(0.0, 1.0), &words),
            Err(Error::Center(_))
        ));
        let dup: Vec<Word> = ["g3", "g3^-1"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(matches!(
            build_code(g, g.tau, &dup),
            Err(Error::Duplicate(_))
        ));
    }

    #[test]
    fn choose_small_sets() {
        let g = catalog(6).unwrap();
        let s = choose_s(g, 2).unwrap();
        assert_eq!(s[0], Word::identity());
        assert_eq!(s[1].to_string(), "g1");
        let s8 = choose_s(g, 8).unwrap();
        let code = build_code(g, g.tau, &s8).unwrap();
        assert_eq!(code.depth(), 2);
        assert_eq!(choose_s(g, 8).unwrap(), s8);
    }

    #[test]
    fn odd_size_rejected() {
        let g = catalog(6).unwrap();
        assert!(matches!(default_code(g, 5), Err(Error::Config(_))));
    }
}
