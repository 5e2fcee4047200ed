//! Encodings specific to `G(2,m)`.
//!
//! A union is determined by its column counts `M_U` (how many grid points
//! `(x,y)` of `G_U` have a given `x`), which form an arbitrary subset of
//! `{1..m-1}`, and equivalently by the interleaved corner sequence
//! `sigma_U = a_1 < ... < a_s < b_s < ... < b_1` of its maxima `(a_i,b_i)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GrassParams, GridPoint, SchubertUnion};

fn require_two(params: GrassParams) -> Result<()> {
    if params.l == 2 {
        Ok(())
    } else {
        Err(Error::NotTwoDim(params.l))
    }
}

/// A subset of `{1..m-1}`, stored increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MSet {
    m: usize,
    elements: Vec<usize>,
}

impl MSet {
    pub fn new(m: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMSet {
                max: m.saturating_sub(1),
                reason: "repeated element".into(),
            });
        }
        if elements.first().is_some_and(|&e| e == 0) || elements.last().is_some_and(|&e| e >= m) {
            return Err(Error::InvalidMSet {
                max: m.saturating_sub(1),
                reason: "element out of range".into(),
            });
        }
        Ok(Self { m, elements })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// `{1..m-1} \ M`.
    pub fn complement(&self) -> MSet {
        let elements = (1..self.m).filter(|e| !self.elements.contains(e)).collect();
        MSet { m: self.m, elements }
    }
}

impl fmt::Display for MSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The sequence `a_1 < ... < a_s < b_s < ... < b_1`; the maxima are `(a_i, b_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaSeq {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SigmaSeq {
    pub fn new(m: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let seq: Vec<usize> = a.iter().chain(b.iter().rev()).copied().collect();
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::InvalidSigma(format!(
                "need equally many a and b, got {a:?}, {b:?}"
            )));
        }
        if seq[0] < 1 || *seq.last().unwrap() > m || seq.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSigma(format!(
                "{seq:?} is not strictly increasing within 1..{m}"
            )));
        }
        Ok(Self { a, b })
    }

    /// Builds from the increasing listing `a_1,...,a_s,b_s,...,b_1`.
    pub fn from_sequence(m: usize, seq: &[usize]) -> Result<Self> {
        if seq.is_empty() || seq.len() % 2 == 1 {
            return Err(Error::InvalidSigma(format!("odd or empty sequence {seq:?}")));
        }
        let s = seq.len() / 2;
        Self::new(m, seq[..s].to_vec(), seq[s..].iter().rev().copied().collect())
    }

    pub fn sequence(&self) -> Vec<usize> {
        self.a.iter().chain(self.b.iter().rev()).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

impl fmt::Display for SigmaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence().iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join("<"))
    }
}

/// Column counts of `G_U`.
pub fn union_to_mset(union: &SchubertUnion) -> Result<MSet> {
    let params = union.params();
    require_two(params)?;
    let mut counts = vec![0usize; params.m];
    for p in union.ideal() {
        counts[p.coords()[0]] += 1;
    }
    MSet::new(params.m, counts.into_iter().filter(|&c| c > 0).collect())
}

/// Column `i` receives the `i`-th largest count, filled from the bottom.
pub fn mset_to_union(mset: &MSet) -> Result<SchubertUnion> {
    let params = GrassParams::new(2, mset.m)?;
    let maxima = mset
        .elements
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &c)| params.point(&[i + 1, i + 1 + c]))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchubertUnion::from_points(params, maxima))
}

pub fn union_to_sigma(union: &SchubertUnion) -> Result<SigmaSeq> {
    let params = union.params();
    require_two(params)?;
    if union.is_empty() {
        return Err(Error::EmptyUnion);
    }
    // Maxima are sorted lexicographically, so `a` increases and `b` decreases.
    let a = union.maxima().iter().map(|p| p.coords()[0]).collect();
    let b = union.maxima().iter().map(|p| p.coords()[1]).collect();
    SigmaSeq::new(params.m, a, b)
}

pub fn sigma_to_union(params: GrassParams, sigma: &SigmaSeq) -> Result<SchubertUnion> {
    require_two(params)?;
    let pts = sigma
        .a
        .iter()
        .zip(&sigma.b)
        .map(|(&a, &b)| params.point(&[a, b]))
        .collect::<Result<Vec<GridPoint>>>()?;
    Ok(SchubertUnion::from_points(params, pts))
}

/// The sequence of the dual union, read off from `sigma` directly.
///
/// Lists `m-b_1, ..., m-b_s, m-a_s-1, m-a_s, m-a_{s-1}, ..., m-a_1, m`, drops
/// the outer pair when `b_1 = m` and the middle pair `m-a_s-1, m-a_s` when
/// `b_s = a_s + 1`. Returns `None` when everything is dropped, which happens
/// exactly for the full grid, whose dual is empty.
pub fn dual_sigma(m: usize, sigma: &SigmaSeq) -> Result<Option<SigmaSeq>> {
    let s = sigma.len();
    let (a, b) = (&sigma.a, &sigma.b);
    let mut list: Vec<usize> = b.iter().map(|bi| m - bi).collect();
    list.push(m - a[s - 1] - 1);
    list.extend(a.iter().rev().map(|ai| m - ai));
    list.push(m);
    let last = list.len() - 1;
    let mut drop = vec![false; list.len()];
    if b[0] == m {
        drop[0] = true;
        drop[last] = true;
    }
    if b[s - 1] == a[s - 1] + 1 {
        drop[s] = true;
        drop[s + 1] = true;
    }
    let kept: Vec<usize> = list
        .into_iter()
        .zip(drop)
        .filter_map(|(x, d)| (!d).then_some(x))
        .collect();
    if kept.is_empty() {
        return Ok(None);
    }
    SigmaSeq::from_sequence(m, &kept).map(Some)
}

/// The dual's column counts are the complement of the original ones.
pub fn mset_complement_is_dual(mset: &MSet) -> MSet {
    mset.complement()
}

/// `S_(a,b) ∪ S_(c,d)` is irredundant iff `a<c<d<b` or `c<a<b<d`.
pub fn is_proper_pair(ab: (usize, usize), cd: (usize, usize)) -> bool {
    let ((a, b), (c, d)) = (ab, cd);
    (a < c && c < d && d < b) || (c < a && a < b && b < d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_union;
    use crate::grid::enumerate_ideals;

    fn p(m: usize) -> GrassParams {
        GrassParams::new(2, m).unwrap()
    }

    #[test]
    fn worked_example_m7() {
        let u = SchubertUnion::parse(p(7), "(1,7) ∪ (3,5)").unwrap();
        let ms = union_to_mset(&u).unwrap();
        assert_eq!(ms.elements(), &[2, 3, 6]);
        assert_eq!(mset_to_union(&ms).unwrap(), u);
        assert_eq!(mset_complement_is_dual(&ms).elements(), &[1, 4, 5]);
        let sigma = union_to_sigma(&u).unwrap();
        assert_eq!(sigma.to_string(), "1<3<5<7");
        let ds = dual_sigma(7, &sigma).unwrap().unwrap();
        assert_eq!(ds.to_string(), "2<3<4<6");
        assert_eq!(
            sigma_to_union(p(7), &ds).unwrap(),
            SchubertUnion::parse(p(7), "(2,6) ∪ (3,4)").unwrap()
        );

        let s56 = SigmaSeq::from_sequence(7, &[5, 6]).unwrap();
        assert_eq!(dual_sigma(7, &s56).unwrap().unwrap().to_string(), "1<7");
    }

    #[test]
    fn small_cases() {
        let u = SchubertUnion::parse(p(5), "(2,4)").unwrap();
        assert_eq!(union_to_mset(&u).unwrap().elements(), &[2, 3]);
        assert!(union_to_mset(&SchubertUnion::empty(p(5)))
            .unwrap()
            .elements()
            .is_empty());
        let all = MSet::new(6, (1..6).collect()).unwrap();
        assert_eq!(mset_to_union(&all).unwrap(), SchubertUnion::full(p(6)));
        assert!(matches!(
            union_to_sigma(&SchubertUnion::empty(p(5))),
            Err(Error::EmptyUnion)
        ));
        let p36 = GrassParams::new(3, 6).unwrap();
        assert!(matches!(
            union_to_mset(&SchubertUnion::full(p36)),
            Err(Error::NotTwoDim(3))
        ));
        assert!(MSet::new(5, vec![5]).is_err());
        assert!(SigmaSeq::from_sequence(7, &[3, 3]).is_err());
        assert!(is_proper_pair((1, 7), (3, 5)));
        assert!(!is_proper_pair((1, 5), (3, 7)));
    }

    #[test]
    fn encodings_commute_with_duality_exhaustively() {
        for m in 3..=8 {
            let all: Vec<_> = enumerate_ideals(p(m), 28).unwrap().collect();
            assert_eq!(all.len(), 1 << (m - 1));
            for u in all {
                let ms = union_to_mset(&u).unwrap();
                assert_eq!(mset_to_union(&ms).unwrap(), u);
                let d = dual_union(&u);
                assert_eq!(union_to_mset(&d).unwrap(), ms.complement());
                assert_ne!(ms.complement(), ms);
                if u.is_empty() {
                    continue;
                }
                let sigma = union_to_sigma(&u).unwrap();
                assert_eq!(sigma_to_union(p(m), &sigma).unwrap(), u);
                let ds = dual_sigma(m, &sigma).unwrap();
                match ds {
                    None => assert!(d.is_empty()),
                    Some(ds) => {
                        assert_eq!(ds, union_to_sigma(&d).unwrap(), "{u}");
                        let s = sigma.len();
                        assert!(ds.len() + 1 >= s && ds.len() <= s + 1);
                    }
                }
            }
        }
    }
}
