//! Schubert unions with the most `F_q`-points for a given spanning dimension.
//!
//! Unions are ranked by their point-count polynomials in the lexicographic
//! order of [`PointCountPoly`]. For `l = 2` the optimum is always one of two
//! explicit shapes: fill columns from the left, or fill rows from the bottom.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{enumerate_ideals, point_count_poly, GrassParams, GridPoint, SchubertUnion};
use crate::poly::PointCountPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Which candidate wins; `LR` when both have the same polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
    LR,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::L => "L",
            Direction::R => "R",
            Direction::LR => "LR",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L" => Ok(Direction::L),
            "R" => Ok(Direction::R),
            "LR" => Ok(Direction::LR),
            other => Err(Error::Invalid(format!("unknown direction {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub union: SchubertUnion,
    pub poly: PointCountPoly,
    pub side: Side,
}

fn check_two(params: GrassParams, span: usize) -> Result<()> {
    if params.l != 2 {
        return Err(Error::NotTwoDim(params.l));
    }
    let k = params.m * (params.m - 1) / 2;
    if span > k {
        return Err(Error::Invalid(format!("spanning dimension {span} exceeds k = {k}")));
    }
    Ok(())
}

/// Whole columns from the left, each filled bottom-up, then a partial column.
pub fn left_candidate(params: GrassParams, span: usize) -> Result<SchubertUnion> {
    check_two(params, span)?;
    let m = params.m;
    let mut rest = span;
    let mut pts = Vec::new();
    for x in 1..m {
        let h = rest.min(m - x);
        if h == 0 {
            break;
        }
        pts.push(GridPoint::new_unchecked(vec![x, x + h]));
        rest -= h;
    }
    Ok(SchubertUnion::from_points(params, pts))
}

/// Whole rows from the bottom, each filled left to right, then a partial row.
pub fn right_candidate(params: GrassParams, span: usize) -> Result<SchubertUnion> {
    check_two(params, span)?;
    let m = params.m;
    let mut rest = span;
    let mut pts = Vec::new();
    for y in 2..=m {
        let w = rest.min(y - 1);
        if w == 0 {
            break;
        }
        pts.push(GridPoint::new_unchecked(vec![w, y]));
        rest -= w;
    }
    Ok(SchubertUnion::from_points(params, pts))
}

/// Degree first, then coefficients from the top down.
pub fn lex_compare(p: &PointCountPoly, q: &PointCountPoly) -> Ordering {
    p.cmp(q)
}

/// Both candidates for spanning dimension `span`.
pub fn candidates(params: GrassParams, span: usize) -> Result<(Candidate, Candidate)> {
    let left = left_candidate(params, span)?;
    let right = right_candidate(params, span)?;
    Ok((
        Candidate {
            poly: point_count_poly(&left),
            union: left,
            side: Side::Left,
        },
        Candidate {
            poly: point_count_poly(&right),
            union: right,
            side: Side::Right,
        },
    ))
}

/// The better candidate and which side won. On a tie the left union is returned.
pub fn best_union(params: GrassParams, span: usize) -> Result<(SchubertUnion, Direction)> {
    let (l, r) = candidates(params, span)?;
    Ok(match lex_compare(&l.poly, &r.poly) {
        Ordering::Greater => (l.union, Direction::L),
        Ordering::Less => (r.union, Direction::R),
        Ordering::Equal => (l.union, Direction::LR),
    })
}

/// Lex-maximal `g_U` among all unions with `|G_U| = K`, for `K = 0..=k`, by
/// exhaustive enumeration.
pub fn exhaustive_max_by_span(params: GrassParams, guard: u64) -> Result<Vec<PointCountPoly>> {
    let k = params.k().unwrap_or(u64::MAX) as usize;
    let mut best = vec![PointCountPoly::zero(); k + 1];
    for u in enumerate_ideals(params, guard)? {
        let g = point_count_poly(&u);
        let span = g.at_one().try_into().unwrap_or(usize::MAX);
        if g > best[span] {
            best[span] = g;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    /// Codimension `r`.
    pub r: usize,
    /// Spanning dimension `K = k - r`.
    pub span: usize,
    /// Most points on a union spanning codimension at least `r`.
    pub j: PointCountPoly,
    /// `D_r = n - J_r`, an upper bound for `d_r`.
    pub d: PointCountPoly,
    /// `E_r = D_r - D_{r-1}`; zero for `r = 0`.
    pub e: PointCountPoly,
    /// For `l = 2`, which candidate attains `J_r`.
    pub direction: Option<Direction>,
    pub union: Option<SchubertUnion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTable {
    pub params: GrassParams,
    pub n: PointCountPoly,
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    /// `E_r` for `r = 1..=k`.
    pub fn e_sequence(&self) -> Vec<PointCountPoly> {
        self.rows.iter().skip(1).map(|r| r.e.clone()).collect()
    }

    /// Directions indexed by codimension `0..=k` (`l = 2` only).
    pub fn directions(&self) -> Vec<Direction> {
        self.rows.iter().filter_map(|r| r.direction).collect()
    }

    pub fn row(&self, r: usize) -> Option<&BoundRow> {
        self.rows.get(r)
    }
}

/// The `J_r, D_r, E_r` table. Uses the two candidates for `l = 2` and
/// exhaustive enumeration (subject to `guard`) otherwise.
pub fn bound_table(params: GrassParams, guard: u64) -> Result<BoundTable> {
    let n = params.n_poly();
    let k = params.k().filter(|&k| k <= 1 << 20).ok_or(Error::TooLarge {
        points: params.k().unwrap_or(u64::MAX),
        guard: 1 << 20,
    })? as usize;
    // Indexed by spanning dimension K.
    let per_span: Vec<(PointCountPoly, Option<Direction>, Option<SchubertUnion>)> = if params.l == 2 {
        (0..=k)
            .map(|span| {
                let (u, dir) = best_union(params, span)?;
                Ok((point_count_poly(&u), Some(dir), Some(u)))
            })
            .collect::<Result<_>>()?
    } else {
        let best = exhaustive_max_by_span(params, guard)?;
        // Spanning codimension "at least r" means a running maximum over K.
        let mut run = PointCountPoly::zero();
        best.into_iter()
            .map(|g| {
                if g > run {
                    run = g;
                }
                (run.clone(), None, None)
            })
            .collect()
    };
    let mut rows: Vec<BoundRow> = Vec::with_capacity(k + 1);
    for r in 0..=k {
        let span = k - r;
        let (j, direction, union) = per_span[span].clone();
        let d = &n - &j;
        let e = match rows.last() {
            Some(prev) => &d - &prev.d,
            None => PointCountPoly::zero(),
        };
        rows.push(BoundRow {
            r,
            span,
            j,
            d,
            e,
            direction,
            union,
        });
    }
    Ok(BoundTable { params, n, rows })
}

/// `c(x,y) = xy - x(x+1)/2`, the size of the ideal below `(x,y)`.
pub fn ideal_size(x: usize, y: usize) -> usize {
    x * y - x * (x + 1) / 2
}

/// `c_1(d) = (d-m+3)m - (d-m+3)(d-m+4)/2`.
pub fn krull_c1(m: usize, d: i64) -> i64 {
    let t = d - m as i64 + 3;
    t * m as i64 - t * (t + 1) / 2
}

/// `(d^2+6d+8)/8` for even `d`, `(d^2+8d+7)/8` for odd `d`.
pub fn krull_c2(d: i64) -> i64 {
    if d % 2 == 0 {
        (d * d + 6 * d + 8) / 8
    } else {
        (d * d + 8 * d + 7) / 8
    }
}

/// Smallest spanning dimension of a union of Krull dimension `d` in `G(2,m)`.
/// `None` stands for infinity (`d > 2m-4`).
pub fn krull_c(params: GrassParams, d: i64) -> Result<Option<u64>> {
    if params.l != 2 {
        return Err(Error::NotTwoDim(params.l));
    }
    let m = params.m as i64;
    Ok(match d {
        d if d < -1 => Some(0),
        -1 => Some(0),
        d if d <= m - 2 => Some((d + 1) as u64),
        d if d <= 2 * m - 4 => Some(krull_c1(params.m, d).min(krull_c2(d)) as u64),
        _ => None,
    })
}

/// Largest Krull dimension reachable with spanning dimension at most `span`.
pub fn krull_dk(params: GrassParams, span: usize) -> Result<i64> {
    let top = 2 * params.m as i64 - 4;
    let mut best = -1;
    for d in -1..=top {
        if krull_c(params, d)?.is_some_and(|c| c <= span as u64) {
            best = d;
        }
    }
    Ok(best)
}

/// `(a,b)` fits into an optimal union on its diagonal: `c(a,b) < C(a+b-2)`.
pub fn admissible(params: GrassParams, point: &GridPoint) -> Result<bool> {
    if params.l != 2 {
        return Err(Error::NotTwoDim(params.l));
    }
    let (a, b) = (point.coords()[0], point.coords()[1]);
    let d = (a + b - 3) as i64;
    Ok(match krull_c(params, d + 1)? {
        Some(c) => (ideal_size(a, b) as u64) < c,
        None => true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    LeftForced,
    RightForced,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub span: usize,
    pub codim: usize,
    pub krull: i64,
    pub regime: Regime,
    pub direction: Direction,
    pub consistent: bool,
}

/// Predicted side from the Krull dimension: the row-filling union wins once
/// `d(K) > 1.2m - 1`, the column-filling union while `d(K) <= 1.2m - 5`.
/// Each prediction is compared with the computed direction.
pub fn threshold_report(params: GrassParams) -> Result<Vec<ThresholdRow>> {
    check_two(params, 0)?;
    let m = params.m as i64;
    let k = params.m * (params.m - 1) / 2;
    (0..=k)
        .map(|span| {
            let krull = krull_dk(params, span)?;
            let regime = if 5 * krull > 6 * m - 5 {
                Regime::RightForced
            } else if 5 * krull <= 6 * m - 25 {
                Regime::LeftForced
            } else {
                Regime::Undetermined
            };
            let (_, direction) = best_union(params, span)?;
            let consistent = match regime {
                Regime::RightForced => direction != Direction::L,
                Regime::LeftForced => direction != Direction::R,
                Regime::Undetermined => true,
            };
            Ok(ThresholdRow {
                span,
                codim: k - span,
                krull,
                regime,
                direction,
                consistent,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::krull_dimension;

    fn p(m: usize) -> GrassParams {
        GrassParams::new(2, m).unwrap()
    }

    #[test]
    fn candidate_shapes() {
        for m in 3..=9 {
            let k = m * (m - 1) / 2;
            for span in 0..=k {
                let l = left_candidate(p(m), span).unwrap();
                let r = right_candidate(p(m), span).unwrap();
                assert_eq!(l.ideal().len(), span);
                assert_eq!(r.ideal().len(), span);
                assert!(l.maxima().len() <= 2 && r.maxima().len() <= 2);
                if l.maxima().len() == 2 {
                    // S_(x,m) ∪ S_(x+1,y)
                    let (a, b) = (&l.maxima()[0], &l.maxima()[1]);
                    assert_eq!(a.coords()[1], m);
                    assert_eq!(b.coords()[0], a.coords()[0] + 1);
                }
                if r.maxima().len() == 2 {
                    // S_(x,x+1)... listed as (a,x+2) ∪ (x... ) in lex order
                    let (a, b) = (&r.maxima()[0], &r.maxima()[1]);
                    assert_eq!(b.coords()[1], b.coords()[0] + 1);
                    assert_eq!(a.coords()[1], b.coords()[1] + 1);
                }
            }
            assert!(left_candidate(p(m), 0).unwrap().is_empty());
            assert_eq!(right_candidate(p(m), k).unwrap(), SchubertUnion::full(p(m)));
        }
        let u = left_candidate(p(7), 9).unwrap();
        assert_eq!(u, SchubertUnion::parse(p(7), "(1,7) ∪ (2,5)").unwrap());
    }

    #[test]
    fn lex_compare_examples() {
        let a: PointCountPoly = "q^5".parse().unwrap();
        let b: PointCountPoly = "3q^4+q+1".parse().unwrap();
        assert_eq!(lex_compare(&a, &b), Ordering::Greater);
        let a: PointCountPoly = "2q^4+1".parse().unwrap();
        let b: PointCountPoly = "q^4+3q^3".parse().unwrap();
        assert_eq!(lex_compare(&a, &b), Ordering::Greater);
        let a: PointCountPoly = "q^4+2q^3+2q^2+q+1".parse().unwrap();
        let b: PointCountPoly = "q^4+q^3+2q^2+q+1".parse().unwrap();
        assert_eq!(lex_compare(&a, &b), Ordering::Greater);
    }

    #[test]
    fn krull_formulas() {
        let p7 = p(7);
        assert_eq!(krull_c(p7, -1).unwrap(), Some(0));
        assert_eq!(krull_c(p7, 0).unwrap(), Some(1));
        assert_eq!(krull_c(p7, 10).unwrap(), Some(21));
        assert_eq!(krull_c(p7, 11).unwrap(), None);
        assert_eq!(krull_dk(p7, 0).unwrap(), -1);
        assert_eq!(krull_dk(p7, 1).unwrap(), 0);
        assert_eq!(krull_dk(p(5), 7).unwrap(), 4);
        for m in 3..=20 {
            assert_eq!(krull_c(p(m), 2 * m as i64 - 4).unwrap(), Some((m * (m - 1) / 2) as u64));
        }
        assert_eq!(krull_c2(4), 6);
        assert_eq!(krull_c2(5), 9);
    }

    #[test]
    fn krull_agrees_with_enumeration() {
        for m in 3..=7 {
            let all: Vec<_> = enumerate_ideals(p(m), 28).unwrap().collect();
            for span in 0..=m * (m - 1) / 2 {
                let best = all
                    .iter()
                    .filter(|u| u.ideal().len() <= span)
                    .map(krull_dimension)
                    .max()
                    .unwrap();
                assert_eq!(krull_dk(p(m), span).unwrap(), best, "m={m} K={span}");
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(p(11), &p(11).point(&[4, 9]).unwrap()).unwrap());
        let m = 12;
        for d in 1..=(m - 3) {
            let adm: Vec<(usize, usize)> = (1..)
                .take_while(|&a| 2 * a < d + 3)
                .map(|a| (a, d + 3 - a))
                .filter(|&(a, b)| b <= m && admissible(p(m), &p(m).point(&[a, b]).unwrap()).unwrap())
                .collect();
            let mut expected = vec![(1, d + 2)];
            if d == 2 {
                expected.push((2, 3));
            }
            assert_eq!(adm, expected, "d={d}");
        }
    }

    #[test]
    fn best_union_matches_small_exhaustion() {
        for m in 3..=7 {
            let best = exhaustive_max_by_span(p(m), 28).unwrap();
            for (span, g) in best.iter().enumerate() {
                let (u, _) = best_union(p(m), span).unwrap();
                assert_eq!(&point_count_poly(&u), g);
            }
        }
    }

    #[test]
    fn bound_table_j0_is_n() {
        let t = bound_table(p(6), 28).unwrap();
        assert_eq!(t.rows[0].j, t.n);
        assert!(t.rows.last().unwrap().j.is_zero());
        let sum = t.e_sequence().into_iter().fold(PointCountPoly::zero(), |a, b| &a + &b);
        assert_eq!(sum, t.n);
    }
}
