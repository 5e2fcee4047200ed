//! Higher weights `d_r` of Grassmann codes and Schubert-union codes.
//!
//! Closed formulas cover the bottom and top of the hierarchy; the remaining
//! values are bracketed by the Griesmer bound and the Schubert-union bound
//! `D_r`. The exhaustive oracle computes `d_r = n - H_r` directly, where `H_r`
//! is the largest number of generator columns inside a codimension-`r`
//! subspace of `F_q^k`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grid::{enumerate_subunions, point_count_poly, GrassParams, SchubertUnion};
use crate::optimizer::bound_table;
use crate::pluecker::GeneratorMatrix;
use crate::poly::PointCountPoly;

/// Default cap on the number of subspaces the oracle visits.
pub const DEFAULT_ORACLE_BUDGET: u128 = 20_000_000;

/// Cap on the functional/column incidence tables, in 64-bit words (256 MiB).
const ORACLE_WORD_LIMIT: u128 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightSource {
    NoginFormula,
    TopFormula,
    D5Formula,
    SchubertBound,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub r: usize,
    pub source: WeightSource,
    /// Symbolic value, for formula rows.
    pub poly: Option<PointCountPoly>,
    /// Exact value at the chosen `q`, when known.
    pub value: Option<u64>,
    /// Bracket `[lower, upper]` for rows without a known value.
    pub lower: Option<u64>,
    pub upper: Option<u64>,
}

/// `q^top + q^(top-1) + ... + q^(top-r+1)`.
fn descending_run(top: usize, r: usize) -> PointCountPoly {
    (0..r).map(|i| PointCountPoly::monomial(top - i)).sum()
}

fn k_usize(params: GrassParams) -> Result<usize> {
    params
        .k()
        .filter(|&k| k <= 1 << 24)
        .map(|k| k as usize)
        .ok_or(Error::TooLarge {
            points: params.k().unwrap_or(u64::MAX),
            guard: 1 << 24,
        })
}

/// `d_r = q^delta + ... + q^(delta-r+1)` for `r <= max(l, m-l) + 1`.
pub fn nogin_weights(params: GrassParams) -> Vec<(usize, PointCountPoly)> {
    let s = params.l.max(params.m - params.l) + 1;
    let k = params.k().unwrap_or(u64::MAX);
    let delta = params.delta();
    (1..=s)
        .filter(|&r| r as u64 <= k && r <= delta + 1)
        .map(|r| (r, descending_run(delta, r)))
        .collect()
}

/// `d_k = n` and `d_(k-a) = n - (1 + q + ... + q^(a-1))` for `a <= max(l, m-l) + 1`.
pub fn top_weights(params: GrassParams) -> Result<Vec<(usize, PointCountPoly)>> {
    let s = params.l.max(params.m - params.l) + 1;
    let k = k_usize(params)?;
    let n = params.n_poly();
    Ok((0..=s)
        .filter(|&a| a < k)
        .map(|a| (k - a, &n - &PointCountPoly::geometric(a)))
        .collect())
}

/// `d_5` of `C(2,5)`: `n - (q^3 + 2q^2 + q + 1)`.
pub fn d5_c25() -> PointCountPoly {
    let n = PointCountPoly::gaussian_binomial(5, 2);
    &n - &PointCountPoly::from_coeffs(&[1, 1, 2, 1])
}

/// Every `d_r` given by a closed formula. Overlapping formulas must agree.
pub fn known_weights(params: GrassParams) -> Result<BTreeMap<usize, (PointCountPoly, WeightSource)>> {
    let mut out: BTreeMap<usize, (PointCountPoly, WeightSource)> = BTreeMap::new();
    let mut insert = |r: usize, p: PointCountPoly, src: WeightSource| -> Result<()> {
        if let Some((old, old_src)) = out.get(&r) {
            if *old != p {
                return Err(Error::Invalid(format!(
                    "d_{r}: {old_src:?} gives {old}, {src:?} gives {p}"
                )));
            }
            return Ok(());
        }
        out.insert(r, (p, src));
        Ok(())
    };
    for (r, p) in nogin_weights(params) {
        insert(r, p, WeightSource::NoginFormula)?;
    }
    for (r, p) in top_weights(params)? {
        insert(r, p, WeightSource::TopFormula)?;
    }
    if (params.l, params.m) == (2, 5) {
        insert(5, d5_c25(), WeightSource::D5Formula)?;
    }
    Ok(out)
}

/// `Delta_r = d_r - d_(r-1)` for `r = 1..=k`, where both weights are known.
pub fn delta_table(params: GrassParams) -> Result<Vec<Option<PointCountPoly>>> {
    let k = k_usize(params)?;
    let known = known_weights(params)?;
    let d = |r: usize| -> Option<PointCountPoly> {
        if r == 0 {
            Some(PointCountPoly::zero())
        } else {
            known.get(&r).map(|(p, _)| p.clone())
        }
    };
    Ok((1..=k).map(|r| Some(&d(r)? - &d(r - 1)?)).collect())
}

/// `sum_{i<r} ceil(d_1 / q^i)`.
pub fn griesmer_lower(d1: u64, q: u64, r: usize) -> u64 {
    let mut total = 0u64;
    let mut div = 1u64;
    for _ in 0..r {
        total = total.saturating_add(d1.div_ceil(div));
        div = div.saturating_mul(q);
    }
    total
}

/// Number of `r`-dimensional subspaces of `F_q^k`.
pub fn subspace_count(k: usize, r: usize, q: u64) -> u128 {
    PointCountPoly::gaussian_binomial(k, r)
        .eval_u64(q)
        .try_into()
        .unwrap_or(u128::MAX)
}

/// Column incidence of every linear functional on `F_q^k`.
///
/// Functional `f` is indexed by `sum f_i q^i`; its mask has bit `j` set when
/// `f` vanishes on column `j`. The columns annihilated by a subspace are the
/// intersection of the masks of any basis.
pub struct Oracle {
    q: u64,
    k: usize,
    n: usize,
    words: usize,
    masks: Vec<u64>,
}

impl Oracle {
    pub fn new(gen: &GeneratorMatrix, field: &Field) -> Result<Self> {
        let (q, k, n) = (field.q() as u64, gen.k(), gen.n());
        let words = n.div_ceil(64).max(1);
        let functionals = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        let required = functionals.saturating_mul(words as u128);
        if required > ORACLE_WORD_LIMIT {
            return Err(Error::OracleMemory {
                required,
                limit: ORACLE_WORD_LIMIT,
            });
        }
        let nf = functionals as usize;
        let qpow: Vec<usize> = (0..k).map(|i| (q as usize).pow(i as u32)).collect();
        let mut masks = vec![0u64; nf * words];
        // Dot products of every functional with one column, built from the
        // value at the functional with its top digit removed.
        let mut val = vec![0u8; nf];
        for j in 0..n {
            let col = gen.column(j);
            masks[j / 64] |= 1 << (j % 64);
            for i in 0..k {
                for d in 1..q as usize {
                    let term = field.mul(d as u8, col[i]);
                    let base = d * qpow[i];
                    for low in 0..qpow[i] {
                        let f = base + low;
                        val[f] = field.add(val[low], term);
                        if val[f] == 0 {
                            masks[f * words + j / 64] |= 1 << (j % 64);
                        }
                    }
                }
            }
        }
        Ok(Self { q, k, n, words, masks })
    }

    fn mask(&self, f: usize) -> &[u64] {
        &self.masks[f * self.words..(f + 1) * self.words]
    }

    /// `H_r`: the most columns inside one codimension-`r` subspace.
    pub fn h(&self, r: usize, budget: u128) -> Result<u64> {
        let (q, k) = (self.q, self.k);
        if r == 0 {
            return Ok(self.n as u64);
        }
        if r > k {
            return Err(Error::Invalid(format!("r = {r} exceeds dimension {k}")));
        }
        let required = subspace_count(k, r, q);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let qpow: Vec<usize> = (0..k).map(|i| (q as usize).pow(i as u32)).collect();
        // Reduced echelon bases: row i has a 1 at pivot p_i, zeros left of it
        // and in the other pivot columns, free entries elsewhere.
        let mut jobs: Vec<(Vec<Vec<usize>>, usize)> = Vec::new();
        for pivots in combinations(k, r) {
            let rows: Vec<Vec<usize>> = pivots
                .iter()
                .map(|&p| {
                    let free: Vec<usize> = (p + 1..k).filter(|c| !pivots.contains(c)).collect();
                    let count = (q as usize).pow(free.len() as u32);
                    (0..count)
                        .map(|code| {
                            let mut idx = qpow[p];
                            let mut c = code;
                            for &col in &free {
                                idx += (c % q as usize) * qpow[col];
                                c /= q as usize;
                            }
                            idx
                        })
                        .collect()
                })
                .collect();
            for first in 0..rows[0].len() {
                jobs.push((rows.clone(), first));
            }
        }
        let best = AtomicU64::new(0);
        jobs.par_iter().for_each(|(rows, first)| {
            let start = self.mask(rows[0][*first]).to_vec();
            self.search(rows, 1, &start, &best);
        });
        Ok(best.into_inner())
    }

    fn search(&self, rows: &[Vec<usize>], depth: usize, acc: &[u64], best: &AtomicU64) {
        let count: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
        if count <= best.load(Ordering::Relaxed) {
            return;
        }
        if depth == rows.len() {
            best.fetch_max(count, Ordering::Relaxed);
            return;
        }
        let mut next = vec![0u64; self.words];
        for &f in &rows[depth] {
            for ((o, a), b) in next.iter_mut().zip(acc).zip(self.mask(f)) {
                *o = a & b;
            }
            self.search(rows, depth + 1, &next, best);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, r, &mut Vec::new(), &mut out);
    out
}

/// `d_r = n - H_r` by exhaustive search over codimension-`r` subspaces.
pub fn oracle_dr(gen: &GeneratorMatrix, field: &Field, r: usize, budget: u128) -> Result<u64> {
    let oracle = Oracle::new(gen, field)?;
    Ok(gen.n() as u64 - oracle.h(r, budget)?)
}

/// `d_1, ..., d_k` by the oracle.
pub fn oracle_hierarchy(gen: &GeneratorMatrix, field: &Field, budget: u128) -> Result<Vec<u64>> {
    let oracle = Oracle::new(gen, field)?;
    (1..=gen.k())
        .map(|r| Ok(gen.n() as u64 - oracle.h(r, budget)?))
        .collect()
}

/// Formula rows, plus `[Griesmer, D_r]` brackets for the other `r` and
/// oracle rows where the budget allows. `D_r` needs `l = 2` or an
/// enumerable grid; otherwise the bracket has no upper end.
pub fn weight_records(
    params: GrassParams,
    field: &Field,
    rs: std::ops::RangeInclusive<usize>,
    oracle: Option<(&GeneratorMatrix, u128)>,
    guard: u64,
) -> Result<Vec<WeightRecord>> {
    let q = field.q() as u64;
    let known = known_weights(params)?;
    let bounds = bound_table(params, guard).ok();
    let d1 = PointCountPoly::monomial(params.delta())
        .eval_to_u64(q)
        .unwrap_or(u64::MAX);
    let oracle = match oracle {
        Some((gen, budget)) => Some((Oracle::new(gen, field)?, budget)),
        None => None,
    };
    let mut out = Vec::new();
    for r in rs {
        if let Some((p, src)) = known.get(&r) {
            out.push(WeightRecord {
                r,
                source: *src,
                value: p.eval_to_u64(q),
                poly: Some(p.clone()),
                lower: None,
                upper: None,
            });
        } else {
            let upper = bounds
                .as_ref()
                .and_then(|t| t.row(r))
                .and_then(|row| row.d.eval_to_u64(q));
            out.push(WeightRecord {
                r,
                source: WeightSource::SchubertBound,
                poly: bounds.as_ref().and_then(|t| t.row(r)).map(|row| row.d.clone()),
                value: None,
                lower: Some(griesmer_lower(d1, q, r)),
                upper,
            });
        }
        if let Some((o, budget)) = &oracle {
            match o.h(r, *budget) {
                Ok(h) => out.push(WeightRecord {
                    r,
                    source: WeightSource::Oracle,
                    poly: None,
                    value: Some(o.n() as u64 - h),
                    lower: None,
                    upper: None,
                }),
                Err(Error::BudgetExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Parameters of the code `C_U` of a Schubert union in `G(2,m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionCodeParams {
    pub union: SchubertUnion,
    pub q: u32,
    /// Length `g_U(q)`.
    pub n: PointCountPoly,
    pub n_value: Option<u64>,
    /// Dimension `|G_U|`.
    pub k: usize,
    /// Minimum distance `q^delta`, `delta` the least Krull dimension of a maximal cycle.
    pub d1: PointCountPoly,
    /// `d_r` for the initial run of `r`.
    pub low_weights: Vec<(usize, PointCountPoly)>,
    /// `d_(K-a)` from a projective space inside the union.
    pub top_weights: Vec<(usize, PointCountPoly)>,
    /// `d_r <= g_U - M_r`, `M_r` the lex-largest sub-union of span `K - r`.
    pub relative_bounds: Vec<(usize, PointCountPoly)>,
}

/// Closed-form parameters of `C_U` (`l = 2`).
///
/// The low weights peel points `(a,b), (a-1,b), ...` off a maximal cycle of
/// least Krull dimension; each step must leave an ideal, so `(a-j, b+1)` must
/// be outside `G_U`. The top weights use the projective space
/// `S_(1,b)`, `b` the largest second coordinate of a maximum.
pub fn union_code_params(union: &SchubertUnion, field: &Field, guard: u64) -> Result<UnionCodeParams> {
    let params = union.params();
    if params.l != 2 {
        return Err(Error::NotTwoDim(params.l));
    }
    if union.is_empty() {
        return Err(Error::EmptyUnion);
    }
    let g = point_count_poly(union);
    let ideal = union.ideal();
    let k = ideal.len();
    let delta = union.maxima().iter().map(|a| a.cell_dim()).min().unwrap();
    let run = union
        .maxima()
        .iter()
        .filter(|a| a.cell_dim() == delta)
        .map(|alpha| {
            let (a, b) = (alpha.coords()[0], alpha.coords()[1]);
            let mut s = 1;
            while s < a {
                let above = crate::grid::GridPoint::new_unchecked(vec![a - s, b + 1]);
                if b < params.m && ideal.contains(&above) {
                    break;
                }
                s += 1;
            }
            s
        })
        .max()
        .unwrap();
    let low_weights = (1..=run.min(k)).map(|r| (r, descending_run(delta, r))).collect();
    let b1 = union.maxima().iter().map(|a| a.coords()[1]).max().unwrap();
    let top_weights = (0..b1)
        .filter(|&a| a < k)
        .map(|a| (k - a, &g - &PointCountPoly::geometric(a)))
        .collect();
    let mut best_by_span = vec![PointCountPoly::zero(); k + 1];
    for sub in enumerate_subunions(union, guard)? {
        let p = point_count_poly(&sub);
        let span = sub.ideal().len();
        if p > best_by_span[span] {
            best_by_span[span] = p;
        }
    }
    let relative_bounds = (1..=k).map(|r| (r, &g - &best_by_span[k - r])).collect();
    Ok(UnionCodeParams {
        union: union.clone(),
        q: field.q(),
        n_value: g.eval_to_u64(field.q() as u64),
        n: g,
        k,
        d1: PointCountPoly::monomial(delta),
        low_weights,
        top_weights,
        relative_bounds,
    })
}

/// Minimum distance by sweeping all `q^k` messages.
pub fn brute_force_min_distance(gen: &GeneratorMatrix, field: &Field) -> Result<u64> {
    let (q, k, n) = (field.q() as usize, gen.k(), gen.n());
    let total = q
        .checked_pow(k as u32)
        .filter(|&t| t <= 1 << 26)
        .ok_or(Error::BudgetExceeded {
            required: (q as u128).saturating_pow(k as u32),
            budget: 1 << 26,
        })?;
    let best = (1..total)
        .into_par_iter()
        .map(|code| {
            let msg: Vec<u8> = (0..k).map(|i| (code / q.pow(i as u32) % q) as u8).collect();
            (0..n)
                .filter(|&j| {
                    let col = gen.column(j);
                    msg.iter()
                        .zip(col)
                        .fold(0u8, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
                        != 0
                })
                .count() as u64
        })
        .min()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::{generator_matrix, DEFAULT_POINT_GUARD};

    fn p(l: usize, m: usize) -> GrassParams {
        GrassParams::new(l, m).unwrap()
    }

    fn polys(v: &[(usize, PointCountPoly)]) -> Vec<String> {
        v.iter().map(|(r, p)| format!("{r}:{p}")).collect()
    }

    #[test]
    fn nogin_and_top_formulas() {
        assert_eq!(polys(&nogin_weights(p(2, 4))), ["1:q^4", "2:q^4+q^3", "3:q^4+q^3+q^2"]);
        assert_eq!(nogin_weights(p(2, 5))[3].1.to_string(), "q^6+q^5+q^4+q^3");
        let top = top_weights(p(2, 4)).unwrap();
        let n = p(2, 4).n_poly();
        assert_eq!(top[0], (6, n.clone()));
        assert_eq!(top[3].0, 3);
        assert_eq!(top[3].1.to_string(), "q^4+q^3+q^2");
        assert_eq!(n.to_string(), "q^4+q^3+2q^2+q+1");
        let top5 = top_weights(p(2, 5)).unwrap();
        assert_eq!(
            top5.iter().find(|(r, _)| *r == 6).unwrap().1,
            &p(2, 5).n_poly() - &"q^3+q^2+q+1".parse().unwrap()
        );
    }

    #[test]
    fn d5_value() {
        assert_eq!(d5_c25().to_string(), "q^6+q^5+2q^4+q^3");
        assert_eq!(d5_c25().eval_to_u64(2), Some(136));
        assert_eq!(d5_c25(), &nogin_weights(p(2, 5))[3].1 + &PointCountPoly::monomial(4));
    }

    #[test]
    fn delta_tables_small() {
        let show = |l, m| -> Vec<String> {
            delta_table(p(l, m))
                .unwrap()
                .into_iter()
                .map(|d| d.unwrap().to_string())
                .collect()
        };
        assert_eq!(show(2, 3), ["q^2", "q", "1"]);
        assert_eq!(show(2, 4), ["q^4", "q^3", "q^2", "q^2", "q", "1"]);
        assert_eq!(
            show(2, 5),
            ["q^6", "q^5", "q^4", "q^3", "q^4", "q^2", "q^3", "q^2", "q", "1"]
        );
    }

    #[test]
    fn griesmer() {
        assert_eq!(griesmer_lower(16, 2, 3), 28);
        assert_eq!(griesmer_lower(9, 3, 4), 9 + 3 + 1 + 1);
    }

    #[test]
    fn oracle_small_hierarchy() {
        let f = Field::new(2).unwrap();
        let gen = generator_matrix(&SchubertUnion::full(p(2, 4)), &f, DEFAULT_POINT_GUARD).unwrap();
        assert_eq!(
            oracle_hierarchy(&gen, &f, DEFAULT_ORACLE_BUDGET).unwrap(),
            [16, 24, 28, 32, 34, 35]
        );
        assert!(matches!(
            oracle_dr(&gen, &f, 3, 10),
            Err(Error::BudgetExceeded {
                required: 1395,
                budget: 10
            })
        ));
    }

    #[test]
    fn projective_plane_union_code() {
        let f = Field::new(2).unwrap();
        let u = SchubertUnion::parse(p(2, 5), "(2,3)").unwrap();
        let cp = union_code_params(&u, &f, 28).unwrap();
        assert_eq!(cp.d1.to_string(), "q^2");
        assert_eq!(cp.k, 3);
        assert_eq!(cp.n_value, Some(7));
        let gen = generator_matrix(&u, &f, 100).unwrap();
        assert_eq!(brute_force_min_distance(&gen, &f).unwrap(), 4);
        let u = SchubertUnion::parse(p(2, 5), "(1,5) ∪ (2,3)").unwrap();
        assert_eq!(union_code_params(&u, &f, 28).unwrap().d1.to_string(), "q^2");
    }
}
