//! Checks of open questions on instances small enough to compute.
//!
//! Each check reports an outcome per instance; none of them is a theorem.

use serde::{Deserialize, Serialize};

use crate::duality::dual_union;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grid::{enumerate_ideals, point_count_poly, GrassParams, SchubertUnion};
use crate::optimizer::{bound_table, candidates, lex_compare};
use crate::pluecker::generator_matrix;
use crate::poly::PointCountPoly;
use crate::weights::{delta_table, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Question {
    Q3,
    Q4,
    Q8,
    Q9,
}

impl std::str::FromStr for Question {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "Q3" => Ok(Question::Q3),
            "Q4" => Ok(Question::Q4),
            "Q8" => Ok(Question::Q8),
            "Q9" => Ok(Question::Q9),
            other => Err(Error::Invalid(format!(
                "unknown question {other:?}; expected Q3, Q4, Q8 or Q9"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub question: Question,
    pub params: GrassParams,
    /// `None` when the instance only reports data.
    pub affirmative: Option<bool>,
    /// Indices (`r` or `K`) where the property fails.
    pub witnesses: Vec<usize>,
    pub details: Vec<String>,
}

impl ExperimentOutcome {
    pub fn summary(&self) -> String {
        match (self.affirmative, self.witnesses.first()) {
            (Some(true), _) => "affirmative".to_string(),
            (Some(false), Some(w)) => {
                let key = if self.question == Question::Q8 { "K" } else { "r" };
                format!("negative (witness {key}={w})")
            }
            (Some(false), None) => "negative".to_string(),
            (None, _) => "reported".to_string(),
        }
    }
}

/// `p(q) = q^delta * p'(1/q)`, false when `p'` has degree above `delta`.
fn reciprocal_pair(p: &PointCountPoly, partner: &PointCountPoly, delta: usize) -> bool {
    partner.reciprocal(delta).is_ok_and(|r| r == *p)
}

/// `Delta_r(q) = q^delta * Delta_(k+1-r)(1/q)` for every pair where both are known.
pub fn q3_delta_reciprocity(params: GrassParams) -> Result<ExperimentOutcome> {
    let deltas = delta_table(params)?;
    let k = deltas.len();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for r in 1..=k {
        if let (Some(a), Some(b)) = (&deltas[r - 1], &deltas[k - r]) {
            checked += 1;
            if !reciprocal_pair(a, b, params.delta()) {
                witnesses.push(r);
            }
        }
    }
    let complete = deltas.iter().all(Option::is_some);
    Ok(ExperimentOutcome {
        question: Question::Q3,
        params,
        affirmative: if complete || !witnesses.is_empty() {
            Some(witnesses.is_empty())
        } else {
            None
        },
        witnesses,
        details: vec![format!("{checked} of {k} indices have both weights known")],
    })
}

/// `E_r(q) = q^delta * E_(k+1-r)(1/q)` for `r = 1..=k`.
pub fn q9_e_reciprocity(params: GrassParams, guard: u64) -> Result<ExperimentOutcome> {
    let table = bound_table(params, guard)?;
    let e = table.e_sequence();
    let k = e.len();
    let witnesses: Vec<usize> = (1..=k)
        .filter(|&r| !reciprocal_pair(&e[r - 1], &e[k - r], params.delta()))
        .collect();
    let details = witnesses
        .iter()
        .map(|&r| format!("E_{r} = {}, E_{} = {}", e[r - 1], k + 1 - r, e[k - r]))
        .collect();
    Ok(ExperimentOutcome {
        question: Question::Q9,
        params,
        affirmative: Some(witnesses.is_empty()),
        witnesses,
        details,
    })
}

/// Unions attaining the lex-largest `g_U` at each spanning dimension.
fn optimal_unions(params: GrassParams, guard: u64) -> Result<Vec<Vec<SchubertUnion>>> {
    let k = params.k().unwrap_or(u64::MAX) as usize;
    if params.l == 2 {
        return (0..=k)
            .map(|span| {
                let (l, r) = candidates(params, span)?;
                Ok(match lex_compare(&l.poly, &r.poly) {
                    std::cmp::Ordering::Greater => vec![l.union],
                    std::cmp::Ordering::Less => vec![r.union],
                    std::cmp::Ordering::Equal if l.union == r.union => vec![l.union],
                    std::cmp::Ordering::Equal => vec![l.union, r.union],
                })
            })
            .collect();
    }
    let mut best: Vec<(PointCountPoly, Vec<SchubertUnion>)> = vec![(PointCountPoly::zero(), Vec::new()); k + 1];
    for u in enumerate_ideals(params, guard)? {
        let g = point_count_poly(&u);
        let slot = &mut best[u.ideal().len()];
        match g.cmp(&slot.0) {
            std::cmp::Ordering::Greater => *slot = (g, vec![u]),
            std::cmp::Ordering::Equal => slot.1.push(u),
            std::cmp::Ordering::Less => {}
        }
    }
    Ok(best.into_iter().map(|(_, us)| us).collect())
}

/// Does the dual of every optimal union at span `K` attain the optimum at span `k-K`?
/// For `l = 2` the optimal unions are the winning left/right candidates.
pub fn q8_dual_optimality(params: GrassParams, guard: u64) -> Result<ExperimentOutcome> {
    let table = bound_table(params, guard)?;
    let k = table.rows.len() - 1;
    let opt = optimal_unions(params, guard)?;
    let mut witnesses = Vec::new();
    let mut details = Vec::new();
    for (span, unions) in opt.iter().enumerate() {
        let target = &table.rows[span].j; // row r = k - (k - span)
        for u in unions {
            let d = dual_union(u);
            let g = point_count_poly(&d);
            if g != *target {
                witnesses.push(span);
                details.push(format!(
                    "K={span}: {u} is optimal but its dual {d} has {g} < J at span {} = {target}",
                    k - span
                ));
                break;
            }
        }
    }
    Ok(ExperimentOutcome {
        question: Question::Q8,
        params,
        affirmative: Some(witnesses.is_empty()),
        witnesses,
        details,
    })
}

/// Compares, per `r`, the oracle value `H_(k-r)` with the point count of the
/// dual of an optimal union at codimension `r`. Reports only.
pub fn q4_dual_sections(params: GrassParams, q: u32, budget: u128, guard: u64) -> Result<ExperimentOutcome> {
    let field = Field::new(q)?;
    let gen = generator_matrix(
        &SchubertUnion::full(params),
        &field,
        guard.max(crate::pluecker::DEFAULT_POINT_GUARD),
    )?;
    let oracle = Oracle::new(&gen, &field)?;
    let table = bound_table(params, guard)?;
    let opt = optimal_unions(params, guard)?;
    let k = table.rows.len() - 1;
    let mut details = Vec::new();
    for r in 1..k {
        let h_r = oracle.h(r, budget).ok();
        let h_dual = oracle.h(k - r, budget).ok();
        let u = &opt[k - r][0];
        let dual_count = point_count_poly(&dual_union(u)).eval_to_u64(q as u64);
        let j_r = table.rows[r].j.eval_to_u64(q as u64);
        let fmt = |x: Option<u64>| x.map_or("?".to_string(), |v| v.to_string());
        details.push(format!(
            "r={r}: H_r={} J_r={} H_(k-r)={} |dual of optimal U|={}",
            fmt(h_r),
            fmt(j_r),
            fmt(h_dual),
            fmt(dual_count)
        ));
    }
    Ok(ExperimentOutcome {
        question: Question::Q4,
        params,
        affirmative: None,
        witnesses: Vec::new(),
        details,
    })
}

pub fn run(question: Question, params: GrassParams, q: u32, budget: u128, guard: u64) -> Result<ExperimentOutcome> {
    match question {
        Question::Q3 => q3_delta_reciprocity(params),
        Question::Q4 => q4_dual_sections(params, q, budget, guard),
        Question::Q8 => q8_dual_optimality(params, guard),
        Question::Q9 => q9_e_reciprocity(params, guard),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: usize, m: usize) -> GrassParams {
        GrassParams::new(l, m).unwrap()
    }

    #[test]
    fn q3_small() {
        for m in 3..=5 {
            assert_eq!(q3_delta_reciprocity(p(2, m)).unwrap().affirmative, Some(true));
        }
        assert_eq!(q3_delta_reciprocity(p(2, 7)).unwrap().affirmative, None);
    }

    #[test]
    fn q8_q9_answers() {
        for m in 3..=8 {
            assert_eq!(
                q8_dual_optimality(p(2, m), 28).unwrap().summary(),
                "affirmative",
                "m={m}"
            );
            assert_eq!(q9_e_reciprocity(p(2, m), 28).unwrap().summary(), "affirmative");
        }
        assert_eq!(
            q8_dual_optimality(p(2, 10), 28).unwrap().summary(),
            "negative (witness K=22)"
        );
        // r = 23 pairs with itself and would need E_23 = q^8; it is q^7.
        let q9 = q9_e_reciprocity(p(2, 10), 28).unwrap();
        assert_eq!(q9.witnesses, [22, 23, 24]);
    }

    #[test]
    fn q4_reports_only() {
        let out = q4_dual_sections(p(2, 4), 2, 1_000_000, 28).unwrap();
        assert_eq!(out.affirmative, None);
        assert_eq!(out.details.len(), 5);
    }
}
