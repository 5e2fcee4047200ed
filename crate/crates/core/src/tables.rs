//! Row types for the tabular outputs: union listings, dual pairs and bounds.

use serde::{Deserialize, Serialize};

use crate::duality::dual_union;
use crate::error::Result;
use crate::grid::{enumerate_ideals, krull_dimension, point_count_poly, GrassParams, SchubertUnion};
use crate::optimizer::BoundTable;
use crate::poly::PointCountPoly;
use crate::twodim::union_to_mset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionRow {
    pub union: String,
    pub span: usize,
    pub krull: i64,
    /// Column counts, `l = 2` only.
    pub mset: Option<String>,
    pub poly: String,
    /// `g_U` is lex-largest among unions of the same span.
    pub maximal: bool,
}

/// Every union of `G(l,m)`, sorted by span and then by `g_U`.
pub fn enumerate_rows(params: GrassParams, guard: u64) -> Result<Vec<UnionRow>> {
    let mut all: Vec<(usize, PointCountPoly, SchubertUnion)> = enumerate_ideals(params, guard)?
        .map(|u| (u.ideal().len(), point_count_poly(&u), u))
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)).then_with(|| a.2.cmp(&b.2)));
    let mut best: Vec<Option<PointCountPoly>> = vec![None; all.last().map_or(0, |x| x.0) + 1];
    for (span, g, _) in &all {
        best[*span] = Some(g.clone());
    }
    Ok(all
        .into_iter()
        .map(|(span, g, u)| UnionRow {
            union: u.to_string(),
            span,
            krull: krull_dimension(&u),
            mset: union_to_mset(&u).ok().map(|m| m.to_string()),
            poly: g.to_string(),
            maximal: best[span].as_ref() == Some(&g),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRow {
    pub union: String,
    pub span: usize,
    pub dual: String,
    pub dual_span: usize,
    pub maximal: bool,
}

/// Every union with its dual, in the order of [`enumerate_rows`].
pub fn dual_rows(params: GrassParams, guard: u64) -> Result<Vec<DualRow>> {
    let rows = enumerate_rows(params, guard)?;
    rows.into_iter()
        .map(|row| {
            let u = SchubertUnion::parse(params, &row.union)?;
            let d = dual_union(&u);
            Ok(DualRow {
                union: row.union,
                span: row.span,
                dual_span: d.ideal().len(),
                dual: d.to_string(),
                maximal: row.maximal,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRowOut {
    pub r: usize,
    pub span: usize,
    pub j: String,
    pub d: String,
    pub e: String,
    pub direction: Option<String>,
    pub union: Option<String>,
}

pub fn bound_rows(table: &BoundTable) -> Vec<BoundRowOut> {
    table
        .rows
        .iter()
        .map(|row| BoundRowOut {
            r: row.r,
            span: row.span,
            j: row.j.to_string(),
            d: row.d.to_string(),
            e: if row.r == 0 { String::new() } else { row.e.to_string() },
            direction: row.direction.map(|d| d.to_string()),
            union: row.union.as_ref().map(|u| u.to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g25_rows() {
        let rows = enumerate_rows(GrassParams::new(2, 5).unwrap(), 28).unwrap();
        assert_eq!(rows.len(), 16);
        let r = rows.iter().find(|r| r.union == "(1,4) ∪ (2,3)").unwrap();
        assert_eq!(
            (r.span, r.krull, r.mset.as_deref(), r.poly.as_str(), r.maximal),
            (4, 2, Some("{1,3}"), "2q^2+q+1", false)
        );
        assert_eq!(rows[0].union, "∅");
        assert_eq!(rows[0].poly, "0");
    }

    #[test]
    fn dual_rows_complement_spans() {
        for row in dual_rows(GrassParams::new(3, 6).unwrap(), 28).unwrap() {
            assert_eq!(row.span + row.dual_span, 20);
        }
    }
}
