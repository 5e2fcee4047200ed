//! Grid duality: the dual of a union has as its grid the reversed complement
//! of the original grid.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{canonicalize, point_count_poly, GrassParams, GridPoint, SchubertUnion};
use crate::poly::PointCountPoly;

/// `(a_1,...,a_l) -> (m+1-a_l, ..., m+1-a_1)`, an order-reversing involution.
pub fn rev(params: GrassParams, alpha: &GridPoint) -> GridPoint {
    GridPoint::new_unchecked(alpha.coords().iter().rev().map(|a| params.m + 1 - a).collect())
}

/// `U*`, whose grid is `rev(H_U)`.
pub fn dual_union(union: &SchubertUnion) -> SchubertUnion {
    let params = union.params();
    let points: BTreeSet<GridPoint> = union.h_grid().iter().map(|b| rev(params, b)).collect();
    canonicalize(params, &points).expect("reversed complement of an ideal is an ideal")
}

/// The dual computed cycle by cycle from the maxima, without touching the grid.
///
/// `beta` lies in `G_{U*}` iff `rev(beta)` lies above none of the maxima
/// `alpha_i`, i.e. for every `i` some coordinate `j` has
/// `b_{l+1-j} <= m - a_{i,j}`. Fixing the witness coordinate `phi(i)` for
/// every `i` gives a product of upper bounds `b_t <= u_t`, whose ideal is a
/// single cycle. The dual is the union of these over all `phi: I -> {1..l}`.
pub fn dual_union_explicit(union: &SchubertUnion) -> SchubertUnion {
    let params = union.params();
    let (l, m) = (params.l, params.m);
    let maxima = union.maxima();
    let s = maxima.len();
    let mut cycles = Vec::new();
    let mut phi = vec![0usize; s];
    loop {
        let mut u = vec![m; l];
        for (i, alpha) in maxima.iter().enumerate() {
            let j = phi[i];
            let t = l - 1 - j;
            u[t] = u[t].min(m - alpha.coords()[j]);
        }
        // Largest strictly increasing tuple below u, if any.
        let mut f = vec![0usize; l];
        let mut ok = true;
        for t in (0..l).rev() {
            f[t] = if t + 1 == l { u[t] } else { u[t].min(f[t + 1] - 1) };
            if f[t] < t + 1 {
                ok = false;
                break;
            }
        }
        if ok {
            cycles.push(GridPoint::new_unchecked(f));
        }
        // Odometer over phi.
        let mut i = 0;
        while i < s {
            phi[i] += 1;
            if phi[i] < l {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
        if i == s {
            break;
        }
    }
    SchubertUnion::from_points(params, cycles)
}

/// `q^delta * h_U(1/q)` with `h_U = n - g_U`; equals the point count of `U*`.
pub fn dual_point_count(union: &SchubertUnion) -> Result<PointCountPoly> {
    let params = union.params();
    let h = &params.n_poly() - &point_count_poly(union);
    h.reciprocal(params.delta())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub union: SchubertUnion,
    pub dual: SchubertUnion,
    pub span_primal: usize,
    pub span_dual: usize,
}

impl DualityReport {
    pub fn new(union: &SchubertUnion) -> Self {
        let dual = dual_union(union);
        Self {
            span_primal: union.ideal().len(),
            span_dual: dual.ideal().len(),
            union: union.clone(),
            dual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{enumerate_ideals, full_grid};

    fn u(l: usize, m: usize, s: &str) -> SchubertUnion {
        SchubertUnion::parse(GrassParams::new(l, m).unwrap(), s).unwrap()
    }

    #[test]
    fn rev_examples() {
        let p27 = GrassParams::new(2, 7).unwrap();
        assert_eq!(rev(p27, &p27.point(&[3, 5]).unwrap()), p27.point(&[3, 5]).unwrap());
        assert_eq!(rev(p27, &p27.point(&[1, 2]).unwrap()), p27.point(&[6, 7]).unwrap());
        let p36 = GrassParams::new(3, 6).unwrap();
        assert_eq!(
            rev(p36, &p36.point(&[1, 2, 4]).unwrap()),
            p36.point(&[3, 5, 6]).unwrap()
        );
        for a in full_grid(p36) {
            assert_eq!(rev(p36, &rev(p36, &a)), a);
            for b in full_grid(p36) {
                assert_eq!(a.leq(&b), rev(p36, &b).leq(&rev(p36, &a)));
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_union(&u(2, 7, "(3,5)")), u(2, 7, "(2,7) ∪ (3,4)"));
        assert_eq!(dual_union(&u(2, 7, "(5,6)")), u(2, 7, "(1,7)"));
        assert_eq!(dual_union(&u(2, 7, "(3,7)")), u(2, 7, "(3,4)"));
        assert_eq!(dual_union(&u(3, 6, "(1,3,5)")), u(3, 6, "(1,5,6) ∪ (2,3,6) ∪ (3,4,5)"));
        assert_eq!(dual_union_explicit(&u(2, 7, "(3,5)")), u(2, 7, "(2,7) ∪ (3,4)"));
        let p = GrassParams::new(3, 6).unwrap();
        assert_eq!(dual_union_explicit(&SchubertUnion::empty(p)), SchubertUnion::full(p));
        assert!(dual_union(&SchubertUnion::full(p)).is_empty());
    }

    #[test]
    fn explicit_dual_and_reciprocity_agree_exhaustively() {
        for (l, m) in [(2, 4), (2, 5), (2, 6), (3, 6), (3, 5), (4, 7)] {
            let p = GrassParams::new(l, m).unwrap();
            for x in enumerate_ideals(p, 40).unwrap() {
                let d = dual_union(&x);
                assert_eq!(dual_union_explicit(&x), d, "{x}");
                assert_eq!(dual_union(&d), x);
                assert_eq!(dual_point_count(&x).unwrap(), point_count_poly(&d));
                let rep = DualityReport::new(&x);
                assert_eq!(rep.span_primal + rep.span_dual, full_grid(p).len());
            }
        }
    }

    #[test]
    fn dual_point_count_extremes() {
        let p = GrassParams::new(2, 5).unwrap();
        assert!(dual_point_count(&SchubertUnion::full(p)).unwrap().is_zero());
        assert_eq!(dual_point_count(&SchubertUnion::empty(p)).unwrap(), p.n_poly());
    }
}
