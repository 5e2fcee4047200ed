//! `F_q`-points of Schubert unions, their Plücker coordinates, and generator
//! matrices of Grassmann codes and Schubert-union codes.
//!
//! Every point of the cell `C_alpha` has a unique basis matrix in reduced
//! lower-left form: row `i` ends in a `1` at column `a_i`, is zero to the right
//! of it, and every pivot column is zero outside its pivot row. The remaining
//! `a_i - i` entries of row `i` are free. Points are listed cell by cell in
//! lexicographic order of `alpha`, and inside a cell in odometer order of the
//! free entries (row by row, left to right, last entry running fastest).

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FqMatrix};
use crate::grid::{full_grid, point_count_poly, GrassParams, GridPoint, SchubertUnion};

/// Default cap on the number of points enumerated.
pub const DEFAULT_POINT_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPoint {
    pub alpha: GridPoint,
    /// Values of the free positions, in the order of [`free_positions`].
    pub free: Vec<Elem>,
}

/// Free `(row, column)` positions of the reduced form of cell `alpha`, 0-based.
pub fn free_positions(alpha: &GridPoint) -> Vec<(usize, usize)> {
    let a = alpha.coords();
    let mut out = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        for col in 1..ai {
            if !a[..i].contains(&col) {
                out.push((i, col - 1));
            }
        }
    }
    out
}

impl CellPoint {
    /// The `l x m` reduced basis matrix.
    pub fn matrix(&self, m: usize) -> FqMatrix {
        let a = self.alpha.coords();
        let mut mat = FqMatrix::zeros(a.len(), m);
        for (i, &ai) in a.iter().enumerate() {
            mat.set(i, ai - 1, 1);
        }
        for (&(r, c), &v) in free_positions(&self.alpha).iter().zip(&self.free) {
            mat.set(r, c, v);
        }
        mat
    }
}

/// Plücker coordinates of a point at the given grid points: the `l x l` minor
/// on columns `b_1 < ... < b_l` of the reduced basis matrix.
pub fn pluecker_vector(field: &Field, m: usize, point: &CellPoint, coords: &[GridPoint]) -> Vec<Elem> {
    let mat = point.matrix(m);
    coords
        .iter()
        .map(|beta| {
            let cols: Vec<usize> = beta.coords().iter().map(|b| b - 1).collect();
            field.det(&mat.select_columns(&cols)).expect("square minor")
        })
        .collect()
}

/// All points of one cell, in odometer order.
pub fn cell_points(field: &Field, alpha: &GridPoint) -> Vec<CellPoint> {
    let nfree = free_positions(alpha).len();
    let q = field.q() as usize;
    let total = q.pow(nfree as u32);
    let mut out = Vec::with_capacity(total);
    let mut free = vec![0 as Elem; nfree];
    for _ in 0..total {
        out.push(CellPoint {
            alpha: alpha.clone(),
            free: free.clone(),
        });
        for i in (0..nfree).rev() {
            free[i] += 1;
            if (free[i] as usize) < q {
                break;
            }
            free[i] = 0;
        }
    }
    out
}

fn check_guard(union: &SchubertUnion, field: &Field, guard: u64) -> Result<u64> {
    let count = point_count_poly(union)
        .eval_to_u64(field.q() as u64)
        .unwrap_or(u64::MAX);
    if count > guard {
        Err(Error::TooLarge { points: count, guard })
    } else {
        Ok(count)
    }
}

/// Every `F_q`-point of the union with its full Plücker vector (indexed by
/// [`full_grid`]), in the documented order.
pub fn enumerate_points(union: &SchubertUnion, field: &Field, guard: u64) -> Result<Vec<(CellPoint, Vec<Elem>)>> {
    check_guard(union, field, guard)?;
    let params = union.params();
    let coords = full_grid(params);
    let cells: Vec<GridPoint> = union.ideal().into_iter().collect();
    let per_cell: Vec<Vec<(CellPoint, Vec<Elem>)>> = cells
        .par_iter()
        .map(|alpha| {
            cell_points(field, alpha)
                .into_iter()
                .map(|p| {
                    let v = pluecker_vector(field, params.m, &p, &coords);
                    (p, v)
                })
                .collect()
        })
        .collect();
    Ok(per_cell.into_iter().flatten().collect())
}

/// Generator matrix with one column per point of the union; rows are the
/// Plücker coordinates indexed by `G_U` (the coordinates in `H_U` vanish on
/// the union and are dropped).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatrix {
    pub q: u32,
    pub params: GrassParams,
    pub union: SchubertUnion,
    pub rows: Vec<GridPoint>,
    /// Cell of each column.
    pub cells: Vec<GridPoint>,
    /// Column-major, `rows.len()` entries per column.
    columns: Vec<Elem>,
}

impl GeneratorMatrix {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn column(&self, j: usize) -> &[Elem] {
        let k = self.k();
        &self.columns[j * k..(j + 1) * k]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.n()).map(move |j| self.column(j))
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.columns[j * self.k() + i]
    }

    /// Row-major `k x n` matrix.
    pub fn to_matrix(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.k(), self.n());
        for j in 0..self.n() {
            for i in 0..self.k() {
                out.set(i, j, self.entry(i, j));
            }
        }
        out
    }

    /// One column per line, entries as decimal integers separated by spaces.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        for col in self.columns() {
            let line: Vec<String> = col.iter().map(|e| e.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// A JSON header line `{q,l,m,rows,n,union}` followed by the row-major entries, one byte each.
    pub fn write_binary<W: Write>(&self, mut w: W) -> io::Result<()> {
        let header = serde_json::json!({
            "q": self.q,
            "l": self.params.l,
            "m": self.params.m,
            "rows": self.k(),
            "n": self.n(),
            "union": self.union,
        });
        writeln!(w, "{header}")?;
        w.write_all(&self.to_matrix().data)
    }
}

pub fn generator_matrix(union: &SchubertUnion, field: &Field, guard: u64) -> Result<GeneratorMatrix> {
    check_guard(union, field, guard)?;
    let params = union.params();
    let rows: Vec<GridPoint> = union.ideal().into_iter().collect();
    let per_cell: Vec<(Vec<GridPoint>, Vec<Elem>)> = rows
        .par_iter()
        .map(|alpha| {
            let pts = cell_points(field, alpha);
            let mut cols = Vec::with_capacity(pts.len() * rows.len());
            for p in &pts {
                cols.extend(pluecker_vector(field, params.m, p, &rows));
            }
            (vec![alpha.clone(); pts.len()], cols)
        })
        .collect();
    let mut cells = Vec::new();
    let mut columns = Vec::new();
    for (c, cols) in per_cell {
        cells.extend(c);
        columns.extend(cols);
    }
    Ok(GeneratorMatrix {
        q: field.q(),
        params,
        union: union.clone(),
        rows,
        cells,
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::enumerate_ideals;

    fn p(l: usize, m: usize) -> GrassParams {
        GrassParams::new(l, m).unwrap()
    }

    #[test]
    fn reduced_form_layout() {
        let alpha = p(3, 6).point(&[2, 4, 6]).unwrap();
        assert_eq!(
            free_positions(&alpha),
            vec![(0, 0), (1, 0), (1, 2), (2, 0), (2, 2), (2, 4)]
        );
        let cp = CellPoint {
            alpha,
            free: vec![1; 6],
        };
        let mat = cp.matrix(6);
        assert_eq!(mat.row(0), &[1, 1, 0, 0, 0, 0]);
        assert_eq!(mat.row(1), &[1, 0, 1, 1, 0, 0]);
        assert_eq!(mat.row(2), &[1, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn point_counts() {
        let f2 = Field::new(2).unwrap();
        let full = SchubertUnion::full(p(2, 4));
        assert_eq!(enumerate_points(&full, &f2, DEFAULT_POINT_GUARD).unwrap().len(), 35);
        let u = SchubertUnion::parse(p(2, 5), "(2,5)").unwrap();
        assert_eq!(enumerate_points(&u, &f2, DEFAULT_POINT_GUARD).unwrap().len(), 43);
        assert!(matches!(
            enumerate_points(&SchubertUnion::full(p(2, 5)), &f2, 100),
            Err(Error::TooLarge {
                points: 155,
                guard: 100
            })
        ));
    }

    #[test]
    fn own_coordinate_is_one_and_higher_vanish() {
        let f3 = Field::new(3).unwrap();
        let params = p(2, 5);
        let grid = full_grid(params);
        for (pt, v) in enumerate_points(&SchubertUnion::full(params), &f3, DEFAULT_POINT_GUARD).unwrap() {
            for (beta, x) in grid.iter().zip(&v) {
                if *beta == pt.alpha {
                    assert_eq!(*x, 1);
                } else if !beta.leq(&pt.alpha) {
                    // some b_i > a_i
                    assert_eq!(*x, 0);
                }
            }
        }
    }

    #[test]
    fn pluecker_quadric_g24() {
        for q in [2, 3, 4] {
            let f = Field::new(q).unwrap();
            // coordinates in lex order: 12 13 14 23 24 34
            for (_, x) in enumerate_points(&SchubertUnion::full(p(2, 4)), &f, DEFAULT_POINT_GUARD).unwrap() {
                let t = f.sub(f.mul(x[0], x[5]), f.mul(x[1], x[4]));
                assert_eq!(f.add(t, f.mul(x[2], x[3])), 0);
            }
        }
    }

    #[test]
    fn l_equal_one_is_the_row() {
        let f = Field::new(3).unwrap();
        for (pt, v) in enumerate_points(&SchubertUnion::full(p(1, 3)), &f, DEFAULT_POINT_GUARD).unwrap() {
            assert_eq!(pt.matrix(3).row(0), &v[..]);
        }
    }

    #[test]
    fn generator_rank_equals_span() {
        for q in [2, 3] {
            let f = Field::new(q).unwrap();
            for m in [4, 5] {
                for u in enumerate_ideals(p(2, m), 28).unwrap() {
                    let g = generator_matrix(&u, &f, DEFAULT_POINT_GUARD).unwrap();
                    assert_eq!(g.k(), u.ideal().len());
                    assert_eq!(f.rank(&g.to_matrix()), g.k(), "{u} q={q}");
                    assert_eq!(g.n() as u64, point_count_poly(&u).eval_to_u64(q as u64).unwrap());
                }
            }
        }
        let g = generator_matrix(&SchubertUnion::empty(p(2, 5)), &Field::new(2).unwrap(), 10).unwrap();
        assert_eq!((g.k(), g.n()), (0, 0));
    }

    #[test]
    fn exports() {
        let f = Field::new(2).unwrap();
        let u = SchubertUnion::parse(p(2, 5), "(2,3)").unwrap();
        let g = generator_matrix(&u, &f, 100).unwrap();
        assert_eq!((g.k(), g.n()), (3, 7));
        let mut text = Vec::new();
        g.write_text(&mut text).unwrap();
        let text = String::from_utf8(text).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert_eq!(text.lines().next().unwrap(), "1 0 0");
        let mut bin = Vec::new();
        g.write_binary(&mut bin).unwrap();
        let nl = bin.iter().position(|&b| b == b'\n').unwrap();
        let header: serde_json::Value = serde_json::from_slice(&bin[..nl]).unwrap();
        assert_eq!(header["n"], 7);
        assert_eq!(header["rows"], 3);
        assert_eq!(bin.len() - nl - 1, 21);
    }
}
