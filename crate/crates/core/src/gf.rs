//! Small finite fields `GF(q)` with table-driven arithmetic, and matrices over them.
//!
//! An element is a `u8` in `0..q`. For `q = p^e` with `e > 1` the integer
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` stands for the residue of
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` modulo the fixed modulus of that `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = u8;

/// Default moduli for prime powers, lowest coefficient first (monic).
pub const DEFAULT_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),    // x^2 + x + 1 over GF(2)
    (8, &[1, 1, 0, 1]), // x^3 + x + 1 over GF(2)
    (9, &[2, 2, 1]),    // x^2 + 2x + 2 over GF(3)
];

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Characteristic and modulus of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Monic, lowest coefficient first; `[0, 1]` (i.e. `x`) for prime fields.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// Primes below 256 and the prime powers in [`DEFAULT_MODULI`].
    pub fn for_q(q: u32) -> Result<Self> {
        if is_prime(q) && q < 256 {
            return Ok(Self {
                p: q,
                e: 1,
                q,
                modulus: vec![0, 1],
            });
        }
        let (_, modulus) = DEFAULT_MODULI
            .iter()
            .find(|(qq, _)| *qq == q)
            .ok_or(Error::UnsupportedField(q))?;
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        Self::with_modulus(p, modulus.to_vec())
    }

    /// A field `GF(p^e)` from an explicit monic modulus of degree `e`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let e = modulus.len().saturating_sub(1) as u32;
        if !is_prime(p) || e == 0 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid(format!("bad modulus {modulus:?} over GF({p})")));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q < 256)
            .ok_or(Error::UnsupportedField(p.saturating_pow(e)))?;
        if !poly_irreducible(p, &modulus) {
            return Err(Error::ReducibleModulus { q });
        }
        Ok(Self { p, e, q, modulus })
    }
}

/// Reduces `a` modulo `b` (monic) over `GF(p)`; both lowest coefficient first.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p * p - c * bj % p) % p;
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// No monic factor of degree `1..=deg/2`; exhaustive, fine for the sizes used here.
fn poly_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// `GF(q)` with precomputed addition, multiplication, negation and inverse tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        Self::from_spec(FieldSpec::for_q(q)?)
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        let q = spec.q as usize;
        let (p, e) = (spec.p, spec.e as usize);
        let digits = |x: usize| -> Vec<u32> { (0..e).map(|i| (x as u32 / p.pow(i as u32)) % p).collect() };
        let pack = |c: &[u32]| -> Elem { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as Elem };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s);
                let mut prod = vec![0u32; 2 * e];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = if e == 1 {
                    vec![prod[0]]
                } else {
                    poly_rem(p, &prod, &spec.modulus)
                };
                r.resize(e, 0);
                mul[a * q + b] = pack(&r);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as Elem)
            .collect();
        Ok(Self {
            spec,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.spec.q as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.spec.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.spec.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero(self.spec.q))
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// Determinant of a square matrix by elimination.
    pub fn det(&self, mat: &FqMatrix) -> Result<Elem> {
        if mat.rows != mat.cols {
            return Err(Error::Invalid(format!("det of a {}x{} matrix", mat.rows, mat.cols)));
        }
        let n = mat.rows;
        let mut a = mat.clone();
        let mut det: Elem = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return Ok(0);
            };
            if piv != c {
                a.swap_rows(piv, c);
                det = self.neg(det);
            }
            let pv = a.get(c, c);
            det = self.mul(det, pv);
            let pinv = self.inv(pv)?;
            for r in c + 1..n {
                let f = self.mul(a.get(r, c), pinv);
                if f != 0 {
                    for j in c..n {
                        let v = self.sub(a.get(r, j), self.mul(f, a.get(c, j)));
                        a.set(r, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form.
    pub fn row_reduce(&self, mat: &FqMatrix) -> FqMatrix {
        let mut a = mat.clone();
        let mut row = 0;
        for c in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(piv) = (row..a.rows).find(|&r| a.get(r, c) != 0) else {
                continue;
            };
            a.swap_rows(piv, row);
            let pinv = self.inv(a.get(row, c)).expect("pivot is nonzero");
            for j in 0..a.cols {
                let v = self.mul(a.get(row, j), pinv);
                a.set(row, j, v);
            }
            for r in 0..a.rows {
                let f = a.get(r, c);
                if r != row && f != 0 {
                    for j in 0..a.cols {
                        let v = self.sub(a.get(r, j), self.mul(f, a.get(row, j)));
                        a.set(r, j, v);
                    }
                }
            }
            row += 1;
        }
        a
    }

    pub fn rank(&self, mat: &FqMatrix) -> usize {
        let red = self.row_reduce(mat);
        (0..red.rows)
            .filter(|&r| (0..red.cols).any(|c| red.get(r, c) != 0))
            .count()
    }
}

/// Dense row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Columns `cols` (in the given order) of all rows.
    pub fn select_columns(&self, cols: &[usize]) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

    #[test]
    fn field_axioms_exhaustive() {
        for q in SUPPORTED {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.inv(0), Err(Error::DivisionByZero(q)));
        }
    }

    #[test]
    fn small_facts() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        // x = 2 in GF(4); x*x = x+1 = 3.
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        assert!(Field::new(6).is_err());
        assert!(Field::new(16).is_err());
        assert_eq!(
            FieldSpec::with_modulus(2, vec![1, 0, 1]).unwrap_err(),
            Error::ReducibleModulus { q: 4 }
        );
        assert_eq!(Field::new(251).unwrap().q(), 251);
    }

    #[test]
    fn rank_and_det() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.rank(&FqMatrix::identity(3)), 3);
        assert_eq!(f.rank(&FqMatrix::zeros(3, 4)), 0);
        let m = FqMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(f.rank(&m), 2);
        assert_eq!(f.det(&m).unwrap(), 0);
        let f3 = Field::new(3).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 2], vec![2, 2]]);
        // 1*2 - 2*2 = -2 = 1 mod 3
        assert_eq!(f3.det(&m).unwrap(), 1);
        let red = f3.row_reduce(&m);
        assert_eq!(red, FqMatrix::identity(2));
    }
}
