//! The grid of Plücker indices of `G(l,m)` and Schubert unions as its order ideals.
//!
//! A grid point `(a_1,...,a_l)` with `1 <= a_1 < ... < a_l <= m` labels both a
//! Plücker coordinate and a Schubert cell. Points are ordered coordinatewise;
//! a Schubert union is a downward closed set of points and is stored by the
//! antichain of its maximal elements.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::PointCountPoly;

/// Default cap on the number of grid points for exhaustive ideal enumeration.
pub const DEFAULT_ENUMERATION_GUARD: u64 = 28;

/// Hard limit of the bitmask-based enumerator.
const MAX_ENUMERABLE_POINTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassParams {
    pub l: usize,
    pub m: usize,
}

impl GrassParams {
    pub fn new(l: usize, m: usize) -> Result<Self> {
        if l == 0 || l >= m {
            return Err(Error::InvalidParams { l, m });
        }
        Ok(Self { l, m })
    }

    /// `binomial(m, l)`, the number of Plücker coordinates.
    pub fn k_big(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for i in 0..self.l {
            acc = acc * BigUint::from(self.m - i) / BigUint::from(i + 1);
        }
        acc
    }

    /// `binomial(m, l)` when it fits in a `u64`.
    pub fn k(&self) -> Option<u64> {
        self.k_big().to_u64()
    }

    /// Krull dimension `l(m-l)` of the Grassmannian.
    pub fn delta(&self) -> usize {
        self.l * (self.m - self.l)
    }

    /// `l(l+1)/2`, the coordinate sum of the bottom point.
    pub fn base_weight(&self) -> usize {
        self.l * (self.l + 1) / 2
    }

    pub fn top_point(&self) -> GridPoint {
        GridPoint::new_unchecked((self.m - self.l + 1..=self.m).collect())
    }

    pub fn bottom_point(&self) -> GridPoint {
        GridPoint::new_unchecked((1..=self.l).collect())
    }

    pub fn point(&self, coords: &[usize]) -> Result<GridPoint> {
        GridPoint::new(*self, coords.to_vec())
    }

    /// Number of `F_q`-points of `G(l,m)` as a polynomial in `q`.
    pub fn n_poly(&self) -> PointCountPoly {
        PointCountPoly::gaussian_binomial(self.m, self.l)
    }
}

impl fmt::Display for GrassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.l, self.m)
    }
}

/// A strictly increasing tuple; the order derived here is lexicographic,
/// which is a linear extension of the coordinatewise partial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridPoint(Vec<usize>);

impl GridPoint {
    pub fn new(params: GrassParams, coords: Vec<usize>) -> Result<Self> {
        let ok = coords.len() == params.l
            && coords.first().is_some_and(|&a| a >= 1)
            && coords.last().is_some_and(|&a| a <= params.m)
            && coords.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self(coords))
        } else {
            Err(Error::InvalidPoint(coords, params.l, params.m))
        }
    }

    pub(crate) fn new_unchecked(coords: Vec<usize>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinatewise order.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise minimum; indexes the intersection of two Schubert cycles.
    pub fn meet(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coord_sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Dimension of the cell `C_alpha`: `sum a_i - l(l+1)/2`.
    pub fn cell_dim(&self) -> usize {
        let l = self.0.len();
        self.coord_sum() - l * (l + 1) / 2
    }

    /// Points covered by `self` (one coordinate decreased by one).
    pub fn lower_covers(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            let floor = if i == 0 { 1 } else { self.0[i - 1] + 1 };
            if self.0[i] > floor {
                let mut c = self.0.clone();
                c[i] -= 1;
                out.push(Self(c));
            }
        }
        out
    }

    /// Points covering `self` inside the grid of `G(l,m)`.
    pub fn upper_covers(&self, m: usize) -> Vec<GridPoint> {
        let mut out = Vec::new();
        let l = self.0.len();
        for i in 0..l {
            let ceil = if i + 1 == l { m } else { self.0[i + 1] - 1 };
            if self.0[i] < ceil {
                let mut c = self.0.clone();
                c[i] += 1;
                out.push(Self(c));
            }
        }
        out
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// All grid points `beta <= alpha`, in lexicographic order.
pub fn points_below(alpha: &GridPoint) -> Vec<GridPoint> {
    fn rec(alpha: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<GridPoint>) {
        let i = prefix.len();
        if i == alpha.len() {
            out.push(GridPoint(prefix.clone()));
            return;
        }
        let lo = prefix.last().map_or(1, |&p| p + 1);
        for b in lo..=alpha[i] {
            prefix.push(b);
            rec(alpha, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&alpha.0, &mut Vec::with_capacity(alpha.len()), &mut out);
    out
}

/// All `binomial(m,l)` grid points in lexicographic order.
pub fn full_grid(params: GrassParams) -> Vec<GridPoint> {
    points_below(&params.top_point())
}

/// A Schubert union, canonically its antichain of maxima sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchubertUnion {
    params: GrassParams,
    maxima: Vec<GridPoint>,
}

impl SchubertUnion {
    pub fn empty(params: GrassParams) -> Self {
        Self {
            params,
            maxima: Vec::new(),
        }
    }

    pub fn full(params: GrassParams) -> Self {
        Self::cycle(params, params.top_point())
    }

    pub fn cycle(params: GrassParams, alpha: GridPoint) -> Self {
        Self {
            params,
            maxima: vec![alpha],
        }
    }

    /// Union of the Schubert cycles `S_alpha` for the given points; dominated
    /// points are dropped so the result is canonical.
    pub fn from_points(params: GrassParams, points: Vec<GridPoint>) -> Self {
        let mut maxima: Vec<GridPoint> = Vec::new();
        for p in &points {
            if points.iter().any(|o| o != p && p.leq(o)) {
                continue;
            }
            if !maxima.contains(p) {
                maxima.push(p.clone());
            }
        }
        maxima.sort();
        Self { params, maxima }
    }

    pub fn from_tuples(params: GrassParams, tuples: &[&[usize]]) -> Result<Self> {
        let points = tuples.iter().map(|t| params.point(t)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_points(params, points))
    }

    /// Parses `(1,7) ∪ (3,5)`; `∪`, `u`, `U`, `|`, `;` and `+` all separate
    /// cycles, and `∅`, `empty` or an empty string give the empty union.
    pub fn parse(params: GrassParams, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "∅" || t.eq_ignore_ascii_case("empty") {
            return Ok(Self::empty(params));
        }
        let mut tuples = Vec::new();
        let mut current = String::new();
        let mut depth = 0;
        for ch in t.chars() {
            match ch {
                '(' | '[' => {
                    depth += 1;
                    current.clear();
                }
                ')' | ']' => {
                    depth -= 1;
                    tuples.push(std::mem::take(&mut current));
                }
                _ if depth > 0 => current.push(ch),
                _ => {}
            }
        }
        if tuples.is_empty() {
            tuples = t.split(';').map(str::to_string).collect();
        }
        let points = tuples
            .iter()
            .map(|s| {
                let coords = s
                    .split([',', '.', ' '])
                    .filter(|x| !x.is_empty())
                    .map(|x| {
                        x.parse::<usize>()
                            .map_err(|_| Error::Invalid(format!("bad coordinate {x:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GridPoint::new(params, coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_points(params, points))
    }

    pub fn params(&self) -> GrassParams {
        self.params
    }

    pub fn maxima(&self) -> &[GridPoint] {
        &self.maxima
    }

    pub fn is_empty(&self) -> bool {
        self.maxima.is_empty()
    }

    pub fn contains(&self, beta: &GridPoint) -> bool {
        self.maxima.iter().any(|a| beta.leq(a))
    }

    /// The grid `G_U`.
    pub fn ideal(&self) -> BTreeSet<GridPoint> {
        self.maxima.iter().flat_map(points_below).collect()
    }

    /// The complementary grid `H_U`.
    pub fn h_grid(&self) -> BTreeSet<GridPoint> {
        full_grid(self.params)
            .into_iter()
            .filter(|b| !self.contains(b))
            .collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut pts = self.maxima.clone();
        pts.extend(other.maxima.iter().cloned());
        Self::from_points(self.params, pts)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let pts = self
            .maxima
            .iter()
            .flat_map(|a| other.maxima.iter().map(move |b| a.meet(b)))
            .collect();
        Self::from_points(self.params, pts)
    }

    /// `G_U ⊆ G_V`.
    pub fn is_subunion_of(&self, other: &Self) -> bool {
        self.maxima.iter().all(|a| other.contains(a))
    }
}

impl fmt::Display for SchubertUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.maxima.is_empty() {
            return f.write_str("∅");
        }
        for (i, a) in self.maxima.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct UnionWire {
    l: usize,
    m: usize,
    maxima: Vec<Vec<usize>>,
}

/// `{"l":2,"m":7,"maxima":[[1,7],[3,5]]}`
impl Serialize for SchubertUnion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        UnionWire {
            l: self.params.l,
            m: self.params.m,
            maxima: self.maxima.iter().map(|p| p.0.clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchubertUnion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = UnionWire::deserialize(d)?;
        let params = GrassParams::new(wire.l, wire.m).map_err(D::Error::custom)?;
        let points = wire
            .maxima
            .into_iter()
            .map(|c| GridPoint::new(params, c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(SchubertUnion::from_points(params, points))
    }
}

pub fn ideal_of(union: &SchubertUnion) -> BTreeSet<GridPoint> {
    union.ideal()
}

/// Recovers the union from its grid; the set must be downward closed.
pub fn canonicalize(params: GrassParams, points: &BTreeSet<GridPoint>) -> Result<SchubertUnion> {
    for p in points {
        if p.len() != params.l || GridPoint::new(params, p.0.clone()).is_err() {
            return Err(Error::InvalidPoint(p.0.clone(), params.l, params.m));
        }
        if let Some(below) = p.lower_covers().into_iter().find(|b| !points.contains(b)) {
            return Err(Error::NotDownwardClosed {
                above: p.clone(),
                below,
            });
        }
    }
    let maxima = points
        .iter()
        .filter(|p| p.upper_covers(params.m).iter().all(|u| !points.contains(u)))
        .cloned()
        .collect();
    Ok(SchubertUnion { params, maxima })
}

/// Affine spanning dimension `|G_U|` of the union.
pub fn spanning_dimension(union: &SchubertUnion) -> usize {
    union.ideal().len()
}

/// `g_U(q) = sum over G_U of q^(x_1+...+x_l - l(l+1)/2)`.
pub fn point_count_poly(union: &SchubertUnion) -> PointCountPoly {
    poly_of_points(union.ideal().iter())
}

pub(crate) fn poly_of_points<'a>(points: impl Iterator<Item = &'a GridPoint>) -> PointCountPoly {
    let mut counts: Vec<u64> = Vec::new();
    for p in points {
        let e = p.cell_dim();
        if counts.len() <= e {
            counts.resize(e + 1, 0);
        }
        counts[e] += 1;
    }
    PointCountPoly::from_counts(&counts)
}

/// Highest cell dimension among the maxima; `-1` for the empty union.
pub fn krull_dimension(union: &SchubertUnion) -> i64 {
    union.maxima.iter().map(|a| a.cell_dim() as i64).max().unwrap_or(-1)
}

/// The grid of `G(l,m)` with precomputed lower covers, for ideal enumeration.
struct IndexedGrid {
    params: GrassParams,
    points: Vec<GridPoint>,
    lower: Vec<u128>,
}

impl IndexedGrid {
    /// `points` must be downward closed and sorted.
    fn new(params: GrassParams, points: Vec<GridPoint>) -> Self {
        let lower = points
            .iter()
            .map(|p| {
                p.lower_covers().iter().fold(0u128, |acc, c| {
                    let idx = points.binary_search(c).expect("cover lies in grid");
                    acc | (1u128 << idx)
                })
            })
            .collect();
        Self { params, points, lower }
    }

    fn union_of_mask(&self, mask: u128) -> SchubertUnion {
        // A chosen point is maximal when none of the chosen points covers it.
        let maxima = (0..self.points.len())
            .filter(|&i| mask >> i & 1 == 1)
            .filter(|&i| !(i + 1..self.points.len()).any(|j| mask >> j & 1 == 1 && self.lower[j] >> i & 1 == 1))
            .map(|i| self.points[i].clone())
            .collect();
        SchubertUnion {
            params: self.params,
            maxima,
        }
    }
}

/// Lazy depth-first enumeration of all Schubert unions of `G(l,m)`.
///
/// Grid points are decided in lexicographic order; a point may only be taken
/// when all its lower covers are taken, so every leaf is an order ideal and
/// each ideal is produced once.
pub struct IdealEnumerator {
    grid: IndexedGrid,
    stack: Vec<(usize, u128)>,
}

impl Iterator for IdealEnumerator {
    type Item = SchubertUnion;

    fn next(&mut self) -> Option<SchubertUnion> {
        while let Some((idx, mask)) = self.stack.pop() {
            if idx == self.grid.points.len() {
                return Some(self.grid.union_of_mask(mask));
            }
            self.stack.push((idx + 1, mask));
            let need = self.grid.lower[idx];
            if mask & need == need {
                self.stack.push((idx + 1, mask | (1u128 << idx)));
            }
        }
        None
    }
}

/// Every Schubert union of `G(l,m)` exactly once, including `∅` and the full grid.
pub fn enumerate_ideals(params: GrassParams, guard: u64) -> Result<IdealEnumerator> {
    let k = params.k().unwrap_or(u64::MAX);
    if k > guard || k > MAX_ENUMERABLE_POINTS as u64 {
        return Err(Error::TooLarge {
            points: k,
            guard: guard.min(MAX_ENUMERABLE_POINTS as u64),
        });
    }
    Ok(IdealEnumerator {
        grid: IndexedGrid::new(params, full_grid(params)),
        stack: vec![(0, 0)],
    })
}

/// Every Schubert union contained in `union`, including `∅` and `union` itself.
pub fn enumerate_subunions(union: &SchubertUnion, guard: u64) -> Result<IdealEnumerator> {
    let points: Vec<GridPoint> = union.ideal().into_iter().collect();
    let size = points.len() as u64;
    if size > guard || size > MAX_ENUMERABLE_POINTS as u64 {
        return Err(Error::TooLarge {
            points: size,
            guard: guard.min(MAX_ENUMERABLE_POINTS as u64),
        });
    }
    Ok(IdealEnumerator {
        grid: IndexedGrid::new(union.params(), points),
        stack: vec![(0, 0)],
    })
}

/// The `l`-tuple `(c_1,...,c_l)`: `c_j` counts parts equal to `j` in the
/// partition attached to a grid point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionTuple(pub Vec<usize>);

impl PartitionTuple {
    /// `N(P) = c_1 + 2 c_2 + ... + l c_l`.
    pub fn size(&self) -> usize {
        self.0.iter().enumerate().map(|(i, c)| (i + 1) * c).sum()
    }
}

/// `X_j = j + c_{l+1-j} + ... + c_l`, inverted.
pub fn grid_to_partition(alpha: &GridPoint) -> PartitionTuple {
    let x = alpha.coords();
    let l = x.len();
    let mut c = vec![0; l];
    for j in 0..l {
        let prev = if j == 0 { 0 } else { x[j - 1] - j };
        c[l - 1 - j] = (x[j] - (j + 1)) - prev;
    }
    PartitionTuple(c)
}

pub fn partition_to_grid(params: GrassParams, c: &PartitionTuple) -> Result<GridPoint> {
    let l = params.l;
    if c.0.len() != l || c.0.iter().sum::<usize>() > params.m - l {
        return Err(Error::Invalid(format!(
            "partition tuple {:?} does not fit an {}x{} box",
            c.0,
            l,
            params.m - l
        )));
    }
    let mut coords = Vec::with_capacity(l);
    let mut tail = 0;
    for j in 0..l {
        tail += c.0[l - 1 - j];
        coords.push(j + 1 + tail);
    }
    GridPoint::new(params, coords)
}
