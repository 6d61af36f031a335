//! Exact linear algebra over the rationals.
//!
//! Subspaces of `Q^n` are kept in a single canonical representation: the
//! reduced row echelon form (RREF) of any spanning set, with zero rows
//! dropped. Two subspaces are equal iff their basis grids are identical,
//! which makes equality, hashing and snapshot tests trivial. All scalars are
//! arbitrary-precision rationals, so every operation is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The scalar used everywhere: an arbitrary-precision fraction kept in
/// canonical form (reduced, positive denominator) by `num-rational`.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `n/d` (reduced on construction).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational canonically: `"p/q"`, or just `"p"` when `q = 1`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::ParseRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry grid has wrong length");
        Mat { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat::new(rows, cols, entries)
    }

    /// Builds a matrix from row vectors; `cols` disambiguates the empty case.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            entries.extend(row);
        }
        Mat::new(n, cols, entries)
    }

    /// Integer literal rows, for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]], cols: usize) -> Self {
        Mat::from_rows(
            rows.iter().map(|r| r.iter().map(|&n| rat_int(n)).collect()).collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if !a.is_zero() {
                    acc += a * other.at(k, c);
                }
            }
            acc
        })
    }

    /// Matrix–vector product `m · v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Mat::new(self.rows + other.rows, self.cols, entries)
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Reduces in place to reduced row echelon form. Pivots are the first
    /// nonzero entry in column order; exact arithmetic needs no pivoting
    /// heuristics. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(r, pivot_row);
            let inv = self.at(pivot_row, col).recip();
            self.scale_row(pivot_row, &inv);
            for r in 0..self.rows {
                if r != pivot_row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    self.row_axpy(r, pivot_row, &factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.cols {
            if !self.at(r, c).is_zero() {
                *self.at_mut(r, c) *= factor;
            }
        }
    }

    /// row[r] -= factor * row[src]
    fn row_axpy(&mut self, r: usize, src: usize, factor: &Rat) {
        for c in 0..self.cols {
            let v = self.at(src, c).clone();
            if !v.is_zero() {
                *self.at_mut(r, c) -= factor * v;
            }
        }
    }
}

/// A subspace of `Q^n` in canonical form: the basis grid is in RREF with
/// strictly increasing pivots and no zero rows, so `==` on the grid decides
/// subspace equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    /// Canonicalizes a spanning set: row-reduce and drop zero rows. The zero
    /// matrix yields the zero subspace. Idempotent, and invariant under row
    /// scaling and permutation of the input.
    pub fn canonicalize(spanning_rows: &Mat) -> Subspace {
        let mut m = spanning_rows.clone();
        let pivots = m.rref_in_place();
        let dim = pivots.len();
        let basis = Mat::from_fn(dim, m.cols(), |r, c| m.at(r, c).clone());
        Subspace { ambient: spanning_rows.cols(), basis }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, ambient: usize) -> Subspace {
        Subspace::canonicalize(&Mat::from_rows(rows, ambient))
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zero(0, ambient) }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(ambient) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The canonical RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Pivot column of each basis row (strictly increasing).
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| (0..self.ambient).find(|&c| !self.basis.at(r, c).is_zero()).unwrap())
            .collect()
    }

    /// Reduces `v` against the basis; the residual is zero iff `v` lies in
    /// the subspace.
    fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        assert_eq!(v.len(), self.ambient, "vector has wrong ambient dimension");
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (r, &p) in self.pivots().iter().enumerate() {
            let c = residual[p].clone();
            coords.push(c.clone());
            if !c.is_zero() {
                for j in 0..self.ambient {
                    let b = self.basis.at(r, j);
                    if !b.is_zero() {
                        residual[j] -= &c * b;
                    }
                }
            }
        }
        (coords, residual)
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        self.reduce(v).1.iter().all(Rat::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && (0..other.dim()).all(|r| self.contains_vec(other.basis.row(r)))
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coords_in_basis(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (coords, residual) = self.reduce(v);
        residual.iter().all(Rat::is_zero).then_some(coords)
    }

    /// Row-space sum.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::canonicalize(&self.basis.vstack(&other.basis)))
    }

    /// Intersection, via the kernel of the stacked coordinate system: solve
    /// `x·A = y·B` for coefficient vectors `(x, y)` and collect the common
    /// values.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let at = self.basis.transpose();
        let bt = other.basis.transpose();
        let neg_bt = Mat::from_fn(bt.rows(), bt.cols(), |r, c| -bt.at(r, c).clone());
        let stacked = at.hstack(&neg_bt);
        let pairs = kernel(&stacked);
        let rows: Vec<Vec<Rat>> = (0..pairs.dim())
            .map(|r| {
                let xy = pairs.basis().row(r);
                let x = &xy[..self.dim()];
                let mut v = vec![Rat::zero(); self.ambient];
                for (i, coef) in x.iter().enumerate() {
                    if !coef.is_zero() {
                        for j in 0..self.ambient {
                            let b = self.basis.at(i, j);
                            if !b.is_zero() {
                                v[j] += coef * b;
                            }
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_rows(rows, self.ambient))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dot_complement(&self) -> Subspace {
        kernel(&self.basis)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }
}

/// Null space `{v : m·v = 0}`, returned canonically.
pub fn kernel(m: &Mat) -> Subspace {
    let cols = m.cols();
    let mut red = m.clone();
    let pivots = red.rref_in_place();
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut rows = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -red.at(row, free).clone();
        }
        rows.push(v);
    }
    Subspace::from_rows(rows, cols)
}

/// Preimage `{v : m·v ∈ W}`. Always contains `kernel(m)`.
pub fn preimage(m: &Mat, w: &Subspace) -> Result<Subspace> {
    if m.rows() != w.ambient_dim() {
        return Err(Error::AmbientMismatch { left: m.rows(), right: w.ambient_dim() });
    }
    // W is the kernel of its dot-complement's basis, so m·v ∈ W is the
    // linear condition C·m·v = 0.
    let c = w.dot_complement();
    Ok(kernel(&c.basis().matmul(m)))
}
