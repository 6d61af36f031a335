//! Binary forms of degree `d` and the operators the classification runs on.
//!
//! The monomial convention is fixed once and for all: a form of degree `d`
//! is stored as `d+1` coefficients with `coeffs[i]` the coefficient of
//! `x^(d-i) y^i`, `i` ascending. Every matrix in this module follows that
//! ordering. Dual forms (polynomials in the derivation operators `∂x, ∂y`)
//! reuse the same representation with `coeffs[i]` the coefficient of
//! `∂x^(d-i) ∂y^i`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rat, kernel, parse_rat, preimage, rat_int, Mat, Rat, Subspace};

/// A binary form `a_0 x^d + a_1 x^(d-1)y + ... + a_d y^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BinaryFormRepr", into = "BinaryFormRepr")]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), degree + 1, "coefficient vector has wrong length");
        BinaryForm { degree, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { degree: coeffs.len() - 1, coeffs }
    }

    pub fn from_ints(ints: &[i64]) -> Self {
        BinaryForm::from_coeffs(ints.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm::new(degree, vec![Rat::zero(); degree + 1])
    }

    /// The monomial `x^(d - y_exp) y^(y_exp)`.
    pub fn monomial(degree: usize, y_exp: usize) -> Self {
        assert!(y_exp <= degree);
        let mut f = BinaryForm::zero(degree);
        f.coeffs[y_exp] = Rat::one();
        f
    }

    /// The linear form `a·x + b·y`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        BinaryForm::new(1, vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        BinaryForm::new(self.degree, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &BinaryForm) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        BinaryForm::new(
            self.degree,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        )
    }

    /// Product of forms; coefficient vectors convolve because
    /// `x^(d-i)y^i · x^(e-j)y^j = x^((d+e)-(i+j)) y^(i+j)`.
    pub fn mul(&self, other: &BinaryForm) -> Self {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![Rat::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        BinaryForm::new(degree, coeffs)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = BinaryForm::new(0, vec![Rat::one()]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in `x`. Requires degree >= 1.
    pub fn dx(&self) -> Self {
        assert!(self.degree >= 1, "derivative of a constant");
        let d = self.degree;
        BinaryForm::new(
            d - 1,
            (0..d).map(|i| self.coeffs[i].clone() * rat_int((d - i) as i64)).collect(),
        )
    }

    /// Partial derivative in `y`. Requires degree >= 1.
    pub fn dy(&self) -> Self {
        let d = self.degree;
        assert!(d >= 1, "derivative of a constant");
        BinaryForm::new(
            d - 1,
            (1..=d).map(|i| self.coeffs[i].clone() * rat_int(i as i64)).collect(),
        )
    }

    /// Uniform random form with integer coefficients in `[-bound, bound]`,
    /// redrawn until nonzero.
    pub fn random<R: Rng + ?Sized>(degree: usize, bound: i64, rng: &mut R) -> Self {
        loop {
            let coeffs: Vec<Rat> =
                (0..=degree).map(|_| rat_int(rng.random_range(-bound..=bound))).collect();
            let f = BinaryForm::new(degree, coeffs);
            if !f.is_zero() {
                return f;
            }
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct BinaryFormRepr {
    degree: usize,
    coeffs: Vec<String>,
}

impl From<BinaryForm> for BinaryFormRepr {
    fn from(f: BinaryForm) -> Self {
        BinaryFormRepr { degree: f.degree, coeffs: f.coeffs.iter().map(format_rat).collect() }
    }
}

impl TryFrom<BinaryFormRepr> for BinaryForm {
    type Error = Error;
    fn try_from(repr: BinaryFormRepr) -> Result<Self> {
        if repr.coeffs.len() != repr.degree + 1 {
            return Err(Error::ShapeMismatch(format!(
                "degree {} needs {} coefficients, got {}",
                repr.degree,
                repr.degree + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr.coeffs.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        Ok(BinaryForm::new(repr.degree, coeffs))
    }
}

/// A subspace `T ⊆ S^dU`, stored canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormSubspaceRepr", into = "FormSubspaceRepr")]
pub struct FormSubspace {
    degree: usize,
    space: Subspace,
}

impl FormSubspace {
    pub fn new(degree: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), degree + 1, "ambient dimension must be degree + 1");
        FormSubspace { degree, space }
    }

    pub fn zero(degree: usize) -> Self {
        FormSubspace::new(degree, Subspace::zero(degree + 1))
    }

    pub fn full(degree: usize) -> Self {
        FormSubspace::new(degree, Subspace::full(degree + 1))
    }

    pub fn span(degree: usize, forms: &[BinaryForm]) -> Self {
        let rows: Vec<Vec<Rat>> = forms
            .iter()
            .map(|f| {
                assert_eq!(f.degree(), degree, "degree mismatch in spanning set");
                f.coeffs().to_vec()
            })
            .collect();
        FormSubspace::new(degree, Subspace::from_rows(rows, degree + 1))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.space.is_full()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_forms(&self) -> Vec<BinaryForm> {
        self.space
            .basis()
            .row_vecs()
            .into_iter()
            .map(|row| BinaryForm::new(self.degree, row))
            .collect()
    }

    pub fn contains(&self, f: &BinaryForm) -> bool {
        f.degree() == self.degree && self.space.contains_vec(f.coeffs())
    }

    pub fn contains_subspace(&self, other: &FormSubspace) -> bool {
        self.degree == other.degree && self.space.contains(&other.space)
    }

    pub fn sum(&self, other: &FormSubspace) -> Result<FormSubspace> {
        if self.degree != other.degree {
            return Err(Error::AmbientMismatch {
                left: self.degree + 1,
                right: other.degree + 1,
            });
        }
        Ok(FormSubspace::new(self.degree, self.space.sum(&other.space)?))
    }

    pub fn intersect(&self, other: &FormSubspace) -> Result<FormSubspace> {
        if self.degree != other.degree {
            return Err(Error::AmbientMismatch {
                left: self.degree + 1,
                right: other.degree + 1,
            });
        }
        Ok(FormSubspace::new(self.degree, self.space.intersect(&other.space)?))
    }

    /// Uniform random subspace of the given dimension, redrawn until the
    /// random spanning rows are independent.
    pub fn random<R: Rng + ?Sized>(
        degree: usize,
        dim: usize,
        bound: i64,
        rng: &mut R,
    ) -> FormSubspace {
        assert!(dim <= degree + 1);
        loop {
            let rows: Vec<Vec<Rat>> = (0..dim)
                .map(|_| {
                    (0..=degree).map(|_| rat_int(rng.random_range(-bound..=bound))).collect()
                })
                .collect();
            let space = Subspace::from_rows(rows, degree + 1);
            if space.dim() == dim {
                return FormSubspace::new(degree, space);
            }
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct FormSubspaceRepr {
    degree: usize,
    basis: Vec<Vec<String>>,
}

impl From<FormSubspace> for FormSubspaceRepr {
    fn from(t: FormSubspace) -> Self {
        FormSubspaceRepr {
            degree: t.degree,
            basis: t
                .space
                .basis()
                .row_vecs()
                .iter()
                .map(|row| row.iter().map(format_rat).collect())
                .collect(),
        }
    }
}

impl TryFrom<FormSubspaceRepr> for FormSubspace {
    type Error = Error;
    fn try_from(repr: FormSubspaceRepr) -> Result<Self> {
        let ambient = repr.degree + 1;
        let mut rows = Vec::with_capacity(repr.basis.len());
        for row in &repr.basis {
            if row.len() != ambient {
                return Err(Error::ShapeMismatch(format!(
                    "basis row has {} entries, ambient is {}",
                    row.len(),
                    ambient
                )));
            }
            rows.push(row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?);
        }
        Ok(FormSubspace::new(repr.degree, Subspace::from_rows(rows, ambient)))
    }
}

/// A subspace of the dual space `S^dU*`, coordinates in the basis
/// `∂x^(d-i) ∂y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFormSubspace {
    degree: usize,
    space: Subspace,
}

impl DualFormSubspace {
    pub fn new(degree: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), degree + 1);
        DualFormSubspace { degree, space }
    }

    pub fn zero(degree: usize) -> Self {
        DualFormSubspace::new(degree, Subspace::zero(degree + 1))
    }

    pub fn full(degree: usize) -> Self {
        DualFormSubspace::new(degree, Subspace::full(degree + 1))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_forms(&self) -> Vec<BinaryForm> {
        (0..self.space.dim())
            .map(|r| BinaryForm::new(self.degree, self.space.basis().row(r).to_vec()))
            .collect()
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial_int(n: usize, k: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

/// Weight of the apolarity pairing on the `i`-th monomial pair:
/// `<∂x^(d-i)∂y^i, x^(d-j)y^j> = δ_ij (d-i)! i!`. These weights make the
/// adjunction `<f·l, g> = <f, D_l(g)>` hold on the nose.
pub fn apolarity_weight(d: usize, i: usize) -> Rat {
    Rat::from_integer(factorial(d - i) * factorial(i))
}

/// Apolarity pairing of a dual form against a form of the same degree.
pub fn apolarity_pair(dual: &BinaryForm, g: &BinaryForm) -> Rat {
    assert_eq!(dual.degree(), g.degree(), "pairing needs equal degrees");
    let d = g.degree();
    let mut acc = Rat::zero();
    for i in 0..=d {
        let a = dual.coeff(i);
        let b = g.coeff(i);
        if !a.is_zero() && !b.is_zero() {
            acc += a * b * apolarity_weight(d, i);
        }
    }
    acc
}

/// Matrix of the derivation `D = α∂x + β∂y : S^dU → S^(d-1)U` in the
/// monomial bases.
pub fn derivation_matrix(d: usize, direction: (&Rat, &Rat)) -> Result<Mat> {
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let (alpha, beta) = direction;
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let mut m = Mat::zero(d, d + 1);
    for i in 0..d {
        // ∂x(x^(d-i) y^i) = (d-i) x^(d-1-i) y^i
        *m.at_mut(i, i) = alpha * rat_int((d - i) as i64);
        // ∂y(x^(d-i-1) y^(i+1)) = (i+1) x^(d-1-i) y^i
        *m.at_mut(i, i + 1) = beta * rat_int((i + 1) as i64);
    }
    Ok(m)
}

fn map_space(m: &Mat, space: &Subspace) -> Subspace {
    let rows: Vec<Vec<Rat>> =
        (0..space.dim()).map(|r| m.mul_vec(space.basis().row(r))).collect();
    Subspace::from_rows(rows, m.rows())
}

/// The derivative space `∂T = ∂x·T + ∂y·T ⊆ S^(d-1)U`.
pub fn partial(t: &FormSubspace) -> Result<FormSubspace> {
    let d = t.degree();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let one = Rat::one();
    let zero = Rat::zero();
    let mx = derivation_matrix(d, (&one, &zero))?;
    let my = derivation_matrix(d, (&zero, &one))?;
    let sx = map_space(&mx, t.space());
    let sy = map_space(&my, t.space());
    Ok(FormSubspace::new(d - 1, sx.sum(&sy)?))
}

/// Iterated `∂`.
pub fn partial_iter(t: &FormSubspace, k: usize) -> Result<FormSubspace> {
    let mut w = t.clone();
    for _ in 0..k {
        w = partial(&w)?;
    }
    Ok(w)
}

/// The largest `W ⊆ S^(d+1)U` with `∂W ⊆ T`, computed as the intersection of
/// the preimages under two independent derivations.
pub fn partial_inv(t: &FormSubspace) -> FormSubspace {
    let one = Rat::one();
    let zero = Rat::zero();
    partial_inv_in_directions(t, (&one, &zero), (&zero, &one))
        .expect("coordinate directions are independent")
}

/// `∂⁻¹T` computed from an arbitrary pair of independent directions. The
/// result does not depend on the pair.
pub fn partial_inv_in_directions(
    t: &FormSubspace,
    dir1: (&Rat, &Rat),
    dir2: (&Rat, &Rat),
) -> Result<FormSubspace> {
    let det = dir1.0 * dir2.1 - dir1.1 * dir2.0;
    if det.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let d = t.degree();
    let m1 = derivation_matrix(d + 1, dir1)?;
    let m2 = derivation_matrix(d + 1, dir2)?;
    let p1 = preimage(&m1, t.space())?;
    let p2 = preimage(&m2, t.space())?;
    Ok(FormSubspace::new(d + 1, p1.intersect(&p2)?))
}

/// Iterated `∂⁻¹`.
pub fn partial_inv_iter(t: &FormSubspace, k: usize) -> FormSubspace {
    let mut w = t.clone();
    for _ in 0..k {
        w = partial_inv(&w);
    }
    w
}

/// The span `∂^r(g) = <∂x^r g, ∂x^(r-1)∂y g, …, ∂y^r g> ⊆ S^(deg-r)U`.
/// By convention `r = -1` gives the zero subspace of `S^(deg+1)U`.
pub fn derivative_system(g: &BinaryForm, r: i64) -> Result<FormSubspace> {
    let deg = g.degree();
    if r == -1 {
        return Ok(FormSubspace::zero(deg + 1));
    }
    if r < 0 || r as usize > deg {
        return Err(Error::DerivativeOrder { order: r, degree: deg });
    }
    let r = r as usize;
    let forms: Vec<BinaryForm> = (0..=r)
        .map(|i| {
            let mut h = g.clone();
            for _ in 0..r - i {
                h = h.dx();
            }
            for _ in 0..i {
                h = h.dy();
            }
            h
        })
        .collect();
    Ok(FormSubspace::span(deg - r, &forms))
}

/// The catalecticant matrix: `(r+1) × (d-r+1)`, row `i` holding the
/// coefficients of `∂x^(r-i)∂y^i g`.
pub fn catalecticant(g: &BinaryForm, r: usize) -> Result<Mat> {
    let d = g.degree();
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    if r < 1 || r > d {
        return Err(Error::DerivativeOrder { order: r as i64, degree: d });
    }
    let mut rows = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let mut h = g.clone();
        for _ in 0..r - i {
            h = h.dx();
        }
        for _ in 0..i {
            h = h.dy();
        }
        rows.push(h.coeffs().to_vec());
    }
    Ok(Mat::from_rows(rows, d - r + 1))
}

/// Whether `[g]` lies on the `(r-1)`-th secant variety of the degree-`d`
/// rational normal curve. Once `2r-1 >= d` the secant variety fills the
/// ambient space and the answer is `true` without a rank computation;
/// otherwise membership is the rank condition `rank A_r <= r`.
pub fn secant_member(g: &BinaryForm, r: usize) -> Result<bool> {
    let d = g.degree();
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    if r < 1 || r > d {
        return Err(Error::DerivativeOrder { order: r as i64, degree: d });
    }
    if 2 * r - 1 >= d {
        return Ok(true);
    }
    Ok(catalecticant(g, r)?.rank() <= r)
}

/// Annihilator `T^⊥ ⊆ S^dU*` with respect to the apolarity pairing.
pub fn annihilator(t: &FormSubspace) -> DualFormSubspace {
    let d = t.degree();
    let weighted = Mat::from_fn(t.dim(), d + 1, |r, c| {
        t.space().basis().at(r, c) * apolarity_weight(d, c)
    });
    DualFormSubspace::new(d, kernel(&weighted))
}

/// The product space `W·S^kU* ⊆ S^(d+k)U*`: span of `w·m` for `w` in a basis
/// of `W` and `m` over the monomials of degree `k` in `(∂x, ∂y)`.
pub fn dual_multiply(w: &DualFormSubspace, k: usize) -> DualFormSubspace {
    let d = w.degree();
    let mut products = Vec::with_capacity(w.dim() * (k + 1));
    for f in w.basis_forms() {
        for j in 0..=k {
            products.push(f.mul(&BinaryForm::monomial(k, j)));
        }
    }
    let rows: Vec<Vec<Rat>> = products.into_iter().map(|f| f.coeffs().to_vec()).collect();
    DualFormSubspace::new(d + k, Subspace::from_rows(rows, d + k + 1))
}

/// Matrix on `S^dU` induced by the substitution `x ↦ a·x + c·y`,
/// `y ↦ b·x + e·y`; column `j` is the image of the monomial `x^(d-j)y^j`.
/// Invertible substitutions preserve the rational normal curve, so they
/// preserve numerical types.
pub fn substitution_matrix(d: usize, g: &[[Rat; 2]; 2]) -> Mat {
    let lx = BinaryForm::linear(g[0][0].clone(), g[1][0].clone());
    let ly = BinaryForm::linear(g[0][1].clone(), g[1][1].clone());
    let mut m = Mat::zero(d + 1, d + 1);
    for j in 0..=d {
        let image = lx.pow(d - j).mul(&ly.pow(j));
        for i in 0..=d {
            *m.at_mut(i, j) = image.coeff(i).clone();
        }
    }
    m
}

/// Image of a form subspace under a coefficient-space matrix whose target
/// has `target_degree + 1` coordinates.
pub fn map_subspace(m: &Mat, t: &FormSubspace, target_degree: usize) -> FormSubspace {
    assert_eq!(m.cols(), t.degree() + 1);
    assert_eq!(m.rows(), target_degree + 1);
    FormSubspace::new(target_degree, map_space(m, t.space()))
}
