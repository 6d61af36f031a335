//! Classification of a proper subspace `T ⊆ S^dU` by its numerical type.
//!
//! The type `(a, b₁ ≥ … ≥ b_r)` records the dimension of the curve-generated
//! part of `T` (`a + 1`) together with the sizes of the derivative-system
//! summands. It is computed from the dimension profile `n_h = dim ∂^(-h)T`:
//! the profile stabilizes at `a + 1`, its first difference counts the `b_i`
//! of size at least `h`, and its second difference recovers multiplicities.
//! The Kronecker left minimal indices of the pencil `λ∂x + μ∂y : T → ∂T`
//! provide an independent oracle: they must equal `{b_i + 1}`.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{
    derivation_matrix, derivative_system, partial, partial_inv, partial_inv_iter, partial_iter,
    secant_member, BinaryForm, FormSubspace,
};
use crate::linalg::{rat_int, Mat, Rat};

/// Default coefficient bound for randomized draws.
pub const COEFF_BOUND: i64 = 100;
/// Default retry budget for randomized constructions.
pub const RETRY_BUDGET: u32 = 32;

/// The invariant `(a, b₁, …, b_r)` of a proper subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NumericalTypeRepr", into = "NumericalTypeRepr")]
pub struct NumericalType {
    a: i32,
    bs: Vec<u32>,
}

impl NumericalType {
    /// Builds a type; `bs` is sorted non-increasing on construction.
    pub fn new(a: i32, mut bs: Vec<u32>) -> Result<Self> {
        if a < -1 {
            return Err(Error::OutOfRange(format!("a = {a} must be >= -1")));
        }
        bs.sort_unstable_by(|x, y| y.cmp(x));
        Ok(NumericalType { a, bs })
    }

    pub fn a(&self) -> i32 {
        self.a
    }

    pub fn bs(&self) -> &[u32] {
        &self.bs
    }

    pub fn r(&self) -> usize {
        self.bs.len()
    }

    pub fn sum_bs(&self) -> usize {
        self.bs.iter().map(|&b| b as usize).sum()
    }

    /// `dim T = (a+1) + r + Σ b_i`.
    pub fn dim(&self) -> usize {
        (self.a + 1) as usize + self.r() + self.sum_bs()
    }

    /// Admissibility in ambient degree `d`: `a+1 + Σ(b_i + 2) <= d`. The full
    /// space `T = S^dU` is handled separately as the conventional type `(d)`.
    pub fn is_admissible(&self, d: usize) -> bool {
        (self.a + 1) as usize + self.sum_bs() + 2 * self.r() <= d
    }

    /// The conventional type of the full space.
    pub fn full_type(d: usize) -> Self {
        NumericalType { a: d as i32, bs: Vec::new() }
    }
}

impl fmt::Display for NumericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.a)?;
        for b in &self.bs {
            write!(f, ",{b}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct NumericalTypeRepr {
    a: i32,
    bs: Vec<u32>,
}

impl From<NumericalType> for NumericalTypeRepr {
    fn from(t: NumericalType) -> Self {
        NumericalTypeRepr { a: t.a, bs: t.bs }
    }
}

impl TryFrom<NumericalTypeRepr> for NumericalType {
    type Error = Error;
    fn try_from(repr: NumericalTypeRepr) -> Result<Self> {
        NumericalType::new(repr.a, repr.bs)
    }
}

/// Numerical type of a proper subspace, together with the dimension profile
/// `n_h = dim ∂^(-h)T` used to compute it (two entries past stabilization).
pub fn numerical_type_with_profile(t: &FormSubspace) -> Result<(NumericalType, Vec<usize>)> {
    let d = t.degree();
    if t.is_full() {
        return Err(Error::FullSpace);
    }
    if d == 0 {
        // The only proper subspace of S^0 U is 0.
        return Ok((NumericalType::new(-1, Vec::new())?, vec![0, 0, 0]));
    }

    let mut profile = vec![t.dim()];
    let mut w = t.clone();
    let mut stabilized_at = None;
    for _ in 0..=d + 2 {
        w = partial_inv(&w);
        profile.push(w.dim());
        let h = profile.len() - 2;
        if profile[h + 1] == profile[h] {
            stabilized_at = Some(h);
            break;
        }
    }
    let Some(h_star) = stabilized_at else {
        return Err(Error::Inconsistency(format!(
            "profile failed to stabilize within {} steps: {:?}",
            d + 2,
            profile
        )));
    };
    // One more term so every second difference below is in range.
    w = partial_inv(&w);
    profile.push(w.dim());
    if profile[h_star + 2] != profile[h_star] {
        return Err(Error::Inconsistency(format!(
            "profile not constant after stabilization: {profile:?}"
        )));
    }

    let a = profile[h_star] as i32 - 1;
    let mut bs = Vec::new();
    for h in 0..profile.len() - 2 {
        let mult = profile[h] as i64 - 2 * profile[h + 1] as i64 + profile[h + 2] as i64;
        if mult < 0 {
            return Err(Error::Inconsistency(format!(
                "non-convex profile {profile:?} at h = {h}"
            )));
        }
        for _ in 0..mult {
            bs.push(h as u32);
        }
    }
    let tau = NumericalType::new(a, bs)?;

    // Cross-check: the number of summands equals the derivative defect.
    let r_from_partial = partial(t)?.dim() as i64 - t.dim() as i64;
    if r_from_partial != tau.r() as i64 {
        return Err(Error::Inconsistency(format!(
            "profile gives r = {} but dim ∂T - dim T = {}",
            tau.r(),
            r_from_partial
        )));
    }
    Ok((tau, profile))
}

/// Numerical type of a proper subspace.
pub fn numerical_type(t: &FormSubspace) -> Result<NumericalType> {
    numerical_type_with_profile(t).map(|(tau, _)| tau)
}

/// The smallest subspace containing the intersection of `P(T)` with the
/// rational normal curve: recovered as `∂^h(∂^(-h)T)` for `h = b₁ + 1`,
/// which kills every derivative-system summand and restores the rest.
pub fn c_generated_part(t: &FormSubspace) -> Result<FormSubspace> {
    let tau = numerical_type(t)?;
    let h = tau.bs().first().map_or(0, |&b| b as usize + 1);
    let s = partial_iter(&partial_inv_iter(t, h), h)?;
    if s.dim() != (tau.a() + 1) as usize {
        return Err(Error::Inconsistency(format!(
            "curve-generated part has dim {} but a+1 = {}",
            s.dim(),
            tau.a() + 1
        )));
    }
    if !s.is_zero() && partial(&s)?.dim() != s.dim() {
        return Err(Error::Inconsistency(
            "curve-generated part does not preserve dimension under ∂".into(),
        ));
    }
    Ok(s)
}

/// A verified representation `T = S ⊕ ∂^(b₁)(f₁) ⊕ … ⊕ ∂^(b_r)(f_r)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    /// The curve-generated part.
    #[serde(rename = "S")]
    pub s_part: FormSubspace,
    /// The forms `f_i`, of degree `d + b_i`.
    pub fs: Vec<BinaryForm>,
}

/// Randomized decomposition of `T`: the curve-generated part is canonical,
/// and each `f_i` is drawn as a random combination of a basis of `∂^(-b_i)T`
/// until all direct-sum and secant-avoidance conditions verify exactly.
pub fn decompose<R: Rng + ?Sized>(
    t: &FormSubspace,
    rng: &mut R,
    retry_budget: u32,
) -> Result<Decomposition> {
    let d = t.degree();
    let (tau, _) = numerical_type_with_profile(t)?;
    let s_part = c_generated_part(t)?;
    let bs = tau.bs();
    if bs.is_empty() {
        return Ok(Decomposition { s_part, fs: Vec::new() });
    }

    // F_(T,b) = ∂^(-b)T, computed once per distinct b.
    let b_max = bs[0] as usize;
    let mut towers: Vec<FormSubspace> = Vec::with_capacity(b_max + 1);
    towers.push(t.clone());
    for _ in 0..b_max {
        let last = towers.last().unwrap();
        towers.push(partial_inv(last));
    }

    'attempt: for _ in 0..retry_budget {
        let mut fs = Vec::with_capacity(bs.len());
        for &b in bs {
            let pool = &towers[b as usize];
            let basis = pool.basis_forms();
            let mut f = BinaryForm::zero(d + b as usize);
            for g in &basis {
                f = f.add(&g.scale(&rat_int(rng.random_range(-COEFF_BOUND..=COEFF_BOUND))));
            }
            if f.is_zero() {
                continue 'attempt;
            }
            fs.push(f);
        }

        if verify_decomposition(t, &s_part, &tau, &fs).is_ok() {
            return Ok(Decomposition { s_part, fs });
        }
    }
    Err(Error::RetryBudget { budget: retry_budget })
}

/// Checks every invariant of a decomposition: secant avoidance of each
/// `f_i`, directness of both sums, and equality with `T` and `∂T`.
pub fn verify_decomposition(
    t: &FormSubspace,
    s_part: &FormSubspace,
    tau: &NumericalType,
    fs: &[BinaryForm],
) -> Result<()> {
    let bs = tau.bs();
    if fs.len() != bs.len() {
        return Err(Error::ShapeMismatch("wrong number of forms".into()));
    }
    let fail = |msg: &str| Err(Error::Inconsistency(msg.into()));

    let mut sum = s_part.clone();
    let mut expected = s_part.dim();
    for (f, &b) in fs.iter().zip(bs) {
        if secant_member(f, b as usize + 1)? {
            return fail("a summand form lies on its secant variety");
        }
        let sys = derivative_system(f, b as i64)?;
        expected += b as usize + 1;
        sum = sum.sum(&sys)?;
        if sum.dim() != expected {
            return fail("summands are not in direct sum");
        }
    }
    if &sum != t {
        return fail("summands do not reassemble T");
    }

    let dt = partial(t)?;
    let mut dsum = partial(s_part)?;
    let mut dexpected = dsum.dim();
    for (f, &b) in fs.iter().zip(bs) {
        let dsys = derivative_system(f, b as i64 + 1)?;
        dexpected += b as usize + 2;
        dsum = dsum.sum(&dsys)?;
        if dsum.dim() != dexpected {
            return fail("derivative summands are not in direct sum");
        }
    }
    if dsum != dt {
        return fail("derivative summands do not reassemble ∂T");
    }
    Ok(())
}

/// A pencil `λA + μB` of equal-shape matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    a: Mat,
    b: Mat,
}

impl Pencil {
    pub fn new(a: Mat, b: Mat) -> Self {
        assert_eq!(a.rows(), b.rows(), "pencil shape mismatch");
        assert_eq!(a.cols(), b.cols(), "pencil shape mismatch");
        Pencil { a, b }
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn b(&self) -> &Mat {
        &self.b
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// Value `A + t·B` of the pencil at `(λ:μ) = (1:t)`.
    fn eval(&self, t: i64) -> Mat {
        Mat::from_fn(self.rows(), self.cols(), |r, c| {
            self.a.at(r, c) + self.b.at(r, c) * rat_int(t)
        })
    }
}

/// The pencil of `∂x` and `∂y` as maps `T → ∂T`, in the canonical RREF bases
/// of both spaces.
pub fn pencil_of(t: &FormSubspace) -> Result<Pencil> {
    let d = t.degree();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if t.is_full() {
        return Err(Error::FullSpace);
    }
    let dt = partial(t)?;
    let one = Rat::one();
    let zero = Rat::zero();
    let mx = derivation_matrix(d, (&one, &zero))?;
    let my = derivation_matrix(d, (&zero, &one))?;
    let coords = |m: &Mat| -> Result<Mat> {
        let mut cols = Vec::with_capacity(t.dim());
        for i in 0..t.dim() {
            let image = m.mul_vec(t.space().basis().row(i));
            let c = dt
                .space()
                .coords_in_basis(&image)
                .ok_or_else(|| Error::Inconsistency("derivative image escaped ∂T".into()))?;
            cols.push(c);
        }
        Ok(Mat::from_fn(dt.dim(), t.dim(), |r, c| cols[c][r].clone()))
    };
    Ok(Pencil::new(coords(&mx)?, coords(&my)?))
}

/// Rank of the pencil at a general point of `P^1`. Deterministic: a top
/// nonvanishing minor is a homogeneous polynomial of degree at most
/// `min(m,n)` on the line, so it survives at one of `min(m,n) + 1` distinct
/// sample points.
pub fn normal_rank(p: &Pencil) -> usize {
    let samples = p.rows().min(p.cols()) as i64;
    (0..=samples).map(|t| p.eval(t).rank()).max().unwrap_or(0)
}

/// Multiset of Kronecker left minimal indices of the pencil, sorted
/// non-increasing.
///
/// `ℓ_j` is the dimension of the space of polynomial rows `w(λ,μ)` of degree
/// `j` with `w(λ,μ)·(λA + μB) ≡ 0`, found as the kernel of a striped block
/// system; the multiplicity of index `η` is the second difference
/// `ℓ_η - 2ℓ_(η-1) + ℓ_(η-2)`. The search stops once `rows - normal_rank`
/// indices are found.
pub fn kronecker_left_indices(p: &Pencil) -> Result<Vec<u32>> {
    let (m, n) = (p.rows(), p.cols());
    let expected = m - normal_rank(p);
    let mut indices = Vec::with_capacity(expected);
    if expected == 0 {
        return Ok(indices);
    }
    let at = p.a.transpose();
    let bt = p.b.transpose();
    let mut l_prev2 = 0usize; // ℓ_(η-2)
    let mut l_prev = 0usize; // ℓ_(η-1)
    for eta in 0..=m {
        // Unknowns: row coefficients w_0..w_eta of length m each. Conditions:
        // Aᵀw_u + Bᵀw_(u-1) = 0 for u = 0..eta+1 (out-of-range terms absent).
        let sys = Mat::from_fn((eta + 2) * n, (eta + 1) * m, |row, col| {
            let (u, i) = (row / n, row % n);
            let (t, j) = (col / m, col % m);
            if t == u {
                at.at(i, j).clone()
            } else if u >= 1 && t == u - 1 {
                bt.at(i, j).clone()
            } else {
                Rat::zero()
            }
        });
        let l_eta = (eta + 1) * m - sys.rank();
        let mult = l_eta as i64 - 2 * l_prev as i64 + l_prev2 as i64;
        if mult < 0 {
            return Err(Error::Inconsistency(format!(
                "negative multiplicity for left index {eta}"
            )));
        }
        for _ in 0..mult {
            indices.push(eta as u32);
        }
        if indices.len() >= expected {
            break;
        }
        l_prev2 = l_prev;
        l_prev = l_eta;
    }
    if indices.len() != expected {
        return Err(Error::Inconsistency(format!(
            "found {} left indices, expected {}",
            indices.len(),
            expected
        )));
    }
    indices.sort_unstable_by(|x, y| y.cmp(x));
    Ok(indices)
}

/// Expected left indices `{b_i + 1}` of a type, sorted non-increasing.
pub fn expected_left_indices(tau: &NumericalType) -> Vec<u32> {
    tau.bs().iter().map(|&b| b + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{map_subspace, substitution_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tau(a: i32, bs: &[u32]) -> NumericalType {
        NumericalType::new(a, bs.to_vec()).unwrap()
    }

    fn monomials(d: usize, y_exps: &[usize]) -> FormSubspace {
        let forms: Vec<BinaryForm> = y_exps.iter().map(|&e| BinaryForm::monomial(d, e)).collect();
        FormSubspace::span(d, &forms)
    }

    #[test]
    fn type_of_a_point_on_the_curve() {
        let t = monomials(4, &[0]); // <x^4>
        assert_eq!(numerical_type(&t).unwrap(), tau(0, &[]));
    }

    #[test]
    fn type_of_two_separated_monomials() {
        // <x^4 y, x^2 y^3> in degree 5: profile (2, 0, 0).
        let t = monomials(5, &[1, 3]);
        let (ty, profile) = numerical_type_with_profile(&t).unwrap();
        assert_eq!(ty, tau(-1, &[0, 0]));
        assert_eq!(&profile[..3], &[2, 0, 0]);
    }

    #[test]
    fn type_of_step_recipe_space_degree_seven() {
        // <x^7, x^5 y^2, x^4 y^3, x^2 y^5>: profile starts (4, 2, 1, 1).
        let t = monomials(7, &[0, 2, 3, 5]);
        let (ty, profile) = numerical_type_with_profile(&t).unwrap();
        assert_eq!(ty, tau(0, &[1, 0]));
        assert_eq!(&profile[..4], &[4, 2, 1, 1]);
    }

    #[test]
    fn full_space_is_rejected() {
        let t = FormSubspace::full(3);
        assert!(matches!(numerical_type(&t), Err(Error::FullSpace)));
    }

    #[test]
    fn zero_space_gets_the_empty_type() {
        let t = FormSubspace::zero(4);
        assert_eq!(numerical_type(&t).unwrap(), tau(-1, &[]));
    }

    #[test]
    fn type_is_invariant_under_substitution() {
        let t = monomials(7, &[0, 2, 3, 5]);
        let g = [[rat_int(2), rat_int(1)], [rat_int(3), rat_int(2)]]; // det 1
        let m = substitution_matrix(7, &g);
        let t2 = map_subspace(&m, &t, 7);
        assert_eq!(t2.dim(), t.dim());
        assert_eq!(numerical_type(&t2).unwrap(), numerical_type(&t).unwrap());
    }

    #[test]
    fn curve_generated_part_examples() {
        // The step-recipe space of type (0,1,0) has S = <x^7>.
        let t = monomials(7, &[0, 2, 3, 5]);
        assert_eq!(c_generated_part(&t).unwrap(), monomials(7, &[0]));

        // A 2-secant space is its own curve-generated part.
        let d = 5;
        let t = monomials(d, &[0, d]);
        assert_eq!(c_generated_part(&t).unwrap(), t);

        // A derivative system of a generic form has no curve points.
        let f = BinaryForm::from_ints(&[1, 0, 2, -1, 0, 0, 1]); // degree 6
        assert!(!secant_member(&f, 2).unwrap());
        let t = derivative_system(&f, 1).unwrap();
        assert!(c_generated_part(&t).unwrap().is_zero());
    }

    #[test]
    fn profile_of_partial_inv_drops_each_b() {
        // Type of ∂⁻¹T is (a, b₁-1, …) with entries reaching -1 removed.
        let t = monomials(7, &[0, 2, 3, 5]); // type (0,1,0)
        let w = partial_inv(&t);
        assert_eq!(numerical_type(&w).unwrap(), tau(0, &[0]));
        let w2 = partial_inv(&w);
        assert_eq!(numerical_type(&w2).unwrap(), tau(0, &[]));
    }

    #[test]
    fn pencil_of_single_form_off_curve() {
        let f = BinaryForm::from_ints(&[1, 0, 0, 1]); // x^3 + y^3
        let t = FormSubspace::span(3, &[f]);
        let p = pencil_of(&t).unwrap();
        assert_eq!((p.rows(), p.cols()), (2, 1));
        assert_eq!(normal_rank(&p), 1);
        assert_eq!(kronecker_left_indices(&p).unwrap(), vec![1]);
    }

    #[test]
    fn pencil_indices_of_step_recipe_space() {
        let t = monomials(7, &[0, 2, 3, 5]); // type (0,1,0)
        let p = pencil_of(&t).unwrap();
        assert_eq!(normal_rank(&p), t.dim());
        assert_eq!(kronecker_left_indices(&p).unwrap(), vec![2, 1]);
        assert_eq!(
            kronecker_left_indices(&p).unwrap(),
            expected_left_indices(&numerical_type(&t).unwrap())
        );
    }

    #[test]
    fn pencil_of_curve_generated_space_is_regular() {
        let d = 6;
        let powers: Vec<BinaryForm> = [(1i64, 0i64), (0, 1), (1, 1), (1, -1)]
            .iter()
            .map(|&(a, b)| BinaryForm::linear(rat_int(a), rat_int(b)).pow(d))
            .collect();
        let t = FormSubspace::span(d, &powers);
        assert_eq!(t.dim(), 4);
        let p = pencil_of(&t).unwrap();
        assert_eq!((p.rows(), p.cols()), (4, 4));
        assert!(kronecker_left_indices(&p).unwrap().is_empty());
    }

    #[test]
    fn decompose_single_summand_reproduces_t() {
        // Type (-1, b): the only accepted f has ∂^b(f) = T exactly.
        let f = BinaryForm::from_ints(&[3, -1, 0, 2, 1, 0, 1]); // degree 6
        let t = derivative_system(&f, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let dec = decompose(&t, &mut rng, RETRY_BUDGET).unwrap();
        assert!(dec.s_part.is_zero());
        assert_eq!(dec.fs.len(), 1);
        assert_eq!(derivative_system(&dec.fs[0], 1).unwrap(), t);
    }

    #[test]
    fn decompose_round_trip_on_step_recipe_space() {
        let t = monomials(7, &[0, 2, 3, 5]); // type (0,1,0)
        let tau_t = numerical_type(&t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dec = decompose(&t, &mut rng, RETRY_BUDGET).unwrap();
        verify_decomposition(&t, &dec.s_part, &tau_t, &dec.fs).unwrap();

        // Reassemble and compare canonically.
        let mut sum = dec.s_part.clone();
        for (f, &b) in dec.fs.iter().zip(tau_t.bs()) {
            sum = sum.sum(&derivative_system(f, b as i64).unwrap()).unwrap();
        }
        assert_eq!(sum, t);
    }
}
