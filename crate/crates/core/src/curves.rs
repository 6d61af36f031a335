//! Rational curves of degree `d` in `P^s` as projections of the rational
//! normal curve, and the splitting type of the restricted tangent bundle.
//!
//! A vertex `T ⊆ S^dU` with `P(T)` disjoint from the curve (numerical type
//! `(-1, b₁, …, b_r)`) projects the rational normal curve to a degree-`d`
//! curve in `P^s`, `s = d - e - 1`. The restricted tangent bundle splits as
//! `O(b₁+d+2) ⊕ … ⊕ O(b_r+d+2) ⊕ O(d+1)^(s-r)`, and its twist dimensions
//! `h_k = h⁰T(-k)` are computed here along two independent routes — the
//! `∂⁻¹` iteration on `T` and the dual multiplication on `T^⊥` — which must
//! agree at every twist.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::classify::{numerical_type, NumericalType, COEFF_BOUND};
use crate::error::{Error, Result};
use crate::forms::{
    annihilator, apolarity_weight, binomial_int, derivative_system, dual_multiply, partial_inv,
    secant_member, BinaryForm, FormSubspace,
};
use crate::linalg::Rat;
use rand::Rng;

/// Splitting type `(a₁ ≥ … ≥ a_s)` of the restricted tangent bundle of a
/// degree-`d` rational curve in `P^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingType {
    d: usize,
    twists: Vec<i64>,
}

impl SplittingType {
    /// Validates the constraints: all twists at least `d+1`, and the total
    /// `Σ a_i = (d-e)d` for the integer `e` with `s = d - e - 1`.
    pub fn new(d: usize, mut twists: Vec<i64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSplitting("degree must be positive".into()));
        }
        if twists.is_empty() {
            return Err(Error::InvalidSplitting("at least one twist is required".into()));
        }
        twists.sort_unstable_by(|x, y| y.cmp(x));
        let s = twists.len() as i64;
        let d_i = d as i64;
        if *twists.last().unwrap() < d_i + 1 {
            return Err(Error::InvalidSplitting(format!(
                "smallest twist {} is below d+1 = {}",
                twists.last().unwrap(),
                d_i + 1
            )));
        }
        let total: i64 = twists.iter().sum();
        if total % d_i != 0 || total / d_i != s + 1 {
            return Err(Error::InvalidSplitting(format!(
                "Σ twists = {total} must equal (d-e)d = {} for e = d-s-1 = {}",
                (s + 1) * d_i,
                d_i - s - 1
            )));
        }
        Ok(SplittingType { d, twists })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn s(&self) -> usize {
        self.twists.len()
    }

    /// Vertex dimension minus one: `e = d - s - 1`.
    pub fn e(&self) -> i64 {
        self.d as i64 - self.s() as i64 - 1
    }

    /// The `b_i = a_i - d - 2` of all twists at least `d + 2`.
    pub fn bs(&self) -> Vec<u32> {
        let d = self.d as i64;
        self.twists.iter().filter(|&&a| a >= d + 2).map(|&a| (a - d - 2) as u32).collect()
    }

    /// Expected vertex numerical type `(-1, b₁, …, b_r)`.
    pub fn vertex_type(&self) -> Result<NumericalType> {
        NumericalType::new(-1, self.bs())
    }
}

/// Splitting type read off a vertex numerical type:
/// `(b₁+d+2, …, b_r+d+2, (d+1)^(s-r))`.
pub fn splitting_from_type(tau: &NumericalType, d: usize) -> Result<SplittingType> {
    if tau.a() >= 0 {
        return Err(Error::VertexMeetsCurve { a: tau.a() });
    }
    if !tau.is_admissible(d) {
        return Err(Error::InadmissibleType(tau.to_string(), format!("for degree {d}")));
    }
    let e_plus_1 = tau.dim();
    if e_plus_1 == 0 {
        return Err(Error::InadmissibleType(
            tau.to_string(),
            "empty vertex gives no projection".into(),
        ));
    }
    let s = d - e_plus_1;
    let mut twists: Vec<i64> =
        tau.bs().iter().map(|&b| b as i64 + d as i64 + 2).collect();
    twists.extend(std::iter::repeat(d as i64 + 1).take(s - tau.r()));
    SplittingType::new(d, twists)
}

/// An explicit parametrization `P^1 → P^s` of degree `d`, with its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveMap {
    pub d: usize,
    pub s: usize,
    /// Coordinates of the map: `s + 1` binary forms of degree `d` in the
    /// curve parameters `(u, v)`.
    pub components: Vec<BinaryForm>,
    pub vertex: FormSubspace,
}

impl CurveMap {
    /// True iff the components have no common projective zero: no common
    /// factor of the dehomogenized polynomials and no shared root at
    /// infinity.
    pub fn is_base_point_free(&self) -> bool {
        if self.components.iter().any(BinaryForm::is_zero) {
            return false;
        }
        if self.components.iter().all(|f| f.coeff(0).is_zero()) {
            return false; // common zero at (u:v) = (1:0)
        }
        let mut gcd: Vec<Rat> = dehomogenize(&self.components[0]);
        for f in &self.components[1..] {
            gcd = poly_gcd(&gcd, &dehomogenize(f));
            if gcd.len() <= 1 {
                return true;
            }
        }
        gcd.len() <= 1
    }
}

/// Coefficients of `f(u, 1)` in ascending powers of `u`, trimmed.
fn dehomogenize(f: &BinaryForm) -> Vec<Rat> {
    let d = f.degree();
    let mut coeffs: Vec<Rat> = (0..=d).map(|k| f.coeff(d - k).clone()).collect();
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    coeffs
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(Rat::is_zero)
}

/// Euclidean gcd of univariate polynomials over Q (ascending coefficients).
/// A gcd over Q stays a gcd over any field extension, so a constant gcd
/// certifies the absence of common roots anywhere.
fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let trim = |mut p: Vec<Rat>| {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        p
    };
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !poly_is_zero(&b) {
        let r = poly_rem(&a, &b);
        a = b;
        b = trim(r);
    }
    a
}

/// Remainder of polynomial division.
fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.to_vec();
    while r.len() > db && !poly_is_zero(&r) {
        let dr = r.len() - 1;
        if r[dr].is_zero() {
            r.pop();
            continue;
        }
        let q = &r[dr] / &lead;
        for i in 0..=db {
            let delta = &q * &b[i];
            r[dr - db + i] -= delta;
        }
        r.pop();
    }
    r
}

/// Projection of the rational normal curve from the vertex `P(T)`: the
/// components are the apolarity pairings of a canonical basis of `T^⊥`
/// against `(ux + vy)^d`, i.e. `g_j` has `u^(d-i) v^i`-coefficient
/// `φ_(j,i) · C(d,i) · (d-i)! · i!`. The vertex must avoid the curve, which
/// is exactly `a = -1`, and then the components are base-point-free.
pub fn project_curve(t: &FormSubspace) -> Result<CurveMap> {
    let d = t.degree();
    let tau = numerical_type(t)?;
    if tau.a() >= 0 {
        return Err(Error::VertexMeetsCurve { a: tau.a() });
    }
    let s = d - t.dim();
    let components: Vec<BinaryForm> = annihilator(t)
        .basis_forms()
        .into_iter()
        .map(|phi| {
            BinaryForm::new(
                d,
                (0..=d)
                    .map(|i| {
                        phi.coeff(i)
                            * Rat::from_integer(binomial_int(d, i))
                            * apolarity_weight(d, i)
                    })
                    .collect(),
            )
        })
        .collect();
    debug_assert_eq!(components.len(), s + 1);
    Ok(CurveMap { d, s, components, vertex: t.clone() })
}

/// Default profile length for splitting recovery: two twists past the
/// largest one.
pub fn default_profile_len(d: usize, tau: &NumericalType) -> usize {
    d + 3 + tau.bs().first().map_or(0, |&b| b as usize)
}

/// The section dimensions `h_k = h⁰T(-k)` for `k = 1..=k_max`.
///
/// For `k <= d+1` the restricted Euler sequence gives the closed form
/// `(d-e)(d-k+1) + (k-1)`. From `k = d+2` on, the value is computed along
/// BOTH routes — `dim ∂^(-(k-d-2))T` and `k-1 - dim(T^⊥·S^(k-d-2)U*)` — and
/// any disagreement is a hard internal error, never a warning.
pub fn cohomology_profile(t: &FormSubspace, k_max: usize) -> Result<Vec<i64>> {
    let d = t.degree();
    let tau = numerical_type(t)?;
    if tau.a() >= 0 {
        return Err(Error::VertexMeetsCurve { a: tau.a() });
    }
    let e_plus_1 = t.dim() as i64;
    let d_minus_e = d as i64 + 1 - e_plus_1;

    let mut profile = Vec::with_capacity(k_max);
    let mut downstairs = t.clone();
    let mut dual = annihilator(t);
    for k in 1..=k_max {
        let h = if k <= d + 1 {
            d_minus_e * (d as i64 - k as i64 + 1) + (k as i64 - 1)
        } else {
            if k > d + 2 {
                downstairs = partial_inv(&downstairs);
                dual = dual_multiply(&dual, 1);
            }
            let via_partial_inv = downstairs.dim() as i64;
            let via_dual = k as i64 - 1 - dual.dim() as i64;
            if via_partial_inv != via_dual {
                return Err(Error::Inconsistency(format!(
                    "cohomology routes disagree at k = {k}: ∂-route {via_partial_inv}, dual route {via_dual}"
                )));
            }
            via_partial_inv
        };
        profile.push(h);
    }
    Ok(profile)
}

/// Recovers the splitting type from a profile of `h_k = Σ max(a_i - k + 1, 0)`:
/// the count of twists at least `k` is `h_k - h_(k+1)`, so multiplicities are
/// second differences. The profile must extend one twist past the largest
/// one (its last entry must be zero).
pub fn splitting_from_cohomology(profile: &[i64], d: usize, s: usize) -> Result<SplittingType> {
    if profile.len() < d + 2 {
        return Err(Error::InvalidProfile(format!(
            "need at least h_1..h_{}, got {} entries",
            d + 2,
            profile.len()
        )));
    }
    // h_k for 1-based k, zero beyond the provided range.
    let get = |k: usize| -> i64 {
        if k >= 1 && k <= profile.len() {
            profile[k - 1]
        } else {
            0
        }
    };
    if get(profile.len()) != 0 {
        return Err(Error::InvalidProfile(
            "profile does not reach zero; too short to recover the largest twist".into(),
        ));
    }
    if get(d + 2) <= 0 {
        return Err(Error::InvalidProfile(
            "h_(d+2) = dim T vanishes; the vertex is empty".into(),
        ));
    }
    for k in 1..=profile.len() {
        if get(k) < get(k + 1) {
            return Err(Error::InvalidProfile(format!("profile increases at k = {k}")));
        }
        if get(k) - 2 * get(k + 1) + get(k + 2) < 0 {
            return Err(Error::InvalidProfile(format!("profile is not convex at k = {k}")));
        }
    }
    if get(d + 1) - get(d + 2) != s as i64 {
        return Err(Error::InvalidProfile(format!(
            "profile counts {} twists >= d+1, expected s = {s}",
            get(d + 1) - get(d + 2)
        )));
    }

    let mut twists = Vec::with_capacity(s);
    for k in d + 1..=profile.len() + 1 {
        let mult = get(k) - 2 * get(k + 1) + get(k + 2);
        for _ in 0..mult {
            twists.push(k as i64);
        }
    }
    let splitting = SplittingType::new(d, twists)?;

    // The recovered twists must reproduce the whole profile.
    for k in 1..=profile.len() {
        let total: i64 =
            splitting.twists().iter().map(|&a| (a - k as i64 + 1).max(0)).sum();
        if total != get(k) {
            return Err(Error::InvalidProfile(format!(
                "recovered twists do not reproduce h_{k}"
            )));
        }
    }
    Ok(splitting)
}

/// Constructs a vertex and a curve with the prescribed splitting type: draw
/// random forms `f_i` of degree `d + b_i` off their secant varieties, check
/// that the derivative sum one degree down is direct, take
/// `T = Σ ∂^(b_i)(f_i)`, and verify the whole pipeline — vertex type,
/// base-point-freeness, and the splitting recomputed from cohomology.
pub fn construct_with_splitting<R: Rng + ?Sized>(
    target: &SplittingType,
    rng: &mut R,
    retry_budget: u32,
) -> Result<(FormSubspace, CurveMap)> {
    let d = target.d();
    let bs = target.bs();
    if bs.is_empty() {
        return Err(Error::InvalidSplitting(
            "every twist equals d+1: the vertex would be empty and there is no projection".into(),
        ));
    }
    let tau = target.vertex_type()?;
    if !tau.is_admissible(d) {
        return Err(Error::InadmissibleType(tau.to_string(), format!("for degree {d}")));
    }

    'attempt: for _ in 0..retry_budget {
        let fs: Vec<BinaryForm> =
            bs.iter().map(|&b| BinaryForm::random(d + b as usize, COEFF_BOUND, rng)).collect();
        for (f, &b) in fs.iter().zip(&bs) {
            if secant_member(f, b as usize + 1)? {
                continue 'attempt;
            }
        }

        // Directness one degree down: dim Σ ∂^(b_i+1)(f_i) = Σ (b_i + 2).
        let mut down = FormSubspace::zero(d - 1);
        for (f, &b) in fs.iter().zip(&bs) {
            down = down.sum(&derivative_system(f, b as i64 + 1)?)?;
        }
        if down.dim() != bs.iter().map(|&b| b as usize + 2).sum::<usize>() {
            continue 'attempt;
        }

        let mut t = FormSubspace::zero(d);
        for (f, &b) in fs.iter().zip(&bs) {
            t = t.sum(&derivative_system(f, b as i64)?)?;
        }
        if numerical_type(&t)? != tau {
            continue 'attempt;
        }

        let curve = project_curve(&t)?;
        if !curve.is_base_point_free() {
            return Err(Error::Inconsistency(
                "curve from a vertex of type (-1, …) has a base point".into(),
            ));
        }
        let profile = cohomology_profile(&t, default_profile_len(d, &tau))?;
        let recovered = splitting_from_cohomology(&profile, d, target.s())?;
        if &recovered != target {
            return Err(Error::Inconsistency(format!(
                "constructed curve has splitting {:?}, wanted {:?}",
                recovered.twists(),
                target.twists()
            )));
        }
        return Ok((t, curve));
    }
    Err(Error::RetryBudget { budget: retry_budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::RETRY_BUDGET;
    use crate::forms::factorial;
    use crate::linalg::rat_int;
    use crate::strata::{enumerate_types, monomial_fixture};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tau(a: i32, bs: &[u32]) -> NumericalType {
        NumericalType::new(a, bs.to_vec()).unwrap()
    }

    #[test]
    fn splitting_type_validation() {
        let ok = SplittingType::new(5, vec![6, 8, 6]).unwrap();
        assert_eq!(ok.twists(), &[8, 6, 6]);
        assert_eq!(ok.e(), 1);
        assert_eq!(ok.bs(), vec![1]);

        assert!(SplittingType::new(5, vec![9, 6, 6]).is_err()); // Σ = 21 ≠ 20
        assert!(SplittingType::new(5, vec![8, 6, 5]).is_err()); // twist below d+1
        assert!(SplittingType::new(5, vec![]).is_err());
        assert!(SplittingType::new(5, vec![10, 10]).is_err()); // Σ/d ≠ s+1
    }

    #[test]
    fn splitting_from_type_quintic_examples() {
        assert_eq!(splitting_from_type(&tau(-1, &[1]), 5).unwrap().twists(), &[8, 6, 6]);
        assert_eq!(splitting_from_type(&tau(-1, &[0, 0]), 5).unwrap().twists(), &[7, 7, 6]);
        assert!(splitting_from_type(&tau(0, &[0]), 5).is_err());
        assert!(splitting_from_type(&tau(-1, &[]), 5).is_err());
    }

    #[test]
    fn degree_budget_holds_for_every_admissible_type() {
        for d in 3..=8usize {
            for e in 0..=d as i64 - 2 {
                for t in enumerate_types(d, e).unwrap() {
                    if t.a() != -1 || t.r() == 0 {
                        continue;
                    }
                    let sp = splitting_from_type(&t, d).unwrap();
                    let total: i64 = sp.twists().iter().sum();
                    assert_eq!(total, (d as i64 - e) * d as i64);
                    assert_eq!(sp.s() as i64, d as i64 - e - 1);
                }
            }
        }
    }

    #[test]
    fn projection_from_empty_vertex_is_the_rational_normal_curve() {
        let d = 4;
        let curve = project_curve(&FormSubspace::zero(d)).unwrap();
        assert_eq!(curve.s, d);
        assert_eq!(curve.components.len(), d + 1);
        for (j, g) in curve.components.iter().enumerate() {
            // Each component is d! times one monomial of (ux + vy)^d.
            let expected =
                BinaryForm::monomial(d, j).scale(&Rat::from_integer(factorial(d)));
            assert_eq!(g, &expected);
        }
        assert!(curve.is_base_point_free());
    }

    #[test]
    fn projection_rejects_vertices_meeting_the_curve() {
        let t = FormSubspace::span(3, &[BinaryForm::monomial(3, 0)]);
        assert!(matches!(project_curve(&t), Err(Error::VertexMeetsCurve { a: 0 })));
    }

    #[test]
    fn plane_cubic_projection_is_base_point_free() {
        // A line off the twisted cubic: x^3 + y^3 spans a valid vertex.
        let t = FormSubspace::span(3, &[BinaryForm::from_ints(&[1, 0, 0, 1])]);
        let curve = project_curve(&t).unwrap();
        assert_eq!(curve.s, 2);
        assert!(curve.is_base_point_free());
    }

    #[test]
    fn quintic_fixture_curves_are_base_point_free() {
        for bs in [vec![1u32], vec![0, 0]] {
            let t = monomial_fixture(5, &tau(-1, &bs)).unwrap();
            let curve = project_curve(&t).unwrap();
            assert_eq!(curve.s, 3);
            assert!(curve.is_base_point_free());
        }
    }

    #[test]
    fn cohomology_profile_quintic_chord_type() {
        // d = 5, type (-1,1): h_7 = dim T = 2, h_8 = dim ∂⁻¹T = 1, h_9 = 0.
        let t = monomial_fixture(5, &tau(-1, &[1])).unwrap();
        let profile = cohomology_profile(&t, 9).unwrap();
        assert_eq!(profile[6 - 1], 5); // h_(d+1) = d
        assert_eq!(profile[7 - 1], 2);
        assert_eq!(profile[8 - 1], 1);
        assert_eq!(profile[9 - 1], 0);
    }

    #[test]
    fn cohomology_profile_quintic_generic_type() {
        // d = 5, type (-1,0,0): h_8 = dim ∂⁻¹T = 0.
        let t = monomial_fixture(5, &tau(-1, &[0, 0])).unwrap();
        let profile = cohomology_profile(&t, 8).unwrap();
        assert_eq!(profile[7 - 1], 2); // h_(d+2) = dim T, always
        assert_eq!(profile[8 - 1], 0);
    }

    #[test]
    fn splitting_recovery_round_trip_on_fixtures() {
        for d in 3..=6usize {
            for e in 0..=d as i64 - 2 {
                for t in enumerate_types(d, e).unwrap() {
                    if t.a() != -1 || t.r() == 0 {
                        continue;
                    }
                    let fixture = monomial_fixture(d, &t).unwrap();
                    let profile =
                        cohomology_profile(&fixture, default_profile_len(d, &t)).unwrap();
                    let s = d - t.dim();
                    let recovered = splitting_from_cohomology(&profile, d, s).unwrap();
                    assert_eq!(recovered, splitting_from_type(&t, d).unwrap());
                }
            }
        }
    }

    #[test]
    fn euler_identity_on_computed_splittings() {
        // Σ max(a_i - k + 1, 0) = (d-e)(d-k+1) + (k-1) for 1 <= k <= d+1.
        for (d, bs) in [(5usize, vec![1u32]), (5, vec![0, 0]), (7, vec![2, 1])] {
            let sp = splitting_from_type(&tau(-1, &bs), d).unwrap();
            let e = sp.e();
            for k in 1..=d as i64 + 1 {
                let lhs: i64 = sp.twists().iter().map(|&a| (a - k + 1).max(0)).sum();
                let rhs = (d as i64 - e) * (d as i64 - k + 1) + (k - 1);
                assert_eq!(lhs, rhs, "euler identity failed at k = {k} for d = {d}");
            }
        }
    }

    #[test]
    fn splitting_from_cohomology_rejects_bad_profiles() {
        // Too short to see the largest twist.
        assert!(splitting_from_cohomology(&[20, 15, 10, 5, 5, 2, 2], 5, 3).is_err());
        // Zero vertex.
        let t0 = FormSubspace::zero(5);
        let tau0 = numerical_type(&t0).unwrap();
        let profile = cohomology_profile(&t0, default_profile_len(5, &tau0)).unwrap();
        assert!(splitting_from_cohomology(&profile, 5, 5).is_err());
        // Mismatched s.
        let t = monomial_fixture(5, &tau(-1, &[1])).unwrap();
        let profile = cohomology_profile(&t, 9).unwrap();
        assert!(splitting_from_cohomology(&profile, 5, 2).is_err());
    }

    #[test]
    fn construct_with_splitting_quintic_chord() {
        let target = SplittingType::new(5, vec![8, 6, 6]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (t, curve) = construct_with_splitting(&target, &mut rng, RETRY_BUDGET).unwrap();
        assert_eq!(numerical_type(&t).unwrap(), tau(-1, &[1]));
        assert_eq!(curve.s, 3);
        assert_eq!(curve.components.len(), 4);
        assert!(curve.is_base_point_free());
    }

    #[test]
    fn construct_with_splitting_rejects_bad_targets() {
        assert!(SplittingType::new(5, vec![9, 6, 6]).is_err());
        let all_low = SplittingType::new(3, vec![4, 4, 4]).unwrap(); // s = d, T = 0
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(construct_with_splitting(&all_low, &mut rng, RETRY_BUDGET).is_err());
    }

    #[test]
    fn construct_is_deterministic_for_a_fixed_seed() {
        let target = SplittingType::new(5, vec![7, 7, 6]).unwrap();
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            construct_with_splitting(&target, &mut rng, RETRY_BUDGET).unwrap()
        };
        let (t1, c1) = run();
        let (t2, c2) = run();
        assert_eq!(t1, t2);
        assert_eq!(c1, c2);
    }

    #[test]
    fn poly_gcd_detects_common_factors() {
        // (u - 1)(u - 2) and (u - 1)(u + 3) share u - 1.
        let a = vec![rat_int(2), rat_int(-3), rat_int(1)];
        let b = vec![rat_int(-3), rat_int(2), rat_int(1)];
        let g = poly_gcd(&a, &b);
        assert_eq!(g.len(), 2);
        // Coprime pair.
        let c = vec![rat_int(1), rat_int(0), rat_int(1)];
        assert_eq!(poly_gcd(&a, &c).len(), 1);
    }
}
