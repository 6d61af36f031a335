//! Stratification of the Grassmannian `Gr(e+1, S^dU)` by numerical type.
//!
//! Enumerates the admissible types for a given `(d, e)`, evaluates the
//! closed-form dimension of each stratum and of the representation variety
//! `V_T`, determines the generic type, and builds the separated-monomial
//! fixture subspaces that realize each type.

use serde::{Deserialize, Serialize};

use crate::classify::{numerical_type, NumericalType};
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, FormSubspace};

/// One row of the stratification table for `Gr(e+1, S^dU)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumReport {
    pub tau: NumericalType,
    pub d: usize,
    #[serde(rename = "dim_G")]
    pub dim_g: i64,
    #[serde(rename = "dim_VT")]
    pub dim_vt: i64,
    pub is_generic: bool,
    pub codim: i64,
}

/// All numerical types with `dim T = e + 1` admissible in degree `d`,
/// in deterministic order: `a` descending, and for each `a` the partitions
/// `(b_i + 1)` of `e - a` in descending lexicographic order.
///
/// `e + 1 = d + 1` yields only the conventional full type `(d)`; `e + 1 = d`
/// yields only `(d - 1)`, which the constraint arithmetic produces by
/// itself.
pub fn enumerate_types(d: usize, e: i64) -> Result<Vec<NumericalType>> {
    let dim = e + 1;
    if dim < 0 || dim as usize > d + 1 {
        return Err(Error::OutOfRange(format!(
            "dim T = e+1 = {dim} must lie in 0..={}",
            d + 1
        )));
    }
    if dim as usize == d + 1 {
        return Ok(vec![NumericalType::full_type(d)]);
    }
    let dim = dim as usize;
    let max_parts = d - dim; // admissibility a+1 + Σ(b_i+2) <= d  <=>  r <= d - (e+1)
    let mut out = Vec::new();
    for a in (-1..=dim as i64 - 1).rev() {
        let remaining = dim - (a + 1) as usize; // r + Σ b_i = Σ (b_i + 1)
        for parts in partitions_bounded(remaining, max_parts) {
            let bs: Vec<u32> = parts.iter().map(|&p| p as u32 - 1).collect();
            out.push(NumericalType::new(a as i32, bs)?);
        }
    }
    Ok(out)
}

/// Partitions of `n` into at most `max_parts` positive parts, descending
/// lexicographic, each partition non-increasing. `n = 0` gives the empty
/// partition.
fn partitions_bounded(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max_part: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=n.min(max_part)).rev() {
            prefix.push(part);
            rec(n - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// `dim V_T = r·a + Σ_i Σ_(b_j >= b_i) (b_j - b_i + 1)`: the dimension of
/// the variety of representations of a fixed `T` of this type.
pub fn dim_vt(tau: &NumericalType) -> i64 {
    let r = tau.r() as i64;
    let a = tau.a() as i64;
    r * a + pair_sum(tau.bs())
}

fn pair_sum(bs: &[u32]) -> i64 {
    let mut total = 0i64;
    for &bi in bs {
        for &bj in bs {
            if bj >= bi {
                total += bj as i64 - bi as i64 + 1;
            }
        }
    }
    total
}

/// Dimension of the stratum of type `tau` in `Gr(e+1, S^dU)`:
/// `e+1 + r(d - a - 1) - Σ_i Σ_(b_j >= b_i)(b_j - b_i + 1)`.
/// The conventional full type `(d)` is the whole zero-dimensional point.
pub fn dim_stratum(tau: &NumericalType, d: usize) -> Result<i64> {
    if tau.r() == 0 && tau.a() == d as i32 {
        return Ok(0);
    }
    if !tau.is_admissible(d) {
        return Err(Error::InadmissibleType(
            tau.to_string(),
            format!("a+1 + Σ(b_i+2) exceeds d = {d}"),
        ));
    }
    let e_plus_1 = tau.dim() as i64;
    let r = tau.r() as i64;
    let a = tau.a() as i64;
    let dim = e_plus_1 + r * (d as i64 - a - 1) - pair_sum(tau.bs());

    // Same number along the independent route through dim V_T.
    let alt = (a + 1) + r * d as i64 + tau.sum_bs() as i64 - dim_vt(tau);
    if alt != dim {
        return Err(Error::Inconsistency(format!(
            "stratum dimension routes disagree for {tau}: {dim} vs {alt}"
        )));
    }
    Ok(dim)
}

/// The numerical type attained on a dense open subset of `Gr(e+1, S^dU)`.
pub fn generic_type(d: usize, e: i64) -> Result<NumericalType> {
    let dim = e + 1;
    if dim < 0 || dim as usize > d + 1 {
        return Err(Error::OutOfRange(format!(
            "dim T = e+1 = {dim} must lie in 0..={}",
            d + 1
        )));
    }
    let dim = dim as usize;
    let tau = if dim == d + 1 {
        NumericalType::full_type(d)
    } else if dim == d {
        NumericalType::new(d as i32 - 1, Vec::new())?
    } else if 2 * dim <= d {
        // Small subspaces: every generator contributes an independent pair
        // of derivatives.
        NumericalType::new(-1, vec![0; dim])?
    } else {
        // e+1 < d < 2(e+1): r = d - (e+1) summands share Σ b_i = 2(e+1) - d
        // as evenly as possible.
        let r = d - dim;
        let s = 2 * dim - d;
        let a = s / r;
        let h = s - r * a;
        let mut bs = vec![a as u32 + 1; h];
        bs.extend(std::iter::repeat(a as u32).take(r - h));
        NumericalType::new(-1, bs)?
    };

    // The generic stratum must fill the Grassmannian.
    if tau.dim() != dim {
        return Err(Error::Inconsistency(format!(
            "generic type {tau} has dim {} instead of {dim}",
            tau.dim()
        )));
    }
    let full = (dim as i64) * (d as i64 + 1 - dim as i64);
    if dim_stratum(&tau, d)? != full {
        return Err(Error::Inconsistency(format!(
            "generic type {tau} has stratum dimension != {full}"
        )));
    }
    Ok(tau)
}

/// The separated-monomial subspace realizing a type: a run of `a + 1`
/// monomials starting at `x^d`, then for each `b_i` a run of `b_i + 1`
/// monomials starting two steps past the previous run. The construction is
/// verified by classifying the result.
pub fn monomial_fixture(d: usize, tau: &NumericalType) -> Result<FormSubspace> {
    if !tau.is_admissible(d) {
        return Err(Error::InadmissibleType(
            tau.to_string(),
            format!("fixture needs a+1 + Σ(b_i+2) <= d = {d}"),
        ));
    }
    let mut y_exps: Vec<usize> = Vec::with_capacity(tau.dim());
    for i in 0..=tau.a() {
        y_exps.push(i as usize);
    }
    let mut start = (tau.a() + 2) as usize;
    for &b in tau.bs() {
        for k in 0..=b as usize {
            y_exps.push(start + k);
        }
        start += b as usize + 2;
    }
    let forms: Vec<BinaryForm> = y_exps.iter().map(|&e| BinaryForm::monomial(d, e)).collect();
    let t = FormSubspace::span(d, &forms);
    let back = numerical_type(&t)?;
    if &back != tau {
        return Err(Error::Inconsistency(format!(
            "fixture for {tau} classified as {back}"
        )));
    }
    Ok(t)
}

/// Full stratification table for `(d, e)`, generic stratum flagged.
pub fn reports(d: usize, e: i64) -> Result<Vec<StratumReport>> {
    let generic = generic_type(d, e)?;
    let full = (e + 1) * (d as i64 - e);
    enumerate_types(d, e)?
        .into_iter()
        .map(|tau| {
            let dim_g = dim_stratum(&tau, d)?;
            Ok(StratumReport {
                d,
                dim_g,
                dim_vt: dim_vt(&tau),
                is_generic: tau == generic,
                codim: full - dim_g,
                tau,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::partial_inv_iter;

    fn tau(a: i32, bs: &[u32]) -> NumericalType {
        NumericalType::new(a, bs.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate_types(3, 0).unwrap(), vec![tau(0, &[]), tau(-1, &[0])]);
        assert_eq!(enumerate_types(4, 3).unwrap(), vec![tau(3, &[])]);
        // Degree 5, lines in P^5: four strata.
        assert_eq!(
            enumerate_types(5, 1).unwrap(),
            vec![tau(1, &[]), tau(0, &[0]), tau(-1, &[1]), tau(-1, &[0, 0])]
        );
        // Conventional edge cases.
        assert_eq!(enumerate_types(4, 4).unwrap(), vec![NumericalType::full_type(4)]);
        assert_eq!(enumerate_types(4, 3).unwrap()[0].a(), 3);
        assert!(enumerate_types(4, 5).is_err());
    }

    #[test]
    fn every_enumerated_type_has_the_right_dimension() {
        for d in 2..=9usize {
            for e in -1..=d as i64 {
                for t in enumerate_types(d, e).unwrap() {
                    assert_eq!(t.dim() as i64, e + 1, "type {t} for (d,e) = ({d},{e})");
                }
            }
        }
    }

    #[test]
    fn stratum_dimension_examples() {
        // Types (-1, 0^r) fill an open subset when 2r <= d.
        for (r, d) in [(1usize, 2usize), (2, 4), (2, 5), (3, 7)] {
            let t = tau(-1, &vec![0; r]);
            let expected = (r * (d + 1 - r)) as i64;
            assert_eq!(dim_stratum(&t, d).unwrap(), expected);
        }

        // (-1, 1, 0) in degree 5 fills Gr(3, 6).
        assert_eq!(dim_stratum(&tau(-1, &[1, 0]), 5).unwrap(), 9);

        // Purely secant types: a+1 points on the curve.
        for a in -1..=3i32 {
            assert_eq!(dim_stratum(&tau(a, &[]), 6).unwrap(), (a + 1) as i64);
        }

        // Chordal stratum of lines in degree 5.
        assert_eq!(dim_stratum(&tau(-1, &[1]), 5).unwrap(), 6);
        assert_eq!(dim_stratum(&tau(-1, &[0, 0]), 5).unwrap(), 8);

        assert!(dim_stratum(&tau(2, &[1]), 4).is_err());
    }

    #[test]
    fn dim_vt_examples() {
        assert_eq!(dim_vt(&tau(-1, &[1])), 0);
        assert_eq!(dim_vt(&tau(-1, &[0, 0])), 2);
        assert_eq!(dim_vt(&tau(-1, &[1, 0])), 2);
        assert_eq!(dim_vt(&tau(0, &[1, 0])), 4);
    }

    #[test]
    fn generic_type_examples() {
        assert_eq!(generic_type(5, 1).unwrap(), tau(-1, &[0, 0]));
        assert_eq!(generic_type(5, 2).unwrap(), tau(-1, &[1, 0]));
        assert_eq!(generic_type(7, 5).unwrap(), tau(-1, &[5]));
        assert_eq!(generic_type(6, 5).unwrap(), tau(5, &[]));
        assert_eq!(generic_type(6, 6).unwrap(), NumericalType::full_type(6));
        assert_eq!(generic_type(8, 2).unwrap(), tau(-1, &[0, 0, 0]));
        assert!(generic_type(4, 5).is_err());
    }

    #[test]
    fn exactly_one_stratum_is_generic() {
        for d in 3..=8usize {
            for e in 0..=d as i64 - 1 {
                let table = reports(d, e).unwrap();
                let generics: Vec<_> = table.iter().filter(|r| r.is_generic).collect();
                assert_eq!(generics.len(), 1, "(d,e) = ({d},{e})");
                assert_eq!(generics[0].codim, 0);
                assert_eq!(generics[0].tau, generic_type(d, e).unwrap());
                for row in &table {
                    assert!(row.codim >= 0, "negative codim at (d,e) = ({d},{e})");
                }
            }
        }
    }

    #[test]
    fn fixture_degree_seven() {
        let t = monomial_fixture(7, &tau(0, &[1, 0])).unwrap();
        let expected = FormSubspace::span(
            7,
            &[
                BinaryForm::monomial(7, 0),
                BinaryForm::monomial(7, 2),
                BinaryForm::monomial(7, 3),
                BinaryForm::monomial(7, 5),
            ],
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn fixture_degree_five_single_chord() {
        let t = monomial_fixture(5, &tau(-1, &[1])).unwrap();
        let expected =
            FormSubspace::span(5, &[BinaryForm::monomial(5, 1), BinaryForm::monomial(5, 2)]);
        assert_eq!(t, expected);
    }

    #[test]
    fn fixture_odd_monomials_for_balanced_type() {
        // Type (-1, 0^k) in degree 2k: x^(2k-1)y, x^(2k-3)y^3, ...
        for k in 1..=3usize {
            let d = 2 * k;
            let t = monomial_fixture(d, &tau(-1, &vec![0; k])).unwrap();
            let forms: Vec<BinaryForm> =
                (0..k).map(|i| BinaryForm::monomial(d, 2 * i + 1)).collect();
            assert_eq!(t, FormSubspace::span(d, &forms));
        }
    }

    #[test]
    fn fixture_rejects_inadmissible_types() {
        assert!(monomial_fixture(4, &tau(1, &[1])).is_err());
        assert!(monomial_fixture(3, &NumericalType::full_type(3)).is_err());
    }

    #[test]
    fn dim_vt_matches_direct_computation_on_fixtures() {
        // dim V_T = Σ_i (dim ∂^(-b_i)T - 1), evaluated on the fixture.
        for d in 3..=7usize {
            for e in 0..=d as i64 - 1 {
                for t in enumerate_types(d, e).unwrap() {
                    let fixture = monomial_fixture(d, &t).unwrap();
                    let direct: i64 = t
                        .bs()
                        .iter()
                        .map(|&b| partial_inv_iter(&fixture, b as usize).dim() as i64 - 1)
                        .sum();
                    assert_eq!(dim_vt(&t), direct, "type {t} in degree {d}");
                }
            }
        }
    }
}
