//! Batch self-check drivers.
//!
//! Each check sweeps a `(d, e)` range, draws seeded random inputs where
//! randomness is called for, and counts exact successes and failures. The
//! same functions back the CLI `verify` subcommand and the acceptance test
//! suite; all randomness is derived deterministically from the configured
//! seed, so reports are reproducible byte for byte.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    decompose, expected_left_indices, kronecker_left_indices, normal_rank, numerical_type,
    pencil_of, verify_decomposition, NumericalType, RETRY_BUDGET,
};
use crate::curves::{
    cohomology_profile, construct_with_splitting, default_profile_len, project_curve,
    splitting_from_cohomology, splitting_from_type,
};
use crate::error::Result;
use crate::forms::{
    annihilator, derivative_system, dual_multiply, map_subspace, partial, partial_inv,
    partial_inv_in_directions, partial_inv_iter, secant_member, substitution_matrix, BinaryForm,
    FormSubspace,
};
use crate::linalg::{kernel, preimage, rat_int, Mat, Subspace};
use crate::strata::{dim_stratum, dim_vt, enumerate_types, generic_type, monomial_fixture};

/// Parameters of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub d_min: usize,
    pub d_max: usize,
    pub seed: u64,
    /// Random subspaces drawn per `(d, e)` pair for the sampled checks.
    pub samples_per_pair: usize,
    /// Random draws per `(d, e)` pair for the empirical genericity check.
    pub genericity_samples: usize,
    /// Random `(T, g)` trials for the substitution-invariance check.
    pub pgl_trials: usize,
    /// Random direct-sum pairs for the additivity check.
    pub direct_sum_trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            d_min: 3,
            d_max: 6,
            seed: 1729,
            samples_per_pair: 6,
            genericity_samples: 12,
            pgl_trials: 40,
            direct_sum_trials: 25,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    /// First few failure descriptions, for diagnostics.
    pub details: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult { name: name.to_string(), passed: 0, failed: 0, details: Vec::new() }
    }

    fn pass(&mut self) {
        self.passed += 1;
    }

    fn fail(&mut self, detail: String) {
        self.failed += 1;
        if self.details.len() < 5 {
            self.details.push(detail);
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(detail());
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Aggregate report of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

/// Deterministic sub-seed derivation (splitmix64 step over seed and salt).
pub fn subseed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn salt_of(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x1000_0000_01b3)
    })
}

fn rng_for(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(subseed(seed, salt_of(name)), index))
}

/// The seeded random sample shared by the sampled checks: `samples` proper
/// subspaces of each dimension `e + 1`, `0 <= e <= d - 2`, for each `d` in
/// range.
pub fn sample_subspaces(
    d_min: usize,
    d_max: usize,
    seed: u64,
    samples: usize,
) -> Vec<FormSubspace> {
    let mut out = Vec::new();
    let mut index = 0u64;
    for d in d_min..=d_max {
        for e in 0..=d as i64 - 2 {
            for _ in 0..samples {
                let mut rng = rng_for(seed, "sample-subspaces", index);
                index += 1;
                out.push(FormSubspace::random(d, (e + 1) as usize, 50, &mut rng));
            }
        }
    }
    out
}

/// All monomial fixtures for proper types in the degree range.
pub fn all_fixtures(d_min: usize, d_max: usize) -> Result<Vec<(usize, NumericalType, FormSubspace)>> {
    let mut out = Vec::new();
    for d in d_min..=d_max {
        for e in 0..=d as i64 - 1 {
            for tau in enumerate_types(d, e)? {
                let fixture = monomial_fixture(d, &tau)?;
                out.push((d, tau, fixture));
            }
        }
    }
    Ok(out)
}

/// Core lattice laws of the exact linear algebra: rank-nullity, the modular
/// dimension law, idempotence and scale invariance of canonicalization, and
/// kernel containment in preimages.
pub fn check_linalg_laws(seed: u64, trials: usize) -> CheckResult {
    let mut res = CheckResult::new("exact-linalg-laws");
    for i in 0..trials {
        let mut rng = rng_for(seed, "linalg", i as u64);
        let rows = rng.random_range(1..=4);
        let cols = rng.random_range(1..=6);
        let m = Mat::from_fn(rows, cols, |_, _| rat_int(rng.random_range(-9..=9)));
        res.record(m.rank() + kernel(&m).dim() == m.cols(), || {
            format!("rank-nullity failed on a {rows}x{cols} matrix")
        });

        let a = Subspace::canonicalize(&Mat::from_fn(2, cols, |_, _| {
            rat_int(rng.random_range(-9..=9))
        }));
        let b = Subspace::canonicalize(&Mat::from_fn(2, cols, |_, _| {
            rat_int(rng.random_range(-9..=9))
        }));
        let (sum, meet) = (a.sum(&b).unwrap(), a.intersect(&b).unwrap());
        res.record(sum.dim() + meet.dim() == a.dim() + b.dim(), || {
            "modular dimension law failed".to_string()
        });
        res.record(Subspace::canonicalize(a.basis()) == a, || {
            "canonicalize is not idempotent".to_string()
        });

        let k = rat_int(rng.random_range(1..=7));
        let scaled = Mat::from_fn(a.basis().rows(), cols, |r, c| a.basis().at(r, c) * &k);
        res.record(Subspace::canonicalize(&scaled) == a, || {
            "canonicalize is not scale invariant".to_string()
        });

        let w = Subspace::canonicalize(&Mat::from_fn(1, rows, |_, _| {
            rat_int(rng.random_range(-9..=9))
        }));
        match preimage(&m, &w) {
            Ok(pre) => res.record(pre.contains(&kernel(&m)), || {
                "preimage does not contain the kernel".to_string()
            }),
            Err(e) => res.fail(format!("preimage failed: {e}")),
        }
    }
    res
}

/// Numerical-type constraints on random proper subspaces: admissibility,
/// the dimension identity, and `r = dim ∂T - dim T`.
pub fn check_type_laws(sample: &[FormSubspace]) -> CheckResult {
    let mut res = CheckResult::new("type-laws");
    for t in sample {
        let d = t.degree();
        match numerical_type(t) {
            Ok(tau) => {
                let dt = match partial(t) {
                    Ok(dt) => dt,
                    Err(e) => {
                        res.fail(format!("partial failed in degree {d}: {e}"));
                        continue;
                    }
                };
                let ok = tau.a() >= -1
                    && tau.is_admissible(d)
                    && tau.dim() == t.dim()
                    && dt.dim() == t.dim() + tau.r();
                res.record(ok, || {
                    format!(
                        "type {tau} violates the constraints for dim {} in degree {d}",
                        t.dim()
                    )
                });
            }
            Err(e) => res.fail(format!("classification failed in degree {d}: {e}")),
        }
    }
    res
}

/// Kronecker oracle: the left minimal indices of the derivation pencil are
/// `{b_i + 1}`, and the normal rank is `dim T`.
pub fn check_kronecker_oracle(
    sample: &[FormSubspace],
    fixtures: &[(usize, NumericalType, FormSubspace)],
) -> CheckResult {
    let mut res = CheckResult::new("kronecker-oracle");
    let spaces = sample
        .iter()
        .cloned()
        .chain(fixtures.iter().map(|(_, _, f)| f.clone()));
    for t in spaces {
        let outcome = (|| -> Result<bool> {
            let tau = numerical_type(&t)?;
            let p = pencil_of(&t)?;
            Ok(normal_rank(&p) == t.dim()
                && kronecker_left_indices(&p)? == expected_left_indices(&tau))
        })();
        match outcome {
            Ok(ok) => res.record(ok, || {
                format!("pencil indices disagree for a dim-{} space in degree {}", t.dim(), t.degree())
            }),
            Err(e) => res.fail(format!("kronecker oracle errored: {e}")),
        }
    }
    res
}

/// Two-route cohomology agreement on every vertex with `a = -1`; the routes
/// are compared inside `cohomology_profile`, which errors on any mismatch.
/// Also pins `h_(d+2) = dim T`.
pub fn check_cohomology_routes(
    sample: &[FormSubspace],
    fixtures: &[(usize, NumericalType, FormSubspace)],
) -> CheckResult {
    let mut res = CheckResult::new("cohomology-routes");
    let spaces = sample
        .iter()
        .cloned()
        .chain(fixtures.iter().map(|(_, _, f)| f.clone()));
    for t in spaces {
        let d = t.degree();
        let tau = match numerical_type(&t) {
            Ok(tau) => tau,
            Err(e) => {
                res.fail(format!("classification failed: {e}"));
                continue;
            }
        };
        if tau.a() != -1 || t.dim() == 0 || t.dim() > d - 1 {
            continue;
        }
        match cohomology_profile(&t, default_profile_len(d, &tau)) {
            Ok(profile) => res.record(profile[d + 1] == t.dim() as i64, || {
                format!("h_(d+2) != dim T in degree {d}")
            }),
            Err(e) => res.fail(format!("cohomology routes disagreed: {e}")),
        }
    }
    res
}

/// Numerical types are unchanged by invertible substitutions of the
/// variables.
pub fn check_pgl_invariance(d_min: usize, d_max: usize, seed: u64, trials: usize) -> CheckResult {
    let mut res = CheckResult::new("pgl-invariance");
    for i in 0..trials {
        let mut rng = rng_for(seed, "pgl", i as u64);
        let d = rng.random_range(d_min..=d_max);
        let dim = rng.random_range(1..=d - 1);
        let t = FormSubspace::random(d, dim, 50, &mut rng);
        let g = loop {
            let g = [
                [rat_int(rng.random_range(-9..=9)), rat_int(rng.random_range(-9..=9))],
                [rat_int(rng.random_range(-9..=9)), rat_int(rng.random_range(-9..=9))],
            ];
            let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
            if !det.is_zero() {
                break g;
            }
        };
        let moved = map_subspace(&substitution_matrix(d, &g), &t, d);
        let ok = moved.dim() == t.dim()
            && numerical_type(&moved).ok() == numerical_type(&t).ok();
        res.record(ok, || format!("type changed under substitution in degree {d}"));
    }
    res
}

/// Laws of the `∂⁻¹` operator: the sandwich inclusions, independence of the
/// direction pair, the three constructed cases (pure powers, curve-generated
/// spans, derivative systems), and additivity over random direct sums.
pub fn check_partial_inv_laws(
    d_min: usize,
    d_max: usize,
    seed: u64,
    direct_sum_trials: usize,
) -> CheckResult {
    let mut res = CheckResult::new("partial-inv-laws");

    for d in d_min..=d_max {
        let mut rng = rng_for(seed, "pinv-cases", d as u64);

        // Pure power line: lifts to the pure power one degree up.
        let p = loop {
            let p = BinaryForm::linear(
                rat_int(rng.random_range(-9..=9)),
                rat_int(rng.random_range(-9..=9)),
            );
            if !p.is_zero() {
                break p;
            }
        };
        let line = FormSubspace::span(d, &[p.pow(d)]);
        res.record(
            partial_inv(&line) == FormSubspace::span(d + 1, &[p.pow(d + 1)]),
            || format!("pure-power line failed to lift in degree {d}"),
        );

        // A line off the curve pulls back to zero.
        let f = loop {
            let f = BinaryForm::random(d, 20, &mut rng);
            if !secant_member(&f, 1).unwrap() {
                break f;
            }
        };
        res.record(partial_inv(&FormSubspace::span(d, &[f])).is_zero(), || {
            format!("line off the curve lifted nontrivially in degree {d}")
        });

        // Curve-generated spans keep their dimension and push back down.
        let k = (d - 1).min(3);
        let mut points: Vec<(i64, i64)> = Vec::new();
        while points.len() < k {
            let cand = (rng.random_range(-9..=9), rng.random_range(-9..=9));
            if cand == (0, 0) {
                continue;
            }
            if points.iter().all(|&(a, b)| a * cand.1 - b * cand.0 != 0) {
                points.push(cand);
            }
        }
        let span = |deg: usize| {
            let powers: Vec<BinaryForm> = points
                .iter()
                .map(|&(a, b)| BinaryForm::linear(rat_int(a), rat_int(b)).pow(deg))
                .collect();
            FormSubspace::span(deg, &powers)
        };
        let t = span(d);
        let lift = partial_inv(&t);
        res.record(
            lift == span(d + 1) && partial(&lift).unwrap() == t,
            || format!("curve-generated lift failed in degree {d}"),
        );

        // Derivative systems step down by one order.
        let b = 2.min(d - 2).max(1);
        let g = loop {
            let g = BinaryForm::random(d + b, 20, &mut rng);
            if !secant_member(&g, b + 1).unwrap() {
                break g;
            }
        };
        let sys = derivative_system(&g, b as i64).unwrap();
        let lift = partial_inv(&sys);
        res.record(
            lift == derivative_system(&g, b as i64 - 1).unwrap()
                && partial(&lift).unwrap() == sys,
            || format!("derivative system lift failed in degree {d}"),
        );

        // Sandwich inclusions and direction independence on a random space.
        let t = FormSubspace::random(d, (d - 1).min(2), 50, &mut rng);
        let up = partial_inv(&t);
        let sandwich_ok = t.contains_subspace(&partial(&up).unwrap())
            && partial_inv(&partial(&t).unwrap()).contains_subspace(&t);
        res.record(sandwich_ok, || format!("sandwich inclusions failed in degree {d}"));
        let (a1, a2) = (rat_int(rng.random_range(1..=9)), rat_int(rng.random_range(-9..=9)));
        let (b1, b2) = (rat_int(rng.random_range(-9..=9)), rat_int(rng.random_range(1..=9)));
        match partial_inv_in_directions(&t, (&a1, &a2), (&b1, &b2)) {
            Ok(skew) => res.record(skew == up, || {
                format!("∂⁻¹ depended on the direction pair in degree {d}")
            }),
            Err(_) => {} // dependent directions drawn; skip
        }
    }

    // Additivity: ∂⁻¹(A ⊕ B) = ∂⁻¹A ⊕ ∂⁻¹B whenever both sums are direct.
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < direct_sum_trials && attempts < direct_sum_trials * 20 {
        let mut rng = rng_for(seed, "pinv-directsum", attempts as u64);
        attempts += 1;
        let d = rng.random_range(d_min.max(4)..=d_max.max(4));
        let da = rng.random_range(1..=2);
        let db = rng.random_range(1..=2);
        if 2 * (da + db) > d {
            continue;
        }
        let a = FormSubspace::random(d, da, 30, &mut rng);
        let b = FormSubspace::random(d, db, 30, &mut rng);
        let t = a.sum(&b).unwrap();
        if t.dim() != da + db {
            continue;
        }
        let (pa, pb) = (partial(&a).unwrap(), partial(&b).unwrap());
        let dt = partial(&t).unwrap();
        if dt.dim() != pa.dim() + pb.dim() {
            continue; // derivative sum not direct; precondition fails
        }
        done += 1;
        let (ia, ib) = (partial_inv(&a), partial_inv(&b));
        let it = partial_inv(&t);
        let ok = it == ia.sum(&ib).unwrap() && it.dim() == ia.dim() + ib.dim();
        res.record(ok, || format!("∂⁻¹ additivity failed in degree {d}"));
    }
    res
}

/// Decomposition round trip on every fixture: decompose, re-verify all the
/// directness invariants, and reassemble the original space.
pub fn check_decompose_round_trip(
    fixtures: &[(usize, NumericalType, FormSubspace)],
    seed: u64,
) -> CheckResult {
    let mut res = CheckResult::new("decompose-round-trip");
    for (i, (d, tau, t)) in fixtures.iter().enumerate() {
        let mut rng = rng_for(seed, "decompose", i as u64);
        match decompose(t, &mut rng, RETRY_BUDGET) {
            Ok(dec) => {
                let verified = verify_decomposition(t, &dec.s_part, tau, &dec.fs).is_ok();
                let mut sum = dec.s_part.clone();
                for (f, &b) in dec.fs.iter().zip(tau.bs()) {
                    sum = sum.sum(&derivative_system(f, b as i64).unwrap()).unwrap();
                }
                res.record(verified && &sum == t, || {
                    format!("decomposition of {tau} in degree {d} does not reassemble")
                });
            }
            Err(e) => res.fail(format!("decompose failed for {tau} in degree {d}: {e}")),
        }
    }
    res
}

/// Stratum bookkeeping: every enumerated type is admissible with the right
/// dimension, `dim V_T` matches the direct computation on the fixture, and
/// exactly one type per `(d, e)` is generic with codimension zero.
pub fn check_strata_dimensions(d_min: usize, d_max: usize) -> CheckResult {
    let mut res = CheckResult::new("strata-dimensions");
    for d in d_min..=d_max {
        for e in 0..=d as i64 - 1 {
            let types = match enumerate_types(d, e) {
                Ok(ts) => ts,
                Err(err) => {
                    res.fail(format!("enumeration failed for (d,e)=({d},{e}): {err}"));
                    continue;
                }
            };
            let full = (e + 1) * (d as i64 - e);
            let mut generic_count = 0usize;
            for tau in &types {
                let ok = (|| -> Result<bool> {
                    let dim_g = dim_stratum(tau, d)?;
                    let fixture = monomial_fixture(d, tau)?;
                    let direct: i64 = tau
                        .bs()
                        .iter()
                        .map(|&b| partial_inv_iter(&fixture, b as usize).dim() as i64 - 1)
                        .sum();
                    if dim_g == full {
                        generic_count += 1;
                    }
                    Ok(tau.dim() as i64 == e + 1 && dim_vt(tau) == direct && dim_g <= full)
                })();
                match ok {
                    Ok(ok) => res.record(ok, || {
                        format!("dimension bookkeeping failed for {tau} at (d,e)=({d},{e})")
                    }),
                    Err(err) => res.fail(format!("stratum check errored for {tau}: {err}")),
                }
            }
            let generic = generic_type(d, e);
            let ok = generic_count == 1
                && generic
                    .map(|g| dim_stratum(&g, d).map(|dg| dg == full).unwrap_or(false))
                    .unwrap_or(false);
            res.record(ok, || {
                format!("codim-0 stratum not unique or not the generic type at (d,e)=({d},{e})")
            });
        }
    }
    res
}

/// Random subspaces have the generic type, without exception.
pub fn check_empirical_genericity(
    d_min: usize,
    d_max: usize,
    seed: u64,
    samples_per_pair: usize,
) -> CheckResult {
    let mut res = CheckResult::new("empirical-genericity");
    let mut index = 0u64;
    for d in d_min..=d_max {
        for e in 0..=d as i64 - 1 {
            let expected = match generic_type(d, e) {
                Ok(g) => g,
                Err(err) => {
                    res.fail(format!("generic type failed for (d,e)=({d},{e}): {err}"));
                    continue;
                }
            };
            for _ in 0..samples_per_pair {
                let mut rng = rng_for(seed, "genericity", index);
                index += 1;
                let t = FormSubspace::random(d, (e + 1) as usize, 50, &mut rng);
                match numerical_type(&t) {
                    Ok(tau) => res.record(tau == expected, || {
                        format!("random space of (d,e)=({d},{e}) has type {tau}, expected {expected}")
                    }),
                    Err(err) => res.fail(format!("classification failed: {err}")),
                }
            }
        }
    }
    res
}

/// The type-to-splitting dictionary agrees with the cohomology recovery on
/// every fixture with a curve-free vertex, and the twist budget holds.
pub fn check_splitting_equivalence(
    fixtures: &[(usize, NumericalType, FormSubspace)],
) -> CheckResult {
    let mut res = CheckResult::new("splitting-equivalence");
    for (d, tau, fixture) in fixtures {
        if tau.a() != -1 || tau.r() == 0 {
            continue;
        }
        let outcome = (|| -> Result<bool> {
            let from_type = splitting_from_type(tau, *d)?;
            let profile = cohomology_profile(fixture, default_profile_len(*d, tau))?;
            let from_cohomology =
                splitting_from_cohomology(&profile, *d, from_type.s())?;
            let total: i64 = from_type.twists().iter().sum();
            let budget = (*d as i64 - from_type.e()) * *d as i64;
            let euler = (1..=*d as i64 + 1).all(|k| {
                let lhs: i64 =
                    from_type.twists().iter().map(|&a| (a - k + 1).max(0)).sum();
                lhs == (*d as i64 - from_type.e()) * (*d as i64 - k + 1) + (k - 1)
            });
            Ok(from_type == from_cohomology && total == budget && euler)
        })();
        match outcome {
            Ok(ok) => res.record(ok, || {
                format!("splitting routes disagree for {tau} in degree {d}")
            }),
            Err(e) => res.fail(format!("splitting check errored for {tau} in degree {d}: {e}")),
        }
    }
    res
}

/// Full construction round trip: for every admissible curve-free type, build
/// a curve with the dictated splitting and reverify it end to end (the
/// construction itself recomputes the splitting from cohomology and checks
/// base-point-freeness).
pub fn check_construct_round_trip(d_min: usize, d_max: usize, seed: u64) -> CheckResult {
    let mut res = CheckResult::new("construct-round-trip");
    let mut index = 0u64;
    for d in d_min..=d_max {
        for e in 0..=d as i64 - 2 {
            let types = match enumerate_types(d, e) {
                Ok(ts) => ts,
                Err(err) => {
                    res.fail(format!("enumeration failed: {err}"));
                    continue;
                }
            };
            for tau in types {
                if tau.a() != -1 || tau.r() == 0 {
                    continue;
                }
                let mut rng = rng_for(seed, "construct", index);
                index += 1;
                let outcome = (|| -> Result<bool> {
                    let target = splitting_from_type(&tau, d)?;
                    let (t, curve) = construct_with_splitting(&target, &mut rng, RETRY_BUDGET)?;
                    Ok(numerical_type(&t)? == tau
                        && curve.s == target.s()
                        && curve.is_base_point_free())
                })();
                match outcome {
                    Ok(ok) => res.record(ok, || {
                        format!("construction round trip failed for {tau} in degree {d}")
                    }),
                    Err(e) => {
                        res.fail(format!("construction errored for {tau} in degree {d}: {e}"))
                    }
                }
            }
        }
    }
    res
}

/// Dual-space identity `(∂^(-k)T)^⊥ = T^⊥ · S^kU*` on random subspaces.
pub fn check_dual_space_identity(
    d_min: usize,
    d_max: usize,
    seed: u64,
    trials: usize,
) -> CheckResult {
    let mut res = CheckResult::new("dual-space-identity");
    for i in 0..trials {
        let mut rng = rng_for(seed, "dual-identity", i as u64);
        let d = rng.random_range(d_min..=d_max);
        let dim = rng.random_range(0..=d - 1);
        let t = FormSubspace::random(d, dim, 50, &mut rng);
        let ann = annihilator(&t);
        let ok = (0..=3usize).all(|k| {
            annihilator(&partial_inv_iter(&t, k)) == dual_multiply(&ann, k)
        });
        res.record(ok, || format!("dual identity failed for dim {dim} in degree {d}"));
    }
    res
}

/// Base-point-freeness of projections from sampled curve-free vertices.
pub fn check_projection_base_points(sample: &[FormSubspace]) -> CheckResult {
    let mut res = CheckResult::new("projection-base-points");
    for t in sample {
        let d = t.degree();
        if t.dim() == 0 || t.dim() > d - 1 {
            continue;
        }
        match numerical_type(t) {
            Ok(tau) if tau.a() == -1 => match project_curve(t) {
                Ok(curve) => res.record(curve.is_base_point_free(), || {
                    format!("projected curve has a base point in degree {d}")
                }),
                Err(e) => res.fail(format!("projection failed: {e}")),
            },
            Ok(_) => {}
            Err(e) => res.fail(format!("classification failed: {e}")),
        }
    }
    res
}

/// Runs the full suite.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let sample =
        sample_subspaces(config.d_min, config.d_max, config.seed, config.samples_per_pair);
    let fixtures = all_fixtures(config.d_min, config.d_max)?;
    let checks = vec![
        check_linalg_laws(config.seed, 40),
        check_type_laws(&sample),
        check_kronecker_oracle(&sample, &fixtures),
        check_cohomology_routes(&sample, &fixtures),
        check_pgl_invariance(config.d_min, config.d_max, config.seed, config.pgl_trials),
        check_partial_inv_laws(config.d_min, config.d_max, config.seed, config.direct_sum_trials),
        check_decompose_round_trip(&fixtures, config.seed),
        check_strata_dimensions(config.d_min, config.d_max),
        check_empirical_genericity(
            config.d_min,
            config.d_max,
            config.seed,
            config.genericity_samples,
        ),
        check_splitting_equivalence(&fixtures),
        check_construct_round_trip(config.d_min, config.d_max.min(7), config.seed),
        check_dual_space_identity(config.d_min, config.d_max, config.seed, 20),
        check_projection_base_points(&sample),
    ];
    let all_passed = checks.iter().all(CheckResult::ok);
    Ok(VerifyReport { config: config.clone(), checks, all_passed })
}
