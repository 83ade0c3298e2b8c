//! Seeded invariant suites behind `stellar validate`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{build_h1, build_h2, evolve, match_stars, matched_distance, XxzParams};
use crate::majorana::{proportional_error, reconstruct_coefficients, star_polynomial};
use crate::mixedspin::{compose, decompose, full_representation};
use crate::oracles::{
    example_state_half_half, pseudo_star_closed_form_half_half, triplet_stars_closed_form,
    HalfHalfParams,
};
use crate::sample::{random_mixed_state, random_pure_state, random_pure_state_with_zero_top};
use crate::spinops::{
    coupling_transform, j_squared, CouplingTransform, OperatorMatrix, SpinMagnitude,
};

const SEED: u64 = 0x5eed_57a2;
const SAMPLES: usize = 40;
const MAX_TWICE_S: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Spinops,
    Majorana,
    Mixedspin,
    Dynamics,
    Oracles,
}

impl Scope {
    fn includes(self, module: Scope) -> bool {
        self == Scope::All || self == module
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Scope::All),
            "spinops" => Ok(Scope::Spinops),
            "majorana" => Ok(Scope::Majorana),
            "mixedspin" => Ok(Scope::Mixedspin),
            "dynamics" => Ok(Scope::Dynamics),
            "oracles" => Ok(Scope::Oracles),
            other => Err(format!("unknown scope `{other}`")),
        }
    }
}

/// Deliberate corruption, for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    CorruptCoupling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {}::{}  {}",
            self.module, self.name, self.detail
        )
    }
}

struct Suite {
    module: &'static str,
    results: Vec<CheckResult>,
}

impl Suite {
    fn new(module: &'static str) -> Self {
        Suite {
            module,
            results: Vec::new(),
        }
    }

    /// Records `worst <= tol`.
    fn bound(&mut self, name: &'static str, worst: f64, tol: f64) {
        self.results.push(CheckResult {
            module: self.module,
            name,
            passed: worst <= tol,
            detail: format!("max {worst:.3e} (tol {tol:.0e})"),
        });
    }

    fn flag(&mut self, name: &'static str, passed: bool, detail: String) {
        self.results.push(CheckResult {
            module: self.module,
            name,
            passed,
            detail,
        });
    }
}

fn transform(s: SpinMagnitude, fault: Option<Fault>) -> CouplingTransform {
    let mut u = coupling_transform(s);
    if fault == Some(Fault::CorruptCoupling) {
        u.matrix.matrix_mut()[(0, 0)] += Complex64::new(1e-3, 0.0);
    }
    u
}

fn spins() -> impl Iterator<Item = SpinMagnitude> {
    (1..=MAX_TWICE_S).map(SpinMagnitude::from_twice)
}

/// Runs the selected suites; results come back in a fixed order.
pub fn run(scope: Scope, fault: Option<Fault>) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if scope.includes(Scope::Spinops) {
        out.extend(spinops_suite(fault));
    }
    if scope.includes(Scope::Majorana) {
        out.extend(majorana_suite());
    }
    if scope.includes(Scope::Mixedspin) {
        out.extend(mixedspin_suite(fault));
    }
    if scope.includes(Scope::Dynamics) {
        out.extend(dynamics_suite());
    }
    if scope.includes(Scope::Oracles) {
        out.extend(oracles_suite());
    }
    out
}

fn spinops_suite(fault: Option<Fault>) -> Vec<CheckResult> {
    let mut suite = Suite::new("spinops");
    let (mut unitary, mut diag, mut herm) = (0f64, 0f64, 0f64);
    for s in spins() {
        let u = transform(s, fault);
        unitary = unitary.max(u.unitarity_residual());
        let j2 = j_squared(s);
        herm = herm.max(j2.hermiticity_residual());
        let rotated = &(&u.matrix * &j2) * &u.matrix.adjoint();
        let upper = s.twice() as usize + 2;
        let expected =
            OperatorMatrix::from_real_fn(s.product_dim(), |r, c| match (r == c, r < upper) {
                (true, true) => s.upper_casimir(),
                (true, false) => s.lower_casimir(),
                _ => 0.0,
            });
        diag = diag.max(rotated.max_abs_diff(&expected));
    }
    suite.bound("coupling_unitary", unitary, 1e-12);
    suite.bound("coupling_diagonalizes_j2", diag, 1e-12);
    suite.bound("j2_hermitian", herm, 1e-14);
    suite.results
}

fn majorana_suite() -> Vec<CheckResult> {
    let mut suite = Suite::new("majorana");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut vieta, mut counts_ok, mut phase) = (0f64, true, 0f64);
    for i in 0..SAMPLES {
        let twice_j = 1 + (i as u32 % 6);
        let state = if i % 4 == 3 {
            random_pure_state_with_zero_top(&mut rng, twice_j, 1 + i as u32 % 2)
        } else {
            random_pure_state(&mut rng, twice_j)
        };
        let Ok(stars) = state.stars() else {
            counts_ok = false;
            continue;
        };
        counts_ok &= stars.total_multiplicity() == twice_j;
        vieta = vieta.max(proportional_error(
            &reconstruct_coefficients(&stars),
            &star_polynomial(&state),
        ));
        let rotated = state
            .amplitudes()
            .iter()
            .map(|a| a * Complex64::from_polar(2.5, 0.7))
            .collect();
        let rotated = crate::majorana::PureSpinState::new(twice_j, rotated).expect("nonzero");
        if let Ok(other) = rotated.stars() {
            phase = phase.max(matched_distance(&stars, &other).unwrap_or(f64::INFINITY));
        }
    }
    suite.flag("star_count_2j", counts_ok, format!("{SAMPLES} states"));
    suite.bound("vieta_round_trip", vieta, 1e-8);
    suite.bound("scale_phase_invariance", phase, 1e-9);
    suite.results
}

fn mixedspin_suite(fault: Option<Fault>) -> Vec<CheckResult> {
    let mut suite = Suite::new("mixedspin");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let (mut round_trip, mut agreement, mut weights) = (0f64, 0f64, 0f64);
    let mut counts_ok = true;
    for i in 0..SAMPLES {
        let s = SpinMagnitude::from_twice(1 + i as u32 % MAX_TWICE_S);
        let state = random_mixed_state(&mut rng, s.twice());
        let Ok(d) = decompose(&state) else {
            counts_ok = false;
            continue;
        };
        round_trip = round_trip.max(compose(&d).max_abs_diff(&state));
        weights = weights.max((d.c_upper().powi(2) + d.c_lower().powi(2) - 1.0).abs());
        let coupled = transform(s, fault).to_coupled(&state.to_uncoupled());
        let (e, f) = d.weighted_components();
        let upper = s.twice() as usize + 2;
        let reference = e.iter().chain(&f);
        agreement = agreement.max(
            coupled
                .iter()
                .zip(reference)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        );
        debug_assert_eq!(e.len(), upper);
        match full_representation(&state) {
            Ok(rep) => counts_ok &= rep.total_multiplicity() == 2 * s.twice() + 1,
            Err(_) => counts_ok = false,
        }
    }
    suite.bound("compose_round_trip", round_trip, 1e-12);
    suite.bound("decompose_matches_coupling", agreement, 1e-12);
    suite.bound("weights_sum_to_one", weights, 1e-12);
    suite.flag(
        "star_count_4s_plus_1",
        counts_ok,
        format!("{SAMPLES} states"),
    );
    suite.results
}

fn dynamics_suite() -> Vec<CheckResult> {
    let mut suite = Suite::new("dynamics");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let (mut unitary, mut group, mut herm) = (0f64, 0f64, 0f64);
    for i in 0..SAMPLES {
        let s = SpinMagnitude::from_twice(1 + i as u32 % MAX_TWICE_S);
        let delta = i as f64 * 0.1 - 1.0;
        let h = if i % 5 == 0 && s.twice() == 1 {
            build_h1(XxzParams { delta })
        } else {
            build_h2(s, XxzParams { delta })
        };
        herm = herm.max(h.matrix().hermiticity_residual());
        let state = random_mixed_state(&mut rng, s.twice());
        let (t1, t2) = (0.37 * i as f64, 1.3 - 0.05 * i as f64);
        let a = evolve(&h, t1, &state).expect("dims");
        unitary = unitary.max((a.norm_sqr() - 1.0).abs());
        let two_step = evolve(&h, t2, &a).expect("dims");
        let one_step = evolve(&h, t1 + t2, &state).expect("dims");
        group = group.max(two_step.max_abs_diff(&one_step));
    }
    suite.bound("hamiltonian_hermitian", herm, 1e-14);
    suite.bound("evolution_unitary", unitary, 1e-12);
    suite.bound("group_law", group, 1e-10);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut identity_ok = true;
    for i in 0..SAMPLES {
        let state = random_pure_state(&mut rng, 1 + i as u32 % 6);
        if let Ok(stars) = state.stars() {
            let perm = match_stars(&stars, &stars);
            identity_ok &= perm.is_ok_and(|p| p.iter().enumerate().all(|(k, &v)| k == v));
        }
    }
    suite.flag(
        "matching_identity",
        identity_ok,
        format!("{SAMPLES} star sets"),
    );
    suite.results
}

fn oracles_suite() -> Vec<CheckResult> {
    let mut suite = Suite::new("oracles");
    let (mut triplet, mut pseudo) = (0f64, 0f64);
    for varphi in [0.3, 0.9, 2.2, 4.0] {
        for (delta, t) in [(0.0, 0.5), (0.5, 1.7), (1.0, 2.9)] {
            let p = HalfHalfParams { varphi, delta, t };
            let Ok(rep) = full_representation(&example_state_half_half(p)) else {
                triplet = f64::INFINITY;
                continue;
            };
            if let (Some(upper), Ok(oracle)) = (&rep.upper_stars, triplet_stars_closed_form(p)) {
                triplet = triplet.max(matched_distance(upper, &oracle).unwrap_or(f64::INFINITY));
            }
            let closed = pseudo_star_closed_form_half_half(varphi);
            pseudo = pseudo.max(rep.pseudo_star.great_circle_distance(&closed));
        }
    }
    suite.bound("half_half_triplet", triplet, 1e-9);
    suite.bound("half_half_pseudo", pseudo, 1e-9);
    suite.results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let results = run(Scope::All, None);
        assert!(results.len() > 10);
        for r in &results {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn scope_restricts_modules() {
        let results = run(Scope::Majorana, None);
        assert!(!results.is_empty());
        assert!(results.iter().all(|r| r.module == "majorana"));
    }

    #[test]
    fn corrupt_coupling_is_named() {
        let results = run(Scope::All, Some(Fault::CorruptCoupling));
        let failed: Vec<_> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.name)
            .collect();
        assert!(failed.contains(&"coupling_unitary"), "{failed:?}");
    }

    #[test]
    fn scope_parsing() {
        assert_eq!("dynamics".parse::<Scope>(), Ok(Scope::Dynamics));
        assert!("nope".parse::<Scope>().is_err());
    }
}
