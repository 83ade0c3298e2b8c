use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stellar_core::dynamics::matched_distance;
use stellar_core::majorana::{z_to_sphere, PureSpinState, StarSet};
use stellar_core::sample::{random_pure_state, random_pure_state_with_zero_top};
use stellar_core::{solve_stars, star_polynomial, Complex64};

fn scaled(state: &PureSpinState, factor: Complex64) -> PureSpinState {
    PureSpinState::new(
        state.twice_j(),
        state.amplitudes().iter().map(|a| a * factor).collect(),
    )
    .unwrap()
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[test]
fn count_conservation_with_forced_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for twice_j in 1..=5u32 {
        for i in 0..1000u32 {
            let state = if i % 4 == 0 {
                random_pure_state_with_zero_top(&mut rng, twice_j, 1 + i / 4 % twice_j)
            } else {
                random_pure_state(&mut rng, twice_j)
            };
            let stars = state.stars().unwrap();
            assert_eq!(stars.total_multiplicity(), twice_j, "{state:?}");
        }
    }
}

#[test]
fn scale_and_phase_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for twice_j in 1..=5u32 {
        for _ in 0..200 {
            let state = random_pure_state(&mut rng, twice_j);
            let base = state.stars().unwrap();
            let r = rng.random_range(1e-3..1e3);
            let alpha = rng.random_range(0.0..TAU);
            let scaled_coeffs: Vec<Complex64> = star_polynomial(&state)
                .iter()
                .map(|a| a * Complex64::from_polar(r, alpha))
                .collect();
            let from_coeffs = solve_stars(&scaled_coeffs, twice_j).unwrap();
            assert!(matched_distance(&base, &from_coeffs).unwrap() < 1e-10);
            let phased = scaled(&state, Complex64::from_polar(1.0, alpha))
                .stars()
                .unwrap();
            assert!(matched_distance(&base, &phased).unwrap() < 1e-10);
        }
    }
}

/// `C⁽ⁿ⁾ → e^{-i(-j+n)α} C⁽ⁿ⁾` turns every star about the z axis by the
/// same angle; the direction is fixed on spin 1/2.
#[test]
fn z_rotation_covariance() {
    let rotate = |state: &PureSpinState, alpha: f64| {
        let j = f64::from(state.twice_j()) / 2.0;
        let amps = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(n, c)| c * Complex64::from_polar(1.0, -(n as f64 - j) * alpha))
            .collect();
        PureSpinState::new(state.twice_j(), amps).unwrap()
    };
    let alpha = 0.7;
    let probe =
        PureSpinState::new(1, vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)]).unwrap();
    let before = probe.stars().unwrap().stars()[0];
    let after = rotate(&probe, alpha).stars().unwrap().stars()[0];
    let sign = if angle_gap(after.phi, before.phi + alpha) < 1e-12 {
        1.0
    } else {
        assert!(angle_gap(after.phi, before.phi - alpha) < 1e-12);
        -1.0
    };

    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for twice_j in 1..=5u32 {
        for _ in 0..100 {
            let state = random_pure_state(&mut rng, twice_j);
            let alpha = rng.random_range(-PI..PI);
            let base = state.stars().unwrap();
            let turned = rotate(&state, alpha).stars().unwrap();
            let expected = StarSet::new(
                base.stars()
                    .iter()
                    .map(|s| stellar_core::Star::new(s.theta, s.phi + sign * alpha, s.multiplicity))
                    .collect(),
                twice_j,
            )
            .unwrap();
            let ua = turned.unit_stars();
            let ub = expected.unit_stars();
            let perm = stellar_core::dynamics::match_unit_stars(&ua, &ub).unwrap();
            for (a, &k) in ua.iter().zip(&perm) {
                assert!((a.theta - ub[k].theta).abs() < 1e-9);
                assert!(
                    a.theta.sin() * angle_gap(a.phi, ub[k].phi) < 1e-9,
                    "{a:?} vs {:?}",
                    ub[k]
                );
            }
        }
    }
}

#[test]
fn finite_roots_have_small_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for twice_j in 1..=5u32 {
        for i in 0..300u32 {
            let state = if i % 3 == 0 {
                random_pure_state_with_zero_top(&mut rng, twice_j, 1 + i % twice_j)
            } else {
                random_pure_state(&mut rng, twice_j)
            };
            let coeffs = star_polynomial(&state);
            let scale: f64 = coeffs.iter().map(|a| a.norm()).sum();
            let deg = coeffs.len() as i32 - 1;
            for star in state.stars().unwrap().stars() {
                let Some(z) = star.to_complex() else { continue };
                let value: Complex64 = coeffs
                    .iter()
                    .rev()
                    .fold(Complex64::default(), |acc, a| acc * z + a);
                let bound = 1e-9 * scale * z.norm().max(1.0).powi(deg);
                assert!(value.norm() < bound, "{} >= {bound}", value.norm());
                let (theta, phi) = z_to_sphere(z);
                assert!((theta - star.theta).abs() < 1e-12);
                assert!(star.theta == 0.0 || angle_gap(phi, star.phi) < 1e-9);
            }
        }
    }
}
