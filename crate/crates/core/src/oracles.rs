//! Closed-form results for the two worked example families.
//!
//! These are computed without any matrix algebra and serve as ground truth
//! for the numeric pipeline.
//!
//! * `half_half`: `e^{-iH₁t}(cos φ|↑⟩ + sin φ|↓⟩) ⊗ (sin φ|↑⟩ + cos φ|↓⟩)`.
//! * `one_half`: `e^{-iH₂t}(cos φ|1⟩ + |0⟩ + sin φ|-1⟩)/√2 ⊗ (cos φ|↑⟩ + sin φ|↓⟩)`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::dynamics::{build_h1, build_h2, evolve, XxzParams};
use crate::error::{Error, Result};
use crate::majorana::{z_to_sphere, Star, StarSet};
use crate::mixedspin::MixedSpinState;
use crate::spinops::SpinMagnitude;

/// `|sin 2φ|` below which the triplet quadratic is treated as degenerate.
const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfHalfParams {
    pub varphi: f64,
    pub delta: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneHalfParams {
    pub varphi: f64,
    pub delta: f64,
    pub t: f64,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The `half_half` product state at `t = 0`.
///
/// `|↑↑⟩: cos φ sin φ`, `|↓↑⟩: sin²φ`, `|↑↓⟩: cos²φ`, `|↓↓⟩: sin φ cos φ`.
pub fn initial_state_half_half(varphi: f64) -> MixedSpinState {
    let (s, c) = varphi.sin_cos();
    // Index n of the first spin: 0 = ↓, 1 = ↑.
    let d_down = vec![re(s * c), re(c * c)];
    let d_up = vec![re(s * s), re(c * s)];
    MixedSpinState::new_normalized(1, d_down, d_up).expect("unit product state")
}

pub fn example_state_half_half(p: HalfHalfParams) -> MixedSpinState {
    let h = build_h1(XxzParams { delta: p.delta });
    evolve(&h, p.t, &initial_state_half_half(p.varphi)).expect("matching dimensions")
}

/// The `one_half` product state at `t = 0`.
pub fn initial_state_one_half(varphi: f64) -> MixedSpinState {
    let (s, c) = varphi.sin_cos();
    // Spin-1 amplitudes for n = 0, 1, 2, i.e. m = -1, 0, +1.
    let large = [s * FRAC_1_SQRT_2, FRAC_1_SQRT_2, c * FRAC_1_SQRT_2];
    let d_down = large.iter().map(|a| re(a * s)).collect();
    let d_up = large.iter().map(|a| re(a * c)).collect();
    MixedSpinState::new_normalized(2, d_down, d_up).expect("unit product state")
}

pub fn example_state_one_half(p: OneHalfParams) -> MixedSpinState {
    let h = build_h2(SpinMagnitude::from_twice(2), XxzParams { delta: p.delta });
    evolve(&h, p.t, &initial_state_one_half(p.varphi)).expect("matching dimensions")
}

/// Roots of the `half_half` triplet quadratic
/// `sinφcosφ e^{-iδt} z² − e^{i(δ-2)t} z + sinφcosφ e^{-iδt} = 0`:
/// `z± = (e^{2i(δ-1)t} ± √(e^{4i(δ-1)t} − sin²2φ)) / sin 2φ`.
pub fn triplet_roots_closed_form(p: HalfHalfParams) -> Result<[Complex64; 2]> {
    let sin2 = (2.0 * p.varphi).sin();
    if sin2.abs() < DEGENERATE_TOL {
        return Err(Error::DegenerateClosedForm);
    }
    let alpha = (p.delta - 1.0) * p.t;
    let lead = Complex64::from_polar(1.0, 2.0 * alpha);
    let disc = (Complex64::from_polar(1.0, 4.0 * alpha) - sin2 * sin2).sqrt();
    Ok([(lead + disc) / sin2, (lead - disc) / sin2])
}

/// The two triplet stars of the `half_half` family.
///
/// They are images of each other under a half turn about the x axis:
/// `θ₊ + θ₋ = π` and `φ₊ + φ₋ ≡ 0 (mod 2π)`.
pub fn triplet_stars_closed_form(p: HalfHalfParams) -> Result<StarSet> {
    let stars = triplet_roots_closed_form(p)?
        .iter()
        .map(|&z| {
            let (theta, phi) = z_to_sphere(z);
            Star::new(theta, phi, 1)
        })
        .collect();
    StarSet::new(stars, 2)
}

/// Pseudo-spin star of the `half_half` family,
/// `θ = 2 arctan √(cos²2φ / (sin²2φ + 1)) ∈ [0, π/2]`, `φ = 0`.
/// It depends on neither `t` nor `δ`.
pub fn pseudo_star_closed_form_half_half(varphi: f64) -> Star {
    let (s2, c2) = (2.0 * varphi).sin_cos();
    let z = (c2 * c2 / (s2 * s2 + 1.0)).sqrt();
    Star::new(2.0 * z.atan(), 0.0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::matched_distance;
    use crate::mixedspin::{decompose, full_representation};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn half_half_initial_amplitudes() {
        let s = initial_state_half_half(FRAC_PI_4);
        for a in s.d_down().iter().chain(s.d_up()) {
            assert!((a - re(0.5)).norm() < 1e-15);
        }
        let s = initial_state_half_half(FRAC_PI_3);
        let r3 = 3f64.sqrt();
        // (a, b, c, d) = (√3/4, 3/4, 1/4, √3/4)
        assert!((s.d_up()[1] - re(r3 / 4.0)).norm() < 1e-15);
        assert!((s.d_up()[0] - re(0.75)).norm() < 1e-15);
        assert!((s.d_down()[1] - re(0.25)).norm() < 1e-15);
        assert!((s.d_down()[0] - re(r3 / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn example_states_are_normalized() {
        for k in 0..20 {
            let x = 0.37 * k as f64;
            let a = example_state_half_half(HalfHalfParams {
                varphi: x,
                delta: 0.5,
                t: 1.1 * x,
            });
            let b = example_state_one_half(OneHalfParams {
                varphi: x,
                delta: 0.2,
                t: 0.9 * x,
            });
            assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
            assert!((b.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triplet_closed_form_at_pi_over_three() {
        let set = triplet_stars_closed_form(HalfHalfParams {
            varphi: FRAC_PI_3,
            delta: 0.0,
            t: 0.0,
        })
        .unwrap();
        let stars = set.stars();
        assert!((stars[0].theta - FRAC_PI_3).abs() < 1e-14);
        assert!((stars[1].theta - 2.0 * FRAC_PI_3).abs() < 1e-14);
        assert_eq!((stars[0].phi, stars[1].phi), (0.0, 0.0));
    }

    #[test]
    fn triplet_closed_form_symmetry() {
        for k in 1..40 {
            let varphi = 0.157 * k as f64;
            for (delta, t) in [(0.0, 0.3), (0.5, 2.1), (1.0, 5.0), (0.25, -1.7)] {
                let p = HalfHalfParams { varphi, delta, t };
                let Ok(set) = triplet_stars_closed_form(p) else {
                    continue;
                };
                let [a, b] = [set.stars()[0], set.stars()[1]];
                assert!((a.theta + b.theta - PI).abs() < 1e-10);
                let phi_sum = (a.phi + b.phi).rem_euclid(2.0 * PI);
                assert!(phi_sum.min(2.0 * PI - phi_sum) < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_angles_are_rejected() {
        for varphi in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
            let p = HalfHalfParams {
                varphi,
                delta: 0.0,
                t: 0.0,
            };
            assert_eq!(
                triplet_stars_closed_form(p),
                Err(Error::DegenerateClosedForm)
            );
        }
    }

    #[test]
    fn pseudo_closed_form_values() {
        assert!(pseudo_star_closed_form_half_half(FRAC_PI_4).theta < 1e-15);
        let s = pseudo_star_closed_form_half_half(FRAC_PI_3);
        assert!((s.theta - 2.0 * (1.0 / 7f64.sqrt()).atan()).abs() < 1e-15);
        for k in 0..100 {
            let s = pseudo_star_closed_form_half_half(0.0731 * k as f64);
            assert!(s.theta <= FRAC_PI_2 + 1e-15 && s.phi == 0.0);
        }
    }

    #[test]
    fn pipeline_matches_closed_forms() {
        for varphi in [PI / 6.0, FRAC_PI_3, 2.0 * FRAC_PI_3, 1.2] {
            for (delta, t) in [(0.0, 0.0), (0.0, 0.7), (0.5, 2.0), (1.0, 3.3)] {
                let p = HalfHalfParams { varphi, delta, t };
                let rep = full_representation(&example_state_half_half(p)).unwrap();
                let oracle = triplet_stars_closed_form(p).unwrap();
                assert!(
                    matched_distance(rep.upper_stars.as_ref().unwrap(), &oracle).unwrap() < 1e-9
                );
                let pseudo = pseudo_star_closed_form_half_half(varphi);
                assert!((rep.pseudo_star.theta - pseudo.theta).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn one_half_quarter_pi_has_no_lower_component() {
        let d = decompose(&example_state_one_half(OneHalfParams {
            varphi: FRAC_PI_4,
            delta: 0.0,
            t: 0.0,
        }))
        .unwrap();
        assert!(d.c_lower() < 1e-15);
        assert!(d.lower().is_none());
        let rep = full_representation(&initial_state_one_half(FRAC_PI_4)).unwrap();
        assert!(rep.pseudo_star.theta < 1e-9);
    }

    /// At t = 0 the one_half upper polynomial factors as
    /// `(z − tan φ)(cos φ z² − √2 z + sin φ)`, so every root is real.
    fn one_half_upper_roots_t0(varphi: f64) -> Vec<f64> {
        let (s, c) = varphi.sin_cos();
        let disc = (2.0 - 4.0 * s * c).max(0.0).sqrt();
        vec![
            s / c,
            (2f64.sqrt() + disc) / (2.0 * c),
            (2f64.sqrt() - disc) / (2.0 * c),
        ]
    }

    #[test]
    fn one_half_upper_stars_at_t0_match_factored_cubic() {
        for varphi in [0.3, PI / 6.0, 1.0, 2.0 * FRAC_PI_3, 4.0] {
            let rep = full_representation(&initial_state_one_half(varphi)).unwrap();
            let expected: Vec<Star> = one_half_upper_roots_t0(varphi)
                .into_iter()
                .map(|x| {
                    let (t, p) = z_to_sphere(re(x));
                    Star::new(t, p, 1)
                })
                .collect();
            let expected = StarSet::new(expected, 3).unwrap();
            let got = rep.upper_stars.unwrap();
            assert!(
                matched_distance(&got, &expected).unwrap() < 1e-9,
                "{got:?} vs {expected:?}"
            );
        }
    }

    #[test]
    fn one_half_triple_root_at_quarter_pi() {
        let rep = full_representation(&initial_state_one_half(FRAC_PI_4)).unwrap();
        let upper = rep.upper_stars.unwrap();
        assert_eq!(upper.stars().len(), 1);
        assert_eq!(upper.stars()[0].multiplicity, 3);
        assert!((upper.stars()[0].theta - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(upper.stars()[0].phi, 0.0);
    }
}
