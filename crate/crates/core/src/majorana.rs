//! Majorana stars of a single spin-`j` pure state.
//!
//! A state `Σ Cₙ |n⟩` (with `|n⟩ = |-j+n⟩`) is mapped to the polynomial
//! `Σ (-1)ⁿ √C(2j,n) Cₙ zⁿ`. Its `2j` roots, placed on the sphere through
//! `z = tan(θ/2) e^{iφ}`, are the stars. Roots lost to vanishing leading
//! coefficients are stars at the south pole.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::roots::find_roots;

/// Amplitudes of a pure spin-`j` state in the `|-j+n⟩` basis.
///
/// Normalization is not required; only the direction of the vector matters
/// for star positions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureSpinState {
    twice_j: u32,
    amplitudes: Vec<Complex64>,
}

impl PureSpinState {
    pub fn new(twice_j: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = twice_j as usize + 1;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        if amplitudes.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            twice_j,
            amplitudes,
        })
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// The state scaled to unit norm.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            twice_j: self.twice_j,
            amplitudes: self.amplitudes.iter().map(|c| c / n).collect(),
        }
    }

    /// Star positions of this state.
    pub fn stars(&self) -> Result<StarSet> {
        solve_stars(&star_polynomial(self), self.twice_j)
    }
}

/// A point on the Bloch sphere with multiplicity.
///
/// `theta ∈ [0, π]`, `phi ∈ [0, 2π)`, and `phi = 0` at both poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Star {
    pub theta: f64,
    pub phi: f64,
    pub multiplicity: u32,
}

impl Star {
    pub fn new(theta: f64, phi: f64, multiplicity: u32) -> Self {
        let theta = theta.clamp(0.0, PI);
        let phi = if theta == 0.0 || theta == PI {
            0.0
        } else {
            canonical_phi(phi)
        };
        Self {
            theta,
            phi,
            multiplicity,
        }
    }

    pub fn north_pole(multiplicity: u32) -> Self {
        Self::new(0.0, 0.0, multiplicity)
    }

    pub fn south_pole(multiplicity: u32) -> Self {
        Self::new(PI, 0.0, multiplicity)
    }

    /// Cartesian position on the unit sphere.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Angle between the two positions, in radians.
    ///
    /// Vincenty's form, accurate for both tiny and near-antipodal separations.
    pub fn great_circle_distance(&self, other: &Star) -> f64 {
        let (s1, c1) = self.theta.sin_cos();
        let (s2, c2) = other.theta.sin_cos();
        let dphi = other.phi - self.phi;
        let (sd, cd) = dphi.sin_cos();
        let half = (dphi / 2.0).sin();
        let east = s2 * sd;
        let north = (self.theta - other.theta).sin() + c1 * s2 * 2.0 * half * half;
        let num = east.hypot(north);
        let den = c1 * c2 + s1 * s2 * cd;
        num.atan2(den)
    }

    /// Point of the extended complex plane, `None` at the south pole.
    pub fn to_complex(&self) -> Option<Complex64> {
        if self.theta == PI {
            None
        } else {
            Some(Complex64::from_polar((self.theta / 2.0).tan(), self.phi))
        }
    }

    fn canonical_cmp(&self, other: &Star) -> Ordering {
        self.theta
            .total_cmp(&other.theta)
            .then(self.phi.total_cmp(&other.phi))
    }
}

/// Maps an angle into `[0, 2π)`.
pub fn canonical_phi(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(TAU);
    if p >= TAU {
        p = 0.0;
    }
    // -0.0 → 0.0
    p + 0.0
}

/// Stars of one spin-`j` state, sorted by `theta` then `phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSet {
    stars: Vec<Star>,
    twice_j: u32,
}

impl StarSet {
    pub fn new(mut stars: Vec<Star>, twice_j: u32) -> Result<Self> {
        let total: u32 = stars.iter().map(|s| s.multiplicity).sum();
        if total != twice_j || stars.iter().any(|s| s.multiplicity == 0) {
            return Err(Error::StarCountMismatch {
                prev: twice_j as usize,
                next: total as usize,
            });
        }
        stars.sort_by(Star::canonical_cmp);
        Ok(Self { stars, twice_j })
    }

    pub fn empty() -> Self {
        Self {
            stars: Vec::new(),
            twice_j: 0,
        }
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.stars.iter().map(|s| s.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    /// Multiplicity sitting at the south pole, i.e. roots at infinity.
    pub fn infinite_multiplicity(&self) -> u32 {
        self.stars
            .iter()
            .filter(|s| s.theta == PI)
            .map(|s| s.multiplicity)
            .sum()
    }

    /// Every star repeated according to its multiplicity, each with
    /// multiplicity one, in canonical order.
    pub fn unit_stars(&self) -> Vec<Star> {
        self.stars
            .iter()
            .flat_map(|s| {
                std::iter::repeat_n(
                    Star {
                        multiplicity: 1,
                        ..*s
                    },
                    s.multiplicity as usize,
                )
            })
            .collect()
    }
}

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc · (n - i) is divisible by (i + 1) at every step.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Coefficients of the star polynomial, `result[n]` multiplying `zⁿ`.
pub fn star_polynomial(state: &PureSpinState) -> Vec<Complex64> {
    let d = state.twice_j;
    state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            c * (sign * (binomial(d, n as u32) as f64).sqrt())
        })
        .collect()
}

/// `z = tan(θ/2) e^{iφ}` inverted for finite `z`.
pub fn z_to_sphere(z: Complex64) -> (f64, f64) {
    let r = z.norm();
    if r == 0.0 {
        return (0.0, 0.0);
    }
    (2.0 * r.atan(), canonical_phi(z.arg()))
}

/// Solves the star polynomial `Σ coeffs[n] zⁿ` for a spin with `2j = twice_j`.
///
/// Returns exactly `2j` stars counting multiplicity. Missing degree shows up
/// as multiplicity at the south pole. Roots closer than `1e-8` in chordal
/// distance are merged, as are wider clusters that numerically form a single
/// multiple root.
pub fn solve_stars(coeffs: &[Complex64], twice_j: u32) -> Result<StarSet> {
    let expected = twice_j as usize + 1;
    if coeffs.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: coeffs.len(),
        });
    }
    let roots = find_roots(coeffs)?;
    let stars: Vec<Star> = roots
        .iter()
        .map(|r| {
            let (theta, phi) = r.angles();
            Star::new(theta, phi, r.multiplicity)
        })
        .collect();
    StarSet::new(stars, twice_j)
}

/// Rebuilds star-polynomial coefficients (up to a complex factor) from stars.
///
/// Each star `(θ, φ)` contributes the homogeneous factor
/// `cos(θ/2)·z − sin(θ/2)e^{iφ}`, so south-pole stars lower the degree.
pub fn reconstruct_coefficients(stars: &StarSet) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for star in stars.unit_stars() {
        let (s, c) = (star.theta / 2.0).sin_cos();
        let root = Complex64::from_polar(s, star.phi);
        let mut next = vec![Complex64::default(); poly.len() + 1];
        for (i, a) in poly.iter().enumerate() {
            next[i + 1] += a * c;
            next[i] -= a * root;
        }
        poly = next;
    }
    poly
}

/// Relative distance between `reference` and the closest complex multiple of
/// `candidate`.
pub fn proportional_error(candidate: &[Complex64], reference: &[Complex64]) -> f64 {
    assert_eq!(candidate.len(), reference.len());
    let cc: f64 = candidate.iter().map(|c| c.norm_sqr()).sum();
    let rr: f64 = reference.iter().map(|c| c.norm_sqr()).sum();
    if cc == 0.0 || rr == 0.0 {
        return if cc == rr { 0.0 } else { 1.0 };
    }
    let overlap: Complex64 = candidate
        .iter()
        .zip(reference)
        .map(|(c, r)| c.conj() * r)
        .sum();
    let lambda = overlap / cc;
    let resid: f64 = candidate
        .iter()
        .zip(reference)
        .map(|(c, r)| (c * lambda - r).norm_sqr())
        .sum();
    (resid / rr).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn polynomial_spin_half() {
        let state = PureSpinState::new(1, vec![c(0.3, 0.1), c(-0.2, 0.7)]).unwrap();
        assert_eq!(star_polynomial(&state), vec![c(0.3, 0.1), c(0.2, -0.7)]);
    }

    #[test]
    fn polynomial_spin_three_halves() {
        let amps = vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0), c(0.0, 4.0)];
        let state = PureSpinState::new(3, amps).unwrap();
        let r3 = 3f64.sqrt();
        let expected = [
            c(1.0, 0.0),
            c(0.0, -2.0 * r3),
            c(3.0 * r3, 0.0),
            c(0.0, -4.0),
        ];
        for (a, b) in star_polynomial(&state).iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn polynomial_middle_term_vanishes() {
        let state = PureSpinState::new(
            2,
            vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        )
        .unwrap();
        let p = star_polynomial(&state);
        assert_eq!(p[0], c(FRAC_1_SQRT_2, 0.0));
        assert_eq!(p[1].norm(), 0.0);
        assert_eq!(p[2], c(FRAC_1_SQRT_2, 0.0));
    }

    #[test]
    fn sphere_map_examples() {
        assert_eq!(z_to_sphere(c(0.0, 0.0)), (0.0, 0.0));
        let (t, p) = z_to_sphere(c(1.0, 0.0));
        assert!((t - FRAC_PI_2).abs() < 1e-15 && p == 0.0);
        let (t, p) = z_to_sphere(c(3f64.sqrt(), 0.0));
        assert!((t - 2.0 * PI / 3.0).abs() < 1e-15 && p == 0.0);
        let (_, p) = z_to_sphere(c(0.0, -1.0));
        assert!((p - 3.0 * FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn extreme_weight_states() {
        for twice_j in 1..=6 {
            let mut top = vec![c(0.0, 0.0); twice_j as usize + 1];
            *top.last_mut().unwrap() = c(1.0, 0.0);
            let stars = PureSpinState::new(twice_j, top).unwrap().stars().unwrap();
            assert_eq!(stars.stars(), &[Star::north_pole(twice_j)]);

            let mut bottom = vec![c(0.0, 0.0); twice_j as usize + 1];
            bottom[0] = c(1.0, 0.0);
            let stars = PureSpinState::new(twice_j, bottom)
                .unwrap()
                .stars()
                .unwrap();
            assert_eq!(stars.stars(), &[Star::south_pole(twice_j)]);
            assert_eq!(stars.infinite_multiplicity(), twice_j);
        }
    }

    #[test]
    fn spin_one_equatorial_pair() {
        let state = PureSpinState::new(
            2,
            vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        )
        .unwrap();
        let stars = state.stars().unwrap();
        assert_eq!(stars.stars().len(), 2);
        let expected = [(FRAC_PI_2, FRAC_PI_2), (FRAC_PI_2, 3.0 * FRAC_PI_2)];
        for (s, (t, p)) in stars.stars().iter().zip(expected) {
            assert!(
                (s.theta - t).abs() < 1e-12 && (s.phi - p).abs() < 1e-12,
                "{s:?}"
            );
        }
        let back = reconstruct_coefficients(&stars);
        assert!(proportional_error(&back, &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]) < 1e-12);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(solve_stars(&[c(0.0, 0.0); 3], 2), Err(Error::ZeroState));
        assert_eq!(
            PureSpinState::new(1, vec![c(0.0, 0.0); 2]),
            Err(Error::ZeroState)
        );
        assert!(matches!(
            solve_stars(&[c(1.0, 0.0)], 2),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn reconstruct_pole_stars() {
        let set = StarSet::new(vec![Star::north_pole(3)], 3).unwrap();
        let back = reconstruct_coefficients(&set);
        assert!(
            proportional_error(&back, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                < 1e-15
        );
        let set = StarSet::new(vec![Star::south_pole(2)], 2).unwrap();
        let back = reconstruct_coefficients(&set);
        assert!(proportional_error(&back, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]) < 1e-15);
    }

    #[test]
    fn canonical_angles() {
        assert_eq!(canonical_phi(-0.0), 0.0);
        assert!(canonical_phi(-1e-20) < TAU);
        assert!((canonical_phi(-FRAC_PI_2) - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(Star::new(PI, 1.0, 1).phi, 0.0);
        assert_eq!(Star::new(0.0, 2.0, 1).phi, 0.0);
    }

    #[test]
    fn great_circle_distance_is_accurate_for_tiny_angles() {
        let a = Star::new(1.0, 0.5, 1);
        let b = Star::new(1.0 + 1e-12, 0.5, 1);
        let exact = b.theta - a.theta;
        assert!((a.great_circle_distance(&b) - exact).abs() < 1e-9 * exact);
        let c = Star::new(1.0, 0.5 + 1e-12, 1);
        let along = 1.0f64.sin() * (c.phi - a.phi);
        assert!((a.great_circle_distance(&c) - along).abs() < 1e-9 * along);
        assert!(
            (Star::north_pole(1).great_circle_distance(&Star::south_pole(1)) - PI).abs() < 1e-15
        );
    }
}
