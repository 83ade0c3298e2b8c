//! Seeded random states for invariant checks and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::majorana::PureSpinState;
use crate::mixedspin::MixedSpinState;

/// Gaussian complex amplitude.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random normalized vector of length `len`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len).map(|_| complex_normal(rng)).collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, twice_j: u32) -> PureSpinState {
    PureSpinState::new(twice_j, random_unit_vector(rng, twice_j as usize + 1)).expect("nonzero")
}

/// Random spin-`j` state whose top `zeroed` amplitudes vanish exactly.
pub fn random_pure_state_with_zero_top<R: Rng + ?Sized>(
    rng: &mut R,
    twice_j: u32,
    zeroed: u32,
) -> PureSpinState {
    let len = twice_j as usize + 1;
    let zeroed = (zeroed as usize).min(len - 1);
    let mut v = random_unit_vector(rng, len - zeroed);
    v.extend(std::iter::repeat_n(Complex64::default(), zeroed));
    PureSpinState::new(twice_j, v).expect("nonzero")
}

pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R, twice_s: u32) -> MixedSpinState {
    let v = random_unit_vector(rng, 2 * (twice_s as usize + 1));
    MixedSpinState::from_uncoupled(twice_s, &v).expect("normalized")
}
