//! Decomposition of `(s, 1/2)` states into coupled spin components.
//!
//! Any state splits as `C₊|ψ⟩_{s+1/2} + C₋|ψ⟩_{s-1/2}` with nonnegative
//! weights `C±` and normalized components. The weights define the pseudo
//! spin-1/2 star `z = C₋/C₊`, always on the `φ = 0` meridian.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::majorana::{PureSpinState, Star, StarSet};
use crate::spinops::{uncoupled_index, SpinMagnitude};

/// Normalization tolerance for states handed to the pipeline.
pub const NORM_TOL: f64 = 1e-10;

/// Component weights at or below this are treated as absent: the component
/// has no well-defined stars.
pub const NEGLIGIBLE_WEIGHT: f64 = 1e-12;

/// A normalized pure state of a spin `s` and a spin-1/2.
///
/// `d_down[n]` is the amplitude of `|n⟩₁|↓⟩₂` and `d_up[n]` that of
/// `|n⟩₁|↑⟩₂`, with `|n⟩₁ = |-s+n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedSpinState {
    twice_s: u32,
    d_down: Vec<Complex64>,
    d_up: Vec<Complex64>,
}

impl MixedSpinState {
    pub fn new(twice_s: u32, d_down: Vec<Complex64>, d_up: Vec<Complex64>) -> Result<Self> {
        let state = Self::unchecked(twice_s, d_down, d_up)?;
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(if norm_sqr == 0.0 {
                Error::ZeroState
            } else {
                Error::NotNormalized(norm_sqr)
            });
        }
        Ok(state)
    }

    /// Builds the state and rescales it to unit norm.
    pub fn new_normalized(
        twice_s: u32,
        d_down: Vec<Complex64>,
        d_up: Vec<Complex64>,
    ) -> Result<Self> {
        let mut state = Self::unchecked(twice_s, d_down, d_up)?;
        let norm = state.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        for c in state.d_down.iter_mut().chain(state.d_up.iter_mut()) {
            *c /= norm;
        }
        Ok(state)
    }

    /// From a flat vector in the `k = 2n + m` ordering (`m = 0` down).
    pub fn from_uncoupled(twice_s: u32, amplitudes: &[Complex64]) -> Result<Self> {
        let expected = 2 * (twice_s as usize + 1);
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        let d_down = amplitudes.iter().step_by(2).copied().collect();
        let d_up = amplitudes.iter().skip(1).step_by(2).copied().collect();
        Self::new(twice_s, d_down, d_up)
    }

    fn unchecked(twice_s: u32, d_down: Vec<Complex64>, d_up: Vec<Complex64>) -> Result<Self> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin(twice_s));
        }
        let expected = twice_s as usize + 1;
        for v in [&d_down, &d_up] {
            if v.len() != expected {
                return Err(Error::LengthMismatch {
                    expected,
                    found: v.len(),
                });
            }
        }
        if d_down
            .iter()
            .chain(&d_up)
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            twice_s,
            d_down,
            d_up,
        })
    }

    pub fn twice_s(&self) -> u32 {
        self.twice_s
    }

    pub fn spin(&self) -> SpinMagnitude {
        SpinMagnitude::from_twice(self.twice_s)
    }

    pub fn d_down(&self) -> &[Complex64] {
        &self.d_down
    }

    pub fn d_up(&self) -> &[Complex64] {
        &self.d_up
    }

    pub fn norm_sqr(&self) -> f64 {
        self.d_down
            .iter()
            .chain(&self.d_up)
            .map(|c| c.norm_sqr())
            .sum()
    }

    /// Flat amplitude vector in the `k = 2n + m` ordering.
    pub fn to_uncoupled(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::default(); 2 * self.d_down.len()];
        for (n, (dn, up)) in self.d_down.iter().zip(&self.d_up).enumerate() {
            v[uncoupled_index(n as u32, 0)] = *dn;
            v[uncoupled_index(n as u32, 1)] = *up;
        }
        v
    }

    /// Largest amplitude difference to another state of the same spin.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_uncoupled()
            .iter()
            .zip(other.to_uncoupled())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Weights and normalized components of the coupled decomposition.
///
/// `upper` has `2j = 2s+1` and amplitudes `E_n`, `n = 0..=2s+1`. `lower` has
/// `2j = 2s-1` and stores `F_n` (index `n = 1..=2s`) at position
/// `n - 1`, so position `k` carries magnetic number `-(s-1/2) + k`. A
/// component whose weight is negligible is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    twice_s: u32,
    upper: Option<PureSpinState>,
    lower: Option<PureSpinState>,
    c_upper: f64,
    c_lower: f64,
}

impl Decomposition {
    pub fn new(
        twice_s: u32,
        upper: Option<PureSpinState>,
        lower: Option<PureSpinState>,
        c_upper: f64,
        c_lower: f64,
    ) -> Result<Self> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin(twice_s));
        }
        if c_upper < 0.0 || c_lower < 0.0 || !c_upper.is_finite() || !c_lower.is_finite() {
            return Err(Error::NotNormalized(f64::NAN));
        }
        let total = c_upper * c_upper + c_lower * c_lower;
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(total));
        }
        let check = |component: &Option<PureSpinState>,
                     twice_j: u32,
                     weight: f64|
         -> Result<Option<PureSpinState>> {
            match component {
                Some(state) => {
                    if state.twice_j() != twice_j {
                        return Err(Error::LengthMismatch {
                            expected: twice_j as usize + 1,
                            found: state.amplitudes().len(),
                        });
                    }
                    Ok(Some(state.normalized()))
                }
                None if weight > NEGLIGIBLE_WEIGHT => Err(Error::ZeroState),
                None => Ok(None),
            }
        };
        let upper = check(&upper, twice_s + 1, c_upper)?;
        let lower = check(&lower, twice_s - 1, c_lower)?;
        Ok(Self {
            twice_s,
            upper,
            lower,
            c_upper,
            c_lower,
        })
    }

    pub fn twice_s(&self) -> u32 {
        self.twice_s
    }

    pub fn upper(&self) -> Option<&PureSpinState> {
        self.upper.as_ref()
    }

    pub fn lower(&self) -> Option<&PureSpinState> {
        self.lower.as_ref()
    }

    pub fn c_upper(&self) -> f64 {
        self.c_upper
    }

    pub fn c_lower(&self) -> f64 {
        self.c_lower
    }

    /// Weighted coupled amplitudes `(E, F)` with `F` stored from index 0.
    pub fn weighted_components(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let weighted = |c: &Option<PureSpinState>, w: f64, len: usize| match c {
            Some(state) => state.amplitudes().iter().map(|a| a * w).collect(),
            None => vec![Complex64::default(); len],
        };
        let two_s = self.twice_s as usize;
        (
            weighted(&self.upper, self.c_upper, two_s + 2),
            weighted(&self.lower, self.c_lower, two_s),
        )
    }
}

fn coupling_coefficients(two_s: u32, n: u32) -> (f64, f64) {
    let denom = f64::from(two_s + 1);
    (
        ((f64::from(two_s) - f64::from(n) + 1.0) / denom).sqrt(),
        (f64::from(n) / denom).sqrt(),
    )
}

/// Splits a state into its spin-`(s+1/2)` and spin-`(s-1/2)` parts.
pub fn decompose(state: &MixedSpinState) -> Result<Decomposition> {
    let two_s = state.twice_s;
    let d0 = &state.d_down;
    let d1 = &state.d_up;
    let mut e = vec![Complex64::default(); two_s as usize + 2];
    let mut f = vec![Complex64::default(); two_s as usize];
    e[0] = d0[0];
    e[two_s as usize + 1] = d1[two_s as usize];
    for n in 1..=two_s {
        let (a, b) = coupling_coefficients(two_s, n);
        let (down, up) = (d0[n as usize], d1[n as usize - 1]);
        e[n as usize] = up * b + down * a;
        f[n as usize - 1] = -up * a + down * b;
    }
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let (c_upper, c_lower) = (norm(&e), norm(&f));
    if c_upper == 0.0 && c_lower == 0.0 {
        return Err(Error::ZeroState);
    }
    let component = |v: Vec<Complex64>, w: f64, twice_j: u32| {
        if w > NEGLIGIBLE_WEIGHT {
            let amps = v.iter().map(|c| c / w).collect();
            PureSpinState::new(twice_j, amps).map(Some)
        } else {
            Ok(None)
        }
    };
    Ok(Decomposition {
        twice_s: two_s,
        upper: component(e, c_upper, two_s + 1)?,
        lower: component(f, c_lower, two_s - 1)?,
        c_upper,
        c_lower,
    })
}

/// Reassembles the uncoupled state from a decomposition.
pub fn compose(decomposition: &Decomposition) -> MixedSpinState {
    let two_s = decomposition.twice_s;
    let (e, f) = decomposition.weighted_components();
    let mut d0 = vec![Complex64::default(); two_s as usize + 1];
    let mut d1 = vec![Complex64::default(); two_s as usize + 1];
    d0[0] = e[0];
    d1[two_s as usize] = e[two_s as usize + 1];
    for n in 1..=two_s {
        let (a, b) = coupling_coefficients(two_s, n);
        let (en, fn_) = (e[n as usize], f[n as usize - 1]);
        d0[n as usize] = en * a + fn_ * b;
        d1[n as usize - 1] = en * b - fn_ * a;
    }
    MixedSpinState::new_normalized(two_s, d0, d1).expect("decomposition has unit weight")
}

/// Pseudo spin-1/2 star `z = C₋/C₊` on the `φ = 0` meridian.
pub fn pseudo_spin_star(decomposition: &Decomposition) -> Star {
    let theta = 2.0 * decomposition.c_lower.atan2(decomposition.c_upper);
    Star::new(theta.min(PI), 0.0, 1)
}

/// The `(2s+1) + (2s-1) + 1` stars of a mixed-spin state.
///
/// A component with negligible weight has no stars (`None`).
#[derive(Debug, Clone, PartialEq)]
pub struct FullRepresentation {
    pub twice_s: u32,
    pub upper_stars: Option<StarSet>,
    pub lower_stars: Option<StarSet>,
    pub pseudo_star: Star,
}

impl FullRepresentation {
    /// Star count over all defined sets, with multiplicity.
    pub fn total_multiplicity(&self) -> u32 {
        let count = |s: &Option<StarSet>| s.as_ref().map_or(0, StarSet::total_multiplicity);
        count(&self.upper_stars) + count(&self.lower_stars) + self.pseudo_star.multiplicity
    }
}

pub fn full_representation(state: &MixedSpinState) -> Result<FullRepresentation> {
    let decomposition = decompose(state)?;
    representation_of(&decomposition)
}

pub fn representation_of(decomposition: &Decomposition) -> Result<FullRepresentation> {
    let stars = |c: Option<&PureSpinState>| c.map(PureSpinState::stars).transpose();
    Ok(FullRepresentation {
        twice_s: decomposition.twice_s,
        upper_stars: stars(decomposition.upper())?,
        lower_stars: stars(decomposition.lower())?,
        pseudo_star: pseudo_spin_star(decomposition),
    })
}
