//! XXZ Hamiltonians, exact evolution, and star trajectories.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::majorana::{Star, StarSet};
use crate::mixedspin::{full_representation, FullRepresentation, MixedSpinState};
use crate::oracles;
use crate::spinops::{ladder_operators, total_spin, OperatorMatrix, SpinMagnitude, SpinOperators};

/// Anisotropy `δ` of the exchange coupling.
///
/// The worked examples use `δ ∈ [0, 1]`; any finite value is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzParams {
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianForm {
    /// `σ₁ₓσ₂ₓ + σ₁ᵧσ₂ᵧ + δσ₁zσ₂z` with Pauli matrices, two spin-1/2.
    PauliH1,
    /// `S₁ₓS₂ₓ + S₁ᵧS₂ᵧ + δS₁zS₂z` with spin operators.
    SpinH2,
}

/// A Hermitian Hamiltonian on the uncoupled `(s, 1/2)` space, stored with
/// its eigendecomposition.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    twice_s: u32,
    form: HamiltonianForm,
    matrix: OperatorMatrix,
    energies: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl Hamiltonian {
    pub fn new(twice_s: u32, form: HamiltonianForm, matrix: OperatorMatrix) -> Self {
        assert_eq!(
            matrix.dim(),
            SpinMagnitude::from_twice(twice_s).product_dim()
        );
        let eig = nalgebra::SymmetricEigen::new(matrix.matrix().clone());
        Self {
            twice_s,
            form,
            matrix,
            energies: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        }
    }

    pub fn twice_s(&self) -> u32 {
        self.twice_s
    }

    pub fn form(&self) -> HamiltonianForm {
        self.form
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    /// Energies in ascending order.
    pub fn energies(&self) -> Vec<f64> {
        let mut e = self.energies.clone();
        e.sort_by(f64::total_cmp);
        e
    }

    /// `exp(-iHt)`.
    pub fn propagator(&self, t: f64) -> OperatorMatrix {
        let v = &self.eigenvectors;
        let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.energies.len(),
            self.energies
                .iter()
                .map(|e| Complex64::from_polar(1.0, -e * t)),
        ));
        OperatorMatrix::new(v * phases * v.adjoint())
    }
}

fn xxz(large: &SpinOperators, small: &SpinOperators, delta: f64) -> OperatorMatrix {
    let xx = large.x().kron(&small.x());
    let yy = large.y().kron(&small.y());
    let zz = large.z.kron(&small.z);
    &(&xx + &yy) + &zz.scale(delta)
}

/// Two spin-1/2 with Pauli matrices.
pub fn build_h1(params: XxzParams) -> Hamiltonian {
    let half = ladder_operators(SpinMagnitude::HALF);
    let pauli = SpinOperators {
        plus: half.plus.scale(2.0),
        minus: half.minus.scale(2.0),
        z: half.z.scale(2.0),
    };
    Hamiltonian::new(
        1,
        HamiltonianForm::PauliH1,
        xxz(&pauli, &pauli, params.delta),
    )
}

/// Spin `s` coupled to a spin-1/2 with spin operators.
pub fn build_h2(s: SpinMagnitude, params: XxzParams) -> Hamiltonian {
    let large = ladder_operators(s);
    let small = ladder_operators(SpinMagnitude::HALF);
    Hamiltonian::new(
        s.twice(),
        HamiltonianForm::SpinH2,
        xxz(&large, &small, params.delta),
    )
}

/// `exp(-iHt)|ψ⟩`; `t = 0` returns the input unchanged.
pub fn evolve(h: &Hamiltonian, t: f64, state: &MixedSpinState) -> Result<MixedSpinState> {
    if h.twice_s != state.twice_s() {
        return Err(Error::DimensionMismatch {
            operator: h.matrix.dim(),
            state: state.to_uncoupled().len(),
        });
    }
    if t == 0.0 {
        return Ok(state.clone());
    }
    let psi = h.propagator(t).apply(&state.to_uncoupled());
    MixedSpinState::from_uncoupled(state.twice_s(), &psi)
}

/// `⟨ψ|J_z|ψ⟩` for the total magnetization.
pub fn magnetization(state: &MixedSpinState) -> f64 {
    let jz = total_spin(state.spin()).z;
    let v = state.to_uncoupled();
    jz.apply(&v)
        .iter()
        .zip(&v)
        .map(|(a, b)| (b.conj() * a).re)
        .sum()
}

/// Tolerance under which two assignment costs are considered tied.
const TIE_TOL: f64 = 1e-12;
/// Largest star count matched exactly (subset DP is `O(n² 2ⁿ)`).
pub const MAX_MATCHED_STARS: usize = 20;

/// Aligns `next` to `prev`: `perm[i]` is the index into `next.unit_stars()`
/// continuing `prev.unit_stars()[i]`.
///
/// The permutation minimizes the summed great-circle distance. Among optimal
/// assignments the lexicographically smallest permutation is chosen, which
/// prefers `next` stars earlier in canonical `(θ, φ)` order.
pub fn match_stars(prev: &StarSet, next: &StarSet) -> Result<Vec<usize>> {
    match_unit_stars(&prev.unit_stars(), &next.unit_stars())
}

pub fn match_unit_stars(prev: &[Star], next: &[Star]) -> Result<Vec<usize>> {
    let n = prev.len();
    if n != next.len() {
        return Err(Error::StarCountMismatch {
            prev: n,
            next: next.len(),
        });
    }
    if n > MAX_MATCHED_STARS {
        return Err(Error::TooManyStars(n));
    }
    let cost: Vec<Vec<f64>> = prev
        .iter()
        .map(|p| next.iter().map(|q| p.great_circle_distance(q)).collect())
        .collect();
    let full = (1usize << n) - 1;
    // best[mask]: cheapest way to place prev[popcount(mask)..] on unused next.
    let mut best = vec![f64::INFINITY; full + 1];
    best[full] = 0.0;
    for mask in (0..full).rev() {
        let i = mask.count_ones() as usize;
        best[mask] = (0..n)
            .filter(|j| mask & (1 << j) == 0)
            .map(|j| cost[i][j] + best[mask | (1 << j)])
            .fold(f64::INFINITY, f64::min);
    }
    let mut perm = Vec::with_capacity(n);
    let mut mask = 0usize;
    for row in &cost {
        let j = (0..n)
            .filter(|j| mask & (1 << j) == 0)
            .find(|&j| row[j] + best[mask | (1 << j)] <= best[mask] + TIE_TOL)
            .expect("an optimal continuation exists");
        perm.push(j);
        mask |= 1 << j;
    }
    Ok(perm)
}

/// Largest great-circle distance between matched stars of two sets.
pub fn matched_distance(a: &StarSet, b: &StarSet) -> Result<f64> {
    let (ua, ub) = (a.unit_stars(), b.unit_stars());
    let perm = match_unit_stars(&ua, &ub)?;
    Ok(ua
        .iter()
        .zip(&perm)
        .map(|(s, &j)| s.great_circle_distance(&ub[j]))
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Time,
    Varphi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Endpoints {
    /// `steps` points including both ends.
    #[default]
    Closed,
    /// `steps` interior points, excluding both ends.
    Open,
}

/// Initial states fed to a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Two spin-1/2 evolved under `H₁`.
    HalfHalf,
    /// Spin-1 with spin-1/2 evolved under `H₂`.
    OneHalf,
    /// A fixed user state evolved under `H₂` for its spin.
    State(MixedSpinState),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::HalfHalf => "half_half",
            Family::OneHalf => "one_half",
            Family::State(_) => "file",
        }
    }

    fn hamiltonian(&self, params: XxzParams) -> Hamiltonian {
        match self {
            Family::HalfHalf => build_h1(params),
            Family::OneHalf => build_h2(SpinMagnitude::from_twice(2), params),
            Family::State(s) => build_h2(s.spin(), params),
        }
    }

    fn initial(&self, varphi: f64) -> MixedSpinState {
        match self {
            Family::HalfHalf => oracles::initial_state_half_half(varphi),
            Family::OneHalf => oracles::initial_state_one_half(varphi),
            Family::State(s) => s.clone(),
        }
    }
}

/// A one-dimensional parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub endpoints: Endpoints,
    /// Held fixed when sweeping time.
    pub varphi: f64,
    /// Held fixed when sweeping `varphi`.
    pub t: f64,
    pub delta: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::TooFewSteps(self.steps));
        }
        let finite = [self.start, self.stop, self.varphi, self.t, self.delta]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidSweep(
                "sweep parameters must be finite".into(),
            ));
        }
        if self.start >= self.stop {
            return Err(Error::InvalidRange);
        }
        if matches!(self.family, Family::State(_)) && self.variable == SweepVariable::Varphi {
            return Err(Error::InvalidSweep(
                "a file state has no varphi parameter".into(),
            ));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        match self.endpoints {
            Endpoints::Closed => {
                let h = span / (self.steps - 1) as f64;
                (0..self.steps)
                    .map(|k| {
                        if k + 1 == self.steps {
                            self.stop
                        } else {
                            self.start + k as f64 * h
                        }
                    })
                    .collect()
            }
            Endpoints::Open => {
                let h = span / (self.steps + 1) as f64;
                (1..=self.steps)
                    .map(|k| self.start + k as f64 * h)
                    .collect()
            }
        }
    }

    /// `(t, varphi)` at every grid point.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.grid()
            .into_iter()
            .map(|x| match self.variable {
                SweepVariable::Time => (x, self.varphi),
                SweepVariable::Varphi => (self.t, x),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetLabel {
    Upper,
    Lower,
    Pseudo,
}

impl SetLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SetLabel::Upper => "upper",
            SetLabel::Lower => "lower",
            SetLabel::Pseudo => "pseudo",
        }
    }
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SetLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "upper" => Ok(SetLabel::Upper),
            "lower" => Ok(SetLabel::Lower),
            "pseudo" => Ok(SetLabel::Pseudo),
            other => Err(format!("unknown star set '{other}'")),
        }
    }
}

/// One star at one grid point. `star_index` follows the star continuously
/// along the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub t: f64,
    pub varphi: f64,
    pub delta: f64,
    pub set: SetLabel,
    pub star_index: usize,
    pub theta: f64,
    pub phi: f64,
}

/// Star positions of `spec.family` at every grid point, with indices kept
/// continuous by [`match_stars`].
///
/// Grid points are evaluated in parallel; records come out ordered by grid
/// point, then set, then index. A set whose weight vanishes at a grid point
/// emits nothing there, and its matching resumes from the last point where
/// it was defined.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<TrajectoryRecord>> {
    spec.validate()?;
    let h = spec.family.hamiltonian(XxzParams { delta: spec.delta });
    let points = spec.points();
    let fixed_initial = match spec.variable {
        SweepVariable::Time => Some(spec.family.initial(spec.varphi)),
        SweepVariable::Varphi => None,
    };
    let reps: Vec<FullRepresentation> = points
        .par_iter()
        .map(|&(t, varphi)| {
            let initial = match &fixed_initial {
                Some(s) => s.clone(),
                None => spec.family.initial(varphi),
            };
            full_representation(&evolve(&h, t, &initial)?)
        })
        .collect::<Result<_>>()?;

    let mut upper = Track::default();
    let mut lower = Track::default();
    let mut records = Vec::new();
    for (&(t, varphi), rep) in points.iter().zip(&reps) {
        let mut emit = |set: SetLabel, stars: &[Star]| {
            records.extend(
                stars
                    .iter()
                    .enumerate()
                    .map(|(star_index, s)| TrajectoryRecord {
                        t,
                        varphi,
                        delta: spec.delta,
                        set,
                        star_index,
                        theta: s.theta,
                        phi: s.phi,
                    }),
            );
        };
        if let Some(set) = &rep.upper_stars {
            emit(SetLabel::Upper, &upper.advance(set)?);
        }
        if let Some(set) = &rep.lower_stars {
            emit(SetLabel::Lower, &lower.advance(set)?);
        }
        emit(SetLabel::Pseudo, &[rep.pseudo_star]);
    }
    Ok(records)
}

#[derive(Default)]
struct Track {
    last: Option<Vec<Star>>,
}

impl Track {
    fn advance(&mut self, set: &StarSet) -> Result<Vec<Star>> {
        let unit = set.unit_stars();
        let ordered = match &self.last {
            Some(prev) if prev.len() == unit.len() => {
                let perm = match_unit_stars(prev, &unit)?;
                perm.iter().map(|&j| unit[j]).collect()
            }
            _ => unit,
        };
        self.last = Some(ordered.clone());
        Ok(ordered)
    }
}
