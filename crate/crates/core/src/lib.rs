//! Majorana stellar representation for mixed-spin `(s, 1/2)` pure states.
//!
//! A state of a spin-`s` coupled to a spin-1/2 is split into a spin-`(s+1/2)`
//! component, a spin-`(s-1/2)` component, and a pseudo spin-1/2 carrying the
//! relative weight of the two. Each part is drawn as Majorana stars on the
//! Bloch sphere, for `(2s+1) + (2s-1) + 1 = 4s+1` stars in total.
//!
//! Modules, bottom-up:
//!
//! * [`spinops`]: ladder operators, total `J²`, and the coupled/uncoupled
//!   basis change.
//! * [`majorana`]: star polynomial, root finding, and the map onto the sphere.
//! * [`mixedspin`]: decomposition into the two coupled components and the
//!   pseudo-spin star.
//! * [`dynamics`]: XXZ Hamiltonians, exact time evolution, trajectory sweeps.
//! * [`oracles`]: closed-form results for the two worked example families.
//! * [`validate`]: seeded invariant suites, used by `stellar validate`.

pub mod dynamics;
pub mod error;
pub mod majorana;
pub mod mixedspin;
pub mod oracles;
pub mod sample;
pub mod spinops;
pub mod validate;

mod roots;

pub use num_complex::Complex64;

pub use dynamics::{
    build_h1, build_h2, evolve, match_stars, run_sweep, Endpoints, Family, Hamiltonian,
    HamiltonianForm, SetLabel, SweepSpec, SweepVariable, TrajectoryRecord, XxzParams,
};
pub use error::{Error, Result};
pub use majorana::{
    reconstruct_coefficients, solve_stars, star_polynomial, z_to_sphere, PureSpinState, Star,
    StarSet,
};
pub use mixedspin::{
    compose, decompose, full_representation, pseudo_spin_star, Decomposition, FullRepresentation,
    MixedSpinState,
};
pub use spinops::{
    block_matrices, coupling_transform, j_squared, ladder_operators, CoupledLabel,
    CouplingTransform, OperatorMatrix, SpinMagnitude, UncoupledLabel,
};
