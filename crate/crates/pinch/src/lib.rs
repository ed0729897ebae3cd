//! Numerical verification toolkit for Ricci-flow pinching cones under
//! positive isotropic curvature.
//!
//! The crate provides, in layers:
//!
//! - [`curvature`]: algebraic curvature operators on ℝⁿ (4 ≤ n ≤ 32) with
//!   the Kulkarni–Nomizu product, Ricci contractions, the reaction quadratic
//!   Q(R) = R² + R♯, and the isotropic-curvature functionals PIC/PIC1/PIC2.
//! - [`bohm_wilking`]: the Böhm–Wilking transformation calculus — the linear
//!   map l_{a,b}, its inverse, the correction term D_{a,b} in closed form and
//!   by conjugation, and the reaction right-hand sides.
//! - [`membership`]: quantified cone membership by minimizing isotropic
//!   values over orthonormal four-frames (multi-start projected descent,
//!   cross-checked against brute-force scans).
//! - [`cones`]: the two pinching-cone families for 9 ≤ n ≤ 11 — derived
//!   coefficient data, certificate checking, the second-family Z functional,
//!   and the glued family over β ∈ (0, B).
//! - [`lemmas`]: reproduction of the closed-form inequality claims behind
//!   the cone construction, with exact-rational cross-checks.
//! - [`transversality`]: boundary sampling and strict-derivative checks for
//!   the reaction ODE dS/dt = Q(S) + D_{a,b}(S), plus an RK4 integrator for
//!   the coupled (S, T) system.
//! - [`cli`]: the `pinch` command-line front end (params / verify / sweep /
//!   evolve) with deterministic, seed-reproducible reports.
//!
//! Everything is deterministic given a seed; all random draws go through
//! ChaCha8 streams derived from the seed recorded in each report.

pub mod bohm_wilking;
pub mod cli;
pub mod cones;
pub mod curvature;
pub mod error;
pub mod io;
pub mod lemmas;
pub mod membership;
pub mod rational;
pub mod transversality;

pub use curvature::{
    isotropic_value, kulkarni_nomizu, q_quadratic, ricci, ricci_tracefree, scalar, sharp,
    sharp_lie_oracle, square, star_contract, CurvatureTensor, Dimension, FourFrame,
    IsotropicMode, IsotropicProbe, SymmetricForm,
};
pub use error::{Error, Result};

/// Default RNG seed used when a caller does not provide one.
pub const DEFAULT_SEED: u64 = 0x7052;

/// Builds the crate-wide deterministic RNG from a seed and a stream label.
///
/// Independent subsystems (optimizer restarts, samplers, suites) derive
/// their streams from (seed, label) so that adding a consumer never shifts
/// the draws of another.
pub fn seeded_rng(seed: u64, stream: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&0x9e37_79b9_7f4a_7c15u64.to_le_bytes());
    rand_chacha::ChaCha8Rng::from_seed(key)
}
