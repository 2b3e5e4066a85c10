//! Exact equivalence testing and value-set sampling for finite exponential
//! sums Σ a_j·e^{λ_j s} with real frequencies.
//!
//! Frequencies are declared as exact rational combinations of user-supplied
//! ground generators that the caller asserts to be linearly independent over
//! the rationals. On top of that declaration the crate provides:
//!
//! - [`exponents`]: frequency sets, the greedy natural basis, exact
//!   coordinates, and change-of-basis maps — all in big-rational arithmetic.
//! - [`congruence`]: feasibility of systems `<r_j, y> ≡ θ_j (mod μ_j)` with
//!   rational rows and moduli, decided exactly via integer kernels and
//!   column-style Hermite normal form, returning solutions or integer kernel
//!   witnesses that re-verify by substitution.
//! - [`sums`]: exponential sums with exact polar or numeric complex
//!   coefficients, evaluation on vertical lines, and mean-value coefficient
//!   recovery.
//! - [`equivalence`]: the equivalence decision on two sums (equal moduli,
//!   phase differences reachable by a torus point plus per-row residues), a
//!   stricter single-shift truncation oracle, and class-member generation.
//! - [`valuesets`]: deterministic line and torus value clouds, Hausdorff
//!   distances, and sampled verifiers for the structural facts (member
//!   identity, basis independence, line-cloud agreement of equivalent sums).
//! - [`rational`] / [`lattice`]: the underlying exact helpers (parsing,
//!   correctly rounded conversion, HNF, kernels, rational solving).
//!
//! Exact mode never consults floating point: verdicts, certificates, and
//! witnesses are big-rational/big-integer throughout. Numeric mode uses the
//! same integer lattice core and confines floating point to the phase data.

pub mod congruence;
pub mod equivalence;
pub mod error;
pub mod exponents;
pub mod lattice;
pub mod rational;
pub mod sums;
pub mod valuesets;

pub use error::{Error, Result};
