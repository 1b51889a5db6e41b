//! Exact simulation and long-time limit law of a discrete-time quantum walk
//! on the integers whose distribution splits into two ballistic lobes.
//!
//! * [`walk`] evolves amplitudes in position space under the alternating
//!   operators U1 (even times) and U2 (odd times).
//! * [`spectral`] gives the momentum-space picture: Û1(k), Û2(k), the
//!   eigen-structure of Û2Û1, group velocities, limit moments, and an exact
//!   DFT reconstruction of the position distribution.
//! * [`limit`] evaluates the limit density of X_t/t, its CDF and moments,
//!   and the finite-time approximation (1/t)·ρ(x/t).

pub mod coin;
pub mod distribution;
pub mod error;
pub mod limit;
pub mod quadrature;
pub mod spectral;
pub mod walk;

pub use coin::{CoinParameter, InitialCoin};
pub use distribution::Distribution;
pub use error::{Result, WalkError};
pub use limit::{LimitDensityModel, SupportInterval};
pub use spectral::{Branch, CoinMatrix, EigenPair, FourierState};
pub use walk::{simulate, Operator, WalkState};

pub use num_complex::Complex64;
