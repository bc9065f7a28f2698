//! Apery limits of the quantum recurrences of Mukai threefolds and of the
//! Grassmannians `G(2,N)`, together with the independent L-value oracles
//! used to verify them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO, caching and the command line live in the
//! `aperylab` crate.
//!
//! Layout:
//!
//! * [`precision`]: exact rationals, arbitrary-precision [`Real`] and
//!   [`Complex`], constants and combinatorics.
//! * [`special`]: ζ, Hurwitz ζ, `L(χ₃, s)` and the real Gamma function.
//! * [`holonomic`]: differential operators, recurrences, exact solutions,
//!   Frobenius solutions, the mirror map and limit estimation.
//! * [`modular`]: exact q-series, Eisenstein harmonics and the
//!   coefficientwise modular identities.
//! * [`deresonate`]: perturbed hypergeometric series, Wronskians, the sine
//!   formula and the Grassmannian constant.
//! * [`monodromy`]: Gram matrices, reflections and the wedge-frame checks.
#![cfg_attr(not(feature = "std"), no_std)]
// Dense index loops read closer to the formulas they implement.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod deresonate;
pub mod error;
pub mod holonomic;
pub mod modular;
pub mod monodromy;
pub mod precision;
pub mod special;

pub use error::{Error, Result};
pub use precision::{Complex, PolyN, Rational, Real};
