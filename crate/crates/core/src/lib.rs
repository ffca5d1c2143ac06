//! Lüroth expansions and the dimension theory of their run-length level sets.
//!
//! - [`expansion`]: exact digits, reconstruction and cylinders over `BigRational`.
//! - [`runlength`]: the maximal run-length function `ℓ_n`.
//! - [`moran`]: certified pressure sums, the roots `s(u)`, `s_M(u)` and the
//!   dimension formula.
//! - [`construction`]: the Cantor-type subset `G(M)`, its deletion map,
//!   fundamental intervals, mass distribution and the checks around them.
//! - [`experiments`]: seeded Monte Carlo for the run-length law and the
//!   dimension surface.

pub mod construction;
pub mod error;
pub mod expansion;
pub mod experiments;
pub mod moran;
pub mod rational;
pub mod runlength;

pub use error::{Error, Result};
pub use expansion::{Digit, DigitString, Interval};
pub use moran::{CertifiedValue, Precision};
pub use rational::ExactRational;
