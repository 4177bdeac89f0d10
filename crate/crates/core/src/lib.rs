//! Exact counting of target-sum sign assignments and closed-form integrals of
//! products of sines and cosines with integer frequencies.
//!
//! The number of ways to choose signs with `±b1 ± ... ± bn = b0` equals
//! `2^n / pi` times the integral of `cos(b0 x) cos(b1 x) ... cos(bn x)` over
//! `[0, pi]`. This crate computes that count three ways (enumeration, dynamic
//! programming, and the constant term of the exact product-to-sum expansion)
//! and integrates mixed sine/cosine products both symbolically and from
//! counts alone.

pub mod bench;
pub mod counting;
mod error;
pub mod instance;
pub mod integral;
mod limits;
pub mod quadrature;
mod rational;
pub mod verify;
pub mod werner;

pub use counting::{Count, ParityQuery};
pub use error::{Error, Result};
pub use instance::{Instance, ProductSpec, SignVector};
pub use integral::{ClosedForm, PiBounds};
pub use limits::{Limits, DEFAULT_ENUMERATION_CAP, DEFAULT_TERM_CAP};
pub use quadrature::QuadratureConfig;
pub use rational::{ExactValue, ParseRationalError, Rational};
pub use werner::TrigPolynomial;
