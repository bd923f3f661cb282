//! Multiple zeta values, their interpolated / symmetric / polynomial variants,
//! and machinery for checking generating-function identities among them.
//!
//! The crate is organised bottom-up:
//!
//! - [`index`]: indices (finite sequences of positive integers) and the
//!   combinatorics built on them.
//! - [`quasi_shuffle`]: the exact stuffle algebra and harmonic regularization.
//! - [`real`], [`poly`], [`ring`]: numeric and polynomial coefficient types.
//! - [`zeta`]: numeric evaluation of every zeta variant plus a persistent cache.
//! - [`series`]: truncated power series in `X, Y, Z`.
//! - [`gf`]: generating functions, closed forms and pointwise evaluators.
//! - [`verify`]: the identity registry and verification reports.

pub mod error;
pub mod gf;
pub mod index;
pub mod poly;
pub mod quasi_shuffle;
pub mod rational;
pub mod real;
pub mod ring;
pub mod series;
pub mod verify;
pub mod zeta;

pub use error::{MzvError, Result};
pub use index::{Index, UExponents};
pub use poly::TPoly;
pub use rational::Rational;
pub use real::RealValue;
pub use ring::CoefficientRing;
pub use series::Series3;
pub use zeta::{RegMode, ZetaEngine};

/// Version string stamped into reports and cache records.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
