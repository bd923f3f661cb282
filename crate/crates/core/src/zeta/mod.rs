//! Numeric evaluation of every zeta variant.

pub mod cache;
pub mod direct;
pub mod engine;
pub mod holder;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MzvError;

pub use crate::quasi_shuffle::RegMode;
pub use cache::{ZetaCache, ZetaCacheEntry};
pub use direct::eval_zeta_direct;
pub use engine::ZetaEngine;
pub use holder::eval_zeta_holder;

/// The zeta variants, named by their `(t, x, y)` specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `zeta`, i.e. `(t, x, y) = (0, 1, 0)`.
    #[serde(rename = "plain")]
    Plain,
    /// `zeta-star`, `(1, 1, 0)`.
    #[serde(rename = "star")]
    Star,
    /// Interpolated `zeta^t`, `(t, 1, 0)`.
    #[serde(rename = "t")]
    T,
    /// Interpolated polynomial `zeta^t_{x,y}`.
    #[serde(rename = "ipmzv")]
    Ipmzv,
    /// Symmetric `zeta_S`, `(0, 1, -1)`.
    #[serde(rename = "S")]
    S,
    /// Symmetric star `zeta_S-star`, `(1, 1, -1)`.
    #[serde(rename = "S_star")]
    SStar,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Plain,
        Variant::Star,
        Variant::T,
        Variant::Ipmzv,
        Variant::S,
        Variant::SStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Star => "star",
            Variant::T => "t",
            Variant::Ipmzv => "ipmzv",
            Variant::S => "S",
            Variant::SStar => "S_star",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s || v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                MzvError::InvalidArgument(format!(
                    "unknown variant `{s}` (expected one of plain, star, t, ipmzv, S, S_star)"
                ))
            })
    }
}
