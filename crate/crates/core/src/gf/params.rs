use crate::error::{MzvError, Result};
use crate::rational::{int, Rational};
use crate::zeta::Variant;

/// Which generating function to build, and at which `(t, x, y)`.
///
/// For the fixed variants the stored `t, x, y` are ignored in favour of the
/// specialization: plain `(0,1,0)`, star `(1,1,0)`, S `(0,1,-1)`,
/// S_star `(1,1,-1)`. The `t` variant uses `(t,1,0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFParams {
    pub variant: Variant,
    pub t: Rational,
    pub x: Rational,
    pub y: Rational,
    pub order: u32,
}

impl GFParams {
    pub fn new(variant: Variant, order: u32) -> Self {
        GFParams {
            variant,
            t: int(0),
            x: int(1),
            y: int(0),
            order,
        }
    }

    pub fn interpolated(t: Rational, order: u32) -> Self {
        GFParams {
            t,
            ..GFParams::new(Variant::T, order)
        }
    }

    pub fn ipmzv(t: Rational, x: Rational, y: Rational, order: u32) -> Self {
        GFParams {
            variant: Variant::Ipmzv,
            t,
            x,
            y,
            order,
        }
    }

    /// The effective `(t, x, y)`.
    pub fn specialization(&self) -> (Rational, Rational, Rational) {
        match self.variant {
            Variant::Plain => (int(0), int(1), int(0)),
            Variant::Star => (int(1), int(1), int(0)),
            Variant::T => (self.t.clone(), int(1), int(0)),
            Variant::S => (int(0), int(1), int(-1)),
            Variant::SStar => (int(1), int(1), int(-1)),
            Variant::Ipmzv => (self.t.clone(), self.x.clone(), self.y.clone()),
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.order < 2 {
            return Err(MzvError::InvalidArgument(format!(
                "truncation order must be at least 2, got {}",
                self.order
            )));
        }
        Ok(())
    }
}
