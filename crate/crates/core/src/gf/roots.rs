//! Numeric root pairs from elementary symmetric data.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `beta` is the root of smaller magnitude (the one vanishing with `e2`).
    Standard,
    /// The two roots exchanged.
    Swapped,
}

impl Branch {
    pub fn flipped(self) -> Self {
        match self {
            Branch::Standard => Branch::Swapped,
            Branch::Swapped => Branch::Standard,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Branch::Standard => "beta=smaller-root",
            Branch::Swapped => "beta=larger-root",
        }
    }
}

/// Roots of `l^2 - e1 l + e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub e1: f64,
    pub e2: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub branch: Branch,
}

impl RootPair {
    pub fn new(e1: f64, e2: f64, branch: Branch) -> Self {
        let disc = Complex64::new(e1 * e1 - 4.0 * e2, 0.0).sqrt();
        // cancellation-free: the larger root first, the smaller from e2
        let sign = if e1 >= 0.0 { 1.0 } else { -1.0 };
        let big = (Complex64::new(e1, 0.0) + disc * sign) / 2.0;
        let small = if big.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(e2, 0.0) / big
        };
        // a conjugate pair has equal magnitudes; fix the order by imaginary part
        let (larger, smaller) =
            if small.norm() < big.norm() || (small.norm() == big.norm() && small.im <= big.im) {
                (big, small)
            } else {
                (small, big)
            };
        let (alpha, beta) = match branch {
            Branch::Standard => (larger, smaller),
            Branch::Swapped => (smaller, larger),
        };
        RootPair {
            e1,
            e2,
            alpha,
            beta,
            branch,
        }
    }

    /// `alpha_s + beta_s = X + sY`, `alpha_s beta_s = s(XY - Z)`.
    pub fn for_s(s: f64, x: f64, y: f64, z: f64, branch: Branch) -> Self {
        RootPair::new(x + s * y, s * (x * y - z), branch)
    }

    pub fn swapped(&self) -> Self {
        RootPair {
            alpha: self.beta,
            beta: self.alpha,
            branch: self.branch.flipped(),
            ..*self
        }
    }

    pub fn is_real(&self) -> bool {
        self.alpha.im == 0.0 && self.beta.im == 0.0
    }

    /// Largest deviation of the symmetric functions from the inputs.
    pub fn symmetric_deviation(&self) -> f64 {
        let sum = (self.alpha + self.beta - self.e1).norm();
        let prod = (self.alpha * self.beta - self.e2).norm();
        sum.max(prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degenerate_pair() {
        let r = RootPair::new(0.3, 0.0, Branch::Standard);
        assert_eq!(r.beta, Complex64::new(0.0, 0.0));
        assert!((r.alpha.re - 0.3).abs() < 1e-16);
    }

    #[test]
    fn complex_pair() {
        let r = RootPair::for_s(-1.0, 0.1, -0.1, 0.01, Branch::Standard);
        assert!(!r.is_real());
        assert!((r.alpha - r.beta.conj()).norm() < 1e-16);
        assert!(r.symmetric_deviation() < 1e-15);
    }

    proptest! {
        #[test]
        fn symmetric_functions_reproduce(e1 in -1.0f64..1.0, e2 in -1.0f64..1.0) {
            let r = RootPair::new(e1, e2, Branch::Standard);
            prop_assert!(r.symmetric_deviation() < 1e-13);
            prop_assert!(r.beta.norm() <= r.alpha.norm() + 1e-15);
            let s = r.swapped();
            prop_assert_eq!(s.branch, Branch::Swapped);
            prop_assert_eq!(s.swapped(), r);
            prop_assert_eq!(RootPair::new(e1, e2, Branch::Swapped), s);
        }
    }
}
