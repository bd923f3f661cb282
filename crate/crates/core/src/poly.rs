//! Dense univariate polynomials over a coefficient ring.
//!
//! Used for the interpolation variable `t`, the regularization variable `T`,
//! and (with `y` left implicit) homogeneous polynomials in `x, y`.

use std::fmt;

use crate::rational::Rational;
use crate::ring::CoefficientRing;

/// Ascending coefficients; trailing exact zeros are trimmed.
#[derive(Clone, PartialEq)]
pub struct TPoly<C> {
    coeffs: Vec<C>,
}

impl<C: CoefficientRing> TPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        TPoly::new(vec![c])
    }

    /// `c * var^n`.
    pub fn monomial(c: C, n: usize) -> Self {
        let mut coeffs = vec![C::zero(); n + 1];
        coeffs[n] = c;
        TPoly::new(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        TPoly::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    pub fn eval(&self, at: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// Evaluation at an exact rational, computed in the coefficient ring.
    pub fn eval_rational(&self, at: &Rational) -> C {
        self.eval(&C::from_rational(at))
    }

    /// `p(1 - var)`.
    pub fn compose_one_minus(&self) -> Self {
        let one_minus = TPoly::new(vec![C::one(), C::one().neg()]);
        self.coeffs
            .iter()
            .rev()
            .fold(TPoly::new(Vec::new()), |acc, c| {
                CoefficientRing::add(
                    &CoefficientRing::mul(&acc, &one_minus),
                    &TPoly::constant(c.clone()),
                )
            })
    }

    pub fn map<D: CoefficientRing>(&self, f: impl Fn(&C) -> D) -> TPoly<D> {
        TPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(C::magnitude).fold(0.0, f64::max)
    }
}

impl<C: CoefficientRing> CoefficientRing for TPoly<C> {
    fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        TPoly::constant(C::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn neg(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TPoly::new(out)
    }

    fn from_rational(q: &Rational) -> Self {
        TPoly::constant(C::from_rational(q))
    }

    fn scale(&self, q: &Rational) -> Self {
        let s = C::from_rational(q);
        TPoly::new(self.coeffs.iter().map(|c| c.mul(&s)).collect())
    }

    fn div_int(&self, n: i64) -> Self {
        TPoly::new(self.coeffs.iter().map(|c| c.div_int(n)).collect())
    }

    fn abs_dev(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| self.coeff(i).abs_dev(&other.coeff(i)))
            .fold(0.0, f64::max)
    }

    fn magnitude(&self) -> f64 {
        self.max_coeff_magnitude()
    }

    fn error_bound(&self) -> f64 {
        self.coeffs.iter().map(C::error_bound).fold(0.0, f64::max)
    }
}

impl<C: CoefficientRing> fmt::Debug for TPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<C: CoefficientRing + fmt::Display> TPoly<C> {
    /// Human-readable rendering, highest power first.
    pub fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match n {
                0 => format!("({c})"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{n}"),
            });
        }
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    type QPoly = TPoly<Rational>;

    fn q(v: &[i64]) -> QPoly {
        TPoly::new(v.iter().map(|&n| int(n)).collect())
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(q(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(q(&[0]).degree(), None);
        assert_eq!(QPoly::var().degree(), Some(1));
    }

    #[test]
    fn arithmetic() {
        let a = q(&[1, 1]);
        let b = q(&[1, -1]);
        assert_eq!(a.mul(&b), q(&[1, 0, -1]));
        assert_eq!(a.add(&b), q(&[2]));
        assert_eq!(a.sub(&a), QPoly::zero());
        assert_eq!(a.eval(&rat(1, 2)), rat(3, 2));
    }

    #[test]
    fn compose_one_minus_is_involution() {
        let p = q(&[3, -2, 5, 7]);
        let c = p.compose_one_minus();
        assert_eq!(c.eval(&rat(1, 3)), p.eval(&rat(2, 3)));
        assert_eq!(c.compose_one_minus(), p);
    }
}
