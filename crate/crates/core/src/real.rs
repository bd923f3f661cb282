//! Double-double reals carrying an absolute error bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::rational::Rational;
use crate::ring::CoefficientRing;

/// Relative rounding charged per double-double operation.
pub const DD_EPS: f64 = 1e-31;

/// A double-double value (about 31 significant digits) with an absolute
/// error bound that is propagated through arithmetic.
#[derive(Clone, Copy, PartialEq)]
pub struct RealValue {
    value: TwoFloat,
    err: f64,
}

fn dd_abs(x: TwoFloat) -> f64 {
    x.hi().abs() + x.lo().abs()
}

/// Double-double quotient by long division. The crate's own `TwoFloat / TwoFloat`
/// loses the low word, so every division goes through here.
pub(crate) fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

/// Exact for integers below 2^106 in magnitude.
fn bigint_to_dd(n: &BigInt) -> TwoFloat {
    let hi = n.to_f64().unwrap_or(f64::INFINITY);
    let Some(hi_int) = BigInt::from_f64(hi) else {
        return TwoFloat::from(hi);
    };
    let lo = (n - hi_int).to_f64().unwrap_or(0.0);
    TwoFloat::new_add(hi, lo)
}

impl RealValue {
    pub fn new(value: TwoFloat, err: f64) -> Self {
        RealValue {
            value,
            err: err.abs(),
        }
    }

    pub fn exact(x: f64) -> Self {
        RealValue {
            value: TwoFloat::from(x),
            err: 0.0,
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.err == 0.0 && self.value.hi() == 0.0 && self.value.lo() == 0.0
    }

    fn is_exact_one(&self) -> bool {
        self.err == 0.0 && self.value.hi() == 1.0 && self.value.lo() == 0.0
    }

    pub fn value(&self) -> TwoFloat {
        self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.value.hi() + self.value.lo()
    }

    pub fn error(&self) -> f64 {
        self.err
    }

    pub fn abs_f64(&self) -> f64 {
        dd_abs(self.value)
    }

    pub fn with_extra_error(self, extra: f64) -> Self {
        RealValue {
            value: self.value,
            err: self.err + extra.abs(),
        }
    }

    pub fn from_rational_dd(q: &Rational) -> Self {
        let n = bigint_to_dd(q.numer());
        let d = bigint_to_dd(q.denom());
        let v = dd_div(n, d);
        let exact = q.denom() == &BigInt::from(1) && q.numer().abs() < BigInt::from(1u128 << 100);
        RealValue {
            value: v,
            err: if exact { 0.0 } else { dd_abs(v) * DD_EPS },
        }
    }

    pub fn sqrt(&self) -> Self {
        let v = self.value.sqrt();
        let a = dd_abs(v);
        let err = if a > 0.0 {
            self.err / (2.0 * a)
        } else {
            self.err.sqrt()
        };
        RealValue {
            value: v,
            err: err + a * DD_EPS,
        }
    }

    pub fn recip(&self) -> Self {
        let v = dd_div(TwoFloat::from(1.0), self.value);
        let a = dd_abs(self.value);
        let err = self.err / (a * (a - self.err).max(f64::MIN_POSITIVE)) + dd_abs(v) * DD_EPS;
        RealValue { value: v, err }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.to_f64().total_cmp(&other.to_f64())
    }

    /// Round-trippable textual form of the two words.
    pub fn words(&self) -> (f64, f64) {
        (self.value.hi(), self.value.lo())
    }

    pub fn from_words(hi: f64, lo: f64, err: f64) -> Option<Self> {
        let value = TwoFloat::try_from((hi, lo)).ok()?;
        Some(RealValue { value, err })
    }
}

impl fmt::Debug for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:e}{:+e} ± {:e}",
            self.value.hi(),
            self.value.lo(),
            self.err
        )
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_dd(self.value, 30))
    }
}

/// Decimal rendering of a double-double with `digits` significant digits.
pub fn format_dd(x: TwoFloat, digits: usize) -> String {
    let v = x.hi() + x.lo();
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let neg = v < 0.0;
    let mut r = if neg { -x } else { x };
    let mut exp10 = v.abs().log10().floor() as i32;
    let mut scale = TwoFloat::from(1.0);
    for _ in 0..exp10.unsigned_abs() {
        scale *= 10.0;
    }
    r = if exp10 >= 0 {
        dd_div(r, scale)
    } else {
        r * scale
    };
    if r.hi() >= 10.0 {
        r /= 10.0;
        exp10 += 1;
    } else if r.hi() < 1.0 {
        r *= 10.0;
        exp10 -= 1;
    }
    let mut ds = Vec::with_capacity(digits + 1);
    for _ in 0..=digits {
        let mut d = r.hi().floor();
        if (r - d).hi() < 0.0 {
            d -= 1.0;
        }
        let d = d.clamp(0.0, 9.0);
        ds.push(d as u8);
        r = (r - d) * 10.0;
    }
    // round on the extra digit
    if ds[digits] >= 5 {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                exp10 += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    ds.truncate(digits);
    let mantissa: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let sign = if neg { "-" } else { "" };
    if (-5..=5).contains(&exp10) {
        if exp10 >= 0 {
            let p = exp10 as usize + 1;
            format!("{sign}{}.{}", &mantissa[..p], &mantissa[p..])
        } else {
            format!("{sign}0.{}{}", "0".repeat((-exp10 - 1) as usize), mantissa)
        }
    } else {
        format!("{sign}{}.{}e{exp10}", &mantissa[..1], &mantissa[1..])
    }
}

impl CoefficientRing for RealValue {
    fn zero() -> Self {
        RealValue::exact(0.0)
    }

    fn one() -> Self {
        RealValue::exact(1.0)
    }

    fn is_zero(&self) -> bool {
        self.value.hi() == 0.0 && self.value.lo() == 0.0 && self.err == 0.0
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_exact_zero() {
            return *rhs;
        }
        if rhs.is_exact_zero() {
            return *self;
        }
        let v = self.value + rhs.value;
        RealValue {
            value: v,
            err: self.err + rhs.err + dd_abs(v) * DD_EPS,
        }
    }

    fn neg(&self) -> Self {
        RealValue {
            value: -self.value,
            err: self.err,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let v = self.value - rhs.value;
        RealValue {
            value: v,
            err: self.err + rhs.err + dd_abs(v) * DD_EPS,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_exact_one() {
            return *rhs;
        }
        if rhs.is_exact_one() {
            return *self;
        }
        let v = self.value * rhs.value;
        let err = dd_abs(self.value) * rhs.err + dd_abs(rhs.value) * self.err + self.err * rhs.err;
        RealValue {
            value: v,
            err: err + dd_abs(v) * DD_EPS,
        }
    }

    fn from_rational(q: &Rational) -> Self {
        RealValue::from_rational_dd(q)
    }

    fn div_int(&self, n: i64) -> Self {
        if n == 1 {
            return *self;
        }
        let v = dd_div(self.value, TwoFloat::from(n));
        RealValue {
            value: v,
            err: self.err / (n as f64).abs() + dd_abs(v) * DD_EPS,
        }
    }

    fn abs_dev(&self, other: &Self) -> f64 {
        dd_abs(self.value - other.value)
    }

    fn magnitude(&self) -> f64 {
        dd_abs(self.value)
    }

    fn error_bound(&self) -> f64 {
        self.err
    }

    fn from_int(n: i64) -> Self {
        RealValue {
            value: TwoFloat::from(n),
            err: 0.0,
        }
    }
}

impl Zero for RealValue {
    fn zero() -> Self {
        <Self as CoefficientRing>::zero()
    }

    fn is_zero(&self) -> bool {
        <Self as CoefficientRing>::is_zero(self)
    }
}

impl std::ops::Add for RealValue {
    type Output = RealValue;

    fn add(self, rhs: Self) -> Self {
        CoefficientRing::add(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_conversion_is_double_double_accurate() {
        let third = RealValue::from_rational(&rat(1, 3));
        let three = RealValue::from_int(3);
        let one = third.mul(&three);
        assert!(one.abs_dev(&RealValue::one()) < 1e-30);
        assert!(third.error() > 0.0 && third.error() < 1e-31);
        assert_eq!(RealValue::from_rational(&rat(5, 1)).error(), 0.0);
    }

    #[test]
    fn error_propagation() {
        let a = RealValue::new(TwoFloat::from(2.0), 1e-10);
        let b = RealValue::new(TwoFloat::from(3.0), 2e-10);
        let p = a.mul(&b);
        assert!(p.error() >= 2.0 * 2e-10 + 3.0 * 1e-10);
        let s = a.add(&b);
        assert!(s.error() >= 3e-10);
        assert!(a.recip().error() > 0.0);
    }

    #[test]
    fn formatting() {
        let x = RealValue::from_rational(&rat(1, 3));
        assert_eq!(format_dd(x.value(), 20), "0.33333333333333333333");
        assert_eq!(format_dd(TwoFloat::from(-2.5), 5), "-2.5000");
        assert_eq!(format_dd(TwoFloat::from(1.0e-9), 3), "1.00e-9");
        assert_eq!(format_dd(TwoFloat::from(9.9999999), 3), "10.0");
    }

    #[test]
    fn words_round_trip() {
        let x = RealValue::from_rational(&rat(2, 7));
        let (hi, lo) = x.words();
        let y = RealValue::from_words(hi, lo, x.error()).unwrap();
        assert_eq!(x, y);
    }
}
