//! Brute-force generating functions: sum the weighted values over indices.
//!
//! The coefficient of `X^i Y^j Z^k` only receives indices with those
//! exponents, and there are finitely many, so every coefficient up to the
//! truncation order is exact (up to the accuracy of the values).

use crate::error::Result;
use crate::gf::params::GFParams;
use crate::index::{enumerate_by_u_degree, Index};
use crate::rational::Rational;
use crate::real::RealValue;
use crate::ring::CoefficientRing;
use crate::series::Series3;
use crate::zeta::{Variant, ZetaEngine};

fn real(q: &Rational) -> RealValue {
    RealValue::from_rational(q)
}

fn signed_depth(depth: u32) -> RealValue {
    if depth.is_multiple_of(2) {
        RealValue::one()
    } else {
        RealValue::one().neg()
    }
}

/// The weighted value `(1-2t)^{dep k} v(k)` for one variant.
pub(crate) struct WeightedTerm {
    variant: Variant,
    one_minus_2t: RealValue,
    t: RealValue,
    x: RealValue,
    y: RealValue,
}

impl WeightedTerm {
    pub(crate) fn new(params: &GFParams) -> Self {
        let (t, x, y) = params.specialization();
        let one_minus_2t =
            real(&(Rational::from_integer(1.into()) - &t * Rational::from_integer(2.into())));
        WeightedTerm {
            variant: params.variant,
            one_minus_2t,
            t: real(&t),
            x: real(&x),
            y: real(&y),
        }
    }

    pub(crate) fn eval(&self, engine: &ZetaEngine, k: &Index) -> Result<RealValue> {
        let dep = k.depth();
        Ok(match self.variant {
            Variant::Plain => engine.zeta(k)?,
            Variant::Star => signed_depth(dep).mul(&engine.zeta_star(k)?),
            Variant::T => self.one_minus_2t.pow(dep).mul(&engine.zeta_t(k, &self.t)?),
            Variant::S => engine.szv(k, false)?,
            Variant::SStar => signed_depth(dep).mul(&engine.szv(k, true)?),
            Variant::Ipmzv => self
                .one_minus_2t
                .pow(dep)
                .mul(&engine.ipmzv(k, &self.t, &self.x, &self.y)?),
        })
    }
}

/// `sum_{k in I} (1-2t)^{dep k} v(k) u_k` for the requested variant.
pub fn phi_bruteforce(engine: &ZetaEngine, params: &GFParams) -> Result<Series3<RealValue>> {
    params.check()?;
    let term = WeightedTerm::new(params);
    let mut out = Series3::zero(params.order);
    for k in enumerate_by_u_degree(params.order, true) {
        if k.is_empty() {
            continue;
        }
        out.add_to(k.u_exponents(), &term.eval(engine, &k)?);
    }
    Ok(out)
}

/// `sum_k (1-2t)^{dep k} zeta^t_{x,y}(k) u_k` over all indices, the empty
/// one included; non-admissible values are regularized with `T = 0`.
pub fn phi_all_indices(
    engine: &ZetaEngine,
    t: &Rational,
    x: &Rational,
    y: &Rational,
    order: u32,
) -> Result<Series3<RealValue>> {
    let one_minus_2t =
        real(&(Rational::from_integer(1.into()) - t * Rational::from_integer(2.into())));
    let (t, x, y) = (real(t), real(x), real(y));
    let mut out = Series3::zero(order);
    for k in enumerate_by_u_degree(order, false) {
        let term = one_minus_2t
            .pow(k.depth())
            .mul(&engine.ipmzv(&k, &t, &x, &y)?);
        out.add_to(k.u_exponents(), &term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::UExponents;
    use crate::rational::{int, rat};

    const Z: UExponents = UExponents { i: 0, j: 0, k: 1 };

    #[test]
    fn low_coefficients() {
        let e = ZetaEngine::default();
        let z2 = e.zeta(&"2".parse().unwrap()).unwrap();
        let plain = phi_bruteforce(&e, &GFParams::new(Variant::Plain, 4)).unwrap();
        assert!(plain.coeff(Z).abs_dev(&z2) < 1e-28);
        assert!(plain.constant_term().is_zero());
        let star = phi_bruteforce(&e, &GFParams::new(Variant::Star, 4)).unwrap();
        assert!(star.coeff(Z).abs_dev(&z2.neg()) < 1e-28);
    }

    #[test]
    fn half_kills_everything() {
        let e = ZetaEngine::default();
        let p = phi_bruteforce(&e, &GFParams::ipmzv(rat(1, 2), int(2), int(3), 5)).unwrap();
        assert!(p.iter().all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn all_indices_low_coefficients() {
        let e = ZetaEngine::default();
        let z2 = e.zeta(&"2".parse().unwrap()).unwrap();
        let p = phi_all_indices(&e, &int(0), &int(1), &int(0), 4).unwrap();
        assert_eq!(*p.constant_term(), RealValue::one());
        assert!(p.get(0, 1, 0).magnitude() < 1e-30);
        assert!(p.coeff(Z).abs_dev(&z2) < 1e-28);
    }

    #[test]
    fn order_below_two_is_rejected() {
        let e = ZetaEngine::default();
        assert!(phi_bruteforce(&e, &GFParams::new(Variant::Plain, 1)).is_err());
    }
}
