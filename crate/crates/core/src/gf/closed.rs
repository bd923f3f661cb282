//! Closed-form right-hand sides, assembled as truncated series.
//!
//! Power sums `alpha^k + beta^k` of a root pair are built exactly from the
//! elementary symmetric functions. Since `e2` contains `Z` (degree one) the
//! power sum `p_k` can have degree as low as `ceil(k/2)`, so every exponent
//! sum runs to `k = 2N` to be exact at order `N`.

use crate::error::Result;
use crate::gf::params::GFParams;
use crate::gf::phi::{phi_all_indices, phi_bruteforce};
use crate::index::UExponents;
use crate::rational::{int, Rational};
use crate::real::RealValue;
use crate::ring::CoefficientRing;
use crate::series::{newton_power_sums, Series3};
use crate::zeta::{Variant, ZetaEngine};

type RS = Series3<RealValue>;
type QS = Series3<Rational>;

fn real_series(s: &QS) -> RS {
    s.map_into(RealValue::from_rational)
}

fn xy(order: u32) -> QS {
    QS::monomial(order, UExponents { i: 1, j: 1, k: 0 }, int(1))
}

/// `p_1..p_K` for `e1 = X + sY`, `e2 = s(XY - Z)`.
pub fn power_sums_s(s: &Rational, order: u32, k: usize) -> Result<Vec<QS>> {
    let e1 = QS::x(order).add(&QS::y(order).scale(s))?;
    let e2 = xy(order).sub(&QS::z(order))?.scale(s);
    newton_power_sums(&e1, &e2, k)
}

/// `s = t(1 - 2t)`, the parameter of `gamma_t, delta_t`.
pub fn s_of_t(t: &Rational) -> Rational {
    t * (int(1) - t * int(2))
}

fn zeta_k(engine: &ZetaEngine, k: u32) -> Result<RealValue> {
    engine.zeta(&crate::index::Index::single(k))
}

/// `sum_{k=2}^{2N} zeta(k)/k (x^k + y^k) (p_k(t) - p_k(1-t))`.
fn symgene_exponent(
    engine: &ZetaEngine,
    t: &Rational,
    x: &Rational,
    y: &Rational,
    order: u32,
) -> Result<RS> {
    let kmax = 2 * order as usize;
    let p_t = power_sums_s(&s_of_t(t), order, kmax)?;
    let p_u = power_sums_s(&s_of_t(&(int(1) - t)), order, kmax)?;
    let mut acc = RS::zero(order);
    for k in 2..=kmax {
        let factor = crate::rational::pow(x, k as u32) + crate::rational::pow(y, k as u32);
        if factor.is_zero() {
            continue;
        }
        let diff = p_t[k - 1]
            .sub(&p_u[k - 1])?
            .scale(&(factor / int(k as i64)));
        acc = acc.add(&real_series(&diff).scale_by(&zeta_k(engine, k as u32)?))?;
    }
    Ok(acc)
}

/// `exp(sum_k zeta(k)/k (x^k+y^k)(gamma_t^k + delta_t^k - gamma_{1-t}^k - delta_{1-t}^k))`.
pub fn symgene_rhs(
    engine: &ZetaEngine,
    t: &Rational,
    x: &Rational,
    y: &Rational,
    order: u32,
) -> Result<RS> {
    symgene_exponent(engine, t, x, y, order)?.exp()
}

/// `(XY - Z) Phi` and `Z (1 - exp(sum_k zeta(k)/k (X^k + Y^k - alpha^k - beta^k)))`
/// with `alpha + beta = X + Y`, `alpha beta = Z`.
pub fn oz_cleared_sides(engine: &ZetaEngine, order: u32) -> Result<(RS, RS)> {
    let phi = phi_bruteforce(engine, &GFParams::new(Variant::Plain, order))?;
    let xy_minus_z = real_series(&xy(order).sub(&QS::z(order))?);
    let lhs = xy_minus_z.mul(&phi)?;

    let kmax = 2 * order as usize;
    let e1 = QS::x(order).add(&QS::y(order))?;
    let p = newton_power_sums(&e1, &QS::z(order), kmax)?;
    let mut exponent = RS::zero(order);
    for k in 2..=kmax {
        let xk_yk = QS::x(order)
            .pow(k as u32)?
            .add(&QS::y(order).pow(k as u32)?)?;
        let diff = xk_yk
            .sub(&p[k - 1])?
            .scale(&Rational::new(1.into(), (k as i64).into()));
        exponent = exponent.add(&real_series(&diff).scale_by(&zeta_k(engine, k as u32)?))?;
    }
    let one_minus_exp = RS::one(order).sub(&exponent.exp()?)?;
    let rhs = real_series(&QS::z(order)).mul(&one_minus_exp)?;
    Ok((lhs, rhs))
}

fn phi_t(engine: &ZetaEngine, t: &Rational, order: u32) -> Result<RS> {
    phi_bruteforce(engine, &GFParams::interpolated(t.clone(), order))
}

/// `Phi^t(xX, xY, x^2 Z) - Phi^{1-t}(yX, yY, y^2 Z) exp(...)`.
pub fn main_rhs(
    engine: &ZetaEngine,
    t: &Rational,
    x: &Rational,
    y: &Rational,
    order: u32,
) -> Result<RS> {
    let first = phi_t(engine, t, order)?.weight_rescale(&RealValue::from_rational(x));
    let second = phi_t(engine, &(int(1) - t), order)?.weight_rescale(&RealValue::from_rational(y));
    first.sub(&second.mul(&symgene_rhs(engine, t, x, y, order)?)?)
}

/// Both sides of
/// `Phi^t(xX,xY,x^2Z) - Phi^t_{x,y}(X,Y,Z) = Phi^{1-t}(yX,yY,y^2Z) sum_k (1-2t)^dep zeta^t_{x,y}(k) u_k`.
pub fn lemma4_sides(
    engine: &ZetaEngine,
    t: &Rational,
    x: &Rational,
    y: &Rational,
    order: u32,
) -> Result<(RS, RS)> {
    let rescaled = phi_t(engine, t, order)?.weight_rescale(&RealValue::from_rational(x));
    let phi_xy = phi_bruteforce(
        engine,
        &GFParams::ipmzv(t.clone(), x.clone(), y.clone(), order),
    )?;
    let lhs = rescaled.sub(&phi_xy)?;
    let other = phi_t(engine, &(int(1) - t), order)?.weight_rescale(&RealValue::from_rational(y));
    let rhs = other.mul(&phi_all_indices(engine, t, x, y, order)?)?;
    Ok((lhs, rhs))
}

pub struct Cor1Sides {
    /// `Phi^t_{1,-1}` by brute force.
    pub lhs: RS,
    /// `Phi^t - Phi^{1-t}(-X,-Y,Z) exp(sum_{k even} 2 zeta(k)/k (...))`.
    pub rhs: RS,
    /// `(k, 1^k + (-1)^k)` for the odd `k` dropped from the exponent.
    pub odd_factors: Vec<(u32, Rational)>,
}

/// The symmetric-value specialization `(x, y) = (1, -1)` written with only
/// even zeta values in the exponent.
pub fn cor1_sides(engine: &ZetaEngine, t: &Rational, order: u32) -> Result<Cor1Sides> {
    let lhs = phi_bruteforce(engine, &GFParams::ipmzv(t.clone(), int(1), int(-1), order))?;
    let kmax = 2 * order as usize;
    let p_t = power_sums_s(&s_of_t(t), order, kmax)?;
    let p_u = power_sums_s(&s_of_t(&(int(1) - t)), order, kmax)?;
    let mut exponent = RS::zero(order);
    let mut odd_factors = Vec::new();
    for k in 2..=kmax {
        let factor = int(1) + crate::rational::pow(&int(-1), k as u32);
        if k % 2 == 1 {
            odd_factors.push((k as u32, factor));
            continue;
        }
        let diff = p_t[k - 1]
            .sub(&p_u[k - 1])?
            .scale(&(factor / int(k as i64)));
        exponent = exponent.add(&real_series(&diff).scale_by(&zeta_k(engine, k as u32)?))?;
    }
    let reflected = phi_t(engine, &(int(1) - t), order)?.weight_rescale(&RealValue::one().neg());
    let rhs = phi_t(engine, t, order)?.sub(&reflected.mul(&exponent.exp()?)?)?;
    Ok(Cor1Sides {
        lhs,
        rhs,
        odd_factors,
    })
}

pub struct Cor2Series {
    /// `sum_{k in I} (zeta_S-star(k) - zeta-star(k)) u_k`.
    pub direct: RS,
    /// `Phi_S-star(X,-Y,-Z) - Phi-star(X,-Y,-Z)`.
    pub substituted: RS,
    /// `-Phi(-X,Y,-Z) E(X,-Y,-Z)`, `E` the even-zeta exponential at `t = 1`.
    pub chain: RS,
}

/// The three series forms of the star-minus-symmetric-star sum.
pub fn cor2_series(engine: &ZetaEngine, order: u32) -> Result<Cor2Series> {
    let mut direct = RS::zero(order);
    for k in crate::index::enumerate_by_u_degree(order, true) {
        if k.is_empty() {
            continue;
        }
        let v = engine.szv(&k, true)?.sub(&engine.zeta_star(&k)?);
        direct.add_to(k.u_exponents(), &v);
    }

    let s_star = phi_bruteforce(engine, &GFParams::new(Variant::SStar, order))?;
    let star = phi_bruteforce(engine, &GFParams::new(Variant::Star, order))?;
    let substituted = s_star.sub(&star)?.sign_substitute(1, -1, -1)?;

    // at t = 1: s(t) = -1, s(1-t) = 0
    let kmax = 2 * order as usize;
    let p_t = power_sums_s(&int(-1), order, kmax)?;
    let mut exponent = RS::zero(order);
    for k in (2..=kmax).step_by(2) {
        let xk = QS::x(order).pow(k as u32)?;
        let diff = p_t[k - 1]
            .sub(&xk)?
            .scale(&Rational::new(2.into(), (k as i64).into()));
        exponent = exponent.add(&real_series(&diff).scale_by(&zeta_k(engine, k as u32)?))?;
    }
    let e = exponent.exp()?.sign_substitute(1, -1, -1)?;
    let phi = phi_bruteforce(engine, &GFParams::new(Variant::Plain, order))?
        .sign_substitute(-1, 1, -1)?;
    let chain = phi.mul(&e)?.neg();
    Ok(Cor2Series {
        direct,
        substituted,
        chain,
    })
}
