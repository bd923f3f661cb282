//! Pointwise evaluation at numeric `(X, Y, Z)`: brute-force sums by weight
//! layer, the Gamma-quotient and exponential closed forms, and the
//! hypergeometric form of the interpolated generating function.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{MzvError, Result};
use crate::gf::params::GFParams;
use crate::gf::phi::WeightedTerm;
use crate::gf::roots::{Branch, RootPair};
use crate::index::{enumerate_indices, Index, UExponents};
use crate::rational::Rational;
use crate::real::RealValue;
use crate::ring::CoefficientRing;
use crate::zeta::ZetaEngine;

/// A numeric sample point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointR3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PointR3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        PointR3 { x, y, z }
    }

    pub fn monomial(&self, e: UExponents) -> f64 {
        self.x.powi(e.i as i32) * self.y.powi(e.j as i32) * self.z.powi(e.k as i32)
    }

    pub fn sign_substitute(&self, sx: f64, sy: f64, sz: f64) -> Self {
        PointR3::new(sx * self.x, sy * self.y, sz * self.z)
    }

    /// Sample points are kept small so brute-force tails stay geometric.
    pub fn check_sample(&self) -> Result<()> {
        if self.x.abs() > 0.25 || self.y.abs() > 0.25 || self.z.abs() > 0.05 {
            return Err(MzvError::Precondition(format!(
                "sample point {self} outside |X|,|Y| <= 0.25, |Z| <= 0.05"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PointR3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A brute-force sum over admissible indices, split by weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseSum {
    /// Partial sum plus the extrapolated tail.
    pub value: f64,
    pub error: f64,
    /// `layers[w]` is the contribution of weight `w`.
    pub layers: Vec<f64>,
    pub tail: f64,
    /// Observed per-layer decay ratio.
    pub rho: f64,
}

const MAX_RHO: f64 = 0.3;

/// Sum `f(k) u_k` over admissible `k` of weight `<= max_weight`.
///
/// The decay ratio comes from the absolute layer sums, since signed layers
/// can cancel exactly (at `X = -Y` every fourth one does). The signed tail
/// is extrapolated only when the last layers look geometric.
pub fn pointwise_sum<F>(point: &PointR3, max_weight: u32, mut f: F) -> Result<PointwiseSum>
where
    F: FnMut(&Index) -> Result<RealValue>,
{
    if max_weight < 6 {
        return Err(MzvError::InvalidArgument(format!(
            "pointwise sums need weight at least 6, got {max_weight}"
        )));
    }
    let m = max_weight as usize;
    let mut layers = vec![0.0; m + 1];
    let mut abs_layers = vec![0.0; m + 1];
    let mut rounding = 0.0;
    for k in enumerate_indices(max_weight, true) {
        if k.is_empty() {
            continue;
        }
        let mono = point.monomial(k.u_exponents());
        if mono == 0.0 {
            continue;
        }
        let v = f(&k)?;
        let w = k.weight() as usize;
        layers[w] += v.to_f64() * mono;
        abs_layers[w] += (v.to_f64() * mono).abs();
        rounding += (v.error() + v.abs_f64() * f64::EPSILON) * mono.abs();
    }
    let ratio = |i: usize| {
        if abs_layers[i] == 0.0 {
            0.0
        } else {
            abs_layers[i] / abs_layers[i - 1]
        }
    };
    let rho = if abs_layers[m - 1] == 0.0 && abs_layers[m] != 0.0 {
        f64::INFINITY
    } else {
        ratio(m).max(ratio(m - 1))
    };
    if rho > MAX_RHO {
        return Err(MzvError::Divergence(format!(
            "weight layers at {point} decay with ratio {rho:.3} > {MAX_RHO}"
        )));
    }
    let geometric = layers[m - 1] != 0.0 && layers[m - 2] != 0.0 && {
        let (r1, r2) = (layers[m] / layers[m - 1], layers[m - 1] / layers[m - 2]);
        (r1 - r2).abs() <= 0.1 * r2.abs() && r1.abs() <= rho
    };
    let tail = if geometric {
        let r = layers[m] / layers[m - 1];
        layers[m] * r / (1.0 - r)
    } else {
        0.0
    };
    let partial: f64 = layers.iter().sum();
    let value = partial + tail;
    let error =
        2.0 * abs_layers[m] * rho / (1.0 - rho) + rounding + value.abs() * f64::EPSILON * m as f64;
    Ok(PointwiseSum {
        value,
        error,
        layers,
        tail,
        rho,
    })
}

/// Brute-force generating function of any variant at a point.
pub fn phi_pointwise(
    engine: &ZetaEngine,
    params: &GFParams,
    point: &PointR3,
    max_weight: u32,
) -> Result<PointwiseSum> {
    let term = WeightedTerm::new(params);
    pointwise_sum(point, max_weight, |k| term.eval(engine, k))
}

/// Brute-force `Phi^t` at a point.
pub fn phi_t_pointwise(
    engine: &ZetaEngine,
    t: &Rational,
    point: &PointR3,
    max_weight: u32,
) -> Result<PointwiseSum> {
    phi_pointwise(
        engine,
        &GFParams::interpolated(t.clone(), 2),
        point,
        max_weight,
    )
}

/// Brute-force `sum_{k in I} zeta^t(k) u_k`, without the `(1-2t)^{dep}`
/// weight. This is the sum the hypergeometric form reproduces.
pub fn lq_series_pointwise(
    engine: &ZetaEngine,
    t: &Rational,
    point: &PointR3,
    max_weight: u32,
) -> Result<PointwiseSum> {
    let t = RealValue::from_rational(t);
    pointwise_sum(point, max_weight, |k| engine.zeta_t(k, &t))
}

/// Brute-force `sum (zeta_S*(k) - zeta*(k)) u_k` at a point.
pub fn cor2_series_pointwise(
    engine: &ZetaEngine,
    point: &PointR3,
    max_weight: u32,
) -> Result<PointwiseSum> {
    pointwise_sum(point, max_weight, |k| {
        Ok(engine.szv(k, true)?.sub(&engine.zeta_star(k)?))
    })
}

fn ln_gamma_checked(arg: f64, what: &str) -> Result<f64> {
    if !(arg > 0.0 && arg.is_finite()) {
        return Err(MzvError::Precondition(format!(
            "Gamma argument {what} = {arg} must be positive"
        )));
    }
    Ok(ln_gamma(arg))
}

fn real_roots(e1: f64, e2: f64, what: &str) -> Result<(f64, f64)> {
    let disc = e1 * e1 - 4.0 * e2;
    if disc.is_nan() || disc <= 0.0 {
        return Err(MzvError::Precondition(format!(
            "discriminant of {what} is {disc:e}; real distinct roots are required"
        )));
    }
    let r = RootPair::new(e1, e2, Branch::Standard);
    Ok((r.alpha.re, r.beta.re))
}

fn lagrange(nodes: &[f64], values: &[f64], u: f64) -> f64 {
    let mut acc = 0.0;
    for (i, (&xi, &vi)) in nodes.iter().zip(values).enumerate() {
        let mut w = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if i != j {
                w *= (u - xj) / (xi - xj);
            }
        }
        acc += w * vi;
    }
    acc
}

const SINGULAR_STEP: f64 = 1e-3;
const BRACKET_EPS: f64 = 1e-15;

/// `z g(z) / (xy - z)` where `g(xy) = 0`. Near `z = xy` the quotient is
/// interpolated from nodes on both sides of the removable singularity.
fn removable<G>(x: f64, y: f64, z: f64, g: G) -> Result<RealValue>
where
    G: Fn(f64) -> Result<f64>,
{
    let zs = x * y;
    let d = zs - z;
    if d.abs() >= SINGULAR_STEP {
        let v = z * g(z)? / d;
        let err = BRACKET_EPS * (z / d).abs() + v.abs() * 4.0 * f64::EPSILON;
        return Ok(RealValue::exact(v).with_extra_error(err));
    }
    // shrink the stencil until every node has real roots
    let mut h = SINGULAR_STEP;
    let mut values = [0.0; 6];
    let nodes = loop {
        let nodes = [-3.0 * h, -2.0 * h, -h, h, 2.0 * h, 3.0 * h];
        let attempt: Result<Vec<f64>> = nodes.iter().map(|&u| Ok(g(zs + u)? / -u)).collect();
        match attempt {
            Ok(v) => {
                values.copy_from_slice(&v);
                break nodes;
            }
            Err(e) if h < SINGULAR_STEP / 64.0 => return Err(e),
            Err(_) => h /= 2.0,
        }
    };
    let u0 = z - zs;
    let fine = lagrange(&nodes, &values, u0);
    let coarse = lagrange(&nodes[1..5], &values[1..5], u0);
    let err = z.abs() * ((fine - coarse).abs() + 10.0 * BRACKET_EPS / h);
    Ok(RealValue::exact(z * fine).with_extra_error(err))
}

/// `Z/(XY-Z) (1 - Gamma(1-X)Gamma(1-Y)/(Gamma(1-alpha)Gamma(1-beta)))` with
/// `alpha + beta = X + Y`, `alpha beta = Z`.
pub fn oz_gamma_pointwise(point: &PointR3) -> Result<RealValue> {
    let PointR3 { x, y, z } = *point;
    if z == 0.0 {
        return Ok(RealValue::exact(0.0));
    }
    let fixed = ln_gamma_checked(1.0 - x, "1-X")? + ln_gamma_checked(1.0 - y, "1-Y")?;
    real_roots(x + y, z, "l^2 - (X+Y)l + Z")?;
    removable(x, y, z, |z| {
        let (a, b) = real_roots(x + y, z, "l^2 - (X+Y)l + Z")?;
        let l =
            fixed - ln_gamma_checked(1.0 - a, "1-alpha")? - ln_gamma_checked(1.0 - b, "1-beta")?;
        Ok(-l.exp_m1())
    })
}

/// `Z/(XY-Z) (Gamma(1+X)Gamma(1-Y)/(Gamma(1-eta)Gamma(1-xi)) - 1)` with
/// `eta + xi = -X + Y`, `eta xi = -Z`.
pub fn cor2_gamma_pointwise(point: &PointR3) -> Result<RealValue> {
    let PointR3 { x, y, z } = *point;
    if z == 0.0 {
        return Ok(RealValue::exact(0.0));
    }
    let fixed = ln_gamma_checked(1.0 + x, "1+X")? + ln_gamma_checked(1.0 - y, "1-Y")?;
    real_roots(y - x, -z, "l^2 - (-X+Y)l - Z")?;
    removable(x, y, z, |z| {
        let (eta, xi) = real_roots(y - x, -z, "l^2 - (-X+Y)l - Z")?;
        let l = fixed - ln_gamma_checked(1.0 - eta, "1-eta")? - ln_gamma_checked(1.0 - xi, "1-xi")?;
        Ok(l.exp_m1())
    })
}

const EXP_TERM_CUTOFF: f64 = 1e-18;
const EXP_MAX_K: u32 = 4000;

/// The exponential closed form at a point. The exponent vanishes on
/// `XY = Z`, so it is written as `(XY - Z) T` and the prefactor cancels.
pub fn oz_exp_pointwise(engine: &ZetaEngine, point: &PointR3) -> Result<RealValue> {
    let PointR3 { x, y, z } = *point;
    let e1 = x + y;
    // d_k = (p_k(Z) - p_k(XY)) / (Z - XY) for the power sums of the roots
    let (mut d_prev, mut d_cur) = (0.0_f64, 0.0_f64);
    let mut t_sum = 0.0;
    let mut last = f64::INFINITY;
    let mut k = 2;
    loop {
        let d_next = e1 * d_cur - z * d_prev - (x.powi(k as i32 - 2) + y.powi(k as i32 - 2));
        d_prev = d_cur;
        d_cur = d_next;
        let term = engine.zeta(&Index::single(k))?.to_f64() / k as f64 * d_cur;
        t_sum += term;
        if term.abs() < EXP_TERM_CUTOFF && last.abs() < EXP_TERM_CUTOFF {
            break;
        }
        last = term;
        k += 1;
        if k > EXP_MAX_K {
            return Err(MzvError::Divergence(format!(
                "exponent series at {point} still has terms of size {:e} at k = {EXP_MAX_K}",
                term.abs()
            )));
        }
    }
    let s = (x * y - z) * t_sum;
    let factor = if s == 0.0 { 1.0 } else { s.exp_m1() / s };
    let v = -z * t_sum * factor;
    let err = v.abs() * 16.0 * f64::EPSILON * (k as f64).sqrt() + z.abs() * 2.0 * EXP_TERM_CUTOFF;
    Ok(RealValue::exact(v).with_extra_error(err))
}

/// `exp(sum_{k even} 2 zeta(k)/k (p_k - X^k))` at `(X, -Y, -Z)`, where `p_k`
/// are the power sums of the roots of `l^2 - (X+Y) l + (XY - Z)`. This is
/// the factor the modulo-`zeta(2)` statement drops.
pub fn cor2_exp_factor_pointwise(engine: &ZetaEngine, point: &PointR3) -> Result<RealValue> {
    let PointR3 { x, y, z } = *point;
    let (e1, e2) = (x + y, x * y - z);
    let (mut p_prev, mut p_cur) = (2.0_f64, e1);
    let mut acc = 0.0;
    let mut quiet = 0;
    let mut k = 1;
    while quiet < 2 {
        k += 1;
        let p_next = e1 * p_cur - e2 * p_prev;
        p_prev = p_cur;
        p_cur = p_next;
        if k % 2 == 1 {
            continue;
        }
        let term =
            2.0 * engine.zeta(&Index::single(k))?.to_f64() / k as f64 * (p_cur - x.powi(k as i32));
        acc += term;
        quiet = if term.abs() < EXP_TERM_CUTOFF {
            quiet + 1
        } else {
            0
        };
        if k > EXP_MAX_K {
            return Err(MzvError::Divergence(format!(
                "even-zeta exponent at {point} does not converge"
            )));
        }
    }
    let v = acc.exp();
    Ok(RealValue::exact(v)
        .with_extra_error(v * (8.0 * f64::EPSILON * (k as f64).sqrt() + 4.0 * EXP_TERM_CUTOFF)))
}

/// Result of the hypergeometric evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LqValue {
    pub value: f64,
    pub error: f64,
    pub terms: usize,
    pub branch: Branch,
    pub alpha_t: (f64, f64),
    pub beta_t: (f64, f64),
}

const LQ_MAX_TERMS: usize = 10_000_000;

/// `Z/((1-Y)(1-beta_t)) 3F2(1+alpha_{t-1}-beta_t, 1+beta_{t-1}-beta_t, 1;
/// 2-Y, 2-beta_t; 1)`, summed until the tail estimate drops below `eps`.
///
/// The `t-1` pair may be complex: the series is symmetric in its first two
/// parameters, so only the branch of `beta_t` matters.
pub fn lq_pointwise(t: f64, point: &PointR3, eps: f64, branch: Branch) -> Result<LqValue> {
    let PointR3 { x, y, z } = *point;
    let pair = RootPair::for_s(t, x, y, z, branch);
    let prev = RootPair::for_s(t - 1.0, x, y, z, Branch::Standard);
    let c2 = |c: Complex64| (c.re, c.im);
    if z == 0.0 {
        return Ok(LqValue {
            value: 0.0,
            error: 0.0,
            terms: 0,
            branch,
            alpha_t: c2(pair.alpha),
            beta_t: c2(pair.beta),
        });
    }
    if pair.beta.im.abs() > 0.0 {
        return Err(MzvError::Precondition(format!(
            "beta_t = {} is not real at {point}",
            pair.beta
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let (alpha, beta) = (pair.alpha, pair.beta);
    if y == 1.0 || beta == one {
        return Err(MzvError::Precondition(format!(
            "prefactor Z/((1-Y)(1-beta_t)) is singular at {point}"
        )));
    }
    let a = one + prev.alpha - beta;
    let b = one + prev.beta - beta;
    let c = Complex64::new(2.0 - y, 0.0);
    let d = 2.0 * one - beta;
    for (name, p) in [("2-Y", c), ("2-beta_t", d)] {
        if p.im == 0.0 && p.re <= 0.0 && p.re.fract() == 0.0 {
            return Err(MzvError::Precondition(format!(
                "lower parameter {name} = {} is a pole",
                p.re
            )));
        }
    }
    let q = 2.0 * one - alpha;
    if q.re <= 1.0 {
        return Err(MzvError::Divergence(format!(
            "terms decay like n^(alpha_t - 2) with alpha_t = {alpha}, which is not summable"
        )));
    }
    let pref = z / ((1.0 - y) * (one - beta));
    let spread = 1.0 + (a.norm() + b.norm() + c.norm() + d.norm()).powi(2);
    let mut term = one;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n = 0usize;
    loop {
        sum += term;
        let nf = n as f64;
        term *= (nf + a) * (nf + b) / ((nf + c) * (nf + d));
        n += 1;
        if n >= 8 {
            let big_n = n as f64;
            let tail = term * (big_n / (q - 1.0) + 0.5 + q / (12.0 * big_n));
            let err = term.norm() * spread / (q - 1.0).norm();
            if err * pref.norm() < eps {
                let total = pref * (sum + tail);
                return Ok(LqValue {
                    value: total.re,
                    error: err * pref.norm()
                        + total.im.abs()
                        + total.norm() * f64::EPSILON * (big_n.sqrt() + 4.0),
                    terms: n,
                    branch,
                    alpha_t: c2(alpha),
                    beta_t: c2(beta),
                });
            }
        }
        if n >= LQ_MAX_TERMS {
            return Err(MzvError::Accuracy(format!(
                "hypergeometric series at {point} needs more than {LQ_MAX_TERMS} terms for eps = {eps:e}"
            )));
        }
    }
}
