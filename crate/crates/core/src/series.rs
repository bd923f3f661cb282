//! Truncated power series in `X, Y, Z`.
//!
//! Truncation is by total degree `i + j + k <= N`. Storage is dense: degree
//! blocks in increasing order, and inside a block of degree `d` the monomial
//! `X^i Y^j Z^k` sits at `(d - i)(d - i + 1)/2 + k`.

use std::fmt;

use crate::error::{MzvError, Result};
use crate::index::UExponents;
use crate::rational::Rational;
use crate::ring::CoefficientRing;

fn block_start(d: u32) -> usize {
    let d = d as usize;
    d * (d + 1) * (d + 2) / 6
}

fn slot(i: u32, j: u32, k: u32) -> usize {
    let d = i + j + k;
    let a = (d - i) as usize;
    block_start(d) + a * (a + 1) / 2 + k as usize
}

/// Monomials of total degree exactly `d`, in storage order.
fn monomials_of_degree(d: u32) -> impl Iterator<Item = UExponents> {
    (0..=d)
        .rev()
        .flat_map(move |i| (0..=d - i).map(move |k| UExponents { i, j: d - i - k, k }))
}

#[derive(Clone, PartialEq)]
pub struct Series3<C> {
    order: u32,
    coeffs: Vec<C>,
}

impl<C: CoefficientRing> Series3<C> {
    pub fn zero(order: u32) -> Self {
        Series3 {
            order,
            coeffs: vec![C::zero(); block_start(order + 1)],
        }
    }

    pub fn constant(order: u32, c: C) -> Self {
        let mut s = Series3::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: u32) -> Self {
        Series3::constant(order, C::one())
    }

    /// `c X^i Y^j Z^k`, or zero if the monomial lies beyond the order.
    pub fn monomial(order: u32, e: UExponents, c: C) -> Self {
        let mut s = Series3::zero(order);
        s.add_to(e, &c);
        s
    }

    pub fn x(order: u32) -> Self {
        Series3::monomial(order, UExponents { i: 1, j: 0, k: 0 }, C::one())
    }

    pub fn y(order: u32) -> Self {
        Series3::monomial(order, UExponents { i: 0, j: 1, k: 0 }, C::one())
    }

    pub fn z(order: u32) -> Self {
        Series3::monomial(order, UExponents { i: 0, j: 0, k: 1 }, C::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, e: UExponents) -> C {
        if e.total_degree() > self.order {
            return C::zero();
        }
        self.coeffs[slot(e.i, e.j, e.k)].clone()
    }

    pub fn get(&self, i: u32, j: u32, k: u32) -> C {
        self.coeff(UExponents { i, j, k })
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn set(&mut self, e: UExponents, c: C) {
        if e.total_degree() <= self.order {
            self.coeffs[slot(e.i, e.j, e.k)] = c;
        }
    }

    /// Add `c` to a coefficient; silently drops monomials beyond the order.
    pub fn add_to(&mut self, e: UExponents, c: &C) {
        if e.total_degree() <= self.order {
            let s = slot(e.i, e.j, e.k);
            self.coeffs[s] = self.coeffs[s].add(c);
        }
    }

    /// All monomials with their coefficients, in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (UExponents, &C)> {
        (0..=self.order)
            .flat_map(monomials_of_degree)
            .zip(self.coeffs.iter())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(MzvError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series3 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, C::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, C::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let s = C::from_rational(q);
        self.map(|c| c.mul(&s))
    }

    pub fn scale_by(&self, s: &C) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Series3 {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficientwise conversion into another ring.
    pub fn map_into<D: CoefficientRing>(&self, f: impl Fn(&C) -> D) -> Series3<D> {
        Series3 {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Change the truncation order, dropping or zero-filling as needed.
    pub fn with_order(&self, order: u32) -> Self {
        let mut out = Series3::zero(order);
        let n = out.coeffs.len().min(self.coeffs.len());
        out.coeffs[..n].clone_from_slice(&self.coeffs[..n]);
        out
    }

    fn block(&self, d: u32) -> &[C] {
        &self.coeffs[block_start(d)..block_start(d + 1)]
    }

    /// Add `scale * a_{d1} * b_{d2}` (homogeneous blocks) into `out`.
    fn accumulate_block_product(
        out: &mut [C],
        a: &[C],
        d1: u32,
        b: &[C],
        d2: u32,
        scale: Option<i64>,
    ) {
        for (ea, ca) in monomials_of_degree(d1).zip(a) {
            if ca.is_zero() {
                continue;
            }
            let ca = match scale {
                Some(n) if n != 1 => ca.mul(&C::from_int(n)),
                _ => ca.clone(),
            };
            for (eb, cb) in monomials_of_degree(d2).zip(b) {
                if cb.is_zero() {
                    continue;
                }
                let e = ea + eb;
                let s = slot(e.i, e.j, e.k) - block_start(d1 + d2);
                out[s] = out[s].add(&ca.mul(cb));
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Series3::zero(self.order);
        for d in 0..=self.order {
            let mut blk = out.block(d).to_vec();
            for d1 in 0..=d {
                Self::accumulate_block_product(
                    &mut blk,
                    self.block(d1),
                    d1,
                    other.block(d - d1),
                    d - d1,
                    None,
                );
            }
            let start = block_start(d);
            out.coeffs[start..start + blk.len()].clone_from_slice(&blk);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Series3::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `exp(f)` for `f` with zero constant term, via `d g_d = sum_j j f_j g_{d-j}`
    /// on homogeneous components.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(MzvError::ConstantTerm { expected: "zero" });
        }
        let mut g = Series3::one(self.order);
        for d in 1..=self.order {
            let mut blk = vec![C::zero(); block_start(d + 1) - block_start(d)];
            for j in 1..=d {
                Self::accumulate_block_product(
                    &mut blk,
                    self.block(j),
                    j,
                    g.block(d - j),
                    d - j,
                    Some(j as i64),
                );
            }
            let start = block_start(d);
            for (s, c) in blk.iter().enumerate() {
                g.coeffs[start + s] = c.div_int(d as i64);
            }
        }
        Ok(g)
    }

    /// `log(g)` for `g` with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(MzvError::ConstantTerm { expected: "one" });
        }
        let mut f = Series3::zero(self.order);
        for d in 1..=self.order {
            let mut blk: Vec<C> = self
                .block(d)
                .iter()
                .map(|c| c.mul(&C::from_int(d as i64)))
                .collect();
            let mut sub = vec![C::zero(); blk.len()];
            for j in 1..d {
                Self::accumulate_block_product(
                    &mut sub,
                    f.block(j),
                    j,
                    self.block(d - j),
                    d - j,
                    Some(j as i64),
                );
            }
            for (b, s) in blk.iter_mut().zip(&sub) {
                *b = b.sub(s).div_int(d as i64);
            }
            let start = block_start(d);
            f.coeffs[start..start + blk.len()].clone_from_slice(&blk);
        }
        Ok(f)
    }

    /// `(X, Y, Z) -> (lX, lY, l^2 Z)`: the coefficient of `X^i Y^j Z^k` picks
    /// up `l^{i+j+2k}`.
    pub fn weight_rescale(&self, lambda: &C) -> Self {
        let max_w = 2 * self.order as usize;
        let mut powers = Vec::with_capacity(max_w + 1);
        powers.push(C::one());
        for n in 1..=max_w {
            let p = powers[n - 1].mul(lambda);
            powers.push(p);
        }
        let mut out = self.clone();
        for (e, c) in self.iter() {
            let w = (e.i + e.j + 2 * e.k) as usize;
            out.coeffs[slot(e.i, e.j, e.k)] = c.mul(&powers[w]);
        }
        out
    }

    /// Scale each coefficient by `sx^i sy^j sz^k` for signs in `{+1, -1}`.
    pub fn sign_substitute(&self, sx: i8, sy: i8, sz: i8) -> Result<Self> {
        for s in [sx, sy, sz] {
            if s != 1 && s != -1 {
                return Err(MzvError::InvalidArgument(format!(
                    "sign must be +1 or -1, got {s}"
                )));
            }
        }
        let mut out = self.clone();
        for (e, c) in self.iter() {
            let odd = |s: i8, n: u32| s == -1 && n % 2 == 1;
            let flips = [odd(sx, e.i), odd(sy, e.j), odd(sz, e.k)]
                .iter()
                .filter(|&&b| b)
                .count();
            if flips % 2 == 1 {
                out.coeffs[slot(e.i, e.j, e.k)] = c.neg();
            }
        }
        Ok(out)
    }

    /// Largest absolute coefficient difference plus the per-monomial table.
    pub fn deviations(&self, other: &Self) -> Result<(f64, Vec<(UExponents, f64)>)> {
        self.check_order(other)?;
        let devs: Vec<(UExponents, f64)> = self
            .iter()
            .zip(other.coeffs.iter())
            .map(|((e, a), b)| (e, a.abs_dev(b)))
            .collect();
        let max = devs.iter().map(|d| d.1).fold(0.0, f64::max);
        Ok((max, devs))
    }

    pub fn max_error_bound(&self) -> f64 {
        self.coeffs.iter().map(C::error_bound).fold(0.0, f64::max)
    }
}

/// Power sums `p_1, ..., p_K` of the two roots with elementary symmetric
/// functions `e1, e2`.
pub fn newton_power_sums<C: CoefficientRing>(
    e1: &Series3<C>,
    e2: &Series3<C>,
    k: usize,
) -> Result<Vec<Series3<C>>> {
    if k == 0 {
        return Err(MzvError::InvalidArgument(
            "need at least one power sum".into(),
        ));
    }
    e1.check_order(e2)?;
    let mut p: Vec<Series3<C>> = Vec::with_capacity(k);
    p.push(e1.clone());
    if k >= 2 {
        p.push(
            e1.mul(e1)?
                .sub(&e2.scale(&Rational::from_integer(2.into())))?,
        );
    }
    for n in 2..k {
        let next = e1.mul(&p[n - 1])?.sub(&e2.mul(&p[n - 2])?)?;
        p.push(next);
    }
    Ok(p)
}

impl<C: CoefficientRing> fmt::Debug for Series3<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (e, c) in self.iter() {
            if !c.is_zero() {
                m.entry(&(e.i, e.j, e.k), c);
            }
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::c_poly;
    use crate::poly::TPoly;
    use crate::rational::{factorial, int, rat};
    use proptest::prelude::*;

    type QS = Series3<Rational>;

    fn e(i: u32, j: u32, k: u32) -> UExponents {
        UExponents { i, j, k }
    }

    #[test]
    fn storage_layout_is_a_bijection() {
        let n = 7;
        let mut seen = vec![false; block_start(n + 1)];
        for d in 0..=n {
            for m in monomials_of_degree(d) {
                let s = slot(m.i, m.j, m.k);
                assert!(!seen[s]);
                seen[s] = true;
            }
        }
        assert!(seen.into_iter().all(|b| b));
        assert_eq!(block_start(11), 286);
    }

    #[test]
    fn small_products() {
        let one = QS::one(3);
        let x = QS::x(3);
        let a = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        let expected = one.sub(&x.mul(&x).unwrap()).unwrap();
        assert_eq!(a, expected);

        let x3 = x.pow(3).unwrap();
        assert_eq!(x3.mul(&x).unwrap(), QS::zero(3));
        assert_eq!(x3.scale(&int(0)), QS::zero(3));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert!(matches!(
            QS::x(3).add(&QS::x(4)),
            Err(MzvError::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn exp_and_log_examples() {
        let n = 2;
        let s = QS::x(n).add(&QS::y(n)).unwrap();
        let expected = QS::one(n)
            .add(&s)
            .unwrap()
            .add(&s.mul(&s).unwrap().scale(&rat(1, 2)))
            .unwrap();
        assert_eq!(s.exp().unwrap(), expected);

        let f = QS::x(6).add(&QS::z(6).scale(&int(2))).unwrap();
        assert_eq!(f.exp().unwrap().log().unwrap(), f);

        let bad = QS::one(4).add(&QS::x(4)).unwrap();
        assert!(matches!(bad.exp(), Err(MzvError::ConstantTerm { .. })));
        assert!(matches!(QS::x(4).log(), Err(MzvError::ConstantTerm { .. })));
    }

    #[test]
    fn rescale_and_signs() {
        let z = QS::z(4);
        assert_eq!(z.weight_rescale(&int(3)), z.scale(&int(9)));
        let xy = QS::x(4).mul(&QS::y(4)).unwrap();
        assert_eq!(xy.weight_rescale(&int(-1)), xy);
        assert_eq!(xy.weight_rescale(&int(1)), xy);

        let yz = QS::monomial(4, e(0, 1, 1), int(5));
        assert_eq!(yz.sign_substitute(1, -1, -1).unwrap(), yz);
        let f = QS::monomial(4, e(1, 2, 1), int(1))
            .add(&QS::monomial(4, e(0, 1, 0), int(3)))
            .unwrap();
        assert_eq!(f.sign_substitute(1, 1, 1).unwrap(), f);
        let g = f.sign_substitute(-1, -1, 1).unwrap();
        assert_ne!(g, f);
        assert_eq!(g.sign_substitute(-1, -1, 1).unwrap(), f);
        assert!(f.sign_substitute(2, 1, 1).is_err());
    }

    #[test]
    fn newton_examples() {
        let n = 6;
        let e1 = QS::x(n).add(&QS::y(n)).unwrap();
        let e2 = QS::z(n);
        let p = newton_power_sums(&e1, &e2, 3).unwrap();
        let expected = e1.mul(&e1).unwrap().sub(&e2.scale(&int(2))).unwrap();
        assert_eq!(p[1], expected);
        assert_eq!(p[1].get(1, 1, 0), int(2));
        assert_eq!(p[1].get(0, 0, 1), int(-2));

        let p = newton_power_sums(&QS::x(n), &QS::zero(n), n as usize).unwrap();
        for (k, pk) in p.iter().enumerate() {
            assert_eq!(*pk, QS::x(n).pow(k as u32 + 1).unwrap());
        }
    }

    // One auxiliary variable T carried by the X slot; e1, e2 are rational
    // constants so both sides live in Q[[T]].
    #[test]
    fn newton_sums_match_log_expansion() {
        let n = 10u32;
        for (a, b) in [(int(3), int(2)), (rat(1, 2), rat(-7, 3)), (int(0), int(5))] {
            let t = QS::x(n);
            let e1 = QS::constant(n, a.clone());
            let e2 = QS::constant(n, b.clone());
            let p = newton_power_sums(&e1, &e2, n as usize).unwrap();
            let mut lhs = QS::zero(n);
            for (k, pk) in p.iter().enumerate() {
                let k = k as u32 + 1;
                let term = pk.mul(&t.pow(k).unwrap()).unwrap().scale(&rat(1, k as i64));
                lhs = lhs.add(&term).unwrap();
            }
            let quad = QS::one(n)
                .sub(&t.scale(&a))
                .unwrap()
                .add(&t.mul(&t).unwrap().scale(&b))
                .unwrap();
            assert_eq!(lhs, quad.log().unwrap().neg());
        }
    }

    // sum_r (1-2t)^r/r! c_r(t) u^r = -log((1 - t(1-2t)u)/(1 - (1-t)(2t-1)u))
    // in Q[t][[u]], u carried by the X slot.
    #[test]
    fn c_poly_log_identity() {
        type PS = Series3<TPoly<Rational>>;
        let n = 10u32;
        let tvar = TPoly::<Rational>::var();
        let one = TPoly::<Rational>::one();
        let one_minus_2t = one.sub(&tvar.scale(&int(2)));
        let u = PS::x(n);

        let mut lhs = PS::zero(n);
        for r in 1..=n {
            let c = TPoly::new(c_poly(r).unwrap().coeffs().to_vec());
            let coeff = one_minus_2t
                .pow(r)
                .mul(&c)
                .scale(&Rational::new(1.into(), factorial(r)));
            lhs = lhs.add(&u.pow(r).unwrap().scale_by(&coeff)).unwrap();
        }

        let s1 = tvar.mul(&one_minus_2t);
        let s2 = one.sub(&tvar).mul(&tvar.scale(&int(2)).sub(&one));
        let num = PS::one(n).sub(&u.scale_by(&s1)).unwrap();
        let den = PS::one(n).sub(&u.scale_by(&s2)).unwrap();
        let rhs = den.log().unwrap().sub(&num.log().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    fn arb_series(n: u32) -> impl Strategy<Value = QS> {
        let len = block_start(n + 1);
        proptest::collection::vec((-5i64..=5, 1i64..=4), len).prop_map(move |v| {
            let mut s = QS::zero(n);
            for (slot, (p, q)) in v.into_iter().enumerate() {
                s.coeffs[slot] = rat(p, q);
            }
            s
        })
    }

    fn without_constant(mut s: QS) -> QS {
        s.coeffs[0] = int(0);
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn ring_laws(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn exp_is_a_homomorphism(f in arb_series(6), g in arb_series(6)) {
            let (f, g) = (without_constant(f), without_constant(g));
            let lhs = f.add(&g).unwrap().exp().unwrap();
            let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
        }

        #[test]
        fn rescale_is_multiplicative(f in arb_series(6), g in arb_series(6), p in -3i64..=3, q in 1i64..=3) {
            let l = rat(p, q);
            prop_assert_eq!(
                f.mul(&g).unwrap().weight_rescale(&l),
                f.weight_rescale(&l).mul(&g.weight_rescale(&l)).unwrap()
            );
        }
    }
}
