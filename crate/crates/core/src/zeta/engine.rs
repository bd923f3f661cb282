//! The evaluation engine: memoized MZVs, regularized values, and the derived
//! variants.
//!
//! Regularized values of non-admissible words are computed numerically from
//! the same recursion the exact regularizer uses: for `w = v z_1^m`,
//! `(v z_1^{m-1}) * z_1 = m w + R` with fewer trailing ones in every word of
//! `R`, so `reg(w) = (reg(v z_1^{m-1}) T - reg(R)) / m`.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

use crate::error::Result;
use crate::index::Index;
use crate::poly::TPoly;
use crate::quasi_shuffle::{stuffle_word_pair, RegMode};
use crate::rational::Rational;
use crate::real::RealValue;
use crate::ring::CoefficientRing;
use crate::zeta::cache::{ZetaCache, ZetaCacheEntry};
use crate::zeta::direct::eval_zeta_direct;
use crate::zeta::holder::HolderEvaluator;

pub const DEFAULT_EPS: f64 = 1e-30;

struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(RwLock::new(HashMap::new()))
    }

    fn get_or_try(&self, key: &K, f: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.0.read().expect("memo lock").get(key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.0
            .write()
            .expect("memo lock")
            .insert(key.clone(), v.clone());
        Ok(v)
    }

    fn len(&self) -> usize {
        self.0.read().expect("memo lock").len()
    }
}

/// `sum_{i=0}^{r} f(k_1..k_i) f(k_r..k_{i+1}) g(wt prefix, wt suffix)`.
pub fn split_sum<C: CoefficientRing>(
    index: &Index,
    mut f: impl FnMut(&Index) -> Result<C>,
    mut g: impl FnMut(u32, u32) -> C,
) -> Result<C> {
    let r = index.depth() as usize;
    let total = index.weight();
    let mut acc = C::zero();
    let mut pre_w = 0;
    for i in 0..=r {
        if i > 0 {
            pre_w += index.parts()[i - 1];
        }
        let pre = f(&index.prefix(i))?;
        let suf = f(&index.suffix(i).reversed())?;
        acc = acc.add(&pre.mul(&suf).mul(&g(pre_w, total - pre_w)));
    }
    Ok(acc)
}

/// The non-admissible word's regularization relation: the shorter word
/// `v z_1^{m-1}`, the remainder `R`, and `m`.
fn reg_relation(w: &Index) -> (Index, Vec<(Index, Rational)>, i64) {
    let m = w.trailing_ones();
    let (base, _) = w.split_last().expect("non-admissible words are nonempty");
    let product = stuffle_word_pair(&base, &Index::single(1));
    let rest = product
        .iter()
        .filter(|(u, _)| *u != w)
        .map(|(u, c)| (u.clone(), c.clone()))
        .collect();
    (base, rest, m as i64)
}

fn powers(x: &RealValue, n: u32) -> Vec<RealValue> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(RealValue::one());
    for i in 1..=n as usize {
        let p = out[i - 1].mul(x);
        out.push(p);
    }
    out
}

/// Thread-safe memoizing evaluator for all zeta variants.
pub struct ZetaEngine {
    eps: f64,
    holder: HolderEvaluator,
    cache: Option<ZetaCache>,
    mzv: Memo<Index, RealValue>,
    reg0: Memo<Index, RealValue>,
    reg_sym: Memo<Index, TPoly<RealValue>>,
    zt: Memo<Index, TPoly<RealValue>>,
    zt_sym: Memo<Index, TPoly<TPoly<RealValue>>>,
}

impl Default for ZetaEngine {
    fn default() -> Self {
        ZetaEngine::new(DEFAULT_EPS)
    }
}

impl ZetaEngine {
    /// `eps` is the target absolute error for each admissible MZV.
    pub fn new(eps: f64) -> Self {
        ZetaEngine {
            eps,
            holder: HolderEvaluator::new(eps),
            cache: None,
            mzv: Memo::new(),
            reg0: Memo::new(),
            reg_sym: Memo::new(),
            zt: Memo::new(),
            zt_sym: Memo::new(),
        }
    }

    pub fn with_cache(mut self, cache: ZetaCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn cache(&self) -> Option<&ZetaCache> {
        self.cache.as_ref()
    }

    /// Number of memoized admissible values.
    pub fn memo_size(&self) -> usize {
        self.mzv.len()
    }

    /// `zeta(k)` for admissible `k`; the empty index gives 1.
    pub fn zeta(&self, index: &Index) -> Result<RealValue> {
        if index.is_empty() {
            return Ok(RealValue::one());
        }
        crate::zeta::holder::check_admissible(index)?;
        self.mzv.get_or_try(index, || {
            if let Some(cache) = &self.cache {
                if let Some(v) = cache
                    .get(index, "plain")
                    .filter(|e| e.error <= self.eps)
                    .and_then(|e| e.real_value())
                {
                    return Ok(v);
                }
            }
            let v = self.holder.eval(index)?;
            if let Some(cache) = &self.cache {
                cache.put(ZetaCacheEntry::new(index.clone(), "plain", &v, "holder"))?;
            }
            Ok(v)
        })
    }

    /// Independent direct-summation value (f64 accuracy).
    pub fn zeta_direct(&self, index: &Index) -> Result<RealValue> {
        eval_zeta_direct(index, 1e-12)
    }

    /// Regularized value with `T = 0`.
    pub fn zeta_reg0(&self, w: &Index) -> Result<RealValue> {
        if w.is_admissible() {
            return self.zeta(w);
        }
        self.reg0.get_or_try(w, || {
            let (_, rest, m) = reg_relation(w);
            let mut acc = RealValue::zero();
            for (u, c) in &rest {
                acc = acc.add(&self.zeta_reg0(u)?.scale(c));
            }
            Ok(acc.neg().div_int(m))
        })
    }

    /// Regularized value as a polynomial in `T`.
    pub fn zeta_reg_sym(&self, w: &Index) -> Result<TPoly<RealValue>> {
        if w.is_admissible() {
            return Ok(TPoly::constant(self.zeta(w)?));
        }
        self.reg_sym.get_or_try(w, || {
            let (base, rest, m) = reg_relation(w);
            let mut acc = self.zeta_reg_sym(&base)?.mul(&TPoly::var());
            for (u, c) in &rest {
                acc = acc.sub(&self.zeta_reg_sym(u)?.scale(c));
            }
            Ok(acc.div_int(m))
        })
    }

    pub fn zeta_reg(&self, w: &Index, mode: RegMode) -> Result<TPoly<RealValue>> {
        match mode {
            RegMode::ConstantTerm => Ok(TPoly::constant(self.zeta_reg0(w)?)),
            RegMode::Symbolic => self.zeta_reg_sym(w),
        }
    }

    /// `zeta^t(k)` as a polynomial in `t` (regularized with `T = 0`).
    pub fn zeta_t_poly(&self, w: &Index) -> Result<TPoly<RealValue>> {
        if w.is_empty() {
            return Ok(TPoly::one());
        }
        self.zt.get_or_try(w, || {
            let mut coeffs = vec![RealValue::zero(); w.depth() as usize];
            for (c, merges) in w.contractions() {
                let slot = &mut coeffs[merges as usize];
                *slot = slot.add(&self.zeta_reg0(&c)?);
            }
            Ok(TPoly::new(coeffs))
        })
    }

    /// `zeta^t(k)` as a polynomial in `t` whose coefficients are polynomials in `T`.
    pub fn zeta_t_poly_sym(&self, w: &Index) -> Result<TPoly<TPoly<RealValue>>> {
        if w.is_empty() {
            return Ok(TPoly::one());
        }
        self.zt_sym.get_or_try(w, || {
            let mut coeffs = vec![TPoly::zero(); w.depth() as usize];
            for (c, merges) in w.contractions() {
                let slot = &mut coeffs[merges as usize];
                *slot = slot.add(&self.zeta_reg_sym(&c)?);
            }
            Ok(TPoly::new(coeffs))
        })
    }

    pub fn zeta_t(&self, w: &Index, t: &RealValue) -> Result<RealValue> {
        Ok(self.zeta_t_poly(w)?.eval(t))
    }

    /// `zeta-star(k)`: the sum over all contractions, regularized with `T = 0`.
    pub fn zeta_star(&self, w: &Index) -> Result<RealValue> {
        w.contractions()
            .iter()
            .try_fold(RealValue::zero(), |acc, (c, _)| {
                Ok(acc.add(&self.zeta_reg0(c)?))
            })
    }

    pub fn zeta_star_sym(&self, w: &Index) -> Result<TPoly<RealValue>> {
        w.contractions()
            .iter()
            .try_fold(TPoly::zero(), |acc, (c, _)| {
                Ok(acc.add(&self.zeta_reg_sym(c)?))
            })
    }

    /// `zeta^t_{x,y}(k)` at numeric `(t, x, y)`.
    pub fn ipmzv(
        &self,
        w: &Index,
        t: &RealValue,
        x: &RealValue,
        y: &RealValue,
    ) -> Result<RealValue> {
        let wt = w.weight();
        let (xp, yp) = (powers(x, wt), powers(y, wt));
        split_sum(
            w,
            |u| self.zeta_t(u, t),
            |a, b| xp[a as usize].mul(&yp[b as usize]),
        )
    }

    /// `zeta^t_{x,y}(k)` as a homogeneous form: coefficient `a` multiplies
    /// `x^a y^{wt - a}`.
    pub fn ipmzv_xy(&self, w: &Index, t: &RealValue) -> Result<TPoly<RealValue>> {
        split_sum(
            w,
            |u| Ok(TPoly::constant(self.zeta_t(u, t)?)),
            |a, _| TPoly::monomial(RealValue::one(), a as usize),
        )
    }

    /// `zeta^t_{x,y}(k)` as a polynomial in `t` at numeric `(x, y)`.
    pub fn ipmzv_t_poly(
        &self,
        w: &Index,
        x: &RealValue,
        y: &RealValue,
    ) -> Result<TPoly<RealValue>> {
        let wt = w.weight();
        let (xp, yp) = (powers(x, wt), powers(y, wt));
        split_sum(
            w,
            |u| self.zeta_t_poly(u),
            |a, b| TPoly::constant(xp[a as usize].mul(&yp[b as usize])),
        )
    }

    /// `zeta_{x,y}(k)` or `zeta-star_{x,y}(k)` from their own definitions.
    pub fn zeta_xy(
        &self,
        w: &Index,
        x: &RealValue,
        y: &RealValue,
        star: bool,
    ) -> Result<RealValue> {
        let wt = w.weight();
        let (xp, yp) = (powers(x, wt), powers(y, wt));
        split_sum(
            w,
            |u| {
                if star {
                    self.zeta_star(u)
                } else {
                    self.zeta_reg0(u)
                }
            },
            |a, b| xp[a as usize].mul(&yp[b as usize]),
        )
    }

    /// `zeta_S(k)` (or its star version), regularized with `T = 0`.
    pub fn szv(&self, w: &Index, star: bool) -> Result<RealValue> {
        let sign = |b: u32| {
            if b.is_multiple_of(2) {
                RealValue::one()
            } else {
                RealValue::one().neg()
            }
        };
        split_sum(
            w,
            |u| {
                if star {
                    self.zeta_star(u)
                } else {
                    self.zeta_reg0(u)
                }
            },
            |_, b| sign(b),
        )
    }

    /// `zeta_S(k)` (or its star version) with `T` kept symbolic.
    pub fn szv_sym(&self, w: &Index, star: bool) -> Result<TPoly<RealValue>> {
        let sign = |b: u32| {
            if b.is_multiple_of(2) {
                TPoly::one()
            } else {
                TPoly::one().neg()
            }
        };
        split_sum(
            w,
            |u| {
                if star {
                    self.zeta_star_sym(u)
                } else {
                    self.zeta_reg_sym(u)
                }
            },
            |_, b| sign(b),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::enumerate_indices;
    use crate::quasi_shuffle::{evaluate_reg, regularize, stuffle, HElement};
    use crate::rational::{int, rat};

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn q(r: Rational) -> RealValue {
        RealValue::from_rational(&r)
    }

    #[test]
    fn regularized_examples() {
        let e = ZetaEngine::default();
        let z2 = e.zeta(&idx("2")).unwrap();
        let z3 = e.zeta(&idx("3")).unwrap();
        let r = e.zeta_reg_sym(&idx("2,1")).unwrap();
        assert!(r.coeff(1).abs_dev(&z2) < 1e-28);
        assert!(r.coeff(0).abs_dev(&z3.scale(&int(-2))) < 1e-28);
        assert_eq!(e.zeta_reg_sym(&idx("1")).unwrap(), TPoly::var());
        assert!(e.zeta_reg0(&idx("1")).unwrap().is_zero());
        assert_eq!(
            e.zeta_reg(&idx("2"), RegMode::Symbolic).unwrap().degree(),
            Some(0)
        );
    }

    #[test]
    fn numeric_regularization_matches_exact_rewrite() {
        let e = ZetaEngine::default();
        for w in enumerate_indices(6, false) {
            let exact = regularize(&w);
            let via_exact = evaluate_reg(&exact, |u| e.zeta(u), RegMode::Symbolic).unwrap();
            let numeric = e.zeta_reg_sym(&w).unwrap();
            assert!(via_exact.abs_dev(&numeric) < 1e-27, "{w}");
        }
    }

    #[test]
    fn stuffle_products_hold_numerically() {
        let e = ZetaEngine::default();
        let words: Vec<Index> = enumerate_indices(4, true)
            .filter(|w| !w.is_empty())
            .collect();
        for u in &words {
            for v in &words {
                let prod = stuffle(&HElement::word(u.clone()), &HElement::word(v.clone()));
                let lhs = prod.evaluate(|w| e.zeta(w)).unwrap();
                let rhs = e.zeta(u).unwrap().mul(&e.zeta(v).unwrap());
                assert!(lhs.abs_dev(&rhs) < 1e-27, "{u} * {v}");
            }
        }
    }

    #[test]
    fn interpolation_endpoints() {
        let e = ZetaEngine::default();
        let z3 = e.zeta(&idx("3")).unwrap();
        let p = e.zeta_t_poly(&idx("1,2")).unwrap();
        assert!(p.coeff(0).abs_dev(&z3) < 1e-28);
        assert!(p.coeff(1).abs_dev(&z3) < 1e-28);
        assert!(
            e.zeta_star(&idx("1,2"))
                .unwrap()
                .abs_dev(&z3.scale(&int(2)))
                < 1e-28
        );
        for w in enumerate_indices(6, false) {
            let t0 = e.zeta_t(&w, &RealValue::zero()).unwrap();
            let t1 = e.zeta_t(&w, &RealValue::one()).unwrap();
            assert!(t0.abs_dev(&e.zeta_reg0(&w).unwrap()) < 1e-28, "{w}");
            assert!(t1.abs_dev(&e.zeta_star(&w).unwrap()) < 1e-28, "{w}");
            assert!(e.zeta_t_poly(&w).unwrap().degree().unwrap_or(0) < w.depth().max(1) as usize);
        }
    }

    #[test]
    fn polynomial_and_symmetric_values() {
        let e = ZetaEngine::default();
        let z2 = e.zeta(&idx("2")).unwrap();
        let form = e.ipmzv_xy(&idx("2"), &q(rat(1, 3))).unwrap();
        assert!(form.coeff(0).abs_dev(&z2) < 1e-28 && form.coeff(2).abs_dev(&z2) < 1e-28);
        assert!(form.coeff(1).is_zero());
        assert_eq!(
            e.ipmzv(&Index::empty(), &q(int(2)), &q(int(3)), &q(int(5)))
                .unwrap(),
            RealValue::one()
        );

        assert!(e.szv(&idx("1"), false).unwrap().magnitude() < 1e-30);
        assert!(e.szv(&idx("1"), true).unwrap().magnitude() < 1e-30);
        assert!(e.szv(&idx("2"), false).unwrap().abs_dev(&z2.scale(&int(2))) < 1e-28);

        let (one, zero, minus) = (RealValue::one(), RealValue::zero(), RealValue::one().neg());
        for w in enumerate_indices(5, true) {
            let v = e.ipmzv(&w, &zero, &one, &zero).unwrap();
            assert!(v.abs_dev(&e.zeta(&w).unwrap()) < 1e-27, "{w}");
            let s = e.ipmzv(&w, &zero, &one, &minus).unwrap();
            assert!(s.abs_dev(&e.szv(&w, false).unwrap()) < 1e-27, "{w}");
        }
    }

    #[test]
    fn symmetric_values_do_not_depend_on_t_regularization() {
        let e = ZetaEngine::default();
        for w in enumerate_indices(5, false) {
            for star in [false, true] {
                let p = e.szv_sym(&w, star).unwrap();
                for d in 1..=p.degree().unwrap_or(0) {
                    assert!(p.coeff(d).magnitude() < 1e-26, "{w} star={star} T^{d}");
                }
            }
        }
    }

    #[test]
    fn engine_uses_the_persistent_cache() {
        let dir = tempfile::tempdir().unwrap();
        let e = ZetaEngine::default().with_cache(ZetaCache::open(dir.path()).unwrap());
        let v = e.zeta(&idx("2,3")).unwrap();
        let fresh = ZetaEngine::default().with_cache(ZetaCache::open(dir.path()).unwrap());
        assert_eq!(
            fresh
                .cache()
                .unwrap()
                .get(&idx("2,3"), "plain")
                .unwrap()
                .real_value()
                .unwrap(),
            v
        );
        assert_eq!(fresh.zeta(&idx("2,3")).unwrap(), v);
    }
}
