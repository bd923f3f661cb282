//! The harmonic (stuffle) algebra over exact rationals, and the harmonic
//! regularization that rewrites any word as a polynomial in `T` whose
//! coefficients are supported on admissible words.
//!
//! Words are [`Index`] values read as `z_{k_1} … z_{k_r}`. The product is
//! defined by peeling the rightmost letters:
//!
//! ```text
//! (u z_a) * (v z_b) = (u * v z_b) z_a + (u z_a * v) z_b + (u * v) z_{a+b}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::index::Index;
use crate::poly::TPoly;
use crate::rational::Rational;

/// A finite rational combination of words. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HElement {
    terms: BTreeMap<Index, Rational>,
}

impl HElement {
    pub fn zero() -> Self {
        HElement::default()
    }

    pub fn word(w: Index) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rational::one());
        HElement { terms }
    }

    /// The unit (empty word).
    pub fn unit() -> Self {
        HElement::word(Index::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Index) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Index, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HElement, c: &Rational) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn add(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> HElement {
        let mut out = HElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Append the letter `z_k` to every word.
    pub fn append_letter(&self, k: u32) -> HElement {
        HElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.with_last(k), c.clone()))
                .collect(),
        }
    }

    pub fn is_admissible_supported(&self) -> bool {
        self.terms.keys().all(Index::is_admissible)
    }

    /// Evaluate through a linear functional on words.
    pub fn evaluate<C: crate::ring::CoefficientRing>(
        &self,
        mut f: impl FnMut(&Index) -> Result<C>,
    ) -> Result<C> {
        let mut acc = C::zero();
        for (w, c) in &self.terms {
            acc = acc.add(&f(w)?.scale(c));
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for HElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}·z({w})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn stuffle_words(u: &Index, v: &Index, memo: &mut HashMap<(Index, Index), HElement>) -> HElement {
    if u.is_empty() {
        return HElement::word(v.clone());
    }
    if v.is_empty() {
        return HElement::word(u.clone());
    }
    let key = (u.clone(), v.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (u_head, a) = u.split_last().expect("nonempty");
    let (v_head, b) = v.split_last().expect("nonempty");
    let mut out = stuffle_words(&u_head, v, memo).append_letter(a);
    out = out.add(&stuffle_words(u, &v_head, memo).append_letter(b));
    out = out.add(&stuffle_words(&u_head, &v_head, memo).append_letter(a + b));
    memo.insert(key, out.clone());
    out
}

/// Bilinear stuffle product.
pub fn stuffle(a: &HElement, b: &HElement) -> HElement {
    let mut memo = HashMap::new();
    let mut out = HElement::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_scaled(&stuffle_words(u, v, &mut memo), &(cu * cv));
        }
    }
    out
}

pub fn stuffle_word_pair(u: &Index, v: &Index) -> HElement {
    stuffle_words(u, v, &mut HashMap::new())
}

/// Polynomial in `T` with admissible-supported coefficients; entry `n` is
/// the coefficient of `T^n`. Trailing zero coefficients are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegPolynomial {
    coeffs: Vec<HElement>,
}

impl RegPolynomial {
    pub fn new(mut coeffs: Vec<HElement>) -> Self {
        while coeffs.last().is_some_and(HElement::is_zero) {
            coeffs.pop();
        }
        RegPolynomial { coeffs }
    }

    pub fn constant(h: HElement) -> Self {
        RegPolynomial::new(vec![h])
    }

    pub fn coeffs(&self) -> &[HElement] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> HElement {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_scaled(&self, other: &RegPolynomial, c: &Rational) -> RegPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        RegPolynomial::new(
            (0..n)
                .map(|i| {
                    let mut h = self.coeff(i);
                    h.add_scaled(&other.coeff(i), c);
                    h
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> RegPolynomial {
        RegPolynomial::new(self.coeffs.iter().map(|h| h.scale(c)).collect())
    }

    pub fn shift_t(&self) -> RegPolynomial {
        let mut coeffs = vec![HElement::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        RegPolynomial::new(coeffs)
    }

    /// Product in `H^0[T]`: polynomial multiplication in `T`, stuffle on
    /// the coefficients.
    pub fn mul(&self, other: &RegPolynomial) -> RegPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RegPolynomial::default();
        }
        let mut out = vec![HElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&stuffle(a, b));
            }
        }
        RegPolynomial::new(out)
    }

    pub fn is_admissible_supported(&self) -> bool {
        self.coeffs.iter().all(HElement::is_admissible_supported)
    }
}

/// How to treat the regularization variable `T` when evaluating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegMode {
    /// `T = 0`.
    ConstantTerm,
    /// Keep `T` as a formal variable.
    Symbolic,
}

/// Evaluate a regularized polynomial with a numeric functional on admissible
/// words. The result is a polynomial in `T` (degree 0 in constant-term mode).
pub fn evaluate_reg<C: crate::ring::CoefficientRing>(
    p: &RegPolynomial,
    mut zeta: impl FnMut(&Index) -> Result<C>,
    mode: RegMode,
) -> Result<TPoly<C>> {
    let coeffs = match mode {
        RegMode::ConstantTerm => vec![p.coeff(0).evaluate(&mut zeta)?],
        RegMode::Symbolic => p
            .coeffs()
            .iter()
            .map(|h| h.evaluate(&mut zeta))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(TPoly::new(coeffs))
}

/// Memoizing harmonic regularizer.
///
/// A word `w = v z_1^m` with `v` admissible satisfies
/// `(v z_1^{m-1}) * z_1 = m w + R` where every word of `R` has fewer than
/// `m` trailing `z_1`, so `reg(w) = (reg(v z_1^{m-1}) T - reg(R)) / m`.
#[derive(Default)]
pub struct Regularizer {
    memo: RwLock<HashMap<Index, RegPolynomial>>,
}

impl Regularizer {
    pub fn new() -> Self {
        Regularizer::default()
    }

    pub fn regularize(&self, w: &Index) -> RegPolynomial {
        if w.is_admissible() {
            return RegPolynomial::constant(HElement::word(w.clone()));
        }
        if let Some(hit) = self.memo.read().expect("regularizer lock").get(w) {
            return hit.clone();
        }
        let m = w.trailing_ones();
        let (base, _) = w.split_last().expect("non-admissible words are nonempty");
        let product = stuffle_word_pair(&base, &Index::single(1));
        let m_rat = Rational::from_integer(BigInt::from(m));
        let mut rest = product;
        rest.add_term(w.clone(), -m_rat.clone());
        debug_assert!(rest.iter().all(|(u, _)| u.trailing_ones() < m));

        let mut acc = self.regularize(&base).shift_t();
        for (u, c) in rest.iter() {
            acc = acc.add_scaled(&self.regularize(u), &-c.clone());
        }
        let out = acc.scale(&(Rational::one() / m_rat));
        self.memo
            .write()
            .expect("regularizer lock")
            .insert(w.clone(), out.clone());
        out
    }

    /// Term-by-term regularization of a linear combination.
    pub fn regularize_element(&self, h: &HElement) -> RegPolynomial {
        h.iter().fold(RegPolynomial::default(), |acc, (w, c)| {
            acc.add_scaled(&self.regularize(w), c)
        })
    }
}

pub fn regularize(w: &Index) -> RegPolynomial {
    Regularizer::new().regularize(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::enumerate_indices;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn word(s: &str) -> HElement {
        HElement::word(idx(s))
    }

    fn elem(terms: &[(&str, Rational)]) -> HElement {
        let mut h = HElement::zero();
        for (w, c) in terms {
            h.add_term(idx(w), c.clone());
        }
        h
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(
            stuffle(&word("1"), &word("1")),
            elem(&[("1,1", int(2)), ("2", int(1))])
        );
        assert_eq!(
            stuffle(&word("2"), &word("3")),
            elem(&[("2,3", int(1)), ("3,2", int(1)), ("5", int(1))])
        );
        let w = word("2,1,3");
        assert_eq!(stuffle(&w, &HElement::unit()), w);
        assert_eq!(stuffle(&HElement::unit(), &w), w);
    }

    #[test]
    fn regularize_examples() {
        let t = RegPolynomial::new(vec![HElement::zero(), HElement::unit()]);
        assert_eq!(regularize(&idx("1")), t);

        let expected = RegPolynomial::new(vec![
            elem(&[("2", rat(-1, 2))]),
            HElement::zero(),
            elem(&[("-", rat(1, 2))]),
        ]);
        assert_eq!(regularize(&idx("1,1")), expected);

        let expected =
            RegPolynomial::new(vec![elem(&[("1,2", int(-1)), ("3", int(-1))]), word("2")]);
        assert_eq!(regularize(&idx("2,1")), expected);
    }

    #[test]
    fn admissible_words_are_fixed() {
        for w in enumerate_indices(7, true) {
            let r = regularize(&w);
            assert_eq!(r, RegPolynomial::constant(HElement::word(w.clone())));
        }
    }

    #[test]
    fn regularization_support_and_degree() {
        let reg = Regularizer::new();
        for w in enumerate_indices(8, false) {
            let r = reg.regularize(&w);
            assert!(r.is_admissible_supported(), "{w}");
            assert_eq!(r.degree().unwrap_or(0), w.trailing_ones(), "{w}");
            assert!(r.degree().unwrap_or(0) <= w.depth() as usize);
            // idempotent on the admissible support
            for h in r.coeffs() {
                assert_eq!(
                    reg.regularize_element(h),
                    RegPolynomial::constant(h.clone())
                );
            }
        }
    }

    #[test]
    fn regularize_is_a_ring_map_weight_4() {
        let reg = Regularizer::new();
        let words: Vec<Index> = enumerate_indices(4, false).collect();
        for u in &words {
            for v in &words {
                let lhs = reg.regularize(u).mul(&reg.regularize(v));
                let rhs = reg.regularize_element(&stuffle_word_pair(u, v));
                assert_eq!(lhs, rhs, "{u} * {v}");
            }
        }
    }

    fn arb_word() -> impl Strategy<Value = Index> {
        proptest::collection::vec(1u32..=4, 0..=3)
            .prop_filter("weight <= 6", |v| v.iter().sum::<u32>() <= 6)
            .prop_map(|v| Index::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn stuffle_commutes(u in arb_word(), v in arb_word()) {
            prop_assert_eq!(stuffle_word_pair(&u, &v), stuffle_word_pair(&v, &u));
        }

        #[test]
        fn stuffle_associates(u in arb_word(), v in arb_word(), w in arb_word()) {
            let (a, b, c) = (HElement::word(u), HElement::word(v), HElement::word(w));
            prop_assert_eq!(stuffle(&stuffle(&a, &b), &c), stuffle(&a, &stuffle(&b, &c)));
        }
    }
}
