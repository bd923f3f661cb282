//! MZVs by Hölder convolution at 1/2.
//!
//! The index `(k_1, ..., k_r)` (with `n_1 < ... < n_r`) is written as the
//! word `w = w_1 ... w_L` over `{0, 1}`, outermost letter first, by emitting
//! `0^{k-1} 1` for `k = k_r, k_{r-1}, ..., k_1`. Splitting the integration
//! path at 1/2 gives
//!
//! ```text
//! zeta(w) = sum_{j=0}^{L} Li(dual(w_j ... w_1)) * Li(w_{j+1} ... w_L)
//! ```
//!
//! where `dual` swaps the letters and each `Li` is a multiple polylogarithm at
//! 1/2, i.e. `sum_{n_1 > ... > n_k} 2^{-n_1} / prod n_i^{m_i}`. Every term is
//! positive and every series converges geometrically.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{MzvError, Result};
use crate::index::Index;
use crate::real::RealValue;
use crate::ring::CoefficientRing;

/// Letters of the iterated-integral word, outermost first.
fn encode(index: &Index) -> Vec<bool> {
    let mut w = Vec::with_capacity(index.weight() as usize);
    for &k in index.parts().iter().rev() {
        w.extend(std::iter::repeat_n(false, k as usize - 1));
        w.push(true);
    }
    w
}

/// Multi-index `(m_1, ..., m_k)` of a word ending in `1`; outermost first.
fn li_exponents(word: &[bool]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut run = 0;
    for &letter in word {
        run += 1;
        if letter {
            out.push(run);
            run = 0;
        }
    }
    debug_assert_eq!(run, 0, "word must end in the letter 1");
    out
}

/// Upper bound for `sum_{n > big_n} 2^{-n} (1 + ln n)^{k-1}`.
fn tail_bound(big_n: u32, k: usize) -> f64 {
    let n = big_n as f64 + 1.0;
    let growth = ((1.0 + (n + 1.0).ln()) / (1.0 + n.ln())).powi(k as i32 - 1);
    let ratio = 0.5 * growth;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    (-n * std::f64::consts::LN_2).exp() * (1.0 + n.ln()).powi(k as i32 - 1) / (1.0 - ratio)
}

fn terms_needed(k: usize, eps: f64) -> u32 {
    let mut n = 32;
    while tail_bound(n, k) > eps {
        n += 8;
    }
    n
}

fn li_half(m: &[u32], eps: f64) -> RealValue {
    if m.is_empty() {
        return RealValue::one();
    }
    let k = m.len();
    let big_n = terms_needed(k, eps);
    // cum[i] = sum over n' < n of the partial nested sum starting at level i
    let mut cum = vec![RealValue::zero(); k];
    let mut total = RealValue::zero();
    let mut half_pow = RealValue::one();
    for n in 1..=big_n {
        half_pow = half_pow.mul(&RealValue::exact(0.5));
        let inv_n = RealValue::one().div(&RealValue::from_int(n as i64));
        let mut level = vec![RealValue::zero(); k];
        level[k - 1] = inv_n.pow(m[k - 1]);
        for i in (0..k - 1).rev() {
            if !cum[i + 1].is_zero() {
                level[i] = inv_n.pow(m[i]).mul(&cum[i + 1]);
            }
        }
        total = total.add(&half_pow.mul(&level[0]));
        for i in 0..k {
            cum[i] = cum[i].add(&level[i]);
        }
    }
    total.with_extra_error(tail_bound(big_n, k))
}

/// Hölder-convolution evaluator with a memo of polylogarithm values.
pub struct HolderEvaluator {
    li_memo: RwLock<HashMap<Vec<u32>, RealValue>>,
    li_eps: f64,
}

impl HolderEvaluator {
    /// `eps` is the target absolute error of each returned MZV.
    pub fn new(eps: f64) -> Self {
        HolderEvaluator {
            li_memo: RwLock::new(HashMap::new()),
            // split terms are products of two values below 1; the word length
            // never exceeds 64 in practice
            li_eps: eps / 256.0,
        }
    }

    fn li(&self, m: Vec<u32>) -> RealValue {
        if let Some(v) = self.li_memo.read().expect("li memo lock").get(&m) {
            return *v;
        }
        let v = li_half(&m, self.li_eps);
        self.li_memo
            .write()
            .expect("li memo lock")
            .insert(m, v);
        v
    }

    pub fn eval(&self, index: &Index) -> Result<RealValue> {
        check_admissible(index)?;
        let w = encode(index);
        let mut acc = RealValue::zero();
        for j in 0..=w.len() {
            let left: Vec<bool> = w[..j].iter().rev().map(|&b| !b).collect();
            let a = self.li(li_exponents(&left));
            let b = self.li(li_exponents(&w[j..]));
            acc = acc.add(&a.mul(&b));
        }
        Ok(acc)
    }
}

pub(crate) fn check_admissible(index: &Index) -> Result<()> {
    if index.is_empty() {
        return Err(MzvError::EmptyIndex);
    }
    if !index.is_admissible() {
        return Err(MzvError::NotAdmissible(index.clone()));
    }
    Ok(())
}

/// One-shot evaluation to absolute accuracy `eps`.
pub fn eval_zeta_holder(index: &Index, eps: f64) -> Result<RealValue> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(MzvError::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    HolderEvaluator::new(eps).eval(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use twofloat::TwoFloat;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn pi2_over_6() -> TwoFloat {
        // pi to double-double precision
        let pi = TwoFloat::new_add(std::f64::consts::PI, 1.2246467991473532e-16);
        pi * pi / 6.0
    }

    #[test]
    fn encoding() {
        assert_eq!(encode(&idx("2")), vec![false, true]);
        assert_eq!(encode(&idx("1,2")), vec![false, true, true]);
        assert_eq!(li_exponents(&[false, true, true]), vec![2, 1]);
        assert_eq!(li_exponents(&[]), Vec::<u32>::new());
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let z = eval_zeta_holder(&idx("2"), 1e-30).unwrap();
        let diff = (z.value() - pi2_over_6()).hi().abs();
        assert!(diff < 1e-29, "{diff:e}");
        assert!(z.error() < 1e-28, "{:e}", z.error());
        assert!(diff <= z.error());
    }

    #[test]
    fn classical_values() {
        let z3 = eval_zeta_holder(&idx("3"), 1e-30).unwrap();
        assert!((z3.to_f64() - 1.2020569031595942).abs() < 1e-15);
        let z12 = eval_zeta_holder(&idx("1,2"), 1e-30).unwrap();
        assert!(z12.abs_dev(&z3) < 1e-28);
        let z5 = eval_zeta_holder(&idx("5"), 1e-30).unwrap();
        assert!((z5.to_f64() - 1.036_927_755_143_37).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            eval_zeta_holder(&idx("2,1"), 1e-10),
            Err(MzvError::NotAdmissible(_))
        ));
        assert!(matches!(
            eval_zeta_holder(&Index::empty(), 1e-10),
            Err(MzvError::EmptyIndex)
        ));
        assert!(eval_zeta_holder(&idx("2"), 0.0).is_err());
        assert!(eval_zeta_holder(&idx("2"), -1.0).is_err());
    }
}
