//! Direct nested summation of the defining series, used as an oracle.
//!
//! Split `n_1 < ... < n_r` by how many variables are `<= N`. The finite part
//! is a nested partial sum; the part above `N` is an asymptotic expansion
//! in `1/N` obtained by applying the Euler-Maclaurin tail
//!
//! ```text
//! sum_{n > N} n^{-b} = N^{1-b}/(b-1) - N^{-b}/2
//!                    + sum_p B_{2p}/(2p)! (b)_{2p-1} N^{-(b+2p-1)}
//! ```
//!
//! level by level, starting from the largest summation variable. Plain f64,
//! so the achievable accuracy is about 1e-14.

use crate::error::{MzvError, Result};
use crate::index::Index;
use crate::rational::{bernoulli_numbers, to_f64};
use crate::real::RealValue;
use crate::zeta::holder::check_admissible;

const CUTOFF: u32 = 120;
/// Highest power of `1/N` kept in the tail expansions.
const MAX_POW: usize = 96;
const BERNOULLI_TERMS: usize = 14;

/// Coefficients `c[a]` of `sum_a c[a] x^{-a}`.
type Laurent = Vec<f64>;

struct TailOps {
    /// `B_{2p} / (2p)!` for `p = 1..`.
    b_over_fact: Vec<f64>,
}

impl TailOps {
    fn new() -> Self {
        let bern = bernoulli_numbers(2 * BERNOULLI_TERMS + 1);
        let mut fact = 1.0f64;
        let mut b_over_fact = Vec::with_capacity(BERNOULLI_TERMS);
        for (n, b) in bern.iter().enumerate().take(2 * BERNOULLI_TERMS + 1).skip(1) {
            fact *= n as f64;
            if n % 2 == 0 {
                b_over_fact.push(to_f64(b) / fact);
            }
        }
        TailOps { b_over_fact }
    }

    /// Expansion of `sum_{n > x} n^{-b}` for `b >= 2`, as a Laurent series in
    /// `1/x`, plus the size of the first omitted correction at `x = N`.
    fn power_tail(&self, b: usize, out: &mut Laurent, scale: f64, big_n: f64) -> f64 {
        let mut put = |a: usize, c: f64| {
            if a <= MAX_POW {
                out[a] += scale * c;
            }
        };
        put(b - 1, 1.0 / (b as f64 - 1.0));
        put(b, -0.5);
        // (b)_{2p-1}, the rising factorial
        let mut rising = b as f64;
        for (p, bf) in self.b_over_fact.iter().enumerate() {
            let p = p + 1;
            if p > 1 {
                rising *= (b + 2 * p - 3) as f64 * (b + 2 * p - 2) as f64;
            }
            put(b + 2 * p - 1, bf * rising);
        }
        let p = self.b_over_fact.len() + 1;
        let next = rising * (b + 2 * p - 3) as f64 * (b + 2 * p - 2) as f64;
        // |B_{2p}/(2p)!| ~ 2/(2 pi)^{2p}
        let bf = 2.0 / (2.0 * std::f64::consts::PI).powi(2 * p as i32);
        (scale * bf * next).abs() * big_n.powi(-((b + 2 * p - 1) as i32))
    }

    /// `sum_{n > x} n^{-m} f(n)` for an expansion `f`; returns the new
    /// expansion and an error estimate at `x = N`.
    fn sum_tail(&self, f: &Laurent, m: u32, big_n: f64) -> (Laurent, f64) {
        let mut out = vec![0.0; MAX_POW + 1];
        let mut err = 0.0;
        for (a, &c) in f.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let b = a + m as usize;
            if b > MAX_POW + 1 {
                continue;
            }
            err += self.power_tail(b, &mut out, c, big_n);
        }
        (out, err)
    }
}

fn eval_laurent(f: &Laurent, big_n: f64) -> f64 {
    let inv = 1.0 / big_n;
    f.iter().rev().fold(0.0, |acc, &c| acc * inv + c)
}

/// Nested partial sums `P_j = sum_{n_1 < ... < n_j <= N} prod n_i^{-k_i}`.
fn prefix_sums(parts: &[u32], big_n: u32) -> Vec<f64> {
    let r = parts.len();
    let mut cum = vec![0.0; r + 1];
    cum[0] = 1.0;
    for n in 1..=big_n {
        let nf = n as f64;
        for i in (1..=r).rev() {
            cum[i] += cum[i - 1] * nf.powi(-(parts[i - 1] as i32));
        }
    }
    cum
}

/// Evaluate an admissible MZV by direct summation; fails if the achieved
/// error bound exceeds `eps`.
pub fn eval_zeta_direct(index: &Index, eps: f64) -> Result<RealValue> {
    check_admissible(index)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(MzvError::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let parts = index.parts();
    let r = parts.len();
    let big_n = CUTOFF as f64;
    let ops = TailOps::new();
    let prefix = prefix_sums(parts, CUTOFF);

    // tails[j]: expansion of the sum over N < n_{j+1} < ... < n_r
    let mut value = prefix[r];
    let mut err = 0.0;
    let mut inner: Laurent = vec![0.0; MAX_POW + 1];
    inner[0] = 1.0;
    let mut inner_err = 0.0;
    let mut magnitude = prefix[r].abs();
    for j in (0..r).rev() {
        let (next, e) = ops.sum_tail(&inner, parts[j], big_n);
        // error carried from deeper levels is at most scaled by the sum
        // over one more variable, which is below 1 for exponents >= 2
        // and below ln-growth otherwise; bound it generously
        inner_err = e + inner_err * (1.0 + big_n.ln());
        inner = next;
        let tail = eval_laurent(&inner, big_n);
        value += prefix[j] * tail;
        magnitude += (prefix[j] * tail).abs();
        err += prefix[j].abs() * inner_err;
    }
    // rounding in the f64 partial sums
    err += magnitude * 64.0 * f64::EPSILON * (r as f64 + 1.0);
    if err > eps {
        return Err(MzvError::Accuracy(format!(
            "direct summation of zeta({index}) reached {err:.1e}, requested {eps:.1e}"
        )));
    }
    Ok(RealValue::exact(value).with_extra_error(err))
}
