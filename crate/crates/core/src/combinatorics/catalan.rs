use num_bigint::BigUint;
use num_traits::One;

use crate::scalar::Scalar;

/// n-th Catalan number, exact.
pub fn catalan(n: u32) -> BigUint {
    // C_{k+1} = C_k * 2(2k+1) / (k+2); the division is always exact.
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * (2u64 * (2 * k as u64 + 1)) / (k as u64 + 2);
    }
    c
}

/// `C_n(x) = sum_{k=0}^{n} C_k x^k`.
pub fn catalan_partial_sum<S: Scalar>(n: u32, x: &S) -> S {
    let mut term = S::one();
    let mut sum = S::one();
    for k in 0..n as i64 {
        term = term * x.clone() * S::from_ratio(2 * (2 * k + 1), k + 2);
        sum = sum + term.clone();
    }
    sum
}

/// Where to stop an infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    /// Keep exactly this many Catalan terms (indices `0..=n`).
    Terms(u32),
    /// Keep adding terms until the rigorous tail bound drops below the value.
    Tolerance(f64),
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon::Terms(200)
    }
}

/// A truncated series value together with an upper bound on what was cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub tail_bound: f64,
    /// Index of the last Catalan term included.
    pub last_index: u32,
}

const MAX_TERMS: u32 = 50_000_000;

/// `sum_k C_k x^k` for `0 <= x < 1/4`, truncated according to `horizon`.
///
/// The tail bound uses `C_{k+1}/C_k < 4`, so the omitted part is at most
/// `C_{N+1} x^{N+1} / (1 - 4x)`.
pub fn catalan_series(x: f64, horizon: Horizon) -> Truncated {
    assert!((0.0..0.25).contains(&x), "Catalan series diverges for x = {x}");
    let ratio_cap = 1.0 - 4.0 * x;
    let mut term = 1.0;
    let mut value = 0.0;
    let mut k = 0u32;
    loop {
        value += term;
        let next = term * x * (2.0 * (2.0 * k as f64 + 1.0)) / (k as f64 + 2.0);
        let bound = next / ratio_cap;
        let done = match horizon {
            Horizon::Terms(n) => k >= n,
            Horizon::Tolerance(tol) => bound <= tol || k >= MAX_TERMS,
        };
        if done {
            return Truncated {
                value,
                tail_bound: bound,
                last_index: k,
            };
        }
        term = next;
        k += 1;
    }
}
