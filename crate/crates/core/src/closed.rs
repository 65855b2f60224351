//! Exact closed-form counts over dispersed Dyck paths of a given length.
//!
//! Every function is indexed by path length. All quantities are exact
//! unbounded integers; the only floating-point code is the asymptotic
//! estimate, which works in base-2 log space.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Exact non-negative count.
pub type BigCount = BigUint;

/// `C(n, k)` by the multiplicative formula; every intermediate division is
/// exact.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= n - i;
        let (q, r) = acc.div_rem(&BigCount::from(i + 1));
        debug_assert!(r.is_zero());
        acc = q;
    }
    acc
}

fn pow2(n: u64) -> BigCount {
    BigCount::one() << n
}

/// `C(n, floor(n/2))`: the number of dispersed Dyck paths of length `n`.
pub fn central_binomial(n: u64) -> BigCount {
    binomial(n, n / 2)
}

/// `C(k, floor(k/2))` for `k < len`, stepping from each term to the next:
/// `C(2j+1, j) = C(2j, j) (2j+1) / (j+1)` and `C(2j+2, j+1) = 2 C(2j+1, j)`.
pub fn central_binomials(len: usize) -> Vec<BigCount> {
    let mut out: Vec<BigCount> = Vec::with_capacity(len);
    for k in 0..len as u64 {
        let next = match out.last() {
            None => BigCount::one(),
            Some(prev) if k % 2 == 1 => {
                let j = (k - 1) / 2;
                let (q, r) = (prev * (2 * j + 1)).div_rem(&BigCount::from(j + 1));
                debug_assert!(r.is_zero());
                q
            }
            Some(prev) => prev * 2u32,
        };
        out.push(next);
    }
    out
}

/// `k`-th Catalan number, computed as `C(2k, k-1) / k` (1 for `k = 0`).
pub fn catalan(k: u64) -> BigCount {
    if k == 0 {
        return BigCount::one();
    }
    let (q, r) = binomial(2 * k, k - 1).div_rem(&BigCount::from(k));
    assert!(r.is_zero(), "C(2k, k-1) not divisible by k at k={k}");
    q
}

/// Number of Dyck paths of length `n` (zero for odd `n`).
pub fn dyck_count(n: u64) -> BigCount {
    if n % 2 == 1 {
        BigCount::zero()
    } else {
        catalan(n / 2)
    }
}

/// Total right steps over all dispersed Dyck paths of length `n`:
/// `2^n - C(n, floor(n/2))`, and 0 for the empty path.
pub fn r_closed(n: u64) -> BigCount {
    if n == 0 {
        return BigCount::zero();
    }
    pow2(n) - central_binomial(n)
}

/// Total up steps (equivalently down steps): `((n+1) C(n, floor(n/2)) - 2^n) / 2`.
pub fn u_closed(n: u64) -> BigCount {
    let numerator = central_binomial(n) * (n + 1) - pow2(n);
    let (q, r) = numerator.div_rem(&BigCount::from(2u32));
    assert!(r.is_zero(), "odd numerator for U at n={n}");
    q
}

/// Total 1-ascents over all dispersed Dyck paths of length `m`.
///
/// With `n = m - 2` this is `2^(n-1) + (n+1)/2 * C(n, floor(n/2))`, evaluated
/// as `(2^n + (n+1) C(n, floor(n/2))) / 2` so that `n = 0` stays integral.
/// Lengths 0 and 1 have no ascents at all.
pub fn a_closed(m: u64) -> BigCount {
    if m < 2 {
        return BigCount::zero();
    }
    let n = m - 2;
    let numerator = pow2(n) + central_binomial(n) * (n + 1);
    let (q, r) = numerator.div_rem(&BigCount::from(2u32));
    assert!(r.is_zero(), "odd numerator for A at m={m}");
    q
}

/// Right-step total via the central-binomial self-convolution
/// `sum_{k<n} C(k, floor(k/2)) C(n-k-1, floor((n-k-1)/2))`. The empty sum at
/// `n = 0` gives 0.
pub fn r_convolution(n: u64) -> BigCount {
    let cb = central_binomials(n as usize);
    (0..n as usize)
        .map(|k| &cb[k] * &cb[n as usize - k - 1])
        .sum()
}

/// Base-2 logarithm of a positive big integer, accurate to double precision.
pub fn log2_big(x: &BigCount) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits in u64").to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// Asymptotic estimate of the 1-ascent total.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub log2: f64,
    /// Present when the estimate fits in an `f64`.
    pub value: Option<f64>,
}

/// `sqrt(m/pi) * (1 + sqrt(pi/(2m))) * 2^(m - 5/2)`, evaluated in log space.
pub fn a_asymptotic(m: u64) -> Estimate {
    assert!(m >= 1, "asymptotic estimate needs m >= 1");
    let pi = std::f64::consts::PI;
    let mf = m as f64;
    let log2 = 0.5 * (mf / pi).log2() + (1.0 + (pi / (2.0 * mf)).sqrt()).log2() + (mf - 2.5);
    let value = if log2 < f64::MAX_EXP as f64 - 1.0 {
        Some(log2.exp2())
    } else {
        None
    };
    Estimate { log2, value }
}

/// `exact / estimate` for the 1-ascent total at length `m >= 2`, computed
/// from the log-domain difference.
pub fn asymptotic_ratio(m: u64) -> f64 {
    (log2_big(&a_closed(m)) - a_asymptotic(m).log2).exp2()
}
