//! Exact 64-bit arithmetic around Euler's totient: factorization, φ, iterated
//! totient chains, the iteration length R(n), the iterate sum Φ(n), and
//! perfect totient numbers.
//!
//! All functions are pure. Inputs must be nonzero; passing 0 is a caller bug
//! and panics.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Primes below this bound are divided out by trial division before falling
/// back to Pollard's rho.
const TRIAL_LIMIT: u64 = 1_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_below(TRIAL_LIMIT as usize))
}

/// Sieve of Eratosthenes: all primes `< limit`, ascending.
pub fn primes_below(limit: usize) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; limit];
    let mut out = Vec::new();
    for i in 2..limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Linear sieve of φ over `0..=limit` (entry 0 is unused and set to 0).
///
/// Panics if `limit` does not fit in 32 bits.
pub fn totient_sieve(limit: usize) -> Vec<u32> {
    assert!(limit < u32::MAX as usize, "totient sieve limit too large");
    let mut phi = vec![0u32; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    if limit >= 1 {
        phi[1] = 1;
    }
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = i as u32 - 1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if ip > limit {
                break;
            }
            if i % p as usize == 0 {
                phi[ip] = phi[i] * p;
                break;
            }
            phi[ip] = phi[i] * (p - 1);
        }
    }
    phi
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller–Rabin, exact for every `u64`.
///
/// The first twelve primes as witnesses suffice below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor of the odd
/// composite `n`. Starting points are fixed so results are reproducible.
fn rho_split(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime(n));
    const BATCH: u64 = 128;
    for c in 1u64.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut g = 1u64;
        let mut q = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // Batched product overshot; retrace one step at a time.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho found no factor of {n}")
}

/// Prime-power decomposition of a natural number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored value.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// Recomputes the product of the prime powers, failing on overflow.
    pub fn product(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, k)| {
            p.checked_pow(k)
                .and_then(|pk| acc.checked_mul(pk))
                .ok_or_else(|| Error::range("factorization product exceeds 64 bits"))
        })
    }

    /// φ from the factorization: Π p^(k−1)(p−1).
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, k)| p.pow(k - 1) * (p - 1))
            .product()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, k) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..k {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Factor `n` into prime powers.
///
/// Trial division by primes below 10^6, then Pollard's rho on whatever
/// composite cofactor remains.
///
/// # Panics
/// If `n == 0`.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize is undefined at 0");
    let mut primes: Vec<u64> = Vec::new();
    let mut rest = n;
    for (i, &p) in small_primes().iter().enumerate() {
        if p * p > rest {
            break;
        }
        // Large prime cofactors would otherwise pay for the whole table.
        if i == 168 && is_prime(rest) {
            break;
        }
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();

    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { n, factors }
}

// `n` has no prime factor below the trial bound reached, or is prime.
fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if n % 2 == 0 {
        out.push(2);
        split_large(n / 2, out);
        return;
    }
    let d = rho_split(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Euler's totient φ(n), with φ(1) = 1.
///
/// # Panics
/// If `n == 0`.
pub fn totient(n: u64) -> u64 {
    factorize(n).totient()
}

/// φ applied `k` times; `k = 0` returns `n`.
pub fn iterate_totient(mut n: u64, k: u64) -> u64 {
    assert!(n >= 1, "iterate_totient is undefined at 0");
    for _ in 0..k {
        if n == 1 {
            break;
        }
        n = totient(n);
    }
    n
}

/// The sequence `n, φ(n), φ²(n), …, 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotientChain {
    origin: u64,
    values: Vec<u64>,
    steps: usize,
    phi_sum: u128,
}

impl TotientChain {
    pub fn origin(&self) -> u64 {
        self.origin
    }

    /// `[φ⁰(origin), φ¹(origin), …, 1]`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// R(origin): the number of applications of φ needed to reach 1.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Φ(origin): the sum of every iterate after the origin itself.
    pub fn phi_sum(&self) -> u128 {
        self.phi_sum
    }
}

pub fn chain(n: u64) -> TotientChain {
    assert!(n >= 1, "chain is undefined at 0");
    let mut values = vec![n];
    let mut v = n;
    while v != 1 {
        v = totient(v);
        values.push(v);
    }
    let steps = values.len() - 1;
    let phi_sum = values[1..].iter().map(|&v| v as u128).sum();
    TotientChain {
        origin: n,
        values,
        steps,
        phi_sum,
    }
}

/// R(n), the smallest `k` with φᵏ(n) = 1. R(1) = 0.
pub fn iteration_length(mut n: u64) -> usize {
    assert!(n >= 1, "iteration_length is undefined at 0");
    let mut k = 0;
    while n != 1 {
        n = totient(n);
        k += 1;
    }
    k
}

/// Φ(n) = φ(n) + φ²(n) + … + 1. Φ(1) = 0.
pub fn totient_sum(mut n: u64) -> u128 {
    assert!(n >= 1, "totient_sum is undefined at 0");
    let mut sum = 0u128;
    while n != 1 {
        n = totient(n);
        sum += n as u128;
    }
    sum
}

/// Whether Φ(n) = n. Defined for `n >= 2` only.
pub fn is_perfect_totient(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::range("perfect totient test needs n >= 2"));
    }
    Ok(totient_sum(n) == n as u128)
}

/// Σ_{d | n} φ(d), computed divisor by divisor.
pub fn divisor_totient_sum(n: u64) -> u128 {
    factorize(n)
        .divisors()
        .into_iter()
        .map(|d| totient(d) as u128)
        .sum()
}
