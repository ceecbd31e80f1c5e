//! Solving φ(n) = m for n.
//!
//! Every solution is assembled from prime powers p^k whose totient
//! p^(k−1)(p−1) divides m, so only primes with (p − 1) | m need to be
//! considered and the set is found without scanning.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::totient::{factorize, is_prime, totient, totient_sieve};

/// Exclusive upper bound on the targets accepted by [`inverse_totient`].
pub const MAX_TARGET: u64 = 1 << 32;

/// Exclusive upper bound on the scan length of [`inverse_totient_brute`].
pub const MAX_BRUTE_BOUND: u64 = 1 << 40;

/// Scans up to this bound use a φ sieve instead of per-value factoring.
const SIEVE_SCAN_LIMIT: u64 = 1 << 24;

/// The complete solution set of φ(n) = target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageSet {
    target: u64,
    solutions: Vec<u64>,
}

impl PreimageSet {
    pub fn target(&self) -> u64 {
        self.target
    }

    /// Strictly ascending.
    pub fn solutions(&self) -> &[u64] {
        &self.solutions
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }
}

/// Every solution x of φ(x) = m satisfies x ≤ 2m² + 10, since φ(x) > √(x/2).
pub fn preimage_bound(m: u64) -> Option<u64> {
    m.checked_mul(m)
        .and_then(|sq| sq.checked_mul(2))
        .and_then(|b| b.checked_add(10))
}

/// All n with φ(n) = m, ascending. `m = 1` yields `{1, 2}`.
pub fn inverse_totient(m: u64) -> Result<PreimageSet> {
    if m == 0 || m >= MAX_TARGET {
        return Err(Error::range(format!(
            "inverse totient target {m} outside 1..2^32"
        )));
    }
    Ok(PreimageSet {
        target: m,
        solutions: preimages(m)?,
    })
}

/// Whether φ(n) = m has no solution at all.
pub fn is_nontotient(m: u64) -> Result<bool> {
    Ok(inverse_totient(m)?.is_empty())
}

/// Solver without the public target cap. Fails only if some partial
/// solution would not fit in 64 bits, in which case completeness cannot be
/// guaranteed.
pub(crate) fn preimages(m: u64) -> Result<Vec<u64>> {
    debug_assert!(m >= 1);
    let mut primes: Vec<u64> = factorize(m)
        .divisors()
        .into_iter()
        .filter_map(|d| d.checked_add(1))
        .filter(|&p| is_prime(p))
        .collect();
    primes.sort_unstable();

    let mut out = Vec::new();
    assemble(m, &primes, 1, &mut out)?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

// `rest` is what is left of the target once the prime powers already in
// `acc` are accounted for; only primes from `primes` (each used at most
// once, in increasing order) may still be multiplied in.
fn assemble(rest: u64, primes: &[u64], acc: u64, out: &mut Vec<u64>) -> Result<()> {
    if rest == 1 {
        out.push(acc);
    }
    for (i, &p) in primes.iter().enumerate() {
        if p - 1 > rest {
            break;
        }
        if rest % (p - 1) != 0 {
            continue;
        }
        let mut left = rest / (p - 1);
        let mut pk = p;
        loop {
            let next = acc
                .checked_mul(pk)
                .ok_or_else(|| Error::range(format!("preimage of {rest} exceeds 64 bits")))?;
            assemble(left, &primes[i + 1..], next, out)?;
            if left % p != 0 {
                break;
            }
            left /= p;
            pk = pk
                .checked_mul(p)
                .ok_or_else(|| Error::range("prime power exceeds 64 bits"))?;
        }
    }
    Ok(())
}

/// All x ≤ `bound` with φ(x) = m, by direct scan.
pub fn inverse_totient_brute(m: u64, bound: u64) -> Result<PreimageSet> {
    if bound >= MAX_BRUTE_BOUND {
        return Err(Error::range(format!("scan bound {bound} must be below 2^40")));
    }
    let solutions = if bound <= SIEVE_SCAN_LIMIT {
        let phi = totient_sieve(bound as usize);
        (1..=bound).filter(|&x| phi[x as usize] as u64 == m).collect()
    } else {
        (1..=bound).filter(|&x| totient(x) == m).collect()
    };
    Ok(PreimageSet {
        target: m,
        solutions,
    })
}

/// Brute-force solution sets for every target `1..=max_m`, each scanned up
/// to its own bound 2m² + 10. One pass over a shared φ sieve.
pub fn inverse_totient_brute_table(max_m: u64) -> Result<Vec<PreimageSet>> {
    let limit = preimage_bound(max_m)
        .filter(|&b| b <= SIEVE_SCAN_LIMIT)
        .ok_or_else(|| Error::range(format!("table up to {max_m} is too large to sieve")))?;
    let phi = totient_sieve(limit as usize);
    let mut table: Vec<PreimageSet> = (1..=max_m)
        .map(|target| PreimageSet {
            target,
            solutions: Vec::new(),
        })
        .collect();
    for x in 1..=limit {
        let v = phi[x as usize] as u64;
        if v == 0 || v > max_m {
            continue;
        }
        if preimage_bound(v).is_some_and(|b| x <= b) {
            table[v as usize - 1].solutions.push(x);
        }
    }
    Ok(table)
}
