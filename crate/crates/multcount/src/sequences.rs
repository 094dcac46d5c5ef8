//! Canonical floor-formula generation of the J and S sequences, plus the
//! brute-force enumeration oracle.
//!
//! The floor form is the canonical definition. The prose definition counts
//! multiples of ρ in the open interval `(x^n, x^(n+1))`; the floor form
//! `⌊x^(n+1)/ρ⌋ − ⌊x^n/ρ⌋` counts the half-open interval `(x^n, x^(n+1)]`.
//! The two coincide exactly when ρ does not divide `x^(n+1)`, in particular
//! whenever gcd(x, ρ) = 1. When the pair shares a factor they can differ,
//! and the floor form wins here: it is the shape every identity downstream
//! (recurrence, matrix, Binet) manipulates.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::SequenceParams;

/// One sequence element: an arbitrary-precision non-negative count.
pub type Term = BigUint;

/// Default guard for [`brute_force_count`]: refuse to enumerate past
/// `x^(n+1) = 2^40`.
pub const DEFAULT_ENUM_BOUND: u64 = 1 << 40;

fn big_pow(x: u64, e: u64) -> BigUint {
    assert!(e <= u32::MAX as u64, "exponent {e} out of supported range");
    BigUint::from(x).pow(e as u32)
}

/// `J_n = ⌊x^(n+1)/ρ⌋ − ⌊x^n/ρ⌋`, exactly.
pub fn count_term(params: SequenceParams, n: u64) -> Term {
    let rho = BigUint::from(params.rho());
    big_pow(params.x(), n + 1) / &rho - big_pow(params.x(), n) / &rho
}

/// `S_n = ⌊x^(n+1)/ρ⌋`, exactly. Equals the prefix sum `Σ_{i=0..n} J_i`.
pub fn count_prefix(params: SequenceParams, n: u64) -> Term {
    big_pow(params.x(), n + 1) / BigUint::from(params.rho())
}

/// First `count` terms of J. The power of x is carried incrementally so the
/// whole prefix costs one multiplication and one division per term.
pub fn generate_j(params: SequenceParams, count: usize) -> Vec<Term> {
    let rho = BigUint::from(params.rho());
    let mut prev_floor = BigUint::zero(); // ⌊x^0/ρ⌋ = 0 since ρ ≥ 2
    let mut out = Vec::with_capacity(count);
    let mut power = BigUint::from(params.x()); // x^(n+1) with n = 0
    for _ in 0..count {
        let floor = &power / &rho;
        out.push(&floor - &prev_floor);
        prev_floor = floor;
        power *= params.x();
    }
    out
}

/// First `count` terms of S.
pub fn generate_s(params: SequenceParams, count: usize) -> Vec<Term> {
    let rho = BigUint::from(params.rho());
    let mut power = BigUint::from(params.x());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(&power / &rho);
        power *= params.x();
    }
    out
}

/// Counts multiples of ρ strictly inside the open interval `(x^n, x^(n+1))`
/// by direct enumeration over `k·ρ` — the independent oracle for
/// [`count_term`]. Refuses when `x^(n+1)` exceeds `bound`.
pub fn brute_force_count(params: SequenceParams, n: u64, bound: u64) -> Result<Term> {
    let hi = big_pow(params.x(), n + 1);
    if hi > BigUint::from(bound) {
        return Err(Error::EnumerationBound {
            x: params.x(),
            n,
            bound,
        });
    }
    let hi: u64 = hi.try_into().expect("bounded by u64 guard");
    let lo = params.x().pow(n as u32);
    let mut count: u64 = 0;
    let mut multiple = params.rho();
    while multiple < hi {
        if multiple > lo {
            count += 1;
        }
        multiple += params.rho();
    }
    Ok(BigUint::from(count))
}

/// `x^n` as a big integer; shared by the other strategy channels.
pub fn power(x: u64, e: u64) -> BigUint {
    big_pow(x, e)
}
