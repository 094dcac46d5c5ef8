//! Fermat pseudoprime scanning — the recurrence's validity boundary.
//!
//! The Fermat condition `x^(ρ−1) ≡ 1 (mod ρ)` holds for every prime ρ
//! coprime to x, but also for certain composites: base-x Fermat
//! pseudoprimes (Poulet or Sarrus numbers when x = 2). For those the
//! recurrence channel stays exact; for composites failing the condition
//! the recurrence empirically breaks, and the mismatch is harvested as a
//! witness.
//!
//! Primality here is deterministic Miller–Rabin with the fixed witness
//! set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}, which is exact for
//! every integer below 3.3·10²⁴ — in particular for the whole u64 input
//! domain. Nothing probabilistic is ever reported.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::SequenceParams;
use crate::recurrences::{self, fermat_condition, Witness};

/// How a scanned modulus relates to the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Prime,
    Pseudoprime,
    OrdinaryComposite,
    NonCoprime,
}

/// Classification of one modulus ρ against a base x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub x: u64,
    pub rho: u64,
    pub is_prime: bool,
    pub condition_holds: bool,
    pub classification: Classification,
}

/// Deterministic primality for n ≥ 2. Exact over the whole u64 range.
pub fn is_prime(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::PrimalityDomain(n));
    }
    Ok(miller_rabin(n))
}

fn miller_rabin(n: u64) -> bool {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = recurrences::mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn classify(x: u64, rho: u64) -> ScanResult {
    let coprime = x.gcd(&rho) == 1;
    let condition_holds = fermat_condition(x, rho);
    let prime = miller_rabin(rho);
    let classification = if !coprime {
        Classification::NonCoprime
    } else if prime {
        Classification::Prime
    } else if condition_holds {
        Classification::Pseudoprime
    } else {
        Classification::OrdinaryComposite
    };
    ScanResult {
        x,
        rho,
        is_prime: prime,
        condition_holds,
        classification,
    }
}

/// Classifies every integer ρ in `[lo, hi]`. The range fans out across
/// threads; results come back in ascending ρ order regardless of
/// schedule.
pub fn scan(x: u64, lo: u64, hi: u64) -> Result<Vec<ScanResult>> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok((lo..=hi).into_par_iter().map(|rho| classify(x, rho)).collect())
}

/// Probes the recurrence for `(x, ρ)` up to `n_max` and surfaces the
/// first floor-vs-recurrence mismatch, if any. Pseudoprime ρ are expected
/// to produce none; condition-failing composites empirically always do.
pub fn recurrence_witness(x: u64, rho: u64, n_max: u64) -> Result<Option<Witness>> {
    let params = SequenceParams::new(x, rho)?;
    params.require_coprime()?;
    Ok(recurrences::verify_recurrence(params, n_max).witness)
}
