use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// The pair `(x, ρ)` defining a multiple-counting sequence family: base
/// `x ≥ 2` whose powers bound the counting intervals, and modulus `ρ ≥ 2`
/// whose multiples are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SequenceParams {
    x: u64,
    rho: u64,
}

impl SequenceParams {
    pub fn new(x: u64, rho: u64) -> Result<Self> {
        if x < 2 {
            return Err(Error::BaseTooSmall(x));
        }
        if rho < 2 {
            return Err(Error::ModulusTooSmall(rho));
        }
        Ok(SequenceParams { x, rho })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn rho(&self) -> u64 {
        self.rho
    }

    /// Order of the J recurrence and dimension of the key matrix K: ρ − 1.
    pub fn order(&self) -> usize {
        (self.rho - 1) as usize
    }

    pub fn coprime(&self) -> bool {
        self.x.gcd(&self.rho) == 1
    }

    /// `x^(ρ−1) ≡ 1 (mod ρ)` — the hypothesis under which the recurrence,
    /// matrix and Binet channels are valid.
    pub fn fermat_condition(&self) -> bool {
        crate::recurrences::fermat_condition(self.x, self.rho)
    }

    /// Fails with [`Error::NotCoprime`] unless gcd(x, ρ) = 1.
    pub fn require_coprime(&self) -> Result<()> {
        let g = self.x.gcd(&self.rho);
        if g == 1 {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                x: self.x,
                rho: self.rho,
                gcd: g,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_base_and_modulus() {
        assert!(SequenceParams::new(1, 3).is_err());
        assert!(SequenceParams::new(0, 3).is_err());
        assert!(SequenceParams::new(2, 1).is_err());
        assert!(SequenceParams::new(2, 0).is_err());
        assert!(SequenceParams::new(2, 2).is_ok());
    }

    #[test]
    fn coprime_matches_euclid() {
        fn euclid(mut a: u64, mut b: u64) -> u64 {
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        }
        for x in 2..40 {
            for rho in 2..40 {
                let p = SequenceParams::new(x, rho).unwrap();
                assert_eq!(p.coprime(), euclid(x, rho) == 1, "x={x} rho={rho}");
            }
        }
    }
}
