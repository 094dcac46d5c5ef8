//! # multcount — multiple-counting sequences between exponents
//!
//! A multiple-counting sequence `J` of a modulus ρ between exponents of a
//! base `x` counts the multiples of ρ lying between consecutive powers of
//! `x`. Canonically,
//!
//! ```text
//! J_n = ⌊x^(n+1)/ρ⌋ − ⌊x^n/ρ⌋
//! ```
//!
//! and its running total `S_n = ⌊x^(n+1)/ρ⌋` counts multiples of ρ below
//! `x^(n+1)`. For `(x, ρ) = (2, 3)` the `J` sequence is the Jacobsthal
//! sequence (OEIS A001045).
//!
//! Whenever `x^(ρ−1) ≡ 1 (mod ρ)` — Fermat's little theorem's condition,
//! which holds for every prime ρ coprime to `x` and for certain composites
//! (Fermat pseudoprimes) — `J` satisfies an order-(ρ−1) linear recurrence
//! with coefficients `(x−1, …, x−1, x)`, and `S` satisfies the same shape
//! plus a constant π.
//!
//! The crate computes terms by four independent strategies and checks them
//! against each other:
//!
//! 1. the floor formula (exact, authoritative) — [`sequences`];
//! 2. the linear recurrence (exact) — [`recurrences`];
//! 3. companion ("key") matrix exponentiation by squaring (exact) —
//!    [`spectral`];
//! 4. the Binet closed form over the key matrix's eigensystem (floating
//!    point with a certified rounding window) — [`spectral`].
//!
//! [`pseudoprime`] scans moduli for the recurrence's validity boundary:
//! composite ρ that still satisfy the Fermat condition (Poulet numbers for
//! base 2), and recurrence-failure witnesses for composites that do not.
//! [`bfile`] reads and writes the OEIS b-file interchange format.
//!
//! All sequence values are arbitrary-precision integers; nothing is
//! silently truncated at machine-word width.

pub mod bfile;
pub mod error;
pub mod params;
pub mod pseudoprime;
pub mod recurrences;
pub mod sequences;
pub mod spectral;

pub use error::Error;
pub use params::SequenceParams;
pub use sequences::Term;
