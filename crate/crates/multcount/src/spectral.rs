//! The key-matrix and Binet channels.
//!
//! The companion-style key matrix K of dimension ρ−1 advances the J state
//! vector `u^n = (J_n, …, J_{n−ρ+2})ᵀ` by one index: `K·u^n = u^{n+1}`.
//! Its augmentation L of dimension ρ carries the constant π for the S
//! sequence. Exact terms come from `K^m` by exponentiation-by-squaring
//! over big integers — an O(ρ³ log n) fast path next to the O(n·ρ)
//! recurrence.
//!
//! The spectrum is known in closed form: the characteristic polynomial of
//! K factors as `(t − x)·(t^(ρ−2) + … + t + 1)`, so the eigenvalues are
//! `x` together with the non-unit (ρ−1)-th roots of unity; L appends the
//! eigenvalue 1. Eigenvectors are Vandermonde columns of the eigenvalues.
//! No general-purpose eigensolver is involved, which keeps the
//! decomposition deterministic across platforms.
//!
//! The Binet channel evaluates the spectral expansion
//! `J_n = Σ_i a_i·λ_i^(n−ρ+2)` in floating point. The dominant component
//! (eigenvalue x) has the exact rational coefficient `(x−1)·x^(ρ−2)/ρ`
//! and is carried exactly; the remaining components lie on the unit
//! circle and are evaluated as complex exponentials with angle arithmetic
//! reduced mod the root order, so they never drift however large n gets.
//! The channel is still an approximation (the unit-circle coefficients
//! come from a double-precision inverse), with a certified rounding
//! window checked by the test suite; the floor, recurrence and
//! matrix-power channels remain authoritative.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::params::SequenceParams;
use crate::recurrences::pi_constant;
use crate::sequences::{self, Term};

/// Whether a [`KeyMatrix`] is the plain J advancer K or the π-augmented
/// S advancer L.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    K,
    L,
}

/// Exact integer key matrix plus the parameters it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyMatrix {
    pub kind: MatrixKind,
    pub params: SequenceParams,
    /// Row-major entries; dimension ρ−1 for K, ρ for L.
    pub entries: Vec<Vec<BigInt>>,
    /// Present only for the L form.
    pub embedded_pi: Option<BigInt>,
}

impl KeyMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

/// Ordered exact state: `(J_n, …, J_{n−ρ+2})` for u, or
/// `(S_n, …, S_{n−ρ+2}, π)` for τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    pub entries: Vec<BigInt>,
}

impl StateVector {
    /// Base J state `u^(ρ−2) = (J_{ρ−2}, …, J_0)ᵀ` from the floor formula.
    pub fn u_base(params: SequenceParams) -> Self {
        let mut entries: Vec<BigInt> = sequences::generate_j(params, params.order())
            .into_iter()
            .map(BigInt::from)
            .collect();
        entries.reverse();
        StateVector { entries }
    }

    /// Base S state `τ^(ρ−2) = (S_{ρ−2}, …, S_0, π)ᵀ`.
    pub fn tau_base(params: SequenceParams, pi: BigInt) -> Self {
        let mut entries: Vec<BigInt> = sequences::generate_s(params, params.order())
            .into_iter()
            .map(BigInt::from)
            .collect();
        entries.reverse();
        entries.push(pi);
        StateVector { entries }
    }

    /// Newest sequence value in the state.
    pub fn head(&self) -> &BigInt {
        &self.entries[0]
    }
}

/// K: first row `(x−1, …, x−1, x)`, ones on the subdiagonal. For ρ = 2 it
/// degenerates to the 1×1 matrix `(x)`.
pub fn build_k(params: SequenceParams) -> KeyMatrix {
    let d = params.order();
    let x = params.x();
    let mut entries = vec![vec![BigInt::zero(); d]; d];
    for c in 0..d - 1 {
        entries[0][c] = BigInt::from(x - 1);
    }
    entries[0][d - 1] = BigInt::from(x);
    for r in 1..d {
        entries[r][r - 1] = BigInt::one();
    }
    KeyMatrix {
        kind: MatrixKind::K,
        params,
        entries,
        embedded_pi: None,
    }
}

/// L: K in the top-left block, a 1 feeding π into the first row, and a
/// bottom row `(0, …, 0, 1)` that carries π unchanged.
pub fn build_l(params: SequenceParams, pi: BigInt) -> KeyMatrix {
    let d = params.order() + 1;
    let k = build_k(params);
    let mut entries = vec![vec![BigInt::zero(); d]; d];
    for r in 0..d - 1 {
        for c in 0..d - 1 {
            entries[r][c] = k.entries[r][c].clone();
        }
    }
    entries[0][d - 1] = BigInt::one();
    entries[d - 1][d - 1] = BigInt::one();
    KeyMatrix {
        kind: MatrixKind::L,
        params,
        entries,
        embedded_pi: Some(pi),
    }
}

/// Exact matrix–vector product; one state-advance step.
pub fn advance_state(m: &KeyMatrix, s: &StateVector) -> Result<StateVector> {
    if m.dim() != s.entries.len() {
        return Err(Error::DimensionMismatch {
            matrix: m.dim(),
            vector: s.entries.len(),
        });
    }
    let entries = m
        .entries
        .iter()
        .map(|row| row.iter().zip(&s.entries).map(|(a, b)| a * b).sum())
        .collect();
    Ok(StateVector { entries })
}

/// Exact product of two square big-integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = a.len();
    let mut out = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] += aik * &b[k][j];
            }
        }
    }
    out
}

pub fn mat_identity(d: usize) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); d]; d];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

/// `m^e` by exponentiation-by-squaring, exact.
pub fn mat_pow(m: &[Vec<BigInt>], mut e: u64) -> Vec<Vec<BigInt>> {
    let mut base = m.to_vec();
    let mut acc = mat_identity(m.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// `J_n` via `K^(n−ρ+2)·u^(ρ−2)`, exact. Requires `n ≥ ρ−2` so the power
/// is non-negative; the zero-power case returns the base state's head.
pub fn term_by_matrix_power(params: SequenceParams, n: u64) -> Result<Term> {
    let base = params.order() as u64 - 1;
    if n < base {
        return Err(Error::IndexBelowBase { n, base });
    }
    let k = build_k(params);
    let power = mat_pow(&k.entries, n - base);
    let u = StateVector::u_base(params);
    let head: BigInt = power[0].iter().zip(&u.entries).map(|(a, b)| a * b).sum();
    Ok(head.to_biguint().expect("J terms are non-negative"))
}

/// `S_n` via `L^(n−ρ+2)·τ^(ρ−2)`, exact.
pub fn prefix_by_matrix_power(params: SequenceParams, n: u64) -> Result<Term> {
    let base = params.order() as u64 - 1;
    if n < base {
        return Err(Error::IndexBelowBase { n, base });
    }
    let pi = pi_constant(params)?;
    let l = build_l(params, pi);
    let power = mat_pow(&l.entries, n - base);
    let tau = StateVector::tau_base(params, l.embedded_pi.clone().unwrap());
    let head: BigInt = power[0].iter().zip(&tau.entries).map(|(a, b)| a * b).sum();
    Ok(head.to_biguint().expect("S terms are non-negative"))
}

/// Monic characteristic polynomial of K in ascending order:
/// `t^(ρ−1) − (x−1)·(t^(ρ−2) + … + t) − x`.
pub fn char_poly(params: SequenceParams) -> Vec<BigInt> {
    let d = params.order();
    let x = params.x();
    let mut coeffs = vec![-BigInt::from(x - 1); d + 1];
    coeffs[0] = -BigInt::from(x);
    coeffs[d] = BigInt::one();
    coeffs
}

/// Closed-form spectral component: either the dominant real eigenvalue x,
/// a primitive-angle root of unity `e^(2πi·k/order)`, or the unit
/// eigenvalue appended by L.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EigenKind {
    Base,
    Root { k: u64, order: u64 },
    Unit,
}

impl EigenKind {
    fn value(self, x: u64) -> Complex64 {
        match self {
            EigenKind::Base => Complex64::new(x as f64, 0.0),
            EigenKind::Root { k, order } => {
                Complex64::from_polar(1.0, TAU * k as f64 / order as f64)
            }
            EigenKind::Unit => Complex64::new(1.0, 0.0),
        }
    }

    /// `λ^e` without repeated multiplication: unit-circle eigenvalues get
    /// their exponent reduced mod the root order before a single
    /// `from_polar`.
    fn power(self, x: u64, e: u64) -> Complex64 {
        match self {
            EigenKind::Base => Complex64::new((x as f64).powi(e as i32), 0.0),
            EigenKind::Root { k, order } => {
                let reduced = (k % order) * (e % order) % order;
                Complex64::from_polar(1.0, TAU * reduced as f64 / order as f64)
            }
            EigenKind::Unit => Complex64::one(),
        }
    }
}

fn eigen_kinds(matrix_kind: MatrixKind, params: SequenceParams) -> Vec<EigenKind> {
    let order = params.order() as u64;
    let mut kinds = vec![EigenKind::Base];
    for k in 1..order {
        kinds.push(EigenKind::Root { k, order });
    }
    if matrix_kind == MatrixKind::L {
        kinds.push(EigenKind::Unit);
    }
    kinds
}

/// Closed-form eigendecomposition of a key matrix, with the inverse
/// eigenvector matrix computed numerically.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub eigenvalues: Vec<Complex64>,
    /// Eigenvector matrix, row-major; column j belongs to eigenvalue j.
    pub vectors: Vec<Vec<Complex64>>,
    pub inverse: Vec<Vec<Complex64>>,
    /// ∞-norm condition estimate ‖V‖·‖V⁻¹‖.
    pub condition_estimate: f64,
}

/// Default ceiling on the eigenvector matrix's condition estimate.
pub const DEFAULT_CONDITION_CEILING: f64 = 1e12;

pub fn eigensystem(m: &KeyMatrix) -> Result<Eigensystem> {
    eigensystem_with_ceiling(m, DEFAULT_CONDITION_CEILING)
}

pub fn eigensystem_with_ceiling(m: &KeyMatrix, ceiling: f64) -> Result<Eigensystem> {
    let params = m.params;
    let d = m.dim();
    let kinds = eigen_kinds(m.kind, params);
    let eigenvalues: Vec<Complex64> = kinds.iter().map(|k| k.value(params.x())).collect();

    let mut vectors = vec![vec![Complex64::zero(); d]; d];
    let companion_dim = params.order();
    for (j, kind) in kinds.iter().enumerate() {
        match kind {
            EigenKind::Base | EigenKind::Root { .. } => {
                // Vandermonde column (λ^(ρ−2), …, λ, 1), padded with a
                // trailing 0 in the L form.
                let lam = eigenvalues[j];
                for i in 0..companion_dim {
                    vectors[i][j] = lam.powi((companion_dim - 1 - i) as i32);
                }
            }
            EigenKind::Unit => {
                // (K − I)·w = −e₁ gives the head of the eigenvector; its
                // last entry is 1.
                let k = build_k(params);
                let mut a = vec![vec![Complex64::zero(); companion_dim]; companion_dim];
                for r in 0..companion_dim {
                    for c in 0..companion_dim {
                        a[r][c] = Complex64::new(
                            k.entries[r][c].to_f64().expect("small entry"),
                            0.0,
                        );
                    }
                    a[r][r] -= Complex64::one();
                }
                let mut rhs = vec![Complex64::zero(); companion_dim];
                rhs[0] = -Complex64::one();
                let w = solve(&a, &rhs).expect("K − I is nonsingular for x ≥ 2");
                for (i, wi) in w.into_iter().enumerate() {
                    vectors[i][j] = wi;
                }
                vectors[d - 1][j] = Complex64::one();
            }
        }
    }

    // scale each column to unit 2-norm; the Binet coefficients
    // v_{1,i}·(V⁻¹·base)_i are invariant under column scaling and the
    // condition estimate stops reflecting the raw x^(ρ−2) entry growth
    for j in 0..d {
        let norm = (0..d)
            .map(|i| vectors[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        for row in vectors.iter_mut() {
            row[j] /= norm;
        }
    }

    let inverse = invert(&vectors).expect("distinct eigenvalues give a nonsingular V");
    let condition_estimate = inf_norm(&vectors) * inf_norm(&inverse);
    if condition_estimate > ceiling {
        return Err(Error::IllConditioned {
            estimate: condition_estimate,
            ceiling,
        });
    }
    Ok(Eigensystem {
        eigenvalues,
        vectors,
        inverse,
        condition_estimate,
    })
}

fn inf_norm(m: &[Vec<Complex64>]) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Gaussian elimination with partial pivoting; `None` on a (numerically)
/// singular system.
fn solve(a: &[Vec<Complex64>], rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = a.len();
    let mut aug: Vec<Vec<Complex64>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut v = row.clone();
            v.push(*r);
            v
        })
        .collect();
    eliminate(&mut aug, d)?;
    Some((0..d).map(|i| aug[i][d]).collect())
}

fn invert(m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let d = m.len();
    let mut aug: Vec<Vec<Complex64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..d).map(|j| {
                if i == j {
                    Complex64::one()
                } else {
                    Complex64::zero()
                }
            }));
            v
        })
        .collect();
    eliminate(&mut aug, d)?;
    Some(
        (0..d)
            .map(|i| aug[i][d..].to_vec())
            .collect(),
    )
}

/// Reduces `[A | B]` to `[I | A⁻¹B]` in place.
fn eliminate(aug: &mut [Vec<Complex64>], d: usize) -> Option<()> {
    for col in 0..d {
        let pivot_row = (col..d).max_by(|&a, &b| {
            aug[a][col]
                .norm()
                .partial_cmp(&aug[b][col].norm())
                .expect("finite entries")
        })?;
        if aug[pivot_row][col].norm() < 1e-300 {
            return None;
        }
        aug.swap(col, pivot_row);
        let pivot = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= pivot;
        }
        for row in 0..d {
            if row == col {
                continue;
            }
            let factor = aug[row][col];
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..aug[row].len() {
                let sub = factor * aug[col][j];
                aug[row][j] -= sub;
            }
        }
    }
    Some(())
}

/// One Binet evaluation: the floating approximation, its nearest integer,
/// and the distance between the two.
#[derive(Debug, Clone)]
pub struct BinetValue {
    pub approx: f64,
    pub rounded: BigInt,
    pub residual: f64,
}

/// Spectral coefficients `a_i` with `J_n = Σ a_i·λ_i^(n−ρ+2)`:
/// `a_i = v_{1,i}·(V⁻¹·base)_i`.
fn spectral_coefficients(eig: &Eigensystem, base: &StateVector) -> Vec<Complex64> {
    let d = eig.vectors.len();
    let base_f: Vec<Complex64> = base
        .entries
        .iter()
        .map(|v| Complex64::new(v.to_f64().expect("base state fits f64"), 0.0))
        .collect();
    (0..d)
        .map(|i| {
            let ci: Complex64 = eig.inverse[i]
                .iter()
                .zip(&base_f)
                .map(|(a, b)| a * b)
                .sum();
            eig.vectors[0][i] * ci
        })
        .collect()
}

/// Assembles the final value from the exact dominant numerator
/// `num/ρ` and the floating sum of the bounded components.
fn assemble(
    numerator: BigUint,
    rho: u64,
    bounded: Complex64,
) -> BinetValue {
    let q = &numerator / rho;
    let frac = (&numerator % rho).to_f64().expect("remainder below rho") / rho as f64;
    let t = frac + bounded.re;
    let nearest = t.round();
    let rounded = BigInt::from(q) + BigInt::from(nearest as i64);
    let approx = numerator.to_f64().unwrap_or(f64::INFINITY) / rho as f64 + bounded.re;
    BinetValue {
        approx,
        rounded,
        residual: (t - nearest).abs(),
    }
}

/// Binet form for J: the dominant component `(x−1)·x^n/ρ` is exact, the
/// unit-circle components come from the eigensystem in double precision.
pub fn binet_j(params: SequenceParams, n: u64) -> Result<BinetValue> {
    let base_index = params.order() as u64 - 1;
    if n < base_index {
        return Err(Error::IndexBelowBase { n, base: base_index });
    }
    if !params.fermat_condition() {
        return Err(Error::ConditionUnsatisfied {
            x: params.x(),
            rho: params.rho(),
        });
    }
    let eig = eigensystem(&build_k(params))?;
    let coeffs = spectral_coefficients(&eig, &StateVector::u_base(params));
    let kinds = eigen_kinds(MatrixKind::K, params);
    let m = n - base_index;
    let mut bounded = Complex64::zero();
    for (i, kind) in kinds.iter().enumerate().skip(1) {
        bounded += coeffs[i] * kind.power(params.x(), m);
    }
    let numerator = sequences::power(params.x(), n) * (params.x() - 1);
    Ok(assemble(numerator, params.rho(), bounded))
}

/// Binet form for S via L: dominant component `x^(n+1)/ρ` exact, plus the
/// constant eigenvalue-1 component and the unit-circle oscillation.
pub fn binet_s(params: SequenceParams, n: u64) -> Result<BinetValue> {
    let base_index = params.order() as u64 - 1;
    if n < base_index {
        return Err(Error::IndexBelowBase { n, base: base_index });
    }
    let pi = pi_constant(params)?;
    let l = build_l(params, pi.clone());
    let eig = eigensystem(&l)?;
    let coeffs = spectral_coefficients(&eig, &StateVector::tau_base(params, pi));
    let kinds = eigen_kinds(MatrixKind::L, params);
    let m = n - base_index;
    let mut bounded = Complex64::zero();
    for (i, kind) in kinds.iter().enumerate().skip(1) {
        bounded += coeffs[i] * kind.power(params.x(), m);
    }
    let numerator = sequences::power(params.x(), n + 1);
    Ok(assemble(numerator, params.rho(), bounded))
}
