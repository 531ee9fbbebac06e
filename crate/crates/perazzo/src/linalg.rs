//! Exact field arithmetic and dense exact linear algebra.
//!
//! Two coefficient fields are supported: a large prime field (fast default)
//! and arbitrary-precision rationals (certification mode). Rank, kernel and
//! column-space routines use deterministic pivoting (first nonzero entry
//! scanning left-to-right, top-to-bottom), so every basis choice is
//! reproducible across runs and platforms.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Largest prime below 2^62; the default coefficient field.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// Primes must exceed this bound so that random-seed genericity failures
/// stay negligible.
pub const MIN_PRIME: u64 = 1 << 40;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} too small: need p > 2^40")]
    PrimeTooSmall(u64),
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

/// Which exact field a computation runs over.
///
/// Prime moduli are restricted to machine words (p < 2^63); every published
/// use is the fixed 62-bit default, and word-size arithmetic keeps rank
/// computation fast.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn default_prime() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        match *self {
            FieldSpec::Prime(p) => {
                if !is_prime_u64(p) {
                    Err(FieldError::NotPrime(p))
                } else if p <= MIN_PRIME {
                    Err(FieldError::PrimeTooSmall(p))
                } else {
                    Ok(())
                }
            }
            FieldSpec::Rational => Ok(()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

/// An exact coefficient field. Operations take the field by reference so the
/// prime modulus travels with the computation rather than with each element.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let bi = self.inv(b).expect("division by zero field element");
        self.mul(a, &bi)
    }

    /// Image of an arbitrary-precision integer in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Exact division by a positive integer (always invertible here: every
    /// integer that arises is a product of factors smaller than the prime).
    fn div_by_uint(&self, a: &Self::Elem, n: &BigUint) -> Self::Elem {
        let img = self.from_bigint(&BigInt::from(n.clone()));
        self.div(a, &img)
    }

    /// Canonical text form: decimal residue, or `a/b` in lowest terms.
    fn render(&self, a: &Self::Elem) -> String;

    /// Parse the forms produced by `render`, plus signed integers.
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// Random element for genericity arguments: uniform residue over a prime
    /// field, a small integer over the rationals.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Random nonzero element.
    fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Matrix rank hook so each field can pick its elimination strategy.
    fn rank(&self, m: &ExactMatrix<Self>) -> usize {
        m.rref().pivots.len()
    }
}

/// F_p for a word-sized prime p. Elements are canonical residues in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        let spec = FieldSpec::Prime(p);
        spec.validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^62 so the sum cannot overflow
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit words
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        let mut t = t0 % self.p as i128;
        if t < 0 {
            t += self.p as i128;
        }
        Some(t as u64)
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.sign() == num_bigint::Sign::Minus {
            r += &p;
        }
        r.to_u64().expect("residue fits u64")
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = self.parse(num)?;
            let d = self.parse(den)?;
            return self
                .inv(&d)
                .map(|di| self.mul(&n, &di))
                .ok_or_else(|| FieldError::Parse(s.to_string()));
        }
        let n: BigInt = s.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        Ok(self.from_bigint(&n))
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn rank(&self, m: &ExactMatrix<Self>) -> usize {
        // forward elimination only; no back-substitution needed for rank
        let mut a = m.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| a.data[r * cols + col] != 0) else {
                continue;
            };
            a.swap_rows(rank, pr);
            let pivot_inv = self.inv(&a.data[rank * cols + col]).unwrap();
            for r in rank + 1..rows {
                let factor = a.data[r * cols + col];
                if factor == 0 {
                    continue;
                }
                let scale = self.mul(&factor, &pivot_inv);
                for c in col..cols {
                    let v = self.mul(&scale, &a.data[rank * cols + c]);
                    a.data[r * cols + c] = self.sub(&a.data[r * cols + c], &v);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// Arbitrary-precision rationals, always in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RationalField;

/// Bound for random rational-mode coefficients.
const RATIONAL_SAMPLE_BOUND: i64 = 999;

impl Field for RationalField {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(BigRational::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            // exact decimal: sign and integer part, then fractional digits
            let neg = int.trim_start().starts_with('-');
            let i: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let f: BigInt = frac.parse().map_err(|_| bad())?;
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            let mag = i.abs() * &den + f;
            let signed = if neg { -mag } else { mag };
            return Ok(BigRational::new(signed, den));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n = rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND);
        BigRational::from_integer(BigInt::from(n))
    }

    fn rank(&self, m: &ExactMatrix<Self>) -> usize {
        // clear denominators row by row, then fraction-free Bareiss
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
        for r in 0..m.rows {
            let mut lcm = BigInt::one();
            for c in 0..m.cols {
                lcm = lcm.lcm(m.get(r, c).denom());
            }
            let mut row: Vec<BigInt> = (0..m.cols)
                .map(|c| {
                    let e = m.get(r, c);
                    e.numer() * (&lcm / e.denom())
                })
                .collect();
            // strip the row content; scaling rows leaves the rank unchanged
            let mut g = BigInt::zero();
            for e in &row {
                g = g.gcd(e);
            }
            if !g.is_zero() && !g.is_one() {
                for e in &mut row {
                    *e /= &g;
                }
            }
            rows.push(row);
        }
        bareiss_rank(rows, m.cols)
    }
}

/// Fraction-free (Bareiss) echelon rank over the integers. All divisions are
/// exact by the Sylvester identity.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dense matrix over an exact field, row-major, entries in canonical form.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.render(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of reduced row echelon elimination.
pub struct Rref<F: Field> {
    pub matrix: ExactMatrix<F>,
    /// Pivot column indices, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, data }
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    /// Build from integer entries (test and fixture convenience).
    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self::from_fn(field.clone(), rows, cols, |r, c| field.from_i64(entries[r * cols + c]))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row counts must match");
        Self::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let f = self.field.clone();
        Self::from_fn(f.clone(), self.rows, other.cols, |r, c| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let t = f.mul(self.get(r, k), other.get(k, c));
                acc = f.add(&acc, &t);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "vector length must match cols");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    let t = f.mul(self.get(r, c), &v[c]);
                    acc = f.add(&acc, &t);
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Self::from_fn(self.field.clone(), self.rows, self.cols, |r, c| self.field.mul(self.get(r, c), s))
    }

    pub fn add_matrix(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.add(self.get(r, c), other.get(r, c))
        })
    }

    /// Reduced row echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field.clone();
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !f.is_zero(&a.data[r * cols + col])) else {
                continue;
            };
            a.swap_rows(rank, pr);
            let inv = f.inv(&a.data[rank * cols + col]).unwrap();
            for c in col..cols {
                a.data[rank * cols + c] = f.mul(&a.data[rank * cols + c], &inv);
            }
            for r in 0..rows {
                if r == rank || f.is_zero(&a.data[r * cols + col]) {
                    continue;
                }
                let factor = a.data[r * cols + col].clone();
                for c in col..cols {
                    let t = f.mul(&factor, &a.data[rank * cols + c]);
                    a.data[r * cols + c] = f.sub(&a.data[r * cols + c], &t);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        Rref { matrix: a, pivots }
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        self.field.clone().rank(self)
    }

    /// Basis of the right kernel {v : Mv = 0}; count = cols - rank.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let rref = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in rref.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in rref.pivots.iter().enumerate() {
                v[p] = f.neg(rref.matrix.get(i, free));
            }
            debug_assert!(self.mul_vec(&v).iter().all(|e| f.is_zero(e)));
            basis.push(v);
        }
        basis
    }

    /// Greedy left-to-right pivot columns of the column space, together with
    /// the matrix formed by those original columns.
    pub fn column_space_basis(&self) -> (Vec<usize>, ExactMatrix<F>) {
        let pivots = self.rref().pivots;
        let basis = ExactMatrix::from_fn(self.field.clone(), self.rows, pivots.len(), |r, c| {
            self.get(r, pivots[c]).clone()
        });
        (pivots, basis)
    }

    /// Determinant by forward elimination (square matrices only).
    pub fn det(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let f = self.field.clone();
        let mut a = self.clone();
        let n = a.rows;
        let mut acc = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !f.is_zero(&a.data[r * n + col])) else {
                return f.zero();
            };
            if pr != col {
                a.swap_rows(col, pr);
                acc = f.neg(&acc);
            }
            let pivot = a.data[col * n + col].clone();
            acc = f.mul(&acc, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for r in col + 1..n {
                if f.is_zero(&a.data[r * n + col]) {
                    continue;
                }
                let scale = f.mul(&a.data[r * n + col], &inv);
                for c in col..n {
                    let t = f.mul(&scale, &a.data[col * n + c]);
                    a.data[r * n + c] = f.sub(&a.data[r * n + c], &t);
                }
            }
        }
        acc
    }

    /// Solve A·X = B for every column of B at once. Free variables are set to
    /// zero. Returns `None` if any column of B is outside the column space.
    pub fn solve_many(&self, b: &Self) -> Option<ExactMatrix<F>> {
        assert_eq!(self.rows, b.rows, "row counts must match");
        let aug = self.hstack(b);
        let rref = aug.rref();
        // a pivot landing in the B block means inconsistency
        if rref.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let f = self.field.clone();
        let mut x = ExactMatrix::zeros(f, self.cols, b.cols);
        for (i, &p) in rref.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, rref.matrix.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn default_prime_is_valid() {
        assert!(FieldSpec::default_prime().validate().is_ok());
        assert!(FieldSpec::Prime(1 << 41).validate().is_err());
        assert!(FieldSpec::Prime(4_611_686_018_427_387_846).validate().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = fp();
        for a in [1u64, 2, 17, DEFAULT_PRIME - 1, 123_456_789_012_345] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert!(f.inv(&0).is_none());
    }

    #[test]
    fn rational_parse_forms() {
        let f = RationalField;
        assert_eq!(f.parse("3/4").unwrap(), f.div(&f.from_i64(3), &f.from_i64(4)));
        assert_eq!(f.parse("-0.25").unwrap(), f.div(&f.from_i64(-1), &f.from_i64(4)));
        assert_eq!(f.parse("12").unwrap(), f.from_i64(12));
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("abc").is_err());
    }

    #[test]
    fn identity_rank_three() {
        let m = ExactMatrix::identity(fp(), 3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel_basis().is_empty());
        let (pivots, basis) = m.column_space_basis();
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(basis.cols(), 3);
    }

    #[test]
    fn proportional_rows_rank_one() {
        let m = ExactMatrix::from_i64(RationalField, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
        let (pivots, _) = m.column_space_basis();
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn kernel_of_difference_row() {
        let f = fp();
        let m = ExactMatrix::from_i64(f, 1, 2, &[1, -1]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // spans {(t, t)}
        assert_eq!(k[0][0], k[0][1]);
        assert!(!f.is_zero(&k[0][0]));
    }

    #[test]
    fn kernel_of_identity_empty() {
        let m = ExactMatrix::identity(fp(), 2);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn empty_matrices_have_rank_zero() {
        assert_eq!(ExactMatrix::zeros(fp(), 0, 5).rank(), 0);
        assert_eq!(ExactMatrix::zeros(fp(), 4, 0).rank(), 0);
        assert_eq!(ExactMatrix::zeros(fp(), 0, 0).rank(), 0);
        assert_eq!(ExactMatrix::zeros(fp(), 0, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn solve_many_consistent_and_not() {
        let f = fp();
        let a = ExactMatrix::from_i64(f, 3, 2, &[1, 0, 0, 1, 1, 1]);
        let b = ExactMatrix::from_i64(f, 3, 1, &[2, 3, 5]);
        let x = a.solve_many(&b).unwrap();
        assert_eq!(a.mat_mul(&x), b);
        let bad = ExactMatrix::from_i64(f, 3, 1, &[2, 3, 6]);
        assert!(a.solve_many(&bad).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-50i64..50, r * c).prop_map(move |v| (r, c, v))
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank((r, c, v) in arb_matrix()) {
            let m = ExactMatrix::from_i64(fp(), r, c, &v);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_plus_nullity_is_cols((r, c, v) in arb_matrix()) {
            let m = ExactMatrix::from_i64(fp(), r, c, &v);
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), c);
            let q = ExactMatrix::from_i64(RationalField, r, c, &v);
            prop_assert_eq!(q.rank() + q.kernel_basis().len(), c);
        }

        #[test]
        fn rank_agrees_across_fields((r, c, v) in arb_matrix()) {
            let m = ExactMatrix::from_i64(fp(), r, c, &v);
            let q = ExactMatrix::from_i64(RationalField, r, c, &v);
            prop_assert_eq!(m.rank(), q.rank());
        }

        #[test]
        fn rank_invariant_under_permutation(
            (r, c, v) in arb_matrix(),
            rowseed in any::<u64>(),
            colseed in any::<u64>(),
        ) {
            let m = ExactMatrix::from_i64(fp(), r, c, &v);
            let rperm = pseudo_perm(r, rowseed);
            let cperm = pseudo_perm(c, colseed);
            let permuted = ExactMatrix::from_fn(fp(), r, c, |i, j| *m.get(rperm[i], cperm[j]));
            prop_assert_eq!(m.rank(), permuted.rank());
        }

        #[test]
        fn kernel_vectors_annihilate((r, c, v) in arb_matrix()) {
            let f = fp();
            let m = ExactMatrix::from_i64(f, r, c, &v);
            for vker in m.kernel_basis() {
                prop_assert!(m.mul_vec(&vker).iter().all(|e| f.is_zero(e)));
            }
        }
    }

    fn pseudo_perm(n: usize, seed: u64) -> Vec<usize> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut v: Vec<usize> = (0..n).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        v.shuffle(&mut rng);
        v
    }
}
