//! Perazzo forms: X_0 p_0 + … + X_n p_n + G with the p_i of degree d−1 in
//! the U-variables, linearly independent and (by the n ≥ m pigeonhole)
//! algebraically dependent.

use std::fmt;


use thiserror::Error;

use crate::comb::binomial_usize;
use crate::linalg::Field;
use crate::poly::{monomials_of_degree, support_coeff_matrix, Monomial, Polynomial, VarLayout};
use crate::seed::derived_rng;

const MAX_SAMPLING_ATTEMPTS: u64 = 16;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("invalid Perazzo form: {0}")]
    Invalid(ValidationReport),
    #[error("contracted p_i are linearly dependent for this linear form")]
    IndependenceLost,
    #[error("could not sample linearly independent p_i in {0} attempts")]
    RetryExhausted(u64),
    #[error("canonical P^4 forms are classified for d >= 5 only (got d = {0})")]
    DegreeTooSmall(usize),
    #[error("no Perazzo form exists for (n,m,d) = ({n},{m},{d}): need n >= m >= 2 and n+1 <= C(d+m-2, m-1)")]
    BadParameters { n: usize, m: usize, d: usize },
    #[error("linear form must be nonzero")]
    ZeroLinearForm,
    #[error("contraction requires n+1 <= C(d+m-3, m-1) = {bound}, but n+1 = {n_plus_1}")]
    ContractionBound { n_plus_1: usize, bound: usize },
    #[error("case III requires a nonzero lambda")]
    ZeroLambda,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// n >= m >= 2 fails.
    SizeOrder { n: usize, m: usize },
    /// n+1 exceeds dim `K[U]_{d-1}`, so independence is impossible.
    DimensionBound { n_plus_1: usize, bound: usize },
    /// Wrong number of p_i.
    WrongArity { expected: usize, found: usize },
    /// p_i not homogeneous of degree d-1 (or zero).
    WrongDegree { index: usize, expected: usize, found: Option<usize> },
    /// G nonzero of degree != d.
    WrongGDegree { expected: usize, found: usize },
    /// The p_i fail linear independence.
    Dependent { rank: usize, needed: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SizeOrder { n, m } => write!(f, "need n >= m >= 2, got (n,m)=({n},{m})"),
            Violation::DimensionBound { n_plus_1, bound } => {
                write!(f, "n+1 = {n_plus_1} exceeds dim K[U]_(d-1) = {bound}")
            }
            Violation::WrongArity { expected, found } => {
                write!(f, "expected {expected} forms p_i, found {found}")
            }
            Violation::WrongDegree { index, expected, found } => match found {
                Some(d) => write!(f, "p_{index} has degree {d}, expected {expected}"),
                None => write!(f, "p_{index} is zero"),
            },
            Violation::WrongGDegree { expected, found } => {
                write!(f, "G has degree {found}, expected {expected}")
            }
            Violation::Dependent { rank, needed } => {
                write!(f, "p_0..p_n span only {rank} dimensions, need {needed}")
            }
        }
    }
}

/// Outcome of checking every Definition invariant, plus the full-Perazzo
/// flag (equality in the dimension bound).
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub is_full_perazzo: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid{}", if self.is_full_perazzo { " (full Perazzo)" } else { "" })
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", msgs.join("; "))
        }
    }
}

/// The three P^4 (n = m = 2) shapes with termwise minimal Hilbert function.
#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalKind<F: Field> {
    /// X U^{d-1} + Y U^{d-2} V + Z U^{d-3} V^2
    CaseI,
    /// X U^{d-1} + Y U^{d-2} V + Z V^{d-1}
    CaseII,
    /// X U^{d-1} + Y (U + λV)^{d-1} + Z V^{d-1}, λ ≠ 0
    CaseIII(F::Elem),
}

/// Structured Macaulay dual generator of a Perazzo algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct PerazzoForm<F: Field> {
    field: F,
    n: usize,
    m: usize,
    d: usize,
    p: Vec<Polynomial<F>>,
    g: Polynomial<F>,
}

/// n >= m >= 2 and n+1 <= C(d+m-2, m-1).
pub fn params_valid(n: usize, m: usize, d: usize) -> bool {
    n >= m && m >= 2 && d >= 1 && n < binomial_usize(d + m - 2, m - 1)
}

impl<F: Field> PerazzoForm<F> {
    /// Store the pieces without checking; run `validate` for the verdict.
    /// The p_i and G must live in the pure U-layout with m variables.
    pub fn new(field: F, n: usize, m: usize, d: usize, p: Vec<Polynomial<F>>, g: Polynomial<F>) -> Self {
        assert!(d >= 1, "degree must be positive");
        let u = VarLayout::u_only(m);
        for q in p.iter().chain(std::iter::once(&g)) {
            assert_eq!(q.layout(), u, "p_i and G must be polynomials in the U-variables");
        }
        PerazzoForm { field, n, m, d, p, g }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &[Polynomial<F>] {
        &self.p
    }

    pub fn g(&self) -> &Polynomial<F> {
        &self.g
    }

    pub fn layout(&self) -> VarLayout {
        VarLayout::perazzo(self.n, self.m)
    }

    pub fn u_layout(&self) -> VarLayout {
        VarLayout::u_only(self.m)
    }

    /// Check every Definition invariant. Algebraic dependence of the p_i is
    /// automatic from n+1 > m forms in m variables and is recorded, never
    /// computed.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let bound = binomial_usize(self.d + self.m - 2, self.m - 1);
        if !(self.n >= self.m && self.m >= 2) {
            violations.push(Violation::SizeOrder { n: self.n, m: self.m });
        }
        if self.n + 1 > bound {
            violations.push(Violation::DimensionBound { n_plus_1: self.n + 1, bound });
        }
        if self.p.len() != self.n + 1 {
            violations.push(Violation::WrongArity { expected: self.n + 1, found: self.p.len() });
        }
        for (i, q) in self.p.iter().enumerate() {
            if q.degree() != Some(self.d - 1) {
                violations.push(Violation::WrongDegree {
                    index: i,
                    expected: self.d - 1,
                    found: q.degree(),
                });
            }
        }
        if let Some(gd) = self.g.degree() {
            if gd != self.d {
                violations.push(Violation::WrongGDegree { expected: self.d, found: gd });
            }
        }
        if violations.is_empty() {
            let refs: Vec<&Polynomial<F>> = self.p.iter().collect();
            let rank = support_coeff_matrix(&self.field, &refs).rank();
            if rank != self.n + 1 {
                violations.push(Violation::Dependent { rank, needed: self.n + 1 });
            }
        }
        ValidationReport { violations, is_full_perazzo: self.n + 1 == bound }
    }

    pub fn validated(self) -> Result<Self, FormError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(FormError::Invalid(report))
        }
    }

    /// The polynomial X_0 p_0 + … + X_n p_n + G over the full layout.
    pub fn assemble(&self) -> Result<Polynomial<F>, FormError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(FormError::Invalid(report));
        }
        let layout = self.layout();
        let mut acc = self.g.embed(layout, self.n + 1);
        for (i, q) in self.p.iter().enumerate() {
            let xi = Polynomial::monomial(
                self.field.clone(),
                layout,
                Monomial::var(layout.total(), i),
                self.field.one(),
            );
            acc = acc.add(&xi.mul(&q.embed(layout, self.n + 1)));
        }
        Ok(acc)
    }

    /// ℓ∘F as a structured Perazzo form of degree d−1 (the degree-drop
    /// construction). `ell` lists the coefficients (a_0..a_n, b_1..b_m) of
    /// ℓ = Σ a_i x_i + Σ b_r u_r.
    pub fn contract_linear(&self, ell: &[F::Elem]) -> Result<PerazzoForm<F>, FormError> {
        assert_eq!(ell.len(), self.n + 1 + self.m, "linear form arity mismatch");
        let f = &self.field;
        if ell.iter().all(|c| f.is_zero(c)) {
            return Err(FormError::ZeroLinearForm);
        }
        let bound = binomial_usize(self.d + self.m - 3, self.m - 1);
        if self.n + 1 > bound {
            return Err(FormError::ContractionBound { n_plus_1: self.n + 1, bound });
        }
        let (a, b) = ell.split_at(self.n + 1);
        let deriv = |q: &Polynomial<F>| -> Polynomial<F> {
            let mut acc = Polynomial::zero(f.clone(), self.u_layout());
            for (r, br) in b.iter().enumerate() {
                if !f.is_zero(br) {
                    acc = acc.add(&q.differentiate(r).scale(br));
                }
            }
            acc
        };
        let p_tilde: Vec<Polynomial<F>> = self.p.iter().map(&deriv).collect();
        let mut g_tilde = deriv(&self.g);
        for (ai, q) in a.iter().zip(&self.p) {
            if !f.is_zero(ai) {
                g_tilde = g_tilde.add(&q.scale(ai));
            }
        }
        let out = PerazzoForm::new(f.clone(), self.n, self.m, self.d - 1, p_tilde, g_tilde);
        let report = out.validate();
        if report.violations.iter().any(|v| matches!(v, Violation::Dependent { .. } | Violation::WrongDegree { .. })) {
            return Err(FormError::IndependenceLost);
        }
        if !report.is_valid() {
            return Err(FormError::Invalid(report));
        }
        Ok(out)
    }
}

fn monomial_poly<F: Field>(field: &F, m: usize, exps: Vec<u32>) -> Polynomial<F> {
    Polynomial::monomial(field.clone(), VarLayout::u_only(m), Monomial::new(exps), field.one())
}

/// The P^4 form of the requested case, exactly as classified for d >= 5.
pub fn gen_canonical<F: Field>(field: &F, kind: CanonicalKind<F>, d: usize) -> Result<PerazzoForm<F>, FormError> {
    if d < 5 {
        return Err(FormError::DegreeTooSmall(d));
    }
    let e = (d - 1) as u32;
    let p = match kind {
        CanonicalKind::CaseI => vec![
            monomial_poly(field, 2, vec![e, 0]),
            monomial_poly(field, 2, vec![e - 1, 1]),
            monomial_poly(field, 2, vec![e - 2, 2]),
        ],
        CanonicalKind::CaseII => vec![
            monomial_poly(field, 2, vec![e, 0]),
            monomial_poly(field, 2, vec![e - 1, 1]),
            monomial_poly(field, 2, vec![0, e]),
        ],
        CanonicalKind::CaseIII(lambda) => {
            if field.is_zero(&lambda) {
                return Err(FormError::ZeroLambda);
            }
            let u_plus_lambda_v = Polynomial::linear(
                field.clone(),
                VarLayout::u_only(2),
                &[field.one(), lambda],
            );
            vec![
                monomial_poly(field, 2, vec![e, 0]),
                u_plus_lambda_v.pow(e as usize),
                monomial_poly(field, 2, vec![0, e]),
            ]
        }
    };
    let zero_g = Polynomial::zero(field.clone(), VarLayout::u_only(2));
    PerazzoForm::new(field.clone(), 2, 2, d, p, zero_g).validated()
}

/// F = Σ X_i L_i^{d-1} for random linear forms L_i; achieves the termwise
/// minimal Hilbert function at a generic seed.
pub fn gen_min<F: Field>(field: &F, n: usize, m: usize, d: usize, seed: u64) -> Result<PerazzoForm<F>, FormError> {
    if !params_valid(n, m, d) {
        return Err(FormError::BadParameters { n, m, d });
    }
    sample_until_independent(field, n, m, d, seed, |field, rng| {
        (0..=n)
            .map(|_| {
                let coeffs: Vec<F::Elem> = (0..m).map(|_| field.sample(rng)).collect();
                Polynomial::linear(field.clone(), VarLayout::u_only(m), &coeffs).pow(d - 1)
            })
            .collect()
    })
    .map(|(p, _)| {
        let zero_g = Polynomial::zero(field.clone(), VarLayout::u_only(m));
        PerazzoForm::new(field.clone(), n, m, d, p, zero_g)
    })
}

/// Uniformly random p_i (and G when `with_g`); achieves the termwise
/// maximal Hilbert function at a generic seed.
pub fn gen_general<F: Field>(
    field: &F,
    n: usize,
    m: usize,
    d: usize,
    with_g: bool,
    seed: u64,
) -> Result<PerazzoForm<F>, FormError> {
    if !params_valid(n, m, d) {
        return Err(FormError::BadParameters { n, m, d });
    }
    let random_form = |field: &F, rng: &mut rand_chacha::ChaCha8Rng, degree: usize| {
        let terms = monomials_of_degree(m, degree)
            .into_iter()
            .map(|mono| (mono, field.sample(rng)));
        Polynomial::from_terms(field.clone(), VarLayout::u_only(m), terms).unwrap()
    };
    sample_until_independent(field, n, m, d, seed, |field, rng| {
        (0..=n).map(|_| random_form(field, rng, d - 1)).collect()
    })
    .map(|(p, attempt)| {
        let g = if with_g {
            let mut rng = derived_rng(seed, attempt.wrapping_add(1) << 32);
            random_form(field, &mut rng, d)
        } else {
            Polynomial::zero(field.clone(), VarLayout::u_only(m))
        };
        PerazzoForm::new(field.clone(), n, m, d, p, g)
    })
}

/// Full Perazzo form whose p_i are all of `K[U]_{d-1}` as monomials; n is
/// forced to C(d+m-2, m-1) − 1. The (m,d) = (3,4) instance is the Stanley
/// example with h-vector (1,13,12,13,1).
pub fn gen_full_monomial<F: Field>(field: &F, m: usize, d: usize) -> Result<PerazzoForm<F>, FormError> {
    let n_plus_1 = binomial_usize(d + m - 2, m - 1);
    let n = n_plus_1 - 1;
    if !params_valid(n, m, d) {
        return Err(FormError::BadParameters { n, m, d });
    }
    let p: Vec<Polynomial<F>> = monomials_of_degree(m, d - 1)
        .into_iter()
        .map(|mono| Polynomial::monomial(field.clone(), VarLayout::u_only(m), mono, field.one()))
        .collect();
    let zero_g = Polynomial::zero(field.clone(), VarLayout::u_only(m));
    PerazzoForm::new(field.clone(), n, m, d, p, zero_g).validated()
}

fn sample_until_independent<F: Field>(
    field: &F,
    n: usize,
    _m: usize,
    _d: usize,
    seed: u64,
    sampler: impl Fn(&F, &mut rand_chacha::ChaCha8Rng) -> Vec<Polynomial<F>>,
) -> Result<(Vec<Polynomial<F>>, u64), FormError> {
    for attempt in 0..MAX_SAMPLING_ATTEMPTS {
        let mut rng = derived_rng(seed, attempt);
        let p = sampler(field, &mut rng);
        let refs: Vec<&Polynomial<F>> = p.iter().collect();
        if support_coeff_matrix(field, &refs).rank() == n + 1 {
            return Ok((p, attempt));
        }
    }
    Err(FormError::RetryExhausted(MAX_SAMPLING_ATTEMPTS))
}
