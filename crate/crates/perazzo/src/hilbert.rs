//! Hilbert functions of Perazzo algebras: closed-form termwise extremes,
//! unimodality predicates, and the exact rank computation through the
//! catalecticant block matrix.
//!
//! Throughout, s = floor(d/2) and
//!   α_i = C(m+i−1, m−1),
//!   β_i = C(d+m−i−1, m−1),
//!   γ_i = (n+1)·C(m+i−2, m−1).
//! The termwise maximal h-vector is min{α_i+β_i, α_i+γ_i}; the termwise
//! minimal one is min{2(n+1), α_i+n+1, α_i+β_i}. Both are computed on
//! 0..=s and reflected (the h-vector of a Gorenstein algebra is symmetric).

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::comb::binomial;
use crate::form::{params_valid, FormError, PerazzoForm};
use crate::linalg::{ExactMatrix, Field};
use crate::poly::{monomials_of_degree, Polynomial};

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("no Perazzo form exists for (n,m,d) = ({n},{m},{d})")]
    BadParameters { n: usize, m: usize, d: usize },
    #[error("h-vector entries for (n,m,d) = ({n},{m},{d}) exceed u64")]
    TooLarge { n: usize, m: usize, d: usize },
    #[error("rank asymmetry: h_{i} = {lo} but h_{j} = {hi}")]
    Asymmetry { i: usize, j: usize, lo: u64, hi: u64 },
    #[error("h-vector must start at 1, got {0}")]
    BadStart(u64),
    #[error("h-vector not symmetric at index {0}")]
    NotSymmetric(usize),
}

/// Symmetric h-vector (h_0, …, h_d) with h_0 = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HVector {
    entries: Vec<u64>,
}

impl HVector {
    pub fn new(entries: Vec<u64>) -> Result<Self, HilbertError> {
        assert!(!entries.is_empty());
        if entries[0] != 1 {
            return Err(HilbertError::BadStart(entries[0]));
        }
        let d = entries.len() - 1;
        for i in 0..=d / 2 {
            if entries[i] != entries[d - i] {
                return Err(HilbertError::NotSymmetric(i));
            }
        }
        Ok(HVector { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn socle_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.entries)
    }

    /// Termwise comparison (the natural partial order on h-vectors).
    pub fn le(&self, other: &HVector) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Single rise to one peak (plateaus allowed), then a single fall.
pub fn is_unimodal(h: &[u64]) -> bool {
    let mut i = 0;
    while i + 1 < h.len() && h[i] <= h[i + 1] {
        i += 1;
    }
    while i + 1 < h.len() && h[i] >= h[i + 1] {
        i += 1;
    }
    i + 1 == h.len()
}

fn check_params(n: usize, m: usize, d: usize) -> Result<(), HilbertError> {
    if params_valid(n, m, d) {
        Ok(())
    } else {
        Err(HilbertError::BadParameters { n, m, d })
    }
}

/// (α_i, β_i, γ_i); exact arbitrary-precision evaluation, truncated to u64.
pub fn abg(n: usize, m: usize, d: usize, i: usize) -> (u64, u64, u64) {
    let to = |b: num_bigint::BigUint| {
        b.to_u64()
            .unwrap_or_else(|| panic!("alpha/beta/gamma overflow u64 at (n,m,d,i)=({n},{m},{d},{i})"))
    };
    let alpha = to(binomial(m + i - 1, m - 1));
    let beta = if i < d + m { to(binomial(d + m - i - 1, m - 1)) } else { 0 };
    let gamma_inner = if m + i >= 2 { binomial(m + i - 2, m - 1) } else { 0u32.into() };
    let gamma = to(gamma_inner * (n as u64 + 1));
    (alpha, beta, gamma)
}

/// True when all α, β, γ over 0..=s (and the derived h entries) fit u64.
pub fn params_fit_u64(n: usize, m: usize, d: usize) -> bool {
    let bound = binomial(d + m - 1, m - 1) * (n as u64 + 1) * 2u32;
    bound.to_u64().is_some()
}

fn reflect(mut half: Vec<u64>, d: usize) -> Vec<u64> {
    for i in (0..=(d - 1) / 2).rev() {
        let v = half[i];
        half.push(v);
    }
    debug_assert_eq!(half.len(), d + 1);
    half
}

/// Termwise maximal h-vector: h_i = min{α_i+β_i, α_i+γ_i} on 0..=s,
/// reflected.
pub fn h_max(n: usize, m: usize, d: usize) -> Result<HVector, HilbertError> {
    check_params(n, m, d)?;
    if !params_fit_u64(n, m, d) {
        return Err(HilbertError::TooLarge { n, m, d });
    }
    let s = d / 2;
    let half: Vec<u64> = (0..=s)
        .map(|i| {
            let (a, b, g) = abg(n, m, d, i);
            (a + b).min(a + g)
        })
        .collect();
    HVector::new(reflect(half, d))
}

/// Termwise minimal h-vector: h_0 = 1 and
/// h_i = min{2(n+1), α_i+n+1, α_i+β_i} for 1 <= i <= s, reflected.
pub fn h_min(n: usize, m: usize, d: usize) -> Result<HVector, HilbertError> {
    check_params(n, m, d)?;
    if !params_fit_u64(n, m, d) {
        return Err(HilbertError::TooLarge { n, m, d });
    }
    let s = d / 2;
    let np1 = n as u64 + 1;
    let mut half = vec![1u64];
    for i in 1..=s {
        let (a, b, _) = abg(n, m, d, i);
        half.push((2 * np1).min(a + np1).min(a + b));
    }
    HVector::new(reflect(half, d))
}

/// Unimodality of the maximal h-vector, decided by the closed-form
/// criterion: for m >= 3 it holds exactly when γ_{s−1} < β_{s−1} and
/// α_{s−1}+γ_{s−1} <= α_s+β_s; for m = 2 the maximal vector is always
/// unimodal.
pub fn predict_hmax_unimodal(n: usize, m: usize, d: usize) -> Result<bool, HilbertError> {
    check_params(n, m, d)?;
    if m == 2 {
        return Ok(true);
    }
    let s = d / 2;
    if s == 0 {
        return Ok(true);
    }
    let (a_s1, b_s1, g_s1) = abg(n, m, d, s - 1);
    let (a_s, b_s, _) = abg(n, m, d, s);
    Ok(g_s1 < b_s1 && a_s1 + g_s1 <= a_s + b_s)
}

/// Unimodality of the minimal h-vector. Defined as the direct scan of the
/// formula vector so the boundary case n+1 = β_{s−1} can never disagree
/// with it; `hmin_boundary_inequality` reports the closed-form inequality
/// for diagnostic comparison.
pub fn predict_hmin_unimodal(n: usize, m: usize, d: usize) -> Result<bool, HilbertError> {
    check_params(n, m, d)?;
    if m == 2 {
        return Ok(true);
    }
    Ok(h_min(n, m, d)?.is_unimodal())
}

/// The inequality n+1 <= β_{s−1} (reported alongside the scan verdict).
pub fn hmin_boundary_inequality(n: usize, m: usize, d: usize) -> Result<bool, HilbertError> {
    check_params(n, m, d)?;
    let s = d / 2;
    if s == 0 {
        return Ok(true);
    }
    let (_, b_s1, _) = abg(n, m, d, s - 1);
    Ok((n as u64) < b_s1)
}

/// Whether the maximal and minimal h-vectors coincide:
/// C(d+m−3, m−1) <= n+1.
pub fn extremes_coincide(n: usize, m: usize, d: usize) -> Result<bool, HilbertError> {
    check_params(n, m, d)?;
    Ok(binomial(d + m - 3, m - 1) <= num_bigint::BigUint::from(n as u64 + 1))
}

/// Everything the `extremes` command reports.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremesReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub s: usize,
    pub hmax: HVector,
    pub hmin: HVector,
    pub hmax_unimodal: bool,
    pub hmin_unimodal: bool,
    pub coincide: bool,
    /// (α, β, γ) at s−1.
    pub abg_s_minus_1: (u64, u64, u64),
    /// (α, β, γ) at s.
    pub abg_s: (u64, u64, u64),
    /// Diagnostic: the closed-form inequality n+1 <= β_{s−1} for minimal
    /// unimodality (can disagree with the scan only at the boundary).
    pub hmin_boundary_inequality: bool,
}

pub fn extremes_report(n: usize, m: usize, d: usize) -> Result<ExtremesReport, HilbertError> {
    let hmax = h_max(n, m, d)?;
    let hmin = h_min(n, m, d)?;
    let s = d / 2;
    let report = ExtremesReport {
        n,
        m,
        d,
        s,
        hmax_unimodal: predict_hmax_unimodal(n, m, d)?,
        hmin_unimodal: predict_hmin_unimodal(n, m, d)?,
        coincide: extremes_coincide(n, m, d)?,
        abg_s_minus_1: abg(n, m, d, s.saturating_sub(1)),
        abg_s: abg(n, m, d, s),
        hmin_boundary_inequality: hmin_boundary_inequality(n, m, d)?,
        hmax,
        hmin,
    };
    debug_assert_eq!(report.coincide, report.hmax == report.hmin);
    Ok(report)
}

/// Catalecticant matrix of a degree-e form q in the U-variables: rows are
/// indexed by multi-indices η with |η| = e−i, columns by δ with |δ| = i
/// (both in descending graded-lex order); the entry is the normalized
/// coefficient q_{δ+η}.
pub fn catalecticant<F: Field>(q: &Polynomial<F>, e: usize, i: usize) -> ExactMatrix<F> {
    assert!(i <= e, "catalecticant order out of range");
    assert_eq!(q.layout().num_x(), 0, "catalecticants act on U-variable forms");
    if let Some(deg) = q.degree() {
        assert_eq!(deg, e, "form degree disagrees with the stated e");
    }
    let m = q.layout().num_u();
    let rows = monomials_of_degree(m, e - i);
    let cols = monomials_of_degree(m, i);
    ExactMatrix::from_fn(q.field().clone(), rows.len(), cols.len(), |r, c| {
        q.normalized_coeff(&cols[c].mul(&rows[r]))
    })
}

/// The block matrix whose rank is h_i:
///
/// ```text
///  (    0     |  N_i )      N_i = column-stack of C^0_i … C^n_i
///  ( M_{i−1}  |  Γ_i )      M_{i−1} = row-concat of C^0_{i−1} … C^n_{i−1}
/// ```
///
/// with C^k_j the catalecticants of p_k and Γ_i the catalecticant of G.
pub fn block_matrix<F: Field>(form: &PerazzoForm<F>, i: usize) -> ExactMatrix<F> {
    let (n, m, d) = (form.n(), form.m(), form.d());
    assert!(i >= 1 && i <= d, "block matrix defined for 1 <= i <= d");
    let field = form.field().clone();
    let count = |deg: usize| monomials_of_degree(m, deg).len();
    let top_block_rows = if i < d { count(d - 1 - i) } else { 0 };
    let bottom_rows = count(d - i);
    let left_block_cols = count(i - 1);
    let right_cols = count(i);
    let rows = (n + 1) * top_block_rows + bottom_rows;
    let cols = (n + 1) * left_block_cols + right_cols;
    let mut out = ExactMatrix::zeros(field.clone(), rows, cols);
    let top = (n + 1) * top_block_rows;
    let left = (n + 1) * left_block_cols;
    // N_i blocks
    if i < d {
        for (k, p) in form.p().iter().enumerate() {
            let c = catalecticant(p, d - 1, i);
            for r in 0..c.rows() {
                for j in 0..c.cols() {
                    out.set(k * top_block_rows + r, left + j, c.get(r, j).clone());
                }
            }
        }
    }
    // M_{i−1} blocks
    if i >= 1 && i - 1 < d {
        for (k, p) in form.p().iter().enumerate() {
            let c = catalecticant(p, d - 1, i - 1);
            debug_assert_eq!(c.rows(), bottom_rows);
            for r in 0..c.rows() {
                for j in 0..c.cols() {
                    out.set(top + r, k * left_block_cols + j, c.get(r, j).clone());
                }
            }
        }
    }
    // Γ_i block
    let gamma = catalecticant(form.g(), d, i);
    debug_assert_eq!(gamma.rows(), bottom_rows);
    for r in 0..gamma.rows() {
        for j in 0..gamma.cols() {
            out.set(top + r, left + j, gamma.get(r, j).clone());
        }
    }
    out
}

/// Hilbert function by block-matrix ranks on the lower half, reflected by
/// Gorenstein symmetry.
pub fn hilbert_function<F: Field>(form: &PerazzoForm<F>) -> Result<HVector, HilbertError> {
    let report = form.validate();
    if !report.is_valid() {
        return Err(FormError::Invalid(report).into());
    }
    let d = form.d();
    let s = d / 2;
    let mut half = vec![1u64];
    for i in 1..=s {
        half.push(block_matrix(form, i).rank() as u64);
    }
    HVector::new(reflect(half, d))
}

/// Hilbert function with every degree 1..=d computed independently; returns
/// an asymmetry error instead of silently reflecting.
pub fn hilbert_function_full_check<F: Field>(form: &PerazzoForm<F>) -> Result<HVector, HilbertError> {
    let report = form.validate();
    if !report.is_valid() {
        return Err(FormError::Invalid(report).into());
    }
    let d = form.d();
    let mut entries = vec![1u64];
    for i in 1..=d {
        entries.push(block_matrix(form, i).rank() as u64);
    }
    for i in 0..=d / 2 {
        if entries[i] != entries[d - i] {
            return Err(HilbertError::Asymmetry { i, j: d - i, lo: entries[i], hi: entries[d - i] });
        }
    }
    HVector::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{gen_canonical, gen_full_monomial, gen_general, gen_min, CanonicalKind};
    use crate::linalg::{PrimeField, RationalField};
    use crate::poly::{coeff_matrix, partials, Monomial, VarLayout};

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn hv(v: &[u64]) -> HVector {
        HVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn abg_reference_values() {
        assert_eq!(abg(7, 4, 6, 2), (10, 35, 32));
        // i = 0 and i = 1 in closed form
        for (n, m, d) in [(5usize, 3usize, 7usize), (9, 3, 4), (2, 2, 6)] {
            let (a0, b0, g0) = abg(n, m, d, 0);
            assert_eq!(a0, 1);
            assert_eq!(b0, crate::comb::binomial_u64(d + m - 1, m - 1));
            assert_eq!(g0, 0);
            let (a1, b1, g1) = abg(n, m, d, 1);
            assert_eq!(a1, m as u64);
            assert_eq!(b1, crate::comb::binomial_u64(d + m - 2, m - 1));
            assert_eq!(g1, n as u64 + 1);
        }
    }

    #[test]
    fn hmax_reference_examples() {
        assert_eq!(h_max(7, 4, 6).unwrap(), hv(&[1, 12, 42, 40, 42, 12, 1]));
        // a degree-5 h-vector has six entries, and for odd d the middle
        // value alpha_s + beta_s occupies both central slots:
        assert_eq!(h_max(13, 3, 5).unwrap(), hv(&[1, 17, 16, 16, 17, 1]));
        assert_eq!(h_max(2, 2, 7).unwrap(), hv(&[1, 5, 9, 9, 9, 9, 5, 1]));
    }

    #[test]
    fn hmin_reference_examples() {
        assert_eq!(h_min(2, 2, 7).unwrap(), hv(&[1, 5, 6, 6, 6, 6, 5, 1]));
        assert_eq!(h_min(9, 3, 4).unwrap(), hv(&[1, 13, 12, 13, 1]));
        assert_eq!(h_min(2, 2, 4).unwrap(), hv(&[1, 5, 6, 5, 1]));
    }

    #[test]
    fn max_hf_closed_form_p4() {
        // h_i = 4i+1 up to (d+1)/4, then d+2, then symmetric
        for d in 5..=12usize {
            let h = h_max(2, 2, d).unwrap();
            for i in 1..=d / 2 {
                let expected = if 4 * i <= d + 1 { 4 * i as u64 + 1 } else { d as u64 + 2 };
                assert_eq!(h.get(i), expected, "d={d} i={i}");
            }
        }
    }

    #[test]
    fn unimodality_scan_cases() {
        assert!(is_unimodal(&[1, 5, 6, 6, 5, 1]));
        assert!(!is_unimodal(&[1, 13, 12, 13, 1]));
        assert!(!is_unimodal(&[1, 12, 42, 40, 42, 12, 1]));
        assert!(is_unimodal(&[1, 1]));
        assert!(is_unimodal(&[1, 3, 3, 1]));
    }

    #[test]
    fn hmax_unimodality_predictions() {
        assert!(!predict_hmax_unimodal(7, 4, 6).unwrap());
        assert!(!predict_hmax_unimodal(13, 3, 5).unwrap());
        assert!(predict_hmax_unimodal(2, 2, 9).unwrap());
        assert!(predict_hmax_unimodal(3, 3, 4).unwrap());
    }

    #[test]
    fn hmin_unimodality_predictions() {
        // Stanley boundary case: inequality 10 <= 10 holds, scan says no
        assert!(!predict_hmin_unimodal(9, 3, 4).unwrap());
        assert!(hmin_boundary_inequality(9, 3, 4).unwrap());
        assert!(predict_hmin_unimodal(2, 2, 7).unwrap());
        assert!(predict_hmin_unimodal(3, 3, 8).unwrap());
    }

    #[test]
    fn coincide_examples() {
        assert!(extremes_coincide(9, 3, 4).unwrap());
        assert!(!extremes_coincide(2, 2, 5).unwrap());
        assert_eq!(h_max(2, 2, 5).unwrap(), hv(&[1, 5, 7, 7, 5, 1]));
        // d = 3 always coincides when valid
        for (n, m) in [(2usize, 2usize), (3, 2), (5, 2)] {
            if params_valid(n, m, 3) {
                assert!(extremes_coincide(n, m, 3).unwrap());
            }
        }
    }

    #[test]
    fn extremes_report_is_consistent() {
        let r = extremes_report(9, 3, 4).unwrap();
        assert!(r.coincide);
        assert_eq!(r.hmax, r.hmin);
        assert_eq!(r.s, 2);
        let r2 = extremes_report(2, 2, 7).unwrap();
        assert!(!r2.coincide);
        assert!(r2.hmin.le(&r2.hmax));
    }

    #[test]
    fn alpha_gamma_increase_alpha_beta_decrease() {
        // strict decrease of α_i+β_i needs m >= 3; for m = 2 the sum is the
        // constant d+2
        for (n, m) in [(3usize, 3usize), (7, 4), (13, 3), (2, 2)] {
            for d in 4..=16 {
                if !params_valid(n, m, d) {
                    continue;
                }
                let s = d / 2;
                for i in 0..s {
                    let (a0, b0, g0) = abg(n, m, d, i);
                    let (a1, b1, g1) = abg(n, m, d, i + 1);
                    assert!(a0 + g0 < a1 + g1, "increase fails at ({n},{m},{d},{i})");
                    if m >= 3 {
                        assert!(a0 + b0 > a1 + b1, "decrease fails at ({n},{m},{d},{i})");
                    } else {
                        assert_eq!(a0 + b0, d as u64 + 2);
                        assert_eq!(a1 + b1, d as u64 + 2);
                    }
                }
            }
        }
    }

    #[test]
    fn hmax_eventually_never_unimodal() {
        // unimodality of h_max dies out: past the last unimodal degree, the
        // whole tail up to d = 64 is non-unimodal, and that tail is long
        for (n, m) in [(3usize, 3usize), (4, 3), (5, 4), (7, 4), (9, 3), (13, 3)] {
            let last_unimodal = (4..=64)
                .filter(|&d| params_valid(n, m, d))
                .filter(|&d| predict_hmax_unimodal(n, m, d).unwrap())
                .max()
                .unwrap_or(0);
            assert!(last_unimodal < 32, "({n},{m}) still unimodal at d={last_unimodal}");
            for d in last_unimodal + 1..=64 {
                if params_valid(n, m, d) {
                    assert!(!predict_hmax_unimodal(n, m, d).unwrap(), "({n},{m}) at d={d}");
                }
            }
        }
    }

    #[test]
    fn catalecticant_of_pure_power_has_rank_one() {
        let f = fp();
        for d in [5usize, 8] {
            let q = Polynomial::monomial(f, VarLayout::u_only(2), Monomial::new(vec![(d - 1) as u32, 0]), 1u64);
            for i in 0..=d - 1 {
                assert_eq!(catalecticant(&q, d - 1, i).rank(), 1);
            }
        }
    }

    #[test]
    fn catalecticant_hand_example() {
        // q = U^3 V + U V^3, i = 2: 3x3 matrix of rank 2
        let f = fp();
        let q = Polynomial::from_terms(
            f,
            VarLayout::u_only(2),
            [(Monomial::new(vec![3, 1]), 1u64), (Monomial::new(vec![1, 3]), 1)],
        )
        .unwrap();
        let c = catalecticant(&q, 4, 2);
        assert_eq!((c.rows(), c.cols()), (3, 3));
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn catalecticant_order_zero_single_column() {
        let f = fp();
        let q = Polynomial::from_terms(
            f,
            VarLayout::u_only(2),
            [(Monomial::new(vec![2, 1]), 5u64), (Monomial::new(vec![0, 3]), 7)],
        )
        .unwrap();
        let c = catalecticant(&q, 3, 0);
        assert_eq!(c.cols(), 1);
        assert_eq!(c.rank(), 1);
    }

    #[test]
    fn block_matrix_case_i_rank_six() {
        let form = gen_canonical(&fp(), CanonicalKind::CaseI, 5).unwrap();
        assert_eq!(block_matrix(&form, 2).rank(), 6);
    }

    #[test]
    fn block_matrix_rank_splits_when_g_zero() {
        let form = gen_min(&fp(), 3, 3, 6, 7).unwrap();
        assert!(form.g().is_zero());
        for i in 1..=3usize {
            let whole = block_matrix(&form, i).rank();
            let d = form.d();
            let mi: usize = form.p().iter().map(|p| catalecticant(p, d - 1, i - 1)).fold(
                ExactMatrix::zeros(fp(), monomials_of_degree(3, d - i).len(), 0),
                |acc, c| acc.hstack(&c),
            ).rank();
            let ni: usize = {
                let blocks: Vec<_> = form.p().iter().map(|p| catalecticant(p, d - 1, i)).collect();
                let rows: usize = blocks.iter().map(|b| b.rows()).sum();
                let mut stacked = ExactMatrix::zeros(fp(), rows, blocks[0].cols());
                let mut off = 0;
                for b in &blocks {
                    for r in 0..b.rows() {
                        for c in 0..b.cols() {
                            stacked.set(off + r, c, *b.get(r, c));
                        }
                    }
                    off += b.rows();
                }
                stacked.rank()
            };
            assert_eq!(whole, mi + ni, "i = {i}");
        }
    }

    #[test]
    fn block_matrix_degree_one_rank_n_plus_m_plus_one() {
        let f = fp();
        for (n, m, d, seed) in [(2usize, 2usize, 5usize, 1u64), (3, 3, 6, 2), (7, 4, 5, 3), (9, 3, 4, 4)] {
            let form = gen_general(&f, n, m, d, true, seed).unwrap();
            assert_eq!(block_matrix(&form, 1).rank(), n + m + 1);
        }
    }

    #[test]
    fn hilbert_function_reference_examples() {
        let f = fp();
        let case_i = gen_canonical(&f, CanonicalKind::CaseI, 5).unwrap();
        assert_eq!(hilbert_function(&case_i).unwrap(), hv(&[1, 5, 6, 6, 5, 1]));

        let stanley = gen_full_monomial(&f, 3, 4).unwrap();
        assert_eq!(hilbert_function(&stanley).unwrap(), hv(&[1, 13, 12, 13, 1]));

        let general = gen_general(&f, 2, 2, 7, true, 42).unwrap();
        assert_eq!(hilbert_function(&general).unwrap(), hv(&[1, 5, 9, 9, 9, 9, 5, 1]));
    }

    #[test]
    fn gen_min_achieves_minimum() {
        let f = fp();
        assert_eq!(hilbert_function(&gen_min(&f, 2, 2, 5, 1).unwrap()).unwrap(), h_min(2, 2, 5).unwrap());
        assert_eq!(hilbert_function(&gen_min(&f, 9, 3, 4, 1).unwrap()).unwrap(), h_min(9, 3, 4).unwrap());
        assert_eq!(hilbert_function(&gen_min(&f, 2, 2, 4, 1).unwrap()).unwrap(), hv(&[1, 5, 6, 5, 1]));
    }

    #[test]
    fn gen_general_achieves_maximum() {
        let f = fp();
        for (n, m, d) in [(7usize, 4usize, 6usize), (13, 3, 5), (2, 2, 7)] {
            let form = gen_general(&f, n, m, d, true, 42).unwrap();
            assert_eq!(hilbert_function(&form).unwrap(), h_max(n, m, d).unwrap(), "({n},{m},{d})");
        }
    }

    #[test]
    fn full_check_matches_reflected() {
        let f = fp();
        for (form, _) in [
            (gen_canonical(&f, CanonicalKind::CaseI, 6).unwrap(), 0),
            (gen_general(&f, 3, 3, 5, true, 9).unwrap(), 0),
        ] {
            assert_eq!(
                hilbert_function_full_check(&form).unwrap(),
                hilbert_function(&form).unwrap()
            );
        }
    }

    #[test]
    fn rational_field_agrees_on_case_i() {
        let form = gen_canonical(&RationalField, CanonicalKind::CaseI, 5).unwrap();
        assert_eq!(hilbert_function(&form).unwrap(), hv(&[1, 5, 6, 6, 5, 1]));
    }

    #[test]
    fn kernel_count_of_partials_matrix() {
        // order-2 partials of the d=5 case (i): 15 columns, rank 6, kernel 9
        let f = fp();
        let form = gen_canonical(&f, CanonicalKind::CaseI, 5).unwrap();
        let big = form.assemble().unwrap();
        let ps = partials(&big, 2);
        let m = coeff_matrix(&f, big.layout(), &ps, 3).unwrap();
        assert_eq!(m.cols(), 15);
        assert_eq!(m.rank(), 6);
        assert_eq!(m.kernel_basis().len(), 9);
    }

    #[test]
    fn iarrobino_dimension_law() {
        // r general forms of degree e in s+1 variables: the span of the
        // order-i partials has dimension min{r C(i+s, s), C(e+s-i, s)}
        use crate::seed::derived_rng;
        use rand::Rng as _;
        let f = fp();
        for (vars, r, e) in [(2usize, 2usize, 6usize), (3, 1, 5), (3, 3, 4), (2, 4, 7)] {
            let s = vars - 1;
            let layout = VarLayout::u_only(vars);
            let mut rng = derived_rng(7, (vars * 100 + r * 10 + e) as u64);
            let forms: Vec<Polynomial<PrimeField>> = (0..r)
                .map(|_| {
                    let terms = monomials_of_degree(vars, e)
                        .into_iter()
                        .map(|mo| (mo, rng.gen_range(0..PrimeField::default().modulus())));
                    Polynomial::from_terms(f, layout, terms).unwrap()
                })
                .collect();
            for i in 1..=e {
                let mut all = Vec::new();
                for q in &forms {
                    all.extend(partials(q, i));
                }
                let rank = coeff_matrix(&f, layout, &all, e - i).unwrap().rank();
                let expected = (r * crate::comb::binomial_usize(i + s, s))
                    .min(crate::comb::binomial_usize(e + s - i, s));
                assert_eq!(rank, expected, "vars={vars} r={r} e={e} i={i}");
            }
        }
    }
}
