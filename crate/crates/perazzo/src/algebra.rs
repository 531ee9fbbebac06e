//! Finite-dimensional model of A_F = R/Ann(F) for any homogeneous dual
//! generator F.
//!
//! Degree k of A_F is realized as the derivative space
//! W_k = span{∂^α F : |α| = k} via `[p] ↦ p∘F`; multiplication by the
//! variable x_v becomes ∂_v : W_k → W_{k+1}. Every quotient dimension is a
//! rank, and Ann(F) itself is never computed.

use rand::Rng;

use crate::hilbert::HVector;
use crate::linalg::{ExactMatrix, Field};
use crate::poly::{apply_operator, support_coeff_matrix, Monomial, Polynomial, VarLayout};

/// Coefficients of a linear form in the dual variables, one per variable of
/// the layout.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> LinearForm<F> {
    pub fn new(coeffs: Vec<F::Elem>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn to_polynomial(&self, field: &F, layout: VarLayout) -> Polynomial<F> {
        assert_eq!(self.coeffs.len(), layout.total());
        Polynomial::linear(field.clone(), layout, &self.coeffs)
    }

    /// Uniformly random nonzero linear form.
    pub fn random<R: Rng + ?Sized>(field: &F, total: usize, rng: &mut R) -> Self {
        loop {
            let coeffs: Vec<F::Elem> = (0..total).map(|_| field.sample(rng)).collect();
            let lf = LinearForm::new(coeffs);
            if !lf.is_zero(field) {
                return lf;
            }
        }
    }

    /// The single-variable form x_v.
    pub fn variable(field: &F, total: usize, v: usize) -> Self {
        let mut coeffs = vec![field.zero(); total];
        coeffs[v] = field.one();
        LinearForm::new(coeffs)
    }
}

/// Per-degree bases of the derivative spaces of one dual generator, plus
/// the multiplication-by-variable matrices between them.
#[derive(Clone, Debug)]
pub struct AlgebraModel<F: Field> {
    field: F,
    layout: VarLayout,
    d: usize,
    basis: Vec<Vec<Polynomial<F>>>,
    h: Vec<usize>,
    /// mult[v][k]: matrix of ∂_v : W_k → W_{k+1} in the chosen bases.
    mult: Vec<Vec<ExactMatrix<F>>>,
}

/// Build the model of A_F. The basis of W_k is the deterministic
/// (graded-lex greedy) pivot subset of the nonzero order-k partials.
pub fn build_model<F: Field>(f: &Polynomial<F>) -> AlgebraModel<F> {
    assert!(!f.is_zero(), "dual generator must be nonzero");
    let field = f.field().clone();
    let layout = f.layout();
    let d = f.degree().unwrap();
    let total = layout.total();

    // walk nonzero partials level by level, each multi-index from its
    // canonical parent (first nonzero position)
    let mut level: Vec<(Monomial, Polynomial<F>)> = vec![(Monomial::unit(total), f.clone())];
    let mut basis: Vec<Vec<Polynomial<F>>> = Vec::with_capacity(d + 1);
    let mut h: Vec<usize> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let refs: Vec<&Polynomial<F>> = level.iter().map(|(_, p)| p).collect();
        let (pivots, _) = support_coeff_matrix(&field, &refs).column_space_basis();
        basis.push(pivots.iter().map(|&j| level[j].1.clone()).collect());
        h.push(pivots.len());
        if k < d {
            let mut next = Vec::new();
            for (alpha, poly) in &level {
                let limit = alpha.first_var().unwrap_or(total - 1);
                for v in 0..=limit {
                    let dv = poly.differentiate(v);
                    if !dv.is_zero() {
                        let mut exps = alpha.exps().to_vec();
                        exps[v] += 1;
                        next.push((Monomial::new(exps), dv));
                    }
                }
            }
            next.sort_by(|a, b| b.0.cmp(&a.0));
            level = next;
        }
    }
    debug_assert_eq!(h[0], 1);
    debug_assert_eq!(h[d], 1);

    // express every ∂_v(basis vector of W_k) in the basis of W_{k+1}
    let mut mult: Vec<Vec<ExactMatrix<F>>> = vec![Vec::with_capacity(d); total];
    for k in 0..d {
        let images: Vec<Vec<Polynomial<F>>> = (0..total)
            .map(|v| basis[k].iter().map(|w| w.differentiate(v)).collect())
            .collect();
        let mut all: Vec<&Polynomial<F>> = basis[k + 1].iter().collect();
        for per_v in &images {
            all.extend(per_v.iter());
        }
        let combined = support_coeff_matrix(&field, &all);
        let a = ExactMatrix::from_fn(field.clone(), combined.rows(), h[k + 1], |r, c| {
            combined.get(r, c).clone()
        });
        let b = ExactMatrix::from_fn(field.clone(), combined.rows(), total * h[k], |r, c| {
            combined.get(r, h[k + 1] + c).clone()
        });
        let x = a
            .solve_many(&b)
            .expect("derivative of a basis vector must lie in the next derivative space");
        for (v, columns) in mult.iter_mut().enumerate() {
            columns.push(ExactMatrix::from_fn(field.clone(), h[k + 1], h[k], |r, c| {
                x.get(r, v * h[k] + c).clone()
            }));
        }
    }

    AlgebraModel { field, layout, d, basis, h, mult }
}

impl<F: Field> AlgebraModel<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn layout(&self) -> VarLayout {
        self.layout
    }

    /// Socle degree.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn hvector(&self) -> HVector {
        HVector::new(self.h.iter().map(|&x| x as u64).collect())
            .expect("A_F is Gorenstein; its h-vector is symmetric")
    }

    pub fn basis(&self, k: usize) -> &[Polynomial<F>] {
        &self.basis[k]
    }

    /// Matrix of ∂_v : W_k → W_{k+1}.
    pub fn mult(&self, v: usize, k: usize) -> &ExactMatrix<F> {
        &self.mult[v][k]
    }

    /// Matrix of multiplication by ℓ : W_k → W_{k+1}.
    pub fn mult_map(&self, ell: &LinearForm<F>, k: usize) -> ExactMatrix<F> {
        assert!(k < self.d, "multiplication map needs k < socle degree");
        assert_eq!(ell.coeffs().len(), self.layout.total());
        let f = &self.field;
        let mut acc = ExactMatrix::zeros(f.clone(), self.h[k + 1], self.h[k]);
        for (v, c) in ell.coeffs().iter().enumerate() {
            if !f.is_zero(c) {
                acc = acc.add_matrix(&self.mult[v][k].scale(c));
            }
        }
        acc
    }

    /// h-vector of R/(I,ℓ): entry k is the cokernel dimension
    /// h_k − rank(×ℓ : W_{k−1} → W_k). Not symmetric in general.
    pub fn quotient_h(&self, ell: &LinearForm<F>) -> Vec<u64> {
        assert!(!ell.is_zero(&self.field), "quotient by the zero form");
        let mut out = vec![1u64];
        for k in 1..=self.d {
            let rank = self.mult_map(ell, k - 1).rank();
            out.push((self.h[k] - rank) as u64);
        }
        out
    }

    /// Drop the polynomial bases, keeping dimensions and multiplication
    /// matrices (all the Koszul machinery needs).
    pub fn module_model(&self) -> ModuleModel<F> {
        ModuleModel {
            field: self.field.clone(),
            nvars: self.layout.total(),
            dims: self.h.clone(),
            mult: self.mult.clone(),
        }
    }
}

/// Degree-wise dimensions and variable actions of a finite graded module
/// over the dual polynomial ring.
#[derive(Clone, Debug)]
pub struct ModuleModel<F: Field> {
    field: F,
    nvars: usize,
    dims: Vec<usize>,
    /// mult[v][k]: dims[k+1] × dims[k].
    mult: Vec<Vec<ExactMatrix<F>>>,
}

impl<F: Field> ModuleModel<F> {
    pub fn new(field: F, nvars: usize, dims: Vec<usize>, mult: Vec<Vec<ExactMatrix<F>>>) -> Self {
        assert_eq!(mult.len(), nvars);
        for per_v in &mult {
            assert_eq!(per_v.len(), dims.len() - 1);
            for (k, m) in per_v.iter().enumerate() {
                assert_eq!((m.rows(), m.cols()), (dims[k + 1], dims[k]));
            }
        }
        ModuleModel { field, nvars, dims, mult }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn mult(&self, v: usize, k: usize) -> &ExactMatrix<F> {
        &self.mult[v][k]
    }
}

/// Model of B = A/(ℓA) as a graded module: bases are standard-coordinate
/// complements of the image of ×ℓ, and the variable action is induced by
/// projection along that image.
pub fn quotient_module<F: Field>(model: &AlgebraModel<F>, ell: &LinearForm<F>) -> ModuleModel<F> {
    let field = model.field().clone();
    let d = model.d();
    let h = model.h();
    // per degree: transition matrix [image basis | chosen unit vectors] and
    // the list of chosen unit-vector indices
    let mut transitions: Vec<ExactMatrix<F>> = Vec::with_capacity(d + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    let mut dims: Vec<usize> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let image = if k == 0 {
            ExactMatrix::zeros(field.clone(), h[0], 0)
        } else {
            let m = model.mult_map(ell, k - 1);
            let (_, basis) = m.column_space_basis();
            basis
        };
        let combined = image.hstack(&ExactMatrix::identity(field.clone(), h[k]));
        let (pivots, basis) = combined.column_space_basis();
        let rank_image = pivots.iter().filter(|&&p| p < image.cols()).count();
        debug_assert_eq!(rank_image, image.cols());
        let chosen: Vec<usize> = pivots
            .iter()
            .filter(|&&p| p >= image.cols())
            .map(|&p| p - image.cols())
            .collect();
        dims.push(chosen.len());
        reps.push(chosen);
        transitions.push(basis);
    }

    let mut mult: Vec<Vec<ExactMatrix<F>>> = vec![Vec::with_capacity(d); model.layout().total()];
    for k in 0..d {
        let image_cols = transitions[k + 1].cols() - dims[k + 1];
        for (v, out) in mult.iter_mut().enumerate() {
            // images of the representative vectors under ∂_v, as W_{k+1} coords
            let mv = model.mult(v, k);
            let rhs = ExactMatrix::from_fn(field.clone(), h[k + 1], dims[k], |r, c| {
                mv.get(r, reps[k][c]).clone()
            });
            let x = transitions[k + 1]
                .solve_many(&rhs)
                .expect("quotient transition basis spans W_{k+1}");
            // quotient coordinates are the components along the unit vectors
            out.push(ExactMatrix::from_fn(field.clone(), dims[k + 1], dims[k], |r, c| {
                x.get(image_cols + r, c).clone()
            }));
        }
    }
    ModuleModel::new(field, model.layout().total(), dims, mult)
}

/// Dimension bookkeeping of the exact sequence
/// 0 → A_{ℓ∘F}(−1) → A_F → R/(I,ℓ) → 0: checks
/// h_{A_F}(j) = h_{A_{ℓ∘F}}(j−1) + h_{R/(I,ℓ)}(j) for all j.
pub fn check_exact_sequence<F: Field>(f: &Polynomial<F>, ell: &LinearForm<F>) -> bool {
    let field = f.field().clone();
    assert!(!ell.is_zero(&field), "linear form must be nonzero");
    let ell_poly = ell.to_polynomial(&field, f.layout());
    let lf = apply_operator(&ell_poly, f);
    assert!(!lf.is_zero(), "ℓ∘F must be nonzero");
    let model = build_model(f);
    let middle = build_model(&lf);
    let quot = model.quotient_h(ell);
    let d = model.d();
    for j in 0..=d {
        let lhs = model.h()[j] as u64;
        let shifted = if j >= 1 && j - 1 <= middle.d() { middle.h()[j - 1] as u64 } else { 0 };
        if lhs != shifted + quot[j] {
            return false;
        }
    }
    true
}
