//! Graded multivariate polynomials in the split variable set
//! (X_0..X_n | U_1..U_m) and the differential-operator action of the dual
//! ring on them.
//!
//! The action is genuine differentiation (coefficients pick up factorials),
//! not the divided-power contraction; over characteristic zero (and the large
//! prime surrogates used here) the two differ by an invertible diagonal
//! scaling, so every rank statement is unaffected.
//!
//! Monomial order is graded lexicographic with
//! x_0 > … > x_n > u_1 > … > u_m throughout; all row and column indexings
//! derive from it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::comb::multinomial;
use crate::linalg::{ExactMatrix, Field};

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("nonzero polynomial has degree {found} where {expected} was required")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("terms of mixed degrees {0} and {1} in one homogeneous polynomial")]
    NotHomogeneous(usize, usize),
}

/// Split variable set: `num_x` dual X-variables followed by `num_u`
/// U-variables. A pure U-ring is `num_x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarLayout {
    num_x: usize,
    num_u: usize,
}

impl VarLayout {
    pub fn new(num_x: usize, num_u: usize) -> Self {
        assert!(num_u >= 1, "at least one U-variable required");
        VarLayout { num_x, num_u }
    }

    /// Layout for a Perazzo split with X_0..X_n and U_1..U_m.
    pub fn perazzo(n: usize, m: usize) -> Self {
        VarLayout::new(n + 1, m)
    }

    pub fn u_only(m: usize) -> Self {
        VarLayout::new(0, m)
    }

    pub fn num_x(&self) -> usize {
        self.num_x
    }

    pub fn num_u(&self) -> usize {
        self.num_u
    }

    pub fn total(&self) -> usize {
        self.num_x + self.num_u
    }

    pub fn is_x(&self, var: usize) -> bool {
        var < self.num_x
    }

    /// Human-readable variable name; single letters for the P^4 sizes that
    /// dominate the examples, indexed names beyond.
    pub fn var_name(&self, var: usize) -> String {
        assert!(var < self.total());
        if var < self.num_x {
            if self.num_x <= 3 {
                ["X", "Y", "Z"][var].to_string()
            } else {
                format!("X{var}")
            }
        } else {
            let u = var - self.num_x;
            if self.num_u <= 3 {
                ["U", "V", "W"][u].to_string()
            } else {
                format!("U{}", u + 1)
            }
        }
    }
}

/// Exponent vector over a layout. Ordering is graded lex: total degree
/// first, ties broken by the earliest differing variable (larger exponent
/// on an earlier variable wins).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn unit(total: usize) -> Self {
        Monomial { exps: vec![0; total] }
    }

    pub fn var(total: usize, var: usize) -> Self {
        let mut exps = vec![0; total];
        exps[var] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// First variable with a nonzero exponent, if any.
    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    /// Degree contributed by the X-block of a layout.
    pub fn x_degree(&self, layout: &VarLayout) -> usize {
        self.exps[..layout.num_x()].iter().map(|&e| e as usize).sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// All monomials of the given degree in `total` variables, in descending
/// graded-lex order (the first variable's power leads).
pub fn monomials_of_degree(total: usize, degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if total == 0 {
        if degree == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    let mut current = vec![0u32; total];
    descend(&mut out, &mut current, 0, degree);
    out
}

fn descend(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: usize) {
    if var == current.len() - 1 {
        current[var] = remaining as u32;
        out.push(Monomial::new(current.clone()));
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e as u32;
        descend(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Homogeneous polynomial: a finite map from monomials to nonzero field
/// elements, all of one degree. The zero polynomial carries no degree and is
/// compatible with every degree.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    field: F,
    layout: VarLayout,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, layout: VarLayout) -> Self {
        Polynomial { field, layout, terms: BTreeMap::new() }
    }

    /// Build from (monomial, coefficient) pairs; zero coefficients are
    /// dropped, repeated monomials accumulate.
    pub fn from_terms(
        field: F,
        layout: VarLayout,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (mono, coeff) in terms {
            assert_eq!(mono.len(), layout.total(), "monomial arity must match layout");
            match map.entry(mono) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = field.add(e.get(), &coeff);
                    *e.get_mut() = sum;
                }
            }
        }
        map.retain(|_, c| !field.is_zero(c));
        let mut degree: Option<usize> = None;
        for mono in map.keys() {
            let d = mono.degree();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(PolyError::NotHomogeneous(d0, d)),
                _ => {}
            }
        }
        Ok(Polynomial { field, layout, terms: map })
    }

    pub fn monomial(field: F, layout: VarLayout, mono: Monomial, coeff: F::Elem) -> Self {
        Polynomial::from_terms(field, layout, [(mono, coeff)]).unwrap()
    }

    /// Degree-1 polynomial with the given coefficient per variable.
    pub fn linear(field: F, layout: VarLayout, coeffs: &[F::Elem]) -> Self {
        assert_eq!(coeffs.len(), layout.total());
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(v, c)| (Monomial::var(layout.total(), v), c.clone()));
        Polynomial::from_terms(field, layout, terms).unwrap()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn layout(&self) -> VarLayout {
        self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of the terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> F::Elem {
        self.terms.get(mono).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            assert_eq!(a, b, "adding homogeneous polynomials of different degrees");
        }
        let pairs = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()));
        Polynomial::from_terms(self.field.clone(), self.layout, pairs).unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = self.field.clone();
        let pairs: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, s))).collect();
        Polynomial::from_terms(f, self.layout, pairs).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        let f = self.field.clone();
        let mut pairs = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                pairs.push((ma.mul(mb), f.mul(ca, cb)));
            }
        }
        Polynomial::from_terms(f, self.layout, pairs).unwrap()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Polynomial::monomial(
            self.field.clone(),
            self.layout,
            Monomial::unit(self.layout.total()),
            self.field.one(),
        );
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact formal partial derivative with respect to one variable.
    pub fn differentiate(&self, var: usize) -> Self {
        assert!(var < self.layout.total(), "variable index out of range");
        let f = self.field.clone();
        let pairs: Vec<_> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(var);
                if e == 0 {
                    return None;
                }
                let mut exps = m.exps().to_vec();
                exps[var] -= 1;
                let factor = f.from_i64(e as i64);
                Some((Monomial::new(exps), f.mul(c, &factor)))
            })
            .collect();
        Polynomial::from_terms(f, self.layout, pairs).unwrap()
    }

    /// Iterated derivative by a multi-index.
    pub fn differentiate_multi(&self, alpha: &Monomial) -> Self {
        let mut acc = self.clone();
        for (var, &e) in alpha.exps().iter().enumerate() {
            for _ in 0..e {
                if acc.is_zero() {
                    return acc;
                }
                acc = acc.differentiate(var);
            }
        }
        acc
    }

    /// Evaluate at a point given by one field element per variable.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.layout.total());
        let f = &self.field;
        let max_deg = self.degree().unwrap_or(0) as u32;
        // powers[v][e] = point[v]^e
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(max_deg as usize + 1);
                row.push(f.one());
                for e in 1..=max_deg {
                    let prev = row[(e - 1) as usize].clone();
                    row.push(f.mul(&prev, x));
                }
                row
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[v][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Re-interpret over a larger layout, placing this polynomial's
    /// variables at `offset`.
    pub fn embed(&self, target: VarLayout, offset: usize) -> Self {
        assert!(offset + self.layout.total() <= target.total());
        let pairs = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; target.total()];
            exps[offset..offset + m.len()].copy_from_slice(m.exps());
            (Monomial::new(exps), c.clone())
        });
        Polynomial::from_terms(self.field.clone(), target, pairs).unwrap()
    }

    /// Normalized coefficient q_λ with q = Σ multinomial(deg, λ) q_λ U^λ:
    /// the raw coefficient divided by the multinomial.
    pub fn normalized_coeff(&self, mono: &Monomial) -> F::Elem {
        let raw = self.coeff(mono);
        if self.field.is_zero(&raw) {
            return raw;
        }
        self.field.div_by_uint(&raw, &multinomial(mono.exps()))
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.layout.var_name(v)),
                    _ => factors.push(format!("{}^{}", self.layout.var_name(v), e)),
                }
            }
            let coeff = self.field.render(c);
            if factors.is_empty() {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{}*{}", coeff, factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

/// p∘F: apply a polynomial in the dual variables as a differential operator.
/// The result is homogeneous of degree deg F − deg p, or zero.
pub fn apply_operator<F: Field>(op: &Polynomial<F>, target: &Polynomial<F>) -> Polynomial<F> {
    assert_eq!(op.layout(), target.layout(), "layout mismatch");
    let field = target.field().clone();
    let mut acc = Polynomial::zero(field.clone(), target.layout());
    for (alpha, c) in op.terms() {
        let d = target.differentiate_multi(alpha);
        if !d.is_zero() {
            acc = acc.add(&d.scale(c));
        }
    }
    acc
}

/// All order-`order` partial derivatives ∂^α F, indexed by multi-indices α in
/// descending graded-lex order, zero entries included. The list length is
/// C(total−1+order, order).
pub fn partials<F: Field>(f: &Polynomial<F>, order: usize) -> Vec<Polynomial<F>> {
    let total = f.layout().total();
    let mut level: HashMap<Monomial, Polynomial<F>> =
        HashMap::from([(Monomial::unit(total), f.clone())]);
    for k in 1..=order {
        let mut next = HashMap::new();
        for alpha in monomials_of_degree(total, k) {
            let v = alpha.first_var().expect("positive degree");
            let mut parent = alpha.exps().to_vec();
            parent[v] -= 1;
            let poly = level[&Monomial::new(parent)].differentiate(v);
            next.insert(alpha, poly);
        }
        level = next;
    }
    monomials_of_degree(total, order)
        .into_iter()
        .map(|alpha| level.remove(&alpha).unwrap())
        .collect()
}

/// Nonzero order-`order` partials with their multi-indices, in descending
/// graded-lex order. Avoids materializing the (combinatorially many) zero
/// derivatives, which matters for forms linear in a large X-block.
pub fn nonzero_partials<F: Field>(
    f: &Polynomial<F>,
    order: usize,
) -> Vec<(Monomial, Polynomial<F>)> {
    let mut level = vec![(Monomial::unit(f.layout().total()), f.clone())];
    if f.is_zero() {
        level.clear();
    }
    for _ in 0..order {
        let mut next = Vec::new();
        for (alpha, poly) in &level {
            // extend only at positions up to the first nonzero exponent so
            // each multi-index arises from exactly one canonical parent
            let limit = alpha.first_var().unwrap_or(alpha.len() - 1);
            for v in 0..=limit {
                let d = poly.differentiate(v);
                if !d.is_zero() {
                    let mut exps = alpha.exps().to_vec();
                    exps[v] += 1;
                    next.push((Monomial::new(exps), d));
                }
            }
        }
        next.sort_by(|a, b| b.0.cmp(&a.0));
        level = next;
    }
    level
}

/// Coefficient matrix of homogeneous degree-k polynomials: rows are indexed
/// by all degree-k monomials of the layout in descending graded-lex order;
/// column j holds the coefficients of `fs[j]`.
pub fn coeff_matrix<F: Field>(
    field: &F,
    layout: VarLayout,
    fs: &[Polynomial<F>],
    degree: usize,
) -> Result<ExactMatrix<F>, PolyError> {
    for f in fs {
        if let Some(d) = f.degree() {
            if d != degree {
                return Err(PolyError::DegreeMismatch { expected: degree, found: d });
            }
        }
    }
    let monos = monomials_of_degree(layout.total(), degree);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut m = ExactMatrix::zeros(field.clone(), monos.len(), fs.len());
    for (j, f) in fs.iter().enumerate() {
        for (mono, c) in f.terms() {
            m.set(index[mono], j, c.clone());
        }
    }
    Ok(m)
}

/// Coefficient matrix over the union of the supports only. All-zero rows
/// carry no rank or pivot information, so this is interchangeable with
/// `coeff_matrix` for rank and column-space purposes, while staying small
/// when the full monomial basis is huge.
pub fn support_coeff_matrix<F: Field>(field: &F, fs: &[&Polynomial<F>]) -> ExactMatrix<F> {
    let mut support: Vec<&Monomial> = Vec::new();
    {
        let mut seen = std::collections::BTreeSet::new();
        for f in fs {
            for (m, _) in f.terms() {
                seen.insert(m);
            }
        }
        // descending graded-lex, matching coeff_matrix row order
        support.extend(seen.into_iter().rev());
    }
    let index: HashMap<&Monomial, usize> = support.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut m = ExactMatrix::zeros(field.clone(), support.len(), fs.len());
    for (j, f) in fs.iter().enumerate() {
        for (mono, c) in f.terms() {
            m.set(index[mono], j, c.clone());
        }
    }
    m
}
