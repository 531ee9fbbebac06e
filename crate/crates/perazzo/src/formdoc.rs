//! JSON interchange format for Perazzo forms.
//!
//! Coefficients travel as exact strings (decimal residues for prime
//! fields; integers, `a/b` fractions or exact decimals for rationals),
//! never floating point. Parsing then serializing is the identity on
//! canonical documents.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::form::PerazzoForm;
use crate::linalg::{Field, FieldError, FieldSpec};
use crate::poly::{Monomial, PolyError, Polynomial, VarLayout};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed form document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field descriptor: {0}")]
    Field(#[from] FieldError),
    #[error("prime modulus {0} does not fit in 63 bits")]
    PrimeTooLarge(String),
    #[error("term in p_{index} has {found} exponents, expected m = {expected}")]
    BadArity { index: usize, expected: usize, found: usize },
    #[error("polynomial data: {0}")]
    Poly(#[from] PolyError),
    #[error("document declares field {declared} but was loaded over {requested}")]
    FieldMismatch { declared: FieldSpec, requested: FieldSpec },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Prime { p: String },
    Rational,
}

impl FieldDescriptor {
    pub fn from_spec(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Prime(p) => FieldDescriptor::Prime { p: p.to_string() },
            FieldSpec::Rational => FieldDescriptor::Rational,
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, DocError> {
        match self {
            FieldDescriptor::Prime { p } => {
                let modulus: u64 =
                    p.parse().map_err(|_| DocError::PrimeTooLarge(p.clone()))?;
                let spec = FieldSpec::Prime(modulus);
                spec.validate()?;
                Ok(spec)
            }
            FieldDescriptor::Rational => Ok(FieldSpec::Rational),
        }
    }
}

/// One monomial of a U-variable polynomial: exponent vector of length m and
/// an exact coefficient string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDoc {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct DocMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl DocMetadata {
    pub fn is_empty(&self) -> bool {
        self.seed.is_none() && self.generator.is_none()
    }
}

/// Serialized Perazzo form: sizes, field, term lists for each p_i and G.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FormDocument {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub field: FieldDescriptor,
    pub p: Vec<Vec<TermDoc>>,
    pub g: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<DocMetadata>,
}

fn poly_to_terms<F: Field>(poly: &Polynomial<F>) -> Vec<TermDoc> {
    let field = poly.field();
    poly.terms()
        .map(|(mono, coeff)| TermDoc { exps: mono.exps().to_vec(), coeff: field.render(coeff) })
        .collect()
}

fn terms_to_poly<F: Field>(
    field: &F,
    m: usize,
    index: usize,
    terms: &[TermDoc],
) -> Result<Polynomial<F>, DocError> {
    let layout = VarLayout::u_only(m);
    let mut pairs = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != m {
            return Err(DocError::BadArity { index, expected: m, found: t.exps.len() });
        }
        let coeff = field.parse(&t.coeff)?;
        pairs.push((Monomial::new(t.exps.clone()), coeff));
    }
    Ok(Polynomial::from_terms(field.clone(), layout, pairs)?)
}

impl FormDocument {
    pub fn from_form<F: Field>(form: &PerazzoForm<F>, metadata: Option<DocMetadata>) -> Self {
        FormDocument {
            n: form.n(),
            m: form.m(),
            d: form.d(),
            field: FieldDescriptor::from_spec(form.field().spec()),
            p: form.p().iter().map(poly_to_terms).collect(),
            g: poly_to_terms(form.g()),
            metadata: metadata.filter(|m| !m.is_empty()),
        }
    }

    /// Reconstruct the form over the given field, which must agree with the
    /// document's declared field. Structural parsing only; run `validate`
    /// on the result for the mathematical invariants.
    pub fn to_form<F: Field>(&self, field: &F) -> Result<PerazzoForm<F>, DocError> {
        let declared = self.field.to_spec()?;
        if declared != field.spec() {
            return Err(DocError::FieldMismatch { declared, requested: field.spec() });
        }
        let p = self
            .p
            .iter()
            .enumerate()
            .map(|(i, terms)| terms_to_poly(field, self.m, i, terms))
            .collect::<Result<Vec<_>, _>>()?;
        let g = terms_to_poly(field, self.m, self.n + 1, &self.g)?;
        Ok(PerazzoForm::new(field.clone(), self.n, self.m, self.d, p, g))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(s)?)
    }
}
