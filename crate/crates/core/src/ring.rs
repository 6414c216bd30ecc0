//! The monoid ring: finite rational combinations of monoid elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::rewrite::{self, MonoidElem, RewriteError, Word};
use crate::roots::{MultFn, RootSystem};
use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("ring elements belong to different root systems")]
    SystemMismatch,
    #[error("graded dimension of {d:?}: Kostant {kostant}, normal forms {normal_forms}, congruence classes {classes}")]
    OracleMismatch {
        d: Vec<i64>,
        kostant: u64,
        normal_forms: u64,
        classes: u64,
    },
    #[error("normal form is not constant on a congruence class of weight {0:?}")]
    UnsoundNormalForm(Vec<i64>),
}

pub type Result<T> = std::result::Result<T, RingError>;

/// A finite linear combination of monoid elements. Zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct RingElem<F> {
    system: Arc<RootSystem>,
    terms: BTreeMap<MultFn, F>,
}

impl<F: Field> RingElem<F> {
    pub fn zero(system: Arc<RootSystem>) -> Self {
        RingElem {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(system: Arc<RootSystem>) -> Self {
        Self::term(system, MultFn::new(), F::one())
    }

    pub fn term(system: Arc<RootSystem>, nf: MultFn, coeff: F) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(nf, coeff);
        }
        RingElem { system, terms }
    }

    pub fn from_elem(elem: &MonoidElem, coeff: F) -> Self {
        Self::term(elem.system().clone(), elem.nf().clone(), coeff)
    }

    /// The class of a word with coefficient one.
    pub fn from_word(system: &Arc<RootSystem>, w: &Word) -> Result<Self> {
        let elem = rewrite::normal_form(system, w)?;
        Ok(Self::from_elem(&elem, F::one()))
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn terms(&self) -> impl Iterator<Item = (MonoidElem, &F)> + '_ {
        self.terms
            .iter()
            .map(|(nf, c)| (MonoidElem::from_nf(self.system.clone(), nf.clone()), c))
    }

    pub fn coeff(&self, nf: &MultFn) -> F {
        self.terms.get(nf).cloned().unwrap_or_else(F::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weights occurring in the support.
    pub fn weights(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().map(|nf| self.system.weight(nf)).collect()
    }

    fn same_system(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.system, &other.system) || self.system == other.system {
            Ok(())
        } else {
            Err(RingError::SystemMismatch)
        }
    }

    fn add_term(&mut self, nf: MultFn, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&nf) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&nf);
                }
            }
            None => {
                self.terms.insert(nf, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_system(other)?;
        let mut out = self.clone();
        for (nf, c) in &other.terms {
            out.add_term(nf.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.system.clone());
        for (nf, v) in &self.terms {
            out.add_term(nf.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }
}

impl<F: Field> PartialEq for RingElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_system(other).is_ok() && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for RingElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self})")
    }
}

impl<F: Field> fmt::Display for RingElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(nf, c)| format!("{c}*[{}]", rewrite::format_nf(&self.system, nf)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bilinear extension of the monoid product.
pub fn ring_mult<F: Field>(x: &RingElem<F>, y: &RingElem<F>) -> Result<RingElem<F>> {
    x.same_system(y)?;
    let mut out = RingElem::zero(x.system.clone());
    for (a, ca) in &x.terms {
        let ea = MonoidElem::from_nf(x.system.clone(), a.clone());
        for (b, cb) in &y.terms {
            let eb = MonoidElem::from_nf(x.system.clone(), b.clone());
            let p = rewrite::multiply(&ea, &eb)?;
            out.add_term(p.into_nf(), ca.clone() * cb.clone());
        }
    }
    Ok(out)
}

/// The three computations of a graded piece's dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDimension {
    pub d: Vec<i64>,
    /// Kostant's partition function.
    pub kostant: u64,
    /// Distinct normal forms over all words of weight d.
    pub normal_forms: u64,
    /// Congruence classes of words of weight d.
    pub classes: u64,
}

/// Counts all three ways and checks they agree; also checks that the normal
/// form is constant on each congruence class.
pub fn graded_dimension_report(system: &Arc<RootSystem>, d: &[i64]) -> Result<GradedDimension> {
    let kostant = system.kostant_count(d).map_err(RewriteError::from)?;
    let classes = rewrite::congruence_classes(system, d)?;
    let mut forms = BTreeSet::new();
    for class in &classes {
        let mut first: Option<MultFn> = None;
        for w in class {
            let nf = rewrite::normal_form(system, w)?.into_nf();
            match &first {
                None => first = Some(nf.clone()),
                Some(f) if *f != nf => return Err(RingError::UnsoundNormalForm(d.to_vec())),
                Some(_) => {}
            }
            forms.insert(nf);
        }
    }
    let report = GradedDimension {
        d: d.to_vec(),
        kostant,
        normal_forms: forms.len() as u64,
        classes: classes.len() as u64,
    };
    if report.kostant != report.normal_forms || report.kostant != report.classes {
        return Err(RingError::OracleMismatch {
            d: report.d,
            kostant: report.kostant,
            normal_forms: report.normal_forms,
            classes: report.classes,
        });
    }
    Ok(report)
}

/// Dimension of the weight-d piece of the monoid ring.
pub fn graded_dimension(system: &Arc<RootSystem>, d: &[i64]) -> Result<u64> {
    Ok(graded_dimension_report(system, d)?.kostant)
}
