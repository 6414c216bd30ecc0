//! Generic extensions and the monoid of gamma-symmetric representations,
//! compared against the rewriting normal form.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::repcalc::{
    self, fold, hom_dim, intertwiner_matrix, unfold, GammaOrbits, IndecTable, Quiver, RepError, Representation,
};
use crate::rewrite::{self, MonoidElem, RewriteError, Word};
use crate::roots::{MultFn, RootError, RootSystem};
use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenextError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("elements belong to different root systems")]
    SystemMismatch,
    #[error("unfolding does not fold back to the given datum")]
    UnfoldMismatch,
    #[error("decomposition is not gamma-stable: {0}")]
    FoldInconsistency(String),
    #[error("generic representation of {d:?} decomposes as {found}, canonical decomposition is {expected}")]
    MismatchWithCanonical {
        d: Vec<i64>,
        found: String,
        expected: String,
    },
}

pub type Result<T> = std::result::Result<T, GenextError>;

/// Number of cocycles sampled per generic extension.
pub const DEFAULT_SAMPLES: usize = 8;

/// Coefficient range for sampled cocycles.
pub const DEFAULT_COCYCLE_RANGE: i64 = 1 << 20;

/// The generic extension M*N: among sampled extensions 0 -> N -> X -> M -> 0
/// the one with the smallest endomorphism ring.
pub fn generic_extension<F: Field, R: Rng + ?Sized>(
    m: &Representation<F>,
    n: &Representation<F>,
    rng: &mut R,
) -> std::result::Result<Representation<F>, RepError> {
    generic_extension_with(m, n, rng, DEFAULT_SAMPLES, DEFAULT_COCYCLE_RANGE)
}

pub fn generic_extension_with<F: Field, R: Rng + ?Sized>(
    m: &Representation<F>,
    n: &Representation<F>,
    rng: &mut R,
    samples: usize,
    range: i64,
) -> std::result::Result<Representation<F>, RepError> {
    let phi = intertwiner_matrix(m, n)?;
    let basis = phi.column_space_complement();
    if basis.is_empty() {
        return n.direct_sum(m);
    }
    let q = m.quiver().clone();
    // row offsets of each arrow block in the intertwiner matrix
    let mut eq_off = Vec::with_capacity(q.arrows().len() + 1);
    eq_off.push(0);
    for &(s, t) in q.arrows() {
        eq_off.push(eq_off.last().unwrap() + n.dims()[t] * m.dims()[s]);
    }
    let mut best: Option<(usize, Representation<F>)> = None;
    for _ in 0..samples.max(1) {
        let mut z: Vec<Matrix<F>> = q
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(n.dims()[t], m.dims()[s]))
            .collect();
        for &row in &basis {
            let a = eq_off.partition_point(|&o| o <= row) - 1;
            let ms = m.dims()[q.arrows()[a].0];
            let local = row - eq_off[a];
            let c = F::from_i64(rng.gen_range(-range..=range));
            z[a].set(local / ms, local % ms, c);
        }
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let (nt, ns, mt, ms) = (n.dims()[t], n.dims()[s], m.dims()[t], m.dims()[s]);
                let mut x = Matrix::zeros(nt + mt, ns + ms);
                x.paste(0, 0, n.map(a));
                x.paste(0, ns, &z[a]);
                x.paste(nt, ns, m.map(a));
                x
            })
            .collect();
        let dims = n.dims().iter().zip(m.dims()).map(|(a, b)| a + b).collect();
        let x = Representation::new(q.clone(), dims, maps)?;
        let end = hom_dim(&x, &x)?;
        if best.as_ref().is_none_or(|(e, _)| end < *e) {
            best = Some((end, x));
        }
    }
    Ok(best.expect("at least one sample").1)
}

/// An isoclass of gamma-symmetric representations, recorded by the
/// multiplicities of the gamma-indecomposables (keyed by folded root).
#[derive(Clone)]
pub struct GammaMonoidElem {
    system: Arc<RootSystem>,
    mults: MultFn,
}

impl GammaMonoidElem {
    pub fn unit(system: Arc<RootSystem>) -> Self {
        GammaMonoidElem {
            system,
            mults: MultFn::new(),
        }
    }

    /// The class of the symmetrized simple at index `i`.
    pub fn simple(system: Arc<RootSystem>, i: usize) -> Self {
        let k = system.simple_root(i);
        GammaMonoidElem {
            system,
            mults: MultFn::single(k, 1),
        }
    }

    pub fn from_mults(system: Arc<RootSystem>, mults: MultFn) -> Self {
        GammaMonoidElem { system, mults }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn mults(&self) -> &MultFn {
        &self.mults
    }

    pub fn weight(&self) -> Vec<i64> {
        self.system.weight(&self.mults)
    }

    pub fn is_unit(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn to_monoid_elem(&self) -> MonoidElem {
        MonoidElem::from_nf(self.system.clone(), self.mults.clone())
    }

    fn same_system(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.system, &other.system) || self.system == other.system
    }
}

impl PartialEq for GammaMonoidElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_system(other) && self.mults == other.mults
    }
}

impl Eq for GammaMonoidElem {}

impl fmt::Debug for GammaMonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaMonoidElem({})", rewrite::format_nf(&self.system, &self.mults))
    }
}

impl fmt::Display for GammaMonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rewrite::format_nf(&self.system, &self.mults))
    }
}

/// A folded root system together with its unfolded quiver, the table of
/// indecomposables and the orbit bijection.
pub struct Realization<F> {
    system: Arc<RootSystem>,
    quiver: Arc<Quiver>,
    table: IndecTable<F>,
    orbits: GammaOrbits,
    vertex_orbits: Vec<Vec<usize>>,
}

impl<F: Field> Realization<F> {
    pub fn new<R: Rng + ?Sized>(system: Arc<RootSystem>, rng: &mut R) -> Result<Self> {
        let quiver = Arc::new(unfold(system.datum())?);
        let back = fold(&quiver)?;
        if back.matrix() != system.datum().matrix() || back.labels() != system.datum().labels() {
            return Err(GenextError::UnfoldMismatch);
        }
        let table = IndecTable::build(quiver.clone(), rng)?;
        let orbits = table.gamma_orbits(&system)?;
        let vertex_orbits = quiver.orbit_order()?;
        Ok(Realization {
            system,
            quiver,
            table,
            orbits,
            vertex_orbits,
        })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn table(&self) -> &IndecTable<F> {
        &self.table
    }

    pub fn orbits(&self) -> &GammaOrbits {
        &self.orbits
    }

    /// The unfolded dimension vector constant on each orbit of vertices.
    pub fn unfold_vector(&self, d: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.quiver.num_vertices()];
        for (i, orbit) in self.vertex_orbits.iter().enumerate() {
            for &v in orbit {
                out[v] = d[i];
            }
        }
        out
    }

    /// A gamma-symmetric representative of `x`.
    pub fn representative(&self, x: &GammaMonoidElem) -> Result<Representation<F>> {
        self.check(x)?;
        Ok(self.table.realize(&self.orbits.unfold_mults(&x.mults))?)
    }

    /// The class of a gamma-symmetric representation.
    pub fn class_of(&self, m: &Representation<F>) -> Result<GammaMonoidElem> {
        let dec = self.table.decompose(m)?;
        let mults = self.orbits.fold_mults(&dec).ok_or_else(|| {
            let parts: Vec<String> = dec
                .iter()
                .map(|(k, c)| format!("{}^{c}", RootSystem::format_vector(&self.table.roots()[k])))
                .collect();
            GenextError::FoldInconsistency(parts.join(" + "))
        })?;
        Ok(GammaMonoidElem {
            system: self.system.clone(),
            mults,
        })
    }

    fn check(&self, x: &GammaMonoidElem) -> Result<()> {
        if Arc::ptr_eq(&self.system, &x.system) || *self.system == *x.system {
            Ok(())
        } else {
            Err(GenextError::SystemMismatch)
        }
    }

    /// [M] * [N] = [M * N].
    pub fn monoid_mult<R: Rng + ?Sized>(
        &self,
        a: &GammaMonoidElem,
        b: &GammaMonoidElem,
        rng: &mut R,
    ) -> Result<GammaMonoidElem> {
        self.check(a)?;
        self.check(b)?;
        if a.is_unit() {
            return Ok(b.clone());
        }
        if b.is_unit() {
            return Ok(a.clone());
        }
        let m = self.representative(a)?;
        let n = self.representative(b)?;
        let x = generic_extension(&m, &n, rng)?;
        self.class_of(&x)
    }

    /// The product of the simple classes along the word, left to right.
    pub fn eta<R: Rng + ?Sized>(&self, w: &Word, rng: &mut R) -> Result<GammaMonoidElem> {
        let mut acc = GammaMonoidElem::unit(self.system.clone());
        for &i in w.letters() {
            acc = self.monoid_mult(&acc, &GammaMonoidElem::simple(self.system.clone(), i), rng)?;
        }
        Ok(acc)
    }

    pub fn eta_check<R: Rng + ?Sized>(&self, w: &Word, rng: &mut R) -> Result<EtaReport> {
        let eta = self.eta(w, rng)?.mults;
        let nf = rewrite::normal_form(&self.system, w)?.into_nf();
        Ok(EtaReport {
            word: w.clone(),
            eta,
            nf,
        })
    }

    /// Compares eta with the rewriting normal form on every word of length
    /// at most `max_len`, extending prefixes one letter at a time. Returns
    /// the number of words checked and the first mismatch.
    pub fn eta_exhaustive<R: Rng + ?Sized>(&self, max_len: usize, rng: &mut R) -> Result<(usize, Option<EtaReport>)> {
        let rank = self.system.rank();
        let mut level: Vec<(Vec<usize>, GammaMonoidElem)> =
            vec![(Vec::new(), GammaMonoidElem::unit(self.system.clone()))];
        let mut memo: HashMap<(MultFn, usize), GammaMonoidElem> = HashMap::new();
        let mut checked = 0;
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(level.len() * rank);
            for (word, elem) in &level {
                for i in 0..rank {
                    let key = (elem.mults.clone(), i);
                    let prod = match memo.get(&key) {
                        Some(p) => p.clone(),
                        None => {
                            let p = self.monoid_mult(elem, &GammaMonoidElem::simple(self.system.clone(), i), rng)?;
                            memo.insert(key, p.clone());
                            p
                        }
                    };
                    let mut w = word.clone();
                    w.push(i);
                    let word = Word::new(w.clone());
                    let nf = rewrite::normal_form(&self.system, &word)?.into_nf();
                    checked += 1;
                    if nf != prod.mults {
                        return Ok((
                            checked,
                            Some(EtaReport {
                                word,
                                eta: prod.mults,
                                nf,
                            }),
                        ));
                    }
                    next.push((w, prod));
                }
            }
            level = next;
        }
        Ok((checked, None))
    }

    /// The class of the generic representation of the symmetrized
    /// dimension vector, checked against the canonical decomposition.
    pub fn e_d<R: Rng + ?Sized>(&self, d: &[i64], rng: &mut R) -> Result<GammaMonoidElem> {
        let x: Representation<F> = repcalc::generic_rep(&self.quiver, &self.unfold_vector(d), rng)?;
        let class = self.class_of(&x)?;
        let expected = self.system.canonical_decomposition(d)?;
        if class.mults != expected {
            return Err(GenextError::MismatchWithCanonical {
                d: d.to_vec(),
                found: rewrite::format_nf(&self.system, &class.mults),
                expected: rewrite::format_nf(&self.system, &expected),
            });
        }
        Ok(class)
    }

    /// Rebuilds `x` as the product of its gamma-indecomposable summands in
    /// enumeration order.
    pub fn rebuild<R: Rng + ?Sized>(&self, x: &GammaMonoidElem, rng: &mut R) -> Result<GammaMonoidElem> {
        let mut acc = GammaMonoidElem::unit(self.system.clone());
        for k in x.mults.expand() {
            let factor = GammaMonoidElem::from_mults(self.system.clone(), MultFn::single(k, 1));
            acc = self.monoid_mult(&acc, &factor, rng)?;
        }
        Ok(acc)
    }
}

/// Outcome of comparing eta with the normal form on one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaReport {
    pub word: Word,
    pub eta: MultFn,
    pub nf: MultFn,
}

impl EtaReport {
    pub fn matches(&self) -> bool {
        self.eta == self.nf
    }
}
