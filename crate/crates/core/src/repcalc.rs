//! Quivers with automorphism, folding and unfolding, explicit representations
//! over an exact field, Hom/Ext dimensions, generic representations and the
//! table of indecomposables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::roots::{self, CartanDatum, MultFn, RootError, RootSystem};
use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("gamma is not a permutation of the vertices")]
    NotAPermutation,
    #[error("gamma does not map the arrow {0}->{1} to an arrow")]
    ArrowsNotPreserved(String, String),
    #[error("underlying graph is not a union of ADE Dynkin diagrams")]
    NotDynkin,
    #[error("arrow {0}->{1} joins two vertices of the same gamma-orbit")]
    ArrowWithinOrbit(String, String),
    #[error("no total order of gamma-orbits orients every arrow upwards")]
    NoAscendingOrder,
    #[error("cannot unfold: Cartan entries ({a_ij}, {a_ji}) with symmetrizers ({d_i}, {d_j})")]
    CannotUnfold { a_ij: i64, a_ji: i64, d_i: i64, d_j: i64 },
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("bad representation data: {0}")]
    BadShape(String),
    #[error("no generic representation of dimension {dims:?} found after {attempts} attempts")]
    GenericityFailure { dims: Vec<i64>, attempts: usize },
    #[error("decomposition failed: {0}")]
    InconsistentSolve(String),
    #[error("the preorder on indecomposables has a cycle")]
    CyclicOrder,
}

pub type Result<T> = std::result::Result<T, RepError>;

/// A quiver together with an automorphism `gamma` of its vertex set.
#[derive(Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
    gamma: Vec<usize>,
    arrow_index: HashMap<(usize, usize), usize>,
}

impl Quiver {
    /// Validates and builds a quiver with automorphism. `gamma` lists the
    /// image of each vertex.
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>, gamma: Vec<usize>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(RepError::DuplicateVertex(v.clone()));
            }
        }
        if gamma.len() != n || gamma.iter().any(|&g| g >= n) {
            return Err(RepError::NotAPermutation);
        }
        let image: BTreeSet<usize> = gamma.iter().copied().collect();
        if image.len() != n {
            return Err(RepError::NotAPermutation);
        }
        let mut arrow_index = HashMap::new();
        for (k, &(s, t)) in arrows.iter().enumerate() {
            if s >= n || t >= n {
                return Err(RepError::BadShape(format!("arrow {k} refers to a missing vertex")));
            }
            if s == t || arrow_index.insert((s, t), k).is_some() {
                return Err(RepError::NotDynkin);
            }
        }
        for &(s, t) in &arrows {
            if !arrow_index.contains_key(&(gamma[s], gamma[t])) {
                return Err(RepError::ArrowsNotPreserved(vertices[s].clone(), vertices[t].clone()));
            }
        }
        let q = Quiver {
            vertices,
            arrows,
            gamma,
            arrow_index,
        };
        // ADE check through the simply-laced Cartan matrix of the graph
        if n > 0 {
            q.graph_datum().map_err(|_| RepError::NotDynkin)?;
        }
        let orbit_of = q.orbit_of();
        for &(s, t) in &q.arrows {
            if orbit_of[s] == orbit_of[t] {
                return Err(RepError::ArrowWithinOrbit(q.vertices[s].clone(), q.vertices[t].clone()));
            }
        }
        q.orbit_order()?;
        Ok(q)
    }

    /// Builds a quiver from labels, checking every name.
    pub fn from_labels(
        vertices: Vec<String>,
        arrows: &[(String, String)],
        gamma: &HashMap<String, String>,
    ) -> Result<Self> {
        let idx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
        let find = |s: &str| {
            idx.get(s)
                .copied()
                .ok_or_else(|| RepError::UnknownVertex(s.to_string()))
        };
        let mut arr = Vec::with_capacity(arrows.len());
        for (s, t) in arrows {
            arr.push((find(s)?, find(t)?));
        }
        let mut g: Vec<usize> = (0..vertices.len()).collect();
        for (from, to) in gamma {
            g[find(from)?] = find(to)?;
        }
        Quiver::new(vertices, arr, g)
    }

    /// The quiver with identity automorphism.
    pub fn plain(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        Quiver::new(vertices, arrows, (0..n).collect())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_between(&self, s: usize, t: usize) -> Option<usize> {
        self.arrow_index.get(&(s, t)).copied()
    }

    /// Number of arrows from `s` to `t`.
    pub fn count_arrows(&self, s: usize, t: usize) -> i64 {
        i64::from(self.arrow_index.contains_key(&(s, t)))
    }

    /// The simply-laced Cartan datum of the underlying graph, labelled by
    /// the vertices.
    pub fn graph_datum(&self) -> std::result::Result<CartanDatum, RootError> {
        let n = self.vertices.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(s, t) in &self.arrows {
            m[s][t] -= 1;
            m[t][s] -= 1;
        }
        CartanDatum::new(m, self.vertices.clone())
    }

    /// Euler form of the quiver: sum of d_i e_i minus sum over arrows i->j of d_i e_j.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diag - off
    }

    /// gamma-orbits, listed by first appearance; each orbit starts at its
    /// first vertex and follows gamma.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if done[v] {
                continue;
            }
            let mut orbit = vec![v];
            done[v] = true;
            let mut w = self.gamma[v];
            while w != v {
                done[w] = true;
                orbit.push(w);
                w = self.gamma[w];
            }
            out.push(orbit);
        }
        out
    }

    fn orbit_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.vertices.len()];
        for (k, orbit) in self.orbits().iter().enumerate() {
            for &v in orbit {
                of[v] = k;
            }
        }
        of
    }

    /// Orbits in a total order along which every arrow ascends; ties go to
    /// the orbit appearing first in the vertex list.
    pub fn orbit_order(&self) -> Result<Vec<Vec<usize>>> {
        let orbits = self.orbits();
        let of = self.orbit_of();
        let m = orbits.len();
        let mut succ = vec![BTreeSet::new(); m];
        let mut indeg = vec![0usize; m];
        for &(s, t) in &self.arrows {
            if succ[of[s]].insert(of[t]) {
                indeg[of[t]] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..m).filter(|&k| indeg[k] == 0).collect();
        let mut order = Vec::with_capacity(m);
        while let Some(k) = ready.pop_first() {
            order.push(k);
            for &l in &succ[k] {
                indeg[l] -= 1;
                if indeg[l] == 0 {
                    ready.insert(l);
                }
            }
        }
        if order.len() != m {
            return Err(RepError::NoAscendingOrder);
        }
        Ok(order.into_iter().map(|k| orbits[k].clone()).collect())
    }

    /// The dimension vector of the twist by gamma: (gamma d)_v = d_{gamma v}.
    pub fn twist_vector(&self, d: &[i64]) -> Vec<i64> {
        self.gamma.iter().map(|&g| d[g]).collect()
    }

    /// Sum of the gamma-translates of `d` over its orbit.
    pub fn symmetrize(&self, d: &[i64]) -> Vec<i64> {
        let mut acc = d.to_vec();
        let mut cur = self.twist_vector(d);
        while cur != d {
            for (a, c) in acc.iter_mut().zip(&cur) {
                *a += c;
            }
            cur = self.twist_vector(&cur);
        }
        acc
    }

    /// Size of the gamma-orbit of a vector.
    pub fn orbit_size(&self, d: &[i64]) -> usize {
        let mut n = 1;
        let mut cur = self.twist_vector(d);
        while cur != d {
            n += 1;
            cur = self.twist_vector(&cur);
        }
        n
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|&(s, t)| format!("{}->{}", self.vertices[s], self.vertices[t]))
            .collect();
        f.debug_struct("Quiver")
            .field("vertices", &self.vertices)
            .field("arrows", &arrows)
            .field("gamma", &self.gamma)
            .finish()
    }
}

/// The quiver with automorphism whose folding is `datum`.
///
/// Orbit sizes are the symmetrizers; vertex `k` of orbit `i` is labelled
/// `"<label>#<k>"` and gamma sends `#k` to `#k+1` cyclically.
pub fn unfold(datum: &CartanDatum) -> Result<Quiver> {
    let n = datum.rank();
    let d = datum.symmetrizers();
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + d[i] as usize;
    }
    let mut vertices = Vec::with_capacity(offset[n]);
    let mut gamma = Vec::with_capacity(offset[n]);
    for i in 0..n {
        let size = d[i] as usize;
        for k in 0..size {
            vertices.push(format!("{}#{}", datum.labels()[i], k));
            gamma.push(offset[i] + (k + 1) % size);
        }
    }
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a_ij, a_ji) = (datum.entry(i, j), datum.entry(j, i));
            if a_ij == 0 {
                continue;
            }
            let (di, dj) = (d[i], d[j]);
            let err = RepError::CannotUnfold {
                a_ij,
                a_ji,
                d_i: di,
                d_j: dj,
            };
            if di == dj {
                if a_ij != -1 || a_ji != -1 {
                    return Err(err);
                }
                for k in 0..di as usize {
                    arrows.push((offset[i] + k, offset[j] + k));
                }
            } else if di == 1 && a_ij == -dj && a_ji == -1 {
                for k in 0..dj as usize {
                    arrows.push((offset[i], offset[j] + k));
                }
            } else if dj == 1 && a_ji == -di && a_ij == -1 {
                for k in 0..di as usize {
                    arrows.push((offset[i] + k, offset[j]));
                }
            } else {
                return Err(err);
            }
        }
    }
    Quiver::new(vertices, arrows, gamma)
}

fn orbit_label(q: &Quiver, orbit: &[usize]) -> String {
    let prefix = |v: usize| q.vertices[v].rsplit_once('#').map(|(p, _)| p.to_string());
    match prefix(orbit[0]) {
        Some(p) if orbit.iter().all(|&v| prefix(v).as_deref() == Some(p.as_str())) => p,
        _ => q.vertices[orbit[0]].clone(),
    }
}

/// The Cartan datum obtained by folding: indices are gamma-orbits in an
/// ascending order, and -a_ij is the number of arrows between the orbits
/// divided by the size of orbit i.
pub fn fold(q: &Quiver) -> Result<CartanDatum> {
    let orbits = q.orbit_order()?;
    let m = orbits.len();
    let mut of = vec![0usize; q.num_vertices()];
    for (k, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            of[v] = k;
        }
    }
    let mut between = vec![vec![0i64; m]; m];
    for &(s, t) in q.arrows() {
        between[of[s]][of[t]] += 1;
        between[of[t]][of[s]] += 1;
    }
    let mut matrix = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            matrix[i][j] = if i == j {
                2
            } else {
                -between[i][j] / orbits[i].len() as i64
            };
        }
    }
    let mut labels: Vec<String> = orbits.iter().map(|o| orbit_label(q, o)).collect();
    let distinct: BTreeSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() {
        labels = orbits.iter().map(|o| q.vertices[o[0]].clone()).collect();
    }
    Ok(CartanDatum::new(matrix, labels)?)
}

/// A representation: a vector space per vertex and a matrix per arrow,
/// of shape dims[target] x dims[source].
#[derive(Clone)]
pub struct Representation<F> {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(RepError::BadShape(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(RepError::BadShape(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (k, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.shape() != (dims[t], dims[s]) {
                return Err(RepError::BadShape(format!(
                    "map {k} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[t], dims[s])
                )));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let dims = vec![0; quiver.num_vertices()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { quiver, dims, maps }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(quiver: Arc<Quiver>, v: usize) -> Self {
        let mut dims = vec![0; quiver.num_vertices()];
        dims[v] = 1;
        Self::with_zero_maps(quiver, dims)
    }

    /// The semisimple representation of the given dimension vector.
    pub fn with_zero_maps(quiver: Arc<Quiver>, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t], dims[s]))
            .collect();
        Representation { quiver, dims, maps }
    }

    /// Random integer entries in `-range..=range`.
    pub fn random<R: Rng + ?Sized>(quiver: Arc<Quiver>, dims: Vec<usize>, range: i64, rng: &mut R) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::from_fn(dims[t], dims[s], |_, _| F::from_i64(rng.gen_range(-range..=range))))
            .collect();
        Representation { quiver, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver {
            Ok(())
        } else {
            Err(RepError::QuiverMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(a, b))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            dims,
            maps,
        })
    }

    /// Direct sum of all representations in the list; the zero
    /// representation when empty.
    pub fn sum_all<'a, I>(quiver: Arc<Quiver>, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut acc = Representation::zero(quiver);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// The twist by gamma: (gamma M)_v = M_{gamma v}, and the arrow u->w
    /// carries the map of the arrow gamma u -> gamma w.
    pub fn twist(&self) -> Self {
        let q = &self.quiver;
        let g = q.gamma();
        let dims = g.iter().map(|&v| self.dims[v]).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let b = q.arrow_between(g[s], g[t]).expect("gamma preserves arrows");
                self.maps[b].clone()
            })
            .collect();
        Representation {
            quiver: q.clone(),
            dims,
            maps,
        }
    }
}

impl<F: Field> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

/// The linear map from tuples (f_i : M_i -> N_i) to tuples indexed by
/// arrows a: i -> j, sending f to N_a f_i - f_j M_a. Its kernel is
/// Hom(M, N) and its cokernel is Ext^1(M, N).
pub fn intertwiner_matrix<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<Matrix<F>> {
    m.check_same(n)?;
    let q = m.quiver();
    let nv = q.num_vertices();
    let mut var_off = vec![0usize; nv + 1];
    for v in 0..nv {
        var_off[v + 1] = var_off[v] + n.dims[v] * m.dims[v];
    }
    let mut eq_off = vec![0usize; q.arrows().len() + 1];
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        eq_off[a + 1] = eq_off[a] + n.dims[t] * m.dims[s];
    }
    let mut mat = Matrix::<F>::zeros(eq_off[q.arrows().len()], var_off[nv]);
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (ms, mt, nt, ns) = (m.dims[s], m.dims[t], n.dims[t], n.dims[s]);
        let (na, ma) = (&n.maps[a], &m.maps[a]);
        for r in 0..nt {
            for c in 0..ms {
                let row = eq_off[a] + r * ms + c;
                // N_a f_s: sum_k N_a[r][k] f_s[k][c]
                for k in 0..ns {
                    let x = na.get(r, k);
                    if !x.is_zero() {
                        let col = var_off[s] + k * ms + c;
                        let v = mat.get(row, col).clone() + x.clone();
                        mat.set(row, col, v);
                    }
                }
                // - f_t M_a: sum_k f_t[r][k] M_a[k][c]
                for k in 0..mt {
                    let x = ma.get(k, c);
                    if !x.is_zero() {
                        let col = var_off[t] + r * mt + k;
                        let v = mat.get(row, col).clone() - x.clone();
                        mat.set(row, col, v);
                    }
                }
            }
        }
    }
    Ok(mat)
}

/// [M, N] = dim Hom(M, N).
pub fn hom_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    Ok(intertwiner_matrix(m, n)?.nullity())
}

/// [M, N]^1 through the Euler identity: [M, N] - <dim M, dim N>.
pub fn ext_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    let hom = hom_dim(m, n)? as i64;
    let e = hom - m.quiver().euler_form(&m.dim_vector(), &n.dim_vector());
    usize::try_from(e).map_err(|_| RepError::InconsistentSolve(format!("negative ext dimension {e}")))
}

/// [M, N]^1 as the cokernel dimension of the intertwiner map.
pub fn ext_dim_by_cokernel<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    let mat = intertwiner_matrix(m, n)?;
    Ok(mat.rows() - mat.rank())
}

/// Sampling parameters for [`generic_rep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    /// Entries are drawn from `-range..=range` on the first attempt.
    pub range: i64,
    /// The range is multiplied by this after each failed attempt.
    pub growth: i64,
    pub max_attempts: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            range: 16,
            growth: 4,
            max_attempts: 12,
        }
    }
}

/// A representation of dimension vector `d` without self-extensions,
/// certified by [X, X] = <d, d>.
pub fn generic_rep<F: Field, R: Rng + ?Sized>(
    quiver: &Arc<Quiver>,
    d: &[i64],
    rng: &mut R,
) -> Result<Representation<F>> {
    generic_rep_with(quiver, d, rng, Sampling::default())
}

pub fn generic_rep_with<F: Field, R: Rng + ?Sized>(
    quiver: &Arc<Quiver>,
    d: &[i64],
    rng: &mut R,
    sampling: Sampling,
) -> Result<Representation<F>> {
    if d.len() != quiver.num_vertices() || d.iter().any(|&x| x < 0) {
        return Err(RepError::BadShape(format!("dimension vector {d:?}")));
    }
    let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
    let target = quiver.euler_form(d, d);
    let mut range = sampling.range.max(1);
    for _ in 0..sampling.max_attempts {
        let x = Representation::random(quiver.clone(), dims.clone(), range, rng);
        if hom_dim(&x, &x)? as i64 == target {
            return Ok(x);
        }
        range = range.saturating_mul(sampling.growth.max(2));
    }
    Err(RepError::GenericityFailure {
        dims: d.to_vec(),
        attempts: sampling.max_attempts,
    })
}

/// One indecomposable per positive root of the unfolded (simply-laced)
/// system, listed along a linear extension of the order generated by
/// [U, V] != 0 or [V, U]^1 != 0.
#[derive(Clone)]
pub struct IndecTable<F> {
    quiver: Arc<Quiver>,
    roots: Vec<Vec<i64>>,
    indecs: Vec<Representation<F>>,
    hom: Vec<Vec<usize>>,
    index: HashMap<Vec<i64>, usize>,
}

impl<F: Field> IndecTable<F> {
    pub fn build<R: Rng + ?Sized>(quiver: Arc<Quiver>, rng: &mut R) -> Result<Self> {
        let datum = quiver.graph_datum()?;
        let roots = roots::reflection_closure(&datum);
        let mut indecs = Vec::with_capacity(roots.len());
        for r in &roots {
            let v: Representation<F> = generic_rep(&quiver, r, rng)?;
            debug_assert_eq!(hom_dim(&v, &v)?, 1);
            indecs.push(v);
        }
        let n = roots.len();
        let mut hom = vec![vec![0usize; n]; n];
        let mut ext = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                hom[a][b] = hom_dim(&indecs[a], &indecs[b])?;
                ext[a][b] = ext_dim(&indecs[a], &indecs[b])?;
            }
        }
        // topological sort of a -> b whenever hom(a,b) != 0 or ext(b,a) != 0
        let mut indeg = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && (hom[a][b] != 0 || ext[b][a] != 0) {
                    succ[a].push(b);
                    indeg[b] += 1;
                }
            }
        }
        let mut ready: BTreeSet<(Vec<i64>, usize)> = (0..n)
            .filter(|&k| indeg[k] == 0)
            .map(|k| (roots[k].clone(), k))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some((_, k)) = ready.pop_first() {
            order.push(k);
            for &l in &succ[k] {
                indeg[l] -= 1;
                if indeg[l] == 0 {
                    ready.insert((roots[l].clone(), l));
                }
            }
        }
        if order.len() != n {
            return Err(RepError::CyclicOrder);
        }
        let roots: Vec<Vec<i64>> = order.iter().map(|&k| roots[k].clone()).collect();
        let hom: Vec<Vec<usize>> = order
            .iter()
            .map(|&a| order.iter().map(|&b| hom[a][b]).collect())
            .collect();
        let mut slots: Vec<Option<Representation<F>>> = indecs.into_iter().map(Some).collect();
        let indecs = order
            .iter()
            .map(|&k| slots[k].take().expect("each index once"))
            .collect();
        let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        Ok(IndecTable {
            quiver,
            roots,
            indecs,
            hom,
            index,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Dimension vectors of the indecomposables, in table order.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_position(&self, d: &[i64]) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn indec(&self, k: usize) -> &Representation<F> {
        &self.indecs[k]
    }

    pub fn hom_matrix(&self) -> &[Vec<usize>] {
        &self.hom
    }

    /// Whether the hom matrix is upper unitriangular in table order.
    pub fn is_unitriangular(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| self.hom[a][a] == 1 && (0..a).all(|b| self.hom[a][b] == 0))
    }

    /// Direct sum of indecomposables with the given multiplicities (keyed by
    /// table position).
    pub fn realize(&self, mults: &MultFn) -> Result<Representation<F>> {
        let mut acc = Representation::zero(self.quiver.clone());
        for (k, m) in mults.iter() {
            for _ in 0..m {
                acc = acc.direct_sum(&self.indecs[k])?;
            }
        }
        Ok(acc)
    }

    /// Krull-Schmidt multiplicities of `m`, keyed by table position.
    pub fn decompose(&self, m: &Representation<F>) -> Result<MultFn> {
        if !(Arc::ptr_eq(&self.quiver, m.quiver()) || *self.quiver == **m.quiver()) {
            return Err(RepError::QuiverMismatch);
        }
        let n = self.len();
        let h: Vec<i64> = self
            .indecs
            .iter()
            .map(|v| hom_dim(v, m).map(|x| x as i64))
            .collect::<Result<_>>()?;
        let mut mult = vec![0i64; n];
        for a in (0..n).rev() {
            let rest: i64 = (a + 1..n).map(|b| mult[b] * self.hom[a][b] as i64).sum();
            let x = h[a] - rest;
            if x < 0 {
                return Err(RepError::InconsistentSolve(format!(
                    "negative multiplicity {x} for {:?}",
                    self.roots[a]
                )));
            }
            mult[a] = x;
        }
        let mut total = vec![0i64; m.dims().len()];
        for (a, &k) in mult.iter().enumerate() {
            for (t, r) in total.iter_mut().zip(&self.roots[a]) {
                *t += k * r;
            }
        }
        if total != m.dim_vector() {
            return Err(RepError::InconsistentSolve(format!(
                "summands add up to {total:?}, not {:?}",
                m.dim_vector()
            )));
        }
        Ok(mult
            .into_iter()
            .enumerate()
            .filter(|&(_, k)| k > 0)
            .map(|(a, k)| (a, k as u64))
            .collect())
    }

    /// gamma-orbits of the indecomposables, matched with the roots of `folded`.
    pub fn gamma_orbits(&self, folded: &RootSystem) -> Result<GammaOrbits> {
        GammaOrbits::new(self, folded)
    }
}

impl<F: Field> fmt::Debug for IndecTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndecTable")
            .field("roots", &self.roots)
            .field("hom", &self.hom)
            .finish()
    }
}

/// How gamma permutes the table of indecomposables, and the resulting
/// bijection between gamma-orbits and the folded positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaOrbits {
    /// Image of each table position under gamma.
    action: Vec<usize>,
    /// Orbits of table positions, indexed by folded root index.
    orbits: Vec<Vec<usize>>,
    /// Folded root index of each table position.
    folded_of: Vec<usize>,
}

impl GammaOrbits {
    fn new<F: Field>(table: &IndecTable<F>, folded: &RootSystem) -> Result<Self> {
        let q = table.quiver();
        let vertex_orbits = q.orbit_order()?;
        if vertex_orbits.len() != folded.rank() {
            return Err(RepError::QuiverMismatch);
        }
        let n = table.len();
        let mut action = Vec::with_capacity(n);
        for r in table.roots() {
            let image = q.twist_vector(r);
            action.push(table.root_position(&image).ok_or(RepError::QuiverMismatch)?);
        }
        let mut orbits: Vec<Option<Vec<usize>>> = vec![None; folded.num_roots()];
        let mut folded_of = vec![usize::MAX; n];
        for start in 0..n {
            if folded_of[start] != usize::MAX {
                continue;
            }
            let mut orbit = vec![start];
            let mut k = action[start];
            while k != start {
                orbit.push(k);
                k = action[k];
            }
            let sym = q.symmetrize(&table.roots()[start]);
            let coords: Vec<i64> = vertex_orbits.iter().map(|o| sym[o[0]]).collect();
            let idx = folded.root_index(&coords).ok_or(RepError::QuiverMismatch)?;
            if orbits[idx].is_some() {
                return Err(RepError::QuiverMismatch);
            }
            for &k in &orbit {
                folded_of[k] = idx;
            }
            orbits[idx] = Some(orbit);
        }
        let orbits = orbits
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(RepError::QuiverMismatch)?;
        Ok(GammaOrbits {
            action,
            orbits,
            folded_of,
        })
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    /// Table positions forming the orbit of folded root `k`.
    pub fn orbit(&self, k: usize) -> &[usize] {
        &self.orbits[k]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Symmetrization index of folded root `k`.
    pub fn symmetrization_index(&self, k: usize) -> usize {
        self.orbits[k].len()
    }

    pub fn folded_index(&self, position: usize) -> usize {
        self.folded_of[position]
    }

    /// Unfolded multiplicities of the gamma-symmetric representation with
    /// the given folded multiplicities.
    pub fn unfold_mults(&self, folded: &MultFn) -> MultFn {
        let mut out = MultFn::new();
        for (k, m) in folded.iter() {
            for &p in &self.orbits[k] {
                out.add(p, m);
            }
        }
        out
    }

    /// Folds unfolded multiplicities, requiring them to be constant on
    /// orbits. Returns `None` otherwise.
    pub fn fold_mults(&self, unfolded: &MultFn) -> Option<MultFn> {
        let mut out = MultFn::new();
        for (k, orbit) in self.orbits.iter().enumerate() {
            let m = unfolded.get(orbit[0]);
            if orbit.iter().any(|&p| unfolded.get(p) != m) {
                return None;
            }
            if m > 0 {
                out.add(k, m);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::plain(labels(&["1", "2"]), vec![(0, 1)]).unwrap())
    }

    #[test]
    fn unfold_b3_is_d4() {
        let q = unfold(&CartanDatum::named("B3").unwrap()).unwrap();
        assert_eq!(q.vertices(), labels(&["1#0", "2#0", "3#0", "3#1"]));
        assert_eq!(q.arrows(), &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(q.gamma(), &[0, 1, 3, 2]);
        assert!(q.graph_datum().is_ok());
    }

    #[test]
    fn unfold_shapes() {
        for (name, n, order) in [("C3", 5, 2), ("G2", 4, 3), ("F4", 6, 2), ("A2", 2, 1), ("B4", 5, 2)] {
            let q = unfold(&CartanDatum::named(name).unwrap()).unwrap();
            assert_eq!(q.num_vertices(), n, "{name}");
            let max_orbit = q.orbits().iter().map(Vec::len).max().unwrap();
            assert_eq!(max_orbit, order, "{name}");
        }
    }

    #[test]
    fn fold_inverts_unfold() {
        for name in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4", "E6",
        ] {
            let c = CartanDatum::named(name).unwrap();
            let back = fold(&unfold(&c).unwrap()).unwrap();
            assert_eq!(back.labels(), c.labels(), "{name}");
            assert_eq!(back.matrix(), c.matrix(), "{name}");
        }
    }

    #[test]
    fn fold_two_sources_into_sink() {
        // i1 -> j1 <- i2 with gamma swapping i1 and i2
        let q = Quiver::new(labels(&["i1", "j1", "i2"]), vec![(0, 1), (2, 1)], vec![2, 1, 0]).unwrap();
        let c = fold(&q).unwrap();
        assert_eq!(c.labels(), labels(&["i1", "j1"]));
        assert_eq!(c.matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(c.symmetrizers(), &[2, 1]);
    }

    #[test]
    fn fold_d4_triality_is_g2() {
        let q = Quiver::new(
            labels(&["a", "b", "c", "o"]),
            vec![(0, 3), (1, 3), (2, 3)],
            vec![1, 2, 0, 3],
        )
        .unwrap();
        let c = fold(&q).unwrap();
        assert_eq!(c.matrix(), &[vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn quiver_validation() {
        let cyc = Quiver::plain(labels(&["a", "b", "c"]), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(cyc.is_err());
        let affine = Quiver::plain(labels(&["a", "b", "c", "d", "e"]), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(affine.unwrap_err(), RepError::NotDynkin);
        let bad_gamma = Quiver::new(labels(&["a", "b"]), vec![(0, 1)], vec![1, 0]);
        assert!(matches!(bad_gamma, Err(RepError::ArrowsNotPreserved(..))));
        let not_perm = Quiver::new(labels(&["a", "b"]), vec![(0, 1)], vec![0, 0]);
        assert_eq!(not_perm.unwrap_err(), RepError::NotAPermutation);
        // a -> b <- c -> d with gamma exchanging a<->d, b<->c has no ascending orbit order
        let q = Quiver::new(
            labels(&["a", "b", "c", "d"]),
            vec![(0, 1), (2, 1), (2, 3)],
            vec![3, 2, 1, 0],
        );
        assert!(q.is_err());
    }

    #[test]
    fn hom_and_ext_in_a2() {
        let q = a2();
        let e1 = Representation::<Q>::simple(q.clone(), 0);
        let e2 = Representation::<Q>::simple(q.clone(), 1);
        let p1 = Representation::<Q>::new(q.clone(), vec![1, 1], vec![Matrix::from_i64_rows(&[vec![1]])]).unwrap();
        assert_eq!(hom_dim(&e1, &e1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &e2).unwrap(), 0);
        assert_eq!(hom_dim(&e2, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &e1).unwrap(), 1);
        assert_eq!(ext_dim(&e1, &e2).unwrap(), 1);
        assert_eq!(ext_dim(&e2, &e1).unwrap(), 0);
        assert_eq!(ext_dim_by_cokernel(&e1, &e2).unwrap(), 1);
        assert_eq!(ext_dim(&e1, &e1).unwrap(), 0);
    }

    #[test]
    fn generic_reps_are_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = a2();
        let x: Representation<Q> = generic_rep(&q, &[1, 1], &mut rng).unwrap();
        assert!(!x.map(0).is_zero());
        assert_eq!(hom_dim(&x, &x).unwrap(), 1);
        let d4 = Arc::new(unfold(&CartanDatum::named("B3").unwrap()).unwrap());
        let y: Representation<Q> = generic_rep(&d4, &[1, 1, 1, 1], &mut rng).unwrap();
        assert_eq!(
            hom_dim(&y, &y).unwrap() as i64,
            d4.euler_form(&[1, 1, 1, 1], &[1, 1, 1, 1])
        );
        assert_eq!(ext_dim(&y, &y).unwrap(), 0);
    }

    #[test]
    fn a2_table_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = IndecTable::<Q>::build(a2(), &mut rng).unwrap();
        assert_eq!(t.roots(), &[vec![0, 1], vec![1, 1], vec![1, 0]]);
        assert!(t.is_unitriangular());
    }

    #[test]
    fn d4_table_and_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b3 = CartanDatum::named("B3").unwrap();
        let q = Arc::new(unfold(&b3).unwrap());
        let t = IndecTable::<Q>::build(q, &mut rng).unwrap();
        assert_eq!(t.len(), 12);
        assert!(t.is_unitriangular());
        let sys = RootSystem::new(b3).unwrap();
        let orbits = t.gamma_orbits(&sys).unwrap();
        let k = sys.root_index(&[0, 0, 1]).unwrap();
        let mut members: Vec<Vec<i64>> = orbits.orbit(k).iter().map(|&p| t.roots()[p].clone()).collect();
        members.sort();
        assert_eq!(members, vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);
        let sizes: usize = (0..sys.num_roots()).map(|k| orbits.symmetrization_index(k)).sum();
        assert_eq!(sizes, 12);
    }

    #[test]
    fn decompose_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = a2();
        let t = IndecTable::<Q>::build(q.clone(), &mut rng).unwrap();
        let split = Representation::<Q>::with_zero_maps(q.clone(), vec![1, 1]);
        let m = t.decompose(&split).unwrap();
        let got: Vec<(Vec<i64>, u64)> = m.iter().map(|(k, c)| (t.roots()[k].clone(), c)).collect();
        assert_eq!(got, vec![(vec![0, 1], 1), (vec![1, 0], 1)]);
        let e1 = Representation::<Q>::simple(q.clone(), 0);
        let two = e1.direct_sum(&e1).unwrap();
        let m = t.decompose(&two).unwrap();
        assert_eq!(
            m.iter().collect::<Vec<_>>(),
            vec![(t.root_position(&[1, 0]).unwrap(), 2)]
        );
        let g: Representation<Q> = generic_rep(&q, &[1, 1], &mut rng).unwrap();
        let m = t.decompose(&g).unwrap();
        assert_eq!(
            m.iter().collect::<Vec<_>>(),
            vec![(t.root_position(&[1, 1]).unwrap(), 1)]
        );
    }

    #[test]
    fn rank_two_orbits_fold_to_four_roots() {
        let q = Arc::new(Quiver::new(labels(&["i1", "j1", "i2"]), vec![(0, 1), (2, 1)], vec![2, 1, 0]).unwrap());
        let sys = RootSystem::new(fold(&q).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = IndecTable::<Q>::build(q, &mut rng).unwrap();
        let orbits = t.gamma_orbits(&sys).unwrap();
        assert_eq!(orbits.orbits().len(), 4);
        let mut shapes: Vec<Vec<Vec<i64>>> = orbits
            .orbits()
            .iter()
            .map(|o| {
                let mut v: Vec<Vec<i64>> = o.iter().map(|&p| t.roots()[p].clone()).collect();
                v.sort();
                v
            })
            .collect();
        shapes.sort();
        assert_eq!(
            shapes,
            vec![
                vec![vec![0, 0, 1], vec![1, 0, 0]],
                vec![vec![0, 1, 0]],
                vec![vec![0, 1, 1], vec![1, 1, 0]],
                vec![vec![1, 1, 1]],
            ]
        );
    }
}
