//! Cartan data, positive roots, the ordered Euler form, Kostant partitions,
//! canonical decompositions and directed enumerations.
//!
//! A [`RootSystem`] stores its positive roots already sorted by a directed
//! enumeration, so a root's index doubles as its position in that
//! enumeration. Everything downstream (normal forms, multiplicity functions,
//! the straightening loop) relies on this.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

/// Default cap on the coordinate sum of weights handed to the partition
/// enumerators.
pub const DEFAULT_WEIGHT_BOUND: i64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("matrix has {rows} rows but {labels} labels were given")]
    BadShape { rows: usize, labels: usize },
    #[error("matrix row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("entry ({row}, {col}) = {value} violates a_ii = 2 / a_ij <= 0")]
    BadDiagonal { row: usize, col: usize, value: i64 },
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("symmetrized matrix is not positive definite")]
    NotFiniteType,
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight {0:?} has a negative coordinate")]
    NegativeWeight(Vec<i64>),
    #[error("weight {weight:?} exceeds the coordinate-sum bound {bound}")]
    BoundExceeded { weight: Vec<i64>, bound: i64 },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("no directed enumeration: {0}")]
    NoDirectedOrder(String),
    #[error("not a partition of the positive roots: {0}")]
    NotAPartition(String),
    #[error(
        "directed partition condition fails for roots {alpha:?} (block {alpha_block}) and {beta:?} (block {beta_block})"
    )]
    ConditionViolated {
        alpha: Vec<i64>,
        beta: Vec<i64>,
        alpha_block: usize,
        beta_block: usize,
    },
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, RootError>;

/// A validated symmetrizable Cartan matrix of finite type over a totally
/// ordered index set. Index `i` of the matrix is the `i`-th label, and the
/// order on generators is the order of `labels`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
}

impl CartanDatum {
    /// Validates `matrix` over the ordered labels and computes the minimal
    /// positive symmetrizers.
    pub fn new(matrix: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if matrix.len() != n {
            return Err(RootError::BadShape {
                rows: matrix.len(),
                labels: n,
            });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(RootError::RaggedRow {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(RootError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let v = matrix[i][j];
                if (i == j && v != 2) || (i != j && v > 0) {
                    return Err(RootError::BadDiagonal {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                if i != j && (v == 0) != (matrix[j][i] == 0) {
                    return Err(RootError::NotSymmetrizable(format!(
                        "a[{i}][{j}] = {v} but a[{j}][{i}] = {}",
                        matrix[j][i]
                    )));
                }
            }
        }
        let symmetrizers = symmetrizers(&matrix)?;
        let sym: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| symmetrizers[i] * matrix[i][j]).collect())
            .collect();
        if !is_positive_definite(&sym) {
            return Err(RootError::NotFiniteType);
        }
        Ok(Self {
            labels,
            matrix,
            symmetrizers,
        })
    }

    /// One of the built-in types: `A<n>`, `B<n>`, `C<n>`, `D<n>`, `E6`-`E8`,
    /// `F4`, `G2`, labelled `"1"`..`"n"` in their natural order.
    pub fn named(name: &str) -> Result<Self> {
        let matrix = named_matrix(name).ok_or_else(|| RootError::UnknownType(name.to_string()))?;
        let labels = (1..=matrix.len()).map(|i| i.to_string()).collect();
        Self::new(matrix, labels)
    }

    /// The same matrix over a new total order of the existing labels.
    pub fn reordered(&self, order: &[String]) -> Result<Self> {
        if order.len() != self.rank() {
            return Err(RootError::BadShape {
                rows: self.rank(),
                labels: order.len(),
            });
        }
        let perm = order.iter().map(|l| self.label_index(l)).collect::<Result<Vec<_>>>()?;
        let matrix = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        Self::new(matrix, order.to_vec())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| RootError::UnknownLabel(label.to_string()))
    }

    /// Connected components of the Dynkin diagram, each sorted by index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if !seen[j] && self.matrix[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether every off-diagonal entry lies in {0, -1}.
    pub fn is_simply_laced(&self) -> bool {
        self.matrix.iter().flatten().all(|&v| v == 2 || v == 0 || v == -1)
    }
}

pub fn validate_cartan(matrix: Vec<Vec<i64>>, order: Vec<String>) -> Result<CartanDatum> {
    CartanDatum::new(matrix, order)
}

fn symmetrizers(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = matrix.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].expect("visited vertex has a symmetrizer");
            for j in 0..n {
                if i == j || matrix[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = di * Ratio::new(matrix[i][j], matrix[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(RootError::NotSymmetrizable(format!(
                            "inconsistent symmetrizer at index {j}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = comp.iter().fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let scaled: Vec<i64> = comp.iter().map(|&i| (d[i].unwrap() * lcm).to_integer()).collect();
        let gcd = scaled.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        for (&i, v) in comp.iter().zip(scaled) {
            out[i] = v / gcd;
        }
    }
    Ok(out)
}

/// Sylvester-style check through exact elimination without pivoting: a
/// symmetric matrix is positive definite iff every pivot is positive.
fn is_positive_definite(sym: &[Vec<i64>]) -> bool {
    let n = sym.len();
    let mut a: Vec<Vec<Ratio<i128>>> = sym
        .iter()
        .map(|r| r.iter().map(|&v| Ratio::from_integer(v as i128)).collect())
        .collect();
    for k in 0..n {
        let pivot = a[k][k];
        if pivot <= Ratio::from_integer(0) {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    true
}

fn named_matrix(name: &str) -> Option<Vec<Vec<i64>>> {
    let upper = name.trim().to_ascii_uppercase();
    let (kind, num) = upper.split_at(1.min(upper.len()));
    let n: usize = num.parse().ok()?;
    let chain = |n: usize| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = 2;
            if i + 1 < n {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        m
    };
    match (kind, n) {
        ("A", n) if n >= 1 => Some(chain(n)),
        ("B", n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = -2;
            Some(m)
        }
        ("C", n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 1][n - 2] = -2;
            Some(m)
        }
        ("D", n) if n >= 4 => {
            let mut m = chain(n);
            // branch: n-3 joined to both n-2 and n-1
            m[n - 2][n - 1] = 0;
            m[n - 1][n - 2] = 0;
            m[n - 3][n - 1] = -1;
            m[n - 1][n - 3] = -1;
            Some(m)
        }
        ("E", n) if (6..=8).contains(&n) => {
            // chain 1-3-4-5-..-n with 2 attached to 4 (Bourbaki labelling)
            let mut m = vec![vec![0i64; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut link = |a: usize, b: usize| {
                m[a - 1][b - 1] = -1;
                m[b - 1][a - 1] = -1;
            };
            link(1, 3);
            link(2, 4);
            for a in 3..n {
                link(a, a + 1);
            }
            Some(m)
        }
        ("F", 4) => Some(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        ("G", 2) => Some(vec![vec![2, -1], vec![-3, 2]]),
        _ => None,
    }
}

/// A finite multiplicity function on the positive roots of a system, keyed by
/// root index. Zero multiplicities are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultFn(BTreeMap<usize, u64>);

impl MultFn {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(root: usize, mult: u64) -> Self {
        let mut m = Self::new();
        m.add(root, mult);
        m
    }

    pub fn get(&self, root: usize) -> u64 {
        self.0.get(&root).copied().unwrap_or(0)
    }

    pub fn add(&mut self, root: usize, mult: u64) {
        if mult > 0 {
            *self.0.entry(root).or_insert(0) += mult;
        }
    }

    pub fn set(&mut self, root: usize, mult: u64) {
        if mult == 0 {
            self.0.remove(&root);
        } else {
            self.0.insert(root, mult);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pairs `(root index, multiplicity)` in increasing root index.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    /// Total number of root summands counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.0.values().sum()
    }

    /// Root indices repeated by multiplicity, in increasing order.
    pub fn expand(&self) -> Vec<usize> {
        self.iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m as usize))
            .collect()
    }
}

impl FromIterator<(usize, u64)> for MultFn {
    fn from_iter<I: IntoIterator<Item = (usize, u64)>>(iter: I) -> Self {
        let mut m = MultFn::new();
        for (r, k) in iter {
            m.add(r, k);
        }
        m
    }
}

/// The positive roots of a [`CartanDatum`], sorted by a directed enumeration,
/// together with the ordered Euler form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    datum: CartanDatum,
    roots: Vec<Vec<i64>>,
    euler: Vec<Vec<i64>>,
    /// `pairing[k][l] = <roots[k], roots[l]>`
    pairing: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    simple: Vec<usize>,
    weight_bound: i64,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.datum == other.datum && self.roots == other.roots
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    /// Generates the positive roots by simple-reflection closure and sorts
    /// them by the deterministic directed enumeration.
    pub fn new(datum: CartanDatum) -> Result<Self> {
        let euler = euler_matrix(&datum);
        let closure = reflection_closure(&datum);
        let order = directed_order(&euler, &closure)?;
        let roots: Vec<Vec<i64>> = order.into_iter().map(|k| closure[k].clone()).collect();
        let pairing = roots
            .iter()
            .map(|a| roots.iter().map(|b| bilinear(&euler, a, b)).collect())
            .collect();
        let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let n = datum.rank();
        let simple = (0..n).map(|i| index[&unit(n, i)]).collect();
        Ok(Self {
            datum,
            roots,
            euler,
            pairing,
            index,
            simple,
            weight_bound: DEFAULT_WEIGHT_BOUND,
        })
    }

    /// Replaces the coordinate-sum cap used by the partition enumerators.
    pub fn with_weight_bound(mut self, bound: i64) -> Self {
        self.weight_bound = bound;
        self
    }

    pub fn weight_bound(&self) -> i64 {
        self.weight_bound
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Positive roots in directed-enumeration order.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Root index of the simple root of generator `i`.
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn euler_matrix(&self) -> &[Vec<i64>] {
        &self.euler
    }

    /// `<roots[k], roots[l]>`
    pub fn pairing(&self, k: usize, l: usize) -> i64 {
        self.pairing[k][l]
    }

    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(bilinear(&self.euler, x, y))
    }

    /// The symmetric form `(d_i a_ij)` applied to `x, y`.
    pub fn symmetric_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let d = self.datum.symmetrizers();
        let mut s = 0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += x[i] * d[i] * self.datum.entry(i, j) * y[j];
            }
        }
        Ok(s)
    }

    /// `|a| = sum a(alpha) alpha`
    pub fn weight(&self, a: &MultFn) -> Vec<i64> {
        let mut w = vec![0; self.rank()];
        for (r, m) in a.iter() {
            for (wi, ri) in w.iter_mut().zip(&self.roots[r]) {
                *wi += ri * m as i64;
            }
        }
        w
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(RootError::DimensionMismatch {
                expected: self.rank(),
                found: x.len(),
            });
        }
        Ok(())
    }

    fn check_weight(&self, d: &[i64]) -> Result<()> {
        self.check_len(d)?;
        if d.iter().any(|&v| v < 0) {
            return Err(RootError::NegativeWeight(d.to_vec()));
        }
        if d.iter().sum::<i64>() > self.weight_bound {
            return Err(RootError::BoundExceeded {
                weight: d.to_vec(),
                bound: self.weight_bound,
            });
        }
        Ok(())
    }

    /// All multiplicity functions of weight `d`.
    pub fn kostant_partitions(&self, d: &[i64]) -> Result<Vec<MultFn>> {
        self.check_weight(d)?;
        let mut out = Vec::new();
        let mut current = MultFn::new();
        let mut rest = d.to_vec();
        self.partitions_from(0, &mut rest, &mut current, &mut |m| out.push(m.clone()));
        Ok(out)
    }

    /// Kostant's partition function `P(d)`.
    pub fn kostant_count(&self, d: &[i64]) -> Result<u64> {
        self.check_weight(d)?;
        let mut count = 0u64;
        let mut current = MultFn::new();
        let mut rest = d.to_vec();
        self.partitions_from(0, &mut rest, &mut current, &mut |_| count += 1);
        Ok(count)
    }

    fn partitions_from(&self, k: usize, rest: &mut Vec<i64>, current: &mut MultFn, emit: &mut dyn FnMut(&MultFn)) {
        if rest.iter().all(|&v| v == 0) {
            emit(current);
            return;
        }
        if k == self.roots.len() {
            return;
        }
        let root = &self.roots[k];
        let max = root
            .iter()
            .zip(rest.iter())
            .filter(|(&r, _)| r > 0)
            .map(|(&r, &v)| v / r)
            .min()
            .unwrap_or(0);
        for m in 0..=max {
            if m > 0 {
                for (v, r) in rest.iter_mut().zip(root) {
                    *v -= r;
                }
                current.set(k, m as u64);
            }
            self.partitions_from(k + 1, rest, current, emit);
        }
        for (v, r) in rest.iter_mut().zip(root) {
            *v += r * max;
        }
        current.set(k, 0);
    }

    /// Whether `<alpha, beta> >= 0` for every ordered pair of roots in the
    /// support of `a`.
    pub fn is_ext_free(&self, a: &MultFn) -> bool {
        let supp: Vec<usize> = a.support().collect();
        supp.iter().all(|&k| supp.iter().all(|&l| self.pairing[k][l] >= 0))
    }

    /// The unique multiplicity function `a_d` of weight `d` whose support is
    /// pairwise non-negative under the Euler form in both orders.
    pub fn canonical_decomposition(&self, d: &[i64]) -> Result<MultFn> {
        self.check_weight(d)?;
        let mut found = Vec::new();
        let mut chosen = Vec::new();
        let mut current = MultFn::new();
        let mut rest = d.to_vec();
        self.compatible_from(0, &mut rest, &mut chosen, &mut current, &mut found);
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            n => Err(RootError::InternalInvariantViolation(format!(
                "{n} ext-free decompositions of {d:?}"
            ))),
        }
    }

    fn compatible_from(
        &self,
        k: usize,
        rest: &mut Vec<i64>,
        chosen: &mut Vec<usize>,
        current: &mut MultFn,
        found: &mut Vec<MultFn>,
    ) {
        if found.len() > 1 {
            return;
        }
        if rest.iter().all(|&v| v == 0) {
            found.push(current.clone());
            return;
        }
        if k == self.roots.len() {
            return;
        }
        // skip root k
        self.compatible_from(k + 1, rest, chosen, current, found);
        let compatible = chosen
            .iter()
            .all(|&l| self.pairing[k][l] >= 0 && self.pairing[l][k] >= 0);
        if !compatible {
            return;
        }
        let root = &self.roots[k];
        let max = root
            .iter()
            .zip(rest.iter())
            .filter(|(&r, _)| r > 0)
            .map(|(&r, &v)| v / r)
            .min()
            .unwrap_or(0);
        if max == 0 {
            return;
        }
        chosen.push(k);
        for m in 1..=max {
            for (v, r) in rest.iter_mut().zip(root) {
                *v -= r;
            }
            current.set(k, m as u64);
            self.compatible_from(k + 1, rest, chosen, current, found);
        }
        for (v, r) in rest.iter_mut().zip(root) {
            *v += r * max;
        }
        current.set(k, 0);
        chosen.pop();
    }

    /// Re-derives a directed enumeration of the stored roots. Since roots are
    /// stored in enumeration order this is the identity permutation; it is
    /// exposed so callers can verify the invariant.
    pub fn directed_enumeration(&self) -> Result<Vec<usize>> {
        directed_order(&self.euler, &self.roots)
    }

    /// Checks both directed-enumeration inequalities for the given order of
    /// root indices.
    pub fn is_directed_enumeration(&self, order: &[usize]) -> bool {
        order.iter().enumerate().all(|(k, &a)| {
            order[k..].iter().all(|&b| self.pairing[a][b] >= 0) && order[..k].iter().all(|&b| self.pairing[a][b] <= 0)
        })
    }

    /// Validates a directed partition given by root indices.
    pub fn directed_partition(&self, blocks: Vec<Vec<usize>>) -> Result<DirectedPartition> {
        let mut seen = vec![false; self.num_roots()];
        for block in &blocks {
            for &r in block {
                if r >= self.num_roots() {
                    return Err(RootError::NotAPartition(format!("root index {r} out of range")));
                }
                if std::mem::replace(&mut seen[r], true) {
                    return Err(RootError::NotAPartition(format!(
                        "root {:?} appears twice",
                        self.roots[r]
                    )));
                }
            }
        }
        if let Some(r) = seen.iter().position(|s| !s) {
            return Err(RootError::NotAPartition(format!(
                "root {:?} is not covered",
                self.roots[r]
            )));
        }
        for (s, bs) in blocks.iter().enumerate() {
            for (t, bt) in blocks.iter().enumerate().skip(s) {
                for &a in bs {
                    for &b in bt {
                        let ok = if s == t {
                            self.pairing[a][b] >= 0
                        } else {
                            self.pairing[a][b] >= 0 && self.pairing[b][a] <= 0
                        };
                        if !ok {
                            return Err(RootError::ConditionViolated {
                                alpha: self.roots[a].clone(),
                                beta: self.roots[b].clone(),
                                alpha_block: s,
                                beta_block: t,
                            });
                        }
                    }
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(DirectedPartition { blocks })
    }

    /// Like [`RootSystem::directed_partition`] with blocks given as root
    /// coordinate vectors.
    pub fn directed_partition_by_vectors(&self, blocks: &[Vec<Vec<i64>>]) -> Result<DirectedPartition> {
        let idx = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| {
                        self.root_index(v)
                            .ok_or_else(|| RootError::NotAPartition(format!("{v:?} is not a positive root")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        self.directed_partition(idx)
    }

    /// The partition into singletons, in enumeration order.
    pub fn singleton_partition(&self) -> DirectedPartition {
        DirectedPartition {
            blocks: (0..self.num_roots()).map(|k| vec![k]).collect(),
        }
    }

    /// All weights `d >= 0` with coordinate sum at most `max_sum`, in
    /// graded lexicographic order.
    pub fn weights_up_to(&self, max_sum: i64) -> Vec<Vec<i64>> {
        weights_up_to(self.rank(), max_sum)
    }

    /// Formats a root or weight in the compact digit style `(021)` when
    /// every coordinate is a single digit, else `(0,2,1)`.
    pub fn format_vector(v: &[i64]) -> String {
        if v.iter().all(|x| (0..10).contains(x)) {
            format!("({})", v.iter().map(|x| x.to_string()).collect::<String>())
        } else {
            format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self.roots.iter().map(|r| Self::format_vector(r)).collect();
        write!(f, "{}", roots.join(" "))
    }
}

pub fn positive_roots(datum: CartanDatum) -> Result<RootSystem> {
    RootSystem::new(datum)
}

/// An ordered partition of the positive roots satisfying the directed
/// conditions. Only constructible through [`RootSystem::directed_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedPartition {
    blocks: Vec<Vec<usize>>,
}

impl DirectedPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// `<alpha_i, alpha_j>` = `d_i a_ij` for `i < j`, `d_i` on the diagonal and
/// zero below it.
pub fn euler_matrix(datum: &CartanDatum) -> Vec<Vec<i64>> {
    let n = datum.rank();
    let d = datum.symmetrizers();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => d[i] * datum.entry(i, j),
                    std::cmp::Ordering::Equal => d[i],
                    std::cmp::Ordering::Greater => 0,
                })
                .collect()
        })
        .collect()
}

fn bilinear(m: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            s += xi * m[i][j] * yj;
        }
    }
    s
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Positive roots reachable from the simple roots by simple reflections
/// `s_i(b) = b - (sum_j a_ij b_j) alpha_i` through positive vectors.
pub fn reflection_closure(datum: &CartanDatum) -> Vec<Vec<i64>> {
    let n = datum.rank();
    let mut roots: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut seen: HashMap<Vec<i64>, ()> = roots.iter().map(|r| (r.clone(), ())).collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..n {
            let b = &roots[k];
            let c: i64 = (0..n).map(|j| datum.entry(i, j) * b[j]).sum();
            if c >= 0 {
                continue;
            }
            let mut r = b.clone();
            r[i] -= c;
            if seen.insert(r.clone(), ()).is_none() {
                roots.push(r);
            }
        }
        k += 1;
    }
    roots
}

/// Topological sort of `roots` where `a` before `b` is admissible iff
/// `<a,b> >= 0 >= <b,a>`. Forced pairs become edges; ties go to the root
/// that is smallest when compared from the last coordinate backwards.
pub fn directed_order(euler: &[Vec<i64>], roots: &[Vec<i64>]) -> Result<Vec<usize>> {
    let nu = roots.len();
    let pair: Vec<Vec<i64>> = roots
        .iter()
        .map(|a| roots.iter().map(|b| bilinear(euler, a, b)).collect())
        .collect();
    let mut indegree = vec![0usize; nu];
    let mut succ = vec![Vec::new(); nu];
    for a in 0..nu {
        for b in a + 1..nu {
            let ab = pair[a][b] >= 0 && pair[b][a] <= 0;
            let ba = pair[b][a] >= 0 && pair[a][b] <= 0;
            match (ab, ba) {
                (true, true) => {}
                (true, false) => {
                    succ[a].push(b);
                    indegree[b] += 1;
                }
                (false, true) => {
                    succ[b].push(a);
                    indegree[a] += 1;
                }
                (false, false) => {
                    return Err(RootError::NoDirectedOrder(format!(
                        "{:?} and {:?} admit no relative order",
                        roots[a], roots[b]
                    )))
                }
            }
        }
    }
    let colex = |k: usize| roots[k].iter().rev().copied().collect::<Vec<i64>>();
    let mut order = Vec::with_capacity(nu);
    let mut done = vec![false; nu];
    for _ in 0..nu {
        let next = (0..nu)
            .filter(|&k| !done[k] && indegree[k] == 0)
            .min_by_key(|&k| colex(k))
            .ok_or_else(|| RootError::NoDirectedOrder("forced pairs form a cycle".into()))?;
        done[next] = true;
        order.push(next);
        for &s in &succ[next] {
            indegree[s] -= 1;
        }
    }
    let ok = order
        .iter()
        .enumerate()
        .all(|(k, &a)| order[k..].iter().all(|&b| pair[a][b] >= 0) && order[..k].iter().all(|&b| pair[a][b] <= 0));
    if !ok {
        return Err(RootError::NoDirectedOrder(
            "topological order fails the enumeration inequalities".into(),
        ));
    }
    Ok(order)
}

/// All non-negative integer vectors of length `n` with coordinate sum at
/// most `max_sum`, ordered by total and then lexicographically.
pub fn weights_up_to(n: usize, max_sum: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == n {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=total {
            prefix.push(v);
            rec(n, total - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for total in 0..=max_sum.max(-1) {
        rec(n, total, &mut Vec::new(), &mut out);
    }
    out
}
