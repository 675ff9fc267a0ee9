//! Ordered integer vector configurations and their matroid combinatorics:
//! rank, total unimodularity, bases with external activity, cocircuits,
//! deletion and contraction.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{bareiss, det_int, Matrix};
use crate::algebra::poly::Polynomial;
use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};

/// An ordered list of `N` integer vectors in `Z^d`. Column order is part of
/// the identity of the configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VectorConfig {
    dim: usize,
    columns: Vec<Vec<i64>>,
}

impl VectorConfig {
    pub fn new(dim: usize, columns: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(VectorConfig { dim, columns })
    }

    /// From a `d x N` matrix given row by row.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let columns = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Ok(VectorConfig { dim: d, columns })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[i64] {
        &self.columns[i]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|r| self.columns.iter().map(|c| c[r]).collect())
            .collect()
    }

    pub fn delete(&self, i: usize) -> VectorConfig {
        let mut columns = self.columns.clone();
        columns.remove(i);
        VectorConfig {
            dim: self.dim,
            columns,
        }
    }

    pub fn select(&self, indices: &[usize]) -> VectorConfig {
        VectorConfig {
            dim: self.dim,
            columns: indices.iter().map(|&i| self.columns[i].clone()).collect(),
        }
    }

    /// Same columns with zero vectors removed.
    pub fn without_loops(&self) -> VectorConfig {
        VectorConfig {
            dim: self.dim,
            columns: self
                .columns
                .iter()
                .filter(|c| c.iter().any(|&x| x != 0))
                .cloned()
                .collect(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn rank_of(&self, indices: &[usize]) -> usize {
        let rows: Vec<Vec<i64>> = indices.iter().map(|&i| self.columns[i].clone()).collect();
        bareiss(&rows).0
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn spans(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.columns[i].iter().all(|&x| x == 0)
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        let rest: Vec<usize> = (0..self.len()).filter(|&j| j != i).collect();
        self.rank_of(&rest) < self.rank()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.columns
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    /// Compact deterministic identifier, e.g. `d2:[1,0][0,1][1,1]`.
    pub fn fingerprint(&self) -> String {
        let cols: String = self
            .columns
            .iter()
            .map(|c| {
                format!(
                    "[{}]",
                    c.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        format!("d{}:{}", self.dim, cols)
    }
}

impl fmt::Display for VectorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

/// Rank of the columns selected by `subset`.
pub fn rank(config: &VectorConfig, subset: &[usize]) -> usize {
    config.rank_of(subset)
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Brute force over every square submatrix.
pub fn is_totally_unimodular(config: &VectorConfig) -> bool {
    let rows = config.rows();
    let kmax = config.dim().min(config.len());
    for k in 1..=kmax {
        for rsel in subsets_of_size(config.dim(), k) {
            for csel in subsets_of_size(config.len(), k) {
                let sub: Vec<Vec<i64>> = rsel
                    .iter()
                    .map(|&r| csel.iter().map(|&c| rows[r][c]).collect())
                    .collect();
                if det_int(&sub).abs() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// A basis of the configuration together with its externally active set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisRecord {
    /// Sorted column indices (0-based).
    pub indices: Vec<usize>,
    /// Externally active columns, sorted.
    pub ext_active: Vec<usize>,
}

impl BasisRecord {
    /// Columns outside `B ∪ E(B)`; their product is `Q_B`.
    pub fn passive_complement(&self, n: usize) -> Vec<usize> {
        (0..n)
            .filter(|i| !self.indices.contains(i) && !self.ext_active.contains(i))
            .collect()
    }
}

/// Maximal independent subsets (size = rank), each with `E(B)`, in
/// lexicographic order. Works for non-spanning configurations too.
pub fn matroid_bases(config: &VectorConfig) -> Vec<BasisRecord> {
    let r = config.rank();
    subsets_of_size(config.len(), r)
        .into_iter()
        .filter(|s| config.rank_of(s) == r)
        .map(|indices| {
            let ext_active = activity_by_span(config, &indices);
            BasisRecord {
                indices,
                ext_active,
            }
        })
        .collect()
}

/// All bases of a spanning configuration.
pub fn enumerate_bases(config: &VectorConfig) -> Result<Vec<BasisRecord>> {
    let r = config.rank();
    if r < config.dim() {
        return Err(Error::NotSpanning {
            rank: r,
            dim: config.dim(),
        });
    }
    Ok(matroid_bases(config))
}

fn check_basis(config: &VectorConfig, basis: &[usize]) -> Result<Vec<usize>> {
    let mut b = basis.to_vec();
    b.sort_unstable();
    b.dedup();
    for &i in &b {
        config.check_index(i)?;
    }
    if b.len() != basis.len() || b.len() != config.rank() || config.rank_of(&b) != b.len() {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    Ok(b)
}

fn activity_by_span(config: &VectorConfig, basis: &[usize]) -> Vec<usize> {
    (0..config.len())
        .filter(|x| !basis.contains(x))
        .filter(|&x| {
            let earlier: Vec<usize> = basis.iter().copied().filter(|&b| b < x).collect();
            let mut with_x = earlier.clone();
            with_x.push(x);
            config.rank_of(&with_x) == config.rank_of(&earlier)
        })
        .collect()
}

/// `E(B) = { x not in B : x in span{ b in B : b < x } }`.
pub fn external_activity(config: &VectorConfig, basis: &[usize]) -> Result<Vec<usize>> {
    let b = check_basis(config, basis)?;
    Ok(activity_by_span(config, &b))
}

/// The unique circuit inside `B ∪ {x}` for `x` outside the basis.
pub fn fundamental_circuit(config: &VectorConfig, basis: &[usize], x: usize) -> Result<Vec<usize>> {
    let b = check_basis(config, basis)?;
    config.check_index(x)?;
    if b.contains(&x) {
        return Err(Error::Precondition(format!("column {x} belongs to the basis")));
    }
    let cols: Vec<Vec<Rational>> = b
        .iter()
        .map(|&i| rational::from_ints(config.column(i)))
        .collect();
    let m = Matrix::from_columns(config.dim(), &cols);
    let coeffs = m
        .solve(&rational::from_ints(config.column(x)))
        .ok_or_else(|| Error::Internal("column outside the span of a basis".into()))?;
    let mut circuit: Vec<usize> = b
        .iter()
        .zip(&coeffs)
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(&i, _)| i)
        .collect();
    circuit.push(x);
    circuit.sort_unstable();
    Ok(circuit)
}

/// `E(B)` via circuits: `x` is active iff it is the largest element of its
/// fundamental circuit.
pub fn external_activity_by_circuit(config: &VectorConfig, basis: &[usize]) -> Result<Vec<usize>> {
    let b = check_basis(config, basis)?;
    let mut out = Vec::new();
    for x in (0..config.len()).filter(|x| !b.contains(x)) {
        let c = fundamental_circuit(config, &b, x)?;
        if c.last() == Some(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Inclusion-minimal column set whose removal drops the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cocircuit {
    pub indices: Vec<usize>,
}

/// Cocircuits as complements of hyperplane flats, sorted.
pub fn cocircuits(config: &VectorConfig) -> Vec<Cocircuit> {
    let r = config.rank();
    if r == 0 {
        return Vec::new();
    }
    let n = config.len();
    let mut found = BTreeSet::new();
    for s in subsets_of_size(n, r - 1) {
        if config.rank_of(&s) != r - 1 {
            continue;
        }
        let complement: Vec<usize> = (0..n)
            .filter(|&i| {
                let mut t = s.clone();
                t.push(i);
                config.rank_of(&t) == r
            })
            .collect();
        found.insert(complement);
    }
    found
        .into_iter()
        .map(|indices| Cocircuit { indices })
        .collect()
}

/// The contraction `X/x` expressed in unimodular coordinates on `Z^{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    config: VectorConfig,
    /// Unimodular `d x d` matrix sending the contracted column to `e_d`.
    transform: Vec<Vec<i64>>,
    removed: usize,
}

impl Contraction {
    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn transform(&self) -> &[Vec<i64>] {
        &self.transform
    }

    pub fn removed(&self) -> usize {
        self.removed
    }

    /// Index in `X/x` of column `j` of `X` (`None` for the contracted one).
    pub fn image_index(&self, j: usize) -> Option<usize> {
        match j.cmp(&self.removed) {
            std::cmp::Ordering::Less => Some(j),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(j - 1),
        }
    }

    fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.transform
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `pi_x` on lattice points.
    pub fn project_point(&self, z: &[i64]) -> Vec<i64> {
        let mut v = self.apply(z);
        v.pop();
        v
    }

    /// `pi_x` on rational points.
    pub fn project_rational(&self, u: &[Rational]) -> Vec<Rational> {
        let d = self.transform.len();
        (0..d.saturating_sub(1))
            .map(|r| rational::dot_int(&self.transform[r], u))
            .collect()
    }

    /// `pi_x` on `sym(U)`: change variables so the contracted column is
    /// `s_d`, then send `s_d` to zero.
    pub fn project_poly(&self, p: &Polynomial) -> Polynomial {
        let d = self.transform.len();
        let images: Vec<Polynomial> = (0..d)
            .map(|i| {
                let coeffs: Vec<i64> = (0..d - 1).map(|j| self.transform[j][i]).collect();
                Polynomial::linear_form(&coeffs)
            })
            .collect();
        if d == 0 {
            return p.clone();
        }
        if p.is_zero() {
            return Polynomial::zero(d - 1);
        }
        p.substitute(&images)
    }
}

/// Unimodular matrix `M` with `M v = e_d`, by deterministic row reduction.
fn unimodular_to_last_axis(v: &[i64]) -> Option<Vec<Vec<i64>>> {
    let d = v.len();
    let mut m: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut v = v.to_vec();
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&i| v[i] != 0).collect();
        match nonzero.len() {
            0 => return None,
            1 => break,
            _ => {}
        }
        let p = *nonzero
            .iter()
            .min_by_key(|&&i| (v[i].abs(), i))
            .expect("nonempty");
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let q = v[j] / v[p];
            v[j] -= q * v[p];
            for c in 0..d {
                m[j][c] -= q * m[p][c];
            }
        }
    }
    let p = (0..d).find(|&i| v[i] != 0).expect("one nonzero entry");
    if v[p].abs() != 1 {
        return None;
    }
    m.swap(p, d - 1);
    v.swap(p, d - 1);
    if v[d - 1] == -1 {
        for c in 0..d {
            m[d - 1][c] = -m[d - 1][c];
        }
    }
    Some(m)
}

/// Contracts column `i`.
pub fn contract(config: &VectorConfig, i: usize) -> Result<Contraction> {
    config.check_index(i)?;
    if config.is_loop(i) {
        return Err(Error::LoopColumn(i));
    }
    let x = config.column(i);
    let g = x.iter().fold(0i64, |acc, &c| acc.gcd(&c));
    if g != 1 {
        return Err(Error::NotPrimitive(i));
    }
    let transform = unimodular_to_last_axis(x).ok_or(Error::NotPrimitive(i))?;
    let d = config.dim();
    let columns = config
        .columns()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, c)| {
            let mut img: Vec<i64> = transform
                .iter()
                .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
                .collect();
            img.truncate(d - 1);
            img
        })
        .collect();
    let quotient = VectorConfig::new(d - 1, columns)?;
    if is_totally_unimodular(config) && !is_totally_unimodular(&quotient) {
        return Err(Error::Internal(format!(
            "contraction of column {i} of {config} lost total unimodularity"
        )));
    }
    Ok(Contraction {
        config: quotient,
        transform,
        removed: i,
    })
}

/// Reduced oriented incidence matrix of a graph: the edge `{a, b}` with
/// `a < b` becomes `e_a - e_b`, and the row of the last vertex is dropped.
pub fn graphic_config(vertices: usize, edges: &[(usize, usize)]) -> VectorConfig {
    assert!(vertices >= 1, "graph needs a vertex");
    let d = vertices - 1;
    let columns = edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            let mut c = vec![0i64; d];
            if a < d {
                c[a] += 1;
            }
            if b < d {
                c[b] -= 1;
            }
            c
        })
        .collect();
    VectorConfig { dim: d, columns }
}
