//! The central space `P(X)` with its `Q_B` basis, the cocircuit ideal
//! `J(X)`, the projection `psi_X`, the internal space `P_-(X)` and the
//! kernel `D(X)` of the cocircuit ideal.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{monomials_of_degree, Exponents, GradedSeries, Polynomial};
use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::matroid::{cocircuits, enumerate_bases, BasisRecord, VectorConfig};

/// `p_Y`, the product of the linear forms of the selected columns.
pub fn column_product(config: &VectorConfig, indices: &[usize]) -> Polynomial {
    indices
        .iter()
        .fold(Polynomial::one(config.dim()), |acc, &i| {
            &acc * &Polynomial::linear_form(config.column(i))
        })
}

/// Top degree `N - d` of `P(X)`.
pub fn top_degree(config: &VectorConfig) -> u32 {
    config.len().saturating_sub(config.dim()) as u32
}

/// Each basis with `Q_B = p_{X \ (B ∪ E(B))}`.
pub fn q_basis(config: &VectorConfig) -> Result<Vec<(BasisRecord, Polynomial)>> {
    let n = config.len();
    Ok(enumerate_bases(config)?
        .into_iter()
        .map(|b| {
            let q = column_product(config, &b.passive_complement(n));
            (b, q)
        })
        .collect())
}

/// One generator `p_C` per cocircuit.
pub fn jideal_generators(config: &VectorConfig) -> Vec<Polynomial> {
    cocircuits(config)
        .iter()
        .map(|c| column_product(config, &c.indices))
        .collect()
}

/// Coordinates of homogeneous polynomials of one degree in the monomial basis.
struct MonomialCoords {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl MonomialCoords {
    fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialCoords { monomials, index }
    }

    fn len(&self) -> usize {
        self.monomials.len()
    }

    fn vector(&self, p: &Polynomial) -> Vec<Rational> {
        let mut v = vec![rational::zero(); self.len()];
        for (e, c) in p.terms() {
            if let Some(&i) = self.index.get(e) {
                v[i] = c.clone();
            }
        }
        v
    }

    fn polynomial(&self, nvars: usize, v: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in self.monomials.iter().zip(v) {
            if !c.is_zero() {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }
}

/// Row-reduced basis of the span of `vectors`, nonzero rows only.
fn row_basis(vectors: Vec<Vec<Rational>>, width: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors);
    let r = m.rref().len();
    debug_assert_eq!(m.cols(), width);
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// A subspace of the polynomial ring spanned by homogeneous polynomials,
/// stored degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    nvars: usize,
    /// `basis[k]` holds linearly independent homogeneous polynomials of degree `k`.
    basis: Vec<Vec<Polynomial>>,
}

impl GradedSubspace {
    pub fn new(nvars: usize, basis: Vec<Vec<Polynomial>>) -> Self {
        GradedSubspace { nvars, basis }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Dimensions per degree.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dimension(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.basis.iter().rposition(|b| !b.is_empty()).map(|k| k as u32)
    }

    pub fn degree(&self, k: u32) -> &[Polynomial] {
        self.basis.get(k as usize).map_or(&[], Vec::as_slice)
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.basis.iter().flatten()
    }

    /// Exact membership, degree by degree.
    pub fn contains(&self, p: &Polynomial) -> bool {
        let Some(top) = p.degree() else {
            return true;
        };
        (0..=top).all(|k| {
            let part = p.homogeneous_part(k);
            if part.is_zero() {
                return true;
            }
            let gens = self.degree(k);
            if gens.is_empty() {
                return false;
            }
            let coords = MonomialCoords::new(self.nvars, k);
            let mut rows: Vec<Vec<Rational>> = gens.iter().map(|g| coords.vector(g)).collect();
            let before = Matrix::from_rows(rows.clone()).rank();
            rows.push(coords.vector(&part));
            Matrix::from_rows(rows).rank() == before
        })
    }
}

/// Graded span of the given polynomials (each split into homogeneous parts).
fn graded_span(nvars: usize, top: u32, gens: &[Polynomial]) -> GradedSubspace {
    let mut basis = Vec::new();
    for k in 0..=top {
        let coords = MonomialCoords::new(nvars, k);
        let vecs: Vec<Vec<Rational>> = gens
            .iter()
            .map(|g| g.homogeneous_part(k))
            .filter(|g| !g.is_zero())
            .map(|g| coords.vector(&g))
            .collect();
        basis.push(
            row_basis(vecs, coords.len())
                .iter()
                .map(|v| coords.polynomial(nvars, v))
                .collect(),
        );
    }
    GradedSubspace { nvars, basis }
}

/// `P(X)` as the graded span of the `Q_B`.
pub fn central_space(config: &VectorConfig) -> Result<GradedSubspace> {
    let qs: Vec<Polynomial> = q_basis(config)?.into_iter().map(|(_, q)| q).collect();
    Ok(graded_span(config.dim(), top_degree(config), &qs))
}

/// Spanning set of the degree-`k` part of `J(X)`: monomials times generators.
fn ideal_spanning_set(generators: &[Polynomial], nvars: usize, k: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in generators {
        let Some(dg) = g.degree() else { continue };
        if dg > k {
            continue;
        }
        for m in monomials_of_degree(nvars, k - dg) {
            out.push(&Polynomial::monomial(m, rational::one()) * g);
        }
    }
    out
}

/// Per-degree decomposition data for `sym(U)_k = P(X)_k ⊕ J(X)_k`.
#[derive(Clone, Debug)]
struct DegreeBlock {
    coords_degree: u32,
    /// Degree-`k` `Q_B`s, in basis order.
    q: Vec<Polynomial>,
    /// Basis of `J(X)_k` chosen from the spanning set.
    j: Vec<Polynomial>,
    /// Inverse of the square matrix `[Q_k | J_k]` in monomial coordinates.
    inverse: Matrix,
}

/// Solved linear algebra for `psi_X`, built once per configuration.
#[derive(Clone, Debug)]
pub struct ProjectionTable {
    config: VectorConfig,
    blocks: Vec<DegreeBlock>,
}

/// A homogeneous-degree-wise split `g = p_part + j_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub p_part: Polynomial,
    pub j_part: Polynomial,
    /// Coefficients of `p_part` on the `Q_B` of each degree, concatenated by degree.
    pub q_coefficients: Vec<Rational>,
}

impl ProjectionTable {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        let d = config.dim();
        let qs = q_basis(config)?;
        let gens = jideal_generators(config);
        let top = top_degree(config);
        let mut blocks = Vec::new();
        for k in 0..=top {
            let coords = MonomialCoords::new(d, k);
            let q: Vec<Polynomial> = qs
                .iter()
                .map(|(_, q)| q.clone())
                .filter(|q| q.degree() == Some(k))
                .collect();
            let spanning = ideal_spanning_set(&gens, d, k);
            // Columns: Q's first, then the spanning set; pivot columns select
            // an independent subset of the ideal part.
            let mut cols: Vec<Vec<Rational>> = q.iter().map(|p| coords.vector(p)).collect();
            cols.extend(spanning.iter().map(|p| coords.vector(p)));
            let mut m = Matrix::from_columns(coords.len(), &cols);
            let pivots = m.rref();
            if pivots.len() != coords.len() || pivots.iter().take(q.len()).copied().ne(0..q.len())
            {
                return Err(Error::Internal(format!(
                    "degree {k}: P(X) and J(X) do not form a direct sum for {config}"
                )));
            }
            let j: Vec<Polynomial> = pivots[q.len()..]
                .iter()
                .map(|&c| spanning[c - q.len()].clone())
                .collect();
            let mut square: Vec<Vec<Rational>> = q.iter().map(|p| coords.vector(p)).collect();
            square.extend(j.iter().map(|p| coords.vector(p)));
            let inverse = Matrix::from_columns(coords.len(), &square)
                .inverse()
                .ok_or_else(|| Error::Internal(format!("degree {k}: singular decomposition")))?;
            blocks.push(DegreeBlock {
                coords_degree: k,
                q,
                j,
                inverse,
            });
        }
        Ok(ProjectionTable {
            config: config.clone(),
            blocks,
        })
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn top_degree(&self) -> u32 {
        top_degree(&self.config)
    }

    /// Splits a polynomial of degree `<= N - d` into its `P(X)` and `J(X)`
    /// parts; components above `N - d` go entirely to the ideal part.
    pub fn decompose(&self, g: &Polynomial) -> Result<Decomposition> {
        let d = self.config.dim();
        if g.nvars() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.nvars(),
            });
        }
        let mut p_part = Polynomial::zero(d);
        let mut j_part = Polynomial::zero(d);
        let mut q_coefficients = Vec::new();
        for block in &self.blocks {
            let k = block.coords_degree;
            let coords = MonomialCoords::new(d, k);
            let gk = g.homogeneous_part(k);
            let c = block.inverse.mul_vec(&coords.vector(&gk));
            let nq = block.q.len();
            for (i, q) in block.q.iter().enumerate() {
                p_part = &p_part + &q.scale(&c[i]);
            }
            for (i, jp) in block.j.iter().enumerate() {
                j_part = &j_part + &jp.scale(&c[nq + i]);
            }
            q_coefficients.extend(c[..nq].iter().cloned());
        }
        let top = self.top_degree();
        if let Some(dg) = g.degree() {
            for k in top + 1..=dg {
                j_part = &j_part + &g.homogeneous_part(k);
            }
        }
        Ok(Decomposition {
            p_part,
            j_part,
            q_coefficients,
        })
    }

    /// `psi_X` on polynomials.
    pub fn project(&self, g: &Polynomial) -> Result<Polynomial> {
        Ok(self.decompose(g)?.p_part)
    }

    /// `psi_X` on a truncated series; the cap must reach `N - d`.
    pub fn project_series(&self, g: &GradedSeries) -> Result<Polynomial> {
        let top = self.top_degree();
        if g.cap() < top {
            return Err(Error::CapTooSmall {
                cap: g.cap() as usize,
                needed: top as usize,
            });
        }
        self.project(g.poly())
    }

    /// Whether `g` lies in `J(X)` (through degree `N - d`; higher degrees
    /// always do).
    pub fn in_ideal(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.project(g)?.is_zero())
    }
}

/// `psi_X(g)` for a single series.
pub fn psi_project(config: &VectorConfig, g: &GradedSeries) -> Result<Polynomial> {
    ProjectionTable::new(config)?.project_series(g)
}

/// Annihilator of a span: functionals vanishing on all rows.
fn annihilator(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return (0..width)
            .map(|i| {
                (0..width)
                    .map(|j| if i == j { rational::one() } else { rational::zero() })
                    .collect()
            })
            .collect();
    }
    Matrix::from_rows(rows.to_vec()).nullspace()
}

/// `P(X \ x)` in the ambient ring of `X`. A coloop deletion no longer spans
/// and contributes the zero space.
fn deletion_space(config: &VectorConfig, x: usize) -> Result<Option<GradedSubspace>> {
    if config.is_coloop(x) {
        return Ok(None);
    }
    central_space(&config.delete(x)).map(Some)
}

/// `P_-(X)`: the intersection of all deletion spaces `P(X \ x)`.
pub fn internal_space(config: &VectorConfig) -> Result<GradedSubspace> {
    if !config.spans() {
        return Err(Error::NotSpanning {
            rank: config.rank(),
            dim: config.dim(),
        });
    }
    let d = config.dim();
    let top = top_degree(config);
    let mut spaces = Vec::new();
    for x in 0..config.len() {
        match deletion_space(config, x)? {
            Some(s) => spaces.push(s),
            None => {
                return Ok(GradedSubspace {
                    nvars: d,
                    basis: vec![Vec::new(); top as usize + 1],
                })
            }
        }
    }
    if spaces.is_empty() {
        return central_space(config);
    }
    let mut basis = Vec::new();
    for k in 0..=top {
        let coords = MonomialCoords::new(d, k);
        let mut constraints = Vec::new();
        for s in &spaces {
            let rows: Vec<Vec<Rational>> = s.degree(k).iter().map(|p| coords.vector(p)).collect();
            constraints.extend(annihilator(&rows, coords.len()));
        }
        let vecs = if constraints.is_empty() {
            annihilator(&[], coords.len())
        } else {
            Matrix::from_rows(constraints).nullspace()
        };
        basis.push(
            row_basis(vecs, coords.len())
                .iter()
                .map(|v| coords.polynomial(d, v))
                .collect(),
        );
    }
    Ok(GradedSubspace { nvars: d, basis })
}

/// Degree-`k` part of `D(X)`: homogeneous `f` with `<p, f> = 0` for every
/// `p` in `J(X)_k`.
pub fn dspace_basis(config: &VectorConfig, k: u32) -> Vec<Polynomial> {
    let d = config.dim();
    let coords = MonomialCoords::new(d, k);
    let spanning = ideal_spanning_set(&jideal_generators(config), d, k);
    // <g, f> = sum_alpha g_alpha f_alpha alpha!
    let rows: Vec<Vec<Rational>> = spanning
        .iter()
        .map(|g| {
            coords
                .monomials
                .iter()
                .map(|e| g.coeff(e) * Rational::from_integer(e.factorial()))
                .collect()
        })
        .collect();
    let kernel = annihilator(&row_basis(rows, coords.len()), coords.len());
    row_basis(kernel, coords.len())
        .iter()
        .map(|v| coords.polynomial(d, v))
        .collect()
}

/// `D(X)` through degree `N - d`.
pub fn dspace(config: &VectorConfig) -> GradedSubspace {
    let top = top_degree(config);
    GradedSubspace {
        nvars: config.dim(),
        basis: (0..=top).map(|k| dspace_basis(config, k)).collect(),
    }
}

/// Matrix of pairings `<Q_B, f>` between the `Q_B` basis and a `D(X)` basis.
pub fn duality_matrix(config: &VectorConfig) -> Result<Matrix> {
    let qs = q_basis(config)?;
    let ds: Vec<Polynomial> = dspace(config).polynomials().cloned().collect();
    let top = top_degree(config);
    let mut m = Matrix::zeros(qs.len(), ds.len());
    for (i, (_, q)) in qs.iter().enumerate() {
        let series = GradedSeries::new(q, top);
        for (j, f) in ds.iter().enumerate() {
            m[(i, j)] = crate::algebra::poly::pairing(&series, f)?;
        }
    }
    Ok(m)
}
