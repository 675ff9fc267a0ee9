//! The interpolation polynomials `f_z = psi_X(todd(X, z))`, the evaluation
//! matrix of `γ_X^w`, and the internal and central bases built from them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::linalg::Matrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::rational::{self, Rational};
use crate::algebra::todd::todd_series;
use crate::error::{Error, Result};
use crate::geometry::Zonotope;
use crate::matroid::{is_totally_unimodular, VectorConfig};
use crate::pspace::{internal_space, top_degree, GradedSubspace, ProjectionTable};
use crate::splines::PieceTable;

/// `f_z` for a set of lattice points of one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FzTable {
    pub config: VectorConfig,
    pub cap: u32,
    pub entries: BTreeMap<Vec<i64>, Polynomial>,
}

impl FzTable {
    pub fn get(&self, z: &[i64]) -> Option<&Polynomial> {
        self.entries.get(z)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.values()
    }
}

/// Computes `f_z` for one configuration, reusing the projection data.
#[derive(Clone, Debug)]
pub struct ToddCalculator {
    config: VectorConfig,
    table: ProjectionTable,
    cache: BTreeMap<Vec<i64>, Polynomial>,
}

impl ToddCalculator {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        Ok(ToddCalculator {
            config: config.clone(),
            table: ProjectionTable::new(config)?,
            cache: BTreeMap::new(),
        })
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn projection(&self) -> &ProjectionTable {
        &self.table
    }

    pub fn cap(&self) -> u32 {
        top_degree(&self.config)
    }

    pub fn f_z(&mut self, z: &[i64]) -> Result<Polynomial> {
        if let Some(p) = self.cache.get(z) {
            return Ok(p.clone());
        }
        let series = todd_series(&self.config, z, self.cap())?;
        let f = self.table.project_series(&series)?;
        self.cache.insert(z.to_vec(), f.clone());
        Ok(f)
    }

    pub fn table(&mut self, points: &[Vec<i64>]) -> Result<FzTable> {
        let mut entries = BTreeMap::new();
        for z in points {
            entries.insert(z.clone(), self.f_z(z)?);
        }
        Ok(FzTable {
            config: self.config.clone(),
            cap: self.cap(),
            entries,
        })
    }
}

/// `f_z`; for TU `X` and interior `z` membership in `P_-(X)` is asserted.
pub fn f_z(config: &VectorConfig, z: &[i64]) -> Result<Polynomial> {
    let f = ToddCalculator::new(config)?.f_z(z)?;
    if is_totally_unimodular(config) && Zonotope::new(config)?.contains_int_interior(z) {
        let internal = internal_space(config)?;
        if !internal.contains(&f) {
            return Err(Error::Internal(format!(
                "f_{z:?} = {f} is not in the internal space of {config}"
            )));
        }
    }
    Ok(f)
}

/// Evaluation matrix of `γ_X^w` on a basis of `P(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMatrix {
    /// Row labels: `Z(X, w)` in lexicographic order.
    pub points: Vec<Vec<i64>>,
    pub basis: Vec<Polynomial>,
    /// `matrix[(i, j)] = lim_w basis_j(D_pw) B_X (points_i)`.
    pub matrix: Matrix,
}

impl GammaMatrix {
    /// `q_z^w = (γ_X^w)^{-1}(δ_z)` expressed as a polynomial.
    pub fn solve_delta(&self, z: &[i64]) -> Result<Polynomial> {
        let i = self
            .points
            .iter()
            .position(|p| p.as_slice() == z)
            .ok_or_else(|| Error::Precondition(format!("{z:?} is not in Z(X, w)")))?;
        let mut rhs = vec![rational::zero(); self.points.len()];
        rhs[i] = rational::one();
        let c = self
            .matrix
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("evaluation matrix is singular".into()))?;
        let nvars = self.basis.first().map_or(0, Polynomial::nvars);
        let mut q = Polynomial::zero(nvars);
        for (b, c) in self.basis.iter().zip(&c) {
            q = &q + &b.scale(c);
        }
        Ok(q)
    }
}

pub fn gamma_matrix_with(table: &mut PieceTable, points: &[Vec<i64>], basis: &[Polynomial]) -> Result<GammaMatrix> {
    if points.len() != basis.len() {
        return Err(Error::Precondition(format!(
            "{} points but {} basis polynomials",
            points.len(),
            basis.len()
        )));
    }
    let mut m = Matrix::zeros(points.len(), basis.len());
    for (i, z) in points.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            m[(i, j)] = table.lim_diff_int(b, z)?;
        }
    }
    if m.inverse().is_none() {
        return Err(Error::Internal("evaluation matrix of γ_X^w is singular".into()));
    }
    Ok(GammaMatrix {
        points: points.to_vec(),
        basis: basis.to_vec(),
        matrix: m,
    })
}

/// `γ_X^w` on `basis`, rows indexed by `Z(X, w)`.
pub fn gamma_matrix(config: &VectorConfig, w: &[Rational], basis: &[Polynomial]) -> Result<GammaMatrix> {
    let points = Zonotope::new(config)?.shifted_points(w)?;
    let mut table = PieceTable::new(config, w)?;
    gamma_matrix_with(&mut table, &points, basis)
}

fn require_tu(config: &VectorConfig) -> Result<()> {
    if !config.spans() {
        return Err(Error::NotSpanning {
            rank: config.rank(),
            dim: config.dim(),
        });
    }
    if !is_totally_unimodular(config) {
        return Err(Error::NotTotallyUnimodular);
    }
    Ok(())
}

/// The unique `p ∈ P_-(X)` with `p(D) B_X = values` on `Z_-(X)`:
/// `p = Σ values(z) f_z`.
pub fn interpolate_internal(config: &VectorConfig, values: &BTreeMap<Vec<i64>, Rational>) -> Result<Polynomial> {
    require_tu(config)?;
    let zonotope = Zonotope::new(config)?;
    let mut calc = ToddCalculator::new(config)?;
    let mut p = Polynomial::zero(config.dim());
    for (z, v) in values {
        if !zonotope.contains_int_interior(z) {
            return Err(Error::Precondition(format!("{z:?} is not an interior lattice point")));
        }
        if !v.is_zero() {
            p = &p + &calc.f_z(z)?.scale(v);
        }
    }
    Ok(p)
}

fn check_independent(table: &FzTable, expected: usize) -> Result<()> {
    let polys: Vec<Polynomial> = table.polynomials().cloned().collect();
    let span = graded_rank(&polys, table.config.dim(), table.cap);
    if table.len() != expected || span != expected {
        return Err(Error::Internal(format!(
            "{} polynomials of rank {span}, expected {expected}",
            table.len()
        )));
    }
    Ok(())
}

/// Rank of a list of polynomials of degree at most `cap`.
pub fn graded_rank(polys: &[Polynomial], nvars: usize, cap: u32) -> usize {
    let monos: Vec<_> = (0..=cap)
        .flat_map(|k| crate::algebra::poly::monomials_of_degree(nvars, k))
        .collect();
    if polys.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| monos.iter().map(|e| p.coeff(e)).collect())
        .collect();
    Matrix::from_rows(rows).rank()
}

/// `{f_z : z ∈ Z_-(X)}`, checked to be a basis of `P_-(X)`.
pub fn internal_basis(config: &VectorConfig) -> Result<(FzTable, GradedSubspace)> {
    require_tu(config)?;
    let interior = Zonotope::new(config)?.interior_points();
    let table = ToddCalculator::new(config)?.table(&interior)?;
    let space = internal_space(config)?;
    check_independent(&table, space.dimension())?;
    if let Some(bad) = table.entries.iter().find(|(_, f)| !space.contains(f)) {
        return Err(Error::Internal(format!("f_{:?} is not internal", bad.0)));
    }
    Ok((table, space))
}

/// `{f_z : z ∈ Z(X, w)}`, checked to be a basis of `P(X)`.
pub fn central_basis(config: &VectorConfig, w: &[Rational]) -> Result<FzTable> {
    require_tu(config)?;
    let points = Zonotope::new(config)?.shifted_points(w)?;
    let table = ToddCalculator::new(config)?.table(&points)?;
    let nbases = crate::matroid::enumerate_bases(config)?.len();
    check_independent(&table, nbases)?;
    Ok(table)
}
