//! Box spline `B_X`, multivariate spline `T_X` and vector partition function
//! `𝒯_X`: exact values, local polynomial pieces, and chamber pieces `p_Ω`.
//!
//! Local pieces of `B_X` come from the two-term degree-reduction recursion
//! run on polynomials: the piece on the alcove approached from a point `q`
//! along `w` is assembled from pieces of sublists at `q` and at `q - x`.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{diff_apply, monomials_of_degree, Exponents, Polynomial};
use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::geometry::{
    cone_facets, hyperplane_normals, in_cone, AlcoveKey, Arrangement, ChamberKey, HyperplaneNormal,
    Zonotope,
};
use crate::matroid::{is_totally_unimodular, subsets_of_size, VectorConfig};

/// Region a local piece belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionKey {
    Alcove(AlcoveKey),
    Chamber(ChamberKey),
}

/// A region paired with the polynomial that agrees with the spline there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPiece {
    pub key: RegionKey,
    pub poly: Polynomial,
}

type Mask = u32;

fn mask_len(m: Mask) -> usize {
    m.count_ones() as usize
}

fn mask_indices(m: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m & (1 << i) != 0)
}

/// Data of a sublist `Y ⊆ X` used by the recursions.
#[derive(Clone, Debug)]
struct SubData {
    spans: bool,
    /// Normals of `Y` with `min`/`max` of `eta` over `Z(Y)`.
    facets: Vec<(Vec<i64>, i64, i64)>,
    /// Chosen basis of `Y` (positions in `X`) and its inverse.
    basis: Vec<usize>,
    inverse: Option<Matrix>,
    abs_det: Rational,
}

/// Lazily computed per-sublist data, shared by all recursions over one `X`.
#[derive(Clone, Debug)]
struct SubCache {
    config: VectorConfig,
    last_basis: bool,
    data: HashMap<Mask, SubData>,
}

impl SubCache {
    fn new(config: &VectorConfig, last_basis: bool) -> Self {
        assert!(config.len() <= 32, "at most 32 columns supported");
        SubCache {
            config: config.clone(),
            last_basis,
            data: HashMap::new(),
        }
    }

    fn get(&mut self, mask: Mask) -> &SubData {
        if !self.data.contains_key(&mask) {
            let sd = self.compute(mask);
            self.data.insert(mask, sd);
        }
        &self.data[&mask]
    }

    fn compute(&self, mask: Mask) -> SubData {
        let idx: Vec<usize> = mask_indices(mask).collect();
        let d = self.config.dim();
        let sub = self.config.select(&idx);
        let spans = sub.rank() == d;
        if !spans {
            return SubData {
                spans,
                facets: Vec::new(),
                basis: Vec::new(),
                inverse: None,
                abs_det: rational::one(),
            };
        }
        let facets = hyperplane_normals(&sub)
            .expect("spanning sublist")
            .into_iter()
            .map(|n| {
                let (lo, hi) = sub.columns().iter().fold((0, 0), |(lo, hi), c| {
                    let v = n.dot_int(c);
                    (lo + v.min(0), hi + v.max(0))
                });
                (n.0, lo, hi)
            })
            .collect();
        let mut candidates = subsets_of_size(idx.len(), d);
        if self.last_basis {
            candidates.reverse();
        }
        let local = candidates
            .into_iter()
            .find(|s| sub.rank_of(s) == d)
            .expect("spanning sublist has a basis");
        let basis: Vec<usize> = local.iter().map(|&k| idx[k]).collect();
        let cols: Vec<&[i64]> = basis.iter().map(|&i| self.config.column(i)).collect();
        let m = Matrix::from_int_columns(d, &cols);
        let abs_det = m.determinant().abs();
        SubData {
            spans,
            facets,
            basis,
            inverse: m.inverse(),
            abs_det,
        }
    }
}

/// Whether `q + eps w` lies in `Z(Y)` for all small `eps > 0`.
fn in_zonotope_toward(facets: &[(Vec<i64>, i64, i64)], q: &[Rational], w: &[Rational]) -> bool {
    facets.iter().all(|(eta, lo, hi)| {
        let v = rational::dot_int(eta, q);
        let (lo, hi) = (rational::int(*lo), rational::int(*hi));
        if lo < v && v < hi {
            return true;
        }
        let s = rational::dot_int(eta, w);
        (v == lo && s.is_positive()) || (v == hi && s.is_negative())
    })
}

fn sub_vec(a: &[Rational], b: &[i64]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, &y)| x - rational::int(y)).collect()
}

fn neg_int(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rational::int(-x)).collect()
}

/// Exact local pieces of `B_X` for one direction `w`, memoized over
/// sublists and points.
#[derive(Clone, Debug)]
pub struct PieceTable {
    config: VectorConfig,
    w: Vec<Rational>,
    arrangement: Arrangement,
    sub: SubCache,
    memo: HashMap<(Mask, Vec<Rational>), Polynomial>,
}

impl PieceTable {
    /// `w` must be affine regular for `X`. Loops are dropped: they do not
    /// change the pieces on full-dimensional alcoves.
    pub fn new(config: &VectorConfig, w: &[Rational]) -> Result<Self> {
        let stripped = config.without_loops();
        if w.len() != config.dim() {
            return Err(Error::DimensionMismatch {
                expected: config.dim(),
                found: w.len(),
            });
        }
        let arrangement = Arrangement::new(&stripped)?;
        if !arrangement.is_affine_regular(w) {
            return Err(Error::NotGeneric);
        }
        Ok(PieceTable {
            sub: SubCache::new(&stripped, false),
            config: stripped,
            w: w.to_vec(),
            arrangement,
            memo: HashMap::new(),
        })
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn direction(&self) -> &[Rational] {
        &self.w
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    /// The polynomial `p_c` of the alcove `c` with `u` and `u + eps w` in its
    /// closure.
    pub fn piece(&mut self, u: &[Rational]) -> Result<Polynomial> {
        if u.len() != self.config.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.config.dim(),
                found: u.len(),
            });
        }
        let full: Mask = if self.config.len() == 32 {
            Mask::MAX
        } else {
            (1 << self.config.len()) - 1
        };
        Ok(self.rec(full, u.to_vec()))
    }

    pub fn piece_int(&mut self, u: &[i64]) -> Result<Polynomial> {
        self.piece(&rational::from_ints(u))
    }

    /// `piece` tagged with the alcove key of a sample point of the alcove.
    pub fn local_piece(&mut self, u: &[Rational]) -> Result<LocalPiece> {
        let poly = self.piece(u)?;
        let sample = self.arrangement.sample_toward(u, &self.w)?;
        Ok(LocalPiece {
            key: RegionKey::Alcove(self.arrangement.alcove_key(&sample)),
            poly,
        })
    }

    /// `lim_w f(D_pw) B_X (u)`.
    pub fn lim_diff(&mut self, f: &Polynomial, u: &[Rational]) -> Result<Rational> {
        let p = self.piece(u)?;
        Ok(diff_apply(f, &p)?.eval(u))
    }

    pub fn lim_diff_int(&mut self, f: &Polynomial, u: &[i64]) -> Result<Rational> {
        self.lim_diff(f, &rational::from_ints(u))
    }

    fn rec(&mut self, mask: Mask, q: Vec<Rational>) -> Polynomial {
        let d = self.config.dim();
        let key = (mask, q);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let (mask, q) = key;
        let sd = self.sub.get(mask).clone();
        let result = if !sd.spans || !in_zonotope_toward(&sd.facets, &q, &self.w) {
            Polynomial::zero(d)
        } else if mask_len(mask) == d {
            Polynomial::constant(d, sd.abs_det.recip())
        } else {
            let inv = sd.inverse.as_ref().expect("basis is invertible");
            let mut acc = Polynomial::zero(d);
            for xi in mask_indices(mask) {
                let col = self.config.column(xi).to_vec();
                let rest = mask & !(1 << xi);
                let shifted = self.rec(rest, sub_vec(&q, &col));
                let moved = if shifted.is_zero() {
                    shifted
                } else {
                    shifted.translate(&neg_int(&col))
                };
                acc = &acc + &moved;
                if let Some(pos) = sd.basis.iter().position(|&b| b == xi) {
                    let here = self.rec(rest, q.clone());
                    let diff = &here - &moved;
                    if !diff.is_zero() {
                        let t = Polynomial::linear_form_q(inv.row(pos));
                        acc = &acc + &(&t * &diff);
                    }
                }
            }
            acc.scale(&Rational::new(1.into(), ((mask_len(mask) - d) as i64).into()))
        };
        self.memo.insert((mask, q), result.clone());
        result
    }
}

/// `p_c` for the alcove approached from `u` along `w`.
pub fn box_spline_piece(config: &VectorConfig, u: &[Rational], w: &[Rational]) -> Result<LocalPiece> {
    PieceTable::new(config, w)?.local_piece(u)
}

/// `lim_w f(D_pw) B_X (u)`.
pub fn lim_w_diff(config: &VectorConfig, f: &Polynomial, u: &[Rational], w: &[Rational]) -> Result<Rational> {
    PieceTable::new(config, w)?.lim_diff(f, u)
}

/// Exact values of `B_X` at generic points, by the numeric recursion.
#[derive(Clone, Debug)]
pub struct BoxSplineEvaluator {
    config: VectorConfig,
    arrangement: Arrangement,
    sub: SubCache,
    memo: HashMap<(Mask, Vec<Rational>), Rational>,
}

impl BoxSplineEvaluator {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        let stripped = config.without_loops();
        Ok(BoxSplineEvaluator {
            arrangement: Arrangement::new(&stripped)?,
            sub: SubCache::new(&stripped, true),
            config: stripped,
            memo: HashMap::new(),
        })
    }

    /// `B_X(u)`; points on an affine admissible hyperplane are rejected.
    pub fn eval(&mut self, u: &[Rational]) -> Result<Rational> {
        if u.len() != self.config.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.config.dim(),
                found: u.len(),
            });
        }
        if !self.arrangement.is_generic(u) {
            return Err(Error::NotGeneric);
        }
        let full: Mask = (1u64 << self.config.len()).wrapping_sub(1) as Mask;
        Ok(self.rec(full, u.to_vec()))
    }

    fn rec(&mut self, mask: Mask, u: Vec<Rational>) -> Rational {
        let d = self.config.dim();
        let key = (mask, u);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (mask, u) = key;
        let sd = self.sub.get(mask).clone();
        let inside = sd.facets.iter().all(|(eta, lo, hi)| {
            let v = rational::dot_int(eta, &u);
            rational::int(*lo) < v && v < rational::int(*hi)
        });
        let result = if !sd.spans || !inside {
            rational::zero()
        } else if mask_len(mask) == d {
            sd.abs_det.recip()
        } else {
            let inv = sd.inverse.as_ref().expect("basis is invertible");
            let t = inv.mul_vec(&u);
            let mut acc = rational::zero();
            for xi in mask_indices(mask) {
                let col = self.config.column(xi).to_vec();
                let rest = mask & !(1 << xi);
                let shifted = self.rec(rest, sub_vec(&u, &col));
                acc += &shifted;
                if let Some(pos) = sd.basis.iter().position(|&b| b == xi) {
                    if !t[pos].is_zero() {
                        let here = self.rec(rest, u.clone());
                        acc += &t[pos] * (here - shifted);
                    }
                }
            }
            acc / rational::int((mask_len(mask) - d) as i64)
        };
        self.memo.insert((mask, u), result.clone());
        result
    }
}

/// `B_X(u)` at a generic rational point.
pub fn box_spline_eval(config: &VectorConfig, u: &[Rational]) -> Result<Rational> {
    BoxSplineEvaluator::new(config)?.eval(u)
}

/// Whether `0` lies outside the convex hull of the columns, decided exactly
/// over supports of size at most `d + 1`.
pub fn is_pointed(config: &VectorConfig) -> bool {
    let d = config.dim();
    let lifted: Vec<Vec<Rational>> = config
        .columns()
        .iter()
        .map(|c| {
            let mut v = rational::from_ints(c);
            v.push(rational::one());
            v
        })
        .collect();
    let mut target = vec![rational::zero(); d + 1];
    target[d] = rational::one();
    for k in 1..=(d + 1).min(config.len()) {
        for s in subsets_of_size(config.len(), k) {
            let cols: Vec<Vec<Rational>> = s.iter().map(|&i| lifted[i].clone()).collect();
            let m = Matrix::from_columns(d + 1, &cols);
            if m.rank() < k {
                continue;
            }
            if let Some(lam) = m.solve(&target) {
                if lam.iter().all(|l| !l.is_negative()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Counts nonnegative integer solutions of `X λ = u` by depth-first search
/// over the non-basis columns, solving for the basis part exactly.
#[derive(Clone, Debug)]
pub struct PartitionCounter {
    config: VectorConfig,
    free: Vec<usize>,
    /// Adjugate of the basis matrix and its determinant: `λ_B = adj r / det`.
    adj: Vec<Vec<i64>>,
    det: i64,
    phi: Vec<i64>,
    phi_x: Vec<i64>,
    memo: HashMap<Vec<i64>, u64>,
    /// Counts of `X_{free[k..]} ∪ B` at intermediate remainders, shared
    /// between calls.
    partial: HashMap<(usize, Vec<i64>), u64>,
}

const PARTIAL_LIMIT: usize = 1 << 21;

impl PartitionCounter {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        let d = config.dim();
        let r = config.rank();
        if r < d {
            return Err(Error::NotSpanning { rank: r, dim: d });
        }
        if !is_pointed(config) {
            return Err(Error::NotPointed);
        }
        // Sum of inward facet normals is positive on every nonzero vector of
        // a pointed full-dimensional cone.
        let facets = cone_facets(config)?;
        let phi: Vec<i64> = (0..d).map(|i| facets.iter().map(|f| f.0[i]).sum()).collect();
        let phi_x: Vec<i64> = config
            .columns()
            .iter()
            .map(|c| c.iter().zip(&phi).map(|(a, b)| a * b).sum())
            .collect();
        if phi_x.iter().any(|&v| v < 1) {
            return Err(Error::Internal("positive functional is not positive".into()));
        }
        let basis = subsets_of_size(config.len(), d)
            .into_iter()
            .find(|s| config.rank_of(s) == d)
            .expect("spanning configuration has a basis");
        let free = (0..config.len()).filter(|i| !basis.contains(i)).collect();
        let cols: Vec<&[i64]> = basis.iter().map(|&i| config.column(i)).collect();
        let m = Matrix::from_int_columns(d, &cols);
        let det_q = m.determinant();
        let inv = m.inverse().expect("basis");
        let det = i64::try_from(det_q.to_integer()).expect("determinant fits");
        let adj = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let v = &inv[(i, j)] * &det_q;
                        i64::try_from(v.to_integer()).expect("adjugate fits")
                    })
                    .collect()
            })
            .collect();
        Ok(PartitionCounter {
            config: config.clone(),
            free,
            adj,
            det,
            phi,
            phi_x,
            memo: HashMap::new(),
            partial: HashMap::new(),
        })
    }

    fn adj_apply(&self, r: &[i64]) -> Vec<i64> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(r).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn basis_ok(&self, r: &[i64]) -> bool {
        self.adj_apply(r)
            .iter()
            .all(|&a| a % self.det == 0 && a / self.det >= 0)
    }

    /// `𝒯_X(u)`.
    pub fn count(&mut self, u: &[i64]) -> Result<u64> {
        if u.len() != self.config.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.config.dim(),
                found: u.len(),
            });
        }
        if let Some(&c) = self.memo.get(u) {
            return Ok(c);
        }
        let c = self.dfs(0, u.to_vec());
        self.memo.insert(u.to_vec(), c);
        Ok(c)
    }

    fn budget(&self, r: &[i64]) -> i64 {
        r.iter().zip(&self.phi).map(|(a, b)| a * b).sum()
    }

    fn dfs(&mut self, k: usize, r: Vec<i64>) -> u64 {
        let budget = self.budget(&r);
        if budget < 0 {
            return 0;
        }
        if k == self.free.len() {
            return u64::from(self.basis_ok(&r));
        }
        let col = self.config.column(self.free[k]);
        let max = budget / self.phi_x[self.free[k]];
        if k + 1 == self.free.len() && self.det.abs() == 1 {
            // λ_B(λ) = det (adj r - λ adj x): an interval of valid λ
            let a: Vec<i64> = self.adj_apply(&r).iter().map(|v| v * self.det).collect();
            let b: Vec<i64> = self.adj_apply(col).iter().map(|v| v * self.det).collect();
            let (mut lo, mut hi) = (0i64, max);
            for (&ai, &bi) in a.iter().zip(&b) {
                match bi.signum() {
                    1 => hi = hi.min(ai.div_euclid(bi)),
                    -1 => lo = lo.max((-ai + (-bi) - 1).div_euclid(-bi)),
                    _ => {
                        if ai < 0 {
                            return 0;
                        }
                    }
                }
            }
            return if hi >= lo { (hi - lo + 1) as u64 } else { 0 };
        }
        let memoize = k > 0 && k + 2 <= self.free.len();
        if memoize {
            if let Some(&c) = self.partial.get(&(k, r.clone())) {
                return c;
            }
        }
        let col = col.to_vec();
        let mut total = 0;
        let mut cur = r.clone();
        for _ in 0..=max {
            total += self.dfs(k + 1, cur.clone());
            for (c, x) in cur.iter_mut().zip(&col) {
                *c -= x;
            }
        }
        if memoize {
            if self.partial.len() > PARTIAL_LIMIT {
                self.partial.clear();
            }
            self.partial.insert((k, r), total);
        }
        total
    }
}

/// `𝒯_X(u)`, the number of nonnegative integer solutions of `X λ = u`.
pub fn partition_count(config: &VectorConfig, u: &[i64]) -> Result<u64> {
    PartitionCounter::new(config)?.count(u)
}

/// Exact values of `T_X` at points off the linear hyperplanes.
#[derive(Clone, Debug)]
pub struct MultiSplineEvaluator {
    config: VectorConfig,
    arrangement: Arrangement,
    sub: SubCache,
    memo: HashMap<(Mask, Vec<Rational>), Rational>,
}

impl MultiSplineEvaluator {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        if !is_pointed(config) {
            return Err(Error::NotPointed);
        }
        Ok(MultiSplineEvaluator {
            arrangement: Arrangement::new(config)?,
            sub: SubCache::new(config, false),
            config: config.clone(),
            memo: HashMap::new(),
        })
    }

    pub fn eval(&mut self, u: &[Rational]) -> Result<Rational> {
        if self
            .arrangement
            .normals()
            .iter()
            .any(|n| n.dot(u).is_zero())
        {
            return Err(Error::NotGeneric);
        }
        let full: Mask = (1u64 << self.config.len()).wrapping_sub(1) as Mask;
        Ok(self.rec(full, u.to_vec()))
    }

    fn rec(&mut self, mask: Mask, u: Vec<Rational>) -> Rational {
        let d = self.config.dim();
        let key = (mask, u);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (mask, u) = key;
        let sd = self.sub.get(mask).clone();
        let result = if !sd.spans {
            rational::zero()
        } else {
            let inv = sd.inverse.as_ref().expect("basis is invertible");
            let t = inv.mul_vec(&u);
            if mask_len(mask) == d {
                if t.iter().all(Signed::is_positive) {
                    sd.abs_det.recip()
                } else {
                    rational::zero()
                }
            } else {
                let mut acc = rational::zero();
                for (pos, &xi) in sd.basis.iter().enumerate() {
                    if !t[pos].is_zero() {
                        acc += &t[pos] * self.rec(mask & !(1 << xi), u.clone());
                    }
                }
                acc / rational::int((mask_len(mask) - d) as i64)
            }
        };
        self.memo.insert((mask, u), result.clone());
        result
    }
}

/// A chamber of `cone(X)` with a point strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chamber {
    pub key: ChamberKey,
    pub witness: Vec<Rational>,
}

fn strict_key(normals: &[HyperplaneNormal], v: &[Rational]) -> Option<ChamberKey> {
    let key: Vec<i8> = normals.iter().map(|n| rational::sign(&n.dot(v))).collect();
    if key.contains(&0) {
        None
    } else {
        Some(ChamberKey(key))
    }
}

/// Incrementally maintained row-reduced basis used to pick unisolvent
/// interpolation points.
struct RowSpace {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    fn new() -> Self {
        RowSpace { rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for a in v.iter_mut() {
            *a *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

fn monomial_row(monos: &[Exponents], v: &[Rational]) -> Vec<Rational> {
    monos
        .iter()
        .map(|e| Polynomial::monomial(e.clone(), rational::one()).eval(v))
        .collect()
}

fn interpolate(nvars: usize, monos: &[Exponents], points: &[Vec<Rational>], values: &[Rational]) -> Result<Polynomial> {
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| monomial_row(monos, p)).collect();
    let coeffs = Matrix::from_rows(rows)
        .solve(values)
        .ok_or_else(|| Error::Internal("interpolation system is inconsistent".into()))?;
    let mut p = Polynomial::zero(nvars);
    for (e, c) in monos.iter().zip(coeffs) {
        if !c.is_zero() {
            p.add_term(e.clone(), c);
        }
    }
    Ok(p)
}

/// Chamber pieces `p_Ω` of `T_X`, each computed by two independent routes
/// that must agree.
#[derive(Clone, Debug)]
pub struct MultiSpline {
    config: VectorConfig,
    normals: Vec<HyperplaneNormal>,
    facets: Vec<HyperplaneNormal>,
    counter: PartitionCounter,
    offset: Vec<Rational>,
    offset_values: Vec<(Vec<i64>, Rational)>,
    unimodular: bool,
    cache: HashMap<ChamberKey, Polynomial>,
}

impl MultiSpline {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        let counter = PartitionCounter::new(config)?;
        let offset = crate::geometry::short_affine_regular(config)?;
        let zonotope = Zonotope::new(config)?;
        let mut eval = BoxSplineEvaluator::new(config)?;
        let mut offset_values = Vec::new();
        for mu in zonotope.shifted_points(&offset)? {
            let v: Vec<Rational> = mu
                .iter()
                .zip(&offset)
                .map(|(&a, b)| rational::int(a) + b)
                .collect();
            offset_values.push((mu, eval.eval(&v)?));
        }
        Ok(MultiSpline {
            normals: hyperplane_normals(config)?,
            facets: cone_facets(config)?,
            config: config.clone(),
            counter,
            offset,
            offset_values,
            unimodular: is_totally_unimodular(config),
            cache: HashMap::new(),
        })
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn count(&mut self, u: &[i64]) -> Result<u64> {
        self.counter.count(u)
    }

    /// The chamber whose closure contains `u` and which `u + eps p` enters.
    pub fn chamber_of(&self, u: &[Rational], perturb: &[Rational]) -> Result<Chamber> {
        if !in_cone(&self.facets, u) {
            return Err(Error::OutsideCone);
        }
        let mut best: Option<Rational> = None;
        for n in &self.normals {
            let a = n.dot(u);
            let b = n.dot(perturb);
            if a.is_zero() && b.is_zero() {
                return Err(Error::NotGeneric);
            }
            if !a.is_zero() && !b.is_zero() && a.is_positive() != b.is_positive() {
                let s = (&a / &b).abs();
                best = Some(match best {
                    Some(cur) if cur <= s => cur,
                    _ => s,
                });
            }
        }
        let t = best.map_or_else(rational::one, |s| s / rational::int(2));
        let witness: Vec<Rational> = u.iter().zip(perturb).map(|(a, b)| a + &t * b).collect();
        if !in_cone(&self.facets, &witness) {
            return Err(Error::OutsideCone);
        }
        let key = strict_key(&self.normals, &witness).ok_or(Error::NotGeneric)?;
        Ok(Chamber { key, witness })
    }

    fn margin_ok(&self, key: &ChamberKey, p: &[i64], margin: i64) -> bool {
        self.normals.iter().zip(&key.0).all(|(n, &s)| {
            let v = n.dot_int(p);
            v.signum() == i64::from(s) && v.abs() >= margin
        })
    }

    /// Lattice point `round(k c)` for the chamber witness `c`.
    fn scaled(c: &[Rational], k: i64) -> Vec<i64> {
        c.iter()
            .map(|x| {
                let y = x * rational::int(k);
                rational::floor_i64(&(y + rational::ratio(1, 2)))
            })
            .collect()
    }

    /// Route 1: interpolate the chamber polynomial of `𝒯_X` on a simplex
    /// grid of deep lattice points and keep its top-degree part.
    fn piece_from_counts(&mut self, chamber: &Chamber) -> Result<Polynomial> {
        let d = self.config.dim();
        let m = (self.config.len() - d) as u32;
        // For unimodular X the chamber polynomial already agrees with 𝒯_X on
        // Ω ∩ Λ; otherwise stay deep inside the chamber.
        let margin = if self.unimodular {
            1
        } else {
            (self.config.len() as i64) * self.config.max_abs_entry().max(1)
        };
        let monos: Vec<Exponents> = (0..=m).flat_map(|k| monomials_of_degree(d, k)).collect();
        let grid: Vec<Vec<i64>> = monos
            .iter()
            .map(|e| e.as_slice().iter().map(|&a| i64::from(a)).collect())
            .chain(std::iter::once({
                let mut extra = vec![0i64; d];
                if d > 0 {
                    extra[0] = i64::from(m) + 1;
                }
                extra
            }))
            .collect();
        let mut k = 1i64;
        let base = loop {
            let b = Self::scaled(&chamber.witness, k);
            let ok = grid.iter().all(|g| {
                let p: Vec<i64> = b.iter().zip(g).map(|(x, y)| x + y).collect();
                self.margin_ok(&chamber.key, &p, margin)
            });
            if ok {
                break b;
            }
            k += 1;
            if k > 1 << 20 {
                return Err(Error::Internal("no deep lattice points in chamber".into()));
            }
        };
        let points: Vec<Vec<i64>> = grid
            .iter()
            .map(|g| base.iter().zip(g).map(|(x, y)| x + y).collect())
            .collect();
        let mut values = Vec::new();
        for p in &points {
            values.push(rational::int(self.counter.count(p)? as i64));
        }
        let qpoints: Vec<Vec<Rational>> = points.iter().map(|p| rational::from_ints(p)).collect();
        let n = monos.len();
        let poly = interpolate(d, &monos, &qpoints[..n], &values[..n])?;
        if poly.eval(&qpoints[n]) != values[n] {
            return Err(Error::Internal(
                "partition function is not polynomial on the sampled region".into(),
            ));
        }
        Ok(poly.homogeneous_part(m))
    }

    /// Route 2: `T_X(o + ν) = Σ_μ B_X(o + μ) 𝒯_X(ν - μ)` over `μ ∈ Z(X, o)`,
    /// sampled at points of the chamber near the origin.
    fn piece_from_convolution(&mut self, chamber: &Chamber) -> Result<Polynomial> {
        let d = self.config.dim();
        let m = (self.config.len() - d) as u32;
        let monos = monomials_of_degree(d, m);
        let mut space = RowSpace::new();
        let mut points = Vec::new();
        let mut k = 1i64;
        let mut tried = std::collections::HashSet::new();
        while space.len() < monos.len() {
            let center = Self::scaled(&chamber.witness, k);
            for delta in box_offsets(d, 1) {
                let nu: Vec<i64> = center.iter().zip(&delta).map(|(a, b)| a + b).collect();
                if !tried.insert(nu.clone()) || !self.margin_ok(&chamber.key, &nu, 1) {
                    continue;
                }
                let v: Vec<Rational> = nu
                    .iter()
                    .zip(&self.offset)
                    .map(|(&a, b)| rational::int(a) + b)
                    .collect();
                if space.insert(monomial_row(&monos, &v)) {
                    points.push((nu, v));
                }
            }
            k += 1;
            if k > 1 << 16 {
                return Err(Error::Internal("cannot find unisolvent chamber points".into()));
            }
        }
        let mut values = Vec::new();
        for (nu, _) in &points {
            let mut total = rational::zero();
            for (mu, b) in self.offset_values.clone() {
                let diff: Vec<i64> = nu.iter().zip(&mu).map(|(a, b)| a - b).collect();
                let c = self.counter.count(&diff)?;
                if c != 0 {
                    total += b * rational::int(c as i64);
                }
            }
            values.push(total);
        }
        let vpoints: Vec<Vec<Rational>> = points.into_iter().map(|(_, v)| v).collect();
        interpolate(d, &monos, &vpoints, &values)
    }

    /// `p_Ω`, cached per chamber.
    pub fn piece(&mut self, chamber: &Chamber) -> Result<Polynomial> {
        if let Some(p) = self.cache.get(&chamber.key) {
            return Ok(p.clone());
        }
        let a = self.piece_from_counts(chamber)?;
        let b = self.piece_from_convolution(chamber)?;
        if a != b {
            return Err(Error::Internal(format!(
                "chamber piece routes disagree: {a} vs {b}"
            )));
        }
        self.cache.insert(chamber.key.clone(), a.clone());
        Ok(a)
    }

    /// `p_Ω` for the chamber containing `u` in its closure, entered along
    /// `perturb`.
    pub fn piece_at(&mut self, u: &[Rational], perturb: &[Rational]) -> Result<LocalPiece> {
        let chamber = self.chamber_of(u, perturb)?;
        let poly = self.piece(&chamber)?;
        Ok(LocalPiece {
            key: RegionKey::Chamber(chamber.key),
            poly,
        })
    }
}

/// Points of `{-r..r}^d`, closest to the origin first.
fn box_offsets(d: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &out {
            for v in -r..=r {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort_by_key(|p| (p.iter().map(|x| x.abs()).sum::<i64>(), p.clone()));
    out
}

/// `p_Ω` for a chamber.
pub fn multispline_piece(config: &VectorConfig, chamber: &Chamber) -> Result<LocalPiece> {
    let mut ms = MultiSpline::new(config)?;
    let poly = ms.piece(chamber)?;
    Ok(LocalPiece {
        key: RegionKey::Chamber(chamber.key.clone()),
        poly,
    })
}

/// Interpolation of an alcove piece from exact box-spline values on a
/// simplex grid inside the alcove, with a held-out residual check.
pub fn box_spline_piece_by_interpolation(
    config: &VectorConfig,
    u: &[Rational],
    w: &[Rational],
) -> Result<LocalPiece> {
    let d = config.dim();
    let m = config.len().saturating_sub(d) as u32;
    let arrangement = Arrangement::new(&config.without_loops())?;
    let center = arrangement.sample_toward(u, w)?;
    let key = arrangement.alcove_key(&center);
    let monos: Vec<Exponents> = (0..=m).flat_map(|k| monomials_of_degree(d, k)).collect();
    let held_out: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        rational::ratio(1, 3)
                    } else {
                        rational::ratio(1, 7)
                    }
                })
                .collect()
        })
        .collect();
    let mut radius = rational::ratio(1, 4);
    for _ in 0..40 {
        let pts: Vec<Vec<Rational>> = monos
            .iter()
            .map(|e| {
                (0..d)
                    .map(|i| {
                        let step = Rational::new(e.as_slice()[i].into(), (m.max(1) as i64).into());
                        &center[i] + &radius * step
                    })
                    .collect()
            })
            .chain(held_out.iter().map(|h| {
                (0..d).map(|i| &center[i] + &radius * &h[i]).collect()
            }))
            .collect();
        if pts.iter().all(|p| arrangement.alcove_key(p) == key) {
            let mut eval = BoxSplineEvaluator::new(config)?;
            let mut values = Vec::new();
            for p in &pts {
                values.push(eval.eval(p)?);
            }
            let n = monos.len();
            let poly = interpolate(d, &monos, &pts[..n], &values[..n])?;
            for (p, v) in pts[n..].iter().zip(&values[n..]) {
                if poly.eval(p) != *v {
                    return Err(Error::Internal("held-out residual is nonzero".into()));
                }
            }
            return Ok(LocalPiece {
                key: RegionKey::Alcove(key),
                poly,
            });
        }
        radius /= rational::int(2);
    }
    Err(Error::Internal("could not place an interpolation grid in the alcove".into()))
}
