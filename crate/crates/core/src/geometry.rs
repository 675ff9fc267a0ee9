//! Zonotope lattice points, hyperplane normals, short affine regular
//! vectors, and point-local alcove and chamber keys.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Matrix;
use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::matroid::{enumerate_bases, subsets_of_size, VectorConfig};

/// Primitive integer normal of a hyperplane spanned by columns, with first
/// nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperplaneNormal(pub Vec<i64>);

impl HyperplaneNormal {
    pub fn eta(&self) -> &[i64] {
        &self.0
    }

    pub fn dot_int(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        rational::dot_int(&self.0, v)
    }
}

fn primitive_normal(v: &[Rational]) -> Vec<i64> {
    let den = rational::lcm_of_denominators(v);
    let ints: Vec<i64> = v
        .iter()
        .map(|q| {
            let scaled = q * Rational::from_integer(den.clone());
            i64::try_from(scaled.to_integer()).expect("normal entry fits in i64")
        })
        .collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x)).max(1);
    let sign = ints.iter().find(|&&x| x != 0).map_or(1, |&x| x.signum());
    ints.iter().map(|&x| sign * x / g).collect()
}

fn require_spanning(config: &VectorConfig) -> Result<()> {
    let r = config.rank();
    if r < config.dim() {
        Err(Error::NotSpanning {
            rank: r,
            dim: config.dim(),
        })
    } else {
        Ok(())
    }
}

/// One normal per distinct linear hyperplane spanned by columns, sorted.
pub fn hyperplane_normals(config: &VectorConfig) -> Result<Vec<HyperplaneNormal>> {
    require_spanning(config)?;
    let d = config.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut found = std::collections::BTreeSet::new();
    for s in subsets_of_size(config.len(), d - 1) {
        if config.rank_of(&s) != d - 1 {
            continue;
        }
        let rows: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| rational::from_ints(config.column(i)))
            .collect();
        let ns = if rows.is_empty() {
            vec![(0..d).map(|j| if j == 0 { rational::one() } else { rational::zero() }).collect()]
        } else {
            Matrix::from_rows(rows).nullspace()
        };
        debug_assert_eq!(ns.len(), 1);
        found.insert(HyperplaneNormal(primitive_normal(&ns[0])));
    }
    Ok(found.into_iter().collect())
}

/// Point-local fingerprint of an alcove: per normal, `floor(eta . u)` and
/// whether `eta . u` is an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlcoveKey(pub Vec<(i64, bool)>);

impl AlcoveKey {
    /// True when the point lies on no affine admissible hyperplane.
    pub fn is_generic(&self) -> bool {
        self.0.iter().all(|(_, integral)| !integral)
    }
}

/// Sign of `eta . u` per normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChamberKey(pub Vec<i8>);

/// The affine arrangement of all admissible hyperplanes of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<HyperplaneNormal>,
}

impl Arrangement {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        Ok(Arrangement {
            dim: config.dim(),
            normals: hyperplane_normals(config)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[HyperplaneNormal] {
        &self.normals
    }

    pub fn alcove_key(&self, u: &[Rational]) -> AlcoveKey {
        AlcoveKey(
            self.normals
                .iter()
                .map(|n| {
                    let v = n.dot(u);
                    (rational::floor_i64(&v), rational::is_integral(&v))
                })
                .collect(),
        )
    }

    pub fn is_generic(&self, u: &[Rational]) -> bool {
        self.normals
            .iter()
            .all(|n| !rational::is_integral(&n.dot(u)))
    }

    /// Both points generic and in the same open alcove.
    pub fn same_alcove(&self, u: &[Rational], v: &[Rational]) -> bool {
        let a = self.alcove_key(u);
        a.is_generic() && a == self.alcove_key(v)
    }

    /// Whether `w` avoids every affine admissible hyperplane through the
    /// lattice, i.e. `eta . w` is never an integer.
    pub fn is_affine_regular(&self, w: &[Rational]) -> bool {
        self.is_generic(w)
    }

    /// A step `t > 0` such that `u + s w` stays in one open alcove for all
    /// `0 < s <= t`; that alcove is the one `lim_w` refers to at `u`.
    pub fn step_toward(&self, u: &[Rational], w: &[Rational]) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for n in &self.normals {
            let a = n.dot(u);
            let b = n.dot(w);
            if b.is_zero() {
                if rational::is_integral(&a) {
                    return Err(Error::NotGeneric);
                }
                continue;
            }
            let next = if b.is_positive() {
                Rational::from_integer(a.floor().to_integer() + 1)
            } else {
                Rational::from_integer(a.ceil().to_integer() - 1)
            };
            let dist = ((next - &a) / &b).abs();
            best = Some(match best {
                Some(cur) if cur <= dist => cur,
                _ => dist,
            });
        }
        Ok(best.map_or_else(rational::one, |t| t / rational::int(2)))
    }

    /// Generic point `u + t w` inside the alcove approached from `u`
    /// along `w`.
    pub fn sample_toward(&self, u: &[Rational], w: &[Rational]) -> Result<Vec<Rational>> {
        let t = self.step_toward(u, w)?;
        Ok(u.iter().zip(w).map(|(a, b)| a + &t * b).collect())
    }

    /// Signs of `eta . u`; zero signs are resolved by `perturb` when given.
    pub fn chamber_key(&self, u: &[Rational], perturb: Option<&[Rational]>) -> ChamberKey {
        ChamberKey(
            self.normals
                .iter()
                .map(|n| {
                    let s = rational::sign(&n.dot(u));
                    match (s, perturb) {
                        (0, Some(w)) => rational::sign(&n.dot(w)),
                        _ => s,
                    }
                })
                .collect(),
        )
    }
}

/// The zonotope `Z(X) = X [0,1]^N` with its support data per normal.
#[derive(Clone, Debug)]
pub struct Zonotope {
    config: VectorConfig,
    arrangement: Arrangement,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl Zonotope {
    pub fn new(config: &VectorConfig) -> Result<Self> {
        let arrangement = Arrangement::new(config)?;
        let (lo, hi) = arrangement
            .normals
            .iter()
            .map(|n| {
                config.columns().iter().fold((0, 0), |(lo, hi), c| {
                    let v = n.dot_int(c);
                    (lo + v.min(0), hi + v.max(0))
                })
            })
            .unzip();
        Ok(Zonotope {
            config: config.clone(),
            arrangement,
            lo,
            hi,
        })
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    fn check(&self, values: impl Iterator<Item = Rational>, strict: bool) -> bool {
        values
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (&lo, &hi))| {
                let (lo, hi) = (rational::int(lo), rational::int(hi));
                if strict {
                    lo < v && v < hi
                } else {
                    lo <= v && v <= hi
                }
            })
    }

    /// Closed membership.
    pub fn contains(&self, u: &[Rational]) -> bool {
        self.check(self.arrangement.normals.iter().map(|n| n.dot(u)), false)
    }

    pub fn contains_interior(&self, u: &[Rational]) -> bool {
        self.check(self.arrangement.normals.iter().map(|n| n.dot(u)), true)
    }

    pub fn contains_int(&self, u: &[i64]) -> bool {
        self.arrangement
            .normals
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(n, (&lo, &hi))| (lo..=hi).contains(&n.dot_int(u)))
    }

    pub fn contains_int_interior(&self, u: &[i64]) -> bool {
        self.arrangement
            .normals
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(n, (&lo, &hi))| {
                let v = n.dot_int(u);
                lo < v && v < hi
            })
    }

    /// Per-coordinate integer bounds of `Z(X)`.
    fn is_short_regular(&self, w: &[Rational], volume: u64) -> Result<bool> {
        let arr = &self.arrangement;
        Ok(arr.is_affine_regular(w)
            && arr.normals().iter().all(|n| n.dot(w).abs() < rational::one())
            && self.shifted_points(w)?.len() as u64 == volume)
    }

    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.config.dim())
            .map(|i| {
                self.config.columns().iter().fold((0, 0), |(lo, hi), c| {
                    (lo + c[i].min(0), hi + c[i].max(0))
                })
            })
            .collect()
    }

    fn box_points(&self, extra: i64) -> Vec<Vec<i64>> {
        let bx = self.bounding_box();
        let mut out = vec![Vec::new()];
        for (lo, hi) in bx {
            let mut next = Vec::new();
            for p in &out {
                for v in lo - extra..=hi + extra {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// Lattice points of `Z(X)`, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        self.box_points(0)
            .into_iter()
            .filter(|p| self.contains_int(p))
            .collect()
    }

    /// Interior lattice points `Z_-(X)`, lexicographically sorted.
    pub fn interior_points(&self) -> Vec<Vec<i64>> {
        self.box_points(0)
            .into_iter()
            .filter(|p| self.contains_int_interior(p))
            .collect()
    }

    /// `Z(X, w) = (Z(X) - w) ∩ Z^d` for an affine regular `w`.
    pub fn shifted_points(&self, w: &[Rational]) -> Result<Vec<Vec<i64>>> {
        if w.len() != self.config.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.config.dim(),
                found: w.len(),
            });
        }
        if !self.arrangement.is_affine_regular(w) {
            return Err(Error::NotGeneric);
        }
        Ok(self
            .box_points(1)
            .into_iter()
            .filter(|z| {
                let u: Vec<Rational> = z
                    .iter()
                    .zip(w)
                    .map(|(&a, b)| rational::int(a) + b)
                    .collect();
                self.contains(&u)
            })
            .collect())
    }
}

/// `Z(X)` lattice points and interior lattice points.
pub fn zonotope_points(config: &VectorConfig) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let z = Zonotope::new(config)?;
    Ok((z.lattice_points(), z.interior_points()))
}

/// `Z(X, w)`.
pub fn shifted_points(config: &VectorConfig, w: &[Rational]) -> Result<Vec<Vec<i64>>> {
    Zonotope::new(config)?.shifted_points(w)
}

/// `(s_1 eps^{e_1}, ..., s_d eps^{e_d})`.
fn eps_vector(signs: &[i8], exponents: &[u32], eps: &Rational) -> Vec<Rational> {
    signs
        .iter()
        .zip(exponents)
        .map(|(&s, &e)| {
            let mut v = rational::one();
            for _ in 0..e {
                v *= eps;
            }
            if s < 0 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// `vol Z(X) = Σ_B |det B|`; equals the number of bases when `X` is TU.
pub fn zonotope_volume(config: &VectorConfig) -> Result<u64> {
    Ok(enumerate_bases(config)?
        .iter()
        .map(|b| {
            let cols: Vec<Vec<i64>> = b.indices.iter().map(|&i| config.column(i).to_vec()).collect();
            crate::algebra::linalg::det_int(&cols).unsigned_abs() as u64
        })
        .sum())
}

/// Largest `eps = 1/2^k` making `(s_i eps^{e_i})_i` short and affine regular
/// for `X` and accepted by `accept`. Short means `|Z(X, w)| = vol Z(X)` and
/// `|eta . w| < 1` for every normal.
pub fn short_regular_with(
    config: &VectorConfig,
    signs: &[i8],
    exponents: &[u32],
    accept: impl Fn(&[Rational]) -> bool,
) -> Result<Vec<Rational>> {
    let d = config.dim();
    if signs.len() != d || exponents.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: signs.len().min(exponents.len()),
        });
    }
    let zonotope = Zonotope::new(config)?;
    let volume = zonotope_volume(config)?;
    let mut eps = rational::ratio(1, 2);
    for _ in 0..64 {
        let w = eps_vector(signs, exponents, &eps);
        if zonotope.is_short_regular(&w, volume)? && accept(&w) {
            return Ok(w);
        }
        eps /= rational::int(2);
    }
    Err(Error::Internal(format!("no short affine regular vector found for {config}")))
}

/// Whether `w` is short and affine regular for `X`.
pub fn is_short_regular(config: &VectorConfig, w: &[Rational]) -> Result<bool> {
    let zonotope = Zonotope::new(config)?;
    zonotope.is_short_regular(w, zonotope_volume(config)?)
}

/// `w = (eps, eps^2, ..., eps^d)` for the largest admissible `eps = 1/2^k`.
pub fn short_affine_regular(config: &VectorConfig) -> Result<Vec<Rational>> {
    let d = config.dim();
    let signs = vec![1i8; d];
    let exps: Vec<u32> = (1..=d as u32).collect();
    short_regular_with(config, &signs, &exps, |_| true)
}

/// Sign patterns used to build families of distinct directions.
fn sign_patterns(d: usize) -> Vec<Vec<i8>> {
    let alt = |start: i8| -> Vec<i8> {
        (0..d)
            .map(|i| if i % 2 == 0 { start } else { -start })
            .collect()
    };
    let mut out = vec![vec![1; d], vec![-1; d], alt(1), alt(-1)];
    for i in 0..d {
        let mut s = vec![1i8; d];
        s[i] = -1;
        out.push(s);
    }
    out
}

/// Up to `count` distinct short affine regular vectors in varied directions,
/// each also satisfying `accept`. The first is the standard one whenever it
/// is accepted.
pub fn direction_family(
    config: &VectorConfig,
    count: usize,
    accept: impl Fn(&[Rational]) -> bool,
) -> Result<Vec<Vec<Rational>>> {
    let d = config.dim();
    let forward: Vec<u32> = (1..=d as u32).collect();
    let backward: Vec<u32> = (1..=d as u32).rev().collect();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for exps in [forward.clone(), backward, forward.iter().map(|e| e + 1).collect()] {
        for signs in sign_patterns(d) {
            if out.len() >= count {
                return Ok(out);
            }
            let w = short_regular_with(config, &signs, &exps, &accept)?;
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Normals `eta` with every column on the nonnegative side; `u` lies in
/// `cone(X)` iff `eta . u >= 0` for all of them.
pub fn cone_facets(config: &VectorConfig) -> Result<Vec<HyperplaneNormal>> {
    Ok(hyperplane_normals(config)?
        .into_iter()
        .filter_map(|n| {
            let vals: Vec<i64> = config.columns().iter().map(|c| n.dot_int(c)).collect();
            if vals.iter().all(|&v| v >= 0) {
                Some(n)
            } else if vals.iter().all(|&v| v <= 0) {
                Some(HyperplaneNormal(n.0.iter().map(|x| -x).collect()))
            } else {
                None
            }
        })
        .collect())
}

pub fn in_cone(facets: &[HyperplaneNormal], u: &[Rational]) -> bool {
    facets.iter().all(|n| !n.dot(u).is_negative())
}

/// `chamber_key` with a cone membership check.
pub fn chamber_key(
    config: &VectorConfig,
    u: &[Rational],
    perturb: Option<&[Rational]>,
) -> Result<ChamberKey> {
    let facets = cone_facets(config)?;
    if !in_cone(&facets, u) {
        return Err(Error::OutsideCone);
    }
    Ok(Arrangement::new(config)?.chamber_key(u, perturb))
}

/// `alcove_key` for a single point.
pub fn alcove_key(config: &VectorConfig, u: &[Rational]) -> Result<AlcoveKey> {
    Ok(Arrangement::new(config)?.alcove_key(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use crate::matroid::graphic_config;

    fn three_directions() -> VectorConfig {
        VectorConfig::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap()
    }

    fn pentagon() -> VectorConfig {
        VectorConfig::from_rows(&[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]])
            .unwrap()
    }

    fn k4() -> VectorConfig {
        graphic_config(4, &[(0, 3), (1, 3), (2, 3), (0, 1), (0, 2), (1, 2)])
    }

    fn q(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| ratio(a, b)).collect()
    }

    #[test]
    fn normals_examples() {
        let n: Vec<Vec<i64>> = hyperplane_normals(&three_directions())
            .unwrap()
            .into_iter()
            .map(|n| n.0)
            .collect();
        assert_eq!(n, vec![vec![0, 1], vec![1, -1], vec![1, 0]]);
        let x = VectorConfig::from_rows(&[vec![1, 1]]).unwrap();
        assert_eq!(hyperplane_normals(&x).unwrap(), vec![HyperplaneNormal(vec![1])]);
    }

    #[test]
    fn k4_normals_against_enumeration() {
        let x = k4();
        let normals = hyperplane_normals(&x).unwrap();
        // 7 flats of rank 2 in M(K4): 4 triangles and 3 pairs of disjoint edges
        assert_eq!(normals.len(), 7);
        for n in &normals {
            assert!(x.columns().iter().all(|c| n.dot_int(c).abs() <= 1));
            let on: Vec<usize> = (0..x.len()).filter(|&i| n.dot_int(x.column(i)) == 0).collect();
            assert_eq!(x.rank_of(&on), 2);
        }
    }

    #[test]
    fn zonotope_examples() {
        let (_, interior) = zonotope_points(&three_directions()).unwrap();
        assert_eq!(interior, vec![vec![1, 1]]);
        let (_, interior) = zonotope_points(&pentagon()).unwrap();
        assert_eq!(interior, vec![vec![1, 1, 1], vec![1, 1, 2]]);
        let (_, interior) = zonotope_points(&k4()).unwrap();
        assert_eq!(interior.len(), 6);
        assert!(interior.contains(&vec![1, 1, 0]));
        assert!(interior.contains(&vec![2, 0, -1]));
    }

    #[test]
    fn short_vectors() {
        let x = VectorConfig::from_rows(&[vec![1, 1]]).unwrap();
        let w = short_affine_regular(&x).unwrap();
        assert_eq!(shifted_points(&x, &w).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(shifted_points(&x, &[ratio(1, 4)]).unwrap(), vec![vec![0], vec![1]]);
        let w = short_affine_regular(&three_directions()).unwrap();
        assert_eq!(shifted_points(&three_directions(), &w).unwrap().len(), 3);
        let x = VectorConfig::from_rows(&[vec![1]]).unwrap();
        for w in direction_family(&x, 3, |_| true).unwrap() {
            assert_eq!(shifted_points(&x, &w).unwrap().len(), 1);
        }
        assert!(shifted_points(&three_directions(), &[int(0), ratio(1, 2)]).is_err());
    }

    #[test]
    fn shifted_sets_contain_interior_and_count_bases() {
        for x in [pentagon(), k4(), three_directions()] {
            let z = Zonotope::new(&x).unwrap();
            let nb = enumerate_bases(&x).unwrap().len();
            let interior = z.interior_points();
            let fam = direction_family(&x, 4, |_| true).unwrap();
            assert!(fam.len() >= 3);
            for w in fam {
                let pts = z.shifted_points(&w).unwrap();
                assert_eq!(pts.len(), nb);
                assert!(interior.iter().all(|p| pts.contains(p)));
            }
        }
    }

    /// Brute-force oracle: u ∈ Z(X) iff X λ = u has a solution in [0,1]^N,
    /// checked on vertices of the feasible polytope via basic solutions.
    fn in_zonotope_lp(x: &VectorConfig, u: &[i64]) -> bool {
        let n = x.len();
        let d = x.dim();
        // every vertex of {λ ∈ [0,1]^N : Xλ = u} fixes N-d coordinates at 0 or 1
        for basis in subsets_of_size(n, d) {
            if x.rank_of(&basis) < d {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|i| !basis.contains(i)).collect();
            for mask in 0u32..(1 << others.len()) {
                let mut rhs: Vec<Rational> = u.iter().map(|&v| int(v)).collect();
                for (k, &j) in others.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        for r in 0..d {
                            rhs[r] -= int(x.column(j)[r]);
                        }
                    }
                }
                let cols: Vec<&[i64]> = basis.iter().map(|&i| x.column(i)).collect();
                let m = Matrix::from_int_columns(d, &cols);
                let lam = m.solve(&rhs).unwrap();
                if lam.iter().all(|l| *l >= int(0) && *l <= int(1)) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn membership_matches_lp_oracle() {
        for x in [three_directions(), pentagon(), k4()] {
            let z = Zonotope::new(&x).unwrap();
            for p in z.box_points(1) {
                assert_eq!(z.contains_int(&p), in_zonotope_lp(&x, &p), "{x} at {p:?}");
            }
        }
    }

    #[test]
    fn alcove_examples() {
        let x = VectorConfig::from_rows(&[vec![1, 1]]).unwrap();
        let a = Arrangement::new(&x).unwrap();
        assert_eq!(a.alcove_key(&q(&[(1, 2)])), AlcoveKey(vec![(0, false)]));
        assert!(a.same_alcove(&q(&[(1, 2)]), &q(&[(7, 10)])));
        assert!(!a.same_alcove(&q(&[(1, 2)]), &q(&[(3, 2)])));
        let a = Arrangement::new(&three_directions()).unwrap();
        assert!(!a.same_alcove(&q(&[(1, 2), (1, 4)]), &q(&[(1, 4), (1, 2)])));
    }

    #[test]
    fn sampling_stays_in_alcove() {
        let a = Arrangement::new(&pentagon()).unwrap();
        let w = short_affine_regular(&pentagon()).unwrap();
        let u: Vec<Rational> = [1, 1, 1].iter().map(|&v| int(v)).collect();
        let p = a.sample_toward(&u, &w).unwrap();
        assert!(a.is_generic(&p));
        let t = a.step_toward(&u, &w).unwrap();
        let closer: Vec<Rational> = u.iter().zip(&w).map(|(a, b)| a + &t * b / int(7)).collect();
        assert!(a.same_alcove(&p, &closer));
    }

    #[test]
    fn chamber_examples() {
        let x = three_directions();
        let k1 = chamber_key(&x, &q(&[(3, 1), (2, 1)]), None).unwrap();
        let k2 = chamber_key(&x, &q(&[(2, 1), (3, 1)]), None).unwrap();
        assert_ne!(k1, k2);
        assert_eq!(k1, chamber_key(&x, &q(&[(5, 1), (1, 1)]), None).unwrap());
        let diag = q(&[(2, 1), (2, 1)]);
        let below = chamber_key(&x, &diag, Some(&q(&[(1, 4), (1, 16)]))).unwrap();
        assert_eq!(below, k1);
        assert_eq!(chamber_key(&x, &q(&[(-1, 1), (1, 1)]), None), Err(Error::OutsideCone));
    }
}
