//! Named verification suites. Each check returns a [`CheckReport`]; failures
//! carry exact expected and actual values together with the point, the
//! direction and a context string that pins down the failing case.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::{diff_apply, monomials_of_degree, Polynomial};
use crate::algebra::rational::{self, Rational};
use crate::algebra::todd::todd_series;
use crate::error::{Error, Result};
use crate::geometry::{
    cone_facets, direction_family, hyperplane_normals, in_cone, is_short_regular, Zonotope,
};
use crate::matroid::{contract, enumerate_bases, is_totally_unimodular, Contraction, VectorConfig};
use crate::pspace::{
    central_space, dspace, duality_matrix, internal_space, q_basis, top_degree, GradedSubspace,
};
use crate::splines::{is_pointed, MultiSpline, PieceTable};
use crate::toddcalc::ToddCalculator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Which sub-case failed, e.g. `z=[1,1] x=2`.
    pub context: String,
    pub point: Vec<i64>,
    pub direction: Option<Vec<String>>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub fingerprint: String,
    pub status: Status,
    /// Number of exact comparisons made.
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Suite names accepted by [`Verifier::run_suite`].
pub const SUITES: [&str; 8] = [
    "main-theorem",
    "boundary",
    "kp",
    "partition-unity",
    "residue-1d",
    "delcon",
    "dims",
    "continuity",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Deep random points per configuration in the KP suite.
    pub kp_points: usize,
    /// Number of directions `w` used by the main-theorem and continuity suites.
    pub directions: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0x5eed,
            kp_points: 20,
            directions: 3,
        }
    }
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

fn fmt_point(v: &[i64]) -> String {
    format!("{v:?}").replace(' ', "")
}

/// Accumulates comparisons and keeps the first failure.
struct Tally {
    checked: u64,
    failure: Option<Counterexample>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failure: None,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) -> bool {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(cex());
        }
        ok
    }

    fn eq_rational(
        &mut self,
        context: impl FnOnce() -> String,
        point: &[i64],
        direction: Option<&[Rational]>,
        expected: &Rational,
        actual: &Rational,
    ) -> bool {
        self.check(expected == actual, || Counterexample {
            context: context(),
            point: point.to_vec(),
            direction: direction.map(fmt_vec),
            expected: rational::format(expected),
            actual: rational::format(actual),
        })
    }

    fn eq_poly(&mut self, context: impl FnOnce() -> String, point: &[i64], expected: &Polynomial, actual: &Polynomial) -> bool {
        self.check(expected == actual, || Counterexample {
            context: context(),
            point: point.to_vec(),
            direction: None,
            expected: expected.to_string(),
            actual: actual.to_string(),
        })
    }

    fn truth(&mut self, ok: bool, context: impl FnOnce() -> String, expected: &str, actual: impl FnOnce() -> String) -> bool {
        self.check(ok, || Counterexample {
            context: context(),
            point: Vec::new(),
            direction: None,
            expected: expected.to_string(),
            actual: actual(),
        })
    }
}

fn finish(name: &str, fingerprint: String, seed: Option<u64>, outcome: Result<()>, mut tally: Tally) -> CheckReport {
    let (status, counterexample) = match (outcome, tally.failure.take()) {
        (_, Some(cex)) => (Status::Fail, Some(cex)),
        (Ok(()), None) => (Status::Pass, None),
        (Err(e), None) if is_precondition(&e) => {
            tally.notes.push(format!("skipped: {e}"));
            (Status::Skipped, None)
        }
        (Err(e), None) => (
            Status::Fail,
            Some(Counterexample {
                context: "computation".into(),
                point: Vec::new(),
                direction: None,
                expected: "no error".into(),
                actual: e.to_string(),
            }),
        ),
    };
    CheckReport {
        name: name.to_string(),
        fingerprint,
        status,
        checked: tally.checked,
        seed,
        notes: tally.notes,
        counterexample,
    }
}

fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::NotSpanning { .. }
            | Error::NotTotallyUnimodular
            | Error::NotPointed
            | Error::OutsideCone
            | Error::NotGeneric
            | Error::Precondition(_)
            | Error::DimensionMismatch { .. }
    )
}

/// Runs the suites for one configuration, sharing `f_z`, piece tables and
/// chamber pieces between checks.
pub struct Verifier {
    config: VectorConfig,
    fingerprint: String,
    options: VerifyOptions,
    calc: Option<ToddCalculator>,
    zonotope: Option<Zonotope>,
    internal: Option<GradedSubspace>,
    tables: BTreeMap<Vec<Rational>, PieceTable>,
    multispline: Option<MultiSpline>,
    directions: Option<Vec<Vec<Rational>>>,
}

impl Verifier {
    pub fn new(config: &VectorConfig, options: VerifyOptions) -> Self {
        Verifier {
            config: config.clone(),
            fingerprint: config.fingerprint(),
            options,
            calc: None,
            zonotope: None,
            internal: None,
            tables: BTreeMap::new(),
            multispline: None,
            directions: None,
        }
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    fn run(&mut self, name: &str, seed: Option<u64>, body: impl FnOnce(&mut Self, &mut Tally) -> Result<()>) -> CheckReport {
        let mut tally = Tally::new();
        let outcome = body(self, &mut tally);
        finish(name, self.fingerprint.clone(), seed, outcome, tally)
    }

    fn require_tu(&self) -> Result<()> {
        if !self.config.spans() {
            return Err(Error::NotSpanning {
                rank: self.config.rank(),
                dim: self.config.dim(),
            });
        }
        if !is_totally_unimodular(&self.config) {
            return Err(Error::NotTotallyUnimodular);
        }
        Ok(())
    }

    fn calc(&mut self) -> Result<&mut ToddCalculator> {
        if self.calc.is_none() {
            self.calc = Some(ToddCalculator::new(&self.config)?);
        }
        Ok(self.calc.as_mut().expect("initialized"))
    }

    fn f_z(&mut self, z: &[i64]) -> Result<Polynomial> {
        self.calc()?.f_z(z)
    }

    fn zonotope(&mut self) -> Result<&Zonotope> {
        if self.zonotope.is_none() {
            self.zonotope = Some(Zonotope::new(&self.config)?);
        }
        Ok(self.zonotope.as_ref().expect("initialized"))
    }

    fn internal(&mut self) -> Result<&GradedSubspace> {
        if self.internal.is_none() {
            self.internal = Some(internal_space(&self.config)?);
        }
        Ok(self.internal.as_ref().expect("initialized"))
    }

    fn table(&mut self, w: &[Rational]) -> Result<&mut PieceTable> {
        if !self.tables.contains_key(w) {
            let t = PieceTable::new(&self.config, w)?;
            self.tables.insert(w.to_vec(), t);
        }
        Ok(self.tables.get_mut(w).expect("inserted"))
    }

    fn lim(&mut self, f: &Polynomial, u: &[i64], w: &[Rational]) -> Result<Rational> {
        self.table(w)?.lim_diff_int(f, u)
    }

    /// The default family of short affine regular directions.
    pub fn directions(&mut self) -> Result<Vec<Vec<Rational>>> {
        if self.directions.is_none() {
            let fam = direction_family(&self.config, self.options.directions.max(1), |_| true)?;
            self.directions = Some(fam);
        }
        Ok(self.directions.clone().expect("initialized"))
    }

    fn lattice_points(&mut self) -> Result<Vec<Vec<i64>>> {
        Ok(self.zonotope()?.lattice_points())
    }

    fn interior_points(&mut self) -> Result<Vec<Vec<i64>>> {
        Ok(self.zonotope()?.interior_points())
    }

    fn main_theorem_into(&mut self, t: &mut Tally, z: &[i64], directions: &[Vec<Rational>]) -> Result<()> {
        self.require_tu()?;
        if !self.zonotope()?.contains_int_interior(z) {
            return Err(Error::Precondition(format!("{} is not an interior lattice point", fmt_point(z))));
        }
        let f = self.f_z(z)?;
        let internal = self.internal()?.contains(&f);
        t.truth(internal, || format!("f_{} in P_-(X)", fmt_point(z)), "member", || f.to_string());
        let points = self.lattice_points()?;
        for w in directions {
            for u in &points {
                let value = self.lim(&f, u, w)?;
                let expected = if u.as_slice() == z { rational::one() } else { rational::zero() };
                t.eq_rational(|| format!("z={}", fmt_point(z)), u, Some(w), &expected, &value);
            }
        }
        Ok(())
    }

    /// `f_z(D) B_X = δ_z` on `Z(X) ∩ Λ` for every `w` in `directions`, and
    /// `f_z ∈ P_-(X)`.
    pub fn check_main_theorem(&mut self, z: &[i64], directions: &[Vec<Rational>]) -> CheckReport {
        let z = z.to_vec();
        let dirs = directions.to_vec();
        self.run("main-theorem", None, |v, t| v.main_theorem_into(t, &z, &dirs))
    }

    /// The main theorem for every interior lattice point.
    pub fn main_theorem_suite(&mut self) -> CheckReport {
        self.run("main-theorem", None, |v, t| {
            v.require_tu()?;
            let dirs = v.directions()?;
            if dirs.len() < v.options.directions {
                t.notes.push(format!("only {} distinct directions found", dirs.len()));
            }
            for z in v.interior_points()? {
                v.main_theorem_into(t, &z, &dirs)?;
            }
            Ok(())
        })
    }

    /// `lim_w f_z(D) B_X = lim_w todd(X, z)(D) B_X = δ_z` on `Λ` for every
    /// `z ∈ Z(X, w)`.
    pub fn boundary_suite(&mut self) -> CheckReport {
        self.run("boundary", None, |v, t| {
            v.require_tu()?;
            let cap = top_degree(&v.config);
            let points = v.lattice_points()?;
            for w in v.directions()? {
                let shifted = v.zonotope()?.shifted_points(&w)?;
                // Z(X) ∩ Λ together with Z(X, w) covers every point where
                // lim_w can be nonzero.
                let window: BTreeSet<Vec<i64>> = points.iter().chain(&shifted).cloned().collect();
                for z in &shifted {
                    let f = v.f_z(z)?;
                    let todd = todd_series(&v.config, z, cap)?.poly().clone();
                    for u in &window {
                        let expected = if u == z { rational::one() } else { rational::zero() };
                        let a = v.lim(&f, u, &w)?;
                        t.eq_rational(|| format!("f_z, z={}", fmt_point(z)), u, Some(&w), &expected, &a);
                        let b = v.lim(&todd, u, &w)?;
                        t.eq_rational(|| format!("todd(X,z), z={}", fmt_point(z)), u, Some(&w), &expected, &b);
                    }
                }
            }
            Ok(())
        })
    }

    fn multispline(&mut self) -> Result<&mut MultiSpline> {
        if self.multispline.is_none() {
            self.multispline = Some(MultiSpline::new(&self.config)?);
        }
        Ok(self.multispline.as_mut().expect("initialized"))
    }

    fn kp_into(&mut self, t: &mut Tally, z: &[i64], u: &[i64], perturb: &[Rational]) -> Result<()> {
        let d = self.config.dim();
        if z.len() != d || u.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if z.len() != d { z.len() } else { u.len() },
            });
        }
        if !self.zonotope()?.contains_int(z) {
            return Err(Error::Precondition(format!("{} is not in Z(X)", fmt_point(z))));
        }
        let uq = rational::from_ints(u);
        let piece = self.multispline()?.piece_at(&uq, perturb)?.poly;
        let diff: Vec<i64> = u.iter().zip(z).map(|(a, b)| a - b).collect();
        let count = rational::int(self.multispline()?.count(&diff)? as i64);
        let f = self.f_z(z)?;
        let via_f = diff_apply(&f, &piece)?.eval(&uq);
        let cap = top_degree(&self.config);
        let todd = todd_series(&self.config, z, cap)?.poly().clone();
        let via_todd = diff_apply(&todd, &piece)?.eval(&uq);
        let context = |what: &str| format!("{what}, z={} u={}", fmt_point(z), fmt_point(u));
        t.eq_rational(|| context("f_z(D) p_Ω(u)"), u, Some(perturb), &count, &via_f);
        t.eq_rational(|| context("todd(X,z)(D) p_Ω(u)"), u, Some(perturb), &count, &via_todd);
        Ok(())
    }

    /// `𝒯_X(u − z) = todd(X, z)(D) p_Ω(u)`, with `Ω` entered from `u` along
    /// the short affine regular direction.
    pub fn check_kp(&mut self, z: &[i64], u: &[i64]) -> CheckReport {
        let z = z.to_vec();
        let u = u.to_vec();
        self.run("kp", None, |v, t| {
            let w = v.directions()?.remove(0);
            t.notes.push(format!("perturbation direction {:?}", fmt_vec(&w)));
            v.kp_into(t, &z, &u, &w)
        })
    }

    /// Lattice points `u` of the cone with `|eta . u| > Σ_i |eta . x_i|` for
    /// every normal, so that `u − Z(X)` lies in one open chamber. Sampled
    /// from a box of radius `3 N max|x|`, doubled while too few exist.
    pub fn deep_points(&mut self, count: usize) -> Result<Vec<Vec<i64>>> {
        if !is_pointed(&self.config) {
            return Err(Error::NotPointed);
        }
        let normals = hyperplane_normals(&self.config)?;
        let facets = cone_facets(&self.config)?;
        let margins: Vec<i64> = normals
            .iter()
            .map(|n| self.config.columns().iter().map(|c| n.dot_int(c).abs()).sum())
            .collect();
        let deep = |u: &[i64]| -> bool {
            in_cone(&facets, &rational::from_ints(u))
                && normals.iter().zip(&margins).all(|(n, &m)| n.dot_int(u).abs() > m)
        };
        let d = self.config.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        let mut radius = 3 * self.config.len() as i64 * self.config.max_abs_entry().max(1);
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        for _ in 0..8 {
            for _ in 0..20_000 {
                if found.len() >= count {
                    break;
                }
                let u: Vec<i64> = (0..d).map(|_| rng.gen_range(-radius..=radius)).collect();
                if deep(&u) {
                    found.insert(u);
                }
            }
            if found.len() >= count {
                break;
            }
            radius *= 2;
        }
        if found.len() < count {
            return Err(Error::Internal(format!("only {} deep points found", found.len())));
        }
        Ok(found.into_iter().collect())
    }

    /// KP identity at seeded deep random points for every `z ∈ Z(X) ∩ Λ`.
    pub fn kp_suite(&mut self) -> CheckReport {
        let seed = self.options.seed;
        self.run("kp", Some(seed), |v, t| {
            let count = v.options.kp_points;
            let points = v.deep_points(count)?;
            let w = v.directions()?.remove(0);
            let zs = v.lattice_points()?;
            for u in &points {
                for z in &zs {
                    v.kp_into(t, z, u, &w)?;
                }
            }
            Ok(())
        })
    }

    /// `Σ_{z ∈ Z_-(X)} B_X(z) f_z = 1`.
    pub fn check_partition_unity(&mut self) -> CheckReport {
        self.run("partition-unity", None, |v, t| {
            v.require_tu()?;
            if let Some(i) = (0..v.config.len()).find(|&i| v.config.is_coloop(i)) {
                return Err(Error::Precondition(format!("column {i} is a coloop")));
            }
            let w = v.directions()?.remove(0);
            let one = Polynomial::one(v.config.dim());
            let mut sum = Polynomial::zero(v.config.dim());
            for z in v.interior_points()? {
                let b = v.lim(&one, &z, &w)?;
                sum = &sum + &v.f_z(&z)?.scale(&b);
            }
            t.eq_poly(|| "Σ B_X(z) f_z".into(), &[], &one, &sum);
            Ok(())
        })
    }

    /// Dimension identities: `dim P(X) = #bases = |Z(X, w)|`,
    /// `dim P_-(X) = |Z_-(X)|`, `dim D(X) = dim P(X)` with a nonsingular
    /// pairing between `P(X)` and `D(X)`.
    pub fn check_dims(&mut self) -> CheckReport {
        self.run("dims", None, |v, t| {
            v.require_tu()?;
            let nbases = enumerate_bases(&v.config)?.len();
            let central = central_space(&v.config)?.dimension();
            let internal = v.internal()?.dimension();
            let interior = v.interior_points()?.len();
            t.truth(central == nbases, || "dim P(X) = #bases".into(), &nbases.to_string(), || central.to_string());
            t.truth(internal == interior, || "dim P_-(X) = |Z_-(X)|".into(), &interior.to_string(), || internal.to_string());
            for w in v.directions()? {
                let shifted = v.zonotope()?.shifted_points(&w)?.len();
                t.check(shifted == nbases, || Counterexample {
                    context: "|Z(X,w)| = #bases".into(),
                    point: Vec::new(),
                    direction: Some(fmt_vec(&w)),
                    expected: nbases.to_string(),
                    actual: shifted.to_string(),
                });
            }
            let dd = dspace(&v.config).dimension();
            t.truth(dd == nbases, || "dim D(X) = #bases".into(), &nbases.to_string(), || dd.to_string());
            let m = duality_matrix(&v.config)?;
            let ok = m.rows() == m.cols() && m.rows() == nbases && m.inverse().is_some();
            t.truth(ok, || "P(X) x D(X) pairing".into(), "nonsingular", || format!("{}x{} rank {}", m.rows(), m.cols(), m.rank()));
            Ok(())
        })
    }

    /// Interior `f_z` have direction-independent limits at every lattice
    /// point; every boundary `z ∈ Z(X, w)` has a lattice point where two
    /// directions disagree.
    pub fn check_continuity(&mut self) -> CheckReport {
        self.run("continuity", None, |v, t| {
            v.require_tu()?;
            let dirs = v.directions()?;
            if dirs.len() < 2 {
                return Err(Error::Precondition("fewer than two directions".into()));
            }
            let points = v.lattice_points()?;
            let interior: BTreeSet<Vec<i64>> = v.interior_points()?.into_iter().collect();
            for z in &interior {
                let f = v.f_z(z)?;
                for u in &points {
                    let reference = v.lim(&f, u, &dirs[0])?;
                    for w in &dirs[1..] {
                        let other = v.lim(&f, u, w)?;
                        t.eq_rational(|| format!("interior z={}", fmt_point(z)), u, Some(w), &reference, &other);
                    }
                }
            }
            let mut boundary: BTreeSet<Vec<i64>> = BTreeSet::new();
            for w in &dirs {
                for z in v.zonotope()?.shifted_points(w)? {
                    if !interior.contains(&z) {
                        boundary.insert(z);
                    }
                }
            }
            for z in &boundary {
                let f = v.f_z(z)?;
                let mut jump = false;
                'search: for u in &points {
                    let reference = v.lim(&f, u, &dirs[0])?;
                    for w in &dirs[1..] {
                        if v.lim(&f, u, w)? != reference {
                            jump = true;
                            break 'search;
                        }
                    }
                }
                t.truth(jump, || format!("boundary z={}", fmt_point(z)), "direction-dependent limit", || "all limits agree".into());
            }
            if boundary.is_empty() {
                t.notes.push("no boundary points in the sampled Z(X, w)".into());
            }
            Ok(())
        })
    }

    fn contractions(&self) -> Result<Vec<(usize, Contraction)>> {
        (0..self.config.len())
            .filter(|&i| !self.config.is_loop(i) && !self.config.is_coloop(i))
            .map(|i| Ok((i, contract(&self.config, i)?)))
            .collect()
    }

    /// Deletion-contraction identities for every column.
    pub fn check_delcon(&mut self) -> CheckReport {
        self.run("delcon", None, |v, t| {
            v.require_tu()?;
            let config = v.config.clone();
            let d = config.dim();
            let cap = top_degree(&config);
            let contractions = v.contractions()?;
            let accept = |w: &[Rational]| -> bool {
                contractions.iter().all(|(i, c)| {
                    is_short_regular(&config.delete(*i), w).unwrap_or(false)
                        && is_short_regular(c.config(), &c.project_rational(w)).unwrap_or(false)
                })
            };
            let w = direction_family(&config, 1, accept)?.remove(0);
            t.notes.push(format!("direction {:?}", fmt_vec(&w)));
            let zx = v.zonotope()?.shifted_points(&w)?;
            let monos: Vec<Polynomial> = (0..=cap + 1)
                .flat_map(|k| monomials_of_degree(d, k))
                .map(|e| Polynomial::monomial(e, rational::one()))
                .collect();
            let nbases = enumerate_bases(&config)?.len();

            for i in 0..config.len() {
                if config.is_loop(i) || config.is_coloop(i) {
                    continue;
                }
                let x = config.column(i).to_vec();
                let xp = Polynomial::linear_form(&x);
                let del = config.delete(i);
                let mut del_calc = ToddCalculator::new(&del)?;
                let ctx = |what: &str| format!("{what}, x={i}");

                // x ψ_{X∖x}(f) = ψ_X(x f)
                for f in &monos {
                    let lhs = &xp * &del_calc.projection().project(f)?;
                    let rhs = v.calc()?.projection().project(&(&xp * f))?;
                    t.eq_poly(|| ctx(&format!("x psi_(X-x)({f}) = psi_X(x {f})")), &[], &rhs, &lhs);
                }

                // x f_z^{X∖x} = f_z^X − f_{z+x}^X on Z(X, w) ∪ (Z(X, w) − x)
                let window: BTreeSet<Vec<i64>> = zx
                    .iter()
                    .flat_map(|z| [z.clone(), z.iter().zip(&x).map(|(a, b)| a - b).collect()])
                    .collect();
                for z in &window {
                    let lhs = &xp * &del_calc.f_z(z)?;
                    let zx_shift: Vec<i64> = z.iter().zip(&x).map(|(a, b)| a + b).collect();
                    let rhs = &v.f_z(z)? - &v.f_z(&zx_shift)?;
                    t.eq_poly(|| ctx("x f_z^(X-x) = f_z - f_(z+x)"), z, &rhs, &lhs);
                }

                let (_, con) = contractions.iter().find(|(j, _)| *j == i).expect("contracted");
                let quotient = con.config().clone();
                let mut con_calc = ToddCalculator::new(&quotient)?;

                // π_x(f_z^X) = f_{z̄}^{X/x}
                for z in &window {
                    let lhs = con.project_poly(&v.f_z(z)?);
                    let rhs = con_calc.f_z(&con.project_point(z))?;
                    t.eq_poly(|| ctx("pi_x(f_z) = f_zbar"), z, &rhs, &lhs);
                }

                // #bases(X) = #bases(X∖x) + #bases(X/x)
                let nd = enumerate_bases(&del)?.len();
                let nc = enumerate_bases(&quotient)?.len();
                t.truth(nbases == nd + nc, || ctx("#bases deletion-contraction"), &nbases.to_string(), || format!("{nd} + {nc}"));

                // z ↦ z̄ is a bijection Z(X, w) ∖ Z(X∖x, w) → Z(X/x, w̄)
                let wbar = con.project_rational(&w);
                let zdel: BTreeSet<Vec<i64>> = Zonotope::new(&del)?.shifted_points(&w)?.into_iter().collect();
                let zcon: BTreeSet<Vec<i64>> = Zonotope::new(&quotient)?.shifted_points(&wbar)?.into_iter().collect();
                let rest: Vec<&Vec<i64>> = zx.iter().filter(|z| !zdel.contains(*z)).collect();
                let images: BTreeSet<Vec<i64>> = rest.iter().map(|z| con.project_point(z)).collect();
                let ok = zdel.iter().all(|z| zx.contains(z)) && images.len() == rest.len() && images == zcon;
                t.truth(ok, || ctx("Z(X,w) - Z(X-x,w) -> Z(X/x,wbar) bijection"), &format!("{} points", zcon.len()), || {
                    format!("{} images of {} points", images.len(), rest.len())
                });

                // γ_X^w(x p) = ∇_x γ_{X∖x}^w(p) for p in the Q_B basis of P(X∖x)
                let mut del_table = PieceTable::new(&del, &w)?;
                let del_window: BTreeSet<Vec<i64>> = zdel
                    .iter()
                    .flat_map(|z| [z.clone(), z.iter().zip(&x).map(|(a, b)| a + b).collect()])
                    .chain(zx.iter().cloned())
                    .collect();
                for (_, p) in q_basis(&del)? {
                    let xp_p = &xp * &p;
                    for z in &del_window {
                        let lhs = v.lim(&xp_p, z, &w)?;
                        let back: Vec<i64> = z.iter().zip(&x).map(|(a, b)| a - b).collect();
                        let rhs = del_table.lim_diff_int(&p, z)? - del_table.lim_diff_int(&p, &back)?;
                        t.eq_rational(|| ctx(&format!("gamma(x {p}) = nabla gamma({p})")), z, Some(&w), &rhs, &lhs);
                    }
                }

                // γ_{X/x}^{w̄}(π_x p) = Σ_x γ_X^w(p) for p in the Q_B basis of P(X)
                let mut con_table = PieceTable::new(&quotient, &wbar)?;
                let con_window: BTreeSet<Vec<i64>> = Zonotope::new(&quotient)?
                    .lattice_points()
                    .into_iter()
                    .chain(zcon.iter().cloned())
                    .chain(zx.iter().map(|z| con.project_point(z)))
                    .collect();
                for (_, p) in q_basis(&config)? {
                    let mut sums: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
                    for z in &zx {
                        let val = v.lim(&p, z, &w)?;
                        *sums.entry(con.project_point(z)).or_insert_with(rational::zero) += val;
                    }
                    let pp = con.project_poly(&p);
                    for zbar in &con_window {
                        let lhs = con_table.lim_diff_int(&pp, zbar)?;
                        let rhs = sums.get(zbar).cloned().unwrap_or_else(rational::zero);
                        t.eq_rational(|| ctx(&format!("gamma(pi_x {p}) = Sigma gamma({p})")), zbar, Some(&wbar), &rhs, &lhs);
                    }
                }
            }
            Ok(())
        })
    }

    /// Runs one named suite.
    pub fn run_suite(&mut self, name: &str) -> Result<CheckReport> {
        Ok(match name {
            "main-theorem" => self.main_theorem_suite(),
            "boundary" => self.boundary_suite(),
            "kp" => self.kp_suite(),
            "partition-unity" => self.check_partition_unity(),
            "residue-1d" => {
                let (a, b) = residue_params(&self.config)
                    .ok_or_else(|| Error::Precondition("residue-1d needs a 1 x N matrix with entries ±1".into()))?;
                check_residue_1d(a, b)
            }
            "delcon" => self.check_delcon(),
            "dims" => self.check_dims(),
            "continuity" => self.check_continuity(),
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }

    /// Runs every suite that applies, in [`SUITES`] order.
    pub fn run_all(&mut self) -> Vec<CheckReport> {
        SUITES
            .iter()
            .filter_map(|s| self.run_suite(s).ok())
            .collect()
    }
}

/// `(a, b)` when `X` is a row of `a` entries `-1` and `b` entries `+1`.
pub fn residue_params(config: &VectorConfig) -> Option<(usize, usize)> {
    if config.dim() != 1 {
        return None;
    }
    let a = config.columns().iter().filter(|c| c[0] == -1).count();
    let b = config.columns().iter().filter(|c| c[0] == 1).count();
    (a >= 1 && b >= 1 && a + b == config.len()).then_some((a, b))
}

/// For `X` with `a` entries `-1` and `b` entries `+1` and `N = a + b - 1`:
/// the coefficient of `s^N` in `todd(X, z)` vanishes for every interior `z`,
/// `f_z` is the truncation at degree `N`, `P(X) = R[s]_{<=N}` and
/// `P_-(X) = R[s]_{<=N-1}`.
pub fn check_residue_1d(a: usize, b: usize) -> CheckReport {
    let mut row = vec![-1i64; a];
    row.extend(std::iter::repeat_n(1, b));
    let fingerprint = format!("a={a} b={b}");
    let mut tally = Tally::new();
    let outcome = (|| -> Result<()> {
        if a == 0 || b == 0 {
            return Err(Error::Precondition("a and b must be positive".into()));
        }
        let config = VectorConfig::from_rows(&[row])?;
        let n = (a + b - 1) as u32;
        let mut calc = ToddCalculator::new(&config)?;
        for z in -(a as i64) + 1..=b as i64 - 1 {
            let series = todd_series(&config, &[z], n)?;
            let c = series.poly().coeff(&crate::algebra::poly::Exponents::new(vec![n]));
            tally.eq_rational(|| format!("c_N, z={z}"), &[z], None, &rational::zero(), &c);
            let f = calc.f_z(&[z])?;
            tally.eq_poly(|| format!("f_z = truncation, z={z}"), &[z], &series.poly().truncate(n), &f);
        }
        let trimmed = |mut v: Vec<usize>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let central = trimmed(central_space(&config)?.dims());
        let internal = trimmed(internal_space(&config)?.dims());
        let full = vec![1usize; n as usize + 1];
        tally.truth(central == full, || "dims of P(X)".into(), &format!("{full:?}"), || format!("{central:?}"));
        let minus = vec![1usize; n as usize];
        tally.truth(internal == minus, || "dims of P_-(X)".into(), &format!("{minus:?}"), || format!("{internal:?}"));
        Ok(())
    })();
    finish("residue-1d", fingerprint, None, outcome, tally)
}

pub fn check_main_theorem(config: &VectorConfig, z: &[i64], directions: &[Vec<Rational>]) -> CheckReport {
    Verifier::new(config, VerifyOptions::default()).check_main_theorem(z, directions)
}

pub fn check_kp(config: &VectorConfig, z: &[i64], u: &[i64]) -> CheckReport {
    Verifier::new(config, VerifyOptions::default()).check_kp(z, u)
}

pub fn check_partition_unity(config: &VectorConfig) -> CheckReport {
    Verifier::new(config, VerifyOptions::default()).check_partition_unity()
}

pub fn check_delcon(config: &VectorConfig) -> CheckReport {
    Verifier::new(config, VerifyOptions::default()).check_delcon()
}

pub fn check_dims(config: &VectorConfig) -> CheckReport {
    Verifier::new(config, VerifyOptions::default()).check_dims()
}

pub fn check_continuity(config: &VectorConfig) -> CheckReport {
    Verifier::new(config, VerifyOptions::default()).check_continuity()
}
