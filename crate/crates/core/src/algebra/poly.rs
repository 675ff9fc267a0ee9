//! Sparse multivariate polynomials over exact rationals.
//!
//! The same type serves both sides of the differential pairing: operator
//! polynomials in `s_1..s_d` and function polynomials in `t_1..t_d`. Which
//! side a value lives on is a matter of use, not of type.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial. Ordered graded-lexicographically with
/// `s_1 < s_2 < ... < s_d`: total degree first, then the exponent of the
/// highest variable decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponents(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other - self` if `self` divides `other`.
    fn divides(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| b.checked_sub(*a))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    /// Product of factorials of the entries.
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * rational::factorial(e))
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// ascending term order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Exponents> {
    fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Exponents>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(Exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Exponents(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out.sort();
    out
}

/// Polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Exponents::zero(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponents::unit(nvars, i), rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exps.nvars());
        p.add_term(exps, c);
        p
    }

    /// The linear form `sum_i coeffs[i] * s_i`.
    pub fn linear_form(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.add_term(Exponents::unit(n, i), rational::int(c));
            }
        }
        p
    }

    pub fn linear_form_q(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Exponents::unit(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Exponents(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponents::degree)
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        debug_assert_eq!(e.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate(&self, cap: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponents::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn mul_truncated(&self, other: &Polynomial, cap: Option<u32>) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if let Some(cap) = cap {
                    if ea.degree() + eb.degree() > cap {
                        continue;
                    }
                }
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        let mut acc = rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_int(&self, point: &[i64]) -> Rational {
        self.eval(&rational::from_ints(point))
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[var] -= 1;
            out.add_term(ne, c * BigInt::from(k));
        }
        out
    }

    /// `p(u + shift)` as a polynomial in `u`.
    pub fn translate(&self, shift: &[Rational]) -> Polynomial {
        assert_eq!(shift.len(), self.nvars, "shift dimension");
        let mut cur = self.clone();
        for (var, a) in shift.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut next = Polynomial::zero(self.nvars);
            for (e, c) in &cur.terms {
                let k = e.0[var];
                // (u + a)^k = sum_j binom(k, j) a^(k-j) u^j
                let mut apow = rational::one();
                let mut binom = BigInt::one();
                let mut pieces = Vec::with_capacity(k as usize + 1);
                for j in (0..=k).rev() {
                    pieces.push((j, Rational::from_integer(binom.clone()) * &apow));
                    apow *= a;
                    binom = binom * BigInt::from(j) / BigInt::from(k - j + 1);
                }
                for (j, factor) in pieces {
                    let mut ne = e.clone();
                    ne.0[var] = j;
                    next.add_term(ne, c * factor);
                }
            }
            cur = next;
        }
        cur
    }

    /// Linear change of variables: `s_i` is replaced by the `i`-th entry of
    /// `images`, each a polynomial in the target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "substitution arity");
        let target = images.first().map_or(0, Polynomial::nvars);
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut m = Polynomial::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e.as_slice()) {
                if k > 0 {
                    m = &m * &img.pow(k);
                }
            }
            out = &out + &m;
        }
        out
    }

    /// Renders with variables named `{var}1, {var}2, ...`, highest term first.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("{var}{}", v + 1)
                    } else {
                        format!("{var}{}^{k}", v + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&rational::format(&mag));
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", rational::format(&mag), mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("s"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_truncated(rhs, None)
    }
}

/// Power series known exactly up to total degree `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    poly: Polynomial,
    cap: u32,
}

impl GradedSeries {
    pub fn new(poly: &Polynomial, cap: u32) -> Self {
        GradedSeries {
            poly: poly.truncate(cap),
            cap,
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let cap = self.cap.min(other.cap);
        GradedSeries {
            poly: self.poly.mul_truncated(&other.poly, Some(cap)),
            cap,
        }
    }
}

/// Lets `p` act on `f` as a constant-coefficient differential operator,
/// `s_i` acting as `d/dt_i`.
pub fn diff_apply(p: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    if p.nvars != f.nvars {
        return Err(Error::DimensionMismatch {
            expected: f.nvars,
            found: p.nvars,
        });
    }
    let mut out = Polynomial::zero(f.nvars);
    for (ea, ca) in &p.terms {
        for (eb, cb) in &f.terms {
            if let Some(rest) = ea.divides(eb) {
                // d^a t^b = b!/(b-a)! t^(b-a)
                let falling = eb.factorial() / rest.factorial();
                out.add_term(rest, ca * cb * falling);
            }
        }
    }
    Ok(out)
}

/// Differential pairing `(p(D) f)(0)`.
pub fn pairing(p: &GradedSeries, f: &Polynomial) -> Result<Rational> {
    if p.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: p.nvars(),
        });
    }
    if let Some(deg) = f.degree() {
        if deg > p.cap {
            return Err(Error::CapTooSmall {
                cap: p.cap as usize,
                needed: deg as usize,
            });
        }
    }
    let mut acc = rational::zero();
    for (e, c) in &f.terms {
        if let Some(pc) = p.poly.terms.get(e) {
            acc += pc * c * e.factorial();
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::monomial(Exponents::new(e.to_vec()), int(1))
    }

    /// Symbolic differentiation oracle: repeated single-variable derivatives.
    fn diff_by_derivatives(p: &Polynomial, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (e, c) in p.terms() {
            let mut g = f.clone();
            for (v, &k) in e.as_slice().iter().enumerate() {
                for _ in 0..k {
                    g = g.derivative(v);
                }
            }
            out = &out + &g.scale(c);
        }
        out
    }

    #[test]
    fn second_derivative_of_cube() {
        let r = diff_apply(&mono(&[2]), &mono(&[3])).unwrap();
        assert_eq!(r, Polynomial::var(1, 0).scale(&int(6)));
    }

    #[test]
    fn identity_operator() {
        let f = &mono(&[2, 1]) + &Polynomial::constant(2, ratio(3, 4));
        assert_eq!(diff_apply(&Polynomial::one(2), &f).unwrap(), f);
    }

    #[test]
    fn mixed_partial() {
        let r = diff_apply(&mono(&[1, 1]), &mono(&[2, 2])).unwrap();
        let expected = diff_by_derivatives(&mono(&[1, 1]), &mono(&[2, 2]));
        assert_eq!(r, expected);
        assert_eq!(r, mono(&[1, 1]).scale(&int(4)));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(diff_apply(&mono(&[1]), &mono(&[1, 0])).is_err());
    }

    #[test]
    fn pairing_examples() {
        let s1sq = GradedSeries::new(&mono(&[2, 0]), 2);
        assert_eq!(pairing(&s1sq, &mono(&[2, 0])).unwrap(), int(2));
        let one = GradedSeries::new(&Polynomial::one(2), 0);
        assert_eq!(pairing(&one, &Polynomial::one(2)).unwrap(), int(1));
        let s1 = GradedSeries::new(&mono(&[1, 0]), 1);
        assert_eq!(pairing(&s1, &mono(&[0, 1])).unwrap(), int(0));
        assert!(matches!(
            pairing(&s1, &mono(&[2, 0])),
            Err(Error::CapTooSmall { .. })
        ));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 4).len(), 35);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert!(monomials_of_degree(0, 1).is_empty());
        let m = monomials_of_degree(2, 2);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn translate_matches_evaluation() {
        let p = &(&mono(&[2, 1]) + &mono(&[0, 3])) - &Polynomial::var(2, 0);
        let shift = vec![ratio(1, 2), int(-3)];
        let q = p.translate(&shift);
        let pt = vec![ratio(5, 7), ratio(-2, 3)];
        let moved: Vec<_> = pt.iter().zip(&shift).map(|(a, b)| a + b).collect();
        assert_eq!(q.eval(&pt), p.eval(&moved));
    }

    #[test]
    fn display_is_highest_term_first() {
        let p = &Polynomial::one(1) + &Polynomial::var(1, 0).scale(&ratio(-1, 2));
        assert_eq!(p.to_string(), "-1/2*s1 + 1");
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), -3i64..4, 1i64..4),
            0..4,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(nvars, ts.into_iter().map(|(e, n, d)| (e, ratio(n, d))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn pairing_is_biorthogonal(a in prop::collection::vec(0u32..4, 3),
                                   b in prop::collection::vec(0u32..4, 3)) {
            let ea = Exponents::new(a.clone());
            let eb = Exponents::new(b.clone());
            let cap = ea.degree().max(eb.degree());
            let v = pairing(&GradedSeries::new(&mono(&a), cap), &mono(&b)).unwrap();
            if a == b {
                prop_assert_eq!(v, Rational::from_integer(ea.factorial()));
            } else {
                prop_assert!(v.is_zero());
            }
        }

        #[test]
        fn operator_product_composes(p in small_poly(2), q in small_poly(2), f in small_poly(2)) {
            let lhs = diff_apply(&(&p * &q), &f).unwrap();
            let rhs = diff_apply(&p, &diff_apply(&q, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn diff_apply_matches_derivative_oracle(p in small_poly(3), f in small_poly(3)) {
            prop_assert_eq!(diff_apply(&p, &f).unwrap(), diff_by_derivatives(&p, &f));
        }
    }
}
