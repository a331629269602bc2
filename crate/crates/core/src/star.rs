//! The noncommutative cosine algebra: the star product
//! `c_{m,n} ⋆ c_{p,q} = t^D c_{m+p,n+q} + t^{-D} c_{m-p,n-q}` with
//! `D = mq - np`, over pluggable coefficient rings — complex numbers at a
//! fixed level, the cyclotomic ring at a fixed level, or formal series in
//! the inverse level — together with the Poisson bracket, the first
//! bidifferential operator and its powers, and the correspondence checks.
//!
//! `c_{p,q}` denotes `2cos 2π(px+qy)`; in particular `c_{0,0}` is the
//! constant 2, which keeps the product rule uniform at the origin. Keys are
//! stored canonically with `p > 0`, or `p = 0` and `q >= 0`.

use crate::cyclotomic::Cyclotomic;
use crate::qgroup::{cosine_operator, ExactOperator};
use num_complex::Complex64 as C64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

/// Exact rational scalar.
pub type Rat = Ratio<i128>;

/// Integer-coefficient term list `((p, q), coefficient)`; the common input
/// of the symbolic checks.
pub type IntTerms = [((i64, i64), i64)];

pub fn rat(numer: i128, denom: i128) -> Rat {
    Rat::new(numer, denom)
}

fn rat_to_f64(x: &Rat) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n
            .trim()
            .parse()
            .map_err(|_| format!("bad rational numerator: {n}"))?;
        let d: i128 = d
            .trim()
            .parse()
            .map_err(|_| format!("bad rational denominator: {d}"))?;
        if d == 0 {
            return Err("rational with zero denominator".into());
        }
        Ok(Rat::new(n, d))
    } else {
        let n: i128 = s.parse().map_err(|_| format!("bad integer: {s}"))?;
        Ok(Rat::from_integer(n))
    }
}

fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A coefficient ring for trigonometric polynomials.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn integer(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Parse one coefficient atom of the text format.
    fn parse_atom(&self, s: &str) -> Result<Self::Elem, String>;
    fn format_coeff(&self, e: &Self::Elem) -> String;
}

/// A coefficient ring that carries the deformation scalar `t^d`.
pub trait StarRing: CoeffRing {
    fn t_power(&self, d: i64) -> Self::Elem;
}

// ---------------------------------------------------------------------------
// cyclotomic coefficients at a fixed level

/// Exact coefficients in `Z[t]` at level `r` (`t = e^{iπ/2r}`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CyclotomicRing {
    pub r: usize,
}

impl CoeffRing for CyclotomicRing {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.r)
    }
    fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.r)
    }
    fn integer(&self, n: i64) -> Cyclotomic {
        Cyclotomic::integer(n, self.r)
    }
    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a + b
    }
    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        a * b
    }
    fn neg(&self, a: &Cyclotomic) -> Cyclotomic {
        -a
    }
    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.is_zero()
    }

    fn parse_atom(&self, s: &str) -> Result<Cyclotomic, String> {
        let s = s.trim();
        if s == "t" {
            return Ok(Cyclotomic::t_pow(1, self.r));
        }
        if let Some(exp) = s.strip_prefix("t^") {
            let e: i64 = exp.parse().map_err(|_| format!("bad exponent in {s}"))?;
            return Ok(Cyclotomic::t_pow(e, self.r));
        }
        if s.contains('/') {
            return Err("cyclotomic mode carries integer coefficients only".into());
        }
        let n: i64 = s.parse().map_err(|_| format!("bad cyclotomic atom: {s}"))?;
        Ok(Cyclotomic::integer(n, self.r))
    }

    fn format_coeff(&self, e: &Cyclotomic) -> String {
        format!("({e})")
    }
}

impl StarRing for CyclotomicRing {
    fn t_power(&self, d: i64) -> Cyclotomic {
        Cyclotomic::t_pow(d, self.r)
    }
}

// ---------------------------------------------------------------------------
// complex coefficients at a fixed level

/// Double-precision coefficients with `t = e^{iπ/N}` at level `N`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ComplexRing {
    pub level: usize,
}

impl CoeffRing for ComplexRing {
    type Elem = C64;

    fn zero(&self) -> C64 {
        C64::new(0.0, 0.0)
    }
    fn one(&self) -> C64 {
        C64::new(1.0, 0.0)
    }
    fn integer(&self, n: i64) -> C64 {
        C64::new(n as f64, 0.0)
    }
    fn add(&self, a: &C64, b: &C64) -> C64 {
        a + b
    }
    fn mul(&self, a: &C64, b: &C64) -> C64 {
        a * b
    }
    fn neg(&self, a: &C64) -> C64 {
        -a
    }
    fn is_zero(&self, a: &C64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }

    fn parse_atom(&self, s: &str) -> Result<C64, String> {
        let s = s.trim();
        if let Some(im) = s.strip_suffix('i') {
            let v: f64 = if im.is_empty() || im == "+" {
                1.0
            } else if im == "-" {
                -1.0
            } else {
                im.parse().map_err(|_| format!("bad imaginary atom: {s}"))?
            };
            return Ok(C64::new(0.0, v));
        }
        if let Ok(v) = s.parse::<f64>() {
            return Ok(C64::new(v, 0.0));
        }
        let r = parse_rat(s)?;
        Ok(C64::new(rat_to_f64(&r), 0.0))
    }

    fn format_coeff(&self, e: &C64) -> String {
        if e.im == 0.0 {
            format!("({})", e.re)
        } else if e.re == 0.0 {
            format!("({}i)", e.im)
        } else if e.im < 0.0 {
            format!("({}{}i)", e.re, e.im)
        } else {
            format!("({}+{}i)", e.re, e.im)
        }
    }
}

impl StarRing for ComplexRing {
    fn t_power(&self, d: i64) -> C64 {
        C64::from_polar(1.0, PI * d as f64 / self.level as f64)
    }
}

// ---------------------------------------------------------------------------
// formal series in the inverse level

/// A truncated formal series `Σ_k a_k (iπ)^k N^{-k}` with exact rational
/// `a_k`; the power of `iπ` at order `k` is carried structurally, never as
/// a float.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSeries {
    coeffs: Vec<Rat>,
}

impl FormalSeries {
    pub fn zero(trunc: usize) -> Self {
        FormalSeries {
            coeffs: vec![Rat::zero(); trunc + 1],
        }
    }

    pub fn constant(c: Rat, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `t^d = exp(iπ d / N)` expanded: order-`k` coefficient `d^k / k!`.
    pub fn t_power(d: i64, trunc: usize) -> Self {
        // factorial denominators overflow i128 past 33!, so the formal mode
        // is capped at order 30
        assert!(
            trunc <= 30,
            "formal truncation order {trunc} exceeds the exact-arithmetic cap 30"
        );
        let mut s = Self::zero(trunc);
        let mut c = Rat::one();
        s.coeffs[0] = c;
        for k in 1..=trunc {
            c *= Rat::new(d as i128, k as i128);
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Rational coefficient of `(iπ)^k N^{-k}`.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).copied().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "formal truncation mismatch");
        FormalSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "formal truncation mismatch");
        let trunc = self.order();
        let mut out = Self::zero(trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > trunc {
                    break;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    fn neg(&self) -> Self {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Numerically resum at level `N`, substituting `iπ/N`.
    pub fn eval(&self, level: usize) -> C64 {
        let x = PI / level as f64;
        let mut acc = C64::new(0.0, 0.0);
        let mut pow = C64::new(1.0, 0.0);
        let step = C64::new(0.0, x);
        for c in &self.coeffs {
            acc += rat_to_f64(c) * pow;
            pow *= step;
        }
        acc
    }
}

/// Formal coefficients truncated at order `trunc`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FormalRing {
    pub trunc: usize,
}

impl CoeffRing for FormalRing {
    type Elem = FormalSeries;

    fn zero(&self) -> FormalSeries {
        FormalSeries::zero(self.trunc)
    }
    fn one(&self) -> FormalSeries {
        FormalSeries::constant(Rat::one(), self.trunc)
    }
    fn integer(&self, n: i64) -> FormalSeries {
        FormalSeries::constant(Rat::from_integer(n as i128), self.trunc)
    }
    fn add(&self, a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
        a.add(b)
    }
    fn mul(&self, a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
        a.mul(b)
    }
    fn neg(&self, a: &FormalSeries) -> FormalSeries {
        a.neg()
    }
    fn is_zero(&self, a: &FormalSeries) -> bool {
        a.is_zero()
    }

    fn parse_atom(&self, s: &str) -> Result<FormalSeries, String> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let mut out = FormalSeries::zero(self.trunc);
            for (k, part) in inner.split(',').enumerate() {
                if k > self.trunc {
                    return Err(format!(
                        "series atom has more than {} orders",
                        self.trunc + 1
                    ));
                }
                out.coeffs[k] = parse_rat(part)?;
            }
            return Ok(out);
        }
        Ok(FormalSeries::constant(parse_rat(s)?, self.trunc))
    }

    fn format_coeff(&self, e: &FormalSeries) -> String {
        let parts: Vec<String> = e.coeffs.iter().map(format_rat).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl StarRing for FormalRing {
    fn t_power(&self, d: i64) -> FormalSeries {
        FormalSeries::t_power(d, self.trunc)
    }
}

// ---------------------------------------------------------------------------
// symbolic (iπ)-graded rational scalars

/// A polynomial in the symbol `iπ` over the rationals; the coefficients of
/// Poisson brackets and bidifferential operators live here.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IPiScalar {
    /// grade (power of `iπ`) -> rational coefficient
    grades: BTreeMap<u32, Rat>,
}

impl IPiScalar {
    pub fn zero() -> Self {
        IPiScalar::default()
    }

    pub fn term(grade: u32, c: Rat) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.grades.insert(grade, c);
        }
        s
    }

    pub fn grade_coeff(&self, grade: u32) -> Rat {
        self.grades.get(&grade).copied().unwrap_or_else(Rat::zero)
    }

    /// `Some(c)` when the scalar is exactly `c (iπ)^grade` (or zero).
    pub fn pure_grade(&self, grade: u32) -> Option<Rat> {
        if self.grades.is_empty() {
            return Some(Rat::zero());
        }
        if self.grades.len() == 1 {
            if let Some(c) = self.grades.get(&grade) {
                return Some(*c);
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.grades.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&g, c) in &other.grades {
            let v = out.grade_coeff(g) + c;
            if v.is_zero() {
                out.grades.remove(&g);
            } else {
                out.grades.insert(g, v);
            }
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&g1, c1) in &self.grades {
            for (&g2, c2) in &other.grades {
                out = out.add(&Self::term(g1 + g2, c1 * c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        IPiScalar {
            grades: self.grades.iter().map(|(&g, c)| (g, -c)).collect(),
        }
    }

    /// Numerical value, substituting `iπ`.
    pub fn eval(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&g, c) in &self.grades {
            acc += rat_to_f64(c) * C64::new(0.0, PI).powu(g);
        }
        acc
    }
}

/// Coefficients that are rational polynomials in the symbol `iπ`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IPiRing;

impl CoeffRing for IPiRing {
    type Elem = IPiScalar;

    fn zero(&self) -> IPiScalar {
        IPiScalar::zero()
    }
    fn one(&self) -> IPiScalar {
        IPiScalar::term(0, Rat::one())
    }
    fn integer(&self, n: i64) -> IPiScalar {
        IPiScalar::term(0, Rat::from_integer(n as i128))
    }
    fn add(&self, a: &IPiScalar, b: &IPiScalar) -> IPiScalar {
        a.add(b)
    }
    fn mul(&self, a: &IPiScalar, b: &IPiScalar) -> IPiScalar {
        a.mul(b)
    }
    fn neg(&self, a: &IPiScalar) -> IPiScalar {
        a.neg()
    }
    fn is_zero(&self, a: &IPiScalar) -> bool {
        a.is_zero()
    }

    fn parse_atom(&self, s: &str) -> Result<IPiScalar, String> {
        let s = s.trim();
        if let Some((c, g)) = s.split_once("ipi^") {
            let c = if c.is_empty() {
                Rat::one()
            } else {
                parse_rat(c.trim_end_matches('*'))?
            };
            let g: u32 = g.parse().map_err(|_| format!("bad ipi grade in {s}"))?;
            return Ok(IPiScalar::term(g, c));
        }
        Ok(IPiScalar::term(0, parse_rat(s)?))
    }

    fn format_coeff(&self, e: &IPiScalar) -> String {
        if e.is_zero() {
            return "(0)".into();
        }
        let parts: Vec<String> = e
            .grades
            .iter()
            .map(|(&g, c)| {
                if g == 0 {
                    format_rat(c)
                } else {
                    format!("{}*ipi^{g}", format_rat(c))
                }
            })
            .collect();
        format!("({})", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// trigonometric polynomials

/// Canonical lattice representative: `p > 0`, or `p = 0` and `q >= 0`.
pub fn canonical_key(p: i64, q: i64) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// A finite combination of the basis observables `c_{p,q} = 2cos 2π(px+qy)`
/// over the ring `R`.
#[derive(Clone, PartialEq, Debug)]
pub struct TrigPoly<R: CoeffRing> {
    ring: R,
    terms: BTreeMap<(i64, i64), R::Elem>,
}

impl<R: CoeffRing> TrigPoly<R> {
    pub fn zero(ring: R) -> Self {
        TrigPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `c_{p,q}`.
    pub fn basis(ring: R, p: i64, q: i64) -> Self {
        let one = ring.one();
        let mut poly = Self::zero(ring);
        poly.add_term(p, q, one);
        poly
    }

    pub fn from_int_terms(ring: R, terms: &IntTerms) -> Self {
        let mut poly = Self::zero(ring);
        for &((p, q), c) in terms {
            let coeff = poly.ring.integer(c);
            poly.add_term(p, q, coeff);
        }
        poly
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Add `coeff · c_{p,q}`, canonicalizing the key (the basis element is
    /// even in `(p,q)`) and pruning exact zeros.
    pub fn add_term(&mut self, p: i64, q: i64, coeff: R::Elem) {
        if self.ring.is_zero(&coeff) {
            return;
        }
        let key = canonical_key(p, q);
        let merged = match self.terms.get(&key) {
            Some(existing) => self.ring.add(existing, &coeff),
            None => coeff,
        };
        if self.ring.is_zero(&merged) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
    }

    pub fn coeff(&self, p: i64, q: i64) -> R::Elem {
        self.terms
            .get(&canonical_key(p, q))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "coefficient ring mismatch");
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.add_term(p, q, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring.clone());
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, self.ring.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone());
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, self.ring.mul(c, s));
        }
        out
    }
}

impl<R: StarRing> TrigPoly<R> {
    /// The star product, extended bilinearly from
    /// `c_{m,n} ⋆ c_{p,q} = t^D c_{m+p,n+q} + t^{-D} c_{m-p,n-q}`,
    /// `D = mq - np` on the stored representatives.
    pub fn star(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "coefficient ring mismatch");
        let mut out = Self::zero(self.ring.clone());
        for (&(m, n), a) in &self.terms {
            for (&(p, q), b) in &other.terms {
                let d = m * q - n * p;
                let ab = self.ring.mul(a, b);
                let plus = self.ring.mul(&ab, &self.ring.t_power(d));
                let minus = self.ring.mul(&ab, &self.ring.t_power(-d));
                out.add_term(m + p, n + q, plus);
                out.add_term(m - p, n - q, minus);
            }
        }
        out
    }
}

impl TrigPoly<ComplexRing> {
    /// Largest coefficient deviation from `other`, for approximate
    /// comparisons in complex mode.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut keys: Vec<(i64, i64)> = self.terms.keys().copied().collect();
        keys.extend(other.terms.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|&(p, q)| (self.coeff(p, q) - other.coeff(p, q)).norm())
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Poisson bracket and bidifferential operators

/// The Poisson bracket `{f,g} = (1/iπ)(f_x g_y - f_y g_x)`, computed exactly
/// on the cosine basis through
/// `{c_{m,n}, c_{p,q}} = 4πi (mq-np) (c_{m+p,n+q} - c_{m-p,n-q})`.
pub fn poisson_bracket(f: &TrigPoly<IPiRing>, g: &TrigPoly<IPiRing>) -> TrigPoly<IPiRing> {
    bracket_like(f, g, |d| {
        IPiScalar::term(1, Rat::from_integer(4 * d as i128))
    })
}

/// The first bidifferential operator of the deformation,
/// `B_1(c_{m,n}, c_{p,q}) = iπ (mq-np) (c_{m+p,n+q} - c_{m-p,n-q})`.
pub fn b1(f: &TrigPoly<IPiRing>, g: &TrigPoly<IPiRing>) -> TrigPoly<IPiRing> {
    bracket_like(f, g, |d| IPiScalar::term(1, Rat::from_integer(d as i128)))
}

fn bracket_like(
    f: &TrigPoly<IPiRing>,
    g: &TrigPoly<IPiRing>,
    scalar: impl Fn(i64) -> IPiScalar,
) -> TrigPoly<IPiRing> {
    let ring = IPiRing;
    let mut out = TrigPoly::zero(ring);
    for (&(m, n), a) in f.terms() {
        for (&(p, q), b) in g.terms() {
            let d = m * q - n * p;
            if d == 0 {
                continue;
            }
            let c = ring.mul(&ring.mul(a, b), &scalar(d));
            out.add_term(m + p, n + q, c.clone());
            out.add_term(m - p, n - q, ring.neg(&c));
        }
    }
    out
}

/// The `k`-th bidifferential operator `B_k = B_1^k / k!`, evaluated on the
/// cosine basis by letting `B_1` act diagonally on exponential components
/// with eigenvalue `iπD`:
/// `B_k(c_{m,n}, c_{p,q}) = (iπ)^k/k! (D^k c_{m+p,n+q} + (-D)^k c_{m-p,n-q})`.
pub fn bk(f: &TrigPoly<IPiRing>, g: &TrigPoly<IPiRing>, k: u32) -> TrigPoly<IPiRing> {
    let ring = IPiRing;
    let mut factorial = Rat::one();
    for i in 1..=k as i128 {
        factorial *= Rat::from_integer(i);
    }
    let mut out = TrigPoly::zero(ring);
    for (&(m, n), a) in f.terms() {
        for (&(p, q), b) in g.terms() {
            let d = m * q - n * p;
            let pow = Rat::from_integer(d as i128).pow(k as i32);
            let base = ring.mul(a, b);
            let plus = ring.mul(&base, &IPiScalar::term(k, pow / factorial));
            let minus_pow = if k.is_multiple_of(2) { pow } else { -pow };
            let minus = ring.mul(&base, &IPiScalar::term(k, minus_pow / factorial));
            out.add_term(m + p, n + q, plus);
            out.add_term(m - p, n - q, minus);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// structural checks

/// `(f ⋆ g) ⋆ h = f ⋆ (g ⋆ h)`, exactly in the coefficient ring.
pub fn check_associativity<R: StarRing>(f: &TrigPoly<R>, g: &TrigPoly<R>, h: &TrigPoly<R>) -> bool {
    f.star(g).star(h) == f.star(&g.star(h))
}

/// Associativity deviation in complex mode (largest coefficient mismatch).
pub fn associativity_deviation(
    f: &TrigPoly<ComplexRing>,
    g: &TrigPoly<ComplexRing>,
    h: &TrigPoly<ComplexRing>,
) -> f64 {
    f.star(g).star(h).max_deviation(&f.star(&g.star(h)))
}

/// The order-`k` rational coefficients of a formal-mode polynomial.
pub fn formal_order_coefficients(
    poly: &TrigPoly<FormalRing>,
    k: usize,
) -> BTreeMap<(i64, i64), Rat> {
    poly.terms()
        .filter_map(|(&key, series)| {
            let c = series.coeff(k);
            (!c.is_zero()).then_some((key, c))
        })
        .collect()
}

/// Outcome of the correspondence-principle check on one pair.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    /// Order-`N^{-1}` coefficient of `f⋆g - g⋆f` equals
    /// `B_1(f,g) - B_1(g,f)`, exactly.
    pub commutator_matches_b1: bool,
    /// Exact per-key ratio of the commutator's first-order term to the
    /// Poisson bracket; `None` when the bracket vanishes.
    pub ratio_to_poisson: Option<Rat>,
}

/// Compare the order-`N^{-1}` star commutator against the antisymmetrized
/// `B_1` (exact equality) and against the Poisson bracket (exact ratio).
pub fn check_correspondence(
    f_terms: &IntTerms,
    g_terms: &IntTerms,
    trunc: usize,
) -> CorrespondenceReport {
    let formal = FormalRing { trunc };
    let f = TrigPoly::from_int_terms(formal, f_terms);
    let g = TrigPoly::from_int_terms(formal, g_terms);
    let commutator = f.star(&g).sub(&g.star(&f));
    let first_order = formal_order_coefficients(&commutator, 1);

    let fi = TrigPoly::from_int_terms(IPiRing, f_terms);
    let gi = TrigPoly::from_int_terms(IPiRing, g_terms);
    let b1_antisym = b1(&fi, &gi).sub(&b1(&gi, &fi));

    // grade-1 part of the B_1 antisymmetrization, as rationals
    let mut b1_map: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
    let mut pure = true;
    for (&key, c) in b1_antisym.terms() {
        match c.pure_grade(1) {
            Some(v) if !v.is_zero() => {
                b1_map.insert(key, v);
            }
            Some(_) => {}
            None => pure = false,
        }
    }
    let commutator_matches_b1 = pure && first_order == b1_map;

    let bracket = poisson_bracket(&fi, &gi);
    let mut ratio: Option<Rat> = None;
    let mut consistent = true;
    for (&key, c) in bracket.terms() {
        let b = c.grade_coeff(1);
        let a = first_order.get(&key).copied().unwrap_or_else(Rat::zero);
        if b.is_zero() {
            consistent &= a.is_zero();
            continue;
        }
        let this = a / b;
        match ratio {
            None => ratio = Some(this),
            Some(prev) => consistent &= prev == this,
        }
    }
    // keys of the commutator not present in the bracket would break the ratio
    for key in first_order.keys() {
        consistent &= bracket.terms().any(|(k, _)| k == key) || first_order[key].is_zero();
    }
    CorrespondenceReport {
        commutator_matches_b1,
        ratio_to_poisson: if consistent { ratio } else { None },
    }
}

/// Check `B_k = B_1^k/k!` against the star expansion: for every `k <= max_k`
/// the order-`N^{-k}` coefficient of `f ⋆ g` must equal `B_k(f,g)`, exactly.
pub fn check_bk_exponential(f_terms: &IntTerms, g_terms: &IntTerms, max_k: usize) -> bool {
    let formal = FormalRing { trunc: max_k };
    let f = TrigPoly::from_int_terms(formal, f_terms);
    let g = TrigPoly::from_int_terms(formal, g_terms);
    let product = f.star(&g);

    let fi = TrigPoly::from_int_terms(IPiRing, f_terms);
    let gi = TrigPoly::from_int_terms(IPiRing, g_terms);

    for k in 0..=max_k {
        let star_k = formal_order_coefficients(&product, k);
        let bk_poly = bk(&fi, &gi, k as u32);
        let mut bk_map: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (&key, c) in bk_poly.terms() {
            match c.pure_grade(k as u32) {
                Some(v) if !v.is_zero() => {
                    bk_map.insert(key, v);
                }
                Some(_) => {}
                None => return false,
            }
        }
        if star_k != bk_map {
            return false;
        }
    }
    true
}

/// The operator image `c_{p,q} -> C(p,q)` of a cyclotomic-mode polynomial;
/// with the star product on one side and operator multiplication on the
/// other this map is an exact algebra homomorphism.
pub fn operator_image(f: &TrigPoly<CyclotomicRing>) -> ExactOperator {
    let r = f.ring().r;
    let mut acc = ExactOperator::zero(r);
    for (&(p, q), c) in f.terms() {
        acc = &acc + &cosine_operator(p, q, r).scale(c);
    }
    acc
}

// ---------------------------------------------------------------------------
// text format

impl<R: CoeffRing> fmt::Display for TrigPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(p, q), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == self.ring.one() {
                write!(f, "c({p},{q})")?;
            } else {
                write!(f, "{}*c({p},{q})", self.ring.format_coeff(c))?;
            }
        }
        Ok(())
    }
}

/// Split `s` on top-level occurrences of `sep` signs, respecting brackets
/// and parentheses, and keeping an exponent's sign glued to its mantissa.
fn split_top_level(s: &str) -> Vec<(i64, String)> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1i64;
    let chars: Vec<char> = s.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let prev = chars[..i].iter().rev().find(|c| !c.is_whitespace());
                if matches!(prev, Some('e' | 'E' | '^' | '*' | ',' | '/')) {
                    // exponent sign or operator continuation
                    cur.push(ch);
                } else if cur.trim().is_empty() {
                    // leading sign of the upcoming term
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    parts.push((sign, cur.trim().to_owned()));
                    cur = String::new();
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        parts.push((sign, cur.trim().to_owned()));
    }
    parts
}

/// Parse the polynomial text format, e.g. `2*c(1,0) + t^3*c(2,-1)` or
/// `(1 - t^2)*c(0,1)`; coefficient atoms are ring-specific.
pub fn parse_poly<R: CoeffRing>(ring: R, input: &str) -> Result<TrigPoly<R>, String> {
    let mut poly = TrigPoly::zero(ring.clone());
    let input = input.trim();
    if input.is_empty() || input == "0" {
        return Ok(poly);
    }
    for (sign, term) in split_top_level(input) {
        let (p, q, coeff) = parse_term(&ring, &term)?;
        let coeff = if sign < 0 { ring.neg(&coeff) } else { coeff };
        poly.add_term(p, q, coeff);
    }
    if poly.is_zero() && !input.contains('c') {
        return Err(format!("no basis terms found in {input:?}"));
    }
    Ok(poly)
}

fn parse_term<R: CoeffRing>(ring: &R, term: &str) -> Result<(i64, i64, R::Elem), String> {
    let term = term.trim();
    let c_pos =
        find_basis_start(term).ok_or_else(|| format!("term {term:?} has no c(p,q) factor"))?;
    let (scalar_part, basis_part) = term.split_at(c_pos);
    let scalar_part = scalar_part.trim().trim_end_matches('*').trim();

    let inner = basis_part
        .trim()
        .strip_prefix("c(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("malformed basis factor in {term:?}"))?;
    let (p_str, q_str) = inner
        .split_once(',')
        .ok_or_else(|| format!("basis factor needs two indices: {basis_part:?}"))?;
    let p: i64 = p_str
        .trim()
        .parse()
        .map_err(|_| format!("bad index {p_str:?}"))?;
    let q: i64 = q_str
        .trim()
        .parse()
        .map_err(|_| format!("bad index {q_str:?}"))?;

    let coeff = if scalar_part.is_empty() {
        ring.one()
    } else {
        parse_scalar(ring, scalar_part)?
    };
    Ok((p, q, coeff))
}

/// Position of the last top-level `c(` factor.
fn find_basis_start(term: &str) -> Option<usize> {
    let bytes = term.as_bytes();
    let mut depth = 0i32;
    let mut found = None;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' | b'[' => {
                if bytes[i] == b'(' && depth == 0 && i >= 1 && bytes[i - 1] == b'c' {
                    let standalone = i < 2 || !bytes[i - 2].is_ascii_alphanumeric();
                    if standalone {
                        found = Some(i - 1);
                    }
                }
                depth += 1;
            }
            b')' | b']' => depth -= 1,
            _ => {}
        }
    }
    found
}

/// A product of factors: parenthesized sums and bare atoms.
fn parse_scalar<R: CoeffRing>(ring: &R, s: &str) -> Result<R::Elem, String> {
    let mut acc = ring.one();
    for factor in split_factors(s)? {
        let value = if let Some(inner) = factor.strip_prefix('(').and_then(|t| t.strip_suffix(')'))
        {
            let mut sum = ring.zero();
            for (sign, part) in split_top_level(inner) {
                let mut v = parse_scalar(ring, &part)?;
                if sign < 0 {
                    v = ring.neg(&v);
                }
                sum = ring.add(&sum, &v);
            }
            sum
        } else {
            ring.parse_atom(&factor)?
        };
        acc = ring.mul(&acc, &value);
    }
    Ok(acc)
}

/// Split on top-level `*`.
fn split_factors(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '*' if depth == 0 => {
                if cur.trim().is_empty() {
                    return Err(format!("dangling '*' in scalar {s:?}"));
                }
                out.push(cur.trim().to_owned());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(format!("empty scalar factor in {s:?}"));
    }
    out.push(cur.trim().to_owned());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(r: usize) -> CyclotomicRing {
        CyclotomicRing { r }
    }

    #[test]
    fn star_basis_products() {
        // c_{1,0} ⋆ c_{0,1} = t c_{1,1} + t⁻¹ c_{1,-1}
        let ring = cyc(5);
        let f = TrigPoly::basis(ring, 1, 0);
        let g = TrigPoly::basis(ring, 0, 1);
        let prod = f.star(&g);
        assert_eq!(prod.coeff(1, 1), Cyclotomic::t_pow(1, 5));
        assert_eq!(prod.coeff(1, -1), Cyclotomic::t_pow(-1, 5));
        assert_eq!(prod.len(), 2);
    }

    #[test]
    fn star_with_constant_doubles() {
        // c_{0,0} is the constant 2, so c_{0,0} ⋆ f = 2f.
        let ring = cyc(4);
        let f = TrigPoly::from_int_terms(ring, &[((1, 0), 3), ((2, -1), 1)]);
        let c00 = TrigPoly::basis(ring, 0, 0);
        assert_eq!(c00.star(&f), f.scale(&Cyclotomic::integer(2, 4)));
        assert_eq!(f.star(&c00), f.scale(&Cyclotomic::integer(2, 4)));
    }

    #[test]
    fn star_square_is_classical_product_to_sum() {
        // D = 0 for equal keys: c_{1,0}² = c_{2,0} + c_{0,0}
        let ring = cyc(6);
        let f = TrigPoly::basis(ring, 1, 0);
        let sq = f.star(&f);
        assert_eq!(sq.coeff(2, 0), Cyclotomic::one(6));
        assert_eq!(sq.coeff(0, 0), Cyclotomic::one(6));
        assert_eq!(sq.len(), 2);
    }

    #[test]
    fn star_is_representative_independent() {
        // building from flipped representatives gives the same product
        let ring = cyc(5);
        let mut f1 = TrigPoly::zero(ring);
        f1.add_term(1, -2, Cyclotomic::integer(3, 5));
        let mut f2 = TrigPoly::zero(ring);
        f2.add_term(-1, 2, Cyclotomic::integer(3, 5));
        assert_eq!(f1, f2);
        let g = TrigPoly::from_int_terms(ring, &[((0, 1), 1), ((2, 1), -2)]);
        assert_eq!(f1.star(&g), f2.star(&g));
    }

    #[test]
    fn star_commutative_on_collinear_supports() {
        let ring = cyc(5);
        let f = TrigPoly::from_int_terms(ring, &[((1, 2), 2), ((2, 4), -1)]);
        let g = TrigPoly::from_int_terms(ring, &[((3, 6), 5), ((1, 2), 7)]);
        assert_eq!(f.star(&g), g.star(&f));
    }

    #[test]
    fn complex_mode_associativity_within_tolerance() {
        let ring = ComplexRing { level: 10 };
        let f = TrigPoly::from_int_terms(ring, &[((1, 0), 2), ((2, -1), 1)]);
        let g = TrigPoly::from_int_terms(ring, &[((0, 1), 3), ((1, 1), -2)]);
        let h = TrigPoly::from_int_terms(ring, &[((1, 2), 1), ((3, 0), 1)]);
        assert!(associativity_deviation(&f, &g, &h) < 1e-10);
    }

    #[test]
    fn cyclotomic_associativity_examples() {
        let ring = cyc(5);
        let f = TrigPoly::basis(ring, 1, 0);
        let g = TrigPoly::basis(ring, 0, 1);
        let h = TrigPoly::basis(ring, 1, 1);
        assert!(check_associativity(&f, &g, &h));

        let c00 = TrigPoly::basis(ring, 0, 0);
        assert!(check_associativity(&f, &c00, &h));
    }

    #[test]
    fn formal_t_power_has_exponential_coefficients() {
        let s = FormalSeries::t_power(3, 5);
        assert_eq!(s.coeff(0), Rat::one());
        assert_eq!(s.coeff(1), rat(3, 1));
        assert_eq!(s.coeff(2), rat(9, 2));
        assert_eq!(s.coeff(3), rat(27, 6));
        // numeric resummation approaches e^{3iπ/N}
        let v = FormalSeries::t_power(3, 30).eval(20);
        let expected = C64::from_polar(1.0, 3.0 * PI / 20.0);
        assert!((v - expected).norm() < 1e-12);
    }

    #[test]
    fn poisson_bracket_closed_form() {
        // {c_{1,0}, c_{0,1}} = 4πi (c_{1,1} - c_{1,-1})
        let f = TrigPoly::basis(IPiRing, 1, 0);
        let g = TrigPoly::basis(IPiRing, 0, 1);
        let br = poisson_bracket(&f, &g);
        assert_eq!(br.coeff(1, 1), IPiScalar::term(1, rat(4, 1)));
        assert_eq!(br.coeff(1, -1), IPiScalar::term(1, rat(-4, 1)));
        // antisymmetry and centrality of constants
        assert!(poisson_bracket(&f, &f).is_zero());
        let c00 = TrigPoly::basis(IPiRing, 0, 0);
        assert!(poisson_bracket(&c00, &g).is_zero());
    }

    #[test]
    fn poisson_bracket_matches_pointwise_derivatives() {
        // numeric spot check of the closed form: evaluate
        // (1/iπ)(f_x g_y - f_y g_x) directly at sample points
        let eval_poly = |poly: &TrigPoly<IPiRing>, x: f64, y: f64| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for (&(p, q), c) in poly.terms() {
                acc += c.eval() * 2.0 * (2.0 * PI * (p as f64 * x + q as f64 * y)).cos();
            }
            acc
        };
        let pairs: [(&IntTerms, &IntTerms); 3] = [
            (&[((1, 0), 1)], &[((0, 1), 1)]),
            (&[((2, 1), 3), ((1, -1), 2)], &[((1, 2), 1)]),
            (&[((3, -2), 1)], &[((2, 3), 5), ((0, 1), -4)]),
        ];
        for (ft, gt) in pairs {
            let f = TrigPoly::from_int_terms(IPiRing, ft);
            let g = TrigPoly::from_int_terms(IPiRing, gt);
            let br = poisson_bracket(&f, &g);
            for i in 0..25 {
                let x = 0.077 * i as f64 + 0.013;
                let y = 0.031 * i as f64 + 0.4;
                // f_x = Σ c · (-4π p) sin(2π(px+qy)), etc.
                let deriv = |terms: &IntTerms, wrt_x: bool| -> f64 {
                    terms
                        .iter()
                        .map(|&((p, q), c)| {
                            let w = if wrt_x { p } else { q };
                            -(c as f64)
                                * 4.0
                                * PI
                                * w as f64
                                * (2.0 * PI * (p as f64 * x + q as f64 * y)).sin()
                        })
                        .sum()
                };
                let lhs = C64::new(0.0, -1.0 / PI)
                    * (deriv(ft, true) * deriv(gt, false) - deriv(ft, false) * deriv(gt, true));
                let rhs = eval_poly(&br, x, y);
                assert!((lhs - rhs).norm() < 1e-9, "mismatch at ({x},{y})");
            }
        }
    }

    #[test]
    fn b1_antisymmetrization_is_half_poisson() {
        let f = TrigPoly::from_int_terms(IPiRing, &[((1, 0), 1), ((2, 1), 2)]);
        let g = TrigPoly::from_int_terms(IPiRing, &[((0, 1), 1), ((1, 1), -3)]);
        let anti = b1(&f, &g).sub(&b1(&g, &f));
        let half_bracket = poisson_bracket(&f, &g).scale(&IPiScalar::term(0, rat(1, 2)));
        assert_eq!(anti, half_bracket);
    }

    #[test]
    fn b1_vanishes_on_constants() {
        let c00 = TrigPoly::basis(IPiRing, 0, 0);
        let g = TrigPoly::from_int_terms(IPiRing, &[((1, 2), 5)]);
        assert!(b1(&c00, &g).is_zero());
    }

    #[test]
    fn correspondence_on_basis_pair() {
        let report = check_correspondence(&[((1, 0), 1)], &[((0, 1), 1)], 4);
        assert!(report.commutator_matches_b1);
        assert_eq!(report.ratio_to_poisson, Some(rat(1, 2)));

        // f against itself: zero commutator, no defined ratio but matching B_1
        let trivial = check_correspondence(&[((1, 2), 3)], &[((1, 2), 3)], 4);
        assert!(trivial.commutator_matches_b1);
        assert_eq!(trivial.ratio_to_poisson, None);
    }

    #[test]
    fn bk_matches_star_orders() {
        // second order on the standard pair: (iπ)²/2 (c_{1,1} + c_{1,-1})
        let formal = FormalRing { trunc: 6 };
        let f = TrigPoly::basis(formal, 1, 0);
        let g = TrigPoly::basis(formal, 0, 1);
        let prod = f.star(&g);
        let second = formal_order_coefficients(&prod, 2);
        assert_eq!(second.get(&(1, 1)), Some(&rat(1, 2)));
        assert_eq!(second.get(&(1, -1)), Some(&rat(1, 2)));

        assert!(check_bk_exponential(&[((1, 0), 1)], &[((0, 1), 1)], 6));
        assert!(check_bk_exponential(
            &[((2, 1), 2), ((1, 0), -1)],
            &[((1, 3), 1)],
            6
        ));
    }

    #[test]
    fn fixed_level_formal_matches_cyclotomic() {
        // resumming the formal product at N = 2r matches the exact product
        // evaluated at t
        let r = 10usize;
        let level = 2 * r;
        let terms_f: &[((i64, i64), i64)] = &[((1, 0), 2), ((0, 1), -1)];
        let terms_g: &[((i64, i64), i64)] = &[((1, 1), 1), ((2, -1), 3)];
        let formal = FormalRing { trunc: 30 };
        let ff = TrigPoly::from_int_terms(formal, terms_f);
        let fg = TrigPoly::from_int_terms(formal, terms_g);
        let formal_prod = ff.star(&fg);

        let ring = cyc(r);
        let cf = TrigPoly::from_int_terms(ring, terms_f);
        let cg = TrigPoly::from_int_terms(ring, terms_g);
        let exact_prod = cf.star(&cg);

        for (&(p, q), series) in formal_prod.terms() {
            let resummed = series.eval(level);
            let exact = exact_prod.coeff(p, q).to_complex();
            assert!(
                (resummed - exact).norm() < 1e-10,
                "key ({p},{q}): {resummed} vs {exact}"
            );
        }
        assert_eq!(formal_prod.len(), exact_prod.len());
    }

    #[test]
    fn operator_image_is_algebra_map() {
        let ring = cyc(5);
        let f = TrigPoly::from_int_terms(ring, &[((1, 0), 1), ((1, 1), 2)]);
        let g = TrigPoly::from_int_terms(ring, &[((0, 1), 3)]);
        let lhs = operator_image(&f.star(&g));
        let rhs = &operator_image(&f) * &operator_image(&g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_display_round_trip_cyclotomic() {
        let ring = cyc(5);
        let poly = parse_poly(ring, "2*c(1,0) + t^3*c(2,-1)").unwrap();
        assert_eq!(poly.coeff(1, 0), Cyclotomic::integer(2, 5));
        assert_eq!(poly.coeff(2, -1), Cyclotomic::t_pow(3, 5));
        let back = parse_poly(ring, &poly.to_string()).unwrap();
        assert_eq!(back, poly);

        let tricky = parse_poly(ring, "(1 - 2*t^3)*c(0,1) - c(1,1) + c(-1,2)").unwrap();
        let reparsed = parse_poly(ring, &tricky.to_string()).unwrap();
        assert_eq!(reparsed, tricky);
        // c(-1,2) canonicalizes onto c(1,-2)
        assert_eq!(tricky.coeff(1, -2), Cyclotomic::one(5));
    }

    #[test]
    fn parse_display_round_trip_complex() {
        let ring = ComplexRing { level: 10 };
        let poly = parse_poly(ring, "(1.5-0.25i)*c(1,0) + 2e-3*c(0,2) + i*c(3,1)").unwrap();
        assert_eq!(poly.coeff(1, 0), C64::new(1.5, -0.25));
        assert_eq!(poly.coeff(0, 2), C64::new(2e-3, 0.0));
        assert_eq!(poly.coeff(3, 1), C64::new(0.0, 1.0));
        let back = parse_poly(ring, &poly.to_string()).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn parse_display_round_trip_formal() {
        let ring = FormalRing { trunc: 3 };
        let poly = parse_poly(ring, "[1, 1/2, 0, -2/3]*c(1,0) + 3*c(0,1)").unwrap();
        let back = parse_poly(ring, &poly.to_string()).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let ring = cyc(5);
        assert!(parse_poly(ring, "c(1)").is_err());
        assert!(parse_poly(ring, "2*").is_err());
        assert!(parse_poly(ring, "x*c(1,0)").is_err());
        assert!(
            parse_poly(ring, "1/2*c(1,0)").is_err(),
            "cyclotomic mode has no halves"
        );
    }

    fn arb_terms() -> impl Strategy<Value = Vec<((i64, i64), i64)>> {
        proptest::collection::vec(((-4i64..=4, -4i64..=4), -5i64..=5), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn star_associative_formal(f in arb_terms(), g in arb_terms(), h in arb_terms()) {
            let ring = FormalRing { trunc: 8 };
            let f = TrigPoly::from_int_terms(ring, &f);
            let g = TrigPoly::from_int_terms(ring, &g);
            let h = TrigPoly::from_int_terms(ring, &h);
            prop_assert!(check_associativity(&f, &g, &h));
        }

        #[test]
        fn star_associative_cyclotomic(f in arb_terms(), g in arb_terms(), h in arb_terms(), r in 3usize..=8) {
            let ring = cyc(r);
            let f = TrigPoly::from_int_terms(ring, &f);
            let g = TrigPoly::from_int_terms(ring, &g);
            let h = TrigPoly::from_int_terms(ring, &h);
            prop_assert!(check_associativity(&f, &g, &h));
        }

        #[test]
        fn star_ignores_representative_choice(
            f in arb_terms(), g in arb_terms(), flips in proptest::collection::vec(any::<bool>(), 8), r in 3usize..=8,
        ) {
            // feeding pre-canonical (sign-flipped) keys must not change
            // the product
            let ring = cyc(r);
            let canonical_f = TrigPoly::from_int_terms(ring, &f);
            let mut flipped_f = TrigPoly::zero(ring);
            for (i, &((p, q), c)) in f.iter().enumerate() {
                let s = if flips[i % flips.len()] { -1 } else { 1 };
                flipped_f.add_term(s * p, s * q, Cyclotomic::integer(c, r));
            }
            prop_assert_eq!(&canonical_f, &flipped_f);
            let g = TrigPoly::from_int_terms(ring, &g);
            prop_assert_eq!(canonical_f.star(&g), flipped_f.star(&g));
        }

        #[test]
        fn display_parse_round_trip(f in arb_terms(), r in 3usize..=8) {
            let ring = cyc(r);
            let poly = TrigPoly::from_int_terms(ring, &f);
            let back = parse_poly(ring, &poly.to_string()).unwrap();
            prop_assert_eq!(back, poly);
        }
    }
}
