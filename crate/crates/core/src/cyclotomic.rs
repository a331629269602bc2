//! Exact arithmetic in `Z[t]` where `t = e^{iπ/2r}` is a primitive `4r`-th
//! root of unity.
//!
//! Elements are integer polynomials in `t` reduced to canonical form of
//! degree `< 2r` using `t^{2r} = -1` (equivalently, arithmetic in
//! `Z[x]/(x^{2r}+1)` evaluated at `x = t`). Structural equality of canonical
//! representatives is used as ring equality throughout; every certified
//! identity is additionally spot-checked through [`Cyclotomic::to_complex`].

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Smallest admissible level; the quantization is defined for `r >= 3`.
pub const MIN_LEVEL: usize = 3;

/// An element of `Z[t]`, `t = e^{iπ/2r}`, in canonical degree-`< 2r` form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CyclotomicRepr")]
pub struct Cyclotomic {
    r: usize,
    /// `coeffs[i]` multiplies `t^i`; always exactly `2r` entries.
    coeffs: Vec<i64>,
}

/// Wire form `{"r": .., "coeffs": [..; 2r]}`; deserialization checks the
/// canonical length.
#[derive(Deserialize)]
struct CyclotomicRepr {
    r: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<CyclotomicRepr> for Cyclotomic {
    type Error = String;
    fn try_from(repr: CyclotomicRepr) -> Result<Self, String> {
        if repr.r < MIN_LEVEL {
            return Err(format!(
                "level r = {} is below the minimum {MIN_LEVEL}",
                repr.r
            ));
        }
        if repr.coeffs.len() != 2 * repr.r {
            return Err(format!(
                "coefficient list has {} entries, expected {}",
                repr.coeffs.len(),
                2 * repr.r
            ));
        }
        Ok(Cyclotomic {
            r: repr.r,
            coeffs: repr.coeffs,
        })
    }
}

fn check_level(r: usize) {
    assert!(
        r >= MIN_LEVEL,
        "level r = {r} is below the minimum {MIN_LEVEL}"
    );
}

impl Cyclotomic {
    pub fn zero(r: usize) -> Self {
        check_level(r);
        Cyclotomic {
            r,
            coeffs: vec![0; 2 * r],
        }
    }

    pub fn one(r: usize) -> Self {
        Self::integer(1, r)
    }

    /// The integer `n` as a ring element.
    pub fn integer(n: i64, r: usize) -> Self {
        let mut el = Self::zero(r);
        el.coeffs[0] = n;
        el
    }

    /// Canonical representative of `t^e` for any integer exponent `e`,
    /// using `t^{2r} = -1` and `t^{4r} = 1`.
    pub fn t_pow(e: i64, r: usize) -> Self {
        check_level(r);
        let period = 4 * r as i64;
        let mut e = e.rem_euclid(period) as usize;
        let mut sign = 1i64;
        if e >= 2 * r {
            e -= 2 * r;
            sign = -1;
        }
        let mut el = Self::zero(r);
        el.coeffs[e] = sign;
        el
    }

    /// The quantized integer `[n] = (t^{2n} - t^{-2n}) / (t^2 - t^{-2})` in
    /// expanded Laurent form `t^{2(n-1)} + t^{2(n-3)} + ... + t^{-2(n-1)}`,
    /// so that no division is ever performed. `[0] = 0` and `[-n] = -[n]`.
    pub fn quantum_integer(n: i64, r: usize) -> Self {
        check_level(r);
        let mut acc = Self::zero(r);
        let m = n.unsigned_abs() as i64;
        for i in 0..m {
            acc = &acc + &Self::t_pow(2 * (m - 1 - 2 * i), r);
        }
        if n < 0 {
            acc = -&acc;
        }
        acc
    }

    pub fn level(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Complex conjugation, induced by `t -> t^{-1}`.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.r);
        out.coeffs[0] = self.coeffs[0];
        // t^{-i} = -t^{2r-i} for 0 < i < 2r.
        for i in 1..2 * self.r {
            out.coeffs[2 * self.r - i] -= self.coeffs[i];
        }
        out
    }

    /// Evaluate at `t = e^{iπ/2r}` in double precision.
    pub fn to_complex(&self) -> C64 {
        let step = PI / (2.0 * self.r as f64);
        let mut acc = C64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc += c as f64 * C64::from_polar(1.0, step * i as f64);
            }
        }
        acc
    }

    fn assert_same_level(&self, other: &Self) {
        assert!(
            self.r == other.r,
            "cyclotomic level mismatch: {} vs {}",
            self.r,
            other.r
        );
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_level(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic { r: self.r, coeffs }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_level(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic { r: self.r, coeffs }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            r: self.r,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.assert_same_level(rhs);
        let n = 2 * self.r;
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = i + j;
                if k < n {
                    out[k] += a * b;
                } else {
                    out[k - n] -= a * b; // t^{2r} = -1
                }
            }
        }
        Cyclotomic {
            r: self.r,
            coeffs: out,
        }
    }
}

impl Mul<i64> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: i64) -> Cyclotomic {
        Cyclotomic {
            r: self.r,
            coeffs: self.coeffs.iter().map(|c| c * rhs).collect(),
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(r={}, {})", self.r, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn approx_eq(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn t_pow_basics() {
        let one = Cyclotomic::t_pow(0, 3);
        assert_eq!(one, Cyclotomic::one(3));
        assert_eq!(one.coeffs(), &[1, 0, 0, 0, 0, 0]);

        // t^{2r} = -1
        assert_eq!(Cyclotomic::t_pow(6, 3), Cyclotomic::integer(-1, 3));
        assert_eq!(Cyclotomic::t_pow(2 * 5, 5), Cyclotomic::integer(-1, 5));
    }

    #[test]
    fn t_pow_negative_exponent() {
        // t^{-2} = -t^4 at r = 3; numerically e^{-iπ/3} = -e^{2iπ/3}.
        let a = Cyclotomic::t_pow(-2, 3);
        assert_eq!(a, -&Cyclotomic::t_pow(4, 3));
        let expected = C64::from_polar(1.0, -PI / 3.0);
        assert!(approx_eq(a.to_complex(), expected, 1e-12));
    }

    #[test]
    #[should_panic(expected = "below the minimum")]
    fn rejects_small_level() {
        let _ = Cyclotomic::t_pow(1, 2);
    }

    #[test]
    fn mul_examples() {
        let r = 3;
        // t^3 * t^3 = t^6 = -1
        assert_eq!(
            &Cyclotomic::t_pow(3, r) * &Cyclotomic::t_pow(3, r),
            Cyclotomic::integer(-1, r)
        );
        // t^5 * t^5 = t^10 = -t^4
        assert_eq!(
            &Cyclotomic::t_pow(5, r) * &Cyclotomic::t_pow(5, r),
            -&Cyclotomic::t_pow(4, r)
        );
    }

    #[test]
    fn add_neg_cancels() {
        let x = &Cyclotomic::t_pow(2, 4) + &Cyclotomic::integer(7, 4);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    #[should_panic(expected = "level mismatch")]
    fn mixed_levels_rejected() {
        let _ = &Cyclotomic::one(3) + &Cyclotomic::one(4);
    }

    #[test]
    fn conjugate_examples() {
        // conj(t) = t^{-1} = -t^5 at r = 3.
        let c = Cyclotomic::t_pow(1, 3).conjugate();
        assert_eq!(c, -&Cyclotomic::t_pow(5, 3));
        assert_eq!(Cyclotomic::one(5).conjugate(), Cyclotomic::one(5));
    }

    #[test]
    fn quantum_integer_examples() {
        assert_eq!(Cyclotomic::quantum_integer(1, 5), Cyclotomic::one(5));
        assert_eq!(Cyclotomic::quantum_integer(0, 5), Cyclotomic::zero(5));

        // [2] at r = 3 is t^2 + t^{-2}; numerically 2cos(π/3) = 1.
        let q2 = Cyclotomic::quantum_integer(2, 3);
        assert_eq!(q2, &Cyclotomic::t_pow(2, 3) + &Cyclotomic::t_pow(-2, 3));
        assert!(approx_eq(q2.to_complex(), C64::new(1.0, 0.0), 1e-12));

        // [-n] = -[n]
        assert_eq!(
            Cyclotomic::quantum_integer(-4, 6),
            -&Cyclotomic::quantum_integer(4, 6)
        );
    }

    #[test]
    fn quantum_integer_vanishes_at_level() {
        // [r] (t^2 - t^{-2}) = t^{2r} - t^{-2r} = 0 holds structurally, and
        // [r] itself vanishes at t (it is a multiple of the minimal
        // polynomial of t, which the canonical form does not quotient by).
        for r in 3..=12usize {
            let qr = Cyclotomic::quantum_integer(r as i64, r);
            let denom = &Cyclotomic::t_pow(2, r) - &Cyclotomic::t_pow(-2, r);
            assert!((&qr * &denom).is_zero(), "r = {r}");
            assert!(qr.to_complex().norm() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn quantum_integer_recurrence() {
        // [n+1] = (t^2 + t^{-2})[n] - [n-1], exactly in the ring.
        for r in 3..=9usize {
            let fold = &Cyclotomic::t_pow(2, r) + &Cyclotomic::t_pow(-2, r);
            for n in 0..3 * r as i64 {
                let lhs = Cyclotomic::quantum_integer(n + 1, r);
                let rhs = &(&fold * &Cyclotomic::quantum_integer(n, r))
                    - &Cyclotomic::quantum_integer(n - 1, r);
                assert_eq!(lhs, rhs, "r = {r}, n = {n}");
            }
        }
    }

    #[test]
    fn deserialization_checks_canonical_length() {
        let ok: Result<Cyclotomic, _> = serde_json::from_str(r#"{"r":3,"coeffs":[1,0,0,0,0,0]}"#);
        assert_eq!(ok.unwrap(), Cyclotomic::one(3));
        let short: Result<Cyclotomic, _> = serde_json::from_str(r#"{"r":3,"coeffs":[1,0]}"#);
        assert!(short.is_err());
        let low: Result<Cyclotomic, _> = serde_json::from_str(r#"{"r":2,"coeffs":[1,0,0,0]}"#);
        assert!(low.is_err());
    }

    #[test]
    fn to_complex_examples() {
        for r in 3..=8usize {
            let a = Cyclotomic::t_pow(2 * r as i64, r);
            assert!(approx_eq(a.to_complex(), C64::new(-1.0, 0.0), 1e-12));
        }
        assert!(approx_eq(
            Cyclotomic::zero(4).to_complex(),
            C64::new(0.0, 0.0),
            1e-15
        ));
    }

    fn arb_level() -> impl Strategy<Value = usize> {
        3usize..=12
    }

    fn arb_element(r: usize, bound: i64) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-bound..=bound, 2 * r)
            .prop_map(move |coeffs| Cyclotomic { r, coeffs })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn t_pow_periodicity(r in arb_level(), e in -1_000_000i64..1_000_000) {
            let period = 4 * r as i64;
            prop_assert_eq!(Cyclotomic::t_pow(e, r), Cyclotomic::t_pow(e.rem_euclid(period), r));
            prop_assert_eq!(Cyclotomic::t_pow(e + 2 * r as i64, r), -&Cyclotomic::t_pow(e, r));
        }
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_level().prop_flat_map(|r| {
            (arb_element(r, 1000), arb_element(r, 1000), arb_element(r, 1000))
        })) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn to_complex_is_ring_hom((a, b) in arb_level().prop_flat_map(|r| {
            (arb_element(r, 1000), arb_element(r, 1000))
        })) {
            let prod = (&a * &b).to_complex();
            let sum = (&a + &b).to_complex();
            // scale-relative: rounding grows with |a||b| once coefficients
            // reach 1e3
            let scale = 1.0 + a.to_complex().norm() * b.to_complex().norm();
            prop_assert!((prod - a.to_complex() * b.to_complex()).norm() < 1e-10 * scale);
            prop_assert!((sum - (a.to_complex() + b.to_complex())).norm() < 1e-10);
        }

        #[test]
        fn conjugate_matches_complex(a in arb_level().prop_flat_map(|r| arb_element(r, 1000))) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            let lhs = a.conjugate().to_complex();
            let rhs = a.to_complex().conj();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}
