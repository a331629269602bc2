//! Dense square matrices: exact matrices over the cyclotomic ring for the
//! representation checks and curve operators, and basis-tagged complex
//! matrices for the analytic side.

use crate::cyclotomic::Cyclotomic;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycMatrix {
    dim: usize,
    r: usize,
    /// Row-major, `dim * dim` entries.
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zero(dim: usize, r: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        CycMatrix {
            dim,
            r,
            entries: vec![Cyclotomic::zero(r); dim * dim],
        }
    }

    pub fn identity(dim: usize, r: usize) -> Self {
        let mut m = Self::zero(dim, r);
        for i in 0..dim {
            m.entries[i * dim + i] = Cyclotomic::one(r);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> usize {
        self.r
    }

    pub fn get(&self, row: usize, col: usize) -> &Cyclotomic {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Cyclotomic) {
        assert_eq!(value.level(), self.r, "entry level must match matrix level");
        self.entries[row * self.dim + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Cyclotomic) {
        let e = &mut self.entries[row * self.dim + col];
        *e = &*e + value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Conjugate transpose, with entry conjugation `t -> t^{-1}`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.dim, self.r);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[j * self.dim + i] = self.get(i, j).conjugate();
            }
        }
        out
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        CycMatrix {
            dim: self.dim,
            r: self.r,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        CycMatrix {
            dim: self.dim,
            r: self.r,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim, self.r);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Entrywise evaluation at `t = e^{iπ/2r}`.
    pub fn to_complex(&self) -> Vec<Vec<C64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_complex()).collect())
            .collect()
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        assert_eq!(self.r, other.r, "matrix level mismatch");
    }
}

impl Add for &CycMatrix {
    type Output = CycMatrix;
    fn add(self, rhs: &CycMatrix) -> CycMatrix {
        self.assert_compatible(rhs);
        CycMatrix {
            dim: self.dim,
            r: self.r,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycMatrix {
    type Output = CycMatrix;
    fn sub(self, rhs: &CycMatrix) -> CycMatrix {
        self.assert_compatible(rhs);
        CycMatrix {
            dim: self.dim,
            r: self.r,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycMatrix {
    type Output = CycMatrix;
    fn neg(self) -> CycMatrix {
        CycMatrix {
            dim: self.dim,
            r: self.r,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl Mul for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: &CycMatrix) -> CycMatrix {
        self.assert_compatible(rhs);
        let n = self.dim;
        let mut out = CycMatrix::zero(n, self.r);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }
}

/// Which ordered basis a complex matrix is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisTag {
    #[serde(rename = "theta_0..N-1")]
    Theta,
    #[serde(rename = "zeta_1..r-1")]
    Zeta,
}

/// A dense complex matrix tagged with its basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrixRepr", into = "ComplexMatrixRepr")]
pub struct ComplexMatrix {
    dim: usize,
    basis: BasisTag,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize, basis: BasisTag) -> Self {
        ComplexMatrix {
            dim,
            basis,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn add_scaled(&mut self, other: &ComplexMatrix, s: C64) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += s * b;
        }
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from a row-major nested grid.
    pub fn max_deviation_from_rows(&self, rows: &[Vec<C64>]) -> f64 {
        assert_eq!(rows.len(), self.dim);
        let mut worst = 0.0f64;
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                worst = worst.max((self.get(i, j) - v).norm());
            }
        }
        worst
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
struct ReIm {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct ComplexMatrixRepr {
    dim: usize,
    basis: BasisTag,
    entries: Vec<Vec<ReIm>>,
}

impl From<ComplexMatrix> for ComplexMatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        let entries = (0..m.dim)
            .map(|i| {
                (0..m.dim)
                    .map(|j| {
                        let v = m.get(i, j);
                        ReIm { re: v.re, im: v.im }
                    })
                    .collect()
            })
            .collect();
        ComplexMatrixRepr {
            dim: m.dim,
            basis: m.basis,
            entries,
        }
    }
}

impl TryFrom<ComplexMatrixRepr> for ComplexMatrix {
    type Error = String;
    fn try_from(repr: ComplexMatrixRepr) -> Result<Self, String> {
        if repr.entries.len() != repr.dim || repr.entries.iter().any(|r| r.len() != repr.dim) {
            return Err("matrix entry grid does not match dim".into());
        }
        let mut m = ComplexMatrix::zeros(repr.dim, repr.basis);
        for (i, row) in repr.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, C64::new(v.re, v.im));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let r = 4;
        let mut a = CycMatrix::zero(3, r);
        a.set(0, 1, Cyclotomic::t_pow(3, r));
        a.set(2, 0, Cyclotomic::quantum_integer(2, r));
        let id = CycMatrix::identity(3, r);
        assert_eq!(&a * &id, a);
        assert_eq!(&id * &a, a);
    }

    #[test]
    fn adjoint_is_involution() {
        let r = 5;
        let mut a = CycMatrix::zero(2, r);
        a.set(0, 0, Cyclotomic::t_pow(1, r));
        a.set(0, 1, Cyclotomic::quantum_integer(3, r));
        a.set(1, 0, Cyclotomic::t_pow(-2, r));
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let r = 3;
        let mut a = CycMatrix::zero(2, r);
        a.set(0, 1, Cyclotomic::one(r));
        a.set(1, 0, Cyclotomic::t_pow(2, r));
        let mut acc = CycMatrix::identity(2, r);
        for _ in 0..5 {
            acc = &acc * &a;
        }
        assert_eq!(a.pow(5), acc);
    }
}
