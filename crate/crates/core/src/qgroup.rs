//! Curve operators of the quantum-group quantization of the torus moduli
//! space.
//!
//! The Hilbert space at level `r` has the ordered basis `ζ_1, ..., ζ_{r-1}`.
//! Basis labels extend to all integers through the reduction rules
//! `ζ_{k+2r} = ζ_k`, `ζ_{r+n} = -ζ_{r-n}`, `ζ_0 = ζ_r = 0`, and the operator
//! quantizing `2cos 2π(px+qy)` acts columnwise by
//! `C(p,q) ζ_k = t^{-pq} (t^{2qk} ζ_{k-p} + t^{-2qk} ζ_{k+p})`.

use crate::cyclotomic::Cyclotomic;
use crate::matrix::CycMatrix;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Result of folding an arbitrary integer basis label into `1..r-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedIndex {
    /// The label lands on a vanishing vector (`0` or `r` modulo `2r`).
    Zero,
    /// The label folds onto `ζ_index` with the given sign.
    Basis { index: usize, sign: i64 },
}

/// Fold an integer basis label into the fundamental range.
///
/// With `k' = k mod 2r`: labels `0` and `r` vanish, labels above `r` fold to
/// `2r - k'` with a sign flip, and the rest are kept as-is.
pub fn reduce_index(k: i64, r: usize) -> ReducedIndex {
    assert!(r >= crate::cyclotomic::MIN_LEVEL, "level r = {r} too small");
    let period = 2 * r as i64;
    let k = k.rem_euclid(period);
    if k == 0 || k == r as i64 {
        ReducedIndex::Zero
    } else if k > r as i64 {
        ReducedIndex::Basis {
            index: (period - k) as usize,
            sign: -1,
        }
    } else {
        ReducedIndex::Basis {
            index: k as usize,
            sign: 1,
        }
    }
}

/// An `(r-1) × (r-1)` operator over the cyclotomic ring, in the ordered
/// basis `ζ_1, ..., ζ_{r-1}` (row/column `i` holds `ζ_{i+1}`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct ExactOperator {
    r: usize,
    matrix: CycMatrix,
}

impl ExactOperator {
    pub fn zero(r: usize) -> Self {
        ExactOperator {
            r,
            matrix: CycMatrix::zero(r - 1, r),
        }
    }

    pub fn identity(r: usize) -> Self {
        ExactOperator {
            r,
            matrix: CycMatrix::identity(r - 1, r),
        }
    }

    pub fn level(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.r - 1
    }

    pub fn entry(&self, row: usize, col: usize) -> &Cyclotomic {
        self.matrix.get(row, col)
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        ExactOperator {
            r: self.r,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        ExactOperator {
            r: self.r,
            matrix: self.matrix.scale_int(s),
        }
    }

    /// Conjugate transpose with `t -> t^{-1}`; realizes the adjoint for the
    /// inner product that makes the `ζ` basis orthonormal.
    pub fn adjoint(&self) -> Self {
        ExactOperator {
            r: self.r,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Entrywise complex evaluation, row-major.
    pub fn to_complex(&self) -> Vec<Vec<num_complex::Complex64>> {
        self.matrix.to_complex()
    }
}

impl Add for &ExactOperator {
    type Output = ExactOperator;
    fn add(self, rhs: &ExactOperator) -> ExactOperator {
        ExactOperator {
            r: self.r,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &ExactOperator {
    type Output = ExactOperator;
    fn sub(self, rhs: &ExactOperator) -> ExactOperator {
        ExactOperator {
            r: self.r,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul for &ExactOperator {
    type Output = ExactOperator;
    fn mul(self, rhs: &ExactOperator) -> ExactOperator {
        ExactOperator {
            r: self.r,
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl Neg for &ExactOperator {
    type Output = ExactOperator;
    fn neg(self) -> ExactOperator {
        ExactOperator {
            r: self.r,
            matrix: -&self.matrix,
        }
    }
}

/// Serialized form: `{"r": .., "basis": "zeta_ascending", "exact": [[..]]}`
/// where each entry is the canonical coefficient list of length `2r`.
#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    r: usize,
    basis: String,
    exact: Vec<Vec<Vec<i64>>>,
}

impl From<ExactOperator> for OperatorRepr {
    fn from(op: ExactOperator) -> Self {
        let n = op.dim();
        let exact = (0..n)
            .map(|i| (0..n).map(|j| op.entry(i, j).coeffs().to_vec()).collect())
            .collect();
        OperatorRepr {
            r: op.r,
            basis: "zeta_ascending".to_owned(),
            exact,
        }
    }
}

impl TryFrom<OperatorRepr> for ExactOperator {
    type Error = String;
    fn try_from(repr: OperatorRepr) -> Result<Self, String> {
        if repr.basis != "zeta_ascending" {
            return Err(format!("unknown operator basis tag: {}", repr.basis));
        }
        if repr.r < crate::cyclotomic::MIN_LEVEL {
            return Err(format!("level r = {} too small", repr.r));
        }
        let n = repr.r - 1;
        if repr.exact.len() != n || repr.exact.iter().any(|row| row.len() != n) {
            return Err("operator entry grid is not (r-1) x (r-1)".to_owned());
        }
        let mut op = ExactOperator::zero(repr.r);
        for (i, row) in repr.exact.iter().enumerate() {
            for (j, coeffs) in row.iter().enumerate() {
                if coeffs.len() != 2 * repr.r {
                    return Err(format!(
                        "entry ({i},{j}) has {} coefficients, expected {}",
                        coeffs.len(),
                        2 * repr.r
                    ));
                }
                let mut el = Cyclotomic::zero(repr.r);
                for (e, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        el = &el + &(&Cyclotomic::t_pow(e as i64, repr.r) * c);
                    }
                }
                op.matrix.set(i, j, el);
            }
        }
        Ok(op)
    }
}

/// Accumulate `coeff` at the reduction of basis label `target` in `column`.
fn deposit(op: &mut ExactOperator, target: i64, column: usize, coeff: &Cyclotomic) {
    match reduce_index(target, op.r) {
        ReducedIndex::Zero => {}
        ReducedIndex::Basis { index, sign } => {
            op.matrix.add_to(index - 1, column - 1, &(coeff * sign));
        }
    }
}

/// The operator quantizing `2cos 2π(px+qy)` at level `r`.
pub fn cosine_operator(p: i64, q: i64, r: usize) -> ExactOperator {
    let mut op = ExactOperator::zero(r);
    for k in 1..r as i64 {
        deposit(
            &mut op,
            k - p,
            k as usize,
            &Cyclotomic::t_pow(-p * q + 2 * q * k, r),
        );
        deposit(
            &mut op,
            k + p,
            k as usize,
            &Cyclotomic::t_pow(-p * q - 2 * q * k, r),
        );
    }
    op
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The operator quantizing the trace function
/// `sin 2πn(p'x+q'y) / sin 2π(p'x+q'y)`, where `n = gcd(p,q)` and
/// `(p', q') = (p/n, q/n)`.
///
/// Built through the recursion `S_{m+1} = C(m p', m q') + S_{m-1}` with
/// `S_0 = 0` and `S_1 = Id`; `(0,0)` has no defined slope and is rejected.
pub fn sine_operator(p: i64, q: i64, r: usize) -> ExactOperator {
    assert!(
        p != 0 || q != 0,
        "sine operator is undefined for (p, q) = (0, 0)"
    );
    let n = gcd(p, q);
    let (pp, qq) = (p / n, q / n);
    let mut prev = ExactOperator::zero(r);
    let mut cur = ExactOperator::identity(r);
    for m in 1..n {
        let next = &cosine_operator(m * pp, m * qq, r) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The curve operator of the skein-theoretic quantization, acting on the
/// basis of idempotent-colored cores by
/// `(p,q)_T ζ_k = (-1)^q t^{-pq} (t^{2qk} ζ_{k-p} + t^{-2qk} ζ_{k+p})`.
///
/// It differs from [`cosine_operator`] exactly by the factor `(-1)^q`.
pub fn kauffman_operator(p: i64, q: i64, r: usize) -> ExactOperator {
    let parity = if q.rem_euclid(2) == 1 { -1 } else { 1 };
    let mut op = ExactOperator::zero(r);
    for k in 1..r as i64 {
        let a = &Cyclotomic::t_pow(-p * q + 2 * q * k, r) * parity;
        let b = &Cyclotomic::t_pow(-p * q - 2 * q * k, r) * parity;
        deposit(&mut op, k - p, k as usize, &a);
        deposit(&mut op, k + p, k as usize, &b);
    }
    op
}

/// Check the product-to-sum identity
/// `C(m,n) C(p,q) = t^D C(m+p, n+q) + t^{-D} C(m-p, n-q)`, `D = mq - np`,
/// as an exact ring identity.
pub fn verify_product_to_sum(m: i64, n: i64, p: i64, q: i64, r: usize) -> bool {
    let d = m * q - n * p;
    let lhs = &cosine_operator(m, n, r) * &cosine_operator(p, q, r);
    let rhs = &cosine_operator(m + p, n + q, r).scale(&Cyclotomic::t_pow(d, r))
        + &cosine_operator(m - p, n - q, r).scale(&Cyclotomic::t_pow(-d, r));
    lhs == rhs
}

/// The same product-to-sum identity for the skein-side operators, which
/// carry the extra `(-1)^q` signs yet close under the identical rule.
pub fn verify_kauffman_product_to_sum(m: i64, n: i64, p: i64, q: i64, r: usize) -> bool {
    let d = m * q - n * p;
    let lhs = &kauffman_operator(m, n, r) * &kauffman_operator(p, q, r);
    let rhs = &kauffman_operator(m + p, n + q, r).scale(&Cyclotomic::t_pow(d, r))
        + &kauffman_operator(m - p, n - q, r).scale(&Cyclotomic::t_pow(-d, r));
    lhs == rhs
}
