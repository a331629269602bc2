//! Toeplitz/Weyl quantization on the theta space: exact closed forms for
//! Toeplitz matrix elements of Fourier symbols, the heat-smoothing symbol
//! factor, cosine operator matrices in the `ζ` basis, and the entrywise
//! comparison against the quantum-group curve operators.
//!
//! The closed forms come from the defining integral: the `x`-integral
//! forces the unique target index `k₀ = (j+p) mod N`, and Poisson summation
//! turns the `y`-integral into a Gaussian factor. The quadrature oracle of
//! [`crate::theta`] is the ground truth the closed forms are certified
//! against.

use crate::qgroup::cosine_operator;
use crate::star::{ComplexRing, TrigPoly};
use crate::theta::{zeta_norm_constant, Integrand, ThetaGrid, ThetaSpec};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

pub use crate::matrix::{BasisTag, ComplexMatrix};

/// The two index regimes of the Toeplitz shift: the principal part of `p`
/// either keeps `j + p₀` inside `0..N` or overflows and folds back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftRegime {
    Direct,
    Folded,
}

pub fn shift_regime(j: i64, p: i64, level: usize) -> ShiftRegime {
    let p0 = p.rem_euclid(level as i64);
    if j + p0 < level as i64 {
        ShiftRegime::Direct
    } else {
        ShiftRegime::Folded
    }
}

/// Matrix element of the Toeplitz operator of symbol `e^{2πi(px+qy)}` on the
/// basis `θ_0..θ_{N-1}`: the image of `θ_j` is `scalar · θ_{k₀}` with the
/// unique target `k₀ = (j+p) mod N`.
///
/// With `γ = (p - (k₀-j))/N` and
/// `E = (2j+p)²/2N - Nγ² - 2k₀γ`, the scalar is
/// `exp(π(E - 2k₀²/N - q²/2N)) · exp(-iπq(2j+p)/N)`; it equals
/// `<e^{2πi(px+qy)} θ_j, θ_{k₀}> / ‖θ_{k₀}‖²` exactly.
pub fn toeplitz_monomial_closed_form(p: i64, q: i64, j: i64, spec: &ThetaSpec) -> (usize, C64) {
    let n = spec.level as i64;
    let k0 = (j + p).rem_euclid(n);
    debug_assert_eq!((p - (k0 - j)).rem_euclid(n), 0);
    let gamma = (p - (k0 - j)) / n;
    let nf = n as f64;
    let two_jp = 2 * j + p;
    let e = (two_jp * two_jp) as f64 / (2.0 * nf)
        - nf * (gamma * gamma) as f64
        - (2 * k0 * gamma) as f64;
    let magnitude = (PI * (e - (2 * k0 * k0) as f64 / nf - (q * q) as f64 / (2.0 * nf))).exp();
    let angle = -PI * (q * two_jp) as f64 / nf;
    (k0 as usize, C64::from_polar(magnitude, angle))
}

/// Heat-smoothing factor relating Weyl and Toeplitz symbols on cosines:
/// `e^{-Δ/4N} 2cos 2π(px+qy) = e^{-π(p²+q²)/2N} 2cos 2π(px+qy)`, so the
/// Weyl operator carries the inverse factor `e^{π(p²+q²)/2N}`.
pub fn weyl_symbol_factor(p: i64, q: i64, level: usize) -> f64 {
    (PI * ((p * p + q * q) as f64) / (2.0 * level as f64)).exp()
}

/// How to assemble an operator matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixMethod {
    /// Entries as quadrature inner products against the `ζ` basis.
    Oracle,
    /// Entries assembled from the Toeplitz closed forms and the `ζ`-to-`θ`
    /// change of basis, with `θ` norms measured by the oracle.
    ClosedForm,
}

/// Basis labels a grid must carry for the operator assembly at this level:
/// `θ_0..θ_{N-1}` and `ζ_1..ζ_{r-1}`.
pub fn operator_grid(spec: &ThetaSpec) -> ThetaGrid {
    let theta_labels: Vec<i64> = (0..spec.level as i64).collect();
    let zeta_labels: Vec<i64> = (1..spec.half_level() as i64).collect();
    ThetaGrid::build(spec, &theta_labels, &zeta_labels)
}

/// The matrix of `op_N(2cos 2π(px+qy)) = e^{π(p²+q²)/2N} T_{2cos 2π(px+qy)}`
/// in the orthonormal `ζ` basis.
pub fn weyl_cosine_matrix_on(
    grid: &ThetaGrid,
    p: i64,
    q: i64,
    method: MatrixMethod,
) -> ComplexMatrix {
    let spec = grid.spec();
    let n = spec.level;
    let r = spec.half_level();
    let factor = weyl_symbol_factor(p, q, n);
    let mut mat = ComplexMatrix::zeros(r - 1, BasisTag::Zeta);
    match method {
        MatrixMethod::Oracle => {
            for j in 1..r as i64 {
                for k in 1..r as i64 {
                    let plus = grid.inner_product_zeta(Integrand::Fourier { p, q }, j, k);
                    let minus = grid.inner_product_zeta(Integrand::Fourier { p: -p, q: -q }, j, k);
                    mat.set(k as usize - 1, j as usize - 1, factor * (plus + minus));
                }
            }
        }
        MatrixMethod::ClosedForm => {
            for j in 1..r {
                // ζ_j = c_j (θ_j - e^{π(2j-N)} θ_{N-j}) on the torus basis
                let cj = zeta_norm_constant(j as i64, n);
                let fold_j = (PI * (2.0 * j as f64 - n as f64)).exp();
                let mut image = vec![C64::new(0.0, 0.0); n];
                let sources = [
                    (j as i64, C64::new(cj, 0.0)),
                    ((n - j) as i64, C64::new(-cj * fold_j, 0.0)),
                ];
                for (label, coeff) in sources {
                    for (pp, qq) in [(p, q), (-p, -q)] {
                        let (target, scalar) = toeplitz_monomial_closed_form(pp, qq, label, spec);
                        image[target] += coeff * scalar;
                    }
                }
                for k in 1..r {
                    let ck = zeta_norm_constant(k as i64, n);
                    let fold_k = (PI * (2.0 * k as f64 - n as f64)).exp();
                    let v = ck
                        * (image[k] * grid.theta_norm_sq(k as i64)
                            - fold_k * image[n - k] * grid.theta_norm_sq((n - k) as i64));
                    mat.set(k - 1, j - 1, factor * v);
                }
            }
        }
    }
    mat
}

/// Convenience wrapper building the grid for one matrix.
pub fn weyl_cosine_matrix(p: i64, q: i64, spec: &ThetaSpec, method: MatrixMethod) -> ComplexMatrix {
    weyl_cosine_matrix_on(&operator_grid(spec), p, q, method)
}

/// The operator of a finite cosine polynomial with complex coefficients:
/// the coefficient-weighted sum of the cosine matrices.
pub fn op_matrix_on(
    grid: &ThetaGrid,
    f: &TrigPoly<ComplexRing>,
    method: MatrixMethod,
) -> ComplexMatrix {
    let r = grid.spec().half_level();
    let mut acc = ComplexMatrix::zeros(r - 1, BasisTag::Zeta);
    for (&(p, q), &coeff) in f.terms() {
        acc.add_scaled(&weyl_cosine_matrix_on(grid, p, q, method), coeff);
    }
    acc
}

pub fn op_matrix(
    f: &TrigPoly<ComplexRing>,
    spec: &ThetaSpec,
    method: MatrixMethod,
) -> ComplexMatrix {
    op_matrix_on(&operator_grid(spec), f, method)
}

/// One case of the equivalence comparison between the two quantizations.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EquivalenceCase {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub max_abs_deviation: f64,
    pub pass: bool,
}

/// Compare the quadrature-built Weyl matrix of `2cos 2π(px+qy)` against the
/// complex evaluation of the quantum-group operator `C(p,q)`, entrywise.
pub fn compare_with_qgroup_on(grid: &ThetaGrid, p: i64, q: i64, tol: f64) -> EquivalenceCase {
    let r = grid.spec().half_level();
    let weyl = weyl_cosine_matrix_on(grid, p, q, MatrixMethod::Oracle);
    let qg = cosine_operator(p, q, r).to_complex();
    let max_abs_deviation = weyl.max_deviation_from_rows(&qg);
    EquivalenceCase {
        r,
        p,
        q,
        max_abs_deviation,
        pass: max_abs_deviation < tol,
    }
}

pub fn compare_with_qgroup(
    p: i64,
    q: i64,
    r: usize,
    spec: &ThetaSpec,
    tol: f64,
) -> EquivalenceCase {
    assert_eq!(spec.level, 2 * r, "spec level must equal 2r");
    compare_with_qgroup_on(&operator_grid(spec), p, q, tol)
}
