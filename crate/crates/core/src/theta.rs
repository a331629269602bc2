//! Theta series at even level `N = 2r`, the odd basis `ζ_j`, and the
//! weighted quadrature oracle for matrix elements.
//!
//! The series is `θ_j(z) = Σ_n exp(-π(Nn² + 2jn) + 2πiz(j + Nn))`, truncated
//! at a radius certified by an explicit tail bound. Inner products are
//! `<f, g> = ∫_{[0,1]²} f(z) conj(g(z)) e^{-2Nπy²} dx dy`, computed with the
//! trapezoid rule in `x` (exact for band-limited periodic integrands given
//! enough nodes) and composite Gauss–Legendre in `y`. The quadrature is the
//! ground truth against which every closed-form matrix element is checked.

use crate::matrix::{BasisTag, ComplexMatrix};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Configuration of all analytic computations at one level.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaSpec {
    /// Level `N = 2r`; even, at least 6.
    pub level: usize,
    /// Series truncation radius: sums run over `|n| <= truncation`.
    pub truncation: usize,
    /// Number of uniform trapezoid nodes in `x`.
    pub quad_x: usize,
    /// Target number of Gauss–Legendre nodes in `y`.
    pub quad_y: usize,
    /// Target absolute tolerance of series evaluation and quadrature.
    pub tol: f64,
    /// Largest symbol frequency `|p|` the `x` rule is exact for.
    pub max_freq: i64,
}

/// Largest basis label the truncation bound certifies, as a multiple of `N`.
const LABEL_BOUND_LEVELS: usize = 2;
/// Largest `|Im z|` the truncation bound certifies.
const IM_BOUND: f64 = 1.5;

impl ThetaSpec {
    /// A spec for level `N` with the default tolerance `1e-10`, 400 `y`
    /// nodes, symbol frequencies up to 8, and the smallest certified
    /// truncation radius.
    pub fn for_level(level: usize) -> Self {
        Self::with_params(level, 1e-10, 400, 8)
    }

    pub fn with_params(level: usize, tol: f64, quad_y: usize, max_freq: i64) -> Self {
        assert!(
            level >= 6 && level.is_multiple_of(2),
            "level N = {level} must be even and >= 6"
        );
        assert!(tol > 0.0 && max_freq >= 0);
        let truncation = certified_truncation(level, tol);
        let quad_x = 2 * (2 * level + level * truncation + max_freq.unsigned_abs() as usize) + 1;
        ThetaSpec {
            level,
            truncation,
            quad_x,
            quad_y,
            tol,
            max_freq,
        }
    }

    pub fn half_level(&self) -> usize {
        self.level / 2
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.level < 6 || !self.level.is_multiple_of(2) {
            return Err(format!("level N = {} must be even and >= 6", self.level));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err("tolerance must be positive".into());
        }
        let tail = truncation_tail_bound(self.level, self.truncation);
        if tail >= self.tol / 10.0 {
            return Err(format!(
                "truncation {} leaves tail bound {tail:.3e}, above tol/10",
                self.truncation
            ));
        }
        let needed = 2
            * (2 * self.level
                + self.level * self.truncation
                + self.max_freq.unsigned_abs() as usize)
            + 1;
        if self.quad_x < needed {
            return Err(format!(
                "quad_x = {} below the trapezoid exactness bound {needed}",
                self.quad_x
            ));
        }
        if self.quad_y < 16 {
            return Err("quad_y must be at least 16".into());
        }
        Ok(())
    }
}

/// Upper bound on the discarded series tail `Σ_{|n| > m} |term_n|`, uniform
/// over labels `|j| <= 2N` and `|Im z| <= 1.5`.
fn truncation_tail_bound(level: usize, m: usize) -> f64 {
    let n_f = level as f64;
    let max_label = (LABEL_BOUND_LEVELS * level) as f64;
    let mut tail = 0.0f64;
    for n in (m + 1)..(m + 400) {
        let x = n as f64;
        // |term| <= exp(-π(N n² - 2|j| n - 2N|Im z| n)) for either sign of n
        tail += 2.0 * (-PI * (n_f * x * x - 2.0 * max_label * x - 2.0 * n_f * IM_BOUND * x)).exp();
    }
    tail
}

fn certified_truncation(level: usize, tol: f64) -> usize {
    (1..200)
        .find(|&m| truncation_tail_bound(level, m) < tol / 10.0)
        .expect("no certifiable truncation radius below 200")
}

/// Truncated evaluation of `θ_j(z)`; absolute error below `spec.tol` for
/// `|j| <= 2N` and `|Im z| <= 1.5`.
pub fn theta_eval(j: i64, z: C64, spec: &ThetaSpec) -> C64 {
    let n_f = spec.level as f64;
    let m = spec.truncation as i64;
    let mut acc = C64::new(0.0, 0.0);
    for n in -m..=m {
        let freq = j + spec.level as i64 * n;
        let re = -PI * (n_f * (n * n) as f64 + 2.0 * (j * n) as f64);
        // exp(re + 2πi z f) with z = x + iy
        let exponent = C64::new(
            re - 2.0 * PI * freq as f64 * z.im,
            2.0 * PI * freq as f64 * z.re,
        );
        acc += exponent.exp();
    }
    acc
}

/// Normalization constant of `ζ_j`: `(N/2)^{1/4} e^{-πj²/N}`.
pub fn zeta_norm_constant(j: i64, level: usize) -> f64 {
    (level as f64 / 2.0).powf(0.25) * (-PI * (j * j) as f64 / level as f64).exp()
}

/// The odd combination `ζ_j = (N/2)^{1/4} e^{-πj²/N} (θ_j - θ_{-j})`,
/// defined for every integer `j`.
pub fn zeta_eval(j: i64, z: C64, spec: &ThetaSpec) -> C64 {
    zeta_norm_constant(j, spec.level) * (theta_eval(j, z, spec) - theta_eval(-j, z, spec))
}

/// Relative residual of the quasi-periodicity law
/// `θ_j(z + m + in) = e^{Nπ(n² - 2inz)} θ_j(z)`.
pub fn check_quasi_periodicity(j: i64, m: i64, n: i64, z: C64, spec: &ThetaSpec) -> f64 {
    let shifted = theta_eval(j, z + C64::new(m as f64, n as f64), spec);
    let factor = (spec.level as f64
        * PI
        * (C64::new((n * n) as f64, 0.0) - C64::new(0.0, 2.0 * n as f64) * z))
        .exp();
    let expected = factor * theta_eval(j, z, spec);
    (shifted - expected).norm() / expected.norm().max(f64::MIN_POSITIVE)
}

/// Symbol factor of an oracle integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrand {
    /// Constant 1.
    One,
    /// `e^{2πi(px + qy)}`.
    Fourier { p: i64, q: i64 },
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    // positive roots, largest first; the negative half mirrors them
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let k_f = k as f64;
                (p0, p1) = (p1, ((2.0 * k_f - 1.0) * x * p1 - (k_f - 1.0) * p0) / k_f);
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
        if x.abs() > 1e-12 {
            rule.push((-x, w));
        }
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// Composite Gauss–Legendre rule on `[0, 1]` with roughly `target` nodes,
/// split into panels of order 16.
fn composite_gl_unit(target: usize) -> Vec<(f64, f64)> {
    const ORDER: usize = 16;
    let panels = target.div_ceil(ORDER).max(1);
    let base = gauss_legendre(ORDER);
    let h = 1.0 / panels as f64;
    let mut rule = Vec::with_capacity(panels * ORDER);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for &(x, w) in &base {
            rule.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    rule
}

/// Grid-sampled theta and zeta tables over `[0,1]²` with the weights of the
/// oracle inner product folded in; all inner products at one level share it.
pub struct ThetaGrid {
    spec: ThetaSpec,
    /// Unit phases `e^{2πi i / quad_x}`.
    x_phases: Vec<C64>,
    ys: Vec<f64>,
    /// Gauss–Legendre weight times the hermitian weight `e^{-2Nπy²}`.
    wy: Vec<f64>,
    theta: BTreeMap<i64, Vec<C64>>,
    zeta: BTreeMap<i64, Vec<C64>>,
    norms: BTreeMap<i64, f64>,
}

impl ThetaGrid {
    /// Build tables of `θ_j` for every label in `theta_labels` and of `ζ_j`
    /// for every label in `zeta_labels`.
    pub fn build(spec: &ThetaSpec, theta_labels: &[i64], zeta_labels: &[i64]) -> Self {
        spec.validate().expect("invalid theta spec");
        let kx = spec.quad_x;
        let x_phases: Vec<C64> = (0..kx)
            .map(|i| C64::from_polar(1.0, 2.0 * PI * i as f64 / kx as f64))
            .collect();
        let rule = composite_gl_unit(spec.quad_y);
        let ys: Vec<f64> = rule.iter().map(|&(y, _)| y).collect();
        let wy: Vec<f64> = rule
            .iter()
            .map(|&(y, w)| w * (-2.0 * spec.level as f64 * PI * y * y).exp())
            .collect();

        let mut all_thetas: Vec<i64> = theta_labels.to_vec();
        for &j in zeta_labels {
            all_thetas.push(j);
            all_thetas.push(-j);
        }
        all_thetas.sort_unstable();
        all_thetas.dedup();

        let mut grid = ThetaGrid {
            spec: spec.clone(),
            x_phases,
            ys,
            wy,
            theta: BTreeMap::new(),
            zeta: BTreeMap::new(),
            norms: BTreeMap::new(),
        };
        for &j in &all_thetas {
            let table = grid.tabulate_theta(j);
            grid.theta.insert(j, table);
        }
        for &j in zeta_labels {
            let c = zeta_norm_constant(j, spec.level);
            let plus = &grid.theta[&j];
            let minus = &grid.theta[&(-j)];
            let table: Vec<C64> = plus.iter().zip(minus).map(|(a, b)| c * (a - b)).collect();
            grid.zeta.insert(j, table);
        }
        let labels: Vec<i64> = grid.theta.keys().copied().collect();
        for j in labels {
            let n = grid.pair_integral(Integrand::One, &grid.theta[&j], &grid.theta[&j]);
            grid.norms.insert(j, n.re);
        }
        grid
    }

    pub fn spec(&self) -> &ThetaSpec {
        &self.spec
    }

    /// `θ_j` sampled on the grid, flattened `y`-major.
    fn tabulate_theta(&self, j: i64) -> Vec<C64> {
        let kx = self.spec.quad_x;
        let m = self.spec.truncation as i64;
        let level = self.spec.level as i64;
        let mut table = vec![C64::new(0.0, 0.0); self.ys.len() * kx];
        for (iy, &y) in self.ys.iter().enumerate() {
            let row = &mut table[iy * kx..(iy + 1) * kx];
            for n in -m..=m {
                let freq = j + level * n;
                let amp =
                    (-PI * ((level * n * n + 2 * j * n) as f64 + 2.0 * y * freq as f64)).exp();
                if amp == 0.0 {
                    continue;
                }
                // e^{2πi freq x_i} walks the precomputed unit phases
                let step = freq.rem_euclid(kx as i64) as usize;
                let mut idx = 0usize;
                for slot in row.iter_mut() {
                    *slot += amp * self.x_phases[idx];
                    idx += step;
                    if idx >= kx {
                        idx -= kx;
                    }
                }
            }
        }
        table
    }

    /// `∫ f a conj(b) e^{-2Nπy²} dx dy` over the sampled tables.
    fn pair_integral(&self, f: Integrand, a: &[C64], b: &[C64]) -> C64 {
        let kx = self.spec.quad_x;
        let (p, q) = match f {
            Integrand::One => (0, 0),
            Integrand::Fourier { p, q } => {
                assert!(
                    p.unsigned_abs() <= self.spec.max_freq.unsigned_abs(),
                    "symbol frequency p = {p} exceeds the configured bound {}",
                    self.spec.max_freq
                );
                (p, q)
            }
        };
        let step = p.rem_euclid(kx as i64) as usize;
        let mut total = C64::new(0.0, 0.0);
        for (iy, &y) in self.ys.iter().enumerate() {
            let row_a = &a[iy * kx..(iy + 1) * kx];
            let row_b = &b[iy * kx..(iy + 1) * kx];
            let mut sum_x = C64::new(0.0, 0.0);
            let mut idx = 0usize;
            for (va, vb) in row_a.iter().zip(row_b) {
                sum_x += self.x_phases[idx] * va * vb.conj();
                idx += step;
                if idx >= kx {
                    idx -= kx;
                }
            }
            let y_phase = C64::from_polar(1.0, 2.0 * PI * q as f64 * y);
            total += self.wy[iy] * y_phase * sum_x;
        }
        total / kx as f64
    }

    /// Oracle inner product `<f θ_j, θ_k>`.
    pub fn inner_product_theta(&self, f: Integrand, j: i64, k: i64) -> C64 {
        let a = self
            .theta
            .get(&j)
            .unwrap_or_else(|| panic!("θ_{j} not tabulated"));
        let b = self
            .theta
            .get(&k)
            .unwrap_or_else(|| panic!("θ_{k} not tabulated"));
        self.pair_integral(f, a, b)
    }

    /// Oracle inner product `<f ζ_j, ζ_k>`.
    pub fn inner_product_zeta(&self, f: Integrand, j: i64, k: i64) -> C64 {
        let a = self
            .zeta
            .get(&j)
            .unwrap_or_else(|| panic!("ζ_{j} not tabulated"));
        let b = self
            .zeta
            .get(&k)
            .unwrap_or_else(|| panic!("ζ_{k} not tabulated"));
        self.pair_integral(f, a, b)
    }

    /// Oracle norm `‖θ_j‖²`.
    pub fn theta_norm_sq(&self, j: i64) -> f64 {
        *self
            .norms
            .get(&j)
            .unwrap_or_else(|| panic!("θ_{j} not tabulated"))
    }

    /// Gram matrix `G[k-1][j-1] = <ζ_j, ζ_k>`, `j, k = 1..r-1`; expected to
    /// be the identity.
    pub fn gram_zeta(&self) -> ComplexMatrix {
        let r = self.spec.half_level();
        let mut gram = ComplexMatrix::zeros(r - 1, BasisTag::Zeta);
        for k in 1..r as i64 {
            for j in 1..r as i64 {
                gram.set(
                    k as usize - 1,
                    j as usize - 1,
                    self.inner_product_zeta(Integrand::One, j, k),
                );
            }
        }
        gram
    }
}

/// One-off oracle inner product `<f θ_j, θ_k>`; sweeps should build a
/// [`ThetaGrid`] once instead.
pub fn inner_product(f: Integrand, j: i64, k: i64, spec: &ThetaSpec) -> C64 {
    ThetaGrid::build(spec, &[j, k], &[]).inner_product_theta(f, j, k)
}

/// `(r-1) × (r-1)` Gram matrix of the `ζ` basis via the quadrature oracle.
pub fn gram_matrix(spec: &ThetaSpec) -> ComplexMatrix {
    let r = spec.half_level();
    let labels: Vec<i64> = (1..r as i64).collect();
    ThetaGrid::build(spec, &[], &labels).gram_zeta()
}
