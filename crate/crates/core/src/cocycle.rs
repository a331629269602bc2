//! Transition cocycle of the prequantum line bundle over the quotient of the
//! plane by lattice translations and the symmetry through the origin.
//!
//! The group elements act by `z -> s·z + (m + in)` with `s = ±1`. On the
//! generators the cocycle is
//! `χ(z, m+in) = (-1)^{mn} exp(π[z(m-in) + (m²+n²)/2])` and `χ(z, σ) = -1`;
//! composite elements extend multiplicatively through the cocycle condition
//! `χ(z, λ) χ(λz, μ) = χ(z, μλ)`.

use crate::theta::{theta_eval, ThetaSpec};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// An element of the group generated by the lattice and the symmetry
/// through the origin: `z -> s·z + (m + in)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub m: i64,
    pub n: i64,
    /// `true` when `s = -1`.
    pub flip: bool,
}

impl GroupElement {
    pub fn translation(m: i64, n: i64) -> Self {
        GroupElement { m, n, flip: false }
    }

    /// The symmetry `σ: z -> -z`.
    pub fn inversion() -> Self {
        GroupElement {
            m: 0,
            n: 0,
            flip: true,
        }
    }

    pub fn identity() -> Self {
        GroupElement {
            m: 0,
            n: 0,
            flip: false,
        }
    }

    pub fn apply(&self, z: C64) -> C64 {
        let s = if self.flip { -1.0 } else { 1.0 };
        s * z + C64::new(self.m as f64, self.n as f64)
    }

    /// Group product `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupElement) -> GroupElement {
        let s = if self.flip { -1 } else { 1 };
        GroupElement {
            m: self.m + s * first.m,
            n: self.n + s * first.n,
            flip: self.flip ^ first.flip,
        }
    }
}

/// Which reading of the translation cocycle to use.
///
/// `Standard` is the concluded closed form. `MuNu` keeps the half-integer
/// character exponents that arise along the way, an extra `(-1)^{m+n}`;
/// the two agree after raising to any even power `N`, which is all the
/// quantization ever uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CocycleVariant {
    #[default]
    Standard,
    MuNu,
}

/// Evaluate the cocycle `χ(z, g)`.
pub fn cocycle_eval(z: C64, g: &GroupElement, variant: CocycleVariant) -> C64 {
    if g.flip {
        // g = T_{m+in} ∘ σ, so χ(z, g) = χ(z, σ) χ(σz, T) = -χ(-z, T)
        -translation_cocycle(-z, g.m, g.n, variant)
    } else {
        translation_cocycle(z, g.m, g.n, variant)
    }
}

fn translation_cocycle(z: C64, m: i64, n: i64, variant: CocycleVariant) -> C64 {
    let mut sign = if (m * n).rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    };
    if variant == CocycleVariant::MuNu && (m + n).rem_euclid(2) == 1 {
        sign = -sign;
    }
    let exponent = PI * (z * C64::new(m as f64, -(n as f64)) + 0.5 * ((m * m + n * n) as f64));
    sign * exponent.exp()
}

/// Residual `|χ(z, λ) χ(λz, μ) - χ(z, μλ)|` of the cocycle condition.
pub fn verify_cocycle(
    z: C64,
    lambda: &GroupElement,
    mu: &GroupElement,
    variant: CocycleVariant,
) -> f64 {
    let lhs = cocycle_eval(z, lambda, variant) * cocycle_eval(lambda.apply(z), mu, variant);
    let rhs = cocycle_eval(z, &mu.after(lambda), variant);
    (lhs - rhs).norm()
}

/// The cocycle-condition residual scaled by `max(1, |χ(z, μλ)|)`; `|χ|`
/// reaches `e^{4π}` already on doubly-translated arguments, so the scaled
/// form is what a double-precision check can meaningfully pin down.
pub fn verify_cocycle_scaled(
    z: C64,
    lambda: &GroupElement,
    mu: &GroupElement,
    variant: CocycleVariant,
) -> f64 {
    let rhs = cocycle_eval(z, &mu.after(lambda), variant);
    verify_cocycle(z, lambda, mu, variant) / rhs.norm().max(1.0)
}

/// Hermitian weight `h(z) = e^{-π|z|²/2}` of the level-one bundle.
pub fn hermitian_weight(z: C64) -> f64 {
    (-0.5 * PI * z.norm_sqr()).exp()
}

/// Residual of the compatibility `|χ(z, m+in)| = h(z)/h(z+m+in)`.
pub fn hermitian_compatibility_residual(z: C64, m: i64, n: i64) -> f64 {
    let chi = cocycle_eval(
        z,
        &GroupElement::translation(m, n),
        CocycleVariant::Standard,
    );
    let ratio = hermitian_weight(z) / hermitian_weight(z + C64::new(m as f64, n as f64));
    (chi.norm() - ratio).abs()
}

/// Relative residual of the equivariance of `F(z) = e^{Nπz²/2} θ_j(z)` under
/// a lattice translation: `F(z + m + in) = χ(z, m+in)^N F(z)`.
pub fn section_equivariance_residual(j: i64, m: i64, n: i64, z: C64, spec: &ThetaSpec) -> f64 {
    let level = spec.level as f64;
    let section = |w: C64| (0.5 * level * PI * w * w).exp() * theta_eval(j, w, spec);
    let lhs = section(z + C64::new(m as f64, n as f64));
    // χ^N computed in the exponent; (-1)^{mnN} = 1 for even N
    let chi_n =
        (level * PI * (z * C64::new(m as f64, -(n as f64)) + 0.5 * ((m * m + n * n) as f64))).exp();
    let rhs = chi_n * section(z);
    (lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE)
}
