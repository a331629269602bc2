//! Cross-module consistency: the analytic side and the algebraic side must
//! implement the same index conventions, and the sign obstruction must be
//! visible from the analytic side too.

use moduli_core::qgroup::{kauffman_operator, reduce_index, ReducedIndex};
use moduli_core::theta::{zeta_eval, ThetaSpec};
use moduli_core::weyl::{weyl_cosine_matrix, MatrixMethod};
use num_complex::Complex64 as C64;

/// The pointwise folding of `ζ_k` follows exactly the reduction rules used
/// to build the curve operators.
#[test]
fn zeta_folding_mirrors_index_reduction() {
    for r in [3usize, 5, 7] {
        let level = 2 * r;
        let spec = ThetaSpec::for_level(level);
        let points = [
            C64::new(0.31, 0.17),
            C64::new(-0.62, -0.05),
            C64::new(0.11, 0.4),
        ];
        for k in -(2 * level as i64)..=(2 * level as i64) {
            for &z in &points {
                let folded = zeta_eval(k, z, &spec);
                match reduce_index(k, r) {
                    ReducedIndex::Zero => {
                        assert!(
                            folded.norm() < 1e-6,
                            "ζ_{k} should vanish at r = {r}, got {folded}"
                        );
                    }
                    ReducedIndex::Basis { index, sign } => {
                        let base = zeta_eval(index as i64, z, &spec);
                        let expected = sign as f64 * base;
                        assert!(
                            (folded - expected).norm() <= 1e-8 * base.norm().max(1e-3),
                            "ζ_{k} vs {sign}·ζ_{index} at r = {r}"
                        );
                    }
                }
            }
        }
    }
}

/// The Weyl quantization matches the curve operators but not the skein-side
/// operators: at odd `q` the sign obstruction shows up as an order-one
/// entrywise gap.
#[test]
fn weyl_side_rejects_skein_signs_at_odd_q() {
    let r = 3usize;
    let spec = ThetaSpec::for_level(2 * r);
    let weyl = weyl_cosine_matrix(0, 1, &spec, MatrixMethod::Oracle);
    let skein = kauffman_operator(0, 1, r).to_complex();
    let mut gap = 0.0f64;
    for (i, row) in skein.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            gap = gap.max((weyl.get(i, j) - v).norm());
        }
    }
    assert!(
        gap > 0.5,
        "expected an order-one disagreement, got {gap:.3e}"
    );
}
