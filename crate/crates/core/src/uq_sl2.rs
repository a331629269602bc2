//! Generators of the quantum algebra of `sl(2)` on its irreducible
//! representations at the root of unity `t = e^{iπ/2r}`, and exact
//! verification of the defining relations
//! `KX = t²XK`, `KY = t⁻²YK`, `XY - YX = (K² - K⁻²)/(t² - t⁻²)`,
//! `X^r = Y^r = 0`, `K^{4r} = 1`.

use crate::cyclotomic::Cyclotomic;
use crate::matrix::CycMatrix;
use serde::Serialize;

/// The generator matrices on the `k`-dimensional irreducible representation.
///
/// The basis is ordered by increasing weight; slot `s` (0-based) carries the
/// doubled weight `2s - (k-1)`, so all indices stay integral. In that
/// indexing the actions are `X e_s = [s+1] e_{s+1}`, `Y e_s = [k-s] e_{s-1}`,
/// `K e_s = t^{2s-k+1} e_s`.
#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub k: usize,
    pub r: usize,
    pub raising: CycMatrix,
    pub lowering: CycMatrix,
    pub cartan: CycMatrix,
}

/// Doubled weight of basis slot `s` in the `k`-dimensional representation.
fn doubled_weight(s: usize, k: usize) -> i64 {
    2 * s as i64 - (k as i64 - 1)
}

/// Build the generator matrices on the irreducible representation of
/// dimension `k`, for `1 <= k <= r-1`.
pub fn build_rep(k: usize, r: usize) -> RepMatrices {
    assert!(
        k >= 1 && k < r,
        "representation dimension k = {k} outside 1..={} at level r = {r}",
        r - 1
    );
    let mut raising = CycMatrix::zero(k, r);
    let mut lowering = CycMatrix::zero(k, r);
    let mut cartan = CycMatrix::zero(k, r);
    for s in 0..k {
        cartan.set(s, s, Cyclotomic::t_pow(doubled_weight(s, k), r));
        if s + 1 < k {
            raising.set(s + 1, s, Cyclotomic::quantum_integer(s as i64 + 1, r));
            lowering.set(
                s,
                s + 1,
                Cyclotomic::quantum_integer(k as i64 - s as i64 - 1, r),
            );
        }
    }
    RepMatrices {
        k,
        r,
        raising,
        lowering,
        cartan,
    }
}

/// Outcome of checking the five defining relations on one representation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RelationReport {
    pub k: usize,
    /// `KX = t² XK`
    pub kx_relation: bool,
    /// `KY = t⁻² YK`
    pub ky_relation: bool,
    /// `XY - YX` equals the diagonal of quantized weights `[2j]`, and the
    /// division-free form `(XY - YX)(t² - t⁻²) = K² - K⁻²`
    pub commutator_relation: bool,
    /// `X^r = Y^r = 0`
    pub nilpotency: bool,
    /// `K^{4r} = 1`
    pub cartan_order: bool,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.kx_relation
            && self.ky_relation
            && self.commutator_relation
            && self.nilpotency
            && self.cartan_order
    }
}

/// Check all five defining relations exactly on the `k`-dimensional
/// representation.
pub fn verify_relations(k: usize, r: usize) -> RelationReport {
    let rep = build_rep(k, r);
    let (x, y, km) = (&rep.raising, &rep.lowering, &rep.cartan);

    let t2 = Cyclotomic::t_pow(2, r);
    let t2_inv = Cyclotomic::t_pow(-2, r);

    let kx_relation = (km * x) == (x * km).scale(&t2);
    let ky_relation = (km * y) == (y * km).scale(&t2_inv);

    // Commutator, in both the evaluated diagonal form and the
    // division-free form.
    let comm = &(x * y) - &(y * x);
    let mut diag = CycMatrix::zero(k, r);
    for s in 0..k {
        diag.set(s, s, Cyclotomic::quantum_integer(doubled_weight(s, k), r));
    }
    let mut k_inv = CycMatrix::zero(k, r);
    for s in 0..k {
        k_inv.set(s, s, Cyclotomic::t_pow(-doubled_weight(s, k), r));
    }
    let lhs = comm.scale(&(&t2 - &t2_inv));
    let rhs = &km.pow(2) - &k_inv.pow(2);
    let commutator_relation = comm == diag && lhs == rhs;

    let nilpotency = x.pow(r as u64).is_zero() && y.pow(r as u64).is_zero();
    let cartan_order = km.pow(4 * r as u64) == CycMatrix::identity(k, r);

    RelationReport {
        k,
        kx_relation,
        ky_relation,
        commutator_relation,
        nilpotency,
        cartan_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_rep_is_trivial() {
        let rep = build_rep(1, 5);
        assert!(rep.raising.is_zero());
        assert!(rep.lowering.is_zero());
        assert_eq!(rep.cartan, CycMatrix::identity(1, 5));
    }

    #[test]
    fn two_dimensional_rep_entries() {
        // m = 1/2: K = diag(t^{-1}, t), X has the single entry [1].
        let rep = build_rep(2, 5);
        assert_eq!(*rep.cartan.get(0, 0), Cyclotomic::t_pow(-1, 5));
        assert_eq!(*rep.cartan.get(1, 1), Cyclotomic::t_pow(1, 5));
        assert_eq!(*rep.raising.get(1, 0), Cyclotomic::one(5));
        assert_eq!(*rep.lowering.get(0, 1), Cyclotomic::one(5));
    }

    #[test]
    fn three_dimensional_rep_entries() {
        // Superdiagonal of X is [1], [2]; subdiagonal of Y is [2], [1].
        let rep = build_rep(3, 5);
        assert_eq!(*rep.raising.get(1, 0), Cyclotomic::quantum_integer(1, 5));
        assert_eq!(*rep.raising.get(2, 1), Cyclotomic::quantum_integer(2, 5));
        assert_eq!(*rep.lowering.get(0, 1), Cyclotomic::quantum_integer(2, 5));
        assert_eq!(*rep.lowering.get(1, 2), Cyclotomic::quantum_integer(1, 5));
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn dimension_bound_enforced() {
        let _ = build_rep(5, 5);
    }

    #[test]
    fn relations_small_cases() {
        assert!(verify_relations(2, 3).all_hold());
        assert!(verify_relations(1, 5).all_hold());
    }

    #[test]
    fn relations_full_sweep() {
        for r in 3..=12 {
            for k in 1..r {
                let report = verify_relations(k, r);
                assert!(
                    report.all_hold(),
                    "relations fail at k = {k}, r = {r}: {report:?}"
                );
            }
        }
    }

    #[test]
    fn commutator_diagonal_matches_quantum_integers() {
        // Cross-module consistency: the diagonal entries of XY - YX are the
        // quantized doubled weights.
        for r in 3..=8usize {
            for k in 1..r {
                let rep = build_rep(k, r);
                let comm = &(&rep.raising * &rep.lowering) - &(&rep.lowering * &rep.raising);
                for s in 0..k {
                    assert_eq!(
                        *comm.get(s, s),
                        Cyclotomic::quantum_integer(doubled_weight(s, k), r)
                    );
                }
            }
        }
    }
}
