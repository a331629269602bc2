//! Two quantizations of the moduli space of flat `SU(2)`-connections on the
//! torus — the quantum-group curve operators and the Weyl/Toeplitz operators
//! on a space of odd theta functions — together with the machinery to verify
//! that they agree: exact cyclotomic arithmetic where the statements are
//! algebraic, an independent quadrature oracle where they are analytic.

pub mod cocycle;
pub mod cyclotomic;
pub mod matrix;
pub mod qgroup;
pub mod report;
pub mod star;
pub mod suites;
pub mod theta;
pub mod uq_sl2;
pub mod weyl;

pub use cyclotomic::Cyclotomic;
pub use qgroup::{
    cosine_operator, kauffman_operator, reduce_index, sine_operator,
    verify_kauffman_product_to_sum, verify_product_to_sum, ExactOperator, ReducedIndex,
};
pub use report::{SuiteParams, SuiteReport, VerificationReport};
pub use star::{parse_poly, ComplexRing, CyclotomicRing, FormalRing, TrigPoly};
pub use suites::{run_suite, run_suites, ParamOverrides, Suite};
pub use theta::{theta_eval, zeta_eval, Integrand, ThetaGrid, ThetaSpec};
pub use uq_sl2::{build_rep, verify_relations, RelationReport, RepMatrices};
pub use weyl::{
    compare_with_qgroup, op_matrix, toeplitz_monomial_closed_form, weyl_cosine_matrix,
    weyl_symbol_factor, BasisTag, ComplexMatrix, EquivalenceCase, MatrixMethod,
};
