//! Realization of the diagram algebras as centralizers of the maximal
//! compact subgroups of `Sp(2n, ℝ)` and `SO(p, q)` on `V^{⊗k}`.

mod checks;
mod group;
mod operators;

pub use checks::{
    center_of_commutant, commutant, commutant_check, count_bipartitions, count_ktypes, count_ktypes_report,
    decompose_sp, decompose_sp_in, phi_faithful, sector_identity, so_dimension_identity, stated_deltas, verify_phi,
    walled_centralizer_check, CommutantReport, FaithfulReport, IdentityReport, KTypeReport, Sector, SectorReport,
    WalledReport,
};
pub use group::{
    group_context, indefinite_form, so_compact_basis, sp_compact_basis, sp_f_basis, sp_xi, symplectic_form, Family,
    Frame, GroupContext, GroupSpec,
};
pub use operators::{
    lie_actions, measure_deltas, measure_deltas_in_basis, permutation_operator, phi, scalar_multiple, swap_sign,
    tensor_operator, tensor_operator_in, Deltas, DeltasJson, OperatorKind, PhiMap,
};
