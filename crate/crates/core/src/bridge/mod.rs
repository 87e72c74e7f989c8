//! Quandle modules, factor sets, and the maps from group 2-cohomology with
//! trivial coefficients into quandle cohomology.

mod group;
mod maps;
mod module;

pub use group::{group_h2, symmetric_classes, GroupCocycle2, GroupCohomology2, SymmetricClasses, GROUP_COCYCLE_IDENTITY};
pub use maps::{
    check_naturality, gamma_map, gamma_report, lambda_map, lambda_report, pull_push_cocycle, BridgeDirection, GammaReport,
    LambdaReport, NaturalityReport,
};
pub use module::{
    cohomologous_factor_sets, FactorSet, HomogeneousQuandleModule, FACTOR_SET_DIAGONAL, FACTOR_SET_IDENTITY,
    MODULE_AB_SQUARE, MODULE_A_INVERTIBLE, MODULE_A_SQUARE, MODULE_B_SPLIT, MODULE_DIAGONAL, MODULE_HOMOMORPHISM,
};
