//! Rigorous upper bounds for the zero count of a primitive Dirichlet
//! L-function in the critical strip up to a given height, together with the
//! closed-form linear envelope and its certified verification.

mod assemble;
mod backlund;
mod c2;
mod ftheta;
mod jensen;
mod kappa;
mod params;
mod quad;
mod tables;
mod verify;

pub use assemble::{
    assemble_n_bound, assemble_n_bound_with, conjecture_radius, theorem_bound, theorem_radius,
    BoundReport, TheoremBound,
};
pub use backlund::{arg_segment_bound, ArgSegmentBound};
pub use c2::{derive_c2, derive_c2_detailed, C2Derivation};
pub use ftheta::FContext;
pub use jensen::{jensen_integral, jensen_integral_with, s_limit_bound, JensenOutcome, JensenPath};
pub use kappa::{compute_kappas, KappaSet};
pub use params::{
    ell_main_term, scale_ell, select_params, select_params_with, smooth_main_term, theta_sigma,
    BoundMode, BoundParams, Regime, ThetaNodes,
};
pub use quad::{integrate, Quadrature};
pub use tables::{ceiling_entry, disk_pair, HeightColumn, MAX_K};
pub use verify::{verify_assembly, verify_assembly_with};
