//! L-function evaluation: Hurwitz zeta backend, L-values and the completed
//! product, line values, magnitude majorants, argument-principle counting,
//! and certified zero scanning.

pub mod argcount;
pub mod hardy;
pub mod hurwitz;
pub mod majorant;
pub mod scan;
pub mod value;

pub use argcount::{arg_principal_count, arg_principal_count_banked, CountResult};
pub use hardy::{hardy_z, hardy_z_banked};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_deflated, HurwitzBank};
pub use majorant::l_magnitude_bound;
pub use scan::{scan_zeros, ScanOutcome, ZeroRecord};
pub use value::{
    completed_lambda, functional_equation_residual, l_value, l_value_banked, l_value_reflected,
};
