//! Local densities and Dirichlet-series diagnostics, the Manin exponent,
//! auxiliary-torsor enumeration, local solvability at every place, the
//! constants L_p and nabla, and the leading-constant vanishing verdict.

pub mod local_factor;
pub mod nabla;
pub mod rho;
pub mod solvable;
pub mod torsors;
pub mod verdict;
pub mod xi;

pub use local_factor::local_factor_lp;
pub use nabla::{nabla, NablaResult};
pub use rho::{rho_form_vector, rho_poly};
pub use solvable::{
    local_solvable, surface_local_solvable, LocalReport, Place, Witness, DEFAULT_HENSEL_CEILING,
};
pub use torsors::{torsor_candidates, TorsorSpec};
pub use verdict::{brute_point_search, constant_verdict, manin_exponent, Verdict};
pub use xi::{xi_partial, XiReport};
