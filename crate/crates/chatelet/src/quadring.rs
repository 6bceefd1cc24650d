//! Form class group of discriminant -4*delta and everything carried on it:
//! Gauss composition, genus characters, ideal enumeration by norm,
//! representation counts, theta coefficients, and the argument character.

pub mod class_group;
pub mod genus;
pub mod ideals;
pub mod psi;
pub mod qform;
pub mod reps;
pub mod theta;

pub use class_group::{compose_forms, FormClassGroup};
pub use genus::{eisenstein_eps, genus_characters, GenusCharacter};
pub use ideals::{Ideal, IdealContext};
pub use psi::psi_argument;
pub use qform::QForm;
pub use reps::{ideal_norm_count, minimal_rep, principal_count, representation_count, RepMode};
pub use theta::{theta_decompose, ThetaCoeffs};

/// Unit count of the order Z[sqrt(-delta)] for delta > 0.
pub fn unit_count(delta: i128) -> u64 {
    debug_assert!(delta > 0);
    if delta == 1 {
        4
    } else {
        2
    }
}
