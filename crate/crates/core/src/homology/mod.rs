//! Representation-theoretic construction of the preprojective algebra:
//! projectives, injectives, Hom and Ext¹, the bimodule `Ω = Ext¹(DA, A)` and
//! its tensor algebra, and the inverse Auslander–Reiten translate.

mod bimodule;
mod ext;
mod representation;

pub use bimodule::{lambda_te, omega, omega_powers, regular_bimodule, tau_minus, tensor, tensor_power, Bimodule};
pub use ext::{ext1, ext1_with, hom_rep, Ext1, HomSpace, ProjectivePresentation};
pub use representation::{
    dual_algebra, injective, injective_map, projective, projective_map, PathTable, Representation,
};
