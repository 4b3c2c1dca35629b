//! Exact linear algebra over Z/2 and Z/4.
//!
//! All elimination uses leftmost pivots, so reduced forms and the reported
//! solutions are reproducible bit for bit.

mod gf2;
mod z4;

pub use gf2::{
    annihilator_gf2, inconsistency_witness, rref_gf2, solve_affine_gf2, AffineSolutionGF2, MatGF2, Rref, VecGF2,
};
pub use z4::{howell_z4, MatZ4, RowModuleZ4};
