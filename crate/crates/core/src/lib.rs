//! Pin- and Pin+ structures on 4-dimensional Lefschetz fibrations over the
//! disk, on fibrations over the sphere, and on closed 3-manifolds given by
//! handle decompositions.
//!
//! Every question is reduced to quadratic enhancements on a surface and
//! then to an affine system over Z/2, so all answers are exact. Brute-force
//! oracles over the whole enhancement space are provided alongside the
//! linear-algebra deciders for cross-checking.

pub mod charclasses;
pub mod decision;
pub mod error;
pub mod finite_linalg;
pub mod lefschetz;
pub mod surfaces;
pub mod threefolds;

pub use charclasses::{eval_w1sq, eval_w2, pin_obstruction_summary, EmbeddedSurfaceData, ObstructionSummary};
pub use decision::{Certificate, CycleRelation, DecisionReport, LinearSystem};
pub use error::{Error, Result};
pub use lefschetz::{
    decide, decide_pin_minus, decide_pin_over_s2, decide_pin_plus, fibration_h1_annihilator, theorem1_witness_search,
    LefschetzFibration, SphereVerdicts,
};
pub use surfaces::{
    act_h1, enumerate_enhancements, eval_qminus, eval_qplus, homology_presentation, pin_plus_exists_surface,
    CoefficientRing, Enhancement, EnhancementMinus, EnhancementPlus, EnhancementSet, HomologyClass,
    HomologyPresentation, Orientability, PinKind, Surface, SurfaceModel, SurfaceObstruction,
};
pub use threefolds::{construct_pin_minus_3mfd, decide_pin_minus_3mfd, decide_pin_plus_3mfd, HandlebodyDecomposition3};
