//! Pin structures on closed non-orientable 3-manifolds given by a handle
//! decomposition `M = H ∪ (g 2-handles) ∪ (3-handle)`, with `H` a genus-`g`
//! non-orientable handlebody.
//!
//! Everything happens on `∂H = N_{2g}` in its crosscap basis. A structure on
//! `M` is an enhancement on `∂H` that restricts to the bounding structure
//! (value 0) on every attaching circle `a_j` and every belt circle `b_j`.

use std::sync::Arc;

use crate::decision::{inconsistent_certificate, minus_system, plus_system, DecisionReport, LinearSystem};
use crate::error::{Error, Result};
use crate::surfaces::{
    CoefficientRing, Enhancement, EnhancementMinus, EnhancementPlus, HomologyClass, Surface, SurfaceModel,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlebodyDecomposition3 {
    genus: u32,
    boundary: Arc<Surface>,
    attaching: Vec<HomologyClass>,
    belt: Vec<HomologyClass>,
}

impl HandlebodyDecomposition3 {
    /// Requires `genus >= 1`, `genus` Z/4 classes of each kind on `N_{2g}`,
    /// and even Z/2 self-intersection for every class.
    pub fn new(genus: u32, attaching: Vec<HomologyClass>, belt: Vec<HomologyClass>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidDecomposition("genus must be at least 1".into()));
        }
        let boundary = Surface::shared(SurfaceModel::non_orientable(2 * genus, 0)?);
        for (what, classes) in [("attaching circles", &attaching), ("belt circles", &belt)] {
            if classes.len() != genus as usize {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: genus as usize,
                    found: classes.len(),
                });
            }
        }
        let d = Self {
            genus,
            boundary,
            attaching,
            belt,
        };
        for (label, class) in d.row_labels().iter().zip(d.classes()) {
            if class.ring() != CoefficientRing::Z4 {
                return Err(Error::RingMismatch {
                    expected: "Z/4",
                    found: "Z/2",
                });
            }
            d.boundary.check_class(&class)?;
            if d.boundary.self_intersection(&class.reduce_mod2()) {
                return Err(Error::OneSidedClass { label: label.clone() });
            }
        }
        Ok(d)
    }

    pub fn from_coords(genus: u32, attaching: &[Vec<u8>], belt: &[Vec<u8>]) -> Result<Self> {
        let lift = |rows: &[Vec<u8>]| {
            rows.iter()
                .map(|r| HomologyClass::z4(r.clone()))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(genus, lift(attaching)?, lift(belt)?)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> &Arc<Surface> {
        &self.boundary
    }

    pub fn attaching(&self) -> &[HomologyClass] {
        &self.attaching
    }

    pub fn belt(&self) -> &[HomologyClass] {
        &self.belt
    }

    /// Attaching classes then belt classes; the row order of every system.
    pub fn classes(&self) -> Vec<HomologyClass> {
        self.attaching.iter().chain(&self.belt).cloned().collect()
    }

    pub fn row_labels(&self) -> Vec<String> {
        (1..=self.genus)
            .map(|j| format!("a{j}"))
            .chain((1..=self.genus).map(|j| format!("b{j}")))
            .collect()
    }
}

/// Decides Pin+ by the rank test on the `2g x 2g` matrix of Z/2 reductions
/// (rows `a1..ag, b1..bg`) against `A = (q0+(a_j), q0+(b_j))`.
pub fn decide_pin_plus_3mfd(d: &HandlebodyDecomposition3) -> DecisionReport {
    // 2g crosscaps is even, so the relation check cannot fail
    let base = EnhancementPlus::base(d.boundary.clone()).expect("N_2g carries Pin+");
    let system = plus_system(&base, d.row_labels(), &d.classes(), 0).expect("validated classes");
    DecisionReport::solve(Enhancement::Plus(base), system, inconsistent_certificate)
}

/// The full solution space of `q-` vanishing on every listed class.
pub fn decide_pin_minus_3mfd(d: &HandlebodyDecomposition3) -> DecisionReport {
    let base = EnhancementMinus::base(d.boundary.clone());
    let system = minus_system(&base, d.row_labels(), &d.classes(), 0).expect("validated classes");
    DecisionReport::solve(Enhancement::Minus(base), system, inconsistent_certificate)
}

/// A `q-` on `∂H` vanishing on every attaching and belt class; the one with
/// lexicographically smallest offset from `q0-`.
///
/// Every closed 3-manifold is Pin-, so an unsolvable system means the class
/// data does not come from a genuine decomposition.
pub fn construct_pin_minus_3mfd(d: &HandlebodyDecomposition3) -> Result<EnhancementMinus> {
    let report = decide_pin_minus_3mfd(d);
    match report.canonical() {
        Some(Enhancement::Minus(q)) => Ok(q),
        _ => Err(Error::InvalidDecomposition(
            report.certificate.map(|c| c.to_string()).unwrap_or_default(),
        )),
    }
}

/// The system matrix for inspection, in block order `a1..ag, b1..bg`.
pub fn pin_plus_system_3mfd(d: &HandlebodyDecomposition3) -> LinearSystem {
    decide_pin_plus_3mfd(d).system.expect("3-manifold systems always exist")
}

/// Exhaustive checks over all enhancements on `∂H`.
pub mod oracle {
    use super::*;

    /// Largest genus the oracles accept (`2^(2g)` candidates).
    pub const MAX_ORACLE_GENUS: u32 = 10;

    fn check(d: &HandlebodyDecomposition3) -> Result<usize> {
        if d.genus > MAX_ORACLE_GENUS {
            return Err(Error::InvariantViolation(format!(
                "oracle refused: genus {} exceeds {MAX_ORACLE_GENUS}",
                d.genus
            )));
        }
        Ok(d.boundary.rank())
    }

    fn bit_vectors(r: usize) -> impl Iterator<Item = Vec<u8>> {
        (0u64..1 << r).map(move |idx| (0..r).map(|i| ((idx >> (r - 1 - i)) & 1) as u8).collect())
    }

    /// Every `q+` passing the relation check and vanishing on all classes.
    pub fn brute_force_pin_plus_3mfd(d: &HandlebodyDecomposition3) -> Result<Vec<EnhancementPlus>> {
        let r = check(d)?;
        let classes = d.classes();
        Ok(bit_vectors(r)
            .filter_map(|v| EnhancementPlus::new(d.boundary.clone(), v).ok())
            .filter(|q| classes.iter().all(|c| q.eval_coords(c.coords()) == 0))
            .collect())
    }

    /// Every `q-` vanishing on all classes.
    pub fn brute_force_pin_minus_3mfd(d: &HandlebodyDecomposition3) -> Result<Vec<EnhancementMinus>> {
        let r = check(d)?;
        let squares = d.boundary.generator_squares();
        let classes: Vec<_> = d.classes().iter().map(HomologyClass::reduce_mod2).collect();
        Ok(bit_vectors(r)
            .map(|bits| bits.iter().zip(&squares).map(|(b, s)| 2 * b + s).collect())
            .filter_map(|v| EnhancementMinus::new(d.boundary.clone(), v).ok())
            .filter(|q| classes.iter().all(|c| q.eval_bits(c) == 0))
            .collect())
    }
}
