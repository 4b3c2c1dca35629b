//! Lefschetz fibrations over the disk and their Pin structures.
//!
//! A fibration `X -> D²` with regular fiber `Σ` and vanishing cycles
//! `c1, ..., cn` carries Pin- structures in natural bijection with
//! enhancements `q-` on `Σ` taking the value 2 on every `[ci]`, and Pin+
//! structures in bijection with enhancements `q+` taking the value 1 on
//! every `[ci]`. Both bijections are equivariant for `H^1(X;Z/2)`, which
//! sits inside `H^1(Σ;Z/2)` as the classes vanishing on every cycle.

pub mod oracle;

use std::sync::Arc;

use crate::charclasses::EmbeddedSurfaceData;
use crate::decision::{
    inconsistent_certificate, minus_system, plus_system, Certificate, CycleRelation, DecisionReport,
};
use crate::error::{Error, Result};
use crate::finite_linalg::{annihilator_gf2, MatGF2, VecGF2};
use crate::surfaces::{
    surface_pin_plus_obstruction, CoefficientRing, Enhancement, EnhancementMinus, EnhancementPlus, HomologyClass,
    PinKind, Surface, SurfaceModel,
};

/// A Lefschetz fibration over `D²`, recorded homologically: the regular
/// fiber and the Z/4 classes of the vanishing cycles in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzFibration {
    fiber: Arc<Surface>,
    cycles: Vec<HomologyClass>,
}

impl LefschetzFibration {
    /// Validates that every cycle is a Z/4 class of the right length whose
    /// Z/2 reduction has even self-intersection (vanishing cycles are
    /// two-sided).
    pub fn new(fiber: Arc<Surface>, cycles: Vec<HomologyClass>) -> Result<Self> {
        for (i, c) in cycles.iter().enumerate() {
            if c.ring() != CoefficientRing::Z4 {
                return Err(Error::RingMismatch {
                    expected: "Z/4",
                    found: "Z/2",
                });
            }
            fiber.check_class(c)?;
            if fiber.self_intersection(&c.reduce_mod2()) {
                return Err(Error::OneSidedClass {
                    label: format!("c{}", i + 1),
                });
            }
        }
        Ok(Self { fiber, cycles })
    }

    /// Convenience constructor from raw Z/4 coordinate rows.
    pub fn from_coords(fiber: SurfaceModel, cycles: &[Vec<u8>]) -> Result<Self> {
        let cycles = cycles
            .iter()
            .map(|c| HomologyClass::z4(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Surface::shared(fiber), cycles)
    }

    pub fn fiber(&self) -> &Arc<Surface> {
        &self.fiber
    }

    pub fn cycles(&self) -> &[HomologyClass] {
        &self.cycles
    }

    pub fn cycle_labels(&self) -> Vec<String> {
        (1..=self.cycles.len()).map(|i| format!("c{i}")).collect()
    }

    /// Z/2 reductions of the cycles, one per row.
    pub fn cycle_matrix(&self) -> MatGF2 {
        MatGF2::from_rows(
            self.fiber.rank(),
            self.cycles.iter().map(HomologyClass::reduce_mod2).collect(),
        )
        .expect("cycles were validated against the fiber")
    }
}

/// Turns a zero-sum row set of the Pin- system into a cycle relation,
/// taking the first cycle of the set as `c0`.
fn cycle_relation(f: &LefschetzFibration, rows: &[usize]) -> CycleRelation {
    let (&c0, summands) = rows.split_first().expect("witness is nonempty");
    let reduced: Vec<VecGF2> = summands.iter().map(|&i| f.cycles[i].reduce_mod2()).collect();
    let mut pairwise = 0;
    for i in 0..reduced.len() {
        for j in i + 1..reduced.len() {
            pairwise += f.fiber.intersection(&reduced[i], &reduced[j]) as usize;
        }
    }
    CycleRelation {
        c0,
        summands: summands.to_vec(),
        pairwise_intersections: pairwise,
    }
}

/// Decides Pin- by solving `q-([ci]) = 2` for `q- = q0- + 2s`.
pub fn decide_pin_minus(f: &LefschetzFibration) -> DecisionReport {
    let base = EnhancementMinus::base(f.fiber.clone());
    let system = minus_system(&base, f.cycle_labels(), &f.cycles, 2).expect("validated cycles");
    DecisionReport::solve(Enhancement::Minus(base), system, |_, rows| {
        Certificate::CycleRelation(cycle_relation(f, &rows))
    })
}

/// Decides Pin+ by the rank test `rank(C) = rank(C|A)` with `C` the Z/2
/// cycle matrix and `A_i = 1 + q0+([ci])`.
pub fn decide_pin_plus(f: &LefschetzFibration) -> DecisionReport {
    let base = match EnhancementPlus::base(f.fiber.clone()) {
        Ok(base) => base,
        Err(_) => {
            let obstruction =
                surface_pin_plus_obstruction(f.fiber.model()).expect("base q+ only fails on obstructed surfaces");
            let dim = fibration_h1_annihilator(f).len();
            return DecisionReport::obstructed_surface(PinKind::Plus, obstruction, dim);
        }
    };
    let system = plus_system(&base, f.cycle_labels(), &f.cycles, 1).expect("validated cycles");
    DecisionReport::solve(Enhancement::Plus(base), system, inconsistent_certificate)
}

pub fn decide(f: &LefschetzFibration, kind: PinKind) -> DecisionReport {
    match kind {
        PinKind::Minus => decide_pin_minus(f),
        PinKind::Plus => decide_pin_plus(f),
    }
}

/// Exhaustive search for cycles `c0, c1, ..., ck` (distinct indices) with
/// `[c0] = Σ [ci]` over Z/2 and `k + Σ_{i<j} ci.cj ≡ 0 (mod 2)`.
///
/// The search runs over `k` ascending, then `c0` ascending, then the
/// summand set in lexicographic order, so the first witness found is
/// reproducible. The cost is exponential in the number of cycles.
pub fn theorem1_witness_search(f: &LefschetzFibration) -> Option<CycleRelation> {
    let n = f.cycles.len();
    let reduced: Vec<VecGF2> = f.cycles.iter().map(HomologyClass::reduce_mod2).collect();
    for k in 0..n {
        for c0 in 0..n {
            let others: Vec<usize> = (0..n).filter(|&i| i != c0).collect();
            let mut found = None;
            for_each_combination(others.len(), k, &mut |pick| {
                let summands: Vec<usize> = pick.iter().map(|&p| others[p]).collect();
                let mut sum = reduced[c0].clone();
                for &i in &summands {
                    sum.add_assign(&reduced[i]);
                }
                if !sum.is_zero() {
                    return false;
                }
                let mut rows = vec![c0];
                rows.extend(&summands);
                let relation = cycle_relation(f, &rows);
                if relation.is_obstruction() {
                    found = Some(relation);
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Calls `visit` with every `k`-subset of `0..n` in lexicographic order
/// until it returns `true`.
fn for_each_combination(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Basis of the classes `γ ∈ H^1(Σ;Z/2)` with `γ([ci]) = 0` for every
/// cycle; this realises `H^1(X;Z/2)` inside `H^1(Σ;Z/2)`.
pub fn fibration_h1_annihilator(f: &LefschetzFibration) -> Vec<VecGF2> {
    annihilator_gf2(&f.cycle_matrix())
}

/// Verdicts for a fibration over `S²` split as the disk part `X ∖ ν(Σ)`
/// plus a surface `σ` dual to the fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereVerdicts {
    pub pin_minus: bool,
    pub pin_plus: bool,
    pub disk_pin_minus: bool,
    pub disk_pin_plus: bool,
    /// `[σ]² + (w1(σ) ∪ w1(νσ))([σ]) + w1²(νσ)`.
    pub dual_minus_term: bool,
    /// `χ(σ) + [σ]² + (w1(σ) ∪ w1(νσ))([σ])`.
    pub dual_plus_term: bool,
}

/// `disk_part` is the complement of a fiber neighbourhood, presented as a
/// fibration over the disk; `dual` holds the invariants of `σ`.
pub fn decide_pin_over_s2(disk_part: &LefschetzFibration, dual: &EmbeddedSurfaceData) -> SphereVerdicts {
    let disk_pin_minus = decide_pin_minus(disk_part).exists;
    let disk_pin_plus = decide_pin_plus(disk_part).exists;
    let dual_minus_term = dual.self_intersection ^ dual.cup_term ^ dual.w1sq_normal;
    let dual_plus_term = dual.euler_char ^ dual.self_intersection ^ dual.cup_term;
    SphereVerdicts {
        pin_minus: disk_pin_minus && !dual_minus_term,
        pin_plus: disk_pin_plus && !dual_plus_term,
        disk_pin_minus,
        disk_pin_plus,
        dual_minus_term,
        dual_plus_term,
    }
}
