//! Decision reports shared by the fibration and 3-manifold deciders.
//!
//! Every decision reduces to an affine system over Z/2 in the offsets of an
//! enhancement from a fixed base enhancement: one row per constrained class,
//! one column per generator.

use std::fmt;

use crate::error::Result;
use crate::finite_linalg::{inconsistency_witness, solve_affine_gf2, AffineSolutionGF2, MatGF2, VecGF2};
use crate::surfaces::{Enhancement, EnhancementMinus, EnhancementPlus, HomologyClass, PinKind, SurfaceObstruction};

/// Writes `n` with Unicode subscript digits.
pub(crate) fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

/// Certificate for a dependency among vanishing cycles that rules out Pin-:
/// `[c0] = [c1] + ... + [ck]` in `H_1(Σ;Z/2)` with
/// `k + Σ_{i<j} ci.cj ≡ 0 (mod 2)`. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleRelation {
    pub c0: usize,
    pub summands: Vec<usize>,
    /// `Σ_{i<j} ci.cj` over the summands, as an integer.
    pub pairwise_intersections: usize,
}

impl CycleRelation {
    pub fn k(&self) -> usize {
        self.summands.len()
    }

    /// The parity condition `k + Σ ci.cj ≡ 0 (mod 2)`.
    pub fn is_obstruction(&self) -> bool {
        (self.k() + self.pairwise_intersections).is_multiple_of(2)
    }
}

impl fmt::Display for CycleRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c0 = subscript(self.c0 + 1);
        if self.summands.is_empty() {
            return write!(f, "q⁻(c{c0})=0≠2");
        }
        let sum: Vec<String> = self
            .summands
            .iter()
            .map(|&i| format!("[c{}]", subscript(i + 1)))
            .collect();
        write!(
            f,
            "[c{c0}]={} in H₁(Σ;Z₂), k+Σcᵢ·cⱼ={}+{}≡0 (mod 2)",
            sum.join("+"),
            self.k(),
            self.pairwise_intersections
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The surface itself carries no structure of this kind.
    Surface(SurfaceObstruction),
    /// A relation among vanishing cycles (Pin- on fibrations).
    CycleRelation(CycleRelation),
    /// Rows of the system that sum to zero while their right-hand sides
    /// sum to one.
    Inconsistent {
        rows: Vec<String>,
        rank: usize,
        augmented_rank: usize,
    },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Surface(s) => write!(f, "{s}"),
            Certificate::CycleRelation(w) => write!(f, "{w}"),
            Certificate::Inconsistent {
                rows,
                rank,
                augmented_rank,
            } => write!(
                f,
                "rank(C)={rank}≠rank(C|A)={augmented_rank}; rows {} sum to 0 with right-hand sides summing to 1",
                rows.join("+")
            ),
        }
    }
}

/// The affine system `C s = A` behind a decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub row_labels: Vec<String>,
    pub matrix: MatGF2,
    pub rhs: VecGF2,
    pub rank: usize,
    pub augmented_rank: usize,
}

impl LinearSystem {
    pub fn new(row_labels: Vec<String>, matrix: MatGF2, rhs: VecGF2) -> Result<Self> {
        let augmented_rank = matrix.augmented(&rhs)?.rank();
        let rank = matrix.rank();
        Ok(Self {
            row_labels,
            matrix,
            rhs,
            rank,
            augmented_rank,
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.rank == self.augmented_rank
    }

    /// Row combination proving inconsistency, as row indices.
    pub fn inconsistent_rows(&self) -> Option<Vec<usize>> {
        inconsistency_witness(&self.matrix, &self.rhs)
            .expect("system dimensions agree")
            .map(|y| y.ones().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionReport {
    pub kind: PinKind,
    pub exists: bool,
    /// `2^h1_annihilator_dim` when structures exist, 0 otherwise.
    pub structure_count: u128,
    pub certificate: Option<Certificate>,
    /// Dimension of the classes in `H^1(Σ;Z/2)` that vanish on every
    /// constrained class.
    pub h1_annihilator_dim: usize,
    pub system: Option<LinearSystem>,
    base: Option<Enhancement>,
    solution: Option<AffineSolutionGF2>,
}

impl DecisionReport {
    pub(crate) fn obstructed_surface(kind: PinKind, obstruction: SurfaceObstruction, annihilator_dim: usize) -> Self {
        Self {
            kind,
            exists: false,
            structure_count: 0,
            certificate: Some(Certificate::Surface(obstruction)),
            h1_annihilator_dim: annihilator_dim,
            system: None,
            base: None,
            solution: None,
        }
    }

    /// Solves `system` for offsets from `base`. `certify` turns the
    /// inconsistent row set into a certificate.
    pub(crate) fn solve(
        base: Enhancement,
        system: LinearSystem,
        certify: impl FnOnce(&LinearSystem, Vec<usize>) -> Certificate,
    ) -> Self {
        let kind = base.kind();
        let solution = solve_affine_gf2(&system.matrix, &system.rhs).expect("system dimensions agree");
        let annihilator_dim = system.matrix.ncols() - system.rank;
        match solution {
            Some(solution) => {
                debug_assert_eq!(solution.dimension(), annihilator_dim);
                Self {
                    kind,
                    exists: true,
                    structure_count: solution.count().expect("solution space fits in u128"),
                    certificate: None,
                    h1_annihilator_dim: annihilator_dim,
                    system: Some(system),
                    base: Some(base),
                    solution: Some(solution),
                }
            }
            None => {
                let rows = system.inconsistent_rows().expect("inconsistent system has a witness");
                let certificate = certify(&system, rows);
                Self {
                    kind,
                    exists: false,
                    structure_count: 0,
                    certificate: Some(certificate),
                    h1_annihilator_dim: annihilator_dim,
                    system: Some(system),
                    base: Some(base),
                    solution: None,
                }
            }
        }
    }

    pub fn solution(&self) -> Option<&AffineSolutionGF2> {
        self.solution.as_ref()
    }

    /// The base enhancement the system is written relative to.
    pub fn base(&self) -> Option<&Enhancement> {
        self.base.as_ref()
    }

    /// Every structure, in lexicographic order of its offset from the base.
    pub fn structures(&self) -> impl Iterator<Item = Enhancement> + '_ {
        let pair = self.base.as_ref().zip(self.solution.as_ref());
        pair.into_iter().flat_map(|(base, solution)| {
            solution
                .solutions()
                .map(move |s| base.act(&s).expect("offset has the surface rank"))
        })
    }

    /// The structure with the lexicographically smallest offset.
    pub fn canonical(&self) -> Option<Enhancement> {
        let (base, solution) = self.base.as_ref().zip(self.solution.as_ref())?;
        Some(base.act(&solution.particular).expect("offset has the surface rank"))
    }
}

pub(crate) fn inconsistent_certificate(system: &LinearSystem, rows: Vec<usize>) -> Certificate {
    Certificate::Inconsistent {
        rows: rows.iter().map(|&i| system.row_labels[i].clone()).collect(),
        rank: system.rank,
        augmented_rank: system.augmented_rank,
    }
}

/// Rows `c̄` and right-hand sides for `q-(c) = target` with
/// `q = base + 2 s`. Every class must be two-sided so `base(c̄)` is even.
pub(crate) fn minus_system(
    base: &EnhancementMinus,
    labels: Vec<String>,
    classes: &[HomologyClass],
    target: u8,
) -> Result<LinearSystem> {
    let rank = base.surface().rank();
    let rows: Vec<VecGF2> = classes.iter().map(HomologyClass::reduce_mod2).collect();
    let rhs: Vec<bool> = rows
        .iter()
        .map(|c| {
            let v = base.eval_bits(c);
            debug_assert_eq!(v % 2, 0, "two-sided classes have even q-");
            ((target + 4 - v) % 4) / 2 == 1
        })
        .collect();
    LinearSystem::new(labels, MatGF2::from_rows(rank, rows)?, VecGF2::from_bools(&rhs))
}

/// Rows `c̄` and right-hand sides for `q+(c) = target` with
/// `q = base + λ`.
pub(crate) fn plus_system(
    base: &EnhancementPlus,
    labels: Vec<String>,
    classes: &[HomologyClass],
    target: u8,
) -> Result<LinearSystem> {
    let rank = base.surface().rank();
    let rows: Vec<VecGF2> = classes.iter().map(HomologyClass::reduce_mod2).collect();
    let rhs: Vec<bool> = classes
        .iter()
        .map(|c| (target + base.eval_coords(c.coords())) % 2 == 1)
        .collect();
    LinearSystem::new(labels, MatGF2::from_rows(rank, rows)?, VecGF2::from_bools(&rhs))
}
