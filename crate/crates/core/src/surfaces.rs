//! Compact surfaces, their first homology over Z/2 and Z/4, and the
//! quadratic enhancements that encode Pin structures on them.
//!
//! A Pin- structure on a surface is a map `q-: H_1(;Z/2) -> Z/4` with
//! `q(x + y) = q(x) + q(y) + 2 x.y`; a Pin+ structure is a map
//! `q+: H_1(;Z/4) -> Z/2` with `q(x + y) = q(x) + q(y) + x.y`, where the
//! pairing uses Z/2 reductions. Both are stored by their values on the
//! generators of the surface's fixed homology basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite_linalg::{MatGF2, MatZ4, RowModuleZ4, VecGF2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientability::Orientable => "orientable",
            Orientability::NonOrientable => "non-orientable",
        })
    }
}

/// A compact surface up to homeomorphism: orientable genus `g` (or `k`
/// crosscaps) with `b` boundary circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    orientability: Orientability,
    genus: u32,
    boundary: u32,
}

impl SurfaceModel {
    pub fn new(orientability: Orientability, genus: u32, boundary: u32) -> Result<Self> {
        if orientability == Orientability::NonOrientable && genus == 0 {
            return Err(Error::InvalidSurface(
                "a non-orientable surface needs at least one crosscap".into(),
            ));
        }
        Ok(Self {
            orientability,
            genus,
            boundary,
        })
    }

    /// `Σ_{g,b}`.
    pub fn orientable(genus: u32, boundary: u32) -> Self {
        Self {
            orientability: Orientability::Orientable,
            genus,
            boundary,
        }
    }

    /// `N_{k,b}`, the connected sum of `k` projective planes minus `b` disks.
    pub fn non_orientable(crosscaps: u32, boundary: u32) -> Result<Self> {
        Self::new(Orientability::NonOrientable, crosscaps, boundary)
    }

    pub fn mobius_band() -> Self {
        Self {
            orientability: Orientability::NonOrientable,
            genus: 1,
            boundary: 1,
        }
    }

    pub fn orientability(&self) -> Orientability {
        self.orientability
    }

    pub fn is_orientable(&self) -> bool {
        self.orientability == Orientability::Orientable
    }

    /// Genus for orientable surfaces, crosscap count otherwise.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_components(&self) -> u32 {
        self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        let handles = match self.orientability {
            Orientability::Orientable => 2 * self.genus as i64,
            Orientability::NonOrientable => self.genus as i64,
        };
        2 - handles - self.boundary as i64
    }

    /// Number of boundary-parallel classes in the basis.
    fn boundary_classes(&self) -> usize {
        self.boundary.saturating_sub(1) as usize
    }

    fn handle_generators(&self) -> usize {
        match self.orientability {
            Orientability::Orientable => 2 * self.genus as usize,
            Orientability::NonOrientable => self.genus as usize,
        }
    }

    /// Dimension of `H_1(;Z/2)`.
    pub fn z2_rank(&self) -> usize {
        self.handle_generators() + self.boundary_classes()
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientability {
            Orientability::Orientable => write!(f, "Σ_{{{},{}}}", self.genus, self.boundary),
            Orientability::NonOrientable => write!(f, "N_{{{},{}}}", self.genus, self.boundary),
        }
    }
}

/// The fixed homology basis of a surface model.
///
/// * `Σ_{g,b}`: `a1, b1, ..., ag, bg` with the standard symplectic form,
///   then boundary-parallel classes `d1, ..., d_{b-1}`.
/// * `N_{k,b}`: crosscap classes `e1, ..., ek` with `ei.ej = δij`, then
///   boundary-parallel classes `d1, ..., d_{b-1}`.
///
/// Boundary-parallel classes pair trivially with everything. The only Z/4
/// relation is `2(e1 + ... + ek) = 0` on a closed non-orientable surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub generators: Vec<String>,
    pub intersection: MatGF2,
    pub relations: MatZ4,
}

impl HomologyPresentation {
    pub fn z2_rank(&self) -> usize {
        self.generators.len()
    }
}

pub fn homology_presentation(s: &SurfaceModel) -> HomologyPresentation {
    let r = s.z2_rank();
    let mut generators = Vec::with_capacity(r);
    let mut form: Vec<VecGF2> = vec![VecGF2::zeros(r); r];
    match s.orientability {
        Orientability::Orientable => {
            for i in 1..=s.genus {
                generators.push(format!("a{i}"));
                generators.push(format!("b{i}"));
            }
            for h in 0..s.genus as usize {
                form[2 * h].set(2 * h + 1, true);
                form[2 * h + 1].set(2 * h, true);
            }
        }
        Orientability::NonOrientable => {
            for (i, row) in form.iter_mut().enumerate().take(s.genus as usize) {
                generators.push(format!("e{}", i + 1));
                row.set(i, true);
            }
        }
    }
    for i in 1..=s.boundary_classes() {
        generators.push(format!("d{i}"));
    }
    let relations = if s.orientability == Orientability::NonOrientable && s.is_closed() {
        let row: Vec<u8> = (0..r).map(|i| if i < s.genus as usize { 2 } else { 0 }).collect();
        MatZ4::from_rows(r, &[row]).expect("relation row has the generator count")
    } else {
        MatZ4::zeros(0, r)
    };
    HomologyPresentation {
        generators,
        intersection: MatGF2::from_rows(r, form).expect("square form"),
        relations,
    }
}

/// Whether the surface carries a Pin+ structure: everything except closed
/// non-orientable surfaces with an odd number of crosscaps.
pub fn pin_plus_exists_surface(s: &SurfaceModel) -> bool {
    surface_pin_plus_obstruction(s).is_none()
}

pub fn surface_pin_plus_obstruction(s: &SurfaceModel) -> Option<SurfaceObstruction> {
    (s.orientability == Orientability::NonOrientable && s.is_closed() && s.genus % 2 == 1)
        .then_some(SurfaceObstruction::ClosedOddCrosscaps { crosscaps: s.genus })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceObstruction {
    /// Closed non-orientable with odd Euler characteristic; `w2 != 0`.
    ClosedOddCrosscaps { crosscaps: u32 },
}

impl fmt::Display for SurfaceObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceObstruction::ClosedOddCrosscaps { crosscaps } => write!(
                f,
                "fiber has no Pin+ structure: closed non-orientable, odd crosscaps (k={crosscaps})"
            ),
        }
    }
}

/// A surface model together with its homology presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    model: SurfaceModel,
    presentation: HomologyPresentation,
    relation_module: RowModuleZ4,
}

impl Surface {
    pub fn new(model: SurfaceModel) -> Self {
        let presentation = homology_presentation(&model);
        let relation_module = RowModuleZ4::new(&presentation.relations);
        Self {
            model,
            presentation,
            relation_module,
        }
    }

    pub fn shared(model: SurfaceModel) -> Arc<Self> {
        Arc::new(Self::new(model))
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn presentation(&self) -> &HomologyPresentation {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.presentation.z2_rank()
    }

    pub fn generators(&self) -> &[String] {
        &self.presentation.generators
    }

    /// `x.y` over Z/2.
    pub fn intersection(&self, x: &VecGF2, y: &VecGF2) -> bool {
        x.ones()
            .fold(false, |acc, i| acc ^ self.presentation.intersection.row(i).dot(y))
    }

    pub fn self_intersection(&self, x: &VecGF2) -> bool {
        self.intersection(x, x)
    }

    /// Generator self-intersections `e.e` as 0/1.
    pub fn generator_squares(&self) -> Vec<u8> {
        (0..self.rank())
            .map(|i| self.presentation.intersection.get(i, i) as u8)
            .collect()
    }

    pub fn check_class(&self, x: &HomologyClass) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                what: "homology class",
                expected: self.rank(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Whether Z/4 coordinates `v` represent the zero class.
    pub fn is_relation(&self, v: &[u8]) -> bool {
        self.relation_module.contains(v)
    }

    /// Equality of classes; Z/4 classes are compared modulo the relations.
    pub fn classes_equal(&self, a: &HomologyClass, b: &HomologyClass) -> Result<bool> {
        self.check_class(a)?;
        self.check_class(b)?;
        if a.ring != b.ring {
            return Err(Error::RingMismatch {
                expected: a.ring.name(),
                found: b.ring.name(),
            });
        }
        let m = a.ring.modulus();
        let diff: Vec<u8> = a.coords.iter().zip(&b.coords).map(|(x, y)| (x + m - y) % m).collect();
        Ok(match a.ring {
            CoefficientRing::Z2 => diff.iter().all(|&e| e == 0),
            CoefficientRing::Z4 => self.is_relation(&diff),
        })
    }

    /// Formats Z/4 or Z/2 coordinates as a sum of generator labels.
    pub fn format_coords(&self, coords: &[u8]) -> String {
        let terms: Vec<String> = coords
            .iter()
            .zip(self.generators())
            .filter(|(&c, _)| c != 0)
            .map(|(&c, g)| if c == 1 { g.clone() } else { format!("{c}{g}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Z2,
    Z4,
}

impl CoefficientRing {
    pub fn modulus(self) -> u8 {
        match self {
            CoefficientRing::Z2 => 2,
            CoefficientRing::Z4 => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CoefficientRing::Z2 => "Z/2",
            CoefficientRing::Z4 => "Z/4",
        }
    }
}

/// Coordinates of a homology class over the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    ring: CoefficientRing,
    coords: Vec<u8>,
}

impl HomologyClass {
    pub fn new(ring: CoefficientRing, coords: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= ring.modulus()) {
            return Err(Error::ResidueOutOfRange {
                value: bad as u64,
                modulus: ring.modulus(),
            });
        }
        Ok(Self { ring, coords })
    }

    pub fn z2(coords: Vec<u8>) -> Result<Self> {
        Self::new(CoefficientRing::Z2, coords)
    }

    pub fn z4(coords: Vec<u8>) -> Result<Self> {
        Self::new(CoefficientRing::Z4, coords)
    }

    pub fn zero(ring: CoefficientRing, len: usize) -> Self {
        Self {
            ring,
            coords: vec![0; len],
        }
    }

    pub fn from_bits(bits: &VecGF2) -> Self {
        Self {
            ring: CoefficientRing::Z2,
            coords: bits.to_residues(),
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn reduce_mod2(&self) -> VecGF2 {
        VecGF2::from_residues(&self.coords)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PinKind {
    Minus,
    Plus,
}

impl fmt::Display for PinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PinKind::Minus => "Pin-",
            PinKind::Plus => "Pin+",
        })
    }
}

fn check_gamma(surface: &Surface, gamma: &VecGF2) -> Result<()> {
    if gamma.len() != surface.rank() {
        return Err(Error::DimensionMismatch {
            what: "cohomology class",
            expected: surface.rank(),
            found: gamma.len(),
        });
    }
    Ok(())
}

/// Sum of `x_i x_j (g_i . g_j)` over `i < j`, as an integer.
fn cross_terms(surface: &Surface, weights: &[u8]) -> u32 {
    let form = &surface.presentation.intersection;
    let mut total = 0u32;
    for (i, &wi) in weights.iter().enumerate() {
        if wi == 0 {
            continue;
        }
        for j in form.row(i).ones().filter(|&j| j > i) {
            total += wi as u32 * weights[j] as u32;
        }
    }
    total
}

/// A Pin- enhancement `q-: H_1(;Z/2) -> Z/4`, stored by generator values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancementMinus {
    surface: Arc<Surface>,
    values: Vec<u8>,
}

impl EnhancementMinus {
    /// Checks `values[i] < 4` and the parity law `q(e) ≡ e.e (mod 2)`.
    pub fn new(surface: Arc<Surface>, values: Vec<u8>) -> Result<Self> {
        if values.len() != surface.rank() {
            return Err(Error::DimensionMismatch {
                what: "enhancement values",
                expected: surface.rank(),
                found: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v > 3) {
            return Err(Error::ResidueOutOfRange {
                value: bad as u64,
                modulus: 4,
            });
        }
        let squares = surface.generator_squares();
        if let Some(i) = (0..values.len()).find(|&i| values[i] % 2 != squares[i]) {
            return Err(Error::InvariantViolation(format!(
                "q-({}) = {} but {0}.{0} = {}",
                surface.generators()[i],
                values[i],
                squares[i]
            )));
        }
        Ok(Self { surface, values })
    }

    /// The base enhancement `q0-` with `q0-(e) = e.e`.
    pub fn base(surface: Arc<Surface>) -> Self {
        let values = surface.generator_squares();
        Self { surface, values }
    }

    pub fn surface(&self) -> &Arc<Surface> {
        &self.surface
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// `q-(x)` for Z/2 coordinates given as a bit vector.
    pub fn eval_bits(&self, x: &VecGF2) -> u8 {
        let weights = x.to_residues();
        let linear: u32 = x.ones().map(|i| self.values[i] as u32).sum();
        ((linear + 2 * cross_terms(&self.surface, &weights)) % 4) as u8
    }

    pub fn eval(&self, x: &HomologyClass) -> Result<u8> {
        if x.ring != CoefficientRing::Z2 {
            return Err(Error::RingMismatch {
                expected: "Z/2",
                found: x.ring.name(),
            });
        }
        self.surface.check_class(x)?;
        Ok(self.eval_bits(&x.reduce_mod2()))
    }

    /// `q_γ(x) = q(x) + 2 γ(x)`.
    pub fn act(&self, gamma: &VecGF2) -> Result<Self> {
        check_gamma(&self.surface, gamma)?;
        let mut values = self.values.clone();
        for i in gamma.ones() {
            values[i] = (values[i] + 2) % 4;
        }
        Ok(Self {
            surface: self.surface.clone(),
            values,
        })
    }
}

/// A Pin+ enhancement `q+: H_1(;Z/4) -> Z/2`, stored by generator values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancementPlus {
    surface: Arc<Surface>,
    values: Vec<u8>,
}

/// `q+` of Z/4 coordinates from generator values, without any checks.
fn qplus_formula(surface: &Surface, values: &[u8], coords: &[u8]) -> u8 {
    let squares = surface.generator_squares();
    let mut total = 0u32;
    for (i, &a) in coords.iter().enumerate() {
        let a = a as u32;
        total += a * values[i] as u32;
        // binom(a, 2) for a in 0..4 is 0, 0, 1, 3
        total += (a * a.saturating_sub(1) / 2) * squares[i] as u32;
    }
    total += cross_terms(surface, coords);
    (total % 2) as u8
}

impl EnhancementPlus {
    /// Checks `values[i] < 2` and that `q+` is well defined on torsion:
    /// every relation row evaluates to 0 and pairs trivially with the
    /// whole basis.
    pub fn new(surface: Arc<Surface>, values: Vec<u8>) -> Result<Self> {
        if values.len() != surface.rank() {
            return Err(Error::DimensionMismatch {
                what: "enhancement values",
                expected: surface.rank(),
                found: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v > 1) {
            return Err(Error::ResidueOutOfRange {
                value: bad as u64,
                modulus: 2,
            });
        }
        for (idx, rho) in surface.presentation.relations.rows().enumerate() {
            let value = qplus_formula(&surface, &values, rho);
            let reduced = VecGF2::from_residues(rho);
            let radical =
                (0..surface.rank()).all(|i| !surface.intersection(&reduced, &VecGF2::unit(surface.rank(), i)));
            if value != 0 || !radical {
                return Err(Error::RepresentativeDependence { relation: idx, value });
            }
        }
        Ok(Self { surface, values })
    }

    /// The base enhancement `q0+`, zero on every generator; absent when the
    /// surface has no Pin+ structure.
    pub fn base(surface: Arc<Surface>) -> Result<Self> {
        let r = surface.rank();
        Self::new(surface, vec![0; r])
    }

    pub fn surface(&self) -> &Arc<Surface> {
        &self.surface
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// `q+` of raw Z/4 coordinates.
    pub fn eval_coords(&self, coords: &[u8]) -> u8 {
        qplus_formula(&self.surface, &self.values, coords)
    }

    pub fn eval(&self, x: &HomologyClass) -> Result<u8> {
        if x.ring != CoefficientRing::Z4 {
            return Err(Error::RingMismatch {
                expected: "Z/4",
                found: x.ring.name(),
            });
        }
        self.surface.check_class(x)?;
        Ok(self.eval_coords(&x.coords))
    }

    /// `q_γ(x) = q(x) + γ(x)`, with `γ` applied to the Z/2 reduction.
    pub fn act(&self, gamma: &VecGF2) -> Result<Self> {
        check_gamma(&self.surface, gamma)?;
        let mut values = self.values.clone();
        for i in gamma.ones() {
            values[i] ^= 1;
        }
        Ok(Self {
            surface: self.surface.clone(),
            values,
        })
    }
}

pub fn eval_qminus(q: &EnhancementMinus, x: &HomologyClass) -> Result<u8> {
    q.eval(x)
}

pub fn eval_qplus(q: &EnhancementPlus, x: &HomologyClass) -> Result<u8> {
    q.eval(x)
}

/// Either kind of enhancement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enhancement {
    Minus(EnhancementMinus),
    Plus(EnhancementPlus),
}

impl Enhancement {
    pub fn kind(&self) -> PinKind {
        match self {
            Enhancement::Minus(_) => PinKind::Minus,
            Enhancement::Plus(_) => PinKind::Plus,
        }
    }

    pub fn values(&self) -> &[u8] {
        match self {
            Enhancement::Minus(q) => q.values(),
            Enhancement::Plus(q) => q.values(),
        }
    }

    pub fn surface(&self) -> &Arc<Surface> {
        match self {
            Enhancement::Minus(q) => q.surface(),
            Enhancement::Plus(q) => q.surface(),
        }
    }

    /// Evaluates on a class of the matching ring (Z/2 for Pin-, Z/4 for Pin+).
    pub fn eval(&self, x: &HomologyClass) -> Result<u8> {
        match self {
            Enhancement::Minus(q) => q.eval(x),
            Enhancement::Plus(q) => q.eval(x),
        }
    }

    pub fn act(&self, gamma: &VecGF2) -> Result<Self> {
        Ok(match self {
            Enhancement::Minus(q) => Enhancement::Minus(q.act(gamma)?),
            Enhancement::Plus(q) => Enhancement::Plus(q.act(gamma)?),
        })
    }

    pub fn as_minus(&self) -> Option<&EnhancementMinus> {
        match self {
            Enhancement::Minus(q) => Some(q),
            Enhancement::Plus(_) => None,
        }
    }

    pub fn as_plus(&self) -> Option<&EnhancementPlus> {
        match self {
            Enhancement::Plus(q) => Some(q),
            Enhancement::Minus(_) => None,
        }
    }
}

/// The action of `H^1(Σ;Z/2)` on enhancements.
pub fn act_h1(q: &Enhancement, gamma: &VecGF2) -> Result<Enhancement> {
    q.act(gamma)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancementSet {
    pub kind: PinKind,
    pub structures: Vec<Enhancement>,
    pub obstruction: Option<SurfaceObstruction>,
}

/// Largest rank for which [`enumerate_enhancements`] will materialise all
/// `2^rank` enhancements.
pub const MAX_ENUMERATION_RANK: usize = 24;

/// All enhancements of the given kind, ordered lexicographically by their
/// offset from the base enhancement.
///
/// # Panics
///
/// Panics if the surface rank exceeds [`MAX_ENUMERATION_RANK`].
pub fn enumerate_enhancements(surface: &Arc<Surface>, kind: PinKind) -> EnhancementSet {
    let r = surface.rank();
    assert!(r <= MAX_ENUMERATION_RANK, "refusing to enumerate 2^{r} enhancements");
    let offsets = (0u64..1 << r)
        .map(|idx| VecGF2::from_bools(&(0..r).map(|i| (idx >> (r - 1 - i)) & 1 == 1).collect::<Vec<_>>()));
    match kind {
        PinKind::Minus => {
            let base = EnhancementMinus::base(surface.clone());
            EnhancementSet {
                kind,
                structures: offsets
                    .map(|s| Enhancement::Minus(base.act(&s).expect("rank matches")))
                    .collect(),
                obstruction: None,
            }
        }
        PinKind::Plus => match EnhancementPlus::base(surface.clone()) {
            Ok(base) => EnhancementSet {
                kind,
                structures: offsets
                    .map(|s| Enhancement::Plus(base.act(&s).expect("rank matches")))
                    .collect(),
                obstruction: None,
            },
            Err(_) => EnhancementSet {
                kind,
                structures: Vec::new(),
                obstruction: surface_pin_plus_obstruction(surface.model()),
            },
        },
    }
}
