//! The `.pinlef` input format.
//!
//! ```text
//! # comments run to the end of the line
//! [surface]
//! kind = non-orientable      # or: orientable
//! crosscaps = 1              # orientable surfaces use `genus`
//! boundary = 1
//!
//! [cycles]
//! cycle = 2                  # one line per vanishing cycle, Z/4 residues
//!
//! [threefold]
//! genus = 1
//! attaching = 1, 1
//! belt = 1, 1
//!
//! [embedded-surface]         # repeatable; five mod-2 invariants
//! euler_char = 1
//! self_intersection = 1
//! cup_term = 0
//! w1sq_sigma = 1
//! w1sq_normal = 0
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use pinlef_core::{EmbeddedSurfaceData, HandlebodyDecomposition3, LefschetzFibration, Orientability, SurfaceModel};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing surface block")]
    MissingSurface,
    #[error("line {line}: {reason}")]
    At { line: usize, reason: String },
}

fn at(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::At {
        line,
        reason: reason.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldBlock {
    pub genus: u32,
    pub attaching: Vec<Vec<u8>>,
    pub belt: Vec<Vec<u8>>,
}

/// A validated input file. Coefficient rows use the fiber's canonical
/// generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub surface: SurfaceModel,
    pub cycles: Option<Vec<Vec<u8>>>,
    pub threefold: Option<ThreefoldBlock>,
    pub embedded: Vec<EmbeddedSurfaceData>,
}

impl InputDocument {
    pub fn fibration(&self) -> Option<LefschetzFibration> {
        let cycles = self.cycles.as_ref()?;
        Some(LefschetzFibration::from_coords(self.surface, cycles).expect("validated at parse time"))
    }

    pub fn decomposition(&self) -> Option<HandlebodyDecomposition3> {
        let t = self.threefold.as_ref()?;
        Some(HandlebodyDecomposition3::from_coords(t.genus, &t.attaching, &t.belt).expect("validated at parse time"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Section {
    Surface,
    Cycles,
    Threefold,
    Embedded,
}

impl Section {
    fn from_header(name: &str) -> Option<Self> {
        match name {
            "surface" => Some(Section::Surface),
            "cycles" => Some(Section::Cycles),
            "threefold" => Some(Section::Threefold),
            "embedded-surface" => Some(Section::Embedded),
            _ => None,
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            Section::Surface => &["kind", "genus", "crosscaps", "boundary"],
            Section::Cycles => &["cycle"],
            Section::Threefold => &["genus", "attaching", "belt"],
            Section::Embedded => &EMBEDDED_KEYS,
        }
    }

    fn repeatable(self, key: &str) -> bool {
        matches!(
            (self, key),
            (Section::Cycles, _) | (Section::Threefold, "attaching" | "belt")
        )
    }
}

const EMBEDDED_KEYS: [&str; 5] = [
    "euler_char",
    "self_intersection",
    "cup_term",
    "w1sq_sigma",
    "w1sq_normal",
];

/// One `[section]` with its entries as `(line, key, value)`.
struct Block<'a> {
    section: Section,
    line: usize,
    entries: Vec<(usize, &'a str, &'a str)>,
}

impl<'a> Block<'a> {
    fn single(&self, key: &str) -> Option<(usize, &'a str)> {
        self.entries.iter().find(|e| e.1 == key).map(|e| (e.0, e.2))
    }

    fn all(&self, key: &str) -> impl Iterator<Item = (usize, &'a str)> + '_ {
        let key = key.to_owned();
        self.entries.iter().filter(move |e| e.1 == key).map(|e| (e.0, e.2))
    }

    fn required(&self, key: &str) -> Result<(usize, &'a str), ParseError> {
        self.single(key)
            .ok_or_else(|| at(self.line, format!("[{}] block is missing `{key}`", self.name())))
    }

    fn name(&self) -> &'static str {
        match self.section {
            Section::Surface => "surface",
            Section::Cycles => "cycles",
            Section::Threefold => "threefold",
            Section::Embedded => "embedded-surface",
        }
    }
}

fn split_blocks(text: &str) -> Result<Vec<Block<'_>>, ParseError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let section = Section::from_header(name.trim())
                .ok_or_else(|| at(line, format!("unknown section [{}]", name.trim())))?;
            if section != Section::Embedded && blocks.iter().any(|b| b.section == section) {
                return Err(at(line, format!("duplicate [{}] block", name.trim())));
            }
            blocks.push(Block {
                section,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| at(line, format!("expected `key = value`, found `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let block = blocks
            .last_mut()
            .ok_or_else(|| at(line, format!("`{key}` appears before any section header")))?;
        if !block.section.keys().contains(&key) {
            return Err(at(line, format!("unknown key `{key}` in [{}]", block.name())));
        }
        if !block.section.repeatable(key) && block.single(key).is_some() {
            return Err(at(line, format!("duplicate key `{key}`")));
        }
        block.entries.push((line, key, value));
    }
    Ok(blocks)
}

fn parse_count(line: usize, key: &str, value: &str) -> Result<u32, ParseError> {
    value
        .parse()
        .map_err(|_| at(line, format!("`{key}` must be a non-negative integer, found `{value}`")))
}

fn parse_residues(line: usize, value: &str, modulus: u8) -> Result<Vec<u8>, ParseError> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|field| {
            let field = field.trim();
            let n: u64 = field
                .parse()
                .map_err(|_| at(line, format!("expected a residue, found `{field}`")))?;
            if n >= modulus as u64 {
                return Err(at(line, format!("residue {n} out of range for Z/{modulus}")));
            }
            Ok(n as u8)
        })
        .collect()
}

fn check_arity(line: usize, row: &[u8], surface: &SurfaceModel) -> Result<(), ParseError> {
    let r = surface.z2_rank();
    if row.len() != r {
        return Err(at(
            line,
            format!(
                "wrong arity: {} coefficients, but {surface} has {r} generator{}",
                row.len(),
                if r == 1 { "" } else { "s" }
            ),
        ));
    }
    Ok(())
}

fn parse_surface(block: &Block) -> Result<SurfaceModel, ParseError> {
    let (kind_line, kind) = block.required("kind")?;
    let (orientability, genus_key, wrong_key) = match kind {
        "orientable" => (Orientability::Orientable, "genus", "crosscaps"),
        "non-orientable" => (Orientability::NonOrientable, "crosscaps", "genus"),
        other => {
            return Err(at(
                kind_line,
                format!("unknown surface kind `{other}` (expected orientable or non-orientable)"),
            ))
        }
    };
    if let Some((line, _)) = block.single(wrong_key) {
        return Err(at(
            line,
            format!("unknown key `{wrong_key}` for a {kind} surface; use `{genus_key}`"),
        ));
    }
    let (genus_line, genus) = block.required(genus_key)?;
    let genus = parse_count(genus_line, genus_key, genus)?;
    let boundary = match block.single("boundary") {
        Some((line, v)) => parse_count(line, "boundary", v)?,
        None => 0,
    };
    SurfaceModel::new(orientability, genus, boundary).map_err(|e| at(genus_line, e.to_string()))
}

fn parse_cycles(block: &Block, surface: &SurfaceModel) -> Result<Vec<Vec<u8>>, ParseError> {
    let mut rows = Vec::new();
    for (line, value) in block.all("cycle") {
        let row = parse_residues(line, value, 4)?;
        check_arity(line, &row, surface)?;
        rows.push(row);
        LefschetzFibration::from_coords(*surface, &rows).map_err(|e| at(line, e.to_string()))?;
    }
    Ok(rows)
}

fn parse_threefold(block: &Block, surface: &SurfaceModel) -> Result<ThreefoldBlock, ParseError> {
    let (genus_line, genus) = block.required("genus")?;
    let genus = parse_count(genus_line, "genus", genus)?;
    if genus == 0 {
        return Err(at(genus_line, "handlebody genus must be at least 1"));
    }
    let boundary = SurfaceModel::non_orientable(2 * genus, 0).expect("genus >= 1");
    if *surface != boundary {
        return Err(at(
            block.line,
            format!("a genus-{genus} threefold lives on {boundary}, but the surface block gives {surface}"),
        ));
    }
    let read = |key: &str| -> Result<Vec<Vec<u8>>, ParseError> {
        let mut rows = Vec::new();
        for (line, value) in block.all(key) {
            let row = parse_residues(line, value, 4)?;
            check_arity(line, &row, surface)?;
            rows.push(row);
        }
        if rows.len() != genus as usize {
            return Err(at(
                block.line,
                format!("wrong arity: {} `{key}` rows for genus {genus}", rows.len()),
            ));
        }
        Ok(rows)
    };
    let attaching = read("attaching")?;
    let belt = read("belt")?;
    HandlebodyDecomposition3::from_coords(genus, &attaching, &belt).map_err(|e| at(block.line, e.to_string()))?;
    Ok(ThreefoldBlock { genus, attaching, belt })
}

fn parse_embedded(block: &Block) -> Result<EmbeddedSurfaceData, ParseError> {
    let mut values = [0u8; 5];
    for (slot, key) in values.iter_mut().zip(EMBEDDED_KEYS) {
        let (line, value) = block.required(key)?;
        let parsed = parse_residues(line, value, 2)?;
        let [v] = parsed[..] else {
            return Err(at(line, format!("wrong arity: `{key}` takes one mod-2 value")));
        };
        *slot = v;
    }
    Ok(EmbeddedSurfaceData::from_residues(values).expect("residues checked"))
}

pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let blocks = split_blocks(text)?;
    let by_section: HashMap<Section, &Block> = blocks
        .iter()
        .filter(|b| b.section != Section::Embedded)
        .map(|b| (b.section, b))
        .collect();
    let surface = parse_surface(by_section.get(&Section::Surface).ok_or(ParseError::MissingSurface)?)?;
    let cycles = by_section
        .get(&Section::Cycles)
        .map(|b| parse_cycles(b, &surface))
        .transpose()?;
    let threefold = by_section
        .get(&Section::Threefold)
        .map(|b| parse_threefold(b, &surface))
        .transpose()?;
    let embedded = blocks
        .iter()
        .filter(|b| b.section == Section::Embedded)
        .map(parse_embedded)
        .collect::<Result<_, _>>()?;
    Ok(InputDocument {
        surface,
        cycles,
        threefold,
        embedded,
    })
}

fn join(row: &[u8]) -> String {
    row.iter().map(u8::to_string).collect::<Vec<_>>().join(", ")
}

/// The canonical text of a document; `parse` inverts it.
pub fn serialize(doc: &InputDocument) -> String {
    let mut out = String::new();
    let s = &doc.surface;
    out.push_str("[surface]\n");
    match s.orientability() {
        Orientability::Orientable => {
            let _ = writeln!(out, "kind = orientable\ngenus = {}", s.genus());
        }
        Orientability::NonOrientable => {
            let _ = writeln!(out, "kind = non-orientable\ncrosscaps = {}", s.genus());
        }
    }
    let _ = writeln!(out, "boundary = {}", s.boundary_components());
    if let Some(cycles) = &doc.cycles {
        out.push_str("\n[cycles]\n");
        for c in cycles {
            let _ = writeln!(out, "cycle = {}", join(c));
        }
    }
    if let Some(t) = &doc.threefold {
        let _ = writeln!(out, "\n[threefold]\ngenus = {}", t.genus);
        for a in &t.attaching {
            let _ = writeln!(out, "attaching = {}", join(a));
        }
        for b in &t.belt {
            let _ = writeln!(out, "belt = {}", join(b));
        }
    }
    for e in &doc.embedded {
        out.push_str("\n[embedded-surface]\n");
        for (key, v) in EMBEDDED_KEYS.iter().zip(e.to_residues()) {
            let _ = writeln!(out, "{key} = {v}");
        }
    }
    out
}
