//! Command dispatch and report rendering.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::ValueEnum;
use pinlef_core::lefschetz::oracle::{brute_force_pin_minus, brute_force_pin_plus, MAX_ORACLE_RANK};
use pinlef_core::surfaces::surface_pin_plus_obstruction;
use pinlef_core::threefolds::oracle::{brute_force_pin_minus_3mfd, brute_force_pin_plus_3mfd};
use pinlef_core::{
    decide, decide_pin_minus_3mfd, decide_pin_plus_3mfd, eval_w1sq, eval_w2, homology_presentation,
    pin_obstruction_summary, DecisionReport, HandlebodyDecomposition3, LefschetzFibration, Orientability, PinKind,
    Surface,
};

use crate::document::{parse, InputDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Decide,
    Enumerate,
    Oracle,
    SurfaceInfo,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum KindSelection {
    Minus,
    Plus,
    #[default]
    Both,
}

impl KindSelection {
    pub fn kinds(self) -> &'static [PinKind] {
        match self {
            KindSelection::Minus => &[PinKind::Minus],
            KindSelection::Plus => &[PinKind::Plus],
            KindSelection::Both => &[PinKind::Plus, PinKind::Minus],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

/// Largest solution-space dimension `enumerate` will print.
pub const MAX_ENUMERATE_DIM: usize = 20;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

impl Report {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Report {
            text: format!("error: {message}\n"),
            exit_code: EXIT_INPUT,
        }
    }
}

/// Parses `text` and runs `command` on it; parse failures become exit 2.
pub fn execute(command: Command, text: &str, kind: KindSelection, format: Format) -> Report {
    match parse(text) {
        Ok(doc) => run(command, &doc, kind, format),
        Err(e) => Report::input_error(e),
    }
}

pub fn run(command: Command, doc: &InputDocument, kind: KindSelection, format: Format) -> Report {
    let mut out = Out::new(format);
    let result = match command {
        Command::Decide => run_decide(doc, kind, &mut out),
        Command::Enumerate => run_enumerate(doc, kind, &mut out),
        Command::Oracle => run_oracle(doc, kind, &mut out),
        Command::SurfaceInfo => {
            surface_info(doc, &mut out);
            Ok(true)
        }
    };
    match result {
        Ok(success) => Report {
            text: out.finish(),
            exit_code: if success { EXIT_YES } else { EXIT_NO },
        },
        Err(message) => Report::input_error(message),
    }
}

/// Text or `[section]` / `key = value` output.
struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn new(format: Format) -> Self {
        Out {
            format,
            buf: String::new(),
        }
    }

    fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    fn section(&mut self, name: &str) {
        if self.format == Format::Machine {
            if !self.buf.is_empty() {
                self.buf.push('\n');
            }
            let _ = writeln!(self.buf, "[{name}]");
        }
    }

    fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.format == Format::Machine {
            let _ = writeln!(self.buf, "{key} = {value}");
        }
    }

    fn finish(self) -> String {
        self.buf
    }
}

enum Subject {
    Fibration(LefschetzFibration),
    Threefold(HandlebodyDecomposition3),
}

impl Subject {
    fn name(&self) -> &'static str {
        match self {
            Subject::Fibration(_) => "fibration",
            Subject::Threefold(_) => "threefold",
        }
    }

    fn surface(&self) -> &Surface {
        match self {
            Subject::Fibration(f) => f.fiber(),
            Subject::Threefold(d) => d.boundary(),
        }
    }

    fn decide(&self, kind: PinKind) -> DecisionReport {
        match (self, kind) {
            (Subject::Fibration(f), _) => decide(f, kind),
            (Subject::Threefold(d), PinKind::Plus) => decide_pin_plus_3mfd(d),
            (Subject::Threefold(d), PinKind::Minus) => decide_pin_minus_3mfd(d),
        }
    }

    /// Value tables of every structure found by exhaustive search.
    fn search(&self, kind: PinKind) -> pinlef_core::Result<BTreeSet<Vec<u8>>> {
        let tables = match (self, kind) {
            (Subject::Fibration(f), PinKind::Minus) => values(brute_force_pin_minus(f)?.iter().map(|q| q.values())),
            (Subject::Fibration(f), PinKind::Plus) => values(brute_force_pin_plus(f)?.iter().map(|q| q.values())),
            (Subject::Threefold(d), PinKind::Minus) => {
                values(brute_force_pin_minus_3mfd(d)?.iter().map(|q| q.values()))
            }
            (Subject::Threefold(d), PinKind::Plus) => values(brute_force_pin_plus_3mfd(d)?.iter().map(|q| q.values())),
        };
        Ok(tables)
    }

    fn describe(&self, out: &mut Out) {
        let surface = self.surface();
        match self {
            Subject::Fibration(f) => {
                let n = f.cycles().len();
                out.text(format!(
                    "fibration: fiber {}, {n} vanishing cycle{}",
                    surface.model(),
                    plural(n as u128)
                ));
                for (label, c) in f.cycle_labels().iter().zip(f.cycles()) {
                    out.text(format!("  {label} = {}", surface.format_coords(c.coords())));
                }
                out.section("fibration");
                out.field("fiber", surface.model());
                for c in f.cycles() {
                    out.field("cycle", join(c.coords()));
                }
            }
            Subject::Threefold(d) => {
                out.text(format!(
                    "threefold: genus-{} handlebody, boundary {}",
                    d.genus(),
                    surface.model()
                ));
                for (label, c) in d.row_labels().iter().zip(d.classes()) {
                    out.text(format!("  {label} = {}", surface.format_coords(c.coords())));
                }
                out.section("threefold");
                out.field("boundary", surface.model());
                out.field("genus", d.genus());
            }
        }
    }
}

fn values<'a>(it: impl Iterator<Item = &'a [u8]>) -> BTreeSet<Vec<u8>> {
    it.map(<[u8]>::to_vec).collect()
}

fn subjects(doc: &InputDocument) -> Vec<Subject> {
    doc.fibration()
        .map(Subject::Fibration)
        .into_iter()
        .chain(doc.decomposition().map(Subject::Threefold))
        .collect()
}

fn plural(n: u128) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

fn join(v: &[u8]) -> String {
    v.iter().map(u8::to_string).collect::<Vec<_>>().join(", ")
}

/// `Pin+: YES (2 structures)` / `Pin-: NO (certificate: ...)`.
fn verdict(r: &DecisionReport) -> String {
    if r.exists {
        format!(
            "{}: YES ({} structure{})",
            r.kind,
            r.structure_count,
            plural(r.structure_count)
        )
    } else {
        match &r.certificate {
            Some(c) => format!("{}: NO (certificate: {c})", r.kind),
            None => format!("{}: NO", r.kind),
        }
    }
}

fn run_decide(doc: &InputDocument, kind: KindSelection, out: &mut Out) -> Result<bool, String> {
    let subjects = subjects(doc);
    if subjects.is_empty() && doc.embedded.is_empty() {
        return Err("nothing to decide: add a [cycles], [threefold] or [embedded-surface] block".into());
    }
    let mut all_yes = true;
    for subject in &subjects {
        subject.describe(out);
        let reports: Vec<DecisionReport> = kind.kinds().iter().map(|&k| subject.decide(k)).collect();
        out.text(format!("annihilator dimension: {}", reports[0].h1_annihilator_dim));
        out.field("annihilator_dim", reports[0].h1_annihilator_dim);
        out.text(reports.iter().map(verdict).collect::<Vec<_>>().join("; "));
        for r in &reports {
            all_yes &= r.exists;
            out.section("decision");
            out.field("subject", subject.name());
            out.field("kind", kind_key(r.kind));
            out.field("exists", r.exists);
            out.field("count", r.structure_count);
            if let Some(system) = &r.system {
                out.text(format!(
                    "{} system: rank {}, augmented rank {}",
                    r.kind, system.rank, system.augmented_rank
                ));
                out.field("rank", system.rank);
                out.field("augmented_rank", system.augmented_rank);
            }
            if let Some(c) = &r.certificate {
                out.field("certificate", c);
            }
            if matches!(subject, Subject::Threefold(_)) && r.kind == PinKind::Minus && !r.exists {
                out.text(
                    "note: every closed 3-manifold is Pin-, so these classes do not come from a genuine decomposition",
                );
            }
        }
        out.text("");
    }
    if !doc.embedded.is_empty() {
        all_yes &= charclasses(doc, kind, out);
    }
    Ok(all_yes)
}

fn kind_key(kind: PinKind) -> &'static str {
    match kind {
        PinKind::Minus => "minus",
        PinKind::Plus => "plus",
    }
}

fn bit(b: bool) -> u8 {
    b as u8
}

fn charclasses(doc: &InputDocument, kind: KindSelection, out: &mut Out) -> bool {
    for (i, d) in doc.embedded.iter().enumerate() {
        let (w2, w1sq) = (eval_w2(d), eval_w1sq(d));
        out.text(format!(
            "embedded surface {}: w2 = {}, w1² = {}",
            i + 1,
            bit(w2),
            bit(w1sq)
        ));
        out.section("embedded-surface");
        out.field("w2", bit(w2));
        out.field("w1sq", bit(w1sq));
    }
    let summary = pin_obstruction_summary(&doc.embedded);
    let mut parts = Vec::new();
    out.section("charclasses");
    let mut unobstructed = true;
    for &k in kind.kinds() {
        let (label, obstructed) = match k {
            PinKind::Plus => ("Pin⁺", summary.pin_plus_obstructed),
            PinKind::Minus => ("Pin⁻", summary.pin_minus_obstructed),
        };
        let word = if obstructed { "obstructed" } else { "unobstructed" };
        parts.push(format!("{label} {word}"));
        out.field(&format!("pin_{}", kind_key(k)), word);
        unobstructed &= !obstructed;
    }
    out.text(format!("characteristic classes: {}", parts.join(", ")));
    unobstructed
}

fn run_enumerate(doc: &InputDocument, kind: KindSelection, out: &mut Out) -> Result<bool, String> {
    let subjects = subjects(doc);
    if subjects.is_empty() {
        return Err("nothing to enumerate: add a [cycles] or [threefold] block".into());
    }
    let mut all_nonempty = true;
    for subject in &subjects {
        for &k in kind.kinds() {
            let report = subject.decide(k);
            if report.exists && report.h1_annihilator_dim > MAX_ENUMERATE_DIM {
                return Err(format!(
                    "refusing to enumerate 2^{} structures (limit 2^{MAX_ENUMERATE_DIM})",
                    report.h1_annihilator_dim
                ));
            }
            let surface = subject.surface();
            out.text(format!(
                "{k} structures on the {} ({}): {}",
                subject.name(),
                surface.model(),
                report.structure_count
            ));
            out.section("enumeration");
            out.field("subject", subject.name());
            out.field("kind", kind_key(k));
            out.field("generators", surface.generators().join(", "));
            out.field("count", report.structure_count);
            let tables: Vec<Vec<u8>> = report.structures().map(|q| q.values().to_vec()).collect();
            table(surface.generators(), &tables, out);
            for t in &tables {
                out.field("structure", join(t));
            }
            all_nonempty &= report.exists;
            out.text("");
        }
    }
    Ok(all_nonempty)
}

fn table(generators: &[String], rows: &[Vec<u8>], out: &mut Out) {
    let index_width = rows.len().saturating_sub(1).to_string().len().max(1);
    let mut header = format!("  {:>index_width$}", "#");
    for g in generators {
        let _ = write!(header, "  {g}");
    }
    out.text(header);
    for (i, row) in rows.iter().enumerate() {
        let mut line = format!("  {i:>index_width$}");
        for (g, v) in generators.iter().zip(row) {
            let _ = write!(line, "  {v:>w$}", w = g.len());
        }
        out.text(line);
    }
}

fn run_oracle(doc: &InputDocument, kind: KindSelection, out: &mut Out) -> Result<bool, String> {
    let subjects = subjects(doc);
    if subjects.is_empty() {
        return Err("nothing to check: add a [cycles] or [threefold] block".into());
    }
    if doc.surface.z2_rank() > MAX_ORACLE_RANK {
        return Err(format!(
            "oracle refused: z2 rank {} exceeds {MAX_ORACLE_RANK}",
            doc.surface.z2_rank()
        ));
    }
    let mut all_agree = true;
    for subject in &subjects {
        let rank = subject.surface().rank();
        out.text(format!(
            "oracle: {} on {}, exhaustive search over 2^{rank} enhancements per kind",
            subject.name(),
            subject.surface().model()
        ));
        for &k in kind.kinds() {
            let report = subject.decide(k);
            let decided: BTreeSet<Vec<u8>> = report.structures().map(|q| q.values().to_vec()).collect();
            let searched = subject.search(k).map_err(|e| e.to_string())?;
            let agree = report.exists == !searched.is_empty() && decided == searched;
            all_agree &= agree;
            let word = if agree { "AGREE" } else { "DISAGREE" };
            let yes_no = |b: bool| if b { "YES" } else { "NO" };
            out.text(format!(
                "{k}: {word} (decider {} with {}, search {} with {})",
                yes_no(report.exists),
                decided.len(),
                yes_no(!searched.is_empty()),
                searched.len()
            ));
            out.section("oracle");
            out.field("subject", subject.name());
            out.field("kind", kind_key(k));
            out.field("decider_count", decided.len());
            out.field("search_count", searched.len());
            out.field("verdict", word);
        }
        out.text("");
    }
    Ok(all_agree)
}

fn surface_info(doc: &InputDocument, out: &mut Out) {
    let model = doc.surface;
    let presentation = homology_presentation(&model);
    let surface = Surface::new(model);
    let (count_word, count) = match model.orientability() {
        Orientability::Orientable => ("genus", model.genus()),
        Orientability::NonOrientable => ("crosscaps", model.genus()),
    };
    out.text(format!(
        "surface: {model} ({}, {count_word} {count}, {} boundary component{})",
        model.orientability(),
        model.boundary_components(),
        plural(model.boundary_components() as u128)
    ));
    out.text(format!("euler characteristic: {}", model.euler_characteristic()));
    out.text(format!("z2 rank: {}", presentation.z2_rank()));
    out.text(format!("generators: {}", presentation.generators.join(" ")));
    out.section("surface");
    out.field("model", model);
    out.field("orientability", model.orientability());
    out.field(count_word, count);
    out.field("boundary", model.boundary_components());
    out.field("euler_characteristic", model.euler_characteristic());
    out.field("z2_rank", presentation.z2_rank());
    out.field("generators", presentation.generators.join(", "));

    out.text("intersection matrix:");
    for row in presentation.intersection.rows() {
        let residues = row.to_residues();
        out.text(format!(
            "  {}",
            residues.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
        ));
        out.field("intersection", join(&residues));
    }
    let relations = presentation.relations.to_rows();
    if relations.is_empty() {
        out.text("relations: none");
    } else {
        out.text("relations:");
        for r in &relations {
            out.text(format!("  {} = 0", surface.format_coords(r)));
            out.field("relation", join(r));
        }
    }
    match surface_pin_plus_obstruction(&model) {
        None => {
            out.text("Pin+ on the surface: YES");
            out.field("pin_plus", true);
        }
        Some(reason) => {
            out.text(format!("Pin+ on the surface: NO ({reason})"));
            out.field("pin_plus", false);
        }
    }
}
