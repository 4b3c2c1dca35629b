//! One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{
    gf2_span_rank, multisets, surfaces_up_to_rank, two_sided_pool, z2_vectors, z4_index, z4_span_mask, z4_vectors,
};
use pinlef_core::finite_linalg::{howell_z4, rref_gf2, MatGF2, MatZ4, RowModuleZ4, VecGF2};
use pinlef_core::lefschetz::oracle::{brute_force_pin_minus, brute_force_pin_plus};
use pinlef_core::threefolds::oracle::brute_force_pin_plus_3mfd;
use pinlef_core::{
    construct_pin_minus_3mfd, decide_pin_minus, decide_pin_minus_3mfd, decide_pin_plus, decide_pin_plus_3mfd,
    enumerate_enhancements, eval_w1sq, eval_w2, fibration_h1_annihilator, pin_obstruction_summary,
    theorem1_witness_search, Certificate, DecisionReport, EmbeddedSurfaceData, HandlebodyDecomposition3, HomologyClass,
    LefschetzFibration, PinKind, Surface, SurfaceModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fibration(model: SurfaceModel, cycles: &[&[u8]]) -> LefschetzFibration {
    LefschetzFibration::from_coords(model, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn rp4_regression() -> Outcome {
    let start = Instant::now();
    let f = fibration(SurfaceModel::mobius_band(), &[&[2]]);
    let plus = decide_pin_plus(&f);
    let minus = decide_pin_minus(&f);
    let witness = theorem1_witness_search(&f);
    let elapsed = start.elapsed();

    ensure!(plus.exists && plus.structure_count == 2, "Pin+ report {plus:?}");
    ensure!(plus.structures().count() == 2, "Pin+ enumeration size");
    ensure!(!minus.exists && minus.structure_count == 0, "Pin- report {minus:?}");
    let Some(Certificate::CycleRelation(cert)) = &minus.certificate else {
        return Err(format!("unexpected certificate {:?}", minus.certificate));
    };
    ensure!(cert.k() == 0 && cert.c0 == 0, "certificate {cert:?}");
    ensure!(
        f.fiber().format_coords(f.cycles()[0].coords()) == "2e1",
        "cycle is not 2e1"
    );
    ensure!(cert.to_string() == "q⁻(c₁)=0≠2", "certificate text {cert}");
    let witness = witness.ok_or("no witness")?;
    ensure!(witness.k() == 0, "witness {witness:?}");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("2 Pin+ structures, q⁻(2e1)=0≠2, {elapsed:?}"))
}

fn twisted_s2_rp2() -> Outcome {
    // e1 is the crosscap; e2..e6 are two-sided classes
    let f = fibration(
        SurfaceModel::non_orientable(1, 6).unwrap(),
        &[&[0, 1, 0, 0, 0, 1], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 0, 0, 1]],
    );
    ensure!(f.fiber().rank() >= 6, "fiber rank {}", f.fiber().rank());
    let minus = decide_pin_minus(&f);
    ensure!(!minus.exists, "Pin- unexpectedly exists");
    let w = theorem1_witness_search(&f).ok_or("no witness")?;
    ensure!(w.k() == 2 && w.pairwise_intersections == 0, "witness {w:?}");
    ensure!(w.c0 == 0 && w.summands == [1, 2], "witness {w:?}");
    ensure!(w.is_obstruction(), "witness is not an obstruction");
    Ok(format!("witness {w}"))
}

fn s2_times_rp2() -> Outcome {
    let f = fibration(
        SurfaceModel::non_orientable(1, 7).unwrap(),
        &[
            &[2, 1, 0, 0, 0, 1, 1],
            &[0, 1, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 0, 1],
        ],
    );
    ensure!(f.fiber().self_intersection(&VecGF2::unit(7, 0)), "e1·e1 must be 1");
    let plus = decide_pin_plus(&f);
    let system = plus.system.as_ref().ok_or("no system")?;
    ensure!(system.rank != system.augmented_rank, "ranks agree");
    ensure!(!plus.exists, "Pin+ unexpectedly exists");
    Ok(format!("rank(C)={} rank(C|A)={}", system.rank, system.augmented_rank))
}

fn charclass_example() -> Outcome {
    let d = EmbeddedSurfaceData::rp2_in_rp4();
    ensure!(!eval_w2(&d), "w2 != 0");
    ensure!(eval_w1sq(&d), "w1² != 1");
    let summary = pin_obstruction_summary(&[d]);
    ensure!(
        !summary.pin_plus_obstructed && summary.pin_minus_obstructed,
        "summary {summary:?}"
    );
    Ok("Pin⁺ unobstructed, Pin⁻ obstructed".into())
}

/// Full multiset enumeration on rank <= 2 fibers, then seeded samples on
/// rank <= 4 fibers.
fn fibration_corpus() -> Vec<LefschetzFibration> {
    let mut out = Vec::new();
    let models = surfaces_up_to_rank(4);
    for model in models.iter().filter(|m| m.z2_rank() <= 2) {
        let fiber = Surface::shared(*model);
        let pool = two_sided_pool(&fiber);
        for n in 0..=4 {
            for picks in multisets(pool.len(), n) {
                out.push(from_pool(&fiber, &pool, &picks));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ef5c4e7);
    for _ in 0..1500 {
        let model = models[rng.gen_range(0..models.len())];
        let fiber = Surface::shared(model);
        let pool = two_sided_pool(&fiber);
        let n = rng.gen_range(0..=4);
        let mut picks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..pool.len())).collect();
        picks.sort_unstable();
        out.push(from_pool(&fiber, &pool, &picks));
    }
    out
}

fn from_pool(fiber: &Arc<Surface>, pool: &[Vec<u8>], picks: &[usize]) -> LefschetzFibration {
    let cycles = picks
        .iter()
        .map(|&i| HomologyClass::z4(pool[i].clone()).unwrap())
        .collect();
    LefschetzFibration::new(fiber.clone(), cycles).unwrap()
}

fn pin_minus_equivalence(corpus: &[LefschetzFibration]) -> Outcome {
    let start = Instant::now();
    let mut obstructed = 0;
    for f in corpus {
        let report = decide_pin_minus(f);
        let witness = theorem1_witness_search(f);
        ensure!(witness.is_some() == !report.exists, "mismatch on {:?}", f.cycles());
        if let Some(w) = witness {
            ensure!(w.is_obstruction(), "bad witness {w:?}");
            obstructed += 1;
        }
        let brute = brute_force_pin_minus(f).map_err(|e| e.to_string())?;
        ensure!(report.exists == !brute.is_empty(), "decider disagrees with search");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{} instances, {obstructed} obstructed, {elapsed:?}",
        corpus.len()
    ))
}

fn pin_plus_equivalence(corpus: &[LefschetzFibration]) -> Outcome {
    let mut obstructed = 0;
    for f in corpus {
        let report = decide_pin_plus(f);
        let brute = brute_force_pin_plus(f).map_err(|e| e.to_string())?;
        ensure!(
            report.exists == !brute.is_empty(),
            "verdict mismatch on {:?}",
            f.cycles()
        );
        let ours: BTreeSet<Vec<u8>> = report.structures().map(|q| q.values().to_vec()).collect();
        let theirs: BTreeSet<Vec<u8>> = brute.iter().map(|q| q.values().to_vec()).collect();
        ensure!(ours == theirs, "structure sets differ on {:?}", f.cycles());
        obstructed += !report.exists as usize;
    }
    Ok(format!("{} instances, {obstructed} obstructed", corpus.len()))
}

fn orbit_check(f: &LefschetzFibration, report: &DecisionReport, basis: &[VecGF2]) -> Result<(), String> {
    ensure!(
        report.structure_count == 1u128 << basis.len(),
        "count {} vs 2^{}",
        report.structure_count,
        basis.len()
    );
    let q = report.canonical().ok_or("no canonical structure")?;
    let rank = f.fiber().rank();
    let mut orbit = BTreeSet::new();
    for mask in 0u32..1 << basis.len() {
        let mut gamma = VecGF2::zeros(rank);
        for (i, b) in basis.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                gamma.add_assign(b);
            }
        }
        orbit.insert(q.act(&gamma).map_err(|e| e.to_string())?.values().to_vec());
    }
    ensure!(orbit.len() == 1 << basis.len(), "action is not free");
    let enumerated: BTreeSet<Vec<u8>> = report.structures().map(|s| s.values().to_vec()).collect();
    ensure!(orbit == enumerated, "orbit differs from enumeration");
    Ok(())
}

fn counting_law(corpus: &[LefschetzFibration]) -> Outcome {
    let mut checked = 0;
    for f in corpus {
        let basis = fibration_h1_annihilator(f);
        for report in [decide_pin_minus(f), decide_pin_plus(f)] {
            if report.exists {
                orbit_check(f, &report, &basis).map_err(|e| format!("{e} on {:?}", f.cycles()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} solvable systems"))
}

fn add_z4(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| (x + y) % 4).collect()
}

fn enhancement_axioms() -> Outcome {
    let mut structures = 0;
    for model in surfaces_up_to_rank(4) {
        let s = Surface::shared(model);
        let z2 = z2_vectors(s.rank());
        for q in enumerate_enhancements(&s, PinKind::Minus).structures {
            let q = q.as_minus().unwrap().clone();
            for x in &z2 {
                ensure!(q.eval_bits(x) % 2 == s.self_intersection(x) as u8, "parity on {model}");
                for y in &z2 {
                    let rhs = (q.eval_bits(x) + q.eval_bits(y) + 2 * s.intersection(x, y) as u8) % 4;
                    ensure!(q.eval_bits(&x.add(y)) == rhs, "q- relation on {model}");
                }
            }
            structures += 1;
        }
        let z4 = z4_vectors(s.rank());
        let reductions: Vec<VecGF2> = z4.iter().map(|v| VecGF2::from_residues(v)).collect();
        for q in enumerate_enhancements(&s, PinKind::Plus).structures {
            let q = q.as_plus().unwrap().clone();
            let values: Vec<u8> = z4.iter().map(|v| q.eval_coords(v)).collect();
            for (i, x) in z4.iter().enumerate() {
                for (j, y) in z4.iter().enumerate() {
                    let rhs = (values[i] + values[j] + s.intersection(&reductions[i], &reductions[j]) as u8) % 2;
                    ensure!(values[z4_index(&add_z4(x, y))] == rhs, "q+ relation on {model}");
                }
            }
            structures += 1;
        }
    }
    Ok(format!("{structures} enhancements"))
}

fn random_two_sided(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut v: Vec<u8> = (0..len).map(|_| rng.gen_range(0..4)).collect();
    if v.iter().filter(|&&e| e % 2 == 1).count() % 2 == 1 {
        v[0] = (v[0] + 1) % 4;
    }
    v
}

fn threefold_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3f01d);
    let mut constructed = 0;
    let configs = 250;
    for _ in 0..configs {
        let g: u32 = rng.gen_range(1..=2);
        let len = 2 * g as usize;
        let a: Vec<Vec<u8>> = (0..g).map(|_| random_two_sided(&mut rng, len)).collect();
        let b: Vec<Vec<u8>> = (0..g).map(|_| random_two_sided(&mut rng, len)).collect();
        let d = HandlebodyDecomposition3::from_coords(g, &a, &b).map_err(|e| e.to_string())?;
        let report = decide_pin_plus_3mfd(&d);
        let brute = brute_force_pin_plus_3mfd(&d).map_err(|e| e.to_string())?;
        ensure!(report.exists == !brute.is_empty(), "Pin+ mismatch on {a:?} {b:?}");
        let consistent = decide_pin_minus_3mfd(&d).exists;
        match construct_pin_minus_3mfd(&d) {
            Ok(q) => {
                ensure!(consistent, "constructed from an inconsistent system");
                for c in d.classes() {
                    ensure!(q.eval_bits(&c.reduce_mod2()) == 0, "q- nonzero on {c:?}");
                }
                constructed += 1;
            }
            Err(e) => ensure!(!consistent, "construction failed on a consistent system: {e}"),
        }
    }
    Ok(format!("{configs} configurations, {constructed} Pin- constructed"))
}

fn linalg_kernels() -> Outcome {
    let mut howell_cases = 0;
    for cols in 1..=3usize {
        let max_rows = if cols == 3 { 3 } else { 4 };
        let mut canonical: HashMap<u64, MatZ4> = HashMap::new();
        for rows in 0..=max_rows {
            for entries in z4_vectors(rows * cols) {
                let data: Vec<Vec<u8>> = entries.chunks(cols).map(<[u8]>::to_vec).collect();
                let m = MatZ4::from_rows(cols, &data).map_err(|e| e.to_string())?;
                let h = howell_z4(&m);
                ensure!(howell_z4(&h) == h, "not idempotent on {m:?}");
                let members = z4_span_mask(&m);
                ensure!(z4_span_mask(&h) == members, "module changed on {m:?}");
                let module = RowModuleZ4::new(&m);
                for v in z4_vectors(cols) {
                    ensure!(
                        module.contains(&v) == ((members >> z4_index(&v)) & 1 == 1),
                        "membership of {v:?} in {m:?}"
                    );
                }
                if let Some(prev) = canonical.insert(members, h.clone()) {
                    ensure!(prev == h, "two Howell forms for one module");
                }
                howell_cases += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xec4e1);
    for _ in 0..2000 {
        let rows = rng.gen_range(0..=6);
        let cols = rng.gen_range(1..=6);
        let data: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..2)).collect())
            .collect();
        let m = MatGF2::from_residue_rows(cols, &data).map_err(|e| e.to_string())?;
        ensure!(rref_gf2(&m).rank == gf2_span_rank(&m), "rank mismatch on {m:?}");
    }
    Ok(format!("{howell_cases} Z/4 matrices, 2000 GF(2) matrices"))
}

fn main() -> ExitCode {
    let corpus = fibration_corpus();
    let criteria: Vec<Criterion> = vec![
        ("RP4 regression", Box::new(rp4_regression)),
        ("twisted S2xRP2 Pin- witness", Box::new(twisted_s2_rp2)),
        ("S2xRP2 Pin+ rank mismatch", Box::new(s2_times_rp2)),
        ("RP2 in RP4 characteristic classes", Box::new(charclass_example)),
        ("Pin- witness equivalence", Box::new(|| pin_minus_equivalence(&corpus))),
        (
            "Pin+ decider vs exhaustive search",
            Box::new(|| pin_plus_equivalence(&corpus)),
        ),
        ("counting law and free orbit", Box::new(|| counting_law(&corpus))),
        ("enhancement axioms", Box::new(enhancement_axioms)),
        ("3-manifold deciders", Box::new(threefold_checks)),
        ("Howell form and rref kernels", Box::new(linalg_kernels)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
