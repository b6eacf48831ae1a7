//! Acceptance report: one PASS/FAIL line per criterion, with NOTE lines for
//! the evidence behind each verdict and INFO lines for runs that are not
//! part of the gate. Exits nonzero when any criterion fails.
//!
//!     cargo test --release --test acceptance

mod common;

use std::collections::HashMap;
use std::time::Instant;

use toric_codes::classify::{catalog, class_by_id, verify_theorem1, RowStatus};
use toric_codes::code::{build_code, Mode, WeightEnumerator};
use toric_codes::gf::FieldSpec;
use toric_codes::invariants::{
    distinguish, n1_weight, n2_weight, predicted_distance, predicted_n1, predicted_n2, Verdict,
};
use toric_codes::lattice::lattice_equivalent;
use toric_codes::tables::{compare, table, TableRow};

struct Run {
    workers: usize,
    cache: HashMap<(usize, String), WeightEnumerator>,
    failed: Vec<String>,
}

impl Run {
    fn enumerator(&mut self, class: &str, q: usize, mode: Mode) -> WeightEnumerator {
        let workers = self.workers;
        self.cache
            .entry((q, class.to_string()))
            .or_insert_with(|| {
                let f = FieldSpec::with_order(q).unwrap();
                build_code(&f, &class_by_id(class).unwrap().polygon).unwrap().weight_enumerator(mode, workers)
            })
            .clone()
    }

    fn verdict(&mut self, id: &str, ok: bool, text: &str, started: Instant) {
        let secs = started.elapsed().as_secs_f64();
        println!("{} {id} {text} ({secs:.1} s)", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(id.to_string());
        }
    }
}

fn note(s: impl AsRef<str>) {
    println!("    NOTE {}", s.as_ref());
}

/// Compares every row of one table field; returns (rows, mismatched rows).
fn table_field(run: &mut Run, name: &str, q: usize, mode: Mode) -> (usize, Vec<TableRow>) {
    let t = table(name).unwrap();
    let rows = t.field(q).unwrap().rows.clone();
    let mut bad = Vec::new();
    for row in &rows {
        let e = run.enumerator(&row.class, q, mode);
        let c = compare(row, &e);
        for i in c.mismatches() {
            let (w, listed) = c.expected[i];
            let got = c.computed.get(i).copied();
            note(format!("{name} F_{q} {}: listed A_{w} = {listed}, computed {got:?}", row.class));
        }
        if !c.matches() {
            bad.push(row.clone());
        }
    }
    (rows.len(), bad)
}

fn criterion_1(run: &mut Run) {
    let t = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for q in [7, 8, 9] {
        let (n, b) = table_field(run, "A1", q, Mode::Full);
        total += n;
        bad.extend(b.into_iter().map(|r| (q, r)));
    }
    // Independent evidence for each disputed row: encode every message.
    for (q, row) in &bad {
        let f = FieldSpec::with_order(*q).unwrap();
        let code = build_code(&f, &class_by_id(&row.class).unwrap().polygon).unwrap();
        let brute = common::brute_force(&f, code.generator());
        let engine = run.enumerator(&row.class, *q, Mode::Full);
        for &(w, listed) in &row.terms {
            if brute.count(w) != listed {
                let divisible =
                    if listed % (*q as u64 - 1) == 0 { "" } else { ", listed value not divisible by q - 1" };
                note(format!(
                    "F_{q} {} A_{w}: direct evaluation of all {q}^6 messages gives {}, engine {}{divisible}",
                    row.class,
                    brute.count(w),
                    engine.count(w)
                ));
            }
        }
    }
    let ok = bad.is_empty();
    run.verdict("1", ok, &format!("A1 reproduction, F_7 F_8 F_9: {}/{total} rows exact", total - bad.len()), t);
}

fn criterion_2(run: &mut Run) {
    let t = Instant::now();
    let (mut total, mut bad) = (0, 0);
    for q in [11, 13] {
        let (n, b) = table_field(run, "A2", q, Mode::Projective);
        total += n;
        bad += b.len();
    }
    run.verdict("2", bad == 0, &format!("A2 reproduction, F_11 F_13: {}/{total} rows exact", total - bad), t);
    let t = Instant::now();
    let (mut total, mut bad) = (0, 0);
    for q in [16, 17] {
        let (n, b) = table_field(run, "A2", q, Mode::Projective);
        total += n;
        bad += b.len();
    }
    run.verdict("2x", bad == 0, &format!("A2 extended tier, F_16 F_17: {}/{total} rows exact", total - bad), t);
}

fn criterion_3(run: &mut Run) {
    let t = Instant::now();
    let mut checked = 0;
    let mut wrong = 0;
    let mut zero_pattern = 0;
    let fields: Vec<(&str, usize)> =
        std::iter::once(("A2", 23)).chain([25, 27, 29, 31, 32, 37, 41, 43].map(|q| ("A3", q))).collect();
    for (name, q) in fields {
        for row in &table(name).unwrap().field(q).unwrap().rows {
            let class: usize = row.class.trim_start_matches("P6_").parse().unwrap();
            for (what, pred) in [("n1", predicted_n1(class, q as u64)), ("n2", predicted_n2(class, q as u64))] {
                let Ok(p) = pred else { continue };
                let Some(listed) = row.count_at(p.weight as usize) else { continue };
                checked += 1;
                if !p.value.admits(listed) {
                    wrong += 1;
                    note(format!(
                        "{} {what} at F_{q}: predicted {:?}, listed {listed} at weight {}",
                        row.class, p.value, p.weight
                    ));
                }
                if what == "n2" && (class == 5 || class == 10) && q >= 27 && listed == 0 {
                    zero_pattern += 1;
                }
            }
        }
    }
    let samples = [
        (3, 23, n1_weight(23), predicted_n1(3, 23)),
        (8, 23, n1_weight(23), predicted_n1(8, 23)),
        (12, 23, n1_weight(23), predicted_n1(12, 23)),
        (3, 23, n2_weight(23), predicted_n2(3, 23)),
        (9, 23, n2_weight(23), predicted_n2(9, 23)),
        (11, 23, n2_weight(23), predicted_n2(11, 23)),
        (6, 23, n2_weight(23), predicted_n2(6, 23)),
    ];
    for (class, q, w, p) in samples {
        note(format!("P6_{class} F_{q} weight {w}: {:?}", p.map(|p| p.value)));
    }
    let ok = wrong == 0 && checked > 0 && zero_pattern == 14;
    let text = format!(
        "n1/n2 formulas vs tables at q = 23..43: {}/{checked} agree, zero n2 for P6_5 and P6_10 at {zero_pattern}/14 fields",
        checked - wrong
    );
    run.verdict("3", ok, &text, t);
}

fn criterion_4(run: &mut Run) {
    let t = Instant::now();
    let mut bad = 0;
    let mut checked = 0;
    for q in [9, 11, 13] {
        let f = FieldSpec::with_order(q).unwrap();
        for (i, c) in catalog(6).unwrap().into_iter().enumerate() {
            let pred = predicted_distance(i + 1, q as u64).unwrap().value as usize;
            let from_enum = run.enumerator(&c.id, q, Mode::Projective).min_weight().unwrap();
            let direct = build_code(&f, &c.polygon).unwrap().min_distance(run.workers);
            checked += 1;
            if from_enum != pred || direct != pred {
                bad += 1;
                note(format!("{} F_{q}: enumerated {from_enum}, search {direct}, predicted {pred}", c.id));
            }
        }
    }
    run.verdict(
        "4",
        bad == 0,
        &format!("minimum distances at q = 9, 11, 13: {}/{checked} equal the prediction", checked - bad),
        t,
    );
}

fn criterion_5(run: &mut Run) {
    let t = Instant::now();
    let report = verify_theorem1();
    let sizes: Vec<usize> = (3..=6).map(|k| catalog(k).unwrap().len()).collect();
    let sizes_ok = sizes == [2, 4, 7, 14];
    for s in &report.chain {
        note(format!(
            "k = {} -> {}: {} classes reached, {} unclassified",
            s.from,
            s.to,
            s.children.len(),
            s.unclassified.len()
        ));
    }
    let six = catalog(6).unwrap();
    let mut equivalent_pairs = 0;
    for (i, a) in six.iter().enumerate() {
        for b in &six[i + 1..] {
            if lattice_equivalent(&a.polygon, &b.polygon).is_some() {
                equivalent_pairs += 1;
                note(format!("{} ~ {}", a.id, b.id));
            }
        }
    }
    let mut agree = 0;
    let mut differs = 0;
    let mut reported = 0;
    for r in &report.rows {
        let line = format!("{} + {} listed as {}", r.row.parent, r.row.v, r.row.child);
        match &r.status {
            RowStatus::Agrees => agree += 1,
            RowStatus::Differs { computed } => {
                differs += 1;
                note(format!("{line}: computed {}", computed.as_deref().unwrap_or("no single class")));
            }
            RowStatus::Duplicate => {
                reported += 1;
                note(format!("{line}: duplicated row, reported"))
            }
            RowStatus::Conflicting { other_child } => {
                reported += 1;
                note(format!("{line}: point also listed for {other_child}, reported"))
            }
            RowStatus::NotAnExtension { lattice_points } => {
                differs += 1;
                note(format!("{line}: hull has {lattice_points} lattice points"))
            }
        }
    }
    let ok = sizes_ok && report.classification_holds() && equivalent_pairs == 0 && differs == 0;
    let text = format!(
        "classification: classes {sizes:?}, {} representative pairs inequivalent: {}, table rows {agree}/{} reproduce their child, {differs} contradicted, {reported} duplicate or double listings",
        six.len() * (six.len() - 1) / 2,
        equivalent_pairs == 0,
        report.rows.len()
    );
    run.verdict("5", ok, &text, t);
}

fn criterion_6(run: &mut Run) {
    let t = Instant::now();
    let mut ok = true;
    for (a, b, q, expect_same) in
        [("P6_5", "P6_6", 7, true), ("P6_4", "P6_5", 8, true), ("P6_5", "P6_6", 9, false), ("P6_4", "P6_5", 9, false)]
    {
        let v = distinguish(&run.enumerator(a, q, Mode::Full), &run.enumerator(b, q, Mode::Full)).unwrap();
        note(format!("{a} vs {b} over F_{q}: {v:?}"));
        ok &= (v == Verdict::Identical) == expect_same;
    }
    let v = distinguish(&run.enumerator("P6_5", 9, Mode::Full), &run.enumerator("P6_6", 9, Mode::Full)).unwrap();
    ok &= v == Verdict::DiffersAt { weight: 48, left: 1408, right: 896 };
    run.verdict(
        "6",
        ok,
        "equal enumerators of (P6_5, P6_6) over F_7 and (P6_4, P6_5) over F_8, both differ over F_9",
        t,
    );
}

fn criterion_7(run: &mut Run) {
    let t = Instant::now();
    let mut ok = true;
    let mut sub = |name: &str, r: common::Check| {
        match &r {
            Ok(s) => note(format!("{name}: {s}")),
            Err(e) => note(format!("{name} FAILED: {e}")),
        }
        ok &= r.is_ok();
    };
    sub("Pick identity", common::pick_identity(1000, 11));
    sub("field axioms", common::field_axioms(12));
    sub("modulus independence F_8 F_9", common::modulus_independence());
    sub("full vs projective, q <= 9", common::full_vs_projective(&[5, 7, 8, 9]));
    sub("classify after random maps", common::classify_after_maps(100, 13));
    let sanity = run.cache.iter().try_fold(0, |n, ((q, class), e)| {
        let k = class_by_id(class).unwrap().k;
        common::enumerator_sanity(e, *q, k).map(|_| n + 1).map_err(|m| format!("{class} F_{q}: {m}"))
    });
    sub("sum and divisibility on computed enumerators", sanity.map(|n| format!("{n} enumerators")));
    run.verdict("7", ok, "property suites", t);
}

fn criterion_8(run: &mut Run) {
    let t = Instant::now();
    let (mut total, mut bad) = (0, 0);
    for q in [27, 29, 31, 32] {
        let (n, b) = table_field(run, "A3", q, Mode::Projective);
        total += n;
        bad += b.len();
    }
    run.verdict("8", bad == 0, &format!("A3 gate, F_27 F_29 F_31 F_32: {}/{total} rows exact", total - bad), t);
    if std::env::var_os("TORIC_SKIP_EXTENDED").is_some() {
        println!("INFO 8x extended tier skipped");
        return;
    }
    for q in [25, 37, 41, 43] {
        let t = Instant::now();
        let (n, b) = table_field(run, "A3", q, Mode::Projective);
        let secs = t.elapsed().as_secs_f64();
        println!("INFO 8x A3 F_{q}: {}/{n} rows exact ({secs:.1} s)", n - b.len());
    }
}

fn main() {
    // Flags that cargo passes through for libtest are ignored.
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    println!("acceptance report, {workers} worker(s)");
    let mut run = Run { workers, cache: HashMap::new(), failed: Vec::new() };
    let t = Instant::now();
    criterion_1(&mut run);
    criterion_2(&mut run);
    criterion_3(&mut run);
    criterion_4(&mut run);
    criterion_5(&mut run);
    criterion_6(&mut run);
    criterion_7(&mut run);
    criterion_8(&mut run);
    let secs = t.elapsed().as_secs_f64();
    if run.failed.is_empty() {
        println!("acceptance: all criteria pass ({secs:.1} s)");
    } else {
        println!("acceptance: failing criteria {} ({secs:.1} s)", run.failed.join(", "));
        std::process::exit(1);
    }
}
