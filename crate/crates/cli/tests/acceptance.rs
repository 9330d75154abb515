//! Acceptance criteria: one PASS/FAIL line per criterion, with pinned time bounds.
//!
//! Run with `cargo test -p brickforge-cli --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use brickforge::brick::BrickGeometry;
use brickforge::coxeter::{build_cartan, CartanType, CoxeterWord, Word};
use brickforge::rational::compact;
use brickforge::subword::SubwordComplex;
use brickforge_cli::checks::cluster_complex;
use brickforge_cli::config::{default_batch_types, Check, CoxeterSelector, RunConfig};
use brickforge_cli::fixtures::{lookup, tsv_rows};
use brickforge_cli::report::Report;

const FIXTURE_ONE_SECOND: Duration = Duration::from_secs(1);
const DESK_SCALE: Duration = Duration::from_secs(300);
const SLICE_BOUND: Duration = Duration::from_secs(60);

/// Coxeter elements of A1–A4, B2–B4, C3–C4, D4, F4, G2.
const RANK4_INSTANCES: usize = 59;
/// Coxeter elements of A1–A3, B2–B3, C3, G2.
const RANK3_INSTANCES: usize = 19;

fn ty(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn config(check: Check, types: &[&str], coxeter: CoxeterSelector) -> RunConfig {
    let mut config = RunConfig::new(vec![check]);
    config.types = types.iter().map(|t| ty(t)).collect();
    config.default_batch = false;
    config.coxeter = coxeter;
    config.timing = false;
    config
}

fn batch(check: Check, max_rank: usize) -> RunConfig {
    let mut config = RunConfig::new(vec![check]);
    config.types = default_batch_types(max_rank);
    config.coxeter = CoxeterSelector::All;
    config.include_f4_tropical = false;
    config.timing = false;
    config
}

/// Every record passed and the expected number of records was produced.
fn all_pass(report: &Report, expected: usize) -> Result<String, String> {
    if report.records.len() != expected {
        return Err(format!("{} records, expected {expected}", report.records.len()));
    }
    match report.records.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!(
            "{} {} {}: {}",
            r.cartan_type,
            r.coxeter_word,
            r.check,
            r.witness.as_deref().unwrap_or("failed")
        )),
        None => Ok(format!("{expected}/{expected} records")),
    }
}

fn fixture_rows(name: &str) -> usize {
    lookup(None, name).unwrap().map_or(0, |t| tsv_rows(&t).len().saturating_sub(1))
}

fn only(report: &Report, check: &str) -> Report {
    Report { records: report.records.iter().filter(|r| r.check == check).cloned().collect() }
}

fn criterion_cluster_tables() -> Result<String, String> {
    let (a3, b2) = (fixture_rows("A3_123_cluster.tsv"), fixture_rows("B2_12_cluster.tsv"));
    if (a3, b2) != (9, 6) {
        return Err(format!("fixture rows A3 {a3}, B2 {b2}"));
    }
    let report = brickforge_cli::run(&config(Check::Tables, &["A3", "B2"], CoxeterSelector::Standard));
    all_pass(&only(&report, "tables/cluster"), 2).map(|s| format!("{s}, 9 A3 rows and 6 B2 rows"))
}

fn criterion_function_tables() -> Result<String, String> {
    let rows = ["A3_123_root.tsv", "A3_123_weight.tsv", "B2_12_root.tsv", "B2_12_weight.tsv"].map(fixture_rows);
    if rows != [14, 14, 6, 6] {
        return Err(format!("fixture rows {rows:?}"));
    }
    let report = brickforge_cli::run(&config(Check::Tables, &["A3", "B2"], CoxeterSelector::Standard));
    let tables = Report {
        records: report
            .records
            .iter()
            .filter(|r| r.check == "tables/root" || r.check == "tables/weight")
            .cloned()
            .collect(),
    };
    all_pass(&tables, 4)
}

fn brick_vectors(t: &str) -> Vec<String> {
    let spec = cluster_complex(ty(t), &CoxeterWord::standard(ty(t).rank)).unwrap();
    let geometry = BrickGeometry::new(&spec).unwrap();
    geometry.brick_vectors().iter().map(|(_, b)| compact(&b.0)).collect()
}

fn criterion_brick_vectors() -> Result<String, String> {
    let a3 = ["343", "340", "323", "301", "300", "243", "240", "133", "123", "022", "020", "012", "001", "000"];
    let b2 = ["34", "30", "24", "13", "01", "00"];
    if brick_vectors("A3") != a3 {
        return Err(format!("A3 brick vectors {:?}", brick_vectors("A3")));
    }
    if brick_vectors("B2") != b2 {
        return Err(format!("B2 brick vectors {:?}", brick_vectors("B2")));
    }
    let spec = cluster_complex(ty("B2"), &CoxeterWord::standard(2)).unwrap();
    let mut vertices: Vec<String> =
        BrickGeometry::new(&spec).unwrap().asso_polytope().vertices().iter().map(|v| compact(v)).collect();
    vertices.sort();
    let mut expected = b2.map(String::from).to_vec();
    expected.sort();
    if vertices != expected {
        return Err(format!("B2 brick polytope vertices {vertices:?}"));
    }
    let report = brickforge_cli::run(&config(Check::Tables, &["A3", "B2"], CoxeterSelector::Standard));
    all_pass(&only(&report, "tables/shifted"), 2).map(|s| format!("{s}, brick vectors and B2 vertices exact"))
}

fn criterion_newton() -> Result<String, String> {
    all_pass(&brickforge_cli::run(&batch(Check::Newton, 4)), RANK4_INSTANCES)
}

fn criterion_typecone() -> Result<String, String> {
    all_pass(&brickforge_cli::run(&batch(Check::Typecone, 4)), RANK4_INSTANCES)
}

fn criterion_tropical() -> Result<String, String> {
    let report = brickforge_cli::run(&batch(Check::Tropical, 3));
    let summary = all_pass(&report, RANK3_INSTANCES)?;
    if fixture_rows("B2_12_tropical.tsv") != 4 {
        return Err("B2 max-expression fixture does not have four rows".into());
    }
    let b2 = report.records.iter().find(|r| r.cartan_type == "B2" && r.coxeter_word == "12");
    match b2 {
        Some(r) if r.passed() => Ok(format!("{summary}, B2 max-expressions match")),
        _ => Err("no passing B2 c=12 record".into()),
    }
}

fn criterion_counterexamples() -> Result<String, String> {
    let report = brickforge_cli::run(&config(Check::Counterexamples, &["B2"], CoxeterSelector::Standard));
    let summary = all_pass(&report, 2)?;
    let words: Vec<&str> = report.records.iter().map(|r| r.coxeter_word.as_str()).collect();
    if words != ["1212121", "212212"] {
        return Err(format!("words {words:?}"));
    }
    let w = Word::parse("1212121").unwrap();
    let spec = SubwordComplex::new(build_cartan(ty("B2")), w).unwrap();
    let vertices = brickforge::brick::word_brick_polytope(&spec).unwrap().num_vertices();
    if vertices != 8 {
        return Err(format!("brick polytope of 1212121 has {vertices} vertices"));
    }
    Ok(format!("{summary}, 8-vertex brick polytope"))
}

fn criterion_properties() -> Result<String, String> {
    all_pass(&brickforge_cli::run(&batch(Check::Properties, 4)), RANK4_INSTANCES)
}

#[test]
fn acceptance() {
    type Criterion = (usize, &'static str, Duration, fn() -> Result<String, String>);
    let criteria: [Criterion; 8] = [
        (1, "cluster variable tables A3 and B2", FIXTURE_ONE_SECOND, criterion_cluster_tables),
        (2, "root and weight function tables", FIXTURE_ONE_SECOND, criterion_function_tables),
        (3, "shifted weights and brick vectors", FIXTURE_ONE_SECOND, criterion_brick_vectors),
        (4, "Newton polytopes, rank <= 4, all c", DESK_SCALE, criterion_newton),
        (5, "type cone, rank <= 4, all c", DESK_SCALE, criterion_typecone),
        (6, "tropical slice, rank <= 3, all c", SLICE_BOUND, criterion_tropical),
        (7, "non-root-independent words", FIXTURE_ONE_SECOND, criterion_counterexamples),
        (8, "property suites, rank <= 4, all c", DESK_SCALE, criterion_properties),
    ];
    let mut failed = Vec::new();
    for (id, name, bound, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed > bound => Err(format!("took {:.2}s", elapsed.as_secs_f64())),
            Ok(s) => Ok(s.clone()),
            Err(e) => Err(e.clone()),
        };
        let (tag, note) = match &verdict {
            Ok(s) => ("PASS", s.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        println!(
            "criterion {id} [{name}]: {tag} in {:.3}s (bound {}s): {note}",
            elapsed.as_secs_f64(),
            bound.as_secs()
        );
        if verdict.is_err() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
