//! Per-instance verification drivers.

use std::collections::BTreeSet;
use std::path::Path;

use brickforge::brick::{g_vector_fan, minkowski_decomposition_certified, type_cone_report, BrickGeometry};
use brickforge::cluster::{
    all_cluster_variables, check_extremal_exponents, initial_matrix, newton_report, ClusterData, Laurent,
};
use brickforge::coxeter::{build_cartan, CartanType, CoxeterWord};
use brickforge::polyhedra::{hull_vertices, hull_vertices_fm, is_edge, minkowski_sum_all};
use brickforge::rational::{self, compact, parse_compact, Rat};
use brickforge::subword::{SubwordComplex, TableKind};
use brickforge::tropical::{build_trop_map, parse_max_expression, verify_slice_isomorphism};
use brickforge::Result;
use num_traits::{Signed, Zero};

use crate::display::{self, root_cell, shifted_cell, weight_cell};
use crate::fixtures::{self, tsv_rows};
use crate::report::Status;

/// Largest number of candidate subsets for the brute-force facet oracle.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;
/// Largest facet count for which the Minkowski sum of all `Asso_β` is formed explicitly.
pub const DIRECT_SUM_FACETS: usize = 42;
/// Largest point set handed to the Fourier–Motzkin hull oracle.
pub const FM_ORACLE_POINTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
    pub details: Vec<String>,
}

impl Outcome {
    pub fn pass(details: Vec<String>) -> Self {
        Outcome { status: Status::Pass, witness: None, details }
    }

    pub fn fail(witness: impl Into<String>, details: Vec<String>) -> Self {
        Outcome { status: Status::Fail, witness: Some(witness.into()), details }
    }

    /// Fails with the first of `failures`, if any.
    fn from_failures(failures: Vec<String>, details: Vec<String>) -> Self {
        match failures.into_iter().next() {
            Some(w) => Outcome::fail(w, details),
            None => Outcome::pass(details),
        }
    }
}

/// The subword complex of `c·w₀(c)`.
pub fn cluster_complex(t: CartanType, c: &CoxeterWord) -> Result<SubwordComplex> {
    SubwordComplex::cluster(build_cartan(t), c)
}

pub fn cluster_data(spec: &SubwordComplex, seed_budget: usize) -> Result<ClusterData> {
    let c = spec.coxeter_word().expect("cluster complex").clone();
    all_cluster_variables(&initial_matrix(spec.cartan(), &c), seed_budget)
}

fn fixture_name(t: CartanType, c: &CoxeterWord, kind: &str) -> String {
    format!("{t}_{c}_{kind}.tsv")
}

fn fixture(dir: Option<&Path>, name: &str) -> std::result::Result<Option<String>, String> {
    fixtures::lookup(dir, name).map_err(|e| format!("reading fixture {name}: {e}"))
}

// ---------------------------------------------------------------- tables

pub fn root_table(spec: &SubwordComplex, t: CartanType) -> String {
    spec.table_tsv(TableKind::Root, &|v| root_cell(t, v))
}

pub fn weight_table(spec: &SubwordComplex, t: CartanType) -> String {
    spec.table_tsv(TableKind::Weight, &|v| weight_cell(t, v))
}

pub fn shifted_table(geometry: &BrickGeometry<'_>, t: CartanType) -> String {
    geometry.shifted_table_tsv(&|v| shifted_cell(t, v))
}

/// Columns: label, cluster variable, d-vector, g-vector in the weight basis, F-polynomial.
pub fn cluster_table(geometry: &BrickGeometry<'_>, data: &ClusterData) -> Result<String> {
    let mut out = String::from("label\texpression\td\tg\tF\n");
    let rows = data.initial().iter().chain(data.in_position_order(geometry)?);
    for (idx, var) in rows.enumerate() {
        let f = var.f_polynomial.as_ref().map(Laurent::to_expression).unwrap_or_default();
        out.push_str(&format!(
            "x{}\t{}\t{}\t{}\t{}\n",
            idx + 1,
            var.expr.to_expression(),
            compact(&var.d_vector.0),
            compact(&var.g_vector.0),
            f
        ));
    }
    Ok(out)
}

/// First difference between two tab-separated tables.
pub fn diff_tables(expected: &str, actual: &str) -> Option<String> {
    let (e, a) = (tsv_rows(expected), tsv_rows(actual));
    let header = e.first().cloned().unwrap_or_default();
    for (idx, (er, ar)) in e.iter().zip(&a).enumerate() {
        if er == ar {
            continue;
        }
        let row = er.first().map_or("?", String::as_str);
        let col = (0..er.len().max(ar.len())).find(|&i| er.get(i) != ar.get(i)).unwrap_or(0);
        let name = header.get(col).map_or("?", String::as_str);
        return Some(format!(
            "line {}, row {row}, column {name}: expected {:?}, got {:?}",
            idx + 1,
            er.get(col).map_or("", String::as_str),
            ar.get(col).map_or("", String::as_str)
        ));
    }
    (e.len() != a.len()).then(|| format!("expected {} lines, got {}", e.len(), a.len()))
}

fn same_expression(n: usize, a: &str, b: &str) -> bool {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => true,
        (false, false) => matches!((Laurent::parse(n, a), Laurent::parse(n, b)), (Ok(x), Ok(y)) if x == y),
        _ => false,
    }
}

fn same_vector(a: &str, b: &str) -> bool {
    matches!((parse_compact(a), parse_compact(b)), (Ok(x), Ok(y)) if x == y)
}

/// Row-by-row comparison after parsing expressions and vectors.
pub fn diff_cluster_tables(n: usize, expected: &str, actual: &str) -> Option<String> {
    let (e, a) = (tsv_rows(expected), tsv_rows(actual));
    if e.len() != a.len() {
        return Some(format!("expected {} rows, got {}", e.len(), a.len()));
    }
    let columns = ["label", "expression", "d", "g", "F"];
    for (er, ar) in e.iter().zip(&a).skip(1) {
        let cell = |r: &Vec<String>, i: usize| r.get(i).cloned().unwrap_or_default();
        for (i, name) in columns.iter().enumerate() {
            let (x, y) = (cell(er, i), cell(ar, i));
            let same = match i {
                0 => x == y,
                1 | 4 => same_expression(n, &x, &y),
                _ => same_vector(&x, &y),
            };
            if !same {
                return Some(format!("{}: {name} expected {x:?}, got {y:?}", cell(er, 0)));
            }
        }
    }
    None
}

/// Root, weight, shifted and cluster tables, each diffed against a fixture when one exists.
pub fn tables(
    t: CartanType,
    c: &CoxeterWord,
    fixture_dir: Option<&Path>,
    seed_budget: usize,
) -> Result<Vec<(&'static str, Outcome)>> {
    let spec = cluster_complex(t, c)?;
    let geometry = BrickGeometry::new(&spec)?;
    let data = cluster_data(&spec, seed_budget)?;
    let generated = [
        ("tables/root", "root", root_table(&spec, t)),
        ("tables/weight", "weight", weight_table(&spec, t)),
        ("tables/shifted", "shifted", shifted_table(&geometry, t)),
        ("tables/cluster", "cluster", cluster_table(&geometry, &data)?),
    ];
    let mut out = Vec::new();
    for (check, kind, text) in generated {
        let details: Vec<String> = text.lines().map(str::to_string).collect();
        let outcome = match fixture(fixture_dir, &fixture_name(t, c, kind)) {
            Err(e) => Outcome::fail(e, details),
            Ok(None) => Outcome::pass(details),
            Ok(Some(expected)) => {
                let errata_name = fixture_name(t, c, &format!("{kind}.errata"));
                let corrected = match fixture(fixture_dir, &errata_name) {
                    Err(e) => Err(e),
                    Ok(None) => Ok((expected, vec![])),
                    Ok(Some(errata)) => fixtures::apply_errata(&expected, &errata),
                };
                match corrected {
                    Err(e) => Outcome::fail(e, details),
                    Ok((expected, notes)) => {
                        let mut details = details;
                        details.extend(notes);
                        let diff = if kind == "cluster" {
                            diff_cluster_tables(t.rank, &expected, &text)
                        } else {
                            diff_tables(&expected, &text)
                        };
                        match diff {
                            Some(w) => Outcome::fail(w, details),
                            None => Outcome::pass(details),
                        }
                    }
                }
            }
        };
        out.push((check, outcome));
    }
    Ok(out)
}

// ---------------------------------------------------------------- type cone

pub fn typecone(t: CartanType, c: &CoxeterWord) -> Result<Outcome> {
    let spec = cluster_complex(t, c)?;
    let geometry = BrickGeometry::new(&spec)?;
    let report = type_cone_report(&spec)?;
    let asso = geometry.asso_polytope();
    let facets = spec.facets().len();
    let certified = minkowski_decomposition_certified(&spec)?;
    // The explicit sum is cheap only on small instances; there it cross-checks the certificate.
    let direct = if facets <= DIRECT_SUM_FACETS {
        let summands = geometry
            .roots_by_position()
            .iter()
            .map(|beta| geometry.summand_polytope(beta))
            .collect::<Result<Vec<_>>>()?;
        Some(minkowski_sum_all(t.rank, &summands)? == asso)
    } else {
        None
    };
    let non_interior = report.boundary_interior.iter().filter(|&&b| !b).count();
    let fewer = report.boundary_vertex_counts.iter().filter(|&&v| v < facets).count();
    let details = vec![
        format!("rank {}/{}", report.rank, report.expected_rank),
        format!("sum of summands interior: {}", report.interior),
        format!("vertices {} for {} facets", report.vertex_count, facets),
        format!("leave-one-out sums not interior: {non_interior}/{}", report.boundary_interior.len()),
        format!("leave-one-out sums with fewer vertices: {fewer}/{}", report.boundary_vertex_counts.len()),
        format!("Minkowski decomposition certified: {certified}"),
        match direct {
            Some(ok) => format!("explicit Minkowski sum equals the brick polytope: {ok}"),
            None => format!("explicit Minkowski sum skipped above {DIRECT_SUM_FACETS} facets"),
        },
    ];
    let roots = geometry.roots_by_position();
    let mut failures = Vec::new();
    if report.rank != report.expected_rank {
        failures.push(format!("height vectors span rank {} < {}", report.rank, report.expected_rank));
    }
    if !report.interior {
        failures.push("sum of summand heights is not in the open type cone".into());
    }
    if report.vertex_count != facets {
        failures.push(format!("reconstructed {} vertices for {facets} facets", report.vertex_count));
    }
    for (idx, beta) in roots.iter().enumerate() {
        if report.boundary_interior.get(idx).copied().unwrap_or(true) {
            failures.push(format!("sum without {} is still interior", compact(&beta.0)));
        }
        if report.boundary_vertex_counts.get(idx).is_none_or(|&v| v >= facets) {
            failures.push(format!("sum without {} keeps all vertices", compact(&beta.0)));
        }
    }
    if !certified || direct == Some(false) {
        failures.push("sum of Asso_β differs from the brick polytope".into());
    }
    if asso.num_vertices() != facets {
        failures.push(format!("brick polytope has {} vertices for {facets} facets", asso.num_vertices()));
    }
    if !report.passed() && failures.is_empty() {
        failures.push("type cone check failed".into());
    }
    Ok(Outcome::from_failures(failures, details))
}

// ---------------------------------------------------------------- Newton polytopes

pub fn newton(t: CartanType, c: &CoxeterWord, seed_budget: usize) -> Result<Outcome> {
    let spec = cluster_complex(t, c)?;
    let geometry = BrickGeometry::new(&spec)?;
    let (data, report) = newton_report(&spec, seed_budget)?;
    let mut details = vec![format!(
        "{} non-initial cluster variables, {} positive roots, {} seeds",
        report.num_variables, report.num_positive_roots, data.num_seeds
    )];
    for beta in geometry.roots_by_position() {
        let vertices = geometry.summand_polytope(beta)?;
        details.push(format!("{}: {}", compact(&beta.0), display::vertex_list(vertices.vertices())));
    }
    let mut failures = Vec::new();
    let tagged = [
        ("Newton polytope differs from Asso_β at", &report.newton_mismatches),
        ("g-vector differs from the fan ray at", &report.g_mismatches),
        ("F-polynomial extremes wrong at", &report.extremal_failures),
        ("no cluster variable with d-vector", &report.missing),
    ];
    for (msg, list) in tagged {
        if let Some(beta) = list.first() {
            failures.push(format!("{msg} {}", compact(&beta.0)));
        }
    }
    if report.num_variables != report.num_positive_roots {
        failures.push(format!(
            "{} non-initial cluster variables for {} positive roots",
            report.num_variables, report.num_positive_roots
        ));
    }
    if !report.passed() && failures.is_empty() {
        failures.push("Newton check failed".into());
    }
    Ok(Outcome::from_failures(failures, details))
}

// ---------------------------------------------------------------- tropical

pub fn tropical(
    t: CartanType,
    c: &CoxeterWord,
    fixture_dir: Option<&Path>,
    seed: u64,
    seed_budget: usize,
) -> Result<Outcome> {
    let spec = cluster_complex(t, c)?;
    let geometry = BrickGeometry::new(&spec)?;
    let data = cluster_data(&spec, seed_budget)?;
    let report = verify_slice_isomorphism(&spec, &data, seed)?;
    let map = build_trop_map(&data.in_position_order(&geometry)?);
    let mut details = vec![
        format!("{}/{} signatures distinct", report.distinct_signatures, report.num_cones),
        format!("graph samples {}, off the tropical variety {}", report.graph_samples, report.graph_failures),
    ];
    for coord in &map.coords {
        details.push(format!("{}: {}", compact(&coord.beta.0), coord.to_expression(t.rank)));
    }
    for cone in &report.cones {
        let facet: Vec<String> = cone.facet.iter().map(usize::to_string).collect();
        let sig: Vec<String> = cone.argmax.iter().map(|a| a.join("|")).collect();
        details.push(format!("cone {} at ({}): {}", facet.join(","), cone.sample.join(","), sig.join(" ")));
    }
    let mut failures = Vec::new();
    if report.distinct_signatures != report.num_cones {
        failures.push(format!("{} distinct signatures for {} cones", report.distinct_signatures, report.num_cones));
    }
    if let Some(beta) = report.projection_failures.first() {
        failures.push(format!("y-projection of Newton(p_β) differs from Newton(F_β) at {beta}"));
    }
    if let Some(facet) = report.constancy_failures.first() {
        failures.push(format!("signature not constant on cone {facet:?}"));
    }
    if report.homogeneity_failures > 0 {
        failures.push(format!("{} cones fail the scaling check", report.homogeneity_failures));
    }
    if report.graph_failures > 0 {
        failures.push(format!("{} graph samples off the tropical variety", report.graph_failures));
    }
    match fixture(fixture_dir, &fixture_name(t, c, "tropical")) {
        Err(e) => failures.push(e),
        Ok(None) => {}
        Ok(Some(text)) => {
            for row in tsv_rows(&text).iter().skip(1) {
                let [beta, expr] = row.as_slice() else {
                    failures.push(format!("malformed tropical fixture row {row:?}"));
                    continue;
                };
                let expected = match parse_max_expression(t.rank, expr) {
                    Ok(v) => v,
                    Err(e) => {
                        failures.push(format!("tropical fixture {beta}: {e}"));
                        continue;
                    }
                };
                let coord = parse_compact(beta).ok().and_then(|b| map.coords.iter().find(|c| c.beta.0 == b));
                let matches = coord.is_some_and(|coord| {
                    let args: BTreeSet<Vec<i64>> = coord.exponents.iter().cloned().collect();
                    let shift = rational::to_ints(&coord.beta.0).unwrap_or_default();
                    args == expected.0
                        && expected.1[..t.rank] == shift[..]
                        && expected.1[t.rank..].iter().all(|&a| a == 0)
                });
                if !matches {
                    failures.push(format!("Trop Ψ_{beta} differs from {expr}"));
                }
            }
        }
    }
    if !report.passed() && failures.is_empty() {
        failures.push("slice check failed".into());
    }
    Ok(Outcome::from_failures(failures, details))
}

// ---------------------------------------------------------------- property suites

/// `v = λ·r` for a rational `λ`.
fn multiple_of(v: &[Rat], r: &[Rat]) -> Option<Rat> {
    let idx = r.iter().position(|x| !x.is_zero())?;
    let lambda = &v[idx] / &r[idx];
    (rational::scale(r, &lambda) == v).then_some(lambda)
}

pub fn properties(t: CartanType, c: &CoxeterWord, seed_budget: usize) -> Result<Outcome> {
    let spec = cluster_complex(t, c)?;
    let geometry = BrickGeometry::new(&spec)?;
    let mut failures = Vec::new();
    let mut details = Vec::new();

    let mut flips = 0usize;
    for facet in spec.facets() {
        for &i in facet.positions() {
            let (other, _) = spec.flip(facet, i);
            let r = spec.root_function(facet, i);
            flips += 1;
            for k in 1..=spec.len() {
                let diff = rational::sub(&spec.weight_function(facet, k).0, &spec.weight_function(&other, k).0);
                let ok = match multiple_of(&diff, &r.0) {
                    Some(l) => l.is_integer() && !l.is_negative(),
                    None => rational::is_zero(&diff),
                };
                if !ok {
                    failures.push(format!("flip rule fails at facet {facet}, flip {i}, position {k}"));
                }
            }
            let diff = rational::sub(&geometry.brick_vector(facet).0, &geometry.brick_vector(&other).0);
            if !multiple_of(&diff, &r.0).is_some_and(|l| l.is_integer() && l.is_positive()) {
                failures
                    .push(format!("brick vectors of {facet} and {other} not a positive multiple of r({facet},{i})"));
            }
        }
    }
    details.push(format!("flip rule on {flips} flips"));

    for beta in geometry.roots_by_position() {
        let p = geometry.summand_polytope(beta)?;
        let zero = rational::zeros(t.rank);
        if !p.has_vertex(&zero) || !p.has_vertex(&beta.0) || !is_edge(&p, &zero, &beta.0)? {
            failures.push(format!("[0, {}] is not an edge of Asso_β", compact(&beta.0)));
        }
        let points: Vec<_> = spec
            .facets()
            .iter()
            .map(|f| geometry.shifted_weight(f, beta).map(|w| w.0))
            .collect::<Result<BTreeSet<_>>>()?
            .into_iter()
            .collect();
        if points.len() <= FM_ORACLE_POINTS && hull_vertices_fm(&points)? != hull_vertices(&points)? {
            failures.push(format!("hull oracles disagree on Asso_{}", compact(&beta.0)));
        }
    }
    details.push(format!("edge [0,β] on {} summands", geometry.roots_by_position().len()));

    let data = cluster_data(&spec, seed_budget)?;
    for var in data.non_initial() {
        let f = var.f_polynomial.as_ref().expect("non-initial variables carry F");
        if !check_extremal_exponents(f, &var.d_vector) {
            failures.push(format!("F_{} lacks constant term 1 or a unique maximal exponent", compact(&var.d_vector.0)));
        }
    }
    details.push(format!("F-polynomial extremes on {} variables", data.non_initial().len()));

    match g_vector_fan(&spec) {
        Ok(_) => details.push("ray weights well defined".into()),
        Err(e) => failures.push(format!("ray weights: {e}")),
    }

    let candidates = spec.brute_force_candidates();
    if candidates <= BRUTE_FORCE_LIMIT {
        if spec.facets_brute_force().as_slice() != spec.facets() {
            failures.push("flip search and brute force disagree on the facets".into());
        }
        details.push(format!("facets match brute force over {candidates} subsets"));
    } else {
        details.push(format!("brute-force facet oracle skipped: {candidates} subsets"));
    }
    Ok(Outcome::from_failures(failures, details))
}
