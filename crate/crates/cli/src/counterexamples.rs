//! Words that drop root independence or full support, checked against a fixture.
//!
//! Fixture lines, grouped after a `word <type> <letters>` header:
//! `facets`, `root_independent`, `full_support`, `unsupported`, `P<k> <vertices>`,
//! `split <lhs> = <term> + …` (terms are `P<k>` or comma separated vertices) and
//! `brick_vertices <count>` and `erratum <key> <printed> <corrected> <reason>`.

use std::collections::BTreeMap;

use brickforge::brick::{column_polytope, word_brick_polytope};
use brickforge::coxeter::{build_cartan, CartanType, Word};
use brickforge::polyhedra::{hull_vertices, minkowski_sum_all, VPolytope};
use brickforge::rational::parse_compact;
use brickforge::subword::SubwordComplex;

use crate::checks::Outcome;
use crate::display::vertex_list;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordFixture {
    pub cartan_type: CartanType,
    pub word: Word,
    pub lines: Vec<(String, String)>,
}

pub fn parse_fixture(text: &str) -> Result<Vec<WordFixture>, String> {
    let mut out: Vec<WordFixture> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        if key == "word" {
            let (t, w) = rest.split_once(' ').ok_or_else(|| format!("bad word line {line:?}"))?;
            let cartan_type = t.parse().map_err(|e| format!("{line:?}: {e}"))?;
            let word = Word::parse(w.trim()).map_err(|e| format!("{line:?}: {e}"))?;
            out.push(WordFixture { cartan_type, word, lines: Vec::new() });
            continue;
        }
        let current = out.last_mut().ok_or_else(|| format!("{line:?} before any word line"))?;
        current.lines.push((key.to_string(), rest.trim().to_string()));
    }
    Ok(out)
}

fn parse_vertices(s: &str, sep: char) -> Result<VPolytope, String> {
    let points = s
        .split(sep)
        .filter(|p| !p.is_empty())
        .map(|p| parse_compact(p).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    hull_vertices(&points).map_err(|e| e.to_string())
}

struct Evaluated {
    spec: SubwordComplex,
    columns: BTreeMap<usize, VPolytope>,
}

impl Evaluated {
    fn column(&self, name: &str) -> Result<&VPolytope, String> {
        name.strip_prefix('P')
            .and_then(|k| k.parse::<usize>().ok())
            .and_then(|k| self.columns.get(&k))
            .ok_or_else(|| format!("unknown column {name:?}"))
    }

    /// `P4+P6`, `P3` or `00,12`.
    fn term(&self, s: &str) -> Result<VPolytope, String> {
        if s.starts_with('P') {
            let parts = s.split('+').map(|p| self.column(p.trim())).collect::<Result<Vec<_>, _>>()?;
            minkowski_sum_all(self.spec.rank(), parts).map_err(|e| e.to_string())
        } else {
            parse_vertices(s, ',')
        }
    }
}

/// Compares one word against its fixture lines.
pub fn check_word(fixture: &WordFixture) -> Outcome {
    match evaluate(fixture) {
        Ok(o) => o,
        Err(e) => Outcome::fail(e, vec![]),
    }
}

fn evaluate(fixture: &WordFixture) -> Result<Outcome, String> {
    let spec =
        SubwordComplex::new(build_cartan(fixture.cartan_type), fixture.word.clone()).map_err(|e| e.to_string())?;
    let columns = (1..=spec.len())
        .map(|k| column_polytope(&spec, k).map(|p| (k, p)))
        .collect::<Result<BTreeMap<_, _>, _>>()
        .map_err(|e| e.to_string())?;
    let ev = Evaluated { spec, columns };
    let facets: Vec<String> = ev.spec.facets().iter().map(|f| f.to_string()).collect();
    let brick = word_brick_polytope(&ev.spec).map_err(|e| e.to_string())?;
    let mut details = vec![
        format!("facets {}", facets.join(" ")),
        format!("root_independent {}", ev.spec.is_root_independent()),
        format!("full_support {}", ev.spec.has_full_support()),
    ];
    let unsupported: Vec<String> = ev.spec.unsupported_positions().iter().map(usize::to_string).collect();
    if !unsupported.is_empty() {
        details.push(format!("unsupported {}", unsupported.join(" ")));
    }
    for (k, p) in &ev.columns {
        details.push(format!("P{k} {}", vertex_list(p.vertices())));
    }
    details.push(format!("brick_vertices {}", brick.num_vertices()));

    let mut failures = Vec::new();
    let mut lines = fixture.lines.clone();
    for (key, value) in &fixture.lines {
        if key != "erratum" {
            continue;
        }
        let mut parts = value.splitn(4, ' ');
        let (Some(target), Some(printed), Some(corrected)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("malformed erratum {value:?}"));
        };
        let reason = parts.next().unwrap_or("");
        let line = lines
            .iter_mut()
            .find(|(k, v)| k == target && v.split(' ').any(|tok| tok == printed))
            .ok_or_else(|| format!("erratum {value:?} does not apply"))?;
        line.1 =
            line.1.split(' ').map(|tok| if tok == printed { corrected } else { tok }).collect::<Vec<_>>().join(" ");
        details.push(format!("erratum {target}: printed {printed}, corrected {corrected} ({reason})"));
    }
    for (key, value) in lines.iter().filter(|(k, _)| k != "erratum") {
        let mismatch = |got: String| format!("{key}: expected {value}, got {got}");
        match key.as_str() {
            "facets" => {
                if facets.join(" ") != *value {
                    failures.push(mismatch(facets.join(" ")));
                }
            }
            "root_independent" | "full_support" => {
                let got =
                    if key == "full_support" { ev.spec.has_full_support() } else { ev.spec.is_root_independent() };
                if got.to_string() != *value {
                    failures.push(mismatch(got.to_string()));
                }
            }
            "unsupported" => {
                if unsupported.join(" ") != *value {
                    failures.push(mismatch(unsupported.join(" ")));
                }
            }
            "brick_vertices" => {
                if brick.num_vertices().to_string() != *value {
                    failures.push(mismatch(brick.num_vertices().to_string()));
                }
            }
            "split" => {
                let (lhs, rhs) = value.split_once('=').ok_or_else(|| format!("bad split {value:?}"))?;
                let left = ev.term(lhs.trim())?;
                let parts = rhs.split(" + ").map(|t| ev.term(t.trim())).collect::<Result<Vec<_>, _>>()?;
                let right = minkowski_sum_all(ev.spec.rank(), &parts).map_err(|e| e.to_string())?;
                if left != right {
                    failures.push(format!(
                        "split {value}: left {} right {}",
                        vertex_list(left.vertices()),
                        vertex_list(right.vertices())
                    ));
                }
            }
            column if column.starts_with('P') => {
                let expected = parse_vertices(value, ' ')?;
                let got = ev.column(column)?;
                if *got != expected {
                    failures.push(mismatch(vertex_list(got.vertices())));
                }
            }
            other => return Err(format!("unknown fixture key {other:?}")),
        }
    }
    Ok(match failures.into_iter().next() {
        Some(w) => Outcome::fail(w, details),
        None => Outcome::pass(details),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_detects_mismatches() {
        let text = "word B2 212212\nfacets 13 14 36 46\nP5 00 02\n";
        let fixtures = parse_fixture(text).unwrap();
        assert_eq!(fixtures.len(), 1);
        assert_eq!(check_word(&fixtures[0]).status, crate::report::Status::Pass);
        let bad = parse_fixture("word B2 212212\nP5 00 01\n").unwrap();
        let outcome = check_word(&bad[0]);
        assert_eq!(outcome.witness.as_deref(), Some("P5: expected 00 01, got 00 02"));
        assert!(parse_fixture("facets 13\n").is_err());
    }
}
