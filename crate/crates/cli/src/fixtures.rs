//! Reference tables, built in or read from a fixture directory.

use std::path::Path;

const EMBEDDED: &[(&str, &str)] = &[
    ("A3_123_root.tsv", include_str!("../fixtures/A3_123_root.tsv")),
    ("A3_123_root.errata.tsv", include_str!("../fixtures/A3_123_root.errata.tsv")),
    ("A3_123_weight.tsv", include_str!("../fixtures/A3_123_weight.tsv")),
    ("A3_123_shifted.tsv", include_str!("../fixtures/A3_123_shifted.tsv")),
    ("A3_123_cluster.tsv", include_str!("../fixtures/A3_123_cluster.tsv")),
    ("B2_12_root.tsv", include_str!("../fixtures/B2_12_root.tsv")),
    ("B2_12_weight.tsv", include_str!("../fixtures/B2_12_weight.tsv")),
    ("B2_12_shifted.tsv", include_str!("../fixtures/B2_12_shifted.tsv")),
    ("B2_12_cluster.tsv", include_str!("../fixtures/B2_12_cluster.tsv")),
    ("B2_12_tropical.tsv", include_str!("../fixtures/B2_12_tropical.tsv")),
    ("counterexamples.txt", include_str!("../fixtures/counterexamples.txt")),
];

/// A file in `dir` takes precedence over the built-in copy.
pub fn lookup(dir: Option<&Path>, name: &str) -> std::io::Result<Option<String>> {
    if let Some(dir) = dir {
        let path = dir.join(name);
        if path.exists() {
            return std::fs::read_to_string(path).map(Some);
        }
    }
    Ok(EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, s)| s.to_string()))
}

pub fn names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

/// Rows of a tab-separated file, header included, blank lines and `#` comments dropped.
pub fn tsv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').map(|c| c.trim().to_string()).collect())
        .collect()
}

/// Replaces misprinted cells of `expected` listed in an errata table
/// (`row`, `column`, `printed`, `corrected`, `reason`).
///
/// Returns the corrected table and one note per applied erratum; an erratum whose
/// printed value is not found is an error, so stale errata cannot hide a diff.
pub fn apply_errata(expected: &str, errata: &str) -> Result<(String, Vec<String>), String> {
    let mut rows = tsv_rows(expected);
    let header = rows.first().cloned().unwrap_or_default();
    let mut notes = Vec::new();
    for e in tsv_rows(errata).iter().skip(1) {
        let [row, column, printed, corrected, reason] = e.as_slice() else {
            return Err(format!("malformed erratum {e:?}"));
        };
        let col =
            header.iter().position(|h| h == column).ok_or_else(|| format!("erratum column {column} not in table"))?;
        let target = rows
            .iter_mut()
            .skip(1)
            .find(|r| r.first() == Some(row))
            .ok_or_else(|| format!("erratum row {row} not in table"))?;
        if target.get(col) != Some(printed) {
            return Err(format!(
                "erratum for row {row}, column {column} expects {printed:?}, table has {:?}",
                target.get(col)
            ));
        }
        target[col] = corrected.clone();
        notes.push(format!("erratum row {row}, column {column}: printed {printed}, corrected {corrected} ({reason})"));
    }
    let text = rows.iter().map(|r| r.join("\t") + "\n").collect();
    Ok((text, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errata() {
        let table = "I\t1\t2\n12\t20\t11\n";
        let (fixed, notes) =
            apply_errata(table, "row\tcolumn\tprinted\tcorrected\treason\n12\t2\t11\t1-1\ttypo\n").unwrap();
        assert_eq!(fixed, "I\t1\t2\n12\t20\t1-1\n");
        assert_eq!(notes.len(), 1);
        assert!(apply_errata(table, "h\n12\t2\t99\t1-1\ttypo\n").is_err());
        assert!(apply_errata(table, "h\n13\t2\t11\t1-1\ttypo\n").is_err());
    }

    #[test]
    fn embedded_lookup() {
        assert!(lookup(None, "B2_12_root.tsv").unwrap().is_some());
        assert!(lookup(None, "nope.tsv").unwrap().is_none());
        assert_eq!(names().count(), 11);
    }
}
