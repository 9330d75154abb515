//! Exploratory scan over short words: root independence plus full support
//! versus commutation equivalence to some `c·w₀(c)`.

use std::collections::BTreeSet;

use brickforge::coxeter::{CartanMatrix, Word};
use brickforge::subword::SubwordComplex;

/// Enumeration stops after this many words.
pub const WORD_LIMIT: usize = 1 << 20;

/// Lexicographically smallest word in the commutation class of `word`.
///
/// Repeatedly extracts the smallest letter that commutes with every letter
/// in front of it.
pub fn commutation_normal_form(cartan: &CartanMatrix, word: &[usize]) -> Vec<usize> {
    let a = cartan.entries();
    let commute = |s: usize, t: usize| s != t && a[s - 1][t - 1] == 0;
    let mut rest = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for (p, &letter) in rest.iter().enumerate() {
            if best.is_some_and(|b| rest[b] <= letter) {
                continue;
            }
            if rest[..p].iter().all(|&s| commute(s, letter)) {
                best = Some(p);
            }
        }
        let p = best.expect("first letter is always available");
        out.push(rest.remove(p));
    }
    out
}

/// Normal forms of `c·w₀(c)` over all Coxeter elements `c`.
pub fn cluster_word_classes(cartan: &CartanMatrix) -> BTreeSet<Vec<usize>> {
    cartan
        .coxeter_elements()
        .iter()
        .map(|c| {
            let word = c.word().concat(&cartan.sorting_word(c));
            commutation_normal_form(cartan, word.letters())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Root-independent with full support, yet not a cluster word.
    NotClusterWord(Word),
    /// A cluster word lacking root independence or full support.
    ClusterWordFails(Word),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanResult {
    pub words: usize,
    pub spherical: usize,
    pub independent_full_support: usize,
    pub cluster_words: usize,
    pub truncated: bool,
    pub violations: Vec<Violation>,
}

/// All words over the alphabet of `cartan` with length `1..=max_length`.
pub fn scan(cartan: &CartanMatrix, max_length: usize) -> ScanResult {
    let n = cartan.rank();
    let classes = cluster_word_classes(cartan);
    let min_length = cartan.num_positive_roots();
    let mut result = ScanResult::default();
    'lengths: for len in min_length.max(1)..=max_length {
        let mut word = vec![1usize; len];
        loop {
            if result.words == WORD_LIMIT {
                result.truncated = true;
                break 'lengths;
            }
            result.words += 1;
            if let Ok(spec) = SubwordComplex::new(cartan.clone(), Word(word.clone())) {
                result.spherical += 1;
                let good = spec.is_root_independent() && spec.has_full_support();
                let cluster = classes.contains(&commutation_normal_form(cartan, &word));
                result.independent_full_support += usize::from(good);
                result.cluster_words += usize::from(cluster);
                if good && !cluster {
                    result.violations.push(Violation::NotClusterWord(Word(word.clone())));
                } else if cluster && !good {
                    result.violations.push(Violation::ClusterWordFails(Word(word.clone())));
                }
            }
            // Odometer increment over letters 1..=n.
            let mut pos = len;
            loop {
                if pos == 0 {
                    continue 'lengths;
                }
                pos -= 1;
                if word[pos] < n {
                    word[pos] += 1;
                    break;
                }
                word[pos] = 1;
            }
        }
    }
    result
}

impl ScanResult {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "{} words, {} spherical, {} root-independent with full support, {} cluster words{}",
            self.words,
            self.spherical,
            self.independent_full_support,
            self.cluster_words,
            if self.truncated { " (truncated)" } else { "" }
        )];
        for v in &self.violations {
            out.push(match v {
                Violation::NotClusterWord(w) => format!("{w}: root-independent with full support, not c·w0(c)"),
                Violation::ClusterWordFails(w) => format!("{w}: c·w0(c) without root independence or full support"),
            });
        }
        out
    }
}
