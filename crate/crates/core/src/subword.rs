//! Spherical subword complexes: facets, root and weight functions, flips.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_traits::Signed;
use serde::Serialize;

use crate::coxeter::{CartanMatrix, CoxeterWord, GroupElement, RootCoords, Word};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{compact, QVec};

/// Sorted list of 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Facet(pub Vec<usize>);

impl Facet {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        Facet(positions)
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    fn replace(&self, old: usize, new: usize) -> Facet {
        Facet::new(self.0.iter().map(|&p| if p == old { new } else { p }).collect())
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "∅")
        } else if self.0.iter().all(|&p| p < 10) {
            write!(f, "{}", self.0.iter().join(""))
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

/// Root and weight function values of one facet, indexed by position − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetTable {
    pub roots: Vec<RootCoords>,
    pub weights: Vec<RootCoords>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSequence {
    pub facets: Vec<Facet>,
    /// `(i, j)` with `I_ℓ ∖ i = I_{ℓ+1} ∖ j`.
    pub pivots: Vec<(usize, usize)>,
}

/// Left-to-right product absorbing letters that would decrease the length.
pub fn demazure_product(cartan: &CartanMatrix, letters: impl IntoIterator<Item = usize>) -> GroupElement {
    let mut g = GroupElement::identity(cartan.rank());
    for letter in letters {
        if cartan.is_right_ascent(&g, letter) {
            g = g.times_simple(cartan, letter);
        }
    }
    g
}

/// The subword complex Δ(Q) for a word Q whose Demazure product is w₀.
#[derive(Debug)]
pub struct SubwordComplex {
    cartan: CartanMatrix,
    word: Word,
    coxeter: Option<CoxeterWord>,
    w0: GroupElement,
    num_positive_roots: usize,
    facets: OnceLock<Vec<Facet>>,
    greedy: OnceLock<Facet>,
    antigreedy: OnceLock<Facet>,
    tables: Mutex<HashMap<Facet, Arc<FacetTable>>>,
}

impl SubwordComplex {
    pub fn new(cartan: CartanMatrix, word: Word) -> Result<Self> {
        word.check_alphabet(cartan.rank())?;
        let w0 = cartan.longest_element();
        if demazure_product(&cartan, word.0.iter().copied()) != w0 {
            return Err(Error::DemazureTooShort { word: word.to_string() });
        }
        let num_positive_roots = cartan.num_positive_roots();
        Ok(SubwordComplex {
            cartan,
            word,
            coxeter: None,
            w0,
            num_positive_roots,
            facets: OnceLock::new(),
            greedy: OnceLock::new(),
            antigreedy: OnceLock::new(),
            tables: Mutex::new(HashMap::new()),
        })
    }

    /// The cluster complex word `c·w₀(c)`.
    pub fn cluster(cartan: CartanMatrix, c: &CoxeterWord) -> Result<Self> {
        let word = c.word().concat(&cartan.sorting_word(c));
        let mut spec = Self::new(cartan, word)?;
        spec.coxeter = Some(c.clone());
        Ok(spec)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn coxeter_word(&self) -> Option<&CoxeterWord> {
        self.coxeter.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Length m of the word.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.num_positive_roots
    }

    pub fn facet_size(&self) -> usize {
        self.len() - self.num_positive_roots
    }

    pub fn longest_element(&self) -> &GroupElement {
        &self.w0
    }

    fn letter(&self, position: usize) -> usize {
        self.word.0[position - 1]
    }

    /// Complement of `positions` is a reduced word for w₀.
    pub fn is_facet(&self, positions: &[usize]) -> bool {
        let m = self.len();
        let set: BTreeSet<usize> = positions.iter().copied().collect();
        if set.len() != positions.len() || set.iter().any(|&p| p == 0 || p > m) {
            return false;
        }
        if m - set.len() != self.num_positive_roots {
            return false;
        }
        let mut g = GroupElement::identity(self.rank());
        for position in (1..=m).filter(|p| !set.contains(p)) {
            let letter = self.letter(position);
            if !self.cartan.is_right_ascent(&g, letter) {
                return false;
            }
            g = g.times_simple(&self.cartan, letter);
        }
        g == self.w0
    }

    fn complement_contains_w0(&self, removed: &BTreeSet<usize>) -> bool {
        let letters = (1..=self.len()).filter(|p| !removed.contains(p)).map(|p| self.letter(p));
        demazure_product(&self.cartan, letters) == self.w0
    }

    /// Left-to-right scan adding each position whose removal keeps w₀ reachable.
    pub fn greedy_facet(&self) -> &Facet {
        self.greedy.get_or_init(|| {
            let mut removed = BTreeSet::new();
            for p in 1..=self.len() {
                removed.insert(p);
                if !self.complement_contains_w0(&removed) {
                    removed.remove(&p);
                }
            }
            Facet(removed.into_iter().collect())
        })
    }

    pub fn antigreedy_facet(&self) -> &Facet {
        self.antigreedy.get_or_init(|| {
            let mut removed = BTreeSet::new();
            for p in (1..=self.len()).rev() {
                removed.insert(p);
                if !self.complement_contains_w0(&removed) {
                    removed.remove(&p);
                }
            }
            Facet(removed.into_iter().collect())
        })
    }

    /// Root and weight function of a facet (cached).
    pub fn table(&self, facet: &Facet) -> Arc<FacetTable> {
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(facet) {
            return Arc::clone(t);
        }
        let table = Arc::new(self.compute_table(facet));
        self.tables.lock().expect("table cache poisoned").entry(facet.clone()).or_insert(table).clone()
    }

    fn compute_table(&self, facet: &Facet) -> FacetTable {
        let n = self.rank();
        let mut g = GroupElement::identity(n);
        let mut roots = Vec::with_capacity(self.len());
        let mut weights = Vec::with_capacity(self.len());
        for k in 1..=self.len() {
            let letter = self.letter(k);
            roots.push(RootCoords(g.apply(&RootCoords::simple(n, letter).0)));
            weights.push(RootCoords(g.apply(&self.cartan.fundamental_weight(letter).0)));
            if !facet.contains(k) {
                g = g.times_simple(&self.cartan, letter);
            }
        }
        FacetTable { roots, weights }
    }

    /// `r(I,k)`: the complement letters before `k`, applied to `α_{q_k}`.
    pub fn root_function(&self, facet: &Facet, k: usize) -> RootCoords {
        self.table(facet).roots[k - 1].clone()
    }

    /// `w(I,k)`: the complement letters before `k`, applied to `ω_{q_k}`.
    pub fn weight_function(&self, facet: &Facet, k: usize) -> RootCoords {
        self.table(facet).weights[k - 1].clone()
    }

    /// The unique facet `J` and position `j` with `I ∖ i = J ∖ j`.
    pub fn flip(&self, facet: &Facet, i: usize) -> (Facet, usize) {
        assert!(facet.contains(i), "position {i} is not in facet {facet}");
        let table = self.table(facet);
        let target = &table.roots[i - 1];
        let negated = RootCoords(target.0.iter().map(|x| -x).collect());
        let candidates = (1..=self.len())
            .filter(|&k| !facet.contains(k))
            .filter(|&k| table.roots[k - 1] == *target || table.roots[k - 1] == negated);
        for k in candidates {
            let j = facet.replace(i, k);
            if self.is_facet(&j.0) {
                return (j, k);
            }
        }
        self.flip_brute_force(facet, i)
    }

    /// Flip without the root-function filter.
    pub fn flip_brute_force(&self, facet: &Facet, i: usize) -> (Facet, usize) {
        for k in (1..=self.len()).filter(|&k| !facet.contains(k)) {
            let j = facet.replace(i, k);
            if self.is_facet(&j.0) {
                return (j, k);
            }
        }
        panic!("no flip of {i} in {facet}: complex is not spherical")
    }

    /// All facets, by breadth-first flips from the greedy facet; sorted.
    pub fn facets(&self) -> &[Facet] {
        self.facets.get_or_init(|| {
            let start = self.greedy_facet().clone();
            let mut seen = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(facet) = queue.pop_front() {
                for &i in &facet.0 {
                    let (next, _) = self.flip(&facet, i);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            seen.into_iter().collect()
        })
    }

    /// Every `(m − N)`-subset tested directly.
    pub fn facets_brute_force(&self) -> Vec<Facet> {
        (1..=self.len()).combinations(self.facet_size()).filter(|c| self.is_facet(c)).map(Facet).collect()
    }

    /// Number of subsets the brute-force enumerator inspects.
    pub fn brute_force_candidates(&self) -> u128 {
        let (m, k) = (self.len() as u128, self.facet_size() as u128);
        (0..k).fold(1u128, |acc, i| acc * (m - i) / (i + 1))
    }

    /// Increasing flips `I ≺ J` among all facets.
    pub fn increasing_flips(&self) -> Vec<(Facet, Facet)> {
        let mut out = Vec::new();
        for facet in self.facets() {
            for &i in &facet.0 {
                let (next, j) = self.flip(facet, i);
                if i < j {
                    out.push((facet.clone(), next));
                }
            }
        }
        out
    }

    /// Greedy to antigreedy, entering positions `n+1, …, n+N` in order.
    pub fn canonical_long_flip_sequence(&self) -> Result<FlipSequence> {
        let n = self.rank();
        if self.len() != n + self.num_positive_roots {
            return Err(Error::NotClusterWord(format!(
                "word {} has length {}, expected n+N = {}",
                self.word,
                self.len(),
                n + self.num_positive_roots
            )));
        }
        let mut current = self.greedy_facet().clone();
        let mut facets = vec![current.clone()];
        let mut pivots = Vec::new();
        for step in 0..self.num_positive_roots {
            let entering = step + 1 + n;
            let found = current.0.iter().find_map(|&i| {
                let (next, j) = self.flip(&current, i);
                (j == entering).then_some((i, next))
            });
            let Some((i, next)) = found else {
                return Err(Error::NotClusterWord(format!("no flip of {current} brings in position {entering}")));
            };
            pivots.push((i, entering));
            facets.push(next.clone());
            current = next;
        }
        if &current != self.antigreedy_facet() {
            return Err(Error::NotClusterWord(format!("sequence ends at {current}, not the antigreedy facet")));
        }
        Ok(FlipSequence { facets, pivots })
    }

    /// Roots of the greedy facet are linearly independent.
    pub fn is_root_independent(&self) -> bool {
        let greedy = self.greedy_facet();
        let table = self.table(greedy);
        let roots: Vec<QVec> = greedy.0.iter().map(|&i| table.roots[i - 1].0.clone()).collect();
        linalg::rank(&roots) == roots.len()
    }

    pub fn has_full_support(&self) -> bool {
        self.unsupported_positions().is_empty()
    }

    /// Positions lying in no facet.
    pub fn unsupported_positions(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.facets().iter().flat_map(|f| f.0.iter().copied()).collect();
        (1..=self.len()).filter(|p| !used.contains(p)).collect()
    }

    /// Tab-separated table, rows = facets, columns = positions.
    pub fn table_tsv(&self, kind: TableKind, fmt: &dyn Fn(&RootCoords) -> String) -> String {
        let mut out = String::from("I");
        for k in 1..=self.len() {
            out.push_str(&format!("\t{k}"));
        }
        out.push('\n');
        for facet in self.facets() {
            let table = self.table(facet);
            let column = match kind {
                TableKind::Root => &table.roots,
                TableKind::Weight => &table.weights,
            };
            out.push_str(&facet.to_string());
            for value in column {
                out.push('\t');
                out.push_str(&fmt(value));
            }
            out.push('\n');
        }
        out
    }

    pub fn table_records(&self, kind: TableKind) -> Vec<TableRecord> {
        let mut out = Vec::new();
        for facet in self.facets() {
            let table = self.table(facet);
            let column = match kind {
                TableKind::Root => &table.roots,
                TableKind::Weight => &table.weights,
            };
            for (idx, value) in column.iter().enumerate() {
                out.push(TableRecord { facet: facet.0.clone(), position: idx + 1, value: compact(&value.0) });
            }
        }
        out
    }

    /// True iff all greedy-facet roots are positive (used by sanity checks).
    pub fn greedy_roots_positive(&self) -> bool {
        let table = self.table(self.greedy_facet());
        (self.rank() + 1..=self.len()).all(|k| table.roots[k - 1].0.iter().all(|x| !x.is_negative()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Root,
    Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRecord {
    pub facet: Vec<usize>,
    pub position: usize,
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_cartan;
    use crate::rational::{int, qvec};

    fn spec(t: &str, c: &str) -> SubwordComplex {
        let cartan = build_cartan(t.parse().unwrap());
        let n = cartan.rank();
        SubwordComplex::cluster(cartan, &CoxeterWord::new(Word::parse(c).unwrap(), n).unwrap()).unwrap()
    }

    fn word_spec(t: &str, w: &str) -> Result<SubwordComplex> {
        SubwordComplex::new(build_cartan(t.parse().unwrap()), Word::parse(w).unwrap())
    }

    fn facets_of(s: &SubwordComplex) -> Vec<String> {
        s.facets().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn cluster_words() {
        assert_eq!(spec("A3", "123").word().to_string(), "123123121");
        assert_eq!(spec("B2", "12").word().to_string(), "121212");
        assert_eq!(spec("A1", "1").word().to_string(), "11");
    }

    #[test]
    fn build_rejects_short_words() {
        assert!(matches!(word_spec("B2", "121"), Err(Error::DemazureTooShort { .. })));
        let single = word_spec("B2", "1212").unwrap();
        assert_eq!(single.facets(), &[Facet(vec![])]);
        assert_eq!(single.greedy_facet(), single.antigreedy_facet());
    }

    #[test]
    fn demazure() {
        let b2 = build_cartan("B2".parse().unwrap());
        assert_eq!(demazure_product(&b2, [1, 2, 1, 2, 1, 2]), b2.longest_element());
        assert!(demazure_product(&b2, []).is_identity());
        let a1 = build_cartan("A1".parse().unwrap());
        assert_eq!(demazure_product(&a1, [1, 1]), a1.simple_reflection(1));
    }

    #[test]
    fn facet_lists() {
        let a3 = spec("A3", "123");
        assert_eq!(
            facets_of(&a3),
            ["123", "129", "137", "178", "189", "234", "249", "345", "357", "456", "469", "567", "678", "689"]
        );
        assert!(a3.is_facet(&[1, 2, 3]));
        assert!(!a3.is_facet(&[1, 2, 4]));
        let b2 = spec("B2", "12");
        assert_eq!(facets_of(&b2), ["12", "16", "23", "34", "45", "56"]);
        assert!(b2.is_facet(&[5, 6]));
        assert_eq!(facets_of(&word_spec("B2", "212212").unwrap()), ["13", "14", "36", "46"]);
    }

    #[test]
    fn flip_bfs_matches_brute_force() {
        for (t, c) in [("A3", "123"), ("B2", "21"), ("G2", "12"), ("A4", "2143"), ("C3", "312")] {
            let s = spec(t, c);
            assert_eq!(s.facets(), s.facets_brute_force().as_slice(), "{t} {c}");
        }
    }

    #[test]
    fn root_and_weight_functions() {
        let a3 = spec("A3", "123");
        assert_eq!(a3.root_function(&Facet(vec![1, 2, 9]), 6), RootCoords::from_ints(&[1, 1, 0]));
        assert_eq!(a3.root_function(&Facet(vec![4, 5, 6]), 1), RootCoords::simple(3, 1));
        let b2 = spec("B2", "12");
        assert_eq!(b2.root_function(&Facet(vec![4, 5]), 5), RootCoords::from_ints(&[-1, -2]));
        // Ambient 02 is α₂ in root coordinates.
        assert_eq!(b2.weight_function(&Facet(vec![1, 2]), 5).0, qvec(&[0, 1]));
        assert_eq!(b2.weight_function(&Facet(vec![3, 4]), 1), b2.cartan().fundamental_weight(1));
        // Shifted ambient 1010 is e₁ + e₃ − ½(1,1,1,1).
        let w = a3.weight_function(&Facet(vec![1, 3, 7]), 5);
        assert_eq!(w.0, vec![crate::rational::frac(1, 2), int(0), crate::rational::frac(1, 2)]);
    }

    #[test]
    fn flips() {
        let a3 = spec("A3", "123");
        assert_eq!(a3.flip(&Facet(vec![1, 2, 3]), 1), (Facet(vec![2, 3, 4]), 4));
        let b2 = spec("B2", "12");
        assert_eq!(b2.flip(&Facet(vec![1, 2]), 1), (Facet(vec![2, 3]), 3));
        for facet in a3.facets() {
            for &i in &facet.0 {
                let (j_facet, j) = a3.flip(facet, i);
                assert_eq!(a3.flip(&j_facet, j), (facet.clone(), i));
                assert_eq!(a3.flip_brute_force(facet, i), (j_facet, j));
            }
        }
    }

    #[test]
    fn greedy_and_antigreedy() {
        let a3 = spec("A3", "123");
        assert_eq!(a3.greedy_facet().to_string(), "123");
        assert_eq!(a3.antigreedy_facet().to_string(), "689");
        let b2 = spec("B2", "12");
        assert_eq!(b2.greedy_facet().to_string(), "12");
        assert_eq!(b2.antigreedy_facet().to_string(), "56");
    }

    #[test]
    fn canonical_sequences() {
        let seq = spec("A3", "123").canonical_long_flip_sequence().unwrap();
        let names: Vec<String> = seq.facets.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["123", "234", "345", "456", "567", "678", "689"]);
        let seq = spec("B2", "12").canonical_long_flip_sequence().unwrap();
        let names: Vec<String> = seq.facets.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["12", "23", "34", "45", "56"]);
        let seq = spec("A1", "1").canonical_long_flip_sequence().unwrap();
        assert_eq!(seq.facets, vec![Facet(vec![1]), Facet(vec![2])]);
        assert!(matches!(
            word_spec("B2", "1212121").unwrap().canonical_long_flip_sequence(),
            Err(Error::NotClusterWord(_))
        ));
    }

    #[test]
    fn independence_and_support() {
        let q = word_spec("B2", "1212121").unwrap();
        assert!(!q.is_root_independent());
        assert!(q.has_full_support());
        let q = word_spec("B2", "212212").unwrap();
        assert!(q.is_root_independent());
        assert_eq!(q.unsupported_positions(), vec![2, 5]);
        let q = spec("B2", "12");
        assert!(q.is_root_independent() && q.has_full_support());
    }

    #[test]
    fn weights_under_flips() {
        for (t, c) in [("A3", "123"), ("B2", "12"), ("G2", "21"), ("C3", "132")] {
            let s = spec(t, c);
            for facet in s.facets() {
                for &i in &facet.0 {
                    let (j_facet, j) = s.flip(facet, i);
                    if i > j {
                        continue;
                    }
                    let r = s.root_function(facet, i);
                    for k in 1..=s.len() {
                        let diff =
                            crate::rational::sub(&s.weight_function(facet, k).0, &s.weight_function(&j_facet, k).0);
                        let lambda = multiple_of(&diff, &r.0).expect("difference is a multiple of r(I,i)");
                        assert!(lambda >= int(0) && lambda.is_integer(), "{t}{c} {facet} {i} {k}");
                    }
                }
            }
        }
    }

    fn multiple_of(v: &[crate::rational::Rat], r: &[crate::rational::Rat]) -> Option<crate::rational::Rat> {
        let idx = r.iter().position(|x| !num_traits::Zero::is_zero(x))?;
        let lambda = &v[idx] / &r[idx];
        (crate::rational::scale(r, &lambda) == v).then_some(lambda)
    }
}
