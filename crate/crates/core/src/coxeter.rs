//! Finite crystallographic root systems and their Weyl groups.
//!
//! Vectors are always expressed in the simple-root basis. Weights are converted
//! to fundamental-weight coordinates with `d = C·c`, where `C` is the Cartan
//! matrix and `s_s(α_t) = α_t − a_{st} α_s`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{compact, int, QVec, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidCartanType { family: family.letter(), rank })
        }
    }

    /// Number of positive roots.
    pub fn num_positive_roots(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// All valid types with rank at most `max_rank`, in family order.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let families = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
        let mut out = Vec::new();
        for family in families {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty Cartan type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::Parse(format!("unknown family in {s:?}"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// Coordinates in the simple-root basis Δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootCoords(pub QVec);

/// Coordinates in the fundamental-weight basis ∇.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightCoords(pub QVec);

impl RootCoords {
    pub fn from_ints(v: &[i64]) -> Self {
        RootCoords(v.iter().map(|&x| int(x)).collect())
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Self::from_ints(&v)
    }
}

impl fmt::Display for RootCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_Δ", compact(&self.0))
    }
}

impl fmt::Display for WeightCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_∇", compact(&self.0))
    }
}

/// A finite sequence of letters in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Parses `123121` or `1,2,3` (commas required once a letter exceeds 9).
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        let letters: std::result::Result<Vec<usize>, _> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<usize>()).collect()
        } else {
            s.chars().map(|c| c.to_string().parse::<usize>()).collect()
        };
        let letters = letters.map_err(|_| Error::Parse(format!("bad word {s:?}")))?;
        if letters.contains(&0) {
            return Err(Error::Parse(format!("letters are 1-based in {s:?}")));
        }
        Ok(Word(letters))
    }

    pub fn check_alphabet(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l > n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, rank: n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

/// A word using every letter exactly once; a reduced word of a Coxeter element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterWord(Word);

impl CoxeterWord {
    pub fn new(word: Word, n: usize) -> Result<Self> {
        let set: BTreeSet<usize> = word.0.iter().copied().collect();
        if word.len() != n || set.len() != n || set.iter().any(|&l| l == 0 || l > n) {
            return Err(Error::Parse(format!("{word} is not a Coxeter word of rank {n}")));
        }
        Ok(CoxeterWord(word))
    }

    pub fn standard(n: usize) -> Self {
        CoxeterWord(Word((1..=n).collect()))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    /// Position of each letter inside the word (0-based), indexed by `letter - 1`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (idx, &l) in self.0 .0.iter().enumerate() {
            pos[l - 1] = idx;
        }
        pos
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Weyl group element as an integer matrix over the root basis; column `j`
/// holds the image of `α_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    m: Vec<Vec<i64>>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        let m = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        GroupElement { m }
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn apply_ints(&self, v: &[i64]) -> Vec<i64> {
        self.m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn apply(&self, v: &[Rat]) -> QVec {
        self.m
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, _)| **a != 0).fold(Rat::zero(), |acc, (a, b)| acc + int(*a) * b))
            .collect()
    }

    /// `self · other` (other acts first).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..n).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        GroupElement { m }
    }

    /// Right multiplication by the simple reflection of `letter`. Only column
    /// `letter` changes: `g(s(α_t)) = g(α_t) − a_{st} g(α_s)`.
    pub fn times_simple(&self, cartan: &CartanMatrix, letter: usize) -> GroupElement {
        let s = letter - 1;
        let mut m = self.m.clone();
        let n = self.rank();
        for t in 0..n {
            let a = cartan.a[s][t];
            if t == s {
                for row in m.iter_mut() {
                    row[s] = -row[s];
                }
            } else if a != 0 {
                for (row, orig) in m.iter_mut().zip(&self.m) {
                    row[t] -= a * orig[s];
                }
            }
        }
        GroupElement { m }
    }

    /// Left multiplication by the simple reflection of `letter`.
    pub fn simple_times(&self, cartan: &CartanMatrix, letter: usize) -> GroupElement {
        let cols: Vec<Vec<i64>> = (0..self.rank())
            .map(|j| {
                let col: Vec<i64> = self.m.iter().map(|row| row[j]).collect();
                cartan.reflect_ints(letter, &col)
            })
            .collect();
        let n = self.rank();
        let m = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        GroupElement { m }
    }
}

/// Cartan matrix of a finite crystallographic root system together with
/// derived data (inverse, symmetrizer, positive roots).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    cartan_type: Option<CartanType>,
    inverse: Vec<QVec>,
    symmetrizer: Vec<i64>,
    roots: Vec<Vec<i64>>,
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

/// Standard Bourbaki Cartan matrix.
pub fn build_cartan(t: CartanType) -> CartanMatrix {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |s: usize, t: usize, ast: i64, ats: i64| {
        a[s][t] = ast;
        a[t][s] = ats;
    };
    match t.family {
        Family::A => path_edges(n).into_iter().for_each(|(s, t)| link(s, t, -1, -1)),
        Family::B => {
            path_edges(n - 1).into_iter().for_each(|(s, t)| link(s, t, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            path_edges(n - 1).into_iter().for_each(|(s, t)| link(s, t, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            path_edges(n - 1).into_iter().for_each(|(s, t)| link(s, t, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for s in 2..n - 1 {
                link(s, s + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -3, -1),
    }
    let mut c = CartanMatrix::new(a).expect("standard Cartan matrices are of finite type");
    c.cartan_type = Some(t);
    c
}

impl CartanMatrix {
    /// Validates the Cartan axioms and finite type (all leading principal minors
    /// positive), then precomputes derived data.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) {
            return Err(Error::NotFiniteType("matrix must be square and nonempty".into()));
        }
        for s in 0..n {
            if a[s][s] != 2 {
                return Err(Error::NotFiniteType(format!("diagonal entry {s} is not 2")));
            }
            for t in 0..n {
                if s != t && (a[s][t] > 0 || (a[s][t] == 0) != (a[t][s] == 0)) {
                    return Err(Error::NotFiniteType(format!("bad off-diagonal pair ({s},{t})")));
                }
            }
        }
        let q: Vec<QVec> = a.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        for k in 1..=n {
            let minor: Vec<QVec> = q[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !linalg::determinant(&minor).is_positive() {
                return Err(Error::NotFiniteType(format!("leading minor {k} is not positive")));
            }
        }
        let inverse = linalg::inverse(&q).expect("positive determinant");
        let symmetrizer = compute_symmetrizer(&a)?;
        let mut c = CartanMatrix { a, cartan_type: None, inverse, symmetrizer, roots: Vec::new() };
        c.roots = c.compute_positive_roots();
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    /// Minimal positive integers `d` with `d_s a_{st} = d_t a_{ts}`; proportional
    /// to the squared root lengths.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    fn check_letter(&self, letter: usize) {
        assert!((1..=self.rank()).contains(&letter), "letter {letter} out of range 1..={}", self.rank());
    }

    /// Simple reflection `s_letter` applied to root coordinates.
    pub fn reflect(&self, letter: usize, v: &RootCoords) -> RootCoords {
        self.check_letter(letter);
        let s = letter - 1;
        let pairing = self.a[s].iter().zip(&v.0).fold(Rat::zero(), |acc, (a, x)| acc + int(*a) * x);
        let mut out = v.0.clone();
        out[s] -= pairing;
        RootCoords(out)
    }

    pub(crate) fn reflect_ints(&self, letter: usize, v: &[i64]) -> Vec<i64> {
        let s = letter - 1;
        let pairing: i64 = self.a[s].iter().zip(v).map(|(a, x)| a * x).sum();
        let mut out = v.to_vec();
        out[s] -= pairing;
        out
    }

    pub fn simple_reflection(&self, letter: usize) -> GroupElement {
        self.check_letter(letter);
        GroupElement::identity(self.rank()).times_simple(self, letter)
    }

    /// `d = C·c`.
    pub fn weight_coords(&self, v: &RootCoords) -> WeightCoords {
        WeightCoords(
            self.a.iter().map(|row| row.iter().zip(&v.0).fold(Rat::zero(), |acc, (a, x)| acc + int(*a) * x)).collect(),
        )
    }

    /// Solves `C·c = d`.
    pub fn root_coords(&self, d: &WeightCoords) -> RootCoords {
        RootCoords(
            self.inverse.iter().map(|row| row.iter().zip(&d.0).fold(Rat::zero(), |acc, (a, x)| acc + a * x)).collect(),
        )
    }

    /// Root coordinates of the fundamental weight `ω_letter`.
    pub fn fundamental_weight(&self, letter: usize) -> RootCoords {
        self.check_letter(letter);
        RootCoords(self.inverse.iter().map(|row| row[letter - 1].clone()).collect())
    }

    pub fn positive_roots(&self) -> Vec<RootCoords> {
        self.roots.iter().map(|r| RootCoords::from_ints(r)).collect()
    }

    /// Breadth-first closure of Δ under simple reflections, keeping positive
    /// vectors; each layer sorted lexicographically.
    fn compute_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut layer: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        layer.sort();
        seen.extend(layer.iter().cloned());
        let mut out = Vec::new();
        while !layer.is_empty() {
            out.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for root in &layer {
                for letter in 1..=n {
                    let image = self.reflect_ints(letter, root);
                    if image.iter().all(|&x| x >= 0) && !seen.contains(&image) {
                        seen.insert(image.clone());
                        next.insert(image);
                    }
                }
            }
            layer = next.into_iter().collect();
        }
        out
    }

    /// Applies the product `q_1 q_2 ⋯ q_m` to `v` (rightmost letter first).
    pub fn act(&self, word: &Word, v: &[Rat]) -> QVec {
        let mut out = RootCoords(v.to_vec());
        for &letter in word.0.iter().rev() {
            out = self.reflect(letter, &out);
        }
        out.0
    }

    /// Weight-basis version of [`CartanMatrix::act`]: `s(ω_t) = ω_t − δ_{st} α_s`.
    pub fn act_weight(&self, word: &Word, d: &WeightCoords) -> WeightCoords {
        let mut out = d.0.clone();
        for &letter in word.0.iter().rev() {
            self.check_letter(letter);
            let s = letter - 1;
            let coeff = out[s].clone();
            for (t, x) in out.iter_mut().enumerate() {
                *x -= &coeff * int(self.a[t][s]);
            }
        }
        WeightCoords(out)
    }

    pub fn word_element(&self, word: &Word) -> GroupElement {
        word.0.iter().fold(GroupElement::identity(self.rank()), |g, &l| g.times_simple(self, l))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, g: &GroupElement) -> usize {
        self.roots.iter().filter(|r| g.apply_ints(r).iter().any(|&x| x < 0)).count()
    }

    pub fn is_reduced(&self, word: &Word) -> bool {
        // Each step must map α_letter to a positive root under the current prefix.
        let mut g = GroupElement::identity(self.rank());
        for &letter in &word.0 {
            if !self.is_right_ascent(&g, letter) {
                return false;
            }
            g = g.times_simple(self, letter);
        }
        true
    }

    /// `ℓ(g·s) > ℓ(g)`, i.e. `g(α_s)` is positive.
    pub fn is_right_ascent(&self, g: &GroupElement, letter: usize) -> bool {
        let s = letter - 1;
        g.matrix().iter().all(|row| row[s] >= 0)
    }

    /// Greedy ascent: repeatedly multiply by the smallest length-increasing letter.
    pub fn longest_element(&self) -> GroupElement {
        self.longest_word_and_element().1
    }

    pub fn longest_word_and_element(&self) -> (Word, GroupElement) {
        let mut g = GroupElement::identity(self.rank());
        let mut word = Vec::new();
        while let Some(letter) = (1..=self.rank()).find(|&l| self.is_right_ascent(&g, l)) {
            g = g.times_simple(self, letter);
            word.push(letter);
        }
        (Word(word), g)
    }

    /// Lexicographically first subword of `c^∞` that is a reduced word for w₀.
    pub fn sorting_word(&self, c: &CoxeterWord) -> Word {
        let w0 = self.longest_element();
        let target = self.num_positive_roots();
        let mut prefix: Vec<usize> = Vec::new();
        let mut prefix_inv = GroupElement::identity(self.rank());
        'outer: while prefix.len() < target {
            for &letter in &c.word().0 {
                // u = prefix⁻¹ w₀; letter is a left descent of u iff ℓ(s u) < ℓ(u).
                let u = prefix_inv.compose(&w0);
                let su = u.simple_times(self, letter);
                if self.length(&su) < self.length(&u) {
                    prefix.push(letter);
                    prefix_inv = prefix_inv.simple_times(self, letter);
                    if prefix.len() == target {
                        break 'outer;
                    }
                }
            }
        }
        Word(prefix)
    }

    /// One Coxeter word per distinct Coxeter element (the lexicographically
    /// first ordering producing it).
    pub fn coxeter_elements(&self) -> Vec<CoxeterWord> {
        let n = self.rank();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for perm in (1..=n).permutations(n) {
            let word = Word(perm);
            if seen.insert(self.word_element(&word)) {
                out.push(CoxeterWord(word));
            }
        }
        out
    }

    pub fn is_positive_root(&self, v: &RootCoords) -> bool {
        crate::rational::to_ints(&v.0).is_some_and(|ints| self.roots.contains(&ints))
    }
}

fn compute_symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    // Propagate d_t = d_s a_{st} / a_{ts} along the Dynkin diagram.
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(int(1));
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let ds = d[s].clone().expect("visited");
            for t in 0..n {
                if t == s || a[s][t] == 0 {
                    continue;
                }
                let dt = &ds * int(a[s][t]) / int(a[t][s]);
                match &d[t] {
                    None => {
                        d[t] = Some(dt);
                        queue.push_back(t);
                    }
                    Some(existing) if *existing != dt => {
                        return Err(Error::NotFiniteType("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().map(|x| x.expect("all assigned")).collect();
    let den = crate::rational::common_denominator(&d);
    let scaled: Vec<num_bigint::BigInt> = d.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
    let g = scaled.iter().fold(num_bigint::BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    Ok(scaled.iter().map(|x| i64::try_from(x / &g).expect("symmetrizer fits in i64")).collect())
}
