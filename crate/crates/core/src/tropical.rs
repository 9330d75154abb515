//! Tropicalization of the cluster parametrization and its slice at `x = 0`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brick::{g_vector_fan, BrickGeometry};
use crate::cluster::{newton_polytope, ClusterData, ClusterVariable};
use crate::coxeter::RootCoords;
use crate::error::{Error, Result};
use crate::polyhedra::hull_vertices;
use crate::rational::{self, int, QVec, Rat};
use crate::subword::SubwordComplex;

/// `x_β·x^β − p_β` over the variables `(X_Δ, X_Φ⁺, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPolynomial {
    pub beta: RootCoords,
    pub positive: Vec<i64>,
    pub negative: Vec<Vec<i64>>,
}

/// One coordinate `Trop Ψ_β = max_{e ∈ E_β} ⟨w, e⟩ − ⟨w_x, β⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropCoordinate {
    pub beta: RootCoords,
    /// Support of `p_β` in `(x, y)`, sorted.
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropMap {
    pub n: usize,
    pub coords: Vec<TropCoordinate>,
}

/// Per coordinate, the indices into `E_β` attaining the maximum.
pub type Signature = Vec<Vec<usize>>;

fn numerator_support(var: &ClusterVariable) -> Vec<Vec<i64>> {
    let n = var.expr.rank();
    let beta = rational::to_ints(&var.d_vector.0).expect("integer d-vector");
    let mut out: Vec<Vec<i64>> = var
        .expr
        .terms()
        .keys()
        .map(|e| e.iter().enumerate().map(|(i, &a)| i64::from(a) + if i < n { beta[i] } else { 0 }).collect())
        .collect();
    out.sort();
    out
}

pub fn build_trop_map(records: &[&ClusterVariable]) -> TropMap {
    let n = records.first().map_or(0, |r| r.expr.rank());
    let coords =
        records.iter().map(|r| TropCoordinate { beta: r.d_vector.clone(), exponents: numerator_support(r) }).collect();
    TropMap { n, coords }
}

/// Generators in the order of `records`; `x_β` is variable `n + index`.
pub fn build_generators(records: &[&ClusterVariable]) -> Vec<GeneratorPolynomial> {
    let n = records.first().map_or(0, |r| r.expr.rank());
    let big_n = records.len();
    let dim = 2 * n + big_n;
    records
        .iter()
        .enumerate()
        .map(|(idx, r)| {
            let beta = rational::to_ints(&r.d_vector.0).expect("integer d-vector");
            let mut positive = vec![0i64; dim];
            positive[..n].copy_from_slice(&beta);
            positive[n + idx] = 1;
            let negative = numerator_support(r)
                .into_iter()
                .map(|e| {
                    let mut full = vec![0i64; dim];
                    full[..n].copy_from_slice(&e[..n]);
                    full[n + big_n..].copy_from_slice(&e[n..]);
                    full
                })
                .collect();
            GeneratorPolynomial { beta: r.d_vector.clone(), positive, negative }
        })
        .collect()
}

fn pair(w: &[Rat], e: &[i64]) -> Rat {
    w.iter().zip(e).fold(Rat::zero(), |acc, (a, &b)| if b == 0 { acc } else { acc + a * int(b) })
}

/// Indices of the maximizers of `⟨w, e⟩` over `exponents`, and the maximum.
pub fn argmax_set(exponents: &[Vec<i64>], w: &[Rat]) -> (Vec<usize>, Rat) {
    let values: Vec<Rat> = exponents.iter().map(|e| pair(w, e)).collect();
    let max = values.iter().max().expect("nonempty exponent set").clone();
    let idx = values.iter().enumerate().filter(|(_, v)| **v == max).map(|(i, _)| i).collect();
    (idx, max)
}

/// Values of every coordinate at `w ∈ ℚ^{X_Δ ⊔ Y}` and the argmax signature.
pub fn trop_eval(map: &TropMap, w: &[Rat]) -> Result<(QVec, Signature)> {
    if w.len() != 2 * map.n {
        return Err(Error::IndexMismatch { expected: 2 * map.n, got: w.len() });
    }
    let mut values = Vec::with_capacity(map.coords.len());
    let mut sig = Vec::with_capacity(map.coords.len());
    for c in &map.coords {
        let (idx, max) = argmax_set(&c.exponents, w);
        values.push(max - rational::dot(&w[..map.n], &c.beta.0));
        sig.push(idx);
    }
    Ok((values, sig))
}

/// The maximum over all monomials of `g` is attained on both sides.
pub fn is_on_positive_hypersurface(g: &GeneratorPolynomial, w: &[Rat]) -> Result<bool> {
    if w.len() != g.positive.len() {
        return Err(Error::IndexMismatch { expected: g.positive.len(), got: w.len() });
    }
    let pos = pair(w, &g.positive);
    let neg = g.negative.iter().map(|e| pair(w, e)).max().expect("nonempty negative part");
    Ok(pos == neg)
}

/// `(w_x, Trop Ψ(w), w_y)` in the variable order `(X_Δ, X_Φ⁺, Y)`.
pub fn graph_point(map: &TropMap, w: &[Rat]) -> Result<QVec> {
    let (values, _) = trop_eval(map, w)?;
    let mut out = w[..map.n].to_vec();
    out.extend(values);
    out.extend_from_slice(&w[map.n..]);
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeSignature {
    pub facet: Vec<usize>,
    pub sample: Vec<String>,
    /// Per positive root (position order), the maximizing exponents in compact form.
    pub argmax: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub num_cones: usize,
    pub distinct_signatures: usize,
    /// Roots whose y-projection of `E_β` is not the support of `F_β`.
    pub projection_failures: Vec<String>,
    /// Facets whose perturbed samples changed signature.
    pub constancy_failures: Vec<Vec<usize>>,
    pub homogeneity_failures: usize,
    pub graph_failures: usize,
    pub graph_samples: usize,
    pub cones: Vec<ConeSignature>,
}

impl SliceReport {
    pub fn passed(&self) -> bool {
        self.distinct_signatures == self.num_cones
            && self.projection_failures.is_empty()
            && self.constancy_failures.is_empty()
            && self.homogeneity_failures == 0
            && self.graph_failures == 0
    }
}

const PERTURBATIONS: usize = 8;
const RETRIES: usize = 5;

fn random_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    Rat::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1i64..=bound).into())
}

/// Slice of the tropical parametrization at `x = 0` against the g-vector fan.
pub fn verify_slice_isomorphism(spec: &SubwordComplex, data: &ClusterData, seed: u64) -> Result<SliceReport> {
    let geometry = BrickGeometry::new(spec)?;
    let records = data.in_position_order(&geometry)?;
    let map = build_trop_map(&records);
    let n = spec.rank();
    let gfan = g_vector_fan(spec)?;
    let fan = &gfan.fan;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut projection_failures = Vec::new();
    for (coord, var) in map.coords.iter().zip(&records) {
        let f = var.f_polynomial.as_ref().expect("non-initial");
        let projected: BTreeSet<Vec<i64>> = coord.exponents.iter().map(|e| e[n..].to_vec()).collect();
        let support: BTreeSet<Vec<i64>> =
            f.y_exponents().into_iter().map(|e| e.into_iter().map(i64::from).collect()).collect();
        let points: Vec<QVec> = projected.iter().map(|e| e.iter().map(|&a| int(a)).collect()).collect();
        if projected != support || hull_vertices(&points)? != newton_polytope(f) {
            projection_failures.push(rational::compact(&coord.beta.0));
        }
    }

    let at_slice = |y: &[Rat]| -> Result<Signature> {
        let mut w = rational::zeros(n);
        w.extend_from_slice(y);
        Ok(trop_eval(&map, &w)?.1)
    };
    let mut cones = Vec::new();
    let mut constancy_failures = Vec::new();
    let mut homogeneity_failures = 0;
    let mut signatures = BTreeSet::new();
    for (c, facet) in spec.facets().iter().enumerate() {
        let center = fan.cone_barycenter(c);
        let sig = at_slice(&center)?;
        let mut constant = true;
        for _ in 0..PERTURBATIONS {
            let delta: QVec = (0..n).map(|_| random_rat(&mut rng, 16)).collect();
            let mut scale = Rat::new(1.into(), 4.into());
            let mut tries = 0;
            let sample = loop {
                let y = rational::add(&center, &rational::scale(&delta, &scale));
                if fan.cone_coordinates(c, &y).iter().all(Signed::is_positive) {
                    break y;
                }
                tries += 1;
                if tries > RETRIES {
                    return Err(Error::SampleEscapedCone { cone: c });
                }
                scale /= int(2);
            };
            if at_slice(&sample)? != sig {
                constant = false;
            }
        }
        let lambda = random_rat(&mut rng, 9).abs() + int(1);
        let mut w = rational::zeros(n);
        w.extend_from_slice(&center);
        let (values, s1) = trop_eval(&map, &w)?;
        let (values2, s2) = trop_eval(&map, &rational::scale(&w, &lambda))?;
        if s1 != s2 || values2 != rational::scale(&values, &lambda) {
            homogeneity_failures += 1;
        }
        if !constant {
            constancy_failures.push(facet.0.clone());
        }
        signatures.insert(sig.clone());
        cones.push(ConeSignature {
            facet: facet.0.clone(),
            sample: center.iter().map(rational::format_rat).collect(),
            argmax: sig
                .iter()
                .zip(&map.coords)
                .map(|(idx, coord)| idx.iter().map(|&i| exponent_label(n, &coord.exponents[i])).collect())
                .collect(),
        });
    }

    let generators = build_generators(&records);
    let graph_samples = 200;
    let mut graph_failures = 0;
    for _ in 0..graph_samples {
        let w: QVec = (0..2 * n).map(|_| random_rat(&mut rng, 50)).collect();
        let point = graph_point(&map, &w)?;
        for g in &generators {
            if !is_on_positive_hypersurface(g, &point)? {
                graph_failures += 1;
            }
        }
    }

    Ok(SliceReport {
        num_cones: spec.facets().len(),
        distinct_signatures: signatures.len(),
        projection_failures,
        constancy_failures,
        homogeneity_failures,
        graph_failures,
        graph_samples,
        cones,
    })
}

/// `x1^2*y1` style label for an exponent over `(x, y)`.
pub fn exponent_label(n: usize, e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| {
            let name = if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
            if a == 1 {
                name
            } else {
                format!("{name}^{a}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn linear_form(n: usize, e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| {
            let name = if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
            if a == 1 {
                name
            } else {
                format!("{a}*{name}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl TropCoordinate {
    /// `max(2*x2, y1) - x1`; arguments in descending lexicographic order.
    pub fn to_expression(&self, n: usize) -> String {
        let args: Vec<String> = self.exponents.iter().rev().map(|e| linear_form(n, e)).collect();
        let mut out = format!("max({})", args.join(", "));
        for (i, b) in self.beta.0.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let name = format!("x{}", i + 1);
            let sign = if b.is_negative() { '+' } else { '-' };
            let mag = b.abs();
            if mag == int(1) {
                out.push_str(&format!(" {sign} {name}"));
            } else {
                out.push_str(&format!(" {sign} {}*{name}", rational::format_rat(&mag)));
            }
        }
        out
    }
}

/// Parses `max(l1, l2, …) - l0` into the argument exponents and `l0`.
pub fn parse_max_expression(n: usize, s: &str) -> Result<(BTreeSet<Vec<i64>>, Vec<i64>)> {
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    let s = s.trim();
    let body = s.strip_prefix("max(").ok_or_else(|| bad("missing max("))?;
    let close = body.find(')').ok_or_else(|| bad("unclosed max("))?;
    let args = body[..close]
        .split(',')
        .map(|a| parse_linear(n, a).ok_or_else(|| bad("bad linear form")))
        .collect::<Result<BTreeSet<_>>>()?;
    let rest = body[close + 1..].trim();
    let shift = if rest.is_empty() {
        vec![0; 2 * n]
    } else {
        parse_linear(n, rest).ok_or_else(|| bad("bad offset"))?.into_iter().map(|a| -a).collect()
    };
    Ok((args, shift))
}

fn parse_linear(n: usize, s: &str) -> Option<Vec<i64>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = vec![0i64; 2 * n];
    if compact == "0" {
        return Some(out);
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.as_bytes().first()? {
            b'-' => (-1, &term[1..]),
            b'+' => (1, &term[1..]),
            _ => (1, term),
        };
        let (coeff, var) = match body.split_once('*') {
            Some((c, v)) => (c.parse::<i64>().ok()?, v),
            None => (1, body),
        };
        let (offset, idx) = match var.as_bytes().first()? {
            b'x' => (0, var[1..].parse::<usize>().ok()?),
            b'y' => (n, var[1..].parse::<usize>().ok()?),
            _ => return None,
        };
        if idx == 0 || idx > n {
            return None;
        }
        out[offset + idx - 1] += sign * coeff;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{all_cluster_variables, initial_matrix, DEFAULT_SEED_BUDGET};
    use crate::coxeter::{build_cartan, CoxeterWord, Word};
    use crate::rational::qvec;

    fn setup(t: &str, c: &str) -> (SubwordComplex, ClusterData) {
        let cartan = build_cartan(t.parse().unwrap());
        let cw = CoxeterWord::new(Word::parse(c).unwrap(), cartan.rank()).unwrap();
        let m = initial_matrix(&cartan, &cw);
        let spec = SubwordComplex::cluster(cartan, &cw).unwrap();
        (spec, all_cluster_variables(&m, DEFAULT_SEED_BUDGET).unwrap())
    }

    fn b2_map() -> (SubwordComplex, ClusterData) {
        setup("B2", "12")
    }

    #[test]
    fn max_expressions_round_trip() {
        let (spec, data) = b2_map();
        let geometry = BrickGeometry::new(&spec).unwrap();
        let map = build_trop_map(&data.in_position_order(&geometry).unwrap());
        let exprs: Vec<String> = map.coords.iter().map(|c| c.to_expression(2)).collect();
        assert_eq!(exprs[0], "max(2*x2, y1) - x1");
        assert_eq!(exprs[3], "max(x1 + y2, 0) - x2");
        for (c, e) in map.coords.iter().zip(&exprs) {
            let (args, shift) = parse_max_expression(2, e).unwrap();
            assert_eq!(args, c.exponents.iter().cloned().collect());
            assert_eq!(shift[..2], rational::to_ints(&c.beta.0).unwrap()[..]);
        }
        assert!(parse_max_expression(2, "min(x1)").is_err());
        assert!(parse_max_expression(2, "max(x3)").is_err());
    }

    #[test]
    fn b2_coordinates() {
        let (spec, data) = b2_map();
        let geometry = BrickGeometry::new(&spec).unwrap();
        let records = data.in_position_order(&geometry).unwrap();
        let map = build_trop_map(&records);
        assert_eq!(map.coords.len(), 4);
        let labels: Vec<Vec<String>> =
            map.coords.iter().map(|c| c.exponents.iter().map(|e| exponent_label(2, e)).collect()).collect();
        assert_eq!(labels[0], ["y1", "x2^2"]);
        assert_eq!(labels[2], ["y1", "x2^2", "x1*y1*y2", "x1^2*y1*y2^2"]);
        assert_eq!(labels[3], ["1", "x1*y2"]);

        let (values, sig) = trop_eval(&map, &rational::zeros(4)).unwrap();
        assert!(values.iter().all(Zero::is_zero));
        assert!(sig.iter().all(|s| s.len() >= 2));

        let (values, sig) = trop_eval(&map, &qvec(&[0, 0, 1, 0])).unwrap();
        assert_eq!(values[0], int(1));
        assert_eq!(sig[0], vec![0]);

        let (idx, max) = argmax_set(&map.coords[2].exponents, &qvec(&[0, 0, 1, 1]));
        assert_eq!(max, int(3));
        assert_eq!(exponent_label(2, &map.coords[2].exponents[idx[0]]), "x1^2*y1*y2^2");
        assert_eq!(idx.len(), 1);
    }

    #[test]
    fn a1_coordinate() {
        let (spec, data) = setup("A1", "1");
        let geometry = BrickGeometry::new(&spec).unwrap();
        let map = build_trop_map(&data.in_position_order(&geometry).unwrap());
        assert_eq!(map.coords[0].exponents, vec![vec![0, 0], vec![0, 1]]);
        let (values, _) = trop_eval(&map, &qvec(&[2, 3])).unwrap();
        assert_eq!(values[0], int(1));
    }

    #[test]
    fn hypersurface_membership() {
        let (spec, data) = b2_map();
        let geometry = BrickGeometry::new(&spec).unwrap();
        let records = data.in_position_order(&geometry).unwrap();
        let gens = build_generators(&records);
        assert!(gens.iter().all(|g| is_on_positive_hypersurface(g, &rational::zeros(8)).unwrap()));
        // Generator for 01: x₂·x₆ − (x₁y₂ + 1); order (x1, x2, x3..x6, y1, y2).
        let g = &gens[3];
        let w = qvec(&[3, 2, 0, 0, 0, 3, 0, 0]);
        assert!(!is_on_positive_hypersurface(g, &w).unwrap());
        assert!(matches!(is_on_positive_hypersurface(g, &qvec(&[0])), Err(Error::IndexMismatch { .. })));
    }

    #[test]
    fn slices() {
        for (t, c, cones) in [("B2", "12", 6), ("A3", "123", 14), ("A1", "1", 2), ("G2", "21", 8)] {
            let (spec, data) = setup(t, c);
            let report = verify_slice_isomorphism(&spec, &data, 11).unwrap();
            assert!(report.passed(), "{t}: {report:?}");
            assert_eq!(report.num_cones, cones);
        }
    }
}
