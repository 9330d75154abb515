use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::lp::{self, LpOutcome};
use crate::error::{Error, Result};
use crate::rational::{self, QVec, Rat};

/// Convex hull of finitely many points, stored by its sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<QVec>,
}

impl VPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn point(p: QVec) -> Self {
        VPolytope { dim: p.len(), vertices: vec![p] }
    }

    pub fn origin(dim: usize) -> Self {
        Self::point(rational::zeros(dim))
    }

    /// Trusts that `vertices` is already sorted and irredundant.
    pub(crate) fn from_canonical(dim: usize, vertices: Vec<QVec>) -> Self {
        VPolytope { dim, vertices }
    }

    pub fn has_vertex(&self, v: &[Rat]) -> bool {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).is_ok()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        let refs: Vec<&QVec> = self.vertices.iter().collect();
        lp::in_convex_hull(&refs, p)
    }

    /// Maximum of `⟨y, v⟩` over the vertices.
    pub fn support(&self, y: &[Rat]) -> Rat {
        self.vertices.iter().map(|v| rational::dot(y, v)).max().expect("polytope has a vertex")
    }

    pub fn translate(&self, t: &[Rat]) -> VPolytope {
        let mut vertices: Vec<QVec> = self.vertices.iter().map(|v| rational::add(v, t)).collect();
        vertices.sort();
        VPolytope { dim: self.dim, vertices }
    }
}

fn check_dims(points: &[QVec]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
    }
    Ok(dim)
}

/// Extreme points of `conv(points)`, sorted.
pub fn hull_vertices(points: &[QVec]) -> Result<VPolytope> {
    let dim = check_dims(points)?;
    let distinct: Vec<QVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if distinct.len() <= 2 {
        return Ok(VPolytope { dim, vertices: distinct });
    }
    let mut keep = vec![true; distinct.len()];
    for i in 0..distinct.len() {
        // Points already discarded are themselves in the hull of the rest.
        let others: Vec<&QVec> = (0..distinct.len()).filter(|&j| j != i && keep[j]).map(|j| &distinct[j]).collect();
        if lp::in_convex_hull(&others, &distinct[i]) {
            keep[i] = false;
        }
    }
    let vertices = distinct.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect();
    Ok(VPolytope { dim, vertices })
}

/// Same contract as [`hull_vertices`], with Fourier–Motzkin feasibility.
pub fn hull_vertices_fm(points: &[QVec]) -> Result<VPolytope> {
    let dim = check_dims(points)?;
    let distinct: Vec<QVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut vertices = Vec::new();
    for (i, p) in distinct.iter().enumerate() {
        let others: Vec<&QVec> = distinct.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
        let redundant = !others.is_empty() && {
            let (a, b) = lp::convex_combination_system(&others, p);
            super::fm::is_feasible(&a, &b)
        };
        if !redundant {
            vertices.push(p.clone());
        }
    }
    Ok(VPolytope { dim, vertices })
}

pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, got: q.dim });
    }
    let sums: Vec<QVec> = p.vertices.iter().flat_map(|u| q.vertices.iter().map(move |v| rational::add(u, v))).collect();
    hull_vertices(&sums)
}

pub fn minkowski_sum_all<'a>(dim: usize, parts: impl IntoIterator<Item = &'a VPolytope>) -> Result<VPolytope> {
    parts.into_iter().try_fold(VPolytope::origin(dim), |acc, p| minkowski_sum(&acc, p))
}

/// `[u, v]` is an edge: the midpoint admits no convex representation using
/// any other vertex.
pub fn is_edge(p: &VPolytope, u: &[Rat], v: &[Rat]) -> Result<bool> {
    for x in [u, v] {
        if x.len() != p.dim {
            return Err(Error::DimensionMismatch { expected: p.dim, got: x.len() });
        }
        if !p.has_vertex(x) {
            return Err(Error::NotAVertex(rational::compact(x)));
        }
    }
    if u == v {
        return Ok(false);
    }
    let mid: QVec = u.iter().zip(v).map(|(a, b)| (a + b) / Rat::from_integer(2.into())).collect();
    let refs: Vec<&QVec> = p.vertices.iter().collect();
    let (a, b) = lp::convex_combination_system(&refs, &mid);
    let c: QVec = p
        .vertices
        .iter()
        .map(|w| if w.as_slice() == u || w.as_slice() == v { Rat::zero() } else { Rat::one() })
        .collect();
    match lp::maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => Ok(value.is_zero()),
        other => unreachable!("midpoint LP is bounded and feasible: {other:?}"),
    }
}
