use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polytope::{hull_vertices, VPolytope};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, QVec, Rat};

/// Complete simplicial fan given by ray generators and maximal cones.
///
/// Rays live in the space dual to the polytopes they are paired with;
/// pairing is the plain dot product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<QVec>,
    cones: Vec<Vec<usize>>,
    /// Inverse of each cone's ray matrix (rows = rays).
    inverses: Vec<Vec<QVec>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightVector(pub QVec);

impl Fan {
    pub fn new(rays: Vec<QVec>, mut cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rays.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
        if let Some(r) = rays.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
        }
        let mut used = vec![false; rays.len()];
        let mut inverses = Vec::with_capacity(cones.len());
        for (idx, cone) in cones.iter_mut().enumerate() {
            cone.sort_unstable();
            if cone.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: cone.len() });
            }
            if let Some(&bad) = cone.iter().find(|&&r| r >= rays.len()) {
                return Err(Error::IndexMismatch { expected: rays.len(), got: bad });
            }
            let m: Vec<QVec> = cone.iter().map(|&r| rays[r].clone()).collect();
            let inv = linalg::inverse(&m).ok_or(Error::SingularCone { cone: idx })?;
            inverses.push(inv);
            for &r in cone.iter() {
                used[r] = true;
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::IndexMismatch { expected: rays.len(), got: unused });
        }
        Ok(Fan { dim, rays, cones, inverses })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Coefficients of `y` in the ray basis of cone `c`.
    pub fn cone_coordinates(&self, c: usize, y: &[Rat]) -> QVec {
        let inv = &self.inverses[c];
        (0..self.dim).map(|r| (0..self.dim).fold(Rat::zero(), |acc, k| acc + &inv[k][r] * &y[k])).collect()
    }

    /// Cones containing `y` (closed cones).
    pub fn cones_containing(&self, y: &[Rat]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&c| rational::is_nonnegative(&self.cone_coordinates(c, y))).collect()
    }

    /// Cones containing `y` in their relative interior.
    pub fn cones_containing_interior(&self, y: &[Rat]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&c| self.cone_coordinates(c, y).iter().all(Signed::is_positive)).collect()
    }

    /// Sum of the rays of each cone.
    pub fn cone_barycenter(&self, c: usize) -> QVec {
        let mut s = rational::zeros(self.dim);
        for &r in &self.cones[c] {
            rational::add_assign(&mut s, &self.rays[r]);
        }
        s
    }

    /// Deterministic interior points plus seeded random samples.
    pub fn check_completeness(&self, samples: usize, seed: u64) -> CompletenessReport {
        let mut bad_interior = Vec::new();
        for c in 0..self.cones.len() {
            if self.cones_containing_interior(&self.cone_barycenter(c)) != [c] {
                bad_interior.push(c);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut uncovered = Vec::new();
        for _ in 0..samples {
            let y: QVec = (0..self.dim)
                .map(|_| Rat::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=97).into()))
                .collect();
            if self.cones_containing(&y).is_empty() {
                uncovered.push(y);
            }
        }
        CompletenessReport { bad_interior, uncovered, samples }
    }

    pub fn translation_heights(&self, b: &[Rat]) -> HeightVector {
        HeightVector(self.rays.iter().map(|r| rational::dot(r, b)).collect())
    }
}

#[derive(Debug, Clone)]
pub struct CompletenessReport {
    /// Cones whose ray sum is not interior to exactly that cone.
    pub bad_interior: Vec<usize>,
    pub uncovered: Vec<QVec>,
    pub samples: usize,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.bad_interior.is_empty() && self.uncovered.is_empty()
    }
}

pub fn support_heights(p: &VPolytope, fan: &Fan) -> Result<HeightVector> {
    if p.dim() != fan.dim {
        return Err(Error::DimensionMismatch { expected: fan.dim, got: p.dim() });
    }
    Ok(HeightVector(fan.rays.iter().map(|r| p.support(r)).collect()))
}

/// `P_h`: per maximal cone the point with `⟨g_r, x⟩ = h_r` on its rays.
/// The flag reports whether every such point satisfies all other ray
/// inequalities strictly, i.e. `h` lies in the open type cone.
pub fn polytope_from_heights(fan: &Fan, h: &HeightVector) -> Result<(VPolytope, bool)> {
    if h.0.len() != fan.rays.len() {
        return Err(Error::CountMismatch { expected: fan.rays.len(), got: h.0.len() });
    }
    let mut points = Vec::with_capacity(fan.cones.len());
    let (mut strict, mut weak) = (true, true);
    for (c, cone) in fan.cones.iter().enumerate() {
        let inv = &fan.inverses[c];
        let hc: QVec = cone.iter().map(|&r| h.0[r].clone()).collect();
        let x = linalg::mat_vec(inv, &hc);
        if weak {
            for r in (0..fan.rays.len()).filter(|r| cone.binary_search(r).is_err()) {
                let lhs = rational::dot(&fan.rays[r], &x);
                if lhs >= h.0[r] {
                    strict = false;
                    if lhs > h.0[r] {
                        weak = false;
                        break;
                    }
                }
            }
        }
        points.push(x);
    }
    if weak {
        // Each solution is then a vertex of {x : Gx ≤ h}, and every vertex arises.
        points.sort();
        points.dedup();
        return Ok((VPolytope::from_canonical(fan.dim, points), strict));
    }
    Ok((hull_vertices(&points)?, strict))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeConeReport {
    pub rank: usize,
    pub expected_rank: usize,
    pub interior: bool,
    pub vertex_count: usize,
    /// Per summand γ: whether the sum without γ is still in the open type cone.
    pub boundary_interior: Vec<bool>,
    pub boundary_vertex_counts: Vec<usize>,
}

impl TypeConeReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank && self.interior && !self.boundary_interior.iter().any(|&b| b)
    }
}

/// Checks that the given summand heights together with the translations
/// span, that their sum is interior, and that dropping any one leaves the
/// open type cone.
pub fn type_cone_simplicial_check(fan: &Fan, summands: &[HeightVector]) -> Result<TypeConeReport> {
    let m = fan.rays.len();
    if summands.len() + fan.dim != m {
        return Err(Error::CountMismatch { expected: m - fan.dim, got: summands.len() });
    }
    if let Some(h) = summands.iter().find(|h| h.0.len() != m) {
        return Err(Error::CountMismatch { expected: m, got: h.0.len() });
    }
    let mut vectors: Vec<QVec> = summands.iter().map(|h| h.0.clone()).collect();
    vectors.extend((0..fan.dim).map(|k| fan.rays.iter().map(|r| r[k].clone()).collect::<QVec>()));
    let rank = linalg::rank(&vectors);

    let total = summands.iter().fold(rational::zeros(m), |acc, h| rational::add(&acc, &h.0));
    let (poly, interior) = polytope_from_heights(fan, &HeightVector(total.clone()))?;
    let mut boundary_interior = Vec::with_capacity(summands.len());
    let mut boundary_vertex_counts = Vec::with_capacity(summands.len());
    for h in summands {
        let (p, inside) = polytope_from_heights(fan, &HeightVector(rational::sub(&total, &h.0)))?;
        boundary_interior.push(inside);
        boundary_vertex_counts.push(p.num_vertices());
    }
    Ok(TypeConeReport {
        rank,
        expected_rank: m,
        interior,
        vertex_count: poly.num_vertices(),
        boundary_interior,
        boundary_vertex_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    /// Normal fan of the unit square.
    fn square_fan() -> Fan {
        let rays = vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, 0]), qvec(&[0, -1])];
        Fan::new(rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
    }

    #[test]
    fn rejects_bad_fans() {
        let rays = vec![qvec(&[1, 0]), qvec(&[2, 0]), qvec(&[0, 1])];
        assert!(matches!(Fan::new(rays.clone(), vec![vec![0, 1], vec![1, 2]]), Err(Error::SingularCone { .. })));
        assert!(Fan::new(rays, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn round_trip() {
        let fan = square_fan();
        let sq = hull_vertices(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])]).unwrap();
        let h = support_heights(&sq, &fan).unwrap();
        assert_eq!(h.0, qvec(&[1, 1, 0, 0]));
        let (p, inside) = polytope_from_heights(&fan, &h).unwrap();
        assert_eq!(p, sq);
        assert!(inside);
        let (p, inside) = polytope_from_heights(&fan, &fan.translation_heights(&qvec(&[2, 3]))).unwrap();
        assert_eq!(p.vertices(), &[qvec(&[2, 3])]);
        assert!(!inside);
        let zero = support_heights(&VPolytope::origin(2), &fan).unwrap();
        assert!(rational::is_zero(&zero.0));
    }

    #[test]
    fn completeness() {
        let fan = square_fan();
        assert!(fan.check_completeness(200, 7).passed());
        let half = Fan::new(vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, 0])], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!half.check_completeness(200, 7).passed());
    }

    #[test]
    fn type_cone_of_square() {
        let fan = square_fan();
        let seg_x = HeightVector(qvec(&[1, 0, 0, 0]));
        let seg_y = HeightVector(qvec(&[0, 1, 0, 0]));
        let report = type_cone_simplicial_check(&fan, &[seg_x.clone(), seg_y.clone()]).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.vertex_count, 4);
        let report = type_cone_simplicial_check(&fan, &[seg_x.clone(), seg_x]).unwrap();
        assert_eq!(report.rank, 3);
        assert!(!report.passed());
        assert!(matches!(type_cone_simplicial_check(&fan, &[seg_y]), Err(Error::CountMismatch { .. })));
    }
}
