//! Brick vectors, brick polytopes and their natural Minkowski summands.

use serde::Serialize;

use crate::coxeter::{RootCoords, WeightCoords};
use crate::error::{Error, Result};
use crate::polyhedra::{hull_vertices, support_heights, type_cone_simplicial_check, Fan, TypeConeReport, VPolytope};
use crate::rational::{self, compact, QVec};
use crate::subword::{Facet, SubwordComplex};

/// Brick geometry of a cluster word `c·w₀(c)`.
#[derive(Debug)]
pub struct BrickGeometry<'a> {
    spec: &'a SubwordComplex,
    /// `r(greedy, n+k)` for `k = 1..N`.
    roots: Vec<RootCoords>,
}

impl<'a> BrickGeometry<'a> {
    pub fn new(spec: &'a SubwordComplex) -> Result<Self> {
        let (n, big_n) = (spec.rank(), spec.num_positive_roots());
        if spec.len() != n + big_n {
            return Err(Error::NotClusterWord(format!(
                "word {} has length {}, expected {}",
                spec.word(),
                spec.len(),
                n + big_n
            )));
        }
        let table = spec.table(spec.greedy_facet());
        let roots = table.roots[n..].to_vec();
        if let Some(bad) = roots.iter().find(|r| !spec.cartan().is_positive_root(r)) {
            return Err(Error::NotClusterWord(format!("greedy root {} is not positive", compact(&bad.0))));
        }
        Ok(BrickGeometry { spec, roots })
    }

    pub fn spec(&self) -> &'a SubwordComplex {
        self.spec
    }

    /// Positive roots in position order `n+1, …, n+N`.
    pub fn roots_by_position(&self) -> &[RootCoords] {
        &self.roots
    }

    pub fn position_of_root(&self, beta: &RootCoords) -> Result<usize> {
        self.roots
            .iter()
            .position(|r| r == beta)
            .map(|i| i + 1 + self.spec.rank())
            .ok_or_else(|| Error::RootNotPositive(compact(&beta.0)))
    }

    pub fn root_of_position(&self, k: usize) -> Result<RootCoords> {
        let n = self.spec.rank();
        if k <= n || k > n + self.roots.len() {
            return Err(Error::IndexMismatch { expected: n + self.roots.len(), got: k });
        }
        Ok(self.roots[k - n - 1].clone())
    }

    /// `w(I,k) − w(antigreedy,k)` at the position `k` of `β`.
    pub fn shifted_weight(&self, facet: &Facet, beta: &RootCoords) -> Result<RootCoords> {
        let k = self.position_of_root(beta)?;
        Ok(self.shifted_at(facet, k))
    }

    fn shifted_at(&self, facet: &Facet, k: usize) -> RootCoords {
        let w = &self.spec.table(facet).weights[k - 1];
        let base = &self.spec.table(self.spec.antigreedy_facet()).weights[k - 1];
        RootCoords(rational::sub(&w.0, &base.0))
    }

    pub fn brick_vector(&self, facet: &Facet) -> RootCoords {
        let n = self.spec.rank();
        let mut sum = rational::zeros(n);
        for k in n + 1..=n + self.roots.len() {
            rational::add_assign(&mut sum, &self.shifted_at(facet, k).0);
        }
        RootCoords(sum)
    }

    pub fn restricted_brick_vector(&self, facet: &Facet, subset: &[RootCoords]) -> Result<RootCoords> {
        let mut sum = rational::zeros(self.spec.rank());
        for beta in subset {
            rational::add_assign(&mut sum, &self.shifted_weight(facet, beta)?.0);
        }
        Ok(RootCoords(sum))
    }

    pub fn brick_vectors(&self) -> Vec<(Facet, RootCoords)> {
        self.spec.facets().iter().map(|f| (f.clone(), self.brick_vector(f))).collect()
    }

    /// `Asso(c)`: convex hull of all brick vectors.
    pub fn asso_polytope(&self) -> VPolytope {
        let points: Vec<QVec> = self.spec.facets().iter().map(|f| self.brick_vector(f).0).collect();
        hull_vertices(&points).expect("facets exist and share a dimension")
    }

    /// `Asso_β`: convex hull of the shifted weights at `β`.
    pub fn summand_polytope(&self, beta: &RootCoords) -> Result<VPolytope> {
        let k = self.position_of_root(beta)?;
        let points: Vec<QVec> = self.spec.facets().iter().map(|f| self.shifted_at(f, k).0).collect();
        hull_vertices(&points)
    }

    /// `Asso_X` from restricted brick vectors.
    pub fn asso_x_polytope(&self, subset: &[RootCoords]) -> Result<VPolytope> {
        let points = self
            .spec
            .facets()
            .iter()
            .map(|f| self.restricted_brick_vector(f, subset).map(|r| r.0))
            .collect::<Result<Vec<_>>>()?;
        hull_vertices(&points)
    }

    /// Tab-separated shifted weight table: columns `n+1..n+N`, then `B(I)`.
    pub fn shifted_table_tsv(&self, fmt: &dyn Fn(&RootCoords) -> String) -> String {
        let n = self.spec.rank();
        let mut out = String::from("I");
        for k in n + 1..=n + self.roots.len() {
            out.push_str(&format!("\t{k}"));
        }
        out.push_str("\tB\n");
        for facet in self.spec.facets() {
            out.push_str(&facet.to_string());
            for k in n + 1..=n + self.roots.len() {
                out.push('\t');
                out.push_str(&fmt(&self.shifted_at(facet, k)));
            }
            out.push('\t');
            out.push_str(&fmt(&self.brick_vector(facet)));
            out.push('\n');
        }
        out
    }

    pub fn shifted_table_records(&self) -> Vec<ShiftedRecord> {
        let n = self.spec.rank();
        self.spec
            .facets()
            .iter()
            .map(|facet| ShiftedRecord {
                facet: facet.0.clone(),
                shifted: (n + 1..=n + self.roots.len()).map(|k| compact(&self.shifted_at(facet, k).0)).collect(),
                brick_vector: compact(&self.brick_vector(facet).0),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedRecord {
    pub facet: Vec<usize>,
    pub shifted: Vec<String>,
    pub brick_vector: String,
}

/// `P_i = conv{w(I,i) − w(antigreedy,i)}` for an arbitrary word.
pub fn column_polytope(spec: &SubwordComplex, i: usize) -> Result<VPolytope> {
    if i == 0 || i > spec.len() {
        return Err(Error::IndexMismatch { expected: spec.len(), got: i });
    }
    let base = spec.table(spec.antigreedy_facet()).weights[i - 1].clone();
    let points: Vec<QVec> =
        spec.facets().iter().map(|f| rational::sub(&spec.table(f).weights[i - 1].0, &base.0)).collect();
    hull_vertices(&points)
}

/// Brick polytope of an arbitrary word: hull of `Σ_k w(I,k) − w(antigreedy,k)`.
pub fn word_brick_polytope(spec: &SubwordComplex) -> Result<VPolytope> {
    let base = spec.table(spec.antigreedy_facet());
    let points: Vec<QVec> = spec
        .facets()
        .iter()
        .map(|f| {
            let table = spec.table(f);
            let mut sum = rational::zeros(spec.rank());
            for (w, b) in table.weights.iter().zip(&base.weights) {
                rational::add_assign(&mut sum, &rational::sub(&w.0, &b.0));
            }
            sum
        })
        .collect();
    hull_vertices(&points)
}

/// The g-vector fan of a cluster word.
///
/// `weight_rays` are the position weights in fundamental-weight coordinates.
/// The fan itself carries them mapped by the symmetrized Cartan matrix, so
/// that its plain dot product with root coordinates is the invariant pairing.
#[derive(Debug, Clone)]
pub struct GVectorFan {
    pub weight_rays: Vec<WeightCoords>,
    pub fan: Fan,
}

pub fn g_vector_fan(spec: &SubwordComplex) -> Result<GVectorFan> {
    let m = spec.len();
    let mut rays: Vec<Option<RootCoords>> = vec![None; m];
    for facet in spec.facets() {
        let table = spec.table(facet);
        for &p in facet.positions() {
            let w = &table.weights[p - 1];
            match &rays[p - 1] {
                None => rays[p - 1] = Some(w.clone()),
                Some(prev) if prev == w => {}
                Some(_) => return Err(Error::RayAmbiguous { position: p }),
            }
        }
    }
    let rays: Vec<RootCoords> = rays
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(Error::RayAmbiguous { position: i + 1 }))
        .collect::<Result<_>>()?;
    let cartan = spec.cartan();
    let weight_rays: Vec<WeightCoords> = rays.iter().map(|r| cartan.weight_coords(r)).collect();
    let dual: Vec<QVec> = weight_rays.iter().map(|w| dual_coordinates(cartan.symmetrizer(), w)).collect();
    let cones = spec.facets().iter().map(|f| f.positions().iter().map(|p| p - 1).collect()).collect();
    Ok(GVectorFan { weight_rays, fan: Fan::new(dual, cones)? })
}

/// Type-cone simpliciality check for the summands `Asso_β` on the g-vector fan.
pub fn type_cone_report(spec: &SubwordComplex) -> Result<TypeConeReport> {
    let geometry = BrickGeometry::new(spec)?;
    let gf = g_vector_fan(spec)?;
    let heights = geometry
        .roots_by_position()
        .iter()
        .map(|beta| support_heights(&geometry.summand_polytope(beta)?, &gf.fan))
        .collect::<Result<Vec<_>>>()?;
    type_cone_simplicial_check(&gf.fan, &heights)
}

/// Certifies `Asso(c) = Σ_β Asso_β` on the g-vector fan.
///
/// For every facet `I`, summand `β` and ray of the cone of `I`, the shifted weight
/// at `(I, β)` must attain the support function of `Asso_β`. The rays of a cone are
/// linearly independent, so that point is then the unique maximizer on the cone
/// interior, and the vertices of the sum are exactly the brick vectors.
pub fn minkowski_decomposition_certified(spec: &SubwordComplex) -> Result<bool> {
    let geometry = BrickGeometry::new(spec)?;
    let gf = g_vector_fan(spec)?;
    let rays = gf.fan.rays();
    for beta in geometry.roots_by_position() {
        let summand = geometry.summand_polytope(beta)?;
        let heights: Vec<_> = rays.iter().map(|r| summand.support(r)).collect();
        for facet in spec.facets() {
            let point = geometry.shifted_weight(facet, beta)?;
            if facet.positions().iter().any(|&p| rational::dot(&rays[p - 1], &point.0) != heights[p - 1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `y_i = d_i g_i`: weight coordinates to the coordinates dual to the root basis.
pub fn dual_coordinates(symmetrizer: &[i64], g: &WeightCoords) -> QVec {
    g.0.iter().zip(symmetrizer).map(|(x, &d)| x * rational::int(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_cartan, CoxeterWord, Word};
    use crate::polyhedra::{is_edge, minkowski_sum_all, polytope_from_heights};
    use crate::rational::qvec;

    fn spec(t: &str, c: &str) -> SubwordComplex {
        let cartan = build_cartan(t.parse().unwrap());
        let n = cartan.rank();
        SubwordComplex::cluster(cartan, &CoxeterWord::new(Word::parse(c).unwrap(), n).unwrap()).unwrap()
    }

    fn r(v: &[i64]) -> RootCoords {
        RootCoords::from_ints(v)
    }

    fn vertex_set(p: &VPolytope) -> Vec<String> {
        p.vertices().iter().map(|v| compact(v)).collect()
    }

    #[test]
    fn positions_and_roots() {
        let a3 = spec("A3", "123");
        let g = BrickGeometry::new(&a3).unwrap();
        assert_eq!(g.root_of_position(6).unwrap(), r(&[1, 1, 1]));
        assert_eq!(g.root_of_position(4).unwrap(), r(&[1, 0, 0]));
        assert_eq!(g.position_of_root(&r(&[1, 1, 1])).unwrap(), 6);
        assert!(matches!(g.position_of_root(&r(&[1, 0, 1])), Err(Error::RootNotPositive(_))));
        let b2 = spec("B2", "12");
        let g = BrickGeometry::new(&b2).unwrap();
        assert_eq!(g.root_of_position(5).unwrap(), r(&[1, 2]));
    }

    #[test]
    fn shifted_weights_and_bricks() {
        let a3 = spec("A3", "123");
        let g = BrickGeometry::new(&a3).unwrap();
        assert_eq!(g.shifted_weight(&Facet(vec![1, 2, 9]), &r(&[1, 1, 1])).unwrap(), r(&[1, 1, 0]));
        assert_eq!(g.brick_vector(a3.greedy_facet()), r(&[3, 4, 3]));
        assert_eq!(g.brick_vector(a3.antigreedy_facet()), r(&[0, 0, 0]));
        let x: Vec<RootCoords> = a3.cartan().positive_roots().into_iter().filter(|b| *b != r(&[1, 1, 1])).collect();
        assert_eq!(g.restricted_brick_vector(&Facet(vec![3, 4, 5]), &x).unwrap(), r(&[0, 2, 2]));
        assert_eq!(g.restricted_brick_vector(&Facet(vec![4, 5, 6]), &x).unwrap(), r(&[0, 2, 2]));

        let b2 = spec("B2", "12");
        let g = BrickGeometry::new(&b2).unwrap();
        assert_eq!(g.shifted_weight(&Facet(vec![3, 4]), &r(&[1, 2])).unwrap(), r(&[1, 2]));
        assert_eq!(g.brick_vector(&Facet(vec![2, 3])), r(&[2, 4]));
    }

    #[test]
    fn polytopes() {
        let b2 = spec("B2", "12");
        let g = BrickGeometry::new(&b2).unwrap();
        assert_eq!(vertex_set(&g.asso_polytope()), ["00", "01", "13", "24", "30", "34"]);
        assert_eq!(vertex_set(&g.summand_polytope(&r(&[1, 2])).unwrap()), ["00", "10", "12"]);
        let x = [r(&[1, 0]), r(&[1, 1]), r(&[0, 1])];
        assert_eq!(vertex_set(&g.asso_x_polytope(&x).unwrap()), ["00", "01", "12", "20", "22"]);
        assert_eq!(g.asso_x_polytope(&[]).unwrap(), VPolytope::origin(2));

        let a3 = spec("A3", "123");
        let g = BrickGeometry::new(&a3).unwrap();
        assert_eq!(g.asso_polytope().num_vertices(), 14);
        assert_eq!(vertex_set(&g.summand_polytope(&r(&[1, 1, 1])).unwrap()), ["000", "100", "110", "111"]);
        assert_eq!(vertex_set(&g.summand_polytope(&r(&[1, 0, 0])).unwrap()), ["000", "100"]);

        let a1 = spec("A1", "1");
        assert_eq!(vertex_set(&BrickGeometry::new(&a1).unwrap().asso_polytope()), ["0", "1"]);
    }

    #[test]
    fn minkowski_decomposition_and_edges() {
        for (t, c) in [("A3", "123"), ("B2", "12"), ("G2", "12"), ("A3", "213")] {
            let s = spec(t, c);
            let g = BrickGeometry::new(&s).unwrap();
            let roots = s.cartan().positive_roots();
            let summands: Vec<VPolytope> = roots.iter().map(|b| g.summand_polytope(b).unwrap()).collect();
            let sum = minkowski_sum_all(s.rank(), summands.iter()).unwrap();
            assert_eq!(sum, g.asso_polytope(), "{t} {c}");
            for (b, p) in roots.iter().zip(&summands) {
                assert!(is_edge(p, &rational::zeros(s.rank()), &b.0).unwrap());
            }
        }
    }

    #[test]
    fn column_polytopes() {
        let cartan = build_cartan("B2".parse().unwrap());
        let q = SubwordComplex::new(cartan.clone(), Word::parse("212212").unwrap()).unwrap();
        assert_eq!(vertex_set(&column_polytope(&q, 4).unwrap()), ["00", "01", "11", "12"]);
        assert_eq!(vertex_set(&column_polytope(&q, 1).unwrap()), ["00"]);
        let q = SubwordComplex::new(cartan, Word::parse("1212121").unwrap()).unwrap();
        assert_eq!(vertex_set(&column_polytope(&q, 5).unwrap()), ["00", "10", "12", "22"]);
        assert_eq!(word_brick_polytope(&q).unwrap().num_vertices(), 8);
        let s = spec("B2", "12");
        assert_eq!(word_brick_polytope(&s).unwrap(), BrickGeometry::new(&s).unwrap().asso_polytope());
    }

    #[test]
    fn certified_decomposition_matches_direct_sum() {
        for (t, c) in [("B2", "12"), ("A3", "213"), ("G2", "21"), ("C3", "312"), ("A1", "1")] {
            let s = spec(t, c);
            let g = BrickGeometry::new(&s).unwrap();
            let parts: Vec<VPolytope> = g.roots_by_position().iter().map(|b| g.summand_polytope(b).unwrap()).collect();
            assert_eq!(minkowski_sum_all(s.rank(), &parts).unwrap(), g.asso_polytope(), "{t}{c}");
            assert!(minkowski_decomposition_certified(&s).unwrap(), "{t}{c}");
        }
    }

    #[test]
    fn type_cones() {
        for (t, c, facets) in [("B2", "12", 6), ("A3", "123", 14), ("A1", "1", 2)] {
            let s = spec(t, c);
            let report = type_cone_report(&s).unwrap();
            assert!(report.passed(), "{t} {report:?}");
            assert_eq!(report.vertex_count, facets);
            assert!(report.boundary_vertex_counts.iter().all(|&v| v < facets));
        }
    }

    #[test]
    fn g_fan_b2() {
        let b2 = spec("B2", "12");
        let gf = g_vector_fan(&b2).unwrap();
        assert_eq!(gf.fan.rays().len(), 6);
        assert_eq!(gf.fan.maximal_cones().len(), 6);
        assert_eq!(gf.weight_rays[0].0, qvec(&[1, 0]));
        assert_eq!(gf.weight_rays[1].0, qvec(&[0, 1]));
        assert!(gf.fan.check_completeness(300, 1).passed());
        let g = BrickGeometry::new(&b2).unwrap();
        let asso = g.asso_polytope();
        let h = support_heights(&asso, &gf.fan).unwrap();
        let (p, inside) = polytope_from_heights(&gf.fan, &h).unwrap();
        assert_eq!(p, asso);
        assert!(inside);
    }
}
