use brickforge::cluster::{initial_matrix, Laurent};
use brickforge::coxeter::{build_cartan, CartanType, RootCoords, Word};
use brickforge::polyhedra::io::{polytope_from_json, polytope_from_text, polytope_to_json, polytope_to_text};
use brickforge::polyhedra::{hull_vertices, hull_vertices_fm, minkowski_sum, VPolytope};
use brickforge::rational::{compact, parse_compact, qvec, QVec};
use brickforge::subword::SubwordComplex;
use proptest::prelude::*;

const SMALL_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

fn points(dim: usize) -> impl Strategy<Value = Vec<QVec>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 1..10)
        .prop_map(|ps| ps.iter().map(|p| qvec(p)).collect())
}

fn polytope(dim: usize) -> impl Strategy<Value = VPolytope> {
    points(dim).prop_map(|ps| hull_vertices(&ps).unwrap())
}

fn small_type() -> impl Strategy<Value = CartanType> {
    prop::sample::select(SMALL_TYPES.to_vec()).prop_map(|s| s.parse().unwrap())
}

fn cluster_complex(t: CartanType, pick: usize) -> SubwordComplex {
    let cartan = build_cartan(t);
    let cs = cartan.coxeter_elements();
    let c = &cs[pick % cs.len()];
    SubwordComplex::cluster(cartan, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent_and_order_free(ps in points(3), seed in any::<u64>()) {
        let hull = hull_vertices(&ps).unwrap();
        prop_assert_eq!(&hull_vertices(hull.vertices()).unwrap(), &hull);
        let mut shuffled = ps.clone();
        let k = (seed as usize) % shuffled.len();
        shuffled.rotate_left(k);
        shuffled.reverse();
        prop_assert_eq!(&hull_vertices(&shuffled).unwrap(), &hull);
        for p in &ps {
            prop_assert!(hull.contains(p));
        }
    }

    #[test]
    fn lp_and_elimination_hulls_agree(ps in points(2)) {
        prop_assert_eq!(hull_vertices(&ps).unwrap(), hull_vertices_fm(&ps).unwrap());
    }

    #[test]
    fn minkowski_support_is_additive(p in polytope(2), q in polytope(2), y in prop::collection::vec(-5i64..=5, 2)) {
        let y = qvec(&y);
        let sum = minkowski_sum(&p, &q).unwrap();
        prop_assert_eq!(sum.support(&y), p.support(&y) + q.support(&y));
        prop_assert_eq!(&sum, &minkowski_sum(&q, &p).unwrap());
    }

    #[test]
    fn polytope_serialization_round_trips(p in polytope(3)) {
        prop_assert_eq!(&polytope_from_text(&polytope_to_text(&p)).unwrap(), &p);
        prop_assert_eq!(&polytope_from_json(&polytope_to_json(&p)).unwrap(), &p);
    }

    #[test]
    fn compact_vectors_round_trip(v in prop::collection::vec(-9i64..=9, 1..6)) {
        let q = qvec(&v);
        prop_assert_eq!(parse_compact(&compact(&q)).unwrap(), q);
    }

    #[test]
    fn reflections_are_involutions(t in small_type(), letter in 1usize..=3, v in prop::collection::vec(-3i64..=3, 3)) {
        let cartan = build_cartan(t);
        let letter = (letter - 1) % t.rank + 1;
        let v = RootCoords::from_ints(&v[..t.rank]);
        prop_assert_eq!(cartan.reflect(letter, &cartan.reflect(letter, &v)), v);
    }

    #[test]
    fn word_length_bounds(t in small_type(), letters in prop::collection::vec(1usize..=3, 0..10)) {
        let cartan = build_cartan(t);
        let letters: Vec<usize> = letters.iter().map(|l| (l - 1) % t.rank + 1).collect();
        let word = Word(letters.clone());
        let len = cartan.length(&cartan.word_element(&word));
        prop_assert!(len <= letters.len());
        prop_assert_eq!(len % 2, letters.len() % 2);
        prop_assert_eq!(cartan.is_reduced(&word), len == letters.len());
    }

    #[test]
    fn flips_are_involutions(t in small_type(), pick in 0usize..8, facet in any::<prop::sample::Index>(), pos in any::<prop::sample::Index>()) {
        let spec = cluster_complex(t, pick);
        let facet = facet.get(spec.facets());
        let i = *pos.get(facet.positions());
        let (next, j) = spec.flip(facet, i);
        prop_assert!(spec.is_facet(next.positions()));
        prop_assert_eq!(spec.flip(&next, j), (facet.clone(), i));
        prop_assert_eq!(spec.flip_brute_force(facet, i), (next, j));
    }

    #[test]
    fn mutations_are_involutions(t in small_type(), pick in 0usize..8, dirs in prop::collection::vec(0usize..3, 0..8)) {
        let cartan = build_cartan(t);
        let cs = cartan.coxeter_elements();
        let b = initial_matrix(&cartan, &cs[pick % cs.len()]);
        let mut m = b.clone();
        for &k in &dirs {
            let k = k % t.rank;
            prop_assert_eq!(&m.mutate(k).mutate(k), &m);
            m = m.mutate(k);
            prop_assert!(m.is_skew_symmetrizable(cartan.symmetrizer()));
        }
    }

    #[test]
    fn laurent_expressions_round_trip(
        terms in prop::collection::vec((prop::collection::vec(-2i32..=2, 2), prop::collection::vec(0i32..=2, 2), -3i64..=3), 1..5),
    ) {
        let mut p = Laurent::zero(2);
        for (x, y, c) in &terms {
            p = p.add(&Laurent::monomial([x.clone(), y.clone()].concat(), *c)).unwrap();
        }
        prop_assert_eq!(Laurent::parse(2, &p.to_expression()).unwrap(), p);
    }
}
