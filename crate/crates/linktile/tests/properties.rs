//! Randomized invariants.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use linktile::chipfire::{self, Graph};
use linktile::combinat::ordered_set_partitions;
use linktile::net::{faces_meeting_open_simplex, random_trop, twist};
use linktile::polytope::{modular_pair_by_sections, modular_pair_of, split_subspace};
use linktile::quiver::{essential_type, hull, hull_by_box, in_hull, QuiverVertex, VertexSet};
use linktile::tiling::m_set;
use linktile::{Fp, ModularPair, OrderedPartition, Rational, SetFn, Subset, DEFAULT_PRIME};

fn rows_strategy(max_h: usize, max_d: usize) -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
    (1..=max_h, 1..=max_d)
        .prop_flat_map(|(h, d)| (Just(h), Just(d), 1..=d))
        .prop_flat_map(|(h, d, k)| (Just(h), Just(d), prop::collection::vec(prop::collection::vec(-2i64..=2, h * d), k)))
}

fn pair_strategy(max_h: usize, max_d: usize) -> impl Strategy<Value = ModularPair> {
    rows_strategy(max_h, max_d)
        .prop_filter_map("zero subspace", |(h, d, rows)| int_subspace::<Rational>((), h, d, &rows).map(|w| modular_pair_of(&w)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_supermodularity_matches_all_pairs(h in 1usize..=6, seed in prop::collection::vec(0i64..4, 64), convex in any::<bool>()) {
        // convex functions of |I| plus noise hit both outcomes
        let f = SetFn::anonymous(h, |i| {
            let k = i.len() as i64;
            let base = if convex { k * k } else { 0 };
            base + seed[i.index() % 64] * (i.index() % 3 == 0 && !i.is_empty()) as i64
        });
        prop_assert_eq!(f.is_supermodular(), f.is_supermodular_bruteforce());
    }

    #[test]
    fn subspace_tables_are_modular_pairs(pair in pair_strategy(5, 3)) {
        prop_assert!(pair.lower().is_supermodular_bruteforce());
        prop_assert!(pair.upper().is_submodular());
        prop_assert!(pair.lower().is_nondecreasing());
        prop_assert_eq!(pair.lower().get(Subset::EMPTY), 0);
    }

    #[test]
    fn closed_formula_matches_sections((h, d, rows) in rows_strategy(4, 3)) {
        if let Some(w) = int_subspace::<Rational>((), h, d, &rows) {
            prop_assert_eq!(modular_pair_of(&w), modular_pair_by_sections(&w));
        }
    }

    #[test]
    fn codimension_is_the_finest_self_splitting(pair in pair_strategy(5, 3)) {
        let h = pair.h();
        let best = ordered_set_partitions(h)
            .into_iter()
            .map(|p| OrderedPartition::new(h, p).unwrap())
            .filter(|p| pair.split(p).unwrap() == pair)
            .map(|p| p.len())
            .max()
            .unwrap();
        prop_assert_eq!(pair.codimension(), best);
    }

    #[test]
    fn face_chains_match_all_ordered_partitions(pair in pair_strategy(5, 3)) {
        let h = pair.h();
        let mut brute: Vec<OrderedPartition> = ordered_set_partitions(h)
            .into_iter()
            .map(|p| OrderedPartition::new(h, p).unwrap())
            .filter(|p| pair.split(p).unwrap().meets_open_orthant())
            .collect();
        brute.sort();
        let mut fast = faces_meeting_open_simplex(&pair);
        fast.sort();
        prop_assert_eq!(fast, brute);
    }

    #[test]
    fn lattice_points_match_brute_force(pair in pair_strategy(4, 3), t in 1i64..=3) {
        let mut fast = pair.lattice_points(t);
        fast.sort();
        let mut slow = pair.lattice_points_bruteforce(t);
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn splitting_commutes_with_the_subspace((h, d, rows) in rows_strategy(4, 3), fp in any::<bool>()) {
        let parts = ordered_set_partitions(h);
        if fp {
            if let Some(w) = int_subspace::<Fp>(DEFAULT_PRIME, h, d, &rows) {
                for p in parts {
                    let pi = OrderedPartition::new(h, p).unwrap();
                    prop_assert_eq!(modular_pair_of(&split_subspace(&w, &pi).unwrap()), modular_pair_of(&w).split(&pi).unwrap());
                }
            }
        } else if let Some(w) = int_subspace::<Rational>((), h, d, &rows) {
            for p in parts {
                let pi = OrderedPartition::new(h, p).unwrap();
                prop_assert_eq!(modular_pair_of(&split_subspace(&w, &pi).unwrap()), modular_pair_of(&w).split(&pi).unwrap());
            }
        }
    }

    #[test]
    fn scaled_diagonal_points_land_in_the_polytope(pair in pair_strategy(4, 4)) {
        // q in M_v(r) gives (r+1)q/r in the polytope of range r+1
        let r = pair.range() - 1;
        prop_assume!(r > 0);
        for q in m_set(&pair, r) {
            let scaled: Vec<BigRational> = q.iter().map(|&x| BigRational::new(BigInt::from(x * (r + 1)), BigInt::from(r))).collect();
            prop_assert!(pair.contains_rational(&scaled).unwrap());
        }
    }

    #[test]
    fn hull_search_matches_box_scan(types in 2usize..=4, pts in prop::collection::vec(prop::collection::vec(0i64..=4, 4), 1..=5)) {
        let s = VertexSet::new(pts.iter().map(|p| QuiverVertex::new(p[..types].to_vec()))).unwrap();
        let h = hull(&s).unwrap();
        prop_assert_eq!(&h, &hull_by_box(&s).unwrap());
        prop_assert_eq!(&hull(&h).unwrap(), &h);
        prop_assert!(s.vertices().iter().all(|v| h.contains(v)));
        prop_assert!(h.vertices().iter().all(|v| in_hull(s.vertices(), v)));
    }

    #[test]
    fn twisting_preserves_verification_and_pairs(seed in 0u64..400, twist_seed in any::<u64>()) {
        let types = 2 + (seed % 2) as usize;
        let dim = 1 + (seed % 3) as usize;
        let spec = random_trop(seed, types, dim, 2);
        let h = spec.generators().unwrap();
        prop_assume!(h.len() <= 8);
        let net = spec.generate::<Rational>(()).unwrap();
        let t = twist(&net, twist_seed);
        prop_assert!(t.verify().passed);
        prop_assert_eq!(net.vertex_pairs().unwrap(), t.vertex_pairs().unwrap());
        let tp = twist(&spec.generate::<Fp>(DEFAULT_PRIME).unwrap(), twist_seed);
        prop_assert_eq!(net.vertex_pairs().unwrap(), tp.vertex_pairs().unwrap());
    }

    #[test]
    fn essential_types_of_minimal_paths(a in prop::collection::vec(0i64..5, 3), b in prop::collection::vec(0i64..5, 3)) {
        let (u, v) = (QuiverVertex::new(a), QuiverVertex::new(b));
        let ess = |x: &QuiverVertex, y: &QuiverVertex| essential_type(x, y).unwrap();
        // a minimal path never uses every type; types it skips are used
        // by the way back
        prop_assert!(ess(&u, &v) != Subset::full(3));
        prop_assert_eq!(ess(&u, &v).is_empty(), u == v);
        prop_assert_eq!(ess(&u, &v) | ess(&v, &u) == Subset::full(3), u != v);
    }

    #[test]
    fn linear_systems_are_equivalence_classes(
        n in 2usize..=5,
        extra in prop::collection::vec((0usize..5, 1usize..5), 0..5),
        d in prop::collection::vec(-1i64..=3, 5),
    ) {
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        for (a, off) in extra {
            let (a, b) = (a % n, (a + off % (n - 1) + 1) % n);
            edges.push((a.min(b), a.max(b)));
        }
        let g = Graph::new(n, edges).unwrap();
        let d = &d[..n];
        prop_assume!(d.iter().sum::<i64>() >= 0);
        let ls = chipfire::linear_system(&g, d).unwrap();
        let l = g.laplacian();
        for (e, x) in ls.divisors.iter().zip(&ls.coords) {
            prop_assert!(chipfire::equivalent(&g, d, e).unwrap());
            prop_assert!(e.iter().all(|&c| c >= 0));
            let fired: Vec<i64> = (0..n).map(|i| d[i] - (0..n).map(|j| l[i][j] * x.coords()[j]).sum::<i64>()).collect();
            prop_assert_eq!(&fired, e);
        }
        if !ls.is_empty() {
            for v in 0..n {
                let r = chipfire::reduced_in(&g, &ls, v).unwrap();
                prop_assert!(chipfire::is_v_reduced(&g, &r, v).unwrap());
            }
        }
    }
}

#[test]
fn fp_and_q_agree_on_small_integer_subspaces() {
    // the default prime is far above any minor of these entries
    let rows = vec![vec![1, 2, 0, 1, 1, 0], vec![0, 1, 1, 2, 0, 1]];
    let q = modular_pair_of(&int_subspace::<Rational>((), 3, 2, &rows).unwrap());
    let p = modular_pair_of(&int_subspace::<Fp>(DEFAULT_PRIME, 3, 2, &rows).unwrap());
    assert_eq!(q, p);
}
