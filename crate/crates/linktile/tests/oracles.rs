//! Hand-derived values checked against the library and the brute-force
//! rank oracle.

mod common;

use common::*;
use linktile::chipfire::{self, Graph};
use linktile::field::rational_to_i64;
use linktile::net::NetPresentation;
use linktile::quiver::QuiverVertex;
use linktile::tiling::{chow_class, lp_membership, m_set, ProjectivePoint};
use linktile::{Field, Fp, Rational, DEFAULT_PRIME};

fn ints<F: Field>(ctx: F::Ctx, xs: &[i64]) -> Vec<F> {
    xs.iter().map(|&x| F::from_int(ctx, x)).collect()
}

fn basis(net: &NetPresentation<Rational>, v: usize) -> Vec<Vec<i128>> {
    let d = net.dim();
    (0..d)
        .map(|i| {
            (0..net.len())
                .flat_map(|u| (0..d).map(move |k| (u, k)))
                .map(|(u, k)| rational_to_i64(net.map(v, u).get(k, i)).unwrap() as i128)
                .collect()
        })
        .collect()
}

#[test]
fn rank_oracle_on_known_matrices() {
    assert_eq!(rank_int(vec![vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(rank_int(vec![vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 0]]), 2);
    assert_eq!(rank_int(vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]), 3);
    assert_eq!(rank_int(vec![vec![0, 0], vec![0, 0]]), 0);
}

// Mask order: ∅, {0}, {1}, {0,1}, {2}, {0,2}, {1,2}, {0,1,2}.
const EH3_LOWER: [[i64; 8]; 3] = [[0, 1, 0, 1, 0, 1, 0, 2], [0, 0, 0, 1, 0, 0, 1, 2], [0, 0, 0, 0, 1, 1, 1, 2]];
const EH3_UPPER: [[i64; 8]; 3] = [[0, 2, 1, 2, 1, 2, 1, 2], [0, 1, 2, 2, 1, 2, 2, 2], [0, 1, 1, 1, 2, 2, 2, 2]];

#[test]
fn eh3_tables_match_hand_values_and_oracle() {
    let net = eh3_q();
    for v in 0..3 {
        let (lower, upper) = oracle_tables(&basis(&net, v), 3, 2);
        assert_eq!(lower, EH3_LOWER[v], "μ of z{v}");
        assert_eq!(upper, EH3_UPPER[v], "μ* of z{v}");
        let pair = net.vertex_pair(v).unwrap();
        assert_eq!(pair.lower().values(), &EH3_LOWER[v]);
        assert_eq!(pair.upper().values(), &EH3_UPPER[v]);
    }
    let fp = eh3::<Fp>(DEFAULT_PRIME);
    for (v, lower) in EH3_LOWER.iter().enumerate() {
        assert_eq!(fp.vertex_pair(v).unwrap().lower().values(), lower);
    }
}

#[test]
fn eh3_codimensions() {
    let net = eh3_q();
    let cds: Vec<usize> = (0..3).map(|v| net.vertex_pair(v).unwrap().codimension()).collect();
    assert_eq!(cds, vec![1, 1, 1]);
}

#[test]
fn eh3_diagonal_class_for_r_one() {
    let class = chow_class(&eh3_q()).unwrap();
    assert_eq!(class.r, 1);
    assert!(class.is_partition());
    assert_eq!(class.components["z0"], vec![vec![1, 0, 0]]);
    assert_eq!(class.components["z1"], vec![vec![0, 1, 0]]);
    assert_eq!(class.components["z2"], vec![vec![0, 0, 1]]);
    // at r = 2 every M_v is empty: each table caps two singletons at rank 1
    let pairs = eh3_q().vertex_pairs().unwrap();
    assert!(pairs.iter().all(|p| m_set(p, 2).is_empty()));
}

#[test]
fn eh3_limit_linear_series_points() {
    let net = eh3_q();
    let point = |b: [[i64; 2]; 3]| ProjectivePoint::new(b.iter().map(|x| ints::<Rational>((), x)).collect()).unwrap();

    let m = lp_membership(&net, &point([[1, 0], [1, 1], [0, 1]])).unwrap();
    assert!(m.member);
    assert_eq!(m.open_strata, vec!["z1"]);

    let m = lp_membership(&net, &point([[1, 0], [1, 0], [1, 0]])).unwrap();
    assert!(m.member);
    assert_eq!(m.open_strata, vec!["z2"]);

    let m = lp_membership(&net, &point([[1, 1], [1, 1], [1, 1]])).unwrap();
    assert!(!m.member);
    assert!(m.open_strata.is_empty());

    assert!(ProjectivePoint::<Rational>::new(vec![ints((), &[0, 0])]).is_err());
    let short = ProjectivePoint::new(vec![ints::<Rational>((), &[1, 0])]).unwrap();
    assert!(lp_membership(&net, &short).is_err());
}

#[test]
fn banana_graph_linear_system() {
    // two vertices joined by two edges; firing vertex 0 moves two chips
    let g = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
    let ls = chipfire::linear_system(&g, &[2, 0]).unwrap();
    assert_eq!(ls.len(), 2);
    assert_eq!(ls.divisor_at(&QuiverVertex::new(vec![0, 0])), Some(&vec![2, 0]));
    assert_eq!(ls.divisor_at(&QuiverVertex::new(vec![1, 0])), Some(&vec![0, 2]));
    assert_eq!(chipfire::reduced_in(&g, &ls, 0).unwrap(), vec![2, 0]);
    assert_eq!(chipfire::reduced_in(&g, &ls, 1).unwrap(), vec![0, 2]);
    assert!(!chipfire::equivalent(&g, &[2, 0], &[1, 1]).unwrap());
    assert!(chipfire::equivalent(&g, &[3, -1], &[1, 1]).unwrap());
}

#[test]
fn triangle_reduced_divisors() {
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    // degree 1 on a genus one graph: |D| is a single divisor
    let ls = chipfire::linear_system(&g, &[-1, 1, 1]).unwrap();
    assert_eq!(ls.len(), 1);
    assert!(chipfire::is_v_reduced(&g, &[0, 0, 1], 0).unwrap());
    assert!(!chipfire::is_v_reduced(&g, &[0, 2, 0], 0).unwrap());
    assert!(chipfire::is_v_reduced(&g, &[0, 1, 0], 2).unwrap());
    assert!(Graph::new(3, vec![(0, 1)]).is_err());
    assert!(Graph::new(2, vec![(0, 0)]).is_err());
}
