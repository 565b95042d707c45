mod common;

use common::*;
use linktile::certificate::Status;
use linktile::field::Field;
use linktile::net::*;
use linktile::polytope::{modular_pair_by_sections, modular_pair_of};
use linktile::quiver::{find_polygon, polygons};
use linktile::{Fp, Matrix, OrderedPartition, Rational, Subset, DEFAULT_PRIME};
use num_traits::Zero;

fn statuses<F: Field>(net: &NetPresentation<F>) -> Vec<(String, Status)> {
    net.verify().clauses.iter().map(|c| (c.name.clone(), c.status)).collect()
}

fn failing<F: Field>(net: &NetPresentation<F>) -> Vec<String> {
    net.verify().clauses.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect()
}

#[test]
fn eh3_verifies() {
    let net = eh3_q();
    assert!(net.verify().passed, "{:?}", statuses(&net));
    assert!(eh3::<Fp>(DEFAULT_PRIME).verify().passed);
}

#[test]
fn eh3_zeroed_map_fails_reducedness() {
    let mut net = eh3_q();
    net.set_map(1, 0, Matrix::zeros(2, 2));
    assert!(failing(&net).contains(&REDUCEDNESS.to_string()));
}

#[test]
fn eh3_identity_breaks_circuit() {
    let mut net = eh3_q();
    net.set_map(0, 1, Matrix::identity(2));
    assert!(failing(&net).contains(&CIRCUITS.to_string()));
}

#[test]
fn eh3_vertex_space_of_z1() {
    let net = eh3_q();
    let w = net.vertex_space(1).unwrap();
    let q = |x: i64| Rational::from_int((), x);
    let expected = Matrix::from_rows(vec![vec![q(1), q(0), q(1), q(0), q(0), q(0)], vec![q(0), q(0), q(0), q(1), q(0), q(1)]], 6).unwrap();
    assert_eq!(w.space().basis(), &expected);
}

#[test]
fn eh3_closed_formula_matches_subspace_pairs() {
    let net = eh3_q();
    for v in 0..3 {
        let w = net.vertex_space(v).unwrap();
        let p = net.vertex_pair(v).unwrap();
        assert_eq!(p, modular_pair_of(&w));
        assert_eq!(p, modular_pair_by_sections(&w));
        assert!(p.is_simple());
    }
    let p0 = net.vertex_pair(0).unwrap();
    assert_eq!(p0.lower().get(Subset::singleton(0)), 1);
    assert_eq!(p0.upper().get(Subset::singleton(1)), 1);
    assert_eq!(p0.upper().get(Subset::singleton(2)), 1);
}

#[test]
fn eh3_polygon_spaces() {
    let net = eh3_q();
    let h = net.vertex_set();
    let d01 = find_polygon(h, &[0, 1]).unwrap();
    let w = net.polygon_space(&d01).unwrap();
    let split = net.vertex_pair(0).unwrap().split(&OrderedPartition::bipartition(3, Subset::singleton(0))).unwrap();
    assert_eq!(modular_pair_of(&w), split);
    assert_eq!(split.codimension(), 2);
    assert_eq!(split.lattice_points(1), vec![vec![1, 0, 1], vec![1, 1, 0]]);
    let d12 = find_polygon(h, &[1, 2]).unwrap();
    let p12 = modular_pair_of(&net.polygon_space(&d12).unwrap());
    assert_eq!(p12.lattice_points(1), vec![vec![0, 1, 1], vec![1, 0, 1]]);
    let single = find_polygon(h, &[1]).unwrap();
    assert_eq!(net.polygon_space(&single).unwrap(), net.vertex_space(1).unwrap());
}

#[test]
fn eh3_faces() {
    let net = eh3_q();
    let f1 = net.faces_meeting_interior(1).unwrap();
    assert!(f1.violations.is_empty(), "{:?}", f1.violations);
    let mut polys: Vec<Vec<usize>> = f1.faces.iter().map(|f| f.polygon.clone()).collect();
    polys.sort();
    assert_eq!(polys, vec![vec![0, 1], vec![1], vec![1, 2]]);
    let f0 = net.faces_meeting_interior(0).unwrap();
    assert!(f0.violations.is_empty());
    let parts: Vec<&OrderedPartition> = f0.faces.iter().map(|f| &f.partition).collect();
    assert_eq!(parts.len(), 2);
    assert!(parts.contains(&&OrderedPartition::bipartition(3, Subset::singleton(0))));
    assert!(parts.contains(&&OrderedPartition::trivial(3)));
}

#[test]
fn eh3_scalings() {
    let net = eh3_q();
    let q = |x: i64| Rational::from_int((), x);
    assert_eq!(net.find_scaling(1, 0).unwrap(), vec![q(1), q(0), q(0)]);
    let c = net.find_scaling(0, 1).unwrap();
    assert!(c[0].is_zero() && !c[1].is_zero() && !c[2].is_zero());
    for v in 0..3 {
        for u in (0..3).filter(|&u| u != v) {
            let c = net.find_scaling(v, u).unwrap();
            assert!(c[v].is_zero() && !c[u].is_zero());
            let i = Subset::from_indices((0..3).filter(|&w| !c[w].is_zero()));
            let (pu, pv) = (net.vertex_pair(u).unwrap(), net.vertex_pair(v).unwrap());
            assert!(pv.upper().get(i) <= pu.lower().get(i));
        }
    }
}

#[test]
fn generator_reproduces_eh3() {
    let net = eh3_trop().generate::<Rational>(()).unwrap();
    assert_eq!(net, eh3_q());
}

#[test]
fn generator_single_vertex() {
    let net = trop(3, &[&[Some(0), Some(0), Some(0)]]).generate::<Rational>(()).unwrap();
    assert_eq!(net.len(), 1);
    assert!(net.verify().passed);
    let f = net.faces_meeting_interior(0).unwrap();
    assert_eq!(f.faces.len(), 1);
    assert_eq!(f.faces[0].partition, OrderedPartition::trivial(1));
}

#[test]
fn generator_two_forms_three_types() {
    let net = trop(3, &[&[Some(0), Some(0), Some(0)], &[Some(1), Some(0), Some(0)]]).generate::<Rational>(()).unwrap();
    assert!(net.verify().passed, "{:?}", statuses(&net));
    assert_eq!(net.len(), 2);
    assert_eq!(polygons(net.vertex_set()).unwrap().len(), 3);
}

#[test]
fn generator_rejects_bad_specs() {
    assert_eq!(trop(2, &[]).generate::<Rational>(()).unwrap_err(), TropError::NoForms);
    assert_eq!(trop(2, &[&[Some(0), None]]).generate::<Rational>(()).unwrap_err(), TropError::Uncovered(1));
    assert_eq!(trop(2, &[&[Some(0), None], &[None, Some(0)]]).generate::<Rational>(()).unwrap_err(), TropError::NoFullSupport);
}

#[test]
fn twist_is_deterministic_and_preserves_pairs() {
    let net = eh3_q();
    let t1 = twist(&net, 7);
    assert_eq!(t1, twist(&net, 7));
    assert!(t1.verify().passed, "{:?}", statuses(&t1));
    for v in 0..3 {
        assert_eq!(t1.vertex_pair(v).unwrap(), net.vertex_pair(v).unwrap());
    }
    let dense = (0..3)
        .flat_map(|v| (0..3).map(move |u| (v, u)))
        .filter(|&(v, u)| v != u && (0..2).all(|i| (0..2).all(|j| !t1.map(v, u).get(i, j).is_zero())))
        .count();
    assert!(dense >= 3, "{dense} dense maps");
}

#[test]
fn json_round_trip() {
    let net = twist(&eh3_q(), 3);
    let file = NetFile::from_net(&net);
    let back: NetPresentation<Rational> = NetFile::from_json(&file.to_json()).unwrap().to_net().unwrap();
    assert_eq!(back, net);
    let fp: NetPresentation<Fp> = file.to_net_with(DEFAULT_PRIME).unwrap();
    assert!(fp.verify().passed);
}

#[test]
fn json_schema_errors() {
    let bad = r#"{"arrow_types":2,"dimension":1,"field":{"kind":"rational"},"vertices":[{"id":"a","coords":[0,0]},{"id":"b","coords":[1,0]}],"maps":[]}"#;
    let f = NetFile::from_json(bad).unwrap();
    assert!(matches!(f.to_net::<Rational>(), Err(NetIoError::Net(NetError::MissingMap(..)))));
    assert!(NetFile::from_json(r#"{"arrow_types":2}"#).is_err());
}
