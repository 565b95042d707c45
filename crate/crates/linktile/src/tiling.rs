//! Certificates for the simplex tiling by vertex polytopes, the partition of
//! `Ω_r(Z)` into the sets `M_v`, point membership in the linked projective
//! space, and the reduction complex.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{labels_of, Certificate, Clause, Witness};
use crate::combinat::compositions;
use crate::field::Field;
use crate::net::{NetError, NetPresentation};
use crate::polytope::{check_dilations, modular_pair_of, PairClauses};
use crate::quiver::{polygons, Polygon};
use crate::setfn::ModularPair;
use crate::subset::Subset;

pub const SIMPLICITY: &str = "simplicity";
pub const SCALINGS: &str = "scalings and separations";
pub const TWO_GONS: &str = "completeness with 2-gon witnesses";
pub const FACES: &str = "faces and polygons";
pub const PARTITION: &str = "diagonal class partition";

/// The modular pairs, polygons and face data of a verified net.
pub struct NetAnalysis<'a, F: Field> {
    pub net: &'a NetPresentation<F>,
    pub pairs: Vec<ModularPair>,
    pub polygons: Vec<Polygon>,
    pub faces: Vec<crate::net::FaceAnalysis>,
}

impl<'a, F: Field> NetAnalysis<'a, F> {
    /// Fails with the first failing verification clause.
    pub fn new(net: &'a NetPresentation<F>) -> Result<Self, NetError> {
        net.require_verified()?;
        let pairs = net.vertex_pairs()?;
        let polys = polygons(net.vertex_set())?;
        let faces = (0..net.len()).into_par_iter().map(|v| net.faces_with_pair(v, &pairs[v], &polys)).collect::<Result<Vec<_>, _>>()?;
        Ok(NetAnalysis { net, pairs, polygons: polys, faces })
    }

    fn ids(&self) -> &[String] {
        self.net.ids()
    }

    fn h(&self) -> usize {
        self.net.len()
    }
}

/// Assembles the tiling certificate; `dilations` are the coverage checks.
pub fn tiling_certificate<F: Field>(net: &NetPresentation<F>, dilations: &[i64]) -> Result<Certificate, NetError> {
    check_dilations(dilations)?;
    let a = NetAnalysis::new(net)?;
    let ids = a.ids().to_vec();
    let h = a.h();

    let simplicity = PairClauses::simplicity(&ids, &a.pairs);
    let distinct = PairClauses::distinct(&ids, &ids, &a.pairs);

    // Scalings c W_v ⊆ W_u and the separations read off their supports.
    let scal_results: Vec<(usize, usize, Result<Vec<F>, NetError>)> = (0..h)
        .into_par_iter()
        .flat_map_iter(|v| (0..h).filter(move |&u| u != v).map(move |u| (v, u)))
        .map(|(v, u)| (v, u, net.find_scaling(v, u)))
        .collect();
    let mut scal = Clause::new(SCALINGS);
    for (v, u, res) in scal_results {
        let subj = vec![ids[v].clone(), ids[u].clone()];
        let c = match res {
            Ok(c) => c,
            Err(e) => {
                scal.fail(subj, None, None, e.to_string());
                continue;
            }
        };
        let support = Subset::from_indices((0..h).filter(|&w| !c[w].is_zero()));
        scal.witness(Witness::Scaling {
            from: ids[v].clone(),
            to: ids[u].clone(),
            c: c.iter().map(|x| x.to_string()).collect(),
            support: labels_of(&ids, support),
        });
        let sep = a.pairs[u].separations(&a.pairs[v]).ok().and_then(|all| all.into_iter().find(|s| s.first == support));
        match sep {
            Some(s) if s.nontrivial => scal.witness(Witness::Separation {
                a: ids[u].clone(),
                b: ids[v].clone(),
                first: labels_of(&ids, s.first),
                second: labels_of(&ids, s.second),
                strict: s.strict,
                nontrivial: true,
            }),
            _ => scal.fail(subj, None, None, "support of c does not give a nontrivial separation"),
        }
    }

    // Bipartitions meeting the open simplex, matched through 2-gons.
    let mut two_gons = Clause::new(TWO_GONS);
    for (v, fa) in a.faces.iter().enumerate() {
        for f in fa.faces.iter().filter(|f| f.partition.len() == 2) {
            let pi = &f.partition;
            let shown = pi.display_with(&ids);
            let [x, y] = f.order[..] else {
                two_gons.fail(vec![ids[v].clone()], Some(shown), None, "constructed polygon is not a 2-gon");
                continue;
            };
            debug_assert_eq!(x, v);
            let poly = match a.polygons.iter().find(|p| p.members == f.polygon) {
                Some(p) => p,
                None => {
                    two_gons.fail(vec![ids[v].clone()], Some(shown), None, "no enumerated 2-gon");
                    continue;
                }
            };
            let mine = a.pairs[v].split(pi)?;
            let theirs = a.pairs[y].split(&pi.reversed())?;
            let delta = modular_pair_of(&net.polygon_space(poly)?);
            if mine == delta && delta == theirs {
                two_gons.witness(Witness::FaceMatch {
                    subject: ids[v].clone(),
                    partition: shown,
                    polygon: f.polygon.iter().map(|&i| ids[i].clone()).collect(),
                    partner: Some(ids[y].clone()),
                });
            } else {
                two_gons.fail(vec![ids[v].clone(), ids[y].clone()], Some(shown), None, "split functions differ across the 2-gon");
            }
        }
    }
    let completeness = PairClauses::completeness(&ids, &ids, &a.pairs);

    let faces = faces_clause(&a)?;
    let coverage = PairClauses::coverage(&ids, &a.pairs, dilations);
    let separations = PairClauses::separations(&ids, &ids, &a.pairs);

    let clauses = vec![simplicity, distinct, scal, separations, two_gons, completeness, faces, coverage];
    let notes = vec![
        "axioms verified on H".to_string(),
        "lattice coverage is checked at finitely many dilations and is evidence, not proof".to_string(),
    ];
    Ok(Certificate::new("vertex polytope tiling", clauses, notes))
}

/// Every face of `P_v` meeting the open simplex comes from exactly one
/// polygon through `v`, with matching modular pair and codimension `|Δ|`.
fn faces_clause<F: Field>(a: &NetAnalysis<'_, F>) -> Result<Clause, NetError> {
    let ids = a.ids();
    let mut c = Clause::new(FACES);
    for (v, fa) in a.faces.iter().enumerate() {
        for msg in &fa.violations {
            c.fail(vec![ids[v].clone()], None, None, msg.clone());
        }
        for f in &fa.faces {
            let shown = f.partition.display_with(ids);
            let Some(poly) = a.polygons.iter().find(|p| p.members == f.polygon) else {
                continue;
            };
            let delta = modular_pair_of(&a.net.polygon_space(poly)?);
            let split = a.pairs[v].split(&f.partition)?;
            if delta != split {
                c.fail(vec![ids[v].clone()], Some(shown), None, "polygon pair differs from the split pair");
            } else if delta.codimension() != poly.len() {
                c.fail(vec![ids[v].clone()], Some(shown), None, format!("codimension {} for a {}-gon", delta.codimension(), poly.len()));
            } else {
                c.witness(Witness::FaceMatch {
                    subject: ids[v].clone(),
                    partition: shown,
                    polygon: f.polygon.iter().map(|&i| ids[i].clone()).collect(),
                    partner: None,
                });
            }
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowEntry {
    pub q: Vec<i64>,
    pub multiplicity: usize,
    /// The vertex whose `M_v` contains `q`, when unique.
    pub component: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowClass {
    pub r: i64,
    pub vertices: Vec<String>,
    /// Points of `Ω_r(Z)` in lexicographic order.
    pub entries: Vec<ChowEntry>,
    /// `M_v` per vertex, in lexicographic order.
    pub components: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ChowClass {
    pub fn is_partition(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity == 1)
    }

    pub fn clause(&self) -> Clause {
        let mut c = Clause::new(PARTITION);
        for e in &self.entries {
            if e.multiplicity != 1 {
                let owners: Vec<String> = self.components.iter().filter(|(_, m)| m.contains(&e.q)).map(|(k, _)| k.clone()).collect();
                c.fail(owners, None, Some(e.q.iter().map(|x| x.to_string()).collect()), format!("multiplicity {}", e.multiplicity));
            }
        }
        c.witness(Witness::Note { text: format!("{} points of Ω_{}(Z)", self.entries.len(), self.r) });
        c
    }

    pub fn certificate(&self) -> Certificate {
        Certificate::new("diagonal class", vec![self.clause()], vec![])
    }

    /// `[{"q", "multiplicity", "component"}]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("entries serialize")
    }
}

/// `M_v = {q ∈ Ω_r(Z) : q(I) <= μ_v*(I) - 1 for proper nonempty I}`.
pub fn m_set(pair: &ModularPair, r: i64) -> Vec<Vec<i64>> {
    let h = pair.h();
    let full = Subset::full(h);
    let upper = pair.upper();
    let mut sums = vec![0i64; 1 << h];
    compositions(r, h)
        .into_iter()
        .filter(|q| {
            for mask in 1usize..(1 << h) {
                let low = mask.trailing_zeros() as usize;
                sums[mask] = sums[mask & (mask - 1)] + q[low];
                let s = Subset(mask as u32);
                if s != full && sums[mask] > upper.get(s) - 1 {
                    return false;
                }
            }
            true
        })
        .collect()
}

pub fn chow_class<F: Field>(net: &NetPresentation<F>) -> Result<ChowClass, NetError> {
    net.require_verified()?;
    let pairs = net.vertex_pairs()?;
    Ok(chow_from_pairs(net.ids(), &pairs, net.dim() as i64 - 1))
}

pub fn chow_from_pairs(ids: &[String], pairs: &[ModularPair], r: i64) -> ChowClass {
    let h = ids.len();
    let sets: Vec<Vec<Vec<i64>>> = pairs.par_iter().map(|p| m_set(p, r)).collect();
    let mut owners: BTreeMap<Vec<i64>, Vec<usize>> = compositions(r, h).into_iter().map(|q| (q, vec![])).collect();
    for (v, s) in sets.iter().enumerate() {
        for q in s {
            owners.get_mut(q).expect("M_v lies in Ω_r(Z)").push(v);
        }
    }
    let entries = owners
        .into_iter()
        .map(|(q, o)| ChowEntry { multiplicity: o.len(), component: (o.len() == 1).then(|| ids[o[0]].clone()), q })
        .collect();
    let components = ids.iter().cloned().zip(sets).collect();
    ChowClass { r, vertices: ids.to_vec(), entries, components }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointError {
    #[error("block {0} is zero")]
    ZeroBlock(usize),
    #[error("expected {expected} blocks of length {dim}, found {found:?}")]
    Shape { expected: usize, dim: usize, found: Vec<usize> },
}

/// A point of `∏_{v∈H} P(V_v)`, each block scaled so its first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint<F: Field> {
    blocks: Vec<Vec<F>>,
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(blocks: Vec<Vec<F>>) -> Result<Self, PointError> {
        let mut out = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.into_iter().enumerate() {
            let lead = b.iter().find(|x| !x.is_zero()).cloned().ok_or(PointError::ZeroBlock(i))?;
            out.push(b.into_iter().map(|x| x / lead.clone()).collect());
        }
        Ok(ProjectivePoint { blocks: out })
    }

    pub fn blocks(&self) -> &[Vec<F>] {
        &self.blocks
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpMembership {
    pub member: bool,
    /// Vertices whose open stratum contains the point.
    pub open_strata: Vec<String>,
}

fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    // rank of the 2-row stack is at most 1
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone()))
}

/// `p ∈ LP_H(V)` iff `M^v_w s_v ∧ s_w = 0` for all `v, w`; the open stratum
/// of `v` additionally needs `M^v_w s_v ≠ 0` for all `w`.
pub fn lp_membership<F: Field>(net: &NetPresentation<F>, p: &ProjectivePoint<F>) -> Result<LpMembership, PointError> {
    let n = net.len();
    let lens: Vec<usize> = p.blocks.iter().map(Vec::len).collect();
    if lens.len() != n || lens.iter().any(|&l| l != net.dim()) {
        return Err(PointError::Shape { expected: n, dim: net.dim(), found: lens });
    }
    let images: Vec<Vec<Vec<F>>> = (0..n).map(|v| (0..n).map(|w| net.map(v, w).mul_vec(&p.blocks[v])).collect()).collect();
    let member = (0..n).all(|v| (0..n).all(|w| proportional(&images[v][w], &p.blocks[w])));
    let open_strata = if member {
        (0..n).filter(|&v| images[v].iter().all(|x| x.iter().any(|c| !c.is_zero()))).map(|v| net.ids()[v].clone()).collect()
    } else {
        vec![]
    };
    Ok(LpMembership { member, open_strata })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionComplex {
    pub vertices: Vec<String>,
    /// Polygons of `H` as sorted index lists, sorted.
    pub simplices: Vec<Vec<usize>>,
    /// Differences between the polygon complex and the complex of vertex
    /// sets whose polytopes share a point of the open simplex.
    pub mismatches: Vec<String>,
}

impl ReductionComplex {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1])).collect()
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(Vec::len).max().unwrap_or(1) - 1
    }
}

/// Vertex sets whose polytopes meet in the open simplex. In a tiling two
/// tiles meet in a common face, so `S` qualifies iff some face
/// `P_{v,π}` meeting the open simplex lies in every `P_u`, `u ∈ S`;
/// containment of base polytopes is pointwise domination of the lower
/// functions.
fn polytope_complex(pairs: &[ModularPair], faces: &[crate::net::FaceAnalysis]) -> Result<BTreeSet<Subset>, NetError> {
    let mut out = BTreeSet::new();
    for (v, fa) in faces.iter().enumerate() {
        for f in &fa.faces {
            let face = pairs[v].split(&f.partition)?;
            let h = face.h();
            let holders =
                Subset::from_indices((0..pairs.len()).filter(|&u| Subset::all(h).all(|i| face.lower().get(i) >= pairs[u].lower().get(i))));
            for s in holders.subsets().skip(1) {
                out.insert(s);
            }
        }
    }
    Ok(out)
}

pub fn reduction_complex<F: Field>(net: &NetPresentation<F>) -> Result<ReductionComplex, NetError> {
    let a = NetAnalysis::new(net)?;
    Ok(reduction_from(&a))
}

pub fn reduction_from<F: Field>(a: &NetAnalysis<'_, F>) -> ReductionComplex {
    let ids = a.ids();
    let from_polys: BTreeSet<Subset> = a.polygons.iter().map(|p| Subset::from_indices(p.members.iter().copied())).collect();
    let mut mismatches = vec![];
    match polytope_complex(&a.pairs, &a.faces) {
        Ok(from_tiles) => {
            for s in from_polys.symmetric_difference(&from_tiles) {
                let side = if from_polys.contains(s) {
                    "polygon without a shared interior face"
                } else {
                    "shared interior face without a polygon"
                };
                mismatches.push(format!("{side}: {:?}", labels_of(ids, *s)));
            }
        }
        Err(e) => mismatches.push(e.to_string()),
    }
    ReductionComplex { vertices: ids.to_vec(), simplices: a.polygons.iter().map(|p| p.members.clone()).collect(), mismatches }
}
