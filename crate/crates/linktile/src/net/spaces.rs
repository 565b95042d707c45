//! Vertex spaces `W_v`, their modular pairs, polygon spaces `W_Δ`, the
//! face/polygon correspondence and the scalings relating vertex spaces.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{NetError, NetPresentation};
use crate::field::Field;
use crate::linalg::{Ambient, Matrix, Subspace};
use crate::polytope::BlockedSubspace;
use crate::quiver::{ess, find_polygon, induced_partition, neighbor_step, polygons, shadow_index, Polygon};
use crate::setfn::{ModularPair, OrderedPartition, SetFn};
use crate::subset::Subset;

/// A partition `π` whose face `P_{v,π}` meets the open simplex, with the
/// polygon built from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub partition: OrderedPartition,
    /// Sorted members of the polygon.
    pub polygon: Vec<usize>,
    /// `w_1 = v, w_2, …, w_m` in the order of the construction.
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceAnalysis {
    pub vertex: usize,
    pub faces: Vec<FaceRecord>,
    pub violations: Vec<String>,
}

/// Row basis of `{s ∈ span(basis) : m s = 0}`.
fn restrict_kernel<F: Field>(basis: &Matrix<F>, m: &Matrix<F>) -> Matrix<F> {
    if basis.rows() == 0 {
        return basis.clone();
    }
    let coeffs = m.mul(&basis.transpose()).kernel();
    coeffs.mul(basis).rref().0
}

impl<F: Field> NetPresentation<F> {
    pub fn ambient(&self) -> Arc<Ambient> {
        Ambient::new(self.ids().to_vec(), vec![self.dim(); self.len()]).expect("ids are distinct")
    }

    /// `(M^v_u s)_{u∈H}` for the given column vector `s ∈ V_v`.
    fn psi(&self, v: usize, s: &[F]) -> Vec<F> {
        (0..self.len()).flat_map(|u| self.map(v, u).mul_vec(s)).collect()
    }

    /// `⋂_{u∈S} ker M^v_u` as a row basis.
    pub fn common_kernel(&self, v: usize, s: Subset) -> Matrix<F> {
        s.iter().fold(Matrix::identity(self.dim()), |b, u| restrict_kernel(&b, self.map(v, u)))
    }

    /// `W_v = Ψ^v_H(V_v)`.
    pub fn vertex_space(&self, v: usize) -> Result<BlockedSubspace<F>, NetError> {
        let d = self.dim();
        let rows: Vec<Vec<F>> = (0..d)
            .map(|i| {
                let e: Vec<F> = (0..d).map(|j| if i == j { F::one() } else { F::zero() }).collect();
                self.psi(v, &e)
            })
            .collect();
        let m = Matrix::from_rows(rows, d * self.len())?;
        Ok(BlockedSubspace::new(Subspace::from_rows(self.ambient(), &m)?)?)
    }

    /// `μ_v(I) = dim ⋂_{u∈H-I} ker M^v_u`, each intersection built from the
    /// one for the set without its lowest element.
    pub fn vertex_pair(&self, v: usize) -> Result<ModularPair, NetError> {
        let h = self.len();
        if h > crate::subset::MAX_GROUND {
            return Err(NetError::TooManyVertices(h));
        }
        let size = 1usize << h;
        let mut kernels: Vec<Matrix<F>> = Vec::with_capacity(size);
        kernels.push(Matrix::identity(self.dim()));
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let prev = &kernels[mask & (mask - 1)];
            let k = restrict_kernel(prev, self.map(v, low));
            kernels.push(k);
        }
        let full = size - 1;
        let values = (0..size).map(|i| kernels[full ^ i].rows() as i64).collect();
        let mu = SetFn::new(self.ids().to_vec(), values)?;
        Ok(ModularPair::new(mu)?)
    }

    pub fn vertex_pairs(&self) -> Result<Vec<ModularPair>, NetError> {
        use rayon::prelude::*;
        (0..self.len()).into_par_iter().map(|v| self.vertex_pair(v)).collect()
    }

    /// `R_v^Δ`: the elements of `H` whose shadow in `Δ` is `v`.
    pub fn shadow_region(&self, delta: &Polygon, v: usize) -> Result<Subset, NetError> {
        let vs = self.vertex_set().vertices();
        let dv: Vec<_> = delta.members.iter().map(|&i| vs[i].clone()).collect();
        let mut out = Subset::EMPTY;
        for (k, u) in vs.iter().enumerate() {
            if delta.members[shadow_index(u, &dv)?] == v {
                out = out.with(k);
            }
        }
        Ok(out)
    }

    /// `W_Δ = Ψ^Δ_H(V_Δ)` with `V_Δ = ⊕_{v∈Δ} ⋂_{w∈H-R_v^Δ} ker M^v_w`.
    pub fn polygon_space(&self, delta: &Polygon) -> Result<BlockedSubspace<F>, NetError> {
        find_polygon(self.vertex_set(), &delta.members)?;
        let mut rows = Vec::new();
        for &v in &delta.members {
            let region = self.shadow_region(delta, v)?;
            let k = self.common_kernel(v, region.complement(self.len()));
            for i in 0..k.rows() {
                rows.push(self.psi(v, k.row(i)));
            }
        }
        let m = Matrix::from_rows(rows, self.dim() * self.len())?;
        Ok(BlockedSubspace::new(Subspace::from_rows(self.ambient(), &m)?)?)
    }

    /// The polygon obtained from `v` and a partition `π = (π_1, …, π_m)`:
    /// `w_1 = v` and `w_{j+1}` the shadow of `I_j·v`, where `I_j` is the
    /// intersection of the essential types of `v -> u` over `u ∉ F_j`.
    pub fn polygon_from_partition(&self, v: usize, pi: &OrderedPartition) -> Result<Vec<usize>, String> {
        let vs = self.vertex_set().vertices();
        let full_types = vs[v].all_types();
        let filt = pi.filtration();
        let mut order = vec![v];
        for f in &filt[1..filt.len() - 1] {
            let outside = f.complement(self.len());
            let i_j = outside.iter().fold(full_types, |acc, u| acc & ess(&vs[v], &vs[u]));
            let step = neighbor_step(&vs[v], i_j).map_err(|_| format!("type set {i_j} is empty or full"))?;
            let w = shadow_index(&step, vs).map_err(|e| e.to_string())?;
            order.push(w);
        }
        Ok(order)
    }

    /// Faces of `P_v` meeting the open simplex, each matched with the
    /// polygon built from it and cross-checked against the polygon
    /// enumeration restricted to polygons through `v`.
    pub fn faces_meeting_interior(&self, v: usize) -> Result<FaceAnalysis, NetError> {
        let pair = self.vertex_pair(v)?;
        let polys = polygons(self.vertex_set())?;
        self.faces_with_pair(v, &pair, &polys)
    }

    /// As [`Self::faces_meeting_interior`] with precomputed pair and polygons.
    pub fn faces_with_pair(&self, v: usize, pair: &ModularPair, polys: &[Polygon]) -> Result<FaceAnalysis, NetError> {
        let h = self.len();
        let mut violations = vec![];
        let mut faces = vec![];
        for pi in faces_meeting_open_simplex(pair) {
            match self.polygon_from_partition(v, &pi) {
                Err(e) => violations.push(format!("{}: construction failed: {e}", pi.display_with(self.ids()))),
                Ok(order) => {
                    let mut members = order.clone();
                    members.sort_unstable();
                    members.dedup();
                    let check = find_polygon(self.vertex_set(), &members)
                        .ok()
                        .filter(|p| members.len() == order.len() && p.orientation(v).is_some_and(|o| o.order == order))
                        .and_then(|p| induced_partition(&p, v, self.vertex_set()).ok());
                    if check.as_ref() != Some(&pi) {
                        violations.push(format!(
                            "{}: constructed vertices {:?} do not form a polygon inducing it",
                            pi.display_with(self.ids()),
                            order.iter().map(|&i| &self.ids()[i]).collect::<Vec<_>>()
                        ));
                    }
                    faces.push(FaceRecord { partition: pi, polygon: members, order });
                }
            }
        }
        let from_faces: BTreeSet<&OrderedPartition> = faces.iter().map(|f| &f.partition).collect();
        let mut from_polys: BTreeMap<OrderedPartition, Vec<usize>> = BTreeMap::new();
        for p in polys.iter().filter(|p| p.contains(v)) {
            let pi = induced_partition(p, v, self.vertex_set())?;
            if let Some(prev) = from_polys.insert(pi.clone(), p.members.clone()) {
                violations.push(format!("polygons {prev:?} and {:?} induce the same partition", p.members));
            }
            if !from_faces.contains(&pi) {
                violations.push(format!(
                    "polygon {:?} induces {}, whose face misses the open simplex",
                    p.members,
                    pi.display_with(self.ids())
                ));
            }
        }
        for f in &faces {
            if !from_polys.contains_key(&f.partition) {
                violations.push(format!("{} has no polygon through v", f.partition.display_with(self.ids())));
            }
        }
        debug_assert!(h > 0);
        Ok(FaceAnalysis { vertex: v, faces, violations })
    }

    /// `c ∈ k^H` with `c W_v ⊆ W_u`: `c_w` solves `c_w M^v_w = M^u_w M^v_u`
    /// when `v -> u -> w` is admissible, and is zero otherwise.
    pub fn find_scaling(&self, v: usize, u: usize) -> Result<Vec<F>, NetError> {
        if u == v {
            return Err(NetError::InvariantViolation("scaling requested between a vertex and itself".into()));
        }
        let vs = self.vertex_set().vertices();
        let mut c = Vec::with_capacity(self.len());
        for w in 0..self.len() {
            if (ess(&vs[v], &vs[u]) | ess(&vs[u], &vs[w])) == vs[v].all_types() {
                c.push(F::zero());
                continue;
            }
            let prod = self.map(u, w).mul(self.map(v, u));
            match prod.proportionality(self.map(v, w)) {
                Some(l) if !l.is_zero() => c.push(l),
                _ => {
                    return Err(NetError::InvariantViolation(format!(
                        "no nonzero scalar relates the maps {} -> {} -> {} and {} -> {}",
                        self.ids()[v],
                        self.ids()[u],
                        self.ids()[w],
                        self.ids()[v],
                        self.ids()[w]
                    )))
                }
            }
        }
        let wv = self.vertex_space(v)?;
        let wu = self.vertex_space(u)?;
        if !wu.space().contains(&wv.space().scale(&c)?)? {
            return Err(NetError::InvariantViolation(format!("c W_{} is not contained in W_{}", self.ids()[v], self.ids()[u])));
        }
        Ok(c)
    }
}

/// Ordered partitions `π` with `P_{μ_π}` meeting the open orthant, found as
/// chains `∅ ⊂ F_1 ⊂ … ⊂ H` whose every step passes the minor test; chains
/// that cannot be completed are pruned with a memo on the last set.
pub fn faces_meeting_open_simplex(pair: &ModularPair) -> Vec<OrderedPartition> {
    let h = pair.h();
    let full = Subset::full(h);
    let mut memo: Vec<Option<bool>> = vec![None; 1 << h];
    fn completable(pair: &ModularPair, a: Subset, full: Subset, memo: &mut [Option<bool>]) -> bool {
        if a == full {
            return true;
        }
        if let Some(x) = memo[a.0 as usize] {
            return x;
        }
        let rest = full - a;
        let ok = rest.subsets().skip(1).any(|k| pair.step_meets(a, a | k) && completable(pair, a | k, full, memo));
        memo[a.0 as usize] = Some(ok);
        ok
    }
    fn walk(pair: &ModularPair, chain: &mut Vec<Subset>, full: Subset, memo: &mut [Option<bool>], out: &mut Vec<OrderedPartition>) {
        let a = *chain.last().unwrap_or(&Subset::EMPTY);
        if a == full {
            out.push(OrderedPartition::from_chain(full.len(), chain).expect("chain"));
            return;
        }
        for k in (full - a).subsets().skip(1) {
            let b = a | k;
            if pair.step_meets(a, b) && completable(pair, b, full, memo) {
                chain.push(b);
                walk(pair, chain, full, memo, out);
                chain.pop();
            }
        }
    }
    let mut out = vec![];
    if h == 0 || !completable(pair, Subset::EMPTY, full, &mut memo) {
        return out;
    }
    walk(pair, &mut vec![], full, &mut memo, &mut out);
    out.sort();
    out
}
