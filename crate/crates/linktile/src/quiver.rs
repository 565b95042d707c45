//! Vertex arithmetic of Z^n-quivers: essential types, cones, hulls, shadows,
//! extreme vertices and polygons.
//!
//! A vertex is an integer vector with one slot per arrow type, taken modulo
//! constants and stored with minimum entry 0. A minimal admissible path from
//! `u` to `v` uses the arrows of the normalized displacement `v - u`, so its
//! essential type is the support of that displacement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::ordered_set_partitions;
use crate::setfn::OrderedPartition;
use crate::subset::Subset;

pub type TypeSet = Subset;

/// Polygon enumeration walks ordered set partitions of the type set.
pub const MAX_POLYGON_TYPES: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("vertex lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("type set must be nonempty and proper")]
    BadTypeSet,
    #[error("vertex set is empty")]
    Empty,
    #[error("vertex set is not convex (P(H) != H)")]
    NotConvex,
    #[error("no unique extreme vertex for type {0}")]
    NoExtreme(usize),
    #[error("vertex set is not a polygon")]
    NotPolygon,
    #[error("vertex is not in the set")]
    NotMember,
    #[error("polygon enumeration is capped at {MAX_POLYGON_TYPES} arrow types")]
    TooManyTypes,
    #[error("no unique shadow")]
    NoShadow,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuiverVertex(Vec<i64>);

impl fmt::Debug for QuiverVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for QuiverVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl QuiverVertex {
    pub fn new(raw: Vec<i64>) -> Self {
        let m = raw.iter().copied().min().unwrap_or(0);
        QuiverVertex(raw.into_iter().map(|x| x - m).collect())
    }

    pub fn origin(types: usize) -> Self {
        QuiverVertex(vec![0; types])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn types(&self) -> usize {
        self.0.len()
    }

    pub fn all_types(&self) -> TypeSet {
        Subset::full(self.types())
    }

    pub fn max_coord(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

fn check_len(u: &QuiverVertex, v: &QuiverVertex) -> Result<(), QuiverError> {
    if u.types() == v.types() {
        Ok(())
    } else {
        Err(QuiverError::LengthMismatch(u.types(), v.types()))
    }
}

/// Normalized displacement `v - u`: arrow counts of a minimal path `u -> v`.
pub fn displacement(u: &QuiverVertex, v: &QuiverVertex) -> Vec<i64> {
    QuiverVertex::new(v.0.iter().zip(&u.0).map(|(a, b)| a - b).collect()).0
}

pub fn essential_type(u: &QuiverVertex, v: &QuiverVertex) -> Result<TypeSet, QuiverError> {
    check_len(u, v)?;
    Ok(ess(u, v))
}

pub(crate) fn ess(u: &QuiverVertex, v: &QuiverVertex) -> TypeSet {
    let mut m = 0u32;
    let mut lo = i64::MAX;
    for (a, b) in v.0.iter().zip(&u.0) {
        lo = lo.min(a - b);
    }
    for (k, (a, b)) in v.0.iter().zip(&u.0).enumerate() {
        if a - b != lo {
            m |= 1 << k;
        }
    }
    Subset(m)
}

/// Whether the concatenation `u -> v -> w` of minimal paths is admissible.
pub fn concatenation_admissible(u: &QuiverVertex, v: &QuiverVertex, w: &QuiverVertex) -> bool {
    (ess(u, v) | ess(v, w)) != u.all_types()
}

/// `I·v`: one arrow of each type in `I`.
pub fn neighbor_step(v: &QuiverVertex, types: TypeSet) -> Result<QuiverVertex, QuiverError> {
    if types.is_empty() || types == v.all_types() || !types.is_subset(v.all_types()) {
        return Err(QuiverError::BadTypeSet);
    }
    Ok(step(v, types))
}

fn step(v: &QuiverVertex, types: TypeSet) -> QuiverVertex {
    QuiverVertex::new(v.0.iter().enumerate().map(|(k, &x)| x + types.contains(k) as i64).collect())
}

/// Distinct vertices whose displacement is a 0/1 vector.
pub fn are_neighbors(u: &QuiverVertex, v: &QuiverVertex) -> bool {
    u != v && displacement(u, v).iter().all(|&x| x <= 1)
}

/// `w ∈ C_{I_a}(v)`: some admissible path `v -> w` avoids type `a`.
pub fn in_cone(v: &QuiverVertex, a: usize, w: &QuiverVertex) -> bool {
    !ess(v, w).contains(a)
}

/// Sorted, deduplicated vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<QuiverVertex>);

impl VertexSet {
    pub fn new(vs: impl IntoIterator<Item = QuiverVertex>) -> Result<Self, QuiverError> {
        let set: BTreeSet<QuiverVertex> = vs.into_iter().collect();
        let v: Vec<QuiverVertex> = set.into_iter().collect();
        if let Some(first) = v.first() {
            if let Some(bad) = v.iter().find(|x| x.types() != first.types()) {
                return Err(QuiverError::LengthMismatch(first.types(), bad.types()));
            }
        }
        Ok(VertexSet(v))
    }

    pub fn vertices(&self) -> &[QuiverVertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn types(&self) -> usize {
        self.0.first().map_or(0, |v| v.types())
    }

    pub fn index_of(&self, v: &QuiverVertex) -> Option<usize> {
        self.0.binary_search(v).ok()
    }

    pub fn contains(&self, v: &QuiverVertex) -> bool {
        self.index_of(v).is_some()
    }
}

/// Whether `v ∈ P(H)`: for each type some element of `H` reaches `v` avoiding it.
pub fn in_hull(h: &[QuiverVertex], v: &QuiverVertex) -> bool {
    (0..v.types()).all(|a| h.iter().any(|z| !ess(z, v).contains(a)))
}

/// `P(H)`, found by a breadth-first search over neighbor steps from `H`.
///
/// `P(H)` is the max-plus tropical hull: `v` is in it iff for each slot `a`
/// some `z` attains `min_k (v_k - z_k)` at `a`. The tropical segment between
/// two lattice points moves by 0/1 vectors, and a tropically convex set
/// contains the segment from any of its points to `H`, so the lattice points
/// of `P(H)` are connected under neighbor steps and the search reaches all.
pub fn hull(h: &VertexSet) -> Result<VertexSet, QuiverError> {
    if h.is_empty() {
        return Err(QuiverError::Empty);
    }
    let types = h.types();
    let mut seen: BTreeSet<QuiverVertex> = h.0.iter().cloned().collect();
    let mut queue: Vec<QuiverVertex> = h.0.clone();
    let steps: Vec<TypeSet> = (1..(1u32 << types) - 1).map(Subset).collect();
    while let Some(v) = queue.pop() {
        for &t in &steps {
            let w = step(&v, t);
            if !seen.contains(&w) && in_hull(&h.0, &w) {
                seen.insert(w.clone());
                queue.push(w);
            }
        }
    }
    VertexSet::new(seen)
}

/// `P(H)` by scanning the box `[0, S]^{n+1}` with `S` the largest normalized
/// coordinate in `H`. Every hull vertex lies in that box: if `b` is a largest
/// slot of `v`, the element `z` reaching `v` while avoiding `b` has
/// `v_b - z_b <= v_c - z_c` for a zero slot `c`, so `v_b <= z_b - z_c <= S`.
/// Exponential in the box size; kept as a reference for [`hull`].
pub fn hull_by_box(h: &VertexSet) -> Result<VertexSet, QuiverError> {
    if h.is_empty() {
        return Err(QuiverError::Empty);
    }
    let types = h.types();
    let s = h.0.iter().map(|v| v.max_coord()).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = vec![0i64; types];
    loop {
        if cur.contains(&0) {
            let v = QuiverVertex(cur.clone());
            if in_hull(&h.0, &v) {
                out.push(v);
            }
        }
        // odometer over the box
        let mut k = 0;
        while k < types {
            cur[k] += 1;
            if cur[k] <= s {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == types {
            break;
        }
    }
    VertexSet::new(out)
}

/// A vertex set with `P(H) = H`, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSet(VertexSet);

impl ConvexSet {
    pub fn new(h: VertexSet) -> Result<Self, QuiverError> {
        if hull(&h)? != h {
            return Err(QuiverError::NotConvex);
        }
        Ok(ConvexSet(h))
    }

    pub fn set(&self) -> &VertexSet {
        &self.0
    }

    pub fn vertices(&self) -> &[QuiverVertex] {
        &self.0 .0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Candidates `w ∈ H` through which every `z ∈ H` reaches `u` admissibly.
pub fn shadow_candidates(h: &[QuiverVertex], u: &QuiverVertex) -> Vec<usize> {
    (0..h.len())
        .filter(|&i| {
            let w = &h[i];
            let out = ess(w, u);
            h.iter().all(|z| (ess(z, w) | out) != u.all_types())
        })
        .collect()
}

/// The shadow of `u` in a convex `H`.
pub fn shadow(u: &QuiverVertex, h: &ConvexSet) -> Result<QuiverVertex, QuiverError> {
    shadow_index(u, h.vertices()).map(|i| h.vertices()[i].clone())
}

/// Index of the shadow of `u` in `h`; `h` is assumed convex.
pub fn shadow_index(u: &QuiverVertex, h: &[QuiverVertex]) -> Result<usize, QuiverError> {
    if let Some(first) = h.first() {
        if first.types() != u.types() {
            return Err(QuiverError::LengthMismatch(first.types(), u.types()));
        }
    }
    match shadow_candidates(h, u).as_slice() {
        [i] => Ok(*i),
        _ => Err(QuiverError::NoShadow),
    }
}

/// Extreme vertex of a convex `H` at type `a`, by descending the cone counts
/// `r(v) = #(C_{I_a}(v) ∩ H)`, then checked against both characterizations.
pub fn extreme_vertex(h: &ConvexSet, a: usize) -> Result<QuiverVertex, QuiverError> {
    let vs = h.vertices();
    let first = vs.first().ok_or(QuiverError::Empty)?;
    if a >= first.types() {
        return Err(QuiverError::BadTypeSet);
    }
    let mut cur = 0usize;
    loop {
        let next = (0..vs.len()).find(|&j| j != cur && in_cone(&vs[cur], a, &vs[j]));
        match next {
            // the cone of a cone member is nested in the original cone, and
            // cannot contain the starting point again, so the count drops
            Some(j) => cur = j,
            None => break,
        }
    }
    let u = &vs[cur];
    let all_reach = vs.iter().all(|z| !ess(z, u).contains(a));
    let unique = vs.iter().filter(|v| vs.iter().all(|w| w == *v || !in_cone(v, a, w))).count() == 1;
    if !all_reach || !unique {
        return Err(QuiverError::NoExtreme(a));
    }
    Ok(u.clone())
}

pub fn extreme_vertices(h: &ConvexSet) -> Result<Vec<QuiverVertex>, QuiverError> {
    let types = h.vertices().first().ok_or(QuiverError::Empty)?.types();
    (0..types).map(|a| extreme_vertex(h, a)).collect()
}

/// An oriented walk `v_1 -> v_2 -> … -> v_m -> v_1` with `v_{i+1} = I_i·v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    /// Indices into the ambient vertex list, starting at the base vertex.
    pub order: Vec<usize>,
    /// Type sets `I_1, …, I_m`, an ordered partition of all types.
    pub steps: Vec<TypeSet>,
}

/// A set of pairwise neighboring vertices of `H`, with its orientation from
/// each member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    /// Sorted indices into `H`.
    pub members: Vec<usize>,
    pub orientations: BTreeMap<usize, Orientation>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn orientation(&self, base: usize) -> Option<&Orientation> {
        self.orientations.get(&base)
    }

    pub fn vertices<'a>(&self, h: &'a [QuiverVertex]) -> Vec<&'a QuiverVertex> {
        self.members.iter().map(|&i| &h[i]).collect()
    }
}

/// All polygons inside `H`, singletons included, sorted by member list.
pub fn polygons(h: &VertexSet) -> Result<Vec<Polygon>, QuiverError> {
    let types = h.types();
    if types > MAX_POLYGON_TYPES {
        return Err(QuiverError::TooManyTypes);
    }
    let vs = h.vertices();
    let mut found: BTreeMap<Vec<usize>, Polygon> = BTreeMap::new();
    for i in 0..vs.len() {
        let single = Polygon {
            members: vec![i],
            orientations: BTreeMap::from([(i, Orientation { order: vec![i], steps: vec![Subset::full(types)] })]),
        };
        found.insert(vec![i], single);
    }
    let parts = if types >= 2 { ordered_set_partitions(types) } else { vec![] };
    for (i, v) in vs.iter().enumerate() {
        for steps in parts.iter().filter(|p| p.len() >= 2) {
            let mut order = vec![i];
            let mut cur = v.clone();
            let mut ok = true;
            for &s in &steps[..steps.len() - 1] {
                cur = step(&cur, s);
                match h.index_of(&cur) {
                    Some(j) => order.push(j),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut members = order.clone();
            members.sort_unstable();
            let entry = found.entry(members.clone()).or_insert_with(|| Polygon { members, orientations: BTreeMap::new() });
            let prev = entry.orientations.insert(i, Orientation { order, steps: steps.clone() });
            debug_assert!(prev.is_none(), "orientation from a base vertex is unique");
        }
    }
    Ok(found.into_values().collect())
}

/// The ordered partition of `H` induced by a polygon and one of its vertices:
/// part `i` collects the elements of `H` whose shadow in the polygon is the
/// `i`-th vertex of the orientation starting at `base`.
pub fn induced_partition(poly: &Polygon, base: usize, h: &VertexSet) -> Result<OrderedPartition, QuiverError> {
    let orient = poly.orientation(base).ok_or(QuiverError::NotMember)?;
    let delta: Vec<QuiverVertex> = orient.order.iter().map(|&j| h.vertices()[j].clone()).collect();
    let mut parts = vec![Subset::EMPTY; delta.len()];
    for (k, u) in h.vertices().iter().enumerate() {
        let s = shadow_index(u, &delta)?;
        parts[s] = parts[s].with(k);
    }
    OrderedPartition::new(h.len(), parts).map_err(|_| QuiverError::NotPolygon)
}

/// Checks that a vertex list is a polygon (pairwise neighbors) and returns it
/// as found by [`polygons`].
pub fn find_polygon(h: &VertexSet, members: &[usize]) -> Result<Polygon, QuiverError> {
    let mut m = members.to_vec();
    m.sort_unstable();
    m.dedup();
    let vs = h.vertices();
    for (x, &i) in m.iter().enumerate() {
        if i >= vs.len() {
            return Err(QuiverError::NotMember);
        }
        for &j in &m[x + 1..] {
            if !are_neighbors(&vs[i], &vs[j]) {
                return Err(QuiverError::NotPolygon);
            }
        }
    }
    polygons(h)?.into_iter().find(|p| p.members == m).ok_or(QuiverError::NotPolygon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(x: &[i64]) -> QuiverVertex {
        QuiverVertex::new(x.to_vec())
    }

    fn line(ls: &[i64]) -> VertexSet {
        VertexSet::new(ls.iter().map(|&l| qv(&[l, 0]))).unwrap()
    }

    #[test]
    fn essential_types() {
        assert_eq!(essential_type(&qv(&[0, 0]), &qv(&[0, 0])).unwrap(), Subset::EMPTY);
        assert_eq!(essential_type(&qv(&[0, 0]), &qv(&[2, 0])).unwrap(), Subset::singleton(0));
        assert_eq!(essential_type(&qv(&[0, 0, 0]), &qv(&[1, 2, 0])).unwrap(), Subset::from_indices([0, 1]));
        assert!(essential_type(&qv(&[0, 0]), &qv(&[0, 0, 0])).is_err());
    }

    #[test]
    fn neighbor_steps() {
        assert_eq!(neighbor_step(&qv(&[0, 0]), Subset::singleton(0)).unwrap(), qv(&[1, 0]));
        let v = qv(&[0, 1, 0]);
        let w = neighbor_step(&v, Subset::from_indices([0, 2])).unwrap();
        assert_eq!(w, qv(&[0, 0, 0]));
        assert_eq!(neighbor_step(&w, Subset::singleton(1)).unwrap(), v);
        assert!(neighbor_step(&v, Subset::EMPTY).is_err());
        assert!(neighbor_step(&v, Subset::full(3)).is_err());
    }

    #[test]
    fn hull_examples() {
        let p = line(&[3]);
        assert_eq!(hull(&p).unwrap(), p);
        assert_eq!(hull(&line(&[0, 2])).unwrap(), line(&[0, 1, 2]));
        assert_eq!(hull(&line(&[0, 1, 2])).unwrap(), line(&[0, 1, 2]));
    }

    #[test]
    fn shadows_on_the_line() {
        let h = ConvexSet::new(line(&[0, 1, 2])).unwrap();
        assert_eq!(shadow(&qv(&[5, 0]), &h).unwrap(), qv(&[2, 0]));
        assert_eq!(shadow(&qv(&[-3, 0]), &h).unwrap(), qv(&[0, 0]));
        assert_eq!(shadow(&qv(&[1, 0]), &h).unwrap(), qv(&[1, 0]));
        assert!(ConvexSet::new(line(&[0, 2])).is_err());
    }

    #[test]
    fn extreme_on_the_line() {
        let h = ConvexSet::new(line(&[0, 1, 2])).unwrap();
        assert_eq!(extreme_vertices(&h).unwrap(), vec![qv(&[0, 0]), qv(&[2, 0])]);
        let p = ConvexSet::new(line(&[4])).unwrap();
        assert_eq!(extreme_vertices(&p).unwrap(), vec![qv(&[4, 0]), qv(&[4, 0])]);
    }

    #[test]
    fn polygons_on_the_line() {
        let h = line(&[0, 1, 2]);
        let ps: Vec<Vec<usize>> = polygons(&h).unwrap().into_iter().map(|p| p.members).collect();
        assert_eq!(ps, vec![vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn induced_partitions_on_the_line() {
        let h = line(&[0, 1, 2]);
        let polys = polygons(&h).unwrap();
        let edge = polys.iter().find(|p| p.members == vec![0, 1]).unwrap();
        let pi = induced_partition(edge, 0, &h).unwrap();
        assert_eq!(pi.parts(), &[Subset::singleton(0), Subset::from_indices([1, 2])]);
        let pi = induced_partition(edge, 1, &h).unwrap();
        assert_eq!(pi.parts(), &[Subset::from_indices([1, 2]), Subset::singleton(0)]);
        let single = polys.iter().find(|p| p.members == vec![2]).unwrap();
        assert_eq!(induced_partition(single, 2, &h).unwrap(), OrderedPartition::trivial(3));
    }

    #[test]
    fn triangle_in_two_dimensions() {
        let v = qv(&[0, 0, 0]);
        let a = neighbor_step(&v, Subset::singleton(0)).unwrap();
        let b = neighbor_step(&v, Subset::from_indices([0, 1])).unwrap();
        let h = VertexSet::new([v, a, b]).unwrap();
        let ps = polygons(&h).unwrap();
        assert!(ps.iter().any(|p| p.len() == 3));
    }
}
