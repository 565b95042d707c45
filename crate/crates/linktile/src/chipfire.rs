//! Chip-firing on multigraphs: complete linear systems as Z^n-quivers and
//! v-reduced divisors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::compositions;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{QuiverVertex, VertexSet};
use crate::subset::Subset;

/// Brute-force subset scans are capped at this many graph vertices.
pub const MAX_GRAPH_VERTICES: usize = 12;

pub type Divisor = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChipError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {0} vertices, above the cap of {MAX_GRAPH_VERTICES}")]
    TooLarge(usize),
    #[error("edge ({0},{1}) is a loop or out of range")]
    BadEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("divisor has {found} entries, expected {expected}")]
    DivisorLength { found: usize, expected: usize },
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("two divisors received the same quiver coordinates")]
    CoordinateCollision,
    #[error("{0} v-reduced divisors for vertex {1}, expected exactly one")]
    ReducedNotUnique(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, ChipError> {
        if vertices == 0 {
            return Err(ChipError::Empty);
        }
        if vertices > MAX_GRAPH_VERTICES {
            return Err(ChipError::TooLarge(vertices));
        }
        for &(a, b) in &edges {
            if a == b || a >= vertices || b >= vertices {
                return Err(ChipError::BadEdge(a, b));
            }
        }
        let g = Graph { vertices, edges };
        if !g.is_connected() {
            return Err(ChipError::Disconnected);
        }
        Ok(g)
    }

    pub fn validated(self) -> Result<Self, ChipError> {
        Graph::new(self.vertices, self.edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let mut seen = Subset::singleton(0);
        loop {
            let before = seen;
            for &(a, b) in &self.edges {
                if seen.contains(a) || seen.contains(b) {
                    seen = seen.with(a).with(b);
                }
            }
            if seen == before {
                return seen == Subset::full(self.vertices);
            }
        }
    }

    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut l = vec![vec![0i64; n]; n];
        for &(a, b) in &self.edges {
            l[a][a] += 1;
            l[b][b] += 1;
            l[a][b] -= 1;
            l[b][a] -= 1;
        }
        l
    }

    /// Edges from `x` to vertices outside `a`.
    fn out_degree(&self, x: usize, a: Subset) -> i64 {
        self.edges.iter().filter(|&&(p, q)| (p == x && !a.contains(q)) || (q == x && !a.contains(p))).count() as i64
    }

    fn check_divisor(&self, d: &[i64]) -> Result<(), ChipError> {
        if d.len() != self.vertices {
            return Err(ChipError::DivisorLength { found: d.len(), expected: self.vertices });
        }
        Ok(())
    }
}

/// Solves `L x = b` over the integers with `x` normalized to minimum 0.
///
/// The reduced Laplacian (last row and column deleted) of a connected graph is
/// invertible, and `ker L` is the constants, so an integer solution exists iff
/// the unique rational solution with `x_last = 0` is integral.
pub struct FiringSolver {
    n: usize,
    // adjugate-style data: reduced inverse scaled by its common denominator
    inv_num: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl FiringSolver {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertices;
        if n == 1 {
            return FiringSolver { n, inv_num: vec![], den: BigInt::from(1) };
        }
        let l = g.laplacian();
        let m = n - 1;
        let red: Matrix<BigRational> = Matrix::from_fn(m, m, |i, j| BigRational::from_int((), l[i][j]));
        let inv = red.inverse().expect("reduced Laplacian of a connected graph is invertible");
        let den = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).fold(BigInt::from(1), |acc, (i, j)| acc.lcm(inv.get(i, j).denom()));
        let inv_num = (0..m)
            .map(|i| (0..m).map(|j| (inv.get(i, j).clone() * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        FiringSolver { n, inv_num, den }
    }

    /// Firing vector `x` with `L x = b`, normalized to minimum 0.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        if b.iter().sum::<i64>() != 0 {
            return None;
        }
        let m = self.n.saturating_sub(1);
        let mut x = vec![0i64; self.n];
        for (i, xi) in x.iter_mut().enumerate().take(m) {
            let num: BigInt = (0..m).map(|j| &self.inv_num[i][j] * BigInt::from(b[j])).sum();
            let (q, r) = num.div_rem(&self.den);
            if !r.is_zero() {
                return None;
            }
            *xi = q.to_i64()?;
        }
        let lo = *x.iter().min().unwrap_or(&0);
        Some(x.into_iter().map(|v| v - lo).collect())
    }
}

pub fn equivalent(g: &Graph, d1: &[i64], d2: &[i64]) -> Result<bool, ChipError> {
    g.check_divisor(d1)?;
    g.check_divisor(d2)?;
    let b: Vec<i64> = d1.iter().zip(d2).map(|(a, b)| a - b).collect();
    Ok(FiringSolver::new(g).solve(&b).is_some())
}

/// `|D|` with quiver coordinates: `D'` sits at the firing vector `x` with
/// `D - L x = D'`, so firing vertex `a` is an arrow of type `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub divisors: Vec<Divisor>,
    pub coords: Vec<QuiverVertex>,
}

impl LinearSystem {
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::new(self.coords.iter().cloned()).expect("uniform lengths")
    }

    pub fn divisor_at(&self, v: &QuiverVertex) -> Option<&Divisor> {
        self.coords.iter().position(|c| c == v).map(|i| &self.divisors[i])
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }
}

/// All effective divisors equivalent to `d`, in lexicographic order.
pub fn linear_system(g: &Graph, d: &[i64]) -> Result<LinearSystem, ChipError> {
    g.check_divisor(d)?;
    let deg: i64 = d.iter().sum();
    if deg < 0 {
        return Err(ChipError::NegativeDegree(deg));
    }
    let solver = FiringSolver::new(g);
    let mut divisors = Vec::new();
    let mut coords: Vec<QuiverVertex> = Vec::new();
    for e in compositions(deg, g.vertices) {
        let b: Vec<i64> = d.iter().zip(&e).map(|(a, b)| a - b).collect();
        if let Some(x) = solver.solve(&b) {
            divisors.push(e);
            coords.push(QuiverVertex::new(x));
        }
    }
    let mut sorted = coords.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != coords.len() {
        return Err(ChipError::CoordinateCollision);
    }
    Ok(LinearSystem { divisors, coords })
}

/// Condition (1): no vertex other than `v` in debt; condition (2): every
/// nonempty `A ⊆ V - v` lending once puts some member of `A` in debt.
pub fn is_v_reduced(g: &Graph, d: &[i64], v: usize) -> Result<bool, ChipError> {
    g.check_divisor(d)?;
    if v >= g.vertices {
        return Err(ChipError::BadVertex(v));
    }
    if (0..g.vertices).any(|u| u != v && d[u] < 0) {
        return Ok(false);
    }
    let rest = Subset::full(g.vertices).without(v);
    Ok(rest.subsets().skip(1).all(|a| a.iter().any(|x| d[x] < g.out_degree(x, a))))
}

/// The unique `v`-reduced member of a linear system.
pub fn reduced_in(g: &Graph, ls: &LinearSystem, v: usize) -> Result<Divisor, ChipError> {
    let found: Vec<&Divisor> = ls.divisors.iter().filter(|d| is_v_reduced(g, d, v).unwrap_or(false)).collect();
    match found.as_slice() {
        [d] => Ok((*d).clone()),
        other => Err(ChipError::ReducedNotUnique(other.len(), v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{extreme_vertex, hull, ConvexSet};

    fn banana() -> Graph {
        Graph::new(2, vec![(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn banana_linear_system() {
        let ls = linear_system(&banana(), &[2, 0]).unwrap();
        assert_eq!(ls.divisors, vec![vec![0, 2], vec![2, 0]]);
        assert!(!equivalent(&banana(), &[2, 0], &[1, 1]).unwrap());
    }

    #[test]
    fn single_edge_moves_the_chip() {
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        let ls = linear_system(&k2, &[1, 0]).unwrap();
        assert_eq!(ls.divisors, vec![vec![0, 1], vec![1, 0]]);
        assert!(is_v_reduced(&k2, &[1, 0], 0).unwrap());
    }

    #[test]
    fn zero_divisor() {
        let ls = linear_system(&banana(), &[0, 0]).unwrap();
        assert_eq!(ls.divisors, vec![vec![0, 0]]);
    }

    #[test]
    fn banana_reducedness() {
        assert!(is_v_reduced(&banana(), &[2, 0], 0).unwrap());
        assert!(!is_v_reduced(&banana(), &[0, 2], 0).unwrap());
    }

    #[test]
    fn banana_extremes_are_reduced() {
        let g = banana();
        let ls = linear_system(&g, &[2, 0]).unwrap();
        let h = ConvexSet::new(ls.vertex_set()).unwrap();
        assert_eq!(hull(h.set()).unwrap(), *h.set());
        for a in 0..2 {
            let e = extreme_vertex(&h, a).unwrap();
            assert_eq!(ls.divisor_at(&e).unwrap(), &reduced_in(&g, &ls, a).unwrap());
        }
    }

    #[test]
    fn bad_graphs() {
        assert_eq!(Graph::new(2, vec![(0, 0)]), Err(ChipError::BadEdge(0, 0)));
        assert_eq!(Graph::new(3, vec![(0, 1)]), Err(ChipError::Disconnected));
    }
}
