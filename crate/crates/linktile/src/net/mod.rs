//! Finite presentations of exact finitely generated linked nets.
//!
//! A presentation stores the vertex set `H` and, for every ordered pair
//! `(v, u)` of `H`, one square matrix `M^v_u` representing the map along a
//! minimal admissible path `v -> u` (up to a nonzero scalar). Matrices act on
//! column vectors.

mod generate;
mod io;
mod spaces;
mod verify;

pub use generate::{random_trop, twist, TropError, TropForm, TropSpec, MAX_SCAN_BOX};
pub use io::{MapEntry, NetFile, NetIoError, ScalarRepr, VertexEntry};
pub use spaces::faces_meeting_open_simplex;
pub use spaces::{FaceAnalysis, FaceRecord};
pub use verify::{VerificationReport, CIRCUITS, COHERENCE, EXACTNESS, GENERATION, LINKED, REDUCEDNESS};

use std::collections::BTreeMap;

use crate::field::Field;
use crate::linalg::{LinalgError, Matrix};
use crate::polytope::PolytopeError;
use crate::quiver::{ConvexSet, QuiverError, QuiverVertex, VertexSet};
use crate::setfn::SetFnError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("vertex `{0}` has {1} coordinates, expected {2}")]
    CoordLength(String, usize, usize),
    #[error("vertices `{0}` and `{1}` coincide as quiver vertices")]
    DuplicateVertex(String, String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex id `{0}`")]
    UnknownId(String),
    #[error("missing map from `{0}` to `{1}`")]
    MissingMap(String, String),
    #[error("map from `{0}` to `{1}` given twice")]
    DuplicateMap(String, String),
    #[error("map from `{0}` to `{1}` has shape {2}x{3}, expected {4}x{4}")]
    BadShape(String, String, usize, usize, usize),
    #[error("map from `{0}` to itself must be the identity")]
    NonIdentityLoop(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("a net needs at least one vertex and one arrow type")]
    Empty,
    #[error("|H| = {0} exceeds the cap of {max}", max = crate::subset::MAX_GROUND)]
    TooManyVertices(usize),
    #[error("vertex `{0}` is not in H")]
    NotInH(String),
    #[error("presentation failed verification: {0}")]
    Unverified(String),
    #[error("theorem violation: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    SetFn(#[from] SetFnError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetPresentation<F: Field> {
    ctx: F::Ctx,
    dim: usize,
    ids: Vec<String>,
    set: VertexSet,
    // maps[v * |H| + u] = M^v_u
    maps: Vec<Matrix<F>>,
}

impl<F: Field> NetPresentation<F> {
    /// Builds a presentation; vertices are reordered by their coordinates and
    /// diagonal maps default to the identity.
    pub fn new(
        ctx: F::Ctx,
        dim: usize,
        vertices: Vec<(String, QuiverVertex)>,
        mut maps: BTreeMap<(String, String), Matrix<F>>,
    ) -> Result<Self, NetError> {
        if dim == 0 {
            return Err(NetError::ZeroDimension);
        }
        let types = vertices.first().ok_or(NetError::Empty)?.1.types();
        if types == 0 {
            return Err(NetError::Empty);
        }
        for (id, v) in &vertices {
            if v.types() != types {
                return Err(NetError::CoordLength(id.clone(), v.types(), types));
            }
        }
        let mut sorted = vertices;
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        for w in sorted.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(NetError::DuplicateVertex(w[0].0.clone(), w[1].0.clone()));
            }
        }
        let ids: Vec<String> = sorted.iter().map(|(id, _)| id.clone()).collect();
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return Err(NetError::DuplicateId(id.clone()));
            }
        }
        for (from, to) in maps.keys() {
            for x in [from, to] {
                if !ids.contains(x) {
                    return Err(NetError::UnknownId(x.clone()));
                }
            }
        }
        let set = VertexSet::new(sorted.into_iter().map(|(_, v)| v))?;
        let n = ids.len();
        let mut out = Vec::with_capacity(n * n);
        for v in 0..n {
            for u in 0..n {
                let key = (ids[v].clone(), ids[u].clone());
                let m = match maps.remove(&key) {
                    Some(m) => m,
                    None if u == v => Matrix::identity(dim),
                    None => return Err(NetError::MissingMap(key.0, key.1)),
                };
                if m.rows() != dim || m.cols() != dim {
                    return Err(NetError::BadShape(key.0, key.1, m.rows(), m.cols(), dim));
                }
                if u == v && m != Matrix::identity(dim) {
                    return Err(NetError::NonIdentityLoop(key.0));
                }
                out.push(m);
            }
        }
        Ok(NetPresentation { ctx, dim, ids, set, maps: out })
    }

    /// Builds from vertices already in sorted order and a dense map table.
    pub(crate) fn from_parts(ctx: F::Ctx, dim: usize, ids: Vec<String>, set: VertexSet, maps: Vec<Matrix<F>>) -> Self {
        debug_assert_eq!(maps.len(), ids.len() * ids.len());
        NetPresentation { ctx, dim, ids, set, maps }
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    /// `r + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n + 1`.
    pub fn types(&self) -> usize {
        self.set.types()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.set
    }

    pub fn vertex(&self, i: usize) -> &QuiverVertex {
        &self.set.vertices()[i]
    }

    pub fn index_of_id(&self, id: &str) -> Result<usize, NetError> {
        self.ids.iter().position(|x| x == id).ok_or_else(|| NetError::NotInH(id.to_string()))
    }

    /// `M^v_u`, the map from `V_v` to `V_u`.
    pub fn map(&self, v: usize, u: usize) -> &Matrix<F> {
        &self.maps[v * self.len() + u]
    }

    pub fn set_map(&mut self, v: usize, u: usize, m: Matrix<F>) {
        let n = self.len();
        self.maps[v * n + u] = m;
    }

    pub fn convex_set(&self) -> Result<ConvexSet, NetError> {
        Ok(ConvexSet::new(self.set.clone())?)
    }
}

pub type QNet = NetPresentation<crate::field::Rational>;
pub type FpNet = NetPresentation<crate::field::Fp>;
