//! The `net.json` interchange format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{NetError, NetPresentation};
use crate::field::{Field, FieldError, FieldKind};
use crate::linalg::Matrix;
use crate::quiver::QuiverVertex;

#[derive(Debug, thiserror::Error)]
pub enum NetIoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field: {0}")]
    Field(#[from] FieldError),
    #[error("net: {0}")]
    Net(#[from] NetError),
    #[error("schema: {0}")]
    Schema(String),
}

/// A scalar written either as a JSON integer or as a string `"a/b"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Str(String),
}

impl ScalarRepr {
    pub fn to_field<F: Field>(&self, ctx: F::Ctx) -> Result<F, FieldError> {
        match self {
            ScalarRepr::Int(n) => Ok(F::from_int(ctx, *n)),
            ScalarRepr::Str(s) => F::parse(ctx, s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub coords: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<ScalarRepr>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub arrow_types: usize,
    pub dimension: usize,
    pub field: FieldKind,
    pub vertices: Vec<VertexEntry>,
    pub maps: Vec<MapEntry>,
}

impl NetFile {
    pub fn from_json(s: &str) -> Result<Self, NetIoError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("net files serialize")
    }

    /// Builds the presentation over the field `F` with context `ctx`, which
    /// may differ from the file's own field descriptor (an override).
    pub fn to_net_with<F: Field>(&self, ctx: F::Ctx) -> Result<NetPresentation<F>, NetIoError> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if v.coords.len() != self.arrow_types {
                return Err(NetError::CoordLength(v.id.clone(), v.coords.len(), self.arrow_types).into());
            }
            vertices.push((v.id.clone(), QuiverVertex::new(v.coords.clone())));
        }
        let d = self.dimension;
        let mut maps = BTreeMap::new();
        for (k, m) in self.maps.iter().enumerate() {
            let cols = m.matrix.first().map_or(0, |r| r.len());
            if m.matrix.iter().any(|r| r.len() != cols) {
                return Err(NetIoError::Schema(format!("maps[{k}]: ragged matrix rows")));
            }
            let mut rows = Vec::with_capacity(m.matrix.len());
            for (i, r) in m.matrix.iter().enumerate() {
                let row: Result<Vec<F>, _> = r.iter().map(|x| x.to_field::<F>(ctx)).collect();
                rows.push(row.map_err(|e| NetIoError::Schema(format!("maps[{k}].matrix[{i}]: {e}")))?);
            }
            let nrows = rows.len();
            let mat = Matrix::from_rows(rows, cols).map_err(|e| NetIoError::Schema(format!("maps[{k}]: {e}")))?;
            if nrows != d || cols != d {
                return Err(NetError::BadShape(m.from.clone(), m.to.clone(), nrows, cols, d).into());
            }
            if maps.insert((m.from.clone(), m.to.clone()), mat).is_some() {
                return Err(NetError::DuplicateMap(m.from.clone(), m.to.clone()).into());
            }
        }
        Ok(NetPresentation::new(ctx, d, vertices, maps)?)
    }

    /// Builds the presentation over the file's declared field.
    pub fn to_net<F: Field>(&self) -> Result<NetPresentation<F>, NetIoError> {
        self.to_net_with(F::ctx_from_kind(self.field)?)
    }

    /// Serializes in the presentation's vertex order, off-diagonal maps only.
    pub fn from_net<F: Field>(net: &NetPresentation<F>) -> Self {
        let n = net.len();
        let vertices = (0..n).map(|i| VertexEntry { id: net.ids()[i].clone(), coords: net.vertex(i).coords().to_vec() }).collect();
        let mut maps = Vec::with_capacity(n * n.saturating_sub(1));
        for v in 0..n {
            for u in (0..n).filter(|&u| u != v) {
                let m = net.map(v, u);
                let matrix = (0..m.rows()).map(|i| m.row(i).iter().map(|x| ScalarRepr::Str(x.to_string())).collect()).collect();
                maps.push(MapEntry { from: net.ids()[v].clone(), to: net.ids()[u].clone(), matrix });
            }
        }
        NetFile { arrow_types: net.types(), dimension: net.dim(), field: F::kind(net.ctx()), vertices, maps }
    }
}
