//! Instance generators: diagonal nets from tropical forms, random forms, and
//! random changes of basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::NetPresentation;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{displacement, QuiverVertex, VertexSet};

/// Largest side of the scan box before the generator gives up.
pub const MAX_SCAN_BOX: i64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropError {
    #[error("at least one form is required")]
    NoForms,
    #[error("at least one arrow type is required")]
    NoTypes,
    #[error("form {form} has {found} offsets, expected {expected}")]
    Length { form: usize, found: usize, expected: usize },
    #[error("form {0} has no slots")]
    EmptyForm(usize),
    #[error("slot {0} appears in no form")]
    Uncovered(usize),
    #[error("no form uses every slot")]
    NoFullSupport,
    #[error("generating set still touches the scan box boundary at side {0}")]
    Unbounded(i64),
    #[error("generating set is empty")]
    EmptyH,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TropForm {
    /// `b_{j,k}`, or `None` when slot `k` is absent from the form.
    pub offsets: Vec<Option<i64>>,
}

/// Forms `g_j(u) = min_{k∈K_j} (u_k + b_{j,k})`, one per coordinate of the
/// vector spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TropSpec {
    pub arrow_types: usize,
    pub forms: Vec<TropForm>,
}

impl TropSpec {
    pub fn validate(&self) -> Result<(), TropError> {
        if self.forms.is_empty() {
            return Err(TropError::NoForms);
        }
        if self.arrow_types == 0 {
            return Err(TropError::NoTypes);
        }
        for (j, f) in self.forms.iter().enumerate() {
            if f.offsets.len() != self.arrow_types {
                return Err(TropError::Length { form: j, found: f.offsets.len(), expected: self.arrow_types });
            }
            if f.offsets.iter().all(Option::is_none) {
                return Err(TropError::EmptyForm(j));
            }
        }
        for k in 0..self.arrow_types {
            if self.forms.iter().all(|f| f.offsets[k].is_none()) {
                return Err(TropError::Uncovered(k));
            }
        }
        if !self.forms.iter().any(|f| f.offsets.iter().all(Option::is_some)) {
            return Err(TropError::NoFullSupport);
        }
        Ok(())
    }

    fn eval(&self, j: usize, u: &[i64]) -> i64 {
        self.forms[j].offsets.iter().zip(u).filter_map(|(b, x)| b.map(|b| x + b)).min().expect("validated forms are nonempty")
    }

    /// Whether every form is constant along the minimal path `v -> u`.
    fn constant_along(&self, j: usize, v: &QuiverVertex, u: &QuiverVertex) -> bool {
        let t = displacement(v, u);
        let end: Vec<i64> = v.coords().iter().zip(&t).map(|(a, b)| a + b).collect();
        self.eval(j, v.coords()) == self.eval(j, &end)
    }

    /// `v` is kept when no single arrow into it is an isomorphism.
    fn is_generator(&self, v: &QuiverVertex) -> bool {
        let c = v.coords();
        (0..self.arrow_types).all(|a| {
            let mut p = c.to_vec();
            p[a] -= 1;
            (0..self.forms.len()).any(|j| self.eval(j, c) != self.eval(j, &p))
        })
    }

    fn scan(&self, side: i64) -> Vec<QuiverVertex> {
        let n = self.arrow_types;
        let mut out = vec![];
        let mut c = vec![0i64; n];
        loop {
            if c.contains(&0) {
                let v = QuiverVertex::new(c.clone());
                if self.is_generator(&v) {
                    out.push(v);
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                c[k] += 1;
                if c[k] <= side {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
        }
    }

    /// The generating set `H`, scanned in a box grown until it sits strictly
    /// inside.
    pub fn generators(&self) -> Result<VertexSet, TropError> {
        self.validate()?;
        let spread =
            self.forms.iter().flat_map(|f| f.offsets.iter().flatten()).fold((i64::MAX, i64::MIN), |(lo, hi), &b| (lo.min(b), hi.max(b)));
        let mut side = (spread.1 - spread.0).max(0) + 2;
        loop {
            let h = self.scan(side);
            if h.is_empty() {
                return Err(TropError::EmptyH);
            }
            if h.iter().all(|v| v.max_coord() < side) {
                return Ok(VertexSet::new(h).expect("uniform lengths"));
            }
            if side >= MAX_SCAN_BOX {
                return Err(TropError::Unbounded(side));
            }
            side = (side * 2).min(MAX_SCAN_BOX);
        }
    }

    /// The diagonal net: entry `j` of `M^v_u` is 1 iff form `j` is constant
    /// along the minimal path `v -> u`.
    pub fn generate<F: Field>(&self, ctx: F::Ctx) -> Result<NetPresentation<F>, TropError> {
        let set = self.generators()?;
        let vs = set.vertices();
        let n = vs.len();
        let r1 = self.forms.len();
        let one = F::from_int(ctx, 1);
        let zero = F::from_int(ctx, 0);
        let mut maps = Vec::with_capacity(n * n);
        for v in vs {
            for u in vs {
                let d: Vec<F> = (0..r1).map(|j| if self.constant_along(j, v, u) { one.clone() } else { zero.clone() }).collect();
                maps.push(Matrix::diagonal(&d));
            }
        }
        let ids = (0..n).map(|i| format!("z{i}")).collect();
        Ok(NetPresentation::from_parts(ctx, r1, ids, set, maps))
    }
}

/// Random forms with every slot present and offsets in `0..=spread`.
pub fn random_trop(seed: u64, types: usize, dim: usize, spread: i64) -> TropSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = (0..dim).map(|_| TropForm { offsets: (0..types).map(|_| Some(rng.gen_range(0..=spread))).collect() }).collect();
    TropSpec { arrow_types: types, forms }
}

fn random_invertible<F: Field>(rng: &mut ChaCha8Rng, ctx: F::Ctx, d: usize) -> (Matrix<F>, Matrix<F>) {
    loop {
        let g = Matrix::from_fn(d, d, |_, _| F::from_int(ctx, rng.gen_range(-3..=3)));
        if let Some(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

fn random_unit<F: Field>(rng: &mut ChaCha8Rng, ctx: F::Ctx) -> F {
    loop {
        let k: i64 = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let x = F::from_int(ctx, k);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `M^v_u ↦ λ_{vu} G_u M^v_u G_v^{-1}` with random invertible `G_v` and
/// nonzero `λ_{vu}`, reproducible from the seed. Diagonal maps stay the
/// identity.
pub fn twist<F: Field>(net: &NetPresentation<F>, seed: u64) -> NetPresentation<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = net.ctx();
    let n = net.len();
    let gs: Vec<(Matrix<F>, Matrix<F>)> = (0..n).map(|_| random_invertible(&mut rng, ctx, net.dim())).collect();
    let mut out = net.clone();
    for v in 0..n {
        for u in (0..n).filter(|&u| u != v) {
            let lambda = random_unit::<F>(&mut rng, ctx);
            let m = gs[u].0.mul(net.map(v, u)).mul(&gs[v].1).scaled(&lambda);
            out.set_map(v, u, m);
        }
    }
    out
}
