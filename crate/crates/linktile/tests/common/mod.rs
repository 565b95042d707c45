#![allow(dead_code)]

use std::collections::BTreeMap;

use linktile::field::Field;
use linktile::net::{NetPresentation, TropForm, TropSpec};
use linktile::quiver::QuiverVertex;
use linktile::{Matrix, Rational};

pub fn diag<F: Field>(ctx: F::Ctx, d: &[i64]) -> Matrix<F> {
    Matrix::diagonal(&d.iter().map(|&x| F::from_int(ctx, x)).collect::<Vec<_>>())
}

/// The three-vertex example on a line: `z_i = (i, 0)`, with
/// `M^{z_1}_{z_0} = diag(1,0)`, `M^{z_1}_{z_2} = diag(0,1)` and so on.
pub fn eh3<F: Field>(ctx: F::Ctx) -> NetPresentation<F> {
    let vertices = (0..3).map(|i| (format!("z{i}"), QuiverVertex::new(vec![i, 0]))).collect();
    let table: [(&str, &str, [i64; 2]); 6] = [
        ("z0", "z1", [0, 1]),
        ("z0", "z2", [0, 1]),
        ("z1", "z0", [1, 0]),
        ("z1", "z2", [0, 1]),
        ("z2", "z0", [1, 0]),
        ("z2", "z1", [1, 0]),
    ];
    let maps: BTreeMap<(String, String), Matrix<F>> =
        table.iter().map(|(a, b, d)| ((a.to_string(), b.to_string()), diag::<F>(ctx, d))).collect();
    NetPresentation::new(ctx, 2, vertices, maps).unwrap()
}

pub fn eh3_q() -> NetPresentation<Rational> {
    eh3::<Rational>(())
}

pub fn trop(types: usize, forms: &[&[Option<i64>]]) -> TropSpec {
    TropSpec { arrow_types: types, forms: forms.iter().map(|f| TropForm { offsets: f.to_vec() }).collect() }
}

/// The forms generating the example, in the order matching [`eh3`].
pub fn eh3_trop() -> TropSpec {
    trop(2, &[&[Some(0), Some(2)], &[Some(0), Some(0)]])
}

/// One generated corpus instance: forms, and the twist seed if twisted.
#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub index: u64,
    pub spec: TropSpec,
    pub twist: Option<u64>,
    pub vertices: usize,
}

pub const CORPUS_MAX_VERTICES: usize = 12;

/// Deterministic corpus: arrow types 2..=4, dimension 1..=5, offsets up to
/// 2..=4, every other instance twisted; instances with more than
/// [`CORPUS_MAX_VERTICES`] generators are skipped.
pub fn corpus(size: usize) -> Vec<CorpusItem> {
    let mut out = Vec::with_capacity(size);
    let mut k = 0u64;
    while out.len() < size {
        let types = 2 + (k % 3) as usize;
        let dim = 1 + ((k / 3) % 5) as usize;
        let spread = 2 + ((k / 15) % 3) as i64;
        let spec = linktile::net::random_trop(k, types, dim, spread);
        if let Ok(h) = spec.generators() {
            if h.len() <= CORPUS_MAX_VERTICES {
                let twist = (out.len() % 2 == 1).then_some(k);
                out.push(CorpusItem { index: k, spec, twist, vertices: h.len() });
            }
        }
        k += 1;
    }
    out
}

impl CorpusItem {
    pub fn net<F: Field>(&self, ctx: F::Ctx) -> NetPresentation<F> {
        let net = self.spec.generate::<F>(ctx).expect("corpus specs generate");
        match self.twist {
            Some(s) => linktile::net::twist(&net, s),
            None => net,
        }
    }
}

/// Rank over Q of an integer matrix by fraction-free elimination.
pub fn rank_int(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            for j in c + 1..cols {
                rows[i][j] = (rows[rank][c] * rows[i][j] - rows[i][c] * rows[rank][j]) / prev;
            }
            rows[i][c] = 0;
        }
        prev = rows[rank][c];
        rank += 1;
    }
    rank
}

/// `(μ, μ*)` tables of the row space of `basis` (integer entries) with `h`
/// blocks of width `d`: `μ*(I)` is the rank of the columns in blocks `I`.
pub fn oracle_tables(basis: &[Vec<i128>], h: usize, d: usize) -> (Vec<i64>, Vec<i64>) {
    let dim = rank_int(basis.to_vec()) as i64;
    let upper: Vec<i64> = (0..1usize << h)
        .map(|mask| {
            let cols: Vec<usize> = (0..h).filter(|b| mask >> b & 1 == 1).flat_map(|b| b * d..(b + 1) * d).collect();
            rank_int(basis.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()) as i64
        })
        .collect();
    let full = (1usize << h) - 1;
    let lower = (0..1usize << h).map(|mask| dim - upper[full ^ mask]).collect();
    (lower, upper)
}

/// Row space of an integer matrix with `h` blocks of width `d`, if nonzero.
pub fn int_subspace<F: Field>(ctx: F::Ctx, h: usize, d: usize, rows: &[Vec<i64>]) -> Option<linktile::polytope::BlockedSubspace<F>> {
    let a = linktile::Ambient::uniform(h, d);
    let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_int(ctx, x)).collect()).collect(), h * d).ok()?;
    linktile::polytope::BlockedSubspace::new(linktile::Subspace::from_rows(a, &m).ok()?).ok()
}
