//! Modular pairs of subspaces `W ⊆ ⊕ U_v`, graded splittings `W_π`, and the
//! tiling criterion for finite collections of such subspaces.

use std::sync::Arc;

use crate::certificate::{labels_of, Certificate, Clause, Status, Witness};
use crate::combinat::CompositionRanker;
use crate::field::Field;
use crate::linalg::{Ambient, LinalgError, Matrix, Subspace};
use crate::setfn::{ModularPair, OrderedPartition, SetFn, SetFnError};
use crate::subset::Subset;

/// Coverage bitmaps above this many points are refused.
pub const MAX_COVERAGE_POINTS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    SetFn(#[from] SetFnError),
    #[error("subspace has dimension 0")]
    ZeroDimensional,
    #[error("scaling is identically zero")]
    ZeroScaling,
    #[error("dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("subspace {0} is not simple")]
    NotSimple(usize),
    #[error("the scaling does not map the first subspace into the second")]
    NotContained,
    #[error("empty collection")]
    EmptyCollection,
    #[error("dilation {0} must be positive")]
    BadDilation(i64),
    #[error("coverage at dilation {t} needs {points} points, above the cap")]
    CoverageTooLarge { t: i64, points: u64 },
}

/// A nonzero subspace of a block-decomposed space.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockedSubspace<F: Field> {
    space: Subspace<F>,
}

impl<F: Field> BlockedSubspace<F> {
    pub fn new(space: Subspace<F>) -> Result<Self, PolytopeError> {
        if space.dim() == 0 {
            return Err(PolytopeError::ZeroDimensional);
        }
        Ok(BlockedSubspace { space })
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        self.space.ambient()
    }

    pub fn h(&self) -> usize {
        self.ambient().blocks()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ambient().labels().to_vec()
    }
}

fn sum_small<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.vstack(b).rref().0
}

/// `(μ_W, μ_W*)` with `μ_W*(I) = dim W_I`, computed as the dimension of the
/// sum of the per-block column spaces of a basis of `W`.
pub fn modular_pair_of<F: Field>(w: &BlockedSubspace<F>) -> ModularPair {
    let h = w.h();
    let d = w.dim();
    let cols: Vec<Matrix<F>> = (0..h).map(|b| w.space.block_part(b).column_space()).collect();
    let mut upper = vec![0i64; 1 << h];
    fn rec<F: Field>(i: usize, mask: usize, cur: &Matrix<F>, cols: &[Matrix<F>], out: &mut [i64]) {
        if i == cols.len() {
            out[mask] = cur.rows() as i64;
            return;
        }
        rec(i + 1, mask, cur, cols, out);
        let next = if cur.rows() == cur.cols() { cur.clone() } else { sum_small(cur, &cols[i]) };
        rec(i + 1, mask | 1 << i, &next, cols, out);
    }
    rec(0, 0, &Matrix::zeros(0, d), &cols, &mut upper);
    let full = (1usize << h) - 1;
    let lower: Vec<i64> = (0..1usize << h).map(|i| d as i64 - upper[full & !i]).collect();
    ModularPair::from_tables(
        SetFn::new(w.labels(), lower).expect("dimension table"),
        SetFn::new(w.labels(), upper).expect("dimension table"),
    )
    .expect("dimension tables form an adjoint modular pair")
}

/// Reference computation straight from the definitions: `dim W^I` and
/// `dim W_I` for every `I`.
pub fn modular_pair_by_sections<F: Field>(w: &BlockedSubspace<F>) -> ModularPair {
    let h = w.h();
    let lower = SetFn::from_fn(w.labels(), |i| w.space.coordinate_section(i).expect("valid").dim() as i64).expect("dimension table");
    let upper = SetFn::from_fn(w.labels(), |i| w.space.coordinate_image(i).expect("valid").dim() as i64).expect("dimension table");
    debug_assert_eq!(lower.values().len(), 1 << h);
    ModularPair::from_tables(lower, upper).expect("dimension tables form an adjoint modular pair")
}

/// The associated graded `W_π = ⊕_j θ_{π_j}(W^{F_j})`, embedded in `U`.
pub fn split_subspace<F: Field>(w: &BlockedSubspace<F>, pi: &OrderedPartition) -> Result<BlockedSubspace<F>, PolytopeError> {
    if pi.h() != w.h() {
        return Err(SetFnError::NotPartition.into());
    }
    let filt = pi.filtration();
    let n = w.ambient().total();
    let mut rows = Matrix::zeros(0, n);
    for (j, &part) in pi.parts().iter().enumerate() {
        let piece = w.space.coordinate_section(filt[j + 1])?.coordinate_image(part)?;
        rows = rows.vstack(piece.basis());
    }
    BlockedSubspace::new(Subspace::from_rows(w.ambient().clone(), &rows)?)
}

/// Outcome of comparing two simple subspaces related by a scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalingVerdict {
    /// All `φ_v` nonzero: `φ` is an isomorphism and the polytopes coincide.
    Isomorphism,
    /// `φ` has proper support `I`; `(I, I^c)` separates `(μ_{W2}, μ_{W1})`
    /// nontrivially, so the relative interiors are disjoint.
    DisjointInteriors { support: Subset, upper_first: i64, lower_second: i64 },
}

pub fn interiors_disjoint_or_isomorphic<F: Field>(
    w1: &BlockedSubspace<F>,
    w2: &BlockedSubspace<F>,
    phi: &[F],
) -> Result<ScalingVerdict, PolytopeError> {
    if phi.iter().all(|x| x.is_zero()) {
        return Err(PolytopeError::ZeroScaling);
    }
    if w1.dim() != w2.dim() {
        return Err(PolytopeError::DimensionMismatch(w1.dim(), w2.dim()));
    }
    let p1 = modular_pair_of(w1);
    let p2 = modular_pair_of(w2);
    if !p1.is_simple() {
        return Err(PolytopeError::NotSimple(0));
    }
    if !p2.is_simple() {
        return Err(PolytopeError::NotSimple(1));
    }
    if !w2.space.contains(&w1.space.scale(phi)?)? {
        return Err(PolytopeError::NotContained);
    }
    let support = Subset::from_indices(phi.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i));
    if support == Subset::full(w1.h()) {
        return Ok(ScalingVerdict::Isomorphism);
    }
    let upper_first = p1.upper().get(support);
    let lower_second = p2.lower().get(support);
    debug_assert!(upper_first <= lower_second);
    Ok(ScalingVerdict::DisjointInteriors { support, upper_first, lower_second })
}

/// Total lattice points, per-pair counts, and the first uncovered point.
pub type CoverageCount = (u64, Vec<u64>, Option<Vec<i64>>);

/// Lattice points of `tΩ_d` on `h` coordinates that are covered by none of
/// the given pairs; also returns per-pair point counts.
pub fn coverage_gaps(pairs: &[ModularPair], t: i64) -> Result<CoverageCount, PolytopeError> {
    let h = pairs[0].h();
    let total = (t * pairs[0].range()) as u64;
    let ranker = CompositionRanker::new(total, h);
    let size = ranker.size(total);
    if size > MAX_COVERAGE_POINTS {
        return Err(PolytopeError::CoverageTooLarge { t, points: size });
    }
    let mut seen = vec![0u64; (size as usize).div_ceil(64)];
    let mut counts = Vec::with_capacity(pairs.len());
    for p in pairs {
        let mut c = 0u64;
        p.for_each_lattice_point(t, |q| {
            if q.iter().all(|&x| x >= 0) {
                let r = ranker.rank(q) as usize;
                seen[r / 64] |= 1 << (r % 64);
            }
            c += 1;
        });
        counts.push(c);
    }
    let first_gap = (0..size as usize).find(|&r| seen[r / 64] >> (r % 64) & 1 == 0);
    let gap = first_gap.map(|r| unrank(&ranker, total, h, r as u64));
    Ok((size, counts, gap))
}

fn unrank(ranker: &CompositionRanker, total: u64, h: usize, r: u64) -> Vec<i64> {
    // linear search is fine: only used to report a single witness
    crate::combinat::compositions(total as i64, h).into_iter().find(|q| ranker.rank(q) == r).expect("rank in range")
}

/// Clauses shared by every tiling certificate, evaluated on modular pairs.
pub struct PairClauses;

impl PairClauses {
    pub fn simplicity(names: &[String], pairs: &[ModularPair]) -> Clause {
        let mut c = Clause::new("simplicity");
        for (name, p) in names.iter().zip(pairs) {
            let cd = p.codimension();
            c.witness(Witness::Simplicity { subject: name.clone(), codimension: cd });
            if cd != 1 {
                c.fail(vec![name.clone()], None, None, format!("codimension {cd}"));
            }
        }
        c
    }

    pub fn distinct(names: &[String], labels: &[String], pairs: &[ModularPair]) -> Clause {
        let mut c = Clause::new("pairwise distinct");
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let diff = Subset::all(pairs[i].h()).find(|&s| pairs[i].lower().get(s) != pairs[j].lower().get(s));
                match diff {
                    Some(s) => c.witness(Witness::Distinct { a: names[i].clone(), b: names[j].clone(), subset: labels_of(labels, s) }),
                    None => c.fail(vec![names[i].clone(), names[j].clone()], None, None, "identical modular pairs"),
                }
            }
        }
        c
    }

    /// Each unordered pair admits a nontrivial separation.
    pub fn separations(names: &[String], labels: &[String], pairs: &[ModularPair]) -> Clause {
        let mut c = Clause::new("pairwise separations");
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                match pairs[i].separation(&pairs[j]) {
                    Ok(Some(s)) if s.nontrivial => c.witness(Witness::Separation {
                        a: names[i].clone(),
                        b: names[j].clone(),
                        first: labels_of(labels, s.first),
                        second: labels_of(labels, s.second),
                        strict: s.strict,
                        nontrivial: true,
                    }),
                    Ok(_) => c.fail(vec![names[i].clone(), names[j].clone()], None, None, "no nontrivial separation"),
                    Err(e) => c.fail(vec![names[i].clone(), names[j].clone()], None, None, e.to_string()),
                }
            }
        }
        c
    }

    /// For every member and bipartition whose face meets the open simplex,
    /// another member splits to the same function along the reversed
    /// bipartition.
    pub fn completeness(names: &[String], labels: &[String], pairs: &[ModularPair]) -> Clause {
        let mut c = Clause::new("completeness for the open simplex");
        let h = pairs[0].h();
        let full = Subset::full(h);
        for (i, p) in pairs.iter().enumerate() {
            for first in Subset::all(h).filter(|&s| !s.is_empty() && s != full) {
                let pi = OrderedPartition::bipartition(h, first);
                if !p.face_meets_open_orthant(&pi) {
                    continue;
                }
                let target = p.lower().split(&pi).expect("partition of H");
                let rev = pi.reversed();
                let partner = pairs.iter().enumerate().find(|(j, q)| *j != i && q.lower().split(&rev).expect("partition of H") == target);
                match partner {
                    Some((j, _)) => c.witness(Witness::Completeness {
                        subject: names[i].clone(),
                        partition: pi.display_with(labels),
                        partner: names[j].clone(),
                    }),
                    None => c.fail(vec![names[i].clone()], Some(pi.display_with(labels)), None, "no partner face"),
                }
            }
        }
        c
    }

    pub fn coverage(names: &[String], pairs: &[ModularPair], dilations: &[i64]) -> Clause {
        let mut c = Clause::new("lattice coverage");
        for &t in dilations {
            match coverage_gaps(pairs, t) {
                Ok((points, counts, gap)) => {
                    c.witness(Witness::Coverage { dilation: t, points, per_subject: names.iter().cloned().zip(counts).collect() });
                    if let Some(q) = gap {
                        c.fail(vec![], None, Some(q.iter().map(|x| x.to_string()).collect()), format!("uncovered at t={t}"));
                    }
                }
                Err(e) => c.fail(vec![], None, None, e.to_string()),
            }
        }
        c.name = format!("lattice coverage t={}", join_ints(dilations));
        for ce in &mut c.counterexamples {
            ce.clause = c.name.clone();
        }
        c
    }
}

pub fn join_ints(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn check_dilations(dilations: &[i64]) -> Result<(), PolytopeError> {
    match dilations.iter().find(|&&t| t < 1) {
        Some(&t) => Err(PolytopeError::BadDilation(t)),
        None => Ok(()),
    }
}

/// Scalings supplied by the caller: `scalings(i, j)` is a candidate `c` with
/// `c W_i ⊆ W_j`.
pub type ScalingSource<'a, F> = &'a dyn Fn(usize, usize) -> Option<Vec<F>>;

/// Certifies the tiling criterion for a collection of subspaces. The torus
/// scalings relating members are not searched for; without `scalings` that
/// clause is reported as skipped and the certificate does not pass.
pub fn check_collection<F: Field>(
    ws: &[BlockedSubspace<F>],
    scalings: Option<ScalingSource<'_, F>>,
    dilations: &[i64],
) -> Result<Certificate, PolytopeError> {
    let first = ws.first().ok_or(PolytopeError::EmptyCollection)?;
    check_dilations(dilations)?;
    for w in ws {
        if w.ambient() != first.ambient() {
            return Err(LinalgError::AmbientMismatch.into());
        }
        if w.dim() != first.dim() {
            return Err(PolytopeError::DimensionMismatch(first.dim(), w.dim()));
        }
    }
    let labels = first.labels();
    let names: Vec<String> = (0..ws.len()).map(|i| format!("W{i}")).collect();
    let pairs: Vec<ModularPair> = ws.iter().map(modular_pair_of).collect();

    let mut clauses = vec![PairClauses::simplicity(&names, &pairs), PairClauses::distinct(&names, &labels, &pairs)];
    clauses.push(match scalings {
        None if ws.len() > 1 => Clause::skipped("scalings", "no scalings supplied"),
        _ => {
            let mut c = Clause::new("scalings");
            for i in 0..ws.len() {
                for j in (0..ws.len()).filter(|&j| j != i) {
                    let subj = vec![names[i].clone(), names[j].clone()];
                    let Some(phi) = scalings.and_then(|s| s(i, j)) else {
                        c.fail(subj, None, None, "no scaling supplied");
                        continue;
                    };
                    let ok = !phi.iter().all(|x| x.is_zero()) && ws[j].space().contains(&ws[i].space().scale(&phi)?)?;
                    if ok {
                        let support = Subset::from_indices(phi.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, _)| k));
                        c.witness(Witness::Scaling {
                            from: names[i].clone(),
                            to: names[j].clone(),
                            c: phi.iter().map(|x| x.to_string()).collect(),
                            support: labels_of(&labels, support),
                        });
                    } else {
                        c.fail(subj, None, None, "c W_i is not inside W_j");
                    }
                }
            }
            c
        }
    });
    clauses.push(PairClauses::completeness(&names, &labels, &pairs));
    clauses.push(PairClauses::coverage(&names, &pairs, dilations));
    clauses.push(PairClauses::separations(&names, &labels, &pairs));
    let notes = vec!["lattice coverage is checked at finitely many dilations and is evidence, not proof".to_string()];
    let cert = Certificate::new("subspace collection", clauses, notes);
    debug_assert!(cert.clauses.iter().all(|c| c.status != Status::Skipped) || !cert.passed);
    Ok(cert)
}
