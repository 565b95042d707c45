//! Axiom checks on the finite fragment `H × H` of a presentation.

use rayon::prelude::*;

use super::{NetError, NetPresentation};
use crate::certificate::{Certificate, Clause, Status};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{are_neighbors, ess, hull};

pub type VerificationReport = Certificate;

pub const COHERENCE: &str = "coherence";
pub const CIRCUITS: &str = "circuit vanishing";
pub const LINKED: &str = "linked condition";
pub const EXACTNESS: &str = "exactness";
pub const REDUCEDNESS: &str = "reducedness";
pub const GENERATION: &str = "generation";

/// Counterexamples kept per clause; the rest are counted.
const MAX_REPORTED: usize = 16;

/// Subjects and detail of one failed check.
type Finding = (Vec<String>, String);

struct Tally {
    clause: Clause,
    extra: usize,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { clause: Clause::new(name), extra: 0 }
    }

    fn fail(&mut self, subjects: Vec<String>, detail: String) {
        if self.clause.counterexamples.len() < MAX_REPORTED {
            self.clause.fail(subjects, None, None, detail);
        } else {
            self.extra += 1;
        }
    }

    fn finish(mut self) -> Clause {
        if self.extra > 0 {
            let name = self.clause.name.clone();
            self.clause.fail(vec![], None, None, format!("{} further violations of {name}", self.extra));
        }
        self.clause
    }
}

fn same_column_space<F: Field>(a: &Matrix<F>, b_rows: &Matrix<F>) -> bool {
    // b_rows spans a subspace as rows; compare with the column space of `a`.
    let ca = a.column_space();
    let cb = b_rows.rref().0;
    ca == cb
}

impl<F: Field> NetPresentation<F> {
    fn name_of(&self, i: usize) -> String {
        self.ids()[i].clone()
    }

    /// Checks every clause independently; failures are report entries.
    pub fn verify(&self) -> VerificationReport {
        let n = self.len();
        let vs = self.vertex_set().vertices();
        let full = vs[0].all_types();

        // coherence and circuit vanishing: per middle vertex v, over u != v and w != v.
        let partial: Vec<(Vec<Finding>, Vec<Finding>)> = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut coh = vec![];
                let mut circ = vec![];
                for u in (0..n).filter(|&u| u != v) {
                    for w in (0..n).filter(|&w| w != v) {
                        let prod = self.map(v, w).mul(self.map(u, v));
                        let subj = vec![self.name_of(u), self.name_of(v), self.name_of(w)];
                        if (ess(&vs[u], &vs[v]) | ess(&vs[v], &vs[w])) != full {
                            match prod.proportionality(self.map(u, w)) {
                                Some(l) if !l.is_zero() || self.map(u, w).is_zero() => {}
                                _ => coh.push((subj, "M^v_w M^u_v is not a nonzero multiple of M^u_w".to_string())),
                            }
                        } else if !prod.is_zero() {
                            circ.push((subj, "minimal circuit composes to a nonzero map".to_string()));
                        }
                    }
                }
                (coh, circ)
            })
            .collect();
        let mut coherence = Tally::new(COHERENCE);
        let mut circuits = Tally::new(CIRCUITS);
        for (coh, circ) in partial {
            coh.into_iter().for_each(|(s, d)| coherence.fail(s, d));
            circ.into_iter().for_each(|(s, d)| circuits.fail(s, d));
        }

        // linked condition: kernels of type-disjoint maps out of v meet trivially.
        let mut linked = Tally::new(LINKED);
        for v in 0..n {
            for u1 in 0..n {
                for u2 in (u1 + 1)..n {
                    if !(ess(&vs[v], &vs[u1]) & ess(&vs[v], &vs[u2])).is_empty() {
                        continue;
                    }
                    if self.map(v, u1).vstack(self.map(v, u2)).rank() != self.dim() {
                        linked
                            .fail(vec![self.name_of(v), self.name_of(u1), self.name_of(u2)], "kernels intersect nontrivially".to_string());
                    }
                }
            }
        }

        // exactness: im M^{u1}_{u2} = ker M^{u2}_{u1} for neighbors.
        let mut exact = Tally::new(EXACTNESS);
        for u1 in 0..n {
            for u2 in (0..n).filter(|&u2| u2 != u1 && are_neighbors(&vs[u1], &vs[u2])) {
                if !same_column_space(self.map(u1, u2), &self.map(u2, u1).kernel()) {
                    exact.fail(
                        vec![self.name_of(u1), self.name_of(u2)],
                        "image of the forward map differs from the kernel of the backward map".to_string(),
                    );
                }
            }
        }

        // reducedness: nonzero maps and P(H) = H.
        let mut reduced = Tally::new(REDUCEDNESS);
        for v in 0..n {
            for u in 0..n {
                if self.map(v, u).is_zero() {
                    reduced.fail(vec![self.name_of(v), self.name_of(u)], "zero map".to_string());
                }
            }
        }
        match hull(self.vertex_set()) {
            Ok(h) if h == *self.vertex_set() => {}
            Ok(h) => reduced.fail(vec![], format!("H is not convex: its hull has {} vertices", h.len())),
            Err(e) => reduced.fail(vec![], format!("hull failed: {e}")),
        }

        // generation: no isomorphism into v from another vertex of H.
        let mut generation = Tally::new(GENERATION);
        for v in 0..n {
            for w in (0..n).filter(|&w| w != v) {
                if self.map(w, v).is_invertible() {
                    generation.fail(vec![self.name_of(w), self.name_of(v)], "isomorphism between distinct vertices of H".to_string());
                }
            }
        }

        let clauses = vec![coherence.finish(), circuits.finish(), linked.finish(), exact.finish(), reduced.finish(), generation.finish()];
        let notes = vec!["axioms verified on H".to_string()];
        Certificate::new("linked net presentation", clauses, notes)
    }

    /// Errors with the first failing clause unless every clause passes.
    pub fn require_verified(&self) -> Result<(), NetError> {
        let report = self.verify();
        match report.clauses.iter().find(|c| c.status != Status::Pass) {
            None => Ok(()),
            Some(c) => Err(NetError::Unverified(c.name.clone())),
        }
    }
}
