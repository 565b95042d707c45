//! Clause-by-clause certificates with re-checkable witnesses.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not evaluated (missing input); never counts as a pass of the clause.
    Skipped,
}

/// Evidence attached to a clause. Subsets are written as label lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Simplicity { subject: String, codimension: usize },
    Distinct { a: String, b: String, subset: Vec<String> },
    Scaling { from: String, to: String, c: Vec<String>, support: Vec<String> },
    Separation { a: String, b: String, first: Vec<String>, second: Vec<String>, strict: bool, nontrivial: bool },
    Completeness { subject: String, partition: String, partner: String },
    FaceMatch { subject: String, partition: String, polygon: Vec<String>, partner: Option<String> },
    Coverage { dilation: i64, points: u64, per_subject: Vec<(String, u64)> },
    Note { text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub clause: String,
    pub subjects: Vec<String>,
    pub partition: Option<String>,
    pub point: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Counterexample>,
}

impl Clause {
    pub fn new(name: impl Into<String>) -> Self {
        Clause { name: name.into(), status: Status::Pass, witnesses: vec![], counterexamples: vec![] }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        let mut c = Clause::new(name);
        c.status = Status::Skipped;
        c.witnesses.push(Witness::Note { text: why.into() });
        c
    }

    pub fn witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn fail(&mut self, subjects: Vec<String>, partition: Option<String>, point: Option<Vec<String>>, detail: impl Into<String>) {
        self.status = Status::Fail;
        self.counterexamples.push(Counterexample { clause: self.name.clone(), subjects, partition, point, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    pub passed: bool,
    pub clauses: Vec<Clause>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(subject: impl Into<String>, clauses: Vec<Clause>, notes: Vec<String>) -> Self {
        let passed = clauses.iter().all(|c| c.status == Status::Pass);
        Certificate { subject: subject.into(), passed, clauses, notes }
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Counterexample> {
        self.clauses.iter().flat_map(|c| c.counterexamples.iter())
    }
}

pub fn labels_of(labels: &[String], s: crate::subset::Subset) -> Vec<String> {
    s.iter().map(|i| labels[i].clone()).collect()
}
