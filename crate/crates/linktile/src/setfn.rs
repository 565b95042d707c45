//! Integer set functions on a small ground set: supermodular pairs, splittings
//! along ordered partitions, codimension, separations and base polytopes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{compositions, permutations};
use crate::subset::{Subset, MAX_GROUND};

/// Vertex enumeration walks all `h!` maximal chains.
pub const MAX_VERTEX_GROUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetFnError {
    #[error("ground set of size {0} exceeds the cap of {MAX_GROUND}")]
    TooLarge(usize),
    #[error("value table has length {found}, expected {expected}")]
    TableLength { found: usize, expected: usize },
    #[error("value at the empty set is {0}, expected 0")]
    NonzeroAtEmpty(i64),
    #[error("duplicate ground label `{0}`")]
    DuplicateLabel(String),
    #[error("not supermodular: f({a}) + f({b}) > f(union) + f(intersection)")]
    NotSupermodular { a: Subset, b: Subset },
    #[error("tables are not adjoint at {0}")]
    NotAdjoint(Subset),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("ranges differ: {0} vs {1}")]
    RangeMismatch(i64, i64),
    #[error("not an ordered partition of the ground set")]
    NotPartition,
    #[error("contraction set {j1} is not inside restriction set {j2}")]
    NotNested { j1: Subset, j2: Subset },
    #[error("vertex enumeration is capped at |H| = {MAX_VERTEX_GROUND}, got {0}")]
    VertexCap(usize),
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { found: usize, expected: usize },
}

/// Dense table of an integer set function, indexed by subset bitmask.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFn {
    #[serde(rename = "ground_set")]
    ground: Vec<String>,
    values: Vec<i64>,
}

impl fmt::Debug for SetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFn{:?}", self.values)
    }
}

pub fn default_labels(h: usize) -> Vec<String> {
    (0..h).map(|i| i.to_string()).collect()
}

impl SetFn {
    pub fn new(ground: Vec<String>, values: Vec<i64>) -> Result<Self, SetFnError> {
        let h = ground.len();
        if h > MAX_GROUND {
            return Err(SetFnError::TooLarge(h));
        }
        for (i, l) in ground.iter().enumerate() {
            if ground[..i].contains(l) {
                return Err(SetFnError::DuplicateLabel(l.clone()));
            }
        }
        if values.len() != 1 << h {
            return Err(SetFnError::TableLength { found: values.len(), expected: 1 << h });
        }
        if values[0] != 0 {
            return Err(SetFnError::NonzeroAtEmpty(values[0]));
        }
        Ok(SetFn { ground, values })
    }

    /// Validates a deserialized table.
    pub fn validated(self) -> Result<Self, SetFnError> {
        SetFn::new(self.ground, self.values)
    }

    pub fn from_fn(ground: Vec<String>, f: impl Fn(Subset) -> i64) -> Result<Self, SetFnError> {
        let h = ground.len();
        if h > MAX_GROUND {
            return Err(SetFnError::TooLarge(h));
        }
        let values = Subset::all(h).map(f).collect();
        SetFn::new(ground, values)
    }

    /// Like [`SetFn::from_fn`] with labels `0..h`.
    pub fn anonymous(h: usize, f: impl Fn(Subset) -> i64) -> Self {
        SetFn::from_fn(default_labels(h), f).expect("anonymous set function")
    }

    pub fn h(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> i64 {
        self.values[s.index()]
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.h())
    }

    pub fn top(&self) -> i64 {
        self.values[self.values.len() - 1]
    }

    fn with_values(&self, values: Vec<i64>) -> SetFn {
        SetFn { ground: self.ground.clone(), values }
    }

    /// A violating pair for supermodularity via the local exchange condition
    /// `f(I+a) + f(I+b) <= f(I+a+b) + f(I)`.
    pub fn supermodular_violation(&self) -> Option<(Subset, Subset)> {
        let h = self.h();
        for i in Subset::all(h) {
            let out = i.complement(h);
            for a in out.iter() {
                for b in out.iter().filter(|&b| b > a) {
                    let ia = i.with(a);
                    let ib = i.with(b);
                    if self.get(ia) + self.get(ib) > self.get(ia | ib) + self.get(i) {
                        return Some((ia, ib));
                    }
                }
            }
        }
        None
    }

    pub fn is_supermodular(&self) -> bool {
        self.supermodular_violation().is_none()
    }

    pub fn is_submodular(&self) -> bool {
        self.negated().is_supermodular()
    }

    /// All-pairs definition, `O(4^h)`; used to validate the local test.
    pub fn is_supermodular_bruteforce(&self) -> bool {
        let h = self.h();
        Subset::all(h).all(|a| Subset::all(h).all(|b| self.get(a) + self.get(b) <= self.get(a | b) + self.get(a & b)))
    }

    pub fn negated(&self) -> SetFn {
        self.with_values(self.values.iter().map(|v| -v).collect())
    }

    pub fn is_nondecreasing(&self) -> bool {
        let h = self.h();
        Subset::all(h).all(|i| i.complement(h).iter().all(|a| self.get(i) <= self.get(i.with(a))))
    }

    /// `f*(I) = f(H) - f(H - I)`.
    pub fn adjoint(&self) -> SetFn {
        let h = self.h();
        let top = self.top();
        self.with_values(Subset::all(h).map(|i| top - self.get(i.complement(h))).collect())
    }

    /// `f_{J2/J1}(I) = f((I ∩ J2) ∪ J1) - f(J1)`, as a function on all of `H`.
    pub fn restrict_contract(&self, j1: Subset, j2: Subset) -> Result<SetFn, SetFnError> {
        if !j1.is_subset(j2) {
            return Err(SetFnError::NotNested { j1, j2 });
        }
        let base = self.get(j1);
        Ok(self.with_values(Subset::all(self.h()).map(|i| self.get((i & j2) | j1) - base).collect()))
    }

    /// The splitting `f_π = Σ f_{F_j/F_{j-1}}`.
    pub fn split(&self, pi: &OrderedPartition) -> Result<SetFn, SetFnError> {
        if pi.h() != self.h() {
            return Err(SetFnError::NotPartition);
        }
        let mut values = vec![0i64; 1 << self.h()];
        let filt = pi.filtration();
        for w in filt.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let base = self.get(lo);
            for (idx, v) in values.iter_mut().enumerate() {
                *v += self.get((Subset(idx as u32) & hi) | lo) - base;
            }
        }
        Ok(self.with_values(values))
    }

    fn same_ground(&self, o: &SetFn) -> Result<(), SetFnError> {
        if self.ground == o.ground {
            Ok(())
        } else {
            Err(SetFnError::GroundMismatch)
        }
    }
}

/// An ordered partition `(π_1, …, π_s)` of `{0..h}`. Parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedPartition {
    h: usize,
    parts: Vec<Subset>,
}

impl OrderedPartition {
    pub fn new(h: usize, parts: Vec<Subset>) -> Result<Self, SetFnError> {
        let mut seen = Subset::EMPTY;
        for &p in &parts {
            if !(p & seen).is_empty() || !p.is_subset(Subset::full(h)) {
                return Err(SetFnError::NotPartition);
            }
            seen = seen | p;
        }
        if seen != Subset::full(h) {
            return Err(SetFnError::NotPartition);
        }
        Ok(OrderedPartition { h, parts })
    }

    pub fn trivial(h: usize) -> Self {
        OrderedPartition { h, parts: vec![Subset::full(h)] }
    }

    pub fn bipartition(h: usize, first: Subset) -> Self {
        let first = first & Subset::full(h);
        OrderedPartition { h, parts: vec![first, first.complement(h)] }
    }

    /// Builds the partition whose filtration is the chain `∅ ⊂ F_1 ⊂ … ⊂ H`.
    pub fn from_chain(h: usize, chain: &[Subset]) -> Result<Self, SetFnError> {
        let mut parts = Vec::with_capacity(chain.len());
        let mut prev = Subset::EMPTY;
        for &f in chain {
            if !prev.is_subset(f) {
                return Err(SetFnError::NotPartition);
            }
            parts.push(f - prev);
            prev = f;
        }
        OrderedPartition::new(h, parts)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `F_0 = ∅ ⊆ F_1 ⊆ … ⊆ F_s = H`.
    pub fn filtration(&self) -> Vec<Subset> {
        let mut out = vec![Subset::EMPTY];
        let mut acc = Subset::EMPTY;
        for &p in &self.parts {
            acc = acc | p;
            out.push(acc);
        }
        out
    }

    pub fn is_nontrivial(&self) -> bool {
        self.parts.iter().all(|p| !p.is_empty())
    }

    /// The reversed partition; for a bipartition this is `π^c`.
    pub fn reversed(&self) -> Self {
        OrderedPartition { h: self.h, parts: self.parts.iter().rev().copied().collect() }
    }

    pub fn display_with(&self, labels: &[String]) -> String {
        let parts: Vec<String> =
            self.parts.iter().map(|p| format!("{{{}}}", p.iter().map(|i| labels[i].as_str()).collect::<Vec<_>>().join(","))).collect();
        format!("({})", parts.join(","))
    }
}

/// A bipartition `(I, J)` with `μ(I) + ν(J) >= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub first: Subset,
    pub second: Subset,
    pub strict: bool,
    pub nontrivial: bool,
}

/// A supermodular function together with its adjoint.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularPair {
    lower: SetFn,
    upper: SetFn,
}

impl fmt::Debug for ModularPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModularPair{{ μ: {:?}, μ*: {:?} }}", self.lower.values, self.upper.values)
    }
}

impl ModularPair {
    pub fn new(mu: SetFn) -> Result<Self, SetFnError> {
        if let Some((a, b)) = mu.supermodular_violation() {
            return Err(SetFnError::NotSupermodular { a, b });
        }
        let upper = mu.adjoint();
        Ok(ModularPair { lower: mu, upper })
    }

    /// Checks that `upper` is the adjoint of `lower` before pairing them.
    pub fn from_tables(lower: SetFn, upper: SetFn) -> Result<Self, SetFnError> {
        lower.same_ground(&upper)?;
        let adj = lower.adjoint();
        if let Some(i) = Subset::all(lower.h()).find(|&i| adj.get(i) != upper.get(i)) {
            return Err(SetFnError::NotAdjoint(i));
        }
        ModularPair::new(lower)
    }

    pub fn lower(&self) -> &SetFn {
        &self.lower
    }

    pub fn upper(&self) -> &SetFn {
        &self.upper
    }

    pub fn h(&self) -> usize {
        self.lower.h()
    }

    pub fn range(&self) -> i64 {
        self.lower.top()
    }

    pub fn split(&self, pi: &OrderedPartition) -> Result<ModularPair, SetFnError> {
        let mu = self.lower.split(pi)?;
        let upper = mu.adjoint();
        Ok(ModularPair { lower: mu, upper })
    }

    /// Separators: `I` with `μ(I) + μ(H - I) = μ(H)`; for supermodular `μ` these
    /// are exactly the first parts of bipartitions that split `μ`.
    pub fn separators(&self) -> Vec<Subset> {
        let h = self.h();
        let top = self.range();
        Subset::all(h).filter(|&i| self.lower.get(i) + self.lower.get(i.complement(h)) == top).collect()
    }

    /// Atoms of the Boolean algebra generated by the separators.
    pub fn separator_atoms(&self) -> Vec<Subset> {
        let h = self.h();
        let seps = self.separators();
        let mut atoms: Vec<Subset> = Vec::new();
        for x in 0..h {
            let atom = seps.iter().fold(Subset::full(h), |acc, &s| if s.contains(x) { acc & s } else { acc - s });
            if !atoms.contains(&atom) {
                atoms.push(atom);
            }
        }
        atoms.sort();
        atoms
    }

    /// `cd_μ`, the largest number of nonempty parts of a partition along which
    /// `μ` splits to itself.
    pub fn codimension(&self) -> usize {
        if self.h() == 0 {
            return 0;
        }
        self.separator_atoms().len()
    }

    pub fn is_simple(&self) -> bool {
        self.codimension() == 1
    }

    /// Whether `π = (I, H - I)` splits `μ` to itself.
    pub fn splits_along(&self, pi: &OrderedPartition) -> bool {
        self.lower.split(pi).map(|s| s == self.lower).unwrap_or(false)
    }

    /// All separations `(I, J)` of `(self, other)` over proper nonempty `I`,
    /// in increasing mask order of `I`.
    pub fn separations(&self, other: &ModularPair) -> Result<Vec<Separation>, SetFnError> {
        self.lower.same_ground(&other.lower)?;
        if self.range() != other.range() {
            return Err(SetFnError::RangeMismatch(self.range(), other.range()));
        }
        let h = self.h();
        let n = self.range();
        let full = Subset::full(h);
        let mut out = Vec::new();
        for i in Subset::all(h).filter(|&i| !i.is_empty() && i != full) {
            let j = i.complement(h);
            let s = self.lower.get(i) + other.lower.get(j);
            if s < n {
                continue;
            }
            let pi = OrderedPartition::bipartition(h, i);
            let nontrivial = s > n || !self.splits_along(&pi) || !other.splits_along(&pi);
            out.push(Separation { first: i, second: j, strict: s > n, nontrivial });
        }
        Ok(out)
    }

    /// A separation, preferring nontrivial ones, first in mask order.
    pub fn separation(&self, other: &ModularPair) -> Result<Option<Separation>, SetFnError> {
        let all = self.separations(other)?;
        let pick = all.iter().find(|s| s.nontrivial).or(all.first()).cloned();
        Ok(pick)
    }

    fn check_len(&self, n: usize) -> Result<(), SetFnError> {
        if n == self.h() {
            Ok(())
        } else {
            Err(SetFnError::PointLength { found: n, expected: self.h() })
        }
    }

    pub fn contains_rational(&self, q: &[BigRational]) -> Result<bool, SetFnError> {
        self.check_len(q.len())?;
        let h = self.h();
        let mut sums = vec![BigRational::zero(); 1 << h];
        for idx in 1..(1usize << h) {
            let low = idx.trailing_zeros() as usize;
            sums[idx] = sums[idx & (idx - 1)].clone() + q[low].clone();
        }
        Ok(Subset::all(h).all(|i| {
            let s = &sums[i.index()];
            *s >= BigRational::from_integer(BigInt::from(self.lower.get(i)))
                && *s <= BigRational::from_integer(BigInt::from(self.upper.get(i)))
        }))
    }

    /// Membership of an integer point in the `t`-fold dilation.
    pub fn contains_dilated(&self, q: &[i64], t: i64) -> Result<bool, SetFnError> {
        self.check_len(q.len())?;
        let h = self.h();
        let mut sums = vec![0i64; 1 << h];
        for idx in 1..(1usize << h) {
            let low = idx.trailing_zeros() as usize;
            sums[idx] = sums[idx & (idx - 1)] + q[low];
        }
        Ok(Subset::all(h).all(|i| t * self.lower.get(i) <= sums[i.index()] && sums[i.index()] <= t * self.upper.get(i)))
    }

    pub fn contains_int(&self, q: &[i64]) -> Result<bool, SetFnError> {
        self.contains_dilated(q, 1)
    }

    /// Greedy vertex along a maximal chain `order[0], order[0..2], …`.
    pub fn greedy_vertex(&self, order: &[usize]) -> Vec<i64> {
        let mut q = vec![0i64; self.h()];
        let mut f = Subset::EMPTY;
        for &x in order {
            let g = f.with(x);
            q[x] = self.lower.get(g) - self.lower.get(f);
            f = g;
        }
        q
    }

    /// Vertex set of `P_μ`, sorted and deduplicated.
    pub fn vertices(&self) -> Result<Vec<Vec<i64>>, SetFnError> {
        if self.h() > MAX_VERTEX_GROUND {
            return Err(SetFnError::VertexCap(self.h()));
        }
        let set: BTreeSet<Vec<i64>> = permutations(self.h()).iter().map(|p| self.greedy_vertex(p)).collect();
        Ok(set.into_iter().collect())
    }

    /// Whether `P_μ` lies in the closed orthant, i.e. `μ(v) >= 0` for all `v`.
    pub fn in_orthant(&self) -> bool {
        (0..self.h()).all(|v| self.lower.get(Subset::singleton(v)) >= 0)
    }

    /// Whether `P_μ` meets the open orthant `{q > 0}`.
    ///
    /// `P_μ` meets `{q >= ε}` iff `ε|I| <= μ*(I)` for all `I`, so for integer
    /// tables the test is `μ*(I) >= 1` on nonempty `I`; inside the orthant only
    /// singletons matter.
    pub fn meets_open_orthant(&self) -> bool {
        let h = self.h();
        if h == 0 {
            return true;
        }
        if self.in_orthant() {
            (0..h).all(|v| self.upper.get(Subset::singleton(v)) >= 1)
        } else {
            Subset::all(h).skip(1).all(|i| self.upper.get(i) >= 1)
        }
    }

    /// A rational point of `P_μ` with all coordinates positive, when one exists
    /// and `P_μ` lies in the orthant: the barycentre of the greedy vertices
    /// with each element placed last.
    pub fn interior_witness(&self) -> Option<Vec<BigRational>> {
        let h = self.h();
        if h == 0 || !self.in_orthant() || !self.meets_open_orthant() {
            return None;
        }
        let mut acc = vec![BigRational::zero(); h];
        for v in 0..h {
            let order: Vec<usize> = (0..h).filter(|&x| x != v).chain(std::iter::once(v)).collect();
            for (a, x) in acc.iter_mut().zip(self.greedy_vertex(&order)) {
                *a += BigRational::from_integer(BigInt::from(x));
            }
        }
        let hh = BigRational::from_integer(BigInt::from(h as i64));
        let w: Vec<BigRational> = acc.into_iter().map(|a| a / hh.clone()).collect();
        debug_assert!(w.iter().all(|x| x.is_positive()));
        Some(w)
    }

    /// Whether the face `P_{μ_π}` meets the open orthant, decided on the minors
    /// `μ_{F_j/F_{j-1}}` without building the split table.
    pub fn face_meets_open_orthant(&self, pi: &OrderedPartition) -> bool {
        let filt = pi.filtration();
        filt.windows(2).all(|w| self.step_meets(w[0], w[1]))
    }

    /// The minor `μ_{B/A}` meets the open orthant of `R^{B-A}`.
    pub fn step_meets(&self, a: Subset, b: Subset) -> bool {
        let d = b - a;
        let top = self.lower.get(b);
        if self.in_orthant() {
            d.iter().all(|x| top - self.lower.get(b.without(x)) >= 1)
        } else {
            d.subsets().skip(1).all(|k| top - self.lower.get(b - k) >= 1)
        }
    }

    /// Lattice points of the `t`-fold dilation, passed to `visit` in
    /// lexicographic order.
    ///
    /// Coordinates are fixed one at a time. The projection of a base polytope
    /// to a coordinate prefix `S` is cut out by the same inequalities on the
    /// subsets of `S`, and every integer point of it lifts, so the admissible
    /// values of the next coordinate form an interval and the search has no
    /// dead ends.
    pub fn for_each_lattice_point(&self, t: i64, mut visit: impl FnMut(&[i64])) {
        let h = self.h();
        if h == 0 {
            if self.range() == 0 {
                visit(&[]);
            }
            return;
        }
        let lo: Vec<i64> = self.lower.values.iter().map(|v| t * v).collect();
        let hi: Vec<i64> = self.upper.values.iter().map(|v| t * v).collect();
        let total = t * self.range();
        let mut sums = vec![0i64; 1 << h];
        let mut q = vec![0i64; h];
        lattice_rec(0, h, total, &lo, &hi, &mut sums, &mut q, &mut visit);
    }

    pub fn lattice_points(&self, t: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each_lattice_point(t, |q| out.push(q.to_vec()));
        out
    }

    /// Reference enumeration: all compositions filtered by membership.
    pub fn lattice_points_bruteforce(&self, t: i64) -> Vec<Vec<i64>> {
        let total = t * self.range();
        if total < 0 {
            return vec![];
        }
        compositions(total, self.h()).into_iter().filter(|q| self.contains_dilated(q, t).unwrap_or(false)).collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn lattice_rec(k: usize, h: usize, total: i64, lo: &[i64], hi: &[i64], sums: &mut [i64], q: &mut [i64], visit: &mut impl FnMut(&[i64])) {
    let bit = 1usize << k;
    let prefix: i64 = sums[bit - 1];
    if k + 1 == h {
        // the sum constraint pins the last coordinate
        q[k] = total - prefix;
        visit(q);
        return;
    }
    let mut a = i64::MIN;
    let mut b = i64::MAX;
    for i in 0..bit {
        let s = sums[i];
        a = a.max(lo[i | bit] - s);
        b = b.min(hi[i | bit] - s);
    }
    for x in a..=b {
        q[k] = x;
        for i in 0..bit {
            sums[i | bit] = sums[i] + x;
        }
        lattice_rec(k + 1, h, total, lo, hi, sums, q, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(vals: [i64; 4]) -> SetFn {
        SetFn::new(default_labels(2), vals.to_vec()).unwrap()
    }

    #[test]
    fn supermodularity_examples() {
        let d = SetFn::anonymous(3, |i| if i == Subset::full(3) { 4 } else { 0 });
        assert!(d.is_supermodular());
        let sq = SetFn::anonymous(4, |i| (i.len() * i.len()) as i64);
        assert!(sq.is_supermodular() && sq.is_supermodular_bruteforce());
        let m = SetFn::anonymous(2, |i| i.len().min(1) as i64);
        assert!(!m.is_supermodular());
    }

    #[test]
    fn adjoint_examples() {
        let mu = f2([0, 0, 1, 2]);
        assert_eq!(mu.adjoint().values(), &[0, 1, 2, 2]);
        assert_eq!(mu.adjoint().adjoint(), mu);
        let d = SetFn::anonymous(3, |i| if i == Subset::full(3) { 5 } else { 0 });
        assert!(d.adjoint().values()[1..].iter().all(|&v| v == 5));
        let q = SetFn::anonymous(3, |i| i.iter().map(|x| x as i64 + 1).sum());
        assert_eq!(q.adjoint(), q);
    }

    #[test]
    fn restrict_contract_examples() {
        let mu = f2([0, 0, 1, 2]);
        let full = Subset::full(2);
        assert_eq!(mu.restrict_contract(Subset::EMPTY, full).unwrap(), mu);
        assert!(mu.restrict_contract(full, full).unwrap().values().iter().all(|&v| v == 0));
        let c = mu.restrict_contract(Subset::singleton(1), full).unwrap();
        assert_eq!(c.values(), &[0, 1, 0, 1]);
        assert!(mu.restrict_contract(full, Subset::singleton(0)).is_err());
    }

    #[test]
    fn split_examples() {
        let mu = f2([0, 0, 1, 2]);
        assert_eq!(mu.split(&OrderedPartition::trivial(2)).unwrap(), mu);
        let pi = OrderedPartition::new(2, vec![Subset::singleton(0), Subset::singleton(1)]).unwrap();
        let s = mu.split(&pi).unwrap();
        // μ_{F1}: (0, μ(a)=0, 0, 0) ; μ_{H/F1}(I) = μ(I ∪ a) - μ(a)
        assert_eq!(s.values(), &[0, 0, 2, 2]);
        assert_eq!(s.top(), 2);
    }

    #[test]
    fn codimension_examples() {
        let d = ModularPair::new(SetFn::anonymous(3, |i| if i == Subset::full(3) { 2 } else { 0 })).unwrap();
        assert_eq!(d.codimension(), 1);
        let q = ModularPair::new(SetFn::anonymous(4, |i| i.len() as i64)).unwrap();
        assert_eq!(q.codimension(), 4);
    }

    #[test]
    fn separation_of_simplex_pair_with_itself() {
        let d = ModularPair::new(SetFn::anonymous(2, |i| if i == Subset::full(2) { 1 } else { 0 })).unwrap();
        let s = d.separation(&d).unwrap();
        assert!(s.is_none() || !s.unwrap().nontrivial);
    }

    #[test]
    fn simplex_membership_and_points() {
        let d = ModularPair::new(SetFn::anonymous(3, |i| if i == Subset::full(3) { 2 } else { 0 })).unwrap();
        assert_eq!(d.vertices().unwrap(), vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]]);
        assert_eq!(d.lattice_points(1).len(), 6);
        assert_eq!(d.lattice_points(1), d.lattice_points_bruteforce(1));
        assert!(d.contains_int(&[1, 1, 0]).unwrap());
        assert!(!d.contains_int(&[3, -1, 0]).unwrap());
    }

    #[test]
    fn modular_polytope_is_a_point() {
        let q = ModularPair::new(SetFn::anonymous(3, |i| i.iter().map(|x| x as i64).sum())).unwrap();
        assert_eq!(q.vertices().unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn partition_validation() {
        assert!(OrderedPartition::new(3, vec![Subset(1), Subset(2)]).is_err());
        assert!(OrderedPartition::new(3, vec![Subset(3), Subset(6)]).is_err());
        let p = OrderedPartition::new(3, vec![Subset(5), Subset(2)]).unwrap();
        assert_eq!(p.filtration(), vec![Subset(0), Subset(5), Subset(7)]);
        assert_eq!(p.reversed().parts(), &[Subset(2), Subset(5)]);
    }
}
