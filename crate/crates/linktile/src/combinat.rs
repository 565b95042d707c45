//! Small enumeration helpers: compositions, ordered set partitions,
//! permutations and a ranking of compositions.

use crate::subset::Subset;

/// All weak compositions of `total` into `parts` nonnegative parts, in
/// increasing lexicographic order.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut cur = vec![0i64; parts];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of weak compositions of `total` into `parts` parts.
pub fn composition_count(total: u64, parts: u64) -> u64 {
    if parts == 0 {
        return (total == 0) as u64;
    }
    binomial(total + parts - 1, parts - 1)
}

/// Dense ranking of the weak compositions of a fixed total into a fixed
/// number of parts, consistent with the order of [`compositions`].
pub struct CompositionRanker {
    parts: usize,
    // count[k][s] = number of compositions of s into k parts
    count: Vec<Vec<u64>>,
}

impl CompositionRanker {
    pub fn new(total: u64, parts: usize) -> Self {
        let count = (0..=parts).map(|k| (0..=total).map(|s| composition_count(s, k as u64)).collect()).collect();
        CompositionRanker { parts, count }
    }

    pub fn size(&self, total: u64) -> u64 {
        self.count[self.parts][total as usize]
    }

    pub fn rank(&self, q: &[i64]) -> u64 {
        debug_assert_eq!(q.len(), self.parts);
        let mut left: i64 = q.iter().sum();
        let mut r = 0u64;
        for (i, &x) in q.iter().enumerate().take(self.parts.saturating_sub(1)) {
            let rest = self.parts - i - 1;
            // compositions with a smaller value in slot i come first
            for y in 0..x {
                r += self.count[rest][(left - y) as usize];
            }
            left -= x;
        }
        r
    }
}

/// Ordered set partitions of `{0..h}` into nonempty parts.
pub fn ordered_set_partitions(h: usize) -> Vec<Vec<Subset>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: Subset, cur: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        for part in left.subsets().skip(1) {
            cur.push(part);
            rec(left - part, cur, out);
            cur.pop();
        }
    }
    rec(Subset::full(h), &mut cur, &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) {
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
    out
}
