//! Brute-force enumeration of parity-separated partitions.
//!
//! This is the ground truth the generating functions are checked against, so
//! it stays deliberately naive: a recursive descent over parts in decreasing
//! order, exponential in `n`. Use it for `n <= 60`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::family::{FamilyCode, PartClass};
use crate::par;

/// A partition stored as its parts in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Normalises any multiset of positive parts into decreasing order.
    ///
    /// # Panics
    ///
    /// If a part is zero.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn contains(&self, part: u32) -> bool {
        self.0.contains(&part)
    }

    /// Adds a part, keeping the order.
    pub fn with_part(&self, part: u32) -> Self {
        let mut parts = self.0.clone();
        let at = parts.partition_point(|&p| p >= part);
        parts.insert(at, part);
        Partition(parts)
    }

    /// Removes one copy of `part`, if present.
    pub fn without_part(&self, part: u32) -> Option<Self> {
        let at = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts.remove(at);
        Some(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Whether `lambda` is a partition of `n` counted by `family`.
pub fn is_member(family: FamilyCode, lambda: &Partition, n: u32) -> bool {
    let parts = lambda.parts();
    if parts.contains(&0) || lambda.size() != n {
        return false;
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    let lower = family.lower();
    let upper = family.upper();
    let in_class = |c: PartClass| {
        parts
            .iter()
            .copied()
            .filter(move |&p| family.class_of(p) == c)
    };
    if let (Some(max_lower), Some(min_upper)) = (in_class(lower).max(), in_class(upper).min()) {
        if max_lower >= min_upper {
            return false;
        }
    }
    for class in [lower, upper] {
        if class.is_distinct() {
            let ps: Vec<u32> = in_class(class).collect();
            if ps.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
    }
    true
}

struct Search<'a> {
    family: FamilyCode,
    stack: Vec<u32>,
    out: &'a mut Vec<Partition>,
}

impl Search<'_> {
    /// Places parts `<= max` summing to `remaining`. Parts are placed in
    /// decreasing order, so once a lower-class part is down no upper-class part
    /// may follow.
    fn descend(&mut self, remaining: u32, max: u32, in_lower: bool) {
        if remaining == 0 {
            self.out.push(Partition(self.stack.clone()));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            let class = self.family.class_of(part);
            let is_lower = class == self.family.lower();
            if in_lower && !is_lower {
                continue;
            }
            if class.is_distinct() && self.stack.contains(&part) {
                continue;
            }
            self.stack.push(part);
            self.descend(remaining - part, part, in_lower || is_lower);
            self.stack.pop();
        }
    }
}

/// All partitions of `n` in `family`, in reverse lexicographic order.
pub fn enumerate(family: FamilyCode, n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut search = Search {
        family,
        stack: Vec::new(),
        out: &mut out,
    };
    search.descend(n, n, false);
    out
}

pub fn count(family: FamilyCode, n: u32) -> u64 {
    enumerate(family, n).len() as u64
}

/// `count(family, n)` for `n` in `0..bound`, computed in parallel.
pub fn counts(family: FamilyCode, bound: u32) -> Vec<u64> {
    par::map_range(0..bound as usize, |n| count(family, n as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn paper_counts() {
        assert_eq!(count(FamilyCode::ED_OD, 6), 3);
        assert_eq!(count(FamilyCode::EU_OD, 5), 2);
        assert_eq!(count(FamilyCode::OU_EU, 6), 10);
        assert_eq!(count(FamilyCode::OD_ED, 2), 1);
        assert_eq!(count(FamilyCode::OD_EU, 2), 1);
    }

    #[test]
    fn od_eu_table() {
        let expected = [
            1, 1, 1, 2, 3, 3, 4, 5, 8, 8, 10, 12, 17, 17, 22, 26, 34, 35, 44,
        ];
        assert_eq!(counts(FamilyCode::OD_EU, 19), expected);
    }

    #[test]
    fn zero_has_the_empty_partition() {
        for f in FamilyCode::ALL {
            assert_eq!(enumerate(f, 0), vec![Partition::empty()]);
        }
    }

    #[test]
    fn enumeration_is_sound_and_duplicate_free() {
        for f in FamilyCode::ALL {
            for n in 0..=22 {
                let ps = enumerate(f, n);
                let set: HashSet<_> = ps.iter().cloned().collect();
                assert_eq!(set.len(), ps.len(), "{f} n={n}");
                for p in &ps {
                    assert!(is_member(f, p, n), "{f}: {p}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_complete() {
        // every partition of n is either emitted or rejected by the checker
        fn all_partitions(n: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(stack.clone()));
                return;
            }
            for k in (1..=max.min(n)).rev() {
                stack.push(k);
                all_partitions(n - k, k, stack, out);
                stack.pop();
            }
        }
        for n in 0..=16 {
            let mut every = Vec::new();
            all_partitions(n, n, &mut Vec::new(), &mut every);
            for f in FamilyCode::ALL {
                let expected: Vec<_> = every
                    .iter()
                    .filter(|p| is_member(f, p, n))
                    .cloned()
                    .collect();
                assert_eq!(enumerate(f, n), expected, "{f} n={n}");
            }
        }
    }

    #[test]
    fn separation_holds_for_emitted_partitions() {
        for f in FamilyCode::ALL {
            for p in enumerate(f, 20) {
                let lower: Vec<u32> = p
                    .parts()
                    .iter()
                    .copied()
                    .filter(|&x| f.class_of(x) == f.lower())
                    .collect();
                let upper: Vec<u32> = p
                    .parts()
                    .iter()
                    .copied()
                    .filter(|&x| f.class_of(x) == f.upper())
                    .collect();
                if let (Some(l), Some(u)) = (lower.iter().max(), upper.iter().min()) {
                    assert!(l < u);
                }
            }
        }
    }

    #[test]
    fn membership_rejects_violations() {
        let f = FamilyCode::EU_OU;
        assert!(is_member(f, &Partition::from_parts(vec![3, 2]), 5));
        assert!(!is_member(f, &Partition::from_parts(vec![4, 3]), 7));
        assert!(!is_member(f, &Partition::from_parts(vec![3, 2]), 6));
        let d = FamilyCode::ED_OD;
        assert!(!is_member(d, &Partition::from_parts(vec![3, 3]), 6));
        assert!(!is_member(d, &Partition::from_parts(vec![2, 2]), 4));
        assert!(is_member(d, &Partition::from_parts(vec![3, 2]), 5));
    }

    #[test]
    fn part_editing() {
        let p = Partition::from_parts(vec![1, 5, 3]);
        assert_eq!(p.parts(), &[5, 3, 1]);
        assert_eq!(p.with_part(3).parts(), &[5, 3, 3, 1]);
        assert_eq!(p.without_part(5).unwrap().parts(), &[3, 1]);
        assert!(p.without_part(2).is_none());
        assert_eq!(p.to_string(), "(5,3,1)");
    }
}
