//! The constructive injections behind the monotonicity statements, checked
//! by applying them to every enumerated partition.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{FamilyCode, Parity};
use crate::oracle::{self, Partition};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectionMap {
    /// Largest part plus 2, `() -> (2)`; every family, shift 2.
    Step2,
    /// Adjoin a part 1; ou^eu and ou^ed.
    AddOne,
    /// Largest even part plus 1, or adjoin 1 if there is none; ed^ou and eu^ou.
    BumpLargestEven,
    /// Adjoin 1 if absent, otherwise trade a 1 and the largest part for the
    /// largest part plus 2; od^eu and od^ed, `n >= 2`.
    OneOrGrow,
}

impl InjectionMap {
    pub const ALL: [InjectionMap; 4] = [
        InjectionMap::Step2,
        InjectionMap::AddOne,
        InjectionMap::BumpLargestEven,
        InjectionMap::OneOrGrow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InjectionMap::Step2 => "step2",
            InjectionMap::AddOne => "add-one",
            InjectionMap::BumpLargestEven => "bump-largest-even",
            InjectionMap::OneOrGrow => "one-or-grow",
        }
    }

    pub fn shift(self) -> u32 {
        match self {
            InjectionMap::Step2 => 2,
            _ => 1,
        }
    }

    pub fn families(self) -> &'static [FamilyCode] {
        match self {
            InjectionMap::Step2 => &FamilyCode::ALL,
            InjectionMap::AddOne => &[FamilyCode::OU_EU, FamilyCode::OU_ED],
            InjectionMap::BumpLargestEven => &[FamilyCode::ED_OU, FamilyCode::EU_OU],
            InjectionMap::OneOrGrow => &[FamilyCode::OD_EU, FamilyCode::OD_ED],
        }
    }

    /// Smallest `n` on which the map is defined.
    pub fn min_n(self) -> u32 {
        match self {
            InjectionMap::OneOrGrow => 2,
            _ => 0,
        }
    }

    pub fn apply(self, lambda: &Partition) -> Result<Partition> {
        Ok(match self {
            InjectionMap::Step2 => apply_step2(lambda),
            InjectionMap::AddOne => apply_add_one(lambda),
            InjectionMap::BumpLargestEven => apply_bump_largest_even(lambda),
            InjectionMap::OneOrGrow => apply_one_or_grow(lambda)?,
        })
    }
}

impl fmt::Display for InjectionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InjectionMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InjectionMap::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown map {s:?}")))
    }
}

pub fn apply_step2(lambda: &Partition) -> Partition {
    match lambda.largest() {
        None => Partition::from_parts(vec![2]),
        Some(l1) => lambda
            .without_part(l1)
            .expect("largest part is present")
            .with_part(l1 + 2),
    }
}

pub fn apply_add_one(lambda: &Partition) -> Partition {
    lambda.with_part(1)
}

/// Removes one copy of the largest even part `e` and inserts `e + 1`.
pub fn apply_bump_largest_even(lambda: &Partition) -> Partition {
    match lambda
        .parts()
        .iter()
        .copied()
        .find(|&p| Parity::of(p) == Parity::Even)
    {
        Some(e) => lambda
            .without_part(e)
            .expect("part is present")
            .with_part(e + 1),
        None => lambda.with_part(1),
    }
}

/// Requires `|lambda| >= 2`, so that the largest part exceeds 1.
pub fn apply_one_or_grow(lambda: &Partition) -> Result<Partition> {
    if lambda.size() < 2 {
        return Err(Error::Precondition(format!(
            "one-or-grow needs n >= 2, got {lambda} of size {}",
            lambda.size()
        )));
    }
    if !lambda.contains(1) {
        return Ok(lambda.with_part(1));
    }
    let l1 = lambda.largest().expect("nonempty");
    let rest = lambda.without_part(1).expect("contains 1");
    Ok(rest
        .without_part(l1)
        .expect("largest part is present")
        .with_part(l1 + 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `image` is not a partition of `n + shift` in the family.
    NotInTarget { source: Vec<u32>, image: Vec<u32> },
    /// Two sources share an image.
    Collision {
        first: Vec<u32>,
        second: Vec<u32>,
        image: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub map: String,
    pub family: FamilyCode,
    pub n: u32,
    pub shift: u32,
    pub domain_size: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub witnesses: Vec<Witness>,
}

impl InjectionReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.injective
    }
}

/// Applies `f` to every element of the family at `n` and checks that each
/// image lies in the family at `n + shift` and that no two images coincide.
pub fn verify_map<F>(
    name: &str,
    f: F,
    family: FamilyCode,
    n: u32,
    shift: u32,
) -> Result<InjectionReport>
where
    F: Fn(&Partition) -> Result<Partition>,
{
    let domain = oracle::enumerate(family, n);
    let mut witnesses = Vec::new();
    let mut seen: HashMap<Partition, Partition> = HashMap::with_capacity(domain.len());
    let mut well_defined = true;
    let mut injective = true;
    for lambda in &domain {
        let image = f(lambda)?;
        if !oracle::is_member(family, &image, n + shift) {
            well_defined = false;
            witnesses.push(Witness::NotInTarget {
                source: lambda.parts().to_vec(),
                image: image.parts().to_vec(),
            });
        }
        if let Some(first) = seen.get(&image) {
            injective = false;
            witnesses.push(Witness::Collision {
                first: first.parts().to_vec(),
                second: lambda.parts().to_vec(),
                image: image.parts().to_vec(),
            });
        } else {
            seen.insert(image, lambda.clone());
        }
    }
    Ok(InjectionReport {
        map: name.to_string(),
        family,
        n,
        shift,
        domain_size: domain.len(),
        well_defined,
        injective,
        witnesses,
    })
}

pub fn verify_injection(map: InjectionMap, family: FamilyCode, n: u32) -> Result<InjectionReport> {
    if !map.families().contains(&family) {
        return Err(Error::Precondition(format!(
            "{map} does not apply to {family}"
        )));
    }
    if n < map.min_n() {
        return Err(Error::Precondition(format!(
            "{map} needs n >= {}",
            map.min_n()
        )));
    }
    verify_map(map.name(), |l| map.apply(l), family, n, map.shift())
}

/// Every applicable `(map, family, n)` with `n <= bound`, in parallel over
/// the triples.
pub fn verify_all(bound: u32) -> Result<Vec<InjectionReport>> {
    let mut jobs = Vec::new();
    for map in InjectionMap::ALL {
        for &family in map.families() {
            for n in map.min_n()..=bound {
                jobs.push((map, family, n));
            }
        }
    }
    par::map(&jobs, |&(m, f, n)| verify_injection(m, f, n))
        .into_iter()
        .collect()
}

/// A place where a family's count drops: `count(n) > count(n + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decrease {
    pub family: FamilyCode,
    pub n: u32,
    pub count_n: u64,
    pub count_next: u64,
}

/// First decrease of the enumerated counts below `bound`, if any.
pub fn first_decrease(family: FamilyCode, bound: u32) -> Option<Decrease> {
    let counts = oracle::counts(family, bound);
    counts
        .windows(2)
        .position(|w| w[0] > w[1])
        .map(|i| Decrease {
            family,
            n: i as u32,
            count_n: counts[i],
            count_next: counts[i + 1],
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec())
    }

    #[test]
    fn step2_examples() {
        assert_eq!(apply_step2(&Partition::empty()), p(&[2]));
        assert_eq!(apply_step2(&p(&[3, 1])), p(&[5, 1]));
        assert_eq!(apply_step2(&p(&[4, 4, 2])), p(&[6, 4, 2]));
    }

    #[test]
    fn add_one_examples() {
        assert_eq!(apply_add_one(&Partition::empty()), p(&[1]));
        assert_eq!(apply_add_one(&p(&[2, 1, 1])), p(&[2, 1, 1, 1]));
    }

    #[test]
    fn bump_examples() {
        assert_eq!(apply_bump_largest_even(&p(&[5, 2])), p(&[5, 3]));
        assert_eq!(apply_bump_largest_even(&p(&[3, 1])), p(&[3, 1, 1]));
        // repeated largest even part: one copy moves
        assert_eq!(apply_bump_largest_even(&p(&[5, 4, 4, 2])), p(&[5, 5, 4, 2]));
    }

    #[test]
    fn one_or_grow_examples() {
        assert_eq!(apply_one_or_grow(&p(&[3])).unwrap(), p(&[3, 1]));
        assert_eq!(apply_one_or_grow(&p(&[3, 1])).unwrap(), p(&[5]));
        assert_eq!(apply_one_or_grow(&p(&[6, 4, 1])).unwrap(), p(&[8, 4]));
        assert!(matches!(
            apply_one_or_grow(&p(&[1])),
            Err(Error::Precondition(_))
        ));
        assert!(apply_one_or_grow(&Partition::empty()).is_err());
    }

    #[test]
    fn step2_on_eu_od_4() {
        let r = verify_injection(InjectionMap::Step2, FamilyCode::EU_OD, 4).unwrap();
        assert_eq!(r.domain_size, 3);
        assert!(r.passed());
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn bump_on_eu_ou_12_has_30_images() {
        let r = verify_injection(InjectionMap::BumpLargestEven, FamilyCode::EU_OU, 12).unwrap();
        assert_eq!(r.domain_size, 30);
        assert!(r.passed());
    }

    #[test]
    fn inapplicable_pairs_rejected() {
        assert!(verify_injection(InjectionMap::AddOne, FamilyCode::EU_OU, 5).is_err());
        assert!(verify_injection(InjectionMap::OneOrGrow, FamilyCode::OD_EU, 1).is_err());
    }

    #[test]
    fn bump_smallest_even_leaves_the_family() {
        let bump_smallest = |l: &Partition| -> Result<Partition> {
            Ok(
                match l.parts().iter().rev().copied().find(|&q| q % 2 == 0) {
                    Some(e) => l.without_part(e).unwrap().with_part(e + 1),
                    None => l.with_part(1),
                },
            )
        };
        let r = verify_map("bump-smallest-even", bump_smallest, FamilyCode::EU_OU, 6, 1).unwrap();
        assert!(!r.well_defined);
        assert!(r.witnesses.contains(&Witness::NotInTarget {
            source: vec![4, 2],
            image: vec![4, 3],
        }));
        // the six images are still pairwise distinct
        assert!(r.injective);
    }

    #[test]
    fn collapsing_map_is_caught() {
        let collapse = |l: &Partition| Ok(Partition::from_parts(vec![l.size() + 1]));
        let r = verify_map("collapse", collapse, FamilyCode::EU_OU, 6, 1).unwrap();
        assert!(!r.injective);
        assert!(r
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::Collision { .. })));
    }

    #[test]
    fn decrease_witnesses() {
        let d = first_decrease(FamilyCode::EU_OD, 20).unwrap();
        assert_eq!((d.n, d.count_n, d.count_next), (4, 3, 2));
        let d = first_decrease(FamilyCode::ED_OD, 20).unwrap();
        assert_eq!((d.n, d.count_n, d.count_next), (6, 3, 2));
        assert!(first_decrease(FamilyCode::OU_EU, 25).is_none());
    }

    #[test]
    fn map_names_round_trip() {
        for m in InjectionMap::ALL {
            assert_eq!(m.name().parse::<InjectionMap>().unwrap(), m);
        }
    }
}
