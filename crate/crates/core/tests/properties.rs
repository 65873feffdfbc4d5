use std::collections::HashSet;
use std::sync::OnceLock;

use parity_partitions::catalog::Catalog;
use parity_partitions::injections::InjectionMap;
use parity_partitions::oracle::{self, is_member};
use parity_partitions::{FamilyCode, SeriesQ};
use proptest::prelude::*;

const BOUND: usize = 30;

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::build_all(BOUND).unwrap())
}

fn family() -> impl Strategy<Value = FamilyCode> {
    (0..FamilyCode::ALL.len()).prop_map(|i| FamilyCode::ALL[i])
}

fn unit_series() -> impl Strategy<Value = SeriesQ> {
    prop::collection::vec(-50i64..50, 1..40).prop_map(|mut c| {
        c[0] = 1;
        SeriesQ::from_i64s(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_matches_enumeration(f in family(), n in 0u32..BOUND as u32) {
        let coeff = catalog().coefficient(f, n as usize).unwrap().to_u64().unwrap();
        prop_assert_eq!(coeff, oracle::count(f, n));
    }

    #[test]
    fn enumeration_is_duplicate_free_and_closed(f in family(), n in 0u32..22) {
        let all = oracle::enumerate(f, n);
        let distinct: HashSet<_> = all.iter().collect();
        prop_assert_eq!(distinct.len(), all.len());
        prop_assert!(all.iter().all(|p| is_member(f, p, n)));
    }

    #[test]
    fn maps_land_in_family_and_separate(
        m in 0..InjectionMap::ALL.len(),
        pick in 0usize..8,
        n in 2u32..22,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let map = InjectionMap::ALL[m];
        let families = map.families();
        let f = families[pick % families.len()];
        let domain = oracle::enumerate(f, n);
        prop_assume!(!domain.is_empty());
        let a = &domain[i.index(domain.len())];
        let b = &domain[j.index(domain.len())];
        let ia = map.apply(a).unwrap();
        prop_assert!(is_member(f, &ia, n + map.shift()), "{} {} -> {}", map, a, ia);
        if a != b {
            prop_assert_ne!(ia, map.apply(b).unwrap());
        }
    }

    #[test]
    fn inverse_is_two_sided(s in unit_series()) {
        let inv = s.inv().unwrap();
        prop_assert_eq!(s.mul(&inv), SeriesQ::one(s.order()));
        prop_assert_eq!(inv.inv().unwrap(), s);
    }

    #[test]
    fn negating_q_is_an_involution(s in unit_series(), t in unit_series()) {
        prop_assert_eq!(s.negate_q().negate_q(), s.clone());
        let order = s.order().min(t.order());
        let (s, t) = (s.truncate(order), t.truncate(order));
        prop_assert_eq!(s.mul(&t).negate_q(), s.negate_q().mul(&t.negate_q()));
    }

    #[test]
    fn parity_halves_interleave(s in unit_series()) {
        let even = s.subseq(2, 0).unwrap();
        let odd = s.subseq(2, 1).unwrap();
        for (n, c) in s.coeffs().iter().enumerate() {
            let half = if n % 2 == 0 { &even } else { &odd };
            prop_assert_eq!(c, half.coeff(n / 2).unwrap());
        }
    }
}
