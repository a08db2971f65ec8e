use proptest::prelude::*;
use rspin::numerology::{enumerate_reduced, Multidegree, Regime};

/// Every multidegree with entries in `1..=max_entry` and length `1..=max_len`,
/// listed in canonical (descending) form without repeats.
fn all_multidegrees(max_entry: i64, max_len: usize) -> Vec<Multidegree> {
    fn walk(prefix: &mut Vec<i64>, cap: i64, max_len: usize, out: &mut Vec<Multidegree>) {
        for e in 1..=cap {
            prefix.push(e);
            out.push(Multidegree::new(prefix).unwrap());
            if prefix.len() < max_len {
                walk(prefix, e, max_len, out);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(&mut Vec::new(), max_entry, max_len, &mut out);
    out
}

/// Genus from the Euler characteristic of a smooth complete intersection:
/// 2g - 2 = Π·(Σ - n - 1), computed without going through `r_index`.
fn genus_oracle(d: &[i64]) -> i64 {
    let n = d.len() as i64 + 1;
    let twice_minus_two = d.iter().product::<i64>() * (d.iter().sum::<i64>() - n - 1);
    if twice_minus_two < -2 {
        0
    } else {
        (twice_minus_two + 2) / 2
    }
}

#[test]
fn no_multidegree_has_genus_two() {
    let offenders: Vec<_> = all_multidegrees(8, 5)
        .into_iter()
        .filter(|d| d.genus() == 2)
        .collect();
    assert!(offenders.is_empty(), "{offenders:?}");
}

#[test]
fn gluing_identity_holds_on_small_box() {
    for d in all_multidegrees(6, 4) {
        let (plus, prime, n) = d.induction_data();
        assert_eq!(
            plus.genus(),
            d.genus() + prime.genus() + n - 1,
            "d={d} plus={plus} prime={prime}"
        );
    }
}

#[test]
fn reduced_r_index_grows_with_dimension() {
    for d in all_multidegrees(8, 5)
        .into_iter()
        .filter(|d| d.is_reduced())
    {
        if d.ambient_dim() >= 4 {
            assert!(d.r_index() >= d.ambient_dim() - 3, "{d}");
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let (max_genus, max_r) = (10, 2);
    let listed: Vec<Multidegree> = enumerate_reduced(max_genus, max_r)
        .unwrap()
        .into_iter()
        .map(|row| row.degrees)
        .collect();
    let mut brute: Vec<Multidegree> = all_multidegrees(10, 4)
        .into_iter()
        .filter(|d| d.is_reduced() && (d.genus() <= max_genus || d.r_index() <= max_r))
        .collect();
    brute.sort();
    let mut sorted = listed.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), listed.len(), "duplicates in enumeration");
    assert_eq!(sorted, brute);
    assert!(listed.contains(&Multidegree::new(&[3, 3]).unwrap()));
}

proptest! {
    #[test]
    fn genus_matches_euler_oracle(d in prop::collection::vec(1i64..=8, 1..=5)) {
        let m = Multidegree::new(&d).unwrap();
        prop_assert_eq!(m.genus(), genus_oracle(&d));
    }

    #[test]
    fn regime_agrees_with_invariants(d in prop::collection::vec(1i64..=8, 1..=5)) {
        let inv = Multidegree::new(&d).unwrap().invariants();
        let expected = match inv.r_index {
            r if r < 0 => Regime::Genus0,
            0 => Regime::Genus1,
            _ => Regime::General,
        };
        prop_assert_eq!(inv.regime, expected);
        if inv.r_index == 0 {
            prop_assert_eq!(inv.genus, 1);
        }
        if inv.r_index >= 1 {
            prop_assert!(inv.genus >= 2);
        }
    }

    #[test]
    fn ordering_is_irrelevant(mut d in prop::collection::vec(1i64..=8, 1..=5), seed in any::<u64>()) {
        let a = Multidegree::new(&d).unwrap();
        let len = d.len();
        d.rotate_left((seed as usize) % len);
        prop_assert_eq!(a, Multidegree::new(&d).unwrap());
    }
}
