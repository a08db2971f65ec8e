mod support;

use proptest::prelude::*;
use rand::Rng;
use rspin::spin_core::{arf_from_chain, SurfaceSig, WindingState};
use support::*;

fn moduli() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![0i64, 2, 3, 4, 6])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn push_equals_parallel_twist_composite(seed in any::<u64>(), genus in 1usize..=4, boundary in 1usize..=3, r in moduli()) {
        let mut rng = rng(seed);
        let state = random_state(&mut rng, genus, boundary, r, false);
        let beta = random_class(&mut rng, state.dim());
        let idx = rng.gen_range(0..boundary);
        let w_left = rng.gen_range(-5..=5);
        prop_assert_eq!(state.point_push(&beta, idx).unwrap(), push_by_composite(&state, &beta, idx, w_left));
    }

    #[test]
    fn lantern_word_matches_boundary_product(seed in any::<u64>(), genus in 3usize..=5, boundary in 1usize..=2) {
        let mut rng = rng(seed);
        let state = random_state(&mut rng, genus, boundary, 0, false);
        let (inner, outer) = lantern_pair(&state);
        prop_assert_eq!(inner, outer);
    }

    #[test]
    fn reversal_commutes_with_twisting(seed in any::<u64>(), genus in 1usize..=3, r in moduli()) {
        let mut rng = rng(seed);
        let state = random_state(&mut rng, genus, 2, r, false);
        let about = state.marked[rng.gen_range(0..state.marked.len())].clone();
        let k = rng.gen_range(-3..=3);
        prop_assert_eq!(state.apply_twist(&about, k).unwrap(), state.apply_twist(&about.reversed(), k).unwrap());

        let mut flipped = state.clone();
        let i = rng.gen_range(0..flipped.marked.len());
        flipped.marked[i] = flipped.marked[i].reversed();
        let mut got = flipped.apply_twist(&about, k).unwrap().marked[i].clone();
        let mut expected = state.apply_twist(&about, k).unwrap().marked[i].reversed();
        got.winding = state.sig.norm(got.winding);
        expected.winding = state.sig.norm(expected.winding);
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn repeated_twist_equals_power(seed in any::<u64>(), genus in 1usize..=3, r in moduli(), k in -4i64..=4) {
        let mut rng = rng(seed);
        let state = random_state(&mut rng, genus, 1, r, false);
        let about = state.marked[rng.gen_range(0..state.marked.len())].clone();
        let mut step = state.clone();
        let single = if k >= 0 { 1 } else { -1 };
        for _ in 0..k.abs() {
            step = step.apply_twist(&about, single).unwrap();
        }
        prop_assert_eq!(step, state.apply_twist(&about, k).unwrap());
    }

    #[test]
    fn moves_preserve_declared_coherence(seed in any::<u64>(), genus in 2usize..=4, boundary in 1usize..=3, r in moduli()) {
        let mut rng = rng(seed);
        let mut state = random_state(&mut rng, genus, boundary, r, false);
        let rho = state.signature_gcd().unwrap();
        for _ in 0..8 {
            if rng.gen_bool(0.5) {
                let about = state.marked[rng.gen_range(0..state.marked.len())].clone();
                state = state.apply_twist(&about, rng.gen_range(-2..=2)).unwrap();
            } else {
                let beta = random_class(&mut rng, state.dim());
                state = state.point_push(&beta, rng.gen_range(0..boundary)).unwrap();
            }
            prop_assert!(state.check_constraints().unwrap().iter().all(|&ok| ok));
            prop_assert_eq!(state.signature_gcd().unwrap(), rho);
        }
    }

    #[test]
    fn arf_constant_under_admissible_moves(seed in any::<u64>(), genus in 2usize..=4, r in prop::sample::select(vec![0i64, 2, 4])) {
        let mut rng = rng(seed);
        let mut state = random_state(&mut rng, genus, 2, r, true);
        // Random extras carry arbitrary windings, so only genuine curves stay.
        state.marked.retain(|c| !c.name.starts_with('x'));
        // Scramble with arbitrary twists; the result is still a consistent state.
        for _ in 0..4 {
            let about = state.marked[rng.gen_range(0..state.marked.len())].clone();
            state = state.apply_twist(&about, 1).unwrap();
        }
        let reference = state.arf().unwrap();
        // Force one boundary to -1 so pushes there are admissible.
        let mut pushed_state = state.clone();
        let marks = pushed_state.boundary_indices();
        let shift = pushed_state.marked[marks[0]].winding + 1;
        pushed_state.marked[marks[0]].winding = pushed_state.sig.norm(-1);
        pushed_state.marked[marks[1]].winding = pushed_state.sig.norm(pushed_state.marked[marks[1]].winding + shift);
        let pushed_reference = pushed_state.arf().unwrap();
        for _ in 0..10 {
            let admissible: Vec<_> = state.marked.iter().filter(|c| c.winding == 0).cloned().collect();
            if let Some(c) = admissible.first() {
                state = state.apply_twist(c, rng.gen_range(-2..=2)).unwrap();
            }
            let beta = random_class(&mut rng, pushed_state.dim());
            pushed_state = pushed_state.point_push(&beta, 0).unwrap();
            prop_assert_eq!(state.arf().unwrap(), reference);
            prop_assert_eq!(pushed_state.arf().unwrap(), pushed_reference);
        }
    }
}

#[test]
fn genus_two_zero_chain_reference() {
    let s = WindingState::standard(SurfaceSig::new(2, 0, 2).unwrap(), &[0; 4], &[]).unwrap();
    assert_eq!(s.arf().unwrap(), 1);
    assert_eq!(arf_from_chain(&[0; 4]), arf_by_zero_count(2, &[1, 1, 1, 1]));
}

#[test]
fn chain_arf_matches_zero_count_oracle() {
    for genus in 1..=4usize {
        for bits in 0u32..(1 << (2 * genus)) {
            let values: Vec<i64> = (0..2 * genus).map(|i| ((bits >> i) & 1) as i64).collect();
            let q: Vec<u8> = values.iter().map(|v| ((v + 1) % 2) as u8).collect();
            assert_eq!(
                arf_from_chain(&values),
                arf_by_zero_count(genus, &q),
                "{values:?}"
            );
        }
    }
}
