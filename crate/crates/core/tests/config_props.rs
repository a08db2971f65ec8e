mod support;

use proptest::prelude::*;
use rspin::configurations::*;
use support::{forest_matching, random_tree, rng};

/// Tree oracle: the intersection form on the curves has rank twice the
/// matching number, which is twice the genus of the neighborhood.
fn tree_oracle(c: &RibbonConfig) -> NeighborhoodInvariants {
    let n = c.nodes.len();
    let genus = forest_matching(n, &c.edges);
    NeighborhoodInvariants {
        euler: -(n as i64 - 1),
        boundary_components: n + 1 - 2 * genus,
        genus,
    }
}

fn chain(len: usize) -> RibbonConfig {
    let mut c = RibbonConfig::default();
    for i in 0..len {
        c.add_curve(format!("c{}", i + 1), Some(0));
    }
    for i in 1..len {
        c.add_crossing(i - 1, i);
    }
    c.order = Some((0..len).collect());
    c
}

#[test]
fn chains_match_closed_form() {
    for len in 2..=8 {
        let inv = chain(len).neighborhood_invariants().unwrap();
        assert_eq!(inv.euler, -(len as i64 - 1));
        assert_eq!(inv.genus, len / 2);
        assert_eq!(inv.boundary_components, if len % 2 == 0 { 1 } else { 2 });
    }
}

fn feasible() -> Vec<(usize, i64, usize)> {
    let mut out = Vec::new();
    for g in 3..=16usize {
        for r in 1..=(2 * g as i64 - 2) {
            let total = 2 * g as i64 - 2;
            if total % r == 0 && total / r >= 2 {
                out.push((g, r, (total / r) as usize));
            }
        }
    }
    out
}

#[test]
fn induction_configs_have_constant_signature() {
    for (g, r, n) in feasible() {
        let kinds: &[CoreKind] = if r % 2 == 0 && g >= 4 {
            &[CoreKind::A, CoreKind::B]
        } else {
            &[CoreKind::A]
        };
        for &kind in kinds {
            let ind = build_induction_config(g, r, n, kind)
                .unwrap_or_else(|e| panic!("{g} {r} {n} {kind:?}: {e}"));
            assert_eq!(ind.config.nodes.len(), 2 * g + n - 1);
            assert_eq!(ind.boundary_windings, vec![-r - 1; n]);
            assert!(ind.config.nodes.iter().all(|c| c.winding == Some(0)));
            assert_eq!(ind.propagated.len(), n - 1);
            let report = assemblage_check(&ind.config, g, 1).unwrap();
            assert_eq!(report.h, g);
            assert!(report.type_e, "g={g} r={r} {kind:?}");
            assert_eq!(
                ind.config.neighborhood_invariants().unwrap(),
                tree_oracle(&ind.config)
            );
            assert_eq!(
                ind.special_case,
                r == 2 && kind == CoreKind::B && g % 2 == 1
            );
        }
    }
}

/// Arf invariant of the mod-2 form on the span of tree curves with q = 1 on
/// every curve; None when a radical vector has q = 1.
fn tree_arf(n: usize, edges: &[[usize; 2]]) -> Option<u8> {
    let mut adj = vec![0u128; n];
    for &[a, b] in edges {
        adj[a] ^= 1 << b;
        adj[b] ^= 1 << a;
    }
    let bil = |x: u128, y: u128| -> u8 {
        let mut s = 0;
        for (i, &row) in adj.iter().enumerate().take(n) {
            if (x >> i) & 1 == 1 {
                s ^= ((row & y).count_ones() & 1) as u8;
            }
        }
        s
    };
    let q = |x: u128| -> u8 {
        let mut s = (x.count_ones() & 1) as u8;
        for &[a, b] in edges {
            s ^= (((x >> a) & (x >> b)) & 1) as u8;
        }
        s
    };
    let mut pool: Vec<u128> = (0..n).map(|i| 1u128 << i).collect();
    let mut arf = 0;
    while let Some(a) = pool.pop() {
        let Some(j) = pool.iter().position(|&y| bil(a, y) == 1) else {
            if q(a) == 1 {
                return None;
            }
            continue;
        };
        let b = pool.remove(j);
        arf ^= q(a) & q(b);
        for y in &mut pool {
            let mut z = *y;
            if bil(*y, b) == 1 {
                z ^= a;
            }
            if bil(*y, a) == 1 {
                z ^= b;
            }
            *y = z;
        }
    }
    Some(arf)
}

#[test]
fn type_b_flips_the_arf_invariant() {
    for (g, r, n) in feasible() {
        if r % 2 == 1 || g < 4 {
            continue;
        }
        let a = build_induction_config(g, r, n, CoreKind::A).unwrap().config;
        let b = build_induction_config(g, r, n, CoreKind::B).unwrap().config;
        let (arf_a, arf_b) = (
            tree_arf(a.nodes.len(), &a.edges),
            tree_arf(b.nodes.len(), &b.edges),
        );
        assert!(arf_a.is_some() && arf_b.is_some(), "g={g} r={r}");
        assert_ne!(arf_a, arf_b, "g={g} r={r}");
    }
}

#[test]
fn special_case_example_passes() {
    let ind = build_induction_config(5, 2, 4, CoreKind::B).unwrap();
    assert!(ind.special_case);
    assert_eq!(ind.relocated, vec!["b3"]);
    assert!(assemblage_check(&ind.config, 0, 0).unwrap().ok);
}

proptest! {
    #[test]
    fn tree_neighborhoods_match_matching_oracle(seed in any::<u64>(), n in 1usize..12) {
        let c = random_tree(&mut rng(seed), n);
        prop_assert_eq!(c.neighborhood_invariants().unwrap(), tree_oracle(&c));
    }

    #[test]
    fn boundary_windings_sum_to_euler(seed in any::<u64>(), n in 1usize..12, extra in 0usize..3) {
        let mut r = rng(seed);
        let mut c = random_tree(&mut r, n);
        // Extra crossings make cycles; the sum rule still holds.
        for _ in 0..extra {
            use rand::Rng;
            let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
            if a != b {
                c.add_crossing(a, b);
            }
        }
        let faces = c.face_windings().unwrap();
        let total: i64 = faces.iter().map(|f| f.winding).sum();
        prop_assert_eq!(total, -(c.edges.len() as i64));
        let inv = c.component_invariants();
        prop_assert_eq!(inv.iter().map(|i| i.boundary_components).sum::<usize>(), faces.len());
    }

    #[test]
    fn rotating_cyclic_orders_keeps_windings(seed in any::<u64>(), n in 2usize..10, shift in 1usize..4) {
        let c = random_tree(&mut rng(seed), n);
        let mut rotated = c.clone();
        for order in &mut rotated.cyclic {
            if !order.is_empty() {
                let k = shift % order.len();
                order.rotate_left(k);
            }
        }
        let sorted = |c: &RibbonConfig| {
            let mut v: Vec<i64> = c.face_windings().unwrap().iter().map(|f| f.winding).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(sorted(&c), sorted(&rotated));
    }

    #[test]
    fn assemblage_stages_are_monotone(seed in any::<u64>(), n in 2usize..12) {
        let c = random_tree(&mut rng(seed), n);
        let report = assemblage_check(&c, 0, 0).unwrap();
        for pair in report.stages.windows(2) {
            let (a, b) = (pair[0].invariants, pair[1].invariants);
            prop_assert_eq!(b.euler, a.euler - 1);
            prop_assert!(b.genus >= a.genus);
            prop_assert_eq!(a.boundary_components.abs_diff(b.boundary_components), 1);
        }
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), n in 1usize..10) {
        let c = random_tree(&mut rng(seed), n);
        prop_assert_eq!(RibbonConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn propagated_labels_satisfy_constraints(seed in any::<u64>(), n in 2usize..8) {
        use rand::Rng;
        let mut r = rng(seed);
        let truth = random_tree(&mut r, n);
        let mut partial = truth.clone();
        for node in &mut partial.nodes {
            if r.gen_bool(0.5) {
                node.winding = None;
            }
        }
        let constraints: Vec<LinearConstraint> = truth
            .trace_faces()
            .into_iter()
            .map(|f| {
                let value = f.offset + f.coeffs.iter().map(|(&c, &k)| k * truth.nodes[c].winding.unwrap()).sum::<i64>();
                LinearConstraint { terms: f.coeffs.iter().map(|(&c, &k)| (truth.nodes[c].name.clone(), k)).collect(), value: value - f.offset }
            })
            .collect();
        let out = propagate_admissibility(&partial, &constraints).unwrap();
        for (got, want) in out.config.nodes.iter().zip(&truth.nodes) {
            if let Some(w) = got.winding {
                prop_assert_eq!(Some(w), want.winding);
            }
        }
    }
}
