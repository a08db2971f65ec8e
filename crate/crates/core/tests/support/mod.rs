//! Random fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rspin::spin_core::{Constraint, SurfaceSig, TrackedCurve, WindingState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Boundary values summing to the Euler characteristic, odd when `odd` is set.
fn boundary_values(rng: &mut ChaCha8Rng, sig: SurfaceSig, odd: bool) -> Vec<i64> {
    let b = sig.boundary;
    if b == 0 {
        return Vec::new();
    }
    loop {
        let mut values: Vec<i64> = (0..b - 1)
            .map(|_| {
                let v = rng.gen_range(-4i64..=3);
                if odd {
                    2 * v + 1
                } else {
                    v
                }
            })
            .collect();
        let last = sig.euler() - values.iter().sum::<i64>();
        values.push(last);
        if !odd || last.rem_euclid(2) == 1 {
            return values;
        }
    }
}

/// Standard state plus the pants curve `c0` with `[c0] = [c1] + [c3]`, a
/// declared pants constraint, and a few extra tracked curves of random class.
pub fn random_state(
    rng: &mut ChaCha8Rng,
    genus: usize,
    boundary: usize,
    r: i64,
    odd: bool,
) -> WindingState {
    let sig = SurfaceSig::new(genus, boundary, r).expect("valid signature");
    let chain: Vec<i64> = (0..2 * genus).map(|_| rng.gen_range(-5..=5)).collect();
    let bvals = boundary_values(rng, sig, odd);
    let mut state = WindingState::standard(sig, &chain, &bvals).expect("coherent");
    let dim = state.dim();
    if genus >= 2 {
        let mut h = vec![0; dim];
        h[0] = 1;
        h[2] = 1;
        let w = sig.norm(state.marked[0].winding + state.marked[2].winding - 1);
        state.marked.push(TrackedCurve::new("c0", h, w));
        state.constraints.push(Constraint {
            curves: vec!["-c1".into(), "-c3".into(), "c0".into()],
            chi: -1,
        });
    }
    for k in 0..3 {
        let h: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        let w = sig.norm(rng.gen_range(-6..=6));
        state.marked.push(TrackedCurve::new(format!("x{k}"), h, w));
    }
    state
}

pub fn random_class(rng: &mut ChaCha8Rng, dim: usize) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-3..=3)).collect()
}

/// Point push evaluated as `T_{beta_R} T_{beta_L}^{-1}` with explicitly built parallel copies.
pub fn push_by_composite(
    state: &WindingState,
    beta: &[i64],
    boundary_index: usize,
    w_left: i64,
) -> WindingState {
    let d = state.marked[state.boundary_indices()[boundary_index]].clone();
    let left = TrackedCurve::new("beta_L", beta.to_vec(), state.sig.norm(w_left));
    let right_class: Vec<i64> = beta.iter().zip(&d.homology).map(|(b, x)| b - x).collect();
    let right = TrackedCurve::new(
        "beta_R",
        right_class,
        state.sig.norm(w_left - d.winding - 1),
    );
    // The parallel copies and d bound a pair of pants.
    assert!(rspin::spin_core::coherence_check(
        &[right.clone(), left.reversed(), d],
        -1,
        state.sig.r
    ));
    state
        .apply_twist(&left, -1)
        .unwrap()
        .apply_twist(&right, 1)
        .unwrap()
}

/// Lantern relation in a 4-holed sphere bounded by `c1, c3, c5` and a fourth
/// curve: returns the states after `T_x T_y T_z` and after the four boundary twists.
pub fn lantern_pair(state: &WindingState) -> (WindingState, WindingState) {
    let dim = state.dim();
    let class = |idx: &[usize], sign: i64| {
        let mut v = vec![0; dim];
        for &i in idx {
            v[i] = sign;
        }
        v
    };
    let phi = |i: usize| state.marked[i].winding;
    let (p1, p2, p3) = (phi(0), phi(2), phi(4));
    let norm = |v: i64| state.sig.norm(v);
    let d1 = state.marked[0].clone();
    let d2 = state.marked[2].clone();
    let d3 = state.marked[4].clone();
    let d4 = TrackedCurve::new("d4", class(&[0, 2, 4], -1), norm(-2 - p1 - p2 - p3));
    let x = TrackedCurve::new("x", class(&[0, 2], -1), norm(-1 - p1 - p2));
    let y = TrackedCurve::new("y", class(&[2, 4], -1), norm(-1 - p2 - p3));
    let z = TrackedCurve::new("z", class(&[0, 4], -1), norm(-1 - p1 - p3));
    let r = state.sig.r;
    use rspin::spin_core::coherence_check as coh;
    assert!(coh(
        &[d1.clone(), d2.clone(), d3.clone(), d4.clone()],
        -2,
        r
    ));
    assert!(coh(&[d1.clone(), d2.clone(), x.clone()], -1, r));

    let mut inner = state.clone();
    for c in [&z, &y, &x] {
        inner = inner.apply_twist(c, 1).unwrap();
    }
    let mut outer = state.clone();
    for c in [&d4, &d3, &d2, &d1] {
        outer = outer.apply_twist(c, 1).unwrap();
    }
    (inner, outer)
}

/// Independent orbit oracle: Arf of every quadratic refinement of the chain
/// form mod 2, by counting zeros of `q` over all of `F_2^{2g}`.
pub fn arf_by_zero_count(genus: usize, q_on_chain: &[u8]) -> u8 {
    let n = 2 * genus;
    let mut zeros = 0u64;
    for x in 0u32..(1 << n) {
        let bit = |i: usize| ((x >> i) & 1) as u8;
        let mut q = 0u8;
        for (i, &qi) in q_on_chain.iter().enumerate().take(n) {
            q ^= bit(i) & qi;
        }
        for i in 0..n - 1 {
            q ^= bit(i) & bit(i + 1);
        }
        if q == 0 {
            zeros += 1;
        }
    }
    let even = (1u64 << (genus - 1)) * ((1u64 << genus) + 1);
    if zeros == even {
        0
    } else {
        assert_eq!(zeros, (1u64 << (genus - 1)) * ((1u64 << genus) - 1));
        1
    }
}

/// Random tree configuration on `n` curves with shuffled cyclic orders,
/// random crossing signs and random windings; the order is a BFS order.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> rspin::configurations::RibbonConfig {
    use rand::seq::SliceRandom;
    let mut c = rspin::configurations::RibbonConfig::default();
    for i in 0..n {
        c.add_curve(format!("x{i}"), Some(rng.gen_range(-4..=4)));
    }
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        let e = if rng.gen_bool(0.5) {
            c.add_crossing(parent, i)
        } else {
            c.add_crossing(i, parent)
        };
        c.signs[e] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    for order in &mut c.cyclic {
        order.shuffle(rng);
    }
    c.order = Some((0..n).collect());
    c
}

/// Maximum matching of a forest, by repeatedly matching a leaf to its neighbour.
pub fn forest_matching(n: usize, edges: &[[usize; 2]]) -> usize {
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for &[a, b] in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![true; n];
    let mut matched = 0;
    loop {
        let Some(leaf) = (0..n).find(|&v| alive[v] && adj[v].len() == 1) else {
            return matched;
        };
        let partner = *adj[leaf].iter().next().unwrap();
        matched += 1;
        for v in [leaf, partner] {
            alive[v] = false;
            for w in std::mem::take(&mut adj[v]) {
                adj[w].remove(&v);
            }
        }
    }
}

/// Rejection sampler for covers of the sphere: uniform transpositions, kept
/// when they generate a transitive group and multiply to the identity.
pub fn random_closed_cover(
    rng: &mut ChaCha8Rng,
    max_sheets: usize,
    max_points: usize,
) -> rspin::braid_cover::BranchData {
    loop {
        let n = rng.gen_range(2..=max_sheets);
        let lowest = 2 * n - 2;
        if lowest > max_points {
            continue;
        }
        let k = lowest + 2 * rng.gen_range(0..=(max_points - lowest) / 2);
        let ts: Vec<(usize, usize)> = (0..k)
            .map(|_| {
                let a = rng.gen_range(1..=n);
                let mut b = rng.gen_range(1..n);
                if b >= a {
                    b += 1;
                }
                (a, b)
            })
            .collect();
        if permutation_cycles(&compose(n, &ts)) != n {
            continue;
        }
        if let Ok(b) = rspin::braid_cover::BranchData::new(n, ts) {
            return b;
        }
    }
}

/// Product of transpositions acting on `0..n`, leftmost applied first.
pub fn compose(n: usize, ts: &[(usize, usize)]) -> Vec<usize> {
    let mut image: Vec<usize> = (0..n).collect();
    for &(a, b) in ts {
        image.swap(a - 1, b - 1);
    }
    // `image[p]` is the sheet carried to position p; invert to get the map.
    let mut perm = vec![0; n];
    for (p, &s) in image.iter().enumerate() {
        perm[s] = p;
    }
    perm
}

pub fn permutation_cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    cycles
}
