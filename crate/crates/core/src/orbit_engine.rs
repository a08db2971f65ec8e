//! Mapping class generators acting on finite tuples of winding values.
//!
//! A tuple lists the values of the Humphries curves `c_0, c_1, ..., c_{2g}` in
//! `Z/r`. The chain values are free; `c_0` bounds a pair of pants with `c_1`
//! and `c_3` on the side where `[c_0] = [c_1] + [c_3]`, so
//! `phi(c_0) = phi(c_1) + phi(c_3) - 1`. Twisting about `c_a` sends
//! `phi(c_i)` to `phi(c_i) - sign * <c_a, c_i> * phi(c_a)`.

use crate::spin_core::arf_from_chain;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Index pair of curves in a chain.
pub type Pair = (usize, usize);

/// Largest tuple space (`r^{2g}`) the enumerators will walk.
pub const MAX_TUPLES: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("genus {0} is below 2")]
    GenusTooSmall(usize),
    #[error("modulus must be at least 1, got {0}")]
    BadModulus(i64),
    #[error("{r} does not divide 2g-2 = {two_g_minus_two}: no spin structures")]
    NoSpinStructure { r: i64, two_g_minus_two: i64 },
    #[error("generator index {index} out of range (system has {count})")]
    BadGenerator { index: usize, count: usize },
    #[error("r^(2g) = {0} exceeds the enumeration cap")]
    TooLarge(u64),
    #[error("tuple has {got} entries, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("{sub} does not divide {r}")]
    NotADivisor { sub: i64, r: i64 },
}

/// The fixed curve system and its pairing table.
#[derive(Debug, Clone)]
pub struct Humphries {
    pub genus: usize,
    pub r: i64,
    pairing: Vec<Vec<i64>>,
}

impl Humphries {
    pub fn new(genus: usize, r: i64) -> Result<Self, OrbitError> {
        if genus < 2 {
            return Err(OrbitError::GenusTooSmall(genus));
        }
        if r < 1 {
            return Err(OrbitError::BadModulus(r));
        }
        let n = 2 * genus + 1;
        let mut pairing = vec![vec![0; n]; n];
        for i in 1..2 * genus {
            pairing[i][i + 1] = 1;
            pairing[i + 1][i] = -1;
        }
        // [c_0] = [c_1] + [c_3] meets only c_4.
        pairing[0][4] = 1;
        pairing[4][0] = -1;
        Ok(Humphries { genus, r, pairing })
    }

    pub fn size(&self) -> usize {
        2 * self.genus + 1
    }

    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        self.pairing[a][b]
    }

    pub fn tuple_count(&self) -> u64 {
        (self.r as u64).saturating_pow(2 * self.genus as u32)
    }

    /// Full tuple from chain values, filling in `c_0`.
    pub fn complete(&self, chain: &[i64]) -> Vec<i64> {
        let mut t = Vec::with_capacity(self.size());
        t.push((chain[0] + chain[2] - 1).rem_euclid(self.r));
        t.extend(chain.iter().map(|v| v.rem_euclid(self.r)));
        t
    }

    pub fn is_consistent(&self, t: &[i64]) -> bool {
        t.len() == self.size() && t[0] == (t[1] + t[3] - 1).rem_euclid(self.r)
    }

    pub fn act(&self, t: &[i64], gen: usize, sign: i64) -> Result<Vec<i64>, OrbitError> {
        if gen >= self.size() {
            return Err(OrbitError::BadGenerator {
                index: gen,
                count: self.size(),
            });
        }
        if t.len() != self.size() {
            return Err(OrbitError::Length {
                expected: self.size(),
                got: t.len(),
            });
        }
        Ok(self.act_unchecked(t, gen, sign))
    }

    fn act_unchecked(&self, t: &[i64], gen: usize, sign: i64) -> Vec<i64> {
        let value = t[gen];
        t.iter()
            .zip(&self.pairing[gen])
            .map(|(&x, &p)| (x - sign * p * value).rem_euclid(self.r))
            .collect()
    }

    fn index_of(&self, t: &[i64]) -> u64 {
        t[1..]
            .iter()
            .rev()
            .fold(0u64, |acc, &v| acc * self.r as u64 + v as u64)
    }

    fn tuple_at(&self, mut index: u64) -> Vec<i64> {
        let chain: Vec<i64> = (0..2 * self.genus)
            .map(|_| {
                let v = (index % self.r as u64) as i64;
                index /= self.r as u64;
                v
            })
            .collect();
        self.complete(&chain)
    }

    fn check_cap(&self) -> Result<(), OrbitError> {
        let count = self.tuple_count();
        if count > MAX_TUPLES {
            return Err(OrbitError::TooLarge(count));
        }
        Ok(())
    }

    /// Pairs `(a, b)` that satisfy a braid relation (`|<a,b>| = 1`) or commute.
    pub fn relation_pairs(&self) -> (Vec<Pair>, Vec<Pair>) {
        let mut braid = Vec::new();
        let mut commute = Vec::new();
        for a in 0..self.size() {
            for b in a + 1..self.size() {
                match self.pairing[a][b].abs() {
                    1 => braid.push((a, b)),
                    0 => commute.push((a, b)),
                    _ => unreachable!("pairings are 0 or 1 in this system"),
                }
            }
        }
        (braid, commute)
    }
}

pub fn generator_name(gen: usize, sign: i64) -> String {
    if sign > 0 {
        format!("c{gen}")
    } else {
        format!("c{gen}^-1")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Chain values of the orbit member reached last.
    pub target: Vec<i64>,
    /// Twists, first applied first, carrying the representative to `target`.
    pub word: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    /// Chain values of the smallest member in base-`r` order.
    pub representative: Vec<i64>,
    pub size: u64,
    pub arf: Option<u8>,
    pub arf_constant: bool,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub genus: usize,
    pub r: i64,
    pub tuple_count: u64,
    pub orbits: Vec<OrbitRecord>,
}

impl OrbitReport {
    pub fn sizes(&self) -> Vec<u64> {
        self.orbits.iter().map(|o| o.size).collect()
    }
}

/// Orbit label for every tuple index, plus the report.
pub fn enumerate_orbits_with_labels(
    genus: usize,
    r: i64,
) -> Result<(OrbitReport, Vec<u32>), OrbitError> {
    let sys = Humphries::new(genus, r)?;
    let two_g_minus_two = 2 * genus as i64 - 2;
    if two_g_minus_two % r != 0 {
        return Err(OrbitError::NoSpinStructure { r, two_g_minus_two });
    }
    sys.check_cap()?;
    let total = sys.tuple_count();
    const UNSEEN: u32 = u32::MAX;
    let mut label = vec![UNSEEN; total as usize];
    // parent[i] = (previous index, generator, sign) along the BFS tree.
    let mut parent: Vec<(u64, u8, i8)> = vec![(0, 0, 0); total as usize];
    let mut orbits = Vec::new();

    for start in 0..total {
        if label[start as usize] != UNSEEN {
            continue;
        }
        let id = orbits.len() as u32;
        label[start as usize] = id;
        let mut queue = VecDeque::from([start]);
        let mut size = 0u64;
        let mut last = start;
        let mut arf_values = std::collections::BTreeSet::new();
        while let Some(idx) = queue.pop_front() {
            size += 1;
            last = idx;
            let t = sys.tuple_at(idx);
            if r % 2 == 0 {
                arf_values.insert(arf_from_chain(&t[1..]));
            }
            for gen in 0..sys.size() {
                for sign in [1i64, -1] {
                    let next = sys.index_of(&sys.act_unchecked(&t, gen, sign));
                    if label[next as usize] == UNSEEN {
                        label[next as usize] = id;
                        parent[next as usize] = (idx, gen as u8, sign as i8);
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut word = Vec::new();
        let mut cur = last;
        while cur != start {
            let (prev, gen, sign) = parent[cur as usize];
            word.push(generator_name(gen as usize, sign as i64));
            cur = prev;
        }
        word.reverse();
        orbits.push(OrbitRecord {
            representative: sys.tuple_at(start)[1..].to_vec(),
            size,
            arf: arf_values.iter().next().copied(),
            arf_constant: arf_values.len() <= 1,
            witness: Witness {
                target: sys.tuple_at(last)[1..].to_vec(),
                word,
            },
        });
    }
    Ok((
        OrbitReport {
            genus,
            r,
            tuple_count: total,
            orbits,
        },
        label,
    ))
}

pub fn enumerate_orbits(genus: usize, r: i64) -> Result<OrbitReport, OrbitError> {
    enumerate_orbits_with_labels(genus, r).map(|(report, _)| report)
}

/// Applies a witness word (as produced in `OrbitRecord`) to chain values.
pub fn apply_word(sys: &Humphries, chain: &[i64], word: &[String]) -> Result<Vec<i64>, OrbitError> {
    let mut t = sys.complete(chain);
    for step in word {
        let (body, sign) = match step.strip_suffix("^-1") {
            Some(b) => (b, -1),
            None => (step.as_str(), 1),
        };
        let gen: usize =
            body.trim_start_matches('c')
                .parse()
                .map_err(|_| OrbitError::BadGenerator {
                    index: usize::MAX,
                    count: sys.size(),
                })?;
        t = sys.act(&t, gen, sign)?;
    }
    Ok(t[1..].to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub genus: usize,
    pub r: i64,
    pub tuples: u64,
    pub braid_pairs: usize,
    pub commuting_pairs: usize,
    pub failures: Vec<String>,
    /// Genus 2 only: the two boundary curves of the 3-chain neighbourhood are
    /// isotopic, which forces `2 = 0 mod r`. `None` in higher genus.
    pub pants_sides_agree: Option<bool>,
}

/// Braid and commutation relations of the system, and preservation of the
/// `c_0` relation, checked on every tuple. No divisibility is required.
pub fn relations_self_test(genus: usize, r: i64) -> Result<RelationsReport, OrbitError> {
    let sys = Humphries::new(genus, r)?;
    sys.check_cap()?;
    let (braid, commute) = sys.relation_pairs();
    let mut failures = Vec::new();
    let word = |t: &[i64], gens: &[usize]| {
        gens.iter()
            .fold(t.to_vec(), |acc, &g| sys.act_unchecked(&acc, g, 1))
    };
    for idx in 0..sys.tuple_count() {
        let t = sys.tuple_at(idx);
        for &(a, b) in &braid {
            if word(&t, &[a, b, a]) != word(&t, &[b, a, b]) {
                failures.push(format!("braid c{a} c{b} at {t:?}"));
            }
        }
        for &(a, b) in &commute {
            if word(&t, &[a, b]) != word(&t, &[b, a]) {
                failures.push(format!("commute c{a} c{b} at {t:?}"));
            }
        }
        for gen in 0..sys.size() {
            if !sys.is_consistent(&sys.act_unchecked(&t, gen, 1)) {
                failures.push(format!("c{gen} breaks the c0 relation at {t:?}"));
            }
        }
    }
    Ok(RelationsReport {
        genus,
        r,
        tuples: sys.tuple_count(),
        braid_pairs: braid.len(),
        commuting_pairs: commute.len(),
        failures,
        pants_sides_agree: (genus == 2).then_some(2 % r == 0),
    })
}

/// A twist `h T_a h^{-1}` written as the conjugating word `h` (generator,
/// sign pairs applied left to right) and the generator `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateTwist {
    pub conjugator: Vec<(usize, i64)>,
    pub generator: usize,
}

impl ConjugateTwist {
    fn apply(&self, sys: &Humphries, t: &[i64], sign: i64) -> Vec<i64> {
        let mut u = t.to_vec();
        for &(g, s) in self.conjugator.iter().rev() {
            u = sys.act_unchecked(&u, g, -s);
        }
        u = sys.act_unchecked(&u, self.generator, sign);
        for &(g, s) in &self.conjugator {
            u = sys.act_unchecked(&u, g, s);
        }
        u
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub base: Vec<i64>,
    pub sub_modulus: i64,
    /// Number of twists about curves of value 0 on `base` that were used.
    pub admissible_twists: usize,
    /// Size of the orbit of `base` under those twists.
    pub admissible_reach: u64,
    pub fixes_base: bool,
    /// The extra generator, whose curve has value `sub_modulus` on `base`;
    /// `None` when no generator has that value.
    pub augmenting: Option<usize>,
    /// Size of the orbit once the extra twist is added.
    pub augmented_reach: u64,
    /// Every reached tuple is congruent to `base` mod `sub_modulus`.
    pub within_fiber: bool,
    pub fiber_size: u64,
    pub matches_fiber: bool,
}

/// Tuple-level shadow of the generation statement for stabilizers: twists
/// about curves admissible for `base`, together with one twist about a
/// generator of value `sub_modulus`, should move `base` through exactly the
/// tuples congruent to it mod `sub_modulus`.
///
/// Admissible curves are the images `h(a)` of generators under words `h` of
/// length at most `depth` for which the curve has value 0 on `base`.
pub fn stabilizer_orbit_check(
    genus: usize,
    r: i64,
    base_chain: &[i64],
    sub_modulus: i64,
    depth: usize,
) -> Result<StabilizerReport, OrbitError> {
    let sys = Humphries::new(genus, r)?;
    let two_g_minus_two = 2 * genus as i64 - 2;
    if two_g_minus_two % r != 0 {
        return Err(OrbitError::NoSpinStructure { r, two_g_minus_two });
    }
    if sub_modulus < 1 || r % sub_modulus != 0 {
        return Err(OrbitError::NotADivisor {
            sub: sub_modulus,
            r,
        });
    }
    if base_chain.len() != 2 * genus {
        return Err(OrbitError::Length {
            expected: 2 * genus,
            got: base_chain.len(),
        });
    }
    sys.check_cap()?;
    let base = sys.complete(base_chain);
    let augmenting = (0..sys.size()).find(|&g| base[g] == sub_modulus.rem_euclid(r));

    let mut twists = Vec::new();
    let mut seen_curves = BTreeSet::new();
    let mut words: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    for len in 0..=depth {
        if len > 0 {
            words = words
                .iter()
                .flat_map(|w| {
                    (0..sys.size()).flat_map(move |g| {
                        [1, -1].into_iter().map(move |s| {
                            let mut next = w.clone();
                            next.push((g, s));
                            next
                        })
                    })
                })
                .collect();
        }
        for word in &words {
            for generator in 0..sys.size() {
                let twist = ConjugateTwist {
                    conjugator: word.clone(),
                    generator,
                };
                // The twist fixes `base` exactly when its curve is admissible.
                if twist.apply(&sys, &base, 1) != base {
                    continue;
                }
                // Identify curves by their action on the generator tuple of a probe.
                let probe: Vec<i64> = (0..sys.size() as i64).collect();
                if seen_curves.insert(twist.apply(&sys, &probe, 1)) {
                    twists.push(twist);
                }
            }
        }
    }

    let reach = |extra: Option<usize>| {
        let mut seen = BTreeSet::from([base.clone()]);
        let mut queue = VecDeque::from([base.clone()]);
        while let Some(t) = queue.pop_front() {
            for sign in [1, -1] {
                let images = twists
                    .iter()
                    .map(|tw| tw.apply(&sys, &t, sign))
                    .chain(extra.map(|g| sys.act_unchecked(&t, g, sign)));
                for next in images {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen
    };
    let fixed = reach(None);
    let augmented = reach(augmenting);

    // Independent enumeration of the fiber over `base mod sub_modulus`.
    let lifts = (r / sub_modulus) as u64;
    let fiber_size = lifts.pow(2 * genus as u32);
    let fiber: BTreeSet<Vec<i64>> = (0..fiber_size)
        .map(|mut k| {
            let chain: Vec<i64> = base_chain
                .iter()
                .map(|&b| {
                    let step = (k % lifts) as i64;
                    k /= lifts;
                    b.rem_euclid(sub_modulus) + step * sub_modulus
                })
                .collect();
            sys.complete(&chain)
        })
        .collect();

    Ok(StabilizerReport {
        base: base_chain.to_vec(),
        sub_modulus,
        admissible_twists: twists.len(),
        admissible_reach: fixed.len() as u64,
        fixes_base: fixed.len() == 1,
        augmenting,
        augmented_reach: augmented.len() as u64,
        within_fiber: augmented.is_subset(&fiber),
        fiber_size,
        matches_fiber: augmented == fiber,
    })
}
