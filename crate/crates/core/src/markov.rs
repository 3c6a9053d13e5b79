//! Markov-type equations `l x^2 + m y^2 + n z^2 = c x y z` and their mutations.
//!
//! For an extremal rational type with fiber powers `(l, m, n)` the coefficient
//! is `c = sqrt(l m n (12 - l - m - n))`, an integer for all fourteen types.
//! The pairings of the boundary curve with the three vanishing cycles form a
//! positive solution, and the three cycle mutations act on solutions as Vieta
//! jumps followed by a reordering:
//!
//! | mutation | replaced coordinate | new triple                  | new powers |
//! |----------|---------------------|-----------------------------|------------|
//! | 1        | `z`                 | `(x, c x y / n - z, y)`     | `(l, n, m)` |
//! | 2        | `y`                 | `(c x z / m - y, x, z)`     | `(m, l, n)` |
//! | 3        | `x`                 | `(y, c y z / l - x, z)`     | `(m, l, n)` |
//!
//! Mutations 2 and 3 are mutually inverse.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{extremal_row_for, power_multiset, registry_row};
use crate::int::Int;

/// A sequence of mutations, each in `1..=3`.
pub type MutationWord = Vec<u8>;

/// The exact integer `sqrt(l m n (12 - l - m - n))`.
pub fn markov_coefficient(l: u32, m: u32, n: u32) -> Result<u32> {
    let powers = [l, m, n];
    let invalid = |reason: String| Error::InvalidMarkovType { powers, reason };
    if l == 0 || m == 0 || n == 0 {
        return Err(invalid("powers must be positive".into()));
    }
    let s = l as u64 + m as u64 + n as u64;
    if s >= 12 {
        return Err(invalid(format!("l + m + n = {s} is not below 12")));
    }
    let radicand = l as u64 * m as u64 * n as u64 * (12 - s);
    let root = radicand.sqrt();
    if root * root != radicand {
        return Err(invalid(format!("{radicand} is not a perfect square")));
    }
    Ok(root as u32)
}

/// Ordered fiber powers `(l, m, n)` of one of the fourteen extremal types.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct MarkovType {
    powers: [u32; 3],
    coefficient: u32,
}

impl MarkovType {
    pub fn new(powers: [u32; 3]) -> Result<Self> {
        let coefficient = markov_coefficient(powers[0], powers[1], powers[2])?;
        if extremal_row_for(powers).is_none() {
            return Err(Error::InvalidMarkovType {
                powers,
                reason: "powers match no extremal rational type".into(),
            });
        }
        Ok(MarkovType { powers, coefficient })
    }

    pub fn powers(&self) -> [u32; 3] {
        self.powers
    }

    pub fn coefficient(&self) -> u32 {
        self.coefficient
    }

    /// Registry row with the same power multiset.
    pub fn row(&self) -> usize {
        extremal_row_for(self.powers).expect("validated on construction")
    }

    fn permuted(&self, powers: [u32; 3]) -> MarkovType {
        MarkovType {
            powers,
            coefficient: self.coefficient,
        }
    }
}

impl TryFrom<[u32; 3]> for MarkovType {
    type Error = Error;
    fn try_from(p: [u32; 3]) -> Result<Self> {
        MarkovType::new(p)
    }
}

impl From<MarkovType> for [u32; 3] {
    fn from(t: MarkovType) -> Self {
        t.powers
    }
}

impl fmt::Debug for MarkovType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (c = {})", self.powers, self.coefficient)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MarkovTriple(pub [Int; 3]);

impl MarkovTriple {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>, z: impl Into<Int>) -> Self {
        MarkovTriple([x.into(), y.into(), z.into()])
    }

    pub fn x(&self) -> &Int {
        &self.0[0]
    }

    pub fn y(&self) -> &Int {
        &self.0[1]
    }

    pub fn z(&self) -> &Int {
        &self.0[2]
    }

    pub fn sum(&self) -> Int {
        self.0.iter().cloned().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Int::is_positive)
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn is_solution(t: &MarkovTriple, ty: &MarkovType) -> bool {
    if !t.is_positive() {
        return false;
    }
    let [l, m, n] = ty.powers.map(Int::from);
    let (x, y, z) = (t.x(), t.y(), t.z());
    let lhs = l * x.square() + m * y.square() + n * z.square();
    lhs == Int::from(ty.coefficient) * x * y * z
}

fn ensure_solution(t: &MarkovTriple, ty: &MarkovType) -> Result<()> {
    if is_solution(t, ty) {
        Ok(())
    } else {
        Err(Error::NotASolution(format!("{t} for {ty:?}")))
    }
}

/// Vieta jump of one coordinate followed by the reordering of the cycle mutation.
pub fn mutate(t: &MarkovTriple, ty: &MarkovType, which: u8) -> Result<(MarkovTriple, MarkovType)> {
    ensure_solution(t, ty)?;
    mutate_unchecked(t, ty, which)
}

fn mutate_unchecked(t: &MarkovTriple, ty: &MarkovType, which: u8) -> Result<(MarkovTriple, MarkovType)> {
    let c = Int::from(ty.coefficient);
    let [l, m, n] = ty.powers;
    let (x, y, z) = (t.x(), t.y(), t.z());
    let jump = |a: &Int, b: &Int, k: u32, old: &Int| -> Result<Int> {
        let num = &c * a * b;
        let q = num.div_exact(&Int::from(k)).ok_or_else(|| Error::Mutation {
            which,
            reason: format!("{k} does not divide {num}"),
        })?;
        let w = q - old;
        if !w.is_positive() {
            return Err(Error::Mutation {
                which,
                reason: format!("replaced coordinate {w} is not positive"),
            });
        }
        Ok(w)
    };
    let out = match which {
        1 => (
            MarkovTriple([x.clone(), jump(x, y, n, z)?, y.clone()]),
            ty.permuted([l, n, m]),
        ),
        2 => (
            MarkovTriple([jump(x, z, m, y)?, x.clone(), z.clone()]),
            ty.permuted([m, l, n]),
        ),
        3 => (
            MarkovTriple([y.clone(), jump(y, z, l, x)?, z.clone()]),
            ty.permuted([m, l, n]),
        ),
        _ => {
            return Err(Error::Mutation {
                which,
                reason: "mutations are numbered 1, 2, 3".into(),
            })
        }
    };
    Ok(out)
}

pub fn apply_word(t: &MarkovTriple, ty: &MarkovType, word: &[u8]) -> Result<(MarkovTriple, MarkovType)> {
    let mut state = (t.clone(), *ty);
    for &w in word {
        state = mutate(&state.0, &state.1, w)?;
    }
    Ok(state)
}

/// All positive solutions with `max(x, y, z) <= bound`, sorted lexicographically.
pub fn enumerate_solutions(ty: &MarkovType, bound: u64) -> Vec<MarkovTriple> {
    let [l, m, n] = ty.powers.map(|p| p as i128);
    let c = ty.coefficient as i128;
    let bound = bound as i128;
    let mut out = Vec::new();
    for x in 1..=bound {
        for y in 1..=bound {
            // n z^2 - (c x y) z + (l x^2 + m y^2) = 0
            let b = c * x * y;
            let k = l * x * x + m * y * y;
            let disc = b * b - 4 * n * k;
            if disc < 0 {
                continue;
            }
            let r = (disc as u128).sqrt() as i128;
            if r * r != disc {
                continue;
            }
            let mut zs = vec![b - r, b + r];
            zs.dedup();
            for num in zs {
                if num > 0 && num % (2 * n) == 0 {
                    let z = num / (2 * n);
                    if z <= bound {
                        out.push(MarkovTriple::new(x as i64, y as i64, z as i64));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub triple: MarkovTriple,
    pub powers: MarkovType,
    pub word: MutationWord,
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?} via {:?}", self.triple, self.powers, self.word)
    }
}

/// Greedy descent: repeatedly apply the lowest-numbered mutation that strictly
/// lowers `x + y + z`. Stops at a solution no mutation can lower.
pub fn reduce_to_minimum(t: &MarkovTriple, ty: &MarkovType) -> Result<Reduction> {
    ensure_solution(t, ty)?;
    let mut triple = t.clone();
    let mut powers = *ty;
    let mut word = Vec::new();
    let mut sum = triple.sum();
    'descent: loop {
        for which in 1..=3u8 {
            if let Ok((next, next_ty)) = mutate_unchecked(&triple, &powers, which) {
                let s = next.sum();
                if s < sum {
                    triple = next;
                    powers = next_ty;
                    sum = s;
                    word.push(which);
                    continue 'descent;
                }
            }
        }
        break;
    }
    Ok(Reduction { triple, powers, word })
}

/// The registry's minimum solution and ordered powers for the equation of `ty`.
pub fn canonical_minimum(ty: &MarkovType) -> (MarkovTriple, MarkovType) {
    let row = registry_row(ty.row()).expect("row exists");
    let triple = MarkovTriple(row.minimum_triple());
    (triple, ty.permuted(row.powers))
}

/// Maps a minimum solution to the registry's canonical minimum by the shortest
/// mutation word (breadth-first, mutations tried in order 1, 2, 3).
pub fn normalize_minimum(t: &MarkovTriple, ty: &MarkovType) -> Result<Reduction> {
    ensure_solution(t, ty)?;
    let (target, target_ty) = canonical_minimum(ty);
    let min_sum = target.sum();
    if t.sum() != min_sum {
        return Err(Error::NotMinimal(format!("{t} for {ty:?}")));
    }
    let start = (t.clone(), *ty);
    let goal = (target.clone(), target_ty);
    let limit = min_sum.to_i64().expect("minimum sums are small") * 4 + 16;
    for cap in min_sum.to_i64().unwrap()..=limit {
        if let Some(word) = bfs_word(&start, &goal, &Int::from(cap)) {
            return Ok(Reduction {
                triple: target,
                powers: target_ty,
                word,
            });
        }
    }
    Err(Error::NotMinimal(format!(
        "no mutation path from {t} {ty:?} to the canonical minimum"
    )))
}

type State = (MarkovTriple, MarkovType);

fn bfs_word(start: &State, goal: &State, cap: &Int) -> Option<MutationWord> {
    let mut prev: HashMap<State, Option<(State, u8)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(s) = queue.pop_front() {
        if &s == goal {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some(Some((p, w))) = prev.get(&cur) {
                word.push(*w);
                cur = p.clone();
            }
            word.reverse();
            return Some(word);
        }
        for which in 1..=3u8 {
            if let Ok(next) = mutate_unchecked(&s.0, &s.1, which) {
                if next.0.sum() <= *cap && !prev.contains_key(&next) {
                    prev.insert(next.clone(), Some((s.clone(), which)));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct OrbitState {
    pub triple: MarkovTriple,
    pub powers: MarkovType,
    pub word: MutationWord,
}

/// Distinct states reachable by at most `depth` mutations, in breadth-first
/// order, each with the first word found.
pub fn orbit(t: &MarkovTriple, ty: &MarkovType, depth: usize) -> Result<Vec<OrbitState>> {
    ensure_solution(t, ty)?;
    let mut seen: HashMap<State, ()> = HashMap::new();
    let mut out = vec![OrbitState {
        triple: t.clone(),
        powers: *ty,
        word: vec![],
    }];
    seen.insert((t.clone(), *ty), ());
    let mut frontier = 0;
    for _ in 0..depth {
        let end = out.len();
        for i in frontier..end {
            for which in 1..=3u8 {
                let (nt, nty) = mutate_unchecked(&out[i].triple, &out[i].powers, which)?;
                if seen.insert((nt.clone(), nty), ()).is_none() {
                    let mut word = out[i].word.clone();
                    word.push(which);
                    out.push(OrbitState {
                        triple: nt,
                        powers: nty,
                        word,
                    });
                }
            }
        }
        frontier = end;
    }
    Ok(out)
}

/// Greedy descent followed by normalization to the canonical minimum.
pub fn reduce_and_normalize(t: &MarkovTriple, ty: &MarkovType) -> Result<Reduction> {
    let down = reduce_to_minimum(t, ty)?;
    let norm = normalize_minimum(&down.triple, &down.powers)?;
    let mut word = down.word;
    word.extend(norm.word);
    Ok(Reduction {
        triple: norm.triple,
        powers: norm.powers,
        word,
    })
}

/// Power multiset key of a type, for grouping equations.
pub fn equation_key(ty: &MarkovType) -> [u32; 3] {
    power_multiset(ty.powers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ty(p: [u32; 3]) -> MarkovType {
        MarkovType::new(p).unwrap()
    }

    fn tr(x: i64, y: i64, z: i64) -> MarkovTriple {
        MarkovTriple::new(x, y, z)
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(markov_coefficient(1, 1, 1).unwrap(), 3);
        assert_eq!(markov_coefficient(3, 3, 3).unwrap(), 9);
        assert!(markov_coefficient(2, 2, 8).is_err());
        assert!(markov_coefficient(1, 1, 3).is_err());
        assert!(MarkovType::new([2, 2, 8]).is_err());
    }

    #[test]
    fn every_extremal_type_has_integral_coefficient() {
        for p in crate::factorization::EXTREMAL_POWERS {
            let t = MarkovType::new(p).unwrap();
            let c = t.coefficient() as u64;
            let s = p.iter().map(|&x| x as u64).sum::<u64>();
            assert_eq!(c * c, p.iter().map(|&x| x as u64).product::<u64>() * (12 - s));
        }
    }

    #[test]
    fn solution_examples() {
        assert!(is_solution(&tr(1, 1, 1), &ty([1, 1, 1])));
        assert!(is_solution(&tr(4, 2, 1), &ty([1, 2, 8])));
        assert!(is_solution(&tr(2, 5, 29), &ty([1, 1, 1])));
        assert!(!is_solution(&tr(2, 5, 28), &ty([1, 1, 1])));
        assert!(!is_solution(&tr(0, 0, 0), &ty([1, 1, 1])));
    }

    #[test]
    fn mutation_examples() {
        let (t, p) = mutate(&tr(1, 1, 1), &ty([1, 1, 1]), 1).unwrap();
        assert_eq!((t, p.powers()), (tr(1, 2, 1), [1, 1, 1]));
        let (t, p) = mutate(&tr(4, 2, 1), &ty([1, 2, 8]), 2).unwrap();
        assert_eq!((t.clone(), p.powers()), (tr(6, 4, 1), [2, 1, 8]));
        assert!(is_solution(&t, &p));
        assert!(matches!(
            mutate(&tr(1, 1, 3), &ty([1, 1, 1]), 1),
            Err(Error::NotASolution(_))
        ));
        assert!(mutate(&tr(1, 1, 1), &ty([1, 1, 1]), 4).is_err());
    }

    #[test]
    fn first_mutation_is_not_an_involution() {
        // Vieta on z twice: (1,1,1) -> (1,2,1) -> (1,5,2). The sum grows, so
        // mutation 1 cannot undo itself; 2 and 3 are the inverse pair.
        let (t, p) = apply_word(&tr(1, 1, 1), &ty([1, 1, 1]), &[1, 1]).unwrap();
        assert!(is_solution(&t, &p));
        assert_eq!(t, tr(1, 5, 2));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_solutions(&ty([1, 1, 1]), 2),
            vec![tr(1, 1, 1), tr(1, 1, 2), tr(1, 2, 1), tr(2, 1, 1)]
        );
        assert_eq!(enumerate_solutions(&ty([3, 3, 3]), 1), vec![tr(1, 1, 1)]);
        assert!(enumerate_solutions(&ty([1, 1, 1]), 0).is_empty());
    }

    #[test]
    fn enumeration_matches_exhaustive_scan() {
        for p in [[1, 1, 1], [1, 5, 5], [2, 4, 4], [8, 2, 1], [6, 3, 2]] {
            let t = ty(p);
            let mut brute = vec![];
            for x in 1..=40i64 {
                for y in 1..=40i64 {
                    for z in 1..=40i64 {
                        if is_solution(&tr(x, y, z), &t) {
                            brute.push(tr(x, y, z));
                        }
                    }
                }
            }
            assert_eq!(enumerate_solutions(&t, 40), brute, "{p:?}");
        }
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_to_minimum(&tr(2, 5, 29), &ty([1, 1, 1])).unwrap();
        assert_eq!(r.triple, tr(1, 1, 1));
        assert_eq!(r.word.len(), 3);
        let r = reduce_to_minimum(&tr(1, 1, 1), &ty([1, 1, 1])).unwrap();
        assert_eq!(r.triple, tr(1, 1, 1));
        assert!(r.word.is_empty());
        let r = reduce_and_normalize(&tr(4, 2, 1), &ty([1, 2, 8])).unwrap();
        assert_eq!(r.triple.z(), &Int::ONE);
    }

    #[test]
    fn bridge_words_between_minima() {
        let (t, p) = apply_word(&tr(1, 2, 1), &ty([1, 1, 5]), &[1, 1, 2]).unwrap();
        assert_eq!((t, p.powers()), (tr(2, 1, 1), [1, 1, 5]));
        let (t, p) = apply_word(&tr(5, 2, 1), &ty([1, 5, 5]), &[1, 2, 2]).unwrap();
        assert_eq!((t, p.powers()), (tr(5, 1, 2), [1, 5, 5]));
    }

    #[test]
    fn normalization_examples() {
        // canonical minima are the registry's: (1,2,1) for row 4, (5,2,1) for row 14
        let r = normalize_minimum(&tr(2, 1, 1), &ty([1, 1, 5])).unwrap();
        assert_eq!(r.triple, tr(1, 2, 1));
        assert_eq!(r.word, vec![1, 1, 2]);
        let r = normalize_minimum(&tr(5, 1, 2), &ty([1, 5, 5])).unwrap();
        assert_eq!(r.triple, tr(5, 2, 1));
        assert_eq!(r.word, vec![1, 2, 2]);
        let r = normalize_minimum(&tr(1, 1, 1), &ty([1, 1, 1])).unwrap();
        assert!(r.word.is_empty());
        assert!(matches!(
            normalize_minimum(&tr(1, 2, 1), &ty([1, 1, 1])),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn orbit_states_are_solutions() {
        let o = orbit(&tr(1, 1, 1), &ty([1, 2, 3]), 4).unwrap();
        assert!(o.len() > 10);
        for s in &o {
            assert!(is_solution(&s.triple, &s.powers));
            let (t, p) = apply_word(&tr(1, 1, 1), &ty([1, 2, 3]), &s.word).unwrap();
            assert_eq!((t, p), (s.triple.clone(), s.powers));
        }
    }

    fn arb_state() -> impl Strategy<Value = (MarkovTriple, MarkovType, Vec<u8>)> {
        (0usize..14, prop::collection::vec(1u8..=3, 0..12)).prop_map(|(i, word)| {
            let row = registry_row(i + 1).unwrap();
            let t = ty(row.powers);
            let (s, p) = apply_word(&MarkovTriple(row.minimum_triple()), &t, &word).unwrap();
            (s, p, word)
        })
    }

    proptest! {
        #[test]
        fn mutations_preserve_solutions((t, p, _) in arb_state(), which in 1u8..=3) {
            let (t2, p2) = mutate(&t, &p, which).unwrap();
            prop_assert!(is_solution(&t2, &p2));
        }

        #[test]
        fn vieta_sum_identity((t, p, _) in arb_state(), which in 1u8..=3) {
            let (t2, _) = mutate(&t, &p, which).unwrap();
            let [l, m, n] = p.powers().map(Int::from);
            let c = Int::from(p.coefficient());
            // replaced coordinate w and its image w' satisfy k (w + w') = c * (other two)
            let (w, w2, k, a, b) = match which {
                1 => (t.z(), t2.y(), n, t.x(), t.y()),
                2 => (t.y(), t2.x(), m, t.x(), t.z()),
                _ => (t.x(), t2.y(), l, t.y(), t.z()),
            };
            prop_assert_eq!(k * (w + w2), c * a * b);
        }

        #[test]
        fn mutations_two_and_three_are_inverse((t, p, _) in arb_state()) {
            let (a, pa) = mutate(&t, &p, 2).unwrap();
            prop_assert_eq!(mutate(&a, &pa, 3).unwrap(), (t.clone(), p));
            let (b, pb) = mutate(&t, &p, 3).unwrap();
            prop_assert_eq!(mutate(&b, &pb, 2).unwrap(), (t, p));
        }

        #[test]
        fn descent_reaches_canonical_minimum((t, p, _) in arb_state()) {
            let r = reduce_and_normalize(&t, &p).unwrap();
            let (canon, canon_ty) = canonical_minimum(&p);
            prop_assert_eq!(&r.triple, &canon);
            prop_assert_eq!(r.powers, canon_ty);
            prop_assert_eq!(apply_word(&t, &p, &r.word).unwrap(), (canon, canon_ty));
        }
    }
}
