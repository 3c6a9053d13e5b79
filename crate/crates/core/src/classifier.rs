//! Classification of extremal rational factorizations up to Hurwitz moves and
//! global conjugation.
//!
//! The pipeline orients the vanishing cycles so the boundary pairings
//! `(x, y, z)` are positive, walks the Markov shadow down to the canonical
//! minimum while mirroring every step on the cycles, and finally conjugates
//! the boundary to `u` and fixes the remaining `tau_u` freedom. The result is
//! a [`Certificate`] that [`verify_certificate`] replays using only
//! [`Factorization`] primitives.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result, Stage};
use crate::factorization::{ensure_extremal, registry_row, Direction, Factorization, TwistFactor};
use crate::int::Int;
use crate::lattice::{pairing, twist_unchecked, HomologyClass};
use crate::markov::{self, MarkovTriple, MarkovType};
use crate::mcg::{Mat2, McgElement};

/// Three signed vanishing cycles with positive boundary pairings satisfying
/// the orientation relations.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct OrientedConfiguration {
    cycles: [HomologyClass; 3],
    powers: MarkovType,
    boundary: HomologyClass,
    triple: MarkovTriple,
}

impl OrientedConfiguration {
    pub fn cycles(&self) -> &[HomologyClass; 3] {
        &self.cycles
    }

    pub fn powers(&self) -> MarkovType {
        self.powers
    }

    pub fn boundary(&self) -> &HomologyClass {
        &self.boundary
    }

    /// `(x, y, z) = (<C, C1>, <C, C2>, <C, C3>)`.
    pub fn triple(&self) -> &MarkovTriple {
        &self.triple
    }

    pub fn factorization(&self) -> Factorization {
        let factors = self
            .cycles
            .iter()
            .zip(self.powers.powers())
            .map(|(c, n)| TwistFactor::new(c.clone(), n))
            .collect();
        Factorization::new(factors, self.boundary.clone()).expect("cycles stay primitive")
    }

    fn build(cycles: [HomologyClass; 3], powers: MarkovType, boundary: HomologyClass) -> Self {
        let triple = MarkovTriple(cycles.clone().map(|c| pairing(&boundary, &c)));
        OrientedConfiguration {
            cycles,
            powers,
            boundary,
            triple,
        }
    }
}

impl std::fmt::Debug for OrientedConfiguration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} powers {:?} boundary {} xyz {}",
            self.cycles,
            self.powers.powers(),
            self.boundary,
            self.triple
        )
    }
}

/// Boundary pairings of the cycles as stored, after checking the extremal identity.
pub fn compute_xyz(f: &Factorization) -> Result<[Int; 3]> {
    ensure_extremal(f)?;
    Ok(boundary_pairings(f))
}

fn boundary_pairings(f: &Factorization) -> [Int; 3] {
    let c = f.boundary();
    [0, 1, 2].map(|i| pairing(c, &f.factors()[i].cycle))
}

/// The three orientation relations as integer identities, with
/// `c = sqrt(l m n (12 - l - m - n))`:
///
/// * `l m <C1, C2> = -c z`
/// * `m n <C2, C3> = -c x`
/// * `l n (<C1, C3> + m <C1, C2> <C2, C3>) = c y`
pub fn orientation_relations(cycles: &[HomologyClass; 3], powers: &MarkovType, boundary: &HomologyClass) -> [bool; 3] {
    let [l, m, n] = powers.powers().map(Int::from);
    let c = Int::from(powers.coefficient());
    let [x, y, z] = [0, 1, 2].map(|i| pairing(boundary, &cycles[i]));
    let p12 = pairing(&cycles[0], &cycles[1]);
    let p23 = pairing(&cycles[1], &cycles[2]);
    let p13 = pairing(&cycles[0], &cycles[2]);
    [
        &l * &m * &p12 == -(&c * &z),
        &m * &n * &p23 == -(&c * &x),
        &l * &n * (p13 + &m * &p12 * &p23) == &c * &y,
    ]
}

pub fn is_admissible(cycles: &[HomologyClass; 3], powers: &MarkovType, boundary: &HomologyClass) -> bool {
    cycles.iter().all(|c| pairing(boundary, c).is_positive())
        && orientation_relations(cycles, powers, boundary).iter().all(|&b| b)
}

/// Sign assignments (true = negate) on the three cycles that make the
/// configuration admissible.
pub fn admissible_sign_assignments(f: &Factorization) -> Result<Vec<[bool; 3]>> {
    let powers = ensure_extremal(f)?;
    let ty = MarkovType::new(powers)?;
    let stored: Vec<HomologyClass> = f.factors().iter().map(|t| t.cycle.clone()).collect();
    let mut out = Vec::new();
    for mask in 0..8u8 {
        let signs = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
        let cycles = [0, 1, 2].map(|i| if signs[i] { -&stored[i] } else { stored[i].clone() });
        if is_admissible(&cycles, &ty, f.boundary()) {
            out.push(signs);
        }
    }
    Ok(out)
}

/// The unique admissible signing of the cycles of `f`.
pub fn admissible_orient(f: &Factorization) -> Result<OrientedConfiguration> {
    let powers = ensure_extremal(f)?;
    if boundary_pairings(f).iter().any(Int::is_zero) {
        return Err(Error::ZeroPairing);
    }
    let found = admissible_sign_assignments(f)?;
    if found.len() != 1 {
        return Err(Error::Orientation(found.len()));
    }
    let signs = found[0];
    let cycles = [0, 1, 2].map(|i| {
        let c = &f.factors()[i].cycle;
        if signs[i] {
            -c
        } else {
            c.clone()
        }
    });
    Ok(OrientedConfiguration::build(
        cycles,
        MarkovType::new(powers)?,
        f.boundary().clone(),
    ))
}

/// Cycle-level mutation:
///
/// 1. `(C1, C2, C3) -> (C1, -tau_C2^m C3, C2)`, powers `(l, n, m)`
/// 2. `(C1, C2, C3) -> (-tau_C1^l C2, C1, C3)`, powers `(m, l, n)`
/// 3. `(C1, C2, C3) -> (C2, -tau_C2^-m C1, C3)`, powers `(m, l, n)`
///
/// Up to the sign of one cycle these are the Hurwitz moves at position 2
/// forward, position 1 forward and position 1 inverse.
pub fn cycle_mutation(cfg: &OrientedConfiguration, which: u8) -> Result<OrientedConfiguration> {
    if !is_admissible(&cfg.cycles, &cfg.powers, &cfg.boundary) {
        return Err(Error::NotAdmissible);
    }
    let [c1, c2, c3] = &cfg.cycles;
    let [l, m, n] = cfg.powers.powers();
    let ty = |p: [u32; 3]| MarkovType::new(p);
    let (cycles, powers) = match which {
        1 => (
            [c1.clone(), -twist_unchecked(c2, &Int::from(m), c3), c2.clone()],
            ty([l, n, m])?,
        ),
        2 => (
            [-twist_unchecked(c1, &Int::from(l), c2), c1.clone(), c3.clone()],
            ty([m, l, n])?,
        ),
        3 => (
            [c2.clone(), -twist_unchecked(c2, &-Int::from(m), c1), c3.clone()],
            ty([m, l, n])?,
        ),
        _ => {
            return Err(Error::Mutation {
                which,
                reason: "mutations are numbered 1, 2, 3".into(),
            })
        }
    };
    let out = OrientedConfiguration::build(cycles, powers, cfg.boundary.clone());
    if !is_admissible(&out.cycles, &out.powers, &out.boundary) {
        return Err(Error::NotAdmissible);
    }
    Ok(out)
}

/// Position and direction of the Hurwitz move mirroring a mutation.
pub fn mutation_move(which: u8) -> Option<(usize, Direction)> {
    match which {
        1 => Some((2, Direction::Forward)),
        2 => Some((1, Direction::Forward)),
        3 => Some((1, Direction::Inverse)),
        _ => None,
    }
}

/// Witness that a factorization is equivalent to a registry row.
///
/// Replaying `word` as Hurwitz moves (see [`mutation_move`]) and then
/// conjugating by `conjugator` yields the row's factorization, up to the
/// orientation of each cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub word: Vec<u8>,
    pub conjugator: McgElement,
    pub row: usize,
    /// SHA-256 of the input factorization's JSON encoding.
    pub digest: String,
}

pub fn input_digest(f: &Factorization) -> String {
    let json = serde_json::to_string(f).expect("factorizations serialize");
    hex::encode(Sha256::digest(json.as_bytes()))
}

fn mirror(cfg: OrientedConfiguration, word: &[u8], stage: Stage) -> Result<OrientedConfiguration> {
    word.iter()
        .try_fold(cfg, |c, &w| cycle_mutation(&c, w))
        .map_err(|e| Error::at(stage, e))
}

/// Runs the full pipeline and returns a certificate naming the registry row.
pub fn classify(f: &Factorization) -> Result<Certificate> {
    ensure_extremal(f).map_err(|e| Error::at(Stage::Identity, e))?;
    let cfg = admissible_orient(f).map_err(|e| Error::at(Stage::Orientation, e))?;

    let down = markov::reduce_to_minimum(&cfg.triple, &cfg.powers).map_err(|e| Error::at(Stage::Reduction, e))?;
    let cfg = mirror(cfg, &down.word, Stage::Reduction)?;
    if cfg.triple != down.triple || cfg.powers != down.powers {
        return Err(Error::at(
            Stage::Reduction,
            "cycle mutations disagree with the Markov shadow",
        ));
    }

    let norm = markov::normalize_minimum(&cfg.triple, &cfg.powers).map_err(|e| Error::at(Stage::Normalization, e))?;
    let cfg = mirror(cfg, &norm.word, Stage::Normalization)?;
    if cfg.triple != norm.triple || cfg.powers != norm.powers {
        return Err(Error::at(
            Stage::Normalization,
            "cycle mutations disagree with the Markov shadow",
        ));
    }

    let row = registry_row(cfg.powers.row()).map_err(|e| Error::at(Stage::Conjugation, e))?;
    let u = HomologyClass::u();
    let a = Mat2::sending(&cfg.boundary, &u).map_err(|e| Error::at(Stage::Conjugation, e))?;
    let lifted = McgElement::lift(&a).map_err(|e| Error::at(Stage::Conjugation, e))?;
    let moved = cfg.cycles.clone().map(|c| lifted.apply(&c));
    // With boundary u every cycle (p, q) has p = <u, C> fixed; tau_u^t adds t p to q.
    let t = &row.cycles[2].q - &moved[2].q;
    let shift = McgElement::twist(&u, t).expect("u is primitive");
    let conjugator = shift.compose(&lifted);
    let image = moved.map(|c| shift.apply(&c));
    if image != row.cycles || cfg.powers.powers() != row.powers {
        return Err(Error::at(
            Stage::Conjugation,
            format!("conjugated cycles {image:?} differ from row {}", row.row),
        ));
    }

    let mut word = down.word;
    word.extend(norm.word);
    Ok(Certificate {
        word,
        conjugator,
        row: row.row,
        digest: input_digest(f),
    })
}

/// Replays a certificate on `f` and compares with its registry row.
pub fn verify_certificate(f: &Factorization, cert: &Certificate) -> bool {
    if cert.digest != input_digest(f) {
        return false;
    }
    let Ok(row) = registry_row(cert.row) else {
        return false;
    };
    let mut g = f.clone();
    for &w in &cert.word {
        let Some((i, dir)) = mutation_move(w) else {
            return false;
        };
        match g.hurwitz_move(i, dir) {
            Ok(next) => g = next,
            Err(_) => return false,
        }
    }
    g.global_conjugate(&cert.conjugator).same_twists(&row.factorization())
}

/// Checks `m n <c1, c2>^2 = l k <c3, c4>^2` given
/// `tau_c1^m tau_c2^n = delta tau_c3^-k tau_c4^-l`.
///
/// Returns [`Error::HypothesisNotSatisfied`] when the twist identity fails.
#[allow(clippy::too_many_arguments)]
pub fn check_intersections_identity(
    c1: &HomologyClass,
    c2: &HomologyClass,
    c3: &HomologyClass,
    c4: &HomologyClass,
    m: u32,
    n: u32,
    k: u32,
    l: u32,
) -> Result<bool> {
    let tw = |c: &HomologyClass, p: i64| McgElement::twist(c, p);
    let lhs = tw(c1, m as i64)?.compose(&tw(c2, n as i64)?);
    let rhs = McgElement::delta()
        .compose(&tw(c3, -(k as i64))?)
        .compose(&tw(c4, -(l as i64))?);
    if lhs != rhs {
        return Err(Error::HypothesisNotSatisfied(format!(
            "tau_{c1}^{m} tau_{c2}^{n} != delta tau_{c3}^-{k} tau_{c4}^-{l}"
        )));
    }
    let a = pairing(c1, c2).square() * Int::from(m) * Int::from(n);
    let b = pairing(c3, c4).square() * Int::from(l) * Int::from(k);
    Ok(a == b)
}

/// One 2+2 split `tau_c1^m tau_c2^n = delta tau_c3^-k tau_c4^-l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub c1: HomologyClass,
    pub c2: HomologyClass,
    pub c3: HomologyClass,
    pub c4: HomologyClass,
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub l: u32,
}

/// The three splits of an extremal factorization, read as the cyclic product
/// `P1 P2 P3 P4 = delta` with `P4 = tau_C^(12 - l - m - n)`.
pub fn splits(f: &Factorization) -> Result<[Split; 3]> {
    let powers = ensure_extremal(f)?;
    let s: u32 = powers.iter().sum();
    let blocks = [
        (f.factors()[0].cycle.clone(), powers[0]),
        (f.factors()[1].cycle.clone(), powers[1]),
        (f.factors()[2].cycle.clone(), powers[2]),
        (f.boundary().clone(), 12 - s),
    ];
    // P_a P_b = delta (P_c P_d)^-1 = delta P_d^-1 P_c^-1
    Ok([0, 1, 2].map(|r| {
        let b = |i: usize| &blocks[(r + i) % 4];
        Split {
            c1: b(0).0.clone(),
            m: b(0).1,
            c2: b(1).0.clone(),
            n: b(1).1,
            c3: b(3).0.clone(),
            k: b(3).1,
            c4: b(2).0.clone(),
            l: b(2).1,
        }
    }))
}

impl Split {
    pub fn check(&self) -> Result<bool> {
        check_intersections_identity(&self.c1, &self.c2, &self.c3, &self.c4, self.m, self.n, self.k, self.l)
    }
}
