//! Monodromy factorizations as ordered blocks of twist powers.
//!
//! A fiber of type `I_n` contributes the `n`-th power of the Dehn twist about
//! its vanishing cycle; a [`Factorization`] is the ordered list of such blocks
//! together with the boundary curve `C` of the extremal identity
//! `tau_1^l tau_2^m tau_3^n = delta * tau_C^(l+m+n-12)`.

mod registry;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{twist_unchecked, HomologyClass};
use crate::mcg::McgElement;

pub use registry::{canonical_registry, printed_table, registry_row, CanonicalRow, EXTREMAL_POWERS};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistFactor {
    pub cycle: HomologyClass,
    pub power: u32,
}

impl TwistFactor {
    pub fn new(cycle: HomologyClass, power: u32) -> Self {
        TwistFactor { cycle, power }
    }

    pub fn element(&self) -> McgElement {
        McgElement::twist(&self.cycle, self.power).expect("factor cycles are primitive")
    }

    fn validate(&self) -> Result<()> {
        self.cycle.ensure_primitive()?;
        if self.power == 0 {
            return Err(Error::NonPositivePower(0));
        }
        Ok(())
    }
}

impl fmt::Debug for TwistFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.cycle, self.power)
    }
}

#[derive(Serialize, Deserialize)]
struct RawFactorization {
    factors: Vec<TwistFactor>,
    boundary: HomologyClass,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFactorization", into = "RawFactorization")]
pub struct Factorization {
    factors: Vec<TwistFactor>,
    boundary: HomologyClass,
}

impl TryFrom<RawFactorization> for Factorization {
    type Error = Error;
    fn try_from(raw: RawFactorization) -> Result<Self> {
        Factorization::new(raw.factors, raw.boundary)
    }
}

impl From<Factorization> for RawFactorization {
    fn from(f: Factorization) -> Self {
        RawFactorization {
            factors: f.factors,
            boundary: f.boundary,
        }
    }
}

/// Direction of a braid generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

impl Factorization {
    pub fn new(factors: Vec<TwistFactor>, boundary: HomologyClass) -> Result<Self> {
        for f in &factors {
            f.validate()?;
        }
        boundary.ensure_primitive()?;
        Ok(Factorization { factors, boundary })
    }

    /// Convenience constructor from `(p, q, power)` triples.
    pub fn from_blocks(blocks: &[(i64, i64, u32)], boundary: (i64, i64)) -> Result<Self> {
        let factors = blocks
            .iter()
            .map(|&(p, q, n)| TwistFactor::new(HomologyClass::new(p, q), n))
            .collect();
        Factorization::new(factors, HomologyClass::new(boundary.0, boundary.1))
    }

    pub fn factors(&self) -> &[TwistFactor] {
        &self.factors
    }

    pub fn boundary(&self) -> &HomologyClass {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn powers(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.power).collect()
    }

    pub fn power_sum(&self) -> i64 {
        self.factors.iter().map(|f| f.power as i64).sum()
    }

    /// Product of the blocks in written order (the leftmost block is applied last).
    pub fn evaluate(&self) -> McgElement {
        self.factors
            .iter()
            .fold(McgElement::identity(), |acc, f| acc.compose(&f.element()))
    }

    /// Replaces the cycle of one block by its negative (same Dehn twist).
    pub fn flip(&self, index: usize) -> Result<Factorization> {
        let len = self.len();
        let mut out = self.clone();
        let f = out
            .factors
            .get_mut(index)
            .ok_or(Error::IndexOutOfRange { index, len })?;
        f.cycle = -&f.cycle;
        Ok(out)
    }

    /// Block Hurwitz move at the 1-based position `i`.
    ///
    /// Forward: `(c, a), (d, b) -> (tau_c^a d, b), (c, a)`.
    /// Inverse: `(c, a), (d, b) -> (d, b), (tau_d^-b c, a)`.
    pub fn hurwitz_move(&self, i: usize, direction: Direction) -> Result<Factorization> {
        let len = self.len();
        if i == 0 || i >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        let (c, a) = (&self.factors[i - 1].cycle, self.factors[i - 1].power);
        let (d, b) = (&self.factors[i].cycle, self.factors[i].power);
        let (left, right) = match direction {
            Direction::Forward => (
                TwistFactor::new(twist_unchecked(c, &Int::from(a), d), b),
                TwistFactor::new(c.clone(), a),
            ),
            Direction::Inverse => (
                TwistFactor::new(d.clone(), b),
                TwistFactor::new(twist_unchecked(d, &-Int::from(b), c), a),
            ),
        };
        let mut out = self.clone();
        out.factors[i - 1] = left;
        out.factors[i] = right;
        Ok(out)
    }

    /// Conjugates every block, and the boundary curve, by `phi`.
    pub fn global_conjugate(&self, phi: &McgElement) -> Factorization {
        Factorization {
            factors: self
                .factors
                .iter()
                .map(|f| TwistFactor::new(phi.apply(&f.cycle), f.power))
                .collect(),
            boundary: phi.apply(&self.boundary),
        }
    }

    /// Equality of the underlying twists: powers and boundary exactly, cycles
    /// up to orientation.
    pub fn same_twists(&self, other: &Factorization) -> bool {
        self.len() == other.len()
            && self.boundary.same_curve(&other.boundary)
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| a.power == b.power && a.cycle.same_curve(&b.cycle))
    }

    /// Exponent `l + m + n - 12` of the boundary twist in the extremal identity.
    pub fn boundary_exponent(&self) -> i64 {
        self.power_sum() - 12
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Factorization")
            .field("factors", &self.factors)
            .field("boundary", &self.boundary)
            .finish()
    }
}

/// `delta * tau_boundary^(l+m+n-12)`.
pub fn extremal_target(powers: [u32; 3], boundary: &HomologyClass) -> Result<McgElement> {
    let exponent = powers.iter().map(|&p| p as i64).sum::<i64>() - 12;
    Ok(McgElement::delta().compose(&McgElement::twist(boundary, exponent)?))
}

/// Sorted copy of a power triple, used to match against the extremal types.
pub fn power_multiset(powers: [u32; 3]) -> [u32; 3] {
    let mut p = powers;
    p.sort_unstable();
    p
}

/// The registry row whose power multiset equals `powers`, if any.
pub fn extremal_row_for(powers: [u32; 3]) -> Option<usize> {
    let key = power_multiset(powers);
    EXTREMAL_POWERS
        .iter()
        .position(|p| power_multiset(*p) == key)
        .map(|i| i + 1)
}

/// Checks the extremal identity, distinguishing a wrong factor count from an
/// identity failure. `Ok(false)` means three factors whose product is wrong or
/// whose powers match no extremal type.
pub fn check_extremal(f: &Factorization) -> Result<bool> {
    let powers = three_powers(f)?;
    if extremal_row_for(powers).is_none() {
        return Ok(false);
    }
    Ok(f.evaluate() == extremal_target(powers, f.boundary())?)
}

pub fn is_extremal_rational(f: &Factorization) -> Result<bool> {
    check_extremal(f)
}

/// Like [`check_extremal`] but every failure is an error.
pub fn ensure_extremal(f: &Factorization) -> Result<[u32; 3]> {
    let powers = three_powers(f)?;
    if extremal_row_for(powers).is_none() {
        return Err(Error::UnknownPowers(powers));
    }
    if f.evaluate() != extremal_target(powers, f.boundary())? {
        return Err(Error::IdentityFailure {
            exponent: f.boundary_exponent(),
        });
    }
    Ok(powers)
}

pub(crate) fn three_powers(f: &Factorization) -> Result<[u32; 3]> {
    match f.powers().as_slice() {
        &[l, m, n] => Ok([l, m, n]),
        other => Err(Error::WrongFactorCount(other.len())),
    }
}
