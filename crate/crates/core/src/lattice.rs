//! The first homology lattice of the one-holed torus.
//!
//! A class `p[v] + q[u]` is stored as the pair `(p, q)` where `[u]`, `[v]` is a
//! fixed symplectic basis with `<u, v> = 1`. Simple closed curves are
//! represented by their (primitive) homology classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Int, Int)", into = "(Int, Int)")]
pub struct HomologyClass {
    /// Coefficient of `[v]`.
    pub p: Int,
    /// Coefficient of `[u]`.
    pub q: Int,
}

impl HomologyClass {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Self {
        HomologyClass {
            p: p.into(),
            q: q.into(),
        }
    }

    /// The basis class `[u] = (0, 1)`.
    pub fn u() -> Self {
        HomologyClass::new(0, 1)
    }

    /// The basis class `[v] = (1, 0)`.
    pub fn v() -> Self {
        HomologyClass::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(self)
    }

    pub fn ensure_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive(self.clone()))
        }
    }

    pub fn scale(&self, k: &Int) -> Self {
        HomologyClass {
            p: &self.p * k,
            q: &self.q * k,
        }
    }

    /// Sign-normalized representative of `{self, -self}`: the first nonzero
    /// coordinate is made positive. Dehn twists do not see orientation, so two
    /// curves define the same twist iff their normalized classes agree.
    pub fn unoriented(&self) -> Self {
        if self.p.is_negative() || (self.p.is_zero() && self.q.is_negative()) {
            -self
        } else {
            self.clone()
        }
    }

    pub fn same_curve(&self, other: &HomologyClass) -> bool {
        self == other || *self == -other
    }
}

impl From<(Int, Int)> for HomologyClass {
    fn from((p, q): (Int, Int)) -> Self {
        HomologyClass { p, q }
    }
}

impl From<HomologyClass> for (Int, Int) {
    fn from(c: HomologyClass) -> Self {
        (c.p, c.q)
    }
}

impl std::ops::Add for &HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        HomologyClass {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl std::ops::Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        HomologyClass {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl std::ops::Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        HomologyClass {
            p: -&self.p,
            q: -&self.q,
        }
    }
}

impl std::ops::Neg for HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        -&self
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Algebraic intersection number `<a, b> = q_a p_b - p_a q_b`.
///
/// With this sign `<u, v> = 1`.
pub fn pairing(a: &HomologyClass, b: &HomologyClass) -> Int {
    &a.q * &b.p - &a.p * &b.q
}

pub fn is_primitive(a: &HomologyClass) -> bool {
    a.p.gcd(&a.q).is_one()
}

/// Image of `g` under the `power`-th power of the Dehn twist about `c`:
/// `g + power * <c, g> * c`.
pub fn dehn_twist_action(c: &HomologyClass, power: &Int, g: &HomologyClass) -> Result<HomologyClass> {
    c.ensure_primitive()?;
    Ok(twist_unchecked(c, power, g))
}

pub(crate) fn twist_unchecked(c: &HomologyClass, power: &Int, g: &HomologyClass) -> HomologyClass {
    let k = power * pairing(c, g);
    if k.is_zero() {
        return g.clone();
    }
    &c.scale(&k) + g
}

/// Returns `v'` with `<u', v'> = 1`, so that `(u', v')` is a symplectic basis.
pub fn complete_symplectic_basis(u: &HomologyClass) -> Result<HomologyClass> {
    u.ensure_primitive()?;
    // s*q_u + t*p_u = 1  =>  <u, (s, -t)> = q_u*s + p_u*t = 1
    let (g, s, t) = u.q.extended_gcd(&u.p);
    debug_assert!(g.is_one());
    let v = HomologyClass { p: s, q: -t };
    debug_assert!(pairing(u, &v).is_one());
    Ok(v)
}
