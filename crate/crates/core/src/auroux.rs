//! Length-two factorizations `tau_C1 tau_C2` and the Auroux invariant.
//!
//! For a pair of primitive classes with `n = <C1, C2> > 0`, write
//! `C2 = k C1 + n V` in a symplectic basis `(C1, V)`. The residue `k mod n`
//! does not depend on `V`, is a unit, and changes as `k -> -1/k` under the
//! braid move. Two pairs are equivalent under braid moves and global
//! conjugation exactly when their residues agree up to that involution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{complete_symplectic_basis, pairing, twist_unchecked, HomologyClass};
use crate::mcg::{Mat2, McgElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(HomologyClass, HomologyClass)", into = "(HomologyClass, HomologyClass)")]
pub struct PrimitivePair {
    c1: HomologyClass,
    c2: HomologyClass,
}

impl PrimitivePair {
    pub fn new(c1: HomologyClass, c2: HomologyClass) -> Result<Self> {
        c1.ensure_primitive()?;
        c2.ensure_primitive()?;
        let n = pairing(&c1, &c2);
        if !n.is_positive() {
            return Err(Error::NonPositivePairing(n.to_string()));
        }
        Ok(PrimitivePair { c1, c2 })
    }

    pub fn c1(&self) -> &HomologyClass {
        &self.c1
    }

    pub fn c2(&self) -> &HomologyClass {
        &self.c2
    }

    /// `<C1, C2>`, always positive.
    pub fn n(&self) -> Int {
        pairing(&self.c1, &self.c2)
    }

    /// Image under a mapping class.
    pub fn map(&self, phi: &McgElement) -> PrimitivePair {
        PrimitivePair {
            c1: phi.apply(&self.c1),
            c2: phi.apply(&self.c2),
        }
    }
}

impl TryFrom<(HomologyClass, HomologyClass)> for PrimitivePair {
    type Error = Error;
    fn try_from((c1, c2): (HomologyClass, HomologyClass)) -> Result<Self> {
        PrimitivePair::new(c1, c2)
    }
}

impl From<PrimitivePair> for (HomologyClass, HomologyClass) {
    fn from(p: PrimitivePair) -> Self {
        (p.c1, p.c2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AurouxInvariant {
    pub n: Int,
    /// Residue in `[0, n)`.
    pub k: Int,
}

/// `k` such that `C2 = k C1 + n V` for the completion `V` of `C1`, unreduced.
fn raw_k(pair: &PrimitivePair) -> (HomologyClass, Int) {
    let v = complete_symplectic_basis(&pair.c1).expect("pair classes are primitive");
    // <C2, V> = k <C1, V> + n <V, V> = k
    let k = pairing(&pair.c2, &v);
    (v, k)
}

pub fn auroux_invariant(pair: &PrimitivePair) -> AurouxInvariant {
    let n = pair.n();
    let (_, k) = raw_k(pair);
    AurouxInvariant { k: k.rem_euclid(&n), n }
}

/// `(C1, C2) -> (-tau_C1 C2, C1)`.
pub fn braid_action(pair: &PrimitivePair) -> PrimitivePair {
    PrimitivePair {
        c1: -twist_unchecked(&pair.c1, &Int::ONE, &pair.c2),
        c2: pair.c1.clone(),
    }
}

/// `-k^-1 mod n` for a unit `k`.
pub fn minus_inverse(k: &Int, n: &Int) -> Int {
    if n.is_one() {
        return Int::ZERO;
    }
    let (g, s, _) = k.extended_gcd(n);
    assert!(g.is_one(), "{k} is not a unit mod {n}");
    (-s).rem_euclid(n)
}

/// An optional braid move followed by a global conjugation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub braid: bool,
    pub conjugator: McgElement,
}

impl Witness {
    pub fn replay(&self, pair: &PrimitivePair) -> PrimitivePair {
        let p = if self.braid { braid_action(pair) } else { pair.clone() };
        p.map(&self.conjugator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

/// Matrix with columns `(V, C1)`; determinant `<C1, V> = 1`.
fn basis_matrix(c1: &HomologyClass, v: &HomologyClass) -> Mat2 {
    Mat2::new(v.p.clone(), c1.p.clone(), v.q.clone(), c1.q.clone())
}

fn matching(from: &PrimitivePair, to: &PrimitivePair) -> Option<McgElement> {
    let n = from.n();
    let (v1, k1) = raw_k(from);
    let (v2, k2) = raw_k(to);
    // C2' = k2 C1' + n V2 = k1 C1' + n (V2 + t C1') with t = (k2 - k1) / n
    let t = (k2 - k1).div_exact(&n)?;
    let v2 = &v2 + &to.c1.scale(&t);
    let m = basis_matrix(&to.c1, &v2).mul(&basis_matrix(&from.c1, &v1).inverse_sl2());
    let phi = McgElement::lift(&m).expect("product of determinant-1 matrices");
    (from.map(&phi) == *to).then_some(phi)
}

/// Decides equivalence of two pairs and, when equivalent, returns a replayed witness.
pub fn equivalent(p1: &PrimitivePair, p2: &PrimitivePair) -> Equivalence {
    let no = Equivalence {
        equivalent: false,
        witness: None,
    };
    if p1.n() != p2.n() {
        return no;
    }
    for braid in [false, true] {
        let start = if braid { braid_action(p1) } else { p1.clone() };
        if let Some(conjugator) = matching(&start, p2) {
            let witness = Witness { braid, conjugator };
            debug_assert_eq!(witness.replay(p1), *p2);
            return Equivalence {
                equivalent: true,
                witness: Some(witness),
            };
        }
    }
    no
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, a)| (p - 1) * p.pow(a - 1)).product()
}

/// 1 if `n` is odd or twice an odd number, else 0.
pub fn psi(n: u64) -> u64 {
    u64::from(!n.is_multiple_of(4))
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn odd_prime_factor(p: u64) -> u64 {
    // 1 + (-1)^((p-1)/2)
    if p % 4 == 1 {
        2
    } else {
        0
    }
}

/// Number of classes of length-two factorizations with pairing `n`:
/// `(phi(n) + psi(n) * prod_{odd p | n} (1 + (-1)^((p-1)/2))) / 2`.
pub fn count_classes(n: u64) -> u64 {
    assert!(n >= 1);
    let prod: u64 = factorize(n)
        .iter()
        .filter(|(p, _)| p % 2 == 1)
        .map(|&(p, _)| odd_prime_factor(p))
        .product();
    (euler_phi(n) + psi(n) * prod) / 2
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn inverse_mod(k: u64, n: u64) -> u64 {
    (1..n).find(|j| k * j % n == 1).unwrap_or(0)
}

/// Orbits of `k -> -k^-1` on the units mod `n`, counted directly.
pub fn count_classes_bruteforce(n: u64) -> u64 {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    let mut seen = vec![false; n as usize];
    let mut orbits = 0;
    for k in 1..n {
        if gcd(k, n) != 1 || seen[k as usize] {
            continue;
        }
        orbits += 1;
        seen[k as usize] = true;
        seen[((n - inverse_mod(k, n)) % n) as usize] = true;
    }
    orbits
}

/// Number of `k mod n` with `k^2 = -1`, from the factorization of `n`.
pub fn residue_count_r(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n)
        .iter()
        .map(|&(p, a)| match p {
            2 => u64::from(a <= 1),
            _ => odd_prime_factor(p),
        })
        .product()
}

pub fn residue_count_r_bruteforce(n: u64) -> u64 {
    assert!(n >= 1);
    (0..n).filter(|k| (k * k + 1) % n == 0).count() as u64
}
