//! The mapping class group of the one-holed torus, represented faithfully.
//!
//! An element is stored as the pair (symplectic matrix, abelianization). The
//! symplectic representation `MCG -> SL(2, Z)` is surjective with kernel
//! generated by the boundary twist `delta`, which abelianizes to 12. So if two
//! elements have the same matrix they differ by `delta^k`, and equal
//! abelianizations force `k = 0`. Componentwise equality of the pair is
//! therefore equality in the group.
//!
//! Products are written as in function composition: `a * b` applies `b` first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::HomologyClass;

/// A 2x2 integer matrix `[[a, b], [c, d]]` acting on columns `(p, q)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[[Int; 2]; 2]", into = "[[Int; 2]; 2]")]
pub struct Mat2 {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl Mat2 {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>, d: impl Into<Int>) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inverse_sl2(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn apply(&self, g: &HomologyClass) -> HomologyClass {
        HomologyClass {
            p: &self.a * &g.p + &self.b * &g.q,
            q: &self.c * &g.p + &self.d * &g.q,
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Matrix of `gamma -> gamma + power * <c, gamma> * c`.
    pub fn twist(c: &HomologyClass, power: &Int) -> Mat2 {
        let mp = power * &c.p;
        let mq = power * &c.q;
        let mpq = &mp * &c.q;
        Mat2 {
            a: Int::ONE + &mpq,
            b: -(&mp * &c.p),
            c: &mq * &c.q,
            d: Int::ONE - &mpq,
        }
    }

    /// Any determinant-1 matrix sending `from` to `to`; both must be primitive.
    pub fn sending(from: &HomologyClass, to: &HomologyClass) -> Result<Mat2> {
        // Columns of B_x are (v_x, u_x) with <u_x, v_x> = 1, i.e. det B_x = 1
        // and B_x (0, 1) = u_x.
        let basis = |u: &HomologyClass| -> Result<Mat2> {
            let v = crate::lattice::complete_symplectic_basis(u)?;
            Ok(Mat2 {
                a: v.p,
                b: u.p.clone(),
                c: v.q,
                d: u.q.clone(),
            })
        };
        let m = basis(to)?.mul(&basis(from)?.inverse_sl2());
        debug_assert!(m.det().is_one());
        Ok(m)
    }
}

impl From<[[Int; 2]; 2]> for Mat2 {
    fn from([[a, b], [c, d]]: [[Int; 2]; 2]) -> Self {
        Mat2 { a, b, c, d }
    }
}

impl From<Mat2> for [[Int; 2]; 2] {
    fn from(m: Mat2) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    mat: Mat2,
    ab: Int,
}

/// An element of MCG(Σ₁,₁) as (symplectic matrix, abelianization).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub struct McgElement {
    mat: Mat2,
    ab: Int,
}

impl TryFrom<RawElement> for McgElement {
    type Error = Error;
    fn try_from(raw: RawElement) -> Result<Self> {
        McgElement::new(raw.mat, raw.ab)
    }
}

impl From<McgElement> for RawElement {
    fn from(e: McgElement) -> Self {
        RawElement { mat: e.mat, ab: e.ab }
    }
}

impl McgElement {
    /// Builds an element from its two components, rejecting matrices outside SL(2, Z).
    pub fn new(mat: Mat2, ab: impl Into<Int>) -> Result<Self> {
        let det = mat.det();
        if !det.is_one() {
            return Err(Error::BadDeterminant(det.to_string()));
        }
        Ok(McgElement { mat, ab: ab.into() })
    }

    pub fn identity() -> Self {
        McgElement {
            mat: Mat2::identity(),
            ab: Int::ZERO,
        }
    }

    pub fn mat(&self) -> &Mat2 {
        &self.mat
    }

    pub fn ab(&self) -> &Int {
        &self.ab
    }

    /// The `power`-th power of the Dehn twist about a non-separating curve.
    pub fn twist(c: &HomologyClass, power: impl Into<Int>) -> Result<Self> {
        c.ensure_primitive()?;
        let power = power.into();
        Ok(McgElement {
            mat: Mat2::twist(c, &power),
            ab: power,
        })
    }

    /// The boundary twist: trivial on homology, abelianization 12.
    pub fn delta() -> Self {
        McgElement {
            mat: Mat2::identity(),
            ab: Int::from(12),
        }
    }

    /// `self * other`, with `other` applied first.
    pub fn compose(&self, other: &McgElement) -> McgElement {
        McgElement {
            mat: self.mat.mul(&other.mat),
            ab: &self.ab + &other.ab,
        }
    }

    pub fn inverse(&self) -> McgElement {
        McgElement {
            mat: self.mat.inverse_sl2(),
            ab: -&self.ab,
        }
    }

    pub fn equals(&self, other: &McgElement) -> bool {
        self == other
    }

    pub fn apply(&self, g: &HomologyClass) -> HomologyClass {
        self.mat.apply(g)
    }

    /// `phi * tau_c^power * phi^-1 = tau_{phi(c)}^power`, returned as the twist data.
    pub fn conjugate_twist(&self, c: &HomologyClass, power: impl Into<Int>) -> Result<(HomologyClass, Int)> {
        c.ensure_primitive()?;
        Ok((self.mat.apply(c), power.into()))
    }

    /// Coefficients `(A, B, C)` of the binary quadratic form
    /// `<phi(gamma), gamma> = A p^2 + B pq + C q^2` for `gamma = (p, q)`.
    pub fn quadratic_form(&self) -> (Int, Int, Int) {
        // <M g, g> = (c p + d q) p - (a p + b q) q
        let m = &self.mat;
        (m.c.clone(), &m.d - &m.a, -&m.b)
    }

    /// Discriminant `B^2 - 4AC` of [`Self::quadratic_form`].
    pub fn discriminant(&self) -> Int {
        let (a, b, c) = self.quadratic_form();
        b.square() - Int::from(4) * a * c
    }

    /// A mapping class with the given symplectic matrix, written as a word in
    /// the twists about `u = (0, 1)` and `v = (1, 0)`.
    ///
    /// The matrix determines the class only up to powers of `delta`; the word
    /// produced by Euclid's algorithm on the first column fixes one lift.
    pub fn lift(mat: &Mat2) -> Result<McgElement> {
        let det = mat.det();
        if !det.is_one() {
            return Err(Error::BadDeterminant(det.to_string()));
        }
        let u = HomologyClass::u();
        let v = HomologyClass::v();
        // twist(u, k): row2 += k*row1.  twist(v, k): row1 -= k*row2.
        let mut steps: Vec<(bool, Int)> = Vec::new();
        let mut m = mat.clone();
        while !m.c.is_zero() {
            let (is_u, k) = if m.a.is_zero() {
                (false, -&m.c)
            } else if m.a.abs() > m.c.abs() {
                (false, trunc_div(&m.a, &m.c))
            } else {
                (true, -trunc_div(&m.c, &m.a))
            };
            let g = if is_u { Mat2::twist(&u, &k) } else { Mat2::twist(&v, &k) };
            m = g.mul(&m);
            steps.push((is_u, k));
        }
        // m = ±[[1, b], [0, 1]] = ±twist(v, -b)
        let mut tail = if m.a.is_one() {
            McgElement::twist(&v, -&m.b)?
        } else {
            McgElement::twist(&v, m.b.clone())?.compose(&minus_identity())
        };
        for (is_u, k) in steps.into_iter().rev() {
            let c = if is_u { &u } else { &v };
            tail = McgElement::twist(c, -k)?.compose(&tail);
        }
        debug_assert_eq!(&tail.mat, mat);
        Ok(tail)
    }
}

fn trunc_div(a: &Int, b: &Int) -> Int {
    let q = a.div_floor(b);
    if !(a - &(&q * b)).is_zero() && (a.is_negative() != b.is_negative()) {
        q + Int::ONE
    } else {
        q
    }
}

/// `(tau_u tau_v)^3`, the hyperelliptic involution: matrix `-I`, abelianization 6.
pub fn minus_identity() -> McgElement {
    let uv = McgElement::twist(&HomologyClass::u(), 1)
        .unwrap()
        .compose(&McgElement::twist(&HomologyClass::v(), 1).unwrap());
    uv.compose(&uv).compose(&uv)
}

/// Discriminant of `tau_{c1}^m tau_{c2}^n` predicted from `a = <c1, c2>`.
pub fn two_twist_discriminant(m: &Int, n: &Int, a: &Int) -> Int {
    let mn = m * n;
    let a2 = a.square();
    mn.square() * a2.square() - Int::from(4) * mn * a2
}

/// Checks the twist conjugation identity at the level of group elements.
pub fn conjugation_identity_holds(phi: &McgElement, c: &HomologyClass, power: &Int) -> Result<bool> {
    let lhs = phi
        .compose(&McgElement::twist(c, power.clone())?)
        .compose(&phi.inverse());
    let (c2, p2) = phi.conjugate_twist(c, power.clone())?;
    Ok(lhs == McgElement::twist(&c2, p2)?)
}

impl fmt::Display for McgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ab={})", self.mat, self.ab)
    }
}

impl fmt::Debug for McgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pairing;
    use crate::testing::arb_primitive;
    use proptest::prelude::*;

    fn pairing_preserved(m: &Mat2, a: &HomologyClass, b: &HomologyClass) -> bool {
        pairing(&m.apply(a), &m.apply(b)) == pairing(a, b)
    }

    fn hc(p: i64, q: i64) -> HomologyClass {
        HomologyClass::new(p, q)
    }

    fn el(a: i64, b: i64, c: i64, d: i64, ab: i64) -> McgElement {
        McgElement::new(Mat2::new(a, b, c, d), ab).unwrap()
    }

    #[test]
    fn twist_examples() {
        let u = HomologyClass::u();
        assert_eq!(McgElement::twist(&u, 1).unwrap(), el(1, 0, 1, 1, 1));
        assert_eq!(McgElement::twist(&u, -9).unwrap(), el(1, 0, -9, 1, -9));
        assert_eq!(McgElement::twist(&hc(3, -8), 0).unwrap(), McgElement::identity());
        assert!(McgElement::twist(&hc(2, 0), 1).is_err());
    }

    #[test]
    fn delta_examples() {
        let d = McgElement::delta();
        assert_eq!(d, el(1, 0, 0, 1, 12));
        assert_eq!(d.compose(&d), el(1, 0, 0, 1, 24));
        assert_ne!(d, McgElement::twist(&HomologyClass::u(), 12).unwrap());
    }

    #[test]
    fn group_structure() {
        let u = HomologyClass::u();
        let x = McgElement::twist(&hc(2, 5), 3)
            .unwrap()
            .compose(&McgElement::twist(&hc(1, -4), 2).unwrap());
        assert_eq!(x.compose(&x.inverse()), McgElement::identity());
        let t = McgElement::twist(&u, 1).unwrap();
        assert_eq!(t.compose(&t), McgElement::twist(&u, 2).unwrap());
        assert_eq!(
            McgElement::delta().compose(&McgElement::twist(&u, -9).unwrap()),
            el(1, 0, -9, 1, 3)
        );
    }

    #[test]
    fn braid_relation_and_center() {
        // tau_u tau_v tau_u = tau_v tau_u tau_v, and (tau_u tau_v)^6 = delta.
        let tu = McgElement::twist(&HomologyClass::u(), 1).unwrap();
        let tv = McgElement::twist(&HomologyClass::v(), 1).unwrap();
        assert_eq!(tu.compose(&tv).compose(&tu), tv.compose(&tu).compose(&tv));
        let uv = tu.compose(&tv);
        let mut p = McgElement::identity();
        for _ in 0..6 {
            p = p.compose(&uv);
        }
        assert_eq!(p, McgElement::delta());
        assert_eq!(minus_identity(), el(-1, 0, 0, -1, 6));
    }

    #[test]
    fn conjugate_twist_examples() {
        let phi = McgElement::twist(&HomologyClass::u(), 1).unwrap();
        assert_eq!(
            phi.conjugate_twist(&HomologyClass::v(), 1).unwrap(),
            (hc(1, 1), Int::ONE)
        );
        assert_eq!(
            McgElement::identity().conjugate_twist(&hc(3, 7), 4).unwrap(),
            (hc(3, 7), Int::from(4))
        );
        let phi = McgElement::twist(&HomologyClass::u(), -2).unwrap();
        assert_eq!(phi.conjugate_twist(&hc(1, 3), 5).unwrap().0, hc(1, 1));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(McgElement::twist(&HomologyClass::u(), 1).unwrap().discriminant(), 0);
        let e = McgElement::twist(&hc(1, 0), 1)
            .unwrap()
            .compose(&McgElement::twist(&hc(1, 1), 1).unwrap());
        assert_eq!(e.discriminant(), -3);
        // |<c1, c2>| = 2
        let (c1, c2) = (hc(0, 1), hc(2, 1));
        assert_eq!(pairing(&c1, &c2).abs(), 2);
        let e = McgElement::twist(&c1, 2)
            .unwrap()
            .compose(&McgElement::twist(&c2, 3).unwrap());
        assert_eq!(e.discriminant(), 480);
    }

    #[test]
    fn rejects_non_sl2() {
        assert!(McgElement::new(Mat2::new(2, 0, 0, 1), 0).is_err());
        let bad: std::result::Result<McgElement, _> = serde_json::from_str(r#"{"mat": [[1, 1], [1, 1]], "ab": 0}"#);
        assert!(bad.is_err());
        let ok: McgElement = serde_json::from_str(r#"{"mat": [[1, 0], [-9, 1]], "ab": 3}"#).unwrap();
        assert_eq!(ok, el(1, 0, -9, 1, 3));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(McgElement::lift(&Mat2::identity()).unwrap(), McgElement::identity());
        assert_eq!(McgElement::lift(&Mat2::new(-1, 0, 0, -1)).unwrap(), minus_identity());
        let m = Mat2::new(0, -1, 1, 0);
        assert_eq!(McgElement::lift(&m).unwrap().mat(), &m);
    }

    proptest! {
        #[test]
        fn discriminant_matches_two_twist_formula(c1 in arb_primitive(50), c2 in arb_primitive(50), m in 1i64..=12, n in 1i64..=12) {
            let e = McgElement::twist(&c1, m).unwrap().compose(&McgElement::twist(&c2, n).unwrap());
            let a = pairing(&c1, &c2);
            prop_assert_eq!(e.discriminant(), two_twist_discriminant(&Int::from(m), &Int::from(n), &a));
            // independent route for determinant-1 matrices: tr^2 - 4
            prop_assert_eq!(e.discriminant(), e.mat().trace().square() - Int::from(4));
        }

        #[test]
        fn discriminant_is_conjugation_invariant(c1 in arb_primitive(30), c2 in arb_primitive(30), c3 in arb_primitive(30), k in -5i64..5) {
            let e = McgElement::twist(&c1, 2).unwrap().compose(&McgElement::twist(&c2, 1).unwrap());
            let phi = McgElement::twist(&c3, k).unwrap().compose(&McgElement::twist(&c1, 1).unwrap());
            let conj = phi.compose(&e).compose(&phi.inverse());
            prop_assert_eq!(conj.discriminant(), e.discriminant());
        }

        #[test]
        fn twist_abelianizes_to_power(c in arb_primitive(100), n in -20i64..20) {
            let t = McgElement::twist(&c, n).unwrap();
            prop_assert_eq!(t.ab(), &Int::from(n));
        }

        #[test]
        fn conjugation_identity(c in arb_primitive(40), d in arb_primitive(40), k in -6i64..6, n in -6i64..6) {
            let phi = McgElement::twist(&d, k).unwrap().compose(&McgElement::twist(&HomologyClass::u(), 1).unwrap());
            prop_assert!(conjugation_identity_holds(&phi, &c, &Int::from(n)).unwrap());
        }

        #[test]
        fn lift_realizes_matrix(c in arb_primitive(200), d in arb_primitive(200)) {
            let m = Mat2::sending(&c, &d).unwrap();
            prop_assert_eq!(m.apply(&c), d.clone());
            let e = McgElement::lift(&m).unwrap();
            prop_assert_eq!(e.mat(), &m);
        }

        #[test]
        fn sl2_preserves_pairing(c in arb_primitive(50), d in arb_primitive(50), a in arb_primitive(50), b in arb_primitive(50)) {
            let m = Mat2::sending(&c, &d).unwrap();
            prop_assert!(pairing_preserved(&m, &a, &b));
        }
    }
}
