//! Arithmetic on elements of `D_n` written in the canonical form `r^k f^e`.
//!
//! Elements do not carry `n`; every operation goes through a
//! [`GroupDescriptor`], which also indexes elements densely as
//! `rot + n * flip`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A group element `r^rot` (no flip) or `r^rot f` (flip).
///
/// Field order matters: the derived ordering sorts rotations before flips and
/// then by exponent, which is also the dense index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    flip: bool,
    rot: u32,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { flip: false, rot: 0 };

    /// Builds an element from raw parts. The exponent is not reduced; use
    /// [`GroupDescriptor::canonicalize`] when it may be out of range.
    pub const fn new(rot: u32, flip: bool) -> Self {
        DihedralElement { flip, rot }
    }

    /// `r^k`
    pub const fn rotation(k: u32) -> Self {
        DihedralElement { flip: false, rot: k }
    }

    /// `r^k f`
    pub const fn reflection(k: u32) -> Self {
        DihedralElement { flip: true, rot: k }
    }

    pub const fn rot(self) -> u32 {
        self.rot
    }

    pub const fn is_flip(self) -> bool {
        self.flip
    }

    pub const fn is_identity(self) -> bool {
        !self.flip && self.rot == 0
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.flip) {
            (0, false) => f.write_str("1"),
            (0, true) => f.write_str("f"),
            (k, false) => write!(f, "r^{k}"),
            (k, true) => write!(f, "r^{k}*f"),
        }
    }
}

impl Serialize for DihedralElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts `1`, `f`, `r`, `r^k`, `r*f`, `r^k*f` (the `*` is optional and
/// whitespace is ignored). Exponents are not reduced.
impl FromStr for DihedralElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "" => return Err(fail("empty element")),
            "1" => return Ok(DihedralElement::IDENTITY),
            "f" => return Ok(DihedralElement::reflection(0)),
            _ => {}
        }
        let rest = compact
            .strip_prefix('r')
            .ok_or_else(|| fail("expected `1`, `f` or a word starting with `r`"))?;
        let (rest, flip) = match rest.strip_suffix('f') {
            Some(head) => (head.strip_suffix('*').unwrap_or(head), true),
            None => (rest, false),
        };
        let rot = if rest.is_empty() {
            1
        } else {
            let digits = rest.strip_prefix('^').ok_or_else(|| fail("expected `^` after `r`"))?;
            digits
                .parse::<u32>()
                .map_err(|_| fail("exponent must be a nonnegative integer"))?
        };
        Ok(DihedralElement { flip, rot })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Dihedral,
    /// The rotation subgroup on its own; used for the commutative sanity checks.
    Cyclic,
}

/// The ambient group: `D_n` (order `2n`) or the cyclic group `C_n` (order `n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupDescriptor {
    kind: GroupKind,
    n: u32,
}

impl GroupDescriptor {
    /// `D_n`; `n` must be at least 3.
    pub fn dihedral(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidOrder {
                n,
                reason: "dihedral groups require n >= 3",
            });
        }
        Ok(GroupDescriptor {
            kind: GroupKind::Dihedral,
            n,
        })
    }

    /// `C_n`; `n` must be at least 1.
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder {
                n,
                reason: "cyclic groups require n >= 1",
            });
        }
        Ok(GroupDescriptor {
            kind: GroupKind::Cyclic,
            n,
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_dihedral(&self) -> bool {
        self.kind == GroupKind::Dihedral
    }

    pub fn order(&self) -> usize {
        match self.kind {
            GroupKind::Dihedral => 2 * self.n as usize,
            GroupKind::Cyclic => self.n as usize,
        }
    }

    pub fn identity(&self) -> DihedralElement {
        DihedralElement::IDENTITY
    }

    pub fn contains(&self, e: DihedralElement) -> bool {
        e.rot < self.n && (!e.flip || self.is_dihedral())
    }

    /// Dense index `rot + n * flip`.
    #[inline]
    pub fn index(&self, e: DihedralElement) -> usize {
        e.rot as usize + self.n as usize * usize::from(e.flip)
    }

    #[inline]
    pub fn element(&self, index: usize) -> DihedralElement {
        let n = self.n as usize;
        debug_assert!(index < self.order());
        DihedralElement {
            flip: index >= n,
            rot: (index % n) as u32,
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// `r^k` with `k` reduced mod `n`.
    pub fn rotation(&self, k: i64) -> DihedralElement {
        DihedralElement::rotation(k.rem_euclid(self.n as i64) as u32)
    }

    /// `r^k f` with `k` reduced mod `n`.
    pub fn reflection(&self, k: i64) -> DihedralElement {
        DihedralElement::reflection(k.rem_euclid(self.n as i64) as u32)
    }

    /// Reduces the exponent mod `n`; flips are rejected in a cyclic group.
    pub fn canonicalize(&self, e: DihedralElement) -> Result<DihedralElement> {
        if e.flip && !self.is_dihedral() {
            return Err(Error::ForeignElement {
                element: e,
                group: self.to_string(),
            });
        }
        Ok(DihedralElement {
            flip: e.flip,
            rot: e.rot % self.n,
        })
    }

    /// `r^i f^e · r^j f^d`, using `f r^j = r^{-j} f`.
    #[inline]
    pub fn mul(&self, a: DihedralElement, b: DihedralElement) -> DihedralElement {
        let n = self.n;
        if a.flip {
            DihedralElement {
                flip: !b.flip,
                rot: (a.rot + n - b.rot) % n,
            }
        } else {
            DihedralElement {
                flip: b.flip,
                rot: (a.rot + b.rot) % n,
            }
        }
    }

    #[inline]
    pub fn inverse(&self, a: DihedralElement) -> DihedralElement {
        if a.flip {
            a
        } else {
            DihedralElement {
                flip: false,
                rot: (self.n - a.rot) % self.n,
            }
        }
    }

    pub fn pow(&self, a: DihedralElement, k: u64) -> DihedralElement {
        if a.flip {
            if k.is_multiple_of(2) {
                DihedralElement::IDENTITY
            } else {
                a
            }
        } else {
            let n = u64::from(self.n);
            DihedralElement::rotation(((u64::from(a.rot) % n) * (k % n) % n) as u32)
        }
    }

    pub fn element_order(&self, a: DihedralElement) -> u32 {
        if a.flip {
            2
        } else {
            self.n / a.rot.gcd(&self.n)
        }
    }

    /// `g s g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: DihedralElement, s: DihedralElement) -> DihedralElement {
        self.mul(self.mul(g, s), self.inverse(g))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Dihedral => write!(f, "D_{}", self.n),
            GroupKind::Cyclic => write!(f, "C_{}", self.n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u32) -> GroupDescriptor {
        GroupDescriptor::dihedral(n).unwrap()
    }

    fn el(s: &str) -> DihedralElement {
        s.parse().unwrap()
    }

    #[test]
    fn small_dihedral_rejected() {
        assert!(matches!(GroupDescriptor::dihedral(2), Err(Error::InvalidOrder { .. })));
        assert!(GroupDescriptor::cyclic(0).is_err());
        assert_eq!(GroupDescriptor::cyclic(2).unwrap().order(), 2);
        assert_eq!(d(7).order(), 14);
    }

    #[test]
    fn multiplication_examples() {
        let g = d(3);
        assert_eq!(g.mul(el("r^1*f"), el("f")), el("r^1"));
        for n in 3..10 {
            let g = d(n);
            for k in 0..n {
                let x = DihedralElement::reflection(k);
                assert_eq!(g.mul(x, x), DihedralElement::IDENTITY);
            }
        }
        assert_eq!(d(4).mul(el("r^2"), el("r^3")), el("r^1"));
    }

    #[test]
    fn inverse_examples() {
        let g = d(5);
        assert_eq!(g.inverse(el("r^2")), el("r^3"));
        assert_eq!(g.inverse(el("r^4*f")), el("r^4*f"));
        assert_eq!(g.inverse(DihedralElement::IDENTITY), DihedralElement::IDENTITY);
    }

    #[test]
    fn order_examples() {
        assert_eq!(d(6).element_order(el("r^3")), 2);
        assert_eq!(d(6).element_order(el("r^2")), 3);
        assert_eq!(d(7).element_order(el("r^4*f")), 2);
        assert_eq!(d(7).element_order(DihedralElement::IDENTITY), 1);
    }

    #[test]
    fn conjugate_examples() {
        for n in 3..12 {
            let g = d(n);
            for k in 0..n {
                let rk = DihedralElement::rotation(k);
                assert_eq!(g.conjugate(rk, el("f")), g.reflection(2 * k as i64));
            }
        }
        assert_eq!(d(5).conjugate(el("r^2*f"), el("r*f")), el("r^3*f"));
        assert_eq!(d(5).conjugate(DihedralElement::IDENTITY, el("r^4")), el("r^4"));
    }

    /// Multiplication via 2x2 integer matrices mod n: r = rotation by one
    /// step, f = reflection. Independent of the closed-form rule above.
    fn matrix_of(n: u32, e: DihedralElement) -> [[i64; 2]; 2] {
        // affine map x -> sign * x + shift on Z_n
        let sign = if e.is_flip() { -1 } else { 1 };
        [[sign, i64::from(e.rot()) % i64::from(n)], [0, 1]]
    }

    fn apply(n: u32, a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        let m = i64::from(n);
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum::<i64>();
            }
        }
        c[0][1] = c[0][1].rem_euclid(m);
        c
    }

    #[test]
    fn product_matches_affine_model() {
        for n in 3..=12 {
            let g = d(n);
            for a in g.elements() {
                for b in g.elements() {
                    let expect = apply(n, matrix_of(n, a), matrix_of(n, b));
                    assert_eq!(matrix_of(n, g.mul(a, b)), expect, "n={n} {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn associativity_and_inverses_exhaustive() {
        for n in 3..=12 {
            let g = d(n);
            let all: Vec<_> = g.elements().collect();
            assert_eq!(all.len(), 2 * n as usize);
            for &a in &all {
                assert_eq!(g.mul(a, g.inverse(a)), DihedralElement::IDENTITY);
                assert_eq!(g.inverse(g.inverse(a)), a);
                for &b in &all {
                    let ab = g.mul(a, b);
                    assert!(g.contains(ab));
                    for &c in &all {
                        assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_order_and_flip_classes() {
        for n in 3..=12 {
            let g = d(n);
            for s in g.elements() {
                for x in g.elements() {
                    let c = g.conjugate(x, s);
                    assert_eq!(g.element_order(c), g.element_order(s));
                    assert_eq!(c.is_flip(), s.is_flip());
                }
            }
        }
    }

    #[test]
    fn element_order_matches_repeated_product() {
        for n in 3..=12 {
            let g = d(n);
            for a in g.elements() {
                let mut acc = a;
                let mut k = 1;
                while !acc.is_identity() {
                    acc = g.mul(acc, a);
                    k += 1;
                }
                assert_eq!(g.element_order(a), k);
                assert_eq!(g.pow(a, u64::from(k)), DihedralElement::IDENTITY);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let g = d(9);
        for (i, e) in g.elements().enumerate() {
            assert_eq!(g.index(e), i);
        }
        let mut sorted: Vec<_> = g.elements().collect();
        sorted.sort();
        assert_eq!(sorted, g.elements().collect::<Vec<_>>());
    }

    #[test]
    fn text_grammar() {
        assert_eq!(el("1"), DihedralElement::IDENTITY);
        assert_eq!(el("f"), DihedralElement::reflection(0));
        assert_eq!(el("r"), DihedralElement::rotation(1));
        assert_eq!(el("r * f"), DihedralElement::reflection(1));
        assert_eq!(el("r^12*f"), DihedralElement::reflection(12));
        assert_eq!(el("r^3f"), DihedralElement::reflection(3));
        for bad in ["", "x", "r^", "r^-1", "r^a*f", "rr", "f*r"] {
            assert!(bad.parse::<DihedralElement>().is_err(), "{bad}");
        }
        for e in d(8).elements() {
            assert_eq!(el(&e.to_string()), e);
        }
    }

    #[test]
    fn cyclic_group_rejects_flips() {
        let c = GroupDescriptor::cyclic(5).unwrap();
        assert!(c.canonicalize(el("f")).is_err());
        assert_eq!(c.canonicalize(el("r^7")).unwrap(), el("r^2"));
        assert_eq!(c.elements().count(), 5);
    }
}
