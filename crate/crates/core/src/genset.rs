//! Symmetric generating sets: validation, generation tests and the
//! classification of sets with at most three elements.
//!
//! Classification always runs two independent procedures, subgroup closure
//! by breadth-first search and the gcd criteria on rotation exponents, and
//! reports [`Error::ClassificationMismatch`] if they ever disagree.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{DihedralElement, GroupDescriptor};

/// A validated symmetric generating set: no identity, closed under inverses,
/// no duplicates, elements sorted by `(flip, rot)`.
///
/// A `GenSet` need not generate its group; see [`GenSet::generates`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet {
    group: GroupDescriptor,
    elements: Vec<DihedralElement>,
}

impl GenSet {
    /// Validates `raw` as a symmetric subset of `D_n`. Exponents are reduced
    /// mod `n` first.
    pub fn new(n: u32, raw: impl IntoIterator<Item = DihedralElement>) -> Result<Self> {
        GenSet::in_group(GroupDescriptor::dihedral(n)?, raw)
    }

    pub fn in_group(group: GroupDescriptor, raw: impl IntoIterator<Item = DihedralElement>) -> Result<Self> {
        let mut elements = Vec::new();
        for e in raw {
            let e = group.canonicalize(e)?;
            if e.is_identity() {
                return Err(Error::ContainsIdentity);
            }
            if elements.contains(&e) {
                return Err(Error::DuplicateElement { element: e });
            }
            elements.push(e);
        }
        if elements.is_empty() {
            return Err(Error::EmptyGenSet);
        }
        for &e in &elements {
            let inv = group.inverse(e);
            if !elements.contains(&inv) {
                return Err(Error::NotInverseClosed {
                    element: e,
                    inverse: inv,
                });
            }
        }
        elements.sort();
        Ok(GenSet { group, elements })
    }

    /// `G - {1}`.
    pub fn all_nonidentity(group: GroupDescriptor) -> Self {
        GenSet {
            group,
            elements: group.elements().skip(1).collect(),
        }
    }

    /// All `n` reflections of `D_n`.
    pub fn all_reflections(n: u32) -> Result<Self> {
        GenSet::new(n, (0..n).map(DihedralElement::reflection))
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn n(&self) -> u32 {
        self.group.n()
    }

    pub fn elements(&self) -> &[DihedralElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> DihedralElement {
        self.elements[i]
    }

    pub fn position(&self, e: DihedralElement) -> Option<usize> {
        self.elements.iter().position(|&x| x == e)
    }

    /// Number of elements in the subgroup generated by the set.
    pub fn closure_size(&self) -> usize {
        closure(self.group, &self.elements).iter().filter(|&&b| b).count()
    }

    /// True iff the set generates the whole group.
    pub fn generates(&self) -> bool {
        self.closure_size() == self.group.order()
    }

    /// `n=30; S={f, r^3*f, r^5*f}`
    pub fn describe(&self) -> String {
        format!("n={}; S={}", self.n(), self)
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for GenSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `n=<n>; S={e1, e2, ...}` into a dihedral generating set.
impl FromStr for GenSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (head, tail) = s.split_once(';').ok_or_else(|| fail("expected `n=<n>; S={...}`"))?;
        let n = head
            .trim()
            .strip_prefix("n")
            .map(str::trim_start)
            .and_then(|h| h.strip_prefix('='))
            .ok_or_else(|| fail("expected `n=` before `;`"))?
            .trim()
            .parse::<u32>()
            .map_err(|_| fail("n must be a positive integer"))?;
        let body = tail
            .trim()
            .strip_prefix("S")
            .map(str::trim_start)
            .and_then(|t| t.strip_prefix('='))
            .map(str::trim)
            .and_then(|t| t.strip_prefix('{'))
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| fail("expected `S={...}` after `;`"))?;
        let raw = body
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<DihedralElement>>>()?;
        GenSet::new(n, raw)
    }
}

/// Membership bitmap (by dense index) of the subgroup generated by `gens`.
pub fn closure(group: GroupDescriptor, gens: &[DihedralElement]) -> Vec<bool> {
    let mut seen = vec![false; group.order()];
    let id = group.identity();
    seen[group.index(id)] = true;
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for &s in gens {
            let h = group.mul(g, s);
            let i = group.index(h);
            if !seen[i] {
                seen[i] = true;
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Whether `{f, r^a f}` generates `D_n`: exactly when `gcd(a, n) = 1`.
pub fn pair_generates_by_gcd(n: u32, a: u32) -> bool {
    a.gcd(&n) == 1
}

/// The four three-reflection classes, by how many of the three pairs
/// generate `D_n` on their own: A = 3, B = 2, C = 1, D = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ThreeInvClass {
    A,
    B,
    C,
    D,
}

impl ThreeInvClass {
    pub fn generating_pairs(self) -> usize {
        match self {
            ThreeInvClass::A => 3,
            ThreeInvClass::B => 2,
            ThreeInvClass::C => 1,
            ThreeInvClass::D => 0,
        }
    }

    fn from_generating_pairs(count: usize) -> Option<Self> {
        match count {
            3 => Some(ThreeInvClass::A),
            2 => Some(ThreeInvClass::B),
            1 => Some(ThreeInvClass::C),
            0 => Some(ThreeInvClass::D),
            _ => None,
        }
    }
}

/// Which presentation family a symmetric set of size at most three realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationClass {
    /// Two reflections whose product has order `n`.
    Card2,
    /// Two generating reflections plus the central rotation `r^{n/2}`.
    TwoInvOneCentral,
    /// One reflection plus `r^b, r^{-b}` with `r^b` of order `n`.
    OneInvTwoCyclic,
    /// Three reflections, split by how many pairs generate.
    ThreeInv(ThreeInvClass),
    /// Two reflections plus `r^{n/2}` that generate `D_n` although the two
    /// reflections alone do not (only possible for `n ≡ 2 mod 4`). None of
    /// the closed-form families covers these.
    GeneratingOutsideFamilies,
    NonGenerating,
}

impl PresentationClass {
    pub fn is_generating(self) -> bool {
        self != PresentationClass::NonGenerating
    }

    pub const ALL: [PresentationClass; 9] = [
        PresentationClass::Card2,
        PresentationClass::TwoInvOneCentral,
        PresentationClass::OneInvTwoCyclic,
        PresentationClass::ThreeInv(ThreeInvClass::A),
        PresentationClass::ThreeInv(ThreeInvClass::B),
        PresentationClass::ThreeInv(ThreeInvClass::C),
        PresentationClass::ThreeInv(ThreeInvClass::D),
        PresentationClass::GeneratingOutsideFamilies,
        PresentationClass::NonGenerating,
    ];
}

impl fmt::Display for PresentationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PresentationClass::Card2 => "Card2",
            PresentationClass::TwoInvOneCentral => "Card3_TwoInvOneCentral",
            PresentationClass::OneInvTwoCyclic => "Card3_OneInvTwoCyclic",
            PresentationClass::ThreeInv(ThreeInvClass::A) => "Card3_ThreeInv_A",
            PresentationClass::ThreeInv(ThreeInvClass::B) => "Card3_ThreeInv_B",
            PresentationClass::ThreeInv(ThreeInvClass::C) => "Card3_ThreeInv_C",
            PresentationClass::ThreeInv(ThreeInvClass::D) => "Card3_ThreeInv_D",
            PresentationClass::GeneratingOutsideFamilies => "GeneratingOutsideFamilies",
            PresentationClass::NonGenerating => "NonGenerating",
        };
        f.write_str(s)
    }
}

impl FromStr for PresentationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresentationClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown presentation class".to_string(),
            })
    }
}

impl Serialize for PresentationClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Orders of `H1 = <r^a>`, `H2 = <r^b>`, `H3 = <r^{b-a}>` and of the product
/// `H1 H2`, for a set normalized to `{f, r^a f, r^b f}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairSubgroups {
    pub h1: u32,
    pub h2: u32,
    pub h3: u32,
    pub h1h2: u32,
}

impl PairSubgroups {
    pub fn from_exponents(n: u32, a: u32, b: u32) -> Self {
        let cyclic_order = |k: u32| n / k.gcd(&n);
        PairSubgroups {
            h1: cyclic_order(a),
            h2: cyclic_order(b),
            h3: cyclic_order((b + n - a) % n),
            h1h2: cyclic_order(a.gcd(&b)),
        }
    }
}

/// Three-reflection data after translating the first reflection to `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeFlipData {
    /// Exponent `c` of the original first reflection `r^c f`.
    pub shift: u32,
    pub a: u32,
    pub b: u32,
    pub subgroups: PairSubgroups,
    /// Pairs of generator indices (into the sorted set) that generate `D_n`.
    pub generating_pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: PresentationClass,
    pub three_flip: Option<ThreeFlipData>,
}

/// Normalized exponents `(shift, a, b)` of a three-reflection set, with
/// `0 < a < b < n`.
pub fn normalize_three_flips(s: &GenSet) -> Result<(u32, u32, u32)> {
    let els = s.elements();
    if !s.group().is_dihedral() || els.len() != 3 || !els.iter().all(|e| e.is_flip()) {
        return Err(Error::WrongShape {
            expected: "three reflections in a dihedral group",
        });
    }
    let n = s.n();
    let shift = els[0].rot();
    let a = (els[1].rot() + n - shift) % n;
    let b = (els[2].rot() + n - shift) % n;
    Ok((shift, a, b))
}

/// Subgroup orders for a three-reflection set.
pub fn pair_subgroups(s: &GenSet) -> Result<PairSubgroups> {
    let (_, a, b) = normalize_three_flips(s)?;
    Ok(PairSubgroups::from_exponents(s.n(), a, b))
}

fn mismatch(s: &GenSet, detail: impl fmt::Display) -> Error {
    Error::ClassificationMismatch {
        detail: format!("{}: {detail}", s.describe()),
    }
}

/// Classifies a symmetric set of one to three elements of `D_n`.
pub fn classify(s: &GenSet) -> Result<Classification> {
    if !s.group().is_dihedral() {
        return Err(Error::WrongShape {
            expected: "a generating set of a dihedral group",
        });
    }
    if s.len() > 3 {
        return Err(Error::UnsupportedCardinality { size: s.len() });
    }
    let group = s.group();
    let n = s.n();
    let by_closure = s.generates();
    let flips: Vec<_> = s.elements().iter().copied().filter(|e| e.is_flip()).collect();
    let rots: Vec<_> = s.elements().iter().copied().filter(|e| !e.is_flip()).collect();

    let plain = |class| Classification {
        class,
        three_flip: None,
    };
    let check = |by_gcd: bool| {
        if by_gcd == by_closure {
            Ok(())
        } else {
            Err(mismatch(
                s,
                format_args!("closure says {by_closure}, gcd criterion says {by_gcd}"),
            ))
        }
    };

    match (s.len(), flips.len()) {
        (3, 3) => classify_three_flips(s, by_closure),
        (2, 2) => {
            let diff = (flips[1].rot() + n - flips[0].rot()) % n;
            let by_gcd = pair_generates_by_gcd(n, diff);
            // product order |xy| = n is the presentation's own criterion
            let by_order = group.element_order(group.mul(flips[0], flips[1])) == n;
            check(by_gcd)?;
            check(by_order)?;
            Ok(plain(if by_closure {
                PresentationClass::Card2
            } else {
                PresentationClass::NonGenerating
            }))
        }
        (3, 2) => {
            // rots[0] is r^{n/2}, the only self-inverse rotation
            let diff = (flips[1].rot() + n - flips[0].rot()) % n;
            let pair = pair_generates_by_gcd(n, diff);
            check(diff.gcd(&(n / 2)) == 1)?;
            Ok(plain(match (pair, by_closure) {
                (true, _) => PresentationClass::TwoInvOneCentral,
                (false, true) => PresentationClass::GeneratingOutsideFamilies,
                (false, false) => PresentationClass::NonGenerating,
            }))
        }
        (3, 1) => {
            let b = rots[0].rot();
            let by_gcd = b.gcd(&n) == 1;
            check(by_gcd)?;
            Ok(plain(if by_gcd {
                PresentationClass::OneInvTwoCyclic
            } else {
                PresentationClass::NonGenerating
            }))
        }
        _ => {
            // one element, or no reflection, or one reflection with r^{n/2}
            check(false)?;
            Ok(plain(PresentationClass::NonGenerating))
        }
    }
}

fn classify_three_flips(s: &GenSet, by_closure: bool) -> Result<Classification> {
    let n = s.n();
    let group = s.group();
    let (shift, a, b) = normalize_three_flips(s)?;
    let subgroups = PairSubgroups::from_exponents(n, a, b);

    // subgroup-product criterion: S generates iff H1 H2 = <r>
    if (subgroups.h1h2 == n) != by_closure {
        return Err(mismatch(s, "H1H2 = <r> disagrees with closure"));
    }

    let pairs = [(0, 1), (0, 2), (1, 2)];
    let generating_pairs: Vec<(usize, usize)> = pairs
        .into_iter()
        .filter(|&(i, j)| closure(group, &[s.get(i), s.get(j)]).iter().all(|&m| m))
        .collect();

    let gcd_flags = [a, b, (b + n - a) % n].map(|k| pair_generates_by_gcd(n, k));
    let gcd_count = gcd_flags.iter().filter(|&&f| f).count();
    let gcd_pairs: Vec<(usize, usize)> = pairs
        .into_iter()
        .zip(gcd_flags)
        .filter_map(|(p, f)| f.then_some(p))
        .collect();
    if gcd_pairs != generating_pairs {
        return Err(mismatch(
            s,
            format_args!("closure pairs {generating_pairs:?} vs gcd pairs {gcd_pairs:?}"),
        ));
    }

    let by_gcd = if gcd_count > 0 {
        true
    } else {
        // no pair generates; the triple does iff gcd(a, b, n) = 1
        a.gcd(&b).gcd(&n) == 1
    };
    if by_gcd != by_closure {
        return Err(mismatch(
            s,
            format_args!("closure says {by_closure}, gcd criterion says {by_gcd}"),
        ));
    }

    let class = if by_closure {
        let kind = ThreeInvClass::from_generating_pairs(gcd_count).expect("at most three pairs");
        PresentationClass::ThreeInv(kind)
    } else {
        PresentationClass::NonGenerating
    };
    Ok(Classification {
        class,
        three_flip: Some(ThreeFlipData {
            shift,
            a,
            b,
            subgroups,
            generating_pairs,
        }),
    })
}
