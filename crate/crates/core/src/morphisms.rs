//! Generator bijections that extend to automorphisms of `D_n`.
//!
//! A bijection `S1 -> S2` is extended along the breadth-first tree of the
//! Cayley graph of `S1`, and accepted only if it is consistent on every
//! Cayley edge (`g·s = h` implies `Φ(g)·α(s) = Φ(h)`) and the resulting
//! element map is a bijection. Because generators go to generators in both
//! directions, word lengths, diameters and λ values all transfer.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::{closure, GenSet};
use crate::group::{DihedralElement, GroupDescriptor};
use crate::wordlen::{LambdaReport, LengthTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

/// Coordinates `s_k = ρ^e φ^p` of the remaining generators over an ordered
/// generating pair `(s_i, s_j)`.
///
/// For two reflections `ρ = s_j s_i`, `φ = s_i`; for a reflection and a
/// rotation, `ρ` is the rotation and `φ` the reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PairCoordinates {
    pub pair: (usize, usize),
    /// `(k, e, p)` for every `k` outside the pair.
    pub coords: Vec<(usize, u32, bool)>,
}

/// Automorphism-invariant data of a generating set, relative to the order in
/// which its generators are listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationSignature {
    pub flips: Vec<bool>,
    pub orders: Vec<u32>,
    /// `|s_i s_j|` for all `i, j`.
    pub product_orders: Vec<Vec<u32>>,
    /// For three reflections: how the cyclic subgroups `<s_0 s_1>`,
    /// `<s_0 s_2>`, `<s_1 s_2>` compare with one another.
    pub subgroup_pattern: Option<[[Containment; 3]; 3]>,
    pub coordinates: Vec<PairCoordinates>,
}

fn pair_coordinates(group: GroupDescriptor, gens: &[DihedralElement]) -> Vec<PairCoordinates> {
    let n = group.n();
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i == j || !closure(group, &[gens[i], gens[j]]).iter().all(|&b| b) {
                continue;
            }
            let (rho, phi) = match (gens[i].is_flip(), gens[j].is_flip()) {
                (true, true) => (group.mul(gens[j], gens[i]), gens[i]),
                (true, false) => (gens[j], gens[i]),
                (false, true) => (gens[i], gens[j]),
                (false, false) => unreachable!("two rotations never generate D_n"),
            };
            let coords = (0..gens.len())
                .filter(|&k| k != i && k != j)
                .map(|k| {
                    let target = gens[k];
                    let mut acc = DihedralElement::IDENTITY;
                    for e in 0..n {
                        let p = target.is_flip();
                        if (if p { group.mul(acc, phi) } else { acc }) == target {
                            return (k, e, p);
                        }
                        acc = group.mul(acc, rho);
                    }
                    unreachable!("a generating pair spans every element")
                })
                .collect();
            out.push(PairCoordinates { pair: (i, j), coords });
        }
    }
    out
}

fn subgroup_pattern(group: GroupDescriptor, gens: &[DihedralElement]) -> Option<[[Containment; 3]; 3]> {
    if gens.len() != 3 || !gens.iter().all(|e| e.is_flip()) {
        return None;
    }
    // subgroups of the cyclic group <r> are determined by their order
    let orders = [(0, 1), (0, 2), (1, 2)].map(|(i, j)| group.element_order(group.mul(gens[i], gens[j])));
    let mut pattern = [[Containment::Equal; 3]; 3];
    for p in 0..3 {
        for q in 0..3 {
            let (a, b) = (orders[p], orders[q]);
            pattern[p][q] = if a == b {
                Containment::Equal
            } else if b % a == 0 {
                Containment::Subset
            } else if a % b == 0 {
                Containment::Superset
            } else {
                Containment::Incomparable
            };
        }
    }
    Some(pattern)
}

/// Signature of `s` with its generators listed in `order` (a permutation of
/// `0..s.len()`).
pub fn relation_signature_ordered(s: &GenSet, order: &[usize]) -> RelationSignature {
    let group = s.group();
    let gens: Vec<DihedralElement> = order.iter().map(|&i| s.get(i)).collect();
    RelationSignature {
        flips: gens.iter().map(|e| e.is_flip()).collect(),
        orders: gens.iter().map(|&e| group.element_order(e)).collect(),
        product_orders: gens
            .iter()
            .map(|&a| gens.iter().map(|&b| group.element_order(group.mul(a, b))).collect())
            .collect(),
        subgroup_pattern: subgroup_pattern(group, &gens),
        coordinates: pair_coordinates(group, &gens),
    }
}

/// Signature with generators in their stored (sorted) order.
pub fn relation_signature(s: &GenSet) -> RelationSignature {
    let order: Vec<usize> = (0..s.len()).collect();
    relation_signature_ordered(s, &order)
}

/// True if some generator bijection makes the two signatures agree. This is
/// necessary for a relation-preserving map to exist.
pub fn signatures_compatible(s1: &GenSet, s2: &GenSet) -> bool {
    if s1.len() != s2.len() || s1.n() != s2.n() {
        return false;
    }
    let base = relation_signature(s1);
    Permutations::new(s1.len()).any(|p| relation_signature_ordered(s2, &p) == base)
}

/// Lexicographic permutations of `0..k`.
struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    fn new(k: usize) -> Self {
        Permutations {
            next: Some((0..k).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut p = cur.clone();
        if let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
            p.swap(i - 1, j);
            p[i..].reverse();
            self.next = Some(p);
        }
        Some(cur)
    }
}

/// An automorphism of `D_n` sending each generator of `source` to a
/// generator of `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismTable {
    pub source: GenSet,
    pub target: GenSet,
    pub generator_map: Vec<(DihedralElement, DihedralElement)>,
    /// Image of each element, in dense index order.
    pub element_map: Vec<DihedralElement>,
}

impl AutomorphismTable {
    pub fn image(&self, e: DihedralElement) -> DihedralElement {
        self.element_map[self.source.group().index(e)]
    }

    /// `(element, image)` rows in index order.
    pub fn rows(&self) -> impl Iterator<Item = (DihedralElement, DihedralElement)> + '_ {
        let group = self.source.group();
        self.element_map
            .iter()
            .enumerate()
            .map(move |(i, &img)| (group.element(i), img))
    }

    /// Exhaustive check that the map is a bijective homomorphism.
    pub fn is_automorphism(&self) -> bool {
        let group = self.source.group();
        let mut hit = vec![false; group.order()];
        for &img in &self.element_map {
            let i = group.index(img);
            if hit[i] {
                return false;
            }
            hit[i] = true;
        }
        let all: Vec<DihedralElement> = group.elements().collect();
        all.iter().all(|&a| {
            all.iter()
                .all(|&b| self.image(group.mul(a, b)) == group.mul(self.image(a), self.image(b)))
        })
    }
}

fn check_ambient(s1: &GenSet, s2: &GenSet) -> Result<()> {
    if s1.group() != s2.group() || s1.len() != s2.len() {
        return Err(Error::DifferentAmbient {
            detail: format!("{} vs {}", s1.describe(), s2.describe()),
        });
    }
    for s in [s1, s2] {
        let reached = s.closure_size();
        if reached != s.group().order() {
            return Err(Error::NotGenerating {
                reached,
                order: s.group().order(),
            });
        }
    }
    Ok(())
}

/// Extends `S1[i] -> S2[perm[i]]` along the Cayley graph of `S1`.
fn extend(s1: &GenSet, s2: &GenSet, perm: &[usize]) -> Option<AutomorphismTable> {
    let group = s1.group();
    let order = group.order();
    let images: Vec<DihedralElement> = perm.iter().map(|&j| s2.get(j)).collect();
    let mut map: Vec<Option<DihedralElement>> = vec![None; order];
    let id = group.identity();
    map[group.index(id)] = Some(id);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let img_g = map[group.index(g)].expect("visited");
        for (&s, &img_s) in s1.elements().iter().zip(&images) {
            let h = group.mul(g, s);
            let want = group.mul(img_g, img_s);
            let slot = &mut map[group.index(h)];
            match *slot {
                None => {
                    *slot = Some(want);
                    queue.push_back(h);
                }
                Some(have) if have != want => return None,
                Some(_) => {}
            }
        }
    }
    let element_map: Vec<DihedralElement> = map.into_iter().map(|m| m.expect("generating")).collect();
    let mut hit = vec![false; order];
    for &img in &element_map {
        let i = group.index(img);
        if std::mem::replace(&mut hit[i], true) {
            return None;
        }
    }
    Some(AutomorphismTable {
        source: s1.clone(),
        target: s2.clone(),
        generator_map: s1.elements().iter().copied().zip(images).collect(),
        element_map,
    })
}

/// The first relation-preserving bijection in lexicographic order, or
/// `None` when no bijection extends to an automorphism.
pub fn find_relation_preserving_map(s1: &GenSet, s2: &GenSet) -> Result<Option<AutomorphismTable>> {
    check_ambient(s1, s2)?;
    Ok(Permutations::new(s1.len()).find_map(|p| extend(s1, s2, &p)))
}

/// Every relation-preserving bijection, in lexicographic order.
pub fn all_relation_preserving_maps(s1: &GenSet, s2: &GenSet) -> Result<Vec<AutomorphismTable>> {
    check_ambient(s1, s2)?;
    Ok(Permutations::new(s1.len()).filter_map(|p| extend(s1, s2, &p)).collect())
}

/// Tests one explicit generator assignment.
pub fn try_generator_map(
    s1: &GenSet,
    s2: &GenSet,
    assignment: &[(DihedralElement, DihedralElement)],
) -> Result<Option<AutomorphismTable>> {
    check_ambient(s1, s2)?;
    let bad = |detail: String| Error::DifferentAmbient { detail };
    if assignment.len() != s1.len() {
        return Err(bad(format!(
            "assignment has {} entries, expected {}",
            assignment.len(),
            s1.len()
        )));
    }
    let mut perm = vec![usize::MAX; s1.len()];
    for &(from, to) in assignment {
        let i = s1
            .position(from)
            .ok_or_else(|| bad(format!("{from} is not a source generator")))?;
        let j = s2
            .position(to)
            .ok_or_else(|| bad(format!("{to} is not a target generator")))?;
        perm[i] = j;
    }
    let mut used = perm.clone();
    used.sort_unstable();
    if used != (0..s1.len()).collect::<Vec<_>>() {
        return Err(bad("assignment is not a bijection".to_string()));
    }
    Ok(extend(s1, s2, &perm))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub diameters: (u32, u32),
    pub pointwise: bool,
    pub lambda1: (u32, u32),
    pub lambda2: (u32, u32),
}

impl TransferReport {
    pub fn all_equal(&self) -> bool {
        self.pointwise
            && self.diameters.0 == self.diameters.1
            && self.lambda1.0 == self.lambda1.1
            && self.lambda2.0 == self.lambda2.1
    }
}

/// Confirms `l_{S2}(Φ(g)) = l_{S1}(g)` for every `g`, equal diameters, and
/// equal λ₁, λ₂.
pub fn check_length_transfer(s1: &GenSet, s2: &GenSet, table: &AutomorphismTable) -> Result<TransferReport> {
    if &table.source != s1 || &table.target != s2 {
        return Err(Error::DifferentAmbient {
            detail: "automorphism table was built for different generating sets".to_string(),
        });
    }
    let t1 = LengthTable::compute(s1)?;
    let t2 = LengthTable::compute(s2)?;
    for g in s1.group().elements() {
        let (l1, l2) = (t1.length(g), t2.length(table.image(g)));
        if l1 != l2 {
            return Err(Error::TransferViolation {
                element: g,
                detail: format!("length {l1} under source, {l2} for its image under target"),
            });
        }
    }
    let r1 = LambdaReport::from_table(&t1);
    let r2 = LambdaReport::from_table(&t2);
    Ok(TransferReport {
        diameters: (r1.diameter, r2.diameter),
        pointwise: true,
        lambda1: (r1.lambda1, r2.lambda1),
        lambda2: (r1.lambda2, r2.lambda2),
    })
}
