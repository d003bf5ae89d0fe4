//! Word lengths by breadth-first search over the Cayley graph, and the
//! conjugation-perturbation maxima
//!
//! ```text
//! λ₁(G,S) = max over g ∈ G, s ∈ S        of l_S(g s g⁻¹)
//! λ₂(G,S) = max over g ∈ G, s, s' ∈ S    of l_S(g s s' g⁻¹)
//! ```
//!
//! Distances use right multiplication `g -> g·s`. Because the generating set
//! is inverse-closed this is the same metric as left multiplication.

use std::collections::VecDeque;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::group::DihedralElement;

/// Exact word length of every group element, plus a breadth-first tree from
/// which one geodesic word per element can be read back.
#[derive(Debug, Clone)]
pub struct LengthTable {
    genset: GenSet,
    lengths: Vec<u32>,
    /// `(predecessor index, generator index)` on the BFS tree.
    parent: Vec<Option<(usize, usize)>>,
}

impl LengthTable {
    /// Runs the BFS. Generators are tried in index order, so the geodesic
    /// recorded for each element is the first one found breadth-first.
    pub fn compute(genset: &GenSet) -> Result<Self> {
        let group = genset.group();
        let order = group.order();
        let mut lengths = vec![u32::MAX; order];
        let mut parent = vec![None; order];
        let id = group.identity();
        lengths[group.index(id)] = 0;
        let mut queue = VecDeque::with_capacity(order);
        queue.push_back(id);
        let mut reached = 1;
        while let Some(g) = queue.pop_front() {
            let gi = group.index(g);
            let next = lengths[gi] + 1;
            for (si, &s) in genset.elements().iter().enumerate() {
                let h = group.mul(g, s);
                let hi = group.index(h);
                if lengths[hi] == u32::MAX {
                    lengths[hi] = next;
                    parent[hi] = Some((gi, si));
                    reached += 1;
                    queue.push_back(h);
                }
            }
        }
        if reached != order {
            return Err(Error::NotGenerating { reached, order });
        }
        Ok(LengthTable {
            genset: genset.clone(),
            lengths,
            parent,
        })
    }

    pub fn genset(&self) -> &GenSet {
        &self.genset
    }

    /// Lengths in dense index order.
    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    #[inline]
    pub fn length(&self, e: DihedralElement) -> u32 {
        self.lengths[self.genset.group().index(e)]
    }

    /// One minimal word for `e`, as generator indices read left to right.
    pub fn geodesic(&self, e: DihedralElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(e) as usize);
        let mut at = self.genset.group().index(e);
        while let Some((prev, s)) = self.parent[at] {
            word.push(s);
            at = prev;
        }
        word.reverse();
        word
    }

    /// Maximum length and every element attaining it, in index order.
    pub fn diameter(&self) -> (u32, Vec<DihedralElement>) {
        let group = self.genset.group();
        let max = self.lengths.iter().copied().max().unwrap_or(0);
        let at = self
            .lengths
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == max)
            .map(|(i, _)| group.element(i))
            .collect();
        (max, at)
    }

    /// λ₁ with the first maximizing `(g, s)` in (element index, generator
    /// index) order.
    pub fn lambda1(&self) -> (u32, (DihedralElement, DihedralElement)) {
        let group = self.genset.group();
        let gens = self.genset.elements();
        let mut best = (0, (group.identity(), gens[0]));
        for g in group.elements() {
            let g_inv = group.inverse(g);
            for &s in gens {
                let l = self.length(group.mul(group.mul(g, s), g_inv));
                if l > best.0 {
                    best = (l, (g, s));
                }
            }
        }
        best
    }

    /// λ₂ with the first maximizing `(g, s, s')`. Ordered pairs with
    /// `s = s'` are included.
    pub fn lambda2(&self) -> (u32, (DihedralElement, DihedralElement, DihedralElement)) {
        let group = self.genset.group();
        let gens = self.genset.elements();
        let products: Vec<(DihedralElement, DihedralElement, DihedralElement)> = gens
            .iter()
            .flat_map(|&s| gens.iter().map(move |&t| (s, t, group.mul(s, t))))
            .collect();
        let mut best = (0, (group.identity(), gens[0], gens[0]));
        for g in group.elements() {
            let g_inv = group.inverse(g);
            for &(s, t, st) in &products {
                let l = self.length(group.mul(group.mul(g, st), g_inv));
                if l > best.0 {
                    best = (l, (g, s, t));
                }
            }
        }
        best
    }
}

/// λ₁, λ₂ and the diameter of one generating set, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub genset: GenSet,
    pub lambda1: u32,
    pub lambda2: u32,
    pub witness1: (DihedralElement, DihedralElement),
    pub witness2: (DihedralElement, DihedralElement, DihedralElement),
    pub diameter: u32,
}

impl LambdaReport {
    pub fn compute(genset: &GenSet) -> Result<Self> {
        Ok(LambdaReport::from_table(&LengthTable::compute(genset)?))
    }

    pub fn from_table(table: &LengthTable) -> Self {
        let (lambda1, witness1) = table.lambda1();
        let (lambda2, witness2) = table.lambda2();
        LambdaReport {
            genset: table.genset().clone(),
            lambda1,
            lambda2,
            witness1,
            witness2,
            diameter: table.diameter().0,
        }
    }

    pub fn witness1_text(&self) -> String {
        format!("({}, {})", self.witness1.0, self.witness1.1)
    }

    pub fn witness2_text(&self) -> String {
        let (g, s, t) = self.witness2;
        format!("({g}, {s}, {t})")
    }
}

/// Writes the Cayley graph as a DOT digraph: one node per element (labelled
/// with its text form and length) and one edge `g -> g·s` per generator,
/// labelled by generator index.
pub fn export_cayley<W: Write>(table: &LengthTable, sink: &mut W) -> Result<()> {
    let genset = table.genset();
    let group = genset.group();
    writeln!(sink, "digraph cayley {{")?;
    writeln!(sink, "  label=\"{} S={}\";", group, genset)?;
    for (i, g) in group.elements().enumerate() {
        writeln!(sink, "  n{i} [label=\"{g} ({})\"];", table.lengths[i])?;
    }
    for (i, g) in group.elements().enumerate() {
        for (si, &s) in genset.elements().iter().enumerate() {
            let j = group.index(group.mul(g, s));
            writeln!(sink, "  n{i} -> n{j} [label=\"{si}\"];")?;
        }
    }
    writeln!(sink, "}}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    fn set(n: u32, gens: &[&str]) -> GenSet {
        GenSet::new(n, gens.iter().map(|g| g.parse().unwrap())).unwrap()
    }

    fn el(s: &str) -> DihedralElement {
        s.parse().unwrap()
    }

    #[test]
    fn d3_two_flips_lengths() {
        let t = LengthTable::compute(&set(3, &["f", "r*f"])).unwrap();
        for (e, l) in [("1", 0), ("f", 1), ("r*f", 1), ("r", 2), ("r^2", 2), ("r^2*f", 3)] {
            assert_eq!(t.length(el(e)), l, "{e}");
        }
        // r^2 f = (f)(rf)(f)
        assert_eq!(t.geodesic(el("r^2*f")), vec![0, 1, 0]);
    }

    #[test]
    fn d5_two_flips_diameter() {
        let t = LengthTable::compute(&set(5, &["f", "r*f"])).unwrap();
        // f r^2 = r^3 f
        assert_eq!(t.diameter(), (5, vec![el("r^3*f")]));
    }

    #[test]
    fn geodesics_multiply_back() {
        for n in 4..=12 {
            let s = set(n, &["f", "r*f", "r^3*f"]);
            let t = LengthTable::compute(&s).unwrap();
            let g = s.group();
            for e in g.elements() {
                let w = t.geodesic(e);
                assert_eq!(w.len() as u32, t.length(e));
                let prod = w.iter().fold(g.identity(), |acc, &i| g.mul(acc, s.get(i)));
                assert_eq!(prod, e);
            }
        }
    }

    #[test]
    fn not_generating_is_an_error() {
        match LengthTable::compute(&set(4, &["f", "r^2*f"])) {
            Err(Error::NotGenerating { reached, order }) => assert_eq!((reached, order), (4, 8)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lambda_examples() {
        let l = |n, g: &[&str]| LambdaReport::compute(&set(n, g)).unwrap();
        assert_eq!(l(7, &["f", "r*f"]).lambda1, 7);
        assert_eq!(l(6, &["f", "r*f"]).lambda1, 5);
        // all reflections are generators, so λ₁ = 1; the longest element
        // (a rotation) has length 2
        let d3 = l(3, &["f", "r*f", "r^2*f"]);
        assert_eq!((d3.lambda1, d3.diameter), (1, 2));
        let central = l(6, &["f", "r*f", "r^3"]);
        assert_eq!((central.lambda1, central.lambda2), (3, 3));
        for n in 3..=12 {
            assert_eq!(l(n, &["f", "r*f"]).lambda2, 2);
        }
        assert_eq!(l(8, &["f", "r", "r^7"]).lambda2, 4);
        assert_eq!(l(6, &["f", "r", "r^5"]).lambda2, 4);
        assert_eq!(l(7, &["f", "r*f", "r^3*f"]).lambda2, 2);
    }

    #[test]
    fn witnesses_attain_values() {
        let s = set(10, &["r^2*f", "r^3", "r^7"]);
        let rep = LambdaReport::compute(&s).unwrap();
        let t = LengthTable::compute(&s).unwrap();
        let g = s.group();
        let (x, a) = rep.witness1;
        assert_eq!(t.length(g.conjugate(x, a)), rep.lambda1);
        let (x, a, b) = rep.witness2;
        assert_eq!(t.length(g.conjugate(x, g.mul(a, b))), rep.lambda2);
    }

    #[test]
    fn diameter_examples() {
        let t = LengthTable::compute(&set(6, &["f", "r*f"])).unwrap();
        assert_eq!(t.diameter(), (6, vec![el("r^3")]));
        let full = GenSet::all_nonidentity(GroupDescriptor::dihedral(3).unwrap());
        assert_eq!(LengthTable::compute(&full).unwrap().diameter().0, 1);
    }

    fn dot_counts(s: &GenSet) -> (usize, usize) {
        let t = LengthTable::compute(s).unwrap();
        let mut buf = Vec::new();
        export_cayley(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("digraph cayley {"));
        let edges = text.lines().filter(|l| l.contains("->")).count();
        let nodes = text
            .lines()
            .filter(|l| l.trim_start().starts_with('n') && !l.contains("->"))
            .count();
        (nodes, edges)
    }

    #[test]
    fn dot_export_sizes() {
        assert_eq!(dot_counts(&set(3, &["f", "r*f"])), (6, 12));
        assert_eq!(dot_counts(&set(4, &["f", "r*f"])), (8, 16));
        assert_eq!(dot_counts(&set(5, &["f", "r*f", "r^2*f"])), (10, 30));
    }

    struct FailingSink;

    impl Write for FailingSink {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("closed"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn dot_sink_failure() {
        let t = LengthTable::compute(&set(3, &["f", "r*f"])).unwrap();
        assert!(matches!(
            export_cayley(&t, &mut FailingSink),
            Err(Error::SinkWriteFailure(_))
        ));
    }
}
