//! Closed-form predictions of λ₁/λ₂ for each presentation family, the harness
//! that checks them against [`LengthTable`], and exhaustive sweeps for the
//! two open conjectures on three-reflection sets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::{classify, Classification, GenSet, PresentationClass};
use crate::group::DihedralElement;
use crate::wordlen::{LambdaReport, LengthTable};

/// Largest `n` accepted by the batch runs unless overridden.
pub const DEFAULT_SWEEP_CAP: u32 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    /// Proved upper bound.
    UpperBound,
    /// Conjectured upper bound; exceeding it is a finding, not a bug.
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Prediction {
    pub kind: BoundKind,
    pub value: u32,
}

impl Prediction {
    const fn exact(value: u32) -> Self {
        Prediction {
            kind: BoundKind::Exact,
            value,
        }
    }

    fn admits(self, observed: u32) -> bool {
        match self.kind {
            BoundKind::Exact => observed == self.value,
            BoundKind::UpperBound | BoundKind::Conjecture => observed <= self.value,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BoundKind::Exact => write!(f, "exact:{}", self.value),
            BoundKind::UpperBound => write!(f, "bound:{}", self.value),
            BoundKind::Conjecture => write!(f, "conjecture:{}", self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedBounds {
    pub family: PresentationClass,
    pub lambda1: Prediction,
    pub lambda2: Prediction,
    pub provenance: &'static str,
}

/// Closed-form λ values for a family at a given `n`.
pub fn predict(class: PresentationClass, n: u32) -> Result<PredictedBounds> {
    let half = n / 2;
    let (lambda1, lambda2, provenance) = match class {
        PresentationClass::Card2 => {
            let l1 = if n % 2 == 1 { n } else { n - 1 };
            // the general statement only gives λ₂ <= 2; equality transfers from {f, rf}
            (Prediction::exact(l1), Prediction::exact(2), "two reflections")
        }
        PresentationClass::TwoInvOneCentral => {
            if n == 4 {
                (
                    Prediction::exact(2),
                    Prediction::exact(2),
                    "two reflections plus center, n = 4",
                )
            } else {
                (
                    Prediction::exact(half),
                    Prediction::exact(half),
                    "two reflections plus center",
                )
            }
        }
        PresentationClass::OneInvTwoCyclic => {
            let (l1, l2) = if n.is_multiple_of(4) {
                (half + 1, half)
            } else if n.is_multiple_of(2) {
                (half, half + 1)
            } else {
                (half + 1, half + 1)
            };
            (
                Prediction::exact(l1),
                Prediction::exact(l2),
                "one reflection plus r^b, r^-b",
            )
        }
        PresentationClass::ThreeInv(_) => (
            Prediction {
                kind: BoundKind::Conjecture,
                value: half + 1,
            },
            Prediction::exact(2),
            "three reflections",
        ),
        PresentationClass::GeneratingOutsideFamilies | PresentationClass::NonGenerating => {
            return Err(Error::UnsupportedClass {
                class: class.to_string(),
            })
        }
    };
    Ok(PredictedBounds {
        family: class,
        lambda1,
        lambda2,
        provenance,
    })
}

/// True when `s` is `{f, rf, r^2 f}` or `{f, rf, r^3 f}` up to the
/// automorphisms `r^k f -> r^{c ± k} f`, the two sets whose λ₁ bound is
/// proved rather than conjectured.
pub fn is_proved_three_flip_set(s: &GenSet) -> Option<u32> {
    let els = s.elements();
    if els.len() != 3 || !els.iter().all(|e| e.is_flip()) {
        return None;
    }
    let n = i64::from(s.n());
    for base in els {
        for sign in [1i64, -1] {
            let mut exps: Vec<i64> = els
                .iter()
                .map(|e| (sign * (i64::from(e.rot()) - i64::from(base.rot()))).rem_euclid(n))
                .collect();
            exps.sort_unstable();
            match exps.as_slice() {
                [0, 1, 2] => return Some(2),
                [0, 1, 3] if n > 3 => return Some(3),
                _ => {}
            }
        }
    }
    None
}

/// [`predict`] refined by the concrete set: the two proved three-reflection
/// sets get a proved λ₁ bound instead of a conjectured one.
pub fn predict_for(s: &GenSet, class: PresentationClass) -> Result<PredictedBounds> {
    let mut p = predict(class, s.n())?;
    if matches!(class, PresentationClass::ThreeInv(_)) {
        if let Some(k) = is_proved_three_flip_set(s) {
            p.lambda1.kind = BoundKind::UpperBound;
            p.provenance = if k == 2 {
                "three reflections {f, rf, r^2 f}"
            } else {
                "three reflections {f, rf, r^3 f}"
            };
        }
    }
    Ok(p)
}

/// Ordered from best to worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    BoundSatisfied,
    /// A conjectured bound was exceeded.
    ConjectureCounterexample,
    /// An exact value or proved bound failed, or λ₂ > 2λ₁.
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::BoundSatisfied => "bound_satisfied",
            Verdict::ConjectureCounterexample => "conjecture_counterexample",
            Verdict::Violation => "VIOLATION",
        })
    }
}

fn judge(p: Prediction, observed: u32) -> Verdict {
    match (p.admits(observed), p.kind) {
        (true, BoundKind::Exact) => Verdict::Match,
        (true, _) => Verdict::BoundSatisfied,
        (false, BoundKind::Conjecture) => Verdict::ConjectureCounterexample,
        (false, _) => Verdict::Violation,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub n: u32,
    pub genset: GenSet,
    pub class: PresentationClass,
    pub predicted: PredictedBounds,
    pub observed: LambdaReport,
    pub verdict: Verdict,
}

impl VerificationRecord {
    pub fn evaluate(predicted: PredictedBounds, observed: LambdaReport) -> Self {
        let mut verdict = judge(predicted.lambda1, observed.lambda1).max(judge(predicted.lambda2, observed.lambda2));
        if observed.lambda2 > 2 * observed.lambda1 {
            verdict = Verdict::Violation;
        }
        VerificationRecord {
            n: observed.genset.n(),
            genset: observed.genset.clone(),
            class: predicted.family,
            predicted,
            observed,
            verdict,
        }
    }
}

/// Family filter for batch verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Card2,
    Central,
    Chiral,
    ThreeInv,
    All,
}

impl Family {
    pub fn matches(self, class: PresentationClass) -> bool {
        match self {
            Family::Card2 => class == PresentationClass::Card2,
            Family::Central => class == PresentationClass::TwoInvOneCentral,
            Family::Chiral => class == PresentationClass::OneInvTwoCyclic,
            Family::ThreeInv => matches!(class, PresentationClass::ThreeInv(_)),
            Family::All => !matches!(
                class,
                PresentationClass::GeneratingOutsideFamilies | PresentationClass::NonGenerating
            ),
        }
    }

    /// Candidate sets for one `n`, before classification filters them.
    ///
    /// Reflection families are enumerated with the first reflection fixed to
    /// `f`: every `r^k f -> r^{k+c} f` is an automorphism of `D_n`, so this
    /// loses no λ values. Chiral sets are enumerated in full.
    pub fn candidates(self, n: u32) -> Vec<GenSet> {
        let f = DihedralElement::reflection;
        let r = DihedralElement::rotation;
        let build = |raw: Vec<DihedralElement>| GenSet::new(n, raw).ok();
        let mut out: Vec<GenSet> = match self {
            Family::Card2 => (1..n).filter_map(|a| build(vec![f(0), f(a)])).collect(),
            Family::Central if n.is_multiple_of(2) => {
                (1..n).filter_map(|a| build(vec![f(0), f(a), r(n / 2)])).collect()
            }
            Family::Central => Vec::new(),
            Family::Chiral => (1..n)
                .filter(|&b| 2 * b < n)
                .flat_map(|b| (0..n).map(move |a| (a, b)))
                .filter_map(|(a, b)| build(vec![f(a), r(b), r(n - b)]))
                .collect(),
            Family::ThreeInv => (1..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter_map(|(a, b)| build(vec![f(0), f(a), f(b)]))
                .collect(),
            Family::All => [Family::Card2, Family::Central, Family::Chiral, Family::ThreeInv]
                .into_iter()
                .flat_map(|fam| fam.candidates(n))
                .collect(),
        };
        out.sort();
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Card2 => "card2",
            Family::Central => "central",
            Family::Chiral => "chiral",
            Family::ThreeInv => "threeinv",
            Family::All => "all",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "card2" => Ok(Family::Card2),
            "central" => Ok(Family::Central),
            "chiral" => Ok(Family::Chiral),
            "threeinv" => Ok(Family::ThreeInv),
            "all" => Ok(Family::All),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected card2, central, chiral, threeinv or all".to_string(),
            }),
        }
    }
}

fn check_range(n_min: u32, n_max: u32, cap: u32) -> Result<()> {
    if n_min < 3 || n_min > n_max || n_max > cap {
        return Err(Error::Usage(format!(
            "n range [{n_min}, {n_max}] must satisfy 3 <= n-min <= n-max <= {cap}"
        )));
    }
    Ok(())
}

fn verify_one(s: &GenSet, family: Family) -> Result<Option<VerificationRecord>> {
    let Classification { class, .. } = classify(s)?;
    if !family.matches(class) {
        return Ok(None);
    }
    let predicted = predict_for(s, class)?;
    let observed = LambdaReport::compute(s)?;
    Ok(Some(VerificationRecord::evaluate(predicted, observed)))
}

/// Checks every predicted family member with `n_min <= n <= n_max` against
/// the exhaustive engine. Records are sorted by `(n, genset)`.
pub fn verify_family(family: Family, n_min: u32, n_max: u32) -> Result<Vec<VerificationRecord>> {
    verify_family_capped(family, n_min, n_max, DEFAULT_SWEEP_CAP)
}

pub fn verify_family_capped(family: Family, n_min: u32, n_max: u32, cap: u32) -> Result<Vec<VerificationRecord>> {
    check_range(n_min, n_max, cap)?;
    let work: Vec<GenSet> = (n_min..=n_max).flat_map(|n| family.candidates(n)).collect();
    let mut records = work
        .par_iter()
        .map(|s| verify_one(s, family))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    records.sort_by(|a, b| (a.n, &a.genset).cmp(&(b.n, &b.genset)));
    Ok(records)
}

/// A concrete failure of one of the two three-reflection conjectures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "conjecture")]
pub enum Counterexample {
    /// λ₁ exceeds `floor(n/2) + 1`.
    #[serde(rename = "1")]
    Lambda1 {
        genset: GenSet,
        lambda1: u32,
        bound: u32,
        witness: (DihedralElement, DihedralElement),
    },
    /// A reflection `r^m f` is longer than every rotation.
    #[serde(rename = "2")]
    FlipLength {
        genset: GenSet,
        flip: DihedralElement,
        flip_length: u32,
        max_rotation_length: u32,
        longest_rotation: DihedralElement,
    },
}

impl Counterexample {
    pub fn genset(&self) -> &GenSet {
        match self {
            Counterexample::Lambda1 { genset, .. } | Counterexample::FlipLength { genset, .. } => genset,
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Lambda1 {
                genset,
                lambda1,
                bound,
                witness: (g, s),
            } => write!(
                f,
                "{}: lambda1 = {lambda1} > {bound} at g={g}, s={s}",
                genset.describe()
            ),
            Counterexample::FlipLength {
                genset,
                flip,
                flip_length,
                max_rotation_length,
                longest_rotation,
            } => write!(
                f,
                "{}: l({flip}) = {flip_length} > {max_rotation_length} = l({longest_rotation}) = max rotation length",
                genset.describe()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture: u8,
    pub n_range: (u32, u32),
    pub checked: usize,
    pub max_lambda1_by_n: BTreeMap<u32, u32>,
    pub counterexamples: Vec<Counterexample>,
}

/// Every generating `{f, r^a f, r^b f}` with `0 < a < b < n`, for each `n`.
pub fn generating_three_flip_sets(n: u32) -> Vec<GenSet> {
    (1..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a.gcd(&b).gcd(&n) == 1)
        .map(|(a, b)| GenSet::new(n, [0, a, b].map(DihedralElement::reflection)).expect("valid reflections"))
        .collect()
}

struct ThreeFlipProbe {
    n: u32,
    lambda1: u32,
    conj1: Option<Counterexample>,
    conj2: Option<Counterexample>,
}

fn probe_three_flip(s: &GenSet) -> Result<ThreeFlipProbe> {
    let table = LengthTable::compute(s)?;
    let n = s.n();
    let (lambda1, witness) = table.lambda1();
    let bound = n / 2 + 1;
    let conj1 = (lambda1 > bound).then(|| Counterexample::Lambda1 {
        genset: s.clone(),
        lambda1,
        bound,
        witness,
    });

    let (max_rot, longest_rotation) = (0..n)
        .map(DihedralElement::rotation)
        .map(|e| (table.length(e), e))
        .fold(
            (0, DihedralElement::IDENTITY),
            |best, cur| if cur.0 > best.0 { cur } else { best },
        );
    let (flip_length, flip) = (1..n)
        .map(DihedralElement::reflection)
        .map(|e| (table.length(e), e))
        .fold((0, DihedralElement::reflection(0)), |best, cur| {
            if cur.0 > best.0 {
                cur
            } else {
                best
            }
        });
    let conj2 = (flip_length > max_rot).then(|| Counterexample::FlipLength {
        genset: s.clone(),
        flip,
        flip_length,
        max_rotation_length: max_rot,
        longest_rotation,
    });
    Ok(ThreeFlipProbe {
        n,
        lambda1,
        conj1,
        conj2,
    })
}

fn sweep(conjecture: u8, n_min: u32, n_max: u32, cap: u32) -> Result<ConjectureReport> {
    check_range(n_min, n_max, cap)?;
    let work: Vec<GenSet> = (n_min..=n_max).flat_map(generating_three_flip_sets).collect();
    let probes = work.par_iter().map(probe_three_flip).collect::<Result<Vec<_>>>()?;
    let mut max_lambda1_by_n = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for p in probes {
        let e = max_lambda1_by_n.entry(p.n).or_insert(0);
        *e = (*e).max(p.lambda1);
        let found = if conjecture == 1 { p.conj1 } else { p.conj2 };
        counterexamples.extend(found);
    }
    Ok(ConjectureReport {
        conjecture,
        n_range: (n_min, n_max),
        checked: work.len(),
        max_lambda1_by_n,
        counterexamples,
    })
}

/// λ₁ <= floor(n/2) + 1 for every generating three-reflection set.
pub fn sweep_conjecture1(n_min: u32, n_max: u32) -> Result<ConjectureReport> {
    sweep(1, n_min, n_max, DEFAULT_SWEEP_CAP)
}

/// `l(r^m f) <= max_k l(r^k)` for every generating three-reflection set and
/// every `0 < m < n`. One counterexample (the longest reflection) is
/// reported per failing set.
pub fn sweep_conjecture2(n_min: u32, n_max: u32) -> Result<ConjectureReport> {
    sweep(2, n_min, n_max, DEFAULT_SWEEP_CAP)
}

pub fn sweep_capped(conjecture: u8, n_min: u32, n_max: u32, cap: u32) -> Result<ConjectureReport> {
    sweep(conjecture, n_min, n_max, cap)
}
