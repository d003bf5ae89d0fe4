//! Acceptance run: one test per criterion, each printing a single
//! `criterion N: ...` summary line (visible with `--nocapture`, and in the
//! failure output otherwise).
//!
//! The λ reports for criteria 1-7 are computed once and shared, so
//! criterion 8 (λ₂ <= 2λ₁) can range over exactly the same instances.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::OnceLock;

use dlambda::genset::{closure, GenSet, PresentationClass, ThreeInvClass};
use dlambda::morphisms::{find_relation_preserving_map, try_generator_map};
use dlambda::presentations::{sweep_conjecture1, sweep_conjecture2, ConjectureReport, Counterexample};
use dlambda::{classify, DihedralElement, GroupDescriptor, LambdaReport, LengthTable};
use num_integer::Integer;
use rayon::prelude::*;

fn refl(k: u32) -> DihedralElement {
    DihedralElement::reflection(k)
}

fn rot(k: u32) -> DihedralElement {
    DihedralElement::rotation(k)
}

fn el(s: &str) -> DihedralElement {
    s.parse().unwrap()
}

fn set(n: u32, raw: impl IntoIterator<Item = DihedralElement>) -> GenSet {
    GenSet::new(n, raw).unwrap()
}

fn reports(sets: Vec<GenSet>) -> Vec<LambdaReport> {
    let mut out: Vec<LambdaReport> = sets.par_iter().map(|s| LambdaReport::compute(s).unwrap()).collect();
    out.sort_by(|a, b| a.genset.cmp(&b.genset));
    out
}

/// Every unordered triple of distinct reflections of `D_n` that generates.
fn all_generating_three_flip_sets(n: u32) -> Vec<GenSet> {
    let g = GroupDescriptor::dihedral(n).unwrap();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = set(n, [refl(i), refl(j), refl(k)]);
                if closure(g, s.elements()).iter().all(|&b| b) {
                    out.push(s);
                }
            }
        }
    }
    out
}

struct Corpus {
    /// Criterion 1: `{f, r^a f}`, gcd(a, n) = 1, n in [3, 100].
    card2: Vec<LambdaReport>,
    /// Criterion 3: `{f, r^a f, r^{n/2}}`, gcd(a, n) = 1, even n in [4, 100].
    central: Vec<LambdaReport>,
    /// Criterion 4: `{r^a f, r^b, r^-b}`, gcd(b, n) = 1, n in [3, 100].
    chiral: Vec<LambdaReport>,
    /// Criterion 5: every generating three-reflection set, n in [3, 40].
    three_flip: Vec<LambdaReport>,
    /// Criterion 6: `{f, rf, r^2 f}` and (n > 3) `{f, rf, r^3 f}`, n in [3, 100].
    consecutive: Vec<LambdaReport>,
    /// Criterion 7: sets swept by the conjectures, n in [3, 48].
    swept: Vec<LambdaReport>,
    conj1: ConjectureReport,
    conj2: ConjectureReport,
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let card2 = (3..=100u32)
            .flat_map(|n| {
                (1..n)
                    .filter(move |a| a.gcd(&n) == 1)
                    .map(move |a| set(n, [refl(0), refl(a)]))
            })
            .collect();
        let central = (4..=100u32)
            .step_by(2)
            .flat_map(|n| {
                (1..n)
                    .filter(move |a| a.gcd(&n) == 1)
                    .map(move |a| set(n, [refl(0), refl(a), rot(n / 2)]))
            })
            .collect();
        let chiral = (3..=100u32)
            .flat_map(|n| {
                (1..n)
                    .filter(move |&b| b.gcd(&n) == 1 && 2 * b < n)
                    .flat_map(move |b| (0..n).map(move |a| set(n, [refl(a), rot(b), rot(n - b)])))
            })
            .collect();
        let three_flip = (3..=40).flat_map(all_generating_three_flip_sets).collect();
        let consecutive = (3..=100u32)
            .flat_map(|n| {
                let mut v = vec![set(n, [refl(0), refl(1), refl(2)])];
                if n > 3 {
                    v.push(set(n, [refl(0), refl(1), refl(3)]));
                }
                v
            })
            .collect();
        let swept = (3..=48)
            .flat_map(dlambda::presentations::generating_three_flip_sets)
            .collect();
        Corpus {
            card2: reports(card2),
            central: reports(central),
            chiral: reports(chiral),
            three_flip: reports(three_flip),
            consecutive: reports(consecutive),
            swept: reports(swept),
            conj1: sweep_conjecture1(3, 48).unwrap(),
            conj2: sweep_conjecture2(3, 48).unwrap(),
        }
    })
}

fn verdict(failures: usize) -> &'static str {
    if failures == 0 {
        "PASS"
    } else {
        "FAIL"
    }
}

fn report_line(n: u32, line: String, failures: &[String]) {
    println!("criterion {n}: {} {line}", verdict(failures.len()));
    for f in failures.iter().take(10) {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "criterion {n}: {} failures", failures.len());
}

#[test]
fn criterion_01_two_reflections() {
    let c = corpus();
    let failures: Vec<String> = c
        .card2
        .iter()
        .filter(|r| {
            let n = r.genset.n();
            let l1 = if n % 2 == 1 { n } else { n - 1 };
            (r.lambda1, r.lambda2) != (l1, 2)
        })
        .map(|r| format!("{}: lambda1={} lambda2={}", r.genset.describe(), r.lambda1, r.lambda2))
        .collect();
    report_line(
        1,
        format!(
            "{} sets {{f, r^a f}}, n in [3, 100]: {} violations",
            c.card2.len(),
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_02_length_multiset() {
    let mut failures = Vec::new();
    for n in 3..=64u32 {
        let t = LengthTable::compute(&set(n, [refl(0), refl(1)])).unwrap();
        let mut got = t.lengths().to_vec();
        got.sort_unstable();
        let mut want = vec![0];
        for k in 1..n {
            want.extend([k, k]);
        }
        want.push(n);
        if got != want {
            failures.push(format!("n={n}: {got:?}"));
        }
    }
    report_line(
        2,
        format!(
            "{{f, rf}} length multisets, n in [3, 64]: {} mismatches",
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_03_center_augmented() {
    let c = corpus();
    let failures: Vec<String> = c
        .central
        .iter()
        .filter(|r| {
            let n = r.genset.n();
            if n == 4 {
                r.lambda1 != 2
            } else {
                (r.lambda1, r.lambda2) != (n / 2, n / 2)
            }
        })
        .map(|r| format!("{}: lambda1={} lambda2={}", r.genset.describe(), r.lambda1, r.lambda2))
        .collect();
    report_line(
        3,
        format!(
            "{} sets {{f, r^a f, r^(n/2)}}, even n in [4, 100]: {} violations",
            c.central.len(),
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_04_chiral() {
    let c = corpus();
    let failures: Vec<String> = c
        .chiral
        .iter()
        .filter(|r| {
            let n = r.genset.n();
            let h = n / 2;
            let want = if n % 4 == 0 {
                (h + 1, h)
            } else if n % 2 == 0 {
                (h, h + 1)
            } else {
                (h + 1, h + 1)
            };
            (r.lambda1, r.lambda2) != want
        })
        .map(|r| format!("{}: lambda1={} lambda2={}", r.genset.describe(), r.lambda1, r.lambda2))
        .collect();
    report_line(
        4,
        format!(
            "{} sets {{r^a f, r^b, r^-b}}, n in [3, 100]: {} violations",
            c.chiral.len(),
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_05_three_reflection_lambda2() {
    let c = corpus();
    let failures: Vec<String> = c
        .three_flip
        .iter()
        .filter(|r| r.lambda2 != 2)
        .map(|r| format!("{}: lambda2={}", r.genset.describe(), r.lambda2))
        .collect();
    report_line(
        5,
        format!(
            "{} generating three-reflection sets, n in [3, 40]: {} violations",
            c.three_flip.len(),
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_06_consecutive_reflection_bounds() {
    let c = corpus();
    let failures: Vec<String> = c
        .consecutive
        .iter()
        .filter(|r| r.lambda1 > r.genset.n() / 2 + 1)
        .map(|r| format!("{}: lambda1={}", r.genset.describe(), r.lambda1))
        .collect();
    report_line(
        6,
        format!(
            "{} sets {{f,rf,r^2f}} / {{f,rf,r^3f}}, n in [3, 100], lambda1 <= floor(n/2)+1: {} violations",
            c.consecutive.len(),
            failures.len()
        ),
        &failures,
    );

    // The D_3 equality clause asks for lambda1 = 2. Under the definition
    // lambda1 = max l(g s g^-1), every conjugate of a reflection of D_3 is one
    // of the three generators, so lambda1 = 1; the value 2 is the diameter
    // (attained by r and r^2). Both facts are checked against the
    // independent word-enumeration oracle.
    let s = set(3, [refl(0), refl(1), refl(2)]);
    let d3 = c.consecutive.iter().find(|r| r.genset == s).unwrap();
    let oracle = oracle_lengths(&s);
    let g = s.group();
    let oracle_lambda1 = g
        .elements()
        .flat_map(|x| s.elements().iter().map(move |&y| g.conjugate(x, y)))
        .map(|e| oracle[g.index(e)].unwrap())
        .max()
        .unwrap();
    let oracle_diameter = oracle.iter().map(|l| l.unwrap()).max().unwrap();
    println!(
        "criterion 6 (D_3 equality clause): NOT met as stated - lambda1(D_3, {{f,rf,r^2f}}) = {} (oracle {}); \
         the stated value 2 is the diameter ({}, oracle {})",
        d3.lambda1, oracle_lambda1, d3.diameter, oracle_diameter
    );
    assert_eq!((d3.lambda1, oracle_lambda1), (1, 1));
    assert_eq!((d3.diameter, oracle_diameter), (2, 2));
}

/// Shortest word length by breadth-first enumeration of words, using the
/// affine model `x -> sign*x + shift` on Z_n rather than the library's
/// multiplication rule.
fn oracle_lengths(s: &GenSet) -> Vec<Option<u32>> {
    let n = i64::from(s.n());
    let as_affine = |e: DihedralElement| (if e.is_flip() { -1i64 } else { 1 }, i64::from(e.rot()));
    let compose = |(s1, c1): (i64, i64), (s2, c2): (i64, i64)| (s1 * s2, (s1 * c2 + c1).rem_euclid(n));
    let key = |(sign, c): (i64, i64)| (c + if sign < 0 { n } else { 0 }) as usize;
    let gens: Vec<(i64, i64)> = s.elements().iter().map(|&e| as_affine(e)).collect();
    let mut best = vec![None; 2 * n as usize];
    let mut layer: BTreeSet<(i64, i64)> = BTreeSet::from([(1, 0)]);
    let mut len = 0;
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for &w in &layer {
            if best[key(w)].is_none() {
                best[key(w)] = Some(len);
                for &g in &gens {
                    next.insert(compose(w, g));
                }
            }
        }
        next.retain(|&w| best[key(w)].is_none());
        layer = next;
        len += 1;
    }
    best
}

#[test]
fn criterion_07_conjecture_sweeps() {
    let c = corpus();
    // conjecture 1: no counterexamples expected
    let conj1_failures: Vec<String> = c.conj1.counterexamples.iter().map(|x| x.to_string()).collect();
    let agree = c.conj1.checked == c.swept.len();

    // conjecture 2: every reported witness is re-checked independently
    let mut bad_witnesses = Vec::new();
    for x in &c.conj2.counterexamples {
        let Counterexample::FlipLength {
            genset,
            flip,
            flip_length,
            max_rotation_length,
            ..
        } = x
        else {
            bad_witnesses.push(format!("unexpected record {x}"));
            continue;
        };
        let n = genset.n() as usize;
        let lens = oracle_lengths(genset);
        let oracle_flip = lens[n + flip.rot() as usize].unwrap();
        let oracle_rot = lens[..n].iter().map(|l| l.unwrap()).max().unwrap();
        if oracle_flip != *flip_length || oracle_rot != *max_rotation_length || oracle_flip <= oracle_rot {
            bad_witnesses.push(format!("{x}: oracle gives {oracle_flip} vs {oracle_rot}"));
        }
    }
    let first = c
        .conj2
        .counterexamples
        .first()
        .map(|x| x.to_string())
        .unwrap_or_default();

    // the command-line contract for a counterexample is exit status 3
    let status = Command::new(env!("CARGO_BIN_EXE_dlambda"))
        .args([
            "sweep",
            "--conjecture",
            "2",
            "--n-min",
            "3",
            "--n-max",
            "48",
            "--format",
            "json",
        ])
        .output()
        .unwrap()
        .status
        .code();

    let conj2_found = !c.conj2.counterexamples.is_empty();
    println!(
        "criterion 7: conjecture 1 {} ({} generating three-reflection sets, n in [3, 48], {} counterexamples)",
        verdict(conj1_failures.len()),
        c.conj1.checked,
        conj1_failures.len()
    );
    if conj2_found {
        println!(
            "criterion 7: conjecture 2 COUNTEREXAMPLE FOUND - zero-counterexample clause NOT met; \
             {} of {} sets fail, {} witnesses re-verified by word enumeration, CLI exit status {:?}; first witness: {}",
            c.conj2.counterexamples.len(),
            c.conj2.checked,
            c.conj2.counterexamples.len() - bad_witnesses.len(),
            status,
            first
        );
    } else {
        println!("criterion 7: conjecture 2 PASS (0 counterexamples, CLI exit status {status:?})");
    }
    for f in conj1_failures.iter().chain(&bad_witnesses).take(10) {
        println!("  {f}");
    }

    assert!(agree, "sweep and corpus disagree on the set count");
    assert!(conj1_failures.is_empty(), "conjecture 1 counterexample found");
    assert!(
        bad_witnesses.is_empty(),
        "conjecture 2 witnesses failed re-verification"
    );
    // the contract: exit 3 iff a counterexample was reported
    assert_eq!(status, Some(if conj2_found { 3 } else { 0 }));
    if conj2_found {
        assert_eq!(
            first,
            "n=4; S={f, r^1*f, r^2*f}: l(r^3*f) = 3 > 2 = l(r^1) = max rotation length"
        );
    }
}

#[test]
fn criterion_08_universal_bound() {
    let c = corpus();
    let all = [&c.card2, &c.central, &c.chiral, &c.three_flip, &c.consecutive, &c.swept];
    let total: usize = all.iter().map(|v| v.len()).sum();
    let failures: Vec<String> = all
        .iter()
        .flat_map(|v| v.iter())
        .filter(|r| r.lambda2 > 2 * r.lambda1)
        .map(|r| format!("{}: lambda1={} lambda2={}", r.genset.describe(), r.lambda1, r.lambda2))
        .collect();
    report_line(
        8,
        format!(
            "lambda2 <= 2*lambda1 over {total} instances of criteria 1-7: {} violations",
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_09_morphism_examples() {
    let mut failures = Vec::new();

    let d3 = find_relation_preserving_map(&set(3, [refl(0), refl(1)]), &set(3, [refl(0), refl(2)]))
        .unwrap()
        .expect("D_3 map");
    if d3.generator_map != vec![(el("f"), el("f")), (el("r*f"), el("r^2*f"))] {
        failures.push(format!("D_3 first map is {:?}", d3.generator_map));
    }
    let table = [
        ("1", "1"),
        ("r", "r^2"),
        ("r^2", "r"),
        ("f", "f"),
        ("r*f", "r^2*f"),
        ("r^2*f", "r*f"),
    ];
    for (x, y) in table {
        if d3.image(el(x)) != el(y) {
            failures.push(format!("D_3 image of {x} is {}", d3.image(el(x))));
        }
    }

    let s7 = set(7, [refl(0), refl(1), refl(2)]);
    let t7 = set(7, [refl(3), refl(0), refl(4)]);
    let d7 = try_generator_map(&s7, &t7, &[(refl(0), refl(3)), (refl(1), refl(0)), (refl(2), refl(4))]).unwrap();
    if !d7.as_ref().is_some_and(|t| t.is_automorphism()) {
        failures.push("D_7 map f->r^3f, rf->f, r^2f->r^4f not found".to_string());
    }

    let d9 = find_relation_preserving_map(
        &set(9, [refl(0), refl(1), refl(2)]),
        &set(9, [refl(0), refl(1), refl(3)]),
    )
    .unwrap();
    if d9.is_some() {
        failures.push("D_9 pair unexpectedly has a map".to_string());
    }
    report_line(9, "D_3 map and table, D_7 map, D_9 NoneFound".to_string(), &failures);
}

#[test]
fn criterion_10_extreme_sets() {
    let mut failures = Vec::new();
    for n in 3..=24u32 {
        let g = GroupDescriptor::dihedral(n).unwrap();
        let full = LambdaReport::compute(&GenSet::all_nonidentity(g)).unwrap();
        if (full.lambda1, full.lambda2) != (1, 1) {
            failures.push(format!("n={n} D_n - {{1}}: {} {}", full.lambda1, full.lambda2));
        }
        let flips = LambdaReport::compute(&GenSet::all_reflections(n).unwrap()).unwrap();
        if (flips.lambda1, flips.lambda2) != (1, 2) {
            failures.push(format!("n={n} all reflections: {} {}", flips.lambda1, flips.lambda2));
        }
        let cyc = GroupDescriptor::cyclic(n).unwrap();
        let s = GenSet::in_group(cyc, [rot(1), rot(n - 1)]).unwrap();
        let c = LambdaReport::compute(&s).unwrap();
        if c.lambda1 != 1 || c.lambda2 > 2 {
            failures.push(format!("n={n} C_n {{r, r^-1}}: {} {}", c.lambda1, c.lambda2));
        }
    }
    report_line(
        10,
        format!(
            "n in [3, 24]: D_n - {{1}}, all reflections, C_n {{r, r^-1}}: {} violations",
            failures.len()
        ),
        &failures,
    );
}

#[test]
fn criterion_11_classification_cross_check() {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 3..=40u32 {
        let g = GroupDescriptor::dihedral(n).unwrap();
        let spans = |x: &[DihedralElement]| closure(g, x).iter().all(|&b| b);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = set(n, [refl(i), refl(j), refl(k)]);
                    let e = s.elements();
                    let pairs = [(0, 1), (0, 2), (1, 2)]
                        .iter()
                        .filter(|&&(p, q)| spans(&[e[p], e[q]]))
                        .count();
                    let class = classify(&s).unwrap().class;
                    let expected = if !spans(e) {
                        PresentationClass::NonGenerating
                    } else {
                        PresentationClass::ThreeInv(match pairs {
                            3 => ThreeInvClass::A,
                            2 => ThreeInvClass::B,
                            1 => ThreeInvClass::C,
                            _ => ThreeInvClass::D,
                        })
                    };
                    checked += 1;
                    if class != expected {
                        failures.push(format!("{}: {class} vs closure {expected}", s.describe()));
                    }
                }
            }
        }
    }
    let worked = [
        (5, [0, 1, 2], ThreeInvClass::A),
        (6, [0, 1, 2], ThreeInvClass::B),
        (6, [0, 1, 4], ThreeInvClass::C),
        (30, [0, 3, 5], ThreeInvClass::D),
    ];
    for (n, exps, want) in worked {
        let s = set(n, exps.map(refl));
        let got = classify(&s).unwrap().class;
        if got != PresentationClass::ThreeInv(want) {
            failures.push(format!("worked example {}: {got}", s.describe()));
        }
    }
    report_line(
        11,
        format!(
            "{checked} three-reflection sets, n in [3, 40], plus 4 worked examples: {} disagreements",
            failures.len()
        ),
        &failures,
    );
}
