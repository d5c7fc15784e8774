//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured scale. Run with `cargo test -p hcone-core --test acceptance`
//! (add `-- --nocapture` to see the lines).

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use hcone_core::decompose::{MembershipCertificate, decompose, is_chain, validate_decomposition};
use hcone_core::diagram::{lex_segment, staircase_hvector, Staircase};
use hcone_core::generators::{
    Decomposition, ExtremalPoint, extremal_points, glue, tower_decomposition,
};
use hcone_core::hvector::{Grading, HVector};
use hcone_core::oracle::is_extremal_oracle;
use hcone_core::rational::Rational;
use hcone_core::selftest::{SplitMix64, SweepCase, check_levels, exhaustive_sweep, random_hdiagram};

fn g(n: usize) -> Grading {
    Grading::new(n).unwrap()
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn member_terms(n: Grading, h: &HVector) -> Vec<(Rational, ExtremalPoint)> {
    match decompose(n, h).unwrap() {
        MembershipCertificate::Member(dec) => {
            let mut terms = dec.terms().to_vec();
            terms.sort_by(|a, b| a.1.cmp(&b.1));
            terms
        }
        MembershipCertificate::NotMember(w) => panic!("expected member, got {w}"),
    }
}

fn sorted(mut terms: Vec<(Rational, ExtremalPoint)>) -> Vec<(Rational, ExtremalPoint)> {
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    terms
}

/// Criterion 6 shares its exhaustive sweep with criteria 7 and 8.
fn sweep() -> &'static Vec<SweepCase> {
    static SWEEP: OnceLock<Vec<SweepCase>> = OnceLock::new();
    SWEEP.get_or_init(|| exhaustive_sweep(3, 5, 3, false))
}

#[test]
fn criterion_01_worked_decompositions_exact() {
    let start = Instant::now();

    let n3 = g(3);
    let got = member_terms(n3, &HVector::from_ints(&[3, 3, 2, 4, 2, 1, 2, 1]));
    let want = sorted(vec![
        (q("1/3"), ExtremalPoint::max(7)),
        (q("1/6"), ExtremalPoint::max(6)),
        (q("1/2"), ExtremalPoint::glued(n3, 6, ExtremalPoint::max(3)).unwrap()),
        (q("1"), ExtremalPoint::max(3)),
        (q("1"), ExtremalPoint::max(1)),
    ]);
    assert_eq!(got, want);

    let n4 = g(4);
    let got = member_terms(n4, &HVector::from_ints(&[3, 3, 2, 2, 3, 3, 2, 0, 1, 1]));
    let want = sorted(vec![
        (q("1"), ExtremalPoint::glued(n4, 9, ExtremalPoint::max(4)).unwrap()),
        (q("1/2"), ExtremalPoint::max(5)),
        (q("1/2"), ExtremalPoint::max(3)),
        (q("1"), ExtremalPoint::max(1)),
    ]);
    assert_eq!(got, want);

    let n2 = g(2);
    let got = member_terms(n2, &HVector::from_ints(&[2, 1, 2, 0, 1]));
    let want = sorted(vec![
        (q("1"), ExtremalPoint::glued(n2, 4, ExtremalPoint::max(1)).unwrap()),
        (q("1"), ExtremalPoint::max(0)),
    ]);
    assert_eq!(got, want);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 01 worked_decompositions_exact: PASS ({elapsed:?})");
}

#[test]
fn criterion_02_alternative_decompositions_validate() {
    let n2 = g(2);
    let target = HVector::from_ints(&[2, 1, 2, 0, 1]);
    let alt = Decomposition::new(
        n2,
        vec![
            (q("1"), ExtremalPoint::glued(n2, 4, ExtremalPoint::max(0)).unwrap()),
            (q("1"), ExtremalPoint::tower(n2, 2).unwrap()),
        ],
    )
    .unwrap();
    assert!(validate_decomposition(n2, &target, &alt));

    let n4 = g(4);
    let target = HVector::from_ints(&[3, 3, 2, 2, 3, 3, 2, 0, 1, 1]);
    let nested = ExtremalPoint::glued(
        n4,
        9,
        ExtremalPoint::glued(n4, 4, ExtremalPoint::max(0)).unwrap(),
    )
    .unwrap();
    let alt = Decomposition::new(
        n4,
        vec![
            (q("1"), nested),
            (q("1/2"), ExtremalPoint::max(6)),
            (q("1/2"), ExtremalPoint::max(5)),
            (q("1"), ExtremalPoint::max(1)),
        ],
    )
    .unwrap();
    assert!(validate_decomposition(n4, &target, &alt));

    println!("acceptance 02 alternative_decompositions_validate: PASS");
}

#[test]
fn criterion_03_glue_golden_value() {
    let got = glue(g(3), 7, &HVector::from_ints(&[1, 1])).unwrap();
    assert_eq!(got, HVector::from_ints(&[1, 1, 1, 2, 1, 0, 1, 1]));
    println!("acceptance 03 glue_golden_value: PASS");
}

#[test]
fn criterion_04_tower_identity() {
    let start = Instant::now();
    for nv in 1..=5 {
        let n = g(nv);
        for m in 1..=8 {
            let dec = tower_decomposition(n, m).unwrap();
            let ones = HVector::new(vec![Rational::one(); nv * m]).unwrap();
            assert_eq!(dec.reconstruct(n), ones, "n={nv}, m={m}");
            assert!(dec.terms().iter().all(|(c, _)| c.is_positive()));
            let top = dec
                .terms()
                .iter()
                .find(|(_, p)| p.degree() == nv * m - 1)
                .map(|(c, _)| c.clone());
            assert_eq!(top, Some(Rational::one() / Rational::from(m)), "n={nv}, m={m}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 04 tower_identity: PASS ({elapsed:?})");
}

#[test]
fn criterion_05_extremal_catalogue() {
    let start = Instant::now();
    let n = g(2);
    let expected_sizes = [1usize, 2, 4, 5, 9, 10, 17];
    for (d, want) in expected_sizes.iter().enumerate() {
        let points = extremal_points(n, d);
        assert_eq!(points.len(), *want, "catalogue size at d={d}");
        for p in &points {
            assert!(
                is_extremal_oracle(n, d, p).unwrap(),
                "point {p} flunks the extremality oracle at d={d}"
            );
            let got = member_terms(n, &p.expand(n));
            assert_eq!(got, vec![(q("1"), p.clone())], "decompose({p})");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("acceptance 05 extremal_catalogue: PASS ({elapsed:?})");
}

#[test]
fn criterion_06_verdict_equivalence() {
    let start = Instant::now();
    let cases = sweep();
    let mut disagreements = 0usize;
    for case in cases.iter() {
        if case.algorithm_member != case.oracle_member {
            disagreements += 1;
            eprintln!(
                "disagreement at n={} h={}: algorithm={}, oracle={}",
                case.n, case.h, case.algorithm_member, case.oracle_member
            );
        }
    }
    assert_eq!(disagreements, 0, "out of {} cases", cases.len());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "acceptance 06 verdict_equivalence: PASS ({} cases, {elapsed:?})",
        cases.len()
    );
}

#[test]
fn criterion_07_members_form_chains() {
    let mut checked = 0usize;
    for case in sweep() {
        let Some(dec) = &case.certificate else { continue };
        assert!(
            is_chain(g(case.n), dec),
            "certificate for n={} h={} is not a chain",
            case.n,
            case.h
        );
        checked += 1;
    }
    assert!(checked > 0);
    println!("acceptance 07 members_form_chains: PASS ({checked} certificates)");
}

#[test]
fn criterion_08_reduced_top_degree_rejected() {
    let mut checked = 0usize;
    for case in sweep() {
        let Some(d) = case.h.degree() else { continue };
        if d % case.n != case.n - 1 || !case.h.get(d).is_positive() {
            continue;
        }
        if !(0..d).any(|k| case.h.get(k).is_zero()) {
            continue;
        }
        assert!(
            !case.algorithm_member && !case.oracle_member,
            "reduced vector n={} h={} was accepted",
            case.n,
            case.h
        );
        checked += 1;
    }
    assert!(checked > 0);
    println!("acceptance 08 reduced_top_degree_rejected: PASS ({checked} vectors)");
}

#[test]
fn criterion_09_lex_segment_golden() {
    let n = g(2);
    let h = HVector::from_ints(&[1, 1, 2, 2, 2, 1]);
    let got = lex_segment(n, &h).unwrap();
    assert_eq!(got.staircase, Staircase::new(vec![4, 3, 2]).unwrap());
    let gens: Vec<String> = got.generators.iter().map(|m| m.to_string()).collect();
    assert_eq!(gens, vec!["x^4", "x^3*y", "x^2*y^2", "y^3"]);

    assert_eq!(staircase_hvector(n, &Staircase::new(vec![4, 3, 2]).unwrap()), h);
    assert_eq!(staircase_hvector(n, &Staircase::new(vec![6, 2, 1]).unwrap()), h);
    println!("acceptance 09 lex_segment_golden: PASS");
}

#[test]
fn criterion_10_diagram_levels() {
    let mut rng = SplitMix64::new(0);
    for case in 0..1000 {
        let nv = 1 + rng.below(4) as usize;
        let n = g(nv);
        let diag = random_hdiagram(&mut rng, n, 12, 5, 6);
        assert!(check_levels(n, &diag), "level slicing failed on case {case}");
    }
    println!("acceptance 10 diagram_levels: PASS (1000 diagrams)");
}
