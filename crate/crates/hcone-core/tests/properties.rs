//! Cross-module invariants beyond the acceptance criteria: deeper verdict
//! sweeps that reach the cut-correction and backtrack branches of the
//! decomposition loop, oracle agreement, and the extremality of larger
//! catalogues.

use hcone_core::decompose::{MembershipCertificate, decompose, is_chain, validate_decomposition};
use hcone_core::generators::extremal_points;
use hcone_core::hvector::{Grading, HVector};
use hcone_core::oracle::{cone_membership_via_ex, is_extremal_oracle, membership_oracle};
use hcone_core::rational::Rational;
use hcone_core::selftest::{SplitMix64, exhaustive_sweep, integer_vectors, par_map};

fn g(n: usize) -> Grading {
    Grading::new(n).unwrap()
}

fn check_case(n: Grading, h: &HVector) {
    let cert = decompose(n, h).unwrap();
    let oracle = membership_oracle(n, h).member;
    assert_eq!(
        cert.is_member(),
        oracle,
        "verdicts disagree for n={} h={h}",
        n.n()
    );
    if let MembershipCertificate::Member(dec) = cert {
        assert!(validate_decomposition(n, h, &dec), "reconstruction for h={h}");
        assert!(is_chain(n, &dec), "chain for h={h}");
    }
}

/// The cut transform's residue correction only fires for `d >= 2r + 3` with
/// `r >= 1`, the first instance being weight 3, degree 7. Sweep that region
/// exhaustively with small entries.
#[test]
fn verdicts_agree_where_the_cut_correction_fires() {
    let n = g(3);
    let inputs: Vec<HVector> = integer_vectors(7, 2)
        .into_iter()
        .filter(|h| h.degree() == Some(7) || h.degree() == Some(6))
        .collect();
    let count = inputs.len();
    par_map(inputs, |h| check_case(n, h));
    println!("cut-correction sweep: {count} vectors at n=3, d in {{6,7}}");
}

/// Seeded random vectors in the weight-4 family that contains the nested
/// glue examples; exercises deep pushes and backtracks.
#[test]
fn verdicts_agree_on_random_weight_four_vectors() {
    let n = g(4);
    let mut rng = SplitMix64::new(0x4d4);
    let mut inputs = Vec::new();
    for _ in 0..1500 {
        let len = 1 + rng.below(10) as usize;
        let mut entries: Vec<i64> = (0..len).map(|_| rng.below(4) as i64).collect();
        if let Some(last) = entries.last_mut() {
            if *last == 0 {
                *last = 1 + rng.below(3) as i64;
            }
        }
        inputs.push(HVector::from_ints(&entries));
    }
    let count = inputs.len();
    par_map(inputs, |h| check_case(n, h));
    println!("weight-4 random sweep: {count} vectors");
}

/// Rational entries keep the verdict equivalence (the cone is about rational
/// vectors, not just integer ones).
#[test]
fn verdicts_agree_on_random_rational_vectors() {
    let mut rng = SplitMix64::new(0xbeef);
    let mut inputs = Vec::new();
    for _ in 0..600 {
        let nv = 1 + rng.below(3) as usize;
        let len = 1 + rng.below(6) as usize;
        let entries: Vec<Rational> = (0..len).map(|_| rng.rational(4, 3)).collect();
        inputs.push((nv, HVector::new(entries).unwrap()));
    }
    let count = inputs.len();
    par_map(inputs, |(nv, h)| check_case(g(*nv), h));
    println!("rational sweep: {count} vectors");
}

/// Both oracles characterize the same cone on the exhaustive sweep.
#[test]
fn oracles_agree_exhaustively() {
    let sweep = exhaustive_sweep(3, 5, 3, true);
    for case in &sweep {
        assert_eq!(
            Some(case.oracle_member),
            case.via_ex_member,
            "oracles disagree for n={} h={}",
            case.n,
            case.h
        );
    }
    println!("oracle agreement: {} cases", sweep.len());
}

/// Every catalogue point up to degree 8 is extremal, for all weights up to 3.
#[test]
fn catalogue_extremality_to_degree_eight() {
    for nv in 1..=3 {
        let n = g(nv);
        for p in extremal_points(n, 8) {
            assert!(
                is_extremal_oracle(n, 8, &p).unwrap(),
                "{p} flunks extremality at n={nv}"
            );
        }
    }
}

/// Idempotence at the module-invariant scale: every generator decomposes to
/// itself, weights up to 3, degrees up to 8.
#[test]
fn generators_decompose_to_themselves_to_degree_eight() {
    for nv in 1..=3 {
        let n = g(nv);
        for p in extremal_points(n, 8) {
            let got = decompose(n, &p.expand(n)).unwrap();
            match got {
                MembershipCertificate::Member(dec) => {
                    assert_eq!(dec.terms(), &[(Rational::one(), p.clone())], "n={nv} {p}");
                }
                MembershipCertificate::NotMember(w) => panic!("{p} rejected: {w}"),
            }
        }
    }
}

/// Membership of a catalogue expansion via the combination oracle returns a
/// reconstructing witness.
#[test]
fn combination_witnesses_reconstruct() {
    let mut rng = SplitMix64::new(7);
    for _ in 0..40 {
        let nv = 1 + rng.below(3) as usize;
        let n = g(nv);
        let points = extremal_points(n, 6);
        let a = &points[rng.below(points.len() as u64) as usize];
        let b = &points[rng.below(points.len() as u64) as usize];
        let scale = Rational::from(1 + rng.below(3));
        let target = a.expand(n).scale(&scale).unwrap().add(&b.expand(n));
        let (ok, witness) = cone_membership_via_ex(n, &target);
        assert!(ok, "sum of generators must lie in the cone");
        let witness = witness.unwrap();
        let terms: Vec<(Rational, HVector)> = witness
            .iter()
            .map(|(c, p)| (c.clone(), p.expand(n)))
            .collect();
        assert_eq!(hcone_core::hvector::linear_combine(&terms).unwrap(), target);
    }
}
