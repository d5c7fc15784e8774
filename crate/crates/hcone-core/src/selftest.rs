//! The property suites behind `hcone selftest`: exhaustive verdict sweeps
//! against the LP oracles, seeded randomized laws, and the generators'
//! structural checks. Everything is deterministic given (bounds, seed);
//! sweeps fan out over worker threads and results are merged in input order.

use std::fmt;

use crate::decompose::{decompose, is_chain, validate_decomposition};
use crate::diagram::{HDiagram, Staircase, extract_levels, lex_segment, staircase_hvector};
use crate::generators::{
    Decomposition, extremal_points, glue, tower_decomposition, tower_vector,
};
use crate::hvector::{Grading, HVector, leq_pointwise, linear_combine, parse_hvector};
use crate::oracle::{
    LinearSystem, Relation, cone_membership_via_ex, is_extremal_oracle, lp_feasible_fm,
    lp_feasible_simplex, membership_oracle,
};
use crate::rational::Rational;

/// Deterministic split-mix generator; good enough for test data and fully
/// reproducible across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// A non-negative rational with numerator `0..=max_num` and denominator
    /// `1..=max_den`.
    pub fn rational(&mut self, max_num: u64, max_den: u64) -> Rational {
        let num = self.below(max_num + 1) as i64;
        let den = 1 + self.below(max_den) as i64;
        Rational::new(num, den).expect("denominator is positive")
    }
}

fn floor_times(bound: &Rational, den: u64) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    debug_assert!(!bound.is_negative());
    let scaled = bound * &Rational::from(den);
    scaled.numer().div_floor(scaled.denom()).to_u64().unwrap_or(0)
}

/// A random rational in `[0, bound]` with denominator at most `max_den`.
pub fn random_rational_below(
    rng: &mut SplitMix64,
    bound: &Rational,
    max_den: u64,
) -> Rational {
    let den = 1 + rng.below(max_den);
    let max_num = floor_times(bound, den);
    let num = rng.below(max_num + 1);
    Rational::from(num) / Rational::from(den)
}

/// All canonical h-vectors with degree at most `d_max` and integer entries in
/// `0..=entry_max` (the zero vector plus every vector with a nonzero top
/// entry).
pub fn integer_vectors(d_max: usize, entry_max: u64) -> Vec<HVector> {
    let mut out = vec![HVector::zero()];
    for len in 1..=d_max + 1 {
        // odometer over entries; the top digit stays in 1..=entry_max
        let mut digits = vec![0u64; len];
        digits[len - 1] = 1;
        'all: loop {
            out.push(HVector::from_ints(
                &digits.iter().map(|&v| v as i64).collect::<Vec<_>>(),
            ));
            let mut pos = 0;
            loop {
                digits[pos] += 1;
                if digits[pos] <= entry_max {
                    break;
                }
                if pos == len - 1 {
                    break 'all;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
    out
}

/// A random diagram satisfying the row and column conditions by
/// construction: each row is weakly decreasing and bounded by the row below.
pub fn random_hdiagram(
    rng: &mut SplitMix64,
    n: Grading,
    d_max: usize,
    max_num: u64,
    max_den: u64,
) -> HDiagram {
    let width = 1 + rng.below(d_max as u64 + 1) as usize;
    let mut first: Vec<Rational> = (0..width).map(|_| rng.rational(max_num, max_den)).collect();
    first.sort_by(|a, b| b.cmp(a));
    let mut rows = vec![first];
    loop {
        let row_index = rows.len();
        let start_degree = n.n() * row_index;
        if start_degree > d_max || rng.below(3) == 0 {
            break;
        }
        let below = rows.last().expect("at least one row");
        let width = below.len().min(d_max + 1 - start_degree);
        let mut row: Vec<Rational> = Vec::with_capacity(width);
        for t in 0..width {
            let mut cap = below[t].clone();
            if t > 0 && row[t - 1] < cap {
                cap = row[t - 1].clone();
            }
            row.push(random_rational_below(rng, &cap, max_den));
        }
        while row.last().is_some_and(Rational::is_zero) {
            row.pop();
        }
        if row.is_empty() {
            break;
        }
        rows.push(row);
    }
    while rows.last().is_some_and(|row| row.iter().all(Rational::is_zero)) {
        rows.pop();
    }
    HDiagram::new(n, rows)
}

/// Order-preserving parallel map over owned items.
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk_size = items.len().div_ceil(workers);
    let chunks: Vec<&[T]> = items.chunks(chunk_size).collect();
    let mut results: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(|| chunk.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        results = handles.into_iter().map(|h| h.join().expect("worker panicked")).collect();
    });
    results.into_iter().flatten().collect()
}

/// One sweep entry: both verdicts (optionally the combination oracle too) and
/// the certificate when the algorithm accepted.
pub struct SweepCase {
    pub n: usize,
    pub h: HVector,
    pub algorithm_member: bool,
    pub oracle_member: bool,
    pub via_ex_member: Option<bool>,
    pub certificate: Option<Decomposition>,
}

/// Runs the decomposition algorithm and the diagram-condition oracle (and,
/// when asked, the extremal-combination oracle) over every integer vector in
/// the bounds, in parallel.
pub fn exhaustive_sweep(
    n_max: usize,
    d_max: usize,
    entry_max: u64,
    with_via_ex: bool,
) -> Vec<SweepCase> {
    let vectors = integer_vectors(d_max, entry_max);
    let mut inputs = Vec::with_capacity(n_max * vectors.len());
    for n in 1..=n_max {
        for h in &vectors {
            inputs.push((n, h.clone()));
        }
    }
    par_map(inputs, |(nv, h)| {
        let n = Grading::new(*nv).expect("n >= 1");
        let certificate = decompose(n, h).expect("state machine stays within budget");
        let algorithm_member = certificate.is_member();
        let oracle_member = membership_oracle(n, h).member;
        let via_ex_member = with_via_ex.then(|| cone_membership_via_ex(n, h).0);
        let dec = match certificate {
            crate::decompose::MembershipCertificate::Member(dec) => Some(dec),
            crate::decompose::MembershipCertificate::NotMember(_) => None,
        };
        SweepCase {
            n: *nv,
            h: h.clone(),
            algorithm_member,
            oracle_member,
            via_ex_member,
            certificate: dec,
        }
    })
}

fn member_command(n: usize, h: &HVector) -> String {
    let csv = h
        .entries()
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let csv = if csv.is_empty() { "0".to_string() } else { csv };
    format!("hcone member -n {n} --h {csv}")
}

/// Outcome of one property: total cases and the failing reproductions (the
/// list is capped, the count is not).
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

const FAILURE_CAP: usize = 8;

impl PropertyOutcome {
    fn new(name: &'static str) -> Self {
        PropertyOutcome { name, cases: 0, failure_count: 0, failures: Vec::new() }
    }

    fn case(&mut self, ok: bool, repro: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < FAILURE_CAP {
                self.failures.push(repro());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

pub struct Report {
    pub outcomes: Vec<PropertyOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for outcome in &self.outcomes {
            writeln!(
                f,
                "{:<36} {:>7} cases  {}",
                outcome.name,
                outcome.cases,
                if outcome.passed() { "PASS" } else { "FAIL" }
            )?;
            for failure in &outcome.failures {
                writeln!(f, "    repro: {failure}")?;
            }
            if outcome.failure_count > outcome.failures.len() {
                writeln!(
                    f,
                    "    ... and {} more failures",
                    outcome.failure_count - outcome.failures.len()
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepBounds {
    pub n_max: usize,
    pub d_max: usize,
    pub entry_max: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelftestError {
    BadBounds,
    TooLarge { cases: usize, limit: usize },
}

impl fmt::Display for SelftestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelftestError::BadBounds => write!(f, "selftest bounds must all be >= 1"),
            SelftestError::TooLarge { cases, limit } => {
                write!(f, "sweep of {cases} cases exceeds the {limit} limit (pass --allow-large)")
            }
        }
    }
}

impl std::error::Error for SelftestError {}

const SWEEP_LIMIT: usize = 1_000_000;

/// Runs every property suite at the given bounds. Deterministic for a fixed
/// (bounds, seed) pair.
pub fn run(bounds: SweepBounds, seed: u64, allow_large: bool) -> Result<Report, SelftestError> {
    if bounds.n_max == 0 || bounds.entry_max == 0 {
        return Err(SelftestError::BadBounds);
    }
    let per_n = integer_vector_count(bounds.d_max, bounds.entry_max);
    let total = per_n.saturating_mul(bounds.n_max);
    if total > SWEEP_LIMIT && !allow_large {
        return Err(SelftestError::TooLarge { cases: total, limit: SWEEP_LIMIT });
    }

    let sweep = exhaustive_sweep(bounds.n_max, bounds.d_max, bounds.entry_max, true);
    let mut outcomes = Vec::new();
    outcomes.push(verdict_equivalence(&sweep));
    outcomes.push(oracle_agreement(&sweep));
    outcomes.push(member_reconstruction(&sweep));
    outcomes.push(member_chain(&sweep));
    outcomes.push(reduced_top_rejection(&sweep));
    outcomes.push(member_entry_bound(&sweep));
    outcomes.push(scaling_and_additivity(&sweep, seed));
    outcomes.push(generator_idempotence(&bounds));
    outcomes.push(extremality(&bounds));
    outcomes.push(catalogue_structure(&bounds));
    outcomes.push(tower_reconstruction());
    outcomes.push(glue_window_agreement(seed));
    outcomes.push(pointwise_order_laws(seed));
    outcomes.push(parse_round_trip(seed));
    outcomes.push(linear_combine_laws(seed));
    outcomes.push(lex_projection(&bounds));
    outcomes.push(diagram_levels(seed));
    outcomes.push(fm_simplex_agreement(seed));
    Ok(Report { outcomes })
}

fn integer_vector_count(d_max: usize, entry_max: u64) -> usize {
    let base = entry_max as usize + 1;
    let mut total = 1usize;
    let mut power = 1usize;
    for _ in 0..=d_max {
        total = total.saturating_add(entry_max as usize * power);
        power = power.saturating_mul(base);
    }
    total
}

fn verdict_equivalence(sweep: &[SweepCase]) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("decompose_vs_membership_oracle");
    for case in sweep {
        outcome.case(case.algorithm_member == case.oracle_member, || {
            format!("{} --check-oracle", member_command(case.n, &case.h))
        });
    }
    outcome
}

fn oracle_agreement(sweep: &[SweepCase]) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("membership_vs_combination_oracle");
    for case in sweep {
        let Some(via_ex) = case.via_ex_member else { continue };
        outcome.case(case.oracle_member == via_ex, || member_command(case.n, &case.h));
    }
    outcome
}

fn member_reconstruction(sweep: &[SweepCase]) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("member_reconstruction");
    for case in sweep {
        let Some(dec) = &case.certificate else { continue };
        let n = Grading::new(case.n).expect("n >= 1");
        outcome.case(validate_decomposition(n, &case.h, dec), || {
            member_command(case.n, &case.h)
        });
    }
    outcome
}

fn member_chain(sweep: &[SweepCase]) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("member_chain");
    for case in sweep {
        let Some(dec) = &case.certificate else { continue };
        let n = Grading::new(case.n).expect("n >= 1");
        outcome.case(is_chain(n, dec), || member_command(case.n, &case.h));
    }
    outcome
}

/// Integer vectors whose top degree is `n-1 mod n` and that have an interior
/// zero are rejected by both sides.
fn reduced_top_rejection(sweep: &[SweepCase]) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("reduced_top_degree_rejected");
    for case in sweep {
        let Some(d) = case.h.degree() else { continue };
        if d % case.n != case.n - 1 || !case.h.get(d).is_positive() {
            continue;
        }
        if !(0..d).any(|k| case.h.get(k).is_zero()) {
            continue;
        }
        outcome.case(!case.algorithm_member && !case.oracle_member, || {
            member_command(case.n, &case.h)
        });
    }
    outcome
}

/// Accepted vectors satisfy the row bound `h_i <= h_0 * s_i`.
fn member_entry_bound(sweep: &[SweepCase]) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("member_entry_bound");
    for case in sweep {
        if !case.algorithm_member {
            continue;
        }
        let n = Grading::new(case.n).expect("n >= 1");
        let h0 = case.h.get(0);
        let ok = (0..case.h.len()).all(|i| {
            case.h.get(i) <= &h0 * &Rational::from(n.max_coeff(i as i64))
        });
        outcome.case(ok, || member_command(case.n, &case.h));
    }
    outcome
}

/// Membership verdicts are invariant under positive scaling and closed under
/// addition.
fn scaling_and_additivity(sweep: &[SweepCase], seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("cone_axioms_on_members");
    let mut rng = SplitMix64::new(seed ^ 0xA11CE);
    let members: Vec<&SweepCase> = sweep.iter().filter(|c| c.algorithm_member).collect();
    if members.is_empty() {
        return outcome;
    }
    for _ in 0..120 {
        let a = members[rng.below(members.len() as u64) as usize];
        let b = members[rng.below(members.len() as u64) as usize];
        let n = Grading::new(a.n).expect("n >= 1");
        let scale = Rational::from(1 + rng.below(6)) / Rational::from(1 + rng.below(6));
        let scaled = a.h.scale(&scale).expect("positive scale");
        let ok_scale = decompose(n, &scaled)
            .expect("machine stays within budget")
            .is_member();
        outcome.case(ok_scale, || member_command(a.n, &scaled));
        if b.n == a.n {
            let sum = a.h.add(&b.h);
            let ok_sum = decompose(n, &sum).expect("machine stays within budget").is_member();
            outcome.case(ok_sum, || member_command(a.n, &sum));
        }
    }
    outcome
}

/// Every catalogue point decomposes to itself with coefficient one.
fn generator_idempotence(bounds: &SweepBounds) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("generator_idempotence");
    for nv in 1..=bounds.n_max {
        let n = Grading::new(nv).expect("n >= 1");
        for point in extremal_points(n, bounds.d_max + 3) {
            let h = point.expand(n);
            let got = decompose(n, &h).expect("machine stays within budget");
            let ok = match got {
                crate::decompose::MembershipCertificate::Member(dec) => {
                    dec.terms() == [(Rational::one(), point.clone())]
                }
                crate::decompose::MembershipCertificate::NotMember(_) => false,
            };
            outcome.case(ok, || {
                format!("hcone decompose -n {nv} --h {}", expansion_csv(&h))
            });
        }
    }
    outcome
}

fn expansion_csv(h: &HVector) -> String {
    h.entries()
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Every catalogue point passes the convex-hull extremality test.
fn extremality(bounds: &SweepBounds) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("catalogue_extremality");
    for nv in 1..=bounds.n_max {
        let n = Grading::new(nv).expect("n >= 1");
        let d = bounds.d_max;
        for point in extremal_points(n, d) {
            let ok = is_extremal_oracle(n, d, &point).expect("catalogue point");
            outcome.case(ok, || format!("hcone ex -n {nv} -d {d}  # point {point}"));
        }
    }
    outcome
}

/// Catalogues grow monotonically and never repeat an expansion.
fn catalogue_structure(bounds: &SweepBounds) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("catalogue_structure");
    for nv in 1..=bounds.n_max {
        let n = Grading::new(nv).expect("n >= 1");
        let mut previous: Vec<HVector> = Vec::new();
        for d in 0..=bounds.d_max + 2 {
            let points = extremal_points(n, d);
            let expansions: Vec<HVector> = points.iter().map(|p| p.expand(n)).collect();
            let monotone = previous.iter().all(|e| expansions.contains(e));
            let distinct = {
                let mut sorted: Vec<&HVector> = expansions.iter().collect();
                sorted.sort_by(|a, b| a.entries().cmp(b.entries()));
                sorted.windows(2).all(|w| w[0] != w[1])
            };
            let starts_at_one = expansions.iter().all(|e| e.get(0) == Rational::one());
            outcome.case(monotone && distinct && starts_at_one, || {
                format!("hcone ex -n {nv} -d {d}")
            });
            previous = expansions;
        }
    }
    outcome
}

/// The all-ones vector of length n*m reconstructs from maximal vectors with
/// top coefficient 1/m.
fn tower_reconstruction() -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("tower_reconstruction");
    for nv in 1..=5 {
        let n = Grading::new(nv).expect("n >= 1");
        for m in 1..=8 {
            let dec = tower_decomposition(n, m).expect("m >= 1");
            let ones = HVector::new(vec![Rational::one(); nv * m]).expect("ones");
            let top = dec
                .terms()
                .iter()
                .find(|(_, p)| p.degree() == nv * m - 1)
                .map(|(c, _)| c.clone());
            let ok = dec.reconstruct(n) == ones
                && dec.terms().iter().all(|(c, _)| c.is_positive())
                && top == Some(Rational::one() / Rational::from(m));
            outcome.case(ok, || format!("tower_decomposition(n={nv}, m={m})"));
        }
    }
    outcome
}

/// Glueing agrees with the bare tower on the first `r+1` and last `r+2`
/// coordinates and adds the shifted vector in between.
fn glue_window_agreement(seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("glue_window_agreement");
    let mut rng = SplitMix64::new(seed ^ 0x61_0e);
    for _ in 0..200 {
        let nv = 1 + rng.below(5) as usize;
        let n = Grading::new(nv).expect("n >= 1");
        let d = rng.below(16) as usize;
        let (m, r) = n.split(d);
        if r == nv - 1 {
            continue;
        }
        let window = d as i64 - 2 * r as i64 - 3;
        if window < 0 {
            continue;
        }
        let len = rng.below(window as u64 + 2) as usize;
        let entries: Vec<Rational> = (0..len).map(|_| rng.rational(3, 4)).collect();
        let h = HVector::new(entries).expect("non-negative");
        let tower = tower_vector(n, d);
        let glued = glue(n, d, &h).expect("h fits the window");
        // the tower ends in a 1, so the glued vector has full length
        let mut ok = glued.len() == d + 1;
        for i in 0..=d {
            let expected = if i > r {
                &tower.get(i) + &h.get(i - r - 1)
            } else {
                tower.get(i)
            };
            if glued.get(i) != expected {
                ok = false;
                break;
            }
        }
        // the column left of the top slab stays empty
        ok = ok && glued.get(nv * m - 1) == tower.get(nv * m - 1);
        outcome.case(ok, || format!("glue(n={nv}, d={d}, h={h})"));
    }
    outcome
}

/// Reflexivity, antisymmetry and transitivity of the pointwise order on
/// random triples.
fn pointwise_order_laws(seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("pointwise_order_laws");
    let mut rng = SplitMix64::new(seed ^ 0x0_4de4);
    for _ in 0..500 {
        let mk = |rng: &mut SplitMix64| {
            let len = rng.below(6) as usize;
            HVector::new((0..len).map(|_| rng.rational(3, 3)).collect()).expect("non-negative")
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let c = mk(&mut rng);
        let reflexive = leq_pointwise(&a, &a);
        let antisymmetric = !(leq_pointwise(&a, &b) && leq_pointwise(&b, &a)) || a == b;
        let transitive =
            !(leq_pointwise(&a, &b) && leq_pointwise(&b, &c)) || leq_pointwise(&a, &c);
        outcome.case(reflexive && antisymmetric && transitive, || {
            format!("order laws on {a}, {b}, {c}")
        });
    }
    outcome
}

/// Text and JSON encodings round-trip.
fn parse_round_trip(seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("parse_format_round_trip");
    let mut rng = SplitMix64::new(seed ^ 0x9a45e);
    for _ in 0..500 {
        let len = 1 + rng.below(7) as usize;
        let entries: Vec<Rational> = (0..len).map(|_| rng.rational(9, 6)).collect();
        let h = HVector::new(entries).expect("non-negative");
        let text = h
            .entries()
            .iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let text = if text.is_empty() { "0".into() } else { text };
        let from_text = parse_hvector(&text).expect("own text parses");
        let from_json = parse_hvector(&h.to_json().to_string()).expect("own JSON parses");
        outcome.case(from_text == h && from_json == h, || format!("parse \"{text}\""));
    }
    outcome
}

/// Linear combinations ignore term order and distribute over coefficient
/// addition.
fn linear_combine_laws(seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("linear_combine_laws");
    let mut rng = SplitMix64::new(seed ^ 0x11C0);
    for _ in 0..300 {
        let mk = |rng: &mut SplitMix64| {
            let len = rng.below(5) as usize;
            HVector::new((0..len).map(|_| rng.rational(4, 3)).collect()).expect("non-negative")
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let p = rng.rational(5, 4);
        let q = rng.rational(5, 4);
        let fwd = linear_combine(&[(p.clone(), a.clone()), (q.clone(), b.clone())]).unwrap();
        let rev = linear_combine(&[(q.clone(), b.clone()), (p.clone(), a.clone())]).unwrap();
        let split = linear_combine(&[
            (p.clone(), a.clone()),
            (q.clone(), a.clone()),
        ])
        .unwrap();
        let joined = linear_combine(&[(&p + &q, a.clone())]).unwrap();
        outcome.case(fwd == rev && split == joined, || {
            format!("linear_combine with p={p}, q={q}, a={a}, b={b}")
        });
    }
    outcome
}

fn partitions_up_to(total: usize) -> Vec<Vec<usize>> {
    fn helper(left: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for part in (1..=left.min(max)).rev() {
            prefix.push(part);
            helper(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    helper(total, total, &mut prefix, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Over every order ideal with at most 10 boxes: the lex staircase realizes
/// the same h-vector, the map is idempotent, and box counts match entry sums.
fn lex_projection(bounds: &SweepBounds) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("lex_segment_projection");
    for nv in 1..=bounds.n_max.min(3) {
        let n = Grading::new(nv).expect("n >= 1");
        for rows in partitions_up_to(10) {
            let Ok(staircase) = Staircase::new(rows) else { continue };
            if staircase.rows().is_empty() {
                continue;
            }
            let h = staircase_hvector(n, &staircase);
            let Ok(first) = lex_segment(n, &h) else {
                outcome.case(false, || format!("hcone lexseg -n {nv} --h {}", expansion_csv(&h)));
                continue;
            };
            let round = staircase_hvector(n, &first.staircase) == h;
            let idempotent = lex_segment(n, &staircase_hvector(n, &first.staircase))
                .map(|second| second.staircase == first.staircase)
                .unwrap_or(false);
            let boxes = Rational::from(first.staircase.box_count()) == h.sum();
            outcome.case(round && idempotent && boxes, || {
                format!("hcone lexseg -n {nv} --h {}", expansion_csv(&h))
            });
        }
    }
    outcome
}

/// Random valid diagrams slice into nested levels that reconstruct exactly.
fn diagram_levels(seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("diagram_level_reconstruction");
    let mut rng = SplitMix64::new(seed ^ 0xD1A6);
    for case in 0..200 {
        let nv = 1 + rng.below(4) as usize;
        let n = Grading::new(nv).expect("n >= 1");
        let diag = random_hdiagram(&mut rng, n, 12, 5, 6);
        let ok = check_levels(n, &diag);
        outcome.case(ok, || format!("hcone selftest --seed {seed}  # diagram case {case}"));
    }
    outcome
}

/// Level slicing reconstructs the diagram's h-vector exactly and produces
/// nested footprints.
pub fn check_levels(n: Grading, diag: &HDiagram) -> bool {
    let Ok(levels) = extract_levels(diag) else { return false };
    let terms: Vec<(Rational, HVector)> = levels
        .iter()
        .map(|(h, s)| (h.clone(), staircase_hvector(n, s)))
        .collect();
    let Ok(sum) = linear_combine(&terms) else { return false };
    if sum != diag.row_sums() {
        return false;
    }
    levels.windows(2).all(|pair| {
        let (_, below) = &pair[0];
        let (_, above) = &pair[1];
        above
            .rows()
            .iter()
            .enumerate()
            .all(|(b, &len)| below.rows().get(b).is_some_and(|&l| l >= len))
    })
}

/// Both LP backends agree on random small systems.
fn fm_simplex_agreement(seed: u64) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("fm_vs_simplex");
    let mut rng = SplitMix64::new(seed ^ 0xF0);
    for case in 0..200 {
        let vars = 1 + rng.below(12) as usize;
        let rows = 1 + rng.below(14) as usize;
        let mut sys = LinearSystem::new(vars);
        for _ in 0..rows {
            // a few nonzeros per row, like the systems the oracles build
            let mut coeffs = vec![Rational::zero(); vars];
            let support = 1 + rng.below(3.min(vars as u64)) as usize;
            for _ in 0..support {
                let var = rng.below(vars as u64) as usize;
                let magnitude = rng.below(4) as i64 - 1;
                coeffs[var] = Rational::from_integer(magnitude);
            }
            let rhs = Rational::from_integer(rng.below(7) as i64 - 3);
            let relation = if rng.below(4) == 0 { Relation::Eq } else { Relation::GreaterEq };
            sys.push(coeffs, relation, rhs);
        }
        let fm = lp_feasible_fm(&sys).expect("well-formed").is_feasible();
        let simplex = lp_feasible_simplex(&sys).expect("well-formed").is_feasible();
        outcome.case(fm == simplex, || {
            format!("hcone selftest --seed {seed}  # lp case {case}")
        });
    }
    outcome
}
