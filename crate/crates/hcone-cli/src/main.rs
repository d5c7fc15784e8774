//! `hcone`: compute with the cone of h-vectors of artinian modules over
//! `k[x, y]` with `deg(x) = 1`, `deg(y) = n`.
//!
//! Exit codes: 0 success (or member), 1 negative verdict or domain error,
//! 2 usage error, 3 internal invariant violation or failed self-test.

use std::collections::BTreeMap;
use std::fmt;

use hcone_core::decompose::{MembershipCertificate, decompose};
use hcone_core::diagram::{HDiagram, RenderFormat, Staircase, lex_segment, render_hdiagram, render_staircase};
use hcone_core::generators::{Decomposition, ExtremalPoint, extremal_points};
use hcone_core::hvector::{Grading, HVector, parse_hvector};
use hcone_core::oracle::membership_oracle;
use hcone_core::selftest::{self, SweepBounds};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run(&args));
}

const USAGE: &str = "\
usage: hcone <command> [options]

commands:
  ex        -n N -d D [--format text|json]
            list the extremal points of the cone up to degree D
  decompose -n N --h LIST [--check-oracle] [--format text|json]
            decompose an h-vector into extremal points
  member    -n N --h LIST [--check-oracle] [--format text|json]
            decide membership (exit 0 = member, 1 = not a member)
  lexseg    -n N --h LIST [--format text|json]
            lex-segment staircase and ideal generators of an integer h-vector
  render    -n N (--rows LIST | --h LIST) [--format ascii|svg]
            draw a staircase, or the level stack of an h-vector's decomposition
  selftest  [--n-max A] [--d-max B] [--entry-max C] [--seed S] [--allow-large]
            run the exhaustive and randomized verification suites

h-vectors are comma-separated rationals (3,3,2,4 or 1/2,0,1) or a JSON
array of strings/integers. HCONE_NO_COLOR disables report styling.";

struct Options {
    n: Option<usize>,
    d: Option<usize>,
    h: Option<String>,
    rows: Option<String>,
    format: Option<String>,
    check_oracle: bool,
    n_max: usize,
    d_max: usize,
    entry_max: u64,
    seed: u64,
    allow_large: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            n: None,
            d: None,
            h: None,
            rows: None,
            format: None,
            check_oracle: false,
            // chosen so the full default suite finishes in a couple of
            // minutes on one core
            n_max: 3,
            d_max: 5,
            entry_max: 3,
            seed: 0,
            allow_large: false,
        }
    }
}

struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn run(args: &[String]) -> i32 {
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return EXIT_USAGE;
    };
    if command == "--help" || command == "-h" || command == "help" {
        println!("{USAGE}");
        return EXIT_OK;
    }
    let options = match parse_options(&args[1..]) {
        Ok(options) => options,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let result = match command.as_str() {
        "ex" => cmd_ex(&options),
        "decompose" => cmd_decompose(&options),
        "member" => cmd_member(&options),
        "lexseg" => cmd_lexseg(&options),
        "render" => cmd_render(&options),
        "selftest" => cmd_selftest(&options),
        other => Err(CommandError::Usage(format!("unknown command `{other}`"))),
    };
    match result {
        Ok(code) => code,
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `hcone --help` for usage");
            EXIT_USAGE
        }
        Err(CommandError::Domain(msg)) => {
            eprintln!("error: {msg}");
            EXIT_NEGATIVE
        }
        Err(CommandError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

enum CommandError {
    Usage(String),
    Domain(String),
    Internal(String),
}

fn parse_options(args: &[String]) -> Result<Options, UsageError> {
    let mut options = Options::default();
    let mut iter = args.iter();
    while let Some(flag) = iter.next() {
        let mut value = |name: &str| -> Result<&String, UsageError> {
            iter.next()
                .ok_or_else(|| UsageError(format!("flag {name} needs a value")))
        };
        match flag.as_str() {
            "-n" => options.n = Some(parse_number(value("-n")?, "-n")?),
            "-d" => options.d = Some(parse_number(value("-d")?, "-d")?),
            "--h" => options.h = Some(value("--h")?.clone()),
            "--rows" => options.rows = Some(value("--rows")?.clone()),
            "--format" => options.format = Some(value("--format")?.clone()),
            "--check-oracle" => options.check_oracle = true,
            "--n-max" => options.n_max = parse_number(value("--n-max")?, "--n-max")?,
            "--d-max" => options.d_max = parse_number(value("--d-max")?, "--d-max")?,
            "--entry-max" => {
                options.entry_max = parse_number(value("--entry-max")?, "--entry-max")? as u64
            }
            "--seed" => options.seed = parse_number(value("--seed")?, "--seed")? as u64,
            "--allow-large" => options.allow_large = true,
            other => return Err(UsageError(format!("unknown flag `{other}`"))),
        }
    }
    Ok(options)
}

fn parse_number(text: &str, flag: &str) -> Result<usize, UsageError> {
    text.parse::<usize>()
        .map_err(|_| UsageError(format!("flag {flag}: `{text}` is not a non-negative integer")))
}

fn require_grading(options: &Options) -> Result<Grading, CommandError> {
    let n = options
        .n
        .ok_or_else(|| CommandError::Usage("flag -n is required".into()))?;
    Grading::new(n).map_err(|e| CommandError::Usage(e.to_string()))
}

fn require_hvector(options: &Options) -> Result<HVector, CommandError> {
    let text = options
        .h
        .as_ref()
        .ok_or_else(|| CommandError::Usage("flag --h is required".into()))?;
    parse_hvector(text).map_err(|e| CommandError::Usage(format!("--h: {e}")))
}

fn want_json(options: &Options) -> Result<bool, CommandError> {
    match options.format.as_deref() {
        None | Some("text") => Ok(false),
        Some("json") => Ok(true),
        Some(other) => Err(CommandError::Usage(format!(
            "--format `{other}` is not text or json"
        ))),
    }
}

fn sorted_points(n: Grading, d: usize) -> Vec<ExtremalPoint> {
    let mut points = extremal_points(n, d);
    points.sort_by_key(|p| (p.degree(), p.clone()));
    points
}

fn cmd_ex(options: &Options) -> Result<i32, CommandError> {
    let n = require_grading(options)?;
    let d = options
        .d
        .ok_or_else(|| CommandError::Usage("flag -d is required".into()))?;
    let points = sorted_points(n, d);
    if want_json(options)? {
        let body: Vec<serde_json::Value> = points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "point": p.to_json(),
                    "expansion": p.expand(n).to_json(),
                })
            })
            .collect();
        println!("{}", serde_json::Value::Array(body));
    } else {
        for p in &points {
            println!("{} = {}", p, p.expand(n));
        }
    }
    Ok(EXIT_OK)
}

fn run_decompose(n: Grading, h: &HVector) -> Result<MembershipCertificate, CommandError> {
    decompose(n, h).map_err(|e| CommandError::Internal(e.to_string()))
}

fn oracle_check(
    n: Grading,
    h: &HVector,
    certificate: &MembershipCertificate,
) -> Result<(), CommandError> {
    let oracle = membership_oracle(n, h).member;
    if oracle != certificate.is_member() {
        return Err(CommandError::Internal(format!(
            "oracle disagrees: algorithm says {}, oracle says {}",
            verdict_word(certificate.is_member()),
            verdict_word(oracle),
        )));
    }
    Ok(())
}

fn verdict_word(member: bool) -> &'static str {
    if member { "member" } else { "not a member" }
}

fn cmd_decompose(options: &Options) -> Result<i32, CommandError> {
    let n = require_grading(options)?;
    let h = require_hvector(options)?;
    let certificate = run_decompose(n, &h)?;
    if options.check_oracle {
        oracle_check(n, &h, &certificate)?;
    }
    if want_json(options)? {
        println!("{}", certificate.to_json(n));
        return Ok(match certificate {
            MembershipCertificate::Member(_) => EXIT_OK,
            MembershipCertificate::NotMember(_) => EXIT_NEGATIVE,
        });
    }
    match certificate {
        MembershipCertificate::Member(dec) => {
            let degree = h.degree().unwrap_or(0);
            println!("member of H({degree}), n={}", n.n());
            for (coeff, point) in dec.terms() {
                println!("{coeff} * {point} = {}", point.expand(n));
            }
            if options.check_oracle {
                println!("oracle check: agree");
            }
            Ok(EXIT_OK)
        }
        MembershipCertificate::NotMember(witness) => {
            println!("not a member: {witness}");
            if options.check_oracle {
                println!("oracle check: agree");
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_member(options: &Options) -> Result<i32, CommandError> {
    let n = require_grading(options)?;
    let h = require_hvector(options)?;
    let certificate = run_decompose(n, &h)?;
    if options.check_oracle {
        oracle_check(n, &h, &certificate)?;
    }
    if want_json(options)? {
        println!("{}", serde_json::json!({ "member": certificate.is_member() }));
    } else {
        println!("{}", verdict_word(certificate.is_member()));
    }
    Ok(if certificate.is_member() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_lexseg(options: &Options) -> Result<i32, CommandError> {
    let n = require_grading(options)?;
    let h = require_hvector(options)?;
    let segment = lex_segment(n, &h).map_err(|e| CommandError::Domain(e.to_string()))?;
    if want_json(options)? {
        println!("{}", segment.to_json());
    } else {
        println!("staircase: {}", segment.staircase);
        let gens: Vec<String> = segment.generators.iter().map(|m| m.to_string()).collect();
        println!("generators: {}", gens.join(", "));
    }
    Ok(EXIT_OK)
}

fn render_format(options: &Options) -> Result<RenderFormat, CommandError> {
    match options.format.as_deref() {
        None | Some("ascii") | Some("text") => Ok(RenderFormat::Ascii),
        Some("svg") => Ok(RenderFormat::Svg),
        Some(other) => Err(CommandError::Usage(format!(
            "--format `{other}` is not ascii or svg"
        ))),
    }
}

fn cmd_render(options: &Options) -> Result<i32, CommandError> {
    let n = require_grading(options)?;
    match (&options.rows, &options.h) {
        (Some(rows), None) => {
            let lengths: Result<Vec<usize>, _> = rows
                .split(',')
                .map(|tok| tok.trim().parse::<usize>())
                .collect();
            let lengths = lengths
                .map_err(|_| CommandError::Usage(format!("--rows: bad row list `{rows}`")))?;
            let staircase =
                Staircase::new(lengths).map_err(|e| CommandError::Domain(e.to_string()))?;
            println!("{}", render_staircase(n, &staircase, render_format(options)?));
            Ok(EXIT_OK)
        }
        (None, Some(_)) => {
            if render_format(options)? == RenderFormat::Svg {
                return Err(CommandError::Usage(
                    "level stacks render as ascii only".into(),
                ));
            }
            let h = require_hvector(options)?;
            let certificate = run_decompose(n, &h)?;
            let dec = match certificate {
                MembershipCertificate::Member(dec) => dec,
                MembershipCertificate::NotMember(witness) => {
                    return Err(CommandError::Domain(format!(
                        "cannot render a non-member ({witness})"
                    )));
                }
            };
            let diagram = decomposition_diagram(n, &dec)?;
            let picture =
                render_hdiagram(&diagram).map_err(|e| CommandError::Internal(e.to_string()))?;
            println!("{picture}");
            Ok(EXIT_OK)
        }
        _ => Err(CommandError::Usage(
            "render needs exactly one of --rows or --h".into(),
        )),
    }
}

/// Stacks the lex staircases of the decomposition's terms, largest first,
/// into a single diagram.
fn decomposition_diagram(n: Grading, dec: &Decomposition) -> Result<HDiagram, CommandError> {
    let mut levels = Vec::with_capacity(dec.terms().len());
    for (coeff, point) in dec.terms() {
        let segment = lex_segment(n, &point.expand(n)).map_err(|e| {
            CommandError::Internal(format!("extremal expansion has no staircase: {e}"))
        })?;
        levels.push((coeff.clone(), segment.staircase));
    }
    Ok(HDiagram::from_levels(n, &levels))
}

fn cmd_selftest(options: &Options) -> Result<i32, CommandError> {
    if options.n_max == 0 {
        return Err(CommandError::Usage("--n-max must be at least 1".into()));
    }
    let bounds = SweepBounds {
        n_max: options.n_max,
        d_max: options.d_max,
        entry_max: options.entry_max,
    };
    let report = selftest::run(bounds, options.seed, options.allow_large).map_err(|e| match e {
        selftest::SelftestError::BadBounds => CommandError::Usage(e.to_string()),
        selftest::SelftestError::TooLarge { .. } => CommandError::Usage(e.to_string()),
    })?;
    let color = std::env::var_os("HCONE_NO_COLOR").is_none();
    println!(
        "selftest: n-max={} d-max={} entry-max={} seed={}",
        bounds.n_max, bounds.d_max, bounds.entry_max, options.seed
    );
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for outcome in &report.outcomes {
        let verdict = if outcome.passed() {
            paint("PASS", "32", color)
        } else {
            paint("FAIL", "31", color)
        };
        println!("{:<36} {:>7} cases  {verdict}", outcome.name, outcome.cases);
        for failure in &outcome.failures {
            println!("    repro: {failure}");
        }
        if outcome.failure_count > outcome.failures.len() {
            println!(
                "    ... and {} more failures",
                outcome.failure_count - outcome.failures.len()
            );
        }
        *counts.entry(if outcome.passed() { "pass" } else { "fail" }).or_insert(0) += 1;
    }
    let failed = counts.get("fail").copied().unwrap_or(0);
    println!(
        "{} properties, {} failed",
        report.outcomes.len(),
        failed
    );
    Ok(if failed == 0 { EXIT_OK } else { EXIT_INTERNAL })
}

fn paint(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}
