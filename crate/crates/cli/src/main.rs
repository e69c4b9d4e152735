//! `cdu` — exact c-differential uniformity experiments over GF(p^m).
//!
//! Subcommands: `field`, `uniformity`, `spectrum`, `scan`, `verify`, `solve`.
//! Reports embed the field realization (modulus, generator) and the artifact
//! version; identical invocations produce byte-identical JSON regardless of
//! worker count. Wall-clock timing goes to stderr only.
//!
//! Exit codes: 0 success (including refuted-prediction findings, which are
//! data), 1 failed verify-suite assertion, 2 invalid parameters, 3 size cap
//! exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use cdu::gf::{build_field_with_cap, FieldHeader, FieldSpec, GfError, DEFAULT_ORDER_CAP};
use cdu::oracle::{assess, conjecture_check, pcn_scan, Assessment, ConjectureReport, ScanReport};
use cdu::suites::{run_suite, CheckKind, SuiteError, SuiteReport};
use cdu::theorems::{solve_congruence, CongruenceFamily, CongruenceSolution, TheoremError};
use cdu::{with_worker_threads, FieldElement, PowerMap, Spectrum};
use serde::Serialize;
use std::time::Instant;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "cdu", version, about = "Exact c-differential uniformity of power maps over GF(p^m)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Override the field-order cap (default 2^22)
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Worker threads for the scans (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical realization of GF(p^m)
    Field {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
    },
    /// Measure the c-differential uniformity of x^d, with matching
    /// criterion predictions judged against the measurement
    Uniformity {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        d: u64,
        /// c as an element code, "-1", or "g^e" (generator power)
        #[arg(short, allow_hyphen_values = true)]
        c: String,
    },
    /// Measure the c-differential spectrum of x^d at a = 1
    Spectrum {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        d: u64,
        #[arg(short, allow_hyphen_values = true)]
        c: String,
    },
    /// Exhaustive PcN scan over every (d, c) pair of GF(p^m)
    Scan {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
        /// Also diff the scan against the predicted PcN family (p = 2 only)
        #[arg(long)]
        conjecture: bool,
    },
    /// Run a named verification suite
    Verify {
        /// examples | gold | bluher | systems | spectrum | duality
        suite: String,
        #[arg(short)]
        p: Option<u64>,
        #[arg(short)]
        m: Option<u32>,
        #[arg(short)]
        k: Option<u32>,
    },
    /// Solve both exponent congruences for (p, m, k)
    Solve {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        k: u32,
    },
}

enum CliError {
    Invalid(String),
    CapExceeded(String),
    SuiteFailed,
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::CapExceeded { .. } => CliError::CapExceeded(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<TheoremError> for CliError {
    fn from(e: TheoremError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = with_worker_threads(cli.workers, || run(&cli));
    eprintln!("elapsed: {:?}", start.elapsed());
    match outcome {
        Ok(()) => {}
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::CapExceeded(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
        Err(CliError::SuiteFailed) => std::process::exit(1),
    }
}

fn build(p: u64, m: u32, cap: Option<u64>) -> Result<FieldSpec, CliError> {
    Ok(build_field_with_cap(p, m, cap.unwrap_or(DEFAULT_ORDER_CAP))?)
}

/// Parses a c token: "-1", "g^e", or a bare element code.
fn parse_c(f: &FieldSpec, token: &str) -> Result<FieldElement, CliError> {
    if token == "-1" {
        return Ok(f.minus_one());
    }
    if let Some(exp) = token.strip_prefix("g^") {
        let e: u64 = exp
            .parse()
            .map_err(|_| CliError::Invalid(format!("bad generator power '{token}'")))?;
        return Ok(f.generator_pow(e));
    }
    let code: u64 = token
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad element token '{token}'")))?;
    Ok(f.element(code)?)
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn field_comment(h: &FieldHeader) -> String {
    format!(
        "# p={} m={} modulus={:?} generator={} version={}",
        h.p, h.m, h.modulus, h.generator, VERSION
    )
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Field { p, m } => {
            let f = build(*p, *m, cli.cap)?;
            cmd_field(&f, cli.format);
            Ok(())
        }
        Cmd::Uniformity { p, m, d, c } => {
            if *d == 0 {
                return Err(CliError::Invalid("exponent d must be positive".into()));
            }
            let f = build(*p, *m, cli.cap)?;
            let c = parse_c(&f, c)?;
            cmd_uniformity(&f, *d, c, cli.format);
            Ok(())
        }
        Cmd::Spectrum { p, m, d, c } => {
            if *d == 0 {
                return Err(CliError::Invalid("exponent d must be positive".into()));
            }
            let f = build(*p, *m, cli.cap)?;
            let c = parse_c(&f, c)?;
            cmd_spectrum(&f, *d, c, cli.format);
            Ok(())
        }
        Cmd::Scan { p, m, conjecture } => {
            if *conjecture && *p != 2 {
                return Err(CliError::Invalid(
                    "--conjecture only applies to p = 2".into(),
                ));
            }
            let f = build(*p, *m, cli.cap)?;
            cmd_scan(&f, *conjecture, cli.format)
        }
        Cmd::Verify { suite, p, m, k } => {
            let params = match (p, m, k) {
                (Some(p), Some(m), Some(k)) => Some((*p, *m, *k)),
                (None, None, None) => None,
                _ => {
                    return Err(CliError::Invalid(
                        "suites take either all of -p -m -k or none".into(),
                    ))
                }
            };
            cmd_verify(suite, params, cli.format)
        }
        Cmd::Solve { p, m, k } => {
            if *k == 0 {
                return Err(CliError::Invalid("k must be positive".into()));
            }
            let f = build(*p, *m, cli.cap)?;
            cmd_solve(&f, *k, cli.format)
        }
    }
}

// ---------------------------------------------------------------------------
// field
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct FieldOutput {
    version: &'static str,
    field: FieldHeader,
}

fn cmd_field(f: &FieldSpec, format: Format) {
    let out = FieldOutput {
        version: VERSION,
        field: f.header(),
    };
    match format {
        Format::Json => emit_json(&out),
        Format::Csv => {
            println!("p,m,order,modulus,generator");
            println!(
                "{},{},{},{},{}",
                f.p(),
                f.m(),
                f.order(),
                csv_quote(&format!("{:?}", f.modulus())),
                f.generator().code()
            );
        }
        Format::Table => {
            println!("field      GF({}^{}) = GF({})", f.p(), f.m(), f.order());
            println!("modulus    {}", f.modulus_string());
            println!("generator  code {}", f.generator().code());
        }
    }
}

// ---------------------------------------------------------------------------
// uniformity / spectrum
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct UniformityOutput {
    version: &'static str,
    field: FieldHeader,
    c_token: String,
    #[serde(flatten)]
    assessment: Assessment,
}

fn cmd_uniformity(f: &FieldSpec, d: u64, c: FieldElement, format: Format) {
    let assessment = assess(f, d, c);
    let out = UniformityOutput {
        version: VERSION,
        field: f.header(),
        c_token: c.code().to_string(),
        assessment,
    };
    match format {
        Format::Json => emit_json(&out),
        Format::Csv => {
            println!("{}", field_comment(&out.field));
            println!("p,m,d,c,uniformity,classification");
            println!(
                "{},{},{},{},{},{}",
                f.p(),
                f.m(),
                d,
                c.code(),
                out.assessment.uniformity,
                out.assessment.classification
            );
        }
        Format::Table => {
            let a = &out.assessment;
            println!(
                "field        GF({}^{}), modulus {}, generator code {}",
                f.p(),
                f.m(),
                f.modulus_string(),
                f.generator().code()
            );
            println!(
                "map          x^{d} (reduced {}, gcd(d, p^m-1) = {})",
                a.d_reduced, a.gcd_term
            );
            println!("c            code {}", c.code());
            println!("uniformity   {}  ({})", a.uniformity, a.classification);
            match a.witness_b {
                Some(b) => println!("witness b    code {b} (at a = 1)"),
                None => println!("witness b    none (maximum from the a = 0 term)"),
            }
            println!("spectrum     {:?}", a.spectrum.omega);
            if a.predictions.is_empty() {
                println!("predictions  none match");
            } else {
                println!("predictions");
                for j in &a.predictions {
                    let verdict = match &j.verdict {
                        cdu::oracle::Verdict::Confirmed => "confirmed".to_string(),
                        cdu::oracle::Verdict::Refuted {
                            measured_uniformity,
                            measured_spectrum,
                        } => match measured_spectrum {
                            Some(s) => format!(
                                "REFUTED: measured uniformity {measured_uniformity}, spectrum {s:?}"
                            ),
                            None => format!("REFUTED: measured uniformity {measured_uniformity}"),
                        },
                    };
                    println!(
                        "  [{verdict}] {} -> {} ({})",
                        j.prediction.theorem_id,
                        j.prediction
                            .claim
                            .map(|c| c.to_string())
                            .unwrap_or_default(),
                        j.prediction.reason
                    );
                }
            }
            for note in &a.annotations {
                println!("note         {note}");
            }
        }
    }
}

#[derive(Serialize)]
struct SpectrumOutput {
    version: &'static str,
    field: FieldHeader,
    d: u64,
    d_reduced: u64,
    c: u64,
    spectrum: Spectrum,
    identities_hold: bool,
}

fn cmd_spectrum(f: &FieldSpec, d: u64, c: FieldElement, format: Format) {
    let pm = PowerMap::new(f, d);
    let spectrum = cdu::c_spectrum(f, &pm, c);
    let out = SpectrumOutput {
        version: VERSION,
        field: f.header(),
        d,
        d_reduced: pm.d_reduced(),
        c: c.code(),
        identities_hold: spectrum.identities_hold(f.order()),
        spectrum,
    };
    match format {
        Format::Json => emit_json(&out),
        Format::Csv => {
            println!("{}", field_comment(&out.field));
            println!("i,omega");
            for (i, w) in out.spectrum.omega.iter().enumerate() {
                println!("{i},{w}");
            }
        }
        Format::Table => {
            println!(
                "field     GF({}^{}), modulus {}",
                f.p(),
                f.m(),
                f.modulus_string()
            );
            println!("map       x^{d} (reduced {}), c code {}", out.d_reduced, c.code());
            for (i, w) in out.spectrum.omega.iter().enumerate() {
                println!("omega_{i}  {w}");
            }
            println!("identities hold: {}", out.identities_hold);
        }
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ScanOutput {
    version: &'static str,
    #[serde(flatten)]
    scan: ScanReport,
    conjecture: Option<ConjectureReport>,
}

fn cmd_scan(f: &FieldSpec, conjecture: bool, format: Format) -> Result<(), CliError> {
    let scan = pcn_scan(f);
    let conj = if conjecture {
        Some(conjecture_check(f.m())?)
    } else {
        None
    };
    let out = ScanOutput {
        version: VERSION,
        scan,
        conjecture: conj,
    };
    match format {
        Format::Json => emit_json(&out),
        Format::Csv => {
            println!("{}", field_comment(&out.scan.field));
            println!("d,c");
            for e in &out.scan.entries {
                for c in &e.pcn_c {
                    println!("{},{}", e.d, c);
                }
            }
            if let Some(conj) = &out.conjecture {
                println!("# conjecture_holds={}", conj.holds);
                println!("# scan_only={:?}", conj.scan_only);
                println!("# predicted_only={:?}", conj.predicted_only);
                if let Some(note) = &conj.note {
                    println!("# note={note}");
                }
            }
        }
        Format::Table => {
            println!(
                "field  GF({}^{}), modulus {}, generator code {}",
                f.p(),
                f.m(),
                f.modulus_string(),
                f.generator().code()
            );
            println!(
                "work   {} (d, c) pairs tested, {} evaluations",
                out.scan.work.pairs_tested, out.scan.work.evaluations
            );
            for e in &out.scan.entries {
                println!("d = {:<6} PcN for c in {:?}", e.d, e.pcn_c);
            }
            if let Some(conj) = &out.conjecture {
                println!(
                    "conjecture (c outside {{0, 1}}): {}",
                    if conj.holds { "holds" } else { "FAILS" }
                );
                if !conj.scan_only.is_empty() {
                    println!("  scanned but not predicted: {:?}", conj.scan_only);
                }
                if !conj.predicted_only.is_empty() {
                    println!("  predicted but refuted: {:?}", conj.predicted_only);
                }
                println!(
                    "  c = 0 face matches permutation exponents: {}",
                    conj.c_zero_matches_permutations
                );
                if let Some(note) = &conj.note {
                    println!("  note: {note}");
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyOutput {
    version: &'static str,
    #[serde(flatten)]
    report: SuiteReport,
}

fn cmd_verify(
    suite: &str,
    params: Option<(u64, u32, u32)>,
    format: Format,
) -> Result<(), CliError> {
    let report = run_suite(suite, params).map_err(|e| match e {
        SuiteError::UnknownSuite(_) => CliError::Invalid(e.to_string()),
        SuiteError::Field(f) => CliError::from(f),
        SuiteError::Oracle(o) => CliError::Invalid(o.to_string()),
    })?;
    let passed = report.passed;
    let out = VerifyOutput {
        version: VERSION,
        report,
    };
    match format {
        Format::Json => emit_json(&out),
        // The data-bearing suites emit their per-b rows in CSV form; the
        // others emit one row per check.
        Format::Csv if suite == "bluher" => emit_bluher_csv(params)?,
        Format::Csv if suite == "systems" => emit_systems_csv(params)?,
        Format::Csv => {
            println!("suite,label,kind,ok,details");
            for c in &out.report.checks {
                println!(
                    "{},{},{:?},{},{}",
                    out.report.suite,
                    csv_quote(&c.label),
                    c.kind,
                    c.ok.map(|b| b.to_string()).unwrap_or_default(),
                    csv_quote(&c.details)
                );
            }
        }
        Format::Table => {
            println!("suite: {}", out.report.suite);
            for c in &out.report.checks {
                let tag = match (c.kind, c.ok) {
                    (CheckKind::Assertion, Some(true)) => "PASS",
                    (CheckKind::Assertion, _) => "FAIL",
                    (CheckKind::Annotation, _) => "note",
                };
                if c.details.is_empty() {
                    println!("[{tag}] {}", c.label);
                } else {
                    println!("[{tag}] {} — {}", c.label, c.details);
                }
            }
            println!(
                "result: {}",
                if out.report.passed { "PASS" } else { "FAIL" }
            );
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::SuiteFailed)
    }
}

/// Per-b root counts, one row per b, for each bluher case.
fn emit_bluher_csv(params: Option<(u64, u32, u32)>) -> Result<(), CliError> {
    let cases: Vec<(u64, u32, u32)> = match params {
        Some((p, m, k)) => vec![(p, k, m)],
        None => vec![(3, 1, 2), (3, 1, 4), (5, 1, 2), (3, 1, 3)],
    };
    for (p, k, m) in cases {
        let f = build(p, m, None)?;
        println!("{} k={k}", field_comment(&f.header()));
        println!("b,roots");
        let counts = cdu::oracle::bluher_root_counts(&f, k);
        for (i, r) in counts.iter().enumerate() {
            println!("{},{}", i as u64 + 1, r);
        }
        let rep = cdu::oracle::bluher_counts(&f, k);
        println!("# tallies={:?}", rep.counts_bruteforce);
    }
    Ok(())
}

/// Per-b pair counts of the four systems, one row per b.
fn emit_systems_csv(params: Option<(u64, u32, u32)>) -> Result<(), CliError> {
    let (p, m, k) = params.unwrap_or((3, 3, 1));
    let f = build(p, m, None)?;
    let rep = cdu::oracle::system_counts(&f, k)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    println!("{} k={k}", field_comment(&f.header()));
    println!("b,n1,n2,n3,n4");
    for row in &rep.rows {
        println!(
            "{},{},{},{},{}",
            row.b, row.counts[0], row.counts[1], row.counts[2], row.counts[3]
        );
    }
    println!("# hypothesis_met={}", rep.hypothesis_met);
    Ok(())
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SolveOutput {
    version: &'static str,
    field: FieldHeader,
    k: u32,
    families: Vec<CongruenceSolution>,
}

fn cmd_solve(f: &FieldSpec, k: u32, format: Format) -> Result<(), CliError> {
    let (p, m) = (f.p(), f.m());
    let families = vec![
        solve_congruence(p, m, k, CongruenceFamily::T1)?,
        solve_congruence(p, m, k, CongruenceFamily::T2)?,
    ];
    let out = SolveOutput {
        version: VERSION,
        field: f.header(),
        k,
        families,
    };
    match format {
        Format::Json => emit_json(&out),
        Format::Csv => {
            println!("family,d,ell");
            for fam in &out.families {
                for r in &fam.solutions {
                    println!(
                        "{},{},{}",
                        fam.family,
                        r.d,
                        r.ell.map(|l| l.to_string()).unwrap_or_default()
                    );
                }
            }
        }
        Format::Table => {
            for fam in &out.families {
                let label = match fam.family {
                    CongruenceFamily::T1 => "d (p^k+1) = 2 (mod p^m-1)",
                    CongruenceFamily::T2 => "d (p^k+1)/2 = (p^m+1)/2 (mod p^m-1)",
                };
                println!("{}: {label}", fam.family);
                if fam.solutions.is_empty() {
                    println!("  no solutions (gcd divisibility fails)");
                }
                for r in &fam.solutions {
                    match r.ell {
                        Some(l) => println!("  d = {} (ell = {l}, d {})", r.d, parity(r.d)),
                        None => println!("  d = {} (d {})", r.d, parity(r.d)),
                    }
                }
            }
        }
    }
    Ok(())
}

fn parity(d: u64) -> &'static str {
    if d % 2 == 0 {
        "even"
    } else {
        "odd"
    }
}
