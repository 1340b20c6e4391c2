//! `hertzsprung` — command-line surface for the pattern toolkit:
//! correlation polynomials, overlap sets, cluster generating functions,
//! occurrence distributions, pattern-rewriting systems, conjecture
//! checks and OEIS b-file comparison.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch (an oracle or
//! expectation failed), 2 on a usage error (bad flags, unparsable
//! input, ceilings exceeded).

mod bfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use hertzsprung::cluster::{
    check_antichain, cluster_gf, correlation_poly, overlap_set, ClusterError, PatternSet,
};
use hertzsprung::conjecture::{
    check_bona, mesh_p_series_check, palindrome_prefix_count, wilf_autocorrelation_classes,
    ConjectureError, DEFAULT_WILF_CEILING,
};
use hertzsprung::dist::{
    avoider_series, brute_force_distribution, end_pattern_series, joint_distribution_series,
    DistError,
};
use hertzsprung::perm::{PermError, Permutation};
use hertzsprung::rewrite::{
    builtin_statistic, builtin_system, check_local_confluence, check_termination,
    class_count_series, equivalence_classes_bruteforce, normal_form, olap_of_system,
    ConfluenceVerdict, RewriteError, RewriteSystem, Statistic, TerminationOutcome,
    TerminationReport, MAX_TERMINATION_SCAN,
};
use hertzsprung::Series;

/// Environment variable consulted for the order `N` when `-N` is absent.
const DEFAULT_N_ENV: &str = "HERTZSPRUNG_DEFAULT_N";

#[derive(Parser)]
#[command(
    name = "hertzsprung",
    version,
    about = "Consecutive-pattern toolkit: cluster-method enumeration, \
             pattern rewriting, conjecture checks, OEIS comparison"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Ceiling for brute-force oracles (`dist --check`).
    #[arg(long, global = true, value_name = "N", default_value_t = hertzsprung::DEFAULT_BRUTE_CEILING)]
    max_brute: usize,

    /// Ceiling for brute-force class enumeration (`rewrite classes --check`).
    #[arg(long, global = true, value_name = "N", default_value_t = hertzsprung::DEFAULT_CLASS_CEILING)]
    max_classes: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation polynomial Ω(σ, τ).
    Omega { sigma: String, tau: String },
    /// Overlap set olap(σ, τ), one permutation per line.
    Olap { sigma: String, tau: String },
    /// Cluster generating function C(u; x) of a pattern antichain.
    ClusterGf {
        #[command(flatten)]
        patterns: PatternArgs,
    },
    /// Joint distribution of pattern-occurrence counts, by length.
    Dist {
        #[command(flatten)]
        patterns: PatternArgs,
        #[command(flatten)]
        order: OrderArg,
        /// Re-derive the coefficients for n ≤ M by scanning S_n and fail
        /// on any disagreement.
        #[arg(long, value_name = "M")]
        check: Option<usize>,
    },
    /// Count permutations avoiding every given pattern, n = 0..N.
    Avoid {
        #[command(flatten)]
        patterns: PatternArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Count permutations whose sole occurrence is α as a suffix.
    EndIn {
        #[command(flatten)]
        patterns: PatternArgs,
        /// The suffix pattern; must belong to the set.
        #[arg(long, value_name = "PERM")]
        alpha: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Pattern-rewriting systems: normal forms, confluence, class counts.
    Rewrite {
        #[command(subcommand)]
        command: RewriteCommand,
    },
    /// Equivalence-class counts of the built-in systems EQ2–EQ7.
    Table2 {
        #[command(flatten)]
        order: OrderArg,
    },
    /// Conjecture lab.
    Conj {
        #[command(subcommand)]
        command: ConjCommand,
    },
    /// Compare a computed series against an OEIS b-file.
    OeisCompare {
        /// Path to the b-file (lines "n a(n)", "#" comments).
        #[arg(long, value_name = "FILE")]
        bfile: PathBuf,
        /// Compare the avoider series of these patterns.
        #[arg(short = 'p', long = "pattern", value_name = "PERM")]
        patterns: Vec<String>,
        /// Compare the class-count series of a built-in system instead.
        #[arg(long, value_name = "EQk")]
        eq: Option<String>,
        #[command(flatten)]
        order: OrderArg,
    },
}

#[derive(Subcommand)]
enum RewriteCommand {
    /// Normal form of one permutation.
    Nf {
        #[command(flatten)]
        source: RuleSource,
        /// The permutation to rewrite.
        perm: String,
        /// Also certify confluence, so the result is a canonical
        /// class representative; fail otherwise.
        #[arg(long)]
        canonical: bool,
    },
    /// Verify termination (bounded scan) and decide local confluence.
    Check {
        #[command(flatten)]
        source: RuleSource,
        /// Termination scan depth (raised automatically to cover
        /// olap(R)).
        #[arg(short = 'N', long = "scan", value_name = "N")]
        scan: Option<usize>,
        /// Exit with status 1 unless the system is confluent.
        #[arg(long)]
        expect_confluent: bool,
    },
    /// Number of rewrite-equivalence classes per length, n = 0..N.
    Classes {
        #[command(flatten)]
        source: RuleSource,
        #[command(flatten)]
        order: OrderArg,
        /// Re-derive counts for n ≤ M by union-find over S_n and fail
        /// on any disagreement.
        #[arg(long, value_name = "M")]
        check: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ConjCommand {
    /// Count distinct self-correlation polynomials over S_k.
    Wilf {
        /// Largest k to scan.
        #[arg(short = 'k', long = "kmax", value_name = "K", default_value_t = 8)]
        kmax: usize,
        /// Also print each distinct polynomial.
        #[arg(long)]
        sets: bool,
    },
    /// Count distinct prefix-palindrome sets of binary palindromes.
    Palindrome {
        /// Largest word length to scan.
        #[arg(short = 'k', long = "kmax", value_name = "K", default_value_t = 12)]
        kmax: usize,
    },
    /// Check |S_n(τ)| ≤ |S_n(id_k)| for every τ of length k.
    Bona {
        /// Pattern length.
        #[arg(short = 'k', long, value_name = "K", default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Compare the shaded-box mesh-pattern scan with its closed form.
    MeshP {
        #[command(flatten)]
        order: OrderArg,
    },
}

/// A repeatable `-p` pattern list.
#[derive(Args)]
struct PatternArgs {
    /// A pattern (repeatable), e.g. `-p 132 -p 213`.
    #[arg(short = 'p', long = "pattern", value_name = "PERM", required = true)]
    patterns: Vec<String>,
}

/// The order `N`; falls back to `HERTZSPRUNG_DEFAULT_N`, then to a
/// per-command default.
#[derive(Args)]
struct OrderArg {
    /// Largest length / series order N.
    #[arg(short = 'N', long = "order", value_name = "N")]
    n: Option<usize>,
}

/// Where a rewriting system comes from: a rule file or a built-in name.
#[derive(Args)]
struct RuleSource {
    /// Rule file: one "LHS -> RHS" per line, "#" comments.
    #[arg(long, value_name = "FILE")]
    rules: Option<PathBuf>,
    /// Built-in system EQ1..EQ7.
    #[arg(long, value_name = "EQk")]
    eq: Option<String>,
}

/// A failed invocation, carrying the exit status.
#[derive(Debug)]
enum Failure {
    /// Exit 1: a verification (oracle, expectation, b-file) mismatch.
    Mismatch(String),
    /// Exit 2: unusable input — parse errors, conflicting flags,
    /// ceilings exceeded.
    Usage(String),
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ClusterError> for Failure {
    fn from(e: ClusterError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<DistError> for Failure {
    fn from(e: DistError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ConjectureError> for Failure {
    fn from(e: ConjectureError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        match e {
            // A system that fails its certification is a verification
            // problem, not a malformed invocation.
            RewriteError::NotCertifiedConfluent { .. }
            | RewriteError::TerminationNotVerified { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`hertzsprung table2 | head`) instead
    // of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Omega { sigma, tau } => cmd_omega(json, &sigma, &tau),
        Command::Olap { sigma, tau } => cmd_olap(json, &sigma, &tau),
        Command::ClusterGf { patterns } => cmd_cluster_gf(json, &patterns),
        Command::Dist {
            patterns,
            order,
            check,
        } => cmd_dist(json, &patterns, &order, check, cli.max_brute),
        Command::Avoid { patterns, order } => cmd_avoid(json, &patterns, &order),
        Command::EndIn {
            patterns,
            alpha,
            order,
        } => cmd_end_in(json, &patterns, &alpha, &order),
        Command::Rewrite { command } => match command {
            RewriteCommand::Nf {
                source,
                perm,
                canonical,
            } => cmd_rewrite_nf(json, &source, &perm, canonical),
            RewriteCommand::Check {
                source,
                scan,
                expect_confluent,
            } => cmd_rewrite_check(json, &source, scan, expect_confluent),
            RewriteCommand::Classes {
                source,
                order,
                check,
            } => cmd_rewrite_classes(json, &source, &order, check, cli.max_classes),
        },
        Command::Table2 { order } => cmd_table2(json, &order),
        Command::Conj { command } => match command {
            ConjCommand::Wilf { kmax, sets } => cmd_conj_wilf(json, kmax, sets),
            ConjCommand::Palindrome { kmax } => cmd_conj_palindrome(json, kmax),
            ConjCommand::Bona { k, order } => cmd_conj_bona(json, k, &order),
            ConjCommand::MeshP { order } => cmd_conj_mesh_p(json, &order),
        },
        Command::OeisCompare {
            bfile,
            patterns,
            eq,
            order,
        } => cmd_oeis_compare(json, &bfile, &patterns, eq.as_deref(), &order),
    }
}

// ---------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse::<Permutation>()
        .map_err(|e| Failure::Usage(format!("permutation '{s}': {e}")))
}

fn parse_pattern_set(args: &PatternArgs) -> Result<PatternSet, Failure> {
    let mut perms = Vec::with_capacity(args.patterns.len());
    for s in &args.patterns {
        perms.push(parse_perm(s)?);
    }
    Ok(check_antichain(perms)?)
}

/// Resolves an order: explicit flag, then `HERTZSPRUNG_DEFAULT_N`, then
/// the per-command fallback.
fn resolve_order(arg: &OrderArg, fallback: usize) -> Result<usize, Failure> {
    pick_order(arg.n, std::env::var(DEFAULT_N_ENV).ok(), fallback)
}

fn pick_order(
    flag: Option<usize>,
    env: Option<String>,
    fallback: usize,
) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match env {
        Some(s) => s.trim().parse().map_err(|_| {
            Failure::Usage(format!("{DEFAULT_N_ENV}='{s}' is not a valid order"))
        }),
        None => Ok(fallback),
    }
}

/// Extracts the integer coefficients of a marker-free counting series.
fn series_integers(series: &Series) -> Vec<BigInt> {
    series
        .coeffs()
        .iter()
        .map(|c| {
            let r = c
                .as_constant()
                .expect("counting series has constant coefficients");
            debug_assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

/// JSON value for an integer: a number when it fits i64, else a string.
fn int_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => Value::from(i),
        Err(_) => Value::from(v.to_string()),
    }
}

fn int_series_value(order: usize, ints: &[BigInt]) -> Value {
    json!({
        "variable": "x",
        "order": order,
        "coefficients": ints.iter().map(int_value).collect::<Vec<_>>(),
    })
}

fn print_ints(ints: &[BigInt]) {
    let parts: Vec<String> = ints.iter().map(ToString::to_string).collect();
    println!("{}", parts.join(" "));
}

// ---------------------------------------------------------------------
// Algebra commands
// ---------------------------------------------------------------------

fn cmd_omega(json: bool, sigma: &str, tau: &str) -> Result<(), Failure> {
    let s = parse_perm(sigma)?;
    let t = parse_perm(tau)?;
    let omega = correlation_poly(&s, &t);
    if json {
        println!(
            "{}",
            json!({
                "sigma": s.to_string(),
                "tau": t.to_string(),
                "omega": omega.to_string(),
            })
        );
    } else {
        println!("{omega}");
    }
    Ok(())
}

fn cmd_olap(json: bool, sigma: &str, tau: &str) -> Result<(), Failure> {
    let s = parse_perm(sigma)?;
    let t = parse_perm(tau)?;
    let olap = overlap_set(&s, &t);
    if json {
        println!(
            "{}",
            json!({
                "sigma": s.to_string(),
                "tau": t.to_string(),
                "overlap": olap.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        );
    } else {
        for p in &olap {
            println!("{p}");
        }
    }
    Ok(())
}

fn cmd_cluster_gf(json: bool, patterns: &PatternArgs) -> Result<(), Failure> {
    let set = parse_pattern_set(patterns)?;
    let gf = cluster_gf(&set)?;
    if json {
        println!(
            "{}",
            json!({
                "patterns": set.patterns().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "numerator": gf.num().to_string(),
                "denominator": gf.den().to_string(),
            })
        );
    } else {
        println!("numerator: {}", gf.num());
        println!("denominator: {}", gf.den());
    }
    Ok(())
}

fn cmd_dist(
    json: bool,
    patterns: &PatternArgs,
    order: &OrderArg,
    check: Option<usize>,
    max_brute: usize,
) -> Result<(), Failure> {
    let set = parse_pattern_set(patterns)?;
    let order = resolve_order(order, 10)?;
    let series = joint_distribution_series(&set, order)?;
    if let Some(m) = check {
        if m > max_brute {
            return Err(Failure::Usage(format!(
                "--check {m} exceeds --max-brute {max_brute}"
            )));
        }
        let upto = m.min(order);
        for n in 0..=upto {
            let brute = brute_force_distribution(&set, n)?;
            if &brute != series.coeff(n) {
                return Err(Failure::Mismatch(format!(
                    "joint distribution disagrees with the S_{n} scan: \
                     series gives {}, scan gives {brute}",
                    series.coeff(n)
                )));
            }
        }
        eprintln!("check: brute force agrees for n <= {upto}");
    }
    if json {
        println!(
            "{}",
            json!({
                "variable": "x",
                "order": order,
                "coefficients": series.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        );
    } else {
        for n in 0..=order {
            println!("[x^{n}] {}", series.coeff(n));
        }
    }
    Ok(())
}

fn cmd_avoid(json: bool, patterns: &PatternArgs, order: &OrderArg) -> Result<(), Failure> {
    let set = parse_pattern_set(patterns)?;
    let order = resolve_order(order, 10)?;
    let ints = series_integers(&avoider_series(&set, order)?);
    if json {
        println!("{}", int_series_value(order, &ints));
    } else {
        print_ints(&ints);
    }
    Ok(())
}

fn cmd_end_in(
    json: bool,
    patterns: &PatternArgs,
    alpha: &str,
    order: &OrderArg,
) -> Result<(), Failure> {
    let set = parse_pattern_set(patterns)?;
    let alpha = parse_perm(alpha)?;
    let order = resolve_order(order, 10)?;
    let ints = series_integers(&end_pattern_series(&set, &alpha, order)?);
    if json {
        println!("{}", int_series_value(order, &ints));
    } else {
        print_ints(&ints);
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Rewriting commands
// ---------------------------------------------------------------------

/// A rewriting system plus the statistic used for its termination scan
/// (built-ins carry one; rule files fall back to the acyclicity scan).
struct LoadedSystem {
    system: RewriteSystem,
    statistic: Option<Statistic>,
    label: String,
}

fn load_system(source: &RuleSource) -> Result<LoadedSystem, Failure> {
    match (&source.rules, &source.eq) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--rules and --eq are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "one of --rules FILE or --eq EQk is required".into(),
        )),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let system = RewriteSystem::parse(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(LoadedSystem {
                system,
                statistic: None,
                label: path.display().to_string(),
            })
        }
        (None, Some(name)) => Ok(LoadedSystem {
            system: builtin_system(name)?,
            statistic: Some(builtin_statistic(name)?),
            label: name.clone(),
        }),
    }
}

/// Scan depth needed before Newman's lemma applies: every olap(R) peak
/// and every rule must live inside the verified lengths.
fn required_depth(system: &RewriteSystem) -> usize {
    olap_of_system(system)
        .iter()
        .map(Permutation::len)
        .max()
        .unwrap_or(0)
        .max(system.max_rule_len())
}

fn depth_within_ceiling(depth: usize) -> Result<usize, Failure> {
    if depth > MAX_TERMINATION_SCAN {
        return Err(Failure::Usage(format!(
            "termination scan to n = {depth} exceeds the ceiling {MAX_TERMINATION_SCAN}"
        )));
    }
    Ok(depth)
}

fn termination_failure(report: &TerminationReport) -> Option<String> {
    match &report.outcome {
        TerminationOutcome::Verified => None,
        TerminationOutcome::CycleFound { cycle } => {
            let path: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            Some(format!("rewrite cycle {}", path.join(" -> ")))
        }
        TerminationOutcome::NonIncreasingEdge {
            from,
            to,
            from_value,
            to_value,
        } => Some(format!(
            "statistic does not increase on {from} -> {to} ({from_value} -> {to_value})"
        )),
    }
}

/// Runs the full certification pipeline: termination scan to `depth`,
/// then local confluence over olap(R).
fn certify(
    loaded: &LoadedSystem,
    depth: usize,
) -> Result<(TerminationReport, hertzsprung::rewrite::ConfluenceReport), Failure> {
    let termination = check_termination(&loaded.system, depth, loaded.statistic.as_ref())?;
    if let Some(msg) = termination_failure(&termination) {
        return Err(Failure::Mismatch(format!("{}: {msg}", loaded.label)));
    }
    let confluence = check_local_confluence(&loaded.system, Some(&termination))?;
    Ok((termination, confluence))
}

fn cmd_rewrite_nf(
    json: bool,
    source: &RuleSource,
    perm: &str,
    canonical: bool,
) -> Result<(), Failure> {
    let loaded = load_system(source)?;
    let pi = parse_perm(perm)?;
    let (termination, confluence) = if canonical {
        let depth = depth_within_ceiling(required_depth(&loaded.system).max(pi.len()))?;
        let (t, c) = certify(&loaded, depth)?;
        (t, Some(c))
    } else {
        let depth = depth_within_ceiling(pi.len())?;
        let t = check_termination(&loaded.system, depth, loaded.statistic.as_ref())?;
        if let Some(msg) = termination_failure(&t) {
            return Err(Failure::Mismatch(format!("{}: {msg}", loaded.label)));
        }
        (t, None)
    };
    let (nf, certified) = normal_form(&pi, &loaded.system, &termination, confluence.as_ref())?;
    if json {
        println!(
            "{}",
            json!({
                "input": pi.to_string(),
                "normal_form": nf.to_string(),
                "canonical": certified,
            })
        );
    } else {
        println!("{nf}");
    }
    if canonical && !certified {
        let verdict = confluence.expect("canonical path ran the confluence check").verdict;
        return Err(Failure::Mismatch(format!(
            "normal form is not canonical: {} is {verdict}",
            loaded.label
        )));
    }
    Ok(())
}

fn cmd_rewrite_check(
    json: bool,
    source: &RuleSource,
    scan: Option<usize>,
    expect_confluent: bool,
) -> Result<(), Failure> {
    let loaded = load_system(source)?;
    let olap = olap_of_system(&loaded.system);
    let needed = required_depth(&loaded.system);
    let depth = depth_within_ceiling(scan.unwrap_or(8).max(needed))?;
    let termination = check_termination(&loaded.system, depth, loaded.statistic.as_ref())?;
    if let Some(msg) = termination_failure(&termination) {
        if json {
            println!(
                "{}",
                json!({
                    "system": loaded.label,
                    "verdict": "not-terminating",
                    "verified_up_to": termination.verified_up_to,
                    "detail": msg,
                })
            );
        } else {
            println!("not-terminating (scan to n = {depth}): {msg}");
        }
        return Err(Failure::Mismatch(format!("{}: {msg}", loaded.label)));
    }
    let confluence = check_local_confluence(&loaded.system, Some(&termination))?;
    let verdict = confluence.verdict;
    if json {
        let witness = confluence.counterexample.as_ref().map(|(peak, a, b)| {
            json!({
                "peak": peak.to_string(),
                "left": a.to_string(),
                "right": b.to_string(),
            })
        });
        println!(
            "{}",
            json!({
                "system": loaded.label,
                "verdict": verdict.to_string(),
                "terminating_up_to": depth,
                "method": termination.method.to_string(),
                "olap": olap.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "witness": witness,
            })
        );
    } else {
        println!("{verdict}, terminating-up-to-{depth}");
        if let Some((peak, a, b)) = &confluence.counterexample {
            println!("witness: peak {peak} rewrites to {a} and {b}, which are not joinable");
        }
    }
    if expect_confluent && verdict != ConfluenceVerdict::Confluent {
        return Err(Failure::Mismatch(format!(
            "expected a confluent system, found {verdict}"
        )));
    }
    Ok(())
}

fn cmd_rewrite_classes(
    json: bool,
    source: &RuleSource,
    order: &OrderArg,
    check: Option<usize>,
    max_classes: usize,
) -> Result<(), Failure> {
    let loaded = load_system(source)?;
    let order = resolve_order(order, 12)?;
    let depth = depth_within_ceiling(required_depth(&loaded.system))?;
    let (_, confluence) = certify(&loaded, depth)?;
    let series = class_count_series(&loaded.system, order, &confluence)?;
    let ints = series_integers(&series);
    if let Some(m) = check {
        if m > max_classes {
            return Err(Failure::Usage(format!(
                "--check {m} exceeds --max-classes {max_classes}"
            )));
        }
        let upto = m.min(order);
        for n in 0..=upto {
            let classes = equivalence_classes_bruteforce(&loaded.system, n)?;
            if BigInt::from(classes.count) != ints[n] {
                return Err(Failure::Mismatch(format!(
                    "class count disagrees at n = {n}: union-find gives {}, series gives {}",
                    classes.count, ints[n]
                )));
            }
        }
        eprintln!("check: union-find class counts agree for n <= {upto}");
    }
    if json {
        println!("{}", int_series_value(order, &ints));
    } else {
        print_ints(&ints);
    }
    Ok(())
}

/// Class-count series of a built-in system through the certification
/// pipeline, as integers for n = 0..order.
fn builtin_class_series(name: &str, order: usize) -> Result<Vec<BigInt>, Failure> {
    let loaded = LoadedSystem {
        system: builtin_system(name)?,
        statistic: Some(builtin_statistic(name)?),
        label: name.to_string(),
    };
    let depth = depth_within_ceiling(required_depth(&loaded.system))?;
    let (_, confluence) = certify(&loaded, depth)?;
    let series = class_count_series(&loaded.system, order, &confluence)?;
    Ok(series_integers(&series))
}

fn cmd_table2(json: bool, order: &OrderArg) -> Result<(), Failure> {
    let order = resolve_order(order, 20)?;
    if order < 1 {
        return Err(Failure::Usage("table2 needs N >= 1".into()));
    }
    let mut columns: Vec<(String, Vec<BigInt>)> = Vec::new();
    let mut eq2: Option<Vec<BigInt>> = None;
    for name in ["EQ2", "EQ3", "EQ4", "EQ5", "EQ6", "EQ7"] {
        let ints = builtin_class_series(name, order)?;
        match name {
            "EQ2" => eq2 = Some(ints),
            "EQ3" => {
                let eq2 = eq2.take().expect("EQ2 precedes EQ3");
                if eq2 != ints {
                    let n = (0..).find(|&i| eq2[i] != ints[i]).unwrap();
                    return Err(Failure::Mismatch(format!(
                        "EQ2 and EQ3 class counts diverge at n = {n}: {} vs {}",
                        eq2[n], ints[n]
                    )));
                }
                columns.push(("EQ2&EQ3".into(), ints));
            }
            _ => columns.push((name.into(), ints)),
        }
    }
    if json {
        let mut obj = serde_json::Map::new();
        for (name, ints) in &columns {
            obj.insert(
                name.clone(),
                Value::from(ints[1..].iter().map(int_value).collect::<Vec<_>>()),
            );
        }
        println!("{}", json!({"order": order, "columns": Value::Object(obj)}));
    } else {
        let n_width = order.to_string().len();
        let widths: Vec<usize> = columns
            .iter()
            .map(|(name, ints)| {
                ints[1..]
                    .iter()
                    .map(|v| v.to_string().len())
                    .chain([name.len()])
                    .max()
                    .unwrap()
            })
            .collect();
        let mut header = format!("{:>n_width$}", "n");
        for ((name, _), w) in columns.iter().zip(&widths) {
            header.push_str(&format!("  {name:>w$}"));
        }
        println!("{header}");
        for n in 1..=order {
            let mut row = format!("{n:>n_width$}");
            for ((_, ints), w) in columns.iter().zip(&widths) {
                row.push_str(&format!("  {:>w$}", ints[n].to_string()));
            }
            println!("{row}");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Conjecture commands
// ---------------------------------------------------------------------

fn cmd_conj_wilf(json: bool, kmax: usize, sets: bool) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for k in 1..=kmax {
        rows.push(wilf_autocorrelation_classes(k, DEFAULT_WILF_CEILING)?);
    }
    if json {
        let items: Vec<Value> = rows
            .iter()
            .map(|wc| {
                let mut item = json!({"k": wc.k, "count": wc.count()});
                if sets {
                    item["polynomials"] = Value::from(
                        wc.polynomials
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>(),
                    );
                }
                item
            })
            .collect();
        println!("{}", json!({"classes": items}));
    } else {
        for wc in &rows {
            println!(
                "k = {}: {} distinct self-correlation polynomials",
                wc.k,
                wc.count()
            );
            if sets {
                for p in &wc.polynomials {
                    println!("  {p}");
                }
            }
        }
    }
    Ok(())
}

fn cmd_conj_palindrome(json: bool, kmax: usize) -> Result<(), Failure> {
    let mut counts = Vec::new();
    for k in 1..=kmax {
        counts.push(palindrome_prefix_count(k)?);
    }
    if json {
        let items: Vec<Value> = counts
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"k": i + 1, "count": c}))
            .collect();
        println!("{}", json!({"palindromes": items}));
    } else {
        for (i, c) in counts.iter().enumerate() {
            println!("k = {}: {} distinct prefix-palindrome sets", i + 1, c);
        }
    }
    Ok(())
}

fn cmd_conj_bona(json: bool, k: usize, order: &OrderArg) -> Result<(), Failure> {
    let nmax = resolve_order(order, 12)?;
    let report = check_bona(k, nmax)?;
    if json {
        let violations: Vec<Value> = report
            .rows
            .iter()
            .filter_map(|row| {
                row.first_violation.as_ref().map(|v| {
                    json!({
                        "tau": row.tau.to_string(),
                        "n": v.n,
                        "tau_count": int_value(&v.tau_count),
                        "identity_count": int_value(&v.identity_count),
                    })
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "k": report.k,
                "nmax": report.nmax,
                "patterns": report.rows.len(),
                "violations": violations,
                "holds": report.violations == 0,
            })
        );
    } else {
        for row in &report.rows {
            if let Some(v) = &row.first_violation {
                println!(
                    "violation: |S_{}({})| = {} > {} = |S_{}(identity)|",
                    v.n, row.tau, v.tau_count, v.identity_count, v.n
                );
            }
        }
        println!(
            "identity maximality for k = {}, n <= {}: {} patterns, {} violations",
            report.k,
            report.nmax,
            report.rows.len(),
            report.violations
        );
    }
    if report.violations > 0 {
        return Err(Failure::Mismatch(format!(
            "{} pattern(s) of length {} beat the identity",
            report.violations, report.k
        )));
    }
    Ok(())
}

fn cmd_conj_mesh_p(json: bool, order: &OrderArg) -> Result<(), Failure> {
    let nmax = resolve_order(order, 8)?;
    let report = mesh_p_series_check(nmax)?;
    if json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "scan": r.scan_count,
                    "series": int_value(&r.series_count),
                    "equal": r.equal,
                })
            })
            .collect();
        println!("{}", json!({"rows": rows, "agrees": report.agrees}));
    } else {
        for r in &report.rows {
            let marker = if r.equal { "" } else { "  MISMATCH" };
            println!("n = {}: scan {}, series {}{marker}", r.n, r.scan_count, r.series_count);
        }
    }
    if !report.agrees {
        return Err(Failure::Mismatch(
            "mesh-pattern scan disagrees with the closed form".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// OEIS comparison
// ---------------------------------------------------------------------

fn cmd_oeis_compare(
    json: bool,
    path: &std::path::Path,
    patterns: &[String],
    eq: Option<&str>,
    order: &OrderArg,
) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let bf = bfile::BFile::parse(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if bf.is_empty() {
        return Err(Failure::Usage(format!(
            "{}: no data lines",
            path.display()
        )));
    }
    let (label, ints) = match (patterns.is_empty(), eq) {
        (false, Some(_)) => {
            return Err(Failure::Usage(
                "-p and --eq are mutually exclusive".into(),
            ))
        }
        (true, None) => {
            return Err(Failure::Usage(
                "one of -p PERM or --eq EQk is required".into(),
            ))
        }
        (false, None) => {
            let args = PatternArgs {
                patterns: patterns.to_vec(),
            };
            let set = parse_pattern_set(&args)?;
            let fallback = bf.max_index().unwrap().clamp(0, 20) as usize;
            let order = resolve_order(order, fallback)?;
            let label = format!(
                "avoiders of {{{}}}",
                set.patterns()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            (label, series_integers(&avoider_series(&set, order)?))
        }
        (true, Some(name)) => {
            let fallback = bf.max_index().unwrap().clamp(0, 20) as usize;
            let order = resolve_order(order, fallback)?;
            (
                format!("{name} class counts"),
                builtin_class_series(name, order)?,
            )
        }
    };
    let order = ints.len() - 1;
    let mut checked = 0usize;
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    let mut mismatches: Vec<(usize, BigInt, BigInt)> = Vec::new();
    for (idx, val) in bf.entries() {
        if *idx < 0 || *idx as usize > order {
            continue;
        }
        let n = *idx as usize;
        checked += 1;
        lo = lo.min(*idx);
        hi = hi.max(*idx);
        if &ints[n] != val {
            mismatches.push((n, ints[n].clone(), val.clone()));
        }
    }
    if checked == 0 {
        return Err(Failure::Usage(format!(
            "no overlap: the computed series covers n = 0..{order}, the b-file covers n = {}..{}",
            bf.min_index().unwrap(),
            bf.max_index().unwrap()
        )));
    }
    if json {
        let mm: Vec<Value> = mismatches
            .iter()
            .map(|(n, computed, filed)| {
                json!({"n": n, "computed": int_value(computed), "bfile": int_value(filed)})
            })
            .collect();
        println!(
            "{}",
            json!({
                "source": label,
                "bfile": path.display().to_string(),
                "overlap": [lo, hi],
                "terms": checked,
                "mismatches": mm,
                "verdict": if mismatches.is_empty() { "match" } else { "mismatch" },
            })
        );
    } else {
        for (n, computed, filed) in &mismatches {
            println!("mismatch at n = {n}: computed {computed}, b-file {filed}");
        }
        if mismatches.is_empty() {
            println!("match: {checked} terms agree (n = {lo}..{hi})");
        } else {
            println!(
                "{} mismatch(es) in {checked} terms (n = {lo}..{hi})",
                mismatches.len()
            );
        }
    }
    if !mismatches.is_empty() {
        return Err(Failure::Mismatch(format!(
            "{} disagrees with {}",
            label,
            path.display()
        )));
    }
    Ok(())
}
