//! Pattern-rewriting systems over permutations.
//!
//! A rule `α → β` (with `|α| = |β|`) rewrites π by replacing an
//! occurrence of α — a factor that is both order- and value-isomorphic
//! to α — with β shifted to the same value range.  Because the factor's
//! value set is an integer interval, the result is again a permutation,
//! and rewriting preserves length, so every question about the rewrite
//! graph restricts to one S_n at a time.
//!
//! The classical machinery applies: a terminating and locally confluent
//! relation is confluent (Newman), local confluence only needs checking
//! at the finitely many permutations where two left-hand sides overlap
//! (`olap(R)`), and termination follows from any strictly increasing
//! statistic.  For a terminating confluent system, each equivalence
//! class of the symmetric closure contains exactly one normal form, and
//! the normal forms are precisely the `dom(R)`-avoiders — so class
//! counting reduces to the avoider series of `dom(R)`.
//!
//! Termination checks here are always *certificates up to a bound*,
//! never universal proofs: they scan S_n for n up to a requested limit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cluster::{check_antichain, overlap_set, ClusterError};
use crate::dist::{avoider_series, DistError};
use crate::perm::{
    count_occurrences, enumerate_permutations, find_occurrences, PermError, Permutation,
};
use crate::Series;

/// Hard ceiling for termination scans (n! work per level).
pub const MAX_TERMINATION_SCAN: usize = 11;

/// Errors from rewrite-system construction and analysis.
#[derive(Debug, Error, PartialEq)]
pub enum RewriteError {
    #[error("rule sides have different lengths: {lhs} -> {rhs}")]
    LengthMismatch { lhs: Permutation, rhs: Permutation },
    #[error("rule rewrites {0} to itself")]
    IdenticalSides(Permutation),
    #[error("duplicate rule {lhs} -> {rhs}")]
    DuplicateRule { lhs: Permutation, rhs: Permutation },
    #[error("line {line}: {reason}")]
    RuleParse { line: usize, reason: String },
    #[error("unknown builtin system {0:?} (expected EQ1..EQ7)")]
    UnknownSystem(String),
    #[error("scan limit {n} exceeds ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    #[error(
        "termination not verified up to length {required} \
         (certificate covers up to {verified_up_to})"
    )]
    TerminationNotVerified {
        required: usize,
        verified_up_to: usize,
    },
    #[error("system is not certified confluent (verdict: {verdict})")]
    NotCertifiedConfluent { verdict: ConfluenceVerdict },
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A single rewrite rule `lhs → rhs`, both sides the same length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Permutation,
    rhs: Permutation,
}

impl RewriteRule {
    pub fn new(lhs: Permutation, rhs: Permutation) -> Result<Self, RewriteError> {
        if lhs.len() != rhs.len() {
            return Err(RewriteError::LengthMismatch { lhs, rhs });
        }
        if lhs == rhs {
            return Err(RewriteError::IdenticalSides(lhs));
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Permutation {
        &self.lhs
    }

    pub fn rhs(&self) -> &Permutation {
        &self.rhs
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// An ordered list of distinct rewrite rules.  The order matters for the
/// deterministic normal-form strategy (first applicable rule wins).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<RewriteRule>) -> Result<Self, RewriteError> {
        for (i, r) in rules.iter().enumerate() {
            if rules[..i].contains(r) {
                return Err(RewriteError::DuplicateRule {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.clone(),
                });
            }
        }
        Ok(RewriteSystem { rules })
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Left-hand sides in first-appearance order, deduplicated.
    pub fn dom(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for r in &self.rules {
            if !out.contains(&r.lhs) {
                out.push(r.lhs.clone());
            }
        }
        out
    }

    pub fn max_rule_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    /// Parses a rule file: one `LHS -> RHS` per line, `#` starts a
    /// comment, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self, RewriteError> {
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut parts = content.split("->");
            let (lhs_text, rhs_text) = match (parts.next(), parts.next(), parts.next()) {
                (Some(l), Some(r), None) => (l.trim(), r.trim()),
                _ => {
                    return Err(RewriteError::RuleParse {
                        line,
                        reason: format!("expected exactly one \"->\" in {content:?}"),
                    })
                }
            };
            let parse_side = |side: &str| -> Result<Permutation, RewriteError> {
                side.parse().map_err(|e: PermError| RewriteError::RuleParse {
                    line,
                    reason: e.to_string(),
                })
            };
            let rule = RewriteRule::new(parse_side(lhs_text)?, parse_side(rhs_text)?)
                .map_err(|e| RewriteError::RuleParse {
                    line,
                    reason: e.to_string(),
                })?;
            rules.push(rule);
        }
        RewriteSystem::new(rules)
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// The seven builtin system names.
pub const BUILTIN_NAMES: [&str; 7] = ["EQ1", "EQ2", "EQ3", "EQ4", "EQ5", "EQ6", "EQ7"];

/// The builtin pattern-rewriting systems EQ1–EQ7.
pub fn builtin_system(name: &str) -> Result<RewriteSystem, RewriteError> {
    let rules: &[(&str, &str)] = match name.to_ascii_uppercase().as_str() {
        "EQ1" => &[("21", "12"), ("231", "312")],
        "EQ2" => &[("132", "123")],
        "EQ3" => &[("321", "123"), ("2341", "4123")],
        "EQ4" => &[("132", "123"), ("213", "123")],
        "EQ5" => &[("132", "123"), ("321", "123"), ("2341", "4123")],
        "EQ6" => &[
            ("132", "123"),
            ("213", "123"),
            ("321", "123"),
            ("2341", "4123"),
        ],
        "EQ7" => &[
            ("132", "123"),
            ("213", "123"),
            ("231", "123"),
            ("312", "123"),
            ("321", "123"),
            ("2341", "4123"),
            ("34512", "45123"),
            ("54123", "45123"),
            ("6745123", "7456123"),
        ],
        other => return Err(RewriteError::UnknownSystem(other.to_string())),
    };
    let rules = rules
        .iter()
        .map(|(l, r)| RewriteRule::new(l.parse().unwrap(), r.parse().unwrap()).unwrap())
        .collect();
    RewriteSystem::new(rules)
}

/// The increasing statistic used to certify each builtin's termination:
/// position sums Σ_12 for EQ1 and EQ7, the occurrence count of 123 for
/// EQ2, and Σ_123 for EQ3–EQ6.
pub fn builtin_statistic(name: &str) -> Result<Statistic, RewriteError> {
    let stat = match name.to_ascii_uppercase().as_str() {
        "EQ1" | "EQ7" => Statistic::PositionSum("12".parse().unwrap()),
        "EQ2" => Statistic::OccurrenceCount("123".parse().unwrap()),
        "EQ3" | "EQ4" | "EQ5" | "EQ6" => Statistic::PositionSum("123".parse().unwrap()),
        other => return Err(RewriteError::UnknownSystem(other.to_string())),
    };
    Ok(stat)
}

/// A permutation statistic used as a termination certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// Σ_τ: the sum of start positions of occurrences of τ.
    PositionSum(Permutation),
    /// The number of occurrences of τ.
    OccurrenceCount(Permutation),
}

impl Statistic {
    pub fn value(&self, pi: &Permutation) -> usize {
        match self {
            Statistic::PositionSum(tau) => statistic_sigma(tau, pi),
            Statistic::OccurrenceCount(tau) => count_occurrences(tau, pi),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::PositionSum(tau) => write!(f, "Σ_{tau}"),
            Statistic::OccurrenceCount(tau) => write!(f, "count_{tau}"),
        }
    }
}

/// Σ_τ(π): the sum of start positions of the occurrences of τ in π.
pub fn statistic_sigma(tau: &Permutation, pi: &Permutation) -> usize {
    find_occurrences(tau, pi).iter().sum()
}

/// Replaces the occurrence of `rule.lhs` at 1-based position `pos` by
/// the value-shifted right-hand side.
fn apply_at(pi: &Permutation, rule: &RewriteRule, pos: usize) -> Permutation {
    let mut vals = pi.values().to_vec();
    let offset = vals[pos - 1] as i32 - rule.lhs.at(1) as i32;
    for j in 0..rule.lhs.len() {
        vals[pos - 1 + j] = (rule.rhs.at(j + 1) as i32 + offset) as u16;
    }
    // The replaced factor keeps its value set, so the result is again a
    // permutation.
    Permutation::from_vec_unchecked(vals)
}

/// Every permutation obtainable from π by one rewrite step, deduplicated.
pub fn rewrite_successors(pi: &Permutation, system: &RewriteSystem) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    for rule in system.rules() {
        for pos in find_occurrences(&rule.lhs, pi) {
            out.insert(apply_at(pi, rule, pos));
        }
    }
    out
}

/// How a termination certificate was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminationMethod {
    /// Per-n DFS over the rewrite graph looking for directed cycles.
    AcyclicityScan,
    /// A statistic verified strictly increasing along every edge.
    StatisticCertificate(String),
}

impl fmt::Display for TerminationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminationMethod::AcyclicityScan => write!(f, "acyclicity-scan"),
            TerminationMethod::StatisticCertificate(name) => {
                write!(f, "statistic-certificate({name})")
            }
        }
    }
}

/// Outcome of a termination scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminationOutcome {
    /// No cycle / no non-increasing edge up to the scanned bound.
    Verified,
    /// A directed cycle in the rewrite graph (first and last differ; the
    /// step from the last back to the first closes the cycle).
    CycleFound { cycle: Vec<Permutation> },
    /// An edge on which the statistic fails to increase.
    NonIncreasingEdge {
        from: Permutation,
        to: Permutation,
        from_value: usize,
        to_value: usize,
    },
}

/// A bounded termination certificate: *verified up to* a length, never a
/// universal proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationReport {
    pub method: TerminationMethod,
    /// Largest n for which every edge of the rewrite graph on S_n was
    /// checked (on failure: the largest fully verified n).
    pub verified_up_to: usize,
    pub outcome: TerminationOutcome,
}

impl TerminationReport {
    /// True iff the scan succeeded and covers permutations of length n.
    pub fn certifies(&self, n: usize) -> bool {
        self.outcome == TerminationOutcome::Verified && self.verified_up_to >= n
    }
}

/// Scans the rewrite graph on S_1 … S_nmax for a termination
/// certificate.  With a statistic, verifies it strictly increases along
/// every edge; without one, runs a cycle-detecting DFS per n.
pub fn check_termination(
    system: &RewriteSystem,
    nmax: usize,
    statistic: Option<&Statistic>,
) -> Result<TerminationReport, RewriteError> {
    if nmax > MAX_TERMINATION_SCAN {
        return Err(RewriteError::CeilingExceeded {
            n: nmax,
            ceiling: MAX_TERMINATION_SCAN,
        });
    }
    match statistic {
        Some(stat) => check_termination_statistic(system, nmax, stat),
        None => check_termination_acyclic(system, nmax),
    }
}

fn check_termination_statistic(
    system: &RewriteSystem,
    nmax: usize,
    stat: &Statistic,
) -> Result<TerminationReport, RewriteError> {
    let method = TerminationMethod::StatisticCertificate(stat.to_string());
    let start = system.rules().iter().map(|r| r.lhs.len()).min().unwrap_or(1);
    for n in start..=nmax {
        for pi in enumerate_permutations(n, MAX_TERMINATION_SCAN)? {
            let mut f_pi = None;
            for rule in system.rules() {
                for pos in find_occurrences(&rule.lhs, &pi) {
                    let succ = apply_at(&pi, rule, pos);
                    let from_value = *f_pi.get_or_insert_with(|| stat.value(&pi));
                    let to_value = stat.value(&succ);
                    if to_value <= from_value {
                        return Ok(TerminationReport {
                            method,
                            verified_up_to: n - 1,
                            outcome: TerminationOutcome::NonIncreasingEdge {
                                from: pi.clone(),
                                to: succ,
                                from_value,
                                to_value,
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(TerminationReport {
        method,
        verified_up_to: nmax,
        outcome: TerminationOutcome::Verified,
    })
}

fn check_termination_acyclic(
    system: &RewriteSystem,
    nmax: usize,
) -> Result<TerminationReport, RewriteError> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let start = system.rules().iter().map(|r| r.lhs.len()).min().unwrap_or(1);
    for n in start..=nmax {
        let size: usize = (1..=n).product();
        let mut color = vec![WHITE; size];
        for root in enumerate_permutations(n, MAX_TERMINATION_SCAN)? {
            if color[root.lex_rank() as usize] != WHITE {
                continue;
            }
            // Iterative DFS; a gray target closes a directed cycle.
            let mut stack: Vec<(Permutation, Vec<Permutation>, usize)> = Vec::new();
            color[root.lex_rank() as usize] = GRAY;
            let succs = rewrite_successors(&root, system).into_iter().collect();
            stack.push((root, succs, 0));
            while let Some((_, succs, next)) = stack.last_mut() {
                if *next >= succs.len() {
                    let (done, _, _) = stack.pop().expect("nonempty stack");
                    color[done.lex_rank() as usize] = BLACK;
                    continue;
                }
                let target = succs[*next].clone();
                *next += 1;
                match color[target.lex_rank() as usize] {
                    WHITE => {
                        color[target.lex_rank() as usize] = GRAY;
                        let ts = rewrite_successors(&target, system).into_iter().collect();
                        stack.push((target, ts, 0));
                    }
                    GRAY => {
                        let from = stack
                            .iter()
                            .position(|(p, _, _)| *p == target)
                            .expect("gray permutation is on the DFS stack");
                        let cycle = stack[from..].iter().map(|(p, _, _)| p.clone()).collect();
                        return Ok(TerminationReport {
                            method: TerminationMethod::AcyclicityScan,
                            verified_up_to: n - 1,
                            outcome: TerminationOutcome::CycleFound { cycle },
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(TerminationReport {
        method: TerminationMethod::AcyclicityScan,
        verified_up_to: nmax,
        outcome: TerminationOutcome::Verified,
    })
}

/// `olap(R)`: the union of `olap(α₁, α₂)` over all ordered pairs of
/// left-hand sides (equal pairs included) — the only permutations where
/// local confluence needs checking.
pub fn olap_of_system(system: &RewriteSystem) -> BTreeSet<Permutation> {
    let dom = system.dom();
    let mut out = BTreeSet::new();
    for a in &dom {
        for b in &dom {
            out.extend(overlap_set(a, b));
        }
    }
    out
}

/// Confluence verdict for a rewrite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfluenceVerdict {
    /// Locally confluent on all of olap(R), with a termination
    /// certificate covering it — confluent by Newman's lemma.
    Confluent,
    /// Some peak has two non-joinable successors.
    NotConfluent,
    /// Locally confluent, but no termination certificate was supplied.
    Inconclusive,
}

impl fmt::Display for ConfluenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConfluenceVerdict::Confluent => "confluent",
            ConfluenceVerdict::NotConfluent => "not-confluent",
            ConfluenceVerdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Joinability result at one olap(R) peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinabilityTrace {
    pub peak: Permutation,
    pub successors: Vec<Permutation>,
    pub joinable: bool,
    /// A common reduct of all successors when joinable (and any exist).
    pub meet: Option<Permutation>,
    /// The first non-joinable successor pair otherwise.
    pub failing_pair: Option<(Permutation, Permutation)>,
}

/// Outcome of the local-confluence check over olap(R).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub verdict: ConfluenceVerdict,
    pub witnesses: Vec<JoinabilityTrace>,
    /// Peak with two non-joinable successors, when not confluent.
    pub counterexample: Option<(Permutation, Permutation, Permutation)>,
}

/// The full forward closure of π (including π itself).
fn reachability(pi: &Permutation, system: &RewriteSystem) -> BTreeSet<Permutation> {
    let mut seen = BTreeSet::new();
    seen.insert(pi.clone());
    let mut frontier = vec![pi.clone()];
    while let Some(p) = frontier.pop() {
        for s in rewrite_successors(&p, system) {
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    seen
}

/// Checks local confluence at every π ∈ olap(R), deciding joinability of
/// each successor pair by intersecting full reachability sets (finite,
/// since rewriting preserves length).
///
/// With a termination certificate covering the longest olap(R) member,
/// an all-joinable result is `Confluent` (Newman's lemma); without one
/// it is only `Inconclusive`.  A non-joinable pair is `NotConfluent`
/// regardless.  Passing a certificate that does not cover olap(R) is an
/// error.
pub fn check_local_confluence(
    system: &RewriteSystem,
    termination: Option<&TerminationReport>,
) -> Result<ConfluenceReport, RewriteError> {
    let olap = olap_of_system(system);
    let max_len = olap.iter().map(|p| p.len()).max().unwrap_or(0);
    let certified = match termination {
        Some(report) => {
            if !report.certifies(max_len) {
                return Err(RewriteError::TerminationNotVerified {
                    required: max_len,
                    verified_up_to: if report.outcome == TerminationOutcome::Verified {
                        report.verified_up_to
                    } else {
                        0
                    },
                });
            }
            true
        }
        None => false,
    };

    let mut witnesses = Vec::new();
    let mut counterexample = None;
    for peak in &olap {
        let successors: Vec<Permutation> =
            rewrite_successors(peak, system).into_iter().collect();
        let reaches: Vec<BTreeSet<Permutation>> = successors
            .iter()
            .map(|s| reachability(s, system))
            .collect();
        let mut joinable = true;
        let mut failing_pair = None;
        let mut common: Option<BTreeSet<Permutation>> = None;
        for i in 0..successors.len() {
            for j in i + 1..successors.len() {
                if reaches[i].intersection(&reaches[j]).next().is_none() {
                    joinable = false;
                    failing_pair =
                        Some((successors[i].clone(), successors[j].clone()));
                    break;
                }
            }
            if !joinable {
                break;
            }
            common = Some(match common {
                None => reaches[i].clone(),
                Some(c) => c.intersection(&reaches[i]).cloned().collect(),
            });
        }
        // Pairwise joinability is what Lemma-style local confluence
        // needs; the all-way meet is reported when it happens to exist.
        let meet = if joinable {
            common.as_ref().and_then(|c| c.iter().next().cloned())
        } else {
            None
        };
        if !joinable {
            if counterexample.is_none() {
                let (a, b) = failing_pair.clone().expect("set on failure");
                counterexample = Some((peak.clone(), a, b));
            }
        }
        witnesses.push(JoinabilityTrace {
            peak: peak.clone(),
            successors,
            joinable,
            meet,
            failing_pair,
        });
    }

    let verdict = if counterexample.is_some() {
        ConfluenceVerdict::NotConfluent
    } else if certified {
        ConfluenceVerdict::Confluent
    } else {
        ConfluenceVerdict::Inconclusive
    };
    Ok(ConfluenceReport {
        verdict,
        witnesses,
        counterexample,
    })
}

/// Rewrites π to a normal form with the deterministic strategy: the
/// first rule in system order with an occurrence, applied at its
/// leftmost position.  Requires a termination certificate covering |π|.
/// The returned flag is true iff `confluence` certifies the system
/// confluent, making the normal form strategy-independent.
pub fn normal_form(
    pi: &Permutation,
    system: &RewriteSystem,
    termination: &TerminationReport,
    confluence: Option<&ConfluenceReport>,
) -> Result<(Permutation, bool), RewriteError> {
    if !termination.certifies(pi.len()) {
        return Err(RewriteError::TerminationNotVerified {
            required: pi.len(),
            verified_up_to: if termination.outcome == TerminationOutcome::Verified {
                termination.verified_up_to
            } else {
                0
            },
        });
    }
    let mut current = pi.clone();
    'reduce: loop {
        for rule in system.rules() {
            if let Some(&pos) = find_occurrences(&rule.lhs, &current).first() {
                current = apply_at(&current, rule, pos);
                continue 'reduce;
            }
        }
        break;
    }
    let unique = matches!(
        confluence.map(|c| c.verdict),
        Some(ConfluenceVerdict::Confluent)
    );
    Ok((current, unique))
}

/// The equivalence classes of S_n under the symmetric closure of →.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClasses {
    pub count: usize,
    /// Classes ordered by their lexicographically least member; each
    /// class is in lexicographic order.
    pub classes: Vec<Vec<Permutation>>,
}

/// Union-find over all of S_n with an edge per rewrite step.
pub fn equivalence_classes_bruteforce(
    system: &RewriteSystem,
    n: usize,
) -> Result<EquivalenceClasses, RewriteError> {
    if n > crate::DEFAULT_CLASS_CEILING {
        return Err(RewriteError::CeilingExceeded {
            n,
            ceiling: crate::DEFAULT_CLASS_CEILING,
        });
    }
    let size: usize = (1..=n).product();
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut i: u32) -> u32 {
        while parent[i as usize] != i {
            parent[i as usize] = parent[parent[i as usize] as usize];
            i = parent[i as usize];
        }
        i
    }
    for pi in enumerate_permutations(n, crate::DEFAULT_CLASS_CEILING)? {
        let a = find(&mut parent, pi.lex_rank() as u32);
        for succ in rewrite_successors(&pi, system) {
            let b = find(&mut parent, succ.lex_rank() as u32);
            if a != b {
                parent[b as usize] = a;
            }
        }
    }
    let mut by_root: BTreeMap<u32, Vec<Permutation>> = BTreeMap::new();
    for pi in enumerate_permutations(n, crate::DEFAULT_CLASS_CEILING)? {
        let root = find(&mut parent, pi.lex_rank() as u32);
        by_root.entry(root).or_default().push(pi);
    }
    let mut classes: Vec<Vec<Permutation>> = by_root.into_values().collect();
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(EquivalenceClasses {
        count: classes.len(),
        classes,
    })
}

/// The number of equivalence classes per length, as a series: for a
/// system certified confluent (hence terminating), classes biject with
/// dom(R)-avoiding permutations, so this is the avoider series of
/// dom(R).  Refuses without a `Confluent` verdict.
pub fn class_count_series(
    system: &RewriteSystem,
    order: usize,
    confluence: &ConfluenceReport,
) -> Result<Series, RewriteError> {
    if confluence.verdict != ConfluenceVerdict::Confluent {
        return Err(RewriteError::NotCertifiedConfluent {
            verdict: confluence.verdict,
        });
    }
    let set = check_antichain(system.dom())?;
    Ok(avoider_series(&set, order)?)
}
