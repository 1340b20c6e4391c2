//! Acceptance suite: ten end-to-end criteria, each printing one
//! `ACCEPTANCE criterion N <name>: PASS/FAIL` line (visible under
//! `cargo test -p hertzsprung-cli --test acceptance -- --nocapture`).
//!
//! All arithmetic is exact — the tolerance everywhere is integer or
//! polynomial equality.  Criteria with a runtime budget assert it; the
//! bodies run one at a time behind a mutex so that the measured times
//! are not skewed by parallel tests.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use hertzsprung::cluster::{
    brute_force_clusters, check_antichain, cluster_gf, cluster_gf_at, PatternSet,
};
use hertzsprung::conjecture::{
    check_conjecture_one, mesh_p_count, mesh_p_series, wilf_autocorrelation_classes,
    WILF_CLASS_COUNTS,
};
use hertzsprung::dist::{
    avoider_series, brute_force_distribution, hertzsprung_closed_form, jackson_id_distribution,
    jackson_read_gf, joint_distribution_series, myers_count, single_pattern_gf, JacksonVariant,
};
use hertzsprung::perm::{enumerate_permutations, Permutation};
use hertzsprung::poly::{fsum_series, series_from_rational, Monomial, RegistryRef};
use hertzsprung::rewrite::{
    builtin_statistic, builtin_system, check_local_confluence, check_termination,
    class_count_series, equivalence_classes_bruteforce, normal_form, olap_of_system,
    ConfluenceReport, ConfluenceVerdict, RewriteSystem, TerminationReport, BUILTIN_NAMES,
};
use hertzsprung::{Int, Poly, Rat, RatFun, Series};

// ---------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------

static SERIAL: Mutex<()> = Mutex::new(());

/// Runs one criterion body, prints its PASS/FAIL line, and enforces the
/// runtime budget when one is set.
fn criterion<F: FnOnce()>(number: usize, name: &str, budget: Option<Duration>, body: F) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let within_budget = budget.map_or(true, |b| elapsed <= b);
    let pass = outcome.is_ok() && within_budget;
    println!(
        "ACCEPTANCE criterion {number} {name}: {} ({:.2}s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    if !within_budget {
        panic!(
            "criterion {number} took {elapsed:?}, over its {:?} budget",
            budget.unwrap()
        );
    }
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn set_of(patterns: &[&str]) -> PatternSet {
    check_antichain(patterns.iter().map(|s| p(s)).collect()).unwrap()
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Integer coefficients of a marker-free counting series.
fn ints_of(series: &Series) -> Vec<BigInt> {
    series
        .coeffs()
        .iter()
        .map(|c| c.as_constant().expect("constant coefficient").to_integer())
        .collect()
}

fn sum_of_powers(reg: &RegistryRef, powers: &[u16]) -> Poly {
    powers
        .iter()
        .fold(Poly::zero(reg), |acc, &d| &acc + &Poly::x_pow(reg, d))
}

/// A built-in system together with its bounded certificates, shared
/// across the criteria so that the EQ7 termination scan (to length 10)
/// runs once.
struct Certified {
    system: RewriteSystem,
    termination: TerminationReport,
    confluence: ConfluenceReport,
}

fn certified_systems() -> &'static Vec<(&'static str, Certified)> {
    static CELL: OnceLock<Vec<(&'static str, Certified)>> = OnceLock::new();
    CELL.get_or_init(|| {
        BUILTIN_NAMES
            .iter()
            .map(|&name| {
                let system = builtin_system(name).unwrap();
                let statistic = builtin_statistic(name).unwrap();
                // Deep enough for Newman's lemma (the longest olap(R)
                // peak) and for normal forms of length ≤ 8.
                let depth = olap_of_system(&system)
                    .iter()
                    .map(Permutation::len)
                    .max()
                    .unwrap_or(0)
                    .max(system.max_rule_len())
                    .max(8);
                let termination = check_termination(&system, depth, Some(&statistic)).unwrap();
                assert!(termination.certifies(depth), "{name} must terminate");
                let confluence = check_local_confluence(&system, Some(&termination)).unwrap();
                (
                    name,
                    Certified {
                        system,
                        termination,
                        confluence,
                    },
                )
            })
            .collect()
    })
}

fn class_counts(name: &str, order: usize) -> Vec<BigInt> {
    let certified = &certified_systems()
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap()
        .1;
    ints_of(&class_count_series(&certified.system, order, &certified.confluence).unwrap())
}

// ---------------------------------------------------------------------
// Frozen reference data
// ---------------------------------------------------------------------

const HERTZSPRUNG_SEQ: [i64; 10] = [1, 1, 0, 0, 2, 14, 90, 646, 5242, 47622];

const S3_TOTAL_SEQ: [i64; 12] = [
    1, 1, 2, 0, 4, 34, 298, 2434, 21374, 205300, 2161442, 24804386,
];

/// Class counts for n = 1..20 (EQ2 and EQ3 share a column).
const TABLE2: [(&str, [i64; 20]); 5] = [
    (
        "EQ2",
        [
            1,
            2,
            5,
            20,
            102,
            626,
            4458,
            36144,
            328794,
            3316944,
            36755520,
            443828184,
            5800823880,
            81591320880,
            1228888215960,
            19733475278880,
            336551479543440,
            6075437671458000,
            115733952138747600,
            2320138519554562560,
        ],
    ),
    (
        "EQ4",
        [
            1,
            2,
            4,
            17,
            89,
            556,
            4011,
            32843,
            301210,
            3059625,
            34104275,
            413919214,
            5434093341,
            76734218273,
            1159776006262,
            18681894258591,
            319512224705645,
            5782488507020050,
            110407313135273127,
            2218005876646727423,
        ],
    ),
    (
        "EQ5",
        [
            1,
            2,
            4,
            16,
            84,
            536,
            3912,
            32256,
            297072,
            3026112,
            33798720,
            410826624,
            5399704320,
            76317546240,
            1154312486400,
            18604815528960,
            318348065548800,
            5763746405053440,
            110086912964367360,
            2212209395234979840,
        ],
    ),
    (
        "EQ6",
        [
            1,
            2,
            3,
            13,
            71,
            470,
            3497,
            29203,
            271500,
            2786711,
            31322803,
            382794114,
            5054810585,
            71735226535,
            1088920362030,
            17607174571553,
            302143065676513,
            5484510055766118,
            104999034898520903,
            2114467256458136473,
        ],
    ),
    (
        "EQ7",
        [
            1,
            2,
            1,
            6,
            40,
            330,
            2664,
            23258,
            222154,
            2326410,
            26568950,
            328995136,
            4392819522,
            62935547966,
            963253101304,
            15688298164890,
            270944692450742,
            4946387077324072,
            95184319122508074,
            1925732716758497918,
        ],
    ),
];

/// olap(R) for each built-in system.
const OLAP_SETS: [(&str, &[&str]); 7] = [
    ("EQ1", &["321", "3421"]),
    ("EQ2", &[]),
    ("EQ3", &["4321", "54321", "456321"]),
    ("EQ4", &["1324", "21354"]),
    ("EQ5", &["4321", "54321", "456321"]),
    ("EQ6", &["1324", "4321", "21354", "54321", "456321"]),
    (
        "EQ7",
        &[
            "1324",
            "21354",
            "45312",
            "45321",
            "6754123",
            "4231",
            "86745123",
            "54312",
            "4321",
            "54321",
            "654123",
            "7654123",
            "456312",
            "456321",
            "67854123",
            "456231",
            "8,9,10,6,7,4,5,1,2,3",
            "652341",
            "7634512",
            "78562341",
            "896734512",
        ],
    ),
];

/// Distinct self-correlation polynomials over S_k for k ≤ 7, in the
/// published order; each inner slice lists the powers of x with
/// coefficient 1 (empty slice = the zero polynomial).
const OMEGA_SETS: [&[&[u16]]; 7] = [
    &[&[]],
    &[&[1]],
    &[&[], &[2, 1]],
    &[&[], &[2], &[3], &[3, 2, 1]],
    &[&[], &[3], &[4], &[4, 3, 2, 1]],
    &[&[], &[3], &[4], &[4, 2], &[5], &[5, 4], &[5, 4, 3, 2, 1]],
    &[&[], &[4], &[5], &[6], &[6, 3], &[6, 5], &[6, 5, 4, 3, 2, 1]],
];

const MESH_COUNTS: [i64; 11] = [1, 1, 2, 5, 20, 103, 630, 4475, 36232, 329341, 3320890];

const WILF_PREFIX: [usize; 9] = [1, 1, 2, 4, 4, 7, 7, 11, 12];

// ---------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------

#[test]
fn criterion_01_hertzsprung_sequence() {
    criterion(1, "hertzsprung-sequence", Some(Duration::from_secs(5)), || {
        // The published sequence through the real binary.
        let out = Command::new(env!("CARGO_BIN_EXE_hertzsprung"))
            .args(["avoid", "-p", "12", "-p", "21", "-N", "9"])
            .env_remove("HERTZSPRUNG_DEFAULT_N")
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        assert_eq!(
            String::from_utf8(out.stdout).unwrap(),
            "1 1 0 0 2 14 90 646 5242 47622\n"
        );

        // Cluster method == closed form for n ≤ 12.
        let set = set_of(&["12", "21"]);
        let series = ints_of(&avoider_series(&set, 12).unwrap());
        for (n, coeff) in series.iter().enumerate() {
            assert_eq!(
                coeff,
                &hertzsprung_closed_form(n),
                "closed form differs at n = {n}"
            );
            if n < HERTZSPRUNG_SEQ.len() {
                assert_eq!(coeff, &BigInt::from(HERTZSPRUNG_SEQ[n]));
            }
        }

        // Cluster method == exhaustive scan for n ≤ 8.
        let zero = rat(0);
        for n in 0..=8 {
            let brute = brute_force_distribution(&set, n)
                .unwrap()
                .substitute_all_markers(&zero)
                .as_constant()
                .unwrap();
            assert_eq!(series[n], brute.to_integer(), "scan differs at n = {n}");
        }
    });
}

#[test]
fn criterion_02_s3_total_avoidance() {
    criterion(2, "s3-total-avoidance", Some(Duration::from_secs(5)), || {
        let set = set_of(&["123", "132", "213", "231", "312", "321"]);
        let series = ints_of(&avoider_series(&set, 11).unwrap());
        let expected: Vec<BigInt> = S3_TOTAL_SEQ.iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(series, expected);
    });
}

#[test]
fn criterion_03_cluster_gf_closed_forms() {
    criterion(3, "cluster-gf-closed-forms", None, || {
        let minus_one = rat(-1);

        // {132}: C = u·x³, specializing to −x³.
        let single = set_of(&["132"]);
        let reg = single.registry().clone();
        let expected = RatFun::from_poly(&Poly::marker(&reg, 0) * &Poly::x_pow(&reg, 3));
        assert_eq!(cluster_gf(&single).unwrap(), expected);
        let at = cluster_gf_at(&single, &minus_one).unwrap();
        let neg_x3 = RatFun::from_poly(Poly::x_pow(&reg, 3).scale(&minus_one));
        assert_eq!(at, neg_x3);

        // {123}: C = u·x³ / (1 − u(x + x²)).
        let run = set_of(&["123"]);
        let reg = run.registry().clone();
        let u = Poly::marker(&reg, 0);
        let num = &u * &Poly::x_pow(&reg, 3);
        let den = &Poly::one(&reg) - &(&u * &(&Poly::x(&reg) + &Poly::x_pow(&reg, 2)));
        assert_eq!(cluster_gf(&run).unwrap(), RatFun::new(num, den).unwrap());

        // {21, 231}: C = x²(vx + u) / (1 − ux).
        let eq1 = set_of(&["21", "231"]);
        let reg = eq1.registry().clone();
        let (u, v) = (Poly::marker(&reg, 0), Poly::marker(&reg, 1));
        let num = &Poly::x_pow(&reg, 2) * &(&(&v * &Poly::x(&reg)) + &u);
        let den = &Poly::one(&reg) - &(&u * &Poly::x(&reg));
        assert_eq!(cluster_gf(&eq1).unwrap(), RatFun::new(num, den).unwrap());

        // {321, 2341}: C = (uvx⁵ − vx⁴ − ux³) / (ux² + ux − 1),
        // specializing to −x³.
        let eq3 = set_of(&["321", "2341"]);
        let reg = eq3.registry().clone();
        let (u, v) = (Poly::marker(&reg, 0), Poly::marker(&reg, 1));
        let num = &(&(&(&u * &v) * &Poly::x_pow(&reg, 5))
            - &(&v * &Poly::x_pow(&reg, 4)))
            - &(&u * &Poly::x_pow(&reg, 3));
        let den = &(&(&u * &Poly::x_pow(&reg, 2)) + &(&u * &Poly::x(&reg))) - &Poly::one(&reg);
        assert_eq!(cluster_gf(&eq3).unwrap(), RatFun::new(num, den).unwrap());
        let at = cluster_gf_at(&eq3, &minus_one).unwrap();
        let neg_x3 = RatFun::from_poly(Poly::x_pow(&reg, 3).scale(&minus_one));
        assert_eq!(at, neg_x3);

        // {132, 321, 2341}: C = ((uv + vs)x⁵ + (uv − s)x⁴ − (u + v)x³)
        //                       / (vx² + vx − 1),
        // and C(−1) = x(1 − 2x²) − x = −2x³.
        let eq5 = set_of(&["132", "321", "2341"]);
        let reg = eq5.registry().clone();
        let (u, v, s) = (
            Poly::marker(&reg, 0),
            Poly::marker(&reg, 1),
            Poly::marker(&reg, 2),
        );
        let uv = &u * &v;
        let num = &(&(&(&uv + &(&v * &s)) * &Poly::x_pow(&reg, 5))
            + &(&(&uv - &s) * &Poly::x_pow(&reg, 4)))
            - &(&(&u + &v) * &Poly::x_pow(&reg, 3));
        let den = &(&(&v * &Poly::x_pow(&reg, 2)) + &(&v * &Poly::x(&reg))) - &Poly::one(&reg);
        assert_eq!(cluster_gf(&eq5).unwrap(), RatFun::new(num, den).unwrap());
        let at = cluster_gf_at(&eq5, &minus_one).unwrap();
        let x = Poly::x(&reg);
        let inner = &x - &Poly::x_pow(&reg, 3).scale(&rat(2));
        assert_eq!(at.add_poly(&x).unwrap(), RatFun::from_poly(inner));
        let neg_2x3 = RatFun::from_poly(Poly::x_pow(&reg, 3).scale(&rat(-2)));
        assert_eq!(at, neg_2x3);
    });
}

#[test]
fn criterion_04_class_count_table() {
    criterion(4, "class-count-table", Some(Duration::from_secs(10)), || {
        // EQ2 and EQ3 must agree before their shared column is checked.
        let eq2 = class_counts("EQ2", 20);
        let eq3 = class_counts("EQ3", 20);
        assert_eq!(eq2, eq3, "EQ2 and EQ3 share a column");
        for (name, column) in &TABLE2 {
            let counts = class_counts(name, 20);
            for n in 1..=20 {
                assert_eq!(
                    counts[n],
                    BigInt::from(column[n - 1]),
                    "{name} differs at n = {n}"
                );
            }
        }
    });
}

#[test]
fn criterion_05_triple_agreement() {
    criterion(5, "triple-agreement", Some(Duration::from_secs(120)), || {
        for (name, certified) in certified_systems() {
            let series =
                ints_of(&class_count_series(&certified.system, 8, &certified.confluence).unwrap());
            for n in 0..=8 {
                let union_find = equivalence_classes_bruteforce(&certified.system, n)
                    .unwrap()
                    .count;
                let mut normal_forms: BTreeSet<Permutation> = BTreeSet::new();
                for pi in enumerate_permutations(n, 8).unwrap() {
                    let (nf, canonical) = normal_form(
                        &pi,
                        &certified.system,
                        &certified.termination,
                        Some(&certified.confluence),
                    )
                    .unwrap();
                    assert!(canonical);
                    normal_forms.insert(nf);
                }
                assert_eq!(
                    BigInt::from(union_find),
                    series[n],
                    "{name}: union-find vs series at n = {n}"
                );
                assert_eq!(
                    normal_forms.len(),
                    union_find,
                    "{name}: normal forms vs union-find at n = {n}"
                );
            }
        }
    });
}

#[test]
fn criterion_06_confluence_verdicts() {
    criterion(6, "confluence-verdicts", None, || {
        // Every built-in system is confluent, with joinability checked
        // at each olap(R) peak, and the peaks match the published sets.
        for (name, expected) in &OLAP_SETS {
            let certified = &certified_systems()
                .iter()
                .find(|(n, _)| n == name)
                .unwrap()
                .1;
            assert_eq!(certified.confluence.verdict, ConfluenceVerdict::Confluent);
            let expected: BTreeSet<Permutation> = expected.iter().map(|s| p(s)).collect();
            let olap = olap_of_system(&certified.system);
            assert_eq!(olap, expected, "{name}: olap(R)");
            let peaks: BTreeSet<Permutation> = certified
                .confluence
                .witnesses
                .iter()
                .map(|w| w.peak.clone())
                .collect();
            assert_eq!(peaks, expected, "{name}: checked peaks");
            assert!(certified.confluence.witnesses.iter().all(|w| w.joinable));
        }

        // 123 -> 132 alone: peak 1234 splits into 1243 and 1324.
        let system = RewriteSystem::parse("123 -> 132").unwrap();
        let termination = check_termination(&system, 5, None).unwrap();
        let report = check_local_confluence(&system, Some(&termination)).unwrap();
        assert_eq!(report.verdict, ConfluenceVerdict::NotConfluent);
        let (peak, a, b) = report.counterexample.expect("witness");
        assert_eq!(peak, p("1234"));
        assert_eq!(
            BTreeSet::from([a, b]),
            BTreeSet::from([p("1243"), p("1324")])
        );

        // 321 -> 123 alone: peak 4321 splits into 2341 and 4123.
        let system = RewriteSystem::parse("321 -> 123").unwrap();
        let termination = check_termination(&system, 6, None).unwrap();
        let report = check_local_confluence(&system, Some(&termination)).unwrap();
        assert_eq!(report.verdict, ConfluenceVerdict::NotConfluent);
        let (peak, a, b) = report.counterexample.expect("witness");
        assert_eq!(peak, p("4321"));
        assert_eq!(
            BTreeSet::from([a, b]),
            BTreeSet::from([p("2341"), p("4123")])
        );
    });
}

#[test]
fn criterion_07_oracle_equivalence() {
    criterion(7, "oracle-equivalence", Some(Duration::from_secs(120)), || {
        let mut sets: Vec<PatternSet> = [
            vec!["132"],
            vec!["123"],
            vec!["12", "21"],
            vec!["123", "132"],
        ]
        .iter()
        .map(|ps| set_of(ps))
        .collect();

        // 20 seeded random antichains of 1–3 patterns, lengths 3–5.
        let mut rng = StdRng::seed_from_u64(0x4845_5254_5a00_0001);
        while sets.len() < 24 {
            let count = rng.gen_range(1..=3);
            let mut patterns: Vec<Permutation> = Vec::new();
            for _ in 0..count {
                let len = rng.gen_range(3..=5);
                let mut values: Vec<u16> = (1..=len).collect();
                values.shuffle(&mut rng);
                let candidate = Permutation::new(values).unwrap();
                if !patterns.contains(&candidate) {
                    patterns.push(candidate);
                }
            }
            if let Ok(set) = check_antichain(patterns) {
                sets.push(set);
            }
        }

        for set in &sets {
            let joint = joint_distribution_series(set, 7).unwrap();
            let clusters = series_from_rational(&cluster_gf(set).unwrap(), 7).unwrap();
            for n in 0..=7 {
                let brute = brute_force_distribution(set, n).unwrap();
                assert_eq!(
                    &brute,
                    joint.coeff(n),
                    "joint distribution differs at n = {n} for {:?}",
                    set.patterns()
                );
                let brute_clusters = brute_force_clusters(set, n).unwrap();
                assert_eq!(
                    &brute_clusters,
                    clusters.coeff(n),
                    "cluster series differs at n = {n} for {:?}",
                    set.patterns()
                );
            }
        }
    });
}

#[test]
fn criterion_08_closed_form_cross_checks() {
    criterion(8, "closed-form-cross-checks", None, || {
        // Exactly-m-occurrence counts at m = 0 equal the avoider series
        // for 132; the first values are the shared avoidance column.
        let single = set_of(&["132"]);
        let avoiders = ints_of(&avoider_series(&single, 12).unwrap());
        assert_eq!(
            avoiders[..6],
            [1, 1, 2, 5, 20, 102].map(BigInt::from),
            "leading 132-avoider counts"
        );
        for (n, coeff) in avoiders.iter().enumerate() {
            assert_eq!(
                &myers_count(&p("132"), n, 0).unwrap(),
                coeff,
                "exactly-zero-occurrences count differs at n = {n}"
            );
        }

        // Run-avoider generating functions equal the cluster-method
        // avoider series, both one- and two-sided, for k = 2, 3, 4.
        for k in 2..=4usize {
            let id: String = ('1'..).take(k).collect();
            let rev: String = id.chars().rev().collect();
            let one_sided = ints_of(&jackson_read_gf(k, JacksonVariant::Single, 15).unwrap());
            assert_eq!(
                one_sided,
                ints_of(&avoider_series(&set_of(&[&id]), 15).unwrap()),
                "one-sided runs, k = {k}"
            );
            let two_sided = ints_of(&jackson_read_gf(k, JacksonVariant::Pair, 15).unwrap());
            assert_eq!(
                two_sided,
                ints_of(&avoider_series(&set_of(&[&id, &rev]), 15).unwrap()),
                "two-sided runs, k = {k}"
            );
        }

        // The run-distribution rational function and the correlation
        // form produce the same occurrence distribution for k = 2, 3, 4.
        for k in 2..=4usize {
            let by_runs = jackson_id_distribution(k, 15).unwrap();
            let inner = single_pattern_gf(&Permutation::identity(k)).unwrap();
            let by_correlation =
                fsum_series(&series_from_rational(&inner, 15).unwrap(), 15).unwrap();
            for n in 0..=15 {
                assert_eq!(
                    by_runs.coeff(n),
                    by_correlation.coeff(n),
                    "distribution coefficient differs at n = {n}, k = {k}"
                );
            }
        }
    });
}

#[test]
fn criterion_09_conjecture_lab() {
    criterion(9, "conjecture-lab", Some(Duration::from_secs(300)), || {
        // a_k for k ≤ 9, and the exact correlation-polynomial sets for
        // k ≤ 7 in the published order.
        for k in 1..=9usize {
            let classes = wilf_autocorrelation_classes(k, 9).unwrap();
            assert_eq!(classes.count(), WILF_PREFIX[k - 1], "a_{k}");
            assert_eq!(classes.count(), WILF_CLASS_COUNTS[k - 1]);
            if k <= 7 {
                let reg = classes.polynomials[0].registry().clone();
                let expected: Vec<Poly> = OMEGA_SETS[k - 1]
                    .iter()
                    .map(|powers| sum_of_powers(&reg, powers))
                    .collect();
                assert_eq!(classes.polynomials, expected, "Ω-set for k = {k}");
            }
        }

        // b_{k+1} = a_k for 3 ≤ k ≤ 9.
        let report = check_conjecture_one(9, 9).unwrap();
        assert_eq!(report.rows.len(), 7);
        assert!(report.rows.iter().all(|r| (3..=9).contains(&r.k)));
        assert!(report.holds, "a_k = b_(k+1) must hold through k = 9");

        // Mesh-pattern containment counts for n ≤ 10, against both the
        // direct scan and the closed-form series.
        let series = ints_of(&mesh_p_series(10).unwrap());
        for n in 0..=10 {
            assert_eq!(
                mesh_p_count(n).unwrap(),
                MESH_COUNTS[n] as usize,
                "scan count at n = {n}"
            );
            assert_eq!(series[n], BigInt::from(MESH_COUNTS[n]), "series at n = {n}");
        }
    });
}

#[test]
fn criterion_10_wilf_equivalence() {
    criterion(10, "wilf-equivalence", None, || {
        // Joint distributions of {21, 231} and {21, 312} coincide once
        // u_231 is renamed to u_312.  Both registries list the markers
        // in the same positions, so renaming is exactly positional
        // equality of the term maps.
        let left = joint_distribution_series(&set_of(&["21", "231"]), 10).unwrap();
        let right = joint_distribution_series(&set_of(&["21", "312"]), 10).unwrap();
        for n in 0..=10 {
            let lhs: BTreeMap<Monomial, Rat> = left
                .coeff(n)
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            let rhs: BTreeMap<Monomial, Rat> = right
                .coeff(n)
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            assert_eq!(lhs, rhs, "renamed joint distribution differs at n = {n}");
        }

        // EQ2 and EQ3 class counts agree through n = 20.
        assert_eq!(class_counts("EQ2", 20), class_counts("EQ3", 20));

        // The recorded class counts a_k for k = 10..15 sit beyond the
        // k! scan ceiling of this build (k ≤ 9), so they are documented
        // here as recorded values rather than recomputed: recomputing
        // them would take scans of 10! .. 15! permutations.
        assert_eq!(WILF_CLASS_COUNTS[9..], [18, 17, 25, 27, 38, 38]);
        println!(
            "criterion 10 note: a_10..a_15 = {:?} are recorded from the \
             source table, not recomputed (k! scans beyond desk scale); \
             a_1..a_9 are recomputed in criterion 9.",
            &WILF_CLASS_COUNTS[9..]
        );
    });
}
