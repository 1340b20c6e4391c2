//! Machine checks of three conjectural statements about Hertzsprung
//! patterns, at exhaustive-scan scale.
//!
//! 1. The number `a_k` of distinct self-correlation polynomials
//!    `Ω(σ, σ)` over `σ ∈ S_k` appears to equal the number `b_{k+1}` of
//!    distinct palindromic-prefix sets of binary palindromes of length
//!    `k + 1`, for every `k ≥ 3`.
//! 2. Among Hertzsprung patterns of length `k`, the identity appears to
//!    be the easiest to avoid: `|S_n(τ)| ≤ |S_n(id_k)|` for all τ, n.
//! 3. A particular mesh refinement of the pattern 132 appears to have
//!    avoider counts generated by `Σ_m m! y^m` at `y = x/(1 + x²)`.
//!
//! Nothing here proves anything; every check is a finite scan with an
//! explicit ceiling, reporting agreement or a first counterexample.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cluster::{check_antichain, correlation_poly, ClusterError};
use crate::dist::{avoider_series, DistError};
use crate::perm::{enumerate_permutations, PermError, Permutation};
use crate::poly::{fsum_series, series_from_rational, PolyError, VarRegistry};
use crate::{Int, Poly, Rat, RatFun, Series};

/// Default bound on `k` for the `k!`-scan of self-correlations.
pub const DEFAULT_WILF_CEILING: usize = 9;
/// Bound on palindrome length (the scan is over `2^⌈k/2⌉` words).
pub const PALINDROME_CEILING: usize = 25;
/// Bound on `n` for the mesh-pattern scan (`n!` permutations, `n³`
/// candidate occurrences each).
pub const MESH_CEILING: usize = 11;

/// Known values of `a_k` for `k = 1..=15`.  Entries beyond
/// [`DEFAULT_WILF_CEILING`] are recorded for reference; recomputing them
/// needs more than a desk-scale scan.
pub const WILF_CLASS_COUNTS: [usize; 15] =
    [1, 1, 2, 4, 4, 7, 7, 11, 12, 18, 17, 25, 27, 38, 38];

/// Errors from conjecture scans.
#[derive(Debug, Error, PartialEq)]
pub enum ConjectureError {
    #[error("{what} at size {value} exceeds ceiling {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        value: usize,
        ceiling: usize,
    },
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The distinct self-correlation polynomials over one symmetric group.
#[derive(Clone, Debug, PartialEq)]
pub struct WilfClasses {
    pub k: usize,
    /// Distinct values of `Ω(σ, σ)`, ordered by x-degree and then by
    /// coefficient vectors compared from the highest power down.
    pub polynomials: Vec<Poly>,
}

impl WilfClasses {
    /// `a_k`: the number of distinct self-correlation polynomials.
    pub fn count(&self) -> usize {
        self.polynomials.len()
    }
}

/// Sort key placing polynomials in degree order, ties broken by
/// comparing coefficients from the highest power of `x` down.
fn canonical_key(p: &Poly) -> (usize, Vec<Rat>) {
    let len = p.x_degree().map_or(0, |d| d as usize + 1);
    let mut coeffs: Vec<Rat> = p
        .x_coefficients()
        .iter()
        .map(|c| c.as_constant().expect("x-only polynomial"))
        .collect();
    coeffs.reverse();
    (len, coeffs)
}

/// Collects `{Ω(σ, σ) : σ ∈ S_k}`.  The scan is `k!`-sized, so `k` must
/// stay within `ceiling` (pass [`DEFAULT_WILF_CEILING`] unless a larger
/// scan is deliberate).
pub fn wilf_autocorrelation_classes(
    k: usize,
    ceiling: usize,
) -> Result<WilfClasses, ConjectureError> {
    if k > ceiling {
        return Err(ConjectureError::CeilingExceeded {
            what: "self-correlation scan",
            value: k,
            ceiling,
        });
    }
    let mut distinct: BTreeMap<(usize, Vec<Rat>), Poly> = BTreeMap::new();
    for sigma in enumerate_permutations(k, ceiling)? {
        let omega = correlation_poly(&sigma, &sigma);
        distinct.entry(canonical_key(&omega)).or_insert(omega);
    }
    Ok(WilfClasses {
        k,
        polynomials: distinct.into_values().collect(),
    })
}

/// `P(w)`: the 1-based lengths `i` for which the prefix `w_1 … w_i` is a
/// palindrome.
pub fn palindrome_prefix_set(word: &[u8]) -> BTreeSet<usize> {
    (1..=word.len())
        .filter(|&i| {
            let prefix = &word[..i];
            prefix.iter().eq(prefix.iter().rev())
        })
        .collect()
}

/// `b_k`: the number of distinct sets `P(w)` as `w` ranges over binary
/// palindromes of length `k`.  Palindromes are enumerated from their
/// `⌈k/2⌉` free bits.
pub fn palindrome_prefix_count(k: usize) -> Result<usize, ConjectureError> {
    if k > PALINDROME_CEILING {
        return Err(ConjectureError::CeilingExceeded {
            what: "palindrome scan",
            value: k,
            ceiling: PALINDROME_CEILING,
        });
    }
    let half = k.div_ceil(2);
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut word = vec![0u8; k];
    for bits in 0u32..(1u32 << half) {
        for i in 0..half {
            let bit = ((bits >> i) & 1) as u8;
            word[i] = bit;
            word[k - 1 - i] = bit;
        }
        seen.insert(palindrome_prefix_set(&word));
    }
    Ok(seen.len())
}

/// One row of the `a_k = b_{k+1}` comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureOneRow {
    pub k: usize,
    pub a_k: usize,
    pub b_next: usize,
    pub equal: bool,
}

/// Result of comparing `a_k` with `b_{k+1}` for `k = 3..=kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureOneReport {
    pub rows: Vec<ConjectureOneRow>,
    /// True when every tested `k` gives equality.
    pub holds: bool,
}

/// Tests `a_k = b_{k+1}` for each `k` in `3..=kmax`.  `wilf_ceiling`
/// bounds the `k!` scans exactly as in
/// [`wilf_autocorrelation_classes`].
pub fn check_conjecture_one(
    kmax: usize,
    wilf_ceiling: usize,
) -> Result<ConjectureOneReport, ConjectureError> {
    let mut rows = Vec::new();
    for k in 3..=kmax {
        let a_k = wilf_autocorrelation_classes(k, wilf_ceiling)?.count();
        let b_next = palindrome_prefix_count(k + 1)?;
        rows.push(ConjectureOneRow {
            k,
            a_k,
            b_next,
            equal: a_k == b_next,
        });
    }
    let holds = rows.iter().all(|r| r.equal);
    Ok(ConjectureOneReport { rows, holds })
}

/// First failure of `|S_n(τ)| ≤ |S_n(id_k)|` for one τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BonaViolation {
    pub n: usize,
    pub tau_count: Int,
    pub identity_count: Int,
}

/// Comparison of one τ's avoider counts against the identity's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BonaRow {
    pub tau: Permutation,
    pub holds: bool,
    pub first_violation: Option<BonaViolation>,
}

/// Result of the identity-maximality check over all of `S_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BonaReport {
    pub k: usize,
    pub nmax: usize,
    pub rows: Vec<BonaRow>,
    pub violations: usize,
}

const BONA_K_CEILING: usize = 5;
const BONA_N_CEILING: usize = 20;

fn series_int_coeffs(series: &Series) -> Vec<Int> {
    series
        .coeffs()
        .iter()
        .map(|c| {
            c.as_constant()
                .expect("marker-free series coefficient")
                .to_integer()
        })
        .collect()
}

/// Checks `|S_n(τ)| ≤ |S_n(id_k)|` for every `τ ∈ S_k` and `n ≤ nmax`,
/// with both sides computed through the cluster-method avoider series.
/// Requires `2 ≤ k ≤ 5` and `nmax ≤ 20`.
pub fn check_bona(k: usize, nmax: usize) -> Result<BonaReport, ConjectureError> {
    if k > BONA_K_CEILING {
        return Err(ConjectureError::CeilingExceeded {
            what: "identity-maximality scan",
            value: k,
            ceiling: BONA_K_CEILING,
        });
    }
    if nmax > BONA_N_CEILING {
        return Err(ConjectureError::CeilingExceeded {
            what: "identity-maximality series order",
            value: nmax,
            ceiling: BONA_N_CEILING,
        });
    }
    let identity = Permutation::identity(k);
    let id_series = avoider_series(&check_antichain(vec![identity])?, nmax)?;
    let id_counts = series_int_coeffs(&id_series);

    let mut rows = Vec::new();
    for tau in enumerate_permutations(k, BONA_K_CEILING)? {
        let series = avoider_series(&check_antichain(vec![tau.clone()])?, nmax)?;
        let counts = series_int_coeffs(&series);
        let first_violation = (0..=nmax).find_map(|n| {
            (counts[n] > id_counts[n]).then(|| BonaViolation {
                n,
                tau_count: counts[n].clone(),
                identity_count: id_counts[n].clone(),
            })
        });
        rows.push(BonaRow {
            tau,
            holds: first_violation.is_none(),
            first_violation,
        });
    }
    let violations = rows.iter().filter(|r| !r.holds).count();
    Ok(BonaReport {
        k,
        nmax,
        rows,
        violations,
    })
}

/// Shaded boxes of the mesh pattern: box `(a, b)` spans positions
/// strictly between the `a`-th and `(a+1)`-th chosen positions and
/// values strictly between the `b`-th and `(b+1)`-th chosen values
/// (index 0 = below everything, 4 = above everything).
const MESH_SHADED: [(usize, usize); 10] = [
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 3),
    (2, 0),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
];

fn contains_mesh_p_with(pi: &Permutation, prefix: &mut [i32]) -> bool {
    let n = pi.len();
    if n < 3 {
        return false;
    }
    let v = pi.values();
    let stride = n + 1;
    debug_assert_eq!(prefix.len(), stride * stride);
    // prefix[i * stride + w] = #{ j ≤ i : π_j ≤ w }.
    for w in 0..stride {
        prefix[w] = 0;
    }
    for i in 1..=n {
        let vi = v[i - 1] as usize;
        for w in 0..stride {
            prefix[i * stride + w] =
                prefix[(i - 1) * stride + w] + i32::from(vi <= w);
        }
    }
    // Points strictly inside (p_lo, p_hi) × (v_lo, v_hi); the virtual
    // outer boundaries n+1 enter only as p_hi − 1 = n and v_hi − 1 = n.
    let inside = |p_lo: usize, p_hi: usize, v_lo: usize, v_hi: usize| -> i32 {
        prefix[(p_hi - 1) * stride + (v_hi - 1)] - prefix[p_lo * stride + (v_hi - 1)]
            - prefix[(p_hi - 1) * stride + v_lo]
            + prefix[p_lo * stride + v_lo]
    };
    for i1 in 1..=n {
        let a = v[i1 - 1] as usize;
        for i2 in i1 + 1..=n {
            let b = v[i2 - 1] as usize;
            if b <= a {
                continue;
            }
            for i3 in i2 + 1..=n {
                let c = v[i3 - 1] as usize;
                if !(a < c && c < b) {
                    continue;
                }
                let pos = [0, i1, i2, i3, n + 1];
                let val = [0, a, c, b, n + 1];
                if MESH_SHADED
                    .iter()
                    .all(|&(pa, vb)| inside(pos[pa], pos[pa + 1], val[vb], val[vb + 1]) == 0)
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether π contains the shaded mesh refinement of 132: an occurrence
/// needs positions `i₁ < i₂ < i₃` with `π(i₁) < π(i₃) < π(i₂)` and
/// every shaded box of [`MESH_SHADED`] free of other points of π.
pub fn contains_mesh_p(pi: &Permutation) -> bool {
    let stride = pi.len() + 1;
    let mut prefix = vec![0i32; stride * stride];
    contains_mesh_p_with(pi, &mut prefix)
}

/// The number of permutations in `S_n` avoiding the mesh pattern, by
/// exhaustive scan (`n ≤ 11`).
pub fn mesh_p_count(n: usize) -> Result<usize, ConjectureError> {
    if n > MESH_CEILING {
        return Err(ConjectureError::CeilingExceeded {
            what: "mesh-pattern scan",
            value: n,
            ceiling: MESH_CEILING,
        });
    }
    let stride = n + 1;
    let mut prefix = vec![0i32; stride * stride];
    let mut avoiders = 0usize;
    for pi in enumerate_permutations(n, MESH_CEILING)? {
        if !contains_mesh_p_with(&pi, &mut prefix) {
            avoiders += 1;
        }
    }
    Ok(avoiders)
}

/// One row of the mesh-series comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshSeriesRow {
    pub n: usize,
    pub scan_count: usize,
    pub series_count: Int,
    pub equal: bool,
}

/// Result of comparing the mesh-pattern scan against the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshSeriesReport {
    pub rows: Vec<MeshSeriesRow>,
    pub agrees: bool,
}

/// The conjectured generating function for mesh-pattern avoiders:
/// `Σ_{m≥0} m! y^m` at `y = x/(1 + x²)`, truncated at `order`.
pub fn mesh_p_series(order: usize) -> Result<Series, ConjectureError> {
    let reg = VarRegistry::x_only();
    let x = Poly::x(&reg);
    let one = Poly::one(&reg);
    let inner = RatFun::new(x.clone(), one.checked_add(&x.checked_mul(&x)?)?)?;
    let y = series_from_rational(&inner, order)?;
    Ok(fsum_series(&y, order)?)
}

/// Compares [`mesh_p_count`] against the coefficients of
/// [`mesh_p_series`] for every `n ≤ nmax`.
pub fn mesh_p_series_check(nmax: usize) -> Result<MeshSeriesReport, ConjectureError> {
    let series = mesh_p_series(nmax)?;
    let mut rows = Vec::new();
    for n in 0..=nmax {
        let scan_count = mesh_p_count(n)?;
        let series_count = series
            .coeff(n)
            .as_constant()
            .expect("marker-free series coefficient")
            .to_integer();
        rows.push(MeshSeriesRow {
            n,
            scan_count,
            series_count: series_count.clone(),
            equal: Int::from(scan_count) == series_count,
        });
    }
    let agrees = rows.iter().all(|r| r.equal);
    Ok(MeshSeriesReport { rows, agrees })
}
