//! Overlap sets, correlation polynomials, the weighted transfer digraph,
//! and cluster generating functions.
//!
//! A *T-cluster* is a pair (π, M) where M is a set of marked pattern
//! occurrences that covers π and whose overlap graph is connected.  The
//! generating function C(**u**; x) of clusters by length and marks is
//! rational: walks in a digraph D_T whose vertices are ε and the patterns
//! of T, with edge weights built from correlation polynomials Ω(σ,τ),
//! generate exactly the clusters, and the transfer-matrix method turns
//! the walk sum into a quotient of determinants.
//!
//! The correlation polynomial is
//! `Ω(σ,τ) = Σ_i χ_i(σ,τ) · x^{|τ|−i}`, where `χ_i = 1` iff the last `i`
//! letters of σ minus the first `i` letters of τ are all equal and the
//! common difference is `|σ|−i` or `−(|τ|−i)`.  Each admissible `i` also
//! yields, constructively, the unique overlapping permutation of length
//! `|σ|+|τ|−i`, so the overlap set never requires enumerating S_n.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::perm::{enumerate_permutations, find_occurrences, PermError, Permutation};
use crate::poly::{PolyError, RegistryRef, VarRegistry};
use crate::{Poly, PolyMat, Rat, RatFun};

/// Errors from pattern-set validation and cluster computation.
#[derive(Debug, Error, PartialEq)]
pub enum ClusterError {
    /// Two identical patterns were supplied.
    #[error("duplicate pattern {0}")]
    DuplicatePattern(Permutation),
    /// Patterns must have length ≥ 2 to participate in avoidance.
    #[error("pattern {0} is too short (length ≥ 2 required)")]
    PatternTooShort(Permutation),
    /// The set is not an antichain: one pattern occurs inside another.
    #[error("not an antichain: {contained} occurs in {container} at position {position}")]
    NotAntichain {
        container: Permutation,
        contained: Permutation,
        position: usize,
    },
    /// χ_i was asked for an overlap amount outside 1..min(|σ|,|τ|)−1.
    #[error("overlap amount {i} out of range 1..={max}")]
    OverlapOutOfRange { i: usize, max: usize },
    /// The end-in-α pattern must belong to the set.
    #[error("pattern {0} is not a member of the set")]
    AlphaNotInSet(Permutation),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An ordered antichain of Hertzsprung patterns with its marker registry.
///
/// The input order is fixed at construction: vertex order in the transfer
/// digraph, marker order in the registry, and the minor indices of the
/// determinant formula all refer to it.
#[derive(Clone, Debug)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
    registry: RegistryRef,
}

impl PatternSet {
    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Registry with one marker per pattern, in set order, plus `x`.
    pub fn registry(&self) -> &RegistryRef {
        &self.registry
    }

    pub fn index_of(&self, pattern: &Permutation) -> Option<usize> {
        self.patterns.iter().position(|p| p == pattern)
    }
}

/// Validates that `patterns` form an antichain: distinct, each of length
/// ≥ 2, and no pattern a Hertzsprung factor of another.  The violation
/// report names the offending pair and position.
pub fn check_antichain(patterns: Vec<Permutation>) -> Result<PatternSet, ClusterError> {
    for p in &patterns {
        if p.len() < 2 {
            return Err(ClusterError::PatternTooShort(p.clone()));
        }
    }
    for (i, p) in patterns.iter().enumerate() {
        if patterns[..i].contains(p) {
            return Err(ClusterError::DuplicatePattern(p.clone()));
        }
    }
    for a in &patterns {
        for b in &patterns {
            if a == b {
                continue;
            }
            if let Some(&d) = find_occurrences(a, b).first() {
                return Err(ClusterError::NotAntichain {
                    container: b.clone(),
                    contained: a.clone(),
                    position: d,
                });
            }
        }
    }
    let registry = VarRegistry::new(patterns.clone());
    Ok(PatternSet { patterns, registry })
}

/// Reduction mode: drops every pattern that contains another member (such
/// a pattern is redundant for avoidance), then validates the rest.
/// Returns the reduced set together with the dropped patterns.
pub fn check_antichain_reduced(
    patterns: Vec<Permutation>,
) -> Result<(PatternSet, Vec<Permutation>), ClusterError> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut dropped: Vec<Permutation> = Vec::new();
    for p in &patterns {
        if kept.contains(p) || dropped.contains(p) {
            continue; // silently dedupe in reduction mode
        }
        let contains_other = patterns
            .iter()
            .any(|q| q != p && !find_occurrences(q, p).is_empty());
        if contains_other {
            dropped.push(p.clone());
        } else {
            kept.push(p.clone());
        }
    }
    Ok((check_antichain(kept)?, dropped))
}

/// χ_i(σ,τ): 1 iff the last `i` letters of σ minus the first `i` letters
/// of τ are all equal, with common difference `|σ|−i` or `−(|τ|−i)`.
pub fn chi(sigma: &Permutation, tau: &Permutation, i: usize) -> Result<bool, ClusterError> {
    let max = sigma.len().min(tau.len()).saturating_sub(1);
    if i < 1 || i > max {
        return Err(ClusterError::OverlapOutOfRange { i, max });
    }
    let s = sigma.values();
    let t = tau.values();
    let d = s[s.len() - i] as i32 - t[0] as i32;
    for j in 1..i {
        if s[s.len() - i + j] as i32 - t[j] as i32 != d {
            return Ok(false);
        }
    }
    Ok(d == (sigma.len() - i) as i32 || d == -((tau.len() - i) as i32))
}

/// Ω(σ,τ) = Σ_i χ_i(σ,τ) x^{|τ|−i}, a polynomial in `x` alone.
///
/// Coefficient of `x^d` counts the overlap permutations of length |σ|+d.
pub fn correlation_poly(sigma: &Permutation, tau: &Permutation) -> Poly {
    let reg = VarRegistry::x_only();
    let mut out = Poly::zero(&reg);
    let max = sigma.len().min(tau.len()).saturating_sub(1);
    for i in 1..=max {
        if chi(sigma, tau, i).expect("i in range") {
            out = &out + &Poly::x_pow(&reg, (tau.len() - i) as u16);
        }
    }
    out
}

/// The permutations π with σ a proper Hertzsprung prefix, τ a proper
/// Hertzsprung suffix, and |π| < |σ|+|τ|.
///
/// Built constructively: each admissible overlap amount `i` determines π
/// uniquely.  When the common difference is `|σ|−i`, σ sits literally at
/// the bottom and the tail of τ is shifted up; when it is `−(|τ|−i)`,
/// τ sits literally at the top... more precisely τ is the literal suffix
/// and σ is shifted up by `|τ|−i`.
pub fn overlap_set(sigma: &Permutation, tau: &Permutation) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    let (s, t) = (sigma.values(), tau.values());
    let max = sigma.len().min(tau.len()).saturating_sub(1);
    for i in 1..=max {
        if !chi(sigma, tau, i).expect("i in range") {
            continue;
        }
        let d = s[s.len() - i] as i32 - t[0] as i32;
        let mut values: Vec<u16> = Vec::with_capacity(sigma.len() + tau.len() - i);
        if d == (sigma.len() - i) as i32 {
            // σ literal, tail of τ shifted up by |σ|−i.
            values.extend_from_slice(s);
            values.extend(t[i..].iter().map(|&v| v + (sigma.len() - i) as u16));
        } else {
            // τ literal suffix, σ shifted up by |τ|−i.
            values.extend(s.iter().map(|&v| v + (tau.len() - i) as u16));
            values.extend_from_slice(&t[i..]);
        }
        out.insert(Permutation::new(values).expect("overlap construction yields a permutation"));
    }
    out
}

/// True iff τ overlaps itself, i.e. Ω(τ,τ) ≠ 0.
pub fn is_self_overlapping(tau: &Permutation) -> bool {
    !correlation_poly(tau, tau).is_zero()
}

/// The weighted digraph D_T: vertices `[ε, τ_1, …, τ_t]` in set order,
/// adjacency matrix `A` with `w(σ,τ) = 0` into ε, `u_τ x^{|τ|}` out of ε,
/// and `u_τ Ω(σ,τ)` between patterns.
#[derive(Clone, Debug)]
pub struct TransferDigraph {
    set: PatternSet,
    adjacency: PolyMat,
}

impl TransferDigraph {
    pub fn set(&self) -> &PatternSet {
        &self.set
    }

    /// Adjacency matrix over the set's registry, dimension `t+1`.
    pub fn adjacency(&self) -> &PolyMat {
        &self.adjacency
    }

    /// Vertex name for 1-based index (1 is ε).
    pub fn vertex_name(&self, i: usize) -> String {
        if i == 1 {
            "ε".to_string()
        } else {
            self.set.patterns()[i - 2].to_string()
        }
    }

    /// Nonzero edges as (source, target, weight) in row-major order, for
    /// the CLI's "σ -> τ : weight" rendering.
    pub fn edges(&self) -> Vec<(String, String, Poly)> {
        let d = self.adjacency.dim();
        let mut out = Vec::new();
        for i in 1..=d {
            for j in 1..=d {
                let w = self.adjacency.entry(i, j);
                if !w.is_zero() {
                    out.push((self.vertex_name(i), self.vertex_name(j), w.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for TransferDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (src, dst, w) in self.edges() {
            writeln!(f, "{src} -> {dst} : {w}")?;
        }
        Ok(())
    }
}

/// Builds D_T for an antichain T.
pub fn build_transfer_digraph(set: &PatternSet) -> TransferDigraph {
    let reg = set.registry();
    let t = set.len();
    let mut rows = vec![vec![Poly::zero(reg); t + 1]; t + 1];
    for (j, tau) in set.patterns().iter().enumerate() {
        let marker = Poly::marker(reg, j);
        // ε → τ: weight u_τ x^{|τ|}.
        rows[0][j + 1] = &marker * &Poly::x_pow(reg, tau.len() as u16);
        // σ → τ: weight u_τ Ω(σ,τ).
        for (i, sigma) in set.patterns().iter().enumerate() {
            let omega = correlation_poly(sigma, tau)
                .lift(reg)
                .expect("x lifts into any registry");
            rows[i + 1][j + 1] = &marker * &omega;
        }
    }
    let adjacency = PolyMat::from_rows(reg, rows).expect("square by construction");
    TransferDigraph {
        set: set.clone(),
        adjacency,
    }
}

/// Shared Cramer step: given the adjacency matrix of a digraph whose
/// first vertex is ε, sums the first row of `(1−A)^{-1}` over the t
/// pattern columns: `Σ_{i=1}^{t} (−1)^i det(1−A : i+1, 1) / det(1−A)`.
fn walk_sum(adjacency: &PolyMat, t: usize) -> Result<RatFun, ClusterError> {
    let one_minus = adjacency.one_minus();
    let det = one_minus.det_bareiss()?;
    let mut num = Poly::zero(adjacency.registry());
    for i in 1..=t {
        let minor_det = one_minus.minor(i + 1, 1)?.det_bareiss()?;
        num = if i % 2 == 1 {
            &num - &minor_det
        } else {
            &num + &minor_det
        };
    }
    Ok(RatFun::new(num, det)?)
}

/// The cluster generating function C(**u**; x) of Theorem-2 shape:
/// exact rational function over the set's registry.
pub fn cluster_gf(set: &PatternSet) -> Result<RatFun, ClusterError> {
    let dg = build_transfer_digraph(set);
    walk_sum(dg.adjacency(), set.len())
}

/// C(**u**; x) with every marker already substituted by `value` —
/// algebraically identical to substituting into [`cluster_gf`] (the
/// substitution is a ring homomorphism, so it commutes with the
/// determinants) but far cheaper for large sets, since the elimination
/// runs over polynomials in `x` alone.  Avoidance and class counting use
/// `value = −1`.
pub fn cluster_gf_at(set: &PatternSet, value: &Rat) -> Result<RatFun, ClusterError> {
    let dg = build_transfer_digraph(set);
    let reg = set.registry();
    let t = set.len();
    let mut rows = vec![vec![Poly::zero(reg); t + 1]; t + 1];
    for i in 1..=t + 1 {
        for j in 1..=t + 1 {
            rows[i - 1][j - 1] = dg.adjacency().entry(i, j).substitute_all_markers(value);
        }
    }
    let substituted = PolyMat::from_rows(reg, rows).expect("square by construction");
    walk_sum(&substituted, t)
}

/// The end-in-α cluster generating function C^α(**u**; x): marked
/// permutations whose final |α| letters are an *unmarked* occurrence of α
/// completing a cluster.  Computed over the extended digraph D_T^α with
/// vertex order `[ε, T…, α̂]`, where the α̂ column carries the unmarked
/// weights `x^{|α|}` (from ε) and `Ω(σ,α)` (from σ ∈ T):
/// `C^α = (−1)^{|T|+1} det(1−A : |T|+2, 1) / det(1−A)`.
pub fn cluster_gf_end_in(set: &PatternSet, alpha: &Permutation) -> Result<RatFun, ClusterError> {
    if set.index_of(alpha).is_none() {
        return Err(ClusterError::AlphaNotInSet(alpha.clone()));
    }
    let reg = set.registry();
    let t = set.len();
    let dg = build_transfer_digraph(set);
    let mut rows = vec![vec![Poly::zero(reg); t + 2]; t + 2];
    for i in 1..=t + 1 {
        for j in 1..=t + 1 {
            rows[i - 1][j - 1] = dg.adjacency().entry(i, j).clone();
        }
    }
    // α̂ column: unmarked weights; α̂ row stays zero.
    rows[0][t + 1] = Poly::x_pow(reg, alpha.len() as u16);
    for (i, sigma) in set.patterns().iter().enumerate() {
        rows[i + 1][t + 1] = correlation_poly(sigma, alpha)
            .lift(reg)
            .expect("x lifts into any registry");
    }
    let adjacency = PolyMat::from_rows(reg, rows).expect("square by construction");
    let one_minus = adjacency.one_minus();
    let det = one_minus.det_bareiss()?;
    let minor_det = one_minus.minor(t + 2, 1)?.det_bareiss()?;
    let num = if (t + 1) % 2 == 1 {
        minor_det.neg_ref()
    } else {
        minor_det
    };
    Ok(RatFun::new(num, det)?)
}

/// Oracle by definition: Σ over all T-clusters (π, M) with |π| = n of the
/// marker monomial **u**_M, found by enumerating S_n, listing every
/// occurrence of every pattern, and testing each subset of occurrences
/// for cover and overlap-graph connectivity.
pub fn brute_force_clusters(set: &PatternSet, n: usize) -> Result<Poly, ClusterError> {
    if n > crate::DEFAULT_BRUTE_CEILING {
        return Err(PermError::CeilingExceeded {
            n,
            ceiling: crate::DEFAULT_BRUTE_CEILING,
        }
        .into());
    }
    let reg = set.registry();
    let mut acc = Poly::zero(reg);
    if n < 2 {
        return Ok(acc); // a cluster has |π| ≥ 2
    }
    let full: u32 = (1u32 << n) - 1;
    for pi in enumerate_permutations(n, crate::DEFAULT_BRUTE_CEILING)? {
        // Occurrences as (pattern index, position bitmap).
        let mut occs: Vec<(usize, u32)> = Vec::new();
        for (pidx, pat) in set.patterns().iter().enumerate() {
            for d in find_occurrences(pat, &pi) {
                let mask = ((1u32 << pat.len()) - 1) << (d - 1);
                occs.push((pidx, mask));
            }
        }
        if occs.iter().fold(0, |m, &(_, b)| m | b) != full {
            continue; // not even the full occurrence set covers π
        }
        for subset in 1u32..(1 << occs.len()) {
            let chosen: Vec<usize> =
                (0..occs.len()).filter(|&k| subset >> k & 1 == 1).collect();
            let cover = chosen.iter().fold(0, |m, &k| m | occs[k].1);
            if cover != full {
                continue;
            }
            if !overlap_graph_connected(&chosen, &occs) {
                continue;
            }
            let mut exps = vec![0u16; reg.var_count()];
            for &k in &chosen {
                exps[occs[k].0] += 1;
            }
            acc = &acc + &Poly::from_exponents(reg, &exps, Rat::from_integer(1.into()));
        }
    }
    Ok(acc)
}

/// Connectivity of the overlap graph: vertices are the chosen
/// occurrences, edges join occurrences sharing at least one letter.
fn overlap_graph_connected(chosen: &[usize], occs: &[(usize, u32)]) -> bool {
    let m = chosen.len();
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for w in 0..m {
            if !seen[w] && occs[chosen[v]].1 & occs[chosen[w]].1 != 0 {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == m
}
