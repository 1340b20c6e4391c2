//! Distribution, avoider, and end-pattern series, plus independent
//! closed-form oracles.
//!
//! The central identity: permutations decompose as sequences of slots,
//! each slot a single letter or a cluster, so with
//! `fsum(y) = Σ_m m!·y^m`,
//!
//! ```text
//! Σ_π  Π_τ u_τ^{τ(π)} · x^{|π|}  =  fsum(x + C(u−1; x)),
//! ```
//!
//! where `C` is the cluster generating function and `u−1` means every
//! marker is shifted down by one.  Setting all markers to 0 (i.e. −1
//! inside `C`) counts avoiders.
//!
//! The closed forms at the bottom of the module (Hertzsprung's double
//! sum, Myers' formula for non-self-overlapping patterns, the
//! Jackson–Read generating functions) are computed directly from their
//! defining sums, with no cluster machinery involved, so agreement with
//! the series pipeline is meaningful evidence for both.

use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cluster::{
    cluster_gf, cluster_gf_at, cluster_gf_end_in, correlation_poly, is_self_overlapping,
    ClusterError, PatternSet,
};
use crate::perm::{count_occurrences, enumerate_permutations, PermError, Permutation};
use crate::poly::{fsum_series, series_from_rational, PolyError, VarRegistry};
use crate::{Int, Poly, Rat, RatFun, Series};

/// Errors from distribution computations.
#[derive(Debug, Error, PartialEq)]
pub enum DistError {
    /// Myers' formula requires a non-self-overlapping pattern.
    #[error("pattern {0} overlaps itself; the non-overlapping count formula does not apply")]
    SelfOverlapping(Permutation),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn minus_one() -> Rat {
    -Rat::one()
}

/// `Σ_{π∈S_n} Π_τ u_τ^{τ(π)}` as the coefficient of `x^n`, for n ≤ N:
/// the joint distribution of all patterns of `set`, via
/// `fsum(x + C(u−1; x))`.
pub fn joint_distribution_series(set: &PatternSet, order: usize) -> Result<Series, DistError> {
    let c = cluster_gf(set)?.shift_all_markers_down();
    let inner = c.add_poly(&Poly::x(set.registry()))?;
    Ok(fsum_series(&series_from_rational(&inner, order)?, order)?)
}

/// `Σ_n |S_n(T)| x^n` truncated at N: all markers sent to 0, i.e.
/// `fsum(x + C(−1; x))`.  Returned over the plain `x` registry.
pub fn avoider_series(set: &PatternSet, order: usize) -> Result<Series, DistError> {
    let c = cluster_gf_at(set, &minus_one())?;
    let inner = c.add_poly(&Poly::x(set.registry()))?;
    let series = fsum_series(&series_from_rational(&inner, order)?, order)?;
    Ok(project_marker_free(&series))
}

/// `Σ_n f^α(n) x^n` truncated at N, where `f^α(n)` counts permutations
/// of [n] avoiding `set` except for a single occurrence of α as a
/// suffix: `F^α(−1; x) = C^α(−1; x) · Σ_{m≥1} m!·(x + C(−1; x))^{m−1}`
/// (the final slot of the decomposition is forced to be the α-cluster).
pub fn end_pattern_series(
    set: &PatternSet,
    alpha: &Permutation,
    order: usize,
) -> Result<Series, DistError> {
    let reg = set.registry();
    let c_alpha = cluster_gf_end_in(set, alpha)?.substitute_all_markers(&minus_one())?;
    let c = cluster_gf_at(set, &minus_one())?;
    let inner = c.add_poly(&Poly::x(reg))?;
    let slot = series_from_rational(&inner, order)?;

    // Σ_{m≥1} m!·slot^{m−1}: slot has valuation 1, so the sum is finite.
    let mut one_coeffs = vec![Poly::zero(reg); order + 1];
    one_coeffs[0] = Poly::one(reg);
    let mut power = Series::from_coeffs(reg, one_coeffs)?;
    let mut acc = Series::zero(reg, order);
    let mut factorial = Rat::one();
    for m in 1..=order + 1 {
        factorial = factorial * Rat::from_integer(m.into());
        acc = acc.add(&power.scale(&factorial))?;
        power = power.mul(&slot)?;
        if power.is_zero() {
            break;
        }
    }

    let result = series_from_rational(&c_alpha, order)?.mul(&acc)?;
    Ok(project_marker_free(&result))
}

/// Oracle by definition: `Σ_{π∈S_n} Π_τ u_τ^{count of occurrences}`,
/// found by scanning all of S_n.
pub fn brute_force_distribution(set: &PatternSet, n: usize) -> Result<Poly, DistError> {
    let reg = set.registry();
    let mut acc = Poly::zero(reg);
    for pi in enumerate_permutations(n, crate::DEFAULT_BRUTE_CEILING)? {
        let mut exps = vec![0u16; reg.var_count()];
        for (i, pat) in set.patterns().iter().enumerate() {
            exps[i] = count_occurrences(pat, &pi) as u16;
        }
        acc = &acc + &Poly::from_exponents(reg, &exps, Rat::one());
    }
    Ok(acc)
}

/// The Corollary-3 inner function for a single pattern τ:
/// `x + (u−1)·x^{|τ|} / (1 − (u−1)·Ω(τ,τ))`, over the registry {u_τ, x}.
/// Feeding it to `fsum` yields the distribution of τ-occurrences.
pub fn single_pattern_gf(tau: &Permutation) -> Result<RatFun, DistError> {
    let reg = VarRegistry::new(vec![tau.clone()]);
    let u_minus_1 = &Poly::marker(&reg, 0) - &Poly::one(&reg);
    let omega = correlation_poly(tau, tau).lift(&reg)?;
    let num = &u_minus_1 * &Poly::x_pow(&reg, tau.len() as u16);
    let den = &Poly::one(&reg) - &(&u_minus_1 * &omega);
    Ok(RatFun::new(num, den)?.add_poly(&Poly::x(&reg))?)
}

/// Hertzsprung's closed form for the number of permutations of [n] with
/// no two neighbouring letters differing by one (rising or falling):
/// `n! + Σ_{k=1}^{n} (−1)^k Σ_i C(k−1, i−1)·C(n−k, i)·2^i·(n−k)!`.
pub fn hertzsprung_closed_form(n: usize) -> Int {
    let mut total = factorial(n);
    for k in 1..=n {
        let mut inner = Int::zero();
        for i in 1..=k.min(n - k) {
            inner += binomial(Int::from(k - 1), Int::from(i - 1))
                * binomial(Int::from(n - k), Int::from(i))
                * Int::from(2).pow(i as u32)
                * factorial(n - k);
        }
        if k % 2 == 1 {
            total -= inner;
        } else {
            total += inner;
        }
    }
    total
}

/// Myers' count of permutations of [n] with exactly `m` occurrences of a
/// non-self-overlapping pattern τ of length k:
/// `Σ_i (−1)^{i−m} C(i,m)·C(n−(k−1)i, i)·(n−(k−1)i)!`, the index running
/// over all i ≥ m with n−(k−1)i ≥ 0.
pub fn myers_count(tau: &Permutation, n: usize, m: usize) -> Result<Int, DistError> {
    assert!(!tau.is_empty(), "pattern must be nonempty");
    if is_self_overlapping(tau) {
        return Err(DistError::SelfOverlapping(tau.clone()));
    }
    let k = tau.len();
    let mut total = Int::zero();
    let mut i = m;
    while n >= (k - 1) * i && i <= n {
        let rest = n - (k - 1) * i;
        let term = binomial(Int::from(i), Int::from(m))
            * binomial(Int::from(rest), Int::from(i))
            * factorial(rest);
        if (i - m) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        i += 1;
    }
    Ok(total)
}

/// Which Jackson–Read pattern family to count avoiders of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacksonVariant {
    /// Avoiders of the single run pattern id_k = 12⋯k.
    Single,
    /// Avoiders of both id_k and its reverse k⋯21.
    Pair,
}

/// The Jackson–Read avoider series: `fsum((x − x^k)/(1 − x^k))` for runs
/// of length k in one direction, `fsum((x − 2x^k + x^{k+1})/(1 − x^k))`
/// for both directions.  k = 2 in the two-sided variant is Hertzsprung's
/// problem.
pub fn jackson_read_gf(k: usize, variant: JacksonVariant, order: usize) -> Result<Series, DistError> {
    assert!(k >= 2, "run length k must be at least 2");
    let reg = VarRegistry::x_only();
    let x = Poly::x(&reg);
    let num = match variant {
        JacksonVariant::Single => &x - &Poly::x_pow(&reg, k as u16),
        JacksonVariant::Pair => {
            &(&x - &Poly::x_pow(&reg, k as u16).scale(&Rat::from_integer(2.into())))
                + &Poly::x_pow(&reg, k as u16 + 1)
        }
    };
    let den = &Poly::one(&reg) - &Poly::x_pow(&reg, k as u16);
    let inner = RatFun::new(num, den)?;
    Ok(fsum_series(&series_from_rational(&inner, order)?, order)?)
}

/// The distribution of id_k-occurrences:
/// `Σ_m m!·x^m·((1 − ux − (1−u)x^{k−1})/(1 − ux − (1−u)x^k))^m`,
/// i.e. `fsum` of `x` times that rational function, over the registry
/// {u_{id_k}, x}.  Agrees with [`single_pattern_gf`] for id_k both as a
/// rational function and as a series.
pub fn jackson_id_distribution(k: usize, order: usize) -> Result<Series, DistError> {
    assert!(k >= 2, "run length k must be at least 2");
    let reg = VarRegistry::new(vec![Permutation::identity(k)]);
    let r = jackson_inner_rational(&reg, k)?;
    Ok(fsum_series(&series_from_rational(&r, order)?, order)?)
}

/// `x·(1 − ux − (1−u)x^{k−1}) / (1 − ux − (1−u)x^k)` over `reg`
/// (markers `[id_k]`), the inner function of [`jackson_id_distribution`].
pub fn jackson_inner_rational(reg: &crate::poly::RegistryRef, k: usize) -> Result<RatFun, DistError> {
    let u = Poly::marker(reg, 0);
    let x = Poly::x(reg);
    let one = Poly::one(reg);
    let one_minus_u = &one - &u;
    let ux = &u * &x;
    let num = &x * &(&(&one - &ux) - &(&one_minus_u * &Poly::x_pow(reg, k as u16 - 1)));
    let den = &(&one - &ux) - &(&one_minus_u * &Poly::x_pow(reg, k as u16));
    Ok(RatFun::new(num, den)?)
}

fn factorial(n: usize) -> Int {
    let mut f = Int::one();
    for i in 2..=n {
        f *= Int::from(i);
    }
    f
}

/// Strips a marker-free series down to the plain `x` registry.
fn project_marker_free(series: &Series) -> Series {
    let reg = VarRegistry::x_only();
    let coeffs = series
        .coeffs()
        .iter()
        .map(|c| {
            let v = c
                .as_constant()
                .expect("marker-free series has constant coefficients");
            Poly::constant(&reg, v)
        })
        .collect();
    Series::from_coeffs(&reg, coeffs).expect("constants are valid coefficients")
}
