//! Exact enumeration of permutations by Hertzsprung patterns.
//!
//! A *Hertzsprung pattern* τ occurs in a permutation π when a factor of π
//! (consecutive positions) matches τ in both relative order and consecutive
//! values — equivalently, the factor standardizes to τ and its value set is
//! an integer interval.  This crate computes, with exact rational
//! arithmetic throughout:
//!
//! - joint distributions of occurrence counts over sets of patterns, via
//!   the Goulden–Jackson cluster method driven by a transfer-matrix
//!   digraph ([`cluster`], [`dist`]);
//! - avoidance counts, their classical closed forms, and
//!   "first ending in α" analogues of Penney's game ([`dist`]);
//! - pattern-rewriting systems on permutations: termination certificates,
//!   local-confluence analysis à la Newman, and equivalence-class counting
//!   ([`rewrite`]);
//! - exhaustive scans behind three conjectures on autocorrelation sets,
//!   binary palindromes, and one fixed mesh pattern ([`conjecture`]).
//!
//! Every symbolic pipeline has a brute-force counterpart used as an oracle
//! in the test suite; nothing is trusted to algebra alone.
//!
//! The algebra layer ([`poly`]) is generic over its coefficient scalar;
//! the concrete instantiations used everywhere else are the exact-rational
//! aliases below.

pub mod cluster;
pub mod conjecture;
pub mod dist;
pub mod perm;
pub mod poly;
pub mod rewrite;

/// Exact rational scalar: arbitrary-precision, always reduced, denominator positive.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Sparse multivariate polynomial over [`Rat`] in `x` and one marker per pattern.
pub type Poly = poly::MultiPoly<Rat>;
/// Quotient of two [`Poly`]s, kept unreduced, sign-normalized.
pub type RatFun = poly::RationalFunction<Rat>;
/// Dense matrix of [`Poly`] entries.
pub type PolyMat = poly::PolyMatrix<Rat>;
/// Power series in `x` truncated at a fixed order, coefficients [`Poly`] in markers only.
pub type Series = poly::TruncatedSeries<Rat>;

/// Default ceiling for brute-force permutation scans (n! enumeration).
pub const DEFAULT_BRUTE_CEILING: usize = 8;
/// Default ceiling for exhaustive equivalence-class computation.
pub const DEFAULT_CLASS_CEILING: usize = 9;
/// Default truncation order for generating-function output.
pub const DEFAULT_SERIES_ORDER: usize = 20;
