//! Exact polynomial, rational-function, matrix, and power-series arithmetic.
//!
//! Everything here is generic over a coefficient scalar implementing
//! [`Coeff`]; the rest of the crate instantiates it with
//! [`crate::Rat`] (arbitrary-precision rationals), keeping every
//! computation exact.  Polynomials live in one variable `x` plus one
//! *marker* variable `u_τ` per registered pattern τ; the registry fixes
//! the marker order because the transfer-matrix minor indices depend on
//! it.
//!
//! Monomials are ordered graded-lexicographically with `x` last, and all
//! printing walks terms in descending order of that ordering, so text
//! output is canonical.

mod matrix;
mod ratfun;
mod series;

pub use matrix::PolyMatrix;
pub use ratfun::RationalFunction;
pub use series::{fsum_series, series_from_rational, TruncatedSeries};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{FromPrimitive, Num, Signed};
use thiserror::Error;

use crate::perm::Permutation;

/// Coefficient scalar for exact polynomial arithmetic.
///
/// The bounds are the num-traits vocabulary for a signed field with
/// printable values; the crate instantiates this with
/// `num_rational::BigRational` only (floating scalars would satisfy the
/// bounds but are deliberately never aliased — exactness is part of every
/// downstream contract).
pub trait Coeff:
    Num + Signed + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

impl<T> Coeff for T where
    T: Num + Signed + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

/// Errors from the algebra layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    /// Two operands carry different variable registries.
    #[error("variable registry mismatch: {left} vs {right}")]
    RegistryMismatch { left: String, right: String },
    /// A marker was addressed that the registry does not contain.
    #[error("marker {0} is not in the registry")]
    UnknownMarker(String),
    /// Determinant dimension above the practical bound.
    #[error("matrix dimension {d} exceeds the determinant bound {max}")]
    DimensionBound { d: usize, max: usize },
    /// Matrix index outside 1..=d.
    #[error("matrix index ({i},{j}) out of range for dimension {d}")]
    IndexOutOfRange { i: usize, j: usize, d: usize },
    /// Matrix rows of unequal length.
    #[error("matrix is not square: row {row} has length {len}, expected {d}")]
    NotSquare { row: usize, len: usize, d: usize },
    /// Division with nonzero remainder where exactness was required.
    #[error("polynomial division is not exact")]
    NotDivisible,
    /// Division by the zero polynomial / zero denominator.
    #[error("zero denominator")]
    ZeroDenominator,
    /// Series expansion needs a unit constant term in the denominator.
    #[error("denominator constant term is {0}; expected a nonzero scalar free of markers")]
    ConstantTermNotInvertible(String),
    /// fsum requires its argument to vanish at x = 0.
    #[error("series has nonzero constant term {0}; fsum needs valuation ≥ 1")]
    NonzeroConstantTerm(String),
}

/// Ordered variable registry: one marker `u_τ` per pattern, then `x`.
///
/// Exponent vectors are laid out `[u_{τ1}, …, u_{τt}, x]`, so plain
/// lexicographic comparison of the vector realizes "x last".
#[derive(Debug, PartialEq, Eq)]
pub struct VarRegistry {
    markers: Vec<Permutation>,
}

/// Shared handle to a registry; cloning a polynomial shares it.
pub type RegistryRef = Arc<VarRegistry>;

impl VarRegistry {
    /// Registry with markers for `patterns` in the given order.
    pub fn new(patterns: Vec<Permutation>) -> RegistryRef {
        Arc::new(VarRegistry { markers: patterns })
    }

    /// Registry with no markers: polynomials in `x` alone.
    pub fn x_only() -> RegistryRef {
        Arc::new(VarRegistry { markers: Vec::new() })
    }

    pub fn marker_count(&self) -> usize {
        self.markers.len()
    }

    /// Number of variables including `x`.
    pub fn var_count(&self) -> usize {
        self.markers.len() + 1
    }

    /// Exponent-vector index of `x` (always last).
    pub fn x_index(&self) -> usize {
        self.markers.len()
    }

    pub fn markers(&self) -> &[Permutation] {
        &self.markers
    }

    /// Index of the marker for `pattern`, if registered.
    pub fn marker_index(&self, pattern: &Permutation) -> Option<usize> {
        self.markers.iter().position(|p| p == pattern)
    }

    /// Display name of variable `idx` (`u_<pattern>`, or `x` for the last).
    pub fn var_name(&self, idx: usize) -> String {
        if idx == self.x_index() {
            "x".to_string()
        } else {
            format!("u_{}", self.markers[idx])
        }
    }

    fn describe(&self) -> String {
        let names: Vec<String> = self.markers.iter().map(|p| p.to_string()).collect();
        format!("[{}; x]", names.join(", "))
    }
}

fn same_registry(a: &RegistryRef, b: &RegistryRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn registry_mismatch(a: &RegistryRef, b: &RegistryRef) -> PolyError {
    PolyError::RegistryMismatch {
        left: a.describe(),
        right: b.describe(),
    }
}

/// Exponent vector over a registry; compares graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// Exponentwise difference, or `None` when some exponent would go negative.
    fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<u16>>>()
            .map(Monomial)
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent vector
    /// (markers in registry order take precedence, `x` decides last).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial: monomial → nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Coeff> {
    registry: RegistryRef,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(registry: &RegistryRef) -> Self {
        MultiPoly {
            registry: registry.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(registry: &RegistryRef, c: C) -> Self {
        let mut p = Self::zero(registry);
        p.add_term(Monomial::constant(registry.var_count()), c);
        p
    }

    pub fn one(registry: &RegistryRef) -> Self {
        Self::constant(registry, C::one())
    }

    /// The variable `x`.
    pub fn x(registry: &RegistryRef) -> Self {
        Self::var(registry, registry.x_index())
    }

    /// `x^e`.
    pub fn x_pow(registry: &RegistryRef, e: u16) -> Self {
        let mut exps = vec![0; registry.var_count()];
        exps[registry.x_index()] = e;
        Self::from_exponents(registry, &exps, C::one())
    }

    /// The marker variable with registry index `idx`.
    pub fn marker(registry: &RegistryRef, idx: usize) -> Self {
        assert!(idx < registry.marker_count(), "marker index out of range");
        Self::var(registry, idx)
    }

    fn var(registry: &RegistryRef, idx: usize) -> Self {
        let mut exps = vec![0; registry.var_count()];
        exps[idx] = 1;
        Self::from_exponents(registry, &exps, C::one())
    }

    /// Single term with the given exponent vector (markers first, `x` last).
    pub fn from_exponents(registry: &RegistryRef, exps: &[u16], c: C) -> Self {
        assert_eq!(exps.len(), registry.var_count(), "exponent vector length");
        let mut p = Self::zero(registry);
        p.add_term(Monomial(exps.to_vec()), c);
        p
    }

    pub fn registry(&self) -> &RegistryRef {
        &self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_constant() && c.is_one())
                .unwrap_or(false)
    }

    /// The coefficient of the constant monomial (zero if absent).
    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::constant(self.registry.var_count()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// `Some(c)` when the polynomial is a bare scalar (constant or zero).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Greatest monomial and its coefficient, unless zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in `x` alone (`None` for the zero polynomial).
    pub fn x_degree(&self) -> Option<u16> {
        let xi = self.registry.x_index();
        self.terms.keys().map(|m| m.0[xi]).max()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if !same_registry(&self.registry, &other.registry) {
            return Err(registry_mismatch(&self.registry, &other.registry));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if !same_registry(&self.registry, &other.registry) {
            return Err(registry_mismatch(&self.registry, &other.registry));
        }
        let mut out = Self::zero(&self.registry);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg_ref(&self) -> Self {
        MultiPoly {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.registry);
        }
        MultiPoly {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.registry);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same registry");
        }
        acc
    }

    /// Exact division: `self = q · divisor` with no remainder.
    ///
    /// Runs leading-term elimination in graded-lex order; returns
    /// [`PolyError::NotDivisible`] when a remainder would survive.  The
    /// Bareiss determinant relies on this being exact by construction.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        if !same_registry(&self.registry, &divisor.registry) {
            return Err(registry_mismatch(&self.registry, &divisor.registry));
        }
        let (dm, dc) = divisor.leading_term().ok_or(PolyError::ZeroDenominator)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.registry);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.try_div(&dm).ok_or(PolyError::NotDivisible)?;
            let qc = rc.clone() / dc.clone();
            let t = Self::from_exponents(&self.registry, qm.exponents(), qc);
            rem = rem.checked_sub(&t.checked_mul(divisor)?)?;
            quo = quo.checked_add(&t)?;
        }
        Ok(quo)
    }

    /// Substitutes the marker at registry index `idx` by `replacement`
    /// (same registry).  A ring homomorphism.
    pub fn substitute_marker(&self, idx: usize, replacement: &Self) -> Result<Self, PolyError> {
        if !same_registry(&self.registry, &replacement.registry) {
            return Err(registry_mismatch(&self.registry, &replacement.registry));
        }
        assert!(idx < self.registry.marker_count(), "marker index out of range");
        let mut out = Self::zero(&self.registry);
        // Group by marker exponent, reusing powers of the replacement.
        let mut powers: Vec<Self> = vec![Self::one(&self.registry)];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().checked_mul(replacement)?;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[idx] = 0;
            let term = Self::from_exponents(&self.registry, rest.exponents(), c.clone());
            out = out.checked_add(&term.checked_mul(&powers[e])?)?;
        }
        Ok(out)
    }

    /// Substitutes every marker by the scalar `value` (a ring homomorphism
    /// onto polynomials in `x`); the registry is retained.
    pub fn substitute_all_markers(&self, value: &C) -> Self {
        let mut out = Self::zero(&self.registry);
        for (m, c) in &self.terms {
            let mut marker_deg = 0u32;
            for &e in &m.0[..self.registry.marker_count()] {
                marker_deg += e as u32;
            }
            let mut coeff = c.clone();
            for _ in 0..marker_deg {
                coeff = coeff * value.clone();
            }
            let mut rest = m.clone();
            for e in rest.0[..self.registry.marker_count()].iter_mut() {
                *e = 0;
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Substitutes `u_τ ↦ u_τ − 1` for every marker simultaneously
    /// (the cluster-to-distribution change of variables).
    pub fn shift_all_markers_down(&self) -> Self {
        let mut out = self.clone();
        for idx in 0..self.registry.marker_count() {
            let repl = Self::marker(&self.registry, idx)
                .checked_sub(&Self::one(&self.registry))
                .expect("same registry");
            out = out.substitute_marker(idx, &repl).expect("same registry");
        }
        out
    }

    /// Re-expresses this polynomial over `target`, mapping `x` to `x` and
    /// each marker to the marker of the same pattern.
    pub fn lift(&self, target: &RegistryRef) -> Result<Self, PolyError> {
        if same_registry(&self.registry, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.registry.marker_count());
        for p in self.registry.markers() {
            let idx = target
                .marker_index(p)
                .ok_or_else(|| PolyError::UnknownMarker(format!("u_{p}")))?;
            map.push(idx);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.var_count()];
            for (src, &dst) in map.iter().enumerate() {
                exps[dst] = m.0[src];
            }
            exps[target.x_index()] = m.0[self.registry.x_index()];
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Splits into coefficients of powers of `x`: entry `k` is the
    /// (marker-only) coefficient polynomial of `x^k`.  The result has
    /// length `x_degree + 1` (empty for the zero polynomial).
    pub fn x_coefficients(&self) -> Vec<Self> {
        let xi = self.registry.x_index();
        let deg = match self.x_degree() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Self::zero(&self.registry); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[xi] as usize;
            let mut rest = m.clone();
            rest.0[xi] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }
}

impl<C: Coeff> std::ops::Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.checked_add(rhs).expect("registry mismatch in +")
    }
}

impl<C: Coeff> std::ops::Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.checked_sub(rhs).expect("registry mismatch in -")
    }
}

impl<C: Coeff> std::ops::Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.checked_mul(rhs).expect("registry mismatch in *")
    }
}

impl<C: Coeff> std::ops::Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.neg_ref()
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    /// Canonical rendering: terms in descending graded-lex order, `*`
    /// between factors, explicit `^` powers, unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.registry.var_name(idx));
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.registry.var_name(idx), e));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
