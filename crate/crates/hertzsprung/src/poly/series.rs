//! Power series in `x` truncated at a fixed order.
//!
//! Coefficients are marker-only polynomials (no `x`), so a series is the
//! canonical home for distribution output: coefficient `n` of
//! `Σ_π u^{T(π)} x^{|π|}` is a polynomial in the markers recording how
//! many length-`n` permutations have each occurrence profile.

use std::fmt;


use super::{Coeff, MultiPoly, PolyError, RationalFunction, RegistryRef};

/// `c_0 + c_1 x + … + c_N x^N` with marker-polynomial coefficients.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff> {
    registry: RegistryRef,
    /// Length `N+1`; entry `n` is the coefficient of `x^n`, free of `x`.
    coeffs: Vec<MultiPoly<C>>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(registry: &RegistryRef, order: usize) -> Self {
        TruncatedSeries {
            registry: registry.clone(),
            coeffs: vec![MultiPoly::zero(registry); order + 1],
        }
    }

    /// Builds from explicit coefficients (`coeffs[n]` is that of `x^n`).
    /// Coefficients must be free of `x`.
    pub fn from_coeffs(
        registry: &RegistryRef,
        coeffs: Vec<MultiPoly<C>>,
    ) -> Result<Self, PolyError> {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        for c in &coeffs {
            c.checked_add(&MultiPoly::zero(registry))?;
            assert!(
                c.x_degree().unwrap_or(0) == 0,
                "series coefficients must be free of x"
            );
        }
        Ok(TruncatedSeries {
            registry: registry.clone(),
            coeffs,
        })
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn registry(&self) -> &RegistryRef {
        &self.registry
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly<C> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly<C>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Restriction to a smaller (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend by truncation");
        TruncatedSeries {
            registry: self.registry.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Same coefficients, zero-padded up to `order`.
    fn zero_extended(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, MultiPoly::zero(&self.registry));
        TruncatedSeries {
            registry: self.registry.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let order = self.order().max(other.order());
        let a = self.zero_extended(order);
        let b = other.zero_extended(order);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.checked_add(y))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries {
            registry: self.registry.clone(),
            coeffs,
        })
    }

    /// Truncated Cauchy product at order `min(self.order, other.order)`.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        let order = self.order().min(other.order());
        let mut coeffs = vec![MultiPoly::zero(&self.registry); order + 1];
        for n in 0..=order {
            let mut acc = MultiPoly::zero(&self.registry);
            for k in 0..=n {
                if k < self.coeffs.len() && n - k < other.coeffs.len() {
                    acc = acc.checked_add(&self.coeffs[k].checked_mul(&other.coeffs[n - k])?)?;
                }
            }
            coeffs[n] = acc;
        }
        Ok(TruncatedSeries {
            registry: self.registry.clone(),
            coeffs,
        })
    }

    /// Multiplies every coefficient by the marker polynomial `p`.
    pub fn scale_poly(&self, p: &MultiPoly<C>) -> Result<Self, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(p))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries {
            registry: self.registry.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            registry: self.registry.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Substitutes every marker by the scalar `value` in each coefficient.
    pub fn substitute_all_markers(&self, value: &C) -> Self {
        TruncatedSeries {
            registry: self.registry.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.substitute_all_markers(value))
                .collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for TruncatedSeries<C> {
    /// Ascending powers of `x`, compound coefficients parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            let xs = match n {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{n}"),
            };
            let simple = c.terms().count() == 1;
            match (n, simple) {
                (0, _) => write!(f, "{c}")?,
                (_, true) if c.is_one() => write!(f, "{xs}")?,
                (_, true) => write!(f, "{c}*{xs}")?,
                (_, false) => write!(f, "({c})*{xs}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl<C: Coeff> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

/// Expands `r = num/den` as a power series in `x` up to order `N` by
/// forward substitution: `c_n = (num_n − Σ_{k≥1} den_k · c_{n−k}) / den_0`.
///
/// Viewing the denominator as a polynomial in `x` with marker-polynomial
/// coefficients, its `x⁰` coefficient must be a nonzero scalar (markers in
/// the constant term would force rational-function coefficients, which a
/// series does not store).  Transfer-matrix denominators always have
/// constant term ±1, so this requirement is met throughout the crate.
pub fn series_from_rational<C: Coeff>(
    r: &RationalFunction<C>,
    order: usize,
) -> Result<TruncatedSeries<C>, PolyError> {
    let registry = r.registry().clone();
    let num_by_x = r.num().x_coefficients();
    let den_by_x = r.den().x_coefficients();
    let d0 = den_by_x
        .first()
        .map(|p| p.clone())
        .unwrap_or_else(|| MultiPoly::zero(&registry));
    let d0 = d0
        .as_constant()
        .ok_or_else(|| PolyError::ConstantTermNotInvertible(d0.to_string()))?;
    if d0.is_zero() {
        return Err(PolyError::ConstantTermNotInvertible("0".to_string()));
    }
    let inv_d0 = C::one() / d0;
    let mut coeffs: Vec<MultiPoly<C>> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num_by_x
            .get(n)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&registry));
        for k in 1..=n.min(den_by_x.len().saturating_sub(1)) {
            acc = acc.checked_sub(&den_by_x[k].checked_mul(&coeffs[n - k])?)?;
        }
        coeffs.push(acc.scale(&inv_d0));
    }
    TruncatedSeries::from_coeffs(&registry, coeffs)
}

/// `Σ_{m=0}^{N} m! · y^m` truncated at order `N`.
///
/// Because `y` must vanish at `x = 0`, `y^m` has valuation ≥ m and the sum
/// is effectively finite; this is the outer function of the cluster
/// decomposition (a permutation is a sequence of `m` slots, each a single
/// letter or a cluster, counted `m!` ways).
pub fn fsum_series<C: Coeff>(
    y: &TruncatedSeries<C>,
    order: usize,
) -> Result<TruncatedSeries<C>, PolyError> {
    let registry = y.registry().clone();
    if !y.coeff(0).is_zero() {
        return Err(PolyError::NonzeroConstantTerm(y.coeff(0).to_string()));
    }
    let y = y.zero_extended(order).truncated(order);
    let mut acc = TruncatedSeries::zero(&registry, order);
    acc.coeffs[0] = MultiPoly::one(&registry);
    let mut power = acc.clone(); // y^0
    let mut factorial = C::one();
    for m in 1..=order {
        power = power.mul(&y)?;
        if power.is_zero() {
            break;
        }
        factorial = factorial * C::from_usize(m).expect("factorial fits the scalar");
        acc = acc.add(&power.scale(&factorial))?;
    }
    Ok(acc)
}
