//! Rational functions as unreduced numerator/denominator pairs.
//!
//! Multivariate GCD is deliberately not implemented: pairs stay as
//! produced (so e.g. a transfer-matrix quotient keeps its determinant
//! denominator verbatim), and equality is decided by cross-multiplication,
//! which is sound because polynomials over a field form an integral
//! domain.  The only normalization applied is a sign convention: the
//! coefficient of the denominator's graded-lexicographically greatest
//! monomial is kept positive, which pins a unique representative among
//! the two sign choices and makes text output deterministic.

use std::fmt;

use super::{Coeff, MultiPoly, PolyError, RegistryRef};

/// Quotient `num/den` of two polynomials over the same registry.
#[derive(Clone)]
pub struct RationalFunction<C: Coeff> {
    num: MultiPoly<C>,
    den: MultiPoly<C>,
}

impl<C: Coeff> RationalFunction<C> {
    /// Builds `num/den`, rejecting a zero denominator and normalizing the
    /// sign so den's greatest monomial has a positive coefficient.
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        num.checked_add(&den)?; // registry compatibility check
        let mut rf = RationalFunction { num, den };
        rf.normalize_sign();
        Ok(rf)
    }

    /// A polynomial viewed as a rational function with denominator 1.
    pub fn from_poly(num: MultiPoly<C>) -> Self {
        let den = MultiPoly::one(num.registry());
        RationalFunction { num, den }
    }

    pub fn zero(registry: &RegistryRef) -> Self {
        Self::from_poly(MultiPoly::zero(registry))
    }

    fn normalize_sign(&mut self) {
        let (_, lead) = self.den.leading_term().expect("nonzero denominator");
        if lead.is_negative() {
            self.num = self.num.neg_ref();
            self.den = self.den.neg_ref();
        }
    }

    pub fn num(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<C> {
        &self.den
    }

    pub fn registry(&self) -> &RegistryRef {
        self.num.registry()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.num.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Self::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    /// Adds a bare polynomial: `self + p`.
    pub fn add_poly(&self, p: &MultiPoly<C>) -> Result<Self, PolyError> {
        self.add(&Self::from_poly(p.clone()))
    }

    /// Applies `u_τ ↦ u_τ − 1` to numerator and denominator.
    pub fn shift_all_markers_down(&self) -> Self {
        RationalFunction {
            num: self.num.shift_all_markers_down(),
            den: self.den.shift_all_markers_down(),
        }
    }

    /// Substitutes every marker by the scalar `value`.
    pub fn substitute_all_markers(&self, value: &C) -> Result<Self, PolyError> {
        Self::new(
            self.num.substitute_all_markers(value),
            self.den.substitute_all_markers(value),
        )
    }
}

/// Equality by cross-multiplication: `a/b = c/d ⇔ a·d = c·b`.
impl<C: Coeff> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        match (
            self.num.checked_mul(&other.den),
            other.num.checked_mul(&self.den),
        ) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        }
    }
}

impl<C: Coeff> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<C: Coeff> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarRegistry;
    use crate::Rat;
    use num_bigint::BigInt;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn sign_normalization_flips_both_parts() {
        let reg = VarRegistry::x_only();
        let x = MultiPoly::<Rat>::x(&reg);
        let one = MultiPoly::one(&reg);
        // x / (1 − x): greatest monomial of the denominator is −x, so the
        // stored pair is (−x)/(x − 1).
        let r = RationalFunction::new(x.clone(), &one - &x).unwrap();
        assert_eq!(r.den().to_string(), "x - 1");
        assert_eq!(r.num().to_string(), "-x");
        assert_eq!(r.to_string(), "(-x)/(x - 1)");
    }

    #[test]
    fn cross_multiplication_equality() {
        let reg = VarRegistry::x_only();
        let x = MultiPoly::<Rat>::x(&reg);
        let one = MultiPoly::one(&reg);
        // x(1+x) / (1−x)(1+x) equals x/(1−x) without any GCD reduction.
        let a = RationalFunction::new(
            &x * &(&one + &x),
            &(&one - &x) * &(&one + &x),
        )
        .unwrap();
        let b = RationalFunction::new(x.clone(), &one - &x).unwrap();
        assert_eq!(a, b);
        let c = RationalFunction::new(x.clone(), &one + &x).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn field_arithmetic() {
        let reg = VarRegistry::x_only();
        let x = MultiPoly::<Rat>::x(&reg);
        let one = MultiPoly::one(&reg);
        let a = RationalFunction::new(one.clone(), &one - &x).unwrap();
        let b = RationalFunction::new(one.clone(), &one + &x).unwrap();
        // 1/(1−x) + 1/(1+x) = 2/(1−x²)
        let sum = a.add(&b).unwrap();
        let expected = RationalFunction::new(
            MultiPoly::constant(&reg, rat(2)),
            &one - &x.pow(2),
        )
        .unwrap();
        assert_eq!(sum, expected);
        // a · b = 1/(1−x²); a / a = 1.
        assert_eq!(
            a.mul(&b).unwrap(),
            RationalFunction::new(one.clone(), &one - &x.pow(2)).unwrap()
        );
        assert_eq!(a.div(&a).unwrap(), RationalFunction::from_poly(one.clone()));
        // Zero denominators are rejected.
        assert!(RationalFunction::new(one.clone(), MultiPoly::zero(&reg)).is_err());
        assert!(a.div(&RationalFunction::zero(&reg)).is_err());
    }

    #[test]
    fn denominator_one_prints_bare() {
        let reg = VarRegistry::x_only();
        let x = MultiPoly::<Rat>::x(&reg);
        assert_eq!(RationalFunction::from_poly(x).to_string(), "x");
    }
}
