//! Exact field scalars: rational numbers and univariate rational functions.
//!
//! Every value is kept in canonical form, so equality is structural.
//! Rationals promote into the function field when mixed with rational
//! functions; two rational functions in different indeterminates do not mix.

use crate::error::HomlieError;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A univariate rational function with monic denominator coprime to the
/// numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub var: String,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Canonicalize: cancel the gcd and make the denominator monic.
    pub fn new(var: String, num: Poly, den: Poly) -> Result<Self, HomlieError> {
        if den.is_zero() {
            return Err(HomlieError::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.leading();
        let num = num.scale(&(BigRational::one() / &lead));
        let den = den.scale(&(BigRational::one() / &lead));
        Ok(RatFunc { var, num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    RatFunc(RatFunc),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The indeterminate of the function field ℚ(var).
    pub fn var(name: &str) -> Self {
        Scalar::RatFunc(RatFunc::new(name.to_string(), Poly::var(), Poly::one()).unwrap())
    }

    pub fn ratfunc(name: &str, num: Poly, den: Poly) -> Result<Self, HomlieError> {
        Ok(Scalar::RatFunc(RatFunc::new(name.to_string(), num, den)?))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RatFunc(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RatFunc(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    /// Promote both operands into a common field.
    fn promote(a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar), HomlieError> {
        match (a, b) {
            (Scalar::Rational(_), Scalar::Rational(_)) => Ok((a.clone(), b.clone())),
            (Scalar::RatFunc(f), Scalar::Rational(r)) => {
                let lifted = Scalar::RatFunc(RatFunc::new(
                    f.var.clone(),
                    Poly::constant(r.clone()),
                    Poly::one(),
                )?);
                Ok((a.clone(), lifted))
            }
            (Scalar::Rational(r), Scalar::RatFunc(f)) => {
                let lifted = Scalar::RatFunc(RatFunc::new(
                    f.var.clone(),
                    Poly::constant(r.clone()),
                    Poly::one(),
                )?);
                Ok((lifted, b.clone()))
            }
            (Scalar::RatFunc(f), Scalar::RatFunc(g)) => {
                if f.var != g.var {
                    return Err(HomlieError::IndeterminateMismatch(
                        f.var.clone(),
                        g.var.clone(),
                    ));
                }
                Ok((a.clone(), b.clone()))
            }
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, HomlieError> {
        let (a, b) = Scalar::promote(self, other)?;
        Ok(match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::RatFunc(f), Scalar::RatFunc(g)) => Scalar::RatFunc(RatFunc::new(
                f.var.clone(),
                f.num.mul(&g.den).add(&g.num.mul(&f.den)),
                f.den.mul(&g.den),
            )?),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, HomlieError> {
        let (a, b) = Scalar::promote(self, other)?;
        Ok(match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::RatFunc(f), Scalar::RatFunc(g)) => Scalar::RatFunc(RatFunc::new(
                f.var.clone(),
                f.num.mul(&g.num),
                f.den.mul(&g.den),
            )?),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, HomlieError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::RatFunc(f) => Scalar::RatFunc(RatFunc {
                var: f.var.clone(),
                num: f.num.neg(),
                den: f.den.clone(),
            }),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar, HomlieError> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(HomlieError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::RatFunc(f) => {
                if f.num.is_zero() {
                    Err(HomlieError::DivisionByZero)
                } else {
                    Ok(Scalar::RatFunc(RatFunc::new(
                        f.var.clone(),
                        f.den.clone(),
                        f.num.clone(),
                    )?))
                }
            }
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, HomlieError> {
        self.try_mul(&other.try_inv()?)
    }

    /// Integer power; negative exponents invert (nonzero required).
    pub fn try_pow(&self, n: i64) -> Result<Scalar, HomlieError> {
        let base = if n < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Evaluate a rational function at a rational point; rationals pass
    /// through. Fails with `PoleAtValue` when the denominator vanishes.
    pub fn substitute(&self, var: &str, value: &BigRational) -> Result<Scalar, HomlieError> {
        match self {
            Scalar::Rational(_) => Ok(self.clone()),
            Scalar::RatFunc(f) => {
                if f.var != var {
                    return Err(HomlieError::IndeterminateMismatch(
                        f.var.clone(),
                        var.to_string(),
                    ));
                }
                let den = f.den.eval(value);
                if den.is_zero() {
                    return Err(HomlieError::PoleAtValue(self.to_string(), value.to_string()));
                }
                Ok(Scalar::Rational(f.num.eval(value) / den))
            }
        }
    }

    /// Total order on canonical forms; used only to make outputs deterministic.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Rational(_), Scalar::RatFunc(_)) => Ordering::Less,
            (Scalar::RatFunc(_), Scalar::Rational(_)) => Ordering::Greater,
            (Scalar::RatFunc(f), Scalar::RatFunc(g)) => f
                .var
                .cmp(&g.var)
                .then_with(|| f.num.cmp(&g.num))
                .then_with(|| f.den.cmp(&g.den)),
        }
    }
}

// The arithmetic operators assume operands live in compatible fields; all
// internal callers guarantee this because a structure fixes its field up
// front. Fallible paths go through the try_* methods.
impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::RatFunc(rf) => {
                if rf.den.is_one() {
                    write!(f, "({})", rf.num.render(&rf.var))
                } else {
                    write!(f, "({})/({})", rf.num.render(&rf.var), rf.den.render(&rf.var))
                }
            }
        }
    }
}

/// Mixed-field equality: a rational equals a constant rational function with
/// the same value. Canonical forms are compared after promotion.
pub fn scalar_eq(a: &Scalar, b: &Scalar) -> bool {
    match Scalar::promote(a, b) {
        Ok((x, y)) => x == y,
        Err(_) => false,
    }
}
