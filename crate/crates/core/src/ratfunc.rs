//! The rational function field `F_r(T)`.
//!
//! Values are kept in canonical form: `gcd(num, den) = 1`, `den` monic, zero
//! is `0/1`. Structural equality is therefore value equality.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::poly::{gcd_unchecked, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::MixedFields);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(num.field());
        }
        let g = gcd_unchecked(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Self::scale_monic(num, den)
    }

    fn scale_monic(num: Poly, den: Poly) -> Self {
        let lead = den.leading_raw();
        if lead == 1 {
            return RatFunc { num, den };
        }
        let inv = den.field().inv_raw(lead).expect("nonzero leading coefficient");
        RatFunc { num: num.scale_raw(inv), den: den.scale_raw(inv) }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        RatFunc { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &FieldSpec) -> Self {
        RatFunc { num: Poly::one(field), den: Poly::one(field) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn from_element(c: &FieldElement) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The integer `n` embedded in the prime subfield.
    pub fn from_int(field: &FieldSpec, n: i64) -> Self {
        Self::from_element(&field.embed(n))
    }

    pub fn field(&self) -> &FieldSpec {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::scale_monic(self.den.clone(), self.num.clone()))
    }

    /// Multiplies by a field constant.
    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(c.field() == self.field(), "{}", Error::MixedFields);
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc { num: self.num.scale_raw(c.packed()), den: self.den.clone() }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.field());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(&self.num + &other.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only factors of g can cancel afterwards
        let g = gcd_unchecked(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            let den = &self.den * &other.den;
            return RatFunc { num, den };
        }
        let b1 = self.den.div_exact(&g);
        let d1 = other.den.div_exact(&g);
        let num = &(&self.num * &d1) + &(&other.num * &b1);
        if num.is_zero() {
            return Self::zero(self.field());
        }
        let g2 = gcd_unchecked(&num, &g);
        let num = num.div_exact(&g2);
        let den = &b1 * &other.den.div_exact(&g2);
        Self::scale_monic(num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field());
        }
        // cross-cancel: gcd(a, d) and gcd(c, b) are the only common factors
        let g1 = gcd_unchecked(&self.num, &other.den);
        let g2 = gcd_unchecked(&other.num, &self.den);
        let num = &self.num.div_exact(&g1) * &other.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &other.den.div_exact(&g1);
        Self::scale_monic(num, den)
    }

    /// Parses `num / den` or `num`, polynomials in the `T` text form.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                if d.contains('/') {
                    return Err(Error::Parse(format!("more than one '/' in {s:?}")));
                }
                Self::new(Poly::parse(field, n)?, Poly::parse(field, d)?)
            }
            None => Ok(Self::from_poly(Poly::parse(field, s)?)),
        }
    }

    /// Canonical text of numerator and denominator separately.
    pub fn to_parts(&self) -> (String, String) {
        (format!("{}", self.num), format!("{}", self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
