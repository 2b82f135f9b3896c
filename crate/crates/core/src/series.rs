//! Power series over `F_r(T)` truncated at an explicit order, with the
//! Hasse-Teichmueller derivatives `H^(m)`.
//!
//! A series of order `N` knows its coefficients of `z^0, ..., z^{N-1}`. Every
//! operation states the order of its output: sums and products take the
//! minimum of the input orders, `H^(m)` lowers the order by `m`. Reading a
//! coefficient at or past the order is an error, never an implicit zero.

pub mod rules;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::ratfunc::RatFunc;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    field: FieldSpec,
    coeffs: Vec<RatFunc>,
}

impl TruncSeries {
    /// A series whose order is `coeffs.len()`.
    pub fn new(field: &FieldSpec, coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(TruncSeries { field: field.clone(), coeffs })
    }

    pub fn zero(field: &FieldSpec, order: usize) -> Self {
        TruncSeries { field: field.clone(), coeffs: vec![RatFunc::zero(field); order] }
    }

    pub fn one(field: &FieldSpec, order: usize) -> Self {
        let mut s = Self::zero(field, order);
        if let Some(c) = s.coeffs.first_mut() {
            *c = RatFunc::one(field);
        }
        s
    }

    /// The series `z`.
    pub fn z(field: &FieldSpec, order: usize) -> Self {
        let mut s = Self::zero(field, order);
        if let Some(c) = s.coeffs.get_mut(1) {
            *c = RatFunc::one(field);
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; absent exponents
    /// are zero. Repeated exponents are rejected.
    pub fn from_sparse(field: &FieldSpec, order: usize, terms: &[(usize, RatFunc)]) -> Result<Self> {
        let mut s = Self::zero(field, order);
        let mut seen = vec![false; order];
        for (k, c) in terms {
            if *k >= order {
                return Err(Error::OrderUnderflow { index: *k, order });
            }
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            if seen[*k] {
                return Err(Error::Parse(alloc::format!("duplicate exponent {k}")));
            }
            seen[*k] = true;
            s.coeffs[*k] = c.clone();
        }
        Ok(s)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&RatFunc> {
        self.coeffs.get(n).ok_or(Error::OrderUnderflow { index: n, order: self.order() })
    }

    /// Drops coefficients at and past `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderUnderflow { index: order, order: self.order() });
        }
        Ok(TruncSeries { field: self.field.clone(), coeffs: self.coeffs[..order].to_vec() })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncSeries { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncSeries { field: self.field.clone(), coeffs })
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = vec![RatFunc::zero(&self.field); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(TruncSeries { field: self.field.clone(), coeffs })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        TruncSeries { field: self.field.clone(), coeffs }
    }

    pub fn scale_element(&self, c: &FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.scale(c)).collect();
        TruncSeries { field: self.field.clone(), coeffs }
    }

    /// Multiplicative inverse by the coefficient recursion
    /// `g_0 = 1/f_0`, `g_n = -(1/f_0) sum_{i=1..n} f_i g_{n-i}`.
    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let inv0 = self.coeffs[0].inv()?;
        let neg_inv0 = -&inv0;
        let mut g: Vec<RatFunc> = Vec::with_capacity(n);
        g.push(inv0);
        for k in 1..n {
            let mut acc = RatFunc::zero(&self.field);
            for i in 1..=k {
                let fi = &self.coeffs[i];
                if !fi.is_zero() && !g[k - i].is_zero() {
                    acc = &acc + &(fi * &g[k - i]);
                }
            }
            g.push(&acc * &neg_inv0);
        }
        Ok(TruncSeries { field: self.field.clone(), coeffs: g })
    }

    /// `ell`-fold product; `pow(0)` is the series 1.
    pub fn pow(&self, ell: u32) -> Self {
        let mut acc = Self::one(&self.field, self.order());
        for _ in 0..ell {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(z))` by Horner's scheme, truncated to the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        if inner.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InnerConstantNonzero);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n)?;
        let mut acc = Self::zero(&self.field, n);
        for c in self.coeffs[..n].iter().rev() {
            acc = &acc * &inner;
            if let Some(a0) = acc.coeffs.first_mut() {
                *a0 = &*a0 + c;
            }
        }
        Ok(acc)
    }

    /// `H^(m)`: the coefficient of `z^{n-m}` becomes `binom(n, m) f_n`.
    /// The result has order `order - m`.
    pub fn ht_derivative(&self, m: usize) -> Result<Self> {
        if m >= self.order() {
            return Err(Error::OrderUnderflow { index: m, order: self.order() });
        }
        let table = BinomTable::new(self.field.p());
        let coeffs = (m..self.order())
            .map(|n| {
                let b = table.get(n as u64, m as u64);
                let c = &self.coeffs[n];
                if b == 0 || c.is_zero() {
                    RatFunc::zero(&self.field)
                } else {
                    c.scale(&self.field.embed(b as i64))
                }
            })
            .collect();
        Ok(TruncSeries { field: self.field.clone(), coeffs })
    }

    /// Coefficient of `z^e` in `self^ell`, i.e. the sum of
    /// `lambda_{i_1} ... lambda_{i_ell}` over `i_1 + ... + i_ell = e`.
    pub fn conv_coeff(&self, ell: u32, e: usize) -> Result<RatFunc> {
        Ok(self.conv_coeffs(ell, e + 1)?.pop().expect("nonempty"))
    }

    /// The first `count` coefficients of `self^ell`, by iterated convolution.
    pub fn conv_coeffs(&self, ell: u32, count: usize) -> Result<Vec<RatFunc>> {
        if count > self.order() {
            return Err(Error::OrderUnderflow { index: count - 1, order: self.order() });
        }
        Ok(self.truncate(count)?.pow(ell).coeffs)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(z^{})]", self.order())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: &TruncSeries) -> TruncSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

/// Binomial coefficients modulo a prime `p` by Lucas's theorem: `binom(n, m)`
/// is the product of the digit binomials of the base-`p` expansions.
pub struct BinomTable {
    p: u64,
    // Pascal's triangle mod p for digits, when p is small
    pascal: Option<Vec<Vec<u32>>>,
}

impl BinomTable {
    pub fn new(p: u32) -> Self {
        let p = p as u64;
        let pascal = (p <= 256).then(|| {
            let mut rows: Vec<Vec<u32>> = Vec::with_capacity(p as usize);
            for n in 0..p as usize {
                let mut row = vec![1u32; n + 1];
                for k in 1..n {
                    row[k] = ((rows[n - 1][k - 1] as u64 + rows[n - 1][k] as u64) % p) as u32;
                }
                rows.push(row);
            }
            rows
        });
        BinomTable { p, pascal }
    }

    fn digit(&self, a: u64, b: u64) -> u64 {
        if b > a {
            return 0;
        }
        match &self.pascal {
            Some(rows) => rows[a as usize][b as usize] as u64,
            None => {
                let p = self.p;
                let b = b.min(a - b);
                let (mut num, mut den) = (1u64, 1u64);
                for i in 0..b {
                    num = num * ((a - i) % p) % p;
                    den = den * ((i + 1) % p) % p;
                }
                num * pow_mod(den, p - 2, p) % p
            }
        }
    }

    pub fn get(&self, mut n: u64, mut m: u64) -> u64 {
        if m > n {
            return 0;
        }
        let mut acc = 1u64;
        while m > 0 {
            let d = self.digit(n % self.p, m % self.p);
            if d == 0 {
                return 0;
            }
            acc = acc * d % self.p;
            n /= self.p;
            m /= self.p;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        k >>= 1;
    }
    acc
}

/// `binom(n, m) mod p` via Lucas's theorem; 0 when `m > n`.
pub fn binom_mod_p(n: u64, m: u64, p: u32) -> u64 {
    BinomTable::new(p).get(n, m)
}
