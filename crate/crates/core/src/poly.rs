//! Dense univariate polynomials over `F_r` in the indeterminate `T`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};

/// Largest exponent we are willing to build.
pub const MAX_EXPONENT: u64 = 1 << 62;

/// A polynomial with ascending coefficients; the zero polynomial has none.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    // packed field elements, no trailing zeros
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: vec![1] }
    }

    /// The indeterminate `T`.
    pub fn t(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: vec![0, 1] }
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_raw(c.field(), vec![c.packed()])
    }

    /// `c * T^k`.
    pub fn monomial(c: &FieldElement, k: u64) -> Result<Self> {
        if k > MAX_EXPONENT {
            return Err(Error::ExponentOverflow);
        }
        let k = usize::try_from(k).map_err(|_| Error::ExponentOverflow)?;
        if c.is_zero() {
            return Ok(Self::zero(c.field()));
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c.packed();
        Ok(Poly { field: c.field().clone(), coeffs })
    }

    /// From ascending coefficients.
    pub fn from_coeffs(field: &FieldSpec, coeffs: &[FieldElement]) -> Result<Self> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            raw.push(c.packed());
        }
        Ok(Self::from_raw(field, raw))
    }

    /// From ascending integer coefficients embedded in the prime subfield.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.embed_raw(c)).collect())
    }

    pub(crate) fn from_raw(field: &FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        FieldElement::from_raw(&self.field, self.coeffs.get(k).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| FieldElement::from_raw(&self.field, c)).collect()
    }

    pub fn leading(&self) -> FieldElement {
        FieldElement::from_raw(&self.field, self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub(crate) fn leading_raw(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
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
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add_raw(*o, s);
        }
        Self::from_raw(f, out)
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, 0);
        for (o, &s) in out.iter_mut().zip(&other.coeffs) {
            *o = f.sub_raw(*o, s);
        }
        Self::from_raw(f, out)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let n = a.len() + b.len() - 1;
        if f.is_prime_field() {
            let p = f.p() as u64;
            let mut acc = vec![0u64; n];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as u64;
                for (slot, &y) in acc[i..].iter_mut().zip(b) {
                    // products are < 2^62, so one reduction keeps the slot below 2^64
                    *slot += x * y as u64;
                    if *slot >= 1 << 63 {
                        *slot %= p;
                    }
                }
            }
            return Self::from_raw(f, acc.into_iter().map(|c| (c % p) as u32).collect());
        }
        let mut out = vec![0u32; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in out[i..].iter_mut().zip(b) {
                *slot = f.add_raw(*slot, f.mul_raw(x, y));
            }
        }
        Self::from_raw(f, out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(c.field() == &self.field, "{}", Error::MixedFields);
        self.scale_raw(c.packed())
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Self {
        if c == 1 {
            return self.clone();
        }
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&x| f.mul_raw(x, c)).collect())
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.field);
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

    /// Euclidean division: `self = q * b + rem`, `deg rem < deg b`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Self::zero(f), self.clone()));
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = f.inv_raw(b.leading_raw()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u32; rem.len() - db];
        for shift in (0..q.len()).rev() {
            let top = rem[shift + db];
            if top == 0 {
                continue;
            }
            let c = f.mul_raw(top, lead_inv);
            q[shift] = c;
            for (slot, &bc) in rem[shift..shift + db + 1].iter_mut().zip(&b.coeffs) {
                *slot = f.sub_raw(*slot, f.mul_raw(c, bc));
            }
        }
        rem.truncate(db);
        Ok((Self::from_raw(f, q), Self::from_raw(f, rem)))
    }

    /// Exact division; panics (debug) if the remainder is nonzero.
    pub(crate) fn div_exact(&self, b: &Self) -> Self {
        if b.is_one() {
            return self.clone();
        }
        let (q, r) = self.divmod(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to a monic polynomial (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_raw() {
            0 | 1 => self.clone(),
            lead => self.scale_raw(self.field.inv_raw(lead).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        Ok(gcd_unchecked(self, other))
    }

    /// Parses the text form `2*T^3+T+1`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        Self::parse_in(field, s, 'T')
    }

    /// Parses the text form with an arbitrary variable letter, e.g. `x^2+x+1`.
    pub fn parse_in(field: &FieldSpec, s: &str, var: char) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc: Vec<u32> = Vec::new();
        for term in split_top_level(s, '+')? {
            let term = term.trim();
            let (coef, power) = parse_term(field, term, var)?;
            let k = usize::try_from(power).map_err(|_| Error::ExponentOverflow)?;
            if power > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            if acc.len() <= k {
                acc.resize(k + 1, 0);
            }
            acc[k] = field.add_raw(acc[k], coef);
        }
        Ok(Self::from_raw(field, acc))
    }

    /// Text form using `var` as the indeterminate.
    pub fn display_in(&self, var: char) -> String {
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        let f = &self.field;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            let coef = Coef(f, c);
            match (k, c) {
                (0, _) => s.push_str(&format!("{coef}")),
                (1, 1) => s.push(var),
                (1, _) => s.push_str(&format!("{coef}*{var}")),
                (_, 1) => s.push_str(&format!("{var}^{k}")),
                _ => s.push_str(&format!("{coef}*{var}^{k}")),
            }
        }
        s
    }
}

pub(crate) fn gcd_unchecked(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.coeffs.len() < b.coeffs.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.coeffs.len() == 1 {
            return Poly::one(&a.field);
        }
        let r = a.divmod(&b).expect("same field, nonzero").1;
        a = b;
        b = r;
    }
    a.monic()
}

/// A coefficient in polynomial text: parenthesized when it is a multi-term
/// extension element.
struct Coef<'a>(&'a FieldSpec, u32);

impl fmt::Display for Coef<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.needs_parens(self.1) {
            f.write_str("(")?;
            self.0.fmt_raw(self.1, f)?;
            f.write_str(")")
        } else {
            self.0.fmt_raw(self.1, f)
        }
    }
}

fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in {s:?}")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_term(field: &FieldSpec, term: &str, var: char) -> Result<(u32, u64)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let parse_power = |t: &str| -> Result<u64> {
        let t = t.trim();
        let rest = t.strip_prefix(var).ok_or_else(|| Error::Parse(format!("expected {var} in {t:?}")))?;
        if rest.is_empty() {
            return Ok(1);
        }
        rest.strip_prefix('^')
            .and_then(|k| k.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in {t:?}")))
    };
    let parse_coef = |t: &str| -> Result<u32> {
        let t = t.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => {
                rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced coefficient {t:?}")))?
            }
            None => t,
        };
        Ok(field.parse_element(inner)?.packed())
    };
    let pieces = split_top_level(term, '*')?;
    match pieces.as_slice() {
        [one] if one.trim().starts_with(var) => Ok((1, parse_power(one)?)),
        [one] => Ok((parse_coef(one)?, 0)),
        [c, v] => Ok((parse_coef(c)?, parse_power(v)?)),
        _ => Err(Error::Parse(format!("bad term {term:?}"))),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in('T'))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $unchecked:ident) => {
        impl $trait for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.check(rhs).unwrap_or_else(|e| panic!("{e}"));
                self.$unchecked(rhs)
            }
        }
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::string::ToString;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }
    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }
    fn f4() -> FieldSpec {
        FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }
    fn p(f: &FieldSpec, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn poly_arith_examples() {
        let f = f3();
        assert_eq!(p(&f, "T^3+2*T") + p(&f, "T"), p(&f, "T^3"));
        let g = f2();
        assert_eq!(p(&g, "T+1") * p(&g, "T+1"), p(&g, "T^2+1"));
        let minus = Poly::from_ints(&f, &[0, -1, 0, 1]);
        assert_eq!((minus * Poly::one(&f)).to_string(), "T^3+2*T");
    }

    #[test]
    fn poly_arith_mixed_fields() {
        assert_eq!(Poly::t(&f2()).try_add(&Poly::t(&f3())).unwrap_err(), Error::MixedFields);
        assert_eq!(Poly::t(&f2()).try_mul(&Poly::t(&f4())).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn poly_divmod_examples() {
        let f = f3();
        let t = Poly::t(&f);
        assert_eq!(p(&f, "T^2").divmod(&t).unwrap(), (t.clone(), Poly::zero(&f)));
        assert_eq!(p(&f, "T^3+2*T").divmod(&t).unwrap(), (p(&f, "T^2+2"), Poly::zero(&f)));
        assert_eq!(t.divmod(&p(&f, "T^2")).unwrap(), (Poly::zero(&f), t.clone()));
        assert_eq!(t.divmod(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn poly_gcd_examples() {
        let f = f3();
        assert_eq!(p(&f, "T^3+2*T").gcd(&Poly::t(&f)).unwrap(), Poly::t(&f));
        assert_eq!(p(&f, "2*T+1").gcd(&Poly::zero(&f)).unwrap(), p(&f, "T+2"));
        let g = f2();
        assert_eq!(p(&g, "T^2+T").gcd(&p(&g, "T+1")).unwrap(), p(&g, "T+1"));
        assert_eq!(Poly::zero(&f).gcd(&Poly::zero(&f)).unwrap_err(), Error::BothZero);
    }

    #[test]
    fn text_form() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 1, 0, 2]);
        assert_eq!(a.to_string(), "2*T^3+T+1");
        assert_eq!(Poly::zero(&f).to_string(), "0");
        assert_eq!(Poly::one(&f).to_string(), "1");
        let g = f4();
        let x = g.generator();
        let b = Poly::monomial(&(&x + &g.one()), 2).unwrap() + Poly::monomial(&x, 1).unwrap() + Poly::constant(&x);
        assert_eq!(b.to_string(), "(1+x)*T^2+(x)*T+(x)");
        assert_eq!(Poly::parse(&g, &b.to_string()).unwrap(), b);
        assert_eq!(Poly::parse_in(&f2(), "x^2+x+1", 'x').unwrap(), Poly::from_ints(&f2(), &[1, 1, 1]));
        assert!(Poly::parse(&f, "T^").is_err());
        assert!(Poly::parse(&f, "3*T").is_err());
        assert!(Poly::parse(&f, "(1+T").is_err());
        assert!(Poly::parse(&f, "").is_err());
    }

    fn field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just(f2()), Just(f3()), Just(f4()), Just(FieldSpec::prime(7).unwrap())]
    }

    fn poly_in(f: FieldSpec) -> impl Strategy<Value = Poly> {
        let r = f.r();
        prop::collection::vec(0..r, 0..=33)
            .prop_map(move |cs| Poly::from_raw(&f, cs.into_iter().map(|c| c as u32).collect()))
    }

    fn triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
        field().prop_flat_map(|f| (poly_in(f.clone()), poly_in(f.clone()), poly_in(f)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn divmod_round_trip((a, b, _c) in triple()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both((a, b, c) in triple()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let a = &a * &c;
            let b = &b * &c;
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(a.divmod(&g).unwrap().1.is_zero());
            prop_assert!(b.divmod(&g).unwrap().1.is_zero());
            if !c.is_zero() {
                prop_assert!(g.divmod(&c.monic()).unwrap().1.is_zero());
            }
        }

        #[test]
        fn text_round_trip(a in field().prop_flat_map(poly_in)) {
            let s = a.to_string();
            let back = Poly::parse(a.field(), &s).unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, a);
        }
    }
}
