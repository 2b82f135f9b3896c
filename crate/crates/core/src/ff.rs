//! Finite fields `F_r`, `r = p^e`.
//!
//! An element is stored packed as a single `u32`: the base-`p` digits of the
//! packed value are its coordinates in the power basis `1, x, ..., x^{e-1}` of
//! `F_p[x]/(modulus)`. Prime fields are the case `e = 1`, where the packed
//! value is simply the residue.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Extension fields up to this size get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

struct Tables {
    // exp has length 2(r-1) so that exp[log a + log b] needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    e: u32,
    r: u32,
    /// Ascending coefficients over F_p, monic, length e + 1. Empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A validated finite field. Cheap to clone; clones share storage.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[x]/({})", self.0.p, self.0.e, fp_poly::display(&self.0.modulus))
        }
    }
}

/// Trial division; adequate for `p <= 2^32`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^e}`; `modulus` lists ascending coefficients over `F_p` and must be
    /// given exactly when `e >= 2`.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::ModulusDegreeMismatch { expected: 0, found: 0 });
        }
        let r = p.checked_pow(e).filter(|&r| r <= u32::MAX as u64);
        let Some(r) = r else {
            return Err(Error::FieldTooLarge { p, e });
        };
        let p32 = p as u32;
        let modulus = match (e, modulus) {
            (1, None) => Vec::new(),
            (1, Some(_)) => return Err(Error::UnexpectedModulus),
            (_, None) => return Err(Error::MissingModulus),
            (_, Some(m)) => {
                let mut m: Vec<u32> = m
                    .iter()
                    .map(|&c| if c < p { Ok(c as u32) } else { Err(Error::ResidueOutOfRange { value: c, p: p32 }) })
                    .collect::<Result<_>>()?;
                fp_poly::trim(&mut m);
                if m.len() != e as usize + 1 {
                    return Err(Error::ModulusDegreeMismatch { expected: e, found: m.len().saturating_sub(1) });
                }
                if m[e as usize] != 1 {
                    return Err(Error::NonMonicModulus);
                }
                if !fp_poly::is_irreducible(&m, p32) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
        };
        let mut inner = Inner { p: p32, e, r: r as u32, modulus, tables: None };
        if e >= 2 && r <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Field size `r = p^e`.
    pub fn r(&self) -> u64 {
        self.0.r as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 1 }
    }

    /// The generator `x` of an extension (equal to 0 in a prime field, where
    /// there is no generator).
    pub fn generator(&self) -> FieldElement {
        let value = if self.0.e >= 2 { self.0.p } else { 0 };
        FieldElement { field: self.clone(), value }
    }

    /// The image of `n` under the ring map `Z -> F_p -> F_r`.
    pub fn embed(&self, n: i64) -> FieldElement {
        FieldElement { field: self.clone(), value: self.embed_raw(n) }
    }

    /// Element with the given power-basis coordinates (missing ones are 0).
    pub fn element(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() > self.0.e as usize {
            return Err(Error::Parse(format!("{} coordinates for a degree-{} field", coords.len(), self.0.e)));
        }
        let mut value = 0u64;
        for &c in coords.iter().rev() {
            if c >= self.0.p as u64 {
                return Err(Error::ResidueOutOfRange { value: c, p: self.0.p });
            }
            value = value * self.0.p as u64 + c;
        }
        Ok(FieldElement { field: self.clone(), value: value as u32 })
    }

    /// The `index`-th element in packed order, `0 <= index < r`.
    pub fn element_at(&self, index: u64) -> Option<FieldElement> {
        (index < self.r()).then(|| FieldElement { field: self.clone(), value: index as u32 })
    }

    /// Iterates over all `r` elements.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.r).map(move |v| FieldElement { field: self.clone(), value: v })
    }

    /// Parses the element text form: a residue for prime fields,
    /// `c0+c1*x+...` for extensions.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let p = self.0.p as u64;
        let residue = |t: &str| -> Result<u64> {
            let v: u64 = t.trim().parse().map_err(|_| Error::Parse(format!("bad residue {t:?}")))?;
            if v >= p {
                return Err(Error::ResidueOutOfRange { value: v, p: self.0.p });
            }
            Ok(v)
        };
        if self.0.e == 1 {
            let v = residue(s)?;
            return Ok(FieldElement { field: self.clone(), value: v as u32 });
        }
        let mut coords = vec![0u64; self.0.e as usize];
        for term in s.split('+') {
            let term = term.trim();
            let (coef, power) = match term.split_once('*') {
                Some((c, xp)) => (residue(c)?, parse_x_power(xp.trim())?),
                None if term.starts_with('x') => (1, parse_x_power(term)?),
                None => (residue(term)?, 0),
            };
            if power >= self.0.e as u64 {
                return Err(Error::Parse(format!("x^{power} exceeds the extension degree")));
            }
            let slot = &mut coords[power as usize];
            *slot = (*slot + coef) % p;
        }
        self.element(&coords)
    }

    // Packed-value arithmetic. Callers guarantee values are in range.

    #[inline]
    pub(crate) fn embed_raw(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a as u64 + b as u64;
            let p = inner.p as u64;
            (if s >= p { s - p } else { s }) as u32
        } else if inner.p == 2 {
            a ^ b
        } else {
            digitwise(inner, a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            if a == 0 {
                0
            } else {
                inner.p - a
            }
        } else if inner.p == 2 {
            a
        } else {
            digitwise(inner, a, 0, |x, _, p| (p - x) % p)
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            return ((a as u64 * b as u64) % inner.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => ext_mul_schoolbook(inner, a, b),
        }
    }

    pub(crate) fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        if inner.e == 1 {
            return Some(mod_inverse(a as u64, inner.p as u64) as u32);
        }
        let a_poly = unpack(inner, a);
        let inv = fp_poly::inverse_mod(&a_poly, &inner.modulus, inner.p)?;
        Some(pack(inner, &inv))
    }

    pub(crate) fn pow_raw(&self, mut a: u32, mut k: u64) -> u32 {
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(acc, a);
            }
            a = self.mul_raw(a, a);
            k >>= 1;
        }
        acc
    }

    pub(crate) fn fmt_raw(&self, v: u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = &*self.0;
        if inner.e == 1 {
            return write!(f, "{v}");
        }
        if v == 0 {
            return f.write_str("0");
        }
        let coords = unpack(inner, v);
        let mut first = true;
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }

    /// True when the packed value has a multi-character text form that needs
    /// parentheses when used as a polynomial coefficient.
    pub(crate) fn needs_parens(&self, v: u32) -> bool {
        self.0.e >= 2 && v >= self.0.p
    }
}

fn parse_x_power(s: &str) -> Result<u64> {
    match s {
        "x" => Ok(1),
        _ => s
            .strip_prefix("x^")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad power of x {s:?}"))),
    }
}

fn digitwise(inner: &Inner, mut a: u32, mut b: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
    let p = inner.p;
    let mut out = 0u32;
    let mut place = 1u32;
    for i in 0..inner.e {
        let d = op(a % p, b % p, p);
        out += d * place;
        a /= p;
        b /= p;
        if i + 1 < inner.e {
            place *= p;
        }
    }
    out
}

fn unpack(inner: &Inner, mut v: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(inner.e as usize);
    for _ in 0..inner.e {
        out.push(v % inner.p);
        v /= inner.p;
    }
    out
}

fn pack(inner: &Inner, coords: &[u32]) -> u32 {
    coords.iter().rev().fold(0u64, |acc, &c| acc * inner.p as u64 + c as u64) as u32
}

fn ext_mul_schoolbook(inner: &Inner, a: u32, b: u32) -> u32 {
    let prod = fp_poly::mul(&unpack(inner, a), &unpack(inner, b), inner.p);
    let rem = fp_poly::rem(&prod, &inner.modulus, inner.p);
    pack(inner, &rem)
}

fn build_tables(inner: &Inner) -> Tables {
    let r = inner.r as u64;
    let order = r - 1;
    let factors = prime_factors(order);
    let generator = (2..r as u32)
        .chain(core::iter::once(1))
        .find(|&g| {
            factors.iter().all(|&q| {
                let mut acc = 1u32;
                let mut base = g;
                let mut k = order / q;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = ext_mul_schoolbook(inner, acc, base);
                    }
                    base = ext_mul_schoolbook(inner, base, base);
                    k >>= 1;
                }
                acc != 1
            })
        })
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; r as usize];
    let mut cur = 1u32;
    for i in 0..order as usize {
        exp[i] = cur;
        exp[i + order as usize] = cur;
        log[cur as usize] = i as u32;
        cur = ext_mul_schoolbook(inner, cur, generator);
    }
    Tables { exp, log }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i64) as u64
}

/// An element of some `F_r`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Packed value: the coordinates read as base-`p` digits.
    pub fn packed(&self) -> u32 {
        self.value
    }

    pub(crate) fn from_raw(field: &FieldSpec, value: u32) -> Self {
        FieldElement { field: field.clone(), value }
    }

    /// Power-basis coordinates, length `e`.
    pub fn coords(&self) -> Vec<u32> {
        unpack(&self.field.0, self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
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
        Ok(Self::from_raw(&self.field, self.field.add_raw(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, self.field.sub_raw(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, self.field.mul_raw(self.value, other.value)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.field.inv_raw(self.value).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_raw(&self.field, v))
    }

    pub fn pow(&self, k: u64) -> Self {
        Self::from_raw(&self.field, self.field.pow_raw(self.value, k))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.field.fmt_raw(self.value, f)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.field)
    }
}

impl From<FieldElement> for String {
    fn from(a: FieldElement) -> String {
        format!("{a}")
    }
}

// Operator forms panic on mixed fields or division by zero; use the `try_`
// methods where those are recoverable.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::from_raw(&self.field, self.field.neg_raw(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Small dense polynomials over `F_p` (ascending `u32` coefficients), used for
/// moduli and extension arithmetic.
mod fp_poly {
    use super::mod_inverse;
    use alloc::string::String;
    use alloc::vec;
    use alloc::vec::Vec;
    use core::fmt::Write;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0) as u64;
                let y = *b.get(i).unwrap_or(&0) as u64;
                ((x + p as u64 - y) % p as u64) as u32
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` nonzero.
    fn divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = mod_inverse(b[db] as u64, p as u64);
        let mut q = vec![0u32; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
            q[shift] = c as u32;
            for (i, &bc) in b.iter().enumerate() {
                let t = (c * bc as u64) % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        divmod(a, m, p).1
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(base: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while k > 0 {
            if k & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            k >>= 1;
        }
        acc
    }

    /// Degree-`e` monic `m` is irreducible iff `gcd(x^{p^k} - x, m) = 1` for all
    /// `1 <= k <= e/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let e = m.len() - 1;
        let x = vec![0u32, 1];
        let mut h = x.clone();
        for _ in 0..e / 2 {
            h = powmod(&h, p as u64, m, p);
            let g = gcd(&sub(&h, &x, p), m, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
    pub fn inverse_mod(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
        let (mut old_r, mut r) = (a.to_vec(), m.to_vec());
        trim(&mut old_r);
        let (mut old_s, mut s) = (vec![1u32], Vec::new());
        while !r.is_empty() {
            let (q, rem) = divmod(&old_r, &r, p);
            let next_s = sub(&old_s, &mul(&q, &s, p), p);
            old_r = core::mem::replace(&mut r, rem);
            old_s = core::mem::replace(&mut s, next_s);
        }
        if old_r.len() != 1 {
            return None;
        }
        let c = mod_inverse(old_r[0] as u64, p as u64);
        let mut out: Vec<u32> = old_s.iter().map(|&v| ((v as u64 * c) % p as u64) as u32).collect();
        out = rem(&out, m, p);
        Some(out)
    }

    pub fn display(m: &[u32]) -> String {
        let mut s = String::new();
        for (i, &c) in m.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (i, c) {
                (0, c) => write!(s, "{c}").unwrap(),
                (1, 1) => s.push('x'),
                (1, c) => write!(s, "{c}*x").unwrap(),
                (i, 1) => write!(s, "x^{i}").unwrap(),
                (i, c) => write!(s, "{c}*x^{i}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}
