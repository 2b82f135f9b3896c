//! Appell-Carlitz numbers.
//!
//! A family is given by `f(z) = sum lambda_n z^n` with `lambda_0 = 1`; its
//! order-`ell` numbers are defined by
//! `1 / f(z)^ell = sum_n AC_n^(ell) z^n / Pi(n)`
//! with `Pi` the Carlitz factorial. Bernoulli-Carlitz numbers take
//! `f = e_C(z)/z`, Cauchy-Carlitz numbers `f = log_C(z)/z`.
//!
//! Each number can be computed five ways, which must agree exactly:
//!
//! * [`Method::Inversion`]: invert the truncated series `f^ell` (the oracle);
//! * [`Method::Recurrence`]: `AC_m = -Pi(m) sum_{i<m} AC_i / Pi(i) * D_ell(m - i)`;
//! * [`Method::Closed`]: signed sum over compositions of `m` of products of `D_ell`;
//! * [`Method::Partition`]: signed multinomial sum over partitions of `m` (`ell = 1`);
//! * [`Method::Determinant`]: `(-1)^m Pi(m)` times a Toeplitz-Hessenberg determinant.
//!
//! Here `D_ell(e)` is the coefficient of `z^e` in `f^ell`. Two more routes are
//! specific to the named families: Carlitz's own recurrence for
//! Bernoulli-Carlitz numbers ([`bc_native_recurrence`]) and the closed forms
//! through `M^(ell)` sums over powers of `r` ([`corollary_closed`]).

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::carlitz::{CarlitzContext, FamilyLabel};
use crate::combinat::multinomial;
use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::series::TruncSeries;

/// Largest index for the literal composition sums (2^{m-1} compositions).
pub const CLOSED_CAP: usize = 20;
pub const PARTITION_CAP: usize = 30;
pub const DETERMINANT_CAP: usize = 64;

/// How a value was computed. Variants are in alphabetical order of their
/// names, which is also the output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Closed,
    Corollary,
    Determinant,
    Inversion,
    Native,
    Partition,
    Recurrence,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Closed,
        Method::Corollary,
        Method::Determinant,
        Method::Inversion,
        Method::Native,
        Method::Partition,
        Method::Recurrence,
    ];

    /// The five methods that apply to every family.
    pub const GENERIC: [Method; 5] =
        [Method::Closed, Method::Determinant, Method::Inversion, Method::Partition, Method::Recurrence];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Corollary => "corollary",
            Method::Determinant => "determinant",
            Method::Inversion => "inversion",
            Method::Native => "native",
            Method::Partition => "partition",
            Method::Recurrence => "recurrence",
        }
    }

    /// Why this method cannot produce `AC_n^(ell)` for the family, if it can't.
    pub fn check(self, label: FamilyLabel, ell: u32, n: usize) -> Result<()> {
        let fail = |reason| Err(Error::MethodNotApplicable { method: self.name(), reason });
        match self {
            Method::Closed | Method::Corollary if n > CLOSED_CAP => {
                Err(Error::IndexTooLargeForLiteralEnumeration { m: n, cap: CLOSED_CAP })
            }
            Method::Partition if n > PARTITION_CAP => Err(Error::IndexTooLarge { m: n, cap: PARTITION_CAP }),
            Method::Determinant if n > DETERMINANT_CAP => Err(Error::IndexTooLarge { m: n, cap: DETERMINANT_CAP }),
            Method::Partition if ell != 1 => fail("is stated for ell = 1 only"),
            Method::Native if label != FamilyLabel::BernoulliCarlitz => {
                fail("applies to Bernoulli-Carlitz numbers only")
            }
            Method::Native if ell != 1 => fail("is stated for ell = 1 only"),
            Method::Corollary if label == FamilyLabel::Custom => {
                fail("applies to Bernoulli-Carlitz and Cauchy-Carlitz numbers only")
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(alloc::format!("unknown method {s:?}")))
    }
}

/// One computed number with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACResult {
    pub family: FamilyLabel,
    pub r: u64,
    pub ell: u32,
    pub n: usize,
    pub value: RatFunc,
    pub method: Method,
}

/// A normalized lambda series together with the Carlitz quantities needed to
/// turn its reciprocal into Appell-Carlitz numbers.
#[derive(Clone, Debug)]
pub struct AppellFamily {
    label: FamilyLabel,
    lambda: TruncSeries,
    ctx: CarlitzContext,
}

impl AppellFamily {
    /// Bernoulli-Carlitz or Cauchy-Carlitz family truncated at `order`.
    pub fn builtin(label: FamilyLabel, field: &FieldSpec, order: usize) -> Result<Self> {
        let ctx = CarlitzContext::for_order(field, order)?;
        let lambda = ctx.lambda_series(label, order)?;
        Ok(AppellFamily { label, lambda, ctx })
    }

    pub fn bernoulli_carlitz(field: &FieldSpec, order: usize) -> Result<Self> {
        Self::builtin(FamilyLabel::BernoulliCarlitz, field, order)
    }

    pub fn cauchy_carlitz(field: &FieldSpec, order: usize) -> Result<Self> {
        Self::builtin(FamilyLabel::CauchyCarlitz, field, order)
    }

    /// A family from user-supplied `lambda`; `lambda_0` must be exactly 1.
    pub fn custom(lambda: TruncSeries) -> Result<Self> {
        Self::labeled(FamilyLabel::Custom, lambda)
    }

    /// A user-supplied `lambda` that claims to be one of the named families.
    /// The claim is not verified here; cross-checking against the
    /// family-specific methods does that.
    pub fn labeled(label: FamilyLabel, lambda: TruncSeries) -> Result<Self> {
        if !lambda.coeffs().first().is_some_and(RatFunc::is_one) {
            return Err(Error::Normalization);
        }
        let ctx = CarlitzContext::for_order(lambda.field(), lambda.order())?;
        Ok(AppellFamily { label, lambda, ctx })
    }

    pub fn label(&self) -> FamilyLabel {
        self.label
    }

    pub fn lambda(&self) -> &TruncSeries {
        &self.lambda
    }

    pub fn ctx(&self) -> &CarlitzContext {
        &self.ctx
    }

    pub fn field(&self) -> &FieldSpec {
        self.lambda.field()
    }

    pub fn order(&self) -> usize {
        self.lambda.order()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n < self.order() {
            Ok(())
        } else {
            Err(Error::OrderUnderflow { index: n, order: self.order() })
        }
    }

    fn result(&self, method: Method, ell: u32, n: usize, value: RatFunc) -> ACResult {
        ACResult { family: self.label, r: self.field().r(), ell, n, value, method }
    }

    fn factorial(&self, n: usize) -> Result<RatFunc> {
        Ok(RatFunc::from_poly(self.ctx.factorial(n as u64)?))
    }

    /// `D_ell(0..=upto)`.
    fn conv(&self, ell: u32, upto: usize) -> Result<Vec<RatFunc>> {
        self.lambda.conv_coeffs(ell, upto + 1)
    }

    /// `AC_0^(ell), ..., AC_{n_max}^(ell)` as `Pi(n)` times the coefficients of
    /// `1 / f^ell`.
    pub fn inversion(&self, ell: u32, n_max: usize) -> Result<Vec<ACResult>> {
        self.check_index(n_max)?;
        let f = self.lambda.truncate(n_max + 1)?;
        let g = f.pow(ell).invert()?;
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| Ok(self.result(Method::Inversion, ell, n, c * &self.factorial(n)?)))
            .collect()
    }

    /// `AC_m^(ell) = -Pi(m) sum_{i=0}^{m-1} AC_i^(ell) / Pi(i) * D_ell(m-i)`, `AC_0 = 1`.
    pub fn recurrence(&self, ell: u32, n_max: usize) -> Result<Vec<ACResult>> {
        self.check_index(n_max)?;
        let field = self.field();
        let minus_one = field.embed(-1);
        let d = self.conv(ell, n_max)?;
        // scaled[i] = AC_i / Pi(i)
        let mut scaled = Vec::with_capacity(n_max + 1);
        let mut out = Vec::with_capacity(n_max + 1);
        scaled.push(RatFunc::one(field));
        out.push(self.result(Method::Recurrence, ell, 0, RatFunc::one(field)));
        for m in 1..=n_max {
            let mut sum = RatFunc::zero(field);
            for (i, s) in scaled.iter().enumerate() {
                let dm = &d[m - i];
                if !dm.is_zero() && !s.is_zero() {
                    sum = &sum + &(s * dm);
                }
            }
            let s_m = sum.scale(&minus_one);
            let value = &s_m * &self.factorial(m)?;
            scaled.push(s_m);
            out.push(self.result(Method::Recurrence, ell, m, value));
        }
        Ok(out)
    }

    /// `AC_m^(ell) = Pi(m) sum_k (-1)^k sum_{e_1+...+e_k = m, e_i >= 1} D_ell(e_1) ... D_ell(e_k)`,
    /// enumerating compositions literally (`m <= 20`). `AC_0 = 1`.
    pub fn closed(&self, ell: u32, m: usize) -> Result<ACResult> {
        Method::Closed.check(self.label, ell, m)?;
        self.check_index(m)?;
        if m == 0 {
            return Ok(self.result(Method::Closed, ell, 0, RatFunc::one(self.field())));
        }
        let d = self.conv(ell, m)?;
        let sum = signed_composition_sum(self.field(), &d, m);
        Ok(self.result(Method::Closed, ell, m, &sum * &self.factorial(m)?))
    }

    /// `AC_m = Pi(m) sum_j (-1)^j sum (j; i_1, ..., i_m) lambda_1^{i_1} ... lambda_m^{i_m}`,
    /// over multiplicity vectors with `sum i_t = j`, `sum t i_t = m` (`ell = 1`, `m <= 30`).
    pub fn partition(&self, m: usize) -> Result<ACResult> {
        Method::Partition.check(self.label, 1, m)?;
        self.check_index(m)?;
        let field = self.field().clone();
        if m == 0 {
            return Ok(self.result(Method::Partition, 1, 0, RatFunc::one(&field)));
        }
        let lambda = self.lambda.coeffs();
        let p = field.p() as u128;
        let mut sum = RatFunc::zero(&field);
        let mut mult = alloc::vec![0usize; m];
        let mut overflow = false;
        partition_terms(m, m, &RatFunc::one(&field), lambda, &mut mult, &mut |mult, prod| {
            let j: usize = mult.iter().sum();
            let Some(c) = multinomial(mult) else {
                overflow = true;
                return;
            };
            let c = (c % p) as i64;
            let signed = if j.is_multiple_of(2) { c } else { -c };
            let coef = field.embed(signed);
            if !coef.is_zero() {
                sum = &sum + &prod.scale(&coef);
            }
        });
        if overflow {
            return Err(Error::IndexTooLarge { m, cap: PARTITION_CAP });
        }
        Ok(self.result(Method::Partition, 1, m, &sum * &self.factorial(m)?))
    }

    /// `AC_m^(ell) = (-1)^m Pi(m) det H_m`, `H_m` the lower Hessenberg Toeplitz
    /// matrix with first column `D_ell(1..=m)` and ones on the superdiagonal.
    pub fn determinant(&self, ell: u32, m: usize) -> Result<ACResult> {
        Method::Determinant.check(self.label, ell, m)?;
        self.check_index(m)?;
        let field = self.field();
        if m == 0 {
            return Ok(self.result(Method::Determinant, ell, 0, RatFunc::one(field)));
        }
        let d = self.conv(ell, m)?;
        let matrix = toeplitz_hessenberg(field, &d[1..=m])?;
        let det = matrix.determinant();
        let sign = field.embed(if m.is_multiple_of(2) { 1 } else { -1 });
        let value = &det.scale(&sign) * &self.factorial(m)?;
        Ok(self.result(Method::Determinant, ell, m, value))
    }

    /// Runs `method` for every `n <= n_max`.
    pub fn compute(&self, method: Method, ell: u32, n_max: usize) -> Result<Vec<ACResult>> {
        if ell == 0 {
            return Err(Error::MethodNotApplicable { method: method.name(), reason: "needs ell >= 1" });
        }
        method.check(self.label, ell, n_max)?;
        self.check_index(n_max)?;
        match method {
            Method::Inversion => self.inversion(ell, n_max),
            Method::Recurrence => self.recurrence(ell, n_max),
            Method::Native => bc_native_recurrence(&self.ctx, n_max),
            Method::Closed => (0..=n_max).map(|m| self.closed(ell, m)).collect(),
            Method::Partition => (0..=n_max).map(|m| self.partition(m)).collect(),
            Method::Determinant => (0..=n_max).map(|m| self.determinant(ell, m)).collect(),
            Method::Corollary => (0..=n_max).map(|m| corollary_closed(self.label, &self.ctx, ell, m)).collect(),
        }
    }
}

/// The `m x m` matrix with `entry(i, j) = entries[i - j]` for `j <= i`, 1 on
/// the superdiagonal and 0 above it; `entries[k]` stands for `D(k + 1)`.
pub fn toeplitz_hessenberg(field: &FieldSpec, entries: &[RatFunc]) -> Result<Matrix> {
    Matrix::from_fn(field, entries.len(), |i, j| {
        if j == i + 1 {
            RatFunc::one(field)
        } else if j <= i {
            entries[i - j].clone()
        } else {
            RatFunc::zero(field)
        }
    })
}

/// `sum_k (-1)^k sum_{e_1+...+e_k = m, e_i >= 1} w(e_1) ... w(e_k)`, skipping
/// every composition that contains a zero weight.
fn signed_composition_sum(field: &FieldSpec, weights: &[RatFunc], m: usize) -> RatFunc {
    // sums over compositions with an even / odd number of parts
    let mut sums = [RatFunc::zero(field), RatFunc::zero(field)];
    fn go(rest: usize, parts: usize, prod: &RatFunc, weights: &[RatFunc], sums: &mut [RatFunc; 2]) {
        for e in 1..=rest {
            let w = &weights[e];
            if w.is_zero() {
                continue;
            }
            let next = prod * w;
            if e == rest {
                let slot = &mut sums[(parts + 1) % 2];
                *slot = &*slot + &next;
            } else {
                go(rest - e, parts + 1, &next, weights, sums);
            }
        }
    }
    go(m, 0, &RatFunc::one(field), weights, &mut sums);
    let [even, odd] = sums;
    &even.scale(&field.embed(1)) + &odd.scale(&field.embed(-1))
}

/// Visits every multiplicity vector `(i_1, ..., i_m)` of a partition of `m`
/// whose parts all have nonzero `lambda`, with the product
/// `lambda_1^{i_1} ... lambda_m^{i_m}`.
fn partition_terms(
    t: usize,
    rest: usize,
    prod: &RatFunc,
    lambda: &[RatFunc],
    mult: &mut [usize],
    visit: &mut impl FnMut(&[usize], &RatFunc),
) {
    if rest == 0 {
        visit(mult, prod);
        return;
    }
    if t == 0 {
        return;
    }
    if lambda[t].is_zero() {
        partition_terms(t - 1, rest, prod, lambda, mult, visit);
        return;
    }
    let mut p = prod.clone();
    for count in 0..=rest / t {
        if count > 0 {
            p = &p * &lambda[t];
        }
        mult[t - 1] = count;
        partition_terms(t - 1, rest - count * t, &p, lambda, mult, visit);
    }
    mult[t - 1] = 0;
}

/// Carlitz's recurrence for Bernoulli-Carlitz numbers:
/// `BC_0 = 1`, `BC_m = -sum_{j=1}^{[log_r(m+1)]} Pi(m) / (Pi(r^j) Pi(m+1-r^j)) BC_{m+1-r^j}`.
pub fn bc_native_recurrence(ctx: &CarlitzContext, n_max: usize) -> Result<Vec<ACResult>> {
    let field = ctx.field();
    let r = ctx.r();
    let minus_one = field.embed(-1);
    let fact = |n: u64| -> Result<RatFunc> { Ok(RatFunc::from_poly(ctx.factorial(n)?)) };
    let mut values: Vec<RatFunc> = Vec::with_capacity(n_max + 1);
    values.push(RatFunc::one(field));
    for m in 1..=n_max as u64 {
        let pi_m = fact(m)?;
        let mut sum = RatFunc::zero(field);
        let mut rj = r;
        while rj <= m + 1 {
            let prev = &values[(m + 1 - rj) as usize];
            if !prev.is_zero() {
                let ratio = &pi_m / &(&fact(rj)? * &fact(m + 1 - rj)?);
                sum = &sum + &(&ratio * prev);
            }
            rj = match rj.checked_mul(r) {
                Some(v) => v,
                None => break,
            };
        }
        values.push(sum.scale(&minus_one));
    }
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(n, value)| ACResult {
            family: FamilyLabel::BernoulliCarlitz,
            r,
            ell: 1,
            n,
            value,
            method: Method::Native,
        })
        .collect())
}

/// `M^(ell)(i)`: the sum over ordered tuples `(e_1, ..., e_ell)` with
/// `r^{e_1} + ... + r^{e_ell} = i` of `1 / (Pi(r^{e_1}) ... Pi(r^{e_ell}))`
/// (Bernoulli-Carlitz) or `(-1)^{e_1+...+e_ell} / (L_{e_1} ... L_{e_ell})`
/// (Cauchy-Carlitz). Empty sums are 0.
pub fn m_ell(family: FamilyLabel, ctx: &CarlitzContext, ell: u32, i: u64) -> Result<RatFunc> {
    let field = ctx.field();
    let r = ctx.r();
    let mut powers = Vec::new();
    let mut pw = 1u64;
    while pw <= i {
        powers.push(pw);
        pw = match pw.checked_mul(r) {
            Some(v) => v,
            None => break,
        };
    }
    let weights: Vec<RatFunc> = (0..powers.len())
        .map(|e| -> Result<RatFunc> {
            match family {
                FamilyLabel::BernoulliCarlitz => RatFunc::new(Poly::one(field), ctx.factorial(powers[e])?),
                FamilyLabel::CauchyCarlitz => {
                    let sign = Poly::constant(&field.embed(if e % 2 == 0 { 1 } else { -1 }));
                    RatFunc::new(sign, ctx.carlitz_l(e)?.clone())
                }
                FamilyLabel::Custom => Err(Error::MethodNotApplicable {
                    method: "corollary",
                    reason: "applies to Bernoulli-Carlitz and Cauchy-Carlitz numbers only",
                }),
            }
        })
        .collect::<Result<_>>()?;
    fn go(rest: u64, slots: u32, prod: &RatFunc, powers: &[u64], weights: &[RatFunc], acc: &mut RatFunc) {
        if slots == 0 {
            if rest == 0 {
                *acc = &*acc + prod;
            }
            return;
        }
        // every remaining slot takes at least r^0 = 1
        for (e, &pw) in powers.iter().enumerate() {
            if pw + (slots as u64 - 1) > rest {
                break;
            }
            go(rest - pw, slots - 1, &(prod * &weights[e]), powers, weights, acc);
        }
    }
    let mut acc = RatFunc::zero(field);
    go(i, ell, &RatFunc::one(field), &powers, &weights, &mut acc);
    Ok(acc)
}

/// `Pi(m) sum_j (-1)^j sum_{i_1+...+i_j = m, i_k >= 1} M^(ell)(i_1 + ell) ... M^(ell)(i_j + ell)`.
///
/// `M^(ell)(i + ell)` is the coefficient of `z^i` in `f^ell`, since `f` carries
/// `z^{r^e - 1}`; the shift by `ell` aligns the `r`-power sums with the
/// composition index.
pub fn corollary_closed(family: FamilyLabel, ctx: &CarlitzContext, ell: u32, m: usize) -> Result<ACResult> {
    Method::Corollary.check(family, ell, m)?;
    let field = ctx.field();
    // M^(ell)(m + ell) reaches r-powers up to m + ell
    let needed = CarlitzContext::bound_for_order(ctx.r(), m + ell as usize);
    let wider;
    let ctx = if ctx.bound() < needed {
        wider = CarlitzContext::new(field, needed)?;
        &wider
    } else {
        ctx
    };
    let value = if m == 0 {
        RatFunc::one(field)
    } else {
        let mut weights = Vec::with_capacity(m + 1);
        weights.push(RatFunc::zero(field));
        for i in 1..=m as u64 {
            weights.push(m_ell(family, ctx, ell, i + ell as u64)?);
        }
        let sum = signed_composition_sum(field, &weights, m);
        &sum * &RatFunc::from_poly(ctx.factorial(m as u64)?)
    };
    Ok(ACResult { family, r: ctx.r(), ell, n: m, value, method: Method::Corollary })
}
