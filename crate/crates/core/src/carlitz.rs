//! Carlitz quantities over `F_r[T]`: the brackets `[i] = T^{r^i} - T`, the
//! products `D_i` and `L_i`, the Carlitz factorial, and the truncated
//! Carlitz exponential and logarithm.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::poly::{Poly, MAX_EXPONENT};
use crate::ratfunc::RatFunc;
use crate::series::TruncSeries;

/// Which generating series defines an Appell-Carlitz family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyLabel {
    /// `f(z) = e_C(z) / z`
    BernoulliCarlitz,
    /// `f(z) = log_C(z) / z`
    CauchyCarlitz,
    Custom,
}

impl FamilyLabel {
    /// The short symbol used in printed values (`BC_n`, `CC_n`, `AC_n`).
    pub fn symbol(self) -> &'static str {
        match self {
            FamilyLabel::BernoulliCarlitz => "BC",
            FamilyLabel::CauchyCarlitz => "CC",
            FamilyLabel::Custom => "AC",
        }
    }
}

/// Least-significant-first base-`r` digits of `n`; empty for `n = 0`.
pub fn rdigits(mut n: u64, r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % r);
        n /= r;
    }
    out
}

/// `r^i`, failing past `2^62`.
fn r_power(r: u64, i: usize) -> Result<u64> {
    u32::try_from(i).ok().and_then(|i| r.checked_pow(i)).filter(|&v| v <= MAX_EXPONENT).ok_or(Error::ExponentOverflow)
}

/// Brackets, `D_i` and `L_i` for `0 <= i <= bound`, filled once.
#[derive(Clone, Debug)]
pub struct CarlitzContext {
    field: FieldSpec,
    bound: usize,
    // index 0 holds 1 (unused for brackets)
    brackets: Vec<Poly>,
    d: Vec<Poly>,
    l: Vec<Poly>,
}

impl CarlitzContext {
    /// Fills the caches up to index `bound` with the recurrences
    /// `D_i = [i] D_{i-1}^r` and `L_i = [i] L_{i-1}`.
    pub fn new(field: &FieldSpec, bound: usize) -> Result<Self> {
        let r = field.r();
        let one = Poly::one(field);
        let mut brackets = vec![one.clone()];
        let mut d = vec![one.clone()];
        let mut l = vec![one];
        for i in 1..=bound {
            let b = bracket(field, i)?;
            // deg D_i = i r^i must stay representable
            let deg_d = r_power(r, i)?.checked_mul(i as u64).filter(|&v| v <= MAX_EXPONENT);
            if deg_d.is_none() {
                return Err(Error::ExponentOverflow);
            }
            let di = &b * &d[i - 1].pow(r);
            let li = &b * &l[i - 1];
            debug_assert_eq!(di.degree(), deg_d.map(|v| v as usize));
            brackets.push(b);
            d.push(di);
            l.push(li);
        }
        Ok(CarlitzContext { field: field.clone(), bound, brackets, d, l })
    }

    /// Context large enough for every quantity a series of order `order`
    /// needs: the largest `j` with `r^j - 1 < order`.
    pub fn for_order(field: &FieldSpec, order: usize) -> Result<Self> {
        Self::new(field, Self::bound_for_order(field.r(), order))
    }

    pub fn bound_for_order(r: u64, order: usize) -> usize {
        let mut j = 0usize;
        let mut power = r; // r^{j+1}
        while power - 1 < order as u64 {
            j += 1;
            match power.checked_mul(r) {
                Some(next) => power = next,
                None => break,
            }
        }
        j
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.field.r()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn cached<'a>(&self, table: &'a [Poly], i: usize) -> Result<&'a Poly> {
        table.get(i).ok_or(Error::BeyondCache { index: i, bound: self.bound })
    }

    /// `[i] = T^{r^i} - T`, `i >= 1`.
    pub fn bracket(&self, i: usize) -> Result<Poly> {
        if (1..=self.bound).contains(&i) {
            return Ok(self.brackets[i].clone());
        }
        bracket(&self.field, i)
    }

    /// `D_i = [i] [i-1]^r ... [1]^{r^{i-1}}`, `D_0 = 1`.
    pub fn carlitz_d(&self, i: usize) -> Result<&Poly> {
        self.cached(&self.d, i)
    }

    /// `L_i = [i] [i-1] ... [1]`, `L_0 = 1`.
    pub fn carlitz_l(&self, i: usize) -> Result<&Poly> {
        self.cached(&self.l, i)
    }

    /// Carlitz factorial: `prod_j D_j^{c_j}` over the base-`r` digits `c_j` of `n`.
    pub fn factorial(&self, n: u64) -> Result<Poly> {
        let mut acc = Poly::one(&self.field);
        for (j, c) in rdigits(n, self.r()).into_iter().enumerate() {
            if c > 0 {
                acc = &acc * &self.carlitz_d(j)?.pow(c);
            }
        }
        Ok(acc)
    }

    /// `e_C(z) = sum_j z^{r^j} / D_j`, truncated at `order`.
    pub fn exp_series(&self, order: usize) -> Result<TruncSeries> {
        self.sparse_series(order, 0, |j| RatFunc::new(Poly::one(&self.field), self.carlitz_d(j)?.clone()))
    }

    /// `log_C(z) = sum_i (-1)^i z^{r^i} / L_i`, truncated at `order`.
    pub fn log_series(&self, order: usize) -> Result<TruncSeries> {
        self.sparse_series(order, 0, |j| self.signed_inverse_l(j))
    }

    /// The divided series `e_C(z)/z` or `log_C(z)/z`: coefficient
    /// `1/D_j` (resp. `(-1)^j / L_j`) at `z^{r^j - 1}`, zero elsewhere.
    pub fn lambda_series(&self, family: FamilyLabel, order: usize) -> Result<TruncSeries> {
        match family {
            FamilyLabel::BernoulliCarlitz => {
                self.sparse_series(order, 1, |j| RatFunc::new(Poly::one(&self.field), self.carlitz_d(j)?.clone()))
            }
            FamilyLabel::CauchyCarlitz => self.sparse_series(order, 1, |j| self.signed_inverse_l(j)),
            FamilyLabel::Custom => Err(Error::Parse("custom families carry their own lambda series".into())),
        }
    }

    fn signed_inverse_l(&self, j: usize) -> Result<RatFunc> {
        let sign = Poly::constant(&self.field.embed(if j.is_multiple_of(2) { 1 } else { -1 }));
        RatFunc::new(sign, self.carlitz_l(j)?.clone())
    }

    /// Series with `coef(j)` at exponent `r^j - shift` for every such exponent
    /// below `order`.
    fn sparse_series(&self, order: usize, shift: u64, coef: impl Fn(usize) -> Result<RatFunc>) -> Result<TruncSeries> {
        let r = self.r();
        let mut terms = Vec::new();
        let mut j = 0usize;
        loop {
            let exponent = r_power(r, j)? - shift;
            if exponent >= order as u64 {
                break;
            }
            terms.push((exponent as usize, coef(j)?));
            j += 1;
        }
        TruncSeries::from_sparse(&self.field, order, &terms)
    }
}

/// `T^{r^i} - T`.
pub fn bracket(field: &FieldSpec, i: usize) -> Result<Poly> {
    let k = r_power(field.r(), i)?;
    Ok(&Poly::monomial(&field.one(), k)? - &Poly::t(field))
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn bracket_examples() {
        let c3 = CarlitzContext::new(&f3(), 2).unwrap();
        assert_eq!(c3.bracket(1).unwrap().to_string(), "T^3+2*T");
        let c2 = CarlitzContext::new(&f2(), 2).unwrap();
        assert_eq!(c2.bracket(1).unwrap().to_string(), "T^2+T");
        assert_eq!(c2.bracket(2).unwrap().to_string(), "T^4+T");
        assert_eq!(bracket(&f2(), 70).unwrap_err(), Error::ExponentOverflow);
    }

    #[test]
    fn d_examples() {
        let c3 = CarlitzContext::new(&f3(), 1).unwrap();
        assert!(c3.carlitz_d(0).unwrap().is_one());
        assert_eq!(c3.carlitz_d(1).unwrap().to_string(), "T^3+2*T");
        let c2 = CarlitzContext::new(&f2(), 2).unwrap();
        let expect = &p(&f2(), "T^4+T") * &p(&f2(), "T^2+T").pow(2);
        assert_eq!(c2.carlitz_d(2).unwrap(), &expect);
        // (T^4+T)(T^4+T^2) = T^8+T^6+T^5+T^3
        assert_eq!(expect.to_string(), "T^8+T^6+T^5+T^3");
        assert_eq!(c2.carlitz_d(3).unwrap_err(), Error::BeyondCache { index: 3, bound: 2 });
    }

    #[test]
    fn l_examples() {
        let c3 = CarlitzContext::new(&f3(), 1).unwrap();
        assert!(c3.carlitz_l(0).unwrap().is_one());
        assert_eq!(c3.carlitz_l(1).unwrap().to_string(), "T^3+2*T");
        let c2 = CarlitzContext::new(&f2(), 2).unwrap();
        assert_eq!(c2.carlitz_l(2).unwrap(), &(&p(&f2(), "T^4+T") * &p(&f2(), "T^2+T")));
    }

    #[test]
    fn degrees() {
        for f in [f2(), f3(), f4(), FieldSpec::prime(5).unwrap()] {
            let r = f.r() as usize;
            let c = CarlitzContext::new(&f, 3).unwrap();
            for i in 0..=3usize {
                assert_eq!(c.carlitz_d(i).unwrap().degree(), Some(i * r.pow(i as u32)));
                assert_eq!(c.carlitz_l(i).unwrap().degree(), Some((r.pow(i as u32 + 1) - r) / (r - 1)));
            }
        }
    }

    #[test]
    fn recurrences_match_literal_products() {
        for f in [f2(), f3(), f4(), FieldSpec::prime(5).unwrap()] {
            let r = f.r();
            let c = CarlitzContext::new(&f, 3).unwrap();
            for i in 1..=3usize {
                // D_i = [i] [i-1]^r ... [1]^{r^{i-1}}
                let mut d = Poly::one(&f);
                let mut l = Poly::one(&f);
                for k in 1..=i {
                    d = &d * &bracket(&f, k).unwrap().pow(r.pow((i - k) as u32));
                    l = &l * &bracket(&f, k).unwrap();
                }
                assert_eq!(c.carlitz_d(i).unwrap(), &d);
                assert_eq!(c.carlitz_l(i).unwrap(), &l);
            }
        }
    }

    #[test]
    fn rdigits_examples() {
        assert_eq!(rdigits(5, 3), vec![2, 1]);
        assert!(rdigits(0, 7).is_empty());
        assert_eq!(rdigits(8, 2), vec![0, 0, 0, 1]);
    }

    #[test]
    fn factorial_examples() {
        let c3 = CarlitzContext::new(&f3(), 2).unwrap();
        assert!(c3.factorial(0).unwrap().is_one());
        assert!(c3.factorial(2).unwrap().is_one());
        assert_eq!(c3.factorial(5).unwrap().to_string(), "T^3+2*T");
        assert_eq!(c3.factorial(27).unwrap_err(), Error::BeyondCache { index: 3, bound: 2 });
    }

    #[test]
    fn factorial_of_r_power_is_d() {
        for f in [f2(), f3(), f4(), FieldSpec::prime(5).unwrap()] {
            let c = CarlitzContext::new(&f, 3).unwrap();
            for j in 0..=3u32 {
                assert_eq!(&c.factorial(f.r().pow(j)).unwrap(), c.carlitz_d(j as usize).unwrap());
            }
        }
    }

    #[test]
    fn exp_and_log_coefficients() {
        let f = f3();
        let c = CarlitzContext::for_order(&f, 10).unwrap();
        let e = c.exp_series(10).unwrap();
        assert!(e.coeff(0).unwrap().is_zero());
        assert!(e.coeff(1).unwrap().is_one());
        assert!(e.coeff(2).unwrap().is_zero());
        assert_eq!(e.coeff(3).unwrap().to_string(), "1 / T^3+2*T");
        let l = c.log_series(10).unwrap();
        assert!(l.coeff(1).unwrap().is_one());
        assert_eq!(l.coeff(3).unwrap().to_string(), "2 / T^3+2*T");
        let c2 = CarlitzContext::for_order(&f2(), 10).unwrap();
        assert_eq!(c2.log_series(10).unwrap().coeff(2).unwrap().to_string(), "1 / T^2+T");
    }

    #[test]
    fn lambda_examples() {
        let f = f3();
        let c = CarlitzContext::for_order(&f, 9).unwrap();
        let bc = c.lambda_series(FamilyLabel::BernoulliCarlitz, 9).unwrap();
        let cc = c.lambda_series(FamilyLabel::CauchyCarlitz, 9).unwrap();
        assert!(bc.coeff(0).unwrap().is_one());
        assert!(cc.coeff(0).unwrap().is_one());
        assert_eq!(bc.coeff(2).unwrap().to_string(), "1 / T^3+2*T");
        assert_eq!(cc.coeff(2).unwrap().to_string(), "2 / T^3+2*T");
        // r^2 - 1 = 8
        assert_eq!(bc.coeff(8).unwrap(), &RatFunc::new(Poly::one(&f), c.carlitz_d(2).unwrap().clone()).unwrap());
    }

    #[test]
    fn lambda_support_is_r_powers_minus_one() {
        for f in [f2(), f3(), f4(), FieldSpec::prime(5).unwrap()] {
            let r = f.r() as usize;
            let c = CarlitzContext::for_order(&f, 31).unwrap();
            for fam in [FamilyLabel::BernoulliCarlitz, FamilyLabel::CauchyCarlitz] {
                let lam = c.lambda_series(fam, 31).unwrap();
                for e in 0..31 {
                    let is_support = (0..6).any(|j| r.pow(j) - 1 == e);
                    assert_eq!(!lam.coeff(e).unwrap().is_zero(), is_support, "{fam:?} r={r} e={e}");
                }
            }
        }
    }

    #[test]
    fn exp_log_inverse_pair() {
        for f in [f2(), f3()] {
            let c = CarlitzContext::for_order(&f, 10).unwrap();
            let e = c.exp_series(10).unwrap();
            let l = c.log_series(10).unwrap();
            let z = TruncSeries::z(&f, 10);
            assert_eq!(l.compose(&e).unwrap(), z);
            assert_eq!(e.compose(&l).unwrap(), z);
        }
    }

    #[test]
    fn cache_bound_for_order() {
        assert_eq!(CarlitzContext::bound_for_order(3, 1), 0);
        assert_eq!(CarlitzContext::bound_for_order(3, 3), 1);
        assert_eq!(CarlitzContext::bound_for_order(3, 9), 2);
        assert_eq!(CarlitzContext::bound_for_order(2, 31), 4);
        assert_eq!(CarlitzContext::bound_for_order(2, 32), 5);
    }
}
