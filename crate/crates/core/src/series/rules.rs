//! Closed expansions of `H^(m)` applied to products, reciprocals and powers.
//!
//! These evaluate the right-hand sides of the product, quotient and power
//! rules literally. They exist to be checked against `ht_derivative` applied
//! to the assembled series; production code inverts with
//! [`TruncSeries::invert`].

use alloc::vec::Vec;

use super::{BinomTable, TruncSeries};
use crate::combinat::{falling_multinomial, for_each_composition, for_each_partition, for_each_tuple};
use crate::error::{Error, Result};

fn ht_table(f: &TruncSeries, upto: usize) -> Result<Vec<TruncSeries>> {
    (0..=upto).map(|i| f.ht_derivative(i)).collect()
}

fn sum_into(acc: &mut Option<TruncSeries>, term: TruncSeries) {
    *acc = Some(match acc.take() {
        None => term,
        Some(a) => &a + &term,
    });
}

fn embed_residue(f: &TruncSeries, v: u128) -> crate::ff::FieldElement {
    f.field().embed((v % f.field().p() as u128) as i64)
}

/// `sum_{i_1+...+i_k = m} H^(i_1)(f_1) ... H^(i_k)(f_k)`.
pub fn product_rule(factors: &[TruncSeries], m: usize) -> Result<TruncSeries> {
    let tables: Vec<Vec<TruncSeries>> = factors.iter().map(|f| ht_table(f, m)).collect::<Result<_>>()?;
    let mut acc = None;
    for_each_tuple(m, factors.len(), 0, &mut |t| {
        let term = t
            .iter()
            .zip(&tables)
            .map(|(&i, table)| table[i].clone())
            .reduce(|a, b| &a * &b)
            .expect("at least one factor");
        sum_into(&mut acc, term);
    });
    acc.ok_or(Error::IndexTooLarge { m, cap: 0 })
}

/// `H^(m)(1/f)` as `sum_k (-1)^k f^{-(k+1)} sum_{parts >= 1} H^(i_1)(f) ... H^(i_k)(f)`.
/// Requires `m >= 1`.
pub fn quotient_rule_compositions(f: &TruncSeries, m: usize) -> Result<TruncSeries> {
    let table = ht_table(f, m)?;
    let inv = f.invert()?;
    let mut inv_powers = Vec::with_capacity(m + 2);
    inv_powers.push(TruncSeries::one(f.field(), f.order()));
    for k in 1..=m + 1 {
        inv_powers.push(&inv_powers[k - 1] * &inv);
    }
    let mut acc = None;
    for_each_composition(m, &mut |parts| {
        let k = parts.len();
        let prod = parts.iter().map(|&i| table[i].clone()).reduce(|a, b| &a * &b).expect("m >= 1");
        let sign = f.field().embed(if k % 2 == 0 { 1 } else { -1 });
        sum_into(&mut acc, (&prod * &inv_powers[k + 1]).scale_element(&sign));
    });
    acc.ok_or(Error::IndexTooLarge { m, cap: 0 })
}

/// `H^(m)(1/f)` as
/// `sum_k binom(m+1, k+1) (-1)^k f^{-(k+1)} sum_{parts >= 0} H^(i_1)(f) ... H^(i_k)(f)`.
/// Requires `m >= 1`.
pub fn quotient_rule_binomial(f: &TruncSeries, m: usize) -> Result<TruncSeries> {
    let table = ht_table(f, m)?;
    let binom = BinomTable::new(f.field().p());
    let inv = f.invert()?;
    // conv[i] holds the inner sum over weak compositions of i into k parts
    let mut conv: Vec<TruncSeries> = table.clone();
    let mut acc = None;
    let mut inv_power = inv.clone();
    for k in 1..=m {
        if k > 1 {
            conv = (0..=m)
                .map(|i| {
                    let mut s = None;
                    for a in 0..=i {
                        sum_into(&mut s, &conv[i - a] * &table[a]);
                    }
                    s.expect("at least one split")
                })
                .collect();
        }
        inv_power = &inv_power * &inv;
        let c = binom.get(m as u64 + 1, k as u64 + 1) as i64;
        let sign = if k % 2 == 0 { c } else { -c };
        sum_into(&mut acc, (&conv[m] * &inv_power).scale_element(&f.field().embed(sign)));
    }
    acc.ok_or(Error::IndexTooLarge { m, cap: 0 })
}

/// `H^(m)(f^j)` as
/// `sum_k f^{j-k} sum_{i} [j (j-1) ... (j-k+1) / (i_1! ... i_m!)] prod_t H^(t)(f)^{i_t}`,
/// the inner sum over multiplicity vectors with `sum i_t = k`, `sum t i_t = m`.
/// Requires `m >= 1`.
pub fn power_rule(f: &TruncSeries, j: usize, m: usize) -> Result<TruncSeries> {
    let table = ht_table(f, m)?;
    let mut f_powers = Vec::with_capacity(j + 1);
    f_powers.push(TruncSeries::one(f.field(), f.order()));
    for k in 1..=j {
        f_powers.push(&f_powers[k - 1] * f);
    }
    let mut acc = None;
    let mut overflow = false;
    for_each_partition(m, &mut |mult| {
        let k: usize = mult.iter().sum();
        if k == 0 || k > j {
            return;
        }
        let Some(c) = falling_multinomial(j, mult) else {
            overflow = true;
            return;
        };
        let mut term = f_powers[j - k].clone();
        for (t, &count) in mult.iter().enumerate() {
            for _ in 0..count {
                term = &term * &table[t + 1];
            }
        }
        sum_into(&mut acc, term.scale_element(&embed_residue(f, c)));
    });
    if overflow {
        return Err(Error::IndexTooLarge { m, cap: 30 });
    }
    // every partition of m has k >= 1 parts; when j < k for all of them the sum is empty
    Ok(acc.unwrap_or_else(|| TruncSeries::zero(f.field(), f.order() - m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use crate::ratfunc::RatFunc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_series(f: &FieldSpec, order: usize, rng: &mut ChaCha8Rng, unit: bool) -> TruncSeries {
        let r = f.r();
        let coeffs = (0..order)
            .map(|i| {
                let c = f.element_at(rng.gen_range(if unit && i == 0 { 1 } else { 0 }..r)).unwrap();
                let d = f.element_at(rng.gen_range(0..r)).unwrap();
                // c / (T + d) or c
                if rng.gen_bool(0.5) {
                    RatFunc::from_element(&c)
                } else {
                    RatFunc::new(
                        crate::poly::Poly::constant(&c),
                        &crate::poly::Poly::t(f) + &crate::poly::Poly::constant(&d),
                    )
                    .unwrap()
                }
            })
            .collect();
        TruncSeries::new(f, coeffs).unwrap()
    }

    fn agree(a: &TruncSeries, b: &TruncSeries) -> bool {
        let n = a.order().min(b.order());
        a.coeffs()[..n] == b.coeffs()[..n]
    }

    #[test]
    fn rules_hold_on_small_random_series() {
        let seed = 0x5eed_u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for f in [FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            for _ in 0..6 {
                let order = 10;
                let a = random_series(&f, order, &mut rng, true);
                let b = random_series(&f, order, &mut rng, false);
                for m in 1..=5 {
                    let lhs = (&a * &b).ht_derivative(m).unwrap();
                    assert!(agree(&lhs, &product_rule(&[a.clone(), b.clone()], m).unwrap()), "seed {seed}");
                    let inv = a.invert().unwrap().ht_derivative(m).unwrap();
                    assert!(agree(&inv, &quotient_rule_compositions(&a, m).unwrap()), "seed {seed}");
                    assert!(agree(&inv, &quotient_rule_binomial(&a, m).unwrap()), "seed {seed}");
                    for j in 2..=3 {
                        let p = a.pow(j as u32).ht_derivative(m).unwrap();
                        assert!(agree(&p, &power_rule(&a, j, m).unwrap()), "seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn power_rule_m1_is_j_f_pow_j_minus_1_derivative() {
        let f = FieldSpec::prime(5).unwrap();
        let a = TruncSeries::new(&f, (1..7).map(|i| RatFunc::from_int(&f, i)).collect()).unwrap();
        let expect = (&a.pow(2) * &a.ht_derivative(1).unwrap()).scale_element(&f.embed(3));
        assert!(agree(&power_rule(&a, 3, 1).unwrap(), &expect));
    }
}
