//! Randomized checks of the Hasse-Teichmueller product, quotient and power
//! rules against direct differentiation.

use carlitz_core::series::rules::{power_rule, product_rule, quotient_rule_binomial, quotient_rule_compositions};
use carlitz_core::{FieldSpec, Poly, RatFunc, Result, TruncSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub r: u64,
    pub seed: u64,
    pub series: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random coefficient: a field constant, or `c / (T + d)`, or `c T + d`.
fn random_coeff(field: &FieldSpec, rng: &mut ChaCha8Rng, nonzero: bool) -> RatFunc {
    let r = field.r();
    let c = field.element_at(rng.gen_range(u64::from(nonzero)..r)).unwrap();
    let d = field.element_at(rng.gen_range(0..r)).unwrap();
    let t = Poly::t(field);
    match rng.gen_range(0..3) {
        0 => RatFunc::from_element(&c),
        1 => RatFunc::new(Poly::constant(&c), &t + &Poly::constant(&d)).unwrap(),
        // c T + d with d forced nonzero when a unit is needed
        _ => {
            let d = if nonzero && d.is_zero() { field.one() } else { d };
            RatFunc::from_poly(&t.scale(&c) + &Poly::constant(&d))
        }
    }
}

/// A random series of the given order; `unit` makes the constant term nonzero.
pub fn random_series(field: &FieldSpec, order: usize, rng: &mut ChaCha8Rng, unit: bool) -> TruncSeries {
    let coeffs = (0..order).map(|i| random_coeff(field, rng, unit && i == 0)).collect();
    TruncSeries::new(field, coeffs).unwrap()
}

fn agree(a: &TruncSeries, b: &TruncSeries) -> bool {
    let n = a.order().min(b.order());
    a.coeffs()[..n] == b.coeffs()[..n]
}

/// Checks every rule for `m = 1..=m_max` on `count` random unit series.
pub fn check_lemmas(field: &FieldSpec, seed: u64, count: usize, m_max: usize) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = m_max + 3;
    let mut report = LemmaReport { r: field.r(), seed, series: count, checks: 0, failures: Vec::new() };
    for case in 0..count {
        let f = random_series(field, order, &mut rng, true);
        let g = random_series(field, order, &mut rng, false);
        let h = random_series(field, order, &mut rng, false);
        let j = rng.gen_range(2..=4usize);
        let inv = f.invert()?;
        let fg = &f * &g;
        let fgh = &fg * &h;
        let fj = f.pow(j as u32);
        for m in 1..=m_max {
            let checks = [
                ("product rule (2 factors)", agree(&fg.ht_derivative(m)?, &product_rule(&[f.clone(), g.clone()], m)?)),
                (
                    "product rule (3 factors)",
                    agree(&fgh.ht_derivative(m)?, &product_rule(&[f.clone(), g.clone(), h.clone()], m)?),
                ),
                ("quotient rule (compositions)", agree(&inv.ht_derivative(m)?, &quotient_rule_compositions(&f, m)?)),
                ("quotient rule (binomial)", agree(&inv.ht_derivative(m)?, &quotient_rule_binomial(&f, m)?)),
                ("power rule", agree(&fj.ht_derivative(m)?, &power_rule(&f, j, m)?)),
            ];
            for (name, ok) in checks {
                report.checks += 1;
                if !ok {
                    report.failures.push(format!("{name} failed: r={} seed={seed} case={case} m={m}", field.r()));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let f = FieldSpec::prime(3).unwrap();
        let a = check_lemmas(&f, 7, 5, 4).unwrap();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a.checks, 5 * 4 * 5);
        let mut r1 = ChaCha8Rng::seed_from_u64(9);
        let mut r2 = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(random_series(&f, 6, &mut r1, true), random_series(&f, 6, &mut r2, true));
    }

    #[test]
    fn unit_series_invert() {
        let f = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(random_series(&f, 4, &mut rng, true).invert().is_ok());
        }
    }
}
