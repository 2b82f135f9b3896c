use carlitz_core::series::binom_mod_p;
use carlitz_core::{FieldSpec, Poly, RatFunc, TruncSeries};
use proptest::prelude::*;

const ORDER: usize = 7;

fn field(i: usize) -> FieldSpec {
    match i {
        0 => FieldSpec::prime(2).unwrap(),
        1 => FieldSpec::prime(3).unwrap(),
        2 => FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap(),
        _ => FieldSpec::prime(5).unwrap(),
    }
}

/// Coefficient codes `(kind, c, d)` become `c`, `c / (T + d)` or `c T + d`.
fn series(f: &FieldSpec, codes: &[(u8, u64, u64)], unit: bool) -> TruncSeries {
    let r = f.r();
    let t = Poly::t(f);
    let coeffs = codes
        .iter()
        .enumerate()
        .map(|(i, &(kind, c, d))| {
            let c = if unit && i == 0 { 1 + c % (r - 1) } else { c % r };
            let c = f.element_at(c).unwrap();
            let d = f.element_at(d % r).unwrap();
            match kind % 3 {
                0 => RatFunc::from_element(&c),
                1 => RatFunc::new(Poly::constant(&c), &t + &Poly::constant(&d)).unwrap(),
                _ => RatFunc::new(&t.scale(&d) + &Poly::constant(&c), Poly::one(f)).unwrap(),
            }
        })
        .collect();
    TruncSeries::new(f, coeffs).unwrap()
}

fn codes() -> impl Strategy<Value = Vec<(u8, u64, u64)>> {
    prop::collection::vec((0u8..3, 0u64..5, 0u64..5), ORDER)
}

fn prefix_eq(a: &TruncSeries, b: &TruncSeries) -> bool {
    let n = a.order().min(b.order());
    a.coeffs()[..n] == b.coeffs()[..n]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_is_two_sided(fi in 0usize..4, a in codes()) {
        let f = field(fi);
        let s = series(&f, &a, true);
        let inv = s.invert().unwrap();
        prop_assert_eq!(&s * &inv, TruncSeries::one(&f, ORDER));
        prop_assert_eq!(inv.invert().unwrap(), s);
    }

    #[test]
    fn leibniz(fi in 0usize..4, a in codes(), b in codes(), m in 0usize..ORDER) {
        let f = field(fi);
        let (g, h) = (series(&f, &a, false), series(&f, &b, false));
        let lhs = (&g * &h).ht_derivative(m).unwrap();
        let mut rhs = TruncSeries::zero(&f, ORDER - m);
        for i in 0..=m {
            rhs = &rhs + &(&g.ht_derivative(i).unwrap() * &h.ht_derivative(m - i).unwrap());
        }
        prop_assert!(prefix_eq(&lhs, &rhs));
    }

    #[test]
    fn derivatives_compose_binomially(fi in 0usize..4, a in codes(), i in 0usize..4, j in 0usize..3) {
        let f = field(fi);
        let s = series(&f, &a, false);
        let twice = s.ht_derivative(j).unwrap().ht_derivative(i).unwrap();
        let c = binom_mod_p((i + j) as u64, i as u64, f.p() as u32);
        let once = s.ht_derivative(i + j).unwrap().scale_element(&f.embed(c as i64));
        prop_assert!(prefix_eq(&twice, &once));
    }

    #[test]
    fn power_is_repeated_product(fi in 0usize..4, a in codes(), j in 0u32..5) {
        let f = field(fi);
        let s = series(&f, &a, false);
        let mut expect = TruncSeries::one(&f, ORDER);
        for _ in 0..j {
            expect = &expect * &s;
        }
        prop_assert_eq!(s.pow(j), expect);
    }

    #[test]
    fn z_is_a_compositional_identity(fi in 0usize..4, a in codes()) {
        let f = field(fi);
        let mut s = series(&f, &a, false).coeffs().to_vec();
        s[0] = RatFunc::zero(&f);
        let s = TruncSeries::new(&f, s).unwrap();
        let z = TruncSeries::z(&f, ORDER);
        prop_assert_eq!(s.compose(&z).unwrap(), s.clone());
        prop_assert_eq!(z.compose(&s).unwrap(), s);
    }
}
