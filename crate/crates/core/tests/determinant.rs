use carlitz_core::matrix::Matrix;
use carlitz_core::{FieldSpec, Poly, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Laplace expansion along the first row of the given rows and columns.
fn cofactor(m: &Matrix, rows: &[usize], cols: &[usize]) -> RatFunc {
    let field = m.get(0, 0).field().clone();
    if rows.is_empty() {
        return RatFunc::one(&field);
    }
    let mut acc = RatFunc::zero(&field);
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(rows[0], c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a * &cofactor(m, &rows[1..], &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn random_entry(f: &FieldSpec, rng: &mut ChaCha8Rng) -> RatFunc {
    let r = f.r();
    let c = f.element_at(rng.gen_range(0..r)).unwrap();
    let d = f.element_at(rng.gen_range(0..r)).unwrap();
    match rng.gen_range(0..4) {
        0 => RatFunc::zero(f),
        1 => RatFunc::from_element(&c),
        2 => RatFunc::new(Poly::constant(&c), &Poly::t(f) + &Poly::constant(&d)).unwrap(),
        _ => RatFunc::from_poly(&Poly::t(f).scale(&c) + &Poly::constant(&d)),
    }
}

#[test]
fn gaussian_elimination_matches_cofactor_expansion() {
    let seed = 20240917u64;
    println!("seed={seed}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for f in [
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(3).unwrap(),
        FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap(),
        FieldSpec::prime(5).unwrap(),
    ] {
        for _ in 0..12 {
            let n = rng.gen_range(1..=8usize);
            // lower Hessenberg: zero above the superdiagonal
            let entries: Vec<RatFunc> = (0..n * n)
                .map(|k| if k % n > k / n + 1 { RatFunc::zero(&f) } else { random_entry(&f, &mut rng) })
                .collect();
            let m = Matrix::from_fn(&f, n, |i, j| entries[i * n + j].clone()).unwrap();
            let idx: Vec<usize> = (0..n).collect();
            assert_eq!(m.determinant(), cofactor(&m, &idx, &idx), "seed={seed} r={} n={n}", f.r());
        }
    }
}
