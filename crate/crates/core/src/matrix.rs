//! Square matrices over `F_r(T)` and their determinants.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    n: usize,
    // row-major
    entries: Vec<RatFunc>,
}

impl Matrix {
    pub fn from_fn(field: &FieldSpec, n: usize, mut entry: impl FnMut(usize, usize) -> RatFunc) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = entry(i, j);
                if v.field() != field {
                    return Err(Error::MixedFields);
                }
                entries.push(v);
            }
        }
        Ok(Matrix { field: field.clone(), n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    /// Determinant by Gaussian elimination. A zero pivot triggers a search
    /// down the column for a nonzero row to swap in; a column with no nonzero
    /// candidate means the determinant is zero.
    pub fn determinant(&self) -> RatFunc {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = RatFunc::one(&self.field);
        let mut negate = false;
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return RatFunc::zero(&self.field);
            };
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                }
                negate = !negate;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let pivot_inv = pivot.inv().expect("pivot is nonzero");
            // columns where the pivot row is nonzero; everything else is untouched
            let support: Vec<usize> = (col + 1..n).filter(|&k| !a[col * n + k].is_zero()).collect();
            for row in col + 1..n {
                if a[row * n + col].is_zero() {
                    continue;
                }
                let factor = &a[row * n + col] * &pivot_inv;
                for &k in &support {
                    let update = &factor * &a[col * n + k];
                    a[row * n + k] = &a[row * n + k] - &update;
                }
                a[row * n + col] = RatFunc::zero(&self.field);
            }
        }
        if negate {
            -det
        } else {
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn rf(f: &FieldSpec, s: &str) -> RatFunc {
        RatFunc::parse(f, s).unwrap()
    }

    #[test]
    fn small_determinants() {
        let f = FieldSpec::prime(3).unwrap();
        let d1 = rf(&f, "1/T^3+2*T");
        // [[0, 1], [1/D_1, 0]]
        let m = Matrix::from_fn(&f, 2, |i, j| match (i, j) {
            (0, 1) => RatFunc::one(&f),
            (1, 0) => d1.clone(),
            _ => RatFunc::zero(&f),
        })
        .unwrap();
        assert_eq!(m.determinant(), -&d1);
        let empty = Matrix::from_fn(&f, 0, |_, _| unreachable!()).unwrap();
        assert!(empty.determinant().is_one());
        let singular = Matrix::from_fn(&f, 3, |i, _| RatFunc::from_int(&f, i as i64)).unwrap();
        assert!(singular.determinant().is_zero());
        let vals = [vec![2, 1, 0], vec![1, 1, 1], vec![0, 2, 1]];
        // 2(1-2) - 1(1-0) + 0 = -3 = 0 mod 3
        let m = Matrix::from_fn(&f, 3, |i, j| RatFunc::from_int(&f, vals[i][j])).unwrap();
        assert!(m.determinant().is_zero());
        let g = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_fn(&g, 3, |i, j| RatFunc::from_int(&g, vals[i][j])).unwrap();
        assert_eq!(m.determinant(), RatFunc::from_int(&g, -3));
    }
}
