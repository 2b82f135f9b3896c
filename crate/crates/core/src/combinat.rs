//! Enumeration of integer compositions and partitions, and exact multinomials.

use alloc::vec;
use alloc::vec::Vec;

/// Calls `visit` with every `parts`-tuple of integers `>= min_part` summing
/// to `total`, in lexicographic order.
pub fn for_each_tuple(total: usize, parts: usize, min_part: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, slots: usize, min: usize, buf: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if slots == 0 {
            if rest == 0 {
                visit(buf);
            }
            return;
        }
        // leave room for the remaining slots
        let reserve = (slots - 1) * min;
        if rest < reserve + min {
            return;
        }
        for first in min..=rest - reserve {
            buf.push(first);
            go(rest - first, slots - 1, min, buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(parts);
    go(total, parts, min_part, &mut buf, visit);
}

/// Calls `visit` with every composition of `total` (ordered, parts `>= 1`).
/// `total = 0` has no compositions here.
pub fn for_each_composition(total: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, buf: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        for first in 1..=rest {
            buf.push(first);
            if first == rest {
                visit(buf);
            } else {
                go(rest - first, buf, visit);
            }
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    go(total, &mut buf, visit);
}

/// Calls `visit` with every multiplicity vector `(i_1, ..., i_m)` with
/// `sum t * i_t = m` (i.e. every partition of `m`); `v[t - 1] = i_t`.
pub fn for_each_partition(m: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(t: usize, rest: usize, mult: &mut [usize], visit: &mut impl FnMut(&[usize])) {
        if rest == 0 {
            visit(mult);
            return;
        }
        if t == 0 {
            return;
        }
        for count in (0..=rest / t).rev() {
            mult[t - 1] = count;
            go(t - 1, rest - count * t, mult, visit);
        }
        mult[t - 1] = 0;
    }
    let mut mult = vec![0usize; m];
    go(m, m, &mut mult, visit);
}

/// `(sum k_i)! / prod k_i!` exactly, or `None` on `u128` overflow.
pub fn multinomial(ks: &[usize]) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut n: usize = 0;
    for &k in ks {
        for i in 1..=k {
            n += 1;
            // acc * C(n, i) / ... built as successive binomials: acc = acc * n / i stays integral
            acc = acc.checked_mul(n as u128)? / i as u128;
        }
    }
    Some(acc)
}

/// `n (n-1) ... (n-k+1) / prod i_t!` with `k = sum i_t`, exactly.
pub fn falling_multinomial(n: usize, ks: &[usize]) -> Option<u128> {
    let k: usize = ks.iter().sum();
    if k > n {
        return Some(0);
    }
    // C(n, k) * k! / prod i_t!
    let mut binom: u128 = 1;
    for i in 0..k {
        binom = binom.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    binom.checked_mul(multinomial(ks)?)
}
