//! Rank of rational matrices by elimination modulo word-sized primes.
//!
//! Reduction mod p can only lower the rank. A nonzero r×r minor of the
//! row-scaled integer matrix is bounded by the product of the r largest row
//! norms (Hadamard), so once the primes used multiply past that bound at least
//! one of them does not divide it, and the largest rank seen is the rational
//! rank. No step is probabilistic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exact::Rational;

/// Primes below 2^31, so products and sums of products stay inside u64.
const PRIME_BITS: u64 = 30;

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Miller-Rabin with bases 2, 7, 61: exact below 4.7e9.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for b in [2, 7, 61] {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2, 7, 61].iter().all(|&a| {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// Primes just below 2^31, descending; enough for any Hadamard bound met in
/// practice, and extended on demand past that.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| ((1u64 << 30)..(1u64 << 31)).rev().filter(|&n| is_prime(n)).take(256).collect());
    let last = *cached.last().expect("primes");
    cached
        .iter()
        .copied()
        .chain(((1u64 << 30)..last).rev().filter(|&n| is_prime(n)))
}

enum Ints {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

/// Each row scaled by the lcm of its denominators.
fn integer_rows(rows: &[&Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Bits of the Hadamard bound on any minor of an integer matrix.
fn hadamard_bits(rows: &[Vec<BigInt>], ncols: usize) -> u64 {
    let mut bits: Vec<u64> = rows
        .iter()
        .map(|row| {
            let norm2: BigInt = row.iter().map(|v| v * v).sum();
            // log2 sqrt(norm2) <= ceil(bits / 2)
            norm2.bits().div_ceil(2)
        })
        .collect();
    bits.sort_unstable_by(|a, b| b.cmp(a));
    bits.iter().take(ncols).sum()
}

fn rank_mod(ints: &Ints, ncols: usize, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = match ints {
        Ints::Small(rows) => rows
            .iter()
            .map(|r| r.iter().map(|v| v.rem_euclid(p as i128) as u64).collect())
            .collect(),
        Ints::Big(rows) => {
            let pb = BigInt::from(p);
            rows.iter()
                .map(|r| r.iter().map(|v| v.mod_floor(&pb).to_u64().expect("residue")).collect())
                .collect()
        }
    };
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        for x in m[r].iter_mut().skip(c) {
            *x = *x * inv % p;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (x, y) in row.iter_mut().zip(pivot).skip(c) {
                *x = (*x + g * y) % p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Exact rank of a rational matrix with `ncols` columns.
pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let rows: Vec<&Vec<Rational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let ceiling = rows.len().min(ncols);
    if ceiling == 0 {
        return 0;
    }
    let big = integer_rows(&rows);
    let need = hadamard_bits(&big, ncols) + 1;
    let small: Option<Vec<Vec<i128>>> =
        big.iter().map(|r| r.iter().map(|v| v.to_i128()).collect()).collect();
    let ints = match small {
        Some(s) => Ints::Small(s),
        None => Ints::Big(big),
    };
    let (mut best, mut have) = (0, 0u64);
    for p in primes() {
        best = best.max(rank_mod(&ints, ncols, p));
        have += PRIME_BITS;
        if best == ceiling || have >= need {
            return best;
        }
    }
    unreachable!("infinitely many primes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn small_primes_detected() {
        assert!(is_prime((1 << 31) - 1));
        assert!(!is_prime((1 << 31) + 1));
        assert!(primes().take(300).all(|p| p < 1 << 31 && p > 1 << 30 && is_prime(p)));
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let m = vec![
            vec![q(1, 2), q(1, 3), q(0, 1)],
            vec![q(3, 2), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(7, 5)],
            vec![q(2, 1), q(4, 3), q(7, 5)],
        ];
        assert_eq!(rank(&m, 3), linalg::rank(&m));
        assert_eq!(rank(&m, 3), 2);
    }

    #[test]
    fn prime_multiple_does_not_fool_rank() {
        // The determinant is the first prime used; the bound forces a second.
        let p = primes().next().unwrap() as i64;
        let m = vec![vec![q(p, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        assert_eq!(rank(&m, 2), 2);
    }
}
