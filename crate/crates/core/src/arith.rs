//! Small number-theoretic helpers over `u64`.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// gcd of `n` with every entry of `values`.
pub fn gcd_all(n: u64, values: &[u64]) -> u64 {
    values.iter().fold(n, |g, &v| gcd(g, v))
}

/// Euler's totient.
pub fn phi(m: u64) -> u64 {
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Residues in `1..m` coprime to `m`, ascending. For `m == 1` returns `[1]`.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|&t| gcd(t, m) == 1).collect()
}

/// Divisors of `n` in ascending order (`n > 0`).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Reduce a signed integer into `0..m`.
pub fn reduce_signed(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_small_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (m, &e) in (1..=12).zip(expected.iter()) {
            assert_eq!(phi(m), e, "phi({m})");
            assert_eq!(units(m).len() as u64, e.max(1));
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn inverses() {
        assert_eq!(inverse_mod(3, 5), Some(2));
        assert_eq!(inverse_mod(2, 4), None);
        assert_eq!(reduce_signed(-6, 5), 4);
    }
}
