//! Small integer helpers.

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some((p, k))` when `n = p^k` with `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(n);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut k = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

/// True for 1 and for prime powers.
pub fn is_prime_power_or_one(n: u64) -> bool {
    n == 1 || prime_power(n).is_some()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring() {
        assert_eq!(prime_divisors(720), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime_power_or_one(1));
        assert_eq!(p_part(29484, 3), 81);
        assert!(is_prime(29) && !is_prime(1) && !is_prime(91));
    }
}
