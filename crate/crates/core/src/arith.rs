//! Small-integer number theory helpers: primality, factorization, CRT.

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(p, e)` pairs with increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Extended gcd on `i128`: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A congruence `x = residue (mod modulus)` with `0 <= residue < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub residue: i128,
    pub modulus: i128,
}

impl Congruence {
    pub fn new(residue: i128, modulus: i128) -> Congruence {
        assert!(modulus > 0, "modulus must be positive");
        Congruence {
            residue: residue.rem_euclid(modulus),
            modulus,
        }
    }

    pub fn holds(&self, x: i128) -> bool {
        (x - self.residue).rem_euclid(self.modulus) == 0
    }
}

/// Merge two congruences with possibly non-coprime moduli. `None` when they
/// are incompatible; `Err` when the merged modulus overflows `i128`.
pub fn crt_pair(x: Congruence, y: Congruence) -> Result<Option<Congruence>, ()> {
    let (g, p, _) = ext_gcd(x.modulus, y.modulus);
    let diff = y.residue - x.residue;
    if diff.rem_euclid(g) != 0 {
        return Ok(None);
    }
    let m2 = y.modulus / g;
    let lcm = x.modulus.checked_mul(m2).ok_or(())?;
    let t = ((diff / g).rem_euclid(m2) * p.rem_euclid(m2)).rem_euclid(m2);
    let r = x.residue.checked_add(x.modulus.checked_mul(t).ok_or(())?).ok_or(())?;
    Ok(Some(Congruence::new(r, lcm)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(561_587_423));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn factor_and_divisors() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn crt() {
        let c = crt_pair(Congruence::new(2, 6), Congruence::new(5, 9)).unwrap().unwrap();
        assert_eq!(c, Congruence::new(14, 18));
        assert!(crt_pair(Congruence::new(1, 4), Congruence::new(3, 4)).unwrap().is_none());
    }
}
