//! Scalar arithmetic in F_p for machine-sized p, plus a Tonelli–Shanks
//! square root used by the quadratic-splitting step of the factorizer.

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse mod prime p; panics on zero input.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "division by zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// A square root of `a` mod odd prime `p`, or `None` when `a` is a
/// non-residue. Tonelli–Shanks; p = 2 handled trivially.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Tonelli-Shanks for p = 1 mod 4.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;

    #[test]
    fn sqrt_roundtrip_exhaustive_small_primes() {
        for &p in &primes_below(200) {
            for a in 0..p {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a, "sqrt({a}) mod {p}"),
                    None => assert_ne!(pow_mod(a, (p - 1) / 2, p), 1),
                }
            }
        }
    }

    #[test]
    fn inverse() {
        for &p in &[3u64, 7, 997] {
            for a in 1..p.min(100) {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }
}
