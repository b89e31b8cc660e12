//! Kronecker symbol over arbitrary-precision integers.

use super::Int;
use crate::{Error, Result};
use num::{Integer, Signed, ToPrimitive, Zero};

/// Kronecker symbol `(a | n)` for `n != 0`.
///
/// Agrees with the Legendre symbol for odd prime `n` and with the Jacobi
/// symbol for odd positive `n`.
pub fn kronecker(a: &Int, n: &Int) -> Result<i8> {
    if n.is_zero() {
        return Err(Error::KroneckerZeroModulus);
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut sign = 1i8;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            sign = -sign;
        }
    }
    // Split off the even part of n; (a|2) is periodic mod 8.
    let two = Int::from(2);
    let mut twos = 0u32;
    while n.is_even() {
        n /= &two;
        twos += 1;
    }
    if twos > 0 {
        if a.is_even() {
            return Ok(0);
        }
        let r = a.mod_floor(&Int::from(8)).to_u8().unwrap();
        let k2 = if r == 1 || r == 7 { 1 } else { -1 };
        if twos % 2 == 1 {
            sign *= k2;
        }
    }
    // Jacobi symbol (a | n) for odd n > 0 via quadratic reciprocity.
    a = a.mod_floor(&n);
    let mut t = sign;
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let r = n.mod_floor(&Int::from(8)).to_u8().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let three = Int::from(3);
        if a.mod_floor(&Int::from(4)) == three && n.mod_floor(&Int::from(4)) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n == Int::from(1) {
        Ok(t)
    } else {
        Ok(0)
    }
}

/// Convenience wrapper for machine-sized arguments.
pub fn kronecker_i64(a: i64, n: i64) -> Result<i8> {
    kronecker(&Int::from(a), &Int::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, primes_below};

    #[test]
    fn zero_modulus_rejected() {
        assert!(kronecker_i64(5, 0).is_err());
    }

    #[test]
    fn paper_anchored_values() {
        assert_eq!(kronecker_i64(-3, 7).unwrap(), 1);
        assert_eq!(kronecker_i64(-1, 3).unwrap(), -1);
        for n in (3..60).step_by(2) {
            assert_eq!(kronecker_i64(1, n).unwrap(), 1, "unit numerator, n = {n}");
        }
    }

    #[test]
    fn legendre_agreement_via_euler() {
        for &p in &[3u64, 5, 7, 11, 13, 101, 997] {
            for a in -20i64..20 {
                let euler = {
                    let am = a.rem_euclid(p as i64) as u64;
                    if am == 0 {
                        0
                    } else {
                        let e = super::super::pow_mod(am, (p - 1) / 2, p);
                        if e == 1 {
                            1
                        } else {
                            -1
                        }
                    }
                };
                assert_eq!(kronecker_i64(a, p as i64).unwrap() as i64, euler, "({a}|{p})");
            }
        }
    }

    #[test]
    fn multiplicative_in_numerator() {
        for n in (1..200i64).step_by(2) {
            for a in -50..=50i64 {
                for b in -50..=50i64 {
                    let lhs = kronecker_i64(a * b, n).unwrap();
                    let rhs = kronecker_i64(a, n).unwrap() * kronecker_i64(b, n).unwrap();
                    assert_eq!(lhs, rhs, "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn quadratic_reciprocity() {
        let ps: Vec<i64> = primes_below(100).iter().map(|&p| p as i64).collect();
        for &p in &ps {
            for &q in &ps {
                if p == 2 || q == 2 || p == q {
                    continue;
                }
                let lhs = kronecker_i64(p, q).unwrap() * kronecker_i64(q, p).unwrap();
                let rhs = if p % 4 == 3 && q % 4 == 3 { -1 } else { 1 };
                assert_eq!(lhs, rhs, "reciprocity for ({p}, {q})");
                assert!(is_prime(p as u64) && is_prime(q as u64));
            }
        }
    }

    #[test]
    fn even_and_negative_moduli() {
        assert_eq!(kronecker_i64(-3, 2).unwrap(), -1); // -3 = 5 mod 8
        assert_eq!(kronecker_i64(-4, 5).unwrap(), 1);
        assert_eq!(kronecker_i64(8, 3).unwrap(), -1);
        assert_eq!(kronecker_i64(2, 15).unwrap(), 1);
        assert_eq!(kronecker_i64(-1, -11).unwrap(), 1);
        assert_eq!(kronecker_i64(10, -11).unwrap(), -1);
    }
}
