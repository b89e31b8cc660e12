//! F_{p^2} as F_p[x]/(x^2 + bx + c) for the lexicographically least monic
//! irreducible quadratic. The fixed modulus makes every downstream
//! computation reproducible across runs.

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod, sqrt_mod};
use crate::{Error, Result};

/// Element a0 + a1*x of F_{p^2}; only meaningful relative to a [`Fp2Ctx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a0: u64,
    pub a1: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { a0: 0, a1: 0 };
    pub const ONE: Fp2 = Fp2 { a0: 1, a1: 0 };

    pub fn scalar(a: u64) -> Self {
        Fp2 { a0: a, a1: 0 }
    }

    pub fn gen() -> Self {
        Fp2 { a0: 0, a1: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }
}

/// Arithmetic context for F_{p^2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp2Ctx {
    pub p: u64,
    /// Modulus x^2 + b x + c.
    pub b: u64,
    pub c: u64,
}

impl Fp2Ctx {
    /// Deterministic context: the lexicographically least (b, c) with
    /// x^2 + bx + c irreducible mod p.
    pub fn new(p: u64) -> Result<Self> {
        if !super::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        for b in 0..p {
            for c in 0..p {
                if Self::quadratic_is_irreducible(p, b, c) {
                    return Ok(Fp2Ctx { p, b, c });
                }
            }
        }
        Err(Error::Internal(format!("no irreducible quadratic mod {p}")))
    }

    fn quadratic_is_irreducible(p: u64, b: u64, c: u64) -> bool {
        if p == 2 {
            // Roots check directly: x^2 + bx + c at x = 0, 1.
            return c == 1 && (1 + b + c) % 2 == 1;
        }
        let disc = add_mod(mul_mod(b, b, p), neg_mod(mul_mod(4, c, p), p), p);
        sqrt_mod(disc, p).is_none()
    }

    pub fn add(&self, u: Fp2, v: Fp2) -> Fp2 {
        Fp2 {
            a0: add_mod(u.a0, v.a0, self.p),
            a1: add_mod(u.a1, v.a1, self.p),
        }
    }

    pub fn neg(&self, u: Fp2) -> Fp2 {
        Fp2 {
            a0: neg_mod(u.a0, self.p),
            a1: neg_mod(u.a1, self.p),
        }
    }

    pub fn sub(&self, u: Fp2, v: Fp2) -> Fp2 {
        self.add(u, self.neg(v))
    }

    pub fn mul(&self, u: Fp2, v: Fp2) -> Fp2 {
        // (u0 + u1 x)(v0 + v1 x) with x^2 = -bx - c.
        let p = self.p;
        let t2 = mul_mod(u.a1, v.a1, p);
        let t1 = add_mod(mul_mod(u.a0, v.a1, p), mul_mod(u.a1, v.a0, p), p);
        let t0 = mul_mod(u.a0, v.a0, p);
        Fp2 {
            a0: add_mod(t0, neg_mod(mul_mod(t2, self.c, p), p), p),
            a1: add_mod(t1, neg_mod(mul_mod(t2, self.b, p), p), p),
        }
    }

    pub fn scalar_mul(&self, s: u64, u: Fp2) -> Fp2 {
        Fp2 {
            a0: mul_mod(s, u.a0, self.p),
            a1: mul_mod(s, u.a1, self.p),
        }
    }

    pub fn pow(&self, u: Fp2, mut e: u64) -> Fp2 {
        let mut acc = Fp2::ONE;
        let mut base = u;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The field Frobenius x -> x^p, an order-2 automorphism.
    pub fn frobenius(&self, u: Fp2) -> Fp2 {
        // The conjugate root of x^2 + bx + c is -b - x.
        let p = self.p;
        Fp2 {
            a0: add_mod(u.a0, neg_mod(mul_mod(u.a1, self.b, p), p), p),
            a1: neg_mod(u.a1, p),
        }
    }

    pub fn inv(&self, u: Fp2) -> Fp2 {
        assert!(!u.is_zero(), "inverse of zero in F_p^2");
        let conj = self.frobenius(u);
        let norm = self.mul(u, conj);
        debug_assert_eq!(norm.a1, 0, "norm must land in F_p");
        self.scalar_mul(inv_mod(norm.a0, self.p), conj)
    }

    /// All p^2 elements, in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = Fp2> + '_ {
        let p = self.p;
        (0..p).flat_map(move |a1| (0..p).map(move |a0| Fp2 { a0, a1 }))
    }

    /// Matrix of Frobenius on the F_p-basis {1, x}: columns are images.
    pub fn frobenius_matrix(&self) -> [[u64; 2]; 2] {
        let f1 = self.frobenius(Fp2::ONE);
        let fx = self.frobenius(Fp2::gen());
        [[f1.a0, fx.a0], [f1.a1, fx.a1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(Fp2Ctx::new(2).unwrap(), Fp2Ctx { p: 2, b: 1, c: 1 });
        // mod 3: x^2 + 1 is irreducible (b = 0, c = 1).
        assert_eq!(Fp2Ctx::new(3).unwrap(), Fp2Ctx { p: 3, b: 0, c: 1 });
        // mod 5: x^2 + 2 (c = 1 gives -1 = 4 = 2^2 a residue, c = 2 works).
        assert_eq!(Fp2Ctx::new(5).unwrap(), Fp2Ctx { p: 5, b: 0, c: 2 });
        // mod 7: -1 is a non-residue, so x^2 + 1.
        assert_eq!(Fp2Ctx::new(7).unwrap(), Fp2Ctx { p: 7, b: 0, c: 1 });
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for p in [2u64, 3, 5] {
            let k = Fp2Ctx::new(p).unwrap();
            for u in k.elements() {
                if !u.is_zero() {
                    assert_eq!(k.mul(u, k.inv(u)), Fp2::ONE);
                }
                assert_eq!(k.pow(u, p * p), u, "x^(p^2) = x in F_(p^2)");
            }
        }
    }

    #[test]
    fn frobenius_is_pth_power_and_involutive() {
        for p in [2u64, 3, 5, 7, 11] {
            let k = Fp2Ctx::new(p).unwrap();
            for u in k.elements() {
                assert_eq!(k.frobenius(u), k.pow(u, p));
                assert_eq!(k.frobenius(k.frobenius(u)), u);
            }
        }
    }

    #[test]
    fn frobenius_is_ring_hom() {
        let k = Fp2Ctx::new(7).unwrap();
        for u in k.elements() {
            for v in [Fp2 { a0: 3, a1: 2 }, Fp2 { a0: 6, a1: 5 }, Fp2::gen()] {
                assert_eq!(k.frobenius(k.add(u, v)), k.add(k.frobenius(u), k.frobenius(v)));
                assert_eq!(k.frobenius(k.mul(u, v)), k.mul(k.frobenius(u), k.frobenius(v)));
            }
        }
    }
}
