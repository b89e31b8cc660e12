//! The Galois ring GR(p^2, 2) = (Z/p^2)[x]/(x^2 + bx + c), where x^2 + bx + c
//! is the integer lift of the F_{p^2} modulus chosen by [`Fp2Ctx`]. Models the
//! length-2 Witt truncation W(F_{p^2})/p^2 together with its Frobenius lift.

use super::fp2::{Fp2, Fp2Ctx};
use crate::Result;

/// Element a0 + a1*x of GR(p^2, 2), coordinates mod p^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gr2 {
    pub a0: u64,
    pub a1: u64,
}

impl Gr2 {
    pub const ZERO: Gr2 = Gr2 { a0: 0, a1: 0 };
    pub const ONE: Gr2 = Gr2 { a0: 1, a1: 0 };

    pub fn scalar(a: u64) -> Self {
        Gr2 { a0: a, a1: 0 }
    }

    pub fn gen() -> Self {
        Gr2 { a0: 0, a1: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }
}

/// Arithmetic context for GR(p^2, 2); shares the modulus with the residue
/// field context it is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gr2Ctx {
    pub p: u64,
    pub p2: u64,
    pub b: u64,
    pub c: u64,
}

impl Gr2Ctx {
    pub fn new(p: u64) -> Result<Self> {
        let base = Fp2Ctx::new(p)?;
        Ok(Gr2Ctx {
            p,
            p2: p * p,
            b: base.b,
            c: base.c,
        })
    }

    pub fn residue_ctx(&self) -> Fp2Ctx {
        Fp2Ctx {
            p: self.p,
            b: self.b,
            c: self.c,
        }
    }

    fn am(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p2
    }

    fn nm(&self, a: u64) -> u64 {
        (self.p2 - a % self.p2) % self.p2
    }

    fn mm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p2 as u128) as u64
    }

    pub fn add(&self, u: Gr2, v: Gr2) -> Gr2 {
        Gr2 {
            a0: self.am(u.a0, v.a0),
            a1: self.am(u.a1, v.a1),
        }
    }

    pub fn neg(&self, u: Gr2) -> Gr2 {
        Gr2 {
            a0: self.nm(u.a0),
            a1: self.nm(u.a1),
        }
    }

    pub fn sub(&self, u: Gr2, v: Gr2) -> Gr2 {
        self.add(u, self.neg(v))
    }

    pub fn mul(&self, u: Gr2, v: Gr2) -> Gr2 {
        // x^2 = -bx - c with the same integer coefficients as mod p.
        let t2 = self.mm(u.a1, v.a1);
        let t1 = self.am(self.mm(u.a0, v.a1), self.mm(u.a1, v.a0));
        let t0 = self.mm(u.a0, v.a0);
        Gr2 {
            a0: self.am(t0, self.nm(self.mm(t2, self.c))),
            a1: self.am(t1, self.nm(self.mm(t2, self.b))),
        }
    }

    pub fn scalar_mul(&self, s: u64, u: Gr2) -> Gr2 {
        Gr2 {
            a0: self.mm(s, u.a0),
            a1: self.mm(s, u.a1),
        }
    }

    pub fn pow(&self, u: Gr2, mut e: u64) -> Gr2 {
        let mut acc = Gr2::ONE;
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

    /// The Frobenius lift: the unique ring automorphism reducing to
    /// x -> x^p mod p. It sends the generator to the conjugate root
    /// -b - x of the lifted modulus, so it squares to the identity.
    pub fn frobenius(&self, u: Gr2) -> Gr2 {
        Gr2 {
            a0: self.am(u.a0, self.nm(self.mm(u.a1, self.b))),
            a1: self.nm(u.a1),
        }
    }

    /// Reduction GR(p^2, 2) -> F_{p^2}.
    pub fn reduce(&self, u: Gr2) -> Fp2 {
        Fp2 {
            a0: u.a0 % self.p,
            a1: u.a1 % self.p,
        }
    }

    pub fn is_unit(&self, u: Gr2) -> bool {
        !self.reduce(u).is_zero()
    }

    /// Inverse of a unit via the conjugate and the norm in Z/p^2.
    pub fn inv(&self, u: Gr2) -> Gr2 {
        assert!(self.is_unit(u), "inverse of a non-unit in GR(p^2,2)");
        let conj = self.frobenius(u);
        let norm = self.mul(u, conj);
        debug_assert_eq!(norm.a1, 0);
        let ninv = inv_mod_p2(norm.a0, self.p, self.p2);
        self.scalar_mul(ninv, conj)
    }

    /// p-adic valuation in {0, 1, 2}: 0 for units, 1 for p * unit, 2 for 0.
    pub fn val(&self, u: Gr2) -> u32 {
        if self.is_unit(u) {
            0
        } else if u.is_zero() {
            2
        } else {
            1
        }
    }

    /// All p^4 elements, in a fixed order. Only sensible for tiny p.
    pub fn elements(&self) -> impl Iterator<Item = Gr2> + '_ {
        let p2 = self.p2;
        (0..p2).flat_map(move |a1| (0..p2).map(move |a0| Gr2 { a0, a1 }))
    }
}

/// Inverse of a unit in Z/p^2 by lifting the mod-p inverse one Hensel step.
fn inv_mod_p2(a: u64, p: u64, p2: u64) -> u64 {
    let inv_p = super::fp::inv_mod(a % p, p);
    // x -> x(2 - ax) doubles the precision of an approximate inverse.
    let ax = ((a as u128 * inv_p as u128) % p2 as u128) as u64;
    let two_minus = (2 + p2 - ax) % p2;
    ((inv_p as u128 * two_minus as u128) % p2 as u128) as u64
}
