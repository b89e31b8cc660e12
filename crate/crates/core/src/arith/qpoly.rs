//! Dense univariate polynomials over Q. Coefficients ascending; the vector is
//! empty exactly for the zero polynomial.

use super::{rat, Int, Rat};
use num::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c.is_negative() { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        write!(f, "{out}")
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn x() -> Self {
        QPoly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut f = QPoly { coeffs: vec![c] };
        f.normalize();
        f
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut f = QPoly { coeffs };
        f.normalize();
        f
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_int(coeffs: &[Int]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.degree() < divisor.degree() || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut quo = vec![Rat::zero(); rem.len() - dd];
        let lead = divisor.leading();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
            quo[i - dd] = q;
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&(Rat::one() / lead))
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Number of distinct real roots, by a Sturm chain. Exact.
    pub fn real_root_count(&self) -> usize {
        if self.is_zero() || self.degree() == 0 {
            return 0;
        }
        // Squarefree part so the chain terminates cleanly.
        let sf = {
            let g = self.gcd(&self.derivative());
            if g.degree() == 0 {
                self.clone()
            } else {
                self.div_rem(&g).0
            }
        };
        let mut chain = vec![sf.clone(), sf.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(r.neg());
        }
        chain.pop();
        let variations = |at_plus_infinity: bool| -> usize {
            let mut signs = Vec::new();
            for f in &chain {
                if f.is_zero() {
                    continue;
                }
                let lead = f.leading();
                let mut s = if lead.is_positive() { 1i8 } else { -1 };
                if !at_plus_infinity && f.degree() % 2 == 1 {
                    s = -s;
                }
                signs.push(s);
            }
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(false) - variations(true)
    }

    /// Resultant of self and other (both nonzero), via the Euclidean
    /// remainder sequence over Q.
    pub fn resultant(&self, other: &Self) -> Rat {
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = Rat::one();
        let mut sign = 1i64;
        loop {
            if b.is_zero() {
                return Rat::zero();
            }
            if b.degree() == 0 {
                let e = a.degree() as i64;
                return acc * rat(sign) * pow_rat(&b.leading(), e as u64);
            }
            let r = a.div_rem(&b).1;
            if r.is_zero() {
                return Rat::zero();
            }
            // res(a, b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * res(b, r)
            if (a.degree() * b.degree()) % 2 == 1 {
                sign = -sign;
            }
            acc *= pow_rat(&b.leading(), (a.degree() - r.degree()) as u64);
            a = b;
            b = r;
        }
    }

    /// Discriminant of a monic polynomial: (-1)^(n(n-1)/2) res(f, f').
    pub fn discriminant(&self) -> Rat {
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        r * rat(sign) / self.leading()
    }

    /// Reduce coefficients mod a prime into an F_p polynomial. Denominators
    /// must be invertible mod p.
    pub fn reduce_mod(&self, p: u64) -> super::FpPoly {
        use num::ToPrimitive;
        let pi = Int::from(p);
        let coeffs: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let num = num::Integer::mod_floor(c.numer(), &pi).to_u64().unwrap();
                let den = num::Integer::mod_floor(c.denom(), &pi).to_u64().unwrap();
                assert!(den != 0, "denominator not invertible mod {p}");
                super::fp::mul_mod(num, super::fp::inv_mod(den, p), p)
            })
            .collect();
        super::FpPoly::from_u64(p, coeffs)
    }
}

fn pow_rat(base: &Rat, e: u64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn div_rem_reconstructs() {
        let f = QPoly::from_i64(&[49, 0, 7, 0, 1]);
        let g = QPoly::from_i64(&[1, 2, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(g.mul(&q).add(&r), f);
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2: two real roots.
        assert_eq!(QPoly::from_i64(&[-2, 0, 1]).real_root_count(), 2);
        // x^2 + 1: none.
        assert_eq!(QPoly::from_i64(&[1, 0, 1]).real_root_count(), 0);
        // x^4 + 7x^2 + 49: none (totally imaginary).
        assert_eq!(QPoly::from_i64(&[49, 0, 7, 0, 1]).real_root_count(), 0);
        // x^4 - 5x^2 + 4 = (x-1)(x+1)(x-2)(x+2).
        assert_eq!(QPoly::from_i64(&[4, 0, -5, 0, 1]).real_root_count(), 4);
        // (x-1)^2 x^2: distinct real roots 0 and 1.
        assert_eq!(QPoly::from_i64(&[0, 0, 1, -2, 1]).real_root_count(), 2);
    }

    #[test]
    fn cyclotomic_discriminant() {
        // Q(zeta_5): disc(x^4 + x^3 + x^2 + x + 1) = 125.
        let f = QPoly::from_i64(&[1, 1, 1, 1, 1]);
        assert_eq!(f.discriminant(), rat(125));
    }

    #[test]
    fn quadratic_discriminant() {
        let f = QPoly::from_i64(&[21, 0, 1]); // x^2 + 21
        assert_eq!(f.discriminant(), rat(-84));
    }

    proptest! {
        #[test]
        fn prop_div_rem_identity(a in proptest::collection::vec(-9i64..10, 1..6),
                                 b in proptest::collection::vec(-9i64..10, 1..5)) {
            let f = QPoly::from_i64(&a);
            let g = QPoly::from_i64(&b);
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g);
            prop_assert_eq!(g.mul(&q).add(&r), f);
            prop_assert!(r.is_zero() || r.degree() < g.degree());
        }

        #[test]
        fn prop_mul_commutes(a in proptest::collection::vec(-9i64..10, 0..5),
                             b in proptest::collection::vec(-9i64..10, 0..5)) {
            let f = QPoly::from_i64(&a);
            let g = QPoly::from_i64(&b);
            prop_assert_eq!(f.mul(&g), g.mul(&f));
        }
    }
}
