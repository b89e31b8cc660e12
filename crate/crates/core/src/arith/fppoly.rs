//! Dense polynomials over F_p with a complete factorizer for degree <= 4.
//!
//! The factorizer uses root search, quadratic splitting via the residue
//! symbol, and a tiny deterministic Berlekamp step for the one remaining
//! shape (a root-free product of two irreducible quadratics). No general
//! Cantor–Zassenhaus machinery.

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod};
use crate::{Error, Result};

/// Polynomial over F_p, coefficients ascending, last entry nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: &[i64]) -> Self {
        let c = coeffs
            .iter()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect();
        let mut f = FpPoly { p, coeffs: c };
        f.normalize();
        f
    }

    pub fn from_u64(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial by convention of callers that
    /// check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        FpPoly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = add_mod(self.coeff(i), other.coeff(i), self.p);
        }
        let mut f = FpPoly { p: self.p, coeffs: out };
        f.normalize();
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = add_mod(self.coeff(i), neg_mod(other.coeff(i), self.p), self.p);
        }
        let mut f = FpPoly { p: self.p, coeffs: out };
        f.normalize();
        f
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        let mut f = FpPoly { p: self.p, coeffs: out };
        f.normalize();
        f
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quo = vec![0u64; rem.len() - dd];
        let lead_inv = inv_mod(divisor.leading(), p);
        for i in (dd..rem.len()).rev() {
            let q = mul_mod(rem[i], lead_inv, p);
            quo[i - dd] = q;
            if q != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[i - dd + j] = add_mod(rem[i - dd + j], neg_mod(mul_mod(q, dc, p), p), p);
                }
            }
        }
        let mut qq = FpPoly { p, coeffs: quo };
        let mut rr = FpPoly { p, coeffs: rem };
        qq.normalize();
        rr.normalize();
        (qq, rr)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(mul_mod(c, (i as u64) % self.p, self.p));
        }
        let mut f = FpPoly { p: self.p, coeffs: out };
        f.normalize();
        f
    }

    /// `x^e mod self`, by square and multiply on residues.
    pub fn pow_x_mod(&self, e: u64) -> Self {
        let mut acc = FpPoly::one(self.p);
        let mut base = FpPoly::x(self.p).div_rem(self).1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(self).1;
            }
            base = base.mul(&base).div_rem(self).1;
            e >>= 1;
        }
        acc
    }
}

/// Complete factorization of a polynomial of degree <= 4 over F_p into monic
/// irreducibles with multiplicities; the leading unit is returned separately.
pub fn factor_quartic_mod_p(f: &FpPoly) -> Result<(u64, Vec<(FpPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::FactorZeroPolynomial);
    }
    if f.degree() > 4 {
        return Err(Error::DegreeTooLarge(f.degree()));
    }
    let p = f.p;
    let unit = f.leading();
    let mut rest = f.make_monic();
    let mut factors: Vec<(FpPoly, u32)> = Vec::new();
    let push = |factors: &mut Vec<(FpPoly, u32)>, g: FpPoly| {
        if let Some(entry) = factors.iter_mut().find(|(h, _)| *h == g) {
            entry.1 += 1;
        } else {
            factors.push((g, 1));
        }
    };

    // Linear factors by root search.
    let mut x = 0u64;
    while x < p && rest.degree() >= 1 {
        if rest.eval(x) == 0 {
            let lin = FpPoly::from_u64(p, vec![neg_mod(x, p), 1]);
            let (q, r) = rest.div_rem(&lin);
            debug_assert!(r.is_zero());
            push(&mut factors, lin);
            rest = q;
            // Stay on the same x: it may be a repeated root.
        } else {
            x += 1;
        }
    }

    match rest.degree() {
        0 => {}
        2 => push(&mut factors, rest.clone()),
        4 => {
            // Root-free quartic: irreducible, a square of an irreducible
            // quadratic, or a product of two distinct irreducible quadratics.
            let sq = rest.gcd(&rest.derivative());
            if sq.degree() == 2 {
                push(&mut factors, sq.clone());
                push(&mut factors, sq);
            } else {
                let xp2 = rest.pow_x_mod(p * p);
                if xp2 == FpPoly::x(p).div_rem(&rest).1 {
                    let (g1, g2) = split_quadratic_pair(&rest)?;
                    push(&mut factors, g1);
                    push(&mut factors, g2);
                } else {
                    push(&mut factors, rest.clone());
                }
            }
        }
        3 => {
            // No roots were found, so a root-free cubic is irreducible.
            push(&mut factors, rest.clone());
        }
        d => {
            return Err(Error::Internal(format!(
                "unexpected residual degree {d} in quartic factorization"
            )))
        }
    }

    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    Ok((unit, factors))
}

/// Split a root-free squarefree quartic known to be a product of two
/// irreducible quadratics. Deterministic 4x4 Berlekamp: a non-constant
/// element v of the Frobenius-fixed algebra satisfies gcd(f, v - s) != 1
/// for exactly two values of s.
fn split_quadratic_pair(f: &FpPoly) -> Result<(FpPoly, FpPoly)> {
    let p = f.p;
    // Matrix of the Frobenius x -> x^p on F_p[x]/f in the basis 1,x,x^2,x^3.
    let mut cols = Vec::with_capacity(4);
    for i in 0..4u64 {
        let xi = f.pow_x_mod(i.checked_mul(p).expect("p fits"));
        let mut col = [0u64; 4];
        for (j, c) in col.iter_mut().enumerate() {
            *c = xi.coeff(j);
        }
        cols.push(col);
    }
    // Kernel of (Frobenius - I) over F_p.
    let mut m = [[0u64; 4]; 4];
    for (i, col) in cols.iter().enumerate() {
        for j in 0..4 {
            m[j][i] = col[j];
        }
        m[i][i] = add_mod(m[i][i], neg_mod(1, p), p);
    }
    for v in kernel_basis_4(&m, p) {
        if v[1] == 0 && v[2] == 0 && v[3] == 0 {
            continue; // constant element of the fixed algebra
        }
        let vp = FpPoly::from_u64(p, v.to_vec());
        for s in 0..p {
            let shifted = vp.sub(&FpPoly::from_u64(p, vec![s]));
            let g = f.gcd(&shifted);
            if g.degree() == 2 {
                let (q, r) = f.div_rem(&g);
                debug_assert!(r.is_zero());
                return Ok((g, q.make_monic()));
            }
        }
    }
    Err(Error::Internal(
        "quadratic pair split found no separating element".into(),
    ))
}

fn kernel_basis_4(m: &[[u64; 4]; 4], p: u64) -> Vec<[u64; 4]> {
    let mut a = *m;
    let mut pivot_col_of_row = [usize::MAX; 4];
    let mut row = 0;
    for col in 0..4 {
        if let Some(r) = (row..4).find(|&r| a[r][col] != 0) {
            a.swap(row, r);
            let inv = inv_mod(a[row][col], p);
            for c in 0..4 {
                a[row][c] = mul_mod(a[row][c], inv, p);
            }
            for r2 in 0..4 {
                if r2 != row && a[r2][col] != 0 {
                    let factor = a[r2][col];
                    for c in 0..4 {
                        let sub = mul_mod(factor, a[row][c], p);
                        a[r2][c] = add_mod(a[r2][c], neg_mod(sub, p), p);
                    }
                }
            }
            pivot_col_of_row[row] = col;
            row += 1;
        }
    }
    let pivots: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = Vec::new();
    for free in 0..4 {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = [0u64; 4];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = neg_mod(a[r][free], p);
        }
        basis.push(v);
    }
    basis
}
