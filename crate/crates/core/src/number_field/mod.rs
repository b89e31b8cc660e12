//! Degree-4 number fields Q[x]/(m) with exact element arithmetic.
//!
//! Elements are rational coordinate vectors in the power basis
//! {1, pi, pi^2, pi^3}. All arithmetic reduces modulo the defining
//! polynomial; nothing is ever evaluated in floating point.

mod galois;
mod order;
mod subfield;

pub use galois::{Automorphism, GaloisGroup, GroupKind};
pub use order::OrderZBasis;
pub use subfield::Subfield;

use crate::arith::{rat, QPoly, Rat};
use crate::{Error, Result};
use num::{One, Zero};

pub const DEGREE: usize = 4;

/// A quartic number field Q[x]/(m).
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: QPoly,
}

/// Field element as coordinates in the power basis {1, pi, pi^2, pi^3}.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElement {
    coords: Vec<Rat>,
}

impl std::fmt::Debug for NFElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}]",
            self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        )
    }
}

impl NFElement {
    pub fn from_coords(coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), DEGREE);
        NFElement { coords }
    }

    pub fn from_i64(coords: [i64; 4]) -> Self {
        NFElement {
            coords: coords.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn rational(c: Rat) -> Self {
        let mut coords = vec![Rat::zero(); DEGREE];
        coords[0] = c;
        NFElement { coords }
    }

    pub fn zero() -> Self {
        NFElement {
            coords: vec![Rat::zero(); DEGREE],
        }
    }

    pub fn one() -> Self {
        Self::rational(Rat::one())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn as_poly(&self) -> QPoly {
        QPoly::from_coeffs(self.coords.clone())
    }

    fn from_poly(p: &QPoly) -> Self {
        let mut coords = vec![Rat::zero(); DEGREE];
        for (i, c) in coords.iter_mut().enumerate() {
            *c = p.coeff(i);
        }
        NFElement { coords }
    }
}

impl NumberField {
    pub fn new(modulus: QPoly) -> Result<Self> {
        if modulus.degree() != DEGREE || !modulus.is_monic() {
            return Err(Error::BadDefiningPolynomial(format!("{modulus:?}")));
        }
        Ok(NumberField { modulus })
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    /// The power-basis generator pi.
    pub fn gen(&self) -> NFElement {
        NFElement::from_i64([0, 1, 0, 0])
    }

    pub fn add(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat, a: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, a: &NFElement, b: &NFElement) -> NFElement {
        let prod = a.as_poly().mul(&b.as_poly());
        let (_, r) = prod.div_rem(&self.modulus);
        NFElement::from_poly(&r)
    }

    pub fn pow(&self, a: &NFElement, e: u64) -> NFElement {
        let mut acc = NFElement::one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm against the modulus.
    pub fn inv(&self, a: &NFElement) -> NFElement {
        assert!(!a.is_zero(), "inverse of zero field element");
        let (g, u) = half_ext_gcd(&a.as_poly(), &self.modulus);
        assert_eq!(g.degree(), 0, "element shares a factor with the modulus");
        let ginv = Rat::one() / g.leading();
        let (_, r) = u.scale(&ginv).div_rem(&self.modulus);
        NFElement::from_poly(&r)
    }

    pub fn div(&self, a: &NFElement, b: &NFElement) -> NFElement {
        self.mul(a, &self.inv(b))
    }

    /// Evaluate a rational polynomial at a field element.
    pub fn eval_poly(&self, f: &QPoly, at: &NFElement) -> NFElement {
        let mut acc = NFElement::zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, at);
            acc.coords[0] += c;
        }
        acc
    }

    /// Coordinates of a * pi^j for j = 0..3, as matrix columns.
    pub fn mult_matrix(&self, a: &NFElement) -> [[Rat; 4]; 4] {
        let mut cols: Vec<NFElement> = Vec::with_capacity(4);
        let mut cur = a.clone();
        for _ in 0..4 {
            cols.push(cur.clone());
            cur = self.mul(&cur, &self.gen());
        }
        let mut m = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                m[i][j] = col.coords[i].clone();
            }
        }
        m
    }

    pub fn trace(&self, a: &NFElement) -> Rat {
        let m = self.mult_matrix(a);
        (0..4).map(|i| m[i][i].clone()).sum()
    }

    pub fn norm(&self, a: &NFElement) -> Rat {
        det4(&self.mult_matrix(a))
    }

    /// Monic minimal polynomial of an element, by the first linear
    /// dependency among its powers.
    pub fn minimal_polynomial(&self, a: &NFElement) -> QPoly {
        let mut powers: Vec<NFElement> = vec![NFElement::one()];
        for d in 1..=DEGREE {
            powers.push(self.mul(powers.last().unwrap(), a));
            if let Some(rel) = monic_dependency(&powers) {
                let mut coeffs = rel;
                coeffs.push(Rat::one());
                let f = QPoly::from_coeffs(coeffs);
                debug_assert_eq!(f.degree(), d);
                return f;
            }
        }
        unreachable!("every element of a quartic field satisfies a degree <= 4 relation")
    }

    /// True when the element is an algebraic integer.
    pub fn is_integral(&self, a: &NFElement) -> bool {
        self.minimal_polynomial(a).is_integral()
    }
}

/// Extended gcd returning (g, u) with u*a = g mod m.
fn half_ext_gcd(a: &QPoly, m: &QPoly) -> (QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = m.clone();
    let mut u0 = QPoly::one();
    let mut u1 = QPoly::zero();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let u = u0.sub(&q.mul(&u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    (r0, u0)
}

/// If the last power is a Q-linear combination of the earlier ones, return
/// the negated combination coefficients (so the monic relation holds).
fn monic_dependency(powers: &[NFElement]) -> Option<Vec<Rat>> {
    let d = powers.len() - 1;
    let mut aug: Vec<Vec<Rat>> = (0..DEGREE)
        .map(|row| {
            let mut r: Vec<Rat> = (0..d).map(|i| powers[i].coords[row].clone()).collect();
            r.push(powers[d].coords[row].clone());
            r
        })
        .collect();
    let sol = solve_rational(&mut aug, d)?;
    Some(sol.into_iter().map(|x| -x).collect())
}

/// Gaussian elimination for an augmented system with `vars` unknowns.
pub(crate) fn solve_rational(aug: &mut Vec<Vec<Rat>>, vars: usize) -> Option<Vec<Rat>> {
    let rows = aug.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..vars {
        if let Some(r) = (row..rows).find(|&r| !aug[r][col].is_zero()) {
            aug.swap(row, r);
            let inv = Rat::one() / aug[row][col].clone();
            for c in col..=vars {
                aug[row][c] = &aug[row][c] * &inv;
            }
            for r2 in 0..rows {
                if r2 != row && !aug[r2][col].is_zero() {
                    let f = aug[r2][col].clone();
                    for c in col..=vars {
                        let t = &f * &aug[row][c];
                        aug[r2][c] -= t;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
    }
    for r in row..rows {
        if !aug[r][vars].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); vars];
    for &(r, c) in &pivots {
        sol[c] = aug[r][vars].clone();
    }
    Some(sol)
}

/// Exact 4x4 determinant by fraction Gaussian elimination.
pub(crate) fn det4(m: &[[Rat; 4]; 4]) -> Rat {
    let mut a: Vec<Vec<Rat>> = m.iter().map(|r| r.to_vec()).collect();
    let mut det = Rat::one();
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = Rat::one() / a[col][col].clone();
        for r in col + 1..4 {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..4 {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}
