//! Subfields of a quartic field as Q-subspaces closed under multiplication,
//! with a deterministic primitive element and a canonical minimal polynomial
//! (x^2 - D with D squarefree in the quadratic case).

use super::galois::{apply_auto, Automorphism};
use super::{NFElement, NumberField, DEGREE};
use crate::arith::{rat, Int, QPoly, Rat};
use crate::{Error, Result};
use num::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Subfield {
    /// Echelon basis, highest power-basis coordinate first.
    pub basis: Vec<NFElement>,
    pub primitive: NFElement,
    pub minpoly: QPoly,
    pub degree: usize,
}

impl Subfield {
    /// Smallest Q-subalgebra containing the given elements: iterated
    /// span-of-products until the dimension stabilizes.
    pub fn generated_by(field: &NumberField, gens: &[NFElement]) -> Result<Subfield> {
        let mut basis = echelonize(
            std::iter::once(NFElement::one())
                .chain(gens.iter().cloned())
                .collect(),
        );
        loop {
            let mut extended = basis.clone();
            for i in 0..basis.len() {
                for j in i..basis.len() {
                    extended.push(field.mul(&basis[i], &basis[j]));
                }
            }
            let closed = echelonize(extended);
            if closed.len() == basis.len() {
                break;
            }
            basis = closed;
        }
        // One more closure round must not grow the span.
        debug_assert!({
            let mut again = basis.clone();
            for i in 0..basis.len() {
                for j in i..basis.len() {
                    again.push(field.mul(&basis[i], &basis[j]));
                }
            }
            echelonize(again).len() == basis.len()
        });
        Self::from_basis(field, basis)
    }

    /// Fixed field of an automorphism: kernel of (sigma - id), closed as a
    /// subalgebra by construction.
    pub fn fixed_field(field: &NumberField, auto: &Automorphism) -> Result<Subfield> {
        let mut fixed: Vec<NFElement> = Vec::new();
        // Solve sigma(e) = e on the power basis coordinates.
        let mut cols: Vec<NFElement> = Vec::new();
        let mut pw = NFElement::one();
        for _ in 0..DEGREE {
            cols.push(apply_auto(field, auto, &pw));
            pw = field.mul(&pw, &field.gen());
        }
        // Matrix of sigma - id, kernel over Q.
        let mut m: Vec<Vec<Rat>> = (0..DEGREE)
            .map(|r| (0..DEGREE).map(|c| cols[c].coords()[r].clone()).collect())
            .collect();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= Rat::one();
        }
        for v in rational_kernel(&m) {
            fixed.push(NFElement::from_coords(v));
        }
        Self::from_basis(field, echelonize(fixed))
    }

    fn from_basis(field: &NumberField, basis: Vec<NFElement>) -> Result<Subfield> {
        let degree = basis.len();
        if degree == 0 {
            return Err(Error::Internal("empty subfield basis".into()));
        }
        if DEGREE % degree != 0 {
            return Err(Error::Internal(format!(
                "subfield dimension {degree} does not divide 4"
            )));
        }
        let (primitive, minpoly) = canonical_primitive(field, &basis, degree)?;
        Ok(Subfield {
            basis,
            primitive,
            minpoly,
            degree,
        })
    }

    /// Does the subfield contain the element?
    pub fn contains(&self, field: &NumberField, e: &NFElement) -> bool {
        let _ = field;
        let mut aug: Vec<Vec<Rat>> = (0..DEGREE)
            .map(|r| {
                let mut row: Vec<Rat> =
                    self.basis.iter().map(|b| b.coords()[r].clone()).collect();
                row.push(e.coords()[r].clone());
                row
            })
            .collect();
        super::solve_rational(&mut aug, self.basis.len()).is_some()
    }

    /// Squarefree integer D with the subfield equal to Q(sqrt(D));
    /// only defined for quadratic subfields.
    pub fn quadratic_d(&self) -> Option<Int> {
        if self.degree != 2 {
            return None;
        }
        // Canonical minpoly is x^2 - D.
        Some(-self.minpoly.coeff(0).numer().clone())
    }

    /// Fundamental discriminant of a quadratic subfield.
    pub fn fundamental_discriminant(&self) -> Option<Int> {
        let d = self.quadratic_d()?;
        let one_mod_4 = num::Integer::mod_floor(&d, &Int::from(4)) == Int::one();
        Some(if one_mod_4 { d } else { d * 4 })
    }
}

/// Echelonize a list of elements over Q with pivots on the highest power
/// coordinate first; rows normalized to pivot 1, reduced upwards.
fn echelonize(elems: Vec<NFElement>) -> Vec<NFElement> {
    let mut rows: Vec<Vec<Rat>> = elems.into_iter().map(|e| e.coords().to_vec()).collect();
    let mut out: Vec<Vec<Rat>> = Vec::new();
    // Pivot order: coordinate 3 (pi^3) down to 0.
    for col in (0..DEGREE).rev() {
        if let Some(idx) = rows.iter().position(|r| !r[col].is_zero()) {
            let mut piv = rows.swap_remove(idx);
            let inv = Rat::one() / piv[col].clone();
            for c in piv.iter_mut() {
                *c = &*c * &inv;
            }
            for r in rows.iter_mut() {
                if !r[col].is_zero() {
                    let f = r[col].clone();
                    for c in 0..DEGREE {
                        let t = &f * &piv[c];
                        r[c] -= t;
                    }
                }
            }
            for done in out.iter_mut() {
                if !done[col].is_zero() {
                    let f = done[col].clone();
                    for c in 0..DEGREE {
                        let t = &f * &piv[c];
                        done[c] -= t;
                    }
                }
            }
            out.push(piv);
        }
        rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    }
    out.into_iter().map(NFElement::from_coords).collect()
}

/// Kernel of a square rational matrix (right kernel basis).
fn rational_kernel(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if let Some(r) = (row..rows).find(|&r| !a[r][col].is_zero()) {
            a.swap(row, r);
            let inv = Rat::one() / a[row][col].clone();
            for c in 0..cols {
                a[row][c] = &a[row][c] * &inv;
            }
            for r2 in 0..rows {
                if r2 != row && !a[r2][col].is_zero() {
                    let f = a[r2][col].clone();
                    for c in 0..cols {
                        let t = &f * &a[row][c];
                        a[r2][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Deterministic primitive element: scan b1 + k*b2 (k = 0, 1, 2, ...) for the
/// first combination whose minimal polynomial has the subfield degree, then
/// canonicalize (quadratic: sqrt of a squarefree integer; quartic: the field
/// generator itself).
fn canonical_primitive(
    field: &NumberField,
    basis: &[NFElement],
    degree: usize,
) -> Result<(NFElement, QPoly)> {
    match degree {
        1 => Ok((NFElement::one(), QPoly::from_i64(&[-1, 1]))),
        4 => Ok((field.gen(), field.modulus().clone())),
        2 => {
            let mut found = None;
            for k in 0..32i64 {
                let cand = field.add(&basis[0], &field.scale(&rat(k), &basis[1]));
                let mp = field.minimal_polynomial(&cand);
                if mp.degree() == 2 {
                    found = Some(cand);
                    break;
                }
            }
            let gamma =
                found.ok_or_else(|| Error::Internal("no primitive element found".into()))?;
            canonical_sqrt_form(field, &gamma)
        }
        d => Err(Error::Internal(format!("unsupported subfield degree {d}"))),
    }
}

/// Replace a quadratic generator by sqrt(D) with D squarefree.
fn canonical_sqrt_form(field: &NumberField, gamma: &NFElement) -> Result<(NFElement, QPoly)> {
    let mp = field.minimal_polynomial(gamma);
    debug_assert_eq!(mp.degree(), 2);
    let b = mp.coeff(1);
    // delta = gamma + b/2 satisfies delta^2 = b^2/4 - c in Q.
    let delta = field.add(gamma, &NFElement::rational(&b / rat(2)));
    let sq = field.mul(&delta, &delta);
    debug_assert!(sq.is_rational());
    let r = sq.coord(0).clone();
    if r.is_zero() {
        return Err(Error::Internal("degenerate quadratic generator".into()));
    }
    // (den * delta)^2 = num * den is an integer.
    let scaled = field.scale(&Rat::from_integer(r.denom().clone()), &delta);
    let n = r.numer() * r.denom();
    let (f, d) = squarefree_decompose(&n);
    // canonical generator = scaled / f, square = D.
    let canon = field.scale(&Rat::new(Int::one(), f), &scaled);
    let check = field.mul(&canon, &canon);
    debug_assert_eq!(check, NFElement::rational(Rat::from_integer(d.clone())));
    let minpoly = QPoly::from_coeffs(vec![
        Rat::from_integer(-d),
        Rat::zero(),
        Rat::one(),
    ]);
    Ok((canon, minpoly))
}

/// n = f^2 * d with d squarefree (sign kept on d). Trial division.
fn squarefree_decompose(n: &Int) -> (Int, Int) {
    let mut d = n.clone();
    let mut f = Int::one();
    let mut q = Int::from(2);
    loop {
        let q2 = &q * &q;
        if &q2 > &d.abs() {
            break;
        }
        while (&d % &q2).is_zero() {
            d /= &q2;
            f *= &q;
        }
        q += 1;
    }
    (f, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn field() -> NumberField {
        NumberField::new(QPoly::from_i64(&[49, 0, 7, 0, 1])).unwrap()
    }

    #[test]
    fn generated_by_one_is_q() {
        let k = field();
        let s = Subfield::generated_by(&k, &[NFElement::one()]).unwrap();
        assert_eq!(s.degree, 1);
        assert_eq!(s.minpoly, QPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn generated_by_pi_is_everything() {
        let k = field();
        let s = Subfield::generated_by(&k, &[k.gen()]).unwrap();
        assert_eq!(s.degree, 4);
        assert_eq!(s.minpoly, *k.modulus());
    }

    #[test]
    fn sqrt_minus_21_generates_quadratic() {
        let k = field();
        // sqrt(-21) = (pi^3 + 14 pi)/7.
        let s21 = NFElement::from_coords(vec![rat(0), rat(2), rat(0), ratio(1, 7)]);
        let s = Subfield::generated_by(&k, &[s21.clone()]).unwrap();
        assert_eq!(s.degree, 2);
        assert_eq!(s.minpoly, QPoly::from_i64(&[21, 0, 1]));
        assert_eq!(s.quadratic_d(), Some(Int::from(-21)));
        assert_eq!(s.fundamental_discriminant(), Some(Int::from(-84)));
        assert!(s.contains(&k, &s21));
        assert!(s.contains(&k, &NFElement::one()));
        assert!(!s.contains(&k, &k.gen()));
    }

    #[test]
    fn scaled_generator_canonicalizes_to_same_subfield() {
        let k = field();
        let s21 = NFElement::from_coords(vec![rat(0), rat(2), rat(0), ratio(1, 7)]);
        let seven_s21 = k.scale(&rat(7), &s21);
        let s = Subfield::generated_by(&k, &[seven_s21]).unwrap();
        assert_eq!(s.minpoly, QPoly::from_i64(&[21, 0, 1]));
    }

    #[test]
    fn squarefree_decomposition() {
        let (f, d) = squarefree_decompose(&Int::from(-4116));
        assert_eq!(d, Int::from(-21));
        assert_eq!(f, Int::from(14));
        let (f, d) = squarefree_decompose(&Int::from(125));
        assert_eq!(d, Int::from(5));
        assert_eq!(f, Int::from(5));
    }
}
