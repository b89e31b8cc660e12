//! Galois groups of quartic fields, built from explicit conjugate candidates
//! and verified exactly: every claimed image must be a root of the defining
//! polynomial and the set must close under composition.

use super::{NFElement, NumberField};
use crate::{Error, Result};

/// Automorphism determined by the image of the power-basis generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub image: NFElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    KleinFour,
    Cyclic4,
}

/// The Galois group of a quartic Galois field, as verified data: the four
/// automorphisms, the composition table, and the complex conjugation.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    pub autos: Vec<Automorphism>,
    /// table[i][j] = index of autos[i] compose autos[j].
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// Index of complex conjugation.
    pub conj: usize,
    pub kind: GroupKind,
}

impl GaloisGroup {
    /// Build and fully verify the group from four candidate images of pi.
    pub fn from_images(field: &NumberField, images: Vec<NFElement>) -> Result<GaloisGroup> {
        if images.len() != 4 {
            return Err(Error::NotGalois(format!(
                "expected 4 conjugates, got {}",
                images.len()
            )));
        }
        for img in &images {
            let v = field.eval_poly(field.modulus(), img);
            if !v.is_zero() {
                return Err(Error::NotARoot);
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if images[i] == images[j] {
                    return Err(Error::NotGalois("repeated conjugate".into()));
                }
            }
        }
        let autos: Vec<Automorphism> = images.into_iter().map(|image| Automorphism { image }).collect();
        let apply = |i: usize, e: &NFElement| apply_auto(field, &autos[i], e);
        let mut table = vec![vec![usize::MAX; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let composed = apply(i, &autos[j].image);
                let k = autos
                    .iter()
                    .position(|a| a.image == composed)
                    .ok_or(Error::GroupNotClosed)?;
                table[i][j] = k;
            }
        }
        let identity = autos
            .iter()
            .position(|a| a.image == field.gen())
            .ok_or_else(|| Error::NotGalois("identity missing from conjugate set".into()))?;
        // Associativity and inverses follow from closure of a finite set of
        // honest maps; still assert the table is a Latin square.
        for i in 0..4 {
            let mut seen_row = [false; 4];
            let mut seen_col = [false; 4];
            for j in 0..4 {
                seen_row[table[i][j]] = true;
                seen_col[table[j][i]] = true;
            }
            if seen_row != [true; 4] || seen_col != [true; 4] {
                return Err(Error::GroupNotClosed);
            }
        }
        let order = |i: usize| -> usize {
            let mut k = i;
            let mut n = 1;
            while k != identity {
                k = table[i][k];
                n += 1;
            }
            n
        };
        let kind = if (0..4).all(|i| order(i) <= 2) {
            GroupKind::KleinFour
        } else {
            GroupKind::Cyclic4
        };
        // Complex conjugation: the unique order-2 automorphism whose fixed
        // field is totally real, detected exactly by a Sturm count on the
        // fixed field's minimal polynomial.
        let mut conj = None;
        for i in 0..4 {
            if i == identity || order(i) != 2 {
                continue;
            }
            let fixed = super::Subfield::fixed_field(field, &autos[i])?;
            if fixed.degree == 2 && fixed.minpoly.real_root_count() == 2 {
                if conj.is_some() {
                    return Err(Error::NotGalois(
                        "multiple candidates for complex conjugation".into(),
                    ));
                }
                conj = Some(i);
            }
        }
        let conj = conj.ok_or_else(|| {
            Error::NotGalois("no order-2 automorphism with totally real fixed field".into())
        })?;
        Ok(GaloisGroup {
            autos,
            table,
            identity,
            conj,
            kind,
        })
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..4).find(|&j| self.table[i][j] == self.identity).unwrap()
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut k = i;
        let mut n = 1;
        while k != self.identity {
            k = self.table[i][k];
            n += 1;
        }
        n
    }

    /// Apply automorphism `i` to an element.
    pub fn apply(&self, field: &NumberField, i: usize, e: &NFElement) -> NFElement {
        apply_auto(field, &self.autos[i], e)
    }

    /// The three order-2 automorphisms of a Klein-four group, or the single
    /// one of a cyclic group.
    pub fn involutions(&self) -> Vec<usize> {
        (0..4).filter(|&i| i != self.identity && self.order_of(i) == 2).collect()
    }

    /// Left coset of the subgroup through representative `rep`.
    pub fn coset(&self, subgroup: &[usize], rep: usize) -> Vec<usize> {
        let mut c: Vec<usize> = subgroup.iter().map(|&s| self.table[rep][s]).collect();
        c.sort_unstable();
        c
    }

    /// All left cosets of a subgroup, each sorted, ordered by smallest member.
    pub fn cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for rep in 0..4 {
            let c = self.coset(subgroup, rep);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out.sort();
        out
    }
}

pub(crate) fn apply_auto(field: &NumberField, auto: &Automorphism, e: &NFElement) -> NFElement {
    let mut acc = NFElement::zero();
    for c in e.coords().iter().rev() {
        acc = field.mul(&acc, &auto.image);
        acc = field.add(&acc, &NFElement::rational(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio, QPoly};

    #[test]
    fn klein_four_for_sqrt7_zeta3() {
        let k = NumberField::new(QPoly::from_i64(&[49, 0, 7, 0, 1])).unwrap();
        let pi = k.gen();
        let p_over_pi = k.scale(&rat(7), &k.inv(&pi));
        let images = vec![pi.clone(), k.neg(&pi), p_over_pi.clone(), k.neg(&p_over_pi)];
        let g = GaloisGroup::from_images(&k, images).unwrap();
        assert_eq!(g.kind, GroupKind::KleinFour);
        assert_eq!(g.identity, 0);
        // Complex conjugation sends pi to p/pi (|pi|^2 = p).
        assert_eq!(g.autos[g.conj].image, p_over_pi);
        assert_eq!(g.order_of(g.conj), 2);
        // c fixes sqrt(-3)-side: check c^2 = id via the table.
        assert_eq!(g.compose(g.conj, g.conj), g.identity);
    }

    #[test]
    fn cyclic_for_zeta5_field() {
        // pi = sqrt(5) zeta5, m = x^4 + 5x^3 + 15x^2 + 25x + 25.
        let k = NumberField::new(QPoly::from_i64(&[25, 25, 15, 5, 1])).unwrap();
        let pi = k.gen();
        // zeta5 = pi^6 / 125; sigma_a(pi) = (a|5) pi zeta5^(a-1).
        let z5 = k.scale(&ratio(1, 125), &k.pow(&pi, 6));
        assert_eq!(k.minimal_polynomial(&z5), QPoly::from_i64(&[1, 1, 1, 1, 1]));
        let legendre = [1i64, 1, -1, -1, 1]; // (a|5) for a = 0..4 (a=0 unused)
        let images: Vec<NFElement> = (1..=4u64)
            .map(|a| {
                let mut img = k.mul(&pi, &k.pow(&z5, a - 1));
                if legendre[a as usize] < 0 {
                    img = k.neg(&img);
                }
                img
            })
            .collect();
        let g = GaloisGroup::from_images(&k, images).unwrap();
        assert_eq!(g.kind, GroupKind::Cyclic4);
        // The square of any generator is complex conjugation.
        let gen = (0..4).find(|&i| g.order_of(i) == 4).unwrap();
        assert_eq!(g.compose(gen, gen), g.conj);
    }

    #[test]
    fn non_root_image_rejected() {
        let k = NumberField::new(QPoly::from_i64(&[49, 0, 7, 0, 1])).unwrap();
        let pi = k.gen();
        let bad = vec![pi.clone(), k.neg(&pi), k.add(&pi, &NFElement::one()), k.pow(&pi, 2)];
        assert!(GaloisGroup::from_images(&k, bad).is_err());
    }
}
