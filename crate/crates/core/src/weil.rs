//! The catalog of supersingular Weil numbers over prime fields: family tags,
//! admissibility, minimal polynomials, Weil-number verification, and the
//! ambient CM field with its verified Galois action.

use crate::arith::{is_prime, rat, ratio, Int, QPoly, Rat};
use crate::number_field::{GaloisGroup, NFElement, NumberField};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Family tags for the members of the supersingular surface catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WeilFamily {
    #[serde(rename = "sqrtP")]
    SqrtP,
    #[serde(rename = "sqrtP_zeta3")]
    SqrtPZeta3,
    #[serde(rename = "sqrtP_zeta8")]
    SqrtPZeta8,
    #[serde(rename = "sqrtP_zeta12")]
    SqrtPZeta12,
    #[serde(rename = "sqrt5_zeta5_plus")]
    Sqrt5Zeta5Plus,
    #[serde(rename = "sqrt5_zeta5_minus")]
    Sqrt5Zeta5Minus,
    #[serde(rename = "sqrt2_zeta24_plus")]
    Sqrt2Zeta24Plus,
    #[serde(rename = "sqrt2_zeta24_minus")]
    Sqrt2Zeta24Minus,
}

pub const ALL_FAMILIES: [WeilFamily; 8] = [
    WeilFamily::SqrtP,
    WeilFamily::SqrtPZeta3,
    WeilFamily::SqrtPZeta8,
    WeilFamily::SqrtPZeta12,
    WeilFamily::Sqrt5Zeta5Plus,
    WeilFamily::Sqrt5Zeta5Minus,
    WeilFamily::Sqrt2Zeta24Plus,
    WeilFamily::Sqrt2Zeta24Minus,
];

impl WeilFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            WeilFamily::SqrtP => "sqrtP",
            WeilFamily::SqrtPZeta3 => "sqrtP_zeta3",
            WeilFamily::SqrtPZeta8 => "sqrtP_zeta8",
            WeilFamily::SqrtPZeta12 => "sqrtP_zeta12",
            WeilFamily::Sqrt5Zeta5Plus => "sqrt5_zeta5_plus",
            WeilFamily::Sqrt5Zeta5Minus => "sqrt5_zeta5_minus",
            WeilFamily::Sqrt2Zeta24Plus => "sqrt2_zeta24_plus",
            WeilFamily::Sqrt2Zeta24Minus => "sqrt2_zeta24_minus",
        }
    }

    pub fn parse(tag: &str) -> Result<WeilFamily> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.tag() == tag)
            .ok_or_else(|| Error::UnknownFamily(tag.to_string()))
    }

    /// Admissibility per prime: zeta8 is absent at p = 2, zeta12 at p = 3,
    /// the zeta5 pair exists only at p = 5, the zeta24 pair only at p = 2.
    pub fn admissible(&self, p: u64) -> bool {
        match self {
            WeilFamily::SqrtP | WeilFamily::SqrtPZeta3 => true,
            WeilFamily::SqrtPZeta8 => p != 2,
            WeilFamily::SqrtPZeta12 => p != 3,
            WeilFamily::Sqrt5Zeta5Plus | WeilFamily::Sqrt5Zeta5Minus => p == 5,
            WeilFamily::Sqrt2Zeta24Plus | WeilFamily::Sqrt2Zeta24Minus => p == 2,
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, WeilFamily::SqrtP)
    }
}

/// A member of the catalog: a prime together with a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilNumberInstance {
    pub p: u64,
    pub family: WeilFamily,
    pub minpoly: QPoly,
    pub concern: bool,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    p: u64,
    family: WeilFamily,
    minpoly: Vec<i64>,
    concern: bool,
}

impl WeilNumberInstance {
    pub fn new(p: u64, family: WeilFamily) -> Result<WeilNumberInstance> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !family.admissible(p) {
            return Err(Error::InadmissibleFamily {
                family: family.tag().to_string(),
                p,
            });
        }
        Ok(WeilNumberInstance {
            p,
            family,
            minpoly: family_minimal_polynomial(p, family),
            concern: !family.is_real(),
        })
    }

    /// The quartic Weil polynomial of the isogeny class: the minimal
    /// polynomial itself, or its square for the degree-2 real family.
    pub fn weil_polynomial(&self) -> QPoly {
        if self.family.is_real() {
            self.minpoly.mul(&self.minpoly)
        } else {
            self.minpoly.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<i64> = self
            .minpoly
            .coeffs()
            .iter()
            .map(|c| {
                use num::ToPrimitive;
                c.numer().to_i64().expect("catalog coefficients fit i64")
            })
            .collect();
        serde_json::to_value(InstanceJson {
            p: self.p,
            family: self.family,
            minpoly: coeffs,
            concern: self.concern,
        })
        .unwrap()
    }
}

/// Minimal polynomial per family (ascending coefficients).
fn family_minimal_polynomial(p: u64, family: WeilFamily) -> QPoly {
    let p = p as i64;
    match family {
        WeilFamily::SqrtP => QPoly::from_i64(&[-p, 0, 1]),
        WeilFamily::SqrtPZeta3 => QPoly::from_i64(&[p * p, 0, p, 0, 1]),
        WeilFamily::SqrtPZeta8 => QPoly::from_i64(&[p * p, 0, 0, 0, 1]),
        WeilFamily::SqrtPZeta12 => QPoly::from_i64(&[p * p, 0, -p, 0, 1]),
        WeilFamily::Sqrt5Zeta5Plus => QPoly::from_i64(&[25, 25, 15, 5, 1]),
        WeilFamily::Sqrt5Zeta5Minus => QPoly::from_i64(&[25, -25, 15, -5, 1]),
        WeilFamily::Sqrt2Zeta24Plus => QPoly::from_i64(&[4, -4, 2, -2, 1]),
        WeilFamily::Sqrt2Zeta24Minus => QPoly::from_i64(&[4, 4, 2, 2, 1]),
    }
}

/// The full catalog at a prime, real member included, in family-tag order.
pub fn enumerate_catalog(p: u64) -> Result<Vec<WeilNumberInstance>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(ALL_FAMILIES
        .iter()
        .filter(|f| f.admissible(p))
        .map(|&f| WeilNumberInstance::new(p, f).unwrap())
        .collect())
}

/// The concern members only (non-real).
pub fn enumerate_concern(p: u64) -> Result<Vec<WeilNumberInstance>> {
    Ok(enumerate_catalog(p)?.into_iter().filter(|i| i.concern).collect())
}

/// Order of pi^2/p as a root of unity in Q[x]/(m), up to 24; None when
/// pi^2/p is not a root of unity of that order.
pub fn unity_order_of_pi2_over_p(m: &QPoly, p: u64) -> Option<u32> {
    let field = NumberField::new(m.clone()).ok()?;
    let u = field.scale(&ratio(1, p as i64), &field.pow(&field.gen(), 2));
    let mut acc = NFElement::one();
    for k in 1..=24u32 {
        acc = field.mul(&acc, &u);
        if acc == NFElement::one() {
            return Some(k);
        }
    }
    None
}

/// Weil-number verification for a monic quartic at prime p: the functional
/// equation x^4 m(p/x) = p^2 m(x) symbolically, no real roots, and a
/// supersingularity witness (pi^2/p is a root of unity of order <= 24).
pub fn verify_weil(m: &QPoly, p: u64) -> Result<bool> {
    if m.degree() != 4 || !m.is_monic() || !m.is_integral() {
        return Err(Error::BadDefiningPolynomial(format!("{m:?}")));
    }
    if !functional_equation_holds(m, p) {
        return Ok(false);
    }
    if m.real_root_count() != 0 {
        return Ok(false);
    }
    Ok(unity_order_of_pi2_over_p(m, p).is_some())
}

/// x^(deg) * m(p/x) == p^(deg/2) * m(x), expanded symbolically.
pub fn functional_equation_holds(m: &QPoly, p: u64) -> bool {
    let n = m.degree();
    if n % 2 != 0 {
        return false;
    }
    let p = rat(p as i64);
    // x^n m(p/x) has coefficient of x^(n-i) equal to c_i p^i.
    let mut lhs = vec![Rat::zero(); n + 1];
    let mut pi = Rat::one();
    for i in 0..=n {
        lhs[n - i] = m.coeff(i) * pi.clone();
        pi *= &p;
    }
    let mut phalf = Rat::one();
    for _ in 0..n / 2 {
        phalf *= &p;
    }
    let rhs: Vec<Rat> = (0..=n).map(|i| m.coeff(i) * phalf.clone()).collect();
    lhs == rhs
}

/// Irreducibility over Q for a monic integral quartic with constant term
/// p^2: no rational roots and no integral quadratic factors. The divisor
/// search is bounded by the constant term's divisors.
pub fn quartic_irreducible_over_q(m: &QPoly, p: u64) -> bool {
    debug_assert_eq!(m.degree(), 4);
    let c0 = m.coeff(0);
    debug_assert_eq!(c0, rat((p * p) as i64));
    // Rational roots would be signed divisors of p^2.
    let p = p as i64;
    let divisors = [1, p, p * p];
    for d in divisors {
        for s in [d, -d] {
            if m.eval(&rat(s)).is_zero() {
                return false;
            }
        }
    }
    // Quadratic factors (x^2 + ax + b)(x^2 + cx + d) with b d = p^2.
    let c3 = m.coeff(3);
    let c2 = m.coeff(2);
    let c1 = m.coeff(1);
    let pairs = [
        (1, p * p),
        (p, p),
        (p * p, 1),
        (-1, -p * p),
        (-p, -p),
        (-p * p, -1),
    ];
    for (b, d) in pairs {
        let (b, d) = (rat(b), rat(d));
        if b == d {
            // a + c = c3, ac = c2 - 2b, and c1 = b(a + c) must hold.
            if c1 != b.clone() * c3.clone() {
                continue;
            }
            let s = c3.clone();
            let prod = c2.clone() - rat(2) * b.clone();
            // Integer roots of t^2 - s t + prod.
            let disc = s.clone() * s.clone() - rat(4) * prod;
            if let Some(sq) = rational_sqrt(&disc) {
                let a = (s.clone() + sq) / rat(2);
                if a.is_integer() {
                    return false;
                }
            }
        } else {
            // a(d - b) = c1 - b c3.
            let num = c1.clone() - b.clone() * c3.clone();
            let a = num / (d.clone() - b.clone());
            if !a.is_integer() {
                continue;
            }
            let c = c3.clone() - a.clone();
            if b.clone() + d.clone() + a.clone() * c.clone() == c2 {
                return false;
            }
        }
    }
    true
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    let cand = Rat::new(n, d);
    if &(cand.clone() * cand.clone()) == r {
        Some(cand)
    } else {
        None
    }
}

/// The ambient CM field of an instance with its verified Galois group and
/// the Weil number as a field element. The real family is analyzed inside
/// Q(sqrt(p) zeta3), where sqrt(p) = pi^3/p.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub inst: WeilNumberInstance,
    pub field: NumberField,
    pub galois: GaloisGroup,
    /// The Weil number (pi, or sqrt(p) for the real family).
    pub frob: NFElement,
}

impl Ambient {
    pub fn new(inst: &WeilNumberInstance) -> Result<Ambient> {
        let ambient_poly = if inst.family.is_real() {
            family_minimal_polynomial(inst.p, WeilFamily::SqrtPZeta3)
        } else {
            inst.minpoly.clone()
        };
        let field = NumberField::new(ambient_poly)?;
        let galois = galois_group_for(&field, inst.p, inst.family)?;
        let frob = if inst.family.is_real() {
            // sqrt(p) = pi^3 / p in the zeta3 field.
            let e = field.scale(&ratio(1, inst.p as i64), &field.pow(&field.gen(), 3));
            debug_assert_eq!(
                field.mul(&e, &e),
                NFElement::rational(rat(inst.p as i64))
            );
            e
        } else {
            field.gen()
        };
        Ok(Ambient {
            inst: inst.clone(),
            field,
            galois,
            frob,
        })
    }

    /// The canonical pair of quadratic generators the paper's embedding
    /// tables act on, as exact field elements: (real-or-first, second).
    /// None for the cyclic zeta5 pair.
    pub fn sign_generators(&self) -> Option<(NFElement, NFElement)> {
        let p = self.inst.p as i64;
        let k = &self.field;
        let pi = k.gen();
        let family = if self.inst.family.is_real() {
            WeilFamily::SqrtPZeta3
        } else {
            self.inst.family
        };
        match family {
            WeilFamily::SqrtPZeta3 => {
                // (sqrt(p), sqrt(-3)) with sqrt(p) = pi^3/p and
                // sqrt(-3) = 2 (pi^2/p)^2 + 1.
                let sp = k.scale(&ratio(1, p), &k.pow(&pi, 3));
                let z3 = k.pow(&k.scale(&ratio(1, p), &k.pow(&pi, 2)), 2);
                let s3 = k.add(&k.scale(&rat(2), &z3), &NFElement::one());
                Some((sp, s3))
            }
            WeilFamily::SqrtPZeta8 => {
                // (sqrt(2p), sqrt(-1)) with sqrt(2p) = pi - pi^3/p and
                // sqrt(-1) = pi^2/p.
                let s2p = k.sub(&pi, &k.scale(&ratio(1, p), &k.pow(&pi, 3)));
                let i = k.scale(&ratio(1, p), &k.pow(&pi, 2));
                Some((s2p, i))
            }
            WeilFamily::SqrtPZeta12 => {
                // (sqrt(-p), sqrt(-3)) with sqrt(-p) = pi^3/p and
                // sqrt(-3) = 2 pi^2/p - 1.
                let sp = k.scale(&ratio(1, p), &k.pow(&pi, 3));
                let s3 = k.sub(&k.scale(&ratio(2, p), &k.pow(&pi, 2)), &NFElement::one());
                Some((sp, s3))
            }
            WeilFamily::Sqrt2Zeta24Plus | WeilFamily::Sqrt2Zeta24Minus => {
                // (sqrt(-1), sqrt(-3)) with i = +-(pi^3 -+ 2)/2 and
                // sqrt(-3) = i pi^2 + 1.
                let i = zeta24_i(k, family);
                let s3 = k.add(&k.mul(&i, &k.pow(&pi, 2)), &NFElement::one());
                Some((i, s3))
            }
            _ => None,
        }
    }
}

fn zeta24_i(k: &NumberField, family: WeilFamily) -> NFElement {
    let pi3 = k.pow(&k.gen(), 3);
    match family {
        // pi^3 = 2 + 2i  =>  i = (pi^3 - 2)/2.
        WeilFamily::Sqrt2Zeta24Plus => {
            k.scale(&ratio(1, 2), &k.sub(&pi3, &NFElement::rational(rat(2))))
        }
        // pi^3 = -2 - 2i  =>  i = (-pi^3 - 2)/2.
        WeilFamily::Sqrt2Zeta24Minus => {
            k.scale(&ratio(1, 2), &k.sub(&k.neg(&pi3), &NFElement::rational(rat(2))))
        }
        _ => unreachable!(),
    }
}

/// Conjugate candidates per family, verified exactly by the group
/// constructor (each image is a root of m, the set closes under
/// composition).
fn galois_group_for(field: &NumberField, p: u64, family: WeilFamily) -> Result<GaloisGroup> {
    let pi = field.gen();
    let p_over_pi = field.scale(&rat(p as i64), &field.inv(&pi));
    let images = match family {
        WeilFamily::SqrtP
        | WeilFamily::SqrtPZeta3
        | WeilFamily::SqrtPZeta8
        | WeilFamily::SqrtPZeta12 => vec![
            pi.clone(),
            field.neg(&pi),
            p_over_pi.clone(),
            field.neg(&p_over_pi),
        ],
        WeilFamily::Sqrt2Zeta24Plus | WeilFamily::Sqrt2Zeta24Minus => {
            let i = zeta24_i(field, family);
            vec![
                pi.clone(),
                field.mul(&i, &pi),
                p_over_pi.clone(),
                field.neg(&field.mul(&i, &p_over_pi)),
            ]
        }
        WeilFamily::Sqrt5Zeta5Plus | WeilFamily::Sqrt5Zeta5Minus => {
            // zeta5 = pi^6/125; sigma_a(pi) = (a|5) pi zeta5^(a-1).
            let z5 = field.scale(&ratio(1, 125), &field.pow(&pi, 6));
            let legendre = [0i64, 1, -1, -1, 1];
            (1..=4u64)
                .map(|a| {
                    let img = field.mul(&pi, &field.pow(&z5, a - 1));
                    if legendre[a as usize] < 0 {
                        field.neg(&img)
                    } else {
                        img
                    }
                })
                .collect()
        }
    };
    GaloisGroup::from_images(field, images)
}

/// Norm of the Weil number, exactly, with the p-adic valuation of the norm.
pub fn frobenius_norm_valuation(ambient: &Ambient) -> Result<u32> {
    let n = ambient.field.norm(&ambient.frob);
    if !n.is_integer() {
        return Err(Error::Internal("non-integral Weil-number norm".into()));
    }
    let mut v = 0u32;
    let mut n = n.numer().abs();
    let p = Int::from(ambient.inst.p);
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    Ok(v)
}
