//! Isogeny-class label parsing: `g.q.tok_tok...` with one base-26 token per
//! coefficient a_1..a_g of the Weil polynomial. Letters a..z are digits
//! 0..25; a leading 'a' on a multi-letter token marks negation. Decoded
//! coefficients must satisfy the Weil bound |a_i| <= C(2g, i) q^(i/2).

use crate::arith::{is_prime, QPoly};
use crate::weil::WeilFamily;
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyClassLabel {
    pub g: u32,
    pub q: u64,
    /// The prime below q.
    pub p: u64,
    /// q = p^k.
    pub k: u32,
    pub coeffs: Vec<i64>,
}

impl IsogenyClassLabel {
    /// Weil polynomial x^(2g) + a1 x^(2g-1) + ... + a_g x^g
    /// + q a_(g-1) x^(g-1) + ... + q^g, ascending coefficients.
    pub fn weil_polynomial(&self) -> QPoly {
        let g = self.g as usize;
        let mut asc = vec![0i64; 2 * g + 1];
        asc[2 * g] = 1;
        let mut qpow = 1i64;
        for i in 0..g {
            // coefficient of x^(2g-1-i) is a_(i+1); of x^(g-1-i) it is
            // q^(i+1) a_(g-1-i).
            asc[2 * g - 1 - i] = self.coeffs[i];
        }
        for i in 1..=g {
            qpow *= self.q as i64;
            let idx = g - i;
            let a = if idx == 0 { 1 } else { self.coeffs[idx - 1] };
            asc[idx] = qpow * a;
        }
        QPoly::from_i64(&asc)
    }

    /// Catalog family shape matched by the Weil polynomial, with q playing
    /// the role of the prime parameter.
    pub fn family_shape(&self) -> Option<WeilFamily> {
        if self.g != 2 {
            return None;
        }
        let q = self.q as i64;
        let (a1, a2) = (self.coeffs[0], self.coeffs[1]);
        match (a1, a2) {
            (0, x) if x == q => Some(WeilFamily::SqrtPZeta3),
            (0, 0) => Some(WeilFamily::SqrtPZeta8),
            (0, x) if x == -q => Some(WeilFamily::SqrtPZeta12),
            (0, x) if x == -2 * q => Some(WeilFamily::SqrtP),
            (5, 15) if q == 5 => Some(WeilFamily::Sqrt5Zeta5Plus),
            (-5, 15) if q == 5 => Some(WeilFamily::Sqrt5Zeta5Minus),
            (-2, 2) if q == 2 => Some(WeilFamily::Sqrt2Zeta24Plus),
            (2, 2) if q == 2 => Some(WeilFamily::Sqrt2Zeta24Minus),
            _ => None,
        }
    }
}

fn bad(label: &str, reason: impl Into<String>) -> Error {
    Error::BadLabel {
        label: label.to_string(),
        reason: reason.into(),
    }
}

/// Decode one token into an integer.
pub fn decode_token(tok: &str) -> Option<i64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    let digits = |s: &str| -> Option<i64> {
        let mut acc: i64 = 0;
        for b in s.bytes() {
            acc = acc.checked_mul(26)?.checked_add((b - b'a') as i64)?;
        }
        Some(acc)
    };
    if tok.len() > 1 && tok.starts_with('a') {
        // Canonical positive tokens have no leading zero digit, so a leading
        // 'a' marks negation of the remainder.
        let rest = &tok[1..];
        if rest.starts_with('a') {
            return None; // "aa..." is not canonical
        }
        Some(-digits(rest)?)
    } else {
        digits(tok)
    }
}

/// Encode an integer as a token (inverse of `decode_token`).
pub fn encode_token(mut n: i64) -> String {
    let neg = n < 0;
    if neg {
        n = -n;
    }
    let mut digits = Vec::new();
    if n == 0 {
        digits.push(b'a');
    }
    while n > 0 {
        digits.push(b'a' + (n % 26) as u8);
        n /= 26;
    }
    digits.reverse();
    let mut s = String::new();
    if neg {
        s.push('a');
    }
    s.push_str(std::str::from_utf8(&digits).unwrap());
    s
}

/// Format a label from dimension, field size, and coefficients.
pub fn format_label(g: u32, q: u64, coeffs: &[i64]) -> String {
    let toks: Vec<String> = coeffs.iter().map(|&c| encode_token(c)).collect();
    format!("{g}.{q}.{}", toks.join("_"))
}

/// q = p^k for prime p, by extracting the smallest prime factor.
fn prime_power_split(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself prime
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest == 1 && is_prime(p) {
        Some((p, k))
    } else {
        None
    }
}

/// Binomial coefficient C(n, k) for small arguments.
fn binomial(n: u32, k: u32) -> u64 {
    let mut acc = 1u64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Weil bound |a_i| <= C(2g, i) q^(i/2), checked exactly as
/// a_i^2 <= C(2g,i)^2 q^i in integers.
fn within_weil_bound(g: u32, q: u64, coeffs: &[i64]) -> bool {
    for (idx, &a) in coeffs.iter().enumerate() {
        let i = idx as u32 + 1;
        let c = binomial(2 * g, i) as i128;
        let qi = (q as i128).pow(i);
        if (a as i128) * (a as i128) > c * c * qi {
            return false;
        }
    }
    true
}

/// Parse a label of shape `g.q.tok_tok...` with g tokens.
pub fn parse_label(label: &str) -> Result<IsogenyClassLabel> {
    let parts: Vec<&str> = label.split('.').collect();
    if parts.len() != 3 {
        return Err(bad(label, "expected three dot-separated fields"));
    }
    let g: u32 = parts[0]
        .parse()
        .map_err(|_| bad(label, "dimension field is not an integer"))?;
    if g == 0 || g > 6 {
        return Err(bad(label, format!("unsupported dimension {g}")));
    }
    let q: u64 = parts[1]
        .parse()
        .map_err(|_| bad(label, "field-size field is not an integer"))?;
    let (p, k) =
        prime_power_split(q).ok_or_else(|| bad(label, format!("{q} is not a prime power")))?;
    let toks: Vec<&str> = parts[2].split('_').collect();
    if toks.len() != g as usize {
        return Err(bad(
            label,
            format!("expected {g} coefficient tokens, found {}", toks.len()),
        ));
    }
    let mut coeffs = Vec::with_capacity(g as usize);
    for t in toks {
        let c = decode_token(t).ok_or_else(|| bad(label, format!("malformed token `{t}`")))?;
        coeffs.push(c);
    }
    if !within_weil_bound(g, q, &coeffs) {
        return Err(Error::WeilBoundViolated(label.to_string()));
    }
    Ok(IsogenyClassLabel { g, q, p, k, coeffs })
}
