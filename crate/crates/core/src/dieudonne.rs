//! Independent module oracle: finite semilinear-algebra models of Dieudonné
//! modules. Mod p the model computes Lie dimensions as exact cokernels of
//! the semilinear F; mod p^2 it carries honest F and V with FV = VF = p and
//! decides superspeciality by comparing the span of V^2 with that of p.
//!
//! Per place the module is a sum of f_w eigenspaces, each free of rank 1
//! over k[t]/(t^(e_w)) with k = F_{p^2} (mod p) or over GR(p^2,2)[t] with
//! t^(e_w) = p (mod p^2). F sends the generator of eigenspace i to
//! t^(a_i) times the generator of eigenspace i+1, twisting scalars by the
//! Frobenius; V is pinned by FV = VF = p.

use crate::arith::{rank_mod_p, Fp2, Fp2Ctx, Gr2, Gr2Ctx};
use crate::places::splitting_profile;
use crate::weil::{WeilFamily, WeilNumberInstance};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// One place component: ramification e, inertia f, and the F exponent
/// pattern (one exponent per eigenspace).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceShape {
    pub e: u32,
    pub f: u32,
    #[serde(rename = "F_pattern")]
    pub f_pattern: Vec<u32>,
}

impl PlaceShape {
    /// V exponents from FV = VF = p: v_(i+1) = e - a_i.
    pub fn v_pattern(&self) -> Vec<u32> {
        let f = self.f as usize;
        let mut v = vec![0u32; f];
        for i in 0..f {
            v[(i + 1) % f] = self.e - self.f_pattern[i];
        }
        v
    }
}

/// A module fixture: the data determining both truncation levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleShape {
    pub p: u64,
    pub places: Vec<PlaceShape>,
    #[serde(default = "default_level")]
    pub level: String,
}

fn default_level() -> String {
    "p2".to_string()
}

impl ModuleShape {
    pub fn new(p: u64, places: Vec<PlaceShape>) -> Result<ModuleShape> {
        for pl in &places {
            if pl.f_pattern.len() != pl.f as usize {
                return Err(Error::ModuleContract(format!(
                    "pattern length {} != f = {}",
                    pl.f_pattern.len(),
                    pl.f
                )));
            }
            if pl.f_pattern.iter().any(|&a| a > pl.e) {
                return Err(Error::ModuleContract("F exponent exceeds e".into()));
            }
        }
        Ok(ModuleShape {
            p,
            places,
            level: default_level(),
        })
    }

    pub fn from_json(s: &str) -> Result<ModuleShape> {
        let shape: ModuleShape = serde_json::from_str(s)
            .map_err(|e| Error::ModuleContract(format!("bad fixture JSON: {e}")))?;
        ModuleShape::new(shape.p, shape.places)
    }

    pub fn mod_p(&self) -> Result<ModP> {
        Ok(ModP {
            shape: self.clone(),
            ctx: Fp2Ctx::new(self.p)?,
        })
    }

    pub fn mod_p2(&self) -> Result<ModP2> {
        Ok(ModP2 {
            shape: self.clone(),
            ctx: Gr2Ctx::new(self.p)?,
        })
    }
}

/// Catalog module: V acts as multiplication by the Weil number composed
/// with the inverse scalar Frobenius, so the V exponent at every eigenspace
/// is ord_w(pi) and the F exponent is e_w - ord_w(pi).
pub fn build_catalog_module(inst: &WeilNumberInstance) -> Result<ModuleShape> {
    if inst.family == WeilFamily::SqrtPZeta3 && inst.p == 3 {
        return Err(Error::LieTypeUnavailable(
            "sqrtP_zeta3 at p = 3: the order is not maximal at 3 (index 3)".into(),
        ));
    }
    let profile = splitting_profile(inst)?;
    let places = profile
        .places
        .iter()
        .map(|pl| PlaceShape {
            e: pl.e,
            f: pl.f,
            f_pattern: vec![pl.e - pl.frob_valuation; pl.f as usize],
        })
        .collect();
    ModuleShape::new(inst.p, places)
}

/// The supersingular elliptic module over F_3: one place, e = 2, f = 1,
/// F generator exponent 1 (F m = t m, F t m = 3 m).
pub fn fixture_elliptic_f3() -> ModuleShape {
    ModuleShape::new(
        3,
        vec![PlaceShape {
            e: 2,
            f: 1,
            f_pattern: vec![1],
        }],
    )
    .unwrap()
}

/// The order-25 fixture: v inert in L0, split in L, so two places with
/// e = 1, f = 2; the eigenspace computation pins F pattern (1, 0) per
/// place.
pub fn fixture_ex_notgood() -> ModuleShape {
    ModuleShape::new(
        5,
        vec![
            PlaceShape {
                e: 1,
                f: 2,
                f_pattern: vec![1, 0],
            },
            PlaceShape {
                e: 1,
                f: 2,
                f_pattern: vec![1, 0],
            },
        ],
    )
    .unwrap()
}

/// Adversarial non-superspecial module: split shape with V exponents 2 and
/// 0 (so V^2 spans (p^2, 1) instead of p).
pub fn fixture_adversarial() -> ModuleShape {
    // F pattern = e - v: v = 2 -> a = 0; v = 0 -> a = 2.
    ModuleShape::new(
        3,
        vec![
            PlaceShape {
                e: 2,
                f: 1,
                f_pattern: vec![0],
            },
            PlaceShape {
                e: 2,
                f: 1,
                f_pattern: vec![2],
            },
        ],
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// Mod-p model
// ---------------------------------------------------------------------------

/// The mod-p module: coefficients in F_{p^2}, t^e = 0.
pub struct ModP {
    pub shape: ModuleShape,
    pub ctx: Fp2Ctx,
}

/// Element of one place component mod p: [eigenspace][power of t].
pub type PlaceElP = Vec<Vec<Fp2>>;

impl ModP {
    pub fn zero_at(&self, place: usize) -> PlaceElP {
        let pl = &self.shape.places[place];
        vec![vec![Fp2::ZERO; pl.e as usize]; pl.f as usize]
    }

    /// Generator t^j m^i of a place component.
    pub fn basis_el(&self, place: usize, eigenspace: usize, j: usize) -> PlaceElP {
        let mut z = self.zero_at(place);
        z[eigenspace][j] = Fp2::ONE;
        z
    }

    pub fn scalar_mul(&self, c: Fp2, el: &PlaceElP) -> PlaceElP {
        el.iter()
            .map(|row| row.iter().map(|&x| self.ctx.mul(c, x)).collect())
            .collect()
    }

    pub fn add(&self, a: &PlaceElP, b: &PlaceElP) -> PlaceElP {
        a.iter()
            .zip(b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| self.ctx.add(x, y)).collect())
            .collect()
    }

    /// F on a place component: semilinear over F_{p^2}, eigenspace shift by
    /// one, multiplication by t^(a_i); t^e = 0.
    pub fn apply_f(&self, place: usize, el: &PlaceElP) -> PlaceElP {
        let pl = &self.shape.places[place];
        let (e, f) = (pl.e as usize, pl.f as usize);
        let mut out = self.zero_at(place);
        for i in 0..f {
            let a = pl.f_pattern[i] as usize;
            let tgt = (i + 1) % f;
            for j in 0..e {
                if j + a >= e {
                    continue;
                }
                let c = self.ctx.frobenius(el[i][j]);
                out[tgt][j + a] = self.ctx.add(out[tgt][j + a], c);
            }
        }
        out
    }

    /// Cokernel dimensions of F per place and eigenspace, over the residue
    /// field F_{p^2} (computed as F_p ranks and halved).
    pub fn lie_dimensions(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.shape.places.len());
        for (pi, pl) in self.shape.places.iter().enumerate() {
            let (e, f) = (pl.e as usize, pl.f as usize);
            let dim = 2 * e; // F_p dimension of one eigenspace
            let mut dims = vec![0u32; f];
            for i in 0..f {
                // Matrix of F restricted to eigenspace i, landing in i+1.
                let tgt = (i + 1) % f;
                let mut cols: Vec<Vec<u64>> = Vec::with_capacity(dim);
                for j in 0..e {
                    for k in 0..2 {
                        let mut el = self.zero_at(pi);
                        el[i][j] = if k == 0 { Fp2::ONE } else { Fp2::gen() };
                        let img = self.apply_f(pi, &el);
                        let mut col = Vec::with_capacity(dim);
                        for jj in 0..e {
                            col.push(img[tgt][jj].a0);
                            col.push(img[tgt][jj].a1);
                        }
                        cols.push(col);
                    }
                }
                // Rank of the column span.
                let rank = rank_mod_p(&cols, self.shape.p);
                let coker = dim - rank;
                debug_assert_eq!(coker % 2, 0, "cokernel must be F_p^2-linear");
                dims[tgt] = (coker / 2) as u32;
            }
            out.push(dims);
        }
        out
    }

    /// Total Lie dimension across places.
    pub fn total_lie_dimension(&self) -> u32 {
        self.lie_dimensions().iter().flatten().sum()
    }
}

// ---------------------------------------------------------------------------
// Mod-p^2 model
// ---------------------------------------------------------------------------

/// The mod-p^2 model: coefficients in GR(p^2, 2), t^e = p.
pub struct ModP2 {
    pub shape: ModuleShape,
    pub ctx: Gr2Ctx,
}

/// Element of one place component mod p^2: [eigenspace][power of t].
pub type PlaceElP2 = Vec<Vec<Gr2>>;

impl ModP2 {
    pub fn zero_at(&self, place: usize) -> PlaceElP2 {
        let pl = &self.shape.places[place];
        vec![vec![Gr2::ZERO; pl.e as usize]; pl.f as usize]
    }

    pub fn basis_el(&self, place: usize, eigenspace: usize, j: usize) -> PlaceElP2 {
        let mut z = self.zero_at(place);
        z[eigenspace][j] = Gr2::ONE;
        z
    }

    pub fn add(&self, a: &PlaceElP2, b: &PlaceElP2) -> PlaceElP2 {
        a.iter()
            .zip(b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| self.ctx.add(x, y)).collect())
            .collect()
    }

    pub fn scalar_mul(&self, c: Gr2, el: &PlaceElP2) -> PlaceElP2 {
        el.iter()
            .map(|row| row.iter().map(|&x| self.ctx.mul(c, x)).collect())
            .collect()
    }

    /// Multiply one eigenspace row by t^k with t^e = p.
    fn shift_row(&self, e: usize, row: &[Gr2], k: usize) -> Vec<Gr2> {
        let mut out = vec![Gr2::ZERO; e];
        for (j, &c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut idx = j + k;
            let mut val = c;
            while idx >= e {
                idx -= e;
                val = self.ctx.scalar_mul(self.shape.p, val);
            }
            if !val.is_zero() {
                out[idx] = self.ctx.add(out[idx], val);
            }
        }
        out
    }

    /// F: eigenspace i -> i+1, multiply by t^(a_i), twist scalars by sigma.
    pub fn apply_f(&self, place: usize, el: &PlaceElP2) -> PlaceElP2 {
        let pl = &self.shape.places[place];
        let (e, f) = (pl.e as usize, pl.f as usize);
        let mut out = self.zero_at(place);
        for i in 0..f {
            let twisted: Vec<Gr2> = el[i].iter().map(|&c| self.ctx.frobenius(c)).collect();
            let shifted = self.shift_row(e, &twisted, pl.f_pattern[i] as usize);
            let tgt = (i + 1) % f;
            for j in 0..e {
                out[tgt][j] = self.ctx.add(out[tgt][j], shifted[j]);
            }
        }
        out
    }

    /// V: eigenspace i -> i-1, multiply by t^(v_i), twist by sigma^(-1)
    /// (= sigma, order 2).
    pub fn apply_v(&self, place: usize, el: &PlaceElP2) -> PlaceElP2 {
        let pl = &self.shape.places[place];
        let (e, f) = (pl.e as usize, pl.f as usize);
        let v_pattern = pl.v_pattern();
        let mut out = self.zero_at(place);
        for i in 0..f {
            let twisted: Vec<Gr2> = el[i].iter().map(|&c| self.ctx.frobenius(c)).collect();
            let shifted = self.shift_row(e, &twisted, v_pattern[i] as usize);
            let tgt = (i + f - 1) % f;
            for j in 0..e {
                out[tgt][j] = self.ctx.add(out[tgt][j], shifted[j]);
            }
        }
        out
    }

    /// t-adic valuation of a place element: min over entries of
    /// j + e * (GR valuation); None for zero. Values land in 0..2e.
    pub fn valuation(&self, place: usize, el: &PlaceElP2) -> Option<u32> {
        let e = self.shape.places[place].e;
        let mut best: Option<u32> = None;
        for row in el {
            for (j, &c) in row.iter().enumerate() {
                let v = self.ctx.val(c); // 0 unit, 1 p*unit, 2 zero
                if v == 2 {
                    continue;
                }
                let total = j as u32 + e * v;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
        }
        best
    }

    /// Verify FV = VF = p on every basis element and on a scalar-twisted
    /// copy (so the semilinear twists must cancel exactly).
    pub fn check_fv_vf(&self) -> Result<()> {
        for (pi, pl) in self.shape.places.iter().enumerate() {
            for i in 0..pl.f as usize {
                for j in 0..pl.e as usize {
                    for scalar in [Gr2::ONE, Gr2::gen()] {
                        let el = self.scalar_mul(scalar, &self.basis_el(pi, i, j));
                        let fv = self.apply_f(pi, &self.apply_v(pi, &el));
                        let vf = self.apply_v(pi, &self.apply_f(pi, &el));
                        let p_el = self.scalar_mul(Gr2::scalar(self.shape.p), &el);
                        if fv != p_el || vf != p_el {
                            return Err(Error::ModuleContract(format!(
                                "FV = VF = p fails at place {pi}, eigenspace {i}, power {j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Superspeciality: the span of V^2 equals the span of p. V^2 is
    /// GR-linear and diagonal on the eigenspace generators (asserted), so
    /// the elementary-divisor valuations of the Smith reduction are the
    /// valuations of the diagonal images, which must all equal
    /// val(p) = e exactly.
    pub fn is_superspecial(&self) -> Result<bool> {
        self.check_fv_vf()?;
        for (pi, pl) in self.shape.places.iter().enumerate() {
            for i in 0..pl.f as usize {
                let v2 = self.apply_v(pi, &self.apply_v(pi, &self.basis_el(pi, i, 0)));
                // Diagonality: V^2 must land back in eigenspace i.
                for (k, row) in v2.iter().enumerate() {
                    if k != i && row.iter().any(|c| !c.is_zero()) {
                        return Err(Error::ModuleContract(
                            "V^2 is not eigenspace-diagonal".into(),
                        ));
                    }
                }
                let val = self.valuation(pi, &v2);
                if val != Some(pl.e) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The mod-p model obtained by reduction must act identically on basis
    /// elements (F commutes with reduction).
    pub fn reduction_matches(&self, modp: &ModP) -> bool {
        if self.shape != modp.shape {
            return false;
        }
        for (pi, pl) in self.shape.places.iter().enumerate() {
            for i in 0..pl.f as usize {
                for j in 0..pl.e as usize {
                    let up = self.apply_f(pi, &self.basis_el(pi, i, j));
                    let reduced: PlaceElP = up
                        .iter()
                        .map(|row| row.iter().map(|&c| self.ctx.reduce(c)).collect())
                        .collect();
                    let down = modp.apply_f(pi, &modp.basis_el(pi, i, j));
                    if reduced != down {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;
    use crate::weil::enumerate_concern;

    #[test]
    fn catalog_module_patterns() {
        let m = build_catalog_module(&WeilNumberInstance::new(7, WeilFamily::SqrtPZeta3).unwrap())
            .unwrap();
        assert_eq!(m.places.len(), 2);
        assert!(m.places.iter().all(|pl| pl.f_pattern == vec![1]));

        let m = build_catalog_module(&WeilNumberInstance::new(5, WeilFamily::SqrtPZeta3).unwrap())
            .unwrap();
        assert_eq!(m.places.len(), 1);
        assert_eq!(m.places[0].f_pattern, vec![1, 1]);
        assert_eq!(m.places[0].v_pattern(), vec![1, 1]);

        let m =
            build_catalog_module(&WeilNumberInstance::new(5, WeilFamily::Sqrt5Zeta5Plus).unwrap())
                .unwrap();
        assert_eq!(m.places[0].f_pattern, vec![2]);

        assert!(build_catalog_module(
            &WeilNumberInstance::new(3, WeilFamily::SqrtPZeta3).unwrap()
        )
        .is_err());
    }

    #[test]
    fn lie_dimensions_on_anchors() {
        // Split catalog module: (1, 1).
        let m = build_catalog_module(&WeilNumberInstance::new(7, WeilFamily::SqrtPZeta3).unwrap())
            .unwrap();
        assert_eq!(m.mod_p().unwrap().lie_dimensions(), vec![vec![1], vec![1]]);

        // Elliptic fixture: dimension 1.
        let e = fixture_elliptic_f3();
        assert_eq!(e.mod_p().unwrap().lie_dimensions(), vec![vec![1]]);
        assert_eq!(e.mod_p().unwrap().total_lie_dimension(), 1);

        // ex:notgood fixture: per-place dims summing to (1, 0).
        let n = fixture_ex_notgood();
        let dims = n.mod_p().unwrap().lie_dimensions();
        for place_dims in &dims {
            let mut sorted = place_dims.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(sorted, vec![1, 0]);
        }
        assert_eq!(n.mod_p().unwrap().total_lie_dimension(), 2);

        // zeta5: single place, dimension (2).
        let z =
            build_catalog_module(&WeilNumberInstance::new(5, WeilFamily::Sqrt5Zeta5Plus).unwrap())
                .unwrap();
        assert_eq!(z.mod_p().unwrap().lie_dimensions(), vec![vec![2]]);
    }

    #[test]
    fn superspecial_verdicts() {
        // Elliptic fixture mod 9: V^2 = 3 * unit.
        assert!(fixture_elliptic_f3().mod_p2().unwrap().is_superspecial().unwrap());
        // zeta5 catalog module: V^2 valuation 4 = ord(p) in e = 4.
        let z =
            build_catalog_module(&WeilNumberInstance::new(5, WeilFamily::Sqrt5Zeta5Plus).unwrap())
                .unwrap();
        assert!(z.mod_p2().unwrap().is_superspecial().unwrap());
        // Adversarial split module with V exponents (2, 0): not superspecial.
        assert!(!fixture_adversarial().mod_p2().unwrap().is_superspecial().unwrap());
        // ex:notgood is still superspecial.
        assert!(fixture_ex_notgood().mod_p2().unwrap().is_superspecial().unwrap());
    }

    #[test]
    fn fv_vf_and_reduction_sweep() {
        for &p in primes_below(60).iter() {
            for inst in enumerate_concern(p).unwrap() {
                if inst.family == WeilFamily::SqrtPZeta3 && p == 3 {
                    continue;
                }
                let shape = build_catalog_module(&inst).unwrap();
                let m2 = shape.mod_p2().unwrap();
                m2.check_fv_vf().unwrap();
                assert!(m2.is_superspecial().unwrap(), "{} at {p}", inst.family.tag());
                assert!(m2.reduction_matches(&shape.mod_p().unwrap()));
                // Total Lie dimension 2 for every surface module.
                assert_eq!(shape.mod_p().unwrap().total_lie_dimension(), 2);
            }
        }
    }

    #[test]
    fn semilinearity_of_f() {
        // F(c m) = sigma(c) F(m) for every scalar in small fields,
        // strided samples for larger ones.
        for p in [3u64, 5, 7] {
            let inst = enumerate_concern(p)
                .unwrap()
                .into_iter()
                .find(|i| !(i.family == WeilFamily::SqrtPZeta3 && p == 3))
                .unwrap();
            let shape = build_catalog_module(&inst).unwrap();
            let m = shape.mod_p().unwrap();
            let m2 = shape.mod_p2().unwrap();
            let step = if p == 3 { 1 } else { 3 };
            for (pi, pl) in shape.places.iter().enumerate() {
                for i in 0..pl.f as usize {
                    let base_p = m.basis_el(pi, i, 0);
                    let base_p2 = m2.basis_el(pi, i, 0);
                    for c in m.ctx.elements().step_by(step).take(40) {
                        let lhs = m.apply_f(pi, &m.scalar_mul(c, &base_p));
                        let rhs = m.scalar_mul(m.ctx.frobenius(c), &m.apply_f(pi, &base_p));
                        assert_eq!(lhs, rhs);
                    }
                    for c in m2.ctx.elements().step_by(7 * step).take(40) {
                        let lhs = m2.apply_f(pi, &m2.scalar_mul(c, &base_p2));
                        let rhs = m2.scalar_mul(m2.ctx.frobenius(c), &m2.apply_f(pi, &base_p2));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn fixture_json_round_trip() {
        let shape = fixture_elliptic_f3();
        let s = serde_json::to_string(&shape).unwrap();
        assert!(s.contains("\"F_pattern\":[1]"));
        assert_eq!(ModuleShape::from_json(&s).unwrap(), shape);
        let parsed = ModuleShape::from_json(
            r#"{"p":3,"places":[{"e":2,"f":1,"F_pattern":[1]}],"level":"p2"}"#,
        )
        .unwrap();
        assert_eq!(parsed, shape);
        // Bad pattern length rejected.
        assert!(ModuleShape::from_json(r#"{"p":3,"places":[{"e":2,"f":2,"F_pattern":[1]}]}"#)
            .is_err());
    }
}
