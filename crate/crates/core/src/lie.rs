//! Valuation-based Lie types, the good-Lie-type test, the CM types realizing
//! a Lie type, and the dimension condition. Inert components are emitted as
//! sum-constrained pairs and resolved only by the module oracle.

use crate::cm_types::CMAnalysis;
use crate::dieudonne::build_catalog_module;
use crate::places::{splitting_profile, SplittingBehavior, SplittingProfile};
use crate::weil::{WeilFamily, WeilNumberInstance};
use crate::{Error, Result};
use serde::Serialize;

/// How an inert component's pair was determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Resolution {
    /// The valuation engine pins every exponent (split/ramified places).
    Valuation,
    /// Only the sum 2 ord_w(pi) is pinned by the valuation argument.
    SumConstrained,
    /// Individual exponents resolved by the module oracle.
    OracleResolved,
}

/// Per-place exponent lists of the Lie type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceLie {
    pub label: String,
    pub exponents: Vec<u32>,
    pub resolution: Resolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieType {
    pub places: Vec<PlaceLie>,
}

impl LieType {
    pub fn total(&self) -> u32 {
        self.places.iter().flat_map(|p| p.exponents.iter()).sum()
    }

    pub fn is_resolved(&self) -> bool {
        self.places
            .iter()
            .all(|p| p.resolution != Resolution::SumConstrained)
    }

    /// Exponent lists only, place order preserved.
    pub fn exponent_lists(&self) -> Vec<Vec<u32>> {
        self.places.iter().map(|p| p.exponents.clone()).collect()
    }
}

/// The Lie type of a catalog member from Frobenius valuations, with inert
/// components resolved by the module oracle. sqrtP_zeta3 at p = 3 is
/// rejected: its order is not maximal at 3 and the valuation method does
/// not apply (see the classify module).
pub fn lie_type(inst: &WeilNumberInstance) -> Result<LieType> {
    let unresolved = lie_type_constraint(inst)?;
    resolve_with_oracle(inst, unresolved)
}

/// The Lie type as the valuation argument alone pins it: split and ramified
/// places get exact exponents, inert places only the sum constraint.
pub fn lie_type_constraint(inst: &WeilNumberInstance) -> Result<LieType> {
    if inst.family == WeilFamily::SqrtPZeta3 && inst.p == 3 {
        return Err(Error::LieTypeUnavailable(
            "sqrtP_zeta3 at p = 3 (index-3 order); see classify::special_case_sqrt3zeta3".into(),
        ));
    }
    let profile = splitting_profile(inst)?;
    let places = profile
        .places
        .iter()
        .map(|pl| match profile.behavior {
            SplittingBehavior::Split | SplittingBehavior::Ramified => PlaceLie {
                label: pl.label.clone(),
                exponents: vec![pl.frob_valuation],
                resolution: Resolution::Valuation,
            },
            SplittingBehavior::Inert => PlaceLie {
                label: pl.label.clone(),
                // Placeholder split of the pinned sum 2 ord_w(pi).
                exponents: vec![pl.frob_valuation, pl.frob_valuation],
                resolution: Resolution::SumConstrained,
            },
        })
        .collect();
    Ok(LieType { places })
}

fn resolve_with_oracle(inst: &WeilNumberInstance, mut lt: LieType) -> Result<LieType> {
    if lt.is_resolved() {
        return Ok(lt);
    }
    let dims = build_catalog_module(inst)?.mod_p()?.lie_dimensions();
    for (pl, oracle_dims) in lt.places.iter_mut().zip(dims) {
        if pl.resolution == Resolution::SumConstrained {
            let expected: u32 = pl.exponents.iter().sum();
            let got: u32 = oracle_dims.iter().sum();
            if expected != got {
                return Err(Error::Internal(format!(
                    "oracle sum {got} disagrees with valuation sum {expected}"
                )));
            }
            pl.exponents = oracle_dims;
            pl.resolution = Resolution::OracleResolved;
        }
    }
    Ok(lt)
}

/// Verdict of the good-Lie-type characterization together with the CM types
/// that realize the Lie type (componentwise, up to relabeling).
#[derive(Clone, Debug, Serialize)]
pub struct GoodLieVerdict {
    pub good: bool,
    /// Indices into the analysis' CM-type list whose partition equals the
    /// Lie type componentwise up to the place/index relabeling orbit.
    pub realizing_cm_types: Vec<usize>,
}

/// The good-Lie-type sums: per place, the constrained sum of exponents must
/// equal e_v, the ramification index of v over p in the real quadratic
/// subfield.
pub fn good_lie_type(
    lt: &LieType,
    profile: &SplittingProfile,
    analysis: &CMAnalysis,
) -> Result<GoodLieVerdict> {
    if !lt.is_resolved() {
        return Err(Error::UnresolvedLieType);
    }
    let e_v = profile.v_e;
    let good = match profile.behavior {
        SplittingBehavior::Split => {
            // e_w^i + e_wbar^i = e_v for every residue index i.
            let w = &lt.places[0].exponents;
            let wbar = &lt.places[1].exponents;
            w.iter().zip(wbar).all(|(a, b)| a + b == e_v)
        }
        SplittingBehavior::Inert => {
            let pair = &lt.places[0].exponents;
            pair.iter().sum::<u32>() == e_v
        }
        SplittingBehavior::Ramified => lt.places[0].exponents.iter().all(|&x| x == e_v),
    };
    let realizing = realizing_cm_types(lt, analysis);
    Ok(GoodLieVerdict {
        good,
        realizing_cm_types: realizing,
    })
}

/// CM types whose residue-index partition equals the Lie type, compared up
/// to the global relabelings (w <-> wbar swap, residue index swap).
fn realizing_cm_types(lt: &LieType, analysis: &CMAnalysis) -> Vec<usize> {
    let lie: Vec<Vec<u32>> = lt.exponent_lists();
    let candidates = relabeling_orbit(&lie);
    analysis
        .cm_types
        .iter()
        .enumerate()
        .filter_map(|(i, t)| {
            let partition: Vec<Vec<u32>> = t.index_counts.clone();
            candidates.contains(&partition).then_some(i)
        })
        .collect()
}

/// Orbit of a per-place exponent table under the place swap and a global
/// residue-index swap.
fn relabeling_orbit(lie: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let mut orbit = vec![lie.to_vec()];
    // Place swap (two places).
    if lie.len() == 2 {
        let mut sw = lie.to_vec();
        sw.swap(0, 1);
        orbit.push(sw);
    }
    // Global index swap inside every place (two indices).
    let flipped: Vec<Vec<u32>> = lie
        .iter()
        .map(|v| {
            let mut v = v.clone();
            v.reverse();
            v
        })
        .collect();
    for base in orbit.clone() {
        let f: Vec<Vec<u32>> = base
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.reverse();
                v
            })
            .collect();
        orbit.push(f);
    }
    orbit.push(flipped);
    orbit.sort();
    orbit.dedup();
    orbit
}

/// Dimension condition for split places: the exponent sum at each split
/// place must equal slope * [L0_v : Q_p]; vacuous for inert and ramified.
pub fn dimension_condition(inst: &WeilNumberInstance) -> Result<bool> {
    let profile = splitting_profile(inst)?;
    if profile.behavior != SplittingBehavior::Split {
        return Ok(true);
    }
    let lt = lie_type(inst)?;
    // slope 1/2, [L0_v : Q_p] = v_e * v_f.
    let expected = profile.v_e * profile.v_f;
    Ok(lt
        .places
        .iter()
        .all(|pl| 2 * pl.exponents.iter().sum::<u32>() == expected))
}

/// Good-Lie verdict for the order-25 fixture, whose per-place Lie
/// dimensions come from the pinned module fixture rather than valuations.
pub fn fixture_f25_lie_type() -> Result<LieType> {
    let shape = crate::dieudonne::fixture_ex_notgood();
    let dims = shape.mod_p()?.lie_dimensions();
    Ok(LieType {
        places: dims
            .into_iter()
            .enumerate()
            .map(|(i, exponents)| PlaceLie {
                label: if i == 0 { "w".into() } else { "wbar".into() },
                exponents,
                resolution: Resolution::OracleResolved,
            })
            .collect(),
    })
}
