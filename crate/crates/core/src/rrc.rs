//! The residual reflex condition: per CM type, the slope-matching condition
//! against the variety slope and the reflex residue-field embedding into
//! F_q; aggregated over all CM types of the field.

use crate::arith::{ratio, Rat};
use crate::cm_types::{analyze, CMAnalysis, CMTypeData};
use crate::weil::WeilNumberInstance;
use crate::Result;
use serde::Serialize;

/// Why a CM type fails, when it does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailedCondition {
    #[serde(rename = "ST")]
    SlopeMatching,
    #[serde(rename = "reflex-residue")]
    ReflexResidue,
}

#[derive(Clone, Debug, Serialize)]
pub struct CMTypeVerdict {
    pub phi: [String; 2],
    pub paper_index: usize,
    pub st_ok: bool,
    pub reflex_ok: bool,
    pub rrc: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<FailedCondition>,
}

/// Aggregate verdict for one instance at one base field F_q.
#[derive(Clone, Debug, Serialize)]
pub struct RrcVerdict {
    pub p: u64,
    pub family: String,
    pub q: u64,
    pub per_cm_type: Vec<CMTypeVerdict>,
    pub satisfiable: bool,
    /// Indices (into per_cm_type) of the witnesses.
    pub witnesses: Vec<usize>,
}

/// Slope-matching check: |Phi_w| / (e_w f_w) must equal the variety slope at
/// every place. The variety slope defaults to the constant 1/2.
pub fn shimura_taniyama_check(
    cm: &CMTypeData,
    variety_slope: Option<&[Rat]>,
) -> bool {
    match variety_slope {
        Some(slopes) => cm.slopes.iter().zip(slopes).all(|(a, b)| a == b),
        None => cm.slopes.iter().all(|s| *s == ratio(1, 2)),
    }
}

/// Reflex residue-field check at q = p^k: the residue field F_{p^f'} embeds
/// into F_q exactly when f' divides k.
pub fn reflex_residue_check(reflex_residue_degree: u32, k: u32) -> bool {
    k % reflex_residue_degree == 0
}

/// Exponent k with q = p^k.
fn exponent_of(q: u64, p: u64) -> Option<u32> {
    let mut k = 0u32;
    let mut acc = 1u64;
    while acc < q {
        acc = acc.checked_mul(p)?;
        k += 1;
    }
    (acc == q && k >= 1).then_some(k)
}

/// Verdict for an analyzed instance at q = p^k.
pub fn rrc_verdict_for(analysis: &CMAnalysis, q: u64) -> Result<RrcVerdict> {
    let p = analysis.profile.p;
    let k = exponent_of(q, p).ok_or_else(|| {
        crate::Error::Internal(format!("q = {q} is not a power of p = {p}"))
    })?;
    let mut per = Vec::with_capacity(4);
    for t in &analysis.cm_types {
        let st_ok = shimura_taniyama_check(t, None);
        let reflex_ok = reflex_residue_check(t.reflex_residue_degree, k);
        let failed = if !st_ok {
            Some(FailedCondition::SlopeMatching)
        } else if !reflex_ok {
            Some(FailedCondition::ReflexResidue)
        } else {
            None
        };
        per.push(CMTypeVerdict {
            phi: t.phi_labels.clone(),
            paper_index: t.paper_index,
            st_ok,
            reflex_ok,
            rrc: st_ok && reflex_ok,
            failed,
        });
    }
    let witnesses: Vec<usize> = per
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.rrc.then_some(i))
        .collect();
    Ok(RrcVerdict {
        p,
        family: analysis.ambient.inst.family.tag().to_string(),
        q,
        satisfiable: !witnesses.is_empty(),
        per_cm_type: per,
        witnesses,
    })
}

/// Convenience: analyze the instance and evaluate RRC at q.
pub fn rrc_verdict(inst: &WeilNumberInstance, q: u64) -> Result<RrcVerdict> {
    let analysis = analyze(inst)?;
    rrc_verdict_for(&analysis, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;
    use crate::places::SplittingBehavior;
    use crate::weil::{enumerate_catalog, WeilFamily};

    #[test]
    fn sqrt7_zeta3_witnesses_are_the_balanced_pair() {
        let inst = WeilNumberInstance::new(7, WeilFamily::SqrtPZeta3).unwrap();
        let analysis = analyze(&inst).unwrap();
        let v = rrc_verdict_for(&analysis, 7).unwrap();
        assert!(v.satisfiable);
        let witness_indices: Vec<usize> =
            v.witnesses.iter().map(|&i| v.per_cm_type[i].paper_index).collect();
        let mut w = witness_indices.clone();
        w.sort_unstable();
        assert_eq!(w, vec![1, 3]);
        // The failing pair fails on slope matching, not the reflex.
        for cv in &v.per_cm_type {
            if !cv.rrc {
                assert_eq!(cv.failed, Some(FailedCondition::SlopeMatching));
            }
        }
    }

    #[test]
    fn sqrt3_zeta3_witnesses_have_reflex_sqrt_minus_3() {
        let inst = WeilNumberInstance::new(3, WeilFamily::SqrtPZeta3).unwrap();
        let analysis = analyze(&inst).unwrap();
        let v = rrc_verdict_for(&analysis, 3).unwrap();
        assert!(v.satisfiable);
        for (i, cv) in v.per_cm_type.iter().enumerate() {
            let reflex = &analysis.cm_types[i].reflex_minpoly;
            if cv.rrc {
                assert_eq!(reflex, &vec![3, 0, 1]);
            } else {
                // The Q(sqrt-1) pair fails the residue condition at q = 3.
                assert_eq!(reflex, &vec![1, 0, 1]);
                assert_eq!(cv.failed, Some(FailedCondition::ReflexResidue));
            }
        }
        // At q = 9 everything is satisfiable.
        let v9 = rrc_verdict_for(&analysis, 9).unwrap();
        assert!(v9.per_cm_type.iter().all(|cv| cv.rrc));
    }

    #[test]
    fn real_sqrt13_satisfiable_with_balanced_witnesses() {
        let inst = WeilNumberInstance::new(13, WeilFamily::SqrtP).unwrap();
        let analysis = analyze(&inst).unwrap();
        let v = rrc_verdict_for(&analysis, 13).unwrap();
        assert!(v.satisfiable);
        for &w in &v.witnesses {
            assert_eq!(analysis.cm_types[w].slopes, vec![ratio(1, 2), ratio(1, 2)]);
        }
    }

    #[test]
    fn split_exactly_two_pass_st_inert_all_four() {
        for &p in primes_below(200).iter() {
            for inst in enumerate_catalog(p).unwrap() {
                let analysis = analyze(&inst).unwrap();
                let v = rrc_verdict_for(&analysis, p).unwrap();
                let st_count = v.per_cm_type.iter().filter(|cv| cv.st_ok).count();
                match analysis.profile.behavior {
                    SplittingBehavior::Split => assert_eq!(st_count, 2, "{} at {p}", inst.family.tag()),
                    _ => assert_eq!(st_count, 4, "{} at {p}", inst.family.tag()),
                }
                // Aggregate is always satisfiable at q = p^2.
                let v2 = rrc_verdict_for(&analysis, p * p).unwrap();
                assert!(v2.satisfiable);
            }
        }
    }

    #[test]
    fn f25_fixture_rrc() {
        let analysis = crate::cm_types::analyze_fixture_f25().unwrap();
        let v = rrc_verdict_for(&analysis, 25).unwrap();
        assert!(v.satisfiable);
        for (i, cv) in v.per_cm_type.iter().enumerate() {
            let t = &analysis.cm_types[i];
            if cv.rrc {
                // Witnesses are the balanced pair with reflex Q(sqrt-3).
                assert_eq!(t.reflex_minpoly, vec![3, 0, 1]);
                assert_eq!(t.slopes, vec![ratio(1, 2), ratio(1, 2)]);
            } else {
                assert_eq!(cv.failed, Some(FailedCondition::SlopeMatching));
            }
        }
    }
}
