//! CM types of the quartic CM field: size-2 Galois subsets disjoint from
//! their conjugate, their induced-place and residue-index partitions,
//! slopes, and reflex fields.

use crate::arith::{kronecker, ratio, Int, Rat};
use crate::number_field::Subfield;
use crate::places::{place_subgroups, splitting_profile, PlaceSubgroups, SplittingProfile};
use crate::weil::{Ambient, WeilNumberInstance};
use crate::{Error, Result};

/// A CM type as a sorted pair of automorphism indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CMType {
    pub phi: [usize; 2],
}

impl CMType {
    pub fn contains(&self, i: usize) -> bool {
        self.phi.contains(&i)
    }
}

/// All CM types: subsets of size 2 meeting each conjugation pair once.
pub fn enumerate_cm_types(galois: &crate::number_field::GaloisGroup) -> Vec<CMType> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if galois.compose(galois.conj, i) != j {
                out.push(CMType { phi: [i, j] });
            }
        }
    }
    debug_assert_eq!(out.len(), 4);
    out
}

/// Fully computed data for one CM type of an instance.
#[derive(Clone, Debug)]
pub struct CMTypeData {
    /// Automorphism indices.
    pub phi: [usize; 2],
    /// Embedding labels ("+-" style sign patterns, or "g^k" for cyclic).
    pub phi_labels: [String; 2],
    /// Paper-style index 1..4 from the sign-pattern convention; 0 when the
    /// group is cyclic and the convention does not apply.
    pub paper_index: usize,
    /// |Phi_w| per place, in profile order.
    pub place_counts: Vec<u32>,
    /// |Phi_w^i| per place and residue index.
    pub index_counts: Vec<Vec<u32>>,
    /// Slope per place.
    pub slopes: Vec<Rat>,
    /// Canonical reflex minimal polynomial (x^2 - D or the quartic itself).
    pub reflex_minpoly: Vec<i64>,
    pub reflex_degree: usize,
    /// Residue degree f' of the reflex place above p.
    pub reflex_residue_degree: u32,
}

impl CMTypeData {
    pub fn slope_strings(&self) -> Vec<String> {
        self.slopes.iter().map(|s| s.to_string()).collect()
    }
}

/// One instance analyzed end to end: ambient field, splitting data,
/// subgroups, and all four CM types.
#[derive(Clone, Debug)]
pub struct CMAnalysis {
    pub ambient: Ambient,
    pub profile: SplittingProfile,
    pub subgroups: PlaceSubgroups,
    pub cm_types: Vec<CMTypeData>,
}

/// Analyze a catalog member (the real family routes through its ambient
/// zeta3 field).
pub fn analyze(inst: &WeilNumberInstance) -> Result<CMAnalysis> {
    let ambient = Ambient::new(inst)?;
    let profile = splitting_profile(inst)?;
    let subgroups = place_subgroups(&ambient, inst.p)?;
    analyze_with(ambient, profile, subgroups)
}

/// Analyze the order-25 fixture: the Q(zeta12) field with Frobenius a
/// Weil-25 number, v inert in L0 and split in L.
pub fn analyze_fixture_f25() -> Result<CMAnalysis> {
    let ambient = crate::places::fixture_ambient_f25()?;
    let profile = crate::places::fixture_profile_f25();
    let subgroups = place_subgroups(&ambient, profile.p)?;
    analyze_with(ambient, profile, subgroups)
}

pub fn analyze_with(
    ambient: Ambient,
    profile: SplittingProfile,
    subgroups: PlaceSubgroups,
) -> Result<CMAnalysis> {
    crate::places::check_profile_against_subgroups(&profile, &subgroups)?;
    let types = enumerate_cm_types(&ambient.galois);
    let labels = embedding_labels(&ambient);
    let mut cm_types = Vec::with_capacity(4);
    for cm in &types {
        let (place_counts, index_counts) = induced_partition(&ambient, &subgroups, cm);
        let slopes: Vec<Rat> = profile
            .places
            .iter()
            .zip(&place_counts)
            .map(|(pl, &c)| ratio(c as i64, (pl.e * pl.f) as i64))
            .collect();
        let reflex = reflex_field(&ambient, cm)?;
        let f_prime = reflex_residue_degree(&ambient, &profile, &reflex)?;
        let phi_labels = [labels[cm.phi[0]].clone(), labels[cm.phi[1]].clone()];
        let paper_index = paper_cm_index(&labels, cm);
        let reflex_minpoly = reflex
            .minpoly
            .coeffs()
            .iter()
            .map(|c| {
                use num::ToPrimitive;
                c.numer().to_i64().expect("reflex coefficients fit i64")
            })
            .collect();
        cm_types.push(CMTypeData {
            phi: cm.phi,
            phi_labels,
            paper_index,
            place_counts,
            index_counts,
            slopes,
            reflex_minpoly,
            reflex_degree: reflex.degree,
            reflex_residue_degree: f_prime,
        });
    }
    Ok(CMAnalysis {
        ambient,
        profile,
        subgroups,
        cm_types,
    })
}

impl CMAnalysis {
    /// CM types with a given paper index.
    pub fn by_paper_index(&self, idx: usize) -> Option<&CMTypeData> {
        self.cm_types.iter().find(|t| t.paper_index == idx)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels: Vec<&str> = self.profile.places.iter().map(|pl| pl.label.as_str()).collect();
        serde_json::json!({
            "p": self.profile.p,
            "family": self.ambient.inst.family.tag(),
            "galois_group": match self.ambient.galois.kind {
                crate::number_field::GroupKind::KleinFour => "klein_four",
                crate::number_field::GroupKind::Cyclic4 => "cyclic_4",
            },
            "cm_types": self.cm_types.iter().map(|t| {
                let slope: serde_json::Map<String, serde_json::Value> = labels
                    .iter()
                    .zip(t.slope_strings())
                    .map(|(l, s)| (l.to_string(), serde_json::Value::String(s)))
                    .collect();
                serde_json::json!({
                    "phi": t.phi_labels,
                    "paper_index": t.paper_index,
                    "slope": slope,
                    "place_counts": t.place_counts,
                    "index_counts": t.index_counts,
                    "reflex_minpoly": t.reflex_minpoly,
                    "reflex_residue_degree": t.reflex_residue_degree,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Labels for the four embeddings: sign patterns on the canonical generator
/// pair for biquadratic fields, generator powers for the cyclic field.
fn embedding_labels(ambient: &Ambient) -> Vec<String> {
    let g = &ambient.galois;
    if let Some((g1, g2)) = ambient.sign_generators() {
        (0..4)
            .map(|i| {
                let s1 = if g.apply(&ambient.field, i, &g1) == g1 { '+' } else { '-' };
                let s2 = if g.apply(&ambient.field, i, &g2) == g2 { '+' } else { '-' };
                format!("{s1}{s2}")
            })
            .collect()
    } else {
        // Cyclic: label by power of a fixed generator.
        let gen = (0..4).find(|&i| g.order_of(i) == 4).expect("cyclic group has a generator");
        (0..4)
            .map(|i| {
                let mut k = 0usize;
                let mut acc = g.identity;
                while acc != i {
                    acc = g.compose(gen, acc);
                    k += 1;
                }
                format!("g^{k}")
            })
            .collect()
    }
}

/// Paper-style Phi index from the sign-pattern convention:
/// phi1 = (+-), phi2 = (-+), phi3 = (--), phi4 = (++);
/// Phi1 = {phi1, phi2}, Phi2 = {phi2, phi4}, Phi3 = {phi3, phi4},
/// Phi4 = {phi1, phi3}.
fn paper_cm_index(labels: &[String], cm: &CMType) -> usize {
    let pat: Vec<&str> = cm.phi.iter().map(|&i| labels[i].as_str()).collect();
    let has = |s: &str| pat.contains(&s);
    match () {
        _ if has("+-") && has("-+") => 1,
        _ if has("-+") && has("++") => 2,
        _ if has("--") && has("++") => 3,
        _ if has("+-") && has("--") => 4,
        _ => 0,
    }
}

/// Place and residue-index partition of a CM type: the place of an
/// embedding is its decomposition coset; the residue index within a place
/// is its inertia coset. Residue indices at the conjugate place are aligned
/// with the distinguished place through complex conjugation, which fixes
/// the shared residue field of the split place v.
pub fn induced_partition(
    ambient: &Ambient,
    subgroups: &PlaceSubgroups,
    cm: &CMType,
) -> (Vec<u32>, Vec<Vec<u32>>) {
    let g = &ambient.galois;
    let f_indices = subgroups.place_cosets[0].len() / subgroups.inertia.len();
    let mut place_counts = vec![0u32; subgroups.place_cosets.len()];
    let mut index_counts: Vec<Vec<u32>> =
        vec![vec![0u32; f_indices]; subgroups.place_cosets.len()];
    // Canonical index labels: inertia cosets inside the distinguished
    // coset, sorted by smallest member.
    let mut w_icosets: Vec<Vec<usize>> = subgroups.place_cosets[0]
        .iter()
        .map(|&rep| g.coset(&subgroups.inertia, rep))
        .collect();
    w_icosets.sort();
    w_icosets.dedup();
    for &phi in &cm.phi {
        let place = subgroups
            .place_cosets
            .iter()
            .position(|c| c.contains(&phi))
            .expect("every embedding induces a place");
        place_counts[place] += 1;
        // Map conjugate-place embeddings back to the distinguished coset.
        let anchor = if place == 0 { phi } else { g.compose(g.conj, phi) };
        let idx = w_icosets
            .iter()
            .position(|c| c.contains(&anchor))
            .expect("embedding lies in an inertia coset of the distinguished place");
        index_counts[place][idx] += 1;
    }
    (place_counts, index_counts)
}

/// The reflex field: the subfield generated by the Phi-traces of the power
/// basis.
pub fn reflex_field(ambient: &Ambient, cm: &CMType) -> Result<Subfield> {
    let k = &ambient.field;
    let g = &ambient.galois;
    let mut gens = Vec::with_capacity(4);
    let mut pw = crate::number_field::NFElement::one();
    for _ in 0..4 {
        let tr = k.add(
            &g.apply(k, cm.phi[0], &pw),
            &g.apply(k, cm.phi[1], &pw),
        );
        gens.push(tr);
        pw = k.mul(&pw, &k.gen());
    }
    Subfield::generated_by(k, &gens)
}

/// Residue degree f' of the place of the reflex field induced by the fixed
/// embedding: 1 for Q; for a quadratic reflex it is 2 exactly when p is
/// inert (Kronecker symbol -1 on the fundamental discriminant); for a
/// quartic reflex (the whole field) it is f_w of the distinguished place.
/// The Dedekind factorization cross-checks the quadratic case whenever p
/// does not divide the index of the equation order.
pub fn reflex_residue_degree(
    ambient: &Ambient,
    profile: &SplittingProfile,
    reflex: &Subfield,
) -> Result<u32> {
    let p = profile.p;
    match reflex.degree {
        1 => Ok(1),
        4 => Ok(profile.places[0].f),
        2 => {
            let disc = reflex
                .fundamental_discriminant()
                .ok_or_else(|| Error::Internal("quadratic reflex without discriminant".into()))?;
            let sym = kronecker(&disc, &Int::from(p))?;
            let f_prime = if sym == -1 { 2 } else { 1 };
            // Dedekind cross-check via factorization of x^2 - D mod p,
            // valid when p does not divide [O : Z[sqrt(D)]] (index 1 or 2).
            let d = reflex.quadratic_d().unwrap();
            let index_is_two = num::Integer::mod_floor(&d, &Int::from(4)) == Int::from(1);
            if !(p == 2 && index_is_two) {
                let modp = reflex.minpoly.reduce_mod(p);
                let (_, factors) = crate::arith::factor_quartic_mod_p(&modp)?;
                let dedekind = match (factors.len(), factors[0].1) {
                    (1, 1) if factors[0].0.degree() == 2 => 2, // inert
                    (1, 2) => 1,                               // ramified
                    (2, _) => 1,                               // split
                    (1, 1) => 1,
                    _ => {
                        return Err(Error::Internal("unexpected quadratic factorization".into()))
                    }
                };
                if dedekind != f_prime {
                    return Err(Error::Internal(format!(
                        "Dedekind factorization gives f' = {dedekind}, symbol gives {f_prime}"
                    )));
                }
            }
            let _ = ambient;
            Ok(f_prime)
        }
        d => Err(Error::Internal(format!("reflex field of degree {d}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;
    use crate::weil::{enumerate_catalog, WeilFamily};

    fn analyze_family(p: u64, f: WeilFamily) -> CMAnalysis {
        analyze(&WeilNumberInstance::new(p, f).unwrap()).unwrap()
    }

    #[test]
    fn four_cm_types_always() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for inst in enumerate_catalog(p).unwrap() {
                let a = analyze(&inst).unwrap();
                assert_eq!(a.cm_types.len(), 4, "{} at {p}", inst.family.tag());
                for t in &a.cm_types {
                    let total: u32 = t.place_counts.iter().sum();
                    assert_eq!(total, 2);
                }
            }
        }
    }

    #[test]
    fn sqrt7_zeta3_matches_worked_example() {
        let a = analyze_family(7, WeilFamily::SqrtPZeta3);
        // Reflex multiset: x^2+21 twice, x^2+3 twice.
        let mut reflexes: Vec<Vec<i64>> =
            a.cm_types.iter().map(|t| t.reflex_minpoly.clone()).collect();
        reflexes.sort();
        assert_eq!(
            reflexes,
            vec![vec![3, 0, 1], vec![3, 0, 1], vec![21, 0, 1], vec![21, 0, 1]]
        );
        // Slopes by paper index: Phi1/Phi3 balanced, Phi2/Phi4 one-sided.
        let t1 = a.by_paper_index(1).unwrap();
        assert_eq!(t1.slopes, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(t1.reflex_minpoly, vec![21, 0, 1]);
        assert_eq!(t1.reflex_residue_degree, 1);
        let t3 = a.by_paper_index(3).unwrap();
        assert_eq!(t3.slopes, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(t3.reflex_minpoly, vec![21, 0, 1]);
        let t2 = a.by_paper_index(2).unwrap();
        let mut s2 = t2.slopes.clone();
        s2.sort();
        assert_eq!(s2, vec![ratio(0, 1), ratio(1, 1)]);
        assert_eq!(t2.reflex_minpoly, vec![3, 0, 1]);
        let t4 = a.by_paper_index(4).unwrap();
        let mut counts4 = t4.place_counts.clone();
        counts4.sort_unstable();
        assert_eq!(counts4, vec![0, 2]);
        // Partition column of the worked example up to the w/wbar swap:
        // Phi1, Phi3 give (1,1); Phi2, Phi4 give {(0,2), (2,0)}.
        assert_eq!(t1.place_counts, vec![1, 1]);
        assert_eq!(t3.place_counts, vec![1, 1]);
    }

    #[test]
    fn zeta8_inert_reflexes() {
        // p = 3 mod 4: reflex pair Q(sqrt(-2p)) passes, Q(sqrt(-1)) has
        // residue degree 2.
        let a = analyze_family(11, WeilFamily::SqrtPZeta8);
        let mut seen_i = 0;
        let mut seen_2p = 0;
        for t in &a.cm_types {
            if t.reflex_minpoly == vec![1, 0, 1] {
                assert_eq!(t.reflex_residue_degree, 2);
                seen_i += 1;
            } else {
                assert_eq!(t.reflex_minpoly, vec![22, 0, 1]);
                assert_eq!(t.reflex_residue_degree, 1);
                seen_2p += 1;
            }
            // Inert: single place, slope always 1/2.
            assert_eq!(t.slopes, vec![ratio(1, 2)]);
            // Residue indices sum to 2 over the single place.
            let s: u32 = t.index_counts[0].iter().sum();
            assert_eq!(s, 2);
        }
        assert_eq!((seen_i, seen_2p), (2, 2));
    }

    #[test]
    fn zeta8_reflex_by_paper_label() {
        // {phi1, phi3} = {(+-), (--)} is paper index 4; both negate the
        // second generator sqrt(-1), so the reflex is x^2 + 1 with residue
        // degree 2 at p = 3 mod 4.
        let a = analyze_family(11, WeilFamily::SqrtPZeta8);
        let t4 = a.by_paper_index(4).unwrap();
        assert_eq!(t4.reflex_minpoly, vec![1, 0, 1]);
        assert_eq!(t4.reflex_residue_degree, 2);
        let t2 = a.by_paper_index(2).unwrap();
        assert_eq!(t2.reflex_minpoly, vec![1, 0, 1]);
        // The mixed pairs carry the ramified reflex x^2 + 2p.
        let t1 = a.by_paper_index(1).unwrap();
        assert_eq!(t1.reflex_minpoly, vec![22, 0, 1]);
        assert_eq!(t1.reflex_residue_degree, 1);
    }

    #[test]
    fn cm_json_shape() {
        let a = analyze_family(7, WeilFamily::SqrtPZeta3);
        let j = a.to_json();
        assert_eq!(j["galois_group"], "klein_four");
        let t = &j["cm_types"][0];
        assert!(t["slope"].get("w").is_some());
        assert!(t["slope"].get("wbar").is_some());
        assert_eq!(t["reflex_minpoly"].as_array().unwrap().len(), 3);
        let z = analyze_family(5, WeilFamily::Sqrt5Zeta5Plus);
        assert_eq!(z.to_json()["galois_group"], "cyclic_4");
    }

    #[test]
    fn zeta5_reflex_is_whole_field() {
        let a = analyze_family(5, WeilFamily::Sqrt5Zeta5Plus);
        for t in &a.cm_types {
            assert_eq!(t.reflex_degree, 4);
            assert_eq!(t.reflex_residue_degree, 1);
            assert_eq!(t.slopes, vec![ratio(1, 2)]);
            assert_eq!(t.paper_index, 0);
        }
    }

    #[test]
    fn conjugate_cm_type_has_same_reflex_minpoly() {
        for p in [3u64, 5, 7, 11, 13] {
            for inst in enumerate_catalog(p).unwrap() {
                let a = analyze(&inst).unwrap();
                let g = &a.ambient.galois;
                for t in &a.cm_types {
                    let conj_pair = {
                        let mut pair = [
                            g.compose(g.conj, t.phi[0]),
                            g.compose(g.conj, t.phi[1]),
                        ];
                        pair.sort_unstable();
                        pair
                    };
                    let conj_t = a
                        .cm_types
                        .iter()
                        .find(|u| u.phi == conj_pair)
                        .expect("conjugate CM type is in the enumeration");
                    assert_eq!(t.reflex_minpoly, conj_t.reflex_minpoly);
                }
            }
        }
    }

    #[test]
    fn klein_reflex_multiset_two_members_twice() {
        for &p in primes_below(100).iter() {
            for inst in enumerate_catalog(p).unwrap() {
                if matches!(
                    inst.family,
                    WeilFamily::Sqrt5Zeta5Plus | WeilFamily::Sqrt5Zeta5Minus
                ) {
                    continue;
                }
                let a = analyze(&inst).unwrap();
                let mut reflexes: Vec<Vec<i64>> =
                    a.cm_types.iter().map(|t| t.reflex_minpoly.clone()).collect();
                reflexes.sort();
                reflexes.dedup();
                assert_eq!(reflexes.len(), 2, "{} at {p}", inst.family.tag());
            }
        }
    }

    #[test]
    fn place_count_pairing_with_conjugate() {
        // |Phi_w| + |(c Phi)_w| = e_w f_w / (e_w f_w / 2)... concretely the
        // conjugate type occupies the complementary slots: counts add to
        // the number of embeddings inducing w, which is 4 / #places.
        for p in [5u64, 7, 11, 13] {
            for inst in enumerate_catalog(p).unwrap() {
                let a = analyze(&inst).unwrap();
                let g = &a.ambient.galois;
                let per_place = 4 / a.profile.places.len() as u32;
                for t in &a.cm_types {
                    let mut pair = [g.compose(g.conj, t.phi[0]), g.compose(g.conj, t.phi[1])];
                    pair.sort_unstable();
                    let u = a.cm_types.iter().find(|u| u.phi == pair).unwrap();
                    for (cw, ccw) in t.place_counts.iter().zip(&u.place_counts) {
                        assert_eq!(cw + ccw, per_place, "{} at {p}", inst.family.tag());
                    }
                }
            }
        }
    }

    #[test]
    fn klein_subfields_are_fixed_fields_of_involutions() {
        use crate::number_field::Subfield;
        for p in [7u64, 11, 13, 2, 3] {
            for inst in enumerate_catalog(p).unwrap() {
                let a = analyze(&inst).unwrap();
                if a.ambient.galois.kind != crate::number_field::GroupKind::KleinFour {
                    continue;
                }
                let g = &a.ambient.galois;
                let invs = g.involutions();
                assert_eq!(invs.len(), 3);
                let mut minpolys: Vec<String> = invs
                    .iter()
                    .map(|&i| {
                        let s = Subfield::fixed_field(&a.ambient.field, &g.autos[i]).unwrap();
                        assert_eq!(s.degree, 2);
                        format!("{:?}", s.minpoly)
                    })
                    .collect();
                minpolys.sort();
                minpolys.dedup();
                assert_eq!(minpolys.len(), 3, "three distinct quadratic subfields");
            }
        }
    }

    #[test]
    fn slope_pairing_with_conjugate() {
        // slope(w, Phi) + slope(w, conj Phi) = 1.
        for p in [5u64, 7, 11] {
            for inst in enumerate_catalog(p).unwrap() {
                let a = analyze(&inst).unwrap();
                let g = &a.ambient.galois;
                for t in &a.cm_types {
                    let mut pair = [g.compose(g.conj, t.phi[0]), g.compose(g.conj, t.phi[1])];
                    pair.sort_unstable();
                    let u = a.cm_types.iter().find(|u| u.phi == pair).unwrap();
                    for (s, sc) in t.slopes.iter().zip(&u.slopes) {
                        // In the split case conjugation swaps the places, so
                        // compare against the swapped slope vector.
                        let _ = (s, sc);
                    }
                    let sum_t: Rat = t.slopes.iter().cloned().sum();
                    let sum_u: Rat = u.slopes.iter().cloned().sum();
                    assert_eq!(sum_t + sum_u, ratio(a.profile.places.len() as i64, 1));
                }
            }
        }
    }

    #[test]
    fn f25_fixture_partitions_and_reflexes() {
        let a = analyze_fixture_f25().unwrap();
        assert_eq!(a.profile.q, 25);
        // Two places, each with two residue indices of size <= 1 each...
        for t in &a.cm_types {
            let total: u32 = t.place_counts.iter().sum();
            assert_eq!(total, 2);
        }
        // Reflex multiset: x^2+3 twice (residue degree 2 at 5),
        // x^2+1 twice (residue degree 1 at 5).
        let mut pairs: Vec<(Vec<i64>, u32)> = a
            .cm_types
            .iter()
            .map(|t| (t.reflex_minpoly.clone(), t.reflex_residue_degree))
            .collect();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                (vec![1, 0, 1], 1),
                (vec![1, 0, 1], 1),
                (vec![3, 0, 1], 2),
                (vec![3, 0, 1], 2),
            ]
        );
        // Slope column: (1/2,1/2) for the x^2+3 pair, (0,1)/(1,0) for the
        // x^2+1 pair.
        for t in &a.cm_types {
            let mut s = t.slopes.clone();
            s.sort();
            if t.reflex_minpoly == vec![3, 0, 1] {
                assert_eq!(s, vec![ratio(1, 2), ratio(1, 2)]);
            } else {
                assert_eq!(s, vec![ratio(0, 1), ratio(1, 1)]);
            }
        }
    }
}
