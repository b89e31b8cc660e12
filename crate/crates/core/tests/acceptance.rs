//! Acceptance suite: every exit criterion as one test, each printing a
//! pass line with its sweep bound and timing. Tolerances and bounds are
//! pinned here, not configured.

use std::time::Instant;

use cmlift_core::arith::{primes_below, ratio};
use cmlift_core::classify::{classify, expected_order_index, special_case_sqrt3zeta3};
use cmlift_core::cm_types::{analyze, analyze_fixture_f25};
use cmlift_core::dieudonne::{
    build_catalog_module, fixture_adversarial, fixture_elliptic_f3, fixture_ex_notgood,
};
use cmlift_core::lie::{fixture_f25_lie_type, good_lie_type, lie_type, lie_type_constraint};
use cmlift_core::lmfdb::{format_label, parse_label};
use cmlift_core::places::{splitting_profile, SplittingBehavior};
use cmlift_core::rrc::rrc_verdict_for;
use cmlift_core::weil::{
    enumerate_catalog, enumerate_concern, functional_equation_holds, quartic_irreducible_over_q,
    verify_weil, WeilFamily, WeilNumberInstance,
};

/// Split a prime list across threads and run a per-prime check.
fn parallel_sweep<F>(primes: &[u64], check: F)
where
    F: Fn(u64) + Sync,
{
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let chunk = primes.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let check = &check;
        for block in primes.chunks(chunk) {
            s.spawn(move || {
                for &p in block {
                    check(p);
                }
            });
        }
    });
}

fn expected_split(inst: &WeilNumberInstance) -> SplittingBehavior {
    let p = inst.p;
    match inst.family {
        WeilFamily::Sqrt5Zeta5Plus | WeilFamily::Sqrt5Zeta5Minus => SplittingBehavior::Ramified,
        WeilFamily::SqrtPZeta8 => {
            if p % 4 == 1 {
                SplittingBehavior::Split
            } else {
                SplittingBehavior::Inert
            }
        }
        WeilFamily::Sqrt2Zeta24Plus | WeilFamily::Sqrt2Zeta24Minus => SplittingBehavior::Inert,
        _ => {
            if p == 2 || p == 3 {
                SplittingBehavior::Inert
            } else if matches!(p % 12, 1 | 7) {
                SplittingBehavior::Split
            } else {
                SplittingBehavior::Inert
            }
        }
    }
}

/// Criterion 1: Frobenius valuations are 1 everywhere except the zeta5
/// pair (2), and the split/inert classification follows the congruence
/// tables, for every admissible concern member with p < 1000, in under 5 s.
#[test]
fn criterion_1_valuation_tables() {
    let start = Instant::now();
    for p in primes_below(1000) {
        for inst in enumerate_concern(p).unwrap() {
            let profile = splitting_profile(&inst).unwrap();
            let expected_val = if matches!(
                inst.family,
                WeilFamily::Sqrt5Zeta5Plus | WeilFamily::Sqrt5Zeta5Minus
            ) {
                2
            } else {
                1
            };
            for pl in &profile.places {
                assert_eq!(
                    pl.frob_valuation,
                    expected_val,
                    "{} at {p}",
                    inst.family.tag()
                );
            }
            assert_eq!(
                profile.behavior,
                expected_split(&inst),
                "{} at {p}",
                inst.family.tag()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 1 took {elapsed:?}");
    println!("criterion 1 (valuation tables, p < 1000): PASS in {elapsed:?}");
}

/// Criterion 2: Lie types are (1,1) in split and p = 2 cases, (2) for the
/// zeta5 pair, sum-2 constraints in inert cases, with the module oracle
/// resolving every inert case to (1,1); engine/oracle agreement below 200.
/// Under 30 s.
#[test]
fn criterion_2_lie_type_tables() {
    let start = Instant::now();
    let primes = primes_below(1000);
    parallel_sweep(&primes, |p| {
        for inst in enumerate_concern(p).unwrap() {
            if inst.family == WeilFamily::SqrtPZeta3 && p == 3 {
                continue;
            }
            let profile = splitting_profile(&inst).unwrap();
            let constraint = lie_type_constraint(&inst).unwrap();
            match profile.behavior {
                SplittingBehavior::Split => {
                    assert_eq!(constraint.exponent_lists(), vec![vec![1], vec![1]]);
                }
                SplittingBehavior::Ramified => {
                    assert_eq!(constraint.exponent_lists(), vec![vec![2]]);
                }
                SplittingBehavior::Inert => {
                    assert_eq!(constraint.places[0].exponents.iter().sum::<u32>(), 2);
                }
            }
            let resolved = lie_type(&inst).unwrap();
            let lists = resolved.exponent_lists();
            match profile.behavior {
                SplittingBehavior::Split => assert_eq!(lists, vec![vec![1], vec![1]]),
                SplittingBehavior::Ramified => assert_eq!(lists, vec![vec![2]]),
                SplittingBehavior::Inert => {
                    assert_eq!(lists, vec![vec![1, 1]], "{} at {p}", inst.family.tag())
                }
            }
            if p == 2 {
                // Every p = 2 member resolves to (1, 1) overall.
                let flat: Vec<u32> = lists.into_iter().flatten().collect();
                assert_eq!(flat, vec![1, 1]);
            }
            if p < 200 {
                let oracle = build_catalog_module(&inst)
                    .unwrap()
                    .mod_p()
                    .unwrap()
                    .lie_dimensions();
                assert_eq!(
                    resolved.exponent_lists(),
                    oracle,
                    "oracle/engine disagreement for {} at {p}",
                    inst.family.tag()
                );
            }
        }
    });
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 2 took {elapsed:?}");
    println!("criterion 2 (Lie-type tables, p < 1000, oracle < 200): PASS in {elapsed:?}");
}

/// Criterion 3: the worked example at p = 7 reproduces the reflex fields,
/// slopes, partitions, and witness set exactly (up to the place swap).
#[test]
fn criterion_3_worked_example_p7() {
    let start = Instant::now();
    let inst = WeilNumberInstance::new(7, WeilFamily::SqrtPZeta3).unwrap();
    let analysis = analyze(&inst).unwrap();

    // Reflex fields: x^2+21 twice, x^2+3 twice.
    let mut reflexes: Vec<Vec<i64>> = analysis
        .cm_types
        .iter()
        .map(|t| t.reflex_minpoly.clone())
        .collect();
    reflexes.sort();
    assert_eq!(
        reflexes,
        vec![vec![3, 0, 1], vec![3, 0, 1], vec![21, 0, 1], vec![21, 0, 1]]
    );

    // Slopes multiset {(1/2,1/2), (0,1), (1/2,1/2), (1,0)} and partitions
    // {(1,1), (0,2), (1,1), (2,0)} up to the place swap.
    let mut slopes: Vec<Vec<String>> = analysis
        .cm_types
        .iter()
        .map(|t| {
            let mut s = t.slope_strings();
            s.sort();
            s
        })
        .collect();
    slopes.sort();
    assert_eq!(
        slopes,
        vec![
            vec!["0".to_string(), "1".to_string()],
            vec!["0".to_string(), "1".to_string()],
            vec!["1/2".to_string(), "1/2".to_string()],
            vec!["1/2".to_string(), "1/2".to_string()],
        ]
    );
    let mut partitions: Vec<Vec<u32>> = analysis
        .cm_types
        .iter()
        .map(|t| {
            let mut c = t.place_counts.clone();
            c.sort_unstable();
            c
        })
        .collect();
    partitions.sort();
    assert_eq!(partitions, vec![vec![0, 2], vec![0, 2], vec![1, 1], vec![1, 1]]);

    // Witnesses are exactly the paper's Phi1 and Phi3 (the x^2+21 pair).
    let verdict = rrc_verdict_for(&analysis, 7).unwrap();
    let mut witness_papers: Vec<usize> = verdict
        .witnesses
        .iter()
        .map(|&i| verdict.per_cm_type[i].paper_index)
        .collect();
    witness_papers.sort_unstable();
    assert_eq!(witness_papers, vec![1, 3]);
    for &w in &verdict.witnesses {
        assert_eq!(analysis.cm_types[w].reflex_minpoly, vec![21, 0, 1]);
        assert_eq!(analysis.cm_types[w].slopes, vec![ratio(1, 2), ratio(1, 2)]);
    }
    println!(
        "criterion 3 (worked example p = 7): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 4: order indices match the tables for every admissible
/// p < 500, with values in {1, 3, 4}; the discriminant ratio is the
/// square of the index.
#[test]
fn criterion_4_order_indices() {
    use cmlift_core::classify::{maximal_order, superspecial_order};
    let start = Instant::now();
    let primes = primes_below(500);
    parallel_sweep(&primes, |p| {
        for inst in enumerate_concern(p).unwrap() {
            let amb = cmlift_core::weil::Ambient::new(&inst).unwrap();
            let ol = maximal_order(&amb).unwrap();
            let rsp = superspecial_order(&amb).unwrap();
            let idx_int = rsp.index_in(&ol).unwrap();
            let idx: u64 = {
                use num::ToPrimitive;
                idx_int.to_u64().unwrap()
            };
            assert!([1, 3, 4].contains(&idx), "index {idx}");
            assert_eq!(
                idx,
                expected_order_index(p, inst.family),
                "{} at {p}",
                inst.family.tag()
            );
            // disc(R_sp) / disc(O_L) is the square of the index.
            assert_eq!(
                rsp.disc() / ol.disc(),
                &idx_int * &idx_int,
                "{} at {p}",
                inst.family.tag()
            );
        }
    });
    println!(
        "criterion 4 (order indices and square disc ratios, p < 500): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 5: for 10 sampled primes per congruence class per family,
/// exactly the named CM-type pairs fail the reflex-residue check at q = p,
/// and every aggregate becomes satisfiable at q = p^2.
#[test]
fn criterion_5_rrc_verdicts() {
    let start = Instant::now();
    // (family, class, modulus, reflex minpoly of the failing pair at q = p;
    // None when nothing fails the residue check in that class)
    let classes: Vec<(WeilFamily, u64, u64, Option<Vec<i64>>)> = vec![
        (WeilFamily::SqrtPZeta3, 1, 12, None),
        (WeilFamily::SqrtPZeta3, 7, 12, None),
        (WeilFamily::SqrtPZeta3, 5, 12, Some(vec![3, 0, 1])),
        (WeilFamily::SqrtPZeta3, 11, 12, Some(vec![3, 0, 1])),
        (WeilFamily::SqrtPZeta12, 1, 12, None),
        (WeilFamily::SqrtPZeta12, 7, 12, None),
        (WeilFamily::SqrtPZeta12, 5, 12, Some(vec![3, 0, 1])),
        (WeilFamily::SqrtPZeta12, 11, 12, Some(vec![3, 0, 1])),
        (WeilFamily::SqrtPZeta8, 1, 4, None),
        (WeilFamily::SqrtPZeta8, 3, 4, Some(vec![1, 0, 1])),
    ];
    for (family, class, modulus, failing_reflex) in classes {
        let sampled: Vec<u64> = primes_below(20_000)
            .into_iter()
            .filter(|&p| p % modulus == class && family.admissible(p))
            .take(10)
            .collect();
        assert_eq!(sampled.len(), 10, "sampling {} mod {}", class, modulus);
        for p in sampled {
            let inst = WeilNumberInstance::new(p, family).unwrap();
            let analysis = analyze(&inst).unwrap();
            let v = rrc_verdict_for(&analysis, p).unwrap();
            for (i, cv) in v.per_cm_type.iter().enumerate() {
                let reflex = &analysis.cm_types[i].reflex_minpoly;
                match &failing_reflex {
                    Some(bad) => {
                        assert_eq!(
                            !cv.reflex_ok,
                            reflex == bad,
                            "{} at {p}: reflex {reflex:?}",
                            family.tag()
                        );
                    }
                    None => assert!(cv.reflex_ok, "{} at {p}", family.tag()),
                }
            }
            let v2 = rrc_verdict_for(&analysis, p * p).unwrap();
            assert!(v2.satisfiable, "{} at {p}, q = p^2", family.tag());
        }
    }
    // Special members: p = 3 zeta3 (failing pair x^2+1), zeta5, p = 2.
    let inst = WeilNumberInstance::new(3, WeilFamily::SqrtPZeta3).unwrap();
    let analysis = analyze(&inst).unwrap();
    let v = rrc_verdict_for(&analysis, 3).unwrap();
    for (i, cv) in v.per_cm_type.iter().enumerate() {
        assert_eq!(
            !cv.reflex_ok,
            analysis.cm_types[i].reflex_minpoly == vec![1, 0, 1]
        );
    }
    assert!(rrc_verdict_for(&analysis, 9).unwrap().per_cm_type.iter().all(|cv| cv.rrc));
    for family in [WeilFamily::Sqrt5Zeta5Plus, WeilFamily::Sqrt5Zeta5Minus] {
        let inst = WeilNumberInstance::new(5, family).unwrap();
        let analysis = analyze(&inst).unwrap();
        let v = rrc_verdict_for(&analysis, 5).unwrap();
        assert!(v.per_cm_type.iter().all(|cv| cv.rrc), "zeta5 all pass at q = 5");
    }
    for inst in enumerate_concern(2).unwrap() {
        let analysis = analyze(&inst).unwrap();
        let v = rrc_verdict_for(&analysis, 2).unwrap();
        // The x^2+3 reflex pair fails at q = 2 (2 inert in that field).
        for (i, cv) in v.per_cm_type.iter().enumerate() {
            assert_eq!(
                !cv.reflex_ok,
                analysis.cm_types[i].reflex_minpoly == vec![3, 0, 1],
                "{} at 2",
                inst.family.tag()
            );
        }
        assert!(v.satisfiable);
    }
    // Slope-matching counts over the full sweep: exactly 2 of 4 CM types
    // pass in split cases, all 4 in inert and ramified cases.
    let primes = primes_below(1000);
    parallel_sweep(&primes, |p| {
        for inst in enumerate_catalog(p).unwrap() {
            let analysis = analyze(&inst).unwrap();
            let v = rrc_verdict_for(&analysis, p).unwrap();
            let st_count = v.per_cm_type.iter().filter(|cv| cv.st_ok).count();
            let expected = match analysis.profile.behavior {
                SplittingBehavior::Split => 2,
                _ => 4,
            };
            assert_eq!(st_count, expected, "{} at {p}", inst.family.tag());
            assert!(
                rrc_verdict_for(&analysis, p * p).unwrap().satisfiable,
                "{} at {p}",
                inst.family.tag()
            );
        }
    });
    println!(
        "criterion 5 (RRC verdicts: sampled classes + ST counts below 1000): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 6: the classification sweep matches the lifting theorems for
/// all p < 1000 and stays consistent with the smallest RRC-satisfiable q
/// (the inert theorem cases carry the expected Lie-type note) with zero
/// discrepancies.
#[test]
fn criterion_6_classification_sweep() {
    let start = Instant::now();
    let primes = primes_below(1000);
    parallel_sweep(&primes, |p| {
        for inst in enumerate_catalog(p).unwrap() {
            // classify() itself errs on any theorem/RRC discrepancy.
            let v = classify(&inst).unwrap_or_else(|e| {
                panic!("discrepancy for {} at {p}: {e}", inst.family.tag())
            });
            // Tag dispatch re-checked here against the stated theorems.
            let (expected_exp, expected_tag): (u32, &str) = if inst.family.is_real() {
                if p == 2 {
                    (1, "real-3")
                } else if p == 3 || matches!(p % 12, 5 | 11) {
                    (2, "real-2")
                } else {
                    (1, "real-1")
                }
            } else if p == 2 {
                (1, "p2")
            } else if inst.family == WeilFamily::SqrtPZeta3 && p == 3 {
                (1, "sqrt3zeta3")
            } else {
                let inert = match inst.family {
                    WeilFamily::SqrtPZeta8 => p % 4 == 3,
                    WeilFamily::SqrtPZeta3 | WeilFamily::SqrtPZeta12 => {
                        matches!(p % 12, 5 | 11)
                    }
                    _ => false,
                };
                if inert {
                    (2, "surfacesCML-1")
                } else {
                    (1, "surfacesCML-2")
                }
            };
            assert_eq!(v.base_exponent, expected_exp, "{} at {p}", inst.family.tag());
            assert_eq!(v.tag.as_str(), expected_tag, "{} at {p}", inst.family.tag());
            assert!(!v.rrc_witnesses.is_empty());
        }
    });
    // The special p = 3 report.
    let r = special_case_sqrt3zeta3().unwrap();
    assert_eq!(
        (r.index_ol_rsp, r.index_rsp_rss, r.index_local_rss, r.base_q),
        (3, 3, 9, 3)
    );
    println!(
        "criterion 6 (classification sweep, p < 1000, zero discrepancies): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 7: the two counterexample fixtures.
#[test]
fn criterion_7_counterexamples() {
    let start = Instant::now();

    // 2.5.a_af: the inert member at p = 5 of the zeta12 family. Every
    // CM-type partition satisfies the good-Lie sums, in particular the
    // x^2+3-reflex pair gives good Lie type data, and RRC fails exactly for
    // that pair at q = 5.
    let label = parse_label("2.5.a_af").unwrap();
    assert_eq!(label.family_shape(), Some(WeilFamily::SqrtPZeta12));
    assert_eq!((label.p, label.q), (5, 5));
    let inst = WeilNumberInstance::new(5, WeilFamily::SqrtPZeta12).unwrap();
    let analysis = analyze(&inst).unwrap();
    let lt = lie_type(&inst).unwrap();
    let verdict = good_lie_type(&lt, &analysis.profile, &analysis).unwrap();
    assert!(verdict.good);
    let rrc = rrc_verdict_for(&analysis, 5).unwrap();
    for (i, t) in analysis.cm_types.iter().enumerate() {
        // gltchar sums hold for every CM type here (e_v = 2).
        assert_eq!(t.index_counts[0].iter().sum::<u32>(), 2);
        let is_sqrt_m3 = t.reflex_minpoly == vec![3, 0, 1];
        assert_eq!(rrc.per_cm_type[i].rrc, !is_sqrt_m3, "type {i}");
        if is_sqrt_m3 {
            assert_eq!(
                rrc.per_cm_type[i].failed,
                Some(cmlift_core::rrc::FailedCondition::ReflexResidue)
            );
        }
    }
    // The oracle-resolved Lie type (1,1) is realized componentwise by the
    // x^2+5-reflex pair (which is also the RRC witness pair).
    assert_eq!(lt.exponent_lists(), vec![vec![1, 1]]);
    let realizers: Vec<Vec<i64>> = verdict
        .realizing_cm_types
        .iter()
        .map(|&i| analysis.cm_types[i].reflex_minpoly.clone())
        .collect();
    assert_eq!(realizers, vec![vec![5, 0, 1], vec![5, 0, 1]]);

    // 2.25.a_az: per-place Lie dims (1,0), (1,0); not good; RRC holds with
    // the balanced pair.
    let label = parse_label("2.25.a_az").unwrap();
    assert_eq!((label.p, label.q, label.k), (5, 25, 2));
    let analysis = analyze_fixture_f25().unwrap();
    let lt = fixture_f25_lie_type().unwrap();
    for pl in &lt.places {
        let mut dims = pl.exponents.clone();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(dims, vec![1, 0]);
    }
    let verdict = good_lie_type(&lt, &analysis.profile, &analysis).unwrap();
    assert!(!verdict.good);
    assert!(verdict.realizing_cm_types.is_empty());
    let rrc = rrc_verdict_for(&analysis, 25).unwrap();
    assert!(rrc.satisfiable);
    for (i, t) in analysis.cm_types.iter().enumerate() {
        let balanced = t.slopes == vec![ratio(1, 2), ratio(1, 2)];
        assert_eq!(rrc.per_cm_type[i].rrc, balanced);
        if balanced {
            assert_eq!(t.reflex_minpoly, vec![3, 0, 1]);
        }
    }
    println!(
        "criterion 7 (counterexample fixtures 2.5.a_af and 2.25.a_az): PASS in {:?}",
        start.elapsed()
    );
}

/// Criterion 8: the property suites standing in for the lifting proofs.
#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();

    // Weil functional equation symbolically for all catalog polynomials,
    // sum of e_w f_w = 4, slope 1/2 at every place.
    let primes = primes_below(1000);
    parallel_sweep(&primes, |p| {
        for inst in enumerate_catalog(p).unwrap() {
            assert!(
                functional_equation_holds(&inst.weil_polynomial(), p),
                "{} at {p}",
                inst.family.tag()
            );
            if inst.concern {
                assert!(verify_weil(&inst.minpoly, p).unwrap());
                assert!(quartic_irreducible_over_q(&inst.minpoly, p));
            }
            let profile = splitting_profile(&inst).unwrap();
            assert_eq!(profile.total_degree(), 4);
            for pl in &profile.places {
                assert_eq!(2 * pl.frob_valuation, pl.e, "slope 1/2");
            }
        }
    });

    // Module laws: FV = VF = p and superspeciality on catalog modules,
    // failure on the adversarial fixture; semilinearity; sigma^2 = id.
    for p in primes_below(100) {
        for inst in enumerate_concern(p).unwrap() {
            if inst.family == WeilFamily::SqrtPZeta3 && p == 3 {
                continue;
            }
            let m2 = build_catalog_module(&inst).unwrap().mod_p2().unwrap();
            m2.check_fv_vf().unwrap();
            assert!(m2.is_superspecial().unwrap(), "{} at {p}", inst.family.tag());
        }
    }
    assert!(fixture_elliptic_f3().mod_p2().unwrap().is_superspecial().unwrap());
    assert!(fixture_ex_notgood().mod_p2().unwrap().is_superspecial().unwrap());
    let adversarial = fixture_adversarial().mod_p2().unwrap();
    adversarial.check_fv_vf().unwrap();
    assert!(!adversarial.is_superspecial().unwrap());

    for p in [2u64, 3, 5, 7] {
        let gr = cmlift_core::arith::Gr2Ctx::new(p).unwrap();
        let k = gr.residue_ctx();
        for u in gr.elements().step_by(11).take(60) {
            assert_eq!(gr.frobenius(gr.frobenius(u)), u, "sigma^2 = id");
            assert_eq!(gr.reduce(gr.frobenius(u)), k.frobenius(gr.reduce(u)));
        }
    }
    // Semilinearity of F over random-ish scalars for p in {3, 5, 7}.
    for p in [3u64, 5, 7] {
        let inst = enumerate_concern(p)
            .unwrap()
            .into_iter()
            .find(|i| !(i.family == WeilFamily::SqrtPZeta3 && p == 3))
            .unwrap();
        let shape = build_catalog_module(&inst).unwrap();
        let m = shape.mod_p().unwrap();
        let base = m.basis_el(0, 0, 0);
        for c in m.ctx.elements().step_by(3).take(100) {
            let lhs = m.apply_f(0, &m.scalar_mul(c, &base));
            let rhs = m.scalar_mul(m.ctx.frobenius(c), &m.apply_f(0, &base));
            assert_eq!(lhs, rhs);
        }
    }

    // Label round-trip on 200 random coefficient vectors.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let q = 32_768u64; // 2^15 keeps |a_i| <= 700 inside the Weil bound
    for _ in 0..200 {
        let coeffs = vec![rng.gen_range(-700i64..=700), rng.gen_range(-700i64..=700)];
        let label = format_label(2, q, &coeffs);
        let parsed = parse_label(&label).unwrap();
        assert_eq!(parsed.coeffs, coeffs);
    }

    println!(
        "criterion 8 (property suites): PASS in {:?}",
        start.elapsed()
    );
}
