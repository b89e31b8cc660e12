//! Deterministic table reproduction. Every builder both emits a table and
//! verifies its content against the computing modules; a mismatch is an
//! error (the CLI maps it to exit code 3). Known discrepancies are emitted
//! in corrected form with a footnote.

use crate::arith::{primes_below, ratio};
use crate::classify::{expected_order_index, order_index, sweep};
use crate::cm_types::{analyze, analyze_fixture_f25, CMAnalysis};
use crate::dieudonne::build_catalog_module;
use crate::lie::{fixture_f25_lie_type, good_lie_type, lie_type, lie_type_constraint};
use crate::places::{splitting_profile, SplittingBehavior};
use crate::rrc::rrc_verdict_for;
use crate::weil::{enumerate_catalog, Ambient, WeilFamily, WeilNumberInstance};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ReportTable {
    pub id: String,
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footnotes: Vec<String>,
}

impl ReportTable {
    pub fn to_markdown(&self) -> String {
        let mut s = format!("## {} ({})\n\n", self.title, self.id);
        s.push_str(&format!("| {} |\n", self.headers.join(" | ")));
        s.push_str(&format!(
            "|{}|\n",
            self.headers.iter().map(|_| " --- ").collect::<Vec<_>>().join("|")
        ));
        for row in &self.rows {
            s.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        if !self.footnotes.is_empty() {
            s.push('\n');
            for (i, f) in self.footnotes.iter().enumerate() {
                s.push_str(&format!("[^{}]: {}\n", i + 1, f));
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let esc = |s: &str| {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = self
            .headers
            .iter()
            .map(|h| esc(h))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|c| esc(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}

pub const TABLE_IDS: [&str; 9] = [
    "indices",
    "valuations",
    "minpolys",
    "lietypes",
    "table16",
    "reflex",
    "real",
    "ex-rrc",
    "ex-notgood",
];

/// Build (and verify) the tables for an id; "all" expands to every table.
pub fn reproduce(id: &str, p_bound: Option<u64>) -> Result<Vec<ReportTable>> {
    match id {
        "indices" => Ok(vec![indices_table(p_bound.unwrap_or(500))?]),
        "valuations" => Ok(vec![valuations_table(p_bound.unwrap_or(1000))?]),
        "minpolys" => Ok(vec![minpolys_table(p_bound.unwrap_or(200))?]),
        "lietypes" => Ok(vec![lietypes_table(p_bound.unwrap_or(1000))?]),
        "table16" => Ok(vec![table16()?]),
        "reflex" => Ok(vec![reflex_tables(p_bound)?]),
        "real" => Ok(vec![real_tables(p_bound)?]),
        "ex-rrc" => Ok(vec![ex_rrc_table()?]),
        "ex-notgood" => Ok(vec![ex_notgood_table()?]),
        "all" => {
            let mut out = Vec::new();
            for tid in TABLE_IDS {
                out.extend(reproduce(tid, p_bound)?);
            }
            Ok(out)
        }
        other => Err(Error::UnknownTable(other.to_string())),
    }
}

fn mismatch(table: &str, row: usize, detail: String) -> Error {
    Error::TableMismatch {
        table: table.to_string(),
        row,
        detail,
    }
}

/// First n admissible primes in a congruence class (mod m) for a family.
fn sampled_primes(family: WeilFamily, class: u64, modulus: u64, n: usize) -> Vec<u64> {
    primes_below(20_000)
        .into_iter()
        .filter(|&p| p % modulus == class && family.admissible(p))
        .take(n)
        .collect()
}

// ---------------------------------------------------------------------------
// indices (order index tables)
// ---------------------------------------------------------------------------

fn indices_table(p_bound: u64) -> Result<ReportTable> {
    let rows_spec: Vec<(&str, &str, u64)> = vec![
        ("sqrtP_zeta3", "p = 2", 1),
        ("sqrtP_zeta3", "p = 3", 3),
        ("sqrtP_zeta3", "p = 3 mod 4, p != 3", 1),
        ("sqrtP_zeta3", "p = 1 mod 4", 4),
        ("sqrtP_zeta12", "p = 2", 1),
        ("sqrtP_zeta12", "p = 3 mod 4", 4),
        ("sqrtP_zeta12", "p = 1 mod 4", 1),
        ("sqrtP_zeta8", "all admissible p", 1),
        ("sqrt5_zeta5_plus", "p = 5", 1),
        ("sqrt5_zeta5_minus", "p = 5", 1),
        ("sqrt2_zeta24_plus", "p = 2", 1),
        ("sqrt2_zeta24_minus", "p = 2", 1),
    ];
    // Verify by sweeping every admissible prime below the bound.
    for &p in &primes_below(p_bound) {
        for inst in enumerate_catalog(p)? {
            if inst.family.is_real() {
                continue;
            }
            let amb = Ambient::new(&inst)?;
            let idx = order_index(&amb)?;
            if idx != expected_order_index(p, inst.family) {
                return Err(mismatch(
                    "indices",
                    0,
                    format!("{} at {p}: computed {idx}", inst.family.tag()),
                ));
            }
            if ![1u64, 3, 4].contains(&idx) {
                return Err(mismatch("indices", 0, format!("index {idx} out of range")));
            }
        }
    }
    let rows = rows_spec
        .iter()
        .map(|(fam, cls, idx)| vec![fam.to_string(), cls.to_string(), idx.to_string()])
        .collect();
    Ok(ReportTable {
        id: "indices".into(),
        title: "Index of the superspecial order in the maximal order".into(),
        headers: vec!["family".into(), "class".into(), "[O_L : R_sp]".into()],
        rows,
        footnotes: vec![format!(
            "verified against the computed Hermite-form orders for every admissible prime \
             below {p_bound}"
        )],
    })
}

// ---------------------------------------------------------------------------
// valuations (Frobenius valuation tables)
// ---------------------------------------------------------------------------

fn behavior_name(b: SplittingBehavior) -> &'static str {
    match b {
        SplittingBehavior::Split => "sc",
        SplittingBehavior::Inert => "inert",
        SplittingBehavior::Ramified => "ramified",
    }
}

fn valuations_table(p_bound: u64) -> Result<ReportTable> {
    // Normalized rows (family, class, behavior, valuation).
    let rows_spec: Vec<(WeilFamily, &str, &str, u32)> = vec![
        (WeilFamily::SqrtPZeta3, "p = 1, 7 mod 12 (p >= 5)", "sc", 1),
        (WeilFamily::SqrtPZeta3, "p = 5, 11 mod 12 (p >= 5)", "inert", 1),
        (WeilFamily::SqrtPZeta3, "p = 3", "inert", 1),
        (WeilFamily::SqrtPZeta3, "p = 2", "inert", 1),
        (WeilFamily::SqrtPZeta8, "p = 1 mod 4", "sc", 1),
        (WeilFamily::SqrtPZeta8, "p = 3 mod 4", "inert", 1),
        (WeilFamily::SqrtPZeta12, "p = 1, 7 mod 12 (p >= 5)", "sc", 1),
        (WeilFamily::SqrtPZeta12, "p = 5, 11 mod 12 (p >= 5)", "inert", 1),
        (WeilFamily::SqrtPZeta12, "p = 2", "inert", 1),
        (WeilFamily::Sqrt5Zeta5Plus, "p = 5", "ramified", 2),
        (WeilFamily::Sqrt5Zeta5Minus, "p = 5", "ramified", 2),
        (WeilFamily::Sqrt2Zeta24Plus, "p = 2", "inert", 1),
        (WeilFamily::Sqrt2Zeta24Minus, "p = 2", "inert", 1),
    ];
    // Verification sweep.
    for &p in &primes_below(p_bound) {
        for inst in enumerate_catalog(p)? {
            if !inst.concern {
                continue;
            }
            let pr = splitting_profile(&inst)?;
            let expected_val = if matches!(
                inst.family,
                WeilFamily::Sqrt5Zeta5Plus | WeilFamily::Sqrt5Zeta5Minus
            ) {
                2
            } else {
                1
            };
            for pl in &pr.places {
                if pl.frob_valuation != expected_val {
                    return Err(mismatch(
                        "valuations",
                        0,
                        format!("{} at {p}: valuation {}", inst.family.tag(), pl.frob_valuation),
                    ));
                }
            }
            let expected_behavior = expected_behavior(&inst);
            if pr.behavior != expected_behavior {
                return Err(mismatch(
                    "valuations",
                    0,
                    format!("{} at {p}: behavior {:?}", inst.family.tag(), pr.behavior),
                ));
            }
        }
    }
    let rows = rows_spec
        .iter()
        .map(|(fam, cls, beh, val)| {
            vec![
                fam.tag().to_string(),
                cls.to_string(),
                beh.to_string(),
                val.to_string(),
            ]
        })
        .collect();
    Ok(ReportTable {
        id: "valuations".into(),
        title: "Normalized Frobenius valuations at the places above p".into(),
        headers: vec![
            "family".into(),
            "class".into(),
            "v in L".into(),
            "w(Frob)".into(),
        ],
        rows,
        footnotes: vec![
            format!("verified for every admissible prime below {p_bound}"),
            "p = 2 rows are emitted under the computed reading (the symbol (-3|2) = -1 makes \
             the place inert, not split); the valuation 1 holds either way"
                .into(),
        ],
    })
}

fn expected_behavior(inst: &WeilNumberInstance) -> SplittingBehavior {
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
        WeilFamily::SqrtP | WeilFamily::SqrtPZeta3 | WeilFamily::SqrtPZeta12 => {
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

// ---------------------------------------------------------------------------
// minpolys (minimal polynomial tables)
// ---------------------------------------------------------------------------

fn poly_string(coeffs: &[i64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        let lead = terms.is_empty();
        let sign = if c < 0 {
            "- "
        } else if lead {
            ""
        } else {
            "+ "
        };
        let mag = c.unsigned_abs();
        let coeff = if mag == 1 && i > 0 { String::new() } else { mag.to_string() };
        terms.push(format!("{sign}{coeff}{var}"));
    }
    terms.join(" ")
}

fn minpolys_table(p_bound: u64) -> Result<ReportTable> {
    let rows_spec: Vec<(WeilFamily, &str)> = vec![
        (WeilFamily::SqrtP, "x^2 - p"),
        (WeilFamily::SqrtPZeta3, "x^4 + p x^2 + p^2"),
        (WeilFamily::SqrtPZeta8, "x^4 + p^2"),
        (WeilFamily::SqrtPZeta12, "x^4 - p x^2 + p^2"),
        (WeilFamily::Sqrt5Zeta5Plus, "x^4 + 5x^3 + 15x^2 + 25x + 25"),
        (WeilFamily::Sqrt5Zeta5Minus, "x^4 - 5x^3 + 15x^2 - 25x + 25"),
        (WeilFamily::Sqrt2Zeta24Plus, "x^4 - 2x^3 + 2x^2 - 4x + 4"),
        (WeilFamily::Sqrt2Zeta24Minus, "x^4 + 2x^3 + 2x^2 + 4x + 4"),
    ];
    // Verification: every catalog polynomial satisfies the Weil property.
    for &p in &primes_below(p_bound) {
        for inst in enumerate_catalog(p)? {
            if inst.concern && !crate::weil::verify_weil(&inst.minpoly, p)? {
                return Err(mismatch(
                    "minpolys",
                    0,
                    format!("{} at {p} fails Weil verification", inst.family.tag()),
                ));
            }
            if !crate::weil::functional_equation_holds(&inst.weil_polynomial(), p) {
                return Err(mismatch(
                    "minpolys",
                    0,
                    format!("{} at {p} fails the functional equation", inst.family.tag()),
                ));
            }
        }
    }
    // Anchor two explicit instantiations.
    let anchor = WeilNumberInstance::new(7, WeilFamily::SqrtPZeta3)?;
    let shown = poly_string(&[49, 0, 7, 0, 1]);
    if anchor.minpoly != crate::arith::QPoly::from_i64(&[49, 0, 7, 0, 1]) {
        return Err(mismatch("minpolys", 1, format!("zeta3 anchor: {shown}")));
    }
    let rows = rows_spec
        .iter()
        .map(|(fam, poly)| vec![fam.tag().to_string(), poly.to_string()])
        .collect();
    Ok(ReportTable {
        id: "minpolys".into(),
        title: "Minimal polynomials of the catalog Weil numbers".into(),
        headers: vec!["family".into(), "minimal polynomial".into()],
        rows,
        footnotes: vec![format!(
            "Weil verification (functional equation, no real roots, root-of-unity witness) \
             ran for every admissible prime below {p_bound}"
        )],
    })
}

// ---------------------------------------------------------------------------
// lietypes (Lie type tables)
// ---------------------------------------------------------------------------

fn lietypes_table(p_bound: u64) -> Result<ReportTable> {
    let rows_spec: Vec<(&str, &str, &str)> = vec![
        ("sqrtP_zeta3", "p = 2", "(1,1) [oracle-resolved]"),
        ("sqrtP_zeta3", "p = 1, 7 mod 12", "(1,1)"),
        ("sqrtP_zeta3", "p = 5, 11 mod 12", "(e1,e2), e1+e2 = 2; oracle (1,1)"),
        ("sqrtP_zeta12", "p = 2", "(1,1) [oracle-resolved]"),
        ("sqrtP_zeta12", "p = 1, 7 mod 12", "(1,1)"),
        ("sqrtP_zeta12", "p = 5, 11 mod 12", "(e1,e2), e1+e2 = 2; oracle (1,1)"),
        ("sqrtP_zeta8", "p = 1 mod 4", "(1,1)"),
        ("sqrtP_zeta8", "p = 3 mod 4", "(e1,e2), e1+e2 = 2; oracle (1,1)"),
        ("sqrt5_zeta5_plus", "p = 5", "(2)"),
        ("sqrt5_zeta5_minus", "p = 5", "(2)"),
        ("sqrt2_zeta24_plus", "p = 2", "(1,1) [oracle-resolved]"),
        ("sqrt2_zeta24_minus", "p = 2", "(1,1) [oracle-resolved]"),
    ];
    for &p in &primes_below(p_bound) {
        for inst in enumerate_catalog(p)? {
            if !inst.concern || (inst.family == WeilFamily::SqrtPZeta3 && p == 3) {
                continue;
            }
            let constraint = lie_type_constraint(&inst)?;
            let profile = splitting_profile(&inst)?;
            match profile.behavior {
                SplittingBehavior::Split => {
                    if constraint.exponent_lists() != vec![vec![1], vec![1]] {
                        return Err(mismatch("lietypes", 0, format!("{} at {p}", inst.family.tag())));
                    }
                }
                SplittingBehavior::Ramified => {
                    if constraint.exponent_lists() != vec![vec![2]] {
                        return Err(mismatch("lietypes", 0, format!("{} at {p}", inst.family.tag())));
                    }
                }
                SplittingBehavior::Inert => {
                    let sum: u32 = constraint.places[0].exponents.iter().sum();
                    if sum != 2 {
                        return Err(mismatch("lietypes", 0, format!("{} at {p}", inst.family.tag())));
                    }
                }
            }
            // Oracle resolution for every prime below 200.
            if p < 200 {
                let resolved = lie_type(&inst)?;
                let oracle = build_catalog_module(&inst)?.mod_p()?.lie_dimensions();
                if resolved.exponent_lists() != oracle {
                    return Err(mismatch(
                        "lietypes",
                        0,
                        format!("oracle disagreement for {} at {p}", inst.family.tag()),
                    ));
                }
                for dims in oracle {
                    let mut d = dims;
                    d.sort_unstable_by(|a, b| b.cmp(a));
                    let expected: Vec<u32> = match profile.behavior {
                        SplittingBehavior::Split => vec![1],
                        SplittingBehavior::Inert => vec![1, 1],
                        SplittingBehavior::Ramified => vec![2],
                    };
                    if d != expected {
                        return Err(mismatch(
                            "lietypes",
                            0,
                            format!("oracle dims {d:?} for {} at {p}", inst.family.tag()),
                        ));
                    }
                }
            }
        }
    }
    let rows = rows_spec
        .iter()
        .map(|(fam, cls, lt)| vec![fam.to_string(), cls.to_string(), lt.to_string()])
        .collect();
    Ok(ReportTable {
        id: "lietypes".into(),
        title: "Lie types of the catalog surfaces over the algebraic closure".into(),
        headers: vec!["family".into(), "class".into(), "Lie type".into()],
        rows,
        footnotes: vec![
            "congruence classes are stated mod 12; a mod-4 reading of the same entries is \
             inconsistent with the split/inert classification"
                .into(),
            "inert-case pairs are pinned to (1,1) by the module oracle, not by the valuation \
             argument, which only fixes the sum"
                .into(),
            format!("engine verified below {p_bound}; oracle cross-check below 200"),
            "sqrtP_zeta3 at p = 3 is excluded: its valuation method does not apply (index-3 \
             order); see the classify report"
                .into(),
        ],
    })
}

// ---------------------------------------------------------------------------
// table16 (the worked example at p = 7)
// ---------------------------------------------------------------------------

fn cm_row(analysis: &CMAnalysis, paper_index: usize) -> Result<Vec<String>> {
    let t = analysis
        .by_paper_index(paper_index)
        .ok_or_else(|| Error::Internal(format!("no CM type with paper index {paper_index}")))?;
    let slope = format!("({})", t.slope_strings().join(", "));
    let counts = format!(
        "({})",
        t.place_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    );
    let reflex = poly_string(&t.reflex_minpoly);
    Ok(vec![
        format!("Phi{paper_index} = {{{}, {}}}", t.phi_labels[0], t.phi_labels[1]),
        slope,
        counts,
        reflex,
    ])
}

fn table16() -> Result<ReportTable> {
    let inst = WeilNumberInstance::new(7, WeilFamily::SqrtPZeta3)?;
    let analysis = analyze(&inst)?;
    let mut rows = Vec::new();
    for idx in 1..=4 {
        rows.push(cm_row(&analysis, idx)?);
    }
    // Verify the frozen content: slopes, partitions, reflexes.
    let expected = [
        ("(1/2, 1/2)", "(1,1)", "x^2 + 21"),
        ("(0, 1)", "(0,2)", "x^2 + 3"),
        ("(1/2, 1/2)", "(1,1)", "x^2 + 21"),
        ("(1, 0)", "(2,0)", "x^2 + 3"),
    ];
    for (i, (slope, counts, reflex)) in expected.iter().enumerate() {
        let row = &rows[i];
        let slope_matches = row[1] == *slope || row[1] == swap_pair(slope);
        let counts_match = row[2] == *counts || row[2] == swap_counts(counts);
        if !slope_matches || !counts_match || row[3] != *reflex {
            return Err(mismatch("table16", i, format!("{row:?}")));
        }
    }
    // RRC witnesses at q = 7 are exactly Phi1, Phi3.
    let rrc = rrc_verdict_for(&analysis, 7)?;
    let mut w: Vec<usize> = rrc
        .witnesses
        .iter()
        .map(|&i| rrc.per_cm_type[i].paper_index)
        .collect();
    w.sort_unstable();
    if w != vec![1, 3] {
        return Err(mismatch("table16", 0, format!("witnesses {w:?}")));
    }
    Ok(ReportTable {
        id: "table16".into(),
        title: "CM types of Q(sqrt7 zeta3): places, slopes, partitions, reflex fields".into(),
        headers: vec![
            "CM type".into(),
            "slope".into(),
            "(|Phi_w|, |Phi_wbar|)".into(),
            "reflex".into(),
        ],
        rows,
        footnotes: vec![
            "w is the place whose decomposition coset contains the identity embedding; the \
             column assignment is canonical up to the global w <-> wbar swap"
                .into(),
        ],
    })
}

fn swap_pair(s: &str) -> String {
    // "(a, b)" -> "(b, a)"
    let inner = s.trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(", ").collect();
    if parts.len() == 2 {
        format!("({}, {})", parts[1], parts[0])
    } else {
        s.to_string()
    }
}

fn swap_counts(s: &str) -> String {
    let inner = s.trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() == 2 {
        format!("({},{})", parts[1], parts[0])
    } else {
        s.to_string()
    }
}

// ---------------------------------------------------------------------------
// reflex (the inert-class reflex tables)
// ---------------------------------------------------------------------------

fn reflex_tables(p_bound: Option<u64>) -> Result<ReportTable> {
    // Rows: (family, class, reflex of the passing pair, reflex of the
    // failing pair). The failing pair is the one whose reflex is inert at p.
    let rows_spec: Vec<(WeilFamily, u64, u64, &str, &str)> = vec![
        (WeilFamily::SqrtPZeta8, 3, 4, "x^2 + 2p", "x^2 + 1"),
        (WeilFamily::SqrtPZeta3, 5, 12, "x^2 + 3p", "x^2 + 3"),
        (WeilFamily::SqrtPZeta3, 11, 12, "x^2 + 3p", "x^2 + 3"),
        (WeilFamily::SqrtPZeta12, 5, 12, "x^2 + p", "x^2 + 3"),
        (WeilFamily::SqrtPZeta12, 11, 12, "x^2 + p", "x^2 + 3"),
    ];
    let samples = 10usize;
    for (fam, class, modulus, _, failing) in &rows_spec {
        let primes = match p_bound {
            Some(b) => sampled_primes(*fam, *class, *modulus, usize::MAX)
                .into_iter()
                .filter(|&p| p < b)
                .collect::<Vec<_>>(),
            None => sampled_primes(*fam, *class, *modulus, samples),
        };
        for p in primes {
            let inst = WeilNumberInstance::new(p, *fam)?;
            let analysis = analyze(&inst)?;
            let v = rrc_verdict_for(&analysis, p)?;
            for (i, cv) in v.per_cm_type.iter().enumerate() {
                let reflex = poly_string(&analysis.cm_types[i].reflex_minpoly);
                let expected_fail = reflex == instantiate(failing, p);
                if expected_fail != !cv.reflex_ok {
                    return Err(mismatch(
                        "reflex",
                        i,
                        format!("{} at {p}: reflex {reflex} reflex_ok={}", fam.tag(), cv.reflex_ok),
                    ));
                }
                // All four pass the slope condition in the inert classes.
                if !cv.st_ok {
                    return Err(mismatch("reflex", i, format!("{} at {p}: ST fails", fam.tag())));
                }
            }
            if !rrc_verdict_for(&analysis, p * p)?.per_cm_type.iter().all(|cv| cv.rrc) {
                return Err(mismatch("reflex", 0, format!("{} at {p}: q = p^2", fam.tag())));
            }
        }
    }
    let rows = rows_spec
        .iter()
        .map(|(fam, class, modulus, pass, fail)| {
            vec![
                fam.tag().to_string(),
                format!("p = {class} mod {modulus}"),
                pass.to_string(),
                fail.to_string(),
            ]
        })
        .collect();
    Ok(ReportTable {
        id: "reflex".into(),
        title: "Reflex fields in the inert classes and the failing pair at q = p".into(),
        headers: vec![
            "family".into(),
            "class".into(),
            "reflex passing at q = p".into(),
            "reflex failing at q = p".into(),
        ],
        rows,
        footnotes: vec![
            "each CM-type pair shares a reflex field; the pair whose reflex is inert at p has \
             residue field F_{p^2} and fails the residue condition at q = p; all four types \
             satisfy the slope condition in these classes"
                .into(),
            "verified on the first 10 admissible primes in each class (or all below the bound \
             when one is given)"
                .into(),
        ],
    })
}

fn instantiate(symbolic: &str, p: u64) -> String {
    match symbolic {
        "x^2 + 2p" => poly_string(&[(2 * p) as i64, 0, 1]),
        "x^2 + 3p" => poly_string(&[(3 * p) as i64, 0, 1]),
        "x^2 + p" => poly_string(&[p as i64, 0, 1]),
        "x^2 + 3" => "x^2 + 3".into(),
        "x^2 + 1" => "x^2 + 1".into(),
        other => other.to_string(),
    }
}

// ---------------------------------------------------------------------------
// real (the real-family CM-type tables)
// ---------------------------------------------------------------------------

fn real_tables(p_bound: Option<u64>) -> Result<ReportTable> {
    // Split classes (p = 1, 7 mod 12): slopes (1/2,1/2)/(0,1)/(1/2,1/2)/(1,0)
    // with reflexes x^2+3p twice and x^2+3 twice. Inert classes
    // (p = 5, 11 mod 12, p = 2, p = 3): all slopes 1/2.
    let sample_split: Vec<u64> = match p_bound {
        Some(b) => primes_below(b).into_iter().filter(|&p| matches!(p % 12, 1 | 7)).collect(),
        None => primes_below(20_000)
            .into_iter()
            .filter(|&p| matches!(p % 12, 1 | 7))
            .take(10)
            .collect(),
    };
    let sample_inert: Vec<u64> = match p_bound {
        Some(b) => primes_below(b)
            .into_iter()
            .filter(|&p| p == 2 || p == 3 || matches!(p % 12, 5 | 11))
            .collect(),
        None => primes_below(20_000)
            .into_iter()
            .filter(|&p| p == 2 || p == 3 || matches!(p % 12, 5 | 11))
            .take(10)
            .collect(),
    };
    for &p in &sample_split {
        let inst = WeilNumberInstance::new(p, WeilFamily::SqrtP)?;
        let analysis = analyze(&inst)?;
        if analysis.profile.behavior != SplittingBehavior::Split {
            return Err(mismatch("real", 0, format!("p = {p} expected split")));
        }
        let v = rrc_verdict_for(&analysis, p)?;
        if !v.satisfiable {
            return Err(mismatch("real", 0, format!("p = {p} unsatisfiable at q = p")));
        }
        for &w in &v.witnesses {
            if analysis.cm_types[w].slopes != vec![ratio(1, 2), ratio(1, 2)] {
                return Err(mismatch("real", 0, format!("p = {p} witness slope")));
            }
        }
    }
    for &p in &sample_inert {
        let inst = WeilNumberInstance::new(p, WeilFamily::SqrtP)?;
        let analysis = analyze(&inst)?;
        if analysis.profile.behavior != SplittingBehavior::Inert {
            return Err(mismatch("real", 0, format!("p = {p} expected inert")));
        }
        for t in &analysis.cm_types {
            if t.slopes != vec![ratio(1, 2)] {
                return Err(mismatch("real", 0, format!("p = {p} inert slope")));
            }
        }
        let v = rrc_verdict_for(&analysis, p)?;
        if !v.satisfiable {
            return Err(mismatch("real", 0, format!("p = {p} unsatisfiable at q = p")));
        }
    }
    let rows = vec![
        vec![
            "split (p = 1, 7 mod 12)".into(),
            "Phi1 (1/2,1/2) x^2+3p; Phi2 (0,1) x^2+3; Phi3 (1/2,1/2) x^2+3p; Phi4 (1,0) x^2+3"
                .into(),
            "witnesses: the x^2+3p pair".into(),
        ],
        vec![
            "inert (p = 5, 11 mod 12; p = 2; p = 3)".into(),
            "all four CM types have slope (1/2, 1/2); reflexes x^2+3p twice, x^2+3 twice".into(),
            "witnesses: the pair whose reflex is ramified at p".into(),
        ],
    ];
    Ok(ReportTable {
        id: "real".into(),
        title: "Real-family CM types in the ambient field Q(sqrt(p) zeta3)".into(),
        headers: vec!["class".into(), "CM types".into(), "RRC at q = p".into()],
        rows,
        footnotes: vec![
            "x^2+3p stands for the canonical minimal polynomial of the reflex with squarefree \
             kernel of -3p (e.g. x^2+21 at p = 7, x^2+1 at p = 3)"
                .into(),
        ],
    })
}

// ---------------------------------------------------------------------------
// ex-rrc (label 2.5.a_af)
// ---------------------------------------------------------------------------

fn ex_rrc_table() -> Result<ReportTable> {
    let label = crate::lmfdb::parse_label("2.5.a_af")?;
    if label.family_shape() != Some(WeilFamily::SqrtPZeta12) || label.p != 5 {
        return Err(mismatch("ex-rrc", 0, "label decode".into()));
    }
    let inst = WeilNumberInstance::new(5, WeilFamily::SqrtPZeta12)?;
    let analysis = analyze(&inst)?;
    if analysis.profile.behavior != SplittingBehavior::Inert {
        return Err(mismatch("ex-rrc", 0, "5 = 5 mod 12 must be inert".into()));
    }
    let lt = lie_type(&inst)?;
    let verdict = good_lie_type(&lt, &analysis.profile, &analysis)?;
    if !verdict.good {
        return Err(mismatch("ex-rrc", 0, "Lie type must be good".into()));
    }
    let rrc = rrc_verdict_for(&analysis, 5)?;
    let mut rows = Vec::new();
    for (i, t) in analysis.cm_types.iter().enumerate() {
        let partition = format!(
            "({})",
            t.index_counts[0]
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let reflex = poly_string(&t.reflex_minpoly);
        let cv = &rrc.per_cm_type[i];
        // The gltchar sums hold for every partition here (sum = e_v = 2),
        // so each CM type yields a good Lie type datum.
        let sums_ok = t.index_counts[0].iter().sum::<u32>() == 2;
        if !sums_ok {
            return Err(mismatch("ex-rrc", i, "partition sum".into()));
        }
        let expected_rrc = t.reflex_minpoly == vec![5, 0, 1];
        if cv.rrc != expected_rrc {
            return Err(mismatch(
                "ex-rrc",
                i,
                format!("reflex {reflex} rrc = {}", cv.rrc),
            ));
        }
        rows.push(vec![
            format!("{{{}, {}}}", t.phi_labels[0], t.phi_labels[1]),
            partition,
            reflex,
            if sums_ok { "yes" } else { "no" }.into(),
            if cv.rrc { "yes" } else { "no" }.into(),
        ]);
    }
    Ok(ReportTable {
        id: "ex-rrc".into(),
        title: "Label 2.5.a_af: good Lie type without RRC".into(),
        headers: vec![
            "CM type".into(),
            "(|Phi^1|, |Phi^2|)".into(),
            "reflex".into(),
            "gives a good Lie type".into(),
            "RRC at q = 5".into(),
        ],
        rows,
        footnotes: vec![
            "every partition sums to the ramification index 2, so each CM type produces a good \
             Lie type datum, yet the x^2+3-reflex pair fails the residue condition at q = 5 \
             (5 is inert in that field); the surface's own Lie type is the oracle-resolved \
             (1,1), whose componentwise realizers are the x^2+5-reflex pair"
                .into(),
        ],
    })
}

// ---------------------------------------------------------------------------
// ex-notgood (label 2.25.a_az)
// ---------------------------------------------------------------------------

fn ex_notgood_table() -> Result<ReportTable> {
    let label = crate::lmfdb::parse_label("2.25.a_az")?;
    if label.q != 25 || label.p != 5 {
        return Err(mismatch("ex-notgood", 0, "label decode".into()));
    }
    let analysis = analyze_fixture_f25()?;
    let lt = fixture_f25_lie_type()?;
    let verdict = good_lie_type(&lt, &analysis.profile, &analysis)?;
    if verdict.good || !verdict.realizing_cm_types.is_empty() {
        return Err(mismatch("ex-notgood", 0, "Lie type must not be good".into()));
    }
    for pl in &lt.places {
        let mut dims = pl.exponents.clone();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        if dims != vec![1, 0] {
            return Err(mismatch("ex-notgood", 0, format!("per-place dims {dims:?}")));
        }
    }
    let rrc = rrc_verdict_for(&analysis, 25)?;
    let mut rows = Vec::new();
    for (i, t) in analysis.cm_types.iter().enumerate() {
        let cv = &rrc.per_cm_type[i];
        let expected_witness = t.slopes == vec![ratio(1, 2), ratio(1, 2)];
        if cv.rrc != expected_witness {
            return Err(mismatch("ex-notgood", i, format!("rrc = {}", cv.rrc)));
        }
        if expected_witness && t.reflex_minpoly != vec![3, 0, 1] {
            return Err(mismatch("ex-notgood", i, "witness reflex".into()));
        }
        rows.push(vec![
            format!("{{{}, {}}}", t.phi_labels[0], t.phi_labels[1]),
            format!("({})", t.slope_strings().join(", ")),
            format!(
                "({})",
                t.place_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            ),
            poly_string(&t.reflex_minpoly),
            if cv.rrc { "yes" } else { "no" }.into(),
        ]);
    }
    Ok(ReportTable {
        id: "ex-notgood".into(),
        title: "Label 2.25.a_az: RRC without good Lie type".into(),
        headers: vec![
            "CM type".into(),
            "slope".into(),
            "(|Phi_w|, |Phi_wbar|)".into(),
            "reflex".into(),
            "RRC at q = 25".into(),
        ],
        rows,
        footnotes: vec![
            "the module fixture pins per-place Lie dimensions (1,0), (1,0); the good-Lie sums \
             need e_w^i + e_wbar^i = 1 per residue index, which fails, while RRC holds with \
             the balanced x^2+3-reflex pair at q = 25"
                .into(),
        ],
    })
}

// ---------------------------------------------------------------------------
// classify sweep table (used by the CLI classify command)
// ---------------------------------------------------------------------------

pub fn classify_table(p_from: u64, p_to: u64) -> Result<ReportTable> {
    classify_table_from(sweep_range(p_from, p_to)?)
}

/// Classification sweep restricted to primes in [p_from, p_to).
pub fn sweep_range(p_from: u64, p_to: u64) -> Result<Vec<crate::classify::ClassificationVerdict>> {
    Ok(sweep(p_to)?.into_iter().filter(|v| v.p >= p_from).collect())
}

/// Render precomputed verdicts as a table.
pub fn classify_table_from(
    verdicts: Vec<crate::classify::ClassificationVerdict>,
) -> Result<ReportTable> {
    let rows: Vec<Vec<String>> = verdicts
        .into_iter()
        .map(|v| {
            vec![
                v.p.to_string(),
                v.family.clone(),
                v.base_field(),
                v.tag.as_str().to_string(),
                v.rrc_witnesses.join("; "),
                v.lie_type
                    .as_ref()
                    .map(|lt| {
                        lt.iter()
                            .map(|pl| {
                                format!(
                                    "({})",
                                    pl.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                                )
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_else(|| "-".into()),
                v.order_index.to_string(),
            ]
        })
        .collect();
    Ok(ReportTable {
        id: "classify".into(),
        title: "Lifting classification sweep".into(),
        headers: vec![
            "p".into(),
            "family".into(),
            "base".into(),
            "theorem".into(),
            "rrc witnesses".into(),
            "lie type".into(),
            "order index".into(),
        ],
        rows,
        footnotes: Vec::new(),
    })
}
