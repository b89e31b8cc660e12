//! Command-line front end: catalog queries, per-instance analyses, the
//! classification sweep, and verified table reproduction.
//!
//! Exit codes: 0 on success, 2 on validation errors (bad flags, unknown
//! families, inadmissible primes, malformed labels), 3 on internal
//! assertion failures such as a reproduced table disagreeing with the
//! engine.

use clap::{Parser, Subcommand, ValueEnum};
use cmlift_core::cm_types::analyze;
use cmlift_core::classify::{classify, special_case_sqrt3zeta3};
use cmlift_core::lie::{dimension_condition, good_lie_type, lie_type, lie_type_constraint};
use cmlift_core::lmfdb::parse_label;
use cmlift_core::places::splitting_profile;
use cmlift_core::report::{classify_table_from, reproduce, ReportTable};
use cmlift_core::rrc::rrc_verdict_for;
use cmlift_core::weil::{enumerate_catalog, WeilFamily, WeilNumberInstance};
use cmlift_core::Error as CoreError;
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "cmlift",
    about = "Classify CM liftings of simple superspecial abelian surfaces over prime fields",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the Weil-number catalog at a prime.
    Catalog {
        #[arg(long)]
        p: u64,
    },
    /// Decomposition of p through the real quadratic subfield.
    Splitting {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        family: String,
    },
    /// Lie type with oracle resolution, goodness, dimension condition.
    Lie {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        family: String,
    },
    /// CM types: partitions, slopes, reflex fields.
    Cmtypes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        family: String,
    },
    /// Residual reflex condition verdict at q (default q = p).
    Rrc {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Lifting classification for one prime or a range.
    Classify {
        #[arg(long)]
        p: Option<u64>,
        /// Range A..B (B exclusive).
        #[arg(long, value_name = "A..B")]
        p_range: Option<String>,
    },
    /// Reproduce a verified table (indices, valuations, minpolys, lietypes,
    /// table16, reflex, real, ex-rrc, ex-notgood, all).
    Reproduce {
        #[arg(long)]
        table: String,
        /// Override the verification sweep bound (upper end of A..B).
        #[arg(long, value_name = "A..B")]
        p_range: Option<String>,
    },
    /// Decode an isogeny-class label and match it against the catalog.
    Lmfdb {
        #[arg(long)]
        label: String,
    },
    /// The structured report for sqrtP_zeta3 at p = 3.
    Sqrt3zeta3,
}

fn main() {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("SSP_CM_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            } else {
                let mut stdout = std::io::stdout();
                let _ = stdout.write_all(output.as_bytes());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::TableMismatch { .. } | CoreError::Internal(_) => 3,
        _ => 2,
    }
}

fn parse_family(p: u64, family: &str) -> Result<WeilNumberInstance, CoreError> {
    let fam = WeilFamily::parse(family)?;
    WeilNumberInstance::new(p, fam)
}

fn parse_range(s: &str) -> Result<(u64, u64), CoreError> {
    let parts: Vec<&str> = s.split("..").collect();
    if parts.len() != 2 {
        return Err(CoreError::Validation(format!("range must be A..B, got {s}")));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| CoreError::Validation(format!("bad range start {}", parts[0])))?;
    let b = parts[1]
        .parse()
        .map_err(|_| CoreError::Validation(format!("bad range end {}", parts[1])))?;
    Ok((a, b))
}

fn render(format: Format, tables: &[ReportTable], json: serde_json::Value) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).unwrap()),
        Format::Csv => tables.iter().map(|t| t.to_csv()).collect::<Vec<_>>().join("\n"),
        Format::Md => tables.iter().map(|t| t.to_markdown()).collect::<Vec<_>>().join("\n"),
    }
}

fn run(cli: &Cli) -> Result<String, CoreError> {
    match &cli.cmd {
        Cmd::Catalog { p } => {
            let catalog = enumerate_catalog(*p)?;
            let rows = catalog
                .iter()
                .map(|inst| {
                    vec![
                        inst.p.to_string(),
                        inst.family.tag().to_string(),
                        format!("{:?}", inst.minpoly),
                        inst.concern.to_string(),
                    ]
                })
                .collect();
            let table = ReportTable {
                id: "catalog".into(),
                title: format!("Weil-number catalog at p = {p}"),
                headers: vec!["p".into(), "family".into(), "minpoly".into(), "concern".into()],
                rows,
                footnotes: Vec::new(),
            };
            let json = serde_json::Value::Array(catalog.iter().map(|i| i.to_json()).collect());
            Ok(render(cli.format, &[table], json))
        }
        Cmd::Splitting { p, family } => {
            let inst = parse_family(*p, family)?;
            let profile = splitting_profile(&inst)?;
            let rows = profile
                .places
                .iter()
                .map(|pl| {
                    vec![
                        pl.label.clone(),
                        pl.e.to_string(),
                        pl.f.to_string(),
                        pl.frob_valuation.to_string(),
                    ]
                })
                .collect();
            let mut footnotes = vec![format!(
                "v in L0: e = {}, f = {}; behavior in L: {:?}; governing symbol ({} | {}) = {}",
                profile.v_e, profile.v_f, profile.behavior, profile.delta, p, profile.symbol
            )];
            if let Some(n) = &profile.note {
                footnotes.push(n.clone());
            }
            let table = ReportTable {
                id: "splitting".into(),
                title: format!("Places above {p} for {family}"),
                headers: vec!["place".into(), "e".into(), "f".into(), "w(Frob)".into()],
                rows,
                footnotes,
            };
            Ok(render(cli.format, &[table], profile.to_json()))
        }
        Cmd::Lie { p, family } => {
            let inst = parse_family(*p, family)?;
            let constraint = lie_type_constraint(&inst)?;
            let lt = lie_type(&inst)?;
            let analysis = analyze(&inst)?;
            let verdict = good_lie_type(&lt, &analysis.profile, &analysis)?;
            let dim = dimension_condition(&inst)?;
            let rows = lt
                .places
                .iter()
                .map(|pl| {
                    vec![
                        pl.label.clone(),
                        format!(
                            "({})",
                            pl.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                        ),
                        format!("{:?}", pl.resolution),
                    ]
                })
                .collect();
            let realizing: Vec<String> = verdict
                .realizing_cm_types
                .iter()
                .map(|&i| {
                    let t = &analysis.cm_types[i];
                    format!("{{{}, {}}}", t.phi_labels[0], t.phi_labels[1])
                })
                .collect();
            let table = ReportTable {
                id: "lie".into(),
                title: format!("Lie type for {family} at p = {p}"),
                headers: vec!["place".into(), "exponents".into(), "resolution".into()],
                rows,
                footnotes: vec![
                    format!("good Lie type: {}", verdict.good),
                    format!("realizing CM types: [{}]", realizing.join(", ")),
                    format!("dimension condition: {dim}"),
                ],
            };
            let lie_obj: serde_json::Map<String, serde_json::Value> = lt
                .places
                .iter()
                .map(|pl| (pl.label.clone(), serde_json::json!(pl.exponents)))
                .collect();
            let json = serde_json::json!({
                "p": p,
                "family": family,
                "lie_type": lie_obj,
                "resolution": lt.places.iter().map(|pl| format!("{:?}", pl.resolution)).collect::<Vec<_>>(),
                "constraint": constraint,
                "good": verdict.good,
                "realizing_cm_types": realizing,
                "dimension_condition": dim,
            });
            Ok(render(cli.format, &[table], json))
        }
        Cmd::Cmtypes { p, family } => {
            let inst = parse_family(*p, family)?;
            let analysis = analyze(&inst)?;
            let rows = analysis
                .cm_types
                .iter()
                .map(|t| {
                    vec![
                        format!("{{{}, {}}}", t.phi_labels[0], t.phi_labels[1]),
                        format!("({})", t.slope_strings().join(", ")),
                        format!(
                            "({})",
                            t.place_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                        ),
                        format!("{:?}", t.index_counts),
                        format!("{:?}", t.reflex_minpoly),
                        t.reflex_residue_degree.to_string(),
                    ]
                })
                .collect();
            let table = ReportTable {
                id: "cmtypes".into(),
                title: format!("CM types for {family} at p = {p}"),
                headers: vec![
                    "CM type".into(),
                    "slope".into(),
                    "place counts".into(),
                    "index counts".into(),
                    "reflex minpoly".into(),
                    "f'".into(),
                ],
                rows,
                footnotes: Vec::new(),
            };
            Ok(render(cli.format, &[table], analysis.to_json()))
        }
        Cmd::Rrc { p, family, q } => {
            let inst = parse_family(*p, family)?;
            let q = q.unwrap_or(*p);
            let analysis = analyze(&inst)?;
            let verdict = rrc_verdict_for(&analysis, q)?;
            let rows = verdict
                .per_cm_type
                .iter()
                .map(|cv| {
                    vec![
                        format!("{{{}, {}}}", cv.phi[0], cv.phi[1]),
                        cv.st_ok.to_string(),
                        cv.reflex_ok.to_string(),
                        cv.rrc.to_string(),
                        cv.failed.map(|f| format!("{f:?}")).unwrap_or_default(),
                    ]
                })
                .collect();
            let table = ReportTable {
                id: "rrc".into(),
                title: format!("RRC verdict for {family} at p = {p}, q = {q}"),
                headers: vec![
                    "CM type".into(),
                    "ST".into(),
                    "reflex".into(),
                    "RRC".into(),
                    "failed".into(),
                ],
                rows,
                footnotes: vec![format!("aggregate satisfiable: {}", verdict.satisfiable)],
            };
            let json = serde_json::to_value(&verdict).unwrap();
            Ok(render(cli.format, &[table], json))
        }
        Cmd::Classify { p, p_range } => {
            let (from, to) = match (p, p_range) {
                (Some(p), None) => {
                    if !cmlift_core::arith::is_prime(*p) {
                        return Err(CoreError::NotPrime(*p));
                    }
                    (*p, *p + 1)
                }
                (None, Some(r)) => parse_range(r)?,
                _ => {
                    return Err(CoreError::Validation(
                        "provide exactly one of --p or --p-range".into(),
                    ))
                }
            };
            // Fan out per prime; results merged in canonical order.
            let primes: Vec<u64> = cmlift_core::arith::primes_below(to)
                .into_iter()
                .filter(|&q| q >= from)
                .collect();
            let mut verdicts = primes
                .par_iter()
                .map(|&q| {
                    enumerate_catalog(q).and_then(|c| {
                        c.iter().map(classify).collect::<Result<Vec<_>, _>>()
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect::<Vec<_>>();
            verdicts.sort_by_key(|v| v.p); // family order is preserved per prime
            let json = serde_json::to_value(&verdicts).unwrap();
            let table = classify_table_from(verdicts)?;
            Ok(render(cli.format, &[table], json))
        }
        Cmd::Reproduce { table, p_range } => {
            let bound = match p_range {
                Some(r) => Some(parse_range(r)?.1),
                None => None,
            };
            let tables = reproduce(table, bound)?;
            let json =
                serde_json::Value::Array(tables.iter().map(|t| t.to_json()).collect());
            Ok(render(cli.format, &tables, json))
        }
        Cmd::Lmfdb { label } => {
            let parsed = parse_label(label)?;
            let shape = parsed.family_shape();
            let rows = vec![vec![
                label.clone(),
                parsed.g.to_string(),
                parsed.q.to_string(),
                parsed.p.to_string(),
                format!("{:?}", parsed.coeffs),
                format!("{:?}", parsed.weil_polynomial()),
                shape.map(|f| f.tag().to_string()).unwrap_or_else(|| "-".into()),
            ]];
            let table = ReportTable {
                id: "lmfdb".into(),
                title: "Isogeny-class label".into(),
                headers: vec![
                    "label".into(),
                    "g".into(),
                    "q".into(),
                    "p".into(),
                    "coefficients".into(),
                    "Weil polynomial".into(),
                    "family".into(),
                ],
                rows,
                footnotes: Vec::new(),
            };
            let json = serde_json::json!({
                "label": label,
                "g": parsed.g,
                "q": parsed.q,
                "p": parsed.p,
                "k": parsed.k,
                "coefficients": parsed.coeffs,
                "family": shape.map(|f| f.tag().to_string()),
            });
            Ok(render(cli.format, &[table], json))
        }
        Cmd::Sqrt3zeta3 => {
            let r = special_case_sqrt3zeta3()?;
            let rows = vec![vec![
                r.index_ol_rsp.to_string(),
                r.index_rsp_rss.to_string(),
                r.index_local_rss.to_string(),
                r.rrc_witnesses.join("; "),
                format!("F_{}", r.base_q),
            ]];
            let table = ReportTable {
                id: "sqrt3zeta3".into(),
                title: "sqrtP_zeta3 at p = 3: order indices and verdict".into(),
                headers: vec![
                    "[O_L : R_sp]".into(),
                    "[R_sp : R_ss]".into(),
                    "[O_Lw : R_ss x Z_3]".into(),
                    "RRC witnesses".into(),
                    "base".into(),
                ],
                rows,
                footnotes: vec![
                    "no Lie type is claimed: the valuation method needs the order to be \
                     maximal at p, and here the index is 3"
                        .into(),
                ],
            };
            let json = serde_json::to_value(&r).unwrap();
            Ok(render(cli.format, &[table], json))
        }
    }
}
