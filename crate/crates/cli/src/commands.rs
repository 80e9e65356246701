// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use graphcodes::descriptor::{self, Descriptor};
use graphcodes::dualbch::{weil_exhaustive, weil_literal, weil_sampled, WeilRow};
use graphcodes::metric::natural_metric;
use graphcodes::report::{DEFAULT_GRAPH_BUDGET, DEFAULT_NODE_LIMIT};
use graphcodes::{
    code_distance, parse_rational, singleton_check, warmup_codeword, DistanceOptions, Error, FieldContext,
    FieldElement, GraphCode, GraphWord, Metric, Result,
};
use serde_json::{json, Value};

use crate::family::{parse_row, FamilyArgs};

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn config(command: &str, entries: &[(&str, Value)]) -> BTreeMap<String, Value> {
    let mut c = BTreeMap::from([("command".to_string(), json!(command))]);
    for (k, v) in entries {
        if !v.is_null() {
            c.insert(k.to_string(), v.clone());
        }
    }
    c
}

// -- construct ---------------------------------------------------------

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output directory for the descriptor and basis file.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// File stem; defaults to the family name.
    #[arg(long)]
    pub name: Option<String>,
}

pub fn construct(a: &ConstructArgs) -> Result<()> {
    let built = a.family.build()?;
    let stem = a.name.clone().unwrap_or_else(|| built.family.clone());
    let mut desc = Descriptor::describe(
        &built.family,
        built.params.clone(),
        &built.code,
        &format!("{stem}.basis"),
    );
    desc.nominal_dimension = built.nominal_dimension;
    desc.layers = built.layers;
    desc.transcript = built.transcript;
    let mut cfg: Vec<(&str, Value)> = built.params.iter().map(|(k, v)| (k.as_str(), json!(v))).collect();
    cfg.push(("family", json!(built.family)));
    cfg.push(("seed", json!(a.family.seed)));
    cfg.push(("retries", json!(a.family.retries)));
    cfg.push(("budget", json!(a.family.budget)));
    desc.config = config("construct", &cfg);
    for line in &desc.transcript {
        eprintln!("{line}");
    }
    let path = descriptor::save(&a.out, &stem, &desc, &built.code)?;
    println!("{}", path.display());
    Ok(())
}

// -- distance ----------------------------------------------------------

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Auto,
    Undirected,
    Directed,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// Descriptor written by `construct`.
    pub descriptor: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub metric: MetricArg,
    /// Codewords drawn in sample mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum codewords visited in exact mode.
    #[arg(long, default_value_t = DEFAULT_GRAPH_BUDGET)]
    pub budget: u64,
    /// Branch-and-bound node cap per solver call.
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    /// Report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn distance(a: &DistanceArgs) -> Result<()> {
    let (desc, code) = descriptor::load(&a.descriptor)?;
    let metric = match a.metric {
        MetricArg::Auto => natural_metric(&code),
        MetricArg::Undirected => Metric::Undirected,
        MetricArg::Directed => Metric::Directed,
    };
    let mut opts = match a.mode {
        ModeArg::Exact => DistanceOptions::exact(a.budget),
        ModeArg::Sample => {
            if a.samples == 0 {
                return Err(Error::InvalidParameter("sample mode needs at least one sample".into()));
            }
            DistanceOptions::sampled(a.samples, a.seed)
        }
    };
    opts.node_limit = a.node_limit;
    let report = code_distance(&code, metric, &opts)?;
    let singleton = if report.is_exact() {
        Some(singleton_check(&code, &report)?)
    } else {
        None
    };
    let cfg = config(
        "distance",
        &[
            ("descriptor", json!(a.descriptor.display().to_string())),
            ("mode", json!(format!("{:?}", a.mode).to_lowercase())),
            ("metric", json!(format!("{:?}", a.metric).to_lowercase())),
            (
                "samples",
                if matches!(a.mode, ModeArg::Sample) {
                    json!(a.samples)
                } else {
                    Value::Null
                },
            ),
            (
                "seed",
                if matches!(a.mode, ModeArg::Sample) {
                    json!(a.seed)
                } else {
                    Value::Null
                },
            ),
            ("budget", json!(a.budget)),
            ("node_limit", json!(a.node_limit)),
        ],
    );
    let out = json!({
        "config": cfg,
        "family": desc.family,
        "n": code.n(),
        "binary_dimension": code.binary_dimension(),
        "claimed_distance": code.claimed_distance(),
        "report": report,
        "codeword_index": report.witness.as_ref().and_then(|w| w.index()),
        "singleton": singleton,
    });
    let mut text = serde_json::to_string_pretty(&out).expect("report serializes");
    text.push('\n');
    emit(a.out.as_deref(), &text)
}

// -- table -------------------------------------------------------------

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// One row per `family:key=value,...`, e.g. `dualbch:t=4,d=3`.
    #[arg(long = "row")]
    pub rows: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
    /// Also write the CSV form here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_GRAPH_BUDGET)]
    pub budget: u64,
}

pub const TABLE_HEADER: [&str; 10] = [
    "family",
    "params",
    "n",
    "bits",
    "rate",
    "certified_distance",
    "relative_distance",
    "claimed_distance",
    "singleton",
    "singleton_slack",
];

/// Free symbol positions left by the Singleton-type bound, in bits.
fn singleton_positions(code: &GraphCode, d: usize) -> i64 {
    let free = (code.n() + 1).saturating_sub(d) as i64;
    let pos = if code.symmetric_zero_diag() {
        free * (free - 1) / 2
    } else {
        free * free
    };
    pos * code.ctx().t() as i64
}

pub fn table_row(spec: &str, budget: u64) -> Result<Vec<String>> {
    let mut fa = parse_row(spec)?;
    fa.budget = budget;
    let built = fa.build()?;
    let code = &built.code;
    let params: Vec<String> = built.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let (certified, rel, singleton, slack) =
        match code_distance(code, natural_metric(code), &DistanceOptions::exact(budget)) {
            Ok(r) => {
                let d = r.value().expect("exact");
                let ok = singleton_check(code, &r)?;
                let slack = singleton_positions(code, d) - code.binary_dimension() as i64;
                (
                    d.to_string(),
                    format!("{:.4}", d as f64 / code.n() as f64),
                    if ok { "pass" } else { "fail" }.to_string(),
                    slack.to_string(),
                )
            }
            Err(Error::BudgetExceeded(_)) => ("budget".into(), String::new(), "n/a".into(), String::new()),
            Err(e) => return Err(e),
        };
    Ok(vec![
        built.family.clone(),
        params.join(";"),
        code.n().to_string(),
        code.binary_dimension().to_string(),
        code.rate().to_string(),
        certified,
        rel,
        code.claimed_distance().map_or(String::new(), |d| d.to_string()),
        singleton,
        slack,
    ])
}

fn csv(rows: &[Vec<String>]) -> String {
    let mut s = TABLE_HEADER.join(",") + "\n";
    for r in rows {
        s += &r.join(",");
        s.push('\n');
    }
    s
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (c, w) in cells.iter().zip(&width) {
            let _ = write!(s, "{c:<w$}  ");
        }
        s.trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

pub fn table(a: &TableArgs) -> Result<()> {
    let rows: Vec<Vec<String>> = a.rows.iter().map(|r| table_row(r, a.budget)).collect::<Result<_>>()?;
    let csv_text = csv(&rows);
    if let Some(p) = &a.csv {
        emit(Some(p), &csv_text)?;
    }
    match a.format {
        TableFormat::Csv => print!("{csv_text}"),
        TableFormat::Text => print!("{}", aligned(&TABLE_HEADER, &rows)),
    }
    Ok(())
}

// -- export ------------------------------------------------------------

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphFormat {
    Matrix,
    Edges,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub descriptor: PathBuf,
    /// F_2 message index in the code's binary basis.
    #[arg(long, conflicts_with_all = ["coeffs", "alpha"])]
    pub index: Option<u64>,
    /// Hex coefficients on the basis words, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "alpha")]
    pub coeffs: Option<Vec<String>>,
    /// Field element alpha of a warmup codeword, in hex.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, value_enum, default_value = "matrix")]
    pub format: GraphFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn export(a: &ExportArgs) -> Result<()> {
    let (desc, code) = descriptor::load(&a.descriptor)?;
    let word = if let Some(i) = a.index {
        let bits = code.binary_dimension();
        if bits < 64 && i >> bits != 0 {
            return Err(Error::InvalidParameter(format!(
                "index {i} out of range for 2^{bits} codewords"
            )));
        }
        code.codeword(&[i])
    } else if let Some(cs) = &a.coeffs {
        let coeffs: Vec<FieldElement> = cs.iter().map(|c| code.ctx().parse_element(c)).collect::<Result<_>>()?;
        code.codeword_from_coefficients(&coeffs)?
    } else if let Some(alpha) = &a.alpha {
        if desc.family != "warmup" {
            return Err(Error::InvalidParameter(
                "--alpha selects codewords of the warmup family".into(),
            ));
        }
        let t: u32 = desc
            .params
            .get("t")
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("descriptor lacks t".into()))?;
        let ctx = FieldContext::new(t)?;
        let w = warmup_codeword(ctx.parse_element(alpha)?, &ctx)?.into_matrix();
        if !code.contains(&w) {
            return Err(Error::CheckFailed(
                "warmup codeword outside the stored basis span".into(),
            ));
        }
        w
    } else {
        return Err(Error::Parse("export needs --index, --coeffs or --alpha".into()));
    };
    let text = match a.format {
        GraphFormat::Matrix => word.to_text(),
        GraphFormat::Edges => {
            let g = GraphWord::new(word)?;
            if !g.is_binary() {
                return Err(Error::InvalidParameter("edge lists need a binary graph".into()));
            }
            g.to_edge_list()
        }
    };
    emit(a.out.as_deref(), &text)
}

// -- weil --------------------------------------------------------------

#[derive(Debug, Args)]
pub struct WeilArgs {
    #[arg(long = "t", value_delimiter = ',', default_value = "4,5,6")]
    pub ts: Vec<u32>,
    #[arg(long = "degrees", value_delimiter = ',', default_value = "3,5,7")]
    pub degrees: Vec<usize>,
    /// Random polynomials per class at t >= --sample-from.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 6)]
    pub sample_from: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: TableFormat,
}

pub const WEIL_HEADER: [&str; 7] = ["t", "degree", "method", "polynomials", "max_abs_sum", "bound", "pass"];

pub fn weil_rows(a: &WeilArgs) -> Result<Vec<WeilRow>> {
    let mut rows = Vec::new();
    for &t in &a.ts {
        let ctx = FieldContext::new(t)?;
        for &e in &a.degrees {
            rows.push(weil_exhaustive(&ctx, e)?);
            if t as usize * e <= 24 {
                rows.push(weil_literal(&ctx, e)?);
            }
            if t >= a.sample_from && a.samples > 0 {
                rows.push(weil_sampled(
                    &ctx,
                    e,
                    a.samples,
                    a.seed ^ ((t as u64) << 32 | e as u64),
                )?);
            }
        }
    }
    Ok(rows)
}

pub fn weil(a: &WeilArgs) -> Result<()> {
    let rows = weil_rows(a)?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.t.to_string(),
                r.degree.to_string(),
                r.method.to_string(),
                r.polynomials.to_string(),
                r.max_abs.to_string(),
                format!("{:.4}", r.bound),
                if r.pass { "pass" } else { "fail" }.to_string(),
            ]
        })
        .collect();
    match a.format {
        TableFormat::Csv => {
            let mut s = WEIL_HEADER.join(",") + "\n";
            for r in &cells {
                s += &(r.join(",") + "\n");
            }
            print!("{s}");
        }
        TableFormat::Text => print!("{}", aligned(&WEIL_HEADER, &cells)),
    }
    let bad = rows.iter().filter(|r| !r.pass).count();
    if bad > 0 {
        return Err(Error::CheckFailed(format!("{bad} classes exceed the Weil bound")));
    }
    Ok(())
}

// -- selftest ----------------------------------------------------------

type Check = (&'static str, fn() -> Result<bool>);

fn check_even_weight() -> Result<bool> {
    let base = graphcodes::LinearCode::from_text("q=3 n=3 k=2\n1 0 1\n0 1 1\n")?;
    let code = graphcodes::stczd_basis(&base)?;
    let r = code_distance(&code, Metric::Undirected, &DistanceOptions::default())?;
    Ok(code.len() == 1 && r.value() == Some(2))
}

fn check_warmup() -> Result<bool> {
    let f4 = FieldContext::new(2)?;
    Ok(warmup_codeword(FieldElement(2), &f4)?.edges().len() == 6
        && warmup_codeword(FieldElement(1), &f4)?.edges().is_empty())
}

fn check_rs_stczd() -> Result<bool> {
    let rs = graphcodes::rs_generate(5, 3, FieldContext::new(3)?)?;
    let code = graphcodes::stczd_basis(&rs)?;
    let r = code_distance(&code, Metric::Directed, &DistanceOptions::default())?;
    Ok(r.value() == Some(3) && singleton_check(&code, &r)?)
}

fn check_random() -> Result<bool> {
    let s = graphcodes::random_codes::sample_random_graph_code(
        14,
        parse_rational("0.5")?,
        0,
        64,
        &DistanceOptions::default(),
    )?;
    Ok(s.code.len() == 5 && s.report.value().is_some_and(|d| d > 7))
}

fn check_weil() -> Result<bool> {
    let ctx = FieldContext::new(4)?;
    Ok([3, 5, 7]
        .iter()
        .all(|&e| weil_exhaustive(&ctx, e).is_ok_and(|r| r.pass)))
}

fn check_dualbch_rank() -> Result<bool> {
    let b = graphcodes::dualbch_basis(FieldContext::new(2)?, 3)?;
    Ok(b.nominal == 2 && b.code.len() == 1)
}

const CHECKS: &[Check] = &[
    ("stczd-even-weight-distance", check_even_weight),
    ("warmup-f4", check_warmup),
    ("stczd-rs-5-3-directed-distance", check_rs_stczd),
    ("random-code-14", check_random),
    ("weil-t4", check_weil),
    ("dualbch-rank-reduction", check_dualbch_rank),
];

pub fn selftest() -> Result<()> {
    let mut failed = 0;
    for (name, check) in CHECKS {
        let ok = matches!(check(), Ok(true));
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        return Err(Error::CheckFailed(format!(
            "{failed} of {} self-checks failed",
            CHECKS.len()
        )));
    }
    Ok(())
}
