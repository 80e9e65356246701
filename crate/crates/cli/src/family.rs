// SPDX-License-Identifier: Apache-2.0

//! Family dispatch for `construct` and `table`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use graphcodes::concat::{concat_rs, justesen_like, triple_concat, Composite};
use graphcodes::random_codes::{sample_random_graph_code, search_opt_directed, DEFAULT_RETRIES};
use graphcodes::report::DEFAULT_GRAPH_BUDGET;
use graphcodes::{
    dualbch_basis, parse_rational, rs_generate, stczd_basis, stczd_rs_explicit, tensor_code, DistanceOptions, Error,
    FieldContext, GraphCode, LinearCode, Rational, Result,
};
use serde_json::{json, Value};

pub const FAMILIES: &[&str] = &[
    "stczd",
    "stczd-rs",
    "stczd-rs-explicit",
    "tensor",
    "tensor-rs",
    "random",
    "opt",
    "concat-rs",
    "triple",
    "justesen",
    "dualbch",
    "warmup",
];

/// Parameters shared by every family; each family reads the ones it needs.
#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Option<String>,
    /// Length (RS/base codes) or side of the matrices (random, opt).
    #[arg(long)]
    pub n: Option<usize>,
    /// Dimension (RS/base codes, opt).
    #[arg(long)]
    pub k: Option<usize>,
    /// Outer length.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Extension degree of GF(2^t).
    #[arg(long)]
    pub t: Option<u32>,
    /// Largest odd exponent of the trace polynomials.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub delta: Option<String>,
    /// Base-code generator matrix file (`stczd`, `tensor`).
    #[arg(long)]
    pub generator: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
    /// Codeword budget for exact certification inside constructors.
    #[arg(long, default_value_t = DEFAULT_GRAPH_BUDGET)]
    pub budget: u64,
}

pub struct Built {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub code: GraphCode,
    pub nominal_dimension: Option<usize>,
    pub layers: Vec<Value>,
    pub transcript: Vec<String>,
}

fn usage(msg: String) -> Error {
    Error::Parse(msg)
}

fn need<T: Clone>(v: &Option<T>, name: &str, family: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| usage(format!("family {family} needs --{name}")))
}

fn rational(v: &Option<String>, name: &str, family: &str) -> Result<Rational> {
    parse_rational(&need(v, name, family)?)
}

fn field(a: &FamilyArgs, family: &str) -> Result<FieldContext> {
    FieldContext::new(need(&a.t, "t", family)?)
}

fn composite_layers(c: &Composite) -> Vec<Value> {
    c.layers
        .iter()
        .map(|l| serde_json::to_value(l).expect("layer serializes"))
        .collect()
}

impl FamilyArgs {
    /// Parameters as decimal strings, for the descriptor.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                p.insert(k.to_string(), v);
            }
        };
        put("n", self.n.map(|x| x.to_string()));
        put("k", self.k.map(|x| x.to_string()));
        put("N", self.big_n.map(|x| x.to_string()));
        put("t", self.t.map(|x| x.to_string()));
        put("d", self.d.map(|x| x.to_string()));
        put("eps", self.eps.clone());
        put("rho", self.rho.clone());
        put("delta", self.delta.clone());
        put("generator", self.generator.as_ref().map(|g| g.display().to_string()));
        p
    }

    pub fn build(&self) -> Result<Built> {
        let family = self.family.clone().ok_or_else(|| usage("missing --family".into()))?;
        let f = family.as_str();
        let opts = DistanceOptions::exact(self.budget);
        let mut nominal = None;
        let mut layers = Vec::new();
        let mut transcript = Vec::new();
        let code = match f {
            "stczd" | "tensor" => {
                let path = need(&self.generator, "generator", f)?;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
                let base = LinearCode::from_text(&text)?;
                if f == "stczd" {
                    stczd_basis(&base)?
                } else {
                    tensor_code(&base)?
                }
            }
            "stczd-rs" | "tensor-rs" => {
                let rs = rs_generate(need(&self.n, "n", f)?, need(&self.k, "k", f)?, field(self, f)?)?;
                if f == "stczd-rs" {
                    stczd_basis(&rs)?
                } else {
                    tensor_code(&rs)?
                }
            }
            "stczd-rs-explicit" => stczd_rs_explicit(need(&self.n, "n", f)?, need(&self.k, "k", f)?, field(self, f)?)?,
            "random" => {
                let s = sample_random_graph_code(
                    need(&self.n, "n", f)?,
                    rational(&self.delta, "delta", f)?,
                    self.seed,
                    self.retries,
                    &opts,
                )?;
                transcript = s.transcript;
                s.code
            }
            "opt" => {
                let s = search_opt_directed(
                    rational(&self.eps, "eps", f)?,
                    need(&self.n, "n", f)?,
                    need(&self.k, "k", f)?,
                    self.seed,
                    self.retries,
                    &opts,
                )?;
                transcript = s.transcript;
                s.code
            }
            "concat-rs" => {
                let c = concat_rs(
                    rational(&self.eps, "eps", f)?,
                    need(&self.n, "n", f)?,
                    need(&self.k, "k", f)?,
                    need(&self.big_n, "N", f)?,
                    rational(&self.rho, "rho", f)?,
                    self.seed,
                    &opts,
                )?;
                layers = composite_layers(&c);
                c.code
            }
            "triple" => {
                let c = triple_concat(
                    rational(&self.rho, "rho", f)?,
                    need(&self.big_n, "N", f)?,
                    self.seed,
                    &opts,
                )?;
                layers = composite_layers(&c);
                c.code
            }
            "justesen" => {
                let k = need(&self.k, "k", f)?;
                let j = justesen_like(rational(&self.eps, "eps", f)?, k as u32, rational(&self.rho, "rho", f)?)?;
                layers = composite_layers(&j.composite);
                layers.push(json!({
                    "family": "wozencraft-table",
                    "threshold": j.threshold,
                    "good_fraction": j.good_fraction,
                    "codes": j.table,
                }));
                j.composite.code
            }
            "dualbch" | "warmup" => {
                let d = if f == "warmup" { 3 } else { need(&self.d, "d", f)? };
                let b = dualbch_basis(field(self, f)?, d)?;
                nominal = Some(b.nominal);
                layers.push(json!({"family": "trace-monomials", "labels": b.labels}));
                b.code
            }
            other => {
                return Err(usage(format!(
                    "unknown family {other:?} (one of {})",
                    FAMILIES.join(", ")
                )));
            }
        };
        let mut params = self.params();
        if matches!(f, "random" | "opt" | "concat-rs" | "triple") {
            params.insert("seed".into(), self.seed.to_string());
        }
        if f == "warmup" {
            params.insert("d".into(), "3".into());
        }
        Ok(Built {
            family,
            params,
            code,
            nominal_dimension: nominal,
            layers,
            transcript,
        })
    }
}

/// Parses `family:key=value,key=value` into family arguments.
pub fn parse_row(spec: &str) -> Result<FamilyArgs> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut a = FamilyArgs {
        family: Some(family.to_string()),
        retries: DEFAULT_RETRIES,
        budget: DEFAULT_GRAPH_BUDGET,
        ..Default::default()
    };
    for kv in rest.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("bad row parameter {kv:?}")))?;
        let int = || {
            v.parse::<usize>()
                .map_err(|_| usage(format!("{k} = {v:?} is not an integer")))
        };
        match k {
            "n" => a.n = Some(int()?),
            "k" => a.k = Some(int()?),
            "N" => a.big_n = Some(int()?),
            "t" => a.t = Some(int()? as u32),
            "d" => a.d = Some(int()?),
            "eps" => a.eps = Some(v.to_string()),
            "rho" => a.rho = Some(v.to_string()),
            "delta" => a.delta = Some(v.to_string()),
            "seed" => a.seed = v.parse().map_err(|_| usage(format!("bad seed {v:?}")))?,
            "generator" => a.generator = Some(PathBuf::from(v)),
            _ => return Err(usage(format!("unknown row parameter {k:?}"))),
        }
    }
    Ok(a)
}
