//! Command-line front end. Every subcommand builds a JSON report that is
//! rendered as JSON, CSV or plain text.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or
//! configuration error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::combinatorics::{
    bound_equation_free, cauchy_davenport, check_equation_free, check_tricolor, max_equation_free,
    max_tricolor, tricolor_bound, EquationSpec, SearchConfig,
};
use crate::covering::{
    compute_cover_with_cap, covering_equation_bound, verify_cover, CoverInstance, DEFAULT_TUPLE_CAP,
};
use crate::error::{Error, Result};
use crate::groups::{build_group, ElementIndex, FiniteGroup, GroupSpec};
use crate::rewriting::{format_word, Rewriter};
use crate::subspaces::{
    analytic_bounds, build_filtered_subspace, default_filter_for, exact_codim, parse_rational,
    rate, to_f64, verify_zero_product, DegreeFilter, FilteredSubspace, RateOrder, Rational,
};

pub const SCHEMA: &str = "capring/1";

#[derive(Parser, Debug)]
#[command(
    name = "capring",
    version,
    about = "Zero-product subspaces of group rings and the bounds they give"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads (overrides CAPRING_WORKERS).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct FilterArgs {
    /// Abelian weights λ_j, comma separated rationals (default: per-order optimum).
    #[arg(long)]
    pub weights: Option<String>,
    /// Threshold shares η_i, one per factor, summing to 1 (default 1/k each).
    #[arg(long, alias = "threshold-share", allow_hyphen_values = true)]
    pub eta: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rate constants a_N(k) and κ_N.
    Rates {
        #[arg(long = "N", default_value = "2,3,4,9,inf")]
        orders: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Codimensions of the filtered subspaces and the bounds they imply.
    Bound {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Equation exponents, e.g. 1,1,-2 (sets k).
        #[arg(long, allow_hyphen_values = true)]
        eq: Option<String>,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Exhaustive check that X_1 ⋯ X_k = 0.
    VerifyZero {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Largest equation-free set, or a check of a given set.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "1,1,-2", allow_hyphen_values = true)]
        eq: String,
        /// Require a proven maximum.
        #[arg(long)]
        exact: bool,
        /// Check this set (JSON array of element tuples) instead of searching.
        #[arg(long)]
        set: Option<PathBuf>,
        /// Largest group order searched exactly.
        #[arg(long, default_value_t = 30)]
        cap: usize,
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
    },
    /// Tri-colored product-free families.
    Tricolor {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Check the family in this file (JSON array of k-tuples of element tuples).
        #[arg(long, conflicts_with_all = ["search", "bound"])]
        check: Option<PathBuf>,
        /// Exact maximum (groups of order at most 12).
        #[arg(long, conflicts_with = "bound")]
        search: bool,
        /// Σ t_i for the default zero-product family.
        #[arg(long)]
        bound: bool,
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
    },
    /// Covering of A_1 ⋯ A_k by a small set and rectangles.
    Cover {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// JSON array of k sets, each an array of element tuples in the chosen order.
        #[arg(long)]
        sets: PathBuf,
        /// Shares η_0..η_k, comma separated (default 1/(k+1) each).
        #[arg(long = "threshold-share", alias = "eta")]
        threshold_share: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TUPLE_CAP)]
        cap: usize,
    },
    /// Constructive Cauchy–Davenport in C_p.
    CauchyDavenport {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    /// Reduce a word in the augmentation generators to reduced monomials.
    ReduceWord {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

/// A rendered command result.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    /// Optional table used by the CSV and text renderers.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// `false` when a checked property failed.
    pub ok: bool,
}

impl Report {
    fn new(command: &'static str, inputs: Value, result: Value, ok: bool) -> Self {
        Report {
            command,
            inputs,
            result,
            table: None,
            ok,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "ok": self.ok,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable"),
            Format::Csv => match &self.table {
                Some((header, rows)) => {
                    let mut out = header.join(",");
                    for r in rows {
                        out.push('\n');
                        out.push_str(&r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                    }
                    out
                }
                None => {
                    let mut out = String::from("key,value");
                    let mut flat = Vec::new();
                    flatten("", &self.result, &mut flat);
                    for (k, v) in flat {
                        out.push('\n');
                        out.push_str(&format!("{},{}", csv_field(&k), csv_field(&v)));
                    }
                    out
                }
            },
            Format::Text => {
                let mut out = format!(
                    "{} ({})",
                    self.command,
                    if self.ok { "ok" } else { "VIOLATED" }
                );
                if let Some((header, rows)) = &self.table {
                    let widths: Vec<usize> = (0..header.len())
                        .map(|i| {
                            rows.iter()
                                .map(|r| r[i].len())
                                .chain([header[i].len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let line = |cells: &[String]| {
                        cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, w)| format!("{c:>w$}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    out.push('\n');
                    out.push_str(&line(header));
                    for r in rows {
                        out.push('\n');
                        out.push_str(&line(r));
                    }
                } else {
                    let mut flat = Vec::new();
                    flatten("", &self.result, &mut flat);
                    for (k, v) in flat {
                        out.push_str(&format!("\n{k}: {v}"));
                    }
                }
                out
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Rounds to 10 significant digits.
pub fn sig10(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float");
    json!(rounded)
}

fn fmt10(x: f64) -> String {
    format!(
        "{}",
        format!("{x:.9e}").parse::<f64>().expect("formatted float")
    )
}

fn load_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(build_group(&spec.parse::<GroupSpec>()?)?))
}

fn parse_list<T, F: Fn(&str) -> Result<T>>(s: &str, f: F) -> Result<Vec<T>> {
    s.split(',').map(|t| f(t.trim())).collect()
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    parse_list(s, |t| {
        t.parse::<u32>()
            .map_err(|_| Error::InvalidInput(format!("expected a non-negative integer, got {t:?}")))
    })
}

/// Builds the `k` filters from optional weights and shares.
fn filters(group: &FiniteGroup, k: usize, args: &FilterArgs) -> Result<Vec<DegreeFilter>> {
    let base = default_filter_for(group, k)?;
    let weights = match &args.weights {
        Some(w) => parse_list(w, parse_rational)?,
        None => base.weights.clone(),
    };
    let etas: Vec<Rational> = match &args.eta {
        Some(e) => parse_list(e, parse_rational)?,
        None => vec![Rational::new(1, k as i64); k],
    };
    if etas.len() != k {
        return Err(Error::InvalidFilter(format!(
            "{} shares for k = {k}",
            etas.len()
        )));
    }
    crate::subspaces::filter_family(&weights, &etas)
}

fn filter_json(f: &DegreeFilter) -> Value {
    json!({
        "weights": f.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "eta": f.eta.to_string(),
    })
}

fn elements_json(group: &FiniteGroup, elems: &[ElementIndex]) -> Value {
    json!(elems.iter().map(|&a| group.decode(a)).collect::<Vec<_>>())
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn element_from(group: &FiniteGroup, v: &Value) -> Result<ElementIndex> {
    let coords: Vec<u32> = serde_json::from_value(v.clone())
        .map_err(|_| Error::InvalidInput(format!("expected an element tuple, got {v}")))?;
    group.encode(&coords)
}

fn set_from(group: &FiniteGroup, v: &Value) -> Result<Vec<ElementIndex>> {
    v.as_array()
        .ok_or_else(|| {
            Error::InvalidInput(format!("expected an array of element tuples, got {v}"))
        })?
        .iter()
        .map(|e| element_from(group, e))
        .collect()
}

fn rates(orders: &str, k: usize) -> Result<Report> {
    let orders: Vec<RateOrder> = parse_list(orders, |t| t.parse())?;
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for &n in &orders {
        let r = rate(n, k)?;
        let per = match n {
            RateOrder::Finite(m) => r.kappa.map(|c| c / m as f64),
            RateOrder::Infinite => None,
        };
        rows.push(json!({
            "N": n.to_string(),
            "k": k,
            "a": sig10(r.value),
            "argmin": sig10(r.argmin),
            "kappa": r.kappa.map(sig10),
            "kappa_over_N": per.map(sig10),
        }));
        table.push(vec![
            n.to_string(),
            k.to_string(),
            fmt10(r.value),
            fmt10(r.argmin),
            r.kappa.map(fmt10).unwrap_or_else(|| "-".into()),
            per.map(fmt10).unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut rep = Report::new(
        "rates",
        json!({"N": orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(), "k": k}),
        json!({ "rows": rows }),
        true,
    );
    rep.table = Some((
        ["N", "k", "a_N(k)", "argmin", "kappa_N", "kappa_N/N"]
            .map(String::from)
            .to_vec(),
        table,
    ));
    Ok(rep)
}

fn codim_json(group: &FiniteGroup, x: &FilteredSubspace) -> Result<Value> {
    let exact = match group.spec() {
        GroupSpec::Abelian { orders } => Some(exact_codim(orders, x.filter())?.to_string()),
        _ => None,
    };
    Ok(json!({ "filter": filter_json(x.filter()), "t": x.codim(), "exact_codim": exact }))
}

fn bound(spec: &str, k: usize, eq: Option<&str>, fargs: &FilterArgs) -> Result<Report> {
    let group = load_group(spec)?;
    let eq = eq.map(str::parse::<EquationSpec>).transpose()?;
    let k = eq.as_ref().map_or(k, EquationSpec::k);
    let fs = filters(&group, k, fargs)?;
    let xs = crate::subspaces::build_family(&group, &fs)?;
    let mut result = Map::new();
    result.insert("order".into(), json!(group.order()));
    result.insert(
        "subspaces".into(),
        Value::Array(
            xs.iter()
                .map(|x| codim_json(&group, x))
                .collect::<Result<_>>()?,
        ),
    );
    if let GroupSpec::Abelian { orders } = group.spec() {
        let a = analytic_bounds(orders, k)?;
        result.insert("chernoff".into(), sig10(a.chernoff));
        result.insert(
            "chernoff_times_order".into(),
            sig10(a.chernoff * group.order() as f64),
        );
        result.insert("kappa_product".into(), sig10(a.kappa_product));
        let t = exact_codim(orders, &fs[0])?;
        result.insert("two_t".into(), json!((t * 2u32).to_string()));
        result.insert(
            "two_t_float".into(),
            sig10(2.0 * to_f64(&exact_codim(orders, &fs[0])?)),
        );
    }
    let mut ok = true;
    if let Some(eq) = &eq {
        let b = bound_equation_free(&group, eq, &xs)?;
        let via_cover = covering_equation_bound(eq.exponents(), &xs)?;
        ok = via_cover >= b.bound;
        result.insert(
            "equation".into(),
            serde_json::to_value(&b).expect("serializable"),
        );
        result.insert("covering_bound".into(), json!(via_cover));
    }
    Ok(Report::new(
        "bound",
        json!({"group": group.spec().to_string(), "k": k, "eq": eq.map(|e| e.to_string()),
               "filters": fs.iter().map(filter_json).collect::<Vec<_>>()}),
        Value::Object(result),
        ok,
    ))
}

fn verify_zero(spec: &str, k: usize, fargs: &FilterArgs) -> Result<Report> {
    let group = load_group(spec)?;
    let fs = filters(&group, k, fargs)?;
    let xs = crate::subspaces::build_family(&group, &fs)?;
    let rep = verify_zero_product(&xs)?;
    Ok(Report::new(
        "verify-zero",
        json!({"group": group.spec().to_string(), "k": k, "filters": fs.iter().map(filter_json).collect::<Vec<_>>()}),
        json!({
            "t": xs.iter().map(FilteredSubspace::codim).collect::<Vec<_>>(),
            "dims": xs.iter().map(FilteredSubspace::dim).collect::<Vec<_>>(),
            "verified": rep.verified,
            "tuples_checked": rep.tuples_checked,
            "witness": rep.witness,
        }),
        rep.verified,
    ))
}

enum Outcome {
    Done(Report),
    Usage(String),
}

fn search(
    spec: &str,
    eq: &str,
    exact: bool,
    set: Option<&Path>,
    cap: usize,
    budget: u64,
) -> Result<Outcome> {
    let group = load_group(spec)?;
    let eq: EquationSpec = eq.parse()?;
    let inputs = json!({"group": group.spec().to_string(), "eq": eq.to_string(), "exact": exact, "cap": cap, "budget": budget});
    if let Some(path) = set {
        let elems = set_from(&group, &read_json(path)?)?;
        let w = check_equation_free(&group, &eq, &elems)?;
        let free = w.is_free();
        return Ok(Outcome::Done(Report::new(
            "search",
            inputs,
            json!({
                "set": elements_json(&group, &w.set),
                "free": free,
                "violation": w.violation.map(|v| elements_json(&group, &v)),
            }),
            free,
        )));
    }
    let config = SearchConfig {
        cap,
        three_ap_cap: cap.max(81),
        node_budget: budget,
    };
    let effective_cap = if eq.is_three_ap() {
        config.three_ap_cap
    } else {
        cap
    };
    if exact && group.order() > effective_cap {
        return Ok(Outcome::Usage(format!(
            "exact search needs |G| ≤ {effective_cap}, got {}",
            group.order()
        )));
    }
    let r = max_equation_free(&group, &eq, &config);
    let xs = crate::subspaces::build_family(
        &group,
        &filters(
            &group,
            eq.k(),
            &FilterArgs {
                weights: None,
                eta: None,
            },
        )?,
    )?;
    let b = bound_equation_free(&group, &eq, &xs);
    let (bound, bound_error) = match &b {
        Ok(b) => (Some(b.bound), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let sound = bound.map_or(true, |b| r.size <= b);
    let certified = r.exact && bound.is_some() && sound;
    let ok = sound && (!exact || r.exact);
    Ok(Outcome::Done(Report::new(
        "search",
        inputs,
        json!({
            "size": r.size,
            "witness": elements_json(&group, &r.witness),
            "exact": r.exact,
            "bound": bound,
            "bound_error": bound_error,
            "certified": certified,
        }),
        ok,
    )))
}

fn tricolor(
    spec: &str,
    k: usize,
    check: Option<&Path>,
    do_search: bool,
    budget: u64,
) -> Result<Report> {
    let group = load_group(spec)?;
    let inputs = json!({"group": group.spec().to_string(), "k": k});
    if let Some(path) = check {
        let v = read_json(path)?;
        let tuples: Vec<Vec<ElementIndex>> = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("expected an array of tuples".into()))?
            .iter()
            .map(|t| set_from(&group, t))
            .collect::<Result<_>>()?;
        if let Some(t) = tuples.iter().find(|t| t.len() != k) {
            return Err(Error::InvalidInput(format!(
                "tuple of length {} for k = {k}",
                t.len()
            )));
        }
        let r = check_tricolor(&group, &tuples)?;
        return Ok(Report::new(
            "tricolor",
            inputs,
            json!({"mode": "check", "size": tuples.len(), "valid": r.valid, "violation": r.violation}),
            r.valid,
        ));
    }
    if do_search {
        let (family, r) = max_tricolor(&group, k, 12, budget)?;
        let fam: Vec<Value> = family.iter().map(|t| elements_json(&group, t)).collect();
        return Ok(Report::new(
            "tricolor",
            inputs,
            json!({"mode": "search", "size": r.size, "exact": r.exact, "family": fam}),
            true,
        ));
    }
    let f = default_filter_for(&group, k)?;
    let x = build_filtered_subspace(&group, k, &f)?;
    let xs = vec![x; k];
    let b = tricolor_bound(&xs)?;
    Ok(Report::new(
        "tricolor",
        inputs,
        json!({"mode": "bound", "bound": b, "t": xs.iter().map(FilteredSubspace::codim).collect::<Vec<_>>()}),
        true,
    ))
}

fn cover(spec: &str, k: usize, sets: &Path, shares: Option<&str>, cap: usize) -> Result<Report> {
    let group = load_group(spec)?;
    let v = read_json(sets)?;
    let sets: Vec<Vec<ElementIndex>> = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of sets".into()))?
        .iter()
        .map(|s| set_from(&group, s))
        .collect::<Result<_>>()?;
    if sets.len() != k {
        return Err(Error::InvalidInput(format!(
            "{} sets for k = {k}",
            sets.len()
        )));
    }
    let fs = filters(
        &group,
        k + 1,
        &FilterArgs {
            weights: None,
            eta: shares.map(String::from),
        },
    )?;
    let xs = crate::subspaces::build_family(&group, &fs)?;
    let inst = CoverInstance::new(&group, xs, sets.clone())?;
    let res = compute_cover_with_cap(&inst, cap)?;
    let verdict = verify_cover(&inst, &res);
    let ledger: Map<String, Value> = res
        .ledger
        .iter()
        .map(|(g, r)| (format!("{:?}", group.decode(*g)), json!(r.to_string())))
        .collect();
    Ok(Report::new(
        "cover",
        json!({
            "group": group.spec().to_string(),
            "k": k,
            "sets": sets.iter().map(|s| elements_json(&group, s)).collect::<Vec<_>>(),
            "ordering": "as listed",
            "filters": fs.iter().map(filter_json).collect::<Vec<_>>(),
        }),
        json!({
            "t": inst.codims(),
            "B": res.b.iter().map(|b| elements_json(&group, b)).collect::<Vec<_>>(),
            "C": elements_json(&group, &res.c),
            "ledger": ledger,
            "dim_W": res.dim_w,
            "dim_W0": res.dim_w0,
            "tuples": res.tuples,
            "verified": verdict.verified,
            "uncovered": verdict.uncovered.map(|g| group.decode(g)),
            "violations": verdict.violations,
        }),
        verdict.verified,
    ))
}

fn cd(p: u32, a: &str, b: &str, c: &str) -> Result<Report> {
    let (a, b, c) = (parse_u32_list(a)?, parse_u32_list(b)?, parse_u32_list(c)?);
    let r = cauchy_davenport(p, &a, &b, &c)?;
    let ok = r.verified();
    Ok(Report::new(
        "cauchy-davenport",
        json!({"p": p, "A": a, "B": b, "C": c}),
        serde_json::to_value(&r).expect("serializable"),
        ok,
    ))
}

fn reduce_word(spec: &str, word: &str) -> Result<Report> {
    let group = load_group(spec)?;
    let mut rw = Rewriter::new(&group)?;
    let w = rw.parse_word(word)?;
    let r = rw.reduce(&w)?;
    let agrees = rw.expand(&r)? == rw.evaluate(&w)?;
    let terms: Vec<Value> = r
        .terms
        .iter()
        .map(|(m, c)| {
            json!({
                "monomial": format_word(&rw.monomial_word(m)),
                "exponents": m,
                "coefficient": c,
                "degree": rw.monomial_degree(m),
            })
        })
        .collect();
    Ok(Report::new(
        "reduce-word",
        json!({"group": group.spec().to_string(), "word": format_word(&w)}),
        json!({
            "degree": rw.degree(&w),
            "max_degree": rw.max_degree(),
            "terms": terms,
            "matches_dense_product": agrees,
        }),
        agrees,
    ))
}

fn selftest(criterion: Option<u32>) -> Result<Report> {
    let reports = match criterion {
        Some(n) => vec![acceptance::run_criterion(n)
            .ok_or_else(|| Error::InvalidInput(format!("no criterion {n}")))?],
        None => acceptance::run_all(),
    };
    let ok = reports.iter().all(|r| r.passed());
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.number.to_string(),
                r.title.to_string(),
                if r.passed() { "PASS" } else { "FAIL" }.to_string(),
                format!("{:.3}", r.elapsed_secs),
                r.failures()
                    .iter()
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect::<Vec<_>>()
                    .join("; "),
            ]
        })
        .collect();
    let mut rep = Report::new(
        "selftest",
        json!({"criterion": criterion, "seed": acceptance::SEED}),
        json!({
            "criteria": reports.iter().map(|r| {
                let mut v = serde_json::to_value(r).expect("serializable");
                v["passed"] = json!(r.passed());
                v
            }).collect::<Vec<_>>(),
            "passed": ok,
        }),
        ok,
    );
    rep.table = Some((
        ["criterion", "title", "status", "seconds", "failures"]
            .map(String::from)
            .to_vec(),
        rows,
    ));
    Ok(rep)
}

fn configure_workers(explicit: Option<usize>) -> std::result::Result<(), String> {
    let n =
        match explicit {
            Some(n) => Some(n),
            None => match std::env::var("CAPRING_WORKERS") {
                Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                    format!("CAPRING_WORKERS must be a positive integer, got {s:?}")
                })?),
                Err(_) => None,
            },
        };
    if let Some(n) = n {
        if n == 0 {
            return Err("worker count must be positive".into());
        }
        // A pool may already exist when called twice in one process; the first setting wins.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let rep = match &cli.command {
        Command::Rates { orders, k } => rates(orders, *k)?,
        Command::Bound {
            group,
            k,
            eq,
            filter,
        } => bound(group, *k, eq.as_deref(), filter)?,
        Command::VerifyZero { group, k, filter } => verify_zero(group, *k, filter)?,
        Command::Search {
            group,
            eq,
            exact,
            set,
            cap,
            budget,
        } => return search(group, eq, *exact, set.as_deref(), *cap, *budget),
        Command::Tricolor {
            group,
            k,
            check,
            search,
            bound: _,
            budget,
        } => tricolor(group, *k, check.as_deref(), *search, *budget)?,
        Command::Cover {
            group,
            k,
            sets,
            threshold_share,
            cap,
        } => cover(group, *k, sets, threshold_share.as_deref(), *cap)?,
        Command::CauchyDavenport { p, a, b, c } => cd(*p, a, b, c)?,
        Command::ReduceWord { group, word } => reduce_word(group, word)?,
        Command::Selftest { criterion } => selftest(*criterion)?,
    };
    Ok(Outcome::Done(rep))
}

/// Runs the CLI on `args` (including the program name), printing the report.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(msg) = configure_workers(cli.workers) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match dispatch(&cli) {
        Ok(Outcome::Done(rep)) => {
            println!("{}", rep.render(cli.format));
            ExitCode::from(if rep.ok { 0 } else { 1 })
        }
        Ok(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
