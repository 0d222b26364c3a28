//! Command-line front end. The `dncodes` binary forwards its arguments to
//! [`run`], which returns the exit code and both output streams.
//!
//! Exit codes: 0 success, 2 precondition violation, 3 budget exceeded,
//! 4 verification failure, 1 anything else.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::census::{
    census, containment_count, enumerate_codes, enumerate_matching, lemma_bound, search_best, Family, Property, Scope,
    SearchConfig, SearchMode, ENUMERATION_BUDGET,
};
use crate::codekit::{CodeSpec, CodeSpecJson};
use crate::error::Error;
use crate::factorshape::{dickson_factorization, factor_shape, Sign};
use crate::galois::{entropy_inverse, entropy_q, field_of_order, FieldCtx, Poly};
use crate::graydist::{gray_generator_matrix, gray_pair, min_distance, GrayMap, DEFAULT_DISTANCE_BUDGET};
use crate::semiring::RElement;
use crate::tables::{verify_table, Status};

/// Environment variable that overrides `--workers`.
pub const WORKERS_ENV: &str = "WORKBENCH_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "dncodes", version, about = "Double circulant and negacirculant codes over F_q + uF_q")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_sign)]
    pub sign: Sign,
}

/// A spec from a JSON file, or from table-style strings in decreasing powers.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_parser = parse_sign)]
    pub sign: Option<Sign>,
    /// Coefficients of a1 in decreasing powers, e.g. "1 2 1".
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor x^n -+ 1 into self-reciprocal factors and reciprocal pairs.
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        /// Cross-check against the Dickson closed form (x^{2^a} + 1 only).
        #[arg(long)]
        dickson: bool,
    },
    /// Closed-form count of a family, with the exhaustive count when requested.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_property)]
        family: Property,
        /// Also run the exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = ENUMERATION_BUDGET, value_parser = parse_budget)]
        budget: u128,
    },
    /// Exhaustive enumeration of specs satisfying a predicate.
    Enumerate {
        #[command(flatten)]
        field: FieldArgs,
        /// sd, lcd or all.
        #[arg(long, default_value = "all")]
        family: String,
        /// Print every matching spec.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = ENUMERATION_BUDGET, value_parser = parse_budget)]
        budget: u128,
    },
    /// Self-duality and LCD predicates of one spec.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Residues of a(x) modulo each irreducible factor of the modulus.
    Constituents {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Gray map of one element, or the Gray image of a spec.
    Gray {
        #[arg(long, default_value = "phi", value_parser = parse_map)]
        map: GrayMap,
        /// An element a+ub written "a,b".
        #[arg(long)]
        element: Option<String>,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Exact minimum distance of the Gray image of a spec.
    Distance {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "phi", value_parser = parse_map)]
        map: GrayMap,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET, value_parser = parse_budget)]
        budget: u128,
    },
    /// Best Gray-image distance within a family.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_property)]
        family: Property,
        #[arg(long, default_value = "random", value_parser = parse_mode)]
        mode: SearchMode,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET, value_parser = parse_budget)]
        budget: u128,
    },
    /// Re-verify the built-in table rows.
    VerifyTables {
        #[arg(long)]
        table: u8,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET, value_parser = parse_budget)]
        budget: u128,
    },
    /// Relative distance delta_0 with H_q(delta_0) = c, and containment bounds.
    Bound {
        #[arg(long)]
        q: u64,
        /// Defaults to 1/8, 1/4 and 1/16.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_sign)]
        sign: Option<Sign>,
        /// Word (e | f) as "a,b a,b ..." for an exact containment count.
        #[arg(long)]
        word: Option<String>,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse::<Sign>().map_err(|e| e.to_string())
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse::<Property>().map_err(|e| e.to_string())
}

fn parse_map(s: &str) -> Result<GrayMap, String> {
    s.parse::<GrayMap>().map_err(|e| e.to_string())
}

/// A message or spec count, either an integer or a float such as `1e9`.
fn parse_budget(s: &str) -> Result<u128, String> {
    if let Ok(v) = s.parse::<u128>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 && v < u128::MAX as f64 => Ok(v.round() as u128),
        _ => Err(format!("not a budget: {s:?}")),
    }
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse::<SearchMode>().map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Lib(Error),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Inconsistent(_) => 1,
        _ => 2,
    }
}

struct Output {
    stdout: String,
    stderr: String,
}

impl Output {
    fn emit(&mut self, format: Format, value: &Value, table: impl FnOnce() -> String) {
        match format {
            Format::Json => {
                self.stdout.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
                self.stdout.push('\n');
            }
            Format::Table => {
                self.stdout.push_str(&table());
                if !self.stdout.ends_with('\n') {
                    self.stdout.push('\n');
                }
            }
        }
    }

    fn warn(&mut self, msg: &str) {
        self.stderr.push_str("warning: ");
        self.stderr.push_str(msg);
        self.stderr.push('\n');
    }
}

/// Parses `args` (program name first) and executes the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let workers = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.global.workers)
        .unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut out = Output { stdout: String::new(), stderr: String::new() };
    let result = pool.install(|| dispatch(&cli, &mut out));
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            out.stderr.push_str(&format!("error: {e}\n"));
            exit_code(&e)
        }
        Err(Failure::Io(msg)) => {
            out.stderr.push_str(&format!("error: {msg}\n"));
            2
        }
        Err(Failure::Verification(msg)) => {
            out.stderr.push_str(&format!("verification failed: {msg}\n"));
            4
        }
    };
    Outcome { code, stdout: out.stdout, stderr: out.stderr }
}

fn field(q: u64) -> Result<FieldCtx, Failure> {
    Ok(field_of_order(q)?)
}

fn load_spec(args: &SpecArgs) -> Result<CodeSpec, Failure> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let j: CodeSpecJson = serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return Ok(CodeSpec::from_json(&j)?);
    }
    match (args.q, args.sign, &args.a1, &args.a2) {
        (Some(q), Some(sign), Some(a1), Some(a2)) => Ok(CodeSpec::from_decreasing(&field(q)?, sign, a1, a2)?),
        _ => Err(Error::Precondition("give --spec FILE, or --q, --sign, --a1 and --a2".into()).into()),
    }
}

fn parse_element(s: &str, f: &FieldCtx) -> Result<RElement, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Error::Domain(format!("element {s:?} is not of the form a,b")).into());
    };
    let parse = |t: &str| -> Result<u32, Failure> {
        let v: u32 = t.parse().map_err(|_| Error::Domain(format!("{t:?} is not an integer")))?;
        if v >= f.q() {
            return Err(Error::Domain(format!("{v} is not an element of F_{}", f.q())).into());
        }
        Ok(v)
    };
    Ok(RElement::new(parse(a)?, parse(b)?))
}

fn poly_list(ps: &[&Poly], f: &FieldCtx) -> String {
    ps.iter().map(|p| format!("({})", p.display(f))).collect::<Vec<_>>().join(" ")
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let fmt = cli.global.format;
    match &cli.command {
        Command::Factor { field: fa, dickson } => {
            let f = field(fa.q)?;
            let shape = factor_shape(fa.sign, fa.n, &f)?;
            let mut value = json!({ "shape": shape.to_json(&f) });
            let mut agree = None;
            if *dickson {
                if fa.sign != Sign::Plus || !fa.n.is_power_of_two() || fa.n < 2 {
                    return Err(Error::Precondition("--dickson needs --sign plus and n a power of two".into()).into());
                }
                let closed = dickson_factorization(fa.n.trailing_zeros(), &f)?;
                let mut generic: Vec<Poly> = shape.factors().into_iter().cloned().collect();
                let mut closed_sorted = closed.clone();
                generic.sort_by(|a, b| a.canonical_cmp(b));
                closed_sorted.sort_by(|a, b| a.canonical_cmp(b));
                agree = Some(generic == closed_sorted);
                value["dickson"] = json!({
                    "factors": closed.iter().map(|p| p.to_json(&f)).collect::<Vec<_>>(),
                    "agree": generic == closed_sorted,
                });
            }
            out.emit(fmt, &value, || {
                let mut s = format!("x^{}{}1 over F_{}\n", fa.n, if fa.sign == Sign::Plus { "+" } else { "-" }, fa.q);
                let sr: Vec<&Poly> = shape.self_reciprocal.iter().map(|g| &g.factor).collect();
                s += &format!("self-reciprocal: {}\n", poly_list(&sr, &f));
                for p in &shape.pairs {
                    s += &format!("pair: ({}) ({})\n", p.h.display(&f), p.h_star.display(&f));
                }
                if let Some(a) = agree {
                    s += &format!("dickson: {}\n", if a { "agree" } else { "MISMATCH" });
                }
                s
            });
            if agree == Some(false) {
                return Err(Failure::Verification("Dickson and generic factorizations differ".into()));
            }
        }
        Command::Count { field: fa, family, oracle, budget } => {
            let f = field(fa.q)?;
            let fam = Family::new(*family, fa.sign);
            let res = census(&f, fa.n, fam)?;
            if let Some(w) = &res.warning {
                out.warn(w);
            }
            let run_oracle = *oracle || res.closed_form.is_none();
            let oracle_count = if run_oracle {
                Some(enumerate_codes(&f, fa.n, fa.sign, |s| fam.accepts(s), *budget)?)
            } else {
                None
            };
            let mut value = serde_json::to_value(&res).expect("serializable");
            value["oracle"] = json!(oracle_count);
            out.emit(fmt, &value, || {
                let closed = res.closed_form.as_ref().map_or("-".into(), |c| c.to_string());
                let orc = oracle_count.map_or("-".into(), |c| c.to_string());
                format!(
                    "{} q={} n={} closed_form={} constituent_count={} oracle={}",
                    fam, res.q, res.n, closed, res.constituent_count, orc
                )
            });
        }
        Command::Enumerate { field: fa, family, list, budget } => {
            let f = field(fa.q)?;
            let pred: Box<dyn Fn(&CodeSpec) -> bool + Sync> = match family.to_ascii_lowercase().as_str() {
                "all" => Box::new(|_| true),
                other => {
                    let fam = Family::new(other.parse()?, fa.sign);
                    Box::new(move |s| fam.accepts(s))
                }
            };
            let mut value = json!({ "q": fa.q, "n": fa.n, "sign": fa.sign, "family": family });
            if *list {
                let specs = enumerate_matching(&f, fa.n, fa.sign, pred, *budget)?;
                value["count"] = json!(specs.len());
                value["specs"] = json!(specs.iter().map(CodeSpec::to_json).collect::<Vec<_>>());
                out.emit(fmt, &value, || {
                    let mut s = format!("count {}\n", specs.len());
                    for spec in &specs {
                        let (a1, a2) = spec.to_decreasing();
                        s += &format!("{a1} | {a2}\n");
                    }
                    s
                });
            } else {
                let count = enumerate_codes(&f, fa.n, fa.sign, pred, *budget)?;
                value["count"] = json!(count);
                out.emit(fmt, &value, || format!("count {count}"));
            }
        }
        Command::Check { spec } => {
            let spec = load_spec(spec)?;
            let (sd, lcd) = (spec.is_self_dual(), spec.is_lcd());
            let value = json!({ "spec": spec.to_json(), "self_dual": sd, "lcd": lcd });
            out.emit(fmt, &value, || {
                let (a1, a2) = spec.to_decreasing();
                format!("{a1} | {a2}  self_dual={sd} lcd={lcd}")
            });
        }
        Command::Constituents { spec } => {
            let spec = load_spec(spec)?;
            let f = spec.field().clone();
            let shape = factor_shape(spec.sign(), spec.n(), &f)?;
            let view = spec.constituents(&shape)?;
            let entries: Vec<Value> = view
                .entries
                .iter()
                .map(|c| {
                    json!({
                        "factor": c.factor.to_json(&f),
                        "kind": c.kind,
                        "value": { "a": c.value.a.to_json(&f), "b": c.value.b.to_json(&f) },
                    })
                })
                .collect();
            let value = json!({ "spec": spec.to_json(), "constituents": entries, "self_dual": view.is_self_dual() });
            out.emit(fmt, &value, || {
                view.entries
                    .iter()
                    .map(|c| {
                        format!(
                            "{:<16} ({})  a = ({}) + u({})",
                            format!("{:?}", c.kind),
                            c.factor.display(&f),
                            c.value.a.display(&f),
                            c.value.b.display(&f)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::Gray { map, element, spec } => {
            if let Some(el) = element {
                let q = spec.q.ok_or_else(|| Error::Precondition("--element needs --q".into()))?;
                let f = field(q)?;
                let z = parse_element(el, &f)?;
                let (x, y) = gray_pair(*map, z, &f)?;
                let value = json!({ "map": map, "q": q, "element": [z.a, z.b], "image": [x, y] });
                out.emit(fmt, &value, || format!("({x},{y})"));
            } else {
                let spec = load_spec(spec)?;
                let code = gray_generator_matrix(&spec, *map)?;
                let mut value = serde_json::to_value(code.to_json()).expect("serializable");
                value["self_dual"] = json!(code.is_self_dual());
                value["lcd"] = json!(code.is_lcd());
                out.emit(fmt, &value, || {
                    code.generator()
                        .iter()
                        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("\n")
                });
            }
        }
        Command::Distance { spec, map, budget } => {
            let spec = load_spec(spec)?;
            let code = gray_generator_matrix(&spec, *map)?;
            let report = min_distance(&code, *budget)?;
            let value = serde_json::to_value(&report).expect("serializable");
            out.emit(fmt, &value, || {
                let p = report.params;
                format!("[{}, {}, {}]", p[0], p[1], p[2])
            });
        }
        Command::Search { field: fa, family, mode, trials, budget } => {
            let f = field(fa.q)?;
            let cfg = SearchConfig {
                mode: *mode,
                trials: *trials,
                seed: cli.global.seed,
                distance_budget: *budget,
                enumeration_budget: ENUMERATION_BUDGET,
            };
            let report = search_best(&f, fa.n, Family::new(*family, fa.sign), &cfg)?;
            let value = serde_json::to_value(&report).expect("serializable");
            out.emit(fmt, &value, || {
                let p = report.params;
                format!("{}  {}  {}  [{}, {}, {}]", report.n, report.a1, report.a2, p[0], p[1], p[2])
            });
        }
        Command::VerifyTables { table, max_n, budget } => {
            let rows = verify_table(*table, *max_n, *budget)?;
            let value = json!({ "table": table, "rows": rows });
            out.emit(fmt, &value, || rows.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"));
            let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} row(s) of table {table} failed")));
            }
        }
        Command::Bound { q, c, n, sign, word } => {
            let cs = match c {
                Some(c) => vec![*c],
                None => vec![0.125, 0.25, 0.0625],
            };
            let deltas: Vec<Value> = cs
                .iter()
                .map(|&c| -> Result<Value, Failure> {
                    let d = entropy_inverse(c, *q)?;
                    Ok(json!({ "c": c, "delta0": d, "entropy": entropy_q(d, *q)? }))
                })
                .collect::<Result<_, _>>()?;
            let mut value = json!({ "q": q, "entropy_inverse": deltas });
            if let (Some(n), Some(sign)) = (n, sign) {
                let f = field(*q)?;
                let all = lemma_bound(&f, *n, *sign, Scope::All)?;
                let sd = lemma_bound(&f, *n, *sign, Scope::SelfDual)?;
                value["containment_bound"] = json!({ "n": n, "sign": sign, "all": all.to_string(), "self_dual": sd.to_string() });
                if let Some(w) = word {
                    let z = w.split_whitespace().map(|t| parse_element(t, &f)).collect::<Result<Vec<_>, _>>()?;
                    if z.len() != 2 * n {
                        return Err(Error::Precondition(format!("word has {} entries, expected {}", z.len(), 2 * n)).into());
                    }
                    let count_all = containment_count(&z, &f, *sign, Scope::All, ENUMERATION_BUDGET)?;
                    let count_sd = containment_count(&z, &f, *sign, Scope::SelfDual, ENUMERATION_BUDGET)?;
                    value["containment_count"] = json!({ "all": count_all, "self_dual": count_sd });
                }
            }
            out.emit(fmt, &value, || {
                let mut s = String::new();
                for d in value["entropy_inverse"].as_array().unwrap() {
                    s += &format!("c={} delta0={:.12}\n", d["c"], d["delta0"].as_f64().unwrap());
                }
                if let Some(b) = value.get("containment_bound") {
                    s += &format!("containment bound: all {} self-dual {}\n", b["all"], b["self_dual"]);
                }
                if let Some(cnt) = value.get("containment_count") {
                    s += &format!("containment count: all {} self-dual {}\n", cnt["all"]["count"], cnt["self_dual"]["count"]);
                }
                s
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("dncodes").chain(args.iter().copied()))
    }

    #[test]
    fn factor_examples() {
        let o = call(&["factor", "--q", "3", "--n", "8", "--sign", "plus", "--dickson", "--format", "table"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("dickson: agree"));
        let o = call(&["factor", "--q", "4", "--n", "2", "--sign", "plus"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn count_examples() {
        let o = call(&["count", "--q", "5", "--n", "3", "--sign", "minus", "--family", "sd"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["closed_form"], "144");
        let o = call(&["count", "--q", "7", "--n", "3", "--sign", "minus", "--family", "sd"]);
        assert_eq!(o.code, 0);
        assert!(o.stderr.contains("warning"));
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["closed_form"], "0");
    }

    #[test]
    fn gray_and_bound() {
        let o = call(&["gray", "--map", "phi", "--q", "5", "--element", "0,1", "--format", "table"]);
        assert_eq!(o.stdout.trim(), "(4,1)");
        let o = call(&["bound", "--q", "5", "--c", "0.125"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        let h = v["entropy_inverse"][0]["entropy"].as_f64().unwrap();
        assert!((h - 0.125).abs() < 1e-9);
    }

    #[test]
    fn budget_and_usage_exit_codes() {
        let o = call(&["enumerate", "--q", "5", "--n", "3", "--sign", "minus", "--budget", "10"]);
        assert_eq!(o.code, 3);
        let o = call(&["count", "--q", "5"]);
        assert_eq!(o.code, 2);
        let o = call(&["check", "--q", "5", "--sign", "minus", "--a1", "2 0", "--a2", "3 2"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["self_dual"], true);
    }
}
