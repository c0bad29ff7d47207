use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use opalg_core::catalog::{self, CatalogEntry};
use opalg_core::dsl::{self, Diagnostics};
use opalg_core::gs::{self, Bounds, CheckOptions, GsError, REPORT_SCHEMA_VERSION};
use opalg_core::opi::OpiPattern;
use opalg_core::pattern::Params;
use opalg_core::rewrite::{Outcome, Reducer, RewriteError, StabilityViolation, DEFAULT_BUDGET};
use opalg_core::{Alphabet, OrderKind, Poly, Rational};

#[derive(Parser)]
#[command(name = "opalg", version, about = "Operated polynomials, monomial orders and bounded Groebner-Shirshov checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a source file (or stdin), or a single expression, and print it back canonically.
    Parse {
        /// Source file; `-` or absent reads stdin.
        input: Option<PathBuf>,
        /// Parse this polynomial instead of a source file.
        #[arg(long, conflicts_with = "input")]
        expr: Option<String>,
        #[command(flatten)]
        gens: GensArg,
    },
    /// Compare two words: prints LT, EQ or GT.
    Compare {
        order: OrderKind,
        left: String,
        right: String,
        #[command(flatten)]
        gens: GensArg,
    },
    /// Leading monomial and coefficient of a polynomial.
    Leading {
        #[arg(long)]
        order: OrderKind,
        #[command(flatten)]
        poly: PolyInput,
        #[command(flatten)]
        gens: GensArg,
    },
    /// Reduce a polynomial by identity instances.
    Reduce {
        #[arg(long)]
        order: OrderKind,
        /// Comma-separated catalog ids or names defined in --defs.
        #[arg(long, value_delimiter = ',', required = true)]
        opi: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Instance)]
        mode: ModeArg,
        /// Step budget for pattern mode.
        #[arg(long, env = "OPALG_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        defs: DefsArg,
        #[command(flatten)]
        poly: PolyInput,
        #[command(flatten)]
        gens: GensArg,
    },
    /// Check every composition among bounded instances.
    CheckGs {
        #[arg(long)]
        order: OrderKind,
        #[arg(long, value_delimiter = ',', required = true)]
        opi: Vec<String>,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        defs: DefsArg,
        #[arg(long, default_value_t = Bounds::default().max_z_degree)]
        max_zdeg: u32,
        #[arg(long, default_value_t = Bounds::default().max_l_degree)]
        max_ldeg: u32,
        #[arg(long, default_value_t = Bounds::default().max_depth)]
        max_depth: u32,
        /// Number of generators argument words are built from.
        #[arg(long, default_value_t = Bounds::default().pool)]
        pool: usize,
        /// Include every composition record with its trace.
        #[arg(long)]
        emit_records: bool,
        /// Stop at the first nontrivial composition.
        #[arg(long)]
        fail_fast: bool,
    },
    /// List the identity catalog.
    Catalog {
        /// Show a single entry.
        id: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Instance,
    Pattern,
}

#[derive(Args)]
struct GensArg {
    /// Declare generators in this order; other names are then rejected.
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<String>>,
}

#[derive(Args)]
struct ParamsArg {
    /// Parameter bindings such as d=1,b=-2,lambda=3/5.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

#[derive(Args)]
struct DefsArg {
    /// Source file with extra `opi` definitions and `params`.
    #[arg(long)]
    defs: Option<PathBuf>,
}

#[derive(Args)]
struct PolyInput {
    /// The polynomial; read from --file or stdin when absent.
    poly: Option<String>,
    #[arg(long, conflicts_with = "poly")]
    file: Option<PathBuf>,
}

/// Everything that ends a run early with exit code 2.
enum Failure {
    Usage(String),
    Parse { src: String, diags: Diagnostics },
}

impl From<GsError> for Failure {
    fn from(e: GsError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

/// What a successful command prints, and whether its verdict failed.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.cmd) {
        Ok(out) => {
            match format {
                Format::Text => emit(&out.text),
                Format::Json => emit(&pretty(&out.json)),
            }
            ExitCode::from(u8::from(out.failed))
        }
        Err(f) => {
            let (message, diags) = match &f {
                Failure::Usage(m) => (m.clone(), Vec::new()),
                Failure::Parse { diags, .. } => (diags.first_message().to_string(), diags.0.clone()),
            };
            match format {
                Format::Text => match &f {
                    Failure::Usage(m) => eprintln!("error: {m}"),
                    Failure::Parse { src, diags } => eprintln!("{}", diags.render(src)),
                },
                Format::Json => {
                    let ds: Vec<Value> = diags
                        .iter()
                        .map(|d| {
                            json!({
                                "line": d.line,
                                "column": d.column,
                                "length": d.length,
                                "message": d.message,
                                "note": d.note,
                            })
                        })
                        .collect();
                    let v = json!({
                        "schema_version": REPORT_SCHEMA_VERSION,
                        "error": { "message": message, "diagnostics": ds },
                    });
                    emit(&pretty(&v));
                }
            }
            ExitCode::from(2)
        }
    }
}

/// Writes a line to stdout; a closed pipe is not an error worth reporting.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}

fn run(cmd: Command) -> Res<Output> {
    match cmd {
        Command::Parse { input, expr, gens } => cmd_parse(input, expr, &gens),
        Command::Compare { order, left, right, gens } => cmd_compare(order, &left, &right, &gens),
        Command::Leading { order, poly, gens } => cmd_leading(order, &poly, &gens),
        Command::Reduce {
            order,
            opi,
            mode,
            budget,
            params,
            defs,
            poly,
            gens,
        } => cmd_reduce(order, &opi, mode, budget, &params, &defs, &poly, &gens),
        Command::CheckGs {
            order,
            opi,
            params,
            defs,
            max_zdeg,
            max_ldeg,
            max_depth,
            pool,
            emit_records,
            fail_fast,
        } => {
            let bounds = Bounds {
                max_z_degree: max_zdeg,
                max_l_degree: max_ldeg,
                max_depth,
                pool,
            };
            let options = CheckOptions {
                emit_records,
                fail_fast,
                deadline: None,
            };
            cmd_check_gs(order, &opi, &params, &defs, bounds, options)
        }
        Command::Catalog { id } => cmd_catalog(id.as_deref()),
    }
}

fn read_source(path: Option<&PathBuf>) -> Res<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

impl GensArg {
    /// The starting alphabet and whether unseen names may be declared on the fly.
    fn alphabet(&self) -> Res<(Alphabet, bool)> {
        match &self.gens {
            None => Ok((Alphabet::new(), true)),
            Some(names) => {
                let names: Vec<&str> = names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
                Alphabet::from_names(names)
                    .map(|a| (a, false))
                    .map_err(|e| Failure::Usage(e.to_string()))
            }
        }
    }
}

impl PolyInput {
    fn text(&self) -> Res<String> {
        match &self.poly {
            Some(s) => Ok(s.clone()),
            None => Ok(read_source(self.file.as_ref())?.trim().to_string()),
        }
    }
}

fn parse_poly(src: &str, alphabet: &mut Alphabet, auto: bool) -> Res<Poly> {
    dsl::parse_poly(src, alphabet, auto).map_err(|diags| Failure::Parse {
        src: src.to_string(),
        diags,
    })
}

fn parse_params(arg: &ParamsArg, base: Params) -> Res<Params> {
    let mut params = base;
    for b in &arg.params {
        let b = b.trim();
        if b.is_empty() {
            continue;
        }
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("parameter binding `{b}` is not of the form name=value")))?;
        let v: Rational = value
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("`{}` is not a rational number", value.trim())))?;
        params.set(name.trim(), v);
    }
    Ok(params)
}

/// Resolves identity names against `--defs` first, then the catalog.
fn resolve(names: &[String], defs: &DefsArg, params: &ParamsArg) -> Res<(Vec<OpiPattern>, Params)> {
    let (user, base) = match &defs.defs {
        None => (Vec::new(), Params::defaults()),
        Some(p) => {
            let src = read_source(Some(p))?;
            let parsed = dsl::parse(&src).map_err(|diags| Failure::Parse { src, diags })?;
            let base = parsed.effective_params();
            (parsed.opis, base)
        }
    };
    let params = parse_params(params, base)?;
    let mut out = Vec::new();
    for n in names {
        let n = n.trim();
        if let Some(p) = user.iter().find(|p| p.id == n) {
            out.push(p.clone());
        } else if let Some(e) = catalog::lookup(n) {
            out.push(e.pattern);
        } else {
            return Err(Failure::Usage(format!(
                "no identity named `{n}`; run `opalg catalog` for the list"
            )));
        }
    }
    Ok((out, params))
}

fn cmd_parse(input: Option<PathBuf>, expr: Option<String>, gens: &GensArg) -> Res<Output> {
    if let Some(e) = expr {
        let (mut a, auto) = gens.alphabet()?;
        let p = parse_poly(&e, &mut a, auto)?;
        let r = p.render(&a, None);
        return Ok(Output {
            json: json!({ "schema_version": REPORT_SCHEMA_VERSION, "poly": r, "gens": a.names() }),
            text: r,
            failed: false,
        });
    }
    let src = read_source(input.as_ref())?;
    let parsed = dsl::parse(&src).map_err(|diags| Failure::Parse { src: src.clone(), diags })?;
    let a = &parsed.alphabet;
    let mut lines = Vec::new();
    if !a.is_empty() {
        lines.push(format!("gens {};", a.names().join(" ")));
    }
    if let Some(o) = parsed.order {
        lines.push(format!("order {o};"));
    }
    let ps: Vec<String> = parsed.params.iter().map(|(n, v)| format!("{n}={v}")).collect();
    if !ps.is_empty() {
        lines.push(format!("params {};", ps.join(", ")));
    }
    let mut opis = Vec::new();
    for p in &parsed.opis {
        let body = p.body.render(&p.vars, a);
        lines.push(format!("opi {}({}) = {};", p.id, p.vars.join(","), body));
        opis.push(json!({ "name": p.id, "vars": p.vars, "body": body }));
    }
    let polys: Vec<String> = parsed.polys.iter().map(|p| p.render(a, None)).collect();
    for p in &polys {
        lines.push(format!("{p};"));
    }
    Ok(Output {
        text: lines.join("\n"),
        json: json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "gens": a.names(),
            "order": parsed.order.map(|o| o.name()),
            "params": parsed.params.iter().map(|(n, v)| (n.clone(), Value::from(v.to_string()))).collect::<serde_json::Map<_, _>>(),
            "opis": opis,
            "polys": polys,
        }),
        failed: false,
    })
}

fn cmd_compare(order: OrderKind, left: &str, right: &str, gens: &GensArg) -> Res<Output> {
    let (mut a, auto) = gens.alphabet()?;
    let parse = |s: &str, a: &mut Alphabet| {
        dsl::parse_word(s, a, auto).map_err(|diags| Failure::Parse {
            src: s.to_string(),
            diags,
        })
    };
    let u = parse(left, &mut a)?;
    let v = parse(right, &mut a)?;
    let c = order.try_compare(&u, &v).map_err(|e| Failure::Usage(e.to_string()))?;
    let s = match c {
        std::cmp::Ordering::Less => "LT",
        std::cmp::Ordering::Equal => "EQ",
        std::cmp::Ordering::Greater => "GT",
    };
    Ok(Output {
        text: s.to_string(),
        json: json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "order": order.name(),
            "left": u.render(&a),
            "right": v.render(&a),
            "result": s,
        }),
        failed: false,
    })
}

fn cmd_leading(order: OrderKind, poly: &PolyInput, gens: &GensArg) -> Res<Output> {
    let (mut a, auto) = gens.alphabet()?;
    let p = parse_poly(&poly.text()?, &mut a, auto)?;
    let lead = p.leading(order).map_err(|e| Failure::Usage(e.to_string()))?;
    let m = lead.monomial.render(&a);
    Ok(Output {
        text: format!("{m}\ncoefficient {}", lead.coefficient),
        json: json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "order": order.name(),
            "monomial": m,
            "coefficient": lead.coefficient.to_string(),
        }),
        failed: false,
    })
}

fn violation_json(v: &StabilityViolation, a: &Alphabet) -> Value {
    json!({
        "pattern": v.pattern,
        "args": v.args.iter().map(|w| w.render(a)).collect::<Vec<_>>(),
        "order": v.order.name(),
        "expected_lead": v.expected.render(a),
        "actual_lead": v.actual.as_ref().map(|w| w.render(a)),
        "instance": v.instance.render(a, Some(v.order)),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    order: OrderKind,
    names: &[String],
    mode: ModeArg,
    budget: usize,
    params: &ParamsArg,
    defs: &DefsArg,
    poly: &PolyInput,
    gens: &GensArg,
) -> Res<Output> {
    if budget == 0 {
        return Err(Failure::Usage("budget must be at least 1".into()));
    }
    let (patterns, params) = resolve(names, defs, params)?;
    let (mut a, auto) = gens.alphabet()?;
    let p = parse_poly(&poly.text()?, &mut a, auto)?;
    let reducer = Reducer::new(&patterns, order, &params).map_err(|e| Failure::Usage(e.to_string()))?;
    let res = match mode {
        ModeArg::Instance => reducer.reduce_instance(&p),
        ModeArg::Pattern => reducer.rewrite_pattern_mode(&p, budget),
    };
    let trace = match res {
        Ok(t) => t,
        Err(RewriteError::Stability(v)) => {
            let args: Vec<String> = v.args.iter().map(|w| w.render(&a)).collect();
            return Ok(Output {
                text: format!(
                    "outcome: StabilityViolation\n  {}({}) under {}: designated lead {} but actual lead {}",
                    v.pattern,
                    args.join(", "),
                    v.order,
                    v.expected.render(&a),
                    v.actual.as_ref().map_or("none".into(), |w| w.render(&a)),
                ),
                json: json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "outcome": "StabilityViolation",
                    "violation": violation_json(&v, &a),
                }),
                failed: true,
            });
        }
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    let outcome = match trace.outcome {
        Outcome::NormalForm(_) => "NormalForm",
        Outcome::BudgetExhausted(_) => "BudgetExhausted",
    };
    let result = trace.result().render(&a, Some(order));
    let steps = gs::trace_json(&trace, &a, order);
    let mut text = vec![format!("input: {}", p.render(&a, Some(order)))];
    for s in steps.as_array().into_iter().flatten() {
        let origin = s["rule_origin"].as_str().unwrap_or("-");
        text.push(format!(
            "step {}: rewrite {} in context {} by {}\n  -> {}",
            s["step"], s["monomial"].as_str().unwrap_or(""), s["context"].as_str().unwrap_or(""), origin,
            s["after"].as_str().unwrap_or("")
        ));
    }
    text.push(format!("outcome: {outcome} after {} steps", trace.steps.len()));
    text.push(format!("result: {result}"));
    Ok(Output {
        text: text.join("\n"),
        json: json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "order": order.name(),
            "mode": match mode { ModeArg::Instance => "instance", ModeArg::Pattern => "pattern" },
            "input": p.render(&a, Some(order)),
            "outcome": outcome,
            "result": result,
            "steps": steps,
        }),
        failed: false,
    })
}

fn cmd_check_gs(
    order: OrderKind,
    names: &[String],
    params: &ParamsArg,
    defs: &DefsArg,
    bounds: Bounds,
    options: CheckOptions,
) -> Res<Output> {
    if !order.is_monomial_order() {
        return Err(Failure::Usage(format!("`{order}` is not an order on bracketed words")));
    }
    let (patterns, params) = resolve(names, defs, params)?;
    let report = gs::check_gs(&patterns, order, &bounds, &params, options)?;
    Ok(Output {
        text: report.to_string(),
        json: report.to_json(),
        failed: !report.verdict.passed(),
    })
}

fn entry_json(e: &CatalogEntry) -> Value {
    let names = |os: &[OrderKind]| os.iter().map(|o| o.name()).collect::<Vec<_>>();
    json!({
        "id": e.id(),
        "title": e.title,
        "family": e.family.name(),
        "vars": e.pattern.vars,
        "body": e.body_text(),
        "sound": names(&e.sound),
        "unstable": names(&e.unstable),
        "params": e.pattern.params(),
    })
}

fn entry_line(e: &CatalogEntry) -> String {
    let sound: Vec<&str> = e.sound.iter().map(|o| o.name()).collect();
    format!(
        "{:<22} {:<15} [{}] {}",
        e.id(),
        e.family.name(),
        sound.join(","),
        e.body_text()
    )
}

fn cmd_catalog(id: Option<&str>) -> Res<Output> {
    let entries = match id {
        Some(n) => vec![catalog::lookup(n).ok_or_else(|| Failure::Usage(format!("no identity named `{n}`")))?],
        None => catalog::catalog(),
    };
    Ok(Output {
        text: entries.iter().map(entry_line).collect::<Vec<_>>().join("\n"),
        json: json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "entries": entries.iter().map(entry_json).collect::<Vec<_>>(),
        }),
        failed: false,
    })
}
