use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

use flagcert::certificate::{
    basis_hash, emit_certificate, export_sdp, parse_certificate, round_solution, target_expression, verify, CertError,
    RawSolution,
};
use flagcert::extremal::{
    brute_force_min, construction_g1, construction_g2, default_quadruple, duality_check, edge_budget, f_formula, g2_c5_edge_count,
    solve_nextremal_qp, stability_optimizers, four_part_sizes, theorem8_structure, ExtremalError, Quadruple,
};
use flagcert::field::{BigInt, QSqrt2};
use flagcert::flag::{flag_basis, FlagError, TypeSigma};
use flagcert::graph::{cycle_edge_set, ColoredGraph, GraphError};

use crate::{cache, Command, Global};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Clique and balanced bipartite block sharing a vertex.
    G1,
    /// Blow-up of a four-vertex path with a loop at one end.
    G2,
    /// Four parts, one vertex in C, exactly at the edge budget.
    FourPart,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// Request exceeds a hard limit.
    Capacity(String),
    /// A certificate or derived object failed its checks.
    Invalid(String),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Usage(_) | CliError::Capacity(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) | CliError::Invalid(m) => f.write_str(m),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Capacity(..) => CliError::Capacity(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FlagError> for CliError {
    fn from(e: FlagError) -> Self {
        match e {
            FlagError::Graph(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExtremalError> for CliError {
    fn from(e: ExtremalError) -> Self {
        match e {
            ExtremalError::Capacity(..) => CliError::Capacity(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CertError> for CliError {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Flag(f) => f.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Text lines, the JSON mirror, and whether the run counts as a success.
pub struct Output {
    pub lines: Vec<String>,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Output { lines, json, ok: true }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn exact(v: &QSqrt2, approx: bool) -> String {
    if approx {
        format!("{v} {:.12}", v.to_f64())
    } else {
        v.to_string()
    }
}

fn exact_json(v: &QSqrt2, approx: bool) -> Value {
    if approx {
        json!({ "exact": v.to_string(), "approx": v.to_f64() })
    } else {
        json!(v.to_string())
    }
}

fn graph_list(gs: &[ColoredGraph]) -> Vec<String> {
    gs.iter().map(ToString::to_string).collect()
}

pub fn execute(cmd: &Command, global: &Global) -> Result<Output, CliError> {
    match cmd {
        Command::Enumerate { n, family, count_only } => {
            let level = cache::level(*n, *family)?;
            let graphs: Vec<String> = level.iter().map(|(_, g)| g.to_string()).collect();
            let mut json = json!({ "n": n, "family": family.name(), "count": graphs.len() });
            let lines = if *count_only {
                vec![graphs.len().to_string()]
            } else {
                json["graphs"] = json!(graphs);
                graphs
            };
            Ok(Output::ok(lines, json))
        }
        Command::Flags { sigma, size, family, count_only } => {
            let sigma: TypeSigma = sigma.parse().map_err(|e: FlagError| CliError::Usage(e.to_string()))?;
            cache::level(*size, *family)?;
            let basis = flag_basis(&sigma, *size, *family)?;
            let flags: Vec<String> = basis.flags().iter().map(ToString::to_string).collect();
            let mut json = json!({
                "type": sigma.name(),
                "size": size,
                "family": family.name(),
                "count": flags.len(),
                "hash": basis.hash_hex(),
            });
            let lines = if *count_only {
                vec![flags.len().to_string()]
            } else {
                json["flags"] = json!(flags);
                flags
            };
            Ok(Output::ok(lines, json))
        }
        Command::Target { problem } => {
            cache::level(6, problem.family())?;
            let target = target_expression(*problem)?;
            let lines = target.terms().iter().map(|(k, v)| format!("{k} {}", exact(v, global.approx))).collect();
            let terms: Vec<Value> =
                target.terms().iter().map(|(k, v)| json!({ "graph": k.to_string(), "coeff": exact_json(v, global.approx) })).collect();
            Ok(Output::ok(lines, json!({ "problem": problem.name(), "level": target.level(), "terms": terms })))
        }
        Command::Verify { file } => verify_file(file, global),
        Command::ExportSdpa { problem, output } => {
            cache::level(6, problem.family())?;
            let text = export_sdp(*problem)?;
            let constraints = text.lines().find_map(|l| l.strip_suffix(" = mDIM")).unwrap_or("0").to_string();
            let mut json = json!({ "problem": problem.name(), "constraints": constraints.parse::<usize>().unwrap_or(0) });
            let lines = match output {
                Some(path) => {
                    write(path, &text)?;
                    json["output"] = json!(path.display().to_string());
                    vec![format!("wrote {} ({constraints} constraints)", path.display())]
                }
                None => {
                    json["sdpa"] = json!(text);
                    text.lines().map(str::to_string).collect()
                }
            };
            Ok(Output::ok(lines, json))
        }
        Command::Round { raw, sdpa_solution, problem, bound, output } => {
            let bound: BigInt = bound.parse().map_err(|_| CliError::Usage(format!("bad denominator bound `{bound}`")))?;
            let raw = match (raw, sdpa_solution, problem) {
                (Some(path), _, _) => RawSolution::parse(&read(path)?)?,
                (None, Some(path), Some(p)) => RawSolution::from_sdpa_solution(*p, &read(path)?)?,
                _ => return Err(CliError::Usage("round needs a raw solution or --sdpa-solution with --problem".into())),
            };
            cache::level(6, raw.problem.family())?;
            let cert = round_solution(&raw, &bound)?;
            let report = verify(&cert)?;
            let text = emit_certificate(&cert);
            let mut json = json!({
                "problem": cert.problem.name(),
                "identity_ok": report.identity_ok,
                "psd_ok": report.psd_ok,
                "side_conditions_ok": report.side_conditions_ok,
            });
            let lines = match output {
                Some(path) => {
                    write(path, &text)?;
                    json["output"] = json!(path.display().to_string());
                    vec![format!("wrote {}", path.display()), format!("valid {}", report.is_valid())]
                }
                None => {
                    json["certificate"] = json!(text);
                    text.lines().map(str::to_string).collect()
                }
            };
            Ok(Output { lines, json, ok: report.is_valid() })
        }
        Command::Oracle { n, len, duality } => {
            let report = brute_force_min(*n, *len)?;
            let mut json = json!({
                "n": report.n,
                "L": report.len,
                "budget": report.edge_budget,
                "min": report.min_cycle_edges,
                "witnesses": graph_list(&report.witnesses),
                "stats": { "level_sizes": report.stats.level_sizes, "candidates": report.stats.candidates },
            });
            let mut lines = vec![report.to_tsv()];
            let mut ok = true;
            if *duality {
                ok = duality_check(&report);
                json["duality"] = json!(ok);
                lines.push(format!("duality\t{ok}"));
            }
            Ok(Output { lines, json, ok })
        }
        Command::Construct { kind, n, quadruple, len } => construct(*kind, *n, quadruple.as_deref(), *len),
        Command::Qp { n } => {
            let sol = solve_nextremal_qp(*n);
            let Some(opt) = sol.optimum else {
                return Err(CliError::Usage(format!("no feasible quadruple for n = {n}")));
            };
            let mut lines = vec![format!("optimum\t{opt}")];
            lines.extend(sol.points.iter().map(|p| {
                let q = p.quadruple;
                format!("{}\t{}\t{}\t{}\tmargin {}", q.a, q.b, q.c, q.d, p.margin)
            }));
            let points: Vec<Value> = sol
                .points
                .iter()
                .map(|p| json!({ "a": p.quadruple.a, "b": p.quadruple.b, "c": p.quadruple.c, "d": p.quadruple.d, "margin": p.margin }))
                .collect();
            Ok(Output::ok(lines, json!({ "n": n, "budget": edge_budget(*n), "optimum": opt, "points": points })))
        }
        Command::Formulas { n_min, n_max } => {
            if *n_min < 1 || n_min > n_max {
                return Err(CliError::Usage("need 1 ≤ --n-min ≤ --n-max".into()));
            }
            let values: Vec<(u64, u64)> = (*n_min..=*n_max).map(|n| (n, f_formula(n))).collect();
            let lines = values.iter().map(|(n, f)| format!("{n} {f}")).collect();
            let json = Value::Array(values.iter().map(|(n, f)| json!({ "n": n, "F": f })).collect());
            Ok(Output::ok(lines, json))
        }
        Command::Stability { steps } => stability(*steps, global.approx),
    }
}

fn verify_file(file: &Path, global: &Global) -> Result<Output, CliError> {
    let text = read(file)?;
    let cert = parse_certificate(&text)?;
    cache::level(6, cert.problem.family())?;
    let report = verify(&cert)?;
    let flag = |b: bool| if b { "ok" } else { "FAIL" };
    let mut lines = vec![
        format!("problem\t{}", cert.problem),
        format!("identity\t{}", flag(report.identity_ok)),
        format!("psd\t{}", flag(report.psd_ok)),
        format!("side-conditions\t{}", flag(report.side_conditions_ok)),
        format!("target\t{}", if report.target_is_problem { "problem" } else { "custom" }),
    ];
    for (k, v) in report.diff.terms() {
        lines.push(format!("residual\t{k}\t{}", exact(v, global.approx)));
    }
    for v in &report.violations {
        lines.push(format!("violation\t{}\t{}", v.subject, v.reason));
    }
    lines.push(if report.is_valid() { "valid".into() } else { "invalid".into() });
    let residual: Vec<Value> =
        report.diff.terms().iter().map(|(k, v)| json!({ "graph": k.to_string(), "coeff": exact_json(v, global.approx) })).collect();
    let violations: Vec<Value> = report.violations.iter().map(|v| json!({ "subject": v.subject, "reason": v.reason })).collect();
    let hash_ok = cert.basis_hash.as_ref().map(|h| basis_hash(cert.problem).map(|b| &b == h)).transpose()?;
    let json = json!({
        "problem": cert.problem.name(),
        "identity_ok": report.identity_ok,
        "psd_ok": report.psd_ok,
        "side_conditions_ok": report.side_conditions_ok,
        "target_is_problem": report.target_is_problem,
        "basis_hash_ok": hash_ok,
        "residual": residual,
        "violations": violations,
        "valid": report.is_valid(),
    });
    Ok(Output { lines, json, ok: report.is_valid() })
}

fn parse_quadruple(s: &str, n: usize) -> Result<Quadruple, CliError> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad quadruple `{s}`")))?;
    let [a, b, c, d] = parts[..] else {
        return Err(CliError::Usage(format!("quadruple `{s}` needs four parts")));
    };
    let q = Quadruple::new(a, b, c, d);
    if q.total() != n {
        return Err(CliError::Usage(format!("quadruple {q} does not sum to {n}")));
    }
    Ok(q)
}

fn construct(kind: Kind, n: usize, quadruple: Option<&str>, len: Option<usize>) -> Result<Output, CliError> {
    if let Some(l) = len {
        if l < 3 {
            return Err(CliError::Usage(format!("cycle length {l} is below 3")));
        }
    }
    let mut json = json!({ "kind": kind.to_possible_value().expect("named").get_name(), "n": n, "budget": edge_budget(n) });
    let mut lines = Vec::new();
    let graph = match kind {
        Kind::G1 => {
            if n < 5 {
                return Err(CliError::Usage("g1 needs n ≥ 5".into()));
            }
            construction_g1(n)?
        }
        Kind::FourPart => {
            if n < 7 {
                return Err(CliError::Usage("four-part needs n ≥ 7".into()));
            }
            let p = four_part_sizes(n);
            json["parts"] = json!({ "a": p.a, "b": p.b, "c": p.c, "d": p.d, "removed": p.removed });
            json["non_cycle_edges"] = json!(p.non_cycle_edges());
            lines.push(format!("parts\t{}\t{}\t{}\t{}", p.a, p.b, p.c, p.d));
            theorem8_structure(n)?
        }
        Kind::G2 => {
            let q = match quadruple {
                Some(s) => parse_quadruple(s, n)?,
                None => default_quadruple(n).ok_or_else(|| CliError::Usage(format!("no feasible quadruple for n = {n}")))?,
            };
            json["quadruple"] = json!([q.a, q.b, q.c, q.d]);
            json["edges"] = json!(q.edge_count());
            lines.push(format!("parts\t{}\t{}\t{}\t{}", q.a, q.b, q.c, q.d));
            if let Some(c5) = g2_c5_edge_count(q) {
                json["c5_edges_closed_form"] = json!(c5);
                lines.push(format!("c5-edges-closed-form\t{c5}"));
            }
            match construction_g2(n, q) {
                Ok(g) => g,
                Err(GraphError::Capacity(..)) if len.is_none() => {
                    lines.push(format!("edges\t{}", q.edge_count()));
                    return Ok(Output::ok(lines, json));
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    lines.push(format!("graph\t{graph}"));
    lines.push(format!("edges\t{}", graph.edge_count()));
    json["graph"] = json!(graph.to_string());
    json["edges"] = json!(graph.edge_count());
    if let Some(l) = len {
        let on = cycle_edge_set(&graph, l).len();
        lines.push(format!("cycle-edges\t{l}\t{on}"));
        json["cycle_edges"] = json!({ "L": l, "count": on });
    }
    Ok(Output::ok(lines, json))
}

fn stability(steps: u32, approx: bool) -> Result<Output, CliError> {
    if steps < 4 {
        return Err(CliError::Usage("--steps must be at least 4".into()));
    }
    let mut opt = stability_optimizers();
    if steps != opt.grid.steps {
        opt.grid = flagcert::extremal::grid_sweep(steps);
    }
    let b = &opt.bipartite;
    let p = &opt.path;
    let g = &opt.grid;
    let point: Vec<String> = p.point.iter().map(|x| exact(x, approx)).collect();
    let lines = vec![
        format!("bipartite\targmax {}\tvalue {}\tinterval [{}, 2/3]", b.argmax, b.value, b.lower),
        format!("path\tpoint ({})\tvalue {}", point.join(", "), exact(&p.value, approx)),
        format!(
            "grid\tstep 1/{}\tfeasible {}\tbest {} at ({})/{}",
            g.steps,
            g.feasible,
            g.best_value,
            g.best_point.map(|v| v.to_string()).join(", "),
            g.steps
        ),
    ];
    let json = json!({
        "bipartite": { "lower": b.lower.to_string(), "argmax": b.argmax.to_string(), "value": b.value.to_string(), "runner_up": b.runner_up.to_string() },
        "path": {
            "point": p.point.iter().map(|x| exact_json(x, approx)).collect::<Vec<_>>(),
            "value": exact_json(&p.value, approx),
            "product_slack": exact_json(&p.product_slack, approx),
        },
        "grid": { "steps": g.steps, "feasible": g.feasible, "best_value": g.best_value.to_string(), "best_point": g.best_point },
    });
    Ok(Output::ok(lines, json))
}
