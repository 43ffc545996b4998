//! Command implementations.

use std::error::Error;

use inducibility::bounds::closed_form_bounds;
use inducibility::catalog::{self, Table};
use inducibility::expr::{evaluate, parse_expr, AnyModel, EvalOptions, Expr, ExprKind, Value};
use inducibility::labeled::{self, Mask};
use inducibility::montecarlo::{estimate_graph, estimate_model, estimate_monochromatic, Estimate, Sampling};
use inducibility::nesting::{nested_spectral, stationary_profile};
use inducibility::profile::{induced_profile_with, repetitive_labeled, repetitive_profile_with};
use inducibility::quantum::QuantumGraph;
use inducibility::scalar::{format_rational, Scalar};
use inducibility::spectral::{fourier, product_limit_density, spectral_profile, SpectralProfile};
use inducibility::{graph6, iso_table, LabeledGraph, Options, ProfileVector, StepModel, VERSION};

use crate::report::{Entry, GraphInfo, Meta, Report, RowEntry};
use crate::{Cli, Command, DensityFlavor, ProfileFlavor, Which};

type Res<T> = Result<T, Box<dyn Error>>;

pub fn execute(cli: &Cli) -> Res<Report> {
    let g = &cli.global;
    let opts = Options::default().with_budget(g.budget);
    let meta = || Meta {
        version: VERSION,
        budget: g.budget,
        seed: None,
        samples: None,
        flavor: None,
        approx: g.approx,
    };
    match &cli.command {
        Command::Profile { t, flavor, expr } => {
            let mut report = Report::new("profile", Some(*t), Meta {
                flavor: Some(format!("{flavor:?}").to_lowercase()),
                ..meta()
            });
            let value = eval(cli, expr)?;
            if *flavor == ProfileFlavor::Induced {
                let graph = value.as_graph().ok_or("the induced profile needs a graph, not a model")?;
                push_profile(&mut report, &induced_profile_with(graph, *t, &opts)?);
                return Ok(report);
            }
            match value.to_model(g.approx) {
                AnyModel::Exact(m) => model_profile(&mut report, &m, *t, *flavor, &opts)?,
                AnyModel::Approx(m) => model_profile(&mut report, &m, *t, *flavor, &opts)?,
            }
            Ok(report)
        }
        Command::Density { t, quantum, flavor, expr } => {
            let q = parse_quantum(quantum, *t)?;
            let t = q.order();
            let mut report = Report::new("density", Some(t), Meta {
                flavor: Some(format!("{flavor:?}").to_lowercase()),
                ..meta()
            });
            let value = eval(cli, expr)?;
            if *flavor == DensityFlavor::Induced {
                let graph = value.as_graph().ok_or("the induced density needs a graph, not a model")?;
                report.push(Entry::new(q.to_string(), &q.density(&induced_profile_with(graph, t, &opts)?)?));
                return Ok(report);
            }
            match value.to_model(g.approx) {
                AnyModel::Exact(m) => report.push(Entry::new(q.to_string(), &q.density(&repetitive_profile_with(&m, t, &opts)?)?)),
                AnyModel::Approx(m) => report.push(Entry::new(q.to_string(), &q.density(&repetitive_profile_with(&m, t, &opts)?)?)),
            }
            Ok(report)
        }
        Command::NestedProfile { t, matrix, expr } => {
            let graph = eval_graph(cli, expr)?;
            let nested = stationary_profile(&graph, *t, &opts)?;
            let mut report = Report::new("nested-profile", Some(*t), Meta {
                flavor: Some("nested".into()),
                ..meta()
            });
            push_profile(&mut report, &nested.unlabeled);
            if *matrix {
                let f = &nested.matrix;
                let mut rows = vec![std::iter::once(String::new()).chain(f.basis.iter().cloned()).collect::<Vec<_>>()];
                for (name, row) in f.basis.iter().zip(&f.entries) {
                    rows.push(std::iter::once(name.clone()).chain(row.iter().map(format_rational)).collect());
                }
                report.matrix = Some(rows);
            }
            Ok(report)
        }
        Command::Limit { t, quantum, factors, nested } => {
            let q = parse_quantum(quantum, *t)?;
            let t = q.order();
            let factors: Vec<&str> = factors.as_deref().map(split_top_level).unwrap_or_default();
            if factors.is_empty() && nested.is_none() {
                return Err("limit needs --factors, --nested or both".into());
            }
            let models = factors.iter().map(|f| Ok(eval(cli, f)?.to_model(g.approx))).collect::<Res<Vec<_>>>()?;
            let nested_hat = nested.as_deref().map(|n| -> Res<_> { Ok(nested_spectral(&eval_graph(cli, n)?, t, &opts)?) }).transpose()?;
            let mut report = Report::new("limit", Some(t), meta());
            if g.approx {
                let mut hats = Vec::new();
                for m in &models {
                    let AnyModel::Approx(m) = m else { unreachable!("approximate evaluation") };
                    hats.push(spectral_profile(m, t, &opts)?);
                }
                if let Some(h) = nested_hat {
                    hats.push(SpectralProfile {
                        t,
                        values: h.values.iter().map(f64::from_rational).collect(),
                    });
                }
                report.push(Entry::new(q.to_string(), &product_limit_density(&q, &hats)?));
            } else {
                let mut hats = Vec::new();
                for m in &models {
                    let AnyModel::Exact(m) = m else { unreachable!("exact evaluation") };
                    hats.push(spectral_profile(m, t, &opts)?);
                }
                hats.extend(nested_hat);
                report.push(Entry::new(q.to_string(), &product_limit_density(&q, &hats)?));
            }
            Ok(report)
        }
        Command::Estimate { t, samples, seed, without_replacement, monochromatic, expr } => {
            let value = eval(cli, expr)?;
            let mut report = Report::new("estimate", Some(*t), Meta {
                seed: Some(*seed),
                samples: Some(*samples),
                ..meta()
            });
            let execution = opts.execution;
            if *monochromatic {
                let graph = value.as_graph().ok_or("the monochromatic estimate needs a graph")?;
                let est = estimate_monochromatic(graph, *t, *samples, *seed, execution)?;
                report.meta.flavor = Some("monochromatic".into());
                report.push(Entry::frequency(format!("K{t}+A{t}"), est.hits, est.samples, est.std_error()));
                return Ok(report);
            }
            let est = match (&value, without_replacement) {
                (Value::Graph(graph), _) => {
                    let sampling = if *without_replacement { Sampling::WithoutReplacement } else { Sampling::WithReplacement };
                    estimate_graph(graph, *t, *samples, *seed, sampling, execution)?
                }
                (Value::Model(_), true) => return Err("sampling without replacement needs a graph".into()),
                (Value::Model(AnyModel::Exact(m)), false) => estimate_model(m, *t, *samples, *seed, execution)?,
                (Value::Model(AnyModel::Approx(m)), false) => estimate_model(m, *t, *samples, *seed, execution)?,
            };
            push_estimate(&mut report, &est);
            Ok(report)
        }
        Command::Bounds { t } => {
            let b = closed_form_bounds(*t)?;
            let mut report = Report::new("bounds", Some(*t), meta());
            report.push(Entry::exact("cycle_lower", &b.cycle_lower));
            report.push(Entry::exact("path_lower", &b.path_lower));
            report.push(Entry::exact("path_upper", &b.path_upper));
            Ok(report)
        }
        Command::Tables { which } => {
            let tables: Vec<Table> = match which {
                Which::Exoo4 => vec![Table::Exoo4],
                Which::Headline => vec![Table::Headline],
                Which::Appendix5 => vec![Table::Appendix5],
                Which::All => Table::ALL.to_vec(),
            };
            let mut rows = Vec::new();
            for table in tables {
                rows.extend(catalog::reproduce_table(table, &opts)?);
            }
            let mut report = Report::new("tables", None, meta());
            report.rows = Some(
                rows.into_iter()
                    .map(|r| RowEntry {
                        error: match &r.status {
                            catalog::Status::Error(e) => Some(e.clone()),
                            _ => None,
                        },
                        id: r.id,
                        table: r.table.as_str().into(),
                        target: r.target,
                        t: r.t,
                        construction: r.construction,
                        expected: r.expected.to_string(),
                        computed: r.computed.map(|c| c.to_string()),
                        status: r.status.as_str().into(),
                    })
                    .collect(),
            );
            Ok(report)
        }
        Command::Convert { graph6: text, encode } => {
            let graph = match (text, encode) {
                (Some(text), _) => graph6::decode(text.trim())?,
                (None, Some(expr)) => eval_graph(cli, expr)?,
                (None, None) => return Err("convert needs --graph6 or --encode".into()),
            };
            let mut report = Report::new("convert", None, meta());
            report.graph = Some(GraphInfo {
                order: graph.order(),
                edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                graph6: graph6::encode(&graph)?,
            });
            Ok(report)
        }
    }
}

fn eval(cli: &Cli, src: &str) -> Res<Value> {
    let options = EvalOptions {
        approx: cli.global.approx,
        ..EvalOptions::default()
    };
    Ok(evaluate(&parse_expr(src)?, &options)?)
}

fn eval_graph(cli: &Cli, src: &str) -> Res<LabeledGraph> {
    match eval(cli, src)? {
        Value::Graph(g) => Ok(g),
        Value::Model(_) => Err(format!("`{src}` evaluates to a model; a graph is required").into()),
    }
}

/// Parses a quantum graph, inferring `t` when it is the only order at
/// which every term resolves.
fn parse_quantum(text: &str, t: Option<usize>) -> Res<QuantumGraph> {
    if let Some(t) = t {
        return Ok(QuantumGraph::parse(t, text)?);
    }
    let fits: Vec<QuantumGraph> = (1..=labeled::MAX_ORDER).filter_map(|t| QuantumGraph::parse(t, text).ok()).collect();
    match fits.len() {
        1 => Ok(fits.into_iter().next().expect("one candidate")),
        0 => Err(format!("`{text}` is not a quantum graph at any supported order").into()),
        _ => Err(format!("`{text}` fits several orders; pass --t").into()),
    }
}

/// Splits on commas outside parentheses and quotes.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut quoted, mut escaped, mut start) = (0i32, false, false, 0);
    for (i, c) in s.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if quoted => escaped = true,
            '"' => quoted = !quoted,
            '(' if !quoted => depth += 1,
            ')' if !quoted => depth -= 1,
            ',' if !quoted && depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

fn mask_name(t: usize, mask: Mask) -> String {
    let edges: Vec<String> = labeled::edges(t, mask).iter().map(|(i, j)| format!("{}-{}", i + 1, j + 1)).collect();
    format!("{{{}}}", edges.join(","))
}

fn push_profile<T: Scalar>(report: &mut Report, profile: &ProfileVector<T>) {
    for (name, v) in profile.names().into_iter().zip(&profile.values) {
        report.push(Entry::new(name, v));
    }
}

fn model_profile<T: Scalar>(
    report: &mut Report,
    model: &StepModel<T>,
    t: usize,
    flavor: ProfileFlavor,
    opts: &Options,
) -> Res<()> {
    match flavor {
        ProfileFlavor::Repetitive => push_profile(report, &repetitive_profile_with(model, t, opts)?),
        ProfileFlavor::Labeled | ProfileFlavor::Spectral => {
            let labeled = repetitive_labeled(model, t, opts)?;
            let values = if flavor == ProfileFlavor::Spectral { fourier(&labeled).values } else { labeled.values };
            for (mask, v) in values.iter().enumerate() {
                report.push(Entry::new(mask_name(t, mask as Mask), v));
            }
        }
        ProfileFlavor::Induced => unreachable!("handled by the caller"),
    }
    Ok(())
}

fn push_estimate(report: &mut Report, est: &Estimate) {
    report.meta.flavor = Some(est.flavor.as_str().into());
    let table = iso_table(est.t).expect("validated order");
    for (i, name) in table.names().into_iter().enumerate() {
        report.push(Entry::frequency(name, est.counts[i], est.samples, est.std_error(i)));
    }
}

/// Everything the output depends on: toolkit version, global flags, the
/// command with expressions in canonical printed form, and the contents of
/// any loaded files.
pub fn cache_material(cli: &Cli) -> Res<String> {
    let g = &cli.global;
    let mut exprs = Vec::new();
    let mut canon = |src: &str| -> Res<String> {
        let e = parse_expr(src)?;
        let printed = e.to_string();
        exprs.push(e);
        Ok(printed)
    };
    let command = match &cli.command {
        Command::Profile { t, flavor, expr } => format!("profile t={t} flavor={flavor:?} {}", canon(expr)?),
        Command::Density { t, quantum, flavor, expr } => {
            let q = parse_quantum(quantum, *t)?;
            format!("density t={} q={q} flavor={flavor:?} {}", q.order(), canon(expr)?)
        }
        Command::NestedProfile { t, matrix, expr } => format!("nested-profile t={t} matrix={matrix} {}", canon(expr)?),
        Command::Limit { t, quantum, factors, nested } => {
            let q = parse_quantum(quantum, *t)?;
            let mut parts = Vec::new();
            for f in factors.as_deref().map(split_top_level).unwrap_or_default() {
                parts.push(canon(f)?);
            }
            let nested = nested.as_deref().map(&mut canon).transpose()?;
            format!("limit t={} q={q} factors=[{}] nested={nested:?}", q.order(), parts.join("; "))
        }
        Command::Estimate { t, samples, seed, without_replacement, monochromatic, expr } => format!(
            "estimate t={t} samples={samples} seed={seed} without={without_replacement} mono={monochromatic} {}",
            canon(expr)?
        ),
        Command::Bounds { t } => format!("bounds t={t}"),
        Command::Tables { which } => format!("tables {which:?}"),
        Command::Convert { graph6, encode } => {
            let encode = encode.as_deref().map(&mut canon).transpose()?;
            format!("convert graph6={graph6:?} encode={encode:?}")
        }
    };
    let mut material = format!(
        "inducibility {VERSION}\nformat={:?} budget={} approx={}\n{command}\n",
        g.format, g.budget, g.approx
    );
    let mut paths = Vec::new();
    for e in &exprs {
        loaded_paths(e, &mut paths);
    }
    for p in paths {
        let contents = std::fs::read(&p)?;
        material.push_str(&format!("load {p:?} {}\n", crate::cache::Cache::key(&contents)));
    }
    Ok(material)
}

fn loaded_paths(e: &Expr, out: &mut Vec<String>) {
    match &e.kind {
        ExprKind::Load(p) => out.push(p.clone()),
        ExprKind::Complement(a) | ExprKind::BlowUp(a, _) => loaded_paths(a, out),
        ExprKind::Compose(a, b) => {
            loaded_paths(a, out);
            loaded_paths(b, out);
        }
        ExprKind::Tensor(parts) => parts.iter().for_each(|p| loaded_paths(p, out)),
        ExprKind::Union(parts) => parts.iter().for_each(|(p, _)| loaded_paths(p, out)),
        ExprKind::Named { .. } | ExprKind::Bernoulli(_) | ExprKind::BipartiteRandom(_) => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_respects_parentheses() {
        assert_eq!(split_top_level("M4, K4,tensor(K3,K3)"), vec!["M4", "K4", "tensor(K3,K3)"]);
        assert_eq!(split_top_level("load(\"a,b\"), K2"), vec!["load(\"a,b\")", "K2"]);
        assert!(split_top_level(" ").is_empty());
    }

    #[test]
    fn quantum_order_inference() {
        assert_eq!(parse_quantum("K4+A4", None).unwrap().order(), 4);
        assert_eq!(parse_quantum("P4", None).unwrap().order(), 4);
        assert!(parse_quantum("{1-2}", None).is_err());
        assert_eq!(parse_quantum("{1-2}", Some(3)).unwrap().order(), 3);
    }

    #[test]
    fn mask_names_are_one_based() {
        assert_eq!(mask_name(3, 0), "{}");
        assert_eq!(mask_name(3, 0b101), "{1-2,2-3}");
    }
}
