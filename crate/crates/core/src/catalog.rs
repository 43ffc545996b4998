//! Curated constructions with the densities they are known to achieve, and
//! a runner that recomputes each one and compares.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Options};
use crate::expr::{evaluate_str, AnyModel, EvalOptions, Value};
use crate::nesting::{nested_spectral, stationary_profile};
use crate::profile::repetitive_profile_with;
use crate::quantum::QuantumGraph;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::spectral::{product_limit_density, spectral_profile};

const CATALOG: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// Exact 4-vertex inducibilities.
    Exoo4,
    /// Product, composition and nested-blow-up densities for `K4+A4` and `P4`.
    Headline,
    /// 5-vertex lower-bound constructions.
    Appendix5,
}

impl Table {
    pub const ALL: [Table; 3] = [Table::Exoo4, Table::Headline, Table::Appendix5];

    pub fn as_str(self) -> &'static str {
        match self {
            Table::Exoo4 => "exoo4",
            Table::Headline => "headline",
            Table::Appendix5 => "appendix5",
        }
    }
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Table::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Catalogue(format!("unknown table `{s}`; expected exoo4, headline or appendix5")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Repetitive,
    Nested,
    Product,
}

/// One catalogue entry, as stored.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub table: String,
    pub id: String,
    pub kind: RowKind,
    pub t: usize,
    pub target: String,
    #[serde(default)]
    pub expr: Option<String>,
    #[serde(default)]
    pub factors: Vec<String>,
    #[serde(default)]
    pub nested: Option<String>,
    pub expected: String,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub approx: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    row: Vec<Row>,
}

impl Row {
    /// The construction as one line of text.
    pub fn construction(&self) -> String {
        match self.kind {
            RowKind::Repetitive => self.expr.clone().unwrap_or_default(),
            RowKind::Nested => format!("nest({})", self.expr.as_deref().unwrap_or_default()),
            RowKind::Product => {
                let mut parts = self.factors.clone();
                parts.extend(self.nested.iter().map(|n| format!("nest({n})")));
                parts.join(" ⊗ ")
            }
        }
    }

    pub fn expected_value(&self) -> Result<Expected> {
        let bad = || Error::Catalogue(format!("row {}: cannot read expected value `{}`", self.id, self.expected));
        if self.expected.contains('.') {
            let value: f64 = self.expected.parse().map_err(|_| bad())?;
            let tolerance = self
                .tolerance
                .ok_or_else(|| Error::Catalogue(format!("row {}: decimal value needs a tolerance", self.id)))?;
            Ok(Expected::Decimal { value, tolerance })
        } else {
            let value = parse_rational(&self.expected).ok_or_else(bad)?;
            Ok(match self.tolerance {
                Some(tolerance) => Expected::Approx { value, tolerance },
                None => Expected::Exact(value),
            })
        }
    }

    fn validate(&self) -> Result<()> {
        self.table.parse::<Table>()?;
        let err = |msg: &str| Err(Error::Catalogue(format!("row {}: {msg}", self.id)));
        match self.kind {
            RowKind::Repetitive | RowKind::Nested => {
                if self.expr.is_none() || !self.factors.is_empty() || self.nested.is_some() {
                    return err("needs `expr` and no `factors` or `nested`");
                }
            }
            RowKind::Product => {
                if self.expr.is_some() || (self.factors.is_empty() && self.nested.is_none()) {
                    return err("needs `factors` or `nested` and no `expr`");
                }
            }
        }
        if self.approx && !matches!(self.expected_value()?, Expected::Approx { .. } | Expected::Decimal { .. }) {
            return err("floating-point rows need a tolerance");
        }
        if self.approx && self.kind != RowKind::Repetitive {
            return err("only repetitive rows run in floating point");
        }
        self.expected_value().map(|_| ())
    }
}

/// The target value of a row.
#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Exact(Rational),
    /// An exact value compared within a tolerance, for floating-point rows.
    Approx { value: Rational, tolerance: f64 },
    Decimal { value: f64, tolerance: f64 },
}

impl Expected {
    pub fn tolerance(&self) -> f64 {
        match self {
            Expected::Exact(_) => 0.0,
            Expected::Approx { tolerance, .. } | Expected::Decimal { tolerance, .. } => *tolerance,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Expected::Exact(v) | Expected::Approx { value: v, .. } => v.to_f64(),
            Expected::Decimal { value, .. } => *value,
        }
    }

    fn matches(&self, computed: &Computed) -> bool {
        match (self, computed) {
            (Expected::Exact(e), Computed::Exact(c)) => e == c,
            (Expected::Exact(_), Computed::Approx(_)) => false,
            _ => (self.to_f64() - computed.to_f64()).abs() <= self.tolerance(),
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Exact(v) => write!(f, "{}", format_rational(v)),
            Expected::Approx { value, tolerance } => write!(f, "{} ± {tolerance:e}", format_rational(value)),
            Expected::Decimal { value, tolerance } => write!(f, "{value} ± {tolerance:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Computed {
    Exact(Rational),
    Approx(f64),
}

impl Computed {
    pub fn to_f64(&self) -> f64 {
        match self {
            Computed::Exact(v) => v.to_f64(),
            Computed::Approx(v) => *v,
        }
    }
}

impl fmt::Display for Computed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Computed::Exact(v) => write!(f, "{}", format_rational(v)),
            Computed::Approx(v) => write!(f, "{v:.12}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Error(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub id: String,
    pub table: Table,
    pub construction: String,
    pub target: String,
    pub t: usize,
    pub expected: Expected,
    pub computed: Option<Computed>,
    pub status: Status,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// All catalogue rows, in file order.
pub fn rows() -> Result<Vec<Row>> {
    parse_catalog(CATALOG)
}

/// Parses and validates catalogue text in the embedded format.
pub fn parse_catalog(text: &str) -> Result<Vec<Row>> {
    let file: CatalogFile = toml::from_str(text).map_err(|e| Error::Catalogue(e.to_string()))?;
    for row in &file.row {
        row.validate()?;
    }
    Ok(file.row)
}

pub fn table_rows(which: Table) -> Result<Vec<Row>> {
    Ok(rows()?.into_iter().filter(|r| r.table == which.as_str()).collect())
}

/// Recomputes one row. Failures to evaluate are reported in the status.
pub fn run_row(row: &Row, options: &Options) -> Result<BoundReport> {
    let expected = row.expected_value()?;
    let (computed, status) = match compute(row, options) {
        Ok(c) => {
            let status = if expected.matches(&c) { Status::Pass } else { Status::Fail };
            (Some(c), status)
        }
        Err(e) => (None, Status::Error(e.to_string())),
    };
    Ok(BoundReport {
        id: row.id.clone(),
        table: row.table.parse()?,
        construction: row.construction(),
        target: row.target.clone(),
        t: row.t,
        expected,
        computed,
        status,
    })
}

/// Runs every row of a table, rows in parallel, reports in catalogue order.
pub fn reproduce_table(which: Table, options: &Options) -> Result<Vec<BoundReport>> {
    run_rows(&table_rows(which)?, options)
}

pub fn run_rows(rows: &[Row], options: &Options) -> Result<Vec<BoundReport>> {
    // each row parallelises internally too; keep its inner loops sequential
    let inner = Options::sequential().with_budget(options.budget);
    map_indexed(options.execution, rows.len(), |i| run_row(&rows[i], &inner))
        .into_iter()
        .collect()
}

fn compute(row: &Row, options: &Options) -> Result<Computed> {
    let q = QuantumGraph::parse(row.t, &row.target)?;
    let eval = EvalOptions {
        approx: row.approx,
        ..EvalOptions::default()
    };
    let graph = |src: &str| -> Result<_> {
        match evaluate_str(src, &EvalOptions::default())? {
            Value::Graph(g) => Ok(g),
            Value::Model(_) => Err(Error::Type(format!("`{src}` must be a graph"))),
        }
    };
    match row.kind {
        RowKind::Repetitive => {
            let value = evaluate_str(row.expr.as_deref().unwrap_or_default(), &eval)?;
            match value.to_model(row.approx) {
                AnyModel::Exact(m) => Ok(Computed::Exact(q.density(&repetitive_profile_with(&m, row.t, options)?)?)),
                AnyModel::Approx(m) => Ok(Computed::Approx(q.density(&repetitive_profile_with(&m, row.t, options)?)?)),
            }
        }
        RowKind::Nested => {
            let g = graph(row.expr.as_deref().unwrap_or_default())?;
            let profile = stationary_profile(&g, row.t, options)?;
            Ok(Computed::Exact(q.density(&profile.unlabeled)?))
        }
        RowKind::Product => {
            let mut hats = Vec::new();
            for f in &row.factors {
                let model = match evaluate_str(f, &EvalOptions::default())?.to_model(false) {
                    AnyModel::Exact(m) => m,
                    AnyModel::Approx(_) => unreachable!("exact evaluation"),
                };
                hats.push(spectral_profile(&model, row.t, options)?);
            }
            if let Some(n) = &row.nested {
                hats.push(nested_spectral(&graph(n)?, row.t, options)?);
            }
            Ok(Computed::Exact(product_limit_density(&q, &hats)?))
        }
    }
}
