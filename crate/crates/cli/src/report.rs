//! Command results and their JSON and text renderings.

use inducibility::scalar::Scalar;
use inducibility::Rational;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    #[serde(rename = "type")]
    pub name: String,
    pub num: Option<String>,
    pub den: Option<String>,
    pub approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

impl Entry {
    pub fn new<T: Scalar>(name: impl Into<String>, value: &T) -> Self {
        let exact = value.to_rational();
        Entry {
            name: name.into(),
            num: exact.as_ref().map(|r| r.numer().to_string()),
            den: exact.as_ref().map(|r| r.denom().to_string()),
            approx: value.to_f64(),
            std_error: None,
        }
    }

    pub fn exact(name: impl Into<String>, value: &Rational) -> Self {
        Self::new(name, value)
    }

    /// `count / total` with a binomial standard error.
    pub fn frequency(name: impl Into<String>, count: u64, total: u64, std_error: f64) -> Self {
        Entry {
            name: name.into(),
            num: Some(count.to_string()),
            den: Some(total.to_string()),
            approx: count as f64 / total as f64,
            std_error: Some(std_error),
        }
    }

    fn value_text(&self) -> String {
        match (&self.num, &self.den) {
            (Some(n), Some(d)) if d == "1" => n.clone(),
            (Some(n), Some(d)) => format!("{n}/{d}"),
            _ => String::from("-"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowEntry {
    pub id: String,
    pub table: String,
    pub target: String,
    pub t: usize,
    pub construction: String,
    pub expected: String,
    pub computed: Option<String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
    pub graph6: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    pub approx: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub t: Option<usize>,
    pub basis: Vec<String>,
    pub values: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<RowEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphInfo>,
    pub meta: Meta,
}

impl Report {
    pub fn new(command: &'static str, t: Option<usize>, meta: Meta) -> Self {
        Report {
            command,
            t,
            basis: Vec::new(),
            values: Vec::new(),
            matrix: None,
            rows: None,
            graph: None,
            meta,
        }
    }

    pub fn push(&mut self, entry: Entry) {
        self.basis.push(entry.name.clone());
        self.values.push(entry);
    }

    /// Whether every non-statistical catalogue row passed.
    pub fn all_rows_pass(&self) -> bool {
        self.rows.iter().flatten().all(|r| r.status == "pass")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Table => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let mut title = self.command.to_string();
        if let Some(t) = self.t {
            title.push_str(&format!("  t={t}"));
        }
        if let Some(f) = &self.meta.flavor {
            title.push_str(&format!("  {f}"));
        }
        if let Some(seed) = self.meta.seed {
            title.push_str(&format!("  seed={seed}"));
        }
        out.push_str(&title);
        out.push('\n');
        if let Some(g) = &self.graph {
            out.push_str(&format!("order   {}\ngraph6  {}\nedges  ", g.order, g.graph6));
            for [u, v] in &g.edges {
                out.push_str(&format!(" {u}-{v}"));
            }
            out.push('\n');
        }
        if !self.values.is_empty() {
            let with_error = self.values.iter().any(|e| e.std_error.is_some());
            let mut header = vec!["type".to_string(), "value".to_string(), "approx".to_string()];
            if with_error {
                header.push("std_error".to_string());
            }
            let mut lines = vec![header];
            for e in &self.values {
                let mut line = vec![e.name.clone(), e.value_text(), format!("{:.10}", e.approx)];
                if with_error {
                    line.push(e.std_error.map_or_else(String::new, |s| format!("{s:.3e}")));
                }
                lines.push(line);
            }
            out.push_str(&align(&lines));
        }
        if let Some(matrix) = &self.matrix {
            out.push_str("transition matrix (columns are inputs)\n");
            out.push_str(&align(matrix));
        }
        if let Some(rows) = &self.rows {
            let mut lines = vec![["id", "t", "target", "construction", "expected", "computed", "status"]
                .map(String::from)
                .to_vec()];
            for r in rows {
                lines.push(vec![
                    r.id.clone(),
                    r.t.to_string(),
                    r.target.clone(),
                    r.construction.clone(),
                    r.expected.clone(),
                    r.computed.clone().unwrap_or_else(|| "-".into()),
                    match &r.error {
                        Some(e) => format!("{} ({e})", r.status),
                        None => r.status.clone(),
                    },
                ]);
            }
            out.push_str(&align(&lines));
        }
        out
    }
}

fn align(lines: &[Vec<String>]) -> String {
    let cols = lines.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| lines.iter().filter_map(|l| l.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in lines {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<width$}", width = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
