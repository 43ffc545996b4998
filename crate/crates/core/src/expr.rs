//! Construction expressions.
//!
//! ```text
//! expr     := IDENT | IDENT "(" args ")"
//! args     := arg { ("," | ";") arg }
//! arg      := expr [":" number] | number | STRING
//! number   := INT | INT "/" INT | DECIMAL | "alpha"
//! ```
//!
//! Operators are `complement`, `blowup`, `compose`, `tensor`, `union`,
//! `bernoulli`, `bipartite` and `load`; every other identifier names a
//! catalogue graph (`K4`, `bull`, `kpart(2,3)`, `cayley2(10; 1,2,5)`).
//! `alpha` is `2 + √3` and is only accepted by approximate evaluation.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::graph6;
use crate::model::{ApproxModel, StepModel};
use crate::named;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Byte range of a node in the source, with the 1-based position of its start.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(Rational),
    /// `2 + √3`.
    Alpha,
}

impl Number {
    pub const ALPHA: f64 = 3.732_050_807_568_877_2;

    fn value<T: Scalar>(&self) -> Result<T> {
        match self {
            Number::Exact(r) => Ok(T::from_rational(r)),
            Number::Alpha if T::EXACT => Err(Error::Type(
                "`alpha` = 2+√3 is irrational; evaluate in approximate mode".into(),
            )),
            Number::Alpha => Ok(T::from_rational(&Rational::from_float(Self::ALPHA).expect("finite"))),
        }
    }

    fn as_count(&self) -> Option<u64> {
        match self {
            Number::Exact(r) if r.is_integer() => r.to_integer().try_into().ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => f.write_str(&format_rational(r)),
            Number::Alpha => f.write_str("alpha"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Named { name: String, params: Vec<u64> },
    Complement(Box<Expr>),
    BlowUp(Box<Expr>, u64),
    Compose(Box<Expr>, Box<Expr>),
    Tensor(Vec<Expr>),
    /// Either every part has a mass or none does.
    Union(Vec<(Expr, Option<Number>)>),
    Bernoulli(Number),
    BipartiteRandom(Number),
    Load(String),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Structural equality; spans are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, items: &[Expr]| -> fmt::Result {
            for (i, e) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        match &self.kind {
            ExprKind::Named { name, params } if params.is_empty() => f.write_str(name),
            ExprKind::Named { name, params } => {
                write!(f, "{name}(")?;
                for (i, p) in params.iter().enumerate() {
                    match (i, name.as_str()) {
                        (0, _) => {}
                        (1, "cayley2") => f.write_str("; ")?,
                        _ => f.write_str(", ")?,
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            ExprKind::Complement(e) => write!(f, "complement({e})"),
            ExprKind::BlowUp(e, m) => write!(f, "blowup({e}, {m})"),
            ExprKind::Compose(a, b) => write!(f, "compose({a}, {b})"),
            ExprKind::Tensor(items) => {
                f.write_str("tensor(")?;
                list(f, items)?;
                f.write_str(")")
            }
            ExprKind::Union(parts) => {
                f.write_str("union(")?;
                for (i, (e, w)) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                    if let Some(w) = w {
                        write!(f, ":{w}")?;
                    }
                }
                f.write_str(")")
            }
            ExprKind::Bernoulli(p) => write!(f, "bernoulli({p})"),
            ExprKind::BipartiteRandom(p) => write!(f, "bipartite({p})"),
            ExprKind::Load(path) => {
                let escaped = path.replace('\\', "\\\\").replace('"', "\\\"");
                write!(f, "load(\"{escaped}\")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn error_at(span: Span, message: impl Into<String>) -> Error {
    Error::Parse {
        line: span.line,
        column: span.column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut line_start) = (1, 0);
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let span_from = |end: usize| Span {
            start: at,
            end,
            line,
            column: src[line_start..at].chars().count() + 1,
        };
        if c == '\n' {
            line += 1;
            line_start = at + 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                span: span_from(at + 1),
            });
            i += 1;
            continue;
        }
        let end_of = |j: usize| chars.get(j).map_or(src.len(), |&(p, _)| p);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[at..end_of(j)].to_string()),
                span: span_from(end_of(j)),
            });
            i = j;
        } else if c.is_ascii_digit() {
            let mut j = i;
            let digits = |j: &mut usize| {
                while *j < chars.len() && chars[*j].1.is_ascii_digit() {
                    *j += 1;
                }
            };
            digits(&mut j);
            for sep in ['.', '/'] {
                if j + 1 < chars.len() && chars[j].1 == sep && chars[j + 1].1.is_ascii_digit() {
                    j += 1;
                    digits(&mut j);
                }
            }
            out.push(Token {
                tok: Tok::Number(src[at..end_of(j)].to_string()),
                span: span_from(end_of(j)),
            });
            i = j;
        } else if c == '"' {
            let mut text = String::new();
            let mut j = i + 1;
            loop {
                match chars.get(j) {
                    None | Some((_, '\n')) => return Err(error_at(span_from(src.len()), "unterminated string")),
                    Some((_, '"')) => break,
                    Some((_, '\\')) => {
                        match chars.get(j + 1) {
                            Some((_, e @ ('"' | '\\'))) => text.push(*e),
                            _ => return Err(error_at(span_from(end_of(j)), "unsupported escape")),
                        }
                        j += 2;
                    }
                    Some((_, ch)) => {
                        text.push(*ch);
                        j += 1;
                    }
                }
            }
            out.push(Token {
                tok: Tok::Str(text),
                span: span_from(end_of(j + 1)),
            });
            i = j + 1;
        } else {
            return Err(error_at(span_from(end_of(i + 1)), format!("unexpected character `{c}`")));
        }
    }
    let end = Span {
        start: src.len(),
        end: src.len(),
        line,
        column: src[line_start..].chars().count() + 1,
    };
    out.push(Token { tok: Tok::End, span: end });
    Ok(out)
}

enum Arg {
    Expr(Expr, Option<Number>),
    Number(Number, Span),
    Str(String, Span),
}

impl Arg {
    fn span(&self) -> Span {
        match self {
            Arg::Expr(e, _) => e.span,
            Arg::Number(_, s) | Arg::Str(_, s) => *s,
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(error_at(t.span, format!("expected {what}")))
        }
    }

    fn number(text: &str, span: Span) -> Result<Number> {
        parse_rational(text)
            .map(Number::Exact)
            .ok_or_else(|| error_at(span, format!("malformed number `{text}`")))
    }

    fn expr(&mut self) -> Result<Expr> {
        let token = self.next();
        let Tok::Ident(name) = token.tok else {
            return Err(error_at(token.span, "expected a construction"));
        };
        if self.peek().tok != Tok::LParen {
            if !named::is_known(&name, false) {
                return Err(error_at(token.span, format!("unknown identifier `{name}`")));
            }
            return Ok(Expr {
                kind: ExprKind::Named { name, params: vec![] },
                span: token.span,
            });
        }
        self.next();
        let mut args = Vec::new();
        if self.peek().tok != Tok::RParen {
            loop {
                args.push(self.arg()?);
                match self.peek().tok {
                    Tok::Comma | Tok::Semi => {
                        self.next();
                    }
                    _ => break,
                }
            }
        }
        let close = self.expect(Tok::RParen, "`,` or `)`")?;
        let span = Span {
            end: close.span.end,
            ..token.span
        };
        let kind = build_call(&name, args, span)?;
        Ok(Expr { kind, span })
    }

    fn arg(&mut self) -> Result<Arg> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Number(text) => {
                self.next();
                Ok(Arg::Number(Self::number(&text, token.span)?, token.span))
            }
            Tok::Str(text) => {
                self.next();
                Ok(Arg::Str(text, token.span))
            }
            Tok::Ident(ref name) if name == "alpha" => {
                self.next();
                Ok(Arg::Number(Number::Alpha, token.span))
            }
            _ => {
                let e = self.expr()?;
                if self.peek().tok != Tok::Colon {
                    return Ok(Arg::Expr(e, None));
                }
                self.next();
                let w = self.next();
                let weight = match w.tok {
                    Tok::Number(text) => Self::number(&text, w.span)?,
                    Tok::Ident(name) if name == "alpha" => Number::Alpha,
                    _ => return Err(error_at(w.span, "expected a mass after `:`")),
                };
                Ok(Arg::Expr(e, Some(weight)))
            }
        }
    }
}

fn arity(name: &str, span: Span, expected: &str, got: usize) -> Error {
    error_at(span, format!("`{name}` takes {expected}, got {got} argument(s)"))
}

fn build_call(name: &str, args: Vec<Arg>, span: Span) -> Result<ExprKind> {
    let n = args.len();
    let graph_arg = |a: Arg| -> Result<Expr> {
        match a {
            Arg::Expr(e, None) => Ok(e),
            Arg::Expr(e, Some(_)) => Err(error_at(e.span, format!("`{name}` does not take masses"))),
            other => Err(error_at(other.span(), format!("`{name}` expects a construction here"))),
        }
    };
    let number_arg = |a: Arg| -> Result<Number> {
        match a {
            Arg::Number(x, _) => Ok(x),
            other => Err(error_at(other.span(), format!("`{name}` expects a number here"))),
        }
    };
    let mut it = args.into_iter();
    Ok(match name {
        "complement" => {
            if n != 1 {
                return Err(arity(name, span, "one construction", n));
            }
            ExprKind::Complement(Box::new(graph_arg(it.next().unwrap())?))
        }
        "blowup" => {
            if n != 2 {
                return Err(arity(name, span, "a construction and a copy count", n));
            }
            let e = graph_arg(it.next().unwrap())?;
            let m_arg = it.next().unwrap();
            let m_span = m_arg.span();
            let m = number_arg(m_arg)?
                .as_count()
                .filter(|&m| m >= 1)
                .ok_or_else(|| error_at(m_span, "copy count must be a positive integer"))?;
            ExprKind::BlowUp(Box::new(e), m)
        }
        "compose" => {
            if n != 2 {
                return Err(arity(name, span, "two constructions", n));
            }
            let a = graph_arg(it.next().unwrap())?;
            let b = graph_arg(it.next().unwrap())?;
            ExprKind::Compose(Box::new(a), Box::new(b))
        }
        "tensor" => {
            if n < 2 {
                return Err(arity(name, span, "at least two constructions", n));
            }
            ExprKind::Tensor(it.map(graph_arg).collect::<Result<_>>()?)
        }
        "union" => {
            if n < 2 {
                return Err(arity(name, span, "at least two constructions", n));
            }
            let parts: Vec<(Expr, Option<Number>)> = it
                .map(|a| match a {
                    Arg::Expr(e, w) => Ok((e, w)),
                    other => Err(error_at(other.span(), "`union` expects constructions")),
                })
                .collect::<Result<_>>()?;
            let weighted = parts.iter().filter(|(_, w)| w.is_some()).count();
            if weighted != 0 && weighted != parts.len() {
                return Err(error_at(span, "`union` needs a mass on every part or on none"));
            }
            ExprKind::Union(parts)
        }
        "bernoulli" | "bipartite" => {
            if n != 1 {
                return Err(arity(name, span, "one probability", n));
            }
            let p = number_arg(it.next().unwrap())?;
            if name == "bernoulli" {
                ExprKind::Bernoulli(p)
            } else {
                ExprKind::BipartiteRandom(p)
            }
        }
        "load" => {
            if n != 1 {
                return Err(arity(name, span, "one path", n));
            }
            match it.next().unwrap() {
                Arg::Str(path, _) => ExprKind::Load(path),
                other => return Err(error_at(other.span(), "`load` expects a quoted path")),
            }
        }
        _ if named::is_known(name, true) => {
            let params = it
                .map(|a| {
                    let s = a.span();
                    number_arg(a)?
                        .as_count()
                        .ok_or_else(|| error_at(s, "parameters must be nonnegative integers"))
                })
                .collect::<Result<Vec<u64>>>()?;
            ExprKind::Named {
                name: name.to_string(),
                params,
            }
        }
        _ => return Err(error_at(span, format!("unknown identifier `{name}`"))),
    })
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: lex(src)?,
        pos: 0,
    };
    let e = parser.expr()?;
    let rest = parser.next();
    if rest.tok != Tok::End {
        return Err(error_at(rest.span, "unexpected input after the expression"));
    }
    Ok(e)
}

/// Default vertex limit for explicit graphs.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 14;

#[derive(Debug, Clone)]
pub struct EvalOptions {
    /// Evaluate masses and probabilities in floating point, allowing `alpha`.
    pub approx: bool,
    pub max_vertices: usize,
    /// Directory relative paths in `load` resolve against.
    pub base_dir: Option<PathBuf>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            approx: false,
            max_vertices: DEFAULT_MAX_VERTICES,
            base_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyModel {
    Exact(StepModel),
    Approx(ApproxModel),
}

impl AnyModel {
    pub fn types(&self) -> usize {
        match self {
            AnyModel::Exact(m) => m.types(),
            AnyModel::Approx(m) => m.types(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Graph(LabeledGraph),
    Model(AnyModel),
}

impl Value {
    pub fn as_graph(&self) -> Option<&LabeledGraph> {
        match self {
            Value::Graph(g) => Some(g),
            Value::Model(_) => None,
        }
    }

    /// The step model of the value; graphs are lifted with uniform masses.
    pub fn to_model(&self, approx: bool) -> AnyModel {
        match self {
            Value::Graph(g) if approx => AnyModel::Approx(StepModel::from_graph(g)),
            Value::Graph(g) => AnyModel::Exact(StepModel::from_graph(g)),
            Value::Model(m) => m.clone(),
        }
    }
}

pub fn evaluate(expr: &Expr, options: &EvalOptions) -> Result<Value> {
    if options.approx {
        Ok(match eval::<f64>(expr, options)? {
            Val::Graph(g) => Value::Graph(g),
            Val::Model(m) => Value::Model(AnyModel::Approx(m)),
        })
    } else {
        Ok(match eval::<Rational>(expr, options)? {
            Val::Graph(g) => Value::Graph(g),
            Val::Model(m) => Value::Model(AnyModel::Exact(m)),
        })
    }
}

/// Parses and evaluates in one step.
pub fn evaluate_str(src: &str, options: &EvalOptions) -> Result<Value> {
    evaluate(&parse_expr(src)?, options)
}

enum Val<T: Scalar> {
    Graph(LabeledGraph),
    Model(StepModel<T>),
}

impl<T: Scalar> Val<T> {
    fn lift(self) -> StepModel<T> {
        match self {
            Val::Graph(g) => StepModel::from_graph(&g),
            Val::Model(m) => m,
        }
    }
}

fn check_size(op: &'static str, n: Option<usize>, options: &EvalOptions) -> Result<usize> {
    match n {
        Some(n) if n <= options.max_vertices => Ok(n),
        _ => Err(Error::TooLarge {
            op,
            n: n.unwrap_or(usize::MAX),
            max: options.max_vertices,
        }),
    }
}

/// Vertex count of a catalogue graph, computed without building it.
fn named_order(name: &str, params: &[u64]) -> Option<usize> {
    let p = |i: usize| params.get(i).map(|&x| x as usize);
    match name {
        "kpart" | "Kpart" => params.iter().try_fold(0usize, |a, &x| a.checked_add(x as usize)),
        "paley" | "K" | "A" | "C" | "P" | "loopK" => p(0),
        "cayley2" => p(0).and_then(|d| 1usize.checked_shl(d.min(63) as u32)),
        _ => {
            let digits = name.trim_start_matches(|c: char| !c.is_ascii_digit());
            digits.parse().ok().or(Some(0))
        }
    }
}

fn graph_of<T: Scalar>(v: Val<T>, op: &str, span: Span) -> Result<LabeledGraph> {
    match v {
        Val::Graph(g) => Ok(g),
        Val::Model(_) => Err(Error::Type(format!(
            "{}:{}: `{op}` needs a graph, got a step model",
            span.line, span.column
        ))),
    }
}

fn eval<T: Scalar>(expr: &Expr, options: &EvalOptions) -> Result<Val<T>> {
    Ok(match &expr.kind {
        ExprKind::Named { name, params } => {
            check_size("named graph", named_order(name, params), options)?;
            Val::Graph(named::build(name, params)?)
        }
        ExprKind::Complement(e) => match eval::<T>(e, options)? {
            Val::Graph(g) => Val::Graph(g.complement()),
            Val::Model(m) => Val::Model(m.complement()),
        },
        ExprKind::BlowUp(e, m) => {
            let g = graph_of(eval::<T>(e, options)?, "blowup", expr.span)?;
            check_size("blowup", g.order().checked_mul(*m as usize), options)?;
            Val::Graph(g.blow_up(*m as usize)?)
        }
        ExprKind::Compose(a, b) => {
            let outer = graph_of(eval::<T>(a, options)?, "compose", expr.span)?;
            let inner = graph_of(eval::<T>(b, options)?, "compose", expr.span)?;
            check_size("compose", outer.order().checked_mul(inner.order()), options)?;
            Val::Graph(outer.compose(&inner)?)
        }
        ExprKind::Tensor(items) => {
            let values = items.iter().map(|e| eval::<T>(e, options)).collect::<Result<Vec<_>>>()?;
            if values.iter().all(|v| matches!(v, Val::Graph(_))) {
                let graphs: Vec<LabeledGraph> = values
                    .into_iter()
                    .map(|v| graph_of(v, "tensor", expr.span))
                    .collect::<Result<_>>()?;
                let n = graphs.iter().try_fold(1usize, |a, g| a.checked_mul(g.order()));
                check_size("tensor", n, options)?;
                let mut it = graphs.into_iter();
                let first = it.next().expect("arity checked");
                Val::Graph(it.fold(first, |acc, g| acc.tensor(&g)))
            } else {
                let mut it = values.into_iter().map(Val::lift);
                let first = it.next().expect("arity checked");
                Val::Model(it.fold(first, |acc, m| acc.tensor(&m)))
            }
        }
        ExprKind::Union(parts) => {
            if parts[0].1.is_none() {
                let mut graphs = Vec::with_capacity(parts.len());
                for (e, _) in parts {
                    match eval::<T>(e, options)? {
                        Val::Graph(g) => graphs.push(g),
                        Val::Model(_) => {
                            return Err(Error::Type(format!(
                                "{}:{}: a union involving step models needs a mass on every part",
                                expr.span.line, expr.span.column
                            )))
                        }
                    }
                }
                let n = graphs.iter().try_fold(0usize, |a, g| a.checked_add(g.order()));
                check_size("union", n, options)?;
                let mut it = graphs.into_iter();
                let first = it.next().expect("arity checked");
                Val::Graph(it.fold(first, |acc, g| acc.disjoint_union(&g)))
            } else {
                let mut models = Vec::with_capacity(parts.len());
                for (e, w) in parts {
                    let w = w.as_ref().expect("all parts weighted").value::<T>()?;
                    models.push((eval::<T>(e, options)?.lift(), w));
                }
                Val::Model(StepModel::union(&models)?)
            }
        }
        ExprKind::Bernoulli(p) => Val::Model(StepModel::bernoulli(p.value::<T>()?)?),
        ExprKind::BipartiteRandom(p) => Val::Model(StepModel::bipartite_random(p.value::<T>()?)?),
        ExprKind::Load(path) => {
            let mut full = PathBuf::from(path);
            if full.is_relative() {
                if let Some(base) = &options.base_dir {
                    full = base.join(full);
                }
            }
            let text = std::fs::read_to_string(&full)?;
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::Graph6(format!("{} is empty", full.display())))?;
            let g = graph6::decode(line)?;
            check_size("load", Some(g.order()), options)?;
            Val::Graph(g)
        }
    })
}
