//! Formal rational combinations of isomorphism types of a fixed order.
//!
//! Text form: terms joined by `+` or `-`, each an optional coefficient
//! (`3`, `1/2`, `0.25`, optionally followed by `*`) and an atom. Atoms are
//! type names (`K4`, `P4`, `bull`), graph6 strings, or 1-based edge lists
//! such as `{1-2,2-3,3-4}`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::iso::{iso_table, IsoTable};
use crate::labeled::{self, Mask};
use crate::profile::ProfileVector;
use crate::scalar::{format_rational, integer, parse_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumGraph {
    t: usize,
    /// Nonzero coefficients by type index, sorted.
    terms: Vec<(usize, Rational)>,
}

/// Which density a coefficient vector reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `R(Q) = Σ c_H R(H)`.
    Unlabeled,
    /// `r(Q) = Σ c_H r(H)`, each type weighted by one labeled copy.
    Labeled,
}

impl QuantumGraph {
    pub fn new(t: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let table = iso_table(t)?;
        let mut coeffs = vec![Rational::zero(); table.len()];
        for (i, c) in terms {
            if i >= table.len() {
                return Err(Error::Type(format!("type index {i} out of range at t = {t}")));
            }
            coeffs[i] += c;
        }
        let terms: Vec<(usize, Rational)> = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return Err(Error::Type("a quantum graph needs a nonzero coefficient".into()));
        }
        Ok(QuantumGraph { t, terms })
    }

    /// A single type with coefficient one.
    pub fn single(t: usize, name: &str) -> Result<Self> {
        Self::parse(t, name)
    }

    /// `K_t + A_t`.
    pub fn clique_plus_anticlique(t: usize) -> Result<Self> {
        Self::parse(t, &format!("K{t}+A{t}"))
    }

    pub fn parse(t: usize, text: &str) -> Result<Self> {
        let table = iso_table(t)?;
        let mut terms = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(parse_error(text, rest, "empty quantum graph"));
        }
        let mut sign = Rational::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let (coef, after) = coefficient(text, rest)?;
            let (atom, after) = atom(text, after)?;
            let index = resolve_atom(table, atom).ok_or_else(|| {
                parse_error(text, rest, &format!("`{atom}` is not a graph on {t} vertices"))
            })?;
            terms.push((index, sign.clone() * coef));
            rest = after.trim_start();
            if rest.is_empty() {
                break;
            }
            sign = match rest.as_bytes()[0] {
                b'+' => Rational::one(),
                b'-' => -Rational::one(),
                _ => return Err(parse_error(text, rest, "expected `+` or `-`")),
            };
            rest = rest[1..].trim_start();
        }
        Self::new(t, terms)
    }

    pub fn order(&self) -> usize {
        self.t
    }

    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.terms
            .iter()
            .find(|(i, _)| *i == index)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// `Σ c_H · profile(H)`.
    pub fn density<T: Scalar>(&self, profile: &ProfileVector<T>) -> Result<T> {
        if profile.t != self.t {
            return Err(Error::OrderMismatch {
                left: self.t,
                right: profile.t,
            });
        }
        Ok(self.terms.iter().fold(T::zero(), |acc, (i, c)| {
            acc + T::from_rational(c) * profile.values[*i].clone()
        }))
    }

    /// The function on labeled graphs whose inner product with a labeled
    /// profile is the density at the given level.
    pub fn labeled_indicator(&self, level: Level) -> Vec<Rational> {
        let table = iso_table(self.t).expect("validated order");
        let coeffs: Vec<Rational> = (0..table.len())
            .map(|i| match level {
                Level::Unlabeled => self.coefficient(i),
                Level::Labeled => self.coefficient(i) / integer(table.entries()[i].orbit_size),
            })
            .collect();
        (0..labeled::mask_space(self.t) as Mask)
            .map(|m| coeffs[table.type_of(m)].clone())
            .collect()
    }
}

impl fmt::Display for QuantumGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = iso_table(self.t).expect("validated order").names();
        for (k, (i, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{}*", format_rational(&magnitude))?;
            }
            write!(f, "{}", names[*i])?;
        }
        Ok(())
    }
}

fn parse_error(full: &str, rest: &str, message: &str) -> Error {
    Error::Parse {
        line: 1,
        column: full.len() - rest.len() + 1,
        message: message.to_string(),
    }
}

fn coefficient<'a>(full: &str, text: &'a str) -> Result<(Rational, &'a str)> {
    let end = text
        .find(|c: char| !(c.is_ascii_digit() || c == '/' || c == '.'))
        .unwrap_or(text.len());
    if end == 0 {
        return Ok((Rational::one(), text));
    }
    let value = parse_rational(&text[..end]).ok_or_else(|| parse_error(full, text, "malformed coefficient"))?;
    let after = text[end..].trim_start();
    Ok((value, after.strip_prefix('*').map_or(after, str::trim_start)))
}

fn atom<'a>(full: &str, text: &'a str) -> Result<(&'a str, &'a str)> {
    let end = if text.starts_with('{') {
        text.find('}')
            .map(|i| i + 1)
            .ok_or_else(|| parse_error(full, text, "unterminated edge list"))?
    } else {
        text.find(|c: char| c.is_whitespace() || c == '+' || c == '-' || c == '*')
            .unwrap_or(text.len())
    };
    if end == 0 {
        return Err(parse_error(full, text, "expected a graph"));
    }
    Ok((&text[..end], &text[end..]))
}

fn resolve_atom(table: &IsoTable, atom: &str) -> Option<usize> {
    let Some(body) = atom.strip_prefix('{').and_then(|a| a.strip_suffix('}')) else {
        return table.resolve(atom);
    };
    let t = table.order();
    let mut mask: Mask = 0;
    for pair in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = pair.split_once('-')?;
        let (a, b): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        if a == 0 || b == 0 || a > t || b > t || a == b {
            return None;
        }
        mask |= 1 << labeled::slot(t, a - 1, b - 1);
    }
    Some(table.type_of(mask))
}
