//! Isomorphism types of labeled graphs on `t ≤ 5` vertices.

use std::sync::OnceLock;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::graph6;
use crate::labeled::{self, Mask};
use crate::named;

pub const MIN_TABLE_ORDER: usize = 2;
pub const MAX_TABLE_ORDER: usize = labeled::MAX_ORDER;

/// Basis order for four-vertex types used by transition matrices and reports.
pub const ORDER4_BASIS: [&str; 11] = ["K4", "A4", "T4", "S4", "M4", "C4", "Q4", "V4", "D4", "E4", "P4"];

#[derive(Debug, Clone)]
pub struct IsoEntry {
    pub name: String,
    pub code: CanonicalCode,
    /// Smallest mask in the orbit.
    pub representative: Mask,
    pub orbit_size: u64,
    pub aut_count: u64,
    pub edges: u32,
}

#[derive(Debug)]
pub struct IsoTable {
    t: usize,
    entries: Vec<IsoEntry>,
    index: Vec<u16>,
}

impl IsoTable {
    pub fn order(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &[IsoEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the type of a labeled graph.
    #[inline]
    pub fn type_of(&self, mask: Mask) -> usize {
        self.index[mask as usize] as usize
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// Resolves a type by name, by a graph6 string of a `t`-vertex graph,
    /// or by the name of a catalogue graph with `t` vertices.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.position(name) {
            return Some(i);
        }
        let graph = named::build(name, &[])
            .ok()
            .or_else(|| graph6::decode(name).ok())?;
        if graph.order() != self.t || !graph.is_loopless() {
            return None;
        }
        let all: Vec<usize> = (0..self.t).collect();
        Some(self.type_of(graph.induced_mask(&all)))
    }

    pub fn orbit(&self, entry: usize) -> impl Iterator<Item = Mask> + '_ {
        (0..self.index.len() as Mask).filter(move |&m| self.type_of(m) == entry)
    }

    pub fn complement_of(&self, entry: usize) -> usize {
        self.type_of(labeled::complement(self.t, self.entries[entry].representative))
    }
}

pub fn iso_table(t: usize) -> Result<&'static IsoTable> {
    static TABLES: [OnceLock<IsoTable>; MAX_TABLE_ORDER + 1] =
        [const { OnceLock::new() }; MAX_TABLE_ORDER + 1];
    if !(MIN_TABLE_ORDER..=MAX_TABLE_ORDER).contains(&t) {
        return Err(Error::OrderOutOfRange {
            t,
            min: MIN_TABLE_ORDER,
            max: MAX_TABLE_ORDER,
        });
    }
    Ok(TABLES[t].get_or_init(|| build_table(t)))
}

fn aliases(t: usize) -> Vec<(&'static str, LabeledGraph)> {
    let names: &[&str] = match t {
        2 => &["A2", "K2"],
        3 => &["A3", "K3", "P3"],
        4 => &ORDER4_BASIS,
        5 => &["A5", "K5", "C5", "P5", "bull"],
        _ => &[],
    };
    let mut out: Vec<_> = names
        .iter()
        .map(|&n| (n, named::build(n, &[]).expect("catalogue names")))
        .collect();
    if t == 3 {
        out.push(("E3", LabeledGraph::from_edges(3, &[(0, 1)])));
    }
    out
}

fn build_table(t: usize) -> IsoTable {
    let space = labeled::mask_space(t);
    let mut codes: Vec<(CanonicalCode, Mask)> = Vec::new();
    let mut index = vec![u16::MAX; space];
    let mut by_code = std::collections::HashMap::new();
    for mask in 0..space as Mask {
        let code = canonical_form(&LabeledGraph::from_mask(t, mask)).expect("t <= 5");
        let slot = *by_code.entry(code.bits).or_insert_with(|| {
            codes.push((code, mask));
            codes.len() - 1
        });
        index[mask as usize] = slot as u16;
    }

    let alias_of: Vec<(usize, &str)> = aliases(t)
        .into_iter()
        .map(|(name, g)| (by_code[&canonical_form(&g).unwrap().bits], name))
        .collect();

    let mut entries: Vec<(usize, IsoEntry)> = codes
        .iter()
        .enumerate()
        .map(|(slot, &(code, representative))| {
            let name = match alias_of.iter().find(|(s, _)| *s == slot) {
                Some((_, name)) => name.to_string(),
                None => graph6::encode(&LabeledGraph::from_mask(t, representative)).unwrap(),
            };
            (
                slot,
                IsoEntry {
                    name,
                    code,
                    representative,
                    orbit_size: code.orbit_size(),
                    aut_count: code.aut_count,
                    edges: representative.count_ones(),
                },
            )
        })
        .collect();

    if t == 4 {
        entries.sort_by_key(|(_, e)| ORDER4_BASIS.iter().position(|&n| n == e.name));
    } else {
        entries.sort_by_key(|(_, e)| (e.edges, e.code.bits));
    }
    let mut remap = vec![0u16; entries.len()];
    for (new, (old, _)) in entries.iter().enumerate() {
        remap[*old] = new as u16;
    }
    for i in index.iter_mut() {
        *i = remap[*i as usize];
    }
    IsoTable {
        t,
        entries: entries.into_iter().map(|(_, e)| e).collect(),
        index,
    }
}
