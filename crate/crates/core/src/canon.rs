//! Canonical forms of small graphs by exhaustive relabeling.
//!
//! The code of a labeling `π` is the bit string obtained by visiting the
//! relabeled vertices `d = 0, 1, …` and emitting, for each, its adjacency to
//! `0..d` followed by its loop bit. The canonical code is the
//! lexicographically smallest such string. Emitting vertex by vertex lets
//! the search discard any partial labeling whose prefix already exceeds the
//! best code found so far.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub n: usize,
    /// Code bits, first bit most significant; `n(n+1)/2` bits long.
    pub bits: u64,
    /// Order of the automorphism group.
    pub aut_count: u64,
}

impl CanonicalCode {
    pub fn orbit_size(&self) -> u64 {
        factorial(self.n) / self.aut_count
    }

    pub fn code_len(&self) -> usize {
        self.n * (self.n + 1) / 2
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn canonical_form(g: &LabeledGraph) -> Result<CanonicalCode> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::TooLarge {
            op: "canonical_form",
            n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let total = n * (n + 1) / 2;
    let mut search = Search {
        g,
        n,
        total,
        best: u64::MAX,
        count: 0,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
    };
    search.extend(0, 0);
    Ok(CanonicalCode {
        n,
        bits: search.best,
        aut_count: search.count,
    })
}

/// Whether two graphs of order at most [`MAX_CANONICAL_ORDER`] are isomorphic.
pub fn isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(canonical_form(a)?.bits == canonical_form(b)?.bits)
}

struct Search<'a> {
    g: &'a LabeledGraph,
    n: usize,
    total: usize,
    best: u64,
    count: u64,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, prefix: u64, len: usize) {
        let d = self.perm.len();
        if d == self.n {
            if prefix < self.best {
                self.best = prefix;
                self.count = 1;
            } else if prefix == self.best {
                self.count += 1;
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            let mut code = prefix;
            for &u in &self.perm {
                code = code << 1 | u64::from(self.g.has_edge(u, v));
            }
            code = code << 1 | u64::from(self.g.has_loop(v));
            let code_len = len + d + 1;
            if self.best != u64::MAX && code > self.best >> (self.total - code_len) {
                continue;
            }
            self.used[v] = true;
            self.perm.push(v);
            self.extend(code, code_len);
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{build, paley};
    use crate::labeled;

    fn g(name: &str) -> LabeledGraph {
        build(name, &[]).unwrap()
    }

    /// Automorphisms counted by checking every permutation directly.
    fn brute_aut(g: &LabeledGraph) -> u64 {
        labeled::permutations(g.order())
            .into_iter()
            .filter(|p| g.relabel(p) == *g)
            .count() as u64
    }

    #[test]
    fn automorphism_counts() {
        let p4 = canonical_form(&g("P4")).unwrap();
        assert_eq!(p4.aut_count, 2);
        assert_eq!(p4.orbit_size(), 12);
        assert_eq!(canonical_form(&g("K4")).unwrap().aut_count, 24);
        for name in ["C5", "bull", "Q4", "V4", "M4", "D4", "S4", "T4", "E4", "loopK3"] {
            let graph = g(name);
            assert_eq!(canonical_form(&graph).unwrap().aut_count, brute_aut(&graph), "{name}");
        }
    }

    #[test]
    fn k3_tensor_k3_is_paley_9() {
        let k3k3 = g("K3").tensor(&g("K3"));
        let p9 = paley(9).unwrap();
        let a = canonical_form(&k3k3).unwrap();
        let b = canonical_form(&p9).unwrap();
        assert_eq!(a.bits, b.bits);
        assert_eq!(a.aut_count, 72);
    }

    #[test]
    fn distinguishes_loops() {
        assert!(!isomorphic(&g("K3"), &g("loopK3")).unwrap());
        let one_loop = LabeledGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2), (1, 1)]);
        let other = LabeledGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2), (2, 2)]);
        assert!(isomorphic(&one_loop, &other).unwrap());
    }

    #[test]
    fn relabeling_preserves_code() {
        let bull = g("bull");
        let code = canonical_form(&bull).unwrap();
        for p in labeled::permutations(5) {
            assert_eq!(canonical_form(&bull.relabel(&p)).unwrap(), code);
        }
    }

    #[test]
    fn rejects_large_graphs() {
        assert!(canonical_form(&g("C11")).is_err());
    }
}
