//! Finite graphs with optional loops and the graph operators.
//!
//! Product vertex sets `V(G) × V(H)` are flattened as `g * |H| + h`, and a
//! blow-up of order `m` places copy `c` of vertex `g` at `g * m + c`.

use std::fmt;

use crate::error::{Error, Result};
use crate::labeled::{self, Mask};

/// A symmetric adjacency relation on `0..n`; the diagonal holds loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl LabeledGraph {
    /// Builds a graph from a symmetric predicate, evaluated once per unordered
    /// pair (including `u == v` for loops).
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n >= 1, "graphs have at least one vertex");
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for u in 0..n {
            for v in u..n {
                if adjacent(u, v) {
                    bits[u * words + v / 64] |= 1 << (v % 64);
                    bits[v * words + u / 64] |= 1 << (u % 64);
                }
            }
        }
        LabeledGraph { n, words, bits }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    /// Edges are unordered; a pair `(v, v)` adds a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let words = n.div_ceil(64);
        let mut g = LabeledGraph {
            n,
            words,
            bits: vec![0u64; n * words],
        };
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
            g.bits[u * words + v / 64] |= 1 << (v % 64);
            g.bits[v * words + u / 64] |= 1 << (u % 64);
        }
        g
    }

    pub fn from_mask(t: usize, mask: Mask) -> Self {
        Self::from_fn(t, |u, v| u != v && labeled::adjacent(t, mask, u, v))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|v| !self.has_loop(v))
    }

    pub(crate) fn require_loopless(&self, op: &'static str) -> Result<()> {
        if self.is_loopless() {
            Ok(())
        } else {
            Err(Error::LoopsNotAllowed { op })
        }
    }

    /// Neighbors of `v` other than `v` itself.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        let row = &self.bits[v * self.words..(v + 1) * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum::<usize>() - usize::from(self.has_loop(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Number of edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The labeled graph induced on `vertices` (in the given order); loops are ignored.
    pub fn induced_mask(&self, vertices: &[usize]) -> Mask {
        let t = vertices.len();
        let mut mask = 0;
        let mut k = 0;
        for a in 0..t {
            for b in a + 1..t {
                if self.has_edge(vertices[a], vertices[b]) {
                    mask |= 1 << k;
                }
                k += 1;
            }
        }
        mask
    }

    /// Vertex `v` of the result is vertex `perm[v]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> LabeledGraph {
        assert_eq!(perm.len(), self.n);
        LabeledGraph::from_fn(self.n, |u, v| self.has_edge(perm[u], perm[v]))
    }

    /// Flips every adjacency, loops included, so that the complement of a
    /// blow-up is the blow-up of the complement.
    pub fn complement(&self) -> LabeledGraph {
        LabeledGraph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Flips adjacency between distinct vertices and keeps the diagonal.
    pub fn simple_complement(&self) -> LabeledGraph {
        LabeledGraph::from_fn(self.n, |u, v| (u == v) == self.has_edge(u, v))
    }

    /// `m` copies of each vertex; copies of a looped vertex form a clique.
    /// The result is always loopless.
    pub fn blow_up(&self, m: usize) -> Result<LabeledGraph> {
        if m == 0 {
            return Err(Error::params("blowup", "order must be at least 1"));
        }
        Ok(LabeledGraph::from_fn(self.n * m, |x, y| {
            x != y && self.has_edge(x / m, y / m)
        }))
    }

    /// `G ⊙ H`: `(g,h) ~ (g',h')` iff `g ~ g'`, or `g = g'` and `h ~ h'`.
    pub fn compose(&self, inner: &LabeledGraph) -> Result<LabeledGraph> {
        self.require_loopless("compose")?;
        inner.require_loopless("compose")?;
        let k = inner.n;
        Ok(LabeledGraph::from_fn(self.n * k, |x, y| {
            let (g, h) = (x / k, x % k);
            let (g2, h2) = (y / k, y % k);
            if g == g2 {
                h != h2 && inner.has_edge(h, h2)
            } else {
                self.has_edge(g, g2)
            }
        }))
    }

    /// `G ⊗ H`: adjacent iff adjacent in exactly one coordinate. The
    /// diagonal follows the same rule.
    pub fn tensor(&self, other: &LabeledGraph) -> LabeledGraph {
        let k = other.n;
        LabeledGraph::from_fn(self.n * k, |x, y| {
            self.has_edge(x / k, y / k) ^ other.has_edge(x % k, y % k)
        })
    }

    pub fn disjoint_union(&self, other: &LabeledGraph) -> LabeledGraph {
        let n = self.n;
        LabeledGraph::from_fn(n + other.n, |x, y| match (x < n, y < n) {
            (true, true) => self.has_edge(x, y),
            (false, false) => other.has_edge(x - n, y - n),
            _ => false,
        })
    }

    /// True iff no distinct `x, y` satisfy `Γ(x) \ {y} = Γ(y) \ {x}`.
    pub fn is_twin_free(&self) -> Result<bool> {
        self.require_loopless("is_twin_free")?;
        for x in 0..self.n {
            'pair: for y in x + 1..self.n {
                for z in 0..self.n {
                    if z != x && z != y && self.has_edge(x, z) != self.has_edge(y, z) {
                        continue 'pair;
                    }
                }
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let loops: Vec<usize> = (0..self.n).filter(|&v| self.has_loop(v)).collect();
        f.debug_struct("LabeledGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .field("loops", &loops)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::build;

    fn g(name: &str) -> LabeledGraph {
        build(name, &[]).unwrap()
    }

    #[test]
    fn complement_of_clique_is_anticlique() {
        assert_eq!(g("K4").simple_complement(), g("A4"));
        assert_eq!(g("K4").complement(), g("loopK4").simple_complement());
        assert_eq!(g("loopK1").complement(), LabeledGraph::empty(1));
        assert_eq!(g("loopK4").complement(), g("A4"));
    }

    #[test]
    fn complement_is_an_involution() {
        let g = LabeledGraph::from_edges(6, &[(0, 1), (1, 2), (2, 2), (3, 5), (4, 0)]);
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.simple_complement().simple_complement(), g);
        assert!(g.simple_complement().has_loop(2));
    }

    #[test]
    fn blow_up_of_loop_is_clique() {
        assert_eq!(g("loopK1").blow_up(5).unwrap(), g("K5"));
        let k33 = g("K2").blow_up(3).unwrap();
        assert_eq!(k33.edge_count(), 9);
        assert!(k33.is_loopless());
        assert_eq!(g("C5").blow_up(1).unwrap(), g("C5"));
        assert!(g("K2").blow_up(0).is_err());
    }

    #[test]
    fn compose_is_not_commutative() {
        let c4 = g("K2").compose(&g("A2")).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.degrees(), vec![2; 4]);
        let m4 = g("A2").compose(&g("K2")).unwrap();
        assert_eq!(m4.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(g("P4").compose(&g("K1")).unwrap(), g("P4"));
        assert!(g("loopK1").compose(&g("K2")).is_err());
    }

    #[test]
    fn g18_shape() {
        let k3k3 = g("K3").tensor(&g("K3"));
        let g18 = k3k3.compose(&g("K2")).unwrap();
        assert_eq!(g18.order(), 18);
        // 4 neighbors in K3⊗K3 blown up by two, plus the twin
        assert_eq!(g18.degrees(), vec![9; 18]);
    }

    #[test]
    fn tensor_with_anticlique_is_blow_up() {
        let c5 = g("C5");
        assert_eq!(c5.tensor(&g("A3")), c5.blow_up(3).unwrap());
        let k3k3 = g("K3").tensor(&g("K3"));
        assert_eq!(k3k3.degrees(), vec![4; 9]);
    }

    #[test]
    fn tensor_diagonal_follows_xor() {
        let t = g("loopK1").tensor(&g("loopK1"));
        assert!(!t.has_loop(0));
        let t = g("loopK1").tensor(&g("K1"));
        assert!(t.has_loop(0));
    }

    #[test]
    fn twin_freeness() {
        assert!(g("P4").is_twin_free().unwrap());
        assert!(!g("C4").is_twin_free().unwrap());
        assert!(!g("K3").is_twin_free().unwrap());
        assert!(g("C5").is_twin_free().unwrap());
        assert!(!g("C5").blow_up(2).unwrap().is_twin_free().unwrap());
        assert!(g("loopK1").is_twin_free().is_err());
    }

    #[test]
    fn disjoint_union_sizes() {
        let u = g("K2").disjoint_union(&g("K2"));
        assert_eq!(u.order(), 4);
        assert_eq!(u, g("M4"));
        let u = g("C5").disjoint_union(&g("P4"));
        assert_eq!(u.order(), 9);
        assert_eq!(u.edge_count(), 8);
    }
}
