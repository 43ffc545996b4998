//! Catalogue of named graphs: clique/anticlique/cycle/path families,
//! complete multipartite graphs, Paley graphs, Hamming-weight Cayley graphs
//! of `F_2^n`, and the fixed small graphs with conventional names.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Orders for which `paley(q)` is available.
pub const PALEY_ORDERS: [usize; 5] = [5, 9, 13, 17, 29];

/// Largest dimension accepted by `cayley2`.
pub const MAX_CAYLEY_DIMENSION: usize = 14;

/// Fixed small graphs. Four-vertex names follow the usual inducibility
/// tables; `bull` is the triangle with two pendant edges at distinct corners.
const FIXED: &[(&str, usize, &[(usize, usize)])] = &[
    ("T4", 4, &[(0, 1), (0, 2), (1, 2)]),
    ("S4", 4, &[(0, 1), (0, 2), (0, 3)]),
    ("M4", 4, &[(0, 1), (2, 3)]),
    ("V4", 4, &[(0, 1), (0, 2)]),
    ("Q4", 4, &[(0, 1), (0, 2), (1, 2), (0, 3)]),
    ("D4", 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
    ("E4", 4, &[(0, 1)]),
    ("bull", 5, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]),
];

pub fn fixed_names() -> impl Iterator<Item = &'static str> {
    FIXED.iter().map(|(name, _, _)| *name)
}

/// Builds a catalogue graph. `name` is either a family name taking
/// `params` (`K`, `A`, `C`, `P`, `loopK`, `kpart`, `paley`, `cayley2`), a
/// family name with its order appended (`K4`, `loopK1`, `C5`), or a fixed
/// name such as `P4`, `Q4` or `bull`.
pub fn build(name: &str, params: &[u64]) -> Result<LabeledGraph> {
    if let Some(&(_, n, edges)) = FIXED.iter().find(|(fixed, _, _)| *fixed == name) {
        no_params(name, params)?;
        return Ok(LabeledGraph::from_edges(n, edges));
    }
    if let Some((family, order)) = split_order(name) {
        no_params(name, params)?;
        return family_member(family, order, name);
    }
    match name {
        "K" | "A" | "C" | "P" | "loopK" => {
            let [order] = params else {
                return Err(Error::params(name, "expected exactly one order parameter"));
            };
            family_member(name, *order, name)
        }
        "kpart" | "Kpart" => kpart(params),
        "paley" => {
            let [q] = params else {
                return Err(Error::params(name, "expected the field order"));
            };
            paley(*q as usize)
        }
        "cayley2" => {
            let Some((&dim, weights)) = params.split_first() else {
                return Err(Error::params(name, "expected a dimension and a weight set"));
            };
            let weights: Vec<usize> = weights.iter().map(|&w| w as usize).collect();
            cayley2(dim as usize, &weights)
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Whether `name` is a catalogue name without building the graph. Family
/// names (`K`, `paley`, …) take parameters; `K4` or `bull` take none.
pub fn is_known(name: &str, with_params: bool) -> bool {
    if with_params {
        matches!(name, "K" | "A" | "C" | "P" | "loopK" | "kpart" | "Kpart" | "paley" | "cayley2")
    } else {
        fixed_names().any(|f| f == name) || split_order(name).is_some()
    }
}

fn no_params(name: &str, params: &[u64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::params(name, "takes no parameters"))
    }
}

fn split_order(name: &str) -> Option<(&str, u64)> {
    let digits = name.trim_start_matches(|c: char| !c.is_ascii_digit());
    let family = &name[..name.len() - digits.len()];
    if digits.is_empty() || !matches!(family, "K" | "A" | "C" | "P" | "loopK") {
        return None;
    }
    Some((family, digits.parse().ok()?))
}

fn family_member(family: &str, order: u64, label: &str) -> Result<LabeledGraph> {
    let n = order as usize;
    if n == 0 || order > 1 << 20 {
        return Err(Error::params(label, "order must be between 1 and 2^20"));
    }
    Ok(match family {
        "K" => LabeledGraph::from_fn(n, |u, v| u != v),
        "A" => LabeledGraph::empty(n),
        "loopK" => LabeledGraph::from_fn(n, |_, _| true),
        "C" => {
            if n < 3 {
                return Err(Error::params(label, "cycles need at least 3 vertices"));
            }
            LabeledGraph::from_fn(n, |u, v| (u + 1) % n == v || (v + 1) % n == u)
        }
        "P" => LabeledGraph::from_fn(n, |u, v| u + 1 == v || v + 1 == u),
        _ => unreachable!("family names are checked by the caller"),
    })
}

/// Complete multipartite graph with the given part sizes.
pub fn kpart(sizes: &[u64]) -> Result<LabeledGraph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::params("kpart", "part sizes must be positive"));
    }
    let part: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat(i).take(s as usize))
        .collect();
    Ok(LabeledGraph::from_fn(part.len(), |u, v| part[u] != part[v]))
}

/// Paley graph: field elements, adjacent iff their difference is a nonzero square.
pub fn paley(q: usize) -> Result<LabeledGraph> {
    if !PALEY_ORDERS.contains(&q) {
        return Err(Error::params(
            "paley",
            format!("order {q} unsupported; expected one of {PALEY_ORDERS:?}"),
        ));
    }
    if q == 9 {
        // F_9 = F_3[i] / (i^2 + 1); element a + b·i is vertex 3a + b.
        let mul = |(a, b): (usize, usize), (c, d): (usize, usize)| ((a * c + 6 - b * d % 3) % 3, (a * d + b * c) % 3);
        let mut square = [false; 9];
        for x in 1..9 {
            let (a, b) = mul((x / 3, x % 3), (x / 3, x % 3));
            square[3 * a + b] = true;
        }
        return Ok(LabeledGraph::from_fn(9, |u, v| {
            let a = (u / 3 + 3 - v / 3) % 3;
            let b = (u % 3 + 3 - v % 3) % 3;
            u != v && square[3 * a + b]
        }));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(LabeledGraph::from_fn(q, |u, v| u != v && square[(u + q - v) % q]))
}

/// Cayley graph of `F_2^dim` generated by every vector whose Hamming weight
/// lies in `weights`. Weight 0 puts a loop at every vertex.
pub fn cayley2(dim: usize, weights: &[usize]) -> Result<LabeledGraph> {
    if dim == 0 || dim > MAX_CAYLEY_DIMENSION {
        return Err(Error::params(
            "cayley2",
            format!("dimension must be in 1..={MAX_CAYLEY_DIMENSION}"),
        ));
    }
    let mut allowed = vec![false; dim + 1];
    for &w in weights {
        if w > dim {
            return Err(Error::params("cayley2", format!("weight {w} exceeds dimension {dim}")));
        }
        if allowed[w] {
            return Err(Error::params("cayley2", format!("weight {w} repeated")));
        }
        allowed[w] = true;
    }
    Ok(LabeledGraph::from_fn(1 << dim, |u, v| {
        allowed[(u ^ v).count_ones() as usize]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(build("P", &[4]).unwrap().degrees(), vec![1, 2, 2, 1]);
        assert_eq!(build("P4", &[]).unwrap(), build("P", &[4]).unwrap());
        assert_eq!(build("K5", &[]).unwrap().edge_count(), 10);
        assert_eq!(build("A3", &[]).unwrap().edge_count(), 0);
        assert!(build("loopK1", &[]).unwrap().has_loop(0));
        assert!(build("C2", &[]).is_err());
        assert!(build("K0", &[]).is_err());
        assert!(build("K4", &[3]).is_err());
        assert!(matches!(build("X7", &[]), Err(Error::UnknownName(_))));
    }

    #[test]
    fn multipartite() {
        let g = kpart(&[2, 3]).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 6);
        assert!(kpart(&[]).is_err());
    }

    #[test]
    fn paley_graphs_are_regular() {
        for q in PALEY_ORDERS {
            let g = paley(q).unwrap();
            assert_eq!(g.degrees(), vec![(q - 1) / 2; q], "q = {q}");
        }
        assert!(paley(7).is_err());
        assert!(build("paley", &[11]).is_err());
    }

    #[test]
    fn paley_17_is_self_complementary() {
        // search the affine maps x -> a·x for one carrying G onto its complement
        let g = paley(17).unwrap();
        let c = g.simple_complement();
        let found = (1..17).find(|&a| {
            let perm: Vec<usize> = (0..17).map(|x| a * x % 17).collect();
            g.relabel(&perm) == c
        });
        assert!(found.is_some());
        assert!(paley(17).unwrap().relabel(&(0..17).map(|x| 4 * x % 17).collect::<Vec<_>>()) == g);
    }

    #[test]
    fn cayley_degrees() {
        let g = cayley2(10, &[1, 2, 5, 6, 9, 10]).unwrap();
        assert_eq!(g.order(), 1024);
        assert_eq!(g.degree(0), 10 + 45 + 252 + 210 + 10 + 1);
        assert_eq!(g.degrees().iter().max(), Some(&528));
        assert!(g.is_loopless());
        let looped = cayley2(3, &[0, 1]).unwrap();
        assert!(looped.has_loop(5));
        assert!(cayley2(3, &[4]).is_err());
        assert!(cayley2(3, &[1, 1]).is_err());
    }
}
