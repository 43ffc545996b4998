//! Labeled graphs on a small vertex set `0..t`, packed into a bit mask.
//!
//! Edge slot `k` corresponds to the pair `(i, j)`, `i < j`, in lexicographic
//! order: `(0,1), (0,2), …, (0,t-1), (1,2), …`. Bit `k` of the mask is set
//! iff the pair is an edge. This ordering is part of the serialization
//! contract for labeled and spectral profiles.

pub type Mask = u32;

/// Largest order for which labeled profiles are tabulated.
pub const MAX_ORDER: usize = 5;

pub const fn slot_count(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

pub const fn mask_space(t: usize) -> usize {
    1 << slot_count(t)
}

/// Slot of the pair `{i, j}` (`i != j`).
pub fn slot(t: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < t && i != j);
    i * t - i * (i + 1) / 2 + (j - i - 1)
}

pub fn slot_pairs(t: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(slot_count(t));
    for i in 0..t {
        for j in i + 1..t {
            pairs.push((i, j));
        }
    }
    pairs
}

pub fn adjacent(t: usize, mask: Mask, i: usize, j: usize) -> bool {
    mask >> slot(t, i, j) & 1 == 1
}

pub fn from_edges(t: usize, edges: &[(usize, usize)]) -> Mask {
    edges.iter().fold(0, |m, &(i, j)| m | 1 << slot(t, i, j))
}

pub fn edges(t: usize, mask: Mask) -> Vec<(usize, usize)> {
    slot_pairs(t)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, p)| p)
        .collect()
}

/// Relabels vertex `v` as `perm[v]`.
pub fn permute(t: usize, mask: Mask, perm: &[usize]) -> Mask {
    let mut out = 0;
    for (k, (i, j)) in slot_pairs(t).into_iter().enumerate() {
        if mask >> k & 1 == 1 {
            out |= 1 << slot(t, perm[i], perm[j]);
        }
    }
    out
}

/// The labeled graph induced on `vertices`, with `vertices[a]` renamed `a`.
pub fn restrict(t: usize, mask: Mask, vertices: &[usize]) -> Mask {
    let r = vertices.len();
    let mut out = 0;
    for a in 0..r {
        for b in a + 1..r {
            if adjacent(t, mask, vertices[a], vertices[b]) {
                out |= 1 << slot(r, a, b);
            }
        }
    }
    out
}

pub fn complement(t: usize, mask: Mask) -> Mask {
    !mask & (mask_space(t) as Mask - 1)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_order_is_lexicographic() {
        for t in 2..=6 {
            for (k, (i, j)) in slot_pairs(t).into_iter().enumerate() {
                assert_eq!(slot(t, i, j), k);
                assert_eq!(slot(t, j, i), k);
            }
        }
        assert_eq!(slot(4, 1, 2), 3);
    }

    #[test]
    fn restrict_and_permute() {
        // path 0-1-2-3
        let p4 = from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(restrict(4, p4, &[0, 1, 2]), from_edges(3, &[(0, 1), (1, 2)]));
        assert_eq!(restrict(4, p4, &[3, 0]), 0);
        let rev = permute(4, p4, &[3, 2, 1, 0]);
        assert_eq!(rev, p4);
        assert_eq!(complement(4, 0), 63);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(5).len(), 120);
    }
}
