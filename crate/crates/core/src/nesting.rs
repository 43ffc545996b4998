//! Lexicographic products and nested blow-ups.
//!
//! A sample of `t` positions from `G ⊙ M` groups the positions by the vertex
//! of `G` they land on. Positions in different groups see the adjacency of
//! `G`; positions in the same group see `M`. Summing over the set partitions
//! of the positions gives
//!
//! ```text
//! r(H, G ⊙ M) = Σ_λ (s)_ℓ / s^t · p_ℓ(H[λ], G) · Σ_{H' ≡ H within λ} r(H', M)
//! ```
//!
//! where `λ` runs over partitions with `ℓ` blocks whose cross adjacency in
//! `H` is uniform and `H[λ]` is the quotient graph. The map `r(M) ↦ r(G ⊙ M)`
//! is linear, and its fixed point is the profile of `G^{⊙n}` as `n → ∞`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Options};
use crate::graph::LabeledGraph;
use crate::graph6;
use crate::iso::iso_table;
use crate::labeled::{self, Mask};
use crate::linalg;
use crate::model::StepModel;
use crate::profile::{induced_ordered, repetitive_labeled, Flavor, LabeledProfile, ProfileVector};
use crate::scalar::Rational;
use crate::spectral::{fourier, SpectralProfile};

/// A set partition of `0..t`, blocks ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    t: usize,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// From a restricted growth string: `labels[0] = 0` and each label is at
    /// most one more than the largest before it.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &b) in labels.iter().enumerate() {
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            if b >= blocks.len() {
                return Err(Error::InvalidParams {
                    name: "partition".into(),
                    reason: format!("labels {labels:?} are not a restricted growth string"),
                });
            }
            blocks[b].push(v);
        }
        Ok(Partition {
            t: labels.len(),
            block_of: labels.to_vec(),
            blocks,
        })
    }

    pub fn order(&self) -> usize {
        self.t
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Slots of pairs inside a common block.
    pub fn inner_slots(&self) -> Mask {
        labeled::slot_pairs(self.t)
            .into_iter()
            .enumerate()
            .filter(|(_, (a, b))| self.block_of[*a] == self.block_of[*b])
            .fold(0, |m, (k, _)| m | 1 << k)
    }

    /// The graph on blocks when every pair of blocks is fully joined or
    /// fully separated in `mask`, otherwise `None`.
    pub fn quotient(&self, mask: Mask) -> Option<Mask> {
        let l = self.blocks.len();
        let mut out = 0;
        for x in 0..l {
            for y in x + 1..l {
                let first = labeled::adjacent(self.t, mask, self.blocks[x][0], self.blocks[y][0]);
                for &a in &self.blocks[x] {
                    for &b in &self.blocks[y] {
                        if labeled::adjacent(self.t, mask, a, b) != first {
                            return None;
                        }
                    }
                }
                if first {
                    out |= 1 << labeled::slot(l, x, y);
                }
            }
        }
        Some(out)
    }

    pub fn is_admissible(&self, mask: Mask) -> bool {
        self.quotient(mask).is_some()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            let items: Vec<String> = block.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// All set partitions of `0..t`, in lexicographic order of their growth strings.
pub fn all_partitions(t: usize) -> Vec<Partition> {
    fn grow(labels: &mut Vec<usize>, t: usize, max: usize, out: &mut Vec<Partition>) {
        if labels.len() == t {
            out.push(Partition::from_labels(labels).expect("growth strings are valid"));
            return;
        }
        let next = if labels.is_empty() { 0 } else { max + 1 };
        for b in 0..=next {
            labels.push(b);
            grow(labels, t, max.max(b), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if t == 0 {
        return out;
    }
    grow(&mut Vec::with_capacity(t), t, 0, &mut out);
    out
}

/// Partitions of `0..t` admissible for the labeled graph `mask`.
pub fn admissible_partitions(t: usize, mask: Mask) -> Vec<Partition> {
    all_partitions(t)
        .into_iter()
        .filter(|p| p.is_admissible(mask))
        .collect()
}

/// `s (s-1) … (s-l+1)`.
pub fn falling_factorial(s: usize, l: usize) -> BigInt {
    if l > s {
        return BigInt::zero();
    }
    (0..l).fold(BigInt::one(), |acc, i| acc * BigInt::from(s - i))
}

struct Term {
    weight: Rational,
    blocks: usize,
    inner: Mask,
    quotients: Vec<Option<Mask>>,
}

/// Precomputed outer data for `r(G ⊙ ·)` at order `t`.
pub struct Composer {
    t: usize,
    outer_order: usize,
    marginals: Vec<LabeledProfile>,
    terms: Vec<Term>,
}

impl Composer {
    pub fn new(outer: &LabeledGraph, t: usize, options: &Options) -> Result<Self> {
        outer.require_loopless("compose")?;
        if outer.order() < 2 {
            return Err(Error::params("compose_profile", "the outer graph needs at least two vertices"));
        }
        if !(1..=labeled::MAX_ORDER).contains(&t) {
            return Err(Error::OrderOutOfRange {
                t,
                min: 1,
                max: labeled::MAX_ORDER,
            });
        }
        let s = outer.order();
        let top = induced_ordered(outer, s.min(t), options)?;
        let marginals = (0..=top.t).map(|l| top.marginal(l.max(1))).collect();
        let s_pow_t = num_traits::pow(BigInt::from(s), t);
        let terms = all_partitions(t)
            .into_iter()
            .filter(|p| p.len() <= s)
            .map(|p| Term {
                weight: Rational::new(falling_factorial(s, p.len()), s_pow_t.clone()),
                blocks: p.len(),
                inner: p.inner_slots(),
                quotients: (0..labeled::mask_space(t) as Mask).map(|m| p.quotient(m)).collect(),
            })
            .collect();
        Ok(Composer {
            t,
            outer_order: s,
            marginals,
            terms,
        })
    }

    pub fn order(&self) -> usize {
        self.t
    }

    pub fn outer_order(&self) -> usize {
        self.outer_order
    }

    /// `r_t(G ⊙ M)` from `r_t(M)`.
    pub fn compose(&self, inner: &LabeledProfile) -> Result<LabeledProfile> {
        if inner.t != self.t {
            return Err(Error::OrderMismatch {
                left: self.t,
                right: inner.t,
            });
        }
        let space = labeled::mask_space(self.t);
        let mut out = vec![Rational::zero(); space];
        let mut within = vec![Rational::zero(); space];
        for term in &self.terms {
            within.iter_mut().for_each(|x| x.set_zero());
            for (m, v) in inner.values.iter().enumerate() {
                if !v.is_zero() {
                    within[m & term.inner as usize] += v;
                }
            }
            let outer = &self.marginals[term.blocks];
            for (h, slot) in out.iter_mut().enumerate() {
                let Some(q) = term.quotients[h] else { continue };
                let a = &outer.values[q as usize];
                let b = &within[h & term.inner as usize];
                if !a.is_zero() && !b.is_zero() {
                    *slot += term.weight.clone() * a * b;
                }
            }
        }
        LabeledProfile::new(self.t, Flavor::Repetitive, out)
    }
}

/// One step of the nesting map: `r_t(G ⊙ G')` from `r_t(G')`.
pub fn compose_profile(outer: &LabeledGraph, inner: &LabeledProfile, options: &Options) -> Result<LabeledProfile> {
    Composer::new(outer, inner.t, options)?.compose(inner)
}

/// `R_t(G ⊙ M)` for a loopless graph `G` and a step model `M`.
pub fn compose_model_profile(
    outer: &LabeledGraph,
    inner: &StepModel,
    t: usize,
    options: &Options,
) -> Result<ProfileVector> {
    iso_table(t)?;
    compose_profile(outer, &repetitive_labeled(inner, t, options)?, options)?.to_unlabeled()
}

/// The linear map `R_t(M) ↦ R_t(G ⊙ M)` on type densities. Column `j` is the
/// image of the unit vector on type `j`, so every column sums to one.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub t: usize,
    /// graph6 of the base graph, or its order when too large to encode.
    pub base: String,
    pub basis: Vec<String>,
    pub entries: Vec<Vec<Rational>>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.entries, v)
    }

    /// Smallest common denominator of the entries.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.entries
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.size())
            .map(|j| self.entries.iter().fold(Rational::zero(), |a, row| a + &row[j]))
            .collect()
    }
}

fn describe(g: &LabeledGraph) -> String {
    graph6::encode(g).unwrap_or_else(|_| format!("{} vertices", g.order()))
}

pub fn transition_matrix(outer: &LabeledGraph, t: usize, options: &Options) -> Result<TransitionMatrix> {
    let table = iso_table(t)?;
    let composer = Composer::new(outer, t, options)?;
    let n = table.len();
    let columns = map_indexed(options.execution, n, |j| {
        let unit = ProfileVector {
            t,
            flavor: Flavor::Repetitive,
            values: (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect(),
        };
        composer.compose(&unit.to_labeled())?.to_unlabeled()
    });
    let mut entries = vec![vec![Rational::zero(); n]; n];
    for (j, column) in columns.into_iter().enumerate() {
        for (i, v) in column?.values.into_iter().enumerate() {
            entries[i][j] = v;
        }
    }
    Ok(TransitionMatrix {
        t,
        base: describe(outer),
        basis: table.names(),
        entries,
    })
}

/// Fixed point of a transition matrix: the unique probability vector in the
/// kernel of `F - I`.
pub fn stationary_vector(matrix: &TransitionMatrix) -> Result<ProfileVector> {
    let n = matrix.size();
    let shifted: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = matrix.entries[i][j].clone();
                    if i == j {
                        x - Rational::one()
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let kernel = linalg::solve_rational_kernel(&shifted);
    if kernel.len() != 1 {
        return Err(Error::Degenerate(format!(
            "fixed space of the transition matrix has dimension {}",
            kernel.len()
        )));
    }
    let v = kernel.into_iter().next().unwrap();
    let total = v.iter().fold(Rational::zero(), |a, b| a + b);
    if total.is_zero() {
        return Err(Error::Degenerate("fixed vector sums to zero".into()));
    }
    let values: Vec<Rational> = v.into_iter().map(|x| x / total.clone()).collect();
    if values.iter().any(|x| x < &Rational::zero()) {
        return Err(Error::Degenerate("fixed vector has a negative entry".into()));
    }
    Ok(ProfileVector {
        t: matrix.t,
        flavor: Flavor::Nested,
        values,
    })
}

/// Limit profile of `G^{⊙n}`, with the transition matrix it was solved from.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedProfile {
    pub unlabeled: ProfileVector,
    pub labeled: LabeledProfile,
    pub matrix: TransitionMatrix,
}

pub fn stationary_profile(outer: &LabeledGraph, t: usize, options: &Options) -> Result<NestedProfile> {
    let matrix = transition_matrix(outer, t, options)?;
    let unlabeled = stationary_vector(&matrix)?;
    Ok(NestedProfile {
        labeled: unlabeled.to_labeled(),
        unlabeled,
        matrix,
    })
}

/// `r̂_t` of the limit of `G^{⊙n}`.
pub fn nested_spectral(outer: &LabeledGraph, t: usize, options: &Options) -> Result<SpectralProfile> {
    Ok(fourier(&stationary_profile(outer, t, options)?.labeled))
}

/// `r_t(G^{⊙n})`: `n - 1` composition steps starting from `r_t(G)`.
pub fn iterate_profile(outer: &LabeledGraph, t: usize, n: usize, options: &Options) -> Result<LabeledProfile> {
    if n == 0 {
        return Err(Error::params("iterate_profile", "needs at least one factor"));
    }
    let composer = Composer::new(outer, t, options)?;
    let mut r = repetitive_labeled(&StepModel::<Rational>::from_graph(outer), t, options)?;
    for _ in 1..n {
        r = composer.compose(&r)?;
    }
    Ok(r)
}

/// Applies a transition matrix `steps` times to a type profile.
pub fn iterate_matrix(matrix: &TransitionMatrix, start: &ProfileVector, steps: usize) -> Result<ProfileVector> {
    if start.t != matrix.t {
        return Err(Error::OrderMismatch {
            left: matrix.t,
            right: start.t,
        });
    }
    let mut v = start.values.clone();
    for _ in 0..steps {
        v = matrix.apply(&v);
    }
    Ok(ProfileVector {
        t: start.t,
        flavor: start.flavor,
        values: v,
    })
}
