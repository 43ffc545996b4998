//! Step models: finitely many vertex types with masses and pairwise edge
//! probabilities.
//!
//! A sample position lands on type `i` with probability `mass[i]`; two
//! distinct positions on types `i` and `j` are adjacent with probability
//! `w(i, j)`, independently of every other pair. Two positions on the same
//! type use the diagonal `w(i, i)`, so a looped vertex behaves like a
//! clique under blow-up.


use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::scalar::{is_probability, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel<T> {
    /// 0/1 edge probabilities, stored as a graph whose loops are the diagonal.
    Binary(LabeledGraph),
    /// Row-major `k × k` symmetric matrix.
    Weighted(Vec<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepModel<T: Scalar = Rational> {
    masses: Vec<T>,
    kernel: Kernel<T>,
}

pub type ApproxModel = StepModel<f64>;

impl<T: Scalar> StepModel<T> {
    /// Validates masses (positive, summing to one) and the symmetric weight matrix.
    pub fn new(masses: Vec<T>, weights: Vec<Vec<T>>) -> Result<Self> {
        let k = masses.len();
        if weights.len() != k || weights.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidModel(format!("weight matrix must be {k} × {k}")));
        }
        for i in 0..k {
            for j in 0..k {
                if !is_probability(&weights[i][j]) {
                    return Err(Error::InvalidModel(format!("w({i},{j}) is not a probability")));
                }
                if weights[i][j] != weights[j][i] {
                    return Err(Error::InvalidModel(format!("w({i},{j}) != w({j},{i})")));
                }
            }
        }
        let flat = weights.into_iter().flatten().collect();
        Self::from_parts(masses, Kernel::Weighted(flat))
    }

    fn from_parts(masses: Vec<T>, kernel: Kernel<T>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidModel("a model needs at least one type".into()));
        }
        if masses.iter().any(|m| *m <= T::zero()) {
            return Err(Error::InvalidModel("masses must be positive".into()));
        }
        let total = masses.iter().fold(T::zero(), |acc, m| acc + m.clone());
        if !total.approx_eq(&T::one()) {
            return Err(Error::InvalidModel(format!("masses sum to {total:?}, not 1")));
        }
        Ok(StepModel { masses, kernel })
    }

    /// One type per vertex with uniform masses; `w(i, j) = 1` iff `i ~ j`.
    pub fn from_graph(g: &LabeledGraph) -> Self {
        let n = g.order();
        let mass = T::one() / T::from_u64(n as u64);
        StepModel {
            masses: vec![mass; n],
            kernel: Kernel::Binary(g.clone()),
        }
    }

    /// The limit of `G(n, p)`: one type, edge probability `p`.
    pub fn bernoulli(p: T) -> Result<Self> {
        if !is_probability(&p) {
            return Err(Error::InvalidModel(format!("{p:?} is not a probability")));
        }
        Self::new(vec![T::one()], vec![vec![p]])
    }

    /// The limit of `G(n, n, p)`: two equal sides, no edges within a side.
    pub fn bipartite_random(p: T) -> Result<Self> {
        if !is_probability(&p) {
            return Err(Error::InvalidModel(format!("{p:?} is not a probability")));
        }
        let half = T::one() / T::from_u64(2);
        Self::new(
            vec![half.clone(), half],
            vec![vec![T::zero(), p.clone()], vec![p, T::zero()]],
        )
    }

    pub fn types(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn kernel(&self) -> &Kernel<T> {
        &self.kernel
    }

    pub fn weight(&self, i: usize, j: usize) -> T {
        match &self.kernel {
            Kernel::Binary(g) => {
                if g.has_edge(i, j) {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Kernel::Weighted(w) => w[i * self.types() + j].clone(),
        }
    }

    pub fn weights(&self) -> Vec<Vec<T>> {
        let k = self.types();
        (0..k).map(|i| (0..k).map(|j| self.weight(i, j)).collect()).collect()
    }

    pub fn is_binary(&self) -> bool {
        match &self.kernel {
            Kernel::Binary(_) => true,
            Kernel::Weighted(w) => w.iter().all(|x| x.is_zero() || x.is_one()),
        }
    }

    /// The kernel as a graph when every weight is 0 or 1.
    pub fn binary_graph(&self) -> Option<LabeledGraph> {
        match &self.kernel {
            Kernel::Binary(g) => Some(g.clone()),
            Kernel::Weighted(_) if self.is_binary() => {
                Some(LabeledGraph::from_fn(self.types(), |i, j| self.weight(i, j).is_one()))
            }
            Kernel::Weighted(_) => None,
        }
    }

    /// Weighted disjoint union: block-diagonal kernel, masses scaled by the
    /// normalized part proportions.
    pub fn union(parts: &[(StepModel<T>, T)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidModel("union of no parts".into()));
        }
        if parts.iter().any(|(_, p)| *p <= T::zero()) {
            return Err(Error::InvalidModel("union proportions must be positive".into()));
        }
        let total = parts.iter().fold(T::zero(), |acc, (_, p)| acc + p.clone());
        let masses: Vec<T> = parts
            .iter()
            .flat_map(|(m, p)| {
                let scale = p.clone() / total.clone();
                m.masses.iter().map(move |x| x.clone() * scale.clone())
            })
            .collect();
        let offsets: Vec<usize> = parts
            .iter()
            .scan(0, |acc, (m, _)| {
                let start = *acc;
                *acc += m.types();
                Some(start)
            })
            .collect();
        let binary: Option<Vec<LabeledGraph>> = parts.iter().map(|(m, _)| m.binary_graph()).collect();
        let kernel = match binary {
            Some(graphs) => Kernel::Binary(
                graphs[1..]
                    .iter()
                    .fold(graphs[0].clone(), |acc, g| acc.disjoint_union(g)),
            ),
            None => {
                let k = masses.len();
                let mut w = vec![T::zero(); k * k];
                for ((m, _), &off) in parts.iter().zip(&offsets) {
                    for i in 0..m.types() {
                        for j in 0..m.types() {
                            w[(off + i) * k + off + j] = m.weight(i, j);
                        }
                    }
                }
                Kernel::Weighted(w)
            }
        };
        Self::from_parts(masses, kernel)
    }

    /// Independent product: type `(i, j)` is index `i * k2 + j` with mass
    /// `m1[i] m2[j]`, and an edge appears iff exactly one coordinate has one.
    pub fn tensor(&self, other: &StepModel<T>) -> StepModel<T> {
        let k2 = other.types();
        let masses = self
            .masses
            .iter()
            .flat_map(|a| other.masses.iter().map(move |b| a.clone() * b.clone()))
            .collect();
        let kernel = match (self.binary_graph(), other.binary_graph()) {
            (Some(a), Some(b)) => Kernel::Binary(a.tensor(&b)),
            _ => {
                let k = self.types() * k2;
                let two = T::from_u64(2);
                let mut w = Vec::with_capacity(k * k);
                for x in 0..k {
                    for y in 0..k {
                        let a = self.weight(x / k2, y / k2);
                        let b = other.weight(x % k2, y % k2);
                        w.push(a.clone() + b.clone() - two.clone() * a * b);
                    }
                }
                Kernel::Weighted(w)
            }
        };
        StepModel { masses, kernel }
    }

    /// `w -> 1 - w` everywhere, diagonal included.
    pub fn complement(&self) -> StepModel<T> {
        let kernel = match &self.kernel {
            Kernel::Binary(g) => Kernel::Binary(g.complement()),
            Kernel::Weighted(w) => Kernel::Weighted(w.iter().map(|x| T::one() - x.clone()).collect()),
        };
        StepModel {
            masses: self.masses.clone(),
            kernel,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.masses.iter().all(|m| *m == self.masses[0])
    }
}

impl StepModel<Rational> {
    pub fn to_approx(&self) -> ApproxModel {
        let kernel = match &self.kernel {
            Kernel::Binary(g) => Kernel::Binary(g.clone()),
            Kernel::Weighted(w) => Kernel::Weighted(w.iter().map(Scalar::to_f64).collect()),
        };
        StepModel {
            masses: self.masses.iter().map(Scalar::to_f64).collect(),
            kernel,
        }
    }
}
