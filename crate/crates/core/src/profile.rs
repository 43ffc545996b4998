//! `t`-vertex profiles: induced (sampling without replacement) and
//! repetitive (with replacement), labeled and unlabeled.
//!
//! Unlabeled vectors are indexed by [`IsoTable`] entry; labeled vectors by
//! the edge mask of [`crate::labeled`]. The labeled value of a graph is its
//! unlabeled value divided by the orbit size.

use std::ops::{AddAssign, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution, Options};
use crate::graph::LabeledGraph;
use crate::iso::{iso_table, IsoTable};
use crate::labeled::{self, Mask};
use crate::model::StepModel;
use crate::nesting::{all_partitions, falling_factorial};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `P` / `p`: distinct sample vertices.
    Induced,
    /// `R` / `r`: sampled with replacement.
    Repetitive,
    /// `Q` / `q`: stationary profile of the nested blow-up.
    Nested,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Induced => "induced",
            Flavor::Repetitive => "repetitive",
            Flavor::Nested => "nested",
        }
    }
}

/// Densities per isomorphism type.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileVector<T: Scalar = Rational> {
    pub t: usize,
    pub flavor: Flavor,
    pub values: Vec<T>,
}

/// Densities per labeled graph on `0..t`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledProfile<T: Scalar = Rational> {
    pub t: usize,
    pub flavor: Flavor,
    pub values: Vec<T>,
}

impl<T: Scalar> ProfileVector<T> {
    pub fn table(&self) -> &'static IsoTable {
        iso_table(self.t).expect("profile orders are validated on construction")
    }

    pub fn names(&self) -> Vec<String> {
        self.table().names()
    }

    /// Value of a type given by name or graph6.
    pub fn get(&self, name: &str) -> Option<&T> {
        self.table().resolve(name).map(|i| &self.values[i])
    }

    pub fn total(&self) -> T {
        self.values.iter().fold(T::zero(), |a, b| a + b.clone())
    }

    pub fn to_labeled(&self) -> LabeledProfile<T> {
        let table = self.table();
        let values = (0..labeled::mask_space(self.t) as Mask)
            .map(|m| {
                let e = table.type_of(m);
                self.values[e].clone() / T::from_u64(table.entries()[e].orbit_size)
            })
            .collect();
        LabeledProfile {
            t: self.t,
            flavor: self.flavor,
            values,
        }
    }
}

impl<T: Scalar> LabeledProfile<T> {
    pub fn new(t: usize, flavor: Flavor, values: Vec<T>) -> Result<Self> {
        if !(1..=labeled::MAX_ORDER).contains(&t) {
            return Err(Error::OrderOutOfRange {
                t,
                min: 1,
                max: labeled::MAX_ORDER,
            });
        }
        if values.len() != labeled::mask_space(t) {
            return Err(Error::InvalidModel(format!(
                "a labeled profile of order {t} has {} entries, got {}",
                labeled::mask_space(t),
                values.len()
            )));
        }
        Ok(LabeledProfile { t, flavor, values })
    }

    /// All mass on one labeled graph.
    pub fn point_mass(t: usize, mask: Mask, flavor: Flavor) -> Self {
        let mut values = vec![T::zero(); labeled::mask_space(t)];
        values[mask as usize] = T::one();
        LabeledProfile { t, flavor, values }
    }

    pub fn total(&self) -> T {
        self.values.iter().fold(T::zero(), |a, b| a + b.clone())
    }

    /// Sums each orbit. Requires `2 ≤ t ≤ 5`.
    pub fn to_unlabeled(&self) -> Result<ProfileVector<T>> {
        let table = iso_table(self.t)?;
        let mut values = vec![T::zero(); table.len()];
        for (m, v) in self.values.iter().enumerate() {
            let e = table.type_of(m as Mask);
            values[e] = values[e].clone() + v.clone();
        }
        Ok(ProfileVector {
            t: self.t,
            flavor: self.flavor,
            values,
        })
    }

    pub fn is_orbit_constant(&self) -> bool {
        let Ok(table) = iso_table(self.t) else {
            return true;
        };
        (0..self.values.len()).all(|m| {
            let rep = table.entries()[table.type_of(m as Mask)].representative;
            self.values[m] == self.values[rep as usize]
        })
    }

    /// Marginal on the first `order` vertices: the probability of each
    /// labeled graph on `0..order`, summed over its extensions.
    pub fn marginal(&self, order: usize) -> LabeledProfile<T> {
        assert!(order <= self.t);
        let first: Vec<usize> = (0..order).collect();
        let mut values = vec![T::zero(); labeled::mask_space(order)];
        for (m, v) in self.values.iter().enumerate() {
            let sub = labeled::restrict(self.t, m as Mask, &first) as usize;
            values[sub] = values[sub].clone() + v.clone();
        }
        LabeledProfile {
            t: order,
            flavor: self.flavor,
            values,
        }
    }
}

fn check_order(t: usize) -> Result<&'static IsoTable> {
    iso_table(t)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// For each mask, the number of `t`-subsets `v_0 < … < v_{t-1}` inducing it
/// in that order.
fn induced_counts(g: &LabeledGraph, t: usize, execution: Execution) -> Vec<u64> {
    let n = g.order();
    let slots = slot_table(t);
    let partials = map_indexed(execution, n, |v0| {
        let mut counts = vec![0u64; labeled::mask_space(t)];
        let mut chosen = [0usize; labeled::MAX_ORDER];
        chosen[0] = v0;
        subsets(g, t, &slots, 1, &mut chosen, 0, &mut counts);
        counts
    });
    sum_partials(partials, labeled::mask_space(t))
}

fn subsets(
    g: &LabeledGraph,
    t: usize,
    slots: &[[u8; labeled::MAX_ORDER]; labeled::MAX_ORDER],
    depth: usize,
    chosen: &mut [usize; labeled::MAX_ORDER],
    mask: Mask,
    counts: &mut [u64],
) {
    if depth == t {
        counts[mask as usize] += 1;
        return;
    }
    for v in chosen[depth - 1] + 1..g.order() {
        let mut m = mask;
        for a in 0..depth {
            if g.has_edge(chosen[a], v) {
                m |= 1 << slots[a][depth];
            }
        }
        chosen[depth] = v;
        subsets(g, t, slots, depth + 1, chosen, m, counts);
    }
}

fn slot_table(t: usize) -> [[u8; labeled::MAX_ORDER]; labeled::MAX_ORDER] {
    let mut table = [[0u8; labeled::MAX_ORDER]; labeled::MAX_ORDER];
    for (i, row) in table.iter_mut().enumerate().take(t) {
        for (j, cell) in row.iter_mut().enumerate().take(t) {
            if i != j {
                *cell = labeled::slot(t, i, j) as u8;
            }
        }
    }
    table
}

fn sum_partials<W: Copy + Default + AddAssign>(partials: Vec<Vec<W>>, len: usize) -> Vec<W> {
    let mut total = vec![W::default(); len];
    for part in partials {
        for (acc, x) in total.iter_mut().zip(part) {
            *acc += x;
        }
    }
    total
}

/// `P_t(G)`: the fraction of `t`-subsets inducing each type.
pub fn induced_profile(g: &LabeledGraph, t: usize) -> Result<ProfileVector> {
    induced_profile_with(g, t, &Options::default())
}

pub fn induced_profile_with(g: &LabeledGraph, t: usize, options: &Options) -> Result<ProfileVector> {
    g.require_loopless("induced_profile")?;
    let table = check_order(t)?;
    let n = g.order();
    if n < t {
        return Err(Error::InvalidParams {
            name: "induced_profile".into(),
            reason: format!("graph has {n} vertices, fewer than t = {t}"),
        });
    }
    let subsets = binomial(n as u128, t as u128);
    options.check_budget(subsets)?;
    let counts = induced_counts(g, t, options.execution);
    let mut per_type = vec![0u64; table.len()];
    for (m, c) in counts.iter().enumerate() {
        per_type[table.type_of(m as Mask)] += c;
    }
    let total = BigInt::from(subsets);
    Ok(ProfileVector {
        t,
        flavor: Flavor::Induced,
        values: per_type
            .into_iter()
            .map(|c| Rational::new(BigInt::from(c), total.clone()))
            .collect(),
    })
}

/// `p_t(G)`, the labeled induced profile.
pub fn induced_labeled(g: &LabeledGraph, t: usize, options: &Options) -> Result<LabeledProfile> {
    Ok(induced_profile_with(g, t, options)?.to_labeled())
}

/// Distribution of the labeled graph induced by `order` distinct vertices
/// drawn in uniformly random order; defined for every `1 ≤ order ≤ n`.
pub fn induced_ordered(g: &LabeledGraph, order: usize, options: &Options) -> Result<LabeledProfile> {
    g.require_loopless("induced_profile")?;
    if order == 0 || order > g.order().min(labeled::MAX_ORDER) {
        return Err(Error::InvalidParams {
            name: "induced_profile".into(),
            reason: format!("order {order} needs 1 ≤ order ≤ min({}, {})", g.order(), labeled::MAX_ORDER),
        });
    }
    let subsets = binomial(g.order() as u128, order as u128);
    options.check_budget(subsets)?;
    let counts = induced_counts(g, order, options.execution);
    let perms = labeled::permutations(order);
    let total = Rational::from_integer(BigInt::from(subsets) * BigInt::from(perms.len()));
    let mut values = vec![Rational::zero(); labeled::mask_space(order)];
    for (m, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = Rational::from_integer(BigInt::from(c));
        for perm in &perms {
            values[labeled::permute(order, m as Mask, perm) as usize] += &c;
        }
    }
    for v in values.iter_mut() {
        *v /= &total;
    }
    LabeledProfile::new(order, Flavor::Induced, values)
}

/// `R_t(M)`: sampling `t` positions with replacement from a step model.
pub fn repetitive_profile<T: Scalar>(model: &StepModel<T>, t: usize) -> Result<ProfileVector<T>> {
    repetitive_profile_with(model, t, &Options::default())
}

pub fn repetitive_profile_with<T: Scalar>(
    model: &StepModel<T>,
    t: usize,
    options: &Options,
) -> Result<ProfileVector<T>> {
    check_order(t)?;
    repetitive_labeled(model, t, options)?.to_unlabeled()
}

/// `r_t(M)`: for every assignment of the `t` positions to types, the product
/// of masses times the probability of each labeled graph, summed.
pub fn repetitive_labeled<T: Scalar>(
    model: &StepModel<T>,
    t: usize,
    options: &Options,
) -> Result<LabeledProfile<T>> {
    if !(1..=labeled::MAX_ORDER).contains(&t) {
        return Err(Error::OrderOutOfRange {
            t,
            min: 1,
            max: labeled::MAX_ORDER,
        });
    }
    let k = model.types() as u128;
    options.check_budget(k.checked_pow(t as u32).unwrap_or(u128::MAX))?;
    let values = match model.binary_graph() {
        Some(graph) => binary_profile(model, &graph, t, options.execution),
        None => weighted_profile(model, t, options.execution),
    };
    Ok(LabeledProfile {
        t,
        flavor: Flavor::Repetitive,
        values,
    })
}

trait Weight: Copy + Default + Send + Sync + AddAssign + Mul<Output = Self> {}
impl Weight for u64 {}
impl Weight for u128 {}
impl Weight for f64 {}

/// Deterministic kernels: each assignment induces a single labeled graph,
/// so the profile is a weighted count.
fn binary_profile<T: Scalar>(
    model: &StepModel<T>,
    graph: &LabeledGraph,
    t: usize,
    execution: Execution,
) -> Vec<T> {
    if !T::EXACT {
        let weights: Vec<f64> = model.masses().iter().map(Scalar::to_f64).collect();
        let sums = count_assignments(graph, &weights, t, execution);
        let mut out = Vec::with_capacity(sums.len());
        for s in sums {
            // T is f64 here; route the value through the trait without loss.
            out.push(T::from_rational(&f64_to_rational(s)));
        }
        return out;
    }
    let masses: Vec<Rational> = model
        .masses()
        .iter()
        .map(|m| m.to_rational().expect("exact scalar"))
        .collect();
    if model.is_uniform() {
        let counts = count_assignments(graph, &vec![1u64; masses.len()], t, execution);
        let unit = num_traits::pow(masses[0].clone(), t);
        return counts
            .into_iter()
            .map(|c| T::from_rational(&(unit.clone() * Rational::from_integer(BigInt::from(c)))))
            .collect();
    }
    let denominator = masses.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
    let scaled: Option<Vec<u128>> = masses
        .iter()
        .map(|m| (m * Rational::from_integer(denominator.clone())).to_integer().to_u128())
        .collect();
    let fits = denominator
        .to_u128()
        .and_then(|d| d.checked_pow(t as u32))
        .is_some();
    match scaled {
        Some(weights) if fits => {
            let sums = count_assignments(graph, &weights, t, execution);
            let scale = Rational::new(BigInt::one(), num_traits::pow(denominator, t));
            sums.into_iter()
                .map(|s| T::from_rational(&(scale.clone() * Rational::from_integer(BigInt::from(s)))))
                .collect()
        }
        _ => weighted_profile(model, t, execution),
    }
}

/// Exact binary representation of a finite double, so approximate values
/// survive the generic conversion unchanged.
fn f64_to_rational(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

fn count_assignments<W: Weight>(graph: &LabeledGraph, weights: &[W], t: usize, execution: Execution) -> Vec<W> {
    let k = graph.order();
    let space = labeled::mask_space(t);
    let slots = slot_table(t);
    let adjacency: Vec<u8> = (0..k * k).map(|x| u8::from(graph.has_edge(x / k, x % k))).collect();
    let partials = map_indexed(execution, k, |v0| {
        let mut acc = vec![W::default(); space];
        let mut chosen = [0usize; labeled::MAX_ORDER];
        chosen[0] = v0;
        if t == 1 {
            acc[0] += weights[v0];
        } else {
            assign(&adjacency, k, weights, t, &slots, 1, &mut chosen, 0, weights[v0], &mut acc);
        }
        acc
    });
    sum_partials(partials, space)
}

#[allow(clippy::too_many_arguments)]
fn assign<W: Weight>(
    adjacency: &[u8],
    k: usize,
    weights: &[W],
    t: usize,
    slots: &[[u8; labeled::MAX_ORDER]; labeled::MAX_ORDER],
    depth: usize,
    chosen: &mut [usize; labeled::MAX_ORDER],
    mask: Mask,
    weight: W,
    acc: &mut [W],
) {
    let rows: [&[u8]; labeled::MAX_ORDER] =
        std::array::from_fn(|a| if a < depth { &adjacency[chosen[a] * k..(chosen[a] + 1) * k] } else { &[] });
    let shifts: [u8; labeled::MAX_ORDER] = std::array::from_fn(|a| slots[a][depth]);
    for v in 0..k {
        let mut m = mask;
        for a in 0..depth {
            m |= (rows[a][v] as Mask) << shifts[a];
        }
        let w = weight * weights[v];
        if depth + 1 == t {
            acc[m as usize] += w;
        } else {
            chosen[depth] = v;
            assign(adjacency, k, weights, t, slots, depth + 1, chosen, m, w, acc);
        }
    }
}

/// General kernels: carries the distribution of the partial labeled graph
/// along each assignment prefix, branching only on fractional weights.
fn weighted_profile<T: Scalar>(model: &StepModel<T>, t: usize, execution: Execution) -> Vec<T> {
    let k = model.types();
    let w: Vec<T> = (0..k * k).map(|x| model.weight(x / k, x % k)).collect();
    let slots = slot_table(t);
    let space = labeled::mask_space(t);
    let masses = model.masses();
    let partials = map_indexed(execution, k, |v0| {
        let mut acc = vec![T::zero(); space];
        let mut chosen = [0usize; labeled::MAX_ORDER];
        chosen[0] = v0;
        let start = vec![(0 as Mask, masses[v0].clone())];
        if t == 1 {
            acc[0] = masses[v0].clone();
        } else {
            branch(&w, masses, k, t, &slots, 1, &mut chosen, &start, &mut acc);
        }
        acc
    });
    let mut total = vec![T::zero(); space];
    for part in partials {
        for (acc, x) in total.iter_mut().zip(part) {
            if !x.is_zero() {
                *acc = acc.clone() + x;
            }
        }
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn branch<T: Scalar>(
    w: &[T],
    masses: &[T],
    k: usize,
    t: usize,
    slots: &[[u8; labeled::MAX_ORDER]; labeled::MAX_ORDER],
    depth: usize,
    chosen: &mut [usize; labeled::MAX_ORDER],
    dist: &[(Mask, T)],
    acc: &mut [T],
) {
    for v in 0..k {
        let mut next: Vec<(Mask, T)> = dist
            .iter()
            .map(|(m, p)| (*m, p.clone() * masses[v].clone()))
            .collect();
        for a in 0..depth {
            let p = &w[chosen[a] * k + v];
            let bit = 1 << slots[a][depth];
            if p.is_zero() {
                continue;
            }
            if p.is_one() {
                for entry in next.iter_mut() {
                    entry.0 |= bit;
                }
                continue;
            }
            let q = T::one() - p.clone();
            let mut split = Vec::with_capacity(next.len() * 2);
            for (m, x) in next {
                split.push((m | bit, x.clone() * p.clone()));
                split.push((m, x * q.clone()));
            }
            next = split;
        }
        if depth + 1 == t {
            for (m, x) in next {
                acc[m as usize] = acc[m as usize].clone() + x;
            }
        } else {
            chosen[depth] = v;
            branch(w, masses, k, t, slots, depth + 1, chosen, &next, acc);
        }
    }
}

/// `R_t(G)` of a loopless graph on `s` vertices from its induced profile
/// `P_{t'}(G)` with `t ≤ t' ≤ s`: a sample with replacement splits its
/// positions into classes of equal vertices, each class an independent set.
pub fn repetitive_from_induced(induced: &ProfileVector, s: usize, t: usize) -> Result<ProfileVector> {
    if induced.flavor != Flavor::Induced {
        return Err(Error::InvalidParams {
            name: "repetitive_from_induced".into(),
            reason: "expects an induced profile".into(),
        });
    }
    check_order(t)?;
    if s < induced.t || t > induced.t {
        return Err(Error::InvalidParams {
            name: "repetitive_from_induced".into(),
            reason: format!("need t = {t} ≤ profile order {} ≤ s = {s}", induced.t),
        });
    }
    let p = induced.to_labeled();
    let marginals: Vec<LabeledProfile> = (0..=t).map(|l| p.marginal(l.max(1).min(p.t))).collect();
    let s_pow_t = num_traits::pow(BigInt::from(s), t);
    let mut r = vec![Rational::zero(); labeled::mask_space(t)];
    for partition in all_partitions(t) {
        let l = partition.len();
        let weight = Rational::new(falling_factorial(s, l), s_pow_t.clone());
        if weight.is_zero() {
            continue;
        }
        let inner = partition.inner_slots();
        for (h, out) in r.iter_mut().enumerate() {
            let h = h as Mask;
            if h & inner != 0 {
                continue;
            }
            if let Some(quotient) = partition.quotient(h) {
                let pq = &marginals[l].values[quotient as usize];
                if !pq.is_zero() {
                    *out += weight.clone() * pq;
                }
            }
        }
    }
    LabeledProfile::new(t, Flavor::Repetitive, r)?.to_unlabeled()
}
