//! Sampling estimates for graphs too large to enumerate.
//!
//! Work is split into a fixed number of shards, each with its own ChaCha
//! stream derived from the seed, so results depend only on the seed and the
//! sample count, never on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::graph::LabeledGraph;
use crate::iso::iso_table;
use crate::labeled::{self, Mask};
use crate::model::StepModel;
use crate::profile::{Flavor, ProfileVector};
use crate::scalar::Scalar;

pub const SHARDS: usize = 64;

/// Largest `t` for the clique/anticlique counter.
pub const MAX_MONOCHROMATIC_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Repetitive profile `R`: positions may repeat a vertex.
    WithReplacement,
    /// Induced profile `P`: distinct vertices.
    WithoutReplacement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub t: usize,
    pub flavor: Flavor,
    pub samples: u64,
    pub seed: u64,
    /// Hits per isomorphism type, in table order.
    pub counts: Vec<u64>,
}

impl Estimate {
    pub fn frequency(&self, i: usize) -> f64 {
        self.counts[i] as f64 / self.samples as f64
    }

    /// Binomial standard error of entry `i`.
    pub fn std_error(&self, i: usize) -> f64 {
        let p = self.frequency(i);
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    pub fn profile(&self) -> ProfileVector<f64> {
        ProfileVector {
            t: self.t,
            flavor: self.flavor,
            values: (0..self.counts.len()).map(|i| self.frequency(i)).collect(),
        }
    }

    pub fn std_errors(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|i| self.std_error(i)).collect()
    }

    /// Whether entry `i` lies within `k` standard errors of `reference`,
    /// measuring the error at the reference value so exact zeros are
    /// handled.
    pub fn agrees(&self, i: usize, reference: f64, k: f64) -> bool {
        let n = self.samples as f64;
        let sigma = (reference * (1.0 - reference) / n).sqrt();
        let diff = (self.frequency(i) - reference).abs();
        if sigma == 0.0 {
            diff == 0.0
        } else {
            diff <= k * sigma
        }
    }
}

fn shard_sizes(samples: u64) -> Vec<u64> {
    let base = samples / SHARDS as u64;
    let extra = samples % SHARDS as u64;
    (0..SHARDS as u64).map(|i| base + u64::from(i < extra)).collect()
}

fn rng_for(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::params("estimate", "needs at least one sample"));
    }
    Ok(())
}

fn tally(t: usize, shards: Vec<Vec<u64>>) -> Result<Vec<u64>> {
    let table = iso_table(t)?;
    let mut counts = vec![0u64; table.len()];
    for shard in shards {
        for (m, c) in shard.into_iter().enumerate() {
            counts[table.type_of(m as Mask)] += c;
        }
    }
    Ok(counts)
}

fn sample_mask(t: usize, vertices: &[usize], mut adjacent: impl FnMut(usize, usize) -> bool) -> Mask {
    let mut mask = 0;
    let mut k = 0;
    for a in 0..t {
        for b in a + 1..t {
            if adjacent(vertices[a], vertices[b]) {
                mask |= 1 << k;
            }
            k += 1;
        }
    }
    mask
}

/// Estimates the `t`-profile of a graph. With replacement, a repeated
/// vertex is adjacent to itself exactly when it carries a loop.
pub fn estimate_graph(
    g: &LabeledGraph,
    t: usize,
    samples: u64,
    seed: u64,
    sampling: Sampling,
    execution: Execution,
) -> Result<Estimate> {
    iso_table(t)?;
    check_samples(samples)?;
    let n = g.order();
    let flavor = match sampling {
        Sampling::WithReplacement => Flavor::Repetitive,
        Sampling::WithoutReplacement => {
            g.require_loopless("estimate")?;
            if n < t {
                return Err(Error::params("estimate", format!("graph has fewer than {t} vertices")));
            }
            Flavor::Induced
        }
    };
    let sizes = shard_sizes(samples);
    let shards = map_indexed(execution, SHARDS, |shard| {
        let mut rng = rng_for(seed, shard);
        let mut counts = vec![0u64; labeled::mask_space(t)];
        let mut v = [0usize; labeled::MAX_ORDER];
        for _ in 0..sizes[shard] {
            match sampling {
                Sampling::WithReplacement => {
                    for x in v.iter_mut().take(t) {
                        *x = rng.gen_range(0..n);
                    }
                }
                Sampling::WithoutReplacement => {
                    for i in 0..t {
                        v[i] = loop {
                            let x = rng.gen_range(0..n);
                            if !v[..i].contains(&x) {
                                break x;
                            }
                        };
                    }
                }
            }
            counts[sample_mask(t, &v, |a, b| g.has_edge(a, b)) as usize] += 1;
        }
        counts
    });
    Ok(Estimate {
        t,
        flavor,
        samples,
        seed,
        counts: tally(t, shards)?,
    })
}

/// Estimates `R_t` of a step model, in double precision.
pub fn estimate_model<T: Scalar>(
    model: &StepModel<T>,
    t: usize,
    samples: u64,
    seed: u64,
    execution: Execution,
) -> Result<Estimate> {
    iso_table(t)?;
    check_samples(samples)?;
    let k = model.types();
    let mut cumulative = Vec::with_capacity(k);
    let mut acc = 0.0;
    for m in model.masses() {
        acc += m.to_f64();
        cumulative.push(acc);
    }
    let weights: Vec<f64> = (0..k * k).map(|x| model.weight(x / k, x % k).to_f64()).collect();
    let sizes = shard_sizes(samples);
    let shards = map_indexed(execution, SHARDS, |shard| {
        let mut rng = rng_for(seed, shard);
        let mut counts = vec![0u64; labeled::mask_space(t)];
        let mut v = [0usize; labeled::MAX_ORDER];
        for _ in 0..sizes[shard] {
            for x in v.iter_mut().take(t) {
                let u: f64 = rng.gen::<f64>() * acc;
                *x = cumulative.partition_point(|&c| c <= u).min(k - 1);
            }
            let mask = sample_mask(t, &v, |a, b| {
                let w = weights[a * k + b];
                w >= 1.0 || (w > 0.0 && rng.gen::<f64>() < w)
            });
            counts[mask as usize] += 1;
        }
        counts
    });
    Ok(Estimate {
        t,
        flavor: Flavor::Repetitive,
        samples,
        seed,
        counts: tally(t, shards)?,
    })
}

/// Fraction of `t`-samples with replacement that form a clique or an
/// independent set, with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonochromaticEstimate {
    pub t: usize,
    pub samples: u64,
    pub hits: u64,
}

impl MonochromaticEstimate {
    pub fn frequency(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    pub fn std_error(&self) -> f64 {
        let p = self.frequency();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

pub fn estimate_monochromatic(
    g: &LabeledGraph,
    t: usize,
    samples: u64,
    seed: u64,
    execution: Execution,
) -> Result<MonochromaticEstimate> {
    if !(2..=MAX_MONOCHROMATIC_ORDER).contains(&t) {
        return Err(Error::OrderOutOfRange {
            t,
            min: 2,
            max: MAX_MONOCHROMATIC_ORDER,
        });
    }
    check_samples(samples)?;
    let n = g.order();
    let sizes = shard_sizes(samples);
    let hits = map_indexed(execution, SHARDS, |shard| {
        let mut rng = rng_for(seed, shard);
        let mut v = [0usize; MAX_MONOCHROMATIC_ORDER];
        let mut hits = 0u64;
        for _ in 0..sizes[shard] {
            for x in v.iter_mut().take(t) {
                *x = rng.gen_range(0..n);
            }
            let first = g.has_edge(v[0], v[1]);
            let uniform = (0..t).all(|a| (a + 1..t).all(|b| g.has_edge(v[a], v[b]) == first));
            hits += u64::from(uniform);
        }
        hits
    });
    Ok(MonochromaticEstimate {
        t,
        samples,
        hits: hits.into_iter().sum(),
    })
}
