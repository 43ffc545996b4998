//! Fourier analysis on labeled `t`-graphs viewed as the group `F_2^m` of
//! edge sets under symmetric difference, `m = t(t-1)/2`.
//!
//! The forward transform is unnormalized,
//! `r̂(H) = Σ_{H'} (-1)^{e(H ∩ H')} r(H')`, and the inverse carries `2^{-m}`.
//! Tensor products multiply spectral profiles entrywise.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exec::Options;
use crate::iso::iso_table;
use crate::labeled::Mask;
use crate::model::StepModel;
use crate::profile::{repetitive_labeled, Flavor, LabeledProfile};
use crate::quantum::{Level, QuantumGraph};
use crate::scalar::{integer, Rational, Scalar};

/// In-place Walsh–Hadamard butterfly, without normalization.
pub fn fwht<T: Scalar>(values: &mut [T]) {
    let n = values.len();
    assert!(n.is_power_of_two(), "transform length must be a power of two");
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let a = values[i].clone();
                let b = values[i + h].clone();
                values[i] = a.clone() + b.clone();
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile<T: Scalar = Rational> {
    pub t: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> SpectralProfile<T> {
    pub fn at(&self, mask: Mask) -> &T {
        &self.values[mask as usize]
    }

    /// Value at the representative of a named type.
    pub fn get(&self, name: &str) -> Option<&T> {
        let table = iso_table(self.t).ok()?;
        let e = table.resolve(name)?;
        Some(&self.values[table.entries()[e].representative as usize])
    }

    /// One value per isomorphism type, in table order.
    pub fn orbit_view(&self) -> Result<Vec<(String, T)>> {
        let table = iso_table(self.t)?;
        Ok(table
            .entries()
            .iter()
            .map(|e| (e.name.clone(), self.values[e.representative as usize].clone()))
            .collect())
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
}

pub fn fourier<T: Scalar>(r: &LabeledProfile<T>) -> SpectralProfile<T> {
    let mut values = r.values.clone();
    fwht(&mut values);
    SpectralProfile { t: r.t, values }
}

pub fn inverse_fourier<T: Scalar>(hat: &SpectralProfile<T>) -> LabeledProfile<T> {
    let mut values = hat.values.clone();
    fwht(&mut values);
    let scale = T::from_u64(values.len() as u64);
    for v in values.iter_mut() {
        *v = v.clone() / scale.clone();
    }
    LabeledProfile {
        t: hat.t,
        flavor: Flavor::Repetitive,
        values,
    }
}

/// `r̂_t(M)` of a step model.
pub fn spectral_profile<T: Scalar>(model: &StepModel<T>, t: usize, options: &Options) -> Result<SpectralProfile<T>> {
    Ok(fourier(&repetitive_labeled(model, t, options)?))
}

/// Group convolution under symmetric difference, computed directly over
/// the supports; `r(G ⊗ G') = r(G) * r(G')`.
pub fn convolve<T: Scalar>(a: &LabeledProfile<T>, b: &LabeledProfile<T>) -> Result<LabeledProfile<T>> {
    if a.t != b.t {
        return Err(Error::OrderMismatch { left: a.t, right: b.t });
    }
    let support = |p: &LabeledProfile<T>| -> Vec<(usize, T)> {
        p.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    };
    let (sa, sb) = (support(a), support(b));
    let mut out = vec![T::zero(); a.values.len()];
    for (x, va) in &sa {
        for (y, vb) in &sb {
            out[x ^ y] = out[x ^ y].clone() + va.clone() * vb.clone();
        }
    }
    Ok(LabeledProfile {
        t: a.t,
        flavor: a.flavor,
        values: out,
    })
}

pub fn pointwise_product<T: Scalar>(a: &SpectralProfile<T>, b: &SpectralProfile<T>) -> Result<SpectralProfile<T>> {
    if a.t != b.t {
        return Err(Error::OrderMismatch { left: a.t, right: b.t });
    }
    Ok(SpectralProfile {
        t: a.t,
        values: a.values.iter().zip(&b.values).map(|(x, y)| x.clone() * y.clone()).collect(),
    })
}

/// Coefficients `c` with `density(Q, G) = Σ_H c_H r̂(H, G)` over labeled `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumFunctional {
    pub t: usize,
    pub level: Level,
    pub labeled: Vec<Rational>,
}

impl QuantumFunctional {
    /// Coefficients summed over each orbit, in table order.
    pub fn per_type(&self) -> Vec<Rational> {
        let table = iso_table(self.t).expect("validated order");
        let mut out = vec![Rational::zero(); table.len()];
        for (m, c) in self.labeled.iter().enumerate() {
            out[table.type_of(m as Mask)] += c;
        }
        out
    }

    /// Per-type coefficients scaled to a common integer denominator, as
    /// `(numerators, denominator)`.
    pub fn integral_form(&self) -> (Vec<num_bigint::BigInt>, num_bigint::BigInt) {
        use num_integer::Integer;
        let coeffs = self.per_type();
        let den = coeffs
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let nums = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (nums, den)
    }

    pub fn evaluate<T: Scalar>(&self, hat: &SpectralProfile<T>) -> Result<T> {
        if hat.t != self.t {
            return Err(Error::OrderMismatch {
                left: self.t,
                right: hat.t,
            });
        }
        Ok(self
            .labeled
            .iter()
            .zip(&hat.values)
            .filter(|(c, _)| !c.is_zero())
            .fold(T::zero(), |acc, (c, v)| acc + T::from_rational(c) * v.clone()))
    }
}

fn functional(q: &QuantumGraph, level: Level) -> QuantumFunctional {
    let mut labeled = q.labeled_indicator(level);
    fwht(&mut labeled);
    let scale = integer(labeled.len() as u64);
    for c in labeled.iter_mut() {
        *c /= &scale;
    }
    QuantumFunctional { t: q.order(), level, labeled }
}

/// Functional for the labeled density `r(Q, G)`: each type contributes one
/// labeled copy. For `P4` this is `(1 − K̂4 + M̂4 − Ĉ4 + 4Q̂4 − 4V̂4)/64`.
pub fn quantum_functional(q: &QuantumGraph) -> QuantumFunctional {
    functional(q, Level::Labeled)
}

/// Functional for the type density `R(Q, G)`.
pub fn density_functional(q: &QuantumGraph) -> QuantumFunctional {
    functional(q, Level::Unlabeled)
}

/// `R(Q, G_1 ⊗ … ⊗ G_k)` from the spectral profiles of the factors.
pub fn product_limit_density<T: Scalar>(q: &QuantumGraph, hats: &[SpectralProfile<T>]) -> Result<T> {
    let Some((first, rest)) = hats.split_first() else {
        return Err(Error::InvalidParams {
            name: "product_limit_density".into(),
            reason: "needs at least one factor".into(),
        });
    };
    let mut product = first.clone();
    for h in rest {
        product = pointwise_product(&product, h)?;
    }
    density_functional(q).evaluate(&product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::build;
    use crate::scalar::ratio;

    fn r(name: &str, t: usize) -> LabeledProfile {
        let m: StepModel = StepModel::from_graph(&build(name, &[]).unwrap());
        repetitive_labeled(&m, t, &Options::default()).unwrap()
    }

    fn row(hat: &SpectralProfile) -> Vec<Rational> {
        ["K4", "M4", "C4", "Q4", "V4"].iter().map(|n| hat.get(n).unwrap().clone()).collect()
    }

    #[test]
    fn coefficient_table_for_k4_and_m4() {
        assert_eq!(
            row(&fourier(&r("K4", 4))),
            vec![ratio(-1, 2), ratio(1, 4), ratio(1, 4), ratio(-1, 8), ratio(1, 4)]
        );
        assert_eq!(
            row(&fourier(&r("M4", 4))),
            vec![ratio(1, 2), ratio(1, 4), ratio(1, 4), ratio(1, 8), ratio(1, 4)]
        );
    }

    #[test]
    fn half_random_graph_is_a_delta() {
        let m = StepModel::bernoulli(ratio(1, 2)).unwrap();
        let hat = spectral_profile(&m, 4, &Options::default()).unwrap();
        assert_eq!(hat.values[0], integer(1));
        assert!(hat.values[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_round_trips() {
        let p = r("C5", 4);
        assert_eq!(inverse_fourier(&fourier(&p)), p);
        let ones = SpectralProfile { t: 4, values: vec![integer(1); 64] };
        assert_eq!(inverse_fourier(&ones), LabeledProfile::point_mass(4, 0, Flavor::Repetitive));
        let third = StepModel::bernoulli(ratio(1, 3)).unwrap();
        let back = inverse_fourier(&spectral_profile(&third, 4, &Options::default()).unwrap());
        for (m, v) in back.values.iter().enumerate() {
            let e = (m as u32).count_ones() as i32;
            assert_eq!(*v, num_traits::pow(ratio(1, 3), e as usize) * num_traits::pow(ratio(2, 3), 6 - e as usize));
        }
    }

    #[test]
    fn convolution_is_tensor_product() {
        let k3 = r("K3", 4);
        let k3k3 = build("K3", &[]).unwrap().tensor(&build("K3", &[]).unwrap());
        let direct = repetitive_labeled(&StepModel::<Rational>::from_graph(&k3k3), 4, &Options::default()).unwrap();
        assert_eq!(convolve(&k3, &k3).unwrap(), direct);
        let identity = LabeledProfile::point_mass(4, 0, Flavor::Repetitive);
        assert_eq!(convolve(&k3, &identity).unwrap(), k3);
        assert!(convolve(&k3, &r("K3", 3)).is_err());
    }

    #[test]
    fn labeled_functionals() {
        let k4a4 = quantum_functional(&QuantumGraph::parse(4, "K4+A4").unwrap());
        let (nums, den) = k4a4.integral_form();
        assert_eq!(den, 32.into());
        let names = iso_table(4).unwrap().names();
        let nonzero: Vec<(String, i64)> = names
            .iter()
            .zip(&nums)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n.clone(), i64::try_from(c).unwrap()))
            .collect();
        let expect = |v: &[(&str, i64)]| v.iter().map(|(n, c)| (n.to_string(), *c)).collect::<Vec<_>>();
        assert_eq!(nonzero, expect(&[("K4", 1), ("A4", 1), ("M4", 3), ("C4", 3), ("Q4", 12), ("V4", 12)]));

        let p4 = quantum_functional(&QuantumGraph::single(4, "P4").unwrap());
        let (nums, den) = p4.integral_form();
        assert_eq!(den, 64.into());
        let nonzero: Vec<(String, i64)> = names
            .iter()
            .zip(&nums)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n.clone(), i64::try_from(c).unwrap()))
            .collect();
        assert_eq!(nonzero, expect(&[("K4", -1), ("A4", 1), ("M4", 1), ("C4", -1), ("Q4", 4), ("V4", -4)]));

        let a4 = quantum_functional(&QuantumGraph::single(4, "A4").unwrap());
        assert!(a4.labeled.iter().all(|c| *c == ratio(1, 64)));
    }

    #[test]
    fn functional_reproduces_density() {
        let q = QuantumGraph::parse(4, "P4 + 2 C4").unwrap();
        let prof = r("C5", 4);
        let hat = fourier(&prof);
        assert_eq!(
            density_functional(&q).evaluate(&hat).unwrap(),
            q.density(&prof.to_unlabeled().unwrap()).unwrap()
        );
    }

    #[test]
    fn four_factor_product() {
        let q = QuantumGraph::parse(4, "K4+A4").unwrap();
        let k3 = fourier(&r("K3", 4));
        let hats = [fourier(&r("M4", 4)), fourier(&r("K4", 4)), k3.clone(), k3];
        assert_eq!(product_limit_density(&q, &hats).unwrap(), ratio(11411, 373248));
        assert!(product_limit_density::<Rational>(&q, &[]).is_err());
    }
}
