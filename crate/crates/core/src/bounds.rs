//! Closed-form inducibility bounds for paths and cycles.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::canon::factorial;
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormBounds {
    pub t: usize,
    /// `t!/(t^t − t)`, the nested blow-up of `C_t`.
    pub cycle_lower: Rational,
    /// `t!/((t+1)^{t−1} − 1)`, the nested blow-up of `C_{t+1}` for `P_t`.
    pub path_lower: Rational,
    /// `t!/(2(t−1)^{t−1})`.
    pub path_upper: Rational,
}

pub fn closed_form_bounds(t: usize) -> Result<ClosedFormBounds> {
    if !(2..=20).contains(&t) {
        return Err(Error::OrderOutOfRange { t, min: 2, max: 20 });
    }
    let fact = BigInt::from(factorial(t));
    let tt = BigInt::from(t);
    let ratio = |den: BigInt| Rational::new(fact.clone(), den);
    Ok(ClosedFormBounds {
        t,
        cycle_lower: ratio(Pow::pow(&tt, t as u32) - &tt),
        path_lower: ratio(Pow::pow(BigInt::from(t + 1), (t - 1) as u32) - BigInt::one()),
        path_upper: ratio(BigInt::from(2) * Pow::pow(BigInt::from(t - 1), (t - 1) as u32)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn small_orders() {
        let b4 = closed_form_bounds(4).unwrap();
        assert_eq!(b4.path_lower, ratio(6, 31));
        assert_eq!(b4.path_upper, ratio(4, 9));
        assert_eq!(closed_form_bounds(5).unwrap().cycle_lower, ratio(1, 26));
        let b2 = closed_form_bounds(2).unwrap();
        assert_eq!((b2.cycle_lower, b2.path_lower, b2.path_upper), (ratio(1, 1), ratio(1, 1), ratio(1, 1)));
        assert!(closed_form_bounds(1).is_err());
    }
}
