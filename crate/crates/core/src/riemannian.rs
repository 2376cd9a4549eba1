//! The space of Riemannian curvature measures in the `C_kp` basis.
//!
//! An [`RElement`] is stored through its generating series in `xi, eta`,
//! where `C_kp` corresponds to `xi^(k-2p) eta^p`. The weighted degree of the
//! monomial is the degree `k` of the curvature measure, so a truncation
//! order `N` keeps exactly the components of degree `<= N`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::scalar::{factorial, omega, ExactScalar, HalfInt, Rat};
use crate::series::{Alphabet, GradedSeries};

#[derive(Clone, PartialEq, Eq)]
pub struct RElement {
    series: GradedSeries,
}

/// `xi^i (1 - eta/4)^(-i/2)`: multiplication by this series is the action of `t^i`.
fn t_power_multiplier(i: u32, order: u32) -> GradedSeries {
    let a = Alphabet::xi_eta();
    let quarter_eta = GradedSeries::monomial(
        a.clone(),
        order,
        vec![0, 1],
        ExactScalar::from_rat(crate::scalar::rat(1, 4)),
    )
    .expect("two variables");
    let xi_i = GradedSeries::monomial(a, order, vec![i, 0], ExactScalar::one()).expect("two variables");
    let tail = GradedSeries::binomial_power(&quarter_eta, HalfInt::from_halves(-(i as i64)))
        .expect("no constant term");
    &xi_i * &tail
}

impl RElement {
    pub fn zero(order: u32) -> Self {
        RElement {
            series: GradedSeries::zero(Alphabet::xi_eta(), order),
        }
    }

    /// Wraps a series over `{xi: 1, eta: 2}`.
    pub fn from_series(series: GradedSeries) -> Result<Self> {
        if **series.alphabet() != *Alphabet::xi_eta() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(RElement { series })
    }

    /// `C_kp`, i.e. the monomial `xi^(k-2p) eta^p`.
    pub fn basis_element(k: u32, p: u32, order: u32) -> Result<Self> {
        if 2 * p > k {
            return Err(Error::InvalidIndex { k, p });
        }
        if k > order {
            return Err(Error::BeyondTruncation { degree: k, order });
        }
        let series =
            GradedSeries::monomial(Alphabet::xi_eta(), order, vec![k - 2 * p, p], ExactScalar::one())?;
        Ok(RElement { series })
    }

    /// Builds `sum c * C_kp` from labelled coefficients.
    pub fn from_coefficients(
        order: u32,
        coeffs: impl IntoIterator<Item = (u32, u32, ExactScalar)>,
    ) -> Result<Self> {
        let mut terms = Vec::new();
        for (k, p, c) in coeffs {
            if 2 * p > k {
                return Err(Error::InvalidIndex { k, p });
            }
            terms.push((vec![k - 2 * p, p], c));
        }
        Ok(RElement {
            series: GradedSeries::from_terms(Alphabet::xi_eta(), order, terms)?,
        })
    }

    /// The reduced Lipschitz-Killing element `xi^k (1 - eta/4)^(-k/2 - 1)`.
    pub fn lk_bar(k: u32, order: u32) -> Self {
        let a = Alphabet::xi_eta();
        let quarter_eta = GradedSeries::monomial(
            a.clone(),
            order,
            vec![0, 1],
            ExactScalar::from_rat(crate::scalar::rat(1, 4)),
        )
        .expect("two variables");
        let xi_k = GradedSeries::monomial(a, order, vec![k, 0], ExactScalar::one()).expect("two variables");
        let tail = GradedSeries::binomial_power(&quarter_eta, HalfInt::from_halves(-(k as i64) - 2))
            .expect("no constant term");
        RElement {
            series: &xi_k * &tail,
        }
    }

    /// `Lambda_k = pi^k / (k! omega_k) * lk_bar(k)`.
    pub fn lk_normalized(k: u32, order: u32) -> Self {
        Self::lk_bar(k, order).scale(&lk_normalization(k))
    }

    pub fn series(&self) -> &GradedSeries {
        &self.series
    }

    pub fn into_series(self) -> GradedSeries {
        self.series
    }

    pub fn order(&self) -> u32 {
        self.series.order()
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Coefficient of `C_kp`.
    pub fn coefficient(&self, k: u32, p: u32) -> Result<ExactScalar> {
        if 2 * p > k {
            return Err(Error::InvalidIndex { k, p });
        }
        self.series.coeff_of(&[k - 2 * p, p])
    }

    /// Nonzero `(k, p, coefficient)` triples, ordered by `k` then `p`.
    pub fn terms(&self) -> Vec<(u32, u32, ExactScalar)> {
        let mut out: Vec<_> = self
            .series
            .terms()
            .map(|(m, c)| {
                let (a, p) = (m.exps()[0], m.exps()[1]);
                (a + 2 * p, p, c.clone())
            })
            .collect();
        out.sort_by_key(|&(k, p, _)| (k, p));
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        RElement {
            series: self.series.scale(c),
        }
    }

    pub fn truncate(&self, order: u32) -> Self {
        RElement {
            series: self.series.truncate(order),
        }
    }

    /// Action of `t`: multiplication by `xi (1 - eta/4)^(-1/2)`.
    pub fn t_act(&self) -> Self {
        self.t_power_act(1)
    }

    /// Action of `t^i`: multiplication by `xi^i (1 - eta/4)^(-i/2)`.
    pub fn t_power_act(&self, i: u32) -> Self {
        if i == 0 {
            return self.clone();
        }
        RElement {
            series: &self.series * &t_power_multiplier(i, self.order()),
        }
    }

    /// Whether the coefficients agree up to the smaller order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.series.agrees_with(&other.series)
    }
}

impl<'a> Add<&'a RElement> for &RElement {
    type Output = RElement;
    fn add(self, rhs: &'a RElement) -> RElement {
        RElement {
            series: &self.series + &rhs.series,
        }
    }
}

impl<'a> Sub<&'a RElement> for &RElement {
    type Output = RElement;
    fn sub(self, rhs: &'a RElement) -> RElement {
        RElement {
            series: &self.series - &rhs.series,
        }
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (k, p, c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*C[{k},{p}]")?;
        }
        write!(f, " + O({})", self.order() + 1)
    }
}

impl fmt::Debug for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `pi^k / (k! omega_k)`, the factor relating `lk_bar(k)` to `lk_normalized(k)`.
pub fn lk_normalization(k: u32) -> ExactScalar {
    let denom = omega(k).scale(&factorial(k));
    &ExactScalar::pi_pow(k as i32) * &denom.inv().expect("omega_k is a monomial")
}

/// `binom(k/2 + j, j) / 4^j`, the coefficient of `C_{k+2j, j}` in `lk_bar(k)`.
pub fn lk_coefficient(k: u32, j: u32) -> Rat {
    crate::scalar::gen_binomial(HalfInt::from_halves(k as i64 + 2 * j as i64), j)
        / crate::scalar::int(4i64.pow(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, rat};

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_rat(rat(n, d))
    }

    #[test]
    fn basis_elements() {
        let c00 = RElement::basis_element(0, 0, 10).unwrap();
        assert_eq!(c00.series().coeff_of(&[0, 0]).unwrap(), ExactScalar::one());
        let c31 = RElement::basis_element(3, 1, 10).unwrap();
        assert_eq!(c31.series().coeff_of(&[1, 1]).unwrap(), ExactScalar::one());
        let c83 = RElement::basis_element(8, 3, 10).unwrap();
        assert_eq!(c83.terms(), vec![(8, 3, ExactScalar::one())]);
        assert_eq!(RElement::basis_element(3, 2, 10), Err(Error::InvalidIndex { k: 3, p: 2 }));
    }

    #[test]
    fn lk_bar_coefficients() {
        let l0 = RElement::lk_bar(0, 8);
        for j in 0..=4 {
            assert_eq!(l0.coefficient(2 * j, j).unwrap(), q(1, 4i64.pow(j)));
        }
        let l1 = RElement::lk_bar(1, 9);
        let expected = [q(1, 1), q(3, 8), q(15, 128), q(35, 1024)];
        for (j, e) in expected.iter().enumerate() {
            let j = j as u32;
            assert_eq!(&l1.coefficient(1 + 2 * j, j).unwrap(), e);
            // (2j+1) binom(2j, j) / 16^j
            let alt = binomial(2 * j, j) * rat(2 * j as i64 + 1, 16i64.pow(j));
            assert_eq!(l1.coefficient(1 + 2 * j, j).unwrap(), ExactScalar::from_rat(alt));
        }
        // no other terms
        assert_eq!(l1.terms().len(), 5);
    }

    #[test]
    fn lk_normalizations() {
        assert_eq!(RElement::lk_normalized(0, 8), RElement::lk_bar(0, 8));
        let half_pi = ExactScalar::monomial(rat(1, 2), 1, 0);
        assert_eq!(RElement::lk_normalized(1, 8), RElement::lk_bar(1, 8).scale(&half_pi));
        assert_eq!(RElement::lk_normalized(2, 8), RElement::lk_bar(2, 8).scale(&half_pi));
    }

    #[test]
    fn t_action_on_unit() {
        let t = RElement::basis_element(0, 0, 7).unwrap().t_act();
        assert_eq!(
            t.terms(),
            vec![(1, 0, q(1, 1)), (3, 1, q(1, 8)), (5, 2, q(3, 128)), (7, 3, q(5, 1024))]
        );
        assert!(RElement::zero(7).t_act().is_zero());
    }

    #[test]
    fn t_squared_on_unit() {
        let t2 = RElement::basis_element(0, 0, 6).unwrap().t_power_act(2);
        assert_eq!(t2.terms(), vec![(2, 0, q(1, 1)), (4, 1, q(1, 4)), (6, 2, q(1, 16))]);
        assert_eq!(t2, RElement::basis_element(0, 0, 6).unwrap().t_act().t_act());
    }

    #[test]
    fn t_power_zero_is_identity() {
        let c21 = RElement::basis_element(2, 1, 6).unwrap();
        assert_eq!(c21.t_power_act(0), c21);
    }

    #[test]
    fn lk_recursion() {
        for k in 0..10 {
            assert_eq!(RElement::lk_bar(k, 12).t_act(), RElement::lk_bar(k + 1, 12));
        }
    }
}
