//! Hermitian curvature measures on complex space forms.
//!
//! Elements live in the stable (`n = infinity`) model and are indexed by
//! `(k, q)` with `2q <= k`, in either the angular basis `Delta_kq` or the
//! graded basis `TildeDelta_kq = sum_j binom(q + j, q) Delta_{k,q+j}`.
//!
//! For a complex space form of holomorphic curvature `4 lambda`, `lambda != 0`,
//! the realizations `C^lambda_kj` of the Riemannian curvature measures form
//! another basis of the same space, related degreewise by
//!
//! ```text
//! TD_kp  = (pi/2)^ceil(k/2) k!! / ((k-2p)! (2p+1)!) sum_j (-1)^(p-j) lambda^-j binom(p, j) C_kj
//! C_kj   = (2/pi)^ceil(k/2) lambda^j / k!! sum_p binom(j, p) (k-2p)! (2p+1)! TD_kp
//! ```
//!
//! Through this change of basis the Lipschitz-Killing action of `t` on
//! curvature measures becomes an explicit operator `t_lambda` on the `TD`
//! basis, available here both in closed form and by routing through `C`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::riemannian::RElement;
use crate::scalar::{binomial, double_factorial, factorial, int, rat, ExactScalar, HalfInt, Rat};
use crate::series::{Alphabet, GradedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HermitianBasis {
    Delta,
    TildeDelta,
}

impl HermitianBasis {
    pub fn name(self) -> &'static str {
        match self {
            HermitianBasis::Delta => "D",
            HermitianBasis::TildeDelta => "TD",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HermitianElement {
    order: u32,
    basis: HermitianBasis,
    coeffs: BTreeMap<(u32, u32), ExactScalar>,
}

impl HermitianElement {
    pub fn zero(basis: HermitianBasis, order: u32) -> Self {
        HermitianElement {
            order,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(k: u32, q: u32, basis: HermitianBasis, order: u32) -> Result<Self> {
        if 2 * q > k {
            return Err(Error::InvalidIndex { k, p: q });
        }
        if k > order {
            return Err(Error::BeyondTruncation { degree: k, order });
        }
        let mut e = Self::zero(basis, order);
        e.add_term(k, q, ExactScalar::one());
        Ok(e)
    }

    pub fn basis(&self) -> HermitianBasis {
        self.basis
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Accumulates `c` on `(k, q)`; ignored above the order.
    ///
    /// # Panics
    /// If `2q > k`.
    pub fn add_term(&mut self, k: u32, q: u32, c: ExactScalar) {
        assert!(2 * q <= k, "invalid hermitian index ({k}, {q})");
        if k > self.order || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((k, q)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(k, q));
        }
    }

    pub fn coefficient(&self, k: u32, q: u32) -> ExactScalar {
        self.coeffs.get(&(k, q)).cloned().unwrap_or_default()
    }

    /// Nonzero terms ordered by `(k, q)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &ExactScalar)> {
        self.coeffs.iter().map(|(&(k, q), c)| (k, q, c))
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        HermitianElement {
            order,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(k, _), _)| k <= order)
                .map(|(key, c)| (*key, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.basis, self.order);
        for (&(k, q), v) in &self.coeffs {
            out.add_term(k, q, v * c);
        }
        out
    }

    /// Same basis and same coefficients up to the smaller order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// Lowest `(k, q)` where the two elements differ, with both coefficients.
    pub fn first_disagreement(&self, other: &Self) -> Option<(u32, u32, ExactScalar, ExactScalar)> {
        if self.basis != other.basis {
            return Some((0, 0, self.coefficient(0, 0), other.coefficient(0, 0)));
        }
        let n = self.order.min(other.order);
        let diff = &self.truncate(n) - &other.truncate(n);
        let (k, q, _) = diff.terms().next()?;
        Some((k, q, self.coefficient(k, q), other.coefficient(k, q)))
    }

    fn expect_basis(&self, basis: HermitianBasis) -> Result<()> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(Error::WrongBasis {
                expected: basis.name(),
                found: self.basis.name(),
            })
        }
    }

    /// Rewrites a `Delta`-basis element in the `TildeDelta` basis, using
    /// `Delta_kj = sum_l (-1)^l binom(l + j, l) TD_{k,l+j}`.
    pub fn delta_to_tilde(&self) -> Result<Self> {
        self.expect_basis(HermitianBasis::Delta)?;
        let mut out = Self::zero(HermitianBasis::TildeDelta, self.order);
        for (&(k, j), c) in &self.coeffs {
            for l in 0..=(k / 2 - j) {
                let mut b = binomial(l + j, l);
                if l % 2 == 1 {
                    b = -b;
                }
                out.add_term(k, l + j, c.scale(&b));
            }
        }
        Ok(out)
    }

    /// Rewrites a `TildeDelta`-basis element in the `Delta` basis.
    pub fn tilde_to_delta(&self) -> Result<Self> {
        self.expect_basis(HermitianBasis::TildeDelta)?;
        let mut out = Self::zero(HermitianBasis::Delta, self.order);
        for (&(k, l), c) in &self.coeffs {
            for j in 0..=(k / 2 - l) {
                out.add_term(k, l + j, c.scale(&binomial(l + j, l)));
            }
        }
        Ok(out)
    }
}

impl<'a> Add<&'a HermitianElement> for &HermitianElement {
    type Output = HermitianElement;

    /// # Panics
    /// If the bases differ.
    fn add(self, rhs: &'a HermitianElement) -> HermitianElement {
        assert_eq!(self.basis, rhs.basis, "hermitian bases must match");
        let mut out = self.truncate(rhs.order);
        for (&(k, q), c) in &rhs.coeffs {
            out.add_term(k, q, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a HermitianElement> for &HermitianElement {
    type Output = HermitianElement;

    fn sub(self, rhs: &'a HermitianElement) -> HermitianElement {
        self + &rhs.scale(&ExactScalar::from_int(-1))
    }
}

impl fmt::Display for HermitianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, (&(k, q), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{}[{k},{q}]", self.basis.name())?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl fmt::Debug for HermitianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn invert_curvature(lambda: &ExactScalar) -> Result<ExactScalar> {
    lambda.inv().ok_or(Error::SingularCurvature)
}

fn dfact(n: i64) -> Rat {
    double_factorial(n).expect("n >= -1")
}

/// `(pi/2)^ceil(k/2)`.
fn half_pi_power(k: u32) -> ExactScalar {
    let e = k.div_ceil(2);
    ExactScalar::monomial(rat(1, 1 << e), e as i32, 0)
}

/// `k!! / ((k-2p)! (2p+1)!)`.
fn mixed_factorial_ratio(k: u32, p: u32) -> Rat {
    dfact(k as i64) / (factorial(k - 2 * p) * factorial(2 * p + 1))
}

/// Coefficient of `C^lambda_kj` in `TD_kp`.
fn tilde_in_c(k: u32, p: u32, j: u32, inv_lambda: &ExactScalar) -> ExactScalar {
    if j > p {
        return ExactScalar::zero();
    }
    let mut c = binomial(p, j) * mixed_factorial_ratio(k, p);
    if (p - j) % 2 == 1 {
        c = -c;
    }
    (&half_pi_power(k) * &inv_lambda.pow(j)).scale(&c)
}

/// Coefficient of `TD_kp` in `C^lambda_kj`.
fn c_in_tilde(k: u32, j: u32, p: u32, lambda: &ExactScalar) -> ExactScalar {
    if p > j {
        return ExactScalar::zero();
    }
    let c = binomial(j, p) * factorial(k - 2 * p) * factorial(2 * p + 1) / dfact(k as i64);
    let two_over_pi = half_pi_power(k).inv().expect("monomial");
    (&two_over_pi * &lambda.pow(j)).scale(&c)
}

/// Expresses a Riemannian curvature measure, realized on the complex space
/// form of curvature `lambda`, in the `TildeDelta` basis.
pub fn tilde_from_c(e: &RElement, lambda: &ExactScalar) -> Result<HermitianElement> {
    invert_curvature(lambda)?;
    let mut out = HermitianElement::zero(HermitianBasis::TildeDelta, e.order());
    for (k, j, c) in e.terms() {
        for p in 0..=j {
            out.add_term(k, p, &c * &c_in_tilde(k, j, p, lambda));
        }
    }
    Ok(out)
}

/// Inverse of [`tilde_from_c`].
pub fn c_from_tilde(e: &HermitianElement, lambda: &ExactScalar) -> Result<RElement> {
    e.expect_basis(HermitianBasis::TildeDelta)?;
    let inv_lambda = invert_curvature(lambda)?;
    let mut coeffs = Vec::new();
    for (k, p, c) in e.terms() {
        for j in 0..=p {
            coeffs.push((k, j, c * &tilde_in_c(k, p, j, &inv_lambda)));
        }
    }
    RElement::from_coefficients(e.order(), coeffs)
}

/// Degree-`k` change of basis: row `p` holds the coefficients of
/// `C^lambda_k0, ..., C^lambda_{k,floor(k/2)}` in `TD_kp`.
pub fn tilde_to_c_matrix(k: u32, lambda: &ExactScalar) -> Result<Vec<Vec<ExactScalar>>> {
    let inv_lambda = invert_curvature(lambda)?;
    Ok((0..=k / 2)
        .map(|p| (0..=k / 2).map(|j| tilde_in_c(k, p, j, &inv_lambda)).collect())
        .collect())
}

/// Degree-`k` inverse change of basis: row `j` holds the coefficients of
/// `TD_k0, ..., TD_{k,floor(k/2)}` in `C^lambda_kj`.
pub fn c_to_tilde_matrix(k: u32, lambda: &ExactScalar) -> Result<Vec<Vec<ExactScalar>>> {
    invert_curvature(lambda)?;
    Ok((0..=k / 2)
        .map(|j| (0..=k / 2).map(|p| c_in_tilde(k, j, p, lambda)).collect())
        .collect())
}

/// Whether a square matrix is lower triangular with nonzero diagonal.
pub fn is_unitriangular_shape(m: &[Vec<ExactScalar>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && !row[i].is_zero()
            && row[i + 1..].iter().all(ExactScalar::is_zero)
    })
}

/// `(1 - 4w)^r` for `w` one of the variables of `{z, y}`.
fn one_minus_four(var: &str, r: HalfInt, order: u32) -> GradedSeries {
    let w = GradedSeries::var(Alphabet::zy(), order, var)
        .expect("z and y exist")
        .scale(&ExactScalar::from_int(4));
    GradedSeries::binomial_power(&w, r).expect("no constant term")
}

fn z_power(k: u32, order: u32) -> GradedSeries {
    GradedSeries::monomial(Alphabet::zy(), order, vec![k, 0], ExactScalar::one()).expect("z, y")
}

/// `g_k = binom(2k, k) z^k (1 - 4z)^(-k - 1/2) (1 - 4y)^(-3/2)`.
pub fn genfun_g(k: u32, order: u32) -> GradedSeries {
    let zk = z_power(k, order).scale(&ExactScalar::from_rat(binomial(2 * k, k)));
    let fz = one_minus_four("z", HalfInt::from_halves(-2 * k as i64 - 1), order);
    let fy = one_minus_four("y", HalfInt::from_halves(-3), order);
    &(&zk * &fz) * &fy
}

/// `h_k = z^k (1 - 4z)^(-k - 3/2) (1 - 4y)^(-3/2)`.
pub fn genfun_h(k: u32, order: u32) -> GradedSeries {
    let fz = one_minus_four("z", HalfInt::from_halves(-2 * k as i64 - 3), order);
    let fy = one_minus_four("y", HalfInt::from_halves(-3), order);
    &(&z_power(k, order) * &fz) * &fy
}

fn central(n: u32) -> Rat {
    binomial(2 * n, n)
}

/// Coefficient of `xibar^m etabar^p` in the image of `z^m y^p` under `O`.
pub fn o_weight(m: u32, p: u32) -> ExactScalar {
    let c = binomial(m + p, p) / (int(2 * p as i64 + 1) * central(p) * central(m));
    ExactScalar::monomial(c, (m + p) as i32, 0)
}

/// Coefficient of `xibar^m etabar^p` in the image of `z^m y^p` under `P`.
pub fn p_weight(m: u32, p: u32) -> ExactScalar {
    let n = m + p;
    let c = int(2 * n as i64 + 1) * central(n) * binomial(n, p)
        / (int(2 * m as i64 + 1) * int(2 * p as i64 + 1) * central(m) * central(p));
    ExactScalar::monomial(c / int(4i64.pow(n)), n as i32, 0)
}

fn rescale_to_bar(f: &GradedSeries, weight: fn(u32, u32) -> ExactScalar) -> Result<GradedSeries> {
    if **f.alphabet() != *Alphabet::zy() {
        return Err(Error::AlphabetMismatch);
    }
    let terms = f.terms().map(|(mono, c)| {
        let (m, p) = (mono.exps()[0], mono.exps()[1]);
        (vec![m, p], c * &weight(m, p))
    });
    GradedSeries::from_terms(Alphabet::bar(), f.order(), terms)
}

/// The transform `O: z^m y^p -> pi^(m+p) binom(m+p, p) / ((2p+1) binom(2p,p) binom(2m,m)) xibar^m etabar^p`.
pub fn o_transform(f: &GradedSeries) -> Result<GradedSeries> {
    rescale_to_bar(f, o_weight)
}

/// The transform `P`, see [`p_weight`].
pub fn p_transform(f: &GradedSeries) -> Result<GradedSeries> {
    rescale_to_bar(f, p_weight)
}

/// Reads a series in the bar coordinates `xibar = xi^2`,
/// `etabar = eta/lambda - xi^2` as a curvature measure.
pub fn bar_to_xi_eta(f: &GradedSeries, lambda: &ExactScalar) -> Result<RElement> {
    if **f.alphabet() != *Alphabet::bar() {
        return Err(Error::AlphabetMismatch);
    }
    let inv_lambda = invert_curvature(lambda)?;
    let n = f.order();
    let a = Alphabet::xi_eta();
    let xi2 = GradedSeries::monomial(a.clone(), n, vec![2, 0], ExactScalar::one())?;
    let eta = GradedSeries::var(a, n, "eta")?;
    let etabar = &eta.scale(&inv_lambda) - &xi2;
    RElement::from_series(f.substitute(&[xi2, etabar])?)
}

/// The Lipschitz-Killing element `lk_bar(k)` of the complex space form with
/// curvature `lambda`, expanded in `TildeDelta` through its exponential
/// generating function:
///
/// * `k = 2i`:     `(4/lambda)^i L(g_i(lambda z/4pi, lambda y/4pi))`
/// * `k = 2i + 1`: `(2/pi) (16/lambda)^i M(h_i(lambda z/4pi, lambda y/4pi))`
///
/// with `L(z^m y^p) = m! p! TD_{2m+2p,p}` and `M(z^m y^p) = m! p! TD_{2m+2p+1,p}`.
/// Every power of `lambda` that survives is nonnegative, so `lambda = 0` is allowed.
pub fn lk_in_tilde_delta(k: u32, lambda: &ExactScalar, order: u32) -> HermitianElement {
    let i = k / 2;
    let odd = k % 2;
    let series_order = order - odd.min(order);
    let (f, prefactor) = if odd == 0 {
        (genfun_g(i, series_order), ExactScalar::from_int(4i64.pow(i)))
    } else {
        (
            genfun_h(i, series_order),
            ExactScalar::monomial(int(2 * 16i64.pow(i)), -1, 0),
        )
    };
    let inv_four_pi = ExactScalar::monomial(rat(1, 4), -1, 0);
    let mut out = HermitianElement::zero(HermitianBasis::TildeDelta, order);
    for (mono, c) in f.terms() {
        let (m, p) = (mono.exps()[0], mono.exps()[1]);
        // g_i and h_i are divisible by z^i, so m >= i
        let scale = &(&prefactor * &lambda.pow(m + p - i)) * &inv_four_pi.pow(m + p);
        let c = (c * &scale).scale(&(factorial(m) * factorial(p)));
        out.add_term(2 * (m + p) + odd, p, c);
    }
    out
}

/// `C_from_tilde` through the transforms: even degrees via
/// `TD_{2m+2p,p} = O(z^m y^p / (m! p!))` and odd degrees via
/// `TD_{2m+2p+1,p} = (pi/2) xi P(z^m y^p / (m! p!))`, read in bar coordinates.
pub fn c_from_tilde_via_transforms(e: &HermitianElement, lambda: &ExactScalar) -> Result<RElement> {
    e.expect_basis(HermitianBasis::TildeDelta)?;
    let n = e.order();
    let mut even = GradedSeries::zero(Alphabet::zy(), n);
    let mut odd = GradedSeries::zero(Alphabet::zy(), n.saturating_sub(1));
    for (k, p, c) in e.terms() {
        let m = (k - 2 * p) / 2;
        let inv = (factorial(m) * factorial(p)).recip();
        let term = GradedSeries::monomial(Alphabet::zy(), n, vec![m, p], c.scale(&inv))?;
        if k % 2 == 0 {
            even = &even + &term;
        } else {
            odd = &odd + &term;
        }
    }
    let even_part = bar_to_xi_eta(&o_transform(&even)?, lambda)?;
    let odd_bar = bar_to_xi_eta(&p_transform(&odd)?, lambda)?;
    let half_pi_xi = ExactScalar::monomial(rat(1, 2), 1, 0);
    let odd_part = RElement::from_series(odd_bar.series().shift(&[1, 0])?.scale(&half_pi_xi))?;
    Ok(&even_part.truncate(n) + &odd_part)
}

/// `t_lambda` on the `TildeDelta` basis, in closed form:
///
/// ```text
/// t TD_kp = e_k k!! / ((k-2p)! (2p+1)!) sum_{l >= 0, q >= p}
///           (k+2l-2q+1)! (2q+1)! / (k+2l+1)!! (lambda/8pi)^l binom(2l, l) binom(l, q-p) TD_{k+2l+1,q}
/// ```
///
/// where `e_k = 2/pi` for even `k` and `1` for odd `k`.
pub fn t_lambda_act_closed(e: &HermitianElement, lambda: &ExactScalar) -> Result<HermitianElement> {
    e.expect_basis(HermitianBasis::TildeDelta)?;
    let n = e.order();
    let step = &ExactScalar::monomial(rat(1, 8), -1, 0) * lambda;
    let mut out = HermitianElement::zero(HermitianBasis::TildeDelta, n);
    for (k, p, c) in e.terms() {
        let parity = if k % 2 == 0 {
            ExactScalar::monomial(int(2), -1, 0)
        } else {
            ExactScalar::one()
        };
        let prefactor = &parity.scale(&mixed_factorial_ratio(k, p)) * c;
        let mut l = 0;
        while k + 2 * l < n {
            let target = k + 2 * l + 1;
            let lth = step.pow(l).scale(&central(l));
            for q in p..=p + l {
                let w = factorial(target - 2 * q) * factorial(2 * q + 1) / dfact(target as i64)
                    * binomial(l, q - p);
                out.add_term(target, q, (&prefactor * &lth).scale(&w));
            }
            l += 1;
        }
    }
    Ok(out)
}

/// `t_lambda` computed by changing to the `C` basis, applying `t` there and
/// changing back.
pub fn t_lambda_act_via_c(e: &HermitianElement, lambda: &ExactScalar) -> Result<HermitianElement> {
    let c = c_from_tilde(e, lambda)?;
    tilde_from_c(&c.t_act(), lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_rat(rat(n, d))
    }

    fn td(k: u32, p: u32, n: u32) -> HermitianElement {
        HermitianElement::basis_element(k, p, HermitianBasis::TildeDelta, n).unwrap()
    }

    #[test]
    fn delta_tilde_change() {
        let d = HermitianElement::basis_element(4, 1, HermitianBasis::TildeDelta, 8)
            .unwrap()
            .tilde_to_delta()
            .unwrap();
        assert_eq!(d.coefficient(4, 1), q(1, 1));
        assert_eq!(d.coefficient(4, 2), q(2, 1));
        assert!(d.coefficient(4, 0).is_zero());
        // top index is fixed
        let top = HermitianElement::basis_element(5, 2, HermitianBasis::Delta, 8).unwrap();
        assert_eq!(top.delta_to_tilde().unwrap().terms().count(), 1);
        // Delta_41 = TD_41 - 2 TD_42
        let d41 = HermitianElement::basis_element(4, 1, HermitianBasis::Delta, 8).unwrap();
        let t = d41.delta_to_tilde().unwrap();
        assert_eq!(t.coefficient(4, 1), q(1, 1));
        assert_eq!(t.coefficient(4, 2), q(-2, 1));
        for k in 0..=8 {
            for p in 0..=k / 2 {
                let e = HermitianElement::basis_element(k, p, HermitianBasis::Delta, 8).unwrap();
                assert_eq!(e.delta_to_tilde().unwrap().tilde_to_delta().unwrap(), e);
            }
        }
        assert!(matches!(d41.tilde_to_delta(), Err(Error::WrongBasis { .. })));
    }

    #[test]
    fn o_and_p_weights() {
        let n = 8;
        let one = GradedSeries::one(Alphabet::zy(), n);
        assert_eq!(o_transform(&one).unwrap(), GradedSeries::one(Alphabet::bar(), n));
        assert_eq!(p_transform(&one).unwrap(), GradedSeries::one(Alphabet::bar(), n));
        assert_eq!(o_weight(1, 0), ExactScalar::monomial(rat(1, 2), 1, 0));
        assert_eq!(p_weight(1, 0), ExactScalar::monomial(rat(1, 4), 1, 0));
    }

    #[test]
    fn o_and_p_closed_forms() {
        let n = 12;
        let pi_sum = {
            let a = Alphabet::bar();
            let s = &GradedSeries::var(a.clone(), n, "xibar").unwrap() + &GradedSeries::var(a, n, "etabar").unwrap();
            s.scale(&ExactScalar::pi())
        };
        let target_o = GradedSeries::binomial_power(&pi_sum, HalfInt::from_int(-1)).unwrap();
        let target_p = GradedSeries::binomial_power(&pi_sum, HalfInt::from_halves(-3)).unwrap();
        assert_eq!(o_transform(&genfun_g(0, n)).unwrap(), target_o);
        assert_eq!(p_transform(&genfun_h(0, n)).unwrap(), target_p);
        for k in 1..=4 {
            let xibar_k = GradedSeries::monomial(Alphabet::bar(), n, vec![k, 0], ExactScalar::one()).unwrap();
            let o = &xibar_k.scale(&ExactScalar::pi_pow(k as i32))
                * &GradedSeries::binomial_power(&pi_sum, HalfInt::from_int(-(k as i64) - 1)).unwrap();
            assert_eq!(o_transform(&genfun_g(k, n)).unwrap(), o);
            let pk = ExactScalar::monomial(rat(1, 4i64.pow(k)), k as i32, 0);
            let p = &xibar_k.scale(&pk)
                * &GradedSeries::binomial_power(&pi_sum, HalfInt::from_halves(-2 * k as i64 - 3)).unwrap();
            assert_eq!(p_transform(&genfun_h(k, n)).unwrap(), p);
        }
    }

    #[test]
    fn generating_function_derivatives() {
        let n = 12;
        let g0 = genfun_g(0, n);
        let h0 = genfun_h(0, n);
        assert_eq!(g0.constant_term(), ExactScalar::one());
        for k in 1..=5u32 {
            let lhs = g0.shifted_derivative(0, k);
            assert_eq!(lhs, genfun_g(k, n).scale(&ExactScalar::from_rat(factorial(k))));
            let c = factorial(2 * k + 1) / factorial(k);
            assert_eq!(h0.shifted_derivative(0, k), genfun_h(k, n).scale(&ExactScalar::from_rat(c)));
        }
    }

    #[test]
    fn basis_change_examples() {
        let lam = ExactScalar::lambda();
        let c00 = RElement::basis_element(0, 0, 6).unwrap();
        assert_eq!(tilde_from_c(&c00, &lam).unwrap(), td(0, 0, 6));
        // C_31 = (8 lambda / pi^2)(TD_30 + TD_31)
        let c31 = RElement::basis_element(3, 1, 6).unwrap();
        let t = tilde_from_c(&c31, &lam).unwrap();
        let w = ExactScalar::monomial(int(8), -2, 2);
        assert_eq!(t.coefficient(3, 0), w);
        assert_eq!(t.coefficient(3, 1), w);
        assert_eq!(tilde_from_c(&c31, &ExactScalar::zero()), Err(Error::SingularCurvature));
        for k in 0..=8 {
            for p in 0..=k / 2 {
                let e = td(k, p, 8);
                let back = tilde_from_c(&c_from_tilde(&e, &lam).unwrap(), &lam).unwrap();
                assert_eq!(back, e);
            }
        }
    }

    #[test]
    fn conversion_matrices_are_triangular() {
        let lam = ExactScalar::lambda();
        for k in 0..=12 {
            assert!(is_unitriangular_shape(&tilde_to_c_matrix(k, &lam).unwrap()));
            assert!(is_unitriangular_shape(&c_to_tilde_matrix(k, &lam).unwrap()));
        }
    }

    #[test]
    fn lk_generating_functions() {
        let lam = ExactScalar::lambda();
        let l0 = lk_in_tilde_delta(0, &lam, 6);
        assert_eq!(l0.coefficient(0, 0), ExactScalar::one());
        let l1 = lk_in_tilde_delta(1, &lam, 6);
        assert_eq!(l1.coefficient(1, 0), ExactScalar::monomial(int(2), -1, 0));
        for k in 0..=6 {
            let direct = lk_in_tilde_delta(k, &lam, 10);
            let routed = tilde_from_c(&RElement::lk_bar(k, 10), &lam).unwrap();
            assert_eq!(direct, routed, "k = {k}");
        }
    }

    #[test]
    fn transform_route_to_c() {
        let lam = ExactScalar::lambda();
        let n = 9;
        for k in 0..=n {
            for p in 0..=k / 2 {
                let e = td(k, p, n);
                assert_eq!(
                    c_from_tilde_via_transforms(&e, &lam).unwrap(),
                    c_from_tilde(&e, &lam).unwrap(),
                    "TD[{k},{p}]"
                );
            }
        }
    }

    #[test]
    fn closed_t_action_leading_terms() {
        let lam = ExactScalar::lambda();
        let t = t_lambda_act_closed(&td(0, 0, 5), &lam).unwrap();
        assert_eq!(t.coefficient(1, 0), ExactScalar::monomial(int(2), -1, 0));
        let w = ExactScalar::monomial(int(1), -2, 2);
        assert_eq!(t.coefficient(3, 0), w);
        assert_eq!(t.coefficient(3, 1), w);
        assert_eq!(t.terms().count(), 6);
        for (k, _, _) in t_lambda_act_closed(&td(2, 1, 11), &lam).unwrap().terms() {
            assert_eq!(k % 2, 1);
        }
    }

    #[test]
    fn closed_t_action_matches_route() {
        let lam = ExactScalar::lambda();
        for k in 0..=4 {
            for p in 0..=k / 2 {
                let e = td(k, p, k + 5);
                assert_eq!(
                    t_lambda_act_closed(&e, &lam).unwrap(),
                    t_lambda_act_via_c(&e, &lam).unwrap()
                );
            }
        }
    }
}
