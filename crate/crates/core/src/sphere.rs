//! Invariant valuations on round spheres of curvature `lambda`.
//!
//! Elements are expanded in the `tau_k` basis (globalized `C_k0`), with
//! `lambda` kept as a symbol in the coefficients. The two multiplicative
//! bases `phi^k` and `t^k` are produced as `tau` expansions through their
//! generating functions in an auxiliary variable `x`:
//!
//! ```text
//! phi^k = sum_j [x^j] x^k (1 - lambda x^2/4)^-1          tau_j
//! p(t)  = sum_j [x^j] (1 - lambda x^2/4)^-1 p(x (1 - lambda x^2/4)^-1/2) tau_j
//! ```
//!
//! An independent tube-volume computation for concentric spheres supplies
//! intrinsic volumes, which pin down `t^k` through `pi^k t^k / k! = omega_k mu_k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::riemannian::RElement;
use crate::scalar::{binomial, factorial, gen_binomial, int, omega, rat, ExactScalar, HalfInt, Rat};
use crate::series::{Alphabet, GradedSeries};

/// Finite combination `sum c_k tau_k`, exact for `k <= order`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SphereElement {
    order: u32,
    coeffs: BTreeMap<u32, ExactScalar>,
}

/// Curvature of the sphere on which valuations are evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Curvature {
    Symbolic,
    Value(Rat),
}

impl Curvature {
    pub fn as_scalar(&self) -> ExactScalar {
        match self {
            Curvature::Symbolic => ExactScalar::lambda(),
            Curvature::Value(v) => ExactScalar::from_rat(v.clone()),
        }
    }

    /// Specializes the symbol `lambda` inside `c`.
    pub fn specialize(&self, c: &ExactScalar) -> Result<ExactScalar> {
        match self {
            Curvature::Symbolic => Ok(c.clone()),
            Curvature::Value(v) => c.substitute_lambda(v),
        }
    }
}

impl SphereElement {
    pub fn zero(order: u32) -> Self {
        SphereElement {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn tau(k: u32, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(k, ExactScalar::one());
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn add_term(&mut self, k: u32, c: ExactScalar) {
        if k > self.order || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Coefficient of `tau_k` (zero above the order as well; callers that
    /// care check [`SphereElement::order`]).
    pub fn coefficient(&self, k: u32) -> ExactScalar {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &ExactScalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        SphereElement {
            order,
            coeffs: self.coeffs.range(..=order).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.order);
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order.min(other.order);
        self.truncate(n) == other.truncate(n)
    }

    /// Generating series `sum c_k x^k`.
    pub fn to_series(&self) -> GradedSeries {
        GradedSeries::from_terms(
            Alphabet::univariate("x"),
            self.order,
            self.coeffs.iter().map(|(k, c)| (vec![*k], c.clone())),
        )
        .expect("one variable")
    }

    /// Reads `[x^j] f` as the coefficient of `tau_j`.
    pub fn from_series(f: &GradedSeries) -> Result<Self> {
        if f.alphabet().len() != 1 || f.alphabet().weight(0) != 1 {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = Self::zero(f.order());
        for (m, c) in f.terms() {
            out.add_term(m.exps()[0], c.clone());
        }
        Ok(out)
    }

    /// Value on the great subsphere `S^j` of a sphere with the given curvature.
    pub fn evaluate(&self, j: u32, curvature: &Curvature) -> Result<ExactScalar> {
        if j > self.order {
            return Err(Error::BeyondTruncation {
                degree: j,
                order: self.order,
            });
        }
        let symbolic = &self.coefficient(j) * &tau_eval(j, j, &ExactScalar::lambda())?;
        curvature.specialize(&symbolic)
    }
}

impl<'a> Add<&'a SphereElement> for &SphereElement {
    type Output = SphereElement;
    fn add(self, rhs: &'a SphereElement) -> SphereElement {
        let mut out = self.truncate(rhs.order);
        for (k, c) in rhs.coeffs.range(..=out.order) {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SphereElement> for &SphereElement {
    type Output = SphereElement;
    fn sub(self, rhs: &'a SphereElement) -> SphereElement {
        self + &rhs.scale(&ExactScalar::from_int(-1))
    }
}

impl fmt::Display for SphereElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*tau[{k}]")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl fmt::Debug for SphereElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `tau_k(S^j_lambda) = delta_jk * 2 (2 / sqrt(lambda))^k`.
pub fn tau_eval(k: u32, j: u32, lambda: &ExactScalar) -> Result<ExactScalar> {
    if lambda.is_zero() {
        return Err(Error::SingularCurvature);
    }
    if k != j {
        return Ok(ExactScalar::zero());
    }
    let root = lambda.sqrt().ok_or(Error::IrrationalRoot)?;
    let inv_root = root.inv().ok_or(Error::SingularCurvature)?;
    Ok(inv_root.pow(k).scale(&int(2i64 << k)))
}

/// `lambda x^2 / 4` in the auxiliary variable.
fn quarter_lambda_x2(order: u32) -> GradedSeries {
    GradedSeries::monomial(
        Alphabet::univariate("x"),
        order,
        vec![2],
        ExactScalar::lambda().scale(&rat(1, 4)),
    )
    .expect("one variable")
}

/// `(1 - lambda x^2 / 4)^r`.
fn lambda_factor(r: HalfInt, order: u32) -> GradedSeries {
    GradedSeries::binomial_power(&quarter_lambda_x2(order), r).expect("no constant term")
}

fn x_power(k: u32, order: u32) -> GradedSeries {
    GradedSeries::monomial(Alphabet::univariate("x"), order, vec![k], ExactScalar::one())
        .expect("one variable")
}

/// `phi^k = sum_j (lambda/4)^j tau_{k+2j}`.
pub fn phi_in_tau(k: u32, order: u32) -> SphereElement {
    let mut out = SphereElement::zero(order);
    let quarter = ExactScalar::lambda().scale(&rat(1, 4));
    let mut j = 0;
    while k + 2 * j <= order {
        out.add_term(k + 2 * j, quarter.pow(j));
        j += 1;
    }
    out
}

/// Converts `sum_m c_m phi^m`, given as the series `sum_m c_m x^m`, to the
/// `tau` basis.
pub fn phi_expansion_to_tau(f: &GradedSeries) -> Result<SphereElement> {
    let g = f.checked_mul(&lambda_factor(HalfInt::from_int(-1), f.order()))?;
    SphereElement::from_series(&g)
}

/// `t^k` in the `phi` basis, as the series `sum_j binom(k/2 + j - 1, j) (lambda/4)^j x^(k+2j)`.
pub fn t_power_in_phi(k: u32, order: u32) -> GradedSeries {
    let quarter = ExactScalar::lambda().scale(&rat(1, 4));
    let mut terms = Vec::new();
    let mut j = 0;
    while k + 2 * j <= order {
        let c = gen_binomial(HalfInt::from_halves(k as i64 + 2 * j as i64 - 2), j);
        terms.push((vec![k + 2 * j], quarter.pow(j).scale(&c)));
        j += 1;
    }
    GradedSeries::from_terms(Alphabet::univariate("x"), order, terms).expect("one variable")
}

/// `t^k` in the `phi` basis, from the closed form `phi^k (1 - lambda phi^2/4)^(-k/2)`.
pub fn t_power_in_phi_closed(k: u32, order: u32) -> GradedSeries {
    &x_power(k, order) * &lambda_factor(HalfInt::from_halves(-(k as i64)), order)
}

/// `t^k = sum_j binom(k/2 + j, j) (lambda/4)^j tau_{k+2j}`.
pub fn t_power_in_tau(k: u32, order: u32) -> SphereElement {
    let mut out = SphereElement::zero(order);
    let quarter = ExactScalar::lambda().scale(&rat(1, 4));
    let mut j = 0;
    while k + 2 * j <= order {
        let c = gen_binomial(HalfInt::from_halves(k as i64 + 2 * j as i64), j);
        out.add_term(k + 2 * j, quarter.pow(j).scale(&c));
        j += 1;
    }
    out
}

/// Multiplication by `t`: `x (1 - lambda x^2/4)^(-1/2)` on generating series.
pub fn t_act_tau(e: &SphereElement) -> SphereElement {
    let n = e.order();
    let mult = &x_power(1, n) * &lambda_factor(HalfInt::from_halves(-1), n);
    SphereElement::from_series(&(&e.to_series() * &mult)).expect("univariate")
}

/// `q(t)` in the `tau` basis, for `q` a series in one variable of weight 1.
pub fn poly_in_t_to_tau(q: &GradedSeries) -> Result<SphereElement> {
    if q.alphabet().len() != 1 || q.alphabet().weight(0) != 1 {
        return Err(Error::AlphabetMismatch);
    }
    let n = q.order();
    let x_image = &x_power(1, n) * &lambda_factor(HalfInt::from_halves(-1), n);
    // q may name its variable differently
    let q_in_x = GradedSeries::from_terms(
        Alphabet::univariate("x"),
        n,
        q.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())),
    )?;
    let composed = q_in_x.substitute(&[x_image])?;
    SphereElement::from_series(&(&composed * &lambda_factor(HalfInt::from_int(-1), n)))
}

/// Globalization on a sphere of curvature `lambda`: `C_kp -> lambda^p tau_k`.
pub fn globalize_on_sphere(e: &RElement) -> SphereElement {
    let mut out = SphereElement::zero(e.order());
    for (k, p, c) in e.terms() {
        out.add_term(k, &c * &ExactScalar::lambda().pow(p));
    }
    out
}

/// Intrinsic volumes `mu_0, ..., mu_n` of a round `n`-sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntrinsicVolumeVector {
    pub dim: u32,
    pub mu: Vec<ExactScalar>,
}

impl IntrinsicVolumeVector {
    /// `mu_j`, zero above the sphere dimension.
    pub fn get(&self, j: u32) -> ExactScalar {
        self.mu.get(j as usize).cloned().unwrap_or_default()
    }
}

/// Intrinsic volumes of the sphere of radius `radius` in `R^(n+1)`.
///
/// The tube of radius `r < R` around the sphere is the shell between
/// concentric balls, of volume `omega_{n+1} ((R+r)^(n+1) - (R-r)^(n+1))`.
/// Matching this polynomial in `r` with the tube formula
/// `sum_j mu_j omega_{n+1-j} r^(n+1-j)` gives every `mu_j`. The radius may
/// be symbolic, e.g. `lambda^(-1/2)`.
pub fn sphere_intrinsic_volumes(n: u32, radius: &ExactScalar) -> IntrinsicVolumeVector {
    let ambient = n + 1;
    // shell[i] = coefficient of r^i in (R + r)^(n+1) - (R - r)^(n+1)
    let mut shell = vec![ExactScalar::zero(); ambient as usize + 1];
    for (i, slot) in shell.iter_mut().enumerate() {
        let i = i as u32;
        let plus = radius.pow(ambient - i).scale(&binomial(ambient, i));
        let minus = if i.is_multiple_of(2) { plus.clone() } else { -&plus };
        *slot = &plus - &minus;
    }
    let vol = omega(ambient);
    let mu = (0..=n)
        .map(|j| {
            let i = (ambient - j) as usize;
            let w = omega(ambient - j).inv().expect("omega is a monomial");
            &(&vol * &shell[i]) * &w
        })
        .collect();
    IntrinsicVolumeVector { dim: n, mu }
}

/// Result of evaluating `t^k` on a great `j`-sphere two independent ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    /// From the `tau` expansion of `t^k` and `tau_k(S^j)`.
    pub via_tau: ExactScalar,
    /// From intrinsic volumes of the sphere of radius `lambda^(-1/2)`.
    pub via_tube: ExactScalar,
    pub agree: bool,
}

/// Evaluates `t^k(S^j_lambda)` through the `tau` expansion and through the
/// tube-volume oracle. Values are returned with `lambda` substituted when the
/// result is rational, symbolic otherwise.
pub fn t_power_eval_crosscheck(k: u32, j: u32, lambda: &Rat) -> Result<CrossCheck> {
    if lambda <= &Rat::from_integer(0.into()) {
        return Err(Error::SingularCurvature);
    }
    let order = j.max(k);
    let via_tau = t_power_in_tau(k, order).evaluate(j, &Curvature::Symbolic)?;

    let radius = ExactScalar::lambda_pow_half(-1);
    let mu = sphere_intrinsic_volumes(j, &radius).get(k);
    let scale = &omega(k).scale(&factorial(k)) * &ExactScalar::pi_pow(-(k as i32));
    let via_tube = &scale * &mu;

    let agree_symbolic = via_tau == via_tube;
    let numeric = Curvature::Value(lambda.clone());
    let (a, b) = match (numeric.specialize(&via_tau), numeric.specialize(&via_tube)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => (via_tau, via_tube),
    };
    let agree = agree_symbolic && a == b;
    Ok(CrossCheck {
        via_tau: a,
        via_tube: b,
        agree,
    })
}

/// Rows `phi^k` (k = 0..=order) expanded in `tau`.
pub fn phi_to_tau_table(order: u32) -> Vec<SphereElement> {
    (0..=order).map(|k| phi_in_tau(k, order)).collect()
}

/// Rows `t^k` expanded in `tau`.
pub fn t_to_tau_table(order: u32) -> Vec<SphereElement> {
    (0..=order).map(|k| t_power_in_tau(k, order)).collect()
}

/// Rows `t^k` expanded in `phi`, as coefficient series in `x = phi`.
pub fn t_to_phi_table(order: u32) -> Vec<GradedSeries> {
    (0..=order).map(|k| t_power_in_phi(k, order)).collect()
}
