//! Sparse truncated power series over a weighted alphabet.
//!
//! A [`GradedSeries`] carries a truncation order `N`: every coefficient of
//! weighted degree `<= N` is exact, everything above is unknown and not
//! stored. Binary operations truncate at the smaller of the two orders.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{gen_binomial, int, ExactScalar, HalfInt, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub weight: u32,
}

/// Ordered list of named variables with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    vars: Vec<Var>,
}

impl Alphabet {
    pub fn new<'a>(vars: impl IntoIterator<Item = (&'a str, u32)>) -> Result<Arc<Self>> {
        let vars: Vec<Var> = vars
            .into_iter()
            .map(|(name, weight)| Var {
                name: name.to_string(),
                weight,
            })
            .collect();
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(Error::InvalidAlphabet(alloc::format!(
                    "variable `{}` has weight 0",
                    v.name
                )));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidAlphabet(alloc::format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Arc::new(Alphabet { vars }))
    }

    fn standard(vars: &[(&str, u32)]) -> Arc<Self> {
        Self::new(vars.iter().copied()).expect("standard alphabet is valid")
    }

    /// `{xi: 1, eta: 2}`, the coordinates of curvature measures `C_kp`.
    pub fn xi_eta() -> Arc<Self> {
        Self::standard(&[("xi", 1), ("eta", 2)])
    }

    /// `{x: 1, y: 2, z: 2}`, the coordinates of relative measures `C_kpl`.
    pub fn xyz() -> Arc<Self> {
        Self::standard(&[("x", 1), ("y", 2), ("z", 2)])
    }

    /// `{z: 2, y: 2}`, the domain of the hermitian generating functions.
    pub fn zy() -> Arc<Self> {
        Self::standard(&[("z", 2), ("y", 2)])
    }

    /// `{xibar: 2, etabar: 2}`.
    pub fn bar() -> Arc<Self> {
        Self::standard(&[("xibar", 2), ("etabar", 2)])
    }

    /// A single variable of weight 1.
    pub fn univariate(name: &str) -> Arc<Self> {
        Self::standard(&[(name, 1)])
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.weight).sum()
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector together with its cached weighted degree.
///
/// The derived ordering is graded-lex: weighted degree first, then the
/// exponent vector lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(alphabet: &Alphabet, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != alphabet.len() {
            return Err(Error::ArityMismatch {
                expected: alphabet.len(),
                found: exps.len(),
            });
        }
        Ok(Monomial {
            degree: alphabet.degree(&exps),
            exps,
        })
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; alphabet.len()],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Truncated formal power series with [`ExactScalar`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    alphabet: Arc<Alphabet>,
    order: u32,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl GradedSeries {
    pub fn zero(alphabet: Arc<Alphabet>, order: u32) -> Self {
        GradedSeries {
            alphabet,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: Arc<Alphabet>, order: u32, c: ExactScalar) -> Self {
        let mut s = Self::zero(alphabet, order);
        let one = Monomial::one(&s.alphabet);
        s.add_term(one, c);
        s
    }

    pub fn one(alphabet: Arc<Alphabet>, order: u32) -> Self {
        Self::constant(alphabet, order, ExactScalar::one())
    }

    /// `c * prod var_i^exps[i]`, or zero if the degree exceeds `order`.
    pub fn monomial(
        alphabet: Arc<Alphabet>,
        order: u32,
        exps: Vec<u32>,
        c: ExactScalar,
    ) -> Result<Self> {
        let m = Monomial::new(&alphabet, exps)?;
        let mut s = Self::zero(alphabet, order);
        s.add_term(m, c);
        Ok(s)
    }

    /// The variable `name` as a series.
    pub fn var(alphabet: Arc<Alphabet>, order: u32, name: &str) -> Result<Self> {
        let i = alphabet.index_of(name)?;
        let mut exps = vec![0; alphabet.len()];
        exps[i] = 1;
        Self::monomial(alphabet, order, exps, ExactScalar::one())
    }

    /// Builds a series from `(exponents, coefficient)` pairs; terms above the
    /// order are dropped and repeated monomials are summed.
    pub fn from_terms(
        alphabet: Arc<Alphabet>,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, ExactScalar)>,
    ) -> Result<Self> {
        let mut s = Self::zero(alphabet, order);
        for (exps, c) in terms {
            let m = Monomial::new(&s.alphabet, exps)?;
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    /// Smallest weighted degree of a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.terms
            .get(&Monomial::one(&self.alphabet))
            .cloned()
            .unwrap_or_default()
    }

    /// Accumulates `c * m`, dropping it if `m` lies above the order.
    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() || m.degree > self.order {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The coefficient of `m`; fails if `m` lies above the truncation order.
    pub fn coeff(&self, m: &Monomial) -> Result<ExactScalar> {
        if m.exps.len() != self.alphabet.len() {
            return Err(Error::ArityMismatch {
                expected: self.alphabet.len(),
                found: m.exps.len(),
            });
        }
        if m.degree > self.order {
            return Err(Error::BeyondTruncation {
                degree: m.degree,
                order: self.order,
            });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_default())
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Result<ExactScalar> {
        let m = Monomial::new(&self.alphabet, exps.to_vec())?;
        self.coeff(&m)
    }

    /// Same series with a lower (or equal) truncation order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        GradedSeries {
            alphabet: self.alphabet.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficientwise multiplication by a scalar.
    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), self.order);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Applies `f` to every coefficient, keeping monomials.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Monomial, &ExactScalar) -> ExactScalar) -> Self {
        let mut out = Self::zero(self.alphabet.clone(), self.order);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f(m, v));
        }
        out
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if same_alphabet(&self.alphabet, &other.alphabet) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.alphabet.clone(), order);
        for (m1, c1) in &self.terms {
            if m1.degree > order {
                break;
            }
            for (m2, c2) in &other.terms {
                if m1.degree + m2.degree > order {
                    break;
                }
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.alphabet.clone(), self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(1 - u)^r = sum_j (-1)^j binom(r, j) u^j` for `u` without constant term.
    pub fn binomial_power(u: &Self, r: HalfInt) -> Result<Self> {
        if !u.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(u.alphabet.clone(), u.order);
        let Some(step) = u.min_degree() else {
            return Ok(out);
        };
        let mut power = out.clone();
        let mut j = 0u32;
        while (j + 1) * step <= u.order {
            j += 1;
            power = &power * u;
            let mut c = gen_binomial(r, j);
            if j % 2 == 1 {
                c = -c;
            }
            out = &out + &power.scale(&ExactScalar::from_rat(c));
        }
        Ok(out)
    }

    /// Ring-homomorphic evaluation `var_i -> images[i]`.
    ///
    /// All images must share one alphabet and have no term of degree below
    /// the weight of the variable they replace; the result is then exact up
    /// to the smallest order involved.
    pub fn substitute(&self, images: &[GradedSeries]) -> Result<Self> {
        if images.len() != self.alphabet.len() {
            return Err(Error::ImageCountMismatch {
                expected: self.alphabet.len(),
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Err(Error::ImageCountMismatch {
                expected: 0,
                found: 0,
            });
        };
        let target = first.alphabet.clone();
        let mut order = self.order;
        for (img, var) in images.iter().zip(self.alphabet.vars()) {
            if !same_alphabet(&img.alphabet, &target) {
                return Err(Error::AlphabetMismatch);
            }
            if img.min_degree().is_some_and(|d| d < var.weight) {
                return Err(Error::DegreeDroppingImage {
                    var: var.name.clone(),
                });
            }
            order = order.min(img.order);
        }

        // powers[i][e] = images[i]^e, built on demand
        let mut powers: Vec<Vec<GradedSeries>> = images
            .iter()
            .map(|img| vec![Self::one(target.clone(), order), img.truncate(order)])
            .collect();
        let mut out = Self::zero(target.clone(), order);
        for (m, c) in &self.terms {
            if m.degree > order {
                break;
            }
            let mut term = Self::constant(target.clone(), order, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Multiplies by the monomial `exps`; the order rises by its degree, so
    /// no information is lost.
    pub fn shift(&self, exps: &[u32]) -> Result<Self> {
        let s = Monomial::new(&self.alphabet, exps.to_vec())?;
        let mut out = Self::zero(self.alphabet.clone(), self.order + s.degree);
        for (m, c) in &self.terms {
            out.add_term(m.times(&s), c.clone());
        }
        Ok(out)
    }

    /// Applies `x_i^k d^k/dx_i^k`, which multiplies the coefficient of a
    /// monomial with `x_i`-exponent `e` by the falling factorial `e (e-1) ... (e-k+1)`.
    pub fn shifted_derivative(&self, var: usize, k: u32) -> Self {
        self.map_coefficients(|m, c| {
            let e = m.exps[var];
            if e < k {
                return ExactScalar::zero();
            }
            let f: Rat = (0..k).map(|i| int((e - i) as i64)).product();
            c.scale(&f)
        })
    }

    /// Whether all coefficients agree up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// The lowest monomial (up to the common order) whose coefficients
    /// differ, with both coefficients.
    pub fn first_disagreement(
        &self,
        other: &Self,
    ) -> Option<(Monomial, ExactScalar, ExactScalar)> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            let m = Monomial::one(&self.alphabet);
            return Some((m, self.constant_term(), other.constant_term()));
        }
        let order = self.order.min(other.order);
        let diff = self.truncate(order).checked_sub(&other.truncate(order)).ok()?;
        let (m, _) = diff.terms.iter().next()?;
        let a = self.terms.get(m).cloned().unwrap_or_default();
        let b = other.terms.get(m).cloned().unwrap_or_default();
        Some((m.clone(), a, b))
    }

    /// Renders a monomial as `xi^2*eta`, `1` for the empty monomial.
    pub fn monomial_name(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (e, v) in m.exps.iter().zip(self.alphabet.vars()) {
            match e {
                0 => {}
                1 => parts.push(v.name.clone()),
                _ => parts.push(alloc::format!("{}^{}", v.name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            write!(f, "({c})*{} + ", self.monomial_name(m))?;
        }
        write!(f, "O({})", self.order + 1)
    }
}

impl<'a> Add<&'a GradedSeries> for &GradedSeries {
    type Output = GradedSeries;

    /// # Panics
    /// If the alphabets differ; use [`GradedSeries::checked_add`] otherwise.
    fn add(self, rhs: &'a GradedSeries) -> GradedSeries {
        self.checked_add(rhs).expect("series alphabets must match")
    }
}

impl<'a> Sub<&'a GradedSeries> for &GradedSeries {
    type Output = GradedSeries;

    fn sub(self, rhs: &'a GradedSeries) -> GradedSeries {
        self.checked_sub(rhs).expect("series alphabets must match")
    }
}

impl<'a> Mul<&'a GradedSeries> for &GradedSeries {
    type Output = GradedSeries;

    fn mul(self, rhs: &'a GradedSeries) -> GradedSeries {
        self.checked_mul(rhs).expect("series alphabets must match")
    }
}

impl Neg for &GradedSeries {
    type Output = GradedSeries;

    fn neg(self) -> GradedSeries {
        self.scale(&ExactScalar::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, rat};

    fn xi_eta(order: u32) -> (GradedSeries, GradedSeries) {
        let a = Alphabet::xi_eta();
        (
            GradedSeries::var(a.clone(), order, "xi").unwrap(),
            GradedSeries::var(a, order, "eta").unwrap(),
        )
    }

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_rat(rat(n, d))
    }

    #[test]
    fn addition() {
        let (xi, eta) = xi_eta(6);
        let one = GradedSeries::one(Alphabet::xi_eta(), 6);
        assert_eq!(&(&one + &xi) + &xi, &one + &xi.scale(&q(2, 1)));
        let zero = GradedSeries::zero(Alphabet::xi_eta(), 6);
        assert_eq!(&xi + &zero, xi);
        assert!((&eta.scale(&q(1, 4)) + &eta.scale(&q(-1, 4))).is_zero());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let (xi, _) = xi_eta(4);
        let x = GradedSeries::var(Alphabet::xyz(), 4, "x").unwrap();
        assert_eq!(xi.checked_add(&x), Err(Error::AlphabetMismatch));
        assert_eq!(xi.checked_mul(&x), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn multiplication() {
        let (xi, eta) = xi_eta(10);
        assert_eq!(&xi * &xi, GradedSeries::monomial(Alphabet::xi_eta(), 10, vec![2, 0], ExactScalar::one()).unwrap());
        let one = GradedSeries::one(Alphabet::xi_eta(), 10);
        assert_eq!(&xi * &one, xi);
        // (1 - eta/4) * sum (eta/4)^j = 1
        let u = eta.scale(&q(1, 4));
        let geometric = GradedSeries::from_terms(
            Alphabet::xi_eta(),
            10,
            (0..=5).map(|j| (vec![0, j], ExactScalar::from_rat(rat(1, 4i64.pow(j))))),
        )
        .unwrap();
        assert_eq!(&(&one - &u) * &geometric, one);
    }

    #[test]
    fn product_truncates_at_smaller_order() {
        let a = GradedSeries::var(Alphabet::xi_eta(), 3, "xi").unwrap();
        let b = GradedSeries::var(Alphabet::xi_eta(), 7, "xi").unwrap();
        let p = &a.pow(2) * &b.pow(2);
        assert_eq!(p.order(), 3);
        assert!(p.is_zero());
    }

    #[test]
    fn maclaurin_half_integer_exponents() {
        let x = GradedSeries::var(Alphabet::univariate("x"), 12, "x").unwrap();
        let inv_sqrt = GradedSeries::binomial_power(&x, HalfInt::from_halves(-1)).unwrap();
        let inv_sqrt3 = GradedSeries::binomial_power(&x, HalfInt::from_halves(-3)).unwrap();
        for j in 0..=12u32 {
            let central = binomial(2 * j, j) / rat(4i64.pow(j), 1);
            assert_eq!(inv_sqrt.coeff_of(&[j]).unwrap(), ExactScalar::from_rat(central.clone()));
            let c3 = central * rat(2 * j as i64 + 1, 1);
            assert_eq!(inv_sqrt3.coeff_of(&[j]).unwrap(), ExactScalar::from_rat(c3));
        }
        for k in 0..5u32 {
            let inv = GradedSeries::binomial_power(&x, HalfInt::from_int(-(k as i64) - 1)).unwrap();
            for j in 0..=12u32 {
                assert_eq!(inv.coeff_of(&[j]).unwrap(), ExactScalar::from_rat(binomial(k + j, j)));
            }
        }
        let zero = GradedSeries::zero(Alphabet::univariate("x"), 12);
        let one = GradedSeries::one(Alphabet::univariate("x"), 12);
        assert_eq!(GradedSeries::binomial_power(&zero, HalfInt::from_halves(-5)).unwrap(), one);
        assert_eq!(
            GradedSeries::binomial_power(&one, HalfInt::from_int(2)),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn binomial_power_one_is_one_minus_u() {
        let (xi, eta) = xi_eta(8);
        let u = &xi + &eta.scale(&q(3, 2));
        let one = GradedSeries::one(Alphabet::xi_eta(), 8);
        assert_eq!(GradedSeries::binomial_power(&u, HalfInt::from_int(1)).unwrap(), &one - &u);
    }

    #[test]
    fn substitution_examples() {
        let n = 10;
        let xyz = Alphabet::xyz();
        let x = GradedSeries::var(xyz.clone(), n, "x").unwrap();
        let y = GradedSeries::var(xyz.clone(), n, "y").unwrap();
        let z = GradedSeries::var(xyz.clone(), n, "z").unwrap();
        let zq = z.scale(&q(1, 4));
        let s_half = GradedSeries::binomial_power(&zq, HalfInt::from_halves(-1)).unwrap();
        let s_one = GradedSeries::binomial_power(&zq, HalfInt::from_int(-1)).unwrap();

        let (xi, eta) = xi_eta(n);
        let images = [&x * &s_half, &y * &s_one];
        // xi^2 -> x^2 (1 - z/4)^-1
        assert_eq!((&xi * &xi).substitute(&images).unwrap(), &(&x * &x) * &s_one);
        // eta -> y + yz/4 + yz^2/16 + ...
        let got = eta.substitute(&images).unwrap();
        for l in 0..=4u32 {
            let c = got.coeff_of(&[0, 1, l]).unwrap();
            assert_eq!(c, q(1, 4i64.pow(l)));
        }
        // identity substitution
        let f = &(&xi * &eta) + &xi.scale(&q(2, 3));
        assert_eq!(f.substitute(&[xi.clone(), eta.clone()]).unwrap(), f);
    }

    #[test]
    fn degree_dropping_images_are_rejected() {
        let (xi, eta) = xi_eta(6);
        let err = eta.substitute(&[xi.clone(), xi.clone()]).unwrap_err();
        assert_eq!(err, Error::DegreeDroppingImage { var: "eta".into() });
        assert!(matches!(
            eta.substitute(&[xi]),
            Err(Error::ImageCountMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn coefficient_extraction() {
        let (_, eta) = xi_eta(6);
        let geo = GradedSeries::binomial_power(&eta.scale(&q(1, 4)), HalfInt::from_int(-1)).unwrap();
        assert_eq!(geo.coeff_of(&[0, 2]).unwrap(), q(1, 16));
        assert_eq!(geo.coeff_of(&[1, 3]), Err(Error::BeyondTruncation { degree: 7, order: 6 }));
        let one = GradedSeries::one(Alphabet::xi_eta(), 6);
        assert_eq!(one.coeff_of(&[0, 0]).unwrap(), ExactScalar::one());
    }

    #[test]
    fn shifted_derivative_is_falling_factorial() {
        let zy = Alphabet::zy();
        let f = GradedSeries::from_terms(
            zy,
            10,
            [(vec![3, 1], q(1, 1)), (vec![1, 2], q(5, 1)), (vec![2, 0], q(1, 2))],
        )
        .unwrap();
        let d = f.shifted_derivative(0, 2);
        assert_eq!(d.coeff_of(&[3, 1]).unwrap(), q(6, 1));
        assert_eq!(d.coeff_of(&[1, 2]).unwrap(), ExactScalar::zero());
        assert_eq!(d.coeff_of(&[2, 0]).unwrap(), q(1, 1));
    }
}
