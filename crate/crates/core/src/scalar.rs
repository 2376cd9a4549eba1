//! Exact coefficients.
//!
//! Every number that shows up in the curvature-measure calculus is a rational
//! multiple of `pi^a * lambda^(b/2)` with `a, b` integers, or a finite sum of
//! such terms. [`ExactScalar`] stores exactly that, keyed by `(a, b)` where `b`
//! is the *doubled* exponent of `lambda`, so half-integer powers need no
//! fractional keys.

use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rat::from_integer(acc)
}

/// `n!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<Rat> {
    if n < -1 {
        return Err(Error::NegativeDoubleFactorial(n));
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(Rat::from_integer(acc))
}

/// Ordinary binomial coefficient; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rat::from_integer(acc)
}

/// An element of `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// `h / 2`.
    pub const fn from_halves(h: i64) -> Self {
        HalfInt(h)
    }

    pub const fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_rat(self) -> Rat {
        rat(self.0, 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Generalized binomial coefficient `r (r-1) ... (r-j+1) / j!`.
pub fn gen_binomial(r: HalfInt, j: u32) -> Rat {
    let r = r.to_rat();
    let mut acc = Rat::one();
    for i in 0..j {
        acc *= &r - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

/// Volume of the unit ball in `R^k`.
pub fn omega(k: u32) -> ExactScalar {
    let m = k / 2;
    if k.is_multiple_of(2) {
        ExactScalar::monomial(factorial(m).recip(), m as i32, 0)
    } else {
        let num = Rat::from_integer(BigInt::one() << (m + 1));
        let den = double_factorial(k as i64).expect("k >= 0");
        ExactScalar::monomial(num / den, m as i32, 0)
    }
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn sqrt_rat(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Finite sum `sum c * pi^a * lambda^(b/2)` with rational `c`.
///
/// Keys are `(a, b)`; no zero coefficients are stored, so structural
/// equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    terms: BTreeMap<(i32, i32), Rat>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }

    /// `c * pi^pi_exp * lambda^(lambda_half_exp / 2)`.
    pub fn monomial(c: Rat, pi_exp: i32, lambda_half_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((pi_exp, lambda_half_exp), c);
        }
        ExactScalar { terms }
    }

    pub fn pi() -> Self {
        Self::pi_pow(1)
    }

    pub fn pi_pow(e: i32) -> Self {
        Self::monomial(Rat::one(), e, 0)
    }

    /// The curvature symbol `lambda`.
    pub fn lambda() -> Self {
        Self::lambda_pow_half(2)
    }

    /// `lambda^(h/2)`.
    pub fn lambda_pow_half(h: i32) -> Self {
        Self::monomial(Rat::one(), 0, h)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(One::is_one)
    }

    /// Terms in ascending `(pi_exp, lambda_half_exp)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &Rat)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a plain rational, if no `pi` or `lambda` factor remains.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Whether the scalar involves the symbol `lambda`.
    pub fn has_lambda(&self) -> bool {
        self.terms.keys().any(|&(_, b)| b != 0)
    }

    fn add_term(&mut self, key: (i32, i32), c: Rat) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; only single-term scalars are invertible.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -a, -b))
    }

    /// Integer power, negative exponents requiring [`ExactScalar::inv`].
    pub fn powi(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            Some(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Square root of a single-term scalar with even `pi` exponent and a
    /// square rational coefficient.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        if a % 2 != 0 || b % 2 != 0 {
            return None;
        }
        Some(Self::monomial(sqrt_rat(c)?, a / 2, b / 2))
    }

    /// Evaluates the symbol `lambda` at a rational value.
    ///
    /// Fails when a half-integer power needs an irrational root, or a
    /// negative power meets `lambda = 0`.
    pub fn substitute_lambda(&self, value: &Rat) -> Result<Self> {
        let root = sqrt_rat(value);
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let base = if b % 2 == 0 {
                value.clone()
            } else {
                root.clone().ok_or(Error::IrrationalRoot)?
            };
            let e = if b % 2 == 0 { b / 2 } else { b };
            if base.is_zero() && e < 0 {
                return Err(Error::SingularCurvature);
            }
            let factor = if e >= 0 {
                num_traits::pow(base, e as usize)
            } else {
                num_traits::pow(base.recip(), e.unsigned_abs() as usize)
            };
            out.add_term((a, 0), c * factor);
        }
        Ok(out)
    }
}

impl From<Rat> for ExactScalar {
    fn from(c: Rat) -> Self {
        Self::from_rat(c)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &'a ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: ExactScalar) -> ExactScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &'a ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(mut self, rhs: ExactScalar) -> ExactScalar {
        self -= &rhs;
        self
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v);
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl<'a> Mul<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, a: i32, b: i32, c: &Rat) -> fmt::Result {
    write!(f, "{c}")?;
    match a {
        0 => {}
        1 => f.write_str(" * pi")?,
        _ => write!(f, " * pi^{a}")?,
    }
    if b != 0 {
        if b % 2 != 0 {
            write!(f, " * lambda^({b}/2)")?;
        } else if b == 2 {
            f.write_str(" * lambda")?;
        } else {
            write!(f, " * lambda^{}", b / 2)?;
        }
    }
    Ok(())
}

/// Canonical rendering, e.g. `3/8 * pi^-1 * lambda^(1/2)`; terms joined by
/// ` + ` in ascending `(pi_exp, lambda_half_exp)` order.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            fmt_term(f, a, b, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_exponent(s: &str) -> Result<i32> {
    s.parse::<i32>()
        .map_err(|_| Error::Parse(format!("bad exponent `{s}`")))
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Inverse of the canonical [`Display`](fmt::Display) rendering.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = ExactScalar::zero();
        if s == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let mut factors = term.split('*').map(str::trim);
            let coeff_str = factors.next().unwrap_or_default();
            let c = Rat::from_str(coeff_str)
                .map_err(|_| Error::Parse(format!("bad rational `{coeff_str}`")))?;
            let (mut a, mut b) = (0, 0);
            for factor in factors {
                if factor == "pi" {
                    a += 1;
                } else if let Some(e) = factor.strip_prefix("pi^") {
                    a += parse_exponent(e)?;
                } else if factor == "lambda" {
                    b += 2;
                } else if let Some(e) = factor.strip_prefix("lambda^") {
                    if let Some(frac) = e.strip_prefix('(').and_then(|e| e.strip_suffix("/2)")) {
                        b += parse_exponent(frac)?;
                    } else {
                        b += 2 * parse_exponent(e)?;
                    }
                } else {
                    return Err(Error::Parse(format!("unknown factor `{factor}`")));
                }
            }
            out.add_term((a, b), c);
        }
        Ok(out)
    }
}
