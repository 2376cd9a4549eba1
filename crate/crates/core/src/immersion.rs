//! Relative curvature measures and the isometric-immersion transform.
//!
//! Relative measures `C_kpl` (and the alternative basis `Gamma_kpl`) are
//! encoded by `x^(k-2p-2l) y^p z^l` with weights `x: 1, y: 2, z: 2`. The
//! pullback of `C_kp` along an isometric immersion is the substitution
//!
//! ```text
//! xi^a eta^p -> (1 - z/4)^-1 (x (1 - z/4)^-1/2)^a (y (1 - z/4)^-1)^p
//! ```

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::riemannian::RElement;
use crate::scalar::{rat, ExactScalar, HalfInt};
use crate::series::{Alphabet, GradedSeries, Monomial};
use crate::sphere::SphereElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelBasis {
    C,
    Gamma,
}

impl RelBasis {
    pub fn name(self) -> &'static str {
        match self {
            RelBasis::C => "C",
            RelBasis::Gamma => "G",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelElement {
    series: GradedSeries,
    basis: RelBasis,
}

impl RelElement {
    pub fn from_series(series: GradedSeries, basis: RelBasis) -> Result<Self> {
        if **series.alphabet() != *Alphabet::xyz() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(RelElement { series, basis })
    }

    /// `C_kpl` or `Gamma_kpl`.
    pub fn basis_element(k: u32, p: u32, l: u32, basis: RelBasis, order: u32) -> Result<Self> {
        if 2 * p + 2 * l > k {
            return Err(Error::InvalidIndex { k, p });
        }
        if k > order {
            return Err(Error::BeyondTruncation { degree: k, order });
        }
        let series = GradedSeries::monomial(
            Alphabet::xyz(),
            order,
            vec![k - 2 * p - 2 * l, p, l],
            ExactScalar::one(),
        )?;
        Ok(RelElement { series, basis })
    }

    pub fn basis(&self) -> RelBasis {
        self.basis
    }

    pub fn series(&self) -> &GradedSeries {
        &self.series
    }

    pub fn order(&self) -> u32 {
        self.series.order()
    }

    /// Coefficient of the `(k, p, l)` basis element.
    pub fn coefficient(&self, k: u32, p: u32, l: u32) -> Result<ExactScalar> {
        if 2 * p + 2 * l > k {
            return Err(Error::InvalidIndex { k, p });
        }
        self.series.coeff_of(&[k - 2 * p - 2 * l, p, l])
    }

    /// Nonzero `(k, p, l, coefficient)` tuples ordered by `(k, p, l)`.
    pub fn terms(&self) -> Vec<(u32, u32, u32, ExactScalar)> {
        let mut out: Vec<_> = self
            .series
            .terms()
            .map(|(m, c)| {
                let e = m.exps();
                (e[0] + 2 * e[1] + 2 * e[2], e[1], e[2], c.clone())
            })
            .collect();
        out.sort_by_key(|&(k, p, l, _)| (k, p, l));
        out
    }

    fn expect_basis(&self, basis: RelBasis) -> Result<()> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(Error::WrongBasis {
                expected: basis.name(),
                found: self.basis.name(),
            })
        }
    }

    fn shift_z(&self, sign: i64) -> Result<GradedSeries> {
        let a = Alphabet::xyz();
        let n = self.order();
        let x = GradedSeries::var(a.clone(), n, "x")?;
        let y = GradedSeries::var(a.clone(), n, "y")?;
        let z = GradedSeries::var(a, n, "z")?;
        let z_image = &z + &y.scale(&ExactScalar::from_int(sign));
        self.series.substitute(&[x, y, z_image])
    }

    /// Rewrites a `C`-basis element in the `Gamma` basis via `z -> z - y`.
    pub fn c_to_gamma(&self) -> Result<Self> {
        self.expect_basis(RelBasis::C)?;
        Ok(RelElement {
            series: self.shift_z(-1)?,
            basis: RelBasis::Gamma,
        })
    }

    /// Inverse of [`RelElement::c_to_gamma`], `z -> z + y`.
    pub fn gamma_to_c(&self) -> Result<Self> {
        self.expect_basis(RelBasis::Gamma)?;
        Ok(RelElement {
            series: self.shift_z(1)?,
            basis: RelBasis::C,
        })
    }
}

/// `(1 - z/4)^r` over `{x, y, z}`.
fn one_minus_quarter_z(r: HalfInt, order: u32) -> GradedSeries {
    let quarter_z = GradedSeries::monomial(
        Alphabet::xyz(),
        order,
        vec![0, 0, 1],
        ExactScalar::from_rat(rat(1, 4)),
    )
    .expect("three variables");
    GradedSeries::binomial_power(&quarter_z, r).expect("no constant term")
}

/// Pullback of a curvature measure along an isometric immersion, in the
/// `C_kpl` basis.
pub fn immersion_pullback(e: &RElement) -> RelElement {
    let n = e.order();
    let a = Alphabet::xyz();
    let x = GradedSeries::var(a.clone(), n, "x").expect("x");
    let y = GradedSeries::var(a, n, "y").expect("y");
    let inv_sqrt = one_minus_quarter_z(HalfInt::from_halves(-1), n);
    let inv = one_minus_quarter_z(HalfInt::from_int(-1), n);
    let sigma = e
        .series()
        .substitute(&[&x * &inv_sqrt, &y * &inv])
        .expect("images have full degree");
    RelElement {
        series: &sigma * &inv,
        basis: RelBasis::C,
    }
}

/// Restriction along a totally geodesic immersion: drop every term with
/// `l > 0` and read `C_kp0` as `C_kp`.
pub fn totally_geodesic_specialize(e: &RelElement) -> Result<RElement> {
    e.expect_basis(RelBasis::C)?;
    let terms = e
        .series
        .terms()
        .filter(|(m, _)| m.exps()[2] == 0)
        .map(|(m, c)| (vec![m.exps()[0], m.exps()[1]], c.clone()));
    RElement::from_series(GradedSeries::from_terms(Alphabet::xi_eta(), e.order(), terms)?)
}

/// `xi^a eta^b -> x^a z^b`: how an intrinsic element of the submanifold
/// reads in the `Gamma` basis, since `Gamma_{k,0,p}` realizes to `C_kp`.
fn intrinsic_in_gamma(e: &RElement) -> GradedSeries {
    let terms = e
        .series()
        .terms()
        .map(|(m, c)| (vec![m.exps()[0], 0, m.exps()[1]], c.clone()));
    GradedSeries::from_terms(Alphabet::xyz(), e.order(), terms).expect("three variables")
}

/// Whether `e` pulls back to itself under every isometric immersion, i.e.
/// its pullback written in the `Gamma` basis involves no ambient curvature.
pub fn is_isometry_invariant(e: &RElement) -> bool {
    let gamma = immersion_pullback(e).c_to_gamma().expect("pullback is in C basis");
    gamma.series.agrees_with(&intrinsic_in_gamma(e))
}

/// Checks that the pullback of `lk_bar(k)`, written in the `Gamma` basis,
/// equals `x^k (1 - z/4)^(-k/2 - 1)` up to order `n`.
pub fn lk_invariance_check(k: u32, n: u32) -> bool {
    let lk = RElement::lk_bar(k, n);
    let gamma = immersion_pullback(&lk).c_to_gamma().expect("pullback is in C basis");
    let x_k = GradedSeries::monomial(Alphabet::xyz(), n, vec![k, 0, 0], ExactScalar::one())
        .expect("three variables");
    let target = &x_k * &one_minus_quarter_z(HalfInt::from_halves(-(k as i64) - 2), n);
    gamma.series.agrees_with(&target)
}

/// Evaluates a relative element for a sphere of curvature `mu` inside a
/// sphere of curvature `lambda`: `C_kpl -> lambda^p (mu - lambda)^l tau_k`,
/// with `tau_k` the basis of the curvature-`mu` sphere.
pub fn sphere_in_sphere_specialize(
    e: &RelElement,
    lambda: &ExactScalar,
    mu: &ExactScalar,
) -> Result<SphereElement> {
    e.expect_basis(RelBasis::C)?;
    let gap = mu - lambda;
    let mut out = SphereElement::zero(e.order());
    for (m, c) in e.series.terms() {
        let [a, p, l] = [m.exps()[0], m.exps()[1], m.exps()[2]];
        let k = Monomial::degree(m);
        debug_assert_eq!(k, a + 2 * p + 2 * l);
        let value = &(c * &lambda.pow(p)) * &gap.pow(l);
        out.add_term(k, value);
    }
    Ok(out)
}
