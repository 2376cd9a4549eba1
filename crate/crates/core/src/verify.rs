//! Named verification suites.
//!
//! Each suite recomputes a family of identities at a given truncation order
//! and reports every check separately, with the first differing coefficient
//! when a check fails. Suites are independent pure computations, so callers
//! may run them concurrently.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hermitian::{
    self, c_from_tilde, c_from_tilde_via_transforms, genfun_g, genfun_h, lk_in_tilde_delta,
    o_transform, p_transform, t_lambda_act_closed, t_lambda_act_via_c, tilde_from_c,
    HermitianBasis, HermitianElement,
};
use crate::immersion::{
    immersion_pullback, is_isometry_invariant, lk_invariance_check, sphere_in_sphere_specialize,
    totally_geodesic_specialize, RelBasis, RelElement,
};
use crate::riemannian::{lk_coefficient, RElement};
use crate::scalar::{factorial, int, omega, rat, ExactScalar, HalfInt, Rat};
use crate::series::{Alphabet, GradedSeries};
use crate::sphere::{
    phi_expansion_to_tau, sphere_intrinsic_volumes, t_act_tau, t_power_eval_crosscheck,
    t_power_in_phi, t_power_in_phi_closed, t_power_in_tau, tau_eval, SphereElement,
};

/// Suite names accepted by [`run_suite`], in canonical order.
pub const SUITES: &[&str] = &[
    "lk-recursion",
    "lemma-t-phi-tau",
    "t-on-tau",
    "isometric-immersion",
    "lk-invariance",
    "sphere-templates",
    "hermitian-basis-change",
    "lk-two-routes",
    "o-p-transforms",
    "t-action-hermitian",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    /// First differing coefficient, or the error, when the check failed.
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(label: impl Into<String>) -> Self {
        CheckResult {
            label: label.into(),
            passed: true,
            detail: None,
        }
    }

    fn fail(label: impl Into<String>, detail: String) -> Self {
        CheckResult {
            label: label.into(),
            passed: false,
            detail: Some(detail),
        }
    }

    fn from_detail(label: impl Into<String>, detail: Option<String>) -> Self {
        match detail {
            None => Self::pass(label),
            Some(d) => Self::fail(label, d),
        }
    }

    fn from_result(label: impl Into<String>, r: Result<Option<String>>) -> Self {
        match r {
            Ok(d) => Self::from_detail(label, d),
            Err(e) => Self::fail(label, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub order: u32,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs the suite `name` at truncation order `order`.
pub fn run_suite(name: &str, order: u32) -> Result<SuiteReport> {
    let checks = match name {
        "lk-recursion" => lk_recursion(order),
        "lemma-t-phi-tau" => lemma_t_phi_tau(order),
        "t-on-tau" => t_on_tau(order),
        "isometric-immersion" => isometric_immersion(order),
        "lk-invariance" => lk_invariance(order),
        "sphere-templates" => sphere_templates(order),
        "hermitian-basis-change" => hermitian_basis_change(order),
        "lk-two-routes" => lk_two_routes(order),
        "o-p-transforms" => o_p_transforms(order),
        "t-action-hermitian" => t_action_hermitian(order),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport {
        name: name.to_string(),
        order,
        checks,
    })
}

fn diff_r(a: &RElement, b: &RElement) -> Option<String> {
    let (m, x, y) = a.series().first_disagreement(b.series())?;
    let (e, p) = (m.exps()[0], m.exps()[1]);
    Some(format!("C[{},{}]: {x} != {y}", e + 2 * p, p))
}

fn diff_sphere(a: &SphereElement, b: &SphereElement) -> Option<String> {
    let n = a.order().min(b.order());
    (0..=n).find_map(|k| {
        let (x, y) = (a.coefficient(k), b.coefficient(k));
        (x != y).then(|| format!("tau[{k}]: {x} != {y}"))
    })
}

fn diff_series(a: &GradedSeries, b: &GradedSeries) -> Option<String> {
    let (m, x, y) = a.first_disagreement(b)?;
    Some(format!("[{}]: {x} != {y}", a.monomial_name(&m)))
}

fn diff_hermitian(a: &HermitianElement, b: &HermitianElement) -> Option<String> {
    if a.basis() != b.basis() {
        return Some(format!("bases {} and {}", a.basis().name(), b.basis().name()));
    }
    let (k, q, x, y) = a.first_disagreement(b)?;
    Some(format!("{}[{k},{q}]: {x} != {y}", a.basis().name()))
}

fn diff_scalar(a: &ExactScalar, b: &ExactScalar) -> Option<String> {
    (a != b).then(|| format!("{a} != {b}"))
}

fn labels(k: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=k / 2).map(move |p| (k, p))
}

fn lk_recursion(n: u32) -> Vec<CheckResult> {
    (0..n)
        .map(|k| {
            let lhs = RElement::lk_bar(k, n).t_act();
            let rhs = RElement::lk_bar(k + 1, n);
            CheckResult::from_detail(format!("t * lk_bar({k}) = lk_bar({})", k + 1), diff_r(&lhs, &rhs))
        })
        .collect()
}

fn lemma_t_phi_tau(n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        let via_phi = phi_expansion_to_tau(&t_power_in_phi(k, n));
        out.push(CheckResult::from_result(
            format!("t^{k} via phi basis = tau expansion"),
            via_phi.map(|s| diff_sphere(&s, &t_power_in_tau(k, n))),
        ));
        out.push(CheckResult::from_detail(
            format!("t^{k} in phi: Maclaurin = closed form"),
            diff_series(&t_power_in_phi(k, n), &t_power_in_phi_closed(k, n)),
        ));
    }
    out
}

fn t_on_tau(n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..n {
        let lhs = t_act_tau(&t_power_in_tau(k, n));
        out.push(CheckResult::from_detail(
            format!("t * t^{k} = t^{} on tau", k + 1),
            diff_sphere(&lhs, &t_power_in_tau(k + 1, n)),
        ));
    }
    for k in 0..=n {
        for (k, p) in labels(k) {
            let c = RElement::basis_element(k, p, n).expect("label in range");
            let lhs = crate::sphere::globalize_on_sphere(&c.t_act());
            let rhs = t_act_tau(&crate::sphere::globalize_on_sphere(&c));
            out.push(CheckResult::from_detail(
                format!("glob(t * C[{k},{p}]) = t * glob(C[{k},{p}])"),
                diff_sphere(&lhs, &rhs),
            ));
        }
    }
    out
}

/// Coefficient table of the pullback: every `C_kp` maps to
/// `sum_j binom(k/2 + j, j) 4^-j C_{k+2j,p,j}`.
fn pullback_table_detail(k: u32, p: u32, jmax: u32) -> Result<Option<String>> {
    let n = k + 2 * jmax;
    let rel = immersion_pullback(&RElement::basis_element(k, p, n)?);
    let terms = rel.terms();
    if terms.len() != jmax as usize + 1 {
        return Ok(Some(format!("expected {} terms, found {}", jmax + 1, terms.len())));
    }
    for j in 0..=jmax {
        let got = rel.coefficient(k + 2 * j, p, j)?;
        let want = ExactScalar::from_rat(lk_coefficient(k, j));
        if got != want {
            return Ok(Some(format!("C[{},{p},{j}]: {got} != {want}", k + 2 * j)));
        }
    }
    Ok(None)
}

fn isometric_immersion(n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        for (k, p) in labels(k) {
            let c = RElement::basis_element(k, p, n).expect("label in range");
            out.push(CheckResult::from_result(
                format!("totally geodesic pullback of C[{k},{p}]"),
                totally_geodesic_specialize(&immersion_pullback(&c)).map(|r| diff_r(&r, &c)),
            ));
        }
    }
    for k in 0..=n.min(8) {
        for (k, p) in labels(k) {
            out.push(CheckResult::from_result(
                format!("pullback table of C[{k},{p}], j <= 5"),
                pullback_table_detail(k, p, 5),
            ));
        }
    }
    for k in 0..=n {
        for p in 0..=k / 2 {
            for l in 0..=(k - 2 * p) / 2 {
                let label = format!("C[{k},{p},{l}] -> Gamma -> C");
                let r = RelElement::basis_element(k, p, l, RelBasis::C, n).and_then(|e| {
                    let back = e.c_to_gamma()?.gamma_to_c()?;
                    Ok(diff_series(back.series(), e.series()))
                });
                out.push(CheckResult::from_result(label, r));
            }
        }
    }
    let lambda = ExactScalar::lambda();
    for k in 0..=n {
        let rel = immersion_pullback(&RElement::basis_element(k, 0, n).expect("k <= n"));
        let r = sphere_in_sphere_specialize(&rel, &ExactScalar::zero(), &lambda)
            .map(|s| diff_sphere(&s, &t_power_in_tau(k, n)));
        out.push(CheckResult::from_result(
            format!("C[{k},0] on a sphere in euclidean space = t^{k}"),
            r,
        ));
        for (k, p) in labels(k) {
            let c = RElement::basis_element(k, p, n).expect("label in range");
            let r = sphere_in_sphere_specialize(&immersion_pullback(&c), &lambda, &lambda)
                .map(|s| diff_sphere(&s, &SphereElement::tau(k, n).scale(&lambda.pow(p))));
            out.push(CheckResult::from_result(
                format!("C[{k},{p}] on an equal-curvature sphere = lambda^{p} tau[{k}]"),
                r,
            ));
        }
    }
    out
}

fn lk_invariance(n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        let label = format!("lk_bar({k}) pulls back to itself");
        out.push(if lk_invariance_check(k, n) {
            CheckResult::pass(label)
        } else {
            CheckResult::fail(label, "pullback involves ambient curvature".to_string())
        });
    }
    for k in 0..=n.saturating_sub(2) {
        let bump = RElement::basis_element(k + 2, 1, n).expect("k + 2 <= n");
        let perturbed = &RElement::lk_bar(k, n) + &bump;
        let label = format!("lk_bar({k}) + C[{},1] is not invariant", k + 2);
        out.push(if is_isometry_invariant(&perturbed) {
            CheckResult::fail(label, "perturbation went undetected".to_string())
        } else {
            CheckResult::pass(label)
        });
    }
    out
}

fn sphere_templates(_n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let one = rat(1, 1);
    for (k, j, want) in [(1u32, 3u32, 6i64), (2, 2, 8), (0, 0, 2)] {
        let label = format!("t^{k}(S^{j}, lambda = 1) = {want}");
        let r = t_power_eval_crosscheck(k, j, &one).map(|cc| {
            let want = ExactScalar::from_int(want);
            if !cc.agree {
                Some(format!("routes disagree: {} != {}", cc.via_tau, cc.via_tube))
            } else {
                diff_scalar(&cc.via_tau, &want)
            }
        });
        out.push(CheckResult::from_result(label, r));
    }
    for lambda in [rat(1, 1), rat(4, 1)] {
        for j in 0..=8u32 {
            for k in (0..=j).filter(|k| (j - k) % 2 == 0) {
                let label = format!("t^{k}(S^{j}, lambda = {lambda}): tau route = tube route");
                let r = t_power_eval_crosscheck(k, j, &lambda).map(|cc| {
                    (!cc.agree).then(|| format!("{} != {}", cc.via_tau, cc.via_tube))
                });
                out.push(CheckResult::from_result(label, r));
            }
        }
    }
    // On S^k every tau_{k+2j}, j > 0, vanishes, so tau_k(S^k) = t^k(S^k).
    let curvatures = [
        ("lambda".to_string(), ExactScalar::lambda(), ExactScalar::lambda_pow_half(-1)),
        ("1".to_string(), ExactScalar::one(), ExactScalar::one()),
        ("4".to_string(), ExactScalar::from_int(4), ExactScalar::from_rat(rat(1, 2))),
    ];
    for (name, lambda, radius) in &curvatures {
        for k in 0..=6u32 {
            for j in 0..=6u32 {
                let want = if k == j {
                    let mu = sphere_intrinsic_volumes(j, radius).get(k);
                    &(&omega(k).scale(&factorial(k)) * &ExactScalar::pi_pow(-(k as i32))) * &mu
                } else {
                    ExactScalar::zero()
                };
                let label = format!("tau[{k}](S^{j}, lambda = {name})");
                let r = tau_eval(k, j, lambda).map(|got| diff_scalar(&got, &want));
                out.push(CheckResult::from_result(label, r));
            }
        }
    }
    for dim in 0..=8u32 {
        let mu = sphere_intrinsic_volumes(dim, &ExactScalar::one());
        let euler = ExactScalar::from_int(if dim % 2 == 0 { 2 } else { 0 });
        out.push(CheckResult::from_detail(
            format!("mu_0(S^{dim}) = 1 + (-1)^{dim}"),
            diff_scalar(&mu.get(0), &euler),
        ));
        let area = omega(dim + 1).scale(&int(dim as i64 + 1));
        out.push(CheckResult::from_detail(
            format!("mu_{dim}(S^{dim}) = {} omega_{}", dim + 1, dim + 1),
            diff_scalar(&mu.get(dim), &area),
        ));
    }
    out
}

fn matrix_product_is_identity(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Option<String> {
    let cols = b.first().map_or(0, Vec::len);
    for (i, row) in a.iter().enumerate() {
        for j in 0..cols {
            let mut s = ExactScalar::zero();
            for (x, b_row) in row.iter().zip(b) {
                s += x * &b_row[j];
            }
            let want = if i == j { ExactScalar::one() } else { ExactScalar::zero() };
            if s != want {
                return Some(format!("entry ({i},{j}): {s} != {want}"));
            }
        }
    }
    None
}

fn hermitian_basis_change(n: u32) -> Vec<CheckResult> {
    let lambda = ExactScalar::lambda();
    let mut out = Vec::new();
    for k in 0..=n {
        for (k, p) in labels(k) {
            let td = HermitianElement::basis_element(k, p, HermitianBasis::TildeDelta, n)
                .expect("label in range");
            let r = c_from_tilde(&td, &lambda)
                .and_then(|c| tilde_from_c(&c, &lambda))
                .map(|back| diff_hermitian(&back, &td));
            out.push(CheckResult::from_result(format!("TD[{k},{p}] -> C -> TD"), r));

            let c = RElement::basis_element(k, p, n).expect("label in range");
            let r = tilde_from_c(&c, &lambda)
                .and_then(|t| c_from_tilde(&t, &lambda))
                .map(|back| diff_r(&back, &c));
            out.push(CheckResult::from_result(format!("C[{k},{p}] -> TD -> C"), r));

            let r = c_from_tilde(&td, &lambda).and_then(|direct| {
                let via = c_from_tilde_via_transforms(&td, &lambda)?;
                Ok(diff_r(&via, &direct))
            });
            out.push(CheckResult::from_result(
                format!("TD[{k},{p}] in C: common form = O/P route"),
                r,
            ));

            let d = HermitianElement::basis_element(k, p, HermitianBasis::Delta, n)
                .expect("label in range");
            let r = d
                .delta_to_tilde()
                .and_then(|t| t.tilde_to_delta())
                .map(|back| diff_hermitian(&back, &d));
            out.push(CheckResult::from_result(format!("D[{k},{p}] -> TD -> D"), r));
        }
        let r = hermitian::tilde_to_c_matrix(k, &lambda).and_then(|fwd| {
            let inv = hermitian::c_to_tilde_matrix(k, &lambda)?;
            if !hermitian::is_unitriangular_shape(&fwd) {
                return Ok(Some("TD -> C matrix is not triangular".to_string()));
            }
            if !hermitian::is_unitriangular_shape(&inv) {
                return Ok(Some("C -> TD matrix is not triangular".to_string()));
            }
            Ok(matrix_product_is_identity(&fwd, &inv))
        });
        out.push(CheckResult::from_result(
            format!("degree {k} conversion matrices triangular and mutually inverse"),
            r,
        ));
    }
    out
}

fn lk_two_routes(n: u32) -> Vec<CheckResult> {
    let lambda = ExactScalar::lambda();
    (0..=n.min(8))
        .map(|k| {
            let genfun = lk_in_tilde_delta(k, &lambda, n);
            let r = tilde_from_c(&RElement::lk_bar(k, n), &lambda)
                .map(|direct| diff_hermitian(&genfun, &direct));
            CheckResult::from_result(format!("lk_bar({k}) in TD: generating function = C route"), r)
        })
        .collect()
}

/// `c xibar^k (1 - pi (xibar + etabar))^r`.
fn bar_closed_form(k: u32, c: ExactScalar, r: HalfInt, n: u32) -> GradedSeries {
    let a = Alphabet::bar();
    let u = GradedSeries::from_terms(
        a.clone(),
        n,
        [(vec![1, 0], ExactScalar::pi()), (vec![0, 1], ExactScalar::pi())],
    )
    .expect("two variables");
    let lead = GradedSeries::monomial(a, n, vec![k, 0], c).expect("two variables");
    &lead * &GradedSeries::binomial_power(&u, r).expect("no constant term")
}

/// Sparse series over `{z, y}` with small random rational (times `pi^a`) coefficients.
pub fn random_sparse_zy(rng: &mut impl Rng, order: u32) -> GradedSeries {
    let top = order / 2;
    let terms: Vec<_> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let d = rng.gen_range(0..=top);
            let m = rng.gen_range(0..=d);
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=9);
            let c = ExactScalar::monomial(Rat::new(num.into(), den.into()), rng.gen_range(-1..=1), 0);
            (vec![m, d - m], c)
        })
        .collect();
    GradedSeries::from_terms(Alphabet::zy(), order, terms).expect("two variables")
}

fn o_p_transforms(n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n / 2 {
        let want = bar_closed_form(
            k,
            ExactScalar::pi_pow(k as i32),
            HalfInt::from_int(-(k as i64) - 1),
            n,
        );
        out.push(CheckResult::from_result(
            format!("O(g_{k}) = pi^{k} xibar^{k} (1 - pi(xibar + etabar))^-{}", k + 1),
            o_transform(&genfun_g(k, n)).map(|got| diff_series(&got, &want)),
        ));
        let c = ExactScalar::monomial(Rat::new(1.into(), 4i64.pow(k).into()), k as i32, 0);
        let want = bar_closed_form(k, c, HalfInt::from_halves(-2 * k as i64 - 3), n);
        out.push(CheckResult::from_result(
            format!("P(h_{k}) = (pi/4)^{k} xibar^{k} (1 - pi(xibar + etabar))^-{}/2", 2 * k + 3),
            p_transform(&genfun_h(k, n)).map(|got| diff_series(&got, &want)),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0b0f);
    for i in 0..20 {
        let f = random_sparse_zy(&mut rng, n);
        for k in 1..=3 {
            for (name, transform) in [
                ("O", o_transform as fn(&GradedSeries) -> Result<GradedSeries>),
                ("P", p_transform),
            ] {
                let r = transform(&f.shifted_derivative(0, k)).and_then(|lhs| {
                    let rhs = transform(&f)?.shifted_derivative(0, k);
                    Ok(diff_series(&lhs, &rhs))
                });
                out.push(CheckResult::from_result(
                    format!("{name} intertwines z^{k} d^{k}/dz^{k} (random series {i})"),
                    r,
                ));
            }
        }
    }
    out
}

fn t_action_hermitian(n: u32) -> Vec<CheckResult> {
    let lambda = ExactScalar::lambda();
    let mut out = Vec::new();
    for k in 0..=n.saturating_sub(1).min(6) {
        let order = (k + 7).min(n);
        for (k, p) in labels(k) {
            let td = HermitianElement::basis_element(k, p, HermitianBasis::TildeDelta, order)
                .expect("label in range");
            let r = t_lambda_act_closed(&td, &lambda).and_then(|closed| {
                let route = t_lambda_act_via_c(&td, &lambda)?;
                Ok(diff_hermitian(&closed, &route))
            });
            out.push(CheckResult::from_result(
                format!("t * TD[{k},{p}] to degree {order}: closed form = C route"),
                r,
            ));
        }
    }
    for k in 0..n.min(5) {
        let r = tilde_from_c(&RElement::lk_bar(k, n), &lambda).and_then(|lk| {
            let next = tilde_from_c(&RElement::lk_bar(k + 1, n), &lambda)?;
            Ok(diff_hermitian(&t_lambda_act_closed(&lk, &lambda)?, &next))
        });
        out.push(CheckResult::from_result(
            format!("t * lk_bar({k}) = lk_bar({}) in TD", k + 1),
            r,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_order() {
        for name in SUITES {
            let report = run_suite(name, 6).unwrap();
            assert!(!report.checks.is_empty(), "{name} ran no checks");
            let bad: Vec<_> = report.failures().collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(run_suite("nope", 4), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn failures_carry_the_first_coefficient() {
        let a = RElement::lk_bar(1, 6);
        let b = &a + &RElement::basis_element(5, 2, 6).unwrap();
        let d = diff_r(&a, &b).unwrap();
        assert!(d.starts_with("C[5,2]"), "{d}");
        assert_eq!(diff_r(&a, &a), None);
    }

    #[test]
    fn random_series_are_reproducible() {
        let f = random_sparse_zy(&mut ChaCha8Rng::seed_from_u64(7), 10);
        let g = random_sparse_zy(&mut ChaCha8Rng::seed_from_u64(7), 10);
        assert_eq!(f, g);
    }
}
