use proptest::prelude::*;

use riemcurv::hermitian::{
    c_from_tilde, o_transform, p_transform, t_lambda_act_closed, t_lambda_act_via_c, tilde_from_c,
};
use riemcurv::immersion::{immersion_pullback, totally_geodesic_specialize};
use riemcurv::scalar::rat;
use riemcurv::sphere::{globalize_on_sphere, poly_in_t_to_tau, t_act_tau};
use riemcurv::{
    Alphabet, ExactScalar, GradedSeries, HalfInt, HermitianBasis, HermitianElement, RElement,
    RelBasis, RelElement,
};

fn small_rat() -> impl Strategy<Value = riemcurv::Rat> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((small_rat(), -2i32..=2, -3i32..=3), 0..=3).prop_map(|terms| {
        terms
            .into_iter()
            .fold(ExactScalar::zero(), |acc, (c, a, b)| &acc + &ExactScalar::monomial(c, a, b))
    })
}

/// Rational coefficient times an optional `pi` power; keeps products small.
fn coefficient() -> impl Strategy<Value = ExactScalar> {
    (small_rat(), -1i32..=1).prop_map(|(c, a)| ExactScalar::monomial(c, a, 0))
}

fn series_over(
    alphabet: std::sync::Arc<Alphabet>,
    order: u32,
    max_exp: u32,
) -> impl Strategy<Value = GradedSeries> {
    let arity = alphabet.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, arity), coefficient()), 0..=5)
        .prop_map(move |terms| {
            GradedSeries::from_terms(alphabet.clone(), order, terms).expect("arity matches")
        })
}

fn xi_eta_series(order: u32) -> impl Strategy<Value = GradedSeries> {
    series_over(Alphabet::xi_eta(), order, 4)
}

fn r_element(order: u32) -> impl Strategy<Value = RElement> {
    xi_eta_series(order).prop_map(|s| RElement::from_series(s).expect("xi, eta"))
}

/// Series with every term of degree at least `min`.
fn image_series(order: u32, min: u32) -> impl Strategy<Value = GradedSeries> {
    xi_eta_series(order).prop_map(move |s| {
        let terms: Vec<_> = s
            .terms()
            .filter(|(m, _)| m.degree() >= min)
            .map(|(m, c)| (m.exps().to_vec(), c.clone()))
            .collect();
        GradedSeries::from_terms(Alphabet::xi_eta(), order, terms).expect("xi, eta")
    })
}

fn tilde_element(order: u32) -> impl Strategy<Value = HermitianElement> {
    prop::collection::vec((0..=order, 0u32..=4, coefficient()), 0..=4).prop_map(move |terms| {
        let mut e = HermitianElement::zero(HermitianBasis::TildeDelta, order);
        for (k, q, c) in terms {
            if 2 * q <= k {
                e.add_term(k, q, c);
            }
        }
        e
    })
}

fn nonzero_lambda() -> impl Strategy<Value = ExactScalar> {
    prop_oneof![
        Just(ExactScalar::lambda()),
        small_rat()
            .prop_filter("nonzero", |q| *q != rat(0, 1))
            .prop_map(ExactScalar::from_rat),
    ]
}

/// `t C_kp = sum_j binom(2j, j) 16^-j C_{k+2j+1, p+j}`, applied termwise.
fn t_act_explicit(e: &RElement) -> RElement {
    let n = e.order();
    let mut coeffs = Vec::new();
    for (k, p, c) in e.terms() {
        let mut j = 0;
        while k + 2 * j < n {
            let w = riemcurv::scalar::binomial(2 * j, j) * rat(1, 16i64.pow(j));
            coeffs.push((k + 2 * j + 1, p + j, c.scale(&w)));
            j += 1;
        }
    }
    RElement::from_coefficients(n, coeffs).unwrap()
}

fn one_minus_quarter_z(order: u32) -> GradedSeries {
    GradedSeries::from_terms(
        Alphabet::xyz(),
        order,
        [
            (vec![0, 0, 0], ExactScalar::one()),
            (vec![0, 0, 1], ExactScalar::from_rat(rat(-1, 4))),
        ],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_form_a_commutative_ring(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let text = a.to_string();
        let back: ExactScalar = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn series_product_is_commutative_and_associative(
        f in xi_eta_series(8), g in xi_eta_series(8), h in xi_eta_series(8)
    ) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        f in xi_eta_series(8), g in xi_eta_series(8),
        u in image_series(8, 1), v in image_series(8, 2)
    ) {
        let images = [u, v];
        let lhs = (&f * &g).substitute(&images).unwrap();
        let rhs = &f.substitute(&images).unwrap() * &g.substitute(&images).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let sum = (&f + &g).substitute(&images).unwrap();
        prop_assert_eq!(sum, &f.substitute(&images).unwrap() + &g.substitute(&images).unwrap());
    }

    #[test]
    fn binomial_powers_add_exponents(u in image_series(9, 1), r in -7i64..=7, s in -7i64..=7) {
        let a = GradedSeries::binomial_power(&u, HalfInt::from_halves(r)).unwrap();
        let b = GradedSeries::binomial_power(&u, HalfInt::from_halves(s)).unwrap();
        let ab = GradedSeries::binomial_power(&u, HalfInt::from_halves(r + s)).unwrap();
        prop_assert_eq!(&a * &b, ab);
    }

    #[test]
    fn t_power_is_iterated_t(e in r_element(9), i in 0u32..=4) {
        let mut iterated = e.clone();
        for _ in 0..i {
            iterated = iterated.t_act();
        }
        prop_assert_eq!(e.t_power_act(i), iterated);
    }

    #[test]
    fn t_action_matches_termwise_formula(e in r_element(10)) {
        prop_assert_eq!(e.t_act(), t_act_explicit(&e));
    }

    #[test]
    fn t_action_is_linear(e in r_element(8), f in r_element(8), a in scalar(), b in scalar()) {
        let combo = &e.scale(&a) + &f.scale(&b);
        let lhs = combo.t_act();
        let rhs = &e.t_act().scale(&a) + &f.t_act().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_power_on_unit_has_leading_coefficient_one(k in 0u32..=10) {
        let e = RElement::basis_element(0, 0, 12).unwrap().t_power_act(k);
        prop_assert_eq!(e.coefficient(k, 0).unwrap(), ExactScalar::one());
    }

    #[test]
    fn pullback_without_z_factor_is_multiplicative(f in r_element(8), g in r_element(8)) {
        let n = 8;
        let factor = one_minus_quarter_z(n);
        let sigma = |e: &RElement| &immersion_pullback(e).series().clone() * &factor;
        let fg = RElement::from_series(f.series() * g.series()).unwrap();
        prop_assert_eq!(sigma(&fg), &sigma(&f) * &sigma(&g));
    }

    #[test]
    fn totally_geodesic_pullback_is_identity(e in r_element(10)) {
        let back = totally_geodesic_specialize(&immersion_pullback(&e)).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn gamma_change_round_trips(s in series_over(Alphabet::xyz(), 9, 3)) {
        let c = RelElement::from_series(s.clone(), RelBasis::C).unwrap();
        let back = c.c_to_gamma().unwrap().gamma_to_c().unwrap();
        prop_assert_eq!(back.series(), &s);
        let g = RelElement::from_series(s.clone(), RelBasis::Gamma).unwrap();
        let back = g.gamma_to_c().unwrap().c_to_gamma().unwrap();
        prop_assert_eq!(back.series(), &s);
    }

    #[test]
    fn globalization_intertwines_t(e in r_element(10)) {
        prop_assert_eq!(globalize_on_sphere(&e.t_act()), t_act_tau(&globalize_on_sphere(&e)));
    }

    #[test]
    fn polynomials_in_t_transport_along_x(q in series_over(Alphabet::univariate("x"), 9, 9)) {
        let xq = q.shift(&[1]).unwrap().truncate(q.order());
        let lhs = poly_in_t_to_tau(&xq).unwrap();
        let rhs = t_act_tau(&poly_in_t_to_tau(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transforms_intertwine_shifted_derivatives(
        f in series_over(Alphabet::zy(), 12, 6), k in 1u32..=4
    ) {
        for transform in [o_transform, p_transform] {
            let lhs = transform(&f.shifted_derivative(0, k)).unwrap();
            let rhs = transform(&f).unwrap().shifted_derivative(0, k);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_bases_are_mutually_inverse(e in tilde_element(10)) {
        let back = e.tilde_to_delta().unwrap().delta_to_tilde().unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn hermitian_conversion_round_trips(e in tilde_element(9), lambda in nonzero_lambda()) {
        let c = c_from_tilde(&e, &lambda).unwrap();
        prop_assert_eq!(tilde_from_c(&c, &lambda).unwrap(), e);
    }

    #[test]
    fn c_to_tilde_round_trips(e in r_element(9), lambda in nonzero_lambda()) {
        let t = tilde_from_c(&e, &lambda).unwrap();
        prop_assert_eq!(c_from_tilde(&t, &lambda).unwrap(), e);
    }

    #[test]
    fn hermitian_t_action_two_routes(e in tilde_element(8), lambda in nonzero_lambda()) {
        let closed = t_lambda_act_closed(&e, &lambda).unwrap();
        let route = t_lambda_act_via_c(&e, &lambda).unwrap();
        prop_assert_eq!(closed, route);
    }
}
