use num_complex::Complex;
use proptest::prelude::*;

use pbswanson::bicoherent::{closed_form_state, eigen_residual, normalized_gaussian, series_state};
use pbswanson::eigensystem::{gram_matrix, identity_deviation, norm_table, quasi_basis_sums};
use pbswanson::operators::commutator_residual;
use pbswanson::polygauss::gaussian;
use pbswanson::specialfn::{hermite, hermite_function};
use pbswanson::{
    build_family, derive, DerivedParams, Flavor, Method, ModelOperators, ModelParams, Mp,
    PolyGauss, Preset, Real,
};

fn valid_params() -> impl Strategy<Value = ModelParams> {
    (0.2f64..2.0, 0.05f64..0.95, -1.0f64..1.0, -1.0f64..1.0).prop_map(
        |(omega, frac, alpha, beta)| {
            ModelParams::new(omega, frac * omega / 2.0, alpha, beta).unwrap()
        },
    )
}

/// `e_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi))` as a PolyGauss.
fn hermite_state<T: Real>(n: usize) -> PolyGauss<T> {
    let mut norm = T::pi().sqrt();
    for k in 1..=n {
        norm = norm * T::from_usize(2 * k);
    }
    let g = PolyGauss::centered(vec![T::one()], T::from_f64(0.5)).unwrap();
    g.with_poly(hermite::<T>(n).scale_real(&(T::one() / norm.sqrt())))
}

fn hermite_gram_deviation<T: Real>(n_max: usize) -> f64 {
    let states: Vec<PolyGauss<T>> = (0..=n_max).map(hermite_state).collect();
    let mut worst = 0.0f64;
    for (m, a) in states.iter().enumerate() {
        for (n, b) in states.iter().enumerate() {
            let mut ip = a.inner_product(b).unwrap();
            if m == n {
                ip.re = ip.re - T::one();
            }
            worst = worst.max(ip.norm_sqr().sqrt().to_f64());
        }
    }
    worst
}

#[test]
fn hermite_functions_are_orthonormal() {
    // Monomial moments cancel heavily in f64; the extended type keeps every digit.
    assert!(hermite_gram_deviation::<f64>(12) < 1e-10);
    assert!(hermite_gram_deviation::<Mp>(30) < 1e-40);
}

#[test]
fn hermite_state_matches_hermite_function() {
    for n in [0, 3, 8, 15] {
        for x in [-2.5, -0.3, 0.0, 1.7] {
            let a = hermite_state::<f64>(n).eval(&x).re;
            let b = hermite_function(n, &x);
            assert!((a - b).abs() < 1e-12, "n={n} x={x}");
        }
    }
}

#[test]
fn quasi_basis_error_shrinks_with_n() {
    let d: DerivedParams<Mp> = derive(&Preset::Fig1B.params()).unwrap();
    let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, 60).unwrap();
    let psi = build_family(&d, Flavor::Psi, Method::ClosedForm, 60).unwrap();
    let f = gaussian(Mp::from_f64(0.5)).unwrap();
    let g = gaussian(Mp::from_f64(1.0)).unwrap();
    let exact = f.inner_product(&g).unwrap();
    let sums = quasi_basis_sums(&f, &g, &phi, &psi, 60).unwrap();
    let errors: Vec<f64> = [10, 20, 40, 60]
        .iter()
        .map(|&n| {
            (sums.forward[n].clone() - exact.clone())
                .norm_sqr()
                .sqrt()
                .to_f64()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(errors[3] < 1e-6 * exact.re.to_f64());
}

#[test]
fn normalized_gaussian_has_unit_norm() {
    for q in [0.25, 0.5, 1.0, 3.0] {
        let g = normalized_gaussian(q).unwrap();
        assert!((g.norm_sqr().unwrap() - 1.0).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derived_identities(p in valid_params()) {
        let d: DerivedParams<f64> = derive(&p).unwrap();
        prop_assert!(((2.0 * d.theta0).tanh() - 2.0 * p.lambda / p.omega).abs() < 1e-12);
        prop_assert!((d.theta_plus * d.theta_minus - 0.5).abs() < 1e-14);
        prop_assert!((d.k - (p.alpha + p.beta) / 2f64.sqrt()).abs() < 1e-12);
        prop_assert!(d.gamma < 0.0);
        prop_assert!(d.big_omega > 0.0 && d.big_omega <= p.omega);
        let phi0 = build_family(&d, Flavor::Phi, Method::ClosedForm, 0).unwrap();
        let psi0 = build_family(&d, Flavor::Psi, Method::ClosedForm, 0).unwrap();
        let ip = phi0.state(0).inner_product(psi0.state(0)).unwrap();
        prop_assert!((ip - 1.0).norm() < 1e-12);
    }

    #[test]
    fn commutator_holds_for_random_params(p in valid_params(), re in -1.0f64..1.0, im in -1.0f64..1.0, deg in 0usize..8) {
        let d: DerivedParams<f64> = derive(&p).unwrap();
        let ops = ModelOperators::new(&d);
        let coeffs: Vec<f64> = (0..=deg).map(|k| 1.0 / (k + 1) as f64).collect();
        let f = PolyGauss::centered(coeffs, 0.7).unwrap().scale(&Complex::new(re, im));
        let r = commutator_residual(&ops.lower, &ops.raise, &f);
        prop_assert!(r.poly().max_abs_coeff() <= 1e-12 * f.poly().max_abs_coeff().max(1e-300));
    }

    #[test]
    fn small_families_are_biorthonormal(p in valid_params()) {
        let d: DerivedParams<Mp> = derive(&p).unwrap();
        let phi = build_family(&d, Flavor::Phi, Method::Recursion, 8).unwrap();
        let psi = build_family(&d, Flavor::Psi, Method::ClosedForm, 8).unwrap();
        prop_assert!(identity_deviation(&gram_matrix(&phi, &psi).unwrap()) < 1e-30);
    }

    #[test]
    fn norm_ratio_is_laguerre(p in valid_params()) {
        let d: DerivedParams<Mp> = derive(&p).unwrap();
        let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, 10).unwrap();
        prop_assert!(norm_table(&phi, 10).unwrap().max_ratio_discrepancy() < 1e-12);
    }

    #[test]
    fn closed_form_solves_eigen_equation(p in valid_params(), zr in -2.0f64..2.0, zi in -2.0f64..2.0) {
        let d: DerivedParams<f64> = derive(&p).unwrap();
        for flavor in [Flavor::Phi, Flavor::Psi] {
            let s = closed_form_state(&d, flavor, &Complex::new(zr, zi)).unwrap();
            prop_assert!(eigen_residual(&d, &s) < 1e-10);
        }
    }

    #[test]
    fn swapping_shifts_swaps_flavors(p in valid_params(), zr in -1.5f64..1.5, zi in -1.5f64..1.5, x in -3.0f64..3.0) {
        let z = Complex::new(zr, zi);
        let d: DerivedParams<f64> = derive(&p).unwrap();
        let swapped: DerivedParams<f64> = derive(&p.with_swapped_shifts()).unwrap();
        let a = closed_form_state(&d, Flavor::Psi, &z).unwrap().eval(&x);
        let b = closed_form_state(&swapped, Flavor::Phi, &z).unwrap().eval(&x);
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
    }

    #[test]
    fn series_converges_to_closed_form_modulus(zr in -1.0f64..1.0, zi in -1.0f64..1.0, x in -3.0f64..3.0) {
        let d: DerivedParams<f64> = derive(&Preset::Fig1B.params()).unwrap();
        let z = Complex::new(zr, zi);
        let s = series_state(&d, Flavor::Phi, &z, 40).unwrap().eval(&x).norm();
        let c = closed_form_state(&d, Flavor::Phi, &z).unwrap().eval(&x).norm();
        prop_assert!((s - c).abs() <= 1e-8 * c);
    }
}
