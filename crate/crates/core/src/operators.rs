//! First-order ladder operators `d * D + m1 * x + m0` acting exactly on
//! [`PolyGauss`] functions, the model's operator set and both forms of the
//! Hamiltonian.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::params::DerivedParams;
use crate::polygauss::PolyGauss;
use crate::scalar::{re, scale, Real};
use crate::specialfn::Polynomial;

/// `deriv_coef * d/dx + mult_lin * x + mult_const` with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderOp<T: Real> {
    pub deriv_coef: T,
    pub mult_lin: T,
    pub mult_const: T,
}

impl<T: Real> LadderOp<T> {
    pub fn new(deriv_coef: T, mult_lin: T, mult_const: T) -> Self {
        LadderOp {
            deriv_coef,
            mult_lin,
            mult_const,
        }
    }

    pub fn derivative() -> Self {
        LadderOp::new(T::one(), T::zero(), T::zero())
    }

    /// Formal adjoint on L^2: `D -> -D`, multiplication parts unchanged.
    pub fn adjoint(&self) -> Self {
        LadderOp::new(
            -self.deriv_coef.clone(),
            self.mult_lin.clone(),
            self.mult_const.clone(),
        )
    }

    pub fn to_complex(&self) -> ComplexLadderOp<T> {
        ComplexLadderOp {
            deriv_coef: re(self.deriv_coef.clone()),
            mult_lin: re(self.mult_lin.clone()),
            mult_const: re(self.mult_const.clone()),
        }
    }

    pub fn apply(&self, f: &PolyGauss<T>) -> PolyGauss<T> {
        self.to_complex().apply(f)
    }

    /// `(self - z) f`.
    pub fn apply_shifted(&self, f: &PolyGauss<T>, z: &Complex<T>) -> PolyGauss<T> {
        let mut op = self.to_complex();
        op.mult_const = op.mult_const - z.clone();
        op.apply(f)
    }
}

/// Same shape as [`LadderOp`] with complex coefficients; arises from complex
/// linear combinations such as `-conj(z) A + z B`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexLadderOp<T: Real> {
    pub deriv_coef: Complex<T>,
    pub mult_lin: Complex<T>,
    pub mult_const: Complex<T>,
}

impl<T: Real> ComplexLadderOp<T> {
    pub fn combination(terms: &[(Complex<T>, &LadderOp<T>)]) -> Self {
        let mut out = ComplexLadderOp {
            deriv_coef: Complex::zero(),
            mult_lin: Complex::zero(),
            mult_const: Complex::zero(),
        };
        for (w, op) in terms {
            out.deriv_coef = out.deriv_coef + scale(w, &op.deriv_coef);
            out.mult_lin = out.mult_lin + scale(w, &op.mult_lin);
            out.mult_const = out.mult_const + scale(w, &op.mult_const);
        }
        out
    }

    /// Image of `P e^{-(q x^2 + l x + c)}`: the exponent is untouched and
    /// `P -> d (P' - (2 q x + l) P) + (m1 x + m0) P`.
    pub fn apply(&self, f: &PolyGauss<T>) -> PolyGauss<T> {
        let p = f.poly();
        let two_q = re(T::from_i64(2) * f.quad().clone());
        let from_exponent = p.mul_affine(&(-two_q), &(-f.lin().clone()));
        let deriv_part = (&p.derivative() + &from_exponent).scale(&self.deriv_coef);
        let mult_part = p.mul_affine(&self.mult_lin, &self.mult_const);
        f.with_poly(&deriv_part + &mult_part)
    }
}

/// `(op1 op2 - op2 op1) f - f`.
pub fn commutator_residual<T: Real>(
    op1: &LadderOp<T>,
    op2: &LadderOp<T>,
    f: &PolyGauss<T>,
) -> PolyGauss<T> {
    let forward = op1.apply(&op2.apply(f));
    let backward = op2.apply(&op1.apply(f));
    let poly = &(forward.poly() - backward.poly()) - f.poly();
    f.with_poly(poly)
}

/// Norm-wise coefficient residual of `got` against `expected`, which must
/// share an exponent. Absolute when `expected` is zero.
pub fn coefficient_residual<T: Real>(got: &PolyGauss<T>, expected: &PolyGauss<T>) -> f64 {
    debug_assert!(got.same_exponent(expected));
    expected.poly().relative_distance(got.poly())
}

/// Every ladder operator of the model.
#[derive(Clone, Debug)]
pub struct ModelOperators<T: Real> {
    pub c: LadderOp<T>,
    pub c_dag: LadderOp<T>,
    pub a: LadderOp<T>,
    pub b: LadderOp<T>,
    /// `A = Theta_- D + Theta_+ x + gamma_A`
    pub lower: LadderOp<T>,
    /// `B = -Theta_- D + Theta_+ x + gamma_B`
    pub raise: LadderOp<T>,
    /// `A^dagger`
    pub lower_dag: LadderOp<T>,
    /// `B^dagger`
    pub raise_dag: LadderOp<T>,
}

impl<T: Real> ModelOperators<T> {
    pub fn new(d: &DerivedParams<T>) -> Self {
        let s = T::from_f64(0.5).sqrt();
        let c = LadderOp::new(s.clone(), s.clone(), T::zero());
        let c_dag = c.adjoint();
        let a = LadderOp::new(s.clone(), s.clone(), d.alpha.clone());
        let b = LadderOp::new(-s.clone(), s, d.beta.clone());
        let lower = LadderOp::new(
            d.theta_minus.clone(),
            d.theta_plus.clone(),
            d.gamma_a.clone(),
        );
        let raise = LadderOp::new(
            -d.theta_minus.clone(),
            d.theta_plus.clone(),
            d.gamma_b.clone(),
        );
        let lower_dag = lower.adjoint();
        let raise_dag = raise.adjoint();
        ModelOperators {
            c,
            c_dag,
            a,
            b,
            lower,
            raise,
            lower_dag,
            raise_dag,
        }
    }

    /// `N = B A`.
    pub fn number(&self, f: &PolyGauss<T>) -> PolyGauss<T> {
        self.raise.apply(&self.lower.apply(f))
    }

    /// `N^dagger = A^dagger B^dagger`.
    pub fn number_dag(&self, f: &PolyGauss<T>) -> PolyGauss<T> {
        self.lower_dag.apply(&self.raise_dag.apply(f))
    }

    /// `A = alpha_a D + beta_a`, `B = -alpha_b D + beta_b` form of `(A, B)`.
    pub fn pb_form(&self) -> ConstantPbForm<T> {
        ConstantPbForm {
            alpha_a: self.lower.deriv_coef.clone(),
            alpha_b: -self.raise.deriv_coef.clone(),
            beta_a: Polynomial::from_real(vec![
                self.lower.mult_const.clone(),
                self.lower.mult_lin.clone(),
            ]),
            beta_b: Polynomial::from_real(vec![
                self.raise.mult_const.clone(),
                self.raise.mult_lin.clone(),
            ]),
        }
    }
}

/// A pair `a = alpha_a D + beta_a(x)`, `b = -D alpha_b + beta_b(x)` with
/// constant `alpha`s and polynomial `beta`s.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantPbForm<T: Real> {
    pub alpha_a: T,
    pub alpha_b: T,
    pub beta_a: Polynomial<T>,
    pub beta_b: Polynomial<T>,
}

impl<T: Real> ConstantPbForm<T> {
    /// `theta(x) = alpha_a beta_b(x) + alpha_b beta_a(x)`.
    pub fn theta(&self) -> Polynomial<T> {
        &self.beta_b.scale_real(&self.alpha_a) + &self.beta_a.scale_real(&self.alpha_b)
    }

    /// Largest coefficient of `alpha_a beta_b' + alpha_b beta_a' - 1`.
    pub fn pb_condition_residual(&self) -> f64 {
        let lhs = &self.beta_b.derivative().scale_real(&self.alpha_a)
            + &self.beta_a.derivative().scale_real(&self.alpha_b);
        (&lhs - &Polynomial::constant(Complex::one()))
            .max_abs_coeff()
            .to_f64()
    }

    /// `[a, b] = 1` holds for this form (the first compatibility condition is
    /// automatic for constant `alpha`s).
    pub fn pb_conditions_check(&self, tol: f64) -> bool {
        self.pb_condition_residual() <= tol
    }

    /// One step `pi_n = (theta / alpha_a) pi_{n-1} - alpha_b pi_{n-1}'`.
    pub fn pi_step(&self, prev: &Polynomial<T>) -> Polynomial<T> {
        let factor = self.theta().scale_real(&(T::one() / self.alpha_a.clone()));
        &(&factor * prev) - &prev.derivative().scale_real(&self.alpha_b)
    }

    /// One step `sigma_n = conj(theta / alpha_b) sigma_{n-1} - conj(alpha_a) sigma_{n-1}'`.
    pub fn sigma_step(&self, prev: &Polynomial<T>) -> Polynomial<T> {
        let factor = self
            .theta()
            .scale_real(&(T::one() / self.alpha_b.clone()))
            .conj();
        &(&factor * prev) - &prev.derivative().scale_real(&self.alpha_a)
    }

    /// Exponent `(q, l)` of the vacuum `exp(-int beta_a / alpha_a)`; `beta_a`
    /// must be affine.
    pub fn phi_vacuum_exponent(&self) -> (T, T) {
        affine_exponent(&self.beta_a, &self.alpha_a)
    }

    /// Exponent of `exp(-int conj(beta_b) / conj(alpha_b))`.
    pub fn psi_vacuum_exponent(&self) -> (T, T) {
        affine_exponent(&self.beta_b.conj(), &self.alpha_b)
    }
}

fn affine_exponent<T: Real>(beta: &Polynomial<T>, alpha: &T) -> (T, T) {
    assert!(
        beta.degree().unwrap_or(0) <= 1,
        "vacuum exponent needs affine beta"
    );
    let slope = beta.coeff(1).re;
    let intercept = beta.coeff(0).re;
    (
        slope / (T::from_i64(2) * alpha.clone()),
        intercept / alpha.clone(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianForm {
    /// `omega b a + lambda (b^2 + a^2)`
    PseudoBosonic,
    /// `Omega B A + gamma`
    Diagonal,
}

#[derive(Clone, Debug)]
pub struct QuadraticHamiltonian<'a, T: Real> {
    pub form: HamiltonianForm,
    pub params: &'a DerivedParams<T>,
    ops: ModelOperators<T>,
}

impl<'a, T: Real> QuadraticHamiltonian<'a, T> {
    pub fn new(form: HamiltonianForm, params: &'a DerivedParams<T>) -> Self {
        QuadraticHamiltonian {
            form,
            params,
            ops: ModelOperators::new(params),
        }
    }

    pub fn apply(&self, f: &PolyGauss<T>) -> PolyGauss<T> {
        let d = self.params;
        let ops = &self.ops;
        let poly = match self.form {
            HamiltonianForm::PseudoBosonic => {
                let ba = ops.b.apply(&ops.a.apply(f));
                let bb = ops.b.apply(&ops.b.apply(f));
                let aa = ops.a.apply(&ops.a.apply(f));
                &ba.poly().scale_real(&d.omega) + &(bb.poly() + aa.poly()).scale_real(&d.lambda)
            }
            HamiltonianForm::Diagonal => {
                let n = ops.number(f);
                &n.poly().scale_real(&d.big_omega) + &f.poly().scale_real(&d.gamma)
            }
        };
        f.with_poly(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive, Flavor, ModelParams, Preset};
    use crate::polygauss::{from_f64, gaussian};
    use crate::scalar::c_from_f64;
    use proptest::prelude::*;

    fn model(p: Preset) -> (DerivedParams<f64>, ModelOperators<f64>) {
        let d = derive(&p.params()).unwrap();
        let ops = ModelOperators::new(&d);
        (d, ops)
    }

    fn arb_polygauss() -> impl Strategy<Value = PolyGauss<f64>> {
        (
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=11),
            0.1f64..2.0,
            (-1.0f64..1.0, -1.0f64..1.0),
            (-0.5f64..0.5, -0.5f64..0.5),
        )
            .prop_map(|(coeffs, q, (lr, li), (cr, ci))| {
                let coeffs: Vec<Complex<f64>> = coeffs
                    .into_iter()
                    .map(|(a, b)| Complex::new(a, b))
                    .collect();
                from_f64(&coeffs, q, Complex::new(lr, li), Complex::new(cr, ci)).unwrap()
            })
    }

    #[test]
    fn derivative_of_unit_gaussian() {
        let g = gaussian(0.5).unwrap();
        let dg = LadderOp::derivative().apply(&g);
        assert_eq!(dg.poly(), &Polynomial::from_real(vec![0.0, -1.0]));
        assert!(dg.same_exponent(&g));
    }

    #[test]
    fn lowering_annihilates_vacuum() {
        let (d, ops) = model(Preset::Fig1B);
        let phi0 = d.vacuum_shape(Flavor::Phi).unwrap();
        assert!(ops.lower.apply(&phi0).poly().max_abs_coeff() < 1e-15);
        let psi0 = d.vacuum_shape(Flavor::Psi).unwrap();
        assert!(ops.raise_dag.apply(&psi0).poly().max_abs_coeff() < 1e-15);
    }

    #[test]
    fn self_commutator_leaves_minus_f() {
        let (_, ops) = model(Preset::Fig1A);
        let f = from_f64::<f64>(
            &[c(1.0, 0.2), c(0.5, 0.0), c(-0.3, 0.1)],
            0.7,
            c(0.2, 0.0),
            c(0.0, 0.0),
        )
        .unwrap();
        let r = commutator_residual(&ops.lower, &ops.lower, &f);
        assert!((&r.poly().clone() + f.poly()).max_abs_coeff() < 1e-15);
    }

    fn c(a: f64, b: f64) -> Complex<f64> {
        Complex::new(a, b)
    }

    #[test]
    fn pb_conditions_for_model() {
        let (d, ops) = model(Preset::Fig1C);
        let form = ops.pb_form();
        assert!(form.pb_conditions_check(1e-14));
        let theta = form.theta();
        let expected = Polynomial::from_real(vec![d.k, 1.0]);
        assert!(theta.relative_distance(&expected) < 1e-14);
        let broken = ConstantPbForm {
            beta_b: form.beta_b.scale_real(&2.0),
            ..form
        };
        assert!(!broken.pb_conditions_check(1e-6));
    }

    #[test]
    fn relation_between_raise_and_lower_dag() {
        let (d, ops) = model(Preset::Fig1D);
        let f = from_f64::<f64>(
            &[c(1.0, 0.0), c(0.0, 2.0), c(3.0, -1.0)],
            0.9,
            c(0.1, 0.4),
            c(0.0, 0.0),
        )
        .unwrap();
        let lhs = ops.raise.apply(&f).sub(&ops.lower_dag.apply(&f)).unwrap();
        let rhs = f.scale(&re(d.gamma_b - d.gamma_a));
        assert!(lhs.poly().relative_distance(rhs.poly()) < 1e-14);
    }

    #[test]
    fn pseudo_bosonic_form_on_vacuum_gives_gamma() {
        let (d, _) = model(Preset::Fig1B);
        let phi0 = d.vacuum_shape(Flavor::Phi).unwrap();
        let h = QuadraticHamiltonian::new(HamiltonianForm::PseudoBosonic, &d);
        let out = h.apply(&phi0);
        let expected = phi0.scale(&re(d.gamma));
        assert!(coefficient_residual(&out, &expected) < 1e-13);
    }

    #[test]
    fn diagonal_hamiltonian_in_mp_matches_f64() {
        use crate::scalar::Mp;
        let p = ModelParams::new(0.8, 0.3, -0.2, 0.6).unwrap();
        let d: DerivedParams<Mp> = derive(&p).unwrap();
        let f = PolyGauss::new(
            Polynomial::new(vec![c_from_f64(c(0.3, 0.1)), c_from_f64(c(1.0, 0.0))]),
            Mp::from_f64(0.6),
            Complex::zero(),
            Complex::zero(),
        )
        .unwrap();
        let a = QuadraticHamiltonian::new(HamiltonianForm::PseudoBosonic, &d).apply(&f);
        let b = QuadraticHamiltonian::new(HamiltonianForm::Diagonal, &d).apply(&f);
        assert!(coefficient_residual(&a, &b) < 1e-60);
    }

    proptest! {
        #[test]
        fn commutators_are_identity(f in arb_polygauss(), preset in 0usize..4) {
            let (_, ops) = model(Preset::ALL[preset]);
            for (x, y) in [(&ops.lower, &ops.raise), (&ops.a, &ops.b), (&ops.c, &ops.c_dag)] {
                let r = commutator_residual(x, y, &f);
                prop_assert!(r.poly().max_abs_coeff() <= 1e-13 * f.poly().max_abs_coeff().max(1.0));
            }
        }

        #[test]
        fn hamiltonian_forms_agree(f in arb_polygauss(), preset in 0usize..4) {
            let (d, _) = model(Preset::ALL[preset]);
            let a = QuadraticHamiltonian::new(HamiltonianForm::PseudoBosonic, &d).apply(&f);
            let b = QuadraticHamiltonian::new(HamiltonianForm::Diagonal, &d).apply(&f);
            prop_assert!(coefficient_residual(&a, &b) < 1e-12);
        }

        #[test]
        fn adjoint_is_involutive(dc in -2.0f64..2.0, ml in -2.0f64..2.0, mc in -2.0f64..2.0) {
            let op = LadderOp::new(dc, ml, mc);
            prop_assert_eq!(op.adjoint().adjoint(), op);
        }
    }
}
