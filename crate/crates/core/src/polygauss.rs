//! Functions of the form `P(x) exp(-(q x^2 + l x + c))` and their exact
//! inner products.
//!
//! Every eigenfunction, vacuum and closed-form coherent state of the model
//! lives in this class, and the class is closed under the first-order
//! ladder operators. Inner products reduce to finite sums of Gaussian
//! moments, so they are computed without any quadrature error.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::PolyGaussError;
use crate::scalar::{cexp, re, scale, Real};
use crate::specialfn::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyGauss<T: Real> {
    poly: Polynomial<T>,
    quad: T,
    lin: Complex<T>,
    const_term: Complex<T>,
}

impl<T: Real> PolyGauss<T> {
    /// Rejects `quad <= 0`: such functions are not square integrable.
    pub fn new(
        poly: Polynomial<T>,
        quad: T,
        lin: Complex<T>,
        const_term: Complex<T>,
    ) -> Result<Self, PolyGaussError> {
        if quad.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(PolyGaussError::NotSquareIntegrable {
                quad: quad.to_f64(),
            });
        }
        Ok(PolyGauss {
            poly,
            quad,
            lin,
            const_term,
        })
    }

    /// Centered Gaussian `exp(-quad x^2)` times a real polynomial.
    pub fn centered(coeffs: Vec<T>, quad: T) -> Result<Self, PolyGaussError> {
        Self::new(
            Polynomial::from_real(coeffs),
            quad,
            Complex::zero(),
            Complex::zero(),
        )
    }

    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    pub fn quad(&self) -> &T {
        &self.quad
    }

    pub fn lin(&self) -> &Complex<T> {
        &self.lin
    }

    pub fn const_term(&self) -> &Complex<T> {
        &self.const_term
    }

    /// Same exponent, different polynomial.
    pub fn with_poly(&self, poly: Polynomial<T>) -> Self {
        PolyGauss {
            poly,
            quad: self.quad.clone(),
            lin: self.lin.clone(),
            const_term: self.const_term.clone(),
        }
    }

    pub fn same_exponent(&self, other: &Self) -> bool {
        self.quad == other.quad && self.lin == other.lin && self.const_term == other.const_term
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval(&self, x: &T) -> Complex<T> {
        let exponent = Complex::new(self.quad.clone() * x.clone() * x.clone(), T::zero())
            + scale(&self.lin, x)
            + self.const_term.clone();
        self.poly.eval_real(x) * cexp(&(-exponent))
    }

    pub fn eval_f64(&self, x: f64) -> Complex<f64> {
        let v = self.eval(&T::from_f64(x));
        Complex::new(v.re.to_f64(), v.im.to_f64())
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        self.with_poly(self.poly.scale(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyGaussError> {
        if !self.same_exponent(other) {
            return Err(PolyGaussError::ExponentMismatch);
        }
        Ok(self.with_poly(&self.poly + &other.poly))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyGaussError> {
        if !self.same_exponent(other) {
            return Err(PolyGaussError::ExponentMismatch);
        }
        Ok(self.with_poly(&self.poly - &other.poly))
    }

    /// Exact `<self, other> = int conj(self(x)) other(x) dx`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>, PolyGaussError> {
        inner_product(self, other)
    }

    pub fn norm_sqr(&self) -> Result<T, PolyGaussError> {
        Ok(inner_product(self, self)?.re)
    }

    pub fn norm(&self) -> Result<T, PolyGaussError> {
        Ok(self.norm_sqr()?.sqrt())
    }
}

/// `M_k = int x^k exp(-a x^2 - b x) dx` for `k = 0..=k_max`.
#[derive(Clone, Debug)]
pub struct GaussianMomentTable<T: Real> {
    pub a: T,
    pub b: Complex<T>,
    pub moments: Vec<Complex<T>>,
}

impl<T: Real> GaussianMomentTable<T> {
    pub fn new(a: T, b: Complex<T>, k_max: usize) -> Result<Self, PolyGaussError> {
        if a.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(PolyGaussError::NotIntegrable { a: a.to_f64() });
        }
        let two_a = a.clone() * T::from_i64(2);
        let four_a = two_a.clone() * T::from_i64(2);
        let m0 = cexp(&scale(&(b.clone() * b.clone()), &(T::one() / four_a)))
            * re((T::pi() / a.clone()).sqrt());
        let drift = scale(&(-b.clone()), &(T::one() / two_a.clone()));
        let mut moments = Vec::with_capacity(k_max + 1);
        moments.push(m0);
        if k_max >= 1 {
            let m1 = drift.clone() * moments[0].clone();
            moments.push(m1);
        }
        for k in 1..k_max {
            let next = drift.clone() * moments[k].clone()
                + scale(&moments[k - 1], &(T::from_usize(k) / two_a.clone()));
            moments.push(next);
        }
        Ok(GaussianMomentTable { a, b, moments })
    }

    /// `int P(x) exp(-a x^2 - b x) dx`; the table must cover `deg P`.
    pub fn contract(&self, poly: &Polynomial<T>) -> Complex<T> {
        assert!(
            poly.coeffs().len() <= self.moments.len(),
            "moment table too short for polynomial"
        );
        poly.coeffs()
            .iter()
            .zip(&self.moments)
            .fold(Complex::zero(), |acc, (c, m)| acc + c.clone() * m.clone())
    }
}

pub fn inner_product<T: Real>(
    f: &PolyGauss<T>,
    g: &PolyGauss<T>,
) -> Result<Complex<T>, PolyGaussError> {
    let a = f.quad.clone() + g.quad.clone();
    let b = f.lin.conj() + g.lin.clone();
    let product = &f.poly.conj() * &g.poly;
    let table = GaussianMomentTable::new(a, b, product.degree().unwrap_or(0))?;
    let integral = table.contract(&product);
    if integral.is_zero() {
        return Ok(integral);
    }
    let offset = f.const_term.conj() + g.const_term.clone();
    Ok(integral * cexp(&(-offset)))
}

/// Build a PolyGauss from plain `f64` data.
pub fn from_f64<T: Real>(
    coeffs: &[Complex<f64>],
    quad: f64,
    lin: Complex<f64>,
    const_term: Complex<f64>,
) -> Result<PolyGauss<T>, PolyGaussError> {
    use crate::scalar::c_from_f64;
    PolyGauss::new(
        Polynomial::new(coeffs.iter().map(|&c| c_from_f64(c)).collect()),
        T::from_f64(quad),
        c_from_f64(lin),
        c_from_f64(const_term),
    )
}

/// A unit polynomial times `exp(-quad x^2)`.
pub fn gaussian<T: Real>(quad: T) -> Result<PolyGauss<T>, PolyGaussError> {
    PolyGauss::centered(vec![T::one()], quad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mp;
    use crate::specialfn::{default_hermite_nodes, QuadratureRule};
    use num_traits::One;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let g = gaussian(0.5).unwrap();
        assert_eq!(g.eval(&0.0), c(1.0, 0.0));
        let odd = PolyGauss::centered(vec![0.0, 1.0], 1.0).unwrap();
        assert_eq!(odd.eval(&0.0), c(0.0, 0.0));
        let shifted = from_f64::<f64>(&[c(1.0, 0.0)], 0.5, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((shifted.eval(&1.0).re - (-1.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn unit_gaussian_overlap_is_sqrt_pi() {
        let g = gaussian(0.5).unwrap();
        let v = g.inner_product(&g).unwrap();
        assert!((v.re - PI.sqrt()).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn parity_kills_even_odd_overlap() {
        let even = PolyGauss::centered(vec![1.0, 0.0, -2.0, 0.0, 0.5], 0.7).unwrap();
        let odd = PolyGauss::centered(vec![0.0, 1.0, 0.0, 3.0], 0.4).unwrap();
        assert_eq!(even.inner_product(&odd).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn rejects_non_integrable() {
        assert!(matches!(
            GaussianMomentTable::new(0.0, c(0.0, 0.0), 3),
            Err(PolyGaussError::NotIntegrable { .. })
        ));
        assert!(PolyGauss::centered(vec![1.0], -0.5).is_err());
    }

    #[test]
    fn scale_and_add() {
        let f =
            from_f64::<f64>(&[c(1.0, 0.5), c(0.0, 2.0)], 0.8, c(0.1, -0.3), c(0.2, 0.0)).unwrap();
        assert!(f.scale(&c(0.0, 0.0)).is_zero());
        assert!(f.add(&f.scale(&c(-1.0, 0.0))).unwrap().is_zero());
        let other = gaussian(0.8).unwrap();
        assert_eq!(f.add(&other), Err(PolyGaussError::ExponentMismatch));
        let doubled = f.add(&f).unwrap();
        assert!((doubled.eval(&0.3) - f.eval(&0.3) * 2.0).norm() < 1e-15);
    }

    #[test]
    fn moment_recursion_matches_b_derivatives() {
        // M_k = (-d/db)^k M_0 with M_0 = sqrt(pi/a) exp(b^2/(4a)) = sqrt(pi/a) e^{u},
        // u = b^2/(4a). Closed forms of the derivatives for k <= 6 in terms of s = b/(2a):
        // (-d/db)^k e^{u} = e^{u} * p_k(s), with p_{k+1} = -s p_k - p_k'(b) and
        // p_k'(b) = p_k'(s) / (2a).
        let a = 0.7f64;
        let b = 0.45f64;
        let table = GaussianMomentTable::new(a, c(b, 0.0), 6).unwrap();
        let m0 = (PI / a).sqrt() * (b * b / (4.0 * a)).exp();
        let s = b / (2.0 * a);
        let h = 1.0 / (2.0 * a);
        let expected = [
            1.0,
            -s,
            s * s + h,
            -(s.powi(3) + 3.0 * s * h),
            s.powi(4) + 6.0 * s * s * h + 3.0 * h * h,
            -(s.powi(5) + 10.0 * s.powi(3) * h + 15.0 * s * h * h),
            s.powi(6) + 15.0 * s.powi(4) * h + 45.0 * s * s * h * h + 15.0 * h.powi(3),
        ];
        for (k, e) in expected.iter().enumerate() {
            let m = table.moments[k].re;
            assert!((m - m0 * e).abs() <= 1e-12 * (m0 * e).abs(), "k={k}");
        }
    }

    // Oracle: Gauss-Hermite quadrature after completing the square,
    //   conj(f) g = Q(x) exp(-a x^2 - b x - c) with b real here,
    //   x = y / sqrt(a) - b / (2a).
    fn quadrature_overlap(f: &PolyGauss<f64>, g: &PolyGauss<f64>) -> Complex<f64> {
        let a = f.quad + g.quad;
        let b = f.lin.conj() + g.lin;
        let deg = f.poly().coeffs().len() + g.poly().coeffs().len();
        let rule = QuadratureRule::gauss_hermite(default_hermite_nodes(deg)).unwrap();
        let shift = -b / (2.0 * a);
        let sa = a.sqrt();
        let prefactor = (b * b / (4.0 * a) - f.const_term.conj() - g.const_term).exp() / sa;
        let sum = rule.integrate(|y| {
            let x = shift + y / sa;
            // polynomial part evaluated at a complex point when b is complex
            f.poly().conj().eval(&x) * g.poly().eval(&x)
        });
        sum * prefactor
    }

    proptest! {
        #[test]
        fn exact_overlap_agrees_with_quadrature(
            fc in prop::collection::vec(-1.0f64..1.0, 1..30),
            gc in prop::collection::vec(-1.0f64..1.0, 1..30),
            fq in 0.2f64..1.5,
            gq in 0.2f64..1.5,
            fl in -1.0f64..1.0,
            gl in -1.0f64..1.0,
            gi in -0.5f64..0.5,
        ) {
            let f = from_f64::<f64>(
                &fc.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>(), fq, c(fl, 0.0), c(0.0, 0.0)).unwrap();
            let g = from_f64::<f64>(
                &gc.iter().enumerate().map(|(k, &v)| c(v, if k % 2 == 0 { 0.0 } else { 0.3 * v })).collect::<Vec<_>>(),
                gq, c(gl, gi), c(0.1, 0.2)).unwrap();
            let exact = f.inner_product(&g).unwrap();
            let quad = quadrature_overlap(&f, &g);
            // degree-weighted scale guards against cancellation-dominated cases
            let scale = exact.norm().max(1e-3);
            prop_assert!((exact - quad).norm() <= 1e-9 * scale, "exact={exact} quad={quad}");
        }
    }

    #[test]
    fn high_degree_overlap_agrees_with_quadrature() {
        // total degree 80: x^40 * x^40 against a shifted Gaussian
        let mut fc = vec![c(0.0, 0.0); 41];
        fc[40] = c(1.0, 0.0);
        fc[3] = c(-2.0, 0.0);
        let f = from_f64::<f64>(&fc, 2.0, c(0.3, 0.0), c(0.0, 0.0)).unwrap();
        let exact = f.inner_product(&f).unwrap();
        let quad = quadrature_overlap(&f, &f);
        assert!(
            (exact - quad).norm() <= 1e-9 * exact.norm(),
            "{exact} {quad}"
        );
    }

    #[test]
    fn mp_backend_matches_f64_on_benign_input() {
        let f = gaussian(Mp::from_f64(0.5)).unwrap();
        let g = PolyGauss::centered(vec![Mp::one(), Mp::zero(), Mp::one()], Mp::one()).unwrap();
        let v = f.inner_product(&g).unwrap().re.to_f64();
        // int (1 + x^2) e^{-1.5 x^2} = sqrt(pi/1.5) (1 + 1/3)
        let expected = (PI / 1.5).sqrt() * (1.0 + 1.0 / 3.0);
        assert!((v - expected).abs() < 1e-15);
    }
}
