use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{cabs, re, Real};

/// Dense polynomial with complex coefficients in ascending degree order.
///
/// Trailing exact zeros are always trimmed, so the zero polynomial has no
/// coefficients at all and `degree()` returns `None` for it.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: Vec<T>) -> Self {
        Self::new(coeffs.into_iter().map(re).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// `slope * x + intercept`
    pub fn affine(slope: Complex<T>, intercept: Complex<T>) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(Complex::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_real(&self, x: &T) -> Complex<T> {
        // real argument: avoid the complex multiply
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc: Complex<T>, c| {
                Complex::new(
                    acc.re * x.clone() + c.re.clone(),
                    acc.im * x.clone() + c.im.clone(),
                )
            })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_usize(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn scale_real(&self, s: &T) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Complex::new(c.re.clone() * s.clone(), c.im.clone() * s.clone()))
                .collect(),
        )
    }

    pub fn conj(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Multiply by `slope * x + intercept` without forming a general product.
    pub fn mul_affine(&self, slope: &Complex<T>, intercept: &Complex<T>) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return Self::zero();
        }
        let mut out = vec![Complex::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] = out[k].clone() + c.clone() * intercept.clone();
            out[k + 1] = out[k + 1].clone() + c.clone() * slope.clone();
        }
        Self::new(out)
    }

    /// The polynomial `x -> self(scale * x + shift)`.
    pub fn compose_affine(&self, scale: &Complex<T>, shift: &Complex<T>) -> Self {
        // Horner in polynomial arithmetic: p(u) with u = scale*x + shift.
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul_affine(scale, shift) + Self::constant(c.clone())
        })
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().map(cabs).fold(T::zero(), T::max_of)
    }

    /// Norm-wise coefficient distance `max_k |a_k - b_k| / max_k |a_k|`.
    ///
    /// Falls back to the absolute distance when `self` is the zero polynomial.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let diff = (self - other).max_abs_coeff().to_f64();
        let scale = self.max_abs_coeff().to_f64();
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

impl<'a, T: Real> Add<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Real> Add for Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self + &rhs
    }
}

impl<'a, T: Real> Sub<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Real> Sub for Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self - &rhs
    }
}

impl<'a, T: Real> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Real> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Polynomial<f64> {
        Polynomial::from_real(c.to_vec())
    }

    #[test]
    fn trims_trailing_zeros() {
        let q = p(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0.0, 0.0]).is_zero());
        assert_eq!(Polynomial::<f64>::zero().degree(), None);
    }

    #[test]
    fn product_and_derivative() {
        let a = p(&[1.0, 1.0]);
        let sq = &a * &a;
        assert_eq!(sq, p(&[1.0, 2.0, 1.0]));
        assert_eq!(sq.derivative(), p(&[2.0, 2.0]));
    }

    #[test]
    fn compose_affine_shifts_and_scales() {
        // (2x + 1)^2 composed at x -> 3x - 1 gives (6x - 1)^2 = 36x^2 - 12x + 1
        let q = p(&[1.0, 4.0, 4.0]);
        let r = q.compose_affine(&re(3.0), &re(-1.0));
        assert_eq!(r, p(&[1.0, -12.0, 36.0]));
    }

    #[test]
    fn add_negated_is_zero() {
        let q = Polynomial::new(vec![Complex::new(1.0, 2.0), Complex::new(-3.0, 0.5)]);
        assert!((&q + &(-q.clone())).is_zero());
    }

    #[test]
    fn eval_real_matches_complex_eval() {
        let q = Polynomial::new(vec![
            Complex::new(1.0, 2.0),
            Complex::new(-3.0, 0.5),
            re(0.25),
        ]);
        let x = 1.7;
        assert!((q.eval_real(&x) - q.eval(&re(x))).norm() < 1e-14);
    }
}
