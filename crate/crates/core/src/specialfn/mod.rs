//! Hermite and Laguerre polynomials, normalized Hermite functions and the
//! quadrature rules used to cross-check exact integrals.

mod polynomial;
mod quadrature;

pub use polynomial::Polynomial;
pub use quadrature::{default_hermite_nodes, QuadratureKind, QuadratureRule};

use dashu_int::IBig;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::SpecialFnError;
use crate::scalar::Real;

/// Exact integer coefficients of the physicists' Hermite polynomials
/// `H_0..=H_n_max`, via `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_integer_table(n_max: usize) -> Vec<Vec<IBig>> {
    let mut table: Vec<Vec<IBig>> = Vec::with_capacity(n_max + 1);
    table.push(vec![IBig::ONE]);
    if n_max >= 1 {
        table.push(vec![IBig::ZERO, IBig::from(2)]);
    }
    for n in 1..n_max {
        let mut next = vec![IBig::ZERO; n + 2];
        for (k, c) in table[n].iter().enumerate() {
            next[k + 1] += c * IBig::from(2);
        }
        let two_n = IBig::from(2 * n);
        for (k, c) in table[n - 1].iter().enumerate() {
            next[k] -= c * &two_n;
        }
        table.push(next);
    }
    table
}

pub fn hermite_integer_coeffs(n: usize) -> Vec<IBig> {
    hermite_integer_table(n)
        .pop()
        .expect("table has n + 1 rows")
}

/// Physicists' Hermite polynomial `H_n` with exactly rounded coefficients.
pub fn hermite<T: Real>(n: usize) -> Polynomial<T> {
    Polynomial::from_real(hermite_integer_coeffs(n).iter().map(T::from_ibig).collect())
}

/// `H_n(x)` by the three-term recurrence.
pub fn hermite_eval<T: Real>(n: usize, x: &T) -> T {
    let two = T::from_i64(2);
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two.clone() * x.clone();
    for k in 1..n {
        let next = two.clone() * x.clone() * cur.clone() - two.clone() * T::from_usize(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre_eval<T: Real>(n: usize, x: &T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() - x.clone();
    for k in 1..n {
        let kf = T::from_usize(k);
        let next = ((T::from_usize(2 * k + 1) - x.clone()) * cur.clone() - kf * prev)
            / T::from_usize(k + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Large-`n` behaviour of `L_n(x)` for `x < 0`:
/// `e^{x/2} e^{2 sqrt(-n x)} / (2 sqrt(pi) (-x)^{1/4} n^{1/4})`.
pub fn laguerre_asymptotic(n: usize, x: f64) -> Result<f64, SpecialFnError> {
    if x.is_nan() || x >= 0.0 {
        return Err(SpecialFnError::AsymptoticDomain { x });
    }
    if n == 0 {
        return Err(SpecialFnError::AsymptoticOrder);
    }
    let nf = n as f64;
    let log = 0.5 * x + 2.0 * (-nf * x).sqrt()
        - (2.0 * std::f64::consts::PI.sqrt()).ln()
        - 0.25 * (-x).ln()
        - 0.25 * nf.ln();
    Ok(log.exp())
}

/// Normalized Hermite function `e_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi))`.
pub fn hermite_function<T: Real>(n: usize, x: &T) -> T {
    let half = T::from_f64(0.5);
    let quarter_root_pi = T::pi().sqrt().sqrt();
    let mut prev = (-(x.clone() * x.clone() * half)).exp() / quarter_root_pi;
    if n == 0 {
        return prev;
    }
    let two = T::from_i64(2);
    let mut cur = two.sqrt() * x.clone() * prev.clone();
    for k in 1..n {
        let kp1 = T::from_usize(k + 1);
        let next = (two.clone() / kp1.clone()).sqrt() * x.clone() * cur.clone()
            - (T::from_usize(k) / kp1).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Partial sum `sum_{l <= max_order} t^l H_l(x) / l!`.
pub fn hermite_generating_sum<T: Real>(t: &Complex<T>, x: &T, max_order: usize) -> Complex<T> {
    // h_l = H_l(x) / l!  satisfies  h_{l+1} = (2x h_l - 2 h_{l-1}) / (l + 1)
    let two = T::from_i64(2);
    let mut h_prev = T::zero();
    let mut h = T::one();
    let mut power = Complex::<T>::one();
    let mut sum = Complex::<T>::zero();
    for l in 0..=max_order {
        sum = sum + Complex::new(power.re.clone() * h.clone(), power.im.clone() * h.clone());
        let h_next =
            (two.clone() * x.clone() * h.clone() - two.clone() * h_prev) / T::from_usize(l + 1);
        h_prev = h;
        h = h_next;
        power = power * t.clone();
    }
    sum
}
