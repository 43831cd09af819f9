//! Gaussian quadrature rules. These are cross-check integrators only; the
//! exact moment engine in [`crate::polygauss`] is authoritative.

use std::f64::consts::PI;

use crate::error::SpecialFnError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Weight `exp(-x^2)` on the real line.
    GaussHermite,
    /// Unit weight on `[a, b]`.
    GaussLegendre,
}

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

/// Node count that integrates `polynomial(degree) * exp(-x^2)` with margin.
pub fn default_hermite_nodes(max_degree: usize) -> usize {
    2 * max_degree + 8
}

const NEWTON_MAX_ITER: usize = 100;

impl QuadratureRule {
    /// `n`-point Gauss–Hermite rule, nodes ascending.
    pub fn gauss_hermite(n: usize) -> Result<Self, SpecialFnError> {
        if n == 0 {
            return Err(SpecialFnError::EmptyRule);
        }
        let pim4 = PI.powf(-0.25);
        let nf = n as f64;
        let m = n.div_ceil(2);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut z = 0.0f64;
        for i in 0..m {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * x[0],
                3 => 1.91 * z - 0.91 * x[1],
                _ => 2.0 * z - x[i - 2],
            };
            let mut pp = 0.0;
            let mut converged = false;
            for _ in 0..NEWTON_MAX_ITER {
                // orthonormal Hermite recurrence
                let mut p1 = pim4;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * nf).sqrt() * p2;
                let z1 = z;
                z = z1 - p1 / pp;
                if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(SpecialFnError::NoConvergence { nodes: n });
            }
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        x.reverse();
        w.reverse();
        Ok(QuadratureRule {
            nodes: x,
            weights: w,
            kind: QuadratureKind::GaussHermite,
        })
    }

    /// `n`-point Gauss–Legendre rule on `[a, b]`, nodes ascending.
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Self, SpecialFnError> {
        if n == 0 {
            return Err(SpecialFnError::EmptyRule);
        }
        let nf = n as f64;
        let m = n.div_ceil(2);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut pp = 0.0;
            let mut converged = false;
            for _ in 0..NEWTON_MAX_ITER {
                let mut p1 = 1.0;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
                }
                pp = nf * (z * p1 - p2) / (z * z - 1.0);
                let z1 = z;
                z = z1 - p1 / pp;
                if (z - z1).abs() <= 1e-15 {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(SpecialFnError::NoConvergence { nodes: n });
            }
            x[i] = mid - half * z;
            x[n - 1 - i] = mid + half * z;
            w[i] = 2.0 * half / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
        Ok(QuadratureRule {
            nodes: x,
            weights: w,
            kind: QuadratureKind::GaussLegendre,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`; the weight function of the rule is implicit.
    pub fn integrate<F, V>(&self, f: F) -> V
    where
        F: Fn(f64) -> V,
        V: std::ops::Add<Output = V> + std::ops::Mul<f64, Output = V> + Default,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(V::default(), |acc, (&x, &w)| acc + f(x) * w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_rule_invariants() {
        for n in [1, 2, 5, 20, 41, 120] {
            let r = QuadratureRule::gauss_hermite(n).unwrap();
            assert_eq!(r.len(), n);
            assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let total: f64 = r.weights.iter().sum();
            assert!((total - PI.sqrt()).abs() < 1e-13, "n={n} total={total}");
        }
    }

    #[test]
    fn hermite_rule_is_exact_on_even_moments() {
        // int x^{2k} e^{-x^2} = Gamma(k + 1/2)
        let r = QuadratureRule::gauss_hermite(12).unwrap();
        let mut gamma = PI.sqrt();
        for k in 0..12 {
            let q: f64 = r.integrate(|x| x.powi(2 * k));
            assert!((q - gamma).abs() <= 1e-12 * gamma, "k={k}");
            gamma *= k as f64 + 0.5;
        }
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let r = QuadratureRule::gauss_legendre(8, 0.0, 2.0).unwrap();
        assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
        let q: f64 = r.integrate(|x| x.powi(15));
        assert!((q - 2f64.powi(16) / 16.0).abs() < 1e-10);
    }

    #[test]
    fn empty_rule_is_rejected() {
        assert!(QuadratureRule::gauss_hermite(0).is_err());
    }
}
