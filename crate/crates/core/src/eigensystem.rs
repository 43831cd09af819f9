//! The eigenfamilies `{phi_n}` of `N = B A` and `{psi_n}` of `N^dagger`, built
//! two independent ways, and the checks run on them.

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::PolyGaussError;
use crate::operators::ModelOperators;
use crate::params::{DerivedParams, Flavor};
use crate::polygauss::PolyGauss;
use crate::scalar::{cabs, re, Real};
use crate::specialfn::{hermite, laguerre_eval, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `pi_n` / `sigma_n` recursion driven by the `(alpha, beta)` form of `(A, B)`.
    Recursion,
    /// Scaled Hermite polynomials in `(x + k) / (sqrt(2) Theta_-)`.
    ClosedForm,
}

#[derive(Clone, Debug)]
pub struct EigenFamily<T: Real> {
    pub states: Vec<PolyGauss<T>>,
    pub flavor: Flavor,
    pub method: Method,
    pub params: DerivedParams<T>,
}

impl<T: Real> EigenFamily<T> {
    pub fn n_max(&self) -> usize {
        self.states.len() - 1
    }

    pub fn state(&self, n: usize) -> &PolyGauss<T> {
        &self.states[n]
    }
}

pub fn build_family<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    method: Method,
    n_max: usize,
) -> Result<EigenFamily<T>, PolyGaussError> {
    let states = match method {
        Method::Recursion => recursion_states(d, flavor, n_max)?,
        Method::ClosedForm => closed_form_states(d, flavor, n_max)?,
    };
    Ok(EigenFamily {
        states,
        flavor,
        method,
        params: d.clone(),
    })
}

fn recursion_states<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    n_max: usize,
) -> Result<Vec<PolyGauss<T>>, PolyGaussError> {
    let form = ModelOperators::new(d).pb_form();
    let (quad, lin) = match flavor {
        Flavor::Phi => form.phi_vacuum_exponent(),
        Flavor::Psi => form.psi_vacuum_exponent(),
    };
    let norm = d.normalization(flavor).clone();
    let vacuum = PolyGauss::new(
        Polynomial::constant(re(norm)),
        quad,
        re(lin),
        Complex::zero(),
    )?;
    let mut states = Vec::with_capacity(n_max + 1);
    let mut poly = vacuum.poly().clone();
    states.push(vacuum.clone());
    for n in 1..=n_max {
        // dividing by sqrt(n) at every step accumulates the 1/sqrt(n!) factor
        let stepped = match flavor {
            Flavor::Phi => form.pi_step(&poly),
            Flavor::Psi => form.sigma_step(&poly),
        };
        poly = stepped.scale_real(&(T::one() / T::from_usize(n).sqrt()));
        states.push(vacuum.with_poly(poly.clone()));
    }
    Ok(states)
}

fn closed_form_states<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    n_max: usize,
) -> Result<Vec<PolyGauss<T>>, PolyGaussError> {
    let vacuum = d
        .vacuum_shape(flavor)
        .map_err(|_| PolyGaussError::NotSquareIntegrable {
            quad: d.vacuum_quad().to_f64(),
        })?;
    let arg_scale = T::one() / (T::from_i64(2).sqrt() * d.theta_minus.clone());
    let arg_shift = d.k.clone() * arg_scale.clone();
    let mut prefactor = d.normalization(flavor).clone();
    let mut states = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            prefactor = prefactor / (T::from_usize(2 * n)).sqrt();
        }
        let h = hermite::<T>(n).compose_affine(&re(arg_scale.clone()), &re(arg_shift.clone()));
        states.push(vacuum.with_poly(h.scale_real(&prefactor)));
    }
    Ok(states)
}

/// `G[n][m] = <a_n, b_m>` by exact moments, rows computed in parallel.
pub fn gram_matrix<T: Real>(
    a: &EigenFamily<T>,
    b: &EigenFamily<T>,
) -> Result<Vec<Vec<Complex<T>>>, PolyGaussError> {
    a.states
        .par_iter()
        .map(|f| b.states.iter().map(|g| f.inner_product(g)).collect())
        .collect()
}

/// `max_{n,m} |G[n][m] - delta_{nm}|`.
pub fn identity_deviation<T: Real>(gram: &[Vec<Complex<T>>]) -> f64 {
    let mut worst = 0.0f64;
    for (n, row) in gram.iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            let target = if n == m {
                Complex::one()
            } else {
                Complex::zero()
            };
            worst = worst.max(cabs(&(v.clone() - target)).to_f64());
        }
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct NormTable {
    /// `||phi_n||`, exact.
    pub norms: Vec<f64>,
    /// `||phi_n||^2 / ||phi_0||^2`.
    pub ratios: Vec<f64>,
    /// Candidate closed form `L_n(-(gamma_B - gamma_A)^2)` for the ratio.
    pub laguerre: Vec<f64>,
}

impl NormTable {
    /// Largest relative gap between `ratios` and `laguerre`.
    pub fn max_ratio_discrepancy(&self) -> f64 {
        self.ratios
            .iter()
            .zip(&self.laguerre)
            .map(|(r, l)| ((r - l) / l).abs())
            .fold(0.0, f64::max)
    }
}

pub fn norm_table<T: Real>(
    fam: &EigenFamily<T>,
    n_max: usize,
) -> Result<NormTable, PolyGaussError> {
    let states = &fam.states[..=n_max.min(fam.n_max())];
    let sq: Vec<T> = states
        .par_iter()
        .map(|s| s.norm_sqr())
        .collect::<Result<_, _>>()?;
    let d = &fam.params;
    let delta = d.gamma_b.clone() - d.gamma_a.clone();
    let x = -(delta.clone() * delta);
    Ok(NormTable {
        norms: sq.iter().map(|v| v.sqrt().to_f64()).collect(),
        ratios: sq
            .iter()
            .map(|v| (v.clone() / sq[0].clone()).to_f64())
            .collect(),
        laguerre: (0..sq.len())
            .map(|n| laguerre_eval(n, &x).to_f64())
            .collect(),
    })
}

/// `||phi_n|| ||psi_n||` for `n = 0..=n_max`.
pub fn norm_products<T: Real>(
    phi: &EigenFamily<T>,
    psi: &EigenFamily<T>,
    n_max: usize,
) -> Result<Vec<f64>, PolyGaussError> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| Ok((phi.states[n].norm()? * psi.states[n].norm()?).to_f64()))
        .collect()
}

/// Least-squares slope of `ln ||state_n||` against `sqrt(n)` over `n_list`.
pub fn growth_fit<T: Real>(fam: &EigenFamily<T>, n_list: &[usize]) -> Result<f64, PolyGaussError> {
    let logs: Vec<f64> = n_list
        .par_iter()
        .map(|&n| Ok(fam.states[n].norm_sqr()?.ln().to_f64() / 2.0))
        .collect::<Result<_, PolyGaussError>>()?;
    let xs: Vec<f64> = n_list.iter().map(|&n| (n as f64).sqrt()).collect();
    Ok(least_squares_slope(&xs, &logs))
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Cumulative partial sums of both quasi-basis expansions of `<f, g>`.
#[derive(Clone, Debug)]
pub struct QuasiBasisSums<T: Real> {
    /// `sum_{n <= N} <f, phi_n> <psi_n, g>` for `N = 0..`.
    pub forward: Vec<Complex<T>>,
    /// `sum_{n <= N} <f, psi_n> <phi_n, g>`.
    pub mirrored: Vec<Complex<T>>,
}

pub fn quasi_basis_sums<T: Real>(
    f: &PolyGauss<T>,
    g: &PolyGauss<T>,
    phi: &EigenFamily<T>,
    psi: &EigenFamily<T>,
    n_max: usize,
) -> Result<QuasiBasisSums<T>, PolyGaussError> {
    let terms: Vec<(Complex<T>, Complex<T>)> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let forward = f.inner_product(&phi.states[n])? * psi.states[n].inner_product(g)?;
            let mirrored = f.inner_product(&psi.states[n])? * phi.states[n].inner_product(g)?;
            Ok((forward, mirrored))
        })
        .collect::<Result<_, PolyGaussError>>()?;
    let mut out = QuasiBasisSums {
        forward: Vec::with_capacity(terms.len()),
        mirrored: Vec::with_capacity(terms.len()),
    };
    let (mut sf, mut sm) = (Complex::<T>::zero(), Complex::<T>::zero());
    for (tf, tm) in terms {
        sf = sf + tf;
        sm = sm + tm;
        out.forward.push(sf.clone());
        out.mirrored.push(sm.clone());
    }
    Ok(out)
}

/// `(forward, mirrored)` partial sums up to `N`.
pub fn quasi_basis_partial_sum<T: Real>(
    f: &PolyGauss<T>,
    g: &PolyGauss<T>,
    phi: &EigenFamily<T>,
    psi: &EigenFamily<T>,
    n: usize,
) -> Result<(Complex<T>, Complex<T>), PolyGaussError> {
    let s = quasi_basis_sums(f, g, phi, psi, n)?;
    Ok((s.forward[n].clone(), s.mirrored[n].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive, ModelParams, Preset};
    use crate::scalar::Mp;
    use approx::assert_relative_eq;

    fn fam(p: &ModelParams, flavor: Flavor, method: Method, n: usize) -> EigenFamily<f64> {
        build_family(&derive(p).unwrap(), flavor, method, n).unwrap()
    }

    #[test]
    fn degrees_and_shared_exponent() {
        let f = fam(&Preset::Fig1B.params(), Flavor::Phi, Method::ClosedForm, 12);
        for (n, s) in f.states.iter().enumerate() {
            assert_eq!(s.poly().degree(), Some(n));
            assert!(s.same_exponent(&f.states[0]));
        }
    }

    #[test]
    fn vacuum_matches_shape() {
        let d: DerivedParams<f64> = derive(&Preset::Fig1A.params()).unwrap();
        for method in [Method::Recursion, Method::ClosedForm] {
            let f = build_family(&d, Flavor::Phi, method, 0).unwrap();
            let shape = d.vacuum_shape(Flavor::Phi).unwrap().scale(&re(d.n_phi));
            assert!((f.states[0].eval(&0.37) - shape.eval(&0.37)).norm() < 1e-15);
        }
    }

    #[test]
    fn recursion_matches_closed_form_at_12() {
        let p = Preset::Fig1C.params();
        for flavor in [Flavor::Phi, Flavor::Psi] {
            let r = fam(&p, flavor, Method::Recursion, 12);
            let c = fam(&p, flavor, Method::ClosedForm, 12);
            assert!(c.states[12].poly().relative_distance(r.states[12].poly()) < 1e-10);
            assert!(
                c.states[12].same_exponent(&r.states[12]) || {
                    let (a, b) = (&c.states[12], &r.states[12]);
                    (a.quad() - b.quad()).abs() < 1e-15 && (a.lin() - b.lin()).norm() < 1e-15
                }
            );
        }
    }

    #[test]
    fn hermite_argument_identity() {
        let d: DerivedParams<f64> = derive(&Preset::Fig1D.params()).unwrap();
        let x = 0.8;
        let lhs = (x + d.k) / (2f64.sqrt() * d.theta_minus);
        assert_relative_eq!(lhs, d.theta0.exp() * (x + d.k), max_relative = 1e-14);
    }

    #[test]
    fn swapped_phi_is_psi() {
        let d: DerivedParams<f64> = derive(&Preset::Fig1C.params()).unwrap();
        let psi = build_family(&d, Flavor::Psi, Method::ClosedForm, 10).unwrap();
        let swapped = build_family(&d.swap_gammas(), Flavor::Phi, Method::ClosedForm, 10).unwrap();
        for (a, b) in psi.states.iter().zip(&swapped.states) {
            assert!(a.poly().relative_distance(b.poly()) < 1e-14);
            assert!((a.lin() - b.lin()).norm() < 1e-15);
        }
    }

    #[test]
    fn small_gram_in_f64() {
        let d: DerivedParams<f64> = derive(&Preset::Fig1B.params()).unwrap();
        let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, 8).unwrap();
        let psi = build_family(&d, Flavor::Psi, Method::ClosedForm, 8).unwrap();
        assert!(identity_deviation(&gram_matrix(&phi, &psi).unwrap()) < 1e-10);
    }

    #[test]
    fn ladder_relations_mp() {
        let d: DerivedParams<Mp> = derive(&Preset::Fig1D.params()).unwrap();
        let ops = ModelOperators::new(&d);
        let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, 26).unwrap();
        let psi = build_family(&d, Flavor::Psi, Method::ClosedForm, 26).unwrap();
        for n in 0..=25 {
            let sq = Mp::from_usize(n).sqrt();
            let sq1 = Mp::from_usize(n + 1).sqrt();
            let up = ops.raise.apply(&phi.states[n]);
            assert!(
                phi.states[n + 1]
                    .scale(&re(sq1.clone()))
                    .poly()
                    .relative_distance(up.poly())
                    < 1e-11
            );
            let up = ops.lower_dag.apply(&psi.states[n]);
            assert!(
                psi.states[n + 1]
                    .scale(&re(sq1))
                    .poly()
                    .relative_distance(up.poly())
                    < 1e-11
            );
            let nf = re(Mp::from_usize(n));
            let num = ops.number(&phi.states[n]);
            assert!(
                phi.states[n]
                    .scale(&nf)
                    .poly()
                    .relative_distance(num.poly())
                    < 1e-11
                    || n == 0
            );
            let num = ops.number_dag(&psi.states[n]);
            assert!(
                psi.states[n]
                    .scale(&nf)
                    .poly()
                    .relative_distance(num.poly())
                    < 1e-11
                    || n == 0
            );
            if n > 0 {
                let down = ops.lower.apply(&phi.states[n]);
                assert!(
                    phi.states[n - 1]
                        .scale(&re(sq.clone()))
                        .poly()
                        .relative_distance(down.poly())
                        < 1e-11
                );
                let down = ops.raise_dag.apply(&psi.states[n]);
                assert!(
                    psi.states[n - 1]
                        .scale(&re(sq))
                        .poly()
                        .relative_distance(down.poly())
                        < 1e-11
                );
            }
        }
    }

    #[test]
    fn norm_ratio_is_laguerre() {
        let d: DerivedParams<Mp> = derive(&Preset::Fig1A.params()).unwrap();
        let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, 20).unwrap();
        let t = norm_table(&phi, 20).unwrap();
        assert_eq!(t.ratios[0], 1.0);
        assert!(
            t.max_ratio_discrepancy() < 1e-12,
            "{}",
            t.max_ratio_discrepancy()
        );
        assert_relative_eq!(
            t.norms[0] * t.norms[0],
            0.993_951_101_381_837_2,
            max_relative = 1e-13
        );
    }

    #[test]
    fn degenerate_family_is_orthonormal() {
        let p = ModelParams::new(0.5, 0.1, 0.3, 0.3).unwrap();
        let d: DerivedParams<Mp> = derive(&p).unwrap();
        let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, 16).unwrap();
        assert!(identity_deviation(&gram_matrix(&phi, &phi).unwrap()) < 1e-30);
        let slope = growth_fit(&phi, &[4, 9, 16]).unwrap();
        assert!(slope.abs() < 1e-12);
        let f = phi.states[0].clone();
        let (fwd, _) = quasi_basis_partial_sum(&f, &f, &phi, &phi, 0).unwrap();
        assert!((fwd.re - Mp::one()).abs().to_f64() < 1e-30);
    }

    #[test]
    fn slope_formula() {
        assert_relative_eq!(least_squares_slope(&[1.0, 2.0, 3.0], &[2.0, 4.5, 7.0]), 2.5);
    }
}
