//! Bi-coherent states `phi(z; x)`, `psi(z; x)` built four independent ways,
//! and the resolution of the identity they produce.

use std::f64::consts::PI;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigensystem::{build_family, EigenFamily, Method};
use crate::error::{ParamError, PolyGaussError};
use crate::operators::{ComplexLadderOp, ModelOperators};
use crate::params::{DerivedParams, Flavor};
use crate::polygauss::PolyGauss;
use crate::scalar::{c_to_f64, cabs, re, Real};
use crate::specialfn::{Polynomial, QuadratureRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Series,
    ClosedForm,
    Ode,
    Displacement,
}

impl Construction {
    pub const ALL: [Construction; 4] = [
        Construction::Series,
        Construction::ClosedForm,
        Construction::Ode,
        Construction::Displacement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Series => "series",
            Construction::ClosedForm => "closed_form",
            Construction::Ode => "ode",
            Construction::Displacement => "displacement",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BiCoherentState<T: Real> {
    pub z: Complex<T>,
    pub flavor: Flavor,
    pub method: Construction,
    pub repr: PolyGauss<T>,
    pub truncation: Option<usize>,
}

impl<T: Real> BiCoherentState<T> {
    pub fn eval(&self, x: &T) -> Complex<T> {
        self.repr.eval(x)
    }

    pub fn modulus_f64(&self, x: f64) -> f64 {
        self.repr.eval_f64(x).norm()
    }
}

/// Phase of the compact closed form. The eigenvalue equation fixes the
/// `x`-dependent phase to `e^{i z_i (x + k)/Theta_-}`; the variant carrying
/// `z_r` there instead is kept only to demonstrate that it fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormPhase {
    Consistent,
    RealPartInPhase,
}

/// `e^{-|z|^2/2} sum_{l <= L} z^l phi_l / sqrt(l!)` over the closed-form family.
pub fn series_state<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    z: &Complex<T>,
    truncation: usize,
) -> Result<BiCoherentState<T>, PolyGaussError> {
    let fam = build_family(d, flavor, Method::ClosedForm, truncation)?;
    Ok(series_state_from_family(&fam, z, truncation))
}

/// Same as [`series_state`] with a prebuilt family of at least `truncation + 1` states.
pub fn series_state_from_family<T: Real>(
    fam: &EigenFamily<T>,
    z: &Complex<T>,
    truncation: usize,
) -> BiCoherentState<T> {
    let mut weight = re(coherent_normalization(&cabs(z)));
    let mut poly = Polynomial::zero();
    for l in 0..=truncation {
        if l > 0 {
            weight = weight * z.clone() * re(T::one() / T::from_usize(l).sqrt());
        }
        poly = &poly + &fam.states[l].poly().scale(&weight);
    }
    BiCoherentState {
        z: z.clone(),
        flavor: fam.flavor,
        method: Construction::Series,
        repr: fam.states[0].with_poly(poly),
        truncation: Some(truncation),
    }
}

/// `e^{-|z|^2/2}`, the normalization for `alpha_k = sqrt(k)`.
pub fn coherent_normalization<T: Real>(r: &T) -> T {
    (-(r.clone() * r.clone()) / T::from_i64(2)).exp()
}

/// Compact Gaussian form of the state (consistent phase).
pub fn closed_form_state<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    z: &Complex<T>,
) -> Result<BiCoherentState<T>, PolyGaussError> {
    closed_form_state_with_phase(d, flavor, z, ClosedFormPhase::Consistent)
}

pub fn closed_form_state_with_phase<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    z: &Complex<T>,
    phase: ClosedFormPhase,
) -> Result<BiCoherentState<T>, PolyGaussError> {
    let tm = d.theta_minus.clone();
    let (zr, zi) = (z.re.clone(), z.im.clone());
    let phase_coef = match phase {
        ClosedFormPhase::Consistent => zi.clone(),
        ClosedFormPhase::RealPartInPhase => zr.clone(),
    };
    // exp(-i zr zi + i p (x+k)/Tm - k^2/(4 Tm^2) - zr^2 - q x^2 - (g/Tm) x + (zr/Tm)(x+k))
    let lin = Complex::new(
        (d.gamma_of(flavor).clone() - zr.clone()) / tm.clone(),
        -phase_coef.clone() / tm.clone(),
    );
    let k = d.k.clone();
    let const_term = Complex::new(
        k.clone() * k.clone() / (T::from_i64(4) * tm.clone() * tm.clone())
            + zr.clone() * zr.clone()
            - zr.clone() * k.clone() / tm.clone(),
        zr * zi - phase_coef * k / tm.clone(),
    );
    let prefactor = T::one() / ((T::from_i64(2) * T::pi()).sqrt().sqrt() * tm.sqrt());
    let repr = PolyGauss::new(
        Polynomial::constant(re(prefactor)),
        d.vacuum_quad(),
        lin,
        const_term,
    )?;
    Ok(BiCoherentState {
        z: z.clone(),
        flavor,
        method: Construction::ClosedForm,
        repr,
        truncation: None,
    })
}

/// Solution `K exp{((z - gamma) x - Theta_+ x^2 / 2) / Theta_-}` of the
/// first-order eigenvalue equation, with the real constant
/// `K = e^{-z_r^2 + z_r k/Theta_- - k^2/(4 Theta_-^2)} / ((2 pi)^{1/4} sqrt(Theta_-))`.
pub fn ode_state<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    z: &Complex<T>,
) -> Result<BiCoherentState<T>, PolyGaussError> {
    let tm = d.theta_minus.clone();
    let lin = (re(d.gamma_of(flavor).clone()) - z.clone()) * re(T::one() / tm.clone());
    let zr = z.re.clone();
    let k = d.k.clone();
    let log_k = -(zr.clone() * zr.clone()) + zr * k.clone() / tm.clone()
        - k.clone() * k / (T::from_i64(4) * tm.clone() * tm.clone());
    let prefactor = T::one() / ((T::from_i64(2) * T::pi()).sqrt().sqrt() * tm.sqrt());
    let repr = PolyGauss::new(
        Polynomial::constant(re(prefactor)),
        d.vacuum_quad(),
        lin,
        re(-log_k),
    )?;
    Ok(BiCoherentState {
        z: z.clone(),
        flavor,
        method: Construction::Ode,
        repr,
        truncation: None,
    })
}

/// `sum_{l <= L} X^l v_0 / l!` with `X = -conj(z) A + z B` on `phi_0`, or
/// `X = -conj(z) B^dagger + z A^dagger` on `psi_0`.
pub fn displacement_state<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    z: &Complex<T>,
    truncation: usize,
) -> Result<BiCoherentState<T>, PolyGaussError> {
    let ops = ModelOperators::new(d);
    let minus_conj = -z.conj();
    let x_op = match flavor {
        Flavor::Phi => {
            ComplexLadderOp::combination(&[(minus_conj, &ops.lower), (z.clone(), &ops.raise)])
        }
        Flavor::Psi => ComplexLadderOp::combination(&[
            (minus_conj, &ops.raise_dag),
            (z.clone(), &ops.lower_dag),
        ]),
    };
    let vacuum = build_family(d, flavor, Method::ClosedForm, 0)?
        .states
        .remove(0);
    let mut term = vacuum.clone();
    let mut poly = vacuum.poly().clone();
    for l in 1..=truncation {
        term = x_op.apply(&term).scale(&re(T::one() / T::from_usize(l)));
        poly = &poly + term.poly();
    }
    Ok(BiCoherentState {
        z: z.clone(),
        flavor,
        method: Construction::Displacement,
        repr: vacuum.with_poly(poly),
        truncation: Some(truncation),
    })
}

pub fn build_state<T: Real>(
    d: &DerivedParams<T>,
    flavor: Flavor,
    z: &Complex<T>,
    method: Construction,
    truncation: usize,
) -> Result<BiCoherentState<T>, PolyGaussError> {
    match method {
        Construction::Series => series_state(d, flavor, z, truncation),
        Construction::ClosedForm => closed_form_state(d, flavor, z),
        Construction::Ode => ode_state(d, flavor, z),
        Construction::Displacement => displacement_state(d, flavor, z, truncation),
    }
}

/// `n` equally spaced points on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// `sup |(A - z) state|` (phi) or `sup |(B^dagger - z) state|` (psi) on 41
/// points of `[-5, 5]`, relative to `sup |state|` on the same points.
pub fn eigen_residual<T: Real>(d: &DerivedParams<T>, state: &BiCoherentState<T>) -> f64 {
    let ops = ModelOperators::new(d);
    let op = match state.flavor {
        Flavor::Phi => &ops.lower,
        Flavor::Psi => &ops.raise_dag,
    };
    let res = op.apply_shifted(&state.repr, &state.z);
    let xs = uniform_grid(-5.0, 5.0, 41);
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for x in xs {
        num = num.max(res.eval_f64(x).norm());
        den = den.max(state.repr.eval_f64(x).norm());
    }
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Pointwise comparison of `|a|` and `C |b|` with `C` fitted by least squares.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModulusComparison {
    pub fitted_constant: f64,
    /// `max_x | |a| - C |b| | / (C |b|)`.
    pub max_relative_deviation: f64,
}

pub fn compare_moduli<T: Real>(
    a: &BiCoherentState<T>,
    b: &BiCoherentState<T>,
    xs: &[f64],
) -> ModulusComparison {
    let ma: Vec<f64> = xs.iter().map(|&x| modulus(&a.repr, x)).collect();
    let mb: Vec<f64> = xs.iter().map(|&x| modulus(&b.repr, x)).collect();
    let num: f64 = ma.iter().zip(&mb).map(|(p, q)| p * q).sum();
    let den: f64 = mb.iter().map(|q| q * q).sum();
    let c = num / den;
    let dev = ma
        .iter()
        .zip(&mb)
        .map(|(p, q)| ((p - c * q) / (c * q)).abs())
        .fold(0.0, f64::max);
    ModulusComparison {
        fitted_constant: c,
        max_relative_deviation: dev,
    }
}

fn modulus<T: Real>(f: &PolyGauss<T>, x: f64) -> f64 {
    cabs(&f.eval(&T::from_f64(x))).to_f64()
}

/// Partial sums of `(sum_k |z|^{2k} / (alpha_k!)^2)^{-1/2}` with `alpha_k = sqrt(k)`.
pub fn normalization_series(r: f64, max_terms: usize) -> f64 {
    let r2 = r * r;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..max_terms {
        term *= r2 / k as f64;
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
    }
    sum.powf(-0.5)
}

/// Large-`n` behaviour of a sequence `M_n`, enough to know `lim M_n / M_{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SequenceDescriptor {
    /// `M_n = n^{-p}`: ratio limit 1.
    PowerLaw { exponent: f64 },
    /// `M_n = c^{-n}`: ratio limit `c`.
    Geometric { ratio: f64 },
    /// `M_n / M_{n+1}` diverges, as for `M_n = 1 / n!`.
    SuperGeometric,
}

impl SequenceDescriptor {
    pub fn ratio_limit(&self) -> f64 {
        match *self {
            SequenceDescriptor::PowerLaw { .. } => 1.0,
            SequenceDescriptor::Geometric { ratio } => ratio,
            SequenceDescriptor::SuperGeometric => f64::INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceInputs {
    pub a_phi: f64,
    pub a_psi: f64,
    pub r_phi: f64,
    pub r_psi: f64,
    pub m_phi: SequenceDescriptor,
    pub m_psi: SequenceDescriptor,
    /// `lim alpha_n`, possibly infinite.
    pub alpha_bar: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceSpec {
    pub inputs: ConvergenceInputs,
    pub m_phi_limit: f64,
    pub m_psi_limit: f64,
    /// `alpha_bar min(1, M(phi)/r_phi, M(psi)/r_psi)`; `f64::INFINITY` when unbounded.
    pub rho: f64,
}

pub fn convergence_radius(inputs: ConvergenceInputs) -> Result<ConvergenceSpec, ParamError> {
    for (name, value) in [
        ("A_phi", inputs.a_phi),
        ("A_psi", inputs.a_psi),
        ("r_phi", inputs.r_phi),
        ("r_psi", inputs.r_psi),
        ("alpha_bar", inputs.alpha_bar),
    ] {
        if value.is_nan() || value <= 0.0 {
            return Err(ParamError::NonPositiveConstant { name, value });
        }
    }
    let m_phi = inputs.m_phi.ratio_limit();
    let m_psi = inputs.m_psi.ratio_limit();
    for (name, value) in [("M(phi)", m_phi), ("M(psi)", m_psi)] {
        if value.is_nan() || value <= 0.0 {
            return Err(ParamError::NonPositiveConstant { name, value });
        }
    }
    let factor = 1.0f64.min(m_phi / inputs.r_phi).min(m_psi / inputs.r_psi);
    Ok(ConvergenceSpec {
        inputs,
        m_phi_limit: m_phi,
        m_psi_limit: m_psi,
        rho: inputs.alpha_bar * factor,
    })
}

/// Growth data of the model's eigenfamilies: `||phi_n|| <= A r^n n^{-1/8}`
/// with `r = e^{|gamma_A - gamma_B|}`, and `alpha_n = sqrt(n)`.
pub fn model_convergence_inputs<T: Real>(d: &DerivedParams<T>) -> ConvergenceInputs {
    let ga = d.gamma_a.to_f64();
    let gb = d.gamma_b.to_f64();
    let delta = (ga - gb).abs();
    let c = |g1: f64, g2: f64| {
        if delta == 0.0 {
            1.0
        } else {
            (0.5 * (3.0 * g1 * g1 - g2)).exp() / (2.0 * (PI * delta).sqrt()).sqrt()
        }
    };
    ConvergenceInputs {
        a_phi: c(ga, gb),
        a_psi: c(gb, ga),
        r_phi: delta.exp(),
        r_psi: delta.exp(),
        m_phi: SequenceDescriptor::PowerLaw { exponent: 0.125 },
        m_psi: SequenceDescriptor::PowerLaw { exponent: 0.125 },
        alpha_bar: f64::INFINITY,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentCheck {
    pub k: usize,
    /// `k! / (2 pi)`.
    pub expected: f64,
    /// `Gamma(k + 1) / (2 pi)` from the substitution `u = r^2`.
    pub gamma_reduction: f64,
    /// Gauss-Legendre on `[0, U]` after the substitution `u = r^2`.
    pub quadrature: f64,
}

/// `int_0^inf (1/pi) r e^{-r^2} r^{2k} dr = k! / (2 pi)` for `k <= k_max`.
pub fn moment_measure_check(k_max: usize) -> Vec<MomentCheck> {
    let upper = (4.0 * k_max as f64 + 80.0).max(80.0);
    let rule = QuadratureRule::gauss_legendre(200, 0.0, upper).expect("non-empty rule");
    let mut factorial = 1.0f64;
    (0..=k_max)
        .map(|k| {
            if k > 0 {
                factorial *= k as f64;
            }
            // int_0^inf r^{2k+1} e^{-r^2} dr = (1/2) int_0^inf u^k e^{-u} du = Gamma(k+1)/2
            let gamma = gamma_integer(k + 1);
            let quad: f64 = rule.integrate(|u| u.powi(k as i32) * (-u).exp());
            MomentCheck {
                k,
                expected: factorial / (2.0 * PI),
                gamma_reduction: gamma / (2.0 * PI),
                quadrature: quad / (2.0 * PI),
            }
        })
        .collect()
}

/// `Gamma(n)` for positive integers via `Gamma(n + 1) = n Gamma(n)`, `Gamma(1) = 1`.
fn gamma_integer(n: usize) -> f64 {
    (1..n).fold(1.0, |acc, j| acc * j as f64)
}

/// Tensor polar grid: Gauss-Legendre in `r` on `[0, R]`, trapezoid in `theta`.
#[derive(Clone, Debug)]
pub struct DiskQuadrature {
    pub radius: f64,
    pub radial: QuadratureRule,
    pub angular_count: usize,
}

impl DiskQuadrature {
    pub fn new(
        radius: f64,
        radial_count: usize,
        angular_count: usize,
    ) -> Result<Self, crate::error::SpecialFnError> {
        Ok(DiskQuadrature {
            radius,
            radial: QuadratureRule::gauss_legendre(radial_count, 0.0, radius)?,
            angular_count,
        })
    }

    /// Nodes `z` with weights for the measure `(1/pi) r dr dtheta`.
    pub fn nodes(&self) -> Vec<(Complex<f64>, f64)> {
        let dtheta = 2.0 * PI / self.angular_count as f64;
        let mut out = Vec::with_capacity(self.radial.len() * self.angular_count);
        for (&r, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
            for j in 0..self.angular_count {
                let theta = j as f64 * dtheta;
                out.push((Complex::from_polar(r, theta), w * r * dtheta / PI));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityOrdering {
    /// `<f, psi(z)> <phi(z), g>`
    PsiFirst,
    /// `<f, phi(z)> <psi(z), g>`
    PhiFirst,
}

/// `int_{|z| <= R} <f, .(z)> <.(z), g> (1/pi) r dr dtheta` over closed-form
/// states. Node values are computed in parallel and summed in node order.
pub fn resolution_of_identity<T: Real>(
    d: &DerivedParams<T>,
    f: &PolyGauss<T>,
    g: &PolyGauss<T>,
    grid: &DiskQuadrature,
    ordering: IdentityOrdering,
) -> Result<Complex<f64>, PolyGaussError> {
    let (left, right) = match ordering {
        IdentityOrdering::PsiFirst => (Flavor::Psi, Flavor::Phi),
        IdentityOrdering::PhiFirst => (Flavor::Phi, Flavor::Psi),
    };
    let values: Vec<Complex<f64>> = grid
        .nodes()
        .par_iter()
        .map(|&(z, w)| {
            let zt = Complex::new(T::from_f64(z.re), T::from_f64(z.im));
            let sl = closed_form_state(d, left, &zt)?;
            let sr = closed_form_state(d, right, &zt)?;
            let v = f.inner_product(&sl.repr)? * sr.repr.inner_product(g)?;
            Ok(c_to_f64(&v) * w)
        })
        .collect::<Result<_, PolyGaussError>>()?;
    Ok(values.into_iter().fold(Complex::zero(), |acc, v| acc + v))
}

/// Maximum of a smooth unimodal-near-peak function: grid scan, then golden section.
pub fn locate_maximum(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> f64 {
    let xs = uniform_grid(lo, hi, samples);
    let step = (hi - lo) / (samples - 1) as f64;
    let best = xs
        .iter()
        .copied()
        .max_by(|a, b| f(*a).total_cmp(&f(*b)))
        .expect("non-empty grid");
    let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut e = a + inv_phi * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    while b - a > 1e-12 {
        if fc > fe {
            b = e;
            e = c;
            fe = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + inv_phi * (b - a);
            fe = f(e);
        }
    }
    0.5 * (a + b)
}

/// `x` of the maximum of `|state|^2`, located numerically on `[lo, hi]`.
pub fn density_peak<T: Real>(state: &BiCoherentState<T>, lo: f64, hi: f64) -> f64 {
    locate_maximum(|x| state.repr.eval_f64(x).norm_sqr(), lo, hi, 2001)
}

/// Unit-norm `exp(-q x^2)`.
pub fn normalized_gaussian<T: Real>(quad: T) -> Result<PolyGauss<T>, PolyGaussError> {
    let g = crate::polygauss::gaussian(quad)?;
    let n = g.norm()?;
    Ok(g.scale(&re(T::one() / n)))
}

/// Convenience: `<closed_form(phi, z), closed_form(psi, z)>` and the ODE analogue.
pub fn pair_overlap<T: Real>(
    d: &DerivedParams<T>,
    z: &Complex<T>,
    method: Construction,
    truncation: usize,
) -> Result<Complex<T>, PolyGaussError> {
    let a = build_state(d, Flavor::Phi, z, method, truncation)?;
    let b = build_state(d, Flavor::Psi, z, method, truncation)?;
    a.repr.inner_product(&b.repr)
}
