//! Raw model parameters and every constant derived from them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::polygauss::PolyGauss;
use crate::scalar::{re, Real};
use crate::specialfn::Polynomial;

/// Which member of a biorthogonal pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Phi,
    Psi,
}

impl Flavor {
    pub fn other(self) -> Flavor {
        match self {
            Flavor::Phi => Flavor::Psi,
            Flavor::Psi => Flavor::Phi,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Phi => "phi",
            Flavor::Psi => "psi",
        }
    }
}

/// `H = omega b a + lambda (b^2 + a^2)` with `a = c + alpha`, `b = c^dagger + beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ModelParams {
    pub fn new(omega: f64, lambda: f64, alpha: f64, beta: f64) -> Result<Self, ParamError> {
        let p = ModelParams {
            omega,
            lambda,
            alpha,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [
            ("omega", self.omega),
            ("lambda", self.lambda),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { name, value });
            }
        }
        if self.omega <= 0.0 {
            return Err(ParamError::NonPositiveOmega(self.omega));
        }
        if self.lambda <= 0.0 {
            return Err(ParamError::NonPositiveLambda(self.lambda));
        }
        if self.omega <= 2.0 * self.lambda {
            return Err(ParamError::Unbounded {
                omega: self.omega,
                two_lambda: 2.0 * self.lambda,
            });
        }
        Ok(())
    }

    /// `alpha == beta`: then `B = A^dagger` and the model is self-adjoint.
    pub fn is_degenerate(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn with_swapped_shifts(&self) -> Self {
        ModelParams {
            alpha: self.beta,
            beta: self.alpha,
            ..*self
        }
    }
}

/// The four parameter sets plotted for the bi-coherent densities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "fig1-a")]
    Fig1A,
    #[serde(rename = "fig1-b")]
    Fig1B,
    #[serde(rename = "fig1-c")]
    Fig1C,
    #[serde(rename = "fig1-d")]
    Fig1D,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1A, Preset::Fig1B, Preset::Fig1C, Preset::Fig1D];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1A => "fig1-a",
            Preset::Fig1B => "fig1-b",
            Preset::Fig1C => "fig1-c",
            Preset::Fig1D => "fig1-d",
        }
    }

    pub fn beta(self) -> f64 {
        match self {
            Preset::Fig1A => 0.31,
            Preset::Fig1B => 0.35,
            Preset::Fig1C => 0.5,
            Preset::Fig1D => 1.0,
        }
    }

    pub fn params(self) -> ModelParams {
        ModelParams {
            omega: 0.5,
            lambda: 0.1,
            alpha: 0.3,
            beta: self.beta(),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown preset '{s}' (expected fig1-a, fig1-b, fig1-c or fig1-d)")
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedParams<T: Real> {
    pub omega: T,
    pub lambda: T,
    pub alpha: T,
    pub beta: T,
    pub theta0: T,
    pub big_omega: T,
    pub gamma: T,
    pub theta_plus: T,
    pub theta_minus: T,
    pub gamma_a: T,
    pub gamma_b: T,
    pub k: T,
    pub n_phi: T,
    pub n_psi: T,
    pub degenerate: bool,
}

/// Compute every derived constant; normalization is fixed by exact integration
/// so that `<phi_0, psi_0> = 1` with `N_phi = N_psi > 0`.
pub fn derive<T: Real>(p: &ModelParams) -> Result<DerivedParams<T>, ParamError> {
    p.validate()?;
    let omega = T::from_f64(p.omega);
    let lambda = T::from_f64(p.lambda);
    let alpha = T::from_f64(p.alpha);
    let beta = T::from_f64(p.beta);
    let two = T::from_i64(2);
    let half = T::one() / two.clone();

    let theta0 = half.clone() * (two.clone() * lambda.clone() / omega.clone()).atanh();
    let cosh2 = (two.clone() * theta0.clone()).cosh();
    let sinh = theta0.sinh();
    let cosh = theta0.cosh();
    let big_omega = omega.clone() / cosh2.clone();
    let gamma = -(omega.clone() * sinh.clone() * sinh.clone()) / cosh2;
    let inv_sqrt2 = half.sqrt();
    let theta_plus = theta0.exp() * inv_sqrt2.clone();
    let theta_minus = (-theta0.clone()).exp() * inv_sqrt2;
    let gamma_a = alpha.clone() * cosh.clone() + beta.clone() * sinh.clone();
    let gamma_b = beta.clone() * cosh + alpha.clone() * sinh;
    let k = theta_minus.clone() * (gamma_a.clone() + gamma_b.clone());

    let mut d = DerivedParams {
        omega,
        lambda,
        alpha,
        beta,
        theta0,
        big_omega,
        gamma,
        theta_plus,
        theta_minus,
        gamma_a,
        gamma_b,
        k,
        n_phi: T::one(),
        n_psi: T::one(),
        degenerate: p.is_degenerate(),
    };
    let overlap = d
        .vacuum_shape(Flavor::Phi)?
        .inner_product(&d.vacuum_shape(Flavor::Psi)?)
        .map_err(ParamError::from)?;
    let n = (T::one() / overlap.re).sqrt();
    d.n_phi = n.clone();
    d.n_psi = n;
    Ok(d)
}

impl<T: Real> DerivedParams<T> {
    pub fn gamma_of(&self, flavor: Flavor) -> &T {
        match flavor {
            Flavor::Phi => &self.gamma_a,
            Flavor::Psi => &self.gamma_b,
        }
    }

    pub fn normalization(&self, flavor: Flavor) -> &T {
        match flavor {
            Flavor::Phi => &self.n_phi,
            Flavor::Psi => &self.n_psi,
        }
    }

    /// Quadratic exponent coefficient `Theta_+ / (2 Theta_-)` shared by all states.
    pub fn vacuum_quad(&self) -> T {
        self.theta_plus.clone() / (T::from_i64(2) * self.theta_minus.clone())
    }

    /// `exp(-(Theta_+/(2 Theta_-)) x^2 - (gamma/Theta_-) x)` without normalization.
    pub fn vacuum_shape(&self, flavor: Flavor) -> Result<PolyGauss<T>, ParamError> {
        let lin = self.gamma_of(flavor).clone() / self.theta_minus.clone();
        Ok(PolyGauss::new(
            Polynomial::constant(re(T::one())),
            self.vacuum_quad(),
            re(lin),
            Complex::zero(),
        )?)
    }

    /// `E_n = Omega n + gamma` for `n = 0..=n_max`.
    pub fn spectrum(&self, n_max: usize) -> Vec<T> {
        (0..=n_max)
            .map(|n| self.big_omega.clone() * T::from_usize(n) + self.gamma.clone())
            .collect()
    }

    /// Exchange `gamma_A` and `gamma_B` (equivalently `alpha` and `beta`).
    pub fn swap_gammas(&self) -> Self {
        DerivedParams {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            gamma_a: self.gamma_b.clone(),
            gamma_b: self.gamma_a.clone(),
            n_phi: self.n_psi.clone(),
            n_psi: self.n_phi.clone(),
            ..self.clone()
        }
    }

    pub fn to_f64(&self) -> DerivedParams<f64> {
        DerivedParams {
            omega: self.omega.to_f64(),
            lambda: self.lambda.to_f64(),
            alpha: self.alpha.to_f64(),
            beta: self.beta.to_f64(),
            theta0: self.theta0.to_f64(),
            big_omega: self.big_omega.to_f64(),
            gamma: self.gamma.to_f64(),
            theta_plus: self.theta_plus.to_f64(),
            theta_minus: self.theta_minus.to_f64(),
            gamma_a: self.gamma_a.to_f64(),
            gamma_b: self.gamma_b.to_f64(),
            k: self.k.to_f64(),
            n_phi: self.n_phi.to_f64(),
            n_psi: self.n_psi.to_f64(),
            degenerate: self.degenerate,
        }
    }
}

/// The enforced normalization next to the two closed forms printed in the
/// literature for the same quantity. Only `enforced` is used anywhere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizationReport {
    /// `N_phi = N_psi` from `<phi_0, psi_0> = 1`.
    pub enforced: f64,
    /// `N_phi N_psi` implied by `enforced`.
    pub enforced_product: f64,
    /// Printed product form `e^{-k^2/(4 Theta_-)} / ((2 pi)^{1/4} sqrt(Theta_-))`.
    pub printed_product: f64,
    /// Printed individual form `e^{-k^2/Theta_-} / (sqrt(2 pi) Theta_-)`.
    pub printed_individual: f64,
    /// Closed form of `enforced`: `e^{-k^2/(4 Theta_-^2)} / ((2 pi)^{1/4} sqrt(Theta_-))`.
    pub closed_form: f64,
}

impl NormalizationReport {
    pub fn new<T: Real>(d: &DerivedParams<T>) -> Self {
        let d = d.to_f64();
        let tm = d.theta_minus;
        let k2 = d.k * d.k;
        let two_pi = 2.0 * std::f64::consts::PI;
        NormalizationReport {
            enforced: d.n_phi,
            enforced_product: d.n_phi * d.n_psi,
            printed_product: (-k2 / (4.0 * tm)).exp() / (two_pi.powf(0.25) * tm.sqrt()),
            printed_individual: (-k2 / tm).exp() / (two_pi.sqrt() * tm),
            closed_form: (-k2 / (4.0 * tm * tm)).exp() / (two_pi.powf(0.25) * tm.sqrt()),
        }
    }
}
