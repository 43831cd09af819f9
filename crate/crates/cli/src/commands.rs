use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_complex::Complex;
use pbswanson::bicoherent::{
    build_state, convergence_radius, density_peak, eigen_residual, model_convergence_inputs,
};
use pbswanson::eigensystem::{build_family, norm_products, norm_table, Method};
use pbswanson::params::NormalizationReport;
use pbswanson::scalar::c_from_f64;
use pbswanson::verify::{self, Suite, VerifyConfig};
use pbswanson::{derive, Construction, DerivedParams, Flavor, Mp, Preset, Real};
use serde_json::json;

use crate::config::{Format, Precision, RunConfig};
use crate::error::CliError;
use crate::output::{num, write_to, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Series,
    ClosedForm,
    Ode,
    Displacement,
}

impl From<MethodArg> for Construction {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Construction::Series,
            MethodArg::ClosedForm => Construction::ClosedForm,
            MethodArg::Ode => Construction::Ode,
            MethodArg::Displacement => Construction::Displacement,
        }
    }
}

/// x grid of the figure1 output: [-6, 6] in steps of 0.05.
pub fn figure_grid() -> Vec<f64> {
    (-120..=120).map(|i| i as f64 / 20.0).collect()
}

pub fn params(cfg: &RunConfig) -> Result<Report, CliError> {
    let d: DerivedParams<f64> = derive(&cfg.model)?;
    let norm = NormalizationReport::new(&d);
    let conv = convergence_radius(model_convergence_inputs(&d))?;

    let constants = [
        ("omega", d.omega),
        ("lambda", d.lambda),
        ("alpha", d.alpha),
        ("beta", d.beta),
        ("theta0", d.theta0),
        ("Omega", d.big_omega),
        ("gamma", d.gamma),
        ("Theta_plus", d.theta_plus),
        ("Theta_minus", d.theta_minus),
        ("gamma_A", d.gamma_a),
        ("gamma_B", d.gamma_b),
        ("k", d.k),
        ("N_phi", d.n_phi),
        ("N_psi", d.n_psi),
        ("normalization_printed_product", norm.printed_product),
        ("normalization_printed_individual", norm.printed_individual),
        ("normalization_closed_form", norm.closed_form),
        ("rho", conv.rho),
    ];
    let checks = [
        (
            "tanh(2 theta0) - 2 lambda / omega",
            ((2.0 * d.theta0).tanh() - 2.0 * d.lambda / d.omega).abs(),
        ),
        (
            "Theta_plus Theta_minus - 1/2",
            (d.theta_plus * d.theta_minus - 0.5).abs(),
        ),
        (
            "N_phi - closed form",
            (d.n_phi - norm.closed_form).abs() / norm.closed_form,
        ),
    ];

    let mut report = Report::with_header(&["name", "value"]);
    report.meta("degenerate", d.degenerate);
    report.meta(
        "normalization",
        "N_phi = N_psi fixed by <phi_0, psi_0> = 1 via exact moments; printed forms listed for comparison",
    );
    for (name, value) in constants {
        report.row(vec![name.to_string(), num(value)]);
    }
    for (name, value) in checks {
        report.row(vec![format!("check: {name}"), num(value)]);
    }
    report.results = json!({
        "constants": constants.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "degenerate": d.degenerate,
        "normalization": norm,
        "convergence": conv,
        "checks": checks.iter().map(|(k, v)| json!({"name": k, "residual": v})).collect::<Vec<_>>(),
    });
    Ok(report)
}

/// `(n, E_n, ||phi_n||, ||psi_n||, ||phi_n|| ||psi_n||)`.
type SpectrumRow = (usize, f64, f64, f64, f64);

fn spectrum_rows<T: Real>(cfg: &RunConfig) -> Result<Vec<SpectrumRow>, CliError> {
    let d: DerivedParams<T> = derive(&cfg.model)?;
    let n = cfg.n_max;
    let phi = build_family(&d, Flavor::Phi, Method::ClosedForm, n)?;
    let psi = build_family(&d, Flavor::Psi, Method::ClosedForm, n)?;
    let np = norm_table(&phi, n)?.norms;
    let ns = norm_table(&psi, n)?.norms;
    let prods = norm_products(&phi, &psi, n)?;
    let energies = d.spectrum(n);
    Ok((0..=n)
        .map(|k| (k, energies[k].to_f64(), np[k], ns[k], prods[k]))
        .collect())
}

pub fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let rows = match cfg.precision {
        Precision::Standard => spectrum_rows::<f64>(cfg)?,
        Precision::Extended => spectrum_rows::<Mp>(cfg)?,
    };
    let mut report = Report::with_header(&["n", "E_n", "norm_phi", "norm_psi", "norm_product"]);
    let d: DerivedParams<f64> = derive(&cfg.model)?;
    report.meta("Omega", num(d.big_omega));
    report.meta("gamma", num(d.gamma));
    for &(k, e, a, b, p) in &rows {
        report.row(vec![k.to_string(), num(e), num(a), num(b), num(p)]);
    }
    report.results = json!(rows
        .iter()
        .map(|&(k, e, a, b, p)| json!({"n": k, "E_n": e, "norm_phi": a, "norm_psi": b, "norm_product": p}))
        .collect::<Vec<_>>());
    Ok(report)
}

pub struct VerifyOutcome {
    pub report: Report,
    pub passed: bool,
    pub lines: Vec<String>,
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<VerifyOutcome, CliError> {
    let vcfg = VerifyConfig {
        params: cfg.model,
        n_max: cfg.n_max,
        truncation: cfg.truncation,
        radius: cfg.radius,
        seed: cfg.seed,
        z: (cfg.z != (0.0, 0.0)).then_some(cfg.z),
    };
    let result = match cfg.precision {
        Precision::Standard => verify::run::<f64>(&vcfg, suite)?,
        Precision::Extended => verify::run::<Mp>(&vcfg, suite)?,
    };
    let mut lines: Vec<String> = result.notes.clone();
    let mut report = Report::with_header(&["check", "residual", "tolerance", "status"]);
    for c in &result.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        lines.push(format!(
            "{status} {}: residual {:.3e}, tolerance {:.0e}",
            c.name, c.residual, c.tolerance
        ));
        report.row(vec![
            c.name.clone(),
            num(c.residual),
            num(c.tolerance),
            status.to_string(),
        ]);
    }
    for note in &result.notes {
        report.meta("note", note);
    }
    let passed = result.all_passed();
    report.meta("all_passed", passed);
    report.results = json!({ "suite": suite, "all_passed": passed, "checks": result.checks, "notes": result.notes });
    Ok(VerifyOutcome {
        report,
        passed,
        lines,
    })
}

type DensityRows = Vec<[f64; 7]>;

fn bicoherent_rows<T: Real>(
    cfg: &RunConfig,
    method: Construction,
    xs: &[f64],
) -> Result<(DensityRows, [f64; 2]), CliError> {
    let d: DerivedParams<T> = derive(&cfg.model)?;
    let z: Complex<T> = c_from_f64(Complex::new(cfg.z.0, cfg.z.1));
    let phi = build_state(&d, Flavor::Phi, &z, method, cfg.truncation)?;
    let psi = build_state(&d, Flavor::Psi, &z, method, cfg.truncation)?;
    let residuals = [eigen_residual(&d, &phi), eigen_residual(&d, &psi)];
    let rows = xs
        .iter()
        .map(|&x| {
            let a = phi.repr.eval_f64(x);
            let b = psi.repr.eval_f64(x);
            [x, a.norm_sqr(), b.norm_sqr(), a.re, a.im, b.re, b.im]
        })
        .collect();
    Ok((rows, residuals))
}

pub fn bicoherent(cfg: &RunConfig, method: MethodArg) -> Result<Report, CliError> {
    let method = Construction::from(method);
    let xs = figure_grid();
    let (rows, residuals) = match cfg.precision {
        Precision::Standard => bicoherent_rows::<f64>(cfg, method, &xs)?,
        Precision::Extended => bicoherent_rows::<Mp>(cfg, method, &xs)?,
    };
    let header = [
        "x",
        "phi_density",
        "psi_density",
        "phi_re",
        "phi_im",
        "psi_re",
        "psi_im",
    ];
    let mut report = Report::with_header(&header);
    report.meta("method", method.name());
    report.meta("z", format!("{},{}", cfg.z.0, cfg.z.1));
    report.meta("eigen_residual_phi", num(residuals[0]));
    report.meta("eigen_residual_psi", num(residuals[1]));
    for r in &rows {
        report.row(r.iter().map(|&v| num(v)).collect());
    }
    report.results = json!({
        "method": method.name(),
        "eigen_residual": {"phi": residuals[0], "psi": residuals[1]},
        "columns": header,
        "rows": rows,
    });
    Ok(report)
}

fn figure_preset<T: Real>(cfg: &RunConfig, preset: Preset) -> Result<Report, CliError> {
    let d: DerivedParams<T> = derive(&preset.params())?;
    let z: Complex<T> = c_from_f64(Complex::new(cfg.z.0, cfg.z.1));
    let phi = build_state(&d, Flavor::Phi, &z, Construction::ClosedForm, 0)?;
    let psi = build_state(&d, Flavor::Psi, &z, Construction::ClosedForm, 0)?;
    let xs = figure_grid();
    let rows: Vec<[f64; 3]> = xs
        .iter()
        .map(|&x| {
            [
                x,
                phi.repr.eval_f64(x).norm_sqr(),
                psi.repr.eval_f64(x).norm_sqr(),
            ]
        })
        .collect();
    let peaks = [density_peak(&phi, -6.0, 6.0), density_peak(&psi, -6.0, 6.0)];
    let norms = [phi.repr.norm_sqr()?.to_f64(), psi.repr.norm_sqr()?.to_f64()];

    let mut report = Report::with_header(&["x", "phi_density", "psi_density"]);
    report.meta("preset", preset.name());
    report.meta("z", format!("{},{}", cfg.z.0, cfg.z.1));
    report.meta("phi_peak", num(peaks[0]));
    report.meta("psi_peak", num(peaks[1]));
    report.meta("peak_separation", num((peaks[1] - peaks[0]).abs()));
    report.meta("phi_norm_sqr", num(norms[0]));
    report.meta("psi_norm_sqr", num(norms[1]));
    for r in &rows {
        report.row(r.iter().map(|&v| num(v)).collect());
    }
    report.results = json!({
        "preset": preset.name(),
        "peaks": {"phi": peaks[0], "psi": peaks[1], "separation": (peaks[1] - peaks[0]).abs()},
        "norm_sqr": {"phi": norms[0], "psi": norms[1]},
        "columns": ["x", "phi_density", "psi_density"],
        "rows": rows,
    });
    Ok(report)
}

/// Writes one file per preset into `dir`; returns the paths written.
pub fn figure1(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let ext = match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    for preset in Preset::ALL {
        let report = match cfg.precision {
            Precision::Standard => figure_preset::<f64>(cfg, preset)?,
            Precision::Extended => figure_preset::<Mp>(cfg, preset)?,
        };
        let path = dir.join(format!("figure1_{}.{ext}", preset.name()));
        let preset_cfg = RunConfig {
            preset: Some(preset),
            model: preset.params(),
            ..cfg.clone()
        };
        write_to(&preset_cfg, "figure1", &report, Some(&path))?;
        written.push(path);
    }
    Ok(written)
}
