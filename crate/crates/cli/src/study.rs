//! Study runners: convergence sweeps, quadrature studies, PC statistics,
//! coefficient dumps and grid evaluation, all emitting deterministic CSV
//! (17 significant digits, fixed column order, `#`-prefixed header
//! comments sufficient to rerun).

use crate::config::{MethodSel, RuleSel, StudySpec};
use specabs_core::approx::{
    self, cheb_interp_1d, galerkin_coeffs, linf_rel_error, padua_interp, tensor_interp, ErrorRecord,
};
use specabs_core::oracle::oracle_series;
use specabs_core::pce;
use specabs_core::polybasis::{cheb_to_leg, CoefficientSet, DegreeNorm, Family, GradedBasis};
use specabs_core::problems::{benchmark_field, ScalarField};
use specabs_core::quadrature::{
    clenshaw_curtis, gauss_legendre, integrate, padua_cubature, simpson_rule, tensor_cc_cubature,
    Rule,
};
use specabs_core::{Error, Result};
use std::fmt::Write as _;
use std::time::Instant;

/// Desk-scale caps for 2-D reference rules.
const REFERENCE_PADUA_CAP: u32 = 199;
const REFERENCE_TENSOR_CAP: u32 = 141;
/// Default floor for 2-D Galerkin rule sizes (rule size = max(P_d, 64)).
const GALERKIN_2D_FLOOR: u32 = 64;

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV assembly buffer: header comments, one column row, data rows.
pub struct Csv {
    text: String,
}

impl Csv {
    fn new(spec: &StudySpec, extra_meta: &[(String, String)]) -> Self {
        let mut text = String::from("# schema=1\n");
        for (k, v) in spec.echo() {
            let _ = writeln!(text, "# {k}={v}");
        }
        for (k, v) in extra_meta {
            let _ = writeln!(text, "# {k}={v}");
        }
        Csv { text }
    }

    fn comment(&mut self, msg: &str) {
        let _ = writeln!(self.text, "# {msg}");
    }

    fn columns(&mut self, cols: &[&str]) {
        let _ = writeln!(self.text, "{}", cols.join(","));
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn into_text(self) -> String {
        self.text
    }
}

/// Resolves the Galerkin rule for a build of degree `pd` following the
/// decoupling advice defaults: Gauss(4P) in 1-D, Padua m_p = max(P_d, 64)
/// for total degree and tensor m_c = max(P_d, 64) for maximal degree.
fn galerkin_rule(spec: &StudySpec, pd: u32) -> Result<Rule> {
    let kind = spec
        .rule
        .unwrap_or(match (spec.problem.dimension(), spec.basis_norm) {
            (1, _) => RuleSel::Gauss,
            (2, DegreeNorm::Total) => RuleSel::Padua,
            (2, DegreeNorm::Maximal) => RuleSel::Tensor,
            _ => unreachable!("benchmarks are 1-D or 2-D"),
        });
    let size = spec.rule_size.unwrap_or(match kind {
        RuleSel::Padua | RuleSel::Tensor => pd.max(GALERKIN_2D_FLOOR),
        _ => (4 * pd).max(1),
    });
    build_rule(kind, size)
}

fn build_rule(kind: RuleSel, size: u32) -> Result<Rule> {
    match kind {
        RuleSel::Trapezoid => specabs_core::quadrature::trapezoid_rule(size),
        RuleSel::Simpson => simpson_rule(size),
        RuleSel::ClenshawCurtis => clenshaw_curtis(size),
        RuleSel::Gauss => Ok(gauss_legendre(size)),
        RuleSel::Padua => padua_cubature(size),
        RuleSel::Tensor => tensor_cc_cubature(size),
    }
}

/// Builds the approximation of degree `pd` for the configured problem and method.
fn build_coeffs(
    spec: &StudySpec,
    field: &ScalarField,
    pd: u32,
    warnings: &mut Vec<String>,
) -> Result<CoefficientSet> {
    match spec.method {
        MethodSel::Oracle => Ok(oracle_series(spec.problem, pd)?.to_coefficient_set()),
        MethodSel::Collocation => match (spec.problem.dimension(), spec.basis_norm) {
            (1, _) => cheb_interp_1d(field, pd),
            (2, DegreeNorm::Total) => padua_interp(field, pd.max(1)),
            (2, DegreeNorm::Maximal) => tensor_interp(field, pd.max(1)),
            _ => unreachable!(),
        },
        MethodSel::Galerkin => {
            let basis = GradedBasis::new(
                Family::Legendre,
                spec.problem.dimension(),
                spec.basis_norm,
                pd,
            )?;
            let rule = galerkin_rule(spec, pd)?;
            if !approx::galerkin_rule_is_natural(&basis, &rule) {
                warnings.push(format!(
                    "non-natural galerkin rule {} for {} degree bound {pd}; numerical error may dominate",
                    rule.label(),
                    match spec.basis_norm {
                        DegreeNorm::Total => "total",
                        DegreeNorm::Maximal => "maximal",
                    }
                ));
            }
            galerkin_coeffs(field, &basis, &rule)
        }
    }
}

/// Convergence study: one (degree, n_coeffs, rel_linf_error, wall_ms) row
/// per sweep entry.
pub fn run_converge(spec: &StudySpec) -> Result<String> {
    let field = benchmark_field(spec.problem, spec.dde_n)?;
    let grid = spec.grid_per_dim();
    let sweep = spec.sweep()?;
    let mut meta = Vec::new();
    if spec.method == MethodSel::Galerkin && spec.rule_size.is_none() {
        // document the resolved per-row rule sizing (desk-scale caps)
        meta.push((
            "galerkin_rule_size".into(),
            if spec.problem.dimension() == 2 {
                format!("max(P_d, {GALERKIN_2D_FLOOR})")
            } else {
                "4P".into()
            },
        ));
    }
    let mut csv = Csv::new(spec, &meta);
    csv.columns(&["degree", "n_coeffs", "rel_linf_error", "wall_ms"]);
    let mut records = Vec::new();
    for &pd in &sweep {
        let t = Instant::now();
        let mut warnings = Vec::new();
        let coeffs = build_coeffs(spec, &field, pd, &mut warnings)?;
        let err = linf_rel_error(&field, &coeffs, grid)?;
        let wall_ms = t.elapsed().as_millis();
        for w in warnings {
            csv.comment(&format!("warning: {w}"));
        }
        csv.row(&[
            pd.to_string(),
            coeffs.coeffs().len().to_string(),
            fmt_float(err),
            wall_ms.to_string(),
        ]);
        records.push(ErrorRecord {
            degree: pd,
            n_coeffs: coeffs.coeffs().len(),
            rel_linf_error: err,
            extra: None,
        });
    }
    // best-effort rate summary over the upper half of the sweep
    if sweep.len() >= 8 {
        let lo = sweep[sweep.len() / 2];
        let hi = *sweep.last().expect("non-empty sweep");
        if let Ok(slope) = approx::fit_rate(&records, lo..=hi) {
            csv.comment(&format!("fitted_rate_window={lo}..{hi}"));
            csv.comment(&format!("fitted_rate_slope={}", fmt_float(slope)));
        }
    }
    Ok(csv.into_text())
}

/// Reference value for the first coefficient c_0 of the expansion.
fn c0_reference(spec: &StudySpec, field: &ScalarField, kind: RuleSel) -> Result<(f64, String)> {
    if spec.problem.dimension() == 1 {
        let c0 = oracle_series(spec.problem, 0)?.coeffs()[0];
        return Ok((c0, "oracle".into()));
    }
    // 2-D: capped high-order rule of the same family
    let (cap_kind, cap) = match kind {
        RuleSel::Tensor => (RuleSel::Tensor, REFERENCE_TENSOR_CAP),
        _ => (RuleSel::Padua, REFERENCE_PADUA_CAP),
    };
    let rule = build_rule(cap_kind, cap)?;
    let c0 = 0.25 * integrate(&rule, field)?;
    Ok((c0, rule.label()))
}

/// Quadrature study: |c~_0^M - c_0^ref| per sweep size M.
pub fn run_quad_study(spec: &StudySpec) -> Result<String> {
    let field = benchmark_field(spec.problem, spec.dde_n)?;
    let kind = spec
        .rule
        .ok_or_else(|| Error::Config("quad-study requires an explicit 'rule'".into()))?;
    let (c0_ref, ref_label) = c0_reference(spec, &field, kind)?;
    let rho = 0.5f64.powi(spec.problem.dimension() as i32);
    let mut csv = Csv::new(spec, &[("reference".into(), ref_label)]);
    csv.columns(&["m", "abs_c0_error"]);
    for &m in &spec.sweep()? {
        if kind == RuleSel::Simpson && m % 2 == 1 {
            csv.comment(&format!("warning: simpson requires even M; skipped M={m}"));
            continue;
        }
        let rule = build_rule(kind, m)?;
        let c0 = rho * integrate(&rule, &field)?;
        csv.row(&[m.to_string(), fmt_float((c0 - c0_ref).abs())]);
    }
    Ok(csv.into_text())
}

/// PC statistics of the approximation built at degree_stop. Returns the
/// aligned text report and the CSV payload.
pub fn run_stats(spec: &StudySpec) -> Result<(String, String)> {
    let field = benchmark_field(spec.problem, spec.dde_n)?;
    let pd = spec.degree_stop;
    let mut warnings = Vec::new();
    let built = build_coeffs(spec, &field, pd, &mut warnings)?;
    let legendre = match built.basis().family() {
        Family::Legendre => built,
        Family::Chebyshev => cheb_to_leg(&built)?,
    };
    let report = pce::sobol_indices(&legendre)?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "PC statistics: {} ({}, degree bound {pd})",
        spec.problem,
        spec.method.as_str()
    );
    let _ = writeln!(text, "  {:<12} {:>24.16e}", "mean", report.mean);
    let _ = writeln!(text, "  {:<12} {:>24.16e}", "variance", report.variance);
    if report.degenerate {
        let _ = writeln!(
            text,
            "  (zero variance: sensitivity indices undefined, reported as 0)"
        );
    }
    for (mask, value) in &report.sobol {
        let label = format!("S{}", pce::SensitivityReport::subset_label(*mask));
        let _ = writeln!(text, "  {label:<12} {value:>24.16e}");
    }
    for (d, value) in report.total.iter().enumerate() {
        let label = format!("T{{{}}}", d + 1);
        let _ = writeln!(text, "  {label:<12} {value:>24.16e}");
    }

    let mut csv = Csv::new(
        spec,
        &[("degenerate".into(), report.degenerate.to_string())],
    );
    for w in &warnings {
        csv.comment(&format!("warning: {w}"));
    }
    csv.columns(&["statistic", "subset", "value"]);
    csv.row(&["mean".into(), String::new(), fmt_float(report.mean)]);
    csv.row(&["variance".into(), String::new(), fmt_float(report.variance)]);
    for (mask, value) in &report.sobol {
        csv.row(&[
            "sobol".into(),
            pce::SensitivityReport::subset_label(*mask).replace(',', ";"),
            fmt_float(*value),
        ]);
    }
    for (d, value) in report.total.iter().enumerate() {
        csv.row(&["total".into(), (d + 1).to_string(), fmt_float(*value)]);
    }
    Ok((text, csv.into_text()))
}

/// Coefficient dump of the approximation built at degree_stop.
pub fn run_approx(spec: &StudySpec) -> Result<String> {
    let field = benchmark_field(spec.problem, spec.dde_n)?;
    let mut warnings = Vec::new();
    let coeffs = build_coeffs(spec, &field, spec.degree_stop, &mut warnings)?;
    let family = match coeffs.basis().family() {
        Family::Legendre => "legendre",
        Family::Chebyshev => "chebyshev",
    };
    let mut csv = Csv::new(spec, &[("family".into(), family.into())]);
    for w in &warnings {
        csv.comment(&format!("warning: {w}"));
    }
    csv.columns(&["index", "multi_index", "coefficient"]);
    let indices = specabs_core::polybasis::graded_indices(coeffs.basis());
    for (i, (mi, c)) in indices.iter().zip(coeffs.coeffs()).enumerate() {
        let mi_str = mi
            .entries()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(";");
        csv.row(&[i.to_string(), mi_str, fmt_float(*c)]);
    }
    Ok(csv.into_text())
}

/// Field-vs-approximation table over the error grid.
pub fn run_eval(spec: &StudySpec) -> Result<String> {
    let field = benchmark_field(spec.problem, spec.dde_n)?;
    let mut warnings = Vec::new();
    let coeffs = build_coeffs(spec, &field, spec.degree_stop, &mut warnings)?;
    let g = spec.grid_per_dim();
    let dim = spec.problem.dimension();
    let mut csv = Csv::new(spec, &[]);
    for w in &warnings {
        csv.comment(&format!("warning: {w}"));
    }
    if dim == 1 {
        csv.columns(&["x", "field", "approx", "abs_error"]);
    } else {
        csv.columns(&["x", "y", "field", "approx", "abs_error"]);
    }
    let total = g.pow(dim as u32);
    for flat in 0..total {
        let mut rem = flat;
        let mut point = vec![0.0; dim];
        for slot in point.iter_mut() {
            let k = rem % g;
            rem /= g;
            *slot = -1.0 + 2.0 * k as f64 / (g - 1) as f64;
        }
        let fv = field.evaluate(&point);
        let av = coeffs.evaluate(&point);
        let mut cells: Vec<String> = point.iter().map(|&x| fmt_float(x)).collect();
        cells.push(fmt_float(fv));
        cells.push(fmt_float(av));
        cells.push(fmt_float((fv - av).abs()));
        csv.row(&cells);
    }
    Ok(csv.into_text())
}
