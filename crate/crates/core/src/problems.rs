//! Benchmark spectral abscissa functions: three 1-D closed forms with
//! different smoothness classes, and the delayed-oscillator family whose
//! abscissa is computed from a pseudospectral discretization of the delay
//! eigenvalue problem plus Newton refinement on the scalar characteristic
//! function.

use crate::error::{Error, Result};
use dashmap::DashMap;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// D-dimensional box of uncertain parameters with the affine map to the
/// reference cube [-1,1]^D.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl ParamDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::Config(
                "domain bounds must be non-empty and of equal length".into(),
            ));
        }
        for (l, u) in lower.iter().zip(&upper) {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(Error::Config(format!("invalid domain bounds [{l}, {u}]")));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Physical point -> reference cube.
    pub fn to_reference(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dimension());
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&xi, (&l, &u))| 2.0 * (xi - l) / (u - l) - 1.0)
            .collect()
    }

    /// Reference-cube point -> physical point.
    pub fn from_reference(&self, t: &[f64]) -> Vec<f64> {
        assert_eq!(t.len(), self.dimension());
        t.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&ti, (&l, &u))| l + 0.5 * (ti + 1.0) * (u - l))
            .collect()
    }
}

/// An evaluatable scalar function on the reference cube. Evaluators carry
/// no mutable state after construction, so fields are safe to share across
/// workers; evaluation is deterministic.
#[derive(Clone)]
pub struct ScalarField {
    dimension: usize,
    eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("dimension", &self.dimension)
            .finish()
    }
}

impl ScalarField {
    pub fn new(dimension: usize, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            dimension,
            eval: Arc::new(f),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn evaluate(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dimension);
        (self.eval)(point)
    }

    /// Wraps the field in a concurrent memo table keyed by node coordinates,
    /// so sweeps never recompute the field at a grid or quadrature point.
    pub fn memoized(self) -> ScalarField {
        let memo: DashMap<Vec<u64>, f64> = DashMap::new();
        let dim = self.dimension;
        ScalarField::new(dim, move |p: &[f64]| {
            let key: Vec<u64> = p.iter().map(|x| x.to_bits()).collect();
            if let Some(v) = memo.get(&key) {
                return *v;
            }
            let v = (self.eval)(p);
            memo.insert(key, v);
            v
        })
    }
}

fn check_unit_interval(omega: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&omega) {
        return Err(Error::Domain(format!("omega = {omega} outside [-1, 1]")));
    }
    Ok(())
}

/// Smooth benchmark: spectral abscissa e^omega (simple active eigenvalue).
pub fn sae_abscissa(omega: f64) -> Result<f64> {
    check_unit_interval(omega)?;
    Ok(omega.exp())
}

/// Lipschitz benchmark: max(0, omega) (multiple semi-simple at omega = 0).
pub fn mssae_abscissa(omega: f64) -> Result<f64> {
    check_unit_interval(omega)?;
    Ok(omega.max(0.0))
}

/// Non-Lipschitz benchmark: sqrt on [0,1], zero below (non-semi-simple
/// splitting at omega = 0).
pub fn mnssae_abscissa(omega: f64) -> Result<f64> {
    check_unit_interval(omega)?;
    Ok(if omega < 0.0 { 0.0 } else { omega.sqrt() })
}

/// Max real part of the eigenvalues of a 2x2 matrix via the trace and
/// determinant, used to cross-check the closed forms against an eigensolver.
pub fn matrix2x2_abscissa(a11: f64, a12: f64, a21: f64, a22: f64) -> Result<f64> {
    for v in [a11, a12, a21, a22] {
        if !v.is_finite() {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
    }
    let tr = a11 + a22;
    let det = a11 * a22 - a12 * a21;
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        Ok(0.5 * (tr + disc.sqrt()))
    } else {
        Ok(0.5 * tr)
    }
}

/// Damped oscillator with delayed position/velocity feedback, delay 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayOscillator {
    pub omega1: f64,
    pub omega2: f64,
    pub k1: f64,
    pub k2: f64,
    pub tau: f64,
}

impl DelayOscillator {
    pub fn new(omega1: f64, omega2: f64, k1: f64, k2: f64) -> Self {
        Self {
            omega1,
            omega2,
            k1,
            k2,
            tau: 1.0,
        }
    }
}

/// Characteristic function h(lambda) = lambda^2 + 2 w1 w2 lambda + w1^2
/// - (K1 + K2 lambda) e^(-lambda tau).
pub fn oscillator_char(osc: &DelayOscillator, lambda: Complex64) -> Complex64 {
    let lin = Complex64::new(osc.k1, 0.0) + Complex64::new(osc.k2, 0.0) * lambda;
    lambda * lambda
        + 2.0 * osc.omega1 * osc.omega2 * lambda
        + Complex64::new(osc.omega1 * osc.omega1, 0.0)
        - lin * (-lambda * osc.tau).exp()
}

/// Analytic derivative h'(lambda).
pub fn oscillator_char_derivative(osc: &DelayOscillator, lambda: Complex64) -> Complex64 {
    let e = (-lambda * osc.tau).exp();
    let lin = Complex64::new(osc.k1, 0.0) + Complex64::new(osc.k2, 0.0) * lambda;
    2.0 * lambda + Complex64::new(2.0 * osc.omega1 * osc.omega2, 0.0) + osc.tau * lin * e
        - Complex64::new(osc.k2, 0.0) * e
}

/// Chebyshev differentiation matrix on the N+1 second-kind points
/// cos(j pi / N), with the negative-sum trick on the diagonal.
fn chebyshev_diff_matrix(n: usize) -> DMatrix<f64> {
    let pts: Vec<f64> = (0..=n)
        .map(|j| (j as f64 * std::f64::consts::PI / n as f64).cos())
        .collect();
    let c = |j: usize| -> f64 {
        let base = if j == 0 || j == n { 2.0 } else { 1.0 };
        base * if j % 2 == 0 { 1.0 } else { -1.0 }
    };
    let mut d = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut row_sum = 0.0;
        for j in 0..=n {
            if i != j {
                let v = c(i) / c(j) / (pts[i] - pts[j]);
                d[(i, j)] = v;
                row_sum += v;
            }
        }
        d[(i, i)] = -row_sum;
    }
    d
}

/// Pseudospectral-collocation approximation of the infinitesimal generator
/// of the first-order form (x, x') on N+1 Chebyshev points scaled to
/// [-tau, 0]. The rightmost eigenvalues approximate characteristic roots
/// with spectral accuracy in N.
pub fn discretize_dde(osc: &DelayOscillator, n: u32) -> Result<DMatrix<f64>> {
    if n < 4 {
        return Err(Error::Config(format!(
            "DDE discretization needs N >= 4, got {n}"
        )));
    }
    let n = n as usize;
    // theta = tau (x - 1) / 2 maps x in [-1,1] to [-tau, 0]; theta_0 = 0
    let d = chebyshev_diff_matrix(n) * (2.0 / osc.tau);
    let size = 2 * (n + 1);
    let mut a = DMatrix::<f64>::zeros(size, size);
    // head row: u'(0) = A0 u(0) + A1 u(-tau)
    a[(0, 1)] = 1.0;
    a[(1, 0)] = -osc.omega1 * osc.omega1;
    a[(1, 1)] = -2.0 * osc.omega1 * osc.omega2;
    a[(1, 2 * n)] += osc.k1;
    a[(1, 2 * n + 1)] += osc.k2;
    // remaining rows: differentiation along the segment
    for j in 1..=n {
        for k in 0..=n {
            a[(2 * j, 2 * k)] = d[(j, k)];
            a[(2 * j + 1, 2 * k + 1)] = d[(j, k)];
        }
    }
    Ok(a)
}

/// Spectral abscissa of a delay oscillator, with provenance metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdeAbscissa {
    /// Max real part over refined (or raw discrete) rightmost roots.
    pub value: f64,
    /// Whether at least one candidate reached the Newton residual target.
    pub refined: bool,
    /// |h| at the reported root when refined.
    pub residual: Option<f64>,
    /// |raw(N) - raw(2N)| self-check gap when running unrefined.
    pub self_check_gap: Option<f64>,
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITERS: usize = 50;
/// Discrete eigenvalues within this band below the max real part are
/// treated as rightmost candidates and refined.
const CANDIDATE_BAND: f64 = 0.1;

fn raw_abscissa(osc: &DelayOscillator, n: u32) -> Result<(f64, Vec<Complex64>)> {
    let a = discretize_dde(osc, n)?;
    let eigs = a.complex_eigenvalues();
    let max_re = eigs.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let cands: Vec<Complex64> = eigs
        .iter()
        .copied()
        .filter(|e| e.re > max_re - CANDIDATE_BAND)
        .collect();
    Ok((max_re, cands))
}

/// Rightmost characteristic-root real part. With `refine` every discrete
/// candidate near the spectral edge is polished by Newton iteration on the
/// characteristic function until |h| < 1e-12; without it the discretization
/// is doubled once and the doubled value reported with the gap as metadata.
pub fn spectral_abscissa_dde(osc: &DelayOscillator, n: u32, refine: bool) -> Result<DdeAbscissa> {
    let (max_re, cands) = raw_abscissa(osc, n)?;
    if !refine {
        let (max_re2, _) = raw_abscissa(osc, 2 * n)?;
        return Ok(DdeAbscissa {
            value: max_re2,
            refined: false,
            residual: None,
            self_check_gap: Some((max_re - max_re2).abs()),
        });
    }
    let mut best: Option<(f64, f64)> = None; // (re, |h|)
    for &start in &cands {
        let mut lam = start;
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITERS {
            let h = oscillator_char(osc, lam);
            if h.norm() < NEWTON_TOL {
                converged = true;
                break;
            }
            let dh = oscillator_char_derivative(osc, lam);
            if dh.norm() == 0.0 {
                break;
            }
            lam -= h / dh;
            if !lam.re.is_finite() || !lam.im.is_finite() {
                break;
            }
        }
        if converged {
            let res = oscillator_char(osc, lam).norm();
            match best {
                Some((re, _)) if re >= lam.re => {}
                _ => best = Some((lam.re, res)),
            }
        }
    }
    match best {
        Some((re, res)) => Ok(DdeAbscissa {
            value: re,
            refined: true,
            residual: Some(res),
            self_check_gap: None,
        }),
        // Newton diverged from every candidate: fall back to the raw value
        None => Ok(DdeAbscissa {
            value: max_re,
            refined: false,
            residual: None,
            self_check_gap: None,
        }),
    }
}

/// Benchmark selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkName {
    Sae1,
    Mssae1,
    Mnssae1,
    OscSae,
    OscMssae,
    OscMnssae,
}

impl BenchmarkName {
    pub const ALL: [BenchmarkName; 6] = [
        BenchmarkName::Sae1,
        BenchmarkName::Mssae1,
        BenchmarkName::Mnssae1,
        BenchmarkName::OscSae,
        BenchmarkName::OscMssae,
        BenchmarkName::OscMnssae,
    ];

    pub fn dimension(self) -> usize {
        match self {
            BenchmarkName::Sae1 | BenchmarkName::Mssae1 | BenchmarkName::Mnssae1 => 1,
            _ => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BenchmarkName::Sae1 => "SAE1",
            BenchmarkName::Mssae1 => "MSSAE1",
            BenchmarkName::Mnssae1 => "MNSSAE1",
            BenchmarkName::OscSae => "OSC_SAE",
            BenchmarkName::OscMssae => "OSC_MSSAE",
            BenchmarkName::OscMnssae => "OSC_MNSSAE",
        }
    }

    /// Control gains (K1, K2) for the oscillator variants.
    pub fn oscillator_gains(self) -> Option<(f64, f64)> {
        match self {
            BenchmarkName::OscSae => Some((0.2, 0.2)),
            BenchmarkName::OscMssae => Some((0.5105, -0.0918)),
            BenchmarkName::OscMnssae => Some((0.6179, -0.0072)),
            _ => None,
        }
    }
}

impl fmt::Display for BenchmarkName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        match norm.as_str() {
            "SAE1" => Ok(BenchmarkName::Sae1),
            "MSSAE1" => Ok(BenchmarkName::Mssae1),
            "MNSSAE1" => Ok(BenchmarkName::Mnssae1),
            "OSC_SAE" => Ok(BenchmarkName::OscSae),
            "OSC_MSSAE" => Ok(BenchmarkName::OscMssae),
            "OSC_MNSSAE" => Ok(BenchmarkName::OscMnssae),
            _ => Err(Error::Config(format!("unknown benchmark problem '{s}'"))),
        }
    }
}

/// Parameter box of the oscillator benchmarks: omega1 in [0.9, 1.1],
/// omega2 in [0.1, 0.2].
pub fn oscillator_domain() -> ParamDomain {
    ParamDomain::new(vec![0.9, 0.1], vec![1.1, 0.2]).expect("static bounds")
}

/// Builds a benchmark field over the reference cube. Oscillator variants
/// compose the domain map with the refined DDE abscissa at discretization
/// size `dde_n` and memoize per point; `dde_n` is ignored by the 1-D
/// closed forms.
pub fn benchmark_field(name: BenchmarkName, dde_n: u32) -> Result<ScalarField> {
    match name {
        BenchmarkName::Sae1 => Ok(ScalarField::new(1, |p: &[f64]| p[0].exp())),
        BenchmarkName::Mssae1 => Ok(ScalarField::new(1, |p: &[f64]| p[0].max(0.0))),
        BenchmarkName::Mnssae1 => Ok(ScalarField::new(1, |p: &[f64]| {
            if p[0] < 0.0 {
                0.0
            } else {
                p[0].sqrt()
            }
        })),
        _ => {
            if dde_n < 4 {
                return Err(Error::Config(format!(
                    "oscillator benchmarks need dde_n >= 4, got {dde_n}"
                )));
            }
            let (k1, k2) = name.oscillator_gains().expect("oscillator variant");
            let domain = oscillator_domain();
            let field = ScalarField::new(2, move |p: &[f64]| {
                let phys = domain.from_reference(p);
                let osc = DelayOscillator::new(phys[0], phys[1], k1, k2);
                spectral_abscissa_dde(&osc, dde_n, true)
                    .expect("dde_n validated at construction")
                    .value
            });
            Ok(field.memoized())
        }
    }
}
