//! Polynomial approximation of scalar fields by the Galerkin approach
//! (projection coefficients via quadrature) and the collocation approach
//! (interpolation at Chebyshev, Padua or tensor-grid nodes), plus error
//! measurement and convergence-rate fitting.

use crate::error::{Error, Result};
use crate::exec;
use crate::polybasis::{
    self, cantor_pair, rosenberg_pair, CoefficientSet, DegreeNorm, Family, GradedBasis,
};
use crate::problems::ScalarField;
use crate::quadrature::{padua_points, Rule, RuleKind};

/// Approximation method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Galerkin,
    Collocation,
}

/// One row of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub degree: u32,
    pub n_coeffs: usize,
    pub rel_linf_error: f64,
    /// Optional coefficient-error sum against a reference build.
    pub extra: Option<f64>,
}

/// Galerkin projection: c_i = rho * sum_q w_q f(x_q) p_i(x_q) / ||p_i||^2
/// with rho = 2^-D. The field is evaluated once per node; per-index sums
/// run in fixed node order (compensated), so results do not depend on the
/// degree of parallelism.
pub fn galerkin_coeffs(
    f: &ScalarField,
    basis: &GradedBasis,
    rule: &Rule,
) -> Result<CoefficientSet> {
    if basis.family() != Family::Legendre {
        return Err(Error::Config(
            "galerkin projection expects a Legendre basis".into(),
        ));
    }
    if rule.dimension() != basis.dimension() || f.dimension() != basis.dimension() {
        return Err(Error::Config(format!(
            "dimension mismatch: basis {}, rule {}, field {}",
            basis.dimension(),
            rule.dimension(),
            f.dimension()
        )));
    }
    let dim = basis.dimension();
    let pd = basis.degree_bound();
    let n = rule.len();
    let fvals = exec::map_indices(n, |q| f.evaluate(rule.node(q)));

    // Legendre values of all degrees at all node coordinates, node-major:
    // table[(q * dim + d) * (pd+1) + deg]
    let stride = pd as usize + 1;
    let mut table = vec![0.0; n * dim * stride];
    let mut scratch = Vec::new();
    for q in 0..n {
        let node = rule.node(q);
        for (d, &x) in node.iter().enumerate() {
            polybasis::family_eval_all(Family::Legendre, pd, x, &mut scratch);
            table[(q * dim + d) * stride..(q * dim + d + 1) * stride].copy_from_slice(&scratch);
        }
    }

    let rho = 0.5f64.powi(dim as i32);
    let weights = rule.weights();
    let indices = polybasis::graded_indices(basis);
    let coeffs = exec::map_collect(&indices, |mi| {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for q in 0..n {
            let mut p = 1.0;
            for (d, &deg) in mi.entries().iter().enumerate() {
                p *= table[(q * dim + d) * stride + deg as usize];
            }
            let y = weights[q] * fvals[q] * p - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        acc * rho / mi.legendre_norm_sq()
    });
    CoefficientSet::new(basis.clone(), coeffs)
}

/// Chebyshev coefficients of the interpolant through values at the
/// second-kind points cos(j pi / M), by the discrete cosine sum.
fn cheb_coeffs_from_values(values: &[f64]) -> Vec<f64> {
    let m = values.len() - 1;
    if m == 0 {
        return vec![values[0]];
    }
    let mf = m as f64;
    let mut coeffs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut s = 0.5 * values[0];
        for (j, &v) in values.iter().enumerate().take(m).skip(1) {
            s += v * (k as f64 * j as f64 * std::f64::consts::PI / mf).cos();
        }
        s += 0.5 * values[m] * if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut c = 2.0 * s / mf;
        if k == 0 || k == m {
            c *= 0.5;
        }
        coeffs.push(c);
    }
    coeffs
}

/// Interpolates a 1-D field at the P+1 Chebyshev points of the second kind;
/// the returned set is in the Chebyshev family.
pub fn cheb_interp_1d(f: &ScalarField, p: u32) -> Result<CoefficientSet> {
    if f.dimension() != 1 {
        return Err(Error::Config("cheb_interp_1d expects a 1-D field".into()));
    }
    let nodes: Vec<f64> = if p == 0 {
        vec![1.0]
    } else {
        (0..=p)
            .map(|j| (j as f64 * std::f64::consts::PI / p as f64).cos())
            .collect()
    };
    let values = exec::map_collect(&nodes, |&x| f.evaluate(&[x]));
    let coeffs = cheb_coeffs_from_values(&values);
    let basis = GradedBasis::new(Family::Chebyshev, 1, DegreeNorm::Total, p)?;
    CoefficientSet::new(basis, coeffs)
}

/// Interpolates a 2-D field at the Padua points of degree m_p. The
/// coefficient layout is the total-degree basis in Cantor order.
pub fn padua_interp(f: &ScalarField, m_p: u32) -> Result<CoefficientSet> {
    if f.dimension() != 2 {
        return Err(Error::Config("padua_interp expects a 2-D field".into()));
    }
    if m_p < 1 {
        return Err(Error::Config("padua_interp needs m_p >= 1".into()));
    }
    let pts = padua_points(m_p)?;
    let values = exec::map_collect(&pts, |p| f.evaluate(p));
    let n = m_p as usize;

    // Chebyshev-measure point weights mirror the cubature classification.
    let lambda = padua_point_lambdas(m_p);
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut c = vec![0.0; (n + 1) * (n + 1)]; // normalized T-hat coefficients, row j (x), col k (y)
    let mut tx = Vec::new();
    let mut ty = Vec::new();
    for (q, p) in pts.iter().enumerate() {
        polybasis::family_eval_all(Family::Chebyshev, m_p, p[0], &mut tx);
        polybasis::family_eval_all(Family::Chebyshev, m_p, p[1], &mut ty);
        let wv = lambda[q] * values[q];
        for j in 0..=n {
            let tbx = if j == 0 { 1.0 } else { sqrt2 * tx[j] };
            let row = wv * tbx;
            for k in 0..=(n - j) {
                let tby = if k == 0 { 1.0 } else { sqrt2 * ty[k] };
                c[j * (n + 1) + k] += row * tby;
            }
        }
    }
    c[n * (n + 1)] *= 0.5; // reproducing-kernel correction on (m_p, 0)

    let basis = GradedBasis::new(Family::Chebyshev, 2, DegreeNorm::Total, m_p)?;
    let mut coeffs = vec![0.0; basis.len()];
    for mi in polybasis::graded_indices(&basis) {
        let (j, k) = (mi.entries()[0] as usize, mi.entries()[1] as usize);
        let mut v = c[j * (n + 1) + k];
        if j > 0 {
            v *= sqrt2;
        }
        if k > 0 {
            v *= sqrt2;
        }
        coeffs[cantor_pair(j as u64, k as u64) as usize] = v;
    }
    CoefficientSet::new(basis, coeffs)
}

fn padua_point_lambdas(m_p: u32) -> Vec<f64> {
    let n = m_p as usize;
    let base = 1.0 / (m_p as f64 * (m_p as f64 + 1.0));
    let mut out = Vec::new();
    for j in 0..=n {
        for k in 0..=n + 1 {
            if (j + k) % 2 != 0 {
                continue;
            }
            let bx = j == 0 || j == n;
            let by = k == 0 || k == n + 1;
            let mult = if bx && by {
                0.5
            } else if bx || by {
                1.0
            } else {
                2.0
            };
            out.push(mult * base);
        }
    }
    out
}

/// Interpolates a 2-D field on the (m_c+1)^2 Chebyshev product grid via
/// nested 1-D cosine transforms; maximal-degree basis in Rosenberg-Strong
/// order.
pub fn tensor_interp(f: &ScalarField, m_c: u32) -> Result<CoefficientSet> {
    if f.dimension() != 2 {
        return Err(Error::Config("tensor_interp expects a 2-D field".into()));
    }
    if m_c < 1 {
        return Err(Error::Config("tensor_interp needs m_c >= 1".into()));
    }
    let n = m_c as usize;
    let xs: Vec<f64> = (0..=n)
        .map(|j| (j as f64 * std::f64::consts::PI / m_c as f64).cos())
        .collect();
    let values = exec::map_indices((n + 1) * (n + 1), |flat| {
        let (j, k) = (flat / (n + 1), flat % (n + 1));
        f.evaluate(&[xs[j], xs[k]])
    });
    // transform along y per x-row, then along x per y-coefficient column
    let mut partial = vec![0.0; (n + 1) * (n + 1)];
    for j in 0..=n {
        let row = cheb_coeffs_from_values(&values[j * (n + 1)..(j + 1) * (n + 1)]);
        partial[j * (n + 1)..(j + 1) * (n + 1)].copy_from_slice(&row);
    }
    let mut c = vec![0.0; (n + 1) * (n + 1)];
    let mut col = vec![0.0; n + 1];
    for k in 0..=n {
        for j in 0..=n {
            col[j] = partial[j * (n + 1) + k];
        }
        for (j, v) in cheb_coeffs_from_values(&col).into_iter().enumerate() {
            c[j * (n + 1) + k] = v;
        }
    }
    let basis = GradedBasis::new(Family::Chebyshev, 2, DegreeNorm::Maximal, m_c)?;
    let mut coeffs = vec![0.0; basis.len()];
    for mi in polybasis::graded_indices(&basis) {
        let (j, k) = (mi.entries()[0] as usize, mi.entries()[1] as usize);
        coeffs[rosenberg_pair(j as u64, k as u64) as usize] = c[j * (n + 1) + k];
    }
    CoefficientSet::new(basis, coeffs)
}

/// Stable evaluation of the approximation at a point.
pub fn eval_approx(coeffs: &CoefficientSet, point: &[f64]) -> f64 {
    coeffs.evaluate(point)
}

/// Max relative error over the equispaced grid with `grid_per_dim` points
/// per dimension (endpoints included): max|f - approx| / max|f|.
pub fn linf_rel_error(
    f: &ScalarField,
    coeffs: &CoefficientSet,
    grid_per_dim: usize,
) -> Result<f64> {
    if grid_per_dim < 2 {
        return Err(Error::Config(
            "error grid needs at least 2 points per dimension".into(),
        ));
    }
    let dim = coeffs.basis().dimension();
    if f.dimension() != dim {
        return Err(Error::Config(
            "field dimension does not match coefficient basis".into(),
        ));
    }
    let total = grid_per_dim.pow(dim as u32);
    let g = grid_per_dim;
    let pairs = exec::map_indices(total, |flat| {
        let mut rem = flat;
        let mut point = vec![0.0; dim];
        for slot in point.iter_mut() {
            let k = rem % g;
            rem /= g;
            *slot = -1.0 + 2.0 * k as f64 / (g - 1) as f64;
        }
        let fv = f.evaluate(&point);
        let av = coeffs.evaluate(&point);
        ((fv - av).abs(), fv.abs())
    });
    let mut max_err = 0.0f64;
    let mut max_f = 0.0f64;
    for (e, a) in pairs {
        max_err = max_err.max(e);
        max_f = max_f.max(a);
    }
    if max_f == 0.0 {
        // identically-zero field: fall back to the absolute error
        return Ok(max_err);
    }
    Ok(max_err / max_f)
}

/// rho-norm error sqrt(sum_q w_q rho (f - approx)^2) estimated with the
/// given rule.
pub fn rho_norm_error(f: &ScalarField, coeffs: &CoefficientSet, rule: &Rule) -> Result<f64> {
    let dim = coeffs.basis().dimension();
    if rule.dimension() != dim || f.dimension() != dim {
        return Err(Error::Config("dimension mismatch in rho_norm_error".into()));
    }
    let rho = 0.5f64.powi(dim as i32);
    let sq = exec::map_indices(rule.len(), |q| {
        let node = rule.node(q);
        let r = f.evaluate(node) - coeffs.evaluate(node);
        r * r
    });
    let mut acc = 0.0;
    for (w, s) in rule.weights().iter().zip(&sq) {
        acc += w * s;
    }
    Ok((acc.max(0.0) * rho).sqrt())
}

/// Least-squares slope of log(error) vs log(degree) over the inclusive
/// degree window. Records with non-positive or non-finite errors are
/// dropped; fewer than 4 usable points is an error.
pub fn fit_rate(records: &[ErrorRecord], window: std::ops::RangeInclusive<u32>) -> Result<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| {
            window.contains(&r.degree) && r.rel_linf_error.is_finite() && r.rel_linf_error > 0.0
        })
        .map(|r| ((r.degree as f64).ln(), r.rel_linf_error.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "rate fit needs >= 4 usable records in the window, got {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(sxy / sxx)
}

/// Sum of absolute coefficient differences between two sets on the same
/// basis.
pub fn coeff_error_sum(reference: &CoefficientSet, test: &CoefficientSet) -> Result<f64> {
    if reference.basis() != test.basis() {
        return Err(Error::Config(
            "coefficient sets live on different bases".into(),
        ));
    }
    Ok(reference
        .coeffs()
        .iter()
        .zip(test.coeffs())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// Decoupling advice check for Galerkin builds with interpolatory rules:
/// 1-D rules want M >= P; the total-degree basis pairs naturally with the
/// Padua cubature at m_p >= P_d and the maximal-degree basis with the
/// tensor cubature at m_c >= P_d. Classical rules are not covered by the
/// advice and are never flagged.
pub fn galerkin_rule_is_natural(basis: &GradedBasis, rule: &Rule) -> bool {
    match (basis.dimension(), rule.kind()) {
        (_, RuleKind::Trapezoid | RuleKind::Simpson) => true,
        (1, RuleKind::ClenshawCurtis | RuleKind::GaussLegendre) => {
            rule.size() >= basis.degree_bound()
        }
        (2, RuleKind::PaduaClenshawCurtis) => {
            basis.norm() == DegreeNorm::Total && rule.size() >= basis.degree_bound()
        }
        (2, RuleKind::TensorClenshawCurtis) => {
            basis.norm() == DegreeNorm::Maximal && rule.size() >= basis.degree_bound()
        }
        _ => false,
    }
}
