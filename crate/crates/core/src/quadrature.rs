//! Integration rules over the reference cube with weight function 1.
//!
//! One-dimensional: extended trapezoid, extended Simpson, Clenshaw-Curtis
//! and Gauss-Legendre. Two-dimensional: tensorial Clenshaw-Curtis on a
//! Chebyshev product grid and non-tensorial Clenshaw-Curtis on Padua
//! points. The normalized density factor rho = 2^-D is applied by callers.

use crate::error::{Error, Result};
use crate::exec;
use crate::problems::ScalarField;
use nalgebra::DMatrix;

/// Rule constructor family, used for labeling and the decoupling advice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Trapezoid,
    Simpson,
    ClenshawCurtis,
    GaussLegendre,
    TensorClenshawCurtis,
    PaduaClenshawCurtis,
}

impl RuleKind {
    fn name(self) -> &'static str {
        match self {
            RuleKind::Trapezoid => "trapezoid",
            RuleKind::Simpson => "simpson",
            RuleKind::ClenshawCurtis => "clenshaw-curtis",
            RuleKind::GaussLegendre => "gauss-legendre",
            RuleKind::TensorClenshawCurtis => "tensor-cc",
            RuleKind::PaduaClenshawCurtis => "padua-cc",
        }
    }
}

/// Declared polynomial exactness of a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exactness {
    /// Univariate degree (D = 1 rules).
    Degree(u32),
    /// Total multivariate degree.
    TotalDegree(u32),
    /// Maximal multivariate degree.
    MaximalDegree(u32),
}

/// Nodes-and-weights pair over the reference cube.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    kind: RuleKind,
    size: u32,
    dimension: usize,
    nodes: Vec<f64>, // flat, stride = dimension
    weights: Vec<f64>,
    exactness: Exactness,
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// Size parameter the rule was built from (M, m_c or m_p).
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, q: usize) -> &[f64] {
        &self.nodes[q * self.dimension..(q + 1) * self.dimension]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.kind.name(), self.size)
    }
}

/// Extended trapezoidal rule on M+1 equispaced nodes including the extremes.
pub fn trapezoid_rule(m: u32) -> Result<Rule> {
    if m < 1 {
        return Err(Error::Config("trapezoid rule needs M >= 1".into()));
    }
    let h = 2.0 / m as f64;
    let nodes: Vec<f64> = (0..=m).map(|j| -1.0 + h * j as f64).collect();
    let mut weights = vec![h; m as usize + 1];
    weights[0] *= 0.5;
    weights[m as usize] *= 0.5;
    Ok(Rule {
        kind: RuleKind::Trapezoid,
        size: m,
        dimension: 1,
        nodes,
        weights,
        exactness: Exactness::Degree(1),
    })
}

/// Extended Simpson rule; M is required to be even.
pub fn simpson_rule(m: u32) -> Result<Rule> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::Config(format!(
            "simpson rule needs even M >= 2, got {m}"
        )));
    }
    let h = 2.0 / m as f64;
    let nodes: Vec<f64> = (0..=m).map(|j| -1.0 + h * j as f64).collect();
    let weights: Vec<f64> = (0..=m)
        .map(|j| {
            let c = if j == 0 || j == m {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect();
    Ok(Rule {
        kind: RuleKind::Simpson,
        size: m,
        dimension: 1,
        nodes,
        weights,
        exactness: Exactness::Degree(3),
    })
}

/// Clenshaw-Curtis nodes cos(j pi / M) with weights from the explicit
/// even-cosine sum (no FFT at desk scale).
pub fn clenshaw_curtis(m: u32) -> Result<Rule> {
    if m < 1 {
        return Err(Error::Config("clenshaw-curtis rule needs M >= 1".into()));
    }
    let n = m as usize;
    let nodes: Vec<f64> = (0..=n)
        .map(|j| (j as f64 * std::f64::consts::PI / m as f64).cos())
        .collect();
    let mut weights = vec![0.0; n + 1];
    if m == 1 {
        weights[0] = 1.0;
        weights[1] = 1.0;
    } else {
        let mf = m as f64;
        let end = if m % 2 == 0 {
            1.0 / (mf * mf - 1.0)
        } else {
            1.0 / (mf * mf)
        };
        weights[0] = end;
        weights[n] = end;
        for j in 1..n {
            let theta = j as f64 * std::f64::consts::PI / mf;
            let mut v = 1.0;
            let half = if m % 2 == 0 { n / 2 - 1 } else { (n - 1) / 2 };
            for k in 1..=half {
                let kf = k as f64;
                v -= 2.0 * (2.0 * kf * theta).cos() / (4.0 * kf * kf - 1.0);
            }
            if m % 2 == 0 {
                v -= (mf * theta).cos() / (mf * mf - 1.0);
            }
            weights[j] = 2.0 * v / mf;
        }
    }
    Ok(Rule {
        kind: RuleKind::ClenshawCurtis,
        size: m,
        dimension: 1,
        nodes,
        weights,
        exactness: Exactness::Degree(m),
    })
}

/// Legendre value and derivative at x, for Newton polishing.
fn legendre_with_derivative(n: u32, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut pm = 1.0;
    let mut p = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * pm) / (kf + 1.0);
        pm = p;
        p = next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - pm) / (x * x - 1.0);
    (p, dp)
}

/// Gauss-Legendre rule with M+1 nodes: Golub-Welsch eigenvalues of the
/// symmetric Jacobi matrix, Newton-polished to ~1e-15, weights from the
/// derivative formula. Exactness 2M+1.
pub fn gauss_legendre(m: u32) -> Rule {
    let n = m as usize + 1;
    let mut xs: Vec<f64>;
    if n == 1 {
        xs = vec![0.0];
    } else {
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 1..n {
            let kf = k as f64;
            let b = kf / (4.0 * kf * kf - 1.0).sqrt();
            jac[(k - 1, k)] = b;
            jac[(k, k - 1)] = b;
        }
        let eig = jac.symmetric_eigen();
        xs = eig.eigenvalues.iter().copied().collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // polish each node on P_{M+1}
        for x in xs.iter_mut() {
            for _ in 0..3 {
                let (p, dp) = legendre_with_derivative(n as u32, *x);
                if dp != 0.0 {
                    *x -= p / dp;
                }
            }
        }
        // enforce exact symmetry about the origin
        for i in 0..n / 2 {
            let s = 0.5 * (xs[i] - xs[n - 1 - i]);
            xs[i] = s;
            xs[n - 1 - i] = -s;
        }
        if n % 2 == 1 {
            xs[n / 2] = 0.0;
        }
    }
    let mut weights = Vec::with_capacity(n);
    for &x in &xs {
        let (_, dp) = legendre_with_derivative(n as u32, x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    for i in 0..n / 2 {
        let w = 0.5 * (weights[i] + weights[n - 1 - i]);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule {
        kind: RuleKind::GaussLegendre,
        size: m,
        dimension: 1,
        nodes: xs,
        weights,
        exactness: Exactness::Degree(2 * m + 1),
    }
}

/// Tensorial Clenshaw-Curtis cubature: Cartesian square of the 1-D rule.
/// Exact for maximal degree m_c.
pub fn tensor_cc_cubature(m_c: u32) -> Result<Rule> {
    let r1 = clenshaw_curtis(m_c)?;
    let n1 = r1.len();
    let mut nodes = Vec::with_capacity(2 * n1 * n1);
    let mut weights = Vec::with_capacity(n1 * n1);
    for i in 0..n1 {
        for j in 0..n1 {
            nodes.push(r1.nodes[i]);
            nodes.push(r1.nodes[j]);
            weights.push(r1.weights[i] * r1.weights[j]);
        }
    }
    Ok(Rule {
        kind: RuleKind::TensorClenshawCurtis,
        size: m_c,
        dimension: 2,
        nodes,
        weights,
        exactness: Exactness::MaximalDegree(m_c),
    })
}

/// Padua point with its position in the generating grid.
struct PaduaPoint {
    x: f64,
    y: f64,
    /// Chebyshev-measure weight: 1/(m(m+1)) times 1/2, 1 or 2 for vertex,
    /// edge and interior points.
    lambda: f64,
}

fn padua_points_classified(m_p: u32) -> Vec<PaduaPoint> {
    let n = m_p as usize;
    let mut pts = Vec::with_capacity((n + 1) * (n + 2) / 2);
    let base = 1.0 / (m_p as f64 * (m_p as f64 + 1.0));
    for j in 0..=n {
        let x = (j as f64 * std::f64::consts::PI / m_p as f64).cos();
        for k in 0..=n + 1 {
            if (j + k) % 2 != 0 {
                continue;
            }
            let y = (k as f64 * std::f64::consts::PI / (m_p as f64 + 1.0)).cos();
            let on_x_edge = j == 0 || j == n;
            let on_y_edge = k == 0 || k == n + 1;
            let mult = if on_x_edge && on_y_edge {
                0.5
            } else if on_x_edge || on_y_edge {
                1.0
            } else {
                2.0
            };
            pts.push(PaduaPoint {
                x,
                y,
                lambda: mult * base,
            });
        }
    }
    pts
}

/// The (m_p+1)(m_p+2)/2 Padua points (first family: grid indices j+k even).
pub fn padua_points(m_p: u32) -> Result<Vec<[f64; 2]>> {
    if m_p < 1 {
        return Err(Error::Config("padua points need m_p >= 1".into()));
    }
    Ok(padua_points_classified(m_p)
        .iter()
        .map(|p| [p.x, p.y])
        .collect())
}

/// Integral of the L2-normalized Chebyshev polynomial over [-1,1].
fn normalized_cheb_moment(p: usize) -> f64 {
    if p % 2 == 1 {
        0.0
    } else if p == 0 {
        2.0
    } else {
        std::f64::consts::SQRT_2 * 2.0 / (1.0 - (p * p) as f64)
    }
}

/// Non-tensorial Clenshaw-Curtis cubature on Padua points: each weight is
/// the integral of the point's fundamental interpolation polynomial
/// (cosine-moment formula). Exact for total degree m_p.
pub fn padua_cubature(m_p: u32) -> Result<Rule> {
    if m_p < 1 {
        return Err(Error::Config("padua cubature needs m_p >= 1".into()));
    }
    let n = m_p as usize;
    let pts = padua_points_classified(m_p);
    let moments: Vec<f64> = (0..=n).map(normalized_cheb_moment).collect();
    let sqrt2 = std::f64::consts::SQRT_2;

    let mut nodes = Vec::with_capacity(2 * pts.len());
    let mut weights = Vec::with_capacity(pts.len());
    let mut tx = Vec::new();
    let mut ty = Vec::new();
    for p in &pts {
        crate::polybasis::family_eval_all(crate::polybasis::Family::Chebyshev, m_p, p.x, &mut tx);
        crate::polybasis::family_eval_all(crate::polybasis::Family::Chebyshev, m_p, p.y, &mut ty);
        // cumulative even-moment sums in y: cum[t] = sum_{k even <= t} m_k Tbar_k(y)
        let mut cum = vec![0.0; n + 1];
        let mut acc = 0.0;
        for t in 0..=n {
            if t % 2 == 0 {
                let tb = if t == 0 { 1.0 } else { sqrt2 * ty[t] };
                acc += moments[t] * tb;
            }
            cum[t] = acc;
        }
        let mut s = 0.0;
        for j in (0..=n).step_by(2) {
            let tbx = if j == 0 { 1.0 } else { sqrt2 * tx[j] };
            let mut term = moments[j] * tbx * cum[n - j];
            // the reproducing-kernel correction halves the (m_p, 0) term
            if j == n {
                term -= 0.5 * moments[j] * tbx * moments[0];
            }
            s += term;
        }
        nodes.push(p.x);
        nodes.push(p.y);
        weights.push(p.lambda * s);
    }
    Ok(Rule {
        kind: RuleKind::PaduaClenshawCurtis,
        size: m_p,
        dimension: 2,
        nodes,
        weights,
        exactness: Exactness::TotalDegree(m_p),
    })
}

/// Weighted sum of field values over the rule nodes. Field evaluations may
/// fan out across workers; the summation order is fixed by node index.
pub fn integrate(rule: &Rule, f: &ScalarField) -> Result<f64> {
    if rule.dimension() != f.dimension() {
        return Err(Error::Config(format!(
            "rule dimension {} does not match field dimension {}",
            rule.dimension(),
            f.dimension()
        )));
    }
    let values = exec::map_indices(rule.len(), |q| f.evaluate(rule.node(q)));
    let mut acc = 0.0;
    let mut comp = 0.0;
    for (w, v) in rule.weights.iter().zip(&values) {
        let y = w * v - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ScalarField;
    use approx::assert_abs_diff_eq;

    fn field_1d(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ScalarField {
        ScalarField::new(1, move |p| f(p[0]))
    }

    fn field_2d(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> ScalarField {
        ScalarField::new(2, move |p| f(p[0], p[1]))
    }

    #[test]
    fn trapezoid_examples() {
        let r = trapezoid_rule(1).unwrap();
        assert_eq!(r.nodes, vec![-1.0, 1.0]);
        assert_eq!(r.weights, vec![1.0, 1.0]);
        let r = trapezoid_rule(4).unwrap();
        let got = integrate(&r, &field_1d(|x| x * x)).unwrap();
        assert_abs_diff_eq!(got, 0.75, epsilon = 1e-15);
        let r = trapezoid_rule(2).unwrap();
        assert_abs_diff_eq!(
            integrate(&r, &field_1d(|x| x)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert!(trapezoid_rule(0).is_err());
    }

    #[test]
    fn simpson_examples() {
        let r = simpson_rule(2).unwrap();
        assert_abs_diff_eq!(
            integrate(&r, &field_1d(|x| x * x)).unwrap(),
            2.0 / 3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            integrate(&r, &field_1d(|x| x * x * x)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert!(simpson_rule(3).is_err());
    }

    #[test]
    fn clenshaw_curtis_examples() {
        let r = clenshaw_curtis(2).unwrap();
        assert_abs_diff_eq!(r.weights[0], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[1], 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[2], 1.0 / 3.0, epsilon = 1e-15);
        let r = clenshaw_curtis(8).unwrap();
        let got = integrate(&r, &field_1d(f64::exp)).unwrap();
        assert_abs_diff_eq!(got, 2.0 * 1f64.sinh(), epsilon = 1e-8);
        for m in 1..=12 {
            let r = clenshaw_curtis(m).unwrap();
            assert_abs_diff_eq!(
                integrate(&r, &field_1d(|_| 1.0)).unwrap(),
                2.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn gauss_examples() {
        let r = gauss_legendre(0);
        assert_eq!(r.nodes, vec![0.0]);
        assert_abs_diff_eq!(r.weights[0], 2.0, epsilon = 1e-15);
        let r = gauss_legendre(1);
        assert_abs_diff_eq!(r.nodes[0], -1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.nodes[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[1], 1.0, epsilon = 1e-15);
        let r = gauss_legendre(5);
        let got = integrate(&r, &field_1d(|x| x.powi(10))).unwrap();
        assert_abs_diff_eq!(got, 2.0 / 11.0, epsilon = 1e-14);
    }

    #[test]
    fn gauss_nodes_symmetric_interior_weights_positive() {
        for m in [0u32, 1, 2, 7, 12, 33] {
            let r = gauss_legendre(m);
            let n = r.len();
            for i in 0..n {
                assert!(r.nodes[i].abs() < 1.0, "gauss node outside (-1,1)");
                assert!(r.weights[i] > 0.0);
                assert_eq!(r.nodes[i], -r.nodes[n - 1 - i]);
                assert_eq!(r.weights[i], r.weights[n - 1 - i]);
            }
        }
    }

    #[test]
    fn cc_weights_positive() {
        for m in 1..=40 {
            let r = clenshaw_curtis(m).unwrap();
            assert!(
                r.weights.iter().all(|&w| w > 0.0),
                "CC({m}) weight not positive"
            );
        }
    }

    #[test]
    fn tensor_cc_examples() {
        let r = tensor_cc_cubature(1).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.weights.iter().all(|&w| (w - 1.0).abs() < 1e-15));
        let r = tensor_cc_cubature(4).unwrap();
        let got = integrate(&r, &field_2d(|x, y| x * x * y * y)).unwrap();
        assert_abs_diff_eq!(got, 4.0 / 9.0, epsilon = 1e-13);
        assert_eq!(tensor_cc_cubature(10).unwrap().len(), 121);
    }

    #[test]
    fn tensor_cc_matches_iterated_1d_on_separable_integrand() {
        let m = 9;
        let r2 = tensor_cc_cubature(m).unwrap();
        let r1 = clenshaw_curtis(m).unwrap();
        let gx = integrate(&r1, &field_1d(f64::exp)).unwrap();
        let gy = integrate(&r1, &field_1d(|y| (2.0 * y).cos())).unwrap();
        let got = integrate(&r2, &field_2d(|x, y| x.exp() * (2.0 * y).cos())).unwrap();
        assert_abs_diff_eq!(got, gx * gy, epsilon = 1e-13);
    }

    #[test]
    fn padua_point_counts_and_curve() {
        assert_eq!(padua_points(1).unwrap().len(), 3);
        assert_eq!(padua_points(2).unwrap().len(), 6);
        assert_eq!(padua_points(4).unwrap().len(), 15);
        for m in 1..=12u32 {
            for p in padua_points(m).unwrap() {
                let lhs = crate::polybasis::chebyshev_eval(m, p[0]);
                let rhs = crate::polybasis::chebyshev_eval(m + 1, p[1]);
                assert!(
                    (lhs - rhs).abs() < 1e-12,
                    "padua({m}) point off the generating curve"
                );
            }
        }
    }

    #[test]
    fn padua_cubature_examples() {
        let r = padua_cubature(2).unwrap();
        assert_abs_diff_eq!(
            integrate(&r, &field_2d(|_, _| 1.0)).unwrap(),
            4.0,
            epsilon = 1e-13
        );
        let r = padua_cubature(3).unwrap();
        assert_abs_diff_eq!(
            integrate(&r, &field_2d(|x, y| x * x * y)).unwrap(),
            0.0,
            epsilon = 1e-13
        );
        // degree-6 interpolation of e^{x+y} carries ~3e-5 error; 1e-6 needs m_p = 10
        let exact = 4.0 * 1f64.sinh() * 1f64.sinh();
        let r = padua_cubature(6).unwrap();
        assert_abs_diff_eq!(
            integrate(&r, &field_2d(|x, y| (x + y).exp())).unwrap(),
            exact,
            epsilon = 1e-4
        );
        let r = padua_cubature(10).unwrap();
        assert_abs_diff_eq!(
            integrate(&r, &field_2d(|x, y| (x + y).exp())).unwrap(),
            exact,
            epsilon = 1e-6
        );
    }

    #[test]
    fn padua_negative_weight_mass_is_small() {
        // two slightly negative weights are intrinsic to this cubature family
        for m in 1..=16 {
            let r = padua_cubature(m).unwrap();
            let neg: Vec<f64> = r.weights.iter().copied().filter(|&w| w < 0.0).collect();
            assert!(neg.len() <= 2, "padua({m}): {} negative weights", neg.len());
            let mass: f64 = neg.iter().map(|w| -w).sum();
            assert!(mass < 0.2, "padua({m}): negative mass {mass}");
        }
    }

    #[test]
    fn integrate_examples() {
        let r = gauss_legendre(10);
        let got = integrate(&r, &field_1d(f64::exp)).unwrap();
        assert_abs_diff_eq!(got, 2.0 * 1f64.sinh(), epsilon = 1e-12);
        let r = trapezoid_rule(2).unwrap();
        let got = integrate(&r, &field_1d(|x| x.max(0.0))).unwrap();
        assert_abs_diff_eq!(got, 0.5, epsilon = 1e-15);
        let r = clenshaw_curtis(7).unwrap();
        assert_eq!(integrate(&r, &field_1d(|_| 0.0)).unwrap(), 0.0);
        assert!(integrate(&r, &field_2d(|_, _| 0.0)).is_err());
    }

    #[test]
    fn weights_sum_to_cube_measure() {
        for m in 1..=12 {
            let s: f64 = clenshaw_curtis(m).unwrap().weights.iter().sum();
            assert_abs_diff_eq!(s, 2.0, epsilon = 1e-12);
            let s: f64 = gauss_legendre(m).weights.iter().sum();
            assert_abs_diff_eq!(s, 2.0, epsilon = 1e-12);
            let s: f64 = padua_cubature(m).unwrap().weights.iter().sum();
            assert_abs_diff_eq!(s, 4.0, epsilon = 1e-12);
            let s: f64 = tensor_cc_cubature(m).unwrap().weights.iter().sum();
            assert_abs_diff_eq!(s, 4.0, epsilon = 1e-12);
        }
    }

    /// Exhaustive exactness audit: every rule integrates every monomial up
    /// to its declared exactness within 1e-10 (sizes <= 12).
    #[test]
    fn exactness_audit() {
        fn mono_exact(a: u32) -> f64 {
            if a % 2 == 1 {
                0.0
            } else {
                2.0 / (a as f64 + 1.0)
            }
        }
        for m in 1..=12u32 {
            let mut rules = vec![
                trapezoid_rule(m).unwrap(),
                clenshaw_curtis(m).unwrap(),
                gauss_legendre(m),
            ];
            if m % 2 == 0 {
                rules.push(simpson_rule(m).unwrap());
            }
            for r in rules {
                let deg = match r.exactness() {
                    Exactness::Degree(d) => d,
                    _ => unreachable!(),
                };
                for a in 0..=deg {
                    let got: f64 = (0..r.len())
                        .map(|q| r.weights()[q] * r.node(q)[0].powi(a as i32))
                        .sum();
                    assert!(
                        (got - mono_exact(a)).abs() < 1e-10,
                        "{} failed monomial x^{a}: {got}",
                        r.label()
                    );
                }
            }
        }
        for m in 1..=12u32 {
            let r = padua_cubature(m).unwrap();
            for a in 0..=m {
                for b in 0..=(m - a) {
                    let got: f64 = (0..r.len())
                        .map(|q| {
                            r.weights()[q]
                                * r.node(q)[0].powi(a as i32)
                                * r.node(q)[1].powi(b as i32)
                        })
                        .sum();
                    let want = mono_exact(a) * mono_exact(b);
                    assert!(
                        (got - want).abs() < 1e-10,
                        "padua({m}) failed x^{a} y^{b}: {got} vs {want}"
                    );
                }
            }
            let r = tensor_cc_cubature(m).unwrap();
            for a in 0..=m {
                for b in 0..=m {
                    let got: f64 = (0..r.len())
                        .map(|q| {
                            r.weights()[q]
                                * r.node(q)[0].powi(a as i32)
                                * r.node(q)[1].powi(b as i32)
                        })
                        .sum();
                    let want = mono_exact(a) * mono_exact(b);
                    assert!(
                        (got - want).abs() < 1e-10,
                        "tensor-cc({m}) failed x^{a} y^{b}"
                    );
                }
            }
        }
    }
}
