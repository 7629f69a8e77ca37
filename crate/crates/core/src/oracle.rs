//! Analytic Legendre coefficients of the three 1-D benchmark spectral
//! abscissa functions, used as ground truth for Galerkin and quadrature
//! error measurements. Coefficients are stored already divided by the
//! basis norms, i.e. `c_i = <alpha, p_i> / ||p_i||^2`.

use crate::polybasis::{CoefficientSet, DegreeNorm, Family, GradedBasis};
use crate::problems::BenchmarkName;

/// Analytic coefficient series of one 1-D benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSeries {
    problem: BenchmarkName,
    coeffs: Vec<f64>,
}

impl OracleSeries {
    pub fn problem(&self) -> BenchmarkName {
        self.problem
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree_bound(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// The series as a Legendre coefficient set (D = 1).
    pub fn to_coefficient_set(&self) -> CoefficientSet {
        let basis = GradedBasis::new(Family::Legendre, 1, DegreeNorm::Total, self.degree_bound())
            .expect("static basis");
        CoefficientSet::new(basis, self.coeffs.clone()).expect("length matches by construction")
    }
}

/// Modified spherical Bessel value i_n(1), the closed-form solution of the
/// integration-by-parts recurrence for `<e^w, P_n>` under rho = 1/2:
/// i_n(1) = sum_m (1/2)^m / (m! (2n+2m+1)!!). All series terms are
/// positive, so the evaluation is cancellation-free; the double-factorial
/// prefactor is carried in log space and underflows cleanly to zero.
fn bessel_i_at_one(n: u32, log_double_factorial: f64) -> f64 {
    if log_double_factorial > 700.0 {
        return 0.0;
    }
    let mut term = (-log_double_factorial).exp();
    let mut sum = term;
    let mut m = 1u32;
    loop {
        term *= 0.5 / (m as f64 * (2 * n + 2 * m + 1) as f64);
        sum += term;
        if term < sum * 1e-18 || m > 80 {
            break;
        }
        m += 1;
    }
    sum
}

/// Coefficients of the smooth benchmark e^omega: c_i = (2i+1) i_i(1).
pub fn oracle_sae(p: u32) -> OracleSeries {
    let mut coeffs = Vec::with_capacity(p as usize + 1);
    let mut log_df = 0.0; // ln((2n+1)!!), extended incrementally
    for n in 0..=p {
        log_df += ((2 * n + 1) as f64).ln();
        coeffs.push((2 * n + 1) as f64 * bessel_i_at_one(n, log_df));
    }
    OracleSeries {
        problem: BenchmarkName::Sae1,
        coeffs,
    }
}

/// Coefficients of max(0, omega). Even inner products follow the
/// Gamma-ratio formula, evaluated by the term-ratio recurrence
/// r_{j+1} = r_j (1/2 - j) / (j + 2) from r_0 = 1/4 (all Gamma factors
/// cancel); odd coefficients vanish beyond c_1 = 1/2.
pub fn oracle_mssae(p: u32) -> OracleSeries {
    let mut coeffs = vec![0.0; p as usize + 1];
    coeffs[0] = 0.25;
    if p >= 1 {
        coeffs[1] = 0.5;
    }
    let mut r = 0.25;
    let mut j = 0u32;
    while 2 * (j + 1) <= p {
        r *= (0.5 - j as f64) / (j as f64 + 2.0);
        j += 1;
        coeffs[2 * j as usize] = (4 * j + 1) as f64 * r;
    }
    OracleSeries {
        problem: BenchmarkName::Mssae1,
        coeffs,
    }
}

/// Coefficients of the square-root benchmark. Even and odd inner products
/// follow their Gamma-ratio formulas via the term-ratio recurrences
/// e_{j+1} = e_j (1/4 - j)/(j + 7/4) from e_0 = 1/3 and
/// o_{j+1} = -o_j (j + 1/4)/(j + 9/4) from o_0 = 1/5.
pub fn oracle_mnssae(p: u32) -> OracleSeries {
    let mut coeffs = vec![0.0; p as usize + 1];
    let mut e = 1.0 / 3.0;
    coeffs[0] = e;
    let mut j = 0u32;
    while 2 * (j + 1) <= p {
        e *= (0.25 - j as f64) / (j as f64 + 1.75);
        j += 1;
        coeffs[2 * j as usize] = (4 * j + 1) as f64 * e;
    }
    let mut o = 0.2;
    if p >= 1 {
        coeffs[1] = 3.0 * o;
    }
    let mut j = 0u32;
    while 2 * j + 3 <= p {
        o *= -(j as f64 + 0.25) / (j as f64 + 2.25);
        j += 1;
        coeffs[2 * j as usize + 1] = (2 * (2 * j + 1) + 1) as f64 * o;
    }
    OracleSeries {
        problem: BenchmarkName::Mnssae1,
        coeffs,
    }
}

/// Oracle for any of the three 1-D benchmarks.
pub fn oracle_series(problem: BenchmarkName, p: u32) -> crate::Result<OracleSeries> {
    match problem {
        BenchmarkName::Sae1 => Ok(oracle_sae(p)),
        BenchmarkName::Mssae1 => Ok(oracle_mssae(p)),
        BenchmarkName::Mnssae1 => Ok(oracle_mnssae(p)),
        other => Err(crate::Error::Config(format!(
            "no analytic oracle for {other}; 2-D references are high-order cubature builds"
        ))),
    }
}
