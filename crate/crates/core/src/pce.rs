//! Polynomial-chaos statistics from a Legendre coefficient set: mean,
//! variance, Sobol sensitivity indices grouped by multi-index support, and
//! total-order indices.

use crate::error::{Error, Result};
use crate::polybasis::{graded_indices, CoefficientSet, Family};
use std::collections::BTreeMap;

/// Variance decomposition of a PC expansion.
///
/// Sobol indices are keyed by the subset bitmask over dimensions (bit d set
/// means dimension d+1 belongs to the subset); every nonempty subset of
/// {1..D} is present, zero-valued or not. `degree_bound` records the
/// truncation the statistics were computed at.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub mean: f64,
    pub variance: f64,
    pub sobol: BTreeMap<u32, f64>,
    pub total: Vec<f64>,
    /// Set for zero-variance (constant) expansions, where no index is defined.
    pub degenerate: bool,
    pub degree_bound: u32,
}

impl SensitivityReport {
    /// Human-readable subset label like "{1,3}".
    pub fn subset_label(mask: u32) -> String {
        let dims: Vec<String> = (0..32)
            .filter(|d| mask & (1 << d) != 0)
            .map(|d| (d + 1).to_string())
            .collect();
        format!("{{{}}}", dims.join(","))
    }
}

fn require_legendre(coeffs: &CoefficientSet) -> Result<()> {
    if coeffs.basis().family() != Family::Legendre {
        return Err(Error::Config(
            "PC statistics need a Legendre coefficient set; convert with cheb_to_leg first".into(),
        ));
    }
    Ok(())
}

/// Mean of the expansion: the constant coefficient.
pub fn pce_mean(coeffs: &CoefficientSet) -> Result<f64> {
    require_legendre(coeffs)?;
    Ok(coeffs.coeffs()[0])
}

/// Variance of the truncated expansion: sum_{i>=1} c_i^2 <p_i, p_i>.
pub fn pce_variance(coeffs: &CoefficientSet) -> Result<f64> {
    require_legendre(coeffs)?;
    let indices = graded_indices(coeffs.basis());
    Ok(indices
        .iter()
        .zip(coeffs.coeffs())
        .skip(1)
        .map(|(mi, &c)| c * c * mi.legendre_norm_sq())
        .sum())
}

/// Full variance decomposition. Every linear index i >= 1 contributes
/// c_i^2 <p_i,p_i> to the subset on which its multi-index is strictly
/// positive; total indices sum the subsets containing each dimension.
pub fn sobol_indices(coeffs: &CoefficientSet) -> Result<SensitivityReport> {
    require_legendre(coeffs)?;
    let dim = coeffs.basis().dimension();
    if dim > 32 {
        return Err(Error::Config(
            "sobol decomposition supports up to 32 dimensions".into(),
        ));
    }
    let mean = coeffs.coeffs()[0];
    let indices = graded_indices(coeffs.basis());

    let mut by_subset: BTreeMap<u32, f64> = BTreeMap::new();
    let full = if dim == 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    };
    for mask in 1..=full {
        by_subset.insert(mask, 0.0);
    }
    let mut variance = 0.0;
    for (mi, &c) in indices.iter().zip(coeffs.coeffs()).skip(1) {
        let contribution = c * c * mi.legendre_norm_sq();
        variance += contribution;
        *by_subset
            .get_mut(&mi.support_mask())
            .expect("nonzero index has nonempty support") += contribution;
    }

    if variance <= 0.0 {
        return Ok(SensitivityReport {
            mean,
            variance: 0.0,
            sobol: by_subset, // all zeros
            total: vec![0.0; dim],
            degenerate: true,
            degree_bound: coeffs.basis().degree_bound(),
        });
    }

    for v in by_subset.values_mut() {
        *v /= variance;
    }
    let total = (0..dim)
        .map(|d| {
            by_subset
                .iter()
                .filter(|(m, _)| *m & (1 << d) != 0)
                .map(|(_, v)| v)
                .sum()
        })
        .collect();
    Ok(SensitivityReport {
        mean,
        variance,
        sobol: by_subset,
        total,
        degenerate: false,
        degree_bound: coeffs.basis().degree_bound(),
    })
}
