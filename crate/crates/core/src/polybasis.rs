//! Legendre and Chebyshev bases, multi-index grading and pairing functions.
//!
//! Everything here works on the reference cube `[-1,1]^D` with the
//! normalized uniform weight `rho = 2^-D`. Multi-indices are graded either
//! by total degree (1-norm, Cantor pairing order) or by maximal degree
//! (inf-norm, Rosenberg-Strong pairing order); the pairing function fixes
//! the linear coefficient layout, not just set membership, so coefficient
//! vectors are index-stable across runs.

use crate::error::{Error, Result};
use crate::quadrature;

/// Univariate orthogonal polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Legendre,
    Chebyshev,
}

/// Multivariate degree norm used for truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeNorm {
    /// 1-norm of the multi-index.
    Total,
    /// inf-norm of the multi-index.
    Maximal,
}

/// Legendre polynomial `P_i(x)`, normalization `P_i(1) = 1`, by the
/// three-term recurrence.
pub fn legendre_eval(degree: u32, x: f64) -> f64 {
    match degree {
        0 => 1.0,
        1 => x,
        _ => {
            let mut pm = 1.0;
            let mut p = x;
            for n in 1..degree {
                let nf = n as f64;
                let next = ((2.0 * nf + 1.0) * x * p - nf * pm) / (nf + 1.0);
                pm = p;
                p = next;
            }
            p
        }
    }
}

/// Chebyshev polynomial `T_i(x)` by the three-term recurrence.
pub fn chebyshev_eval(degree: u32, x: f64) -> f64 {
    match degree {
        0 => 1.0,
        1 => x,
        _ => {
            let mut tm = 1.0;
            let mut t = x;
            for _ in 1..degree {
                let next = 2.0 * x * t - tm;
                tm = t;
                t = next;
            }
            t
        }
    }
}

fn family_eval(family: Family, degree: u32, x: f64) -> f64 {
    match family {
        Family::Legendre => legendre_eval(degree, x),
        Family::Chebyshev => chebyshev_eval(degree, x),
    }
}

/// Fills `out[i] = P_i(x)` (or `T_i(x)`) for `i = 0..=degree` in one sweep.
pub(crate) fn family_eval_all(family: Family, degree: u32, x: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    if degree == 0 {
        return;
    }
    out.push(x);
    for n in 1..degree {
        let nf = n as f64;
        let next = match family {
            Family::Legendre => {
                ((2.0 * nf + 1.0) * x * out[n as usize] - nf * out[n as usize - 1]) / (nf + 1.0)
            }
            Family::Chebyshev => 2.0 * x * out[n as usize] - out[n as usize - 1],
        };
        out.push(next);
    }
}

/// `||P_i||^2` under the normalized uniform weight `rho = 1/2`: `1/(2i+1)`.
pub fn legendre_norm_sq(degree: u32) -> f64 {
    1.0 / (2.0 * degree as f64 + 1.0)
}

/// Cantor pairing: consecutive numbers along the anti-diagonals of N x N.
pub fn cantor_pair(i1: u64, i2: u64) -> u64 {
    (i1 * i1 + 3 * i1 + 2 * i1 * i2 + i2 + i2 * i2) / 2
}

/// Exact inverse of [`cantor_pair`].
pub fn cantor_unpair(k: u64) -> (u64, u64) {
    // diagonal s with s(s+1)/2 <= k
    let mut s = (((8 * k + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while (s + 1) * (s + 2) / 2 <= k {
        s += 1;
    }
    while s * (s + 1) / 2 > k {
        s -= 1;
    }
    let i1 = k - s * (s + 1) / 2;
    (i1, s - i1)
}

/// Rosenberg-Strong pairing: consecutive numbers along square shells.
pub fn rosenberg_pair(i1: u64, i2: u64) -> u64 {
    let m = i1.max(i2);
    m * m + m + i1 - i2
}

/// Exact inverse of [`rosenberg_pair`].
pub fn rosenberg_unpair(k: u64) -> (u64, u64) {
    let mut m = k.isqrt();
    while (m + 1) * (m + 1) <= k {
        m += 1;
    }
    while m * m > k {
        m -= 1;
    }
    let r = k - m * m;
    if r <= m {
        (r, m)
    } else {
        (m, 2 * m - r)
    }
}

/// A multi-index `(i_1, ..., i_D)` of univariate degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "multi-index needs at least one entry");
        Self { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn maximal_degree(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn degree(&self, norm: DegreeNorm) -> u32 {
        match norm {
            DegreeNorm::Total => self.total_degree(),
            DegreeNorm::Maximal => self.maximal_degree(),
        }
    }

    /// Bitmask over dimensions with a nonzero entry (bit d set iff i_{d+1} > 0).
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for (d, &i) in self.entries.iter().enumerate() {
            if i > 0 {
                mask |= 1 << d;
            }
        }
        mask
    }

    /// Tensor-product Legendre norm: product of the univariate norms.
    pub fn legendre_norm_sq(&self) -> f64 {
        self.entries.iter().map(|&i| legendre_norm_sq(i)).product()
    }
}

/// A degree-graded tensor basis: family, dimension, degree norm and bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedBasis {
    family: Family,
    dimension: usize,
    norm: DegreeNorm,
    degree_bound: u32,
}

impl GradedBasis {
    pub fn new(
        family: Family,
        dimension: usize,
        norm: DegreeNorm,
        degree_bound: u32,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Config("basis dimension must be at least 1".into()));
        }
        Ok(Self {
            family,
            dimension,
            norm,
            degree_bound,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn norm(&self) -> DegreeNorm {
        self.norm
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Number of basis polynomials, `P + 1`.
    pub fn len(&self) -> usize {
        let p = self.degree_bound as u128;
        let d = self.dimension as u128;
        match self.norm {
            DegreeNorm::Total => {
                // C(P_d + D, D)
                let mut num = 1u128;
                for k in 1..=d {
                    num = num * (p + k) / k;
                }
                num as usize
            }
            DegreeNorm::Maximal => (p + 1).pow(self.dimension as u32) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Returns a basis identical except for the family.
    pub fn with_family(&self, family: Family) -> Self {
        Self {
            family,
            ..self.clone()
        }
    }
}

/// All multi-indices of norm <= degree bound, in the basis linear order:
/// natural order for D = 1, Cantor-pairing order for total degree and
/// Rosenberg-Strong order for maximal degree when D = 2. No standard
/// D-tupling order exists for D > 2; this implementation fixes
/// norm-shell-major, lexicographic-within-shell order.
pub fn graded_indices(basis: &GradedBasis) -> Vec<MultiIndex> {
    let pd = basis.degree_bound();
    match (basis.dimension(), basis.norm()) {
        (1, _) => (0..=pd).map(|i| MultiIndex::new(vec![i])).collect(),
        (2, DegreeNorm::Total) => {
            let mut out = Vec::with_capacity(basis.len());
            for s in 0..=pd {
                for i1 in 0..=s {
                    out.push(MultiIndex::new(vec![i1, s - i1]));
                }
            }
            out
        }
        (2, DegreeNorm::Maximal) => {
            let mut out = Vec::with_capacity(basis.len());
            for m in 0..=pd {
                for i1 in 0..m {
                    out.push(MultiIndex::new(vec![i1, m]));
                }
                for i2 in (0..=m).rev() {
                    out.push(MultiIndex::new(vec![m, i2]));
                }
            }
            out
        }
        (d, norm) => {
            let mut out = Vec::with_capacity(basis.len());
            let mut stack = vec![0u32; d];
            for shell in 0..=pd {
                enumerate_shell(norm, shell, &mut stack, 0, &mut out);
            }
            out
        }
    }
}

fn enumerate_shell(
    norm: DegreeNorm,
    shell: u32,
    entries: &mut Vec<u32>,
    pos: usize,
    out: &mut Vec<MultiIndex>,
) {
    if pos == entries.len() {
        let mi = MultiIndex::new(entries.clone());
        if mi.degree(norm) == shell {
            out.push(mi);
        }
        return;
    }
    for v in 0..=shell {
        entries[pos] = v;
        enumerate_shell(norm, shell, entries, pos + 1, out);
    }
}

/// Tensor-product basis evaluation `p_i(x) = prod_d p_{i_d}(x_d)`.
pub fn basis_eval(basis: &GradedBasis, index: &MultiIndex, point: &[f64]) -> f64 {
    debug_assert_eq!(index.dimension(), basis.dimension());
    debug_assert_eq!(point.len(), basis.dimension());
    index
        .entries()
        .iter()
        .zip(point)
        .map(|(&i, &x)| family_eval(basis.family(), i, x))
        .product()
}

/// Coefficients of a truncated expansion in a graded basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    basis: GradedBasis,
    coeffs: Vec<f64>,
}

impl CoefficientSet {
    pub fn new(basis: GradedBasis, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::Config(format!(
                "coefficient count {} does not match basis size {}",
                coeffs.len(),
                basis.len()
            )));
        }
        Ok(Self { basis, coeffs })
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Evaluates the expansion by Clenshaw summation in the native family
    /// (nested per dimension for D = 2; direct tensor sum for D > 2).
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        assert_eq!(
            point.len(),
            self.basis.dimension(),
            "point dimension mismatch"
        );
        let family = self.basis.family();
        match self.basis.dimension() {
            1 => clenshaw(family, &self.coeffs, point[0]),
            2 => {
                let n = self.basis.degree_bound() as usize + 1;
                let mut mat = vec![0.0; n * n];
                for (mi, &c) in graded_indices(&self.basis).iter().zip(&self.coeffs) {
                    let e = mi.entries();
                    mat[e[0] as usize * n + e[1] as usize] = c;
                }
                let rows: Vec<f64> = (0..n)
                    .map(|j| clenshaw(family, &mat[j * n..(j + 1) * n], point[1]))
                    .collect();
                clenshaw(family, &rows, point[0])
            }
            _ => graded_indices(&self.basis)
                .iter()
                .zip(&self.coeffs)
                .map(|(mi, &c)| c * basis_eval(&self.basis, mi, point))
                .sum(),
        }
    }
}

/// Clenshaw summation of `sum_k coeffs[k] p_k(x)` for either family.
pub(crate) fn clenshaw(family: Family, coeffs: &[f64], x: f64) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    match family {
        Family::Chebyshev => {
            let mut b1 = 0.0;
            let mut b2 = 0.0;
            for k in (1..coeffs.len()).rev() {
                let b = coeffs[k] + 2.0 * x * b1 - b2;
                b2 = b1;
                b1 = b;
            }
            coeffs[0] + x * b1 - b2
        }
        Family::Legendre => {
            // p_{k+1} = A_k x p_k + C_k p_{k-1}, A_k = (2k+1)/(k+1), C_k = -k/(k+1)
            let mut b1 = 0.0;
            let mut b2 = 0.0;
            for k in (1..coeffs.len()).rev() {
                let kf = k as f64;
                let a_k = (2.0 * kf + 1.0) / (kf + 1.0);
                let c_k1 = -(kf + 1.0) / (kf + 2.0);
                let b = coeffs[k] + a_k * x * b1 + c_k1 * b2;
                b2 = b1;
                b1 = b;
            }
            coeffs[0] + x * b1 - 0.5 * b2
        }
    }
}

/// Converts a Chebyshev-family coefficient set into the Legendre-family set
/// representing the identical polynomial, by evaluating the expansion at a
/// tensor Gauss-Legendre rule of per-dimension exactness >= 2 P_d and
/// projecting with the rho-weighted inner product.
pub fn cheb_to_leg(cheb: &CoefficientSet) -> Result<CoefficientSet> {
    if cheb.basis().family() != Family::Chebyshev {
        return Err(Error::Config(
            "cheb_to_leg expects a Chebyshev-family input".into(),
        ));
    }
    let dim = cheb.basis().dimension();
    let pd = cheb.basis().degree_bound();
    // M+1 Gauss points are exact to degree 2M+1; M = P_d + 1 leaves margin.
    let rule = quadrature::gauss_legendre(pd + 1);
    let nodes_1d: Vec<f64> = (0..rule.len()).map(|q| rule.node(q)[0]).collect();
    let w_1d = rule.weights();

    let leg_basis = cheb.basis().with_family(Family::Legendre);
    let indices = graded_indices(&leg_basis);
    let rho = 0.5f64.powi(dim as i32);

    // Legendre values of every degree at the 1-D nodes, node-major
    let mut leg_table = Vec::with_capacity(nodes_1d.len() * (pd as usize + 1));
    let mut scratch = Vec::new();
    for &x in &nodes_1d {
        family_eval_all(Family::Legendre, pd, x, &mut scratch);
        leg_table.extend_from_slice(&scratch);
    }
    let leg_at = |q: usize, deg: u32| leg_table[q * (pd as usize + 1) + deg as usize];

    // odometer over the tensor grid
    let n1 = nodes_1d.len();
    let total = n1.pow(dim as u32);
    let mut point = vec![0.0; dim];
    let mut coeffs = vec![0.0; indices.len()];
    let mut node_ids = vec![0usize; dim];
    let mut fvals = Vec::with_capacity(total);
    let mut wvals = Vec::with_capacity(total);
    let mut ids = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut w = 1.0;
        for d in 0..dim {
            let q = rem % n1;
            rem /= n1;
            node_ids[d] = q;
            point[d] = nodes_1d[q];
            w *= w_1d[q];
        }
        fvals.push(cheb.evaluate(&point));
        wvals.push(w);
        ids.push(node_ids.clone());
    }
    for (slot, mi) in indices.iter().enumerate() {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for flat in 0..total {
            let mut p = 1.0;
            for (d, &deg) in mi.entries().iter().enumerate() {
                p *= leg_at(ids[flat][d], deg);
            }
            // Kahan summation
            let y = wvals[flat] * fvals[flat] * p - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        coeffs[slot] = acc * rho / mi.legendre_norm_sq();
    }
    CoefficientSet::new(leg_basis, coeffs)
}
