//! Hermitian matrices, spectra with degeneracies and density operators.
//!
//! A [`DensityOperator`] is either a dense matrix or a compressed diagonal
//! state over a [`Spectrum`]. The compressed form stores one weight per
//! energy level, so a 2^25-dimensional spin ensemble with 26 distinct levels
//! costs 26 entries. Two diagonal operators are always taken to be diagonal
//! in the same basis, with expanded indices ordered level by level.

use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::math::sqrt_clamped;

pub type Complex64 = Complex<f64>;

/// Absolute tolerance (scaled by `max(1, ‖h‖∞)`) for the Hermitian check.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance of a density operator.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues down to `-PSD_TOL` count as zero.
pub const PSD_TOL: f64 = 1e-12;

/// Dense complex Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Wraps `entries` after checking that it is square and Hermitian.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidDim(0));
        }
        let defect = hermiticity_defect(&entries);
        let scale = max_abs(&entries).max(1.0);
        if !(defect <= HERMITIAN_TOL * scale) {
            return Err(Error::NonHermitian(defect));
        }
        Ok(Self { entries })
    }

    /// Real symmetric matrix from row-major data.
    pub fn from_real_row_major(dim: usize, data: &[f64]) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: data.len().checked_div(dim).unwrap_or(0),
            });
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(data[i * dim + j], 0.0)
        }))
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        max_abs(&self.entries)
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }
}

/// `max |h_ij - conj(h_ji)|`.
pub fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows().min(m.ncols());
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let d = modulus(m[(i, j)] - m[(j, i)].conj());
            worst = worst.max(d);
        }
    }
    worst
}

/// `|z|` without relying on `std` float methods.
pub fn modulus(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(modulus(*z)))
}

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl EigenDecomposition {
    /// `V diag(f(λ)) V†`.
    pub fn map_eigenvalues<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<Complex64> {
        let n = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let fk = f(lambda);
            for i in 0..n {
                scaled[(i, k)] *= fk;
            }
        }
        scaled * self.eigenvectors.adjoint()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        self.map_eigenvalues(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending with ties
/// kept in the order the solver produced them.
pub fn eigendecompose(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim();
    let eig =
        SymmetricEigen::try_new(h.entries.clone(), f64::EPSILON, 0).ok_or(Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Ascending eigenvalues only.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    eigendecompose(h).map(|e| e.eigenvalues)
}

/// One energy level and its degeneracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub multiplicity: u64,
}

/// Energy levels with integer multiplicities, energies strictly increasing.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "SpectrumRepr", into = "SpectrumRepr")
)]
pub struct Spectrum {
    levels: Vec<Level>,
    dim: u64,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct SpectrumRepr {
    levels: Vec<(f64, u64)>,
}

#[cfg(feature = "serde")]
impl TryFrom<SpectrumRepr> for Spectrum {
    type Error = Error;

    fn try_from(repr: SpectrumRepr) -> Result<Self> {
        Spectrum::new(repr.levels)
    }
}

#[cfg(feature = "serde")]
impl From<Spectrum> for SpectrumRepr {
    fn from(s: Spectrum) -> Self {
        SpectrumRepr {
            levels: s
                .levels
                .iter()
                .map(|l| (l.energy, l.multiplicity))
                .collect(),
        }
    }
}

impl Spectrum {
    pub fn new<I>(levels: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, u64)>,
    {
        let levels: Vec<Level> = levels
            .into_iter()
            .map(|(energy, multiplicity)| Level {
                energy,
                multiplicity,
            })
            .collect();
        if levels.is_empty() {
            return Err(Error::InvalidSpectrum("no levels"));
        }
        let mut dim: u64 = 0;
        for (k, level) in levels.iter().enumerate() {
            if !level.energy.is_finite() {
                return Err(Error::InvalidSpectrum("non-finite energy"));
            }
            if level.multiplicity == 0 {
                return Err(Error::InvalidSpectrum("zero multiplicity"));
            }
            if k > 0 && !(levels[k - 1].energy < level.energy) {
                return Err(Error::InvalidSpectrum("energies not strictly increasing"));
            }
            dim = dim
                .checked_add(level.multiplicity)
                .ok_or(Error::InvalidSpectrum("dimension overflows u64"))?;
        }
        Ok(Self { levels, dim })
    }

    /// Non-degenerate spectrum from strictly increasing energies.
    pub fn nondegenerate(energies: &[f64]) -> Result<Self> {
        Self::new(energies.iter().map(|&e| (e, 1)))
    }

    /// Groups a list of eigenvalues into levels. Values are sorted first;
    /// neighbours closer than `tol * max(1, |E|)` share a level whose energy
    /// is the group mean.
    pub fn from_eigenvalues(values: &[f64], tol: f64) -> Result<Self> {
        let mut sorted: Vec<f64> = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut levels: Vec<(f64, u64)> = Vec::new();
        let mut group_sum = 0.0;
        let mut group_len = 0u64;
        let mut last = f64::NAN;
        for &e in &sorted {
            if group_len > 0 && (e - last).abs() <= tol * last.abs().max(1.0) {
                group_sum += e;
                group_len += 1;
            } else {
                if group_len > 0 {
                    levels.push((group_sum / group_len as f64, group_len));
                }
                group_sum = e;
                group_len = 1;
            }
            last = e;
        }
        if group_len > 0 {
            levels.push((group_sum / group_len as f64, group_len));
        }
        Self::new(levels)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Total Hilbert-space dimension `Σ multiplicities`.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn ground_energy(&self) -> f64 {
        self.levels[0].energy
    }

    /// Every energy repeated by its multiplicity.
    pub fn expanded_energies(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim as usize);
        for level in &self.levels {
            for _ in 0..level.multiplicity {
                out.push(level.energy);
            }
        }
        out
    }
}

/// A density operator, dense or compressed.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityOperator {
    Dense(HermitianMatrix),
    /// Diagonal state; `weights[k]` is the total probability of level `k`,
    /// spread evenly over its multiplicity.
    Diagonal {
        spectrum: Spectrum,
        weights: Vec<f64>,
    },
}

impl DensityOperator {
    pub fn dense(matrix: HermitianMatrix) -> Self {
        Self::Dense(matrix)
    }

    /// Compressed state. Only the shape is checked here; see
    /// [`validate_density`].
    pub fn diagonal(spectrum: Spectrum, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != spectrum.num_levels() {
            return Err(Error::DimMismatch {
                left: spectrum.num_levels() as u64,
                right: weights.len() as u64,
            });
        }
        Ok(Self::Diagonal { spectrum, weights })
    }

    /// `diag(p_0, p_1, ...)` in the computational basis.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDim(0));
        }
        let labels: Vec<f64> = (0..probs.len()).map(|i| i as f64).collect();
        let spectrum = Spectrum::nondegenerate(&labels)?;
        Self::diagonal(spectrum, probs.to_vec())
    }

    pub fn dim(&self) -> u64 {
        match self {
            Self::Dense(m) => m.dim() as u64,
            Self::Diagonal { spectrum, .. } => spectrum.dim(),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            Self::Dense(m) => m.trace(),
            Self::Diagonal { weights, .. } => weights.iter().sum(),
        }
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        match self {
            Self::Dense(m) => m.entries().iter().map(|z| z.norm_sqr()).sum(),
            Self::Diagonal { spectrum, weights } => spectrum
                .levels()
                .iter()
                .zip(weights)
                .map(|(l, &w)| w * w / l.multiplicity as f64)
                .sum(),
        }
    }

    /// Blocks `(count, per-state probability)` of a compressed state.
    pub fn blocks(&self) -> Option<Vec<(u64, f64)>> {
        match self {
            Self::Dense(_) => None,
            Self::Diagonal { spectrum, weights } => Some(
                spectrum
                    .levels()
                    .iter()
                    .zip(weights)
                    .map(|(l, &w)| (l.multiplicity, w / l.multiplicity as f64))
                    .collect(),
            ),
        }
    }

    /// Eigenvalues of the expanded operator, ascending for the dense form and
    /// in level order for the compressed form.
    pub fn expanded_eigenvalues(&self) -> Result<Vec<f64>> {
        match self {
            Self::Dense(m) => eigenvalues(m),
            Self::Diagonal { .. } => {
                let blocks = self.blocks().unwrap_or_default();
                let mut out = Vec::new();
                for (count, p) in blocks {
                    out.extend(core::iter::repeat_n(p, count as usize));
                }
                Ok(out)
            }
        }
    }

    /// Dense matrix form. Expands compressed states, so only use it for
    /// modest dimensions.
    pub fn to_dense(&self) -> Result<HermitianMatrix> {
        match self {
            Self::Dense(m) => Ok(m.clone()),
            Self::Diagonal { .. } => HermitianMatrix::from_diagonal(&self.expanded_eigenvalues()?),
        }
    }
}

/// The maximally mixed state `1/n`.
pub fn maximally_mixed(n: u64) -> Result<DensityOperator> {
    if n < 1 {
        return Err(Error::InvalidDim(n));
    }
    let spectrum = Spectrum::new([(0.0, n)])?;
    DensityOperator::diagonal(spectrum, alloc::vec![1.0])
}

/// Checks Hermiticity, unit trace and positivity.
pub fn validate_density(rho: &DensityOperator) -> Result<()> {
    match rho {
        DensityOperator::Dense(m) => {
            let defect = hermiticity_defect(m.entries());
            if !(defect <= HERMITIAN_TOL * m.max_norm().max(1.0)) {
                return Err(Error::NonHermitian(defect));
            }
            let trace = m.trace();
            if !((trace - 1.0).abs() <= TRACE_TOL) {
                return Err(Error::TraceError(trace));
            }
            let min = eigenvalues(m)?.first().copied().unwrap_or(0.0);
            if min < -PSD_TOL {
                return Err(Error::NotPsd(min));
            }
        }
        DensityOperator::Diagonal { weights, .. } => {
            let trace: f64 = weights.iter().sum();
            if !((trace - 1.0).abs() <= TRACE_TOL) {
                return Err(Error::TraceError(trace));
            }
            let min = weights.iter().copied().fold(f64::INFINITY, f64::min);
            if min < -PSD_TOL || min.is_nan() {
                return Err(Error::NotPsd(min));
            }
        }
    }
    Ok(())
}

/// Validates, then clamps tiny negative weights of a compressed state to 0.
pub fn validated(rho: DensityOperator) -> Result<DensityOperator> {
    validate_density(&rho)?;
    Ok(match rho {
        DensityOperator::Diagonal { spectrum, weights } => DensityOperator::Diagonal {
            spectrum,
            weights: weights.into_iter().map(|w| w.max(0.0)).collect(),
        },
        dense => dense,
    })
}

fn dim_check(rho: &DensityOperator, sigma: &DensityOperator) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    Ok(())
}

/// Spectral data of a pair of states in a shared picture.
pub(crate) enum PairSpectra {
    /// Common refinement of two compressed states: `(count, p, q)` with `p`,
    /// `q` per-state probabilities (clamped at 0).
    Commuting(Vec<(u64, f64, f64)>),
    /// Eigenvalues of both operators (clamped at 0) and the squared overlaps
    /// `|<r_i|s_j>|^2` of their eigenvectors.
    General {
        rho: Vec<f64>,
        sigma: Vec<f64>,
        overlaps: DMatrix<f64>,
    },
}

impl PairSpectra {
    /// `Σ_ij f(p_i, q_j) |<r_i|s_j>|^2`, with the commuting case collapsing
    /// to `Σ count · f(p, q)`.
    pub(crate) fn sum<F: Fn(f64, f64) -> f64>(&self, f: F) -> f64 {
        match self {
            Self::Commuting(blocks) => blocks.iter().map(|&(c, p, q)| c as f64 * f(p, q)).sum(),
            Self::General {
                rho,
                sigma,
                overlaps,
            } => {
                let mut acc = 0.0;
                for (i, &p) in rho.iter().enumerate() {
                    for (j, &q) in sigma.iter().enumerate() {
                        let w = overlaps[(i, j)];
                        if w != 0.0 {
                            acc += f(p, q) * w;
                        }
                    }
                }
                acc
            }
        }
    }
}

pub(crate) fn pair_spectra(rho: &DensityOperator, sigma: &DensityOperator) -> Result<PairSpectra> {
    dim_check(rho, sigma)?;
    if let (Some(a), Some(b)) = (rho.blocks(), sigma.blocks()) {
        return Ok(PairSpectra::Commuting(common_refinement(&a, &b)));
    }
    let er = eigendecompose(&rho.to_dense()?)?;
    let es = eigendecompose(&sigma.to_dense()?)?;
    let inner = er.eigenvectors.adjoint() * &es.eigenvectors;
    let overlaps = inner.map(|z| z.norm_sqr());
    Ok(PairSpectra::General {
        rho: er.eigenvalues.iter().map(|&x| x.max(0.0)).collect(),
        sigma: es.eigenvalues.iter().map(|&x| x.max(0.0)).collect(),
        overlaps,
    })
}

fn common_refinement(a: &[(u64, f64)], b: &[(u64, f64)]) -> Vec<(u64, f64, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let (mut left_a, mut left_b) = (a[0].0, b[0].0);
    while i < a.len() && j < b.len() {
        let take = left_a.min(left_b);
        out.push((take, a[i].1.max(0.0), b[j].1.max(0.0)));
        left_a -= take;
        left_b -= take;
        if left_a == 0 {
            i += 1;
            if i < a.len() {
                left_a = a[i].0;
            }
        }
        if left_b == 0 {
            j += 1;
            if j < b.len() {
                left_b = b[j].0;
            }
        }
    }
    out
}

/// `√ρ` of a dense operator (negative eigenvalues clamped).
pub(crate) fn matrix_sqrt(m: &HermitianMatrix) -> Result<DMatrix<Complex64>> {
    Ok(eigendecompose(m)?.map_eigenvalues(sqrt_clamped))
}
