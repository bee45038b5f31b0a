//! Root fidelity, Bures distance and angle, and the pairwise
//! distinguishability `cos d_W` of a probability vector.

use crate::divergence::s_half;
use crate::error::{Error, Result};
use crate::math::{acos, sqrt, sqrt_clamped};
use crate::spectral::{
    eigendecompose, matrix_sqrt, maximally_mixed, pair_spectra, DensityOperator, HermitianMatrix,
    PairSpectra,
};

/// Tolerance on `Σ p = 1` for [`cos_dw`].
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Geometric position of a state relative to the maximally mixed state.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeometrySummary {
    pub root_fidelity: f64,
    pub bures_distance: f64,
    pub bures_angle: f64,
    /// Not a cosine: ranges over `[0, (N-1)/2]`.
    #[cfg_attr(feature = "serde", serde(rename = "cos_dW"))]
    pub cos_dw: f64,
    /// Rényi-1/2 divergence from the maximally mixed state.
    pub s_half: f64,
}

/// Uhlmann root fidelity `Tr √(√σ ρ √σ)`.
///
/// Two compressed states are treated as commuting and reduce to
/// `Σ √(p_i q_i)`; anything involving a dense operator goes through two
/// eigendecompositions.
pub fn root_fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    match pair_spectra(rho, sigma)? {
        PairSpectra::Commuting(blocks) => {
            Ok(blocks.iter().map(|&(c, p, q)| c as f64 * sqrt(p * q)).sum())
        }
        PairSpectra::General { .. } => dense_root_fidelity(&rho.to_dense()?, &sigma.to_dense()?),
    }
}

/// Fidelity of two dense operators, no commutation assumed.
pub fn dense_root_fidelity(rho: &HermitianMatrix, sigma: &HermitianMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim() as u64,
            right: sigma.dim() as u64,
        });
    }
    let root_sigma = matrix_sqrt(sigma)?;
    let inner = &root_sigma * rho.entries() * &root_sigma;
    // Symmetrize away rounding so the Hermitian check passes.
    let inner = (&inner + inner.adjoint()).map(|z| z * 0.5);
    let inner = HermitianMatrix::new(inner)?;
    Ok(eigendecompose(&inner)?
        .eigenvalues
        .iter()
        .map(|&x| sqrt_clamped(x))
        .sum())
}

/// Classical Bhattacharyya coefficient `Σ √(p_i q_i)`.
pub fn bhattacharyya(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimMismatch {
            left: p.len() as u64,
            right: q.len() as u64,
        });
    }
    Ok(p.iter().zip(q).map(|(&a, &b)| sqrt_clamped(a * b)).sum())
}

/// `D_B = Tr ρ + Tr σ − 2F`.
pub fn bures_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let f = root_fidelity(rho, sigma)?;
    Ok(rho.trace() + sigma.trace() - 2.0 * f)
}

/// `d_B = arccos F`, with `F` clamped to `[0, 1]`.
pub fn bures_angle(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    root_fidelity(rho, sigma).map(angle_from_fidelity)
}

pub fn angle_from_fidelity(f: f64) -> f64 {
    acos(f.clamp(0.0, 1.0))
}

/// `Σ_{i<j} √(p_i p_j)` evaluated as `((Σ √p_i)² − 1) / 2`.
pub fn cos_dw(probs: &[f64]) -> Result<f64> {
    let total: f64 = probs.iter().sum();
    if !((total - 1.0).abs() <= NORMALIZATION_TOL) {
        return Err(Error::NotNormalized(total));
    }
    let root_sum: f64 = probs.iter().map(|&p| sqrt_clamped(p)).sum();
    Ok((root_sum * root_sum - 1.0) / 2.0)
}

/// [`cos_dw`] over the eigenvalues of a state; compressed states use
/// `Σ √p = Σ_levels mult · √p_level`.
pub fn cos_dw_of(rho: &DensityOperator) -> Result<f64> {
    match rho.blocks() {
        Some(blocks) => {
            let total: f64 = blocks.iter().map(|&(c, p)| c as f64 * p).sum();
            if !((total - 1.0).abs() <= NORMALIZATION_TOL) {
                return Err(Error::NotNormalized(total));
            }
            let root_sum: f64 = blocks
                .iter()
                .map(|&(c, p)| c as f64 * sqrt_clamped(p))
                .sum();
            Ok((root_sum * root_sum - 1.0) / 2.0)
        }
        None => cos_dw(&rho.expanded_eigenvalues()?),
    }
}

/// Fidelity, Bures distance/angle, `cos d_W` and `S_1/2` of `rho` relative to
/// the maximally mixed state of the same dimension.
pub fn summarize(rho: &DensityOperator) -> Result<GeometrySummary> {
    let mixed = maximally_mixed(rho.dim())?;
    let root_fidelity = root_fidelity(rho, &mixed)?;
    Ok(GeometrySummary {
        root_fidelity,
        bures_distance: rho.trace() + mixed.trace() - 2.0 * root_fidelity,
        bures_angle: angle_from_fidelity(root_fidelity),
        cos_dw: cos_dw_of(rho)?,
        s_half: s_half(rho, &mixed)?,
    })
}

/// Residual `|cos² d_B − (1 + 2 cos d_W)/N|` for a summary taken against the
/// maximally mixed state.
pub fn verify_fund7(summary: &GeometrySummary, n: u64) -> f64 {
    let cos_b = libm::cos(summary.bures_angle);
    (cos_b * cos_b - (1.0 + 2.0 * summary.cos_dw) / n as f64).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Spectrum;
    use alloc::vec;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn probs(p: &[f64]) -> DensityOperator {
        DensityOperator::from_probabilities(p).unwrap()
    }

    #[test]
    fn fidelity_closed_forms() {
        let pure = probs(&[1.0, 0.0]);
        let mixed = maximally_mixed(2).unwrap();
        assert!((root_fidelity(&pure, &mixed).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((root_fidelity(&pure, &pure).unwrap() - 1.0).abs() < 1e-15);

        let dense_pure = DensityOperator::dense(pure.to_dense().unwrap());
        let f = root_fidelity(&dense_pure, &mixed).unwrap();
        assert!((f - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn bures_distance_cases() {
        let pure = probs(&[1.0, 0.0]);
        let other = probs(&[0.0, 1.0]);
        let mixed = maximally_mixed(2).unwrap();
        assert!(bures_distance(&pure, &pure).unwrap().abs() < 1e-15);
        assert!((bures_distance(&pure, &mixed).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!((bures_distance(&pure, &other).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bures_angle_cases() {
        let pure = probs(&[1.0, 0.0]);
        let other = probs(&[0.0, 1.0]);
        let mixed = maximally_mixed(2).unwrap();
        assert!(bures_angle(&pure, &pure).unwrap().abs() < 1e-7);
        assert!((bures_angle(&pure, &mixed).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((bures_angle(&pure, &other).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn fidelity_slightly_above_one_is_clamped() {
        assert_eq!(angle_from_fidelity(1.0 + 1e-12), 0.0);
    }

    #[test]
    fn cos_dw_cases() {
        assert!((cos_dw(&[0.5, 0.5]).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(cos_dw(&[1.0, 0.0]).unwrap(), 0.0);
        // pairwise sum: sqrt(0.9 * 0.1) = 0.3
        assert!((cos_dw(&[0.9, 0.1]).unwrap() - 0.3).abs() < 1e-15);
        assert!(matches!(cos_dw(&[0.5, 0.6]), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn compressed_cos_dw_matches_expanded() {
        let spectrum = Spectrum::new([(0.0, 3), (1.0, 2)]).unwrap();
        let rho = DensityOperator::diagonal(spectrum, vec![0.6, 0.4]).unwrap();
        let expanded = rho.expanded_eigenvalues().unwrap();
        assert!((cos_dw_of(&rho).unwrap() - cos_dw(&expanded).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn fund7_residual_vanishes_on_closed_forms() {
        let uniform = summarize(&maximally_mixed(2).unwrap()).unwrap();
        assert!(verify_fund7(&uniform, 2) < 1e-15);
        for n in [2usize, 5, 17] {
            let mut p = vec![0.0; n];
            p[0] = 1.0;
            let s = summarize(&probs(&p)).unwrap();
            assert_eq!(s.cos_dw, 0.0);
            assert!(verify_fund7(&s, n as u64) < 1e-15);
        }
    }

    #[test]
    fn mismatched_dimensions() {
        let a = maximally_mixed(2).unwrap();
        let b = maximally_mixed(3).unwrap();
        assert!(matches!(
            root_fidelity(&a, &b),
            Err(Error::DimMismatch { .. })
        ));
    }
}
