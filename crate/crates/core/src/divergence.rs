//! Rényi α-divergences, the α = 1/2 divergence, quantum relative entropy and
//! von Neumann entropy. All values are in nats; divergences that blow up are
//! returned as `f64::INFINITY` rather than as errors.

use crate::error::{Error, Result};
use crate::math::{ln, pow, sqrt_clamped, xlnx};
use crate::spectral::{
    eigendecompose, pair_spectra, DensityOperator, HermitianMatrix, PairSpectra,
};

/// Eigenvalues of σ at or below this count as zero when a negative power of σ
/// is needed.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DivergenceValue {
    pub alpha: f64,
    pub value: f64,
}

/// `S_α(ρ‖σ)`: the trace form `ln Tr ρ^α σ^{1−α} / (α−1)` for `α ∈ [0, 1)`
/// and the sandwiched form for `α > 1`.
pub fn renyi_divergence(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    alpha: f64,
) -> Result<DivergenceValue> {
    let value = if alpha == 1.0 {
        return Err(Error::AlphaOne);
    } else if alpha < 1.0 {
        petz_renyi(rho, sigma, alpha)?
    } else {
        sandwiched_renyi(rho, sigma, alpha)?
    };
    Ok(DivergenceValue { alpha, value })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if alpha == 1.0 {
        return Err(Error::AlphaOne);
    }
    Ok(())
}

/// `x^a` for a non-negative eigenvalue with `0^0 = 0`, so that `ρ^0` is the
/// support projector.
fn eigen_pow(x: f64, a: f64) -> f64 {
    if x <= 0.0 {
        if a < 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        pow(x, a)
    }
}

fn log_trace_to_divergence(trace: f64, alpha: f64) -> f64 {
    if trace <= 0.0 {
        return if alpha < 1.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
    }
    ln(trace) / (alpha - 1.0)
}

/// `ln Tr ρ^α σ^{1−α} / (α − 1)`, any `α ≥ 0` except 1.
pub fn petz_renyi(rho: &DensityOperator, sigma: &DensityOperator, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let pair = pair_spectra(rho, sigma)?;
    if alpha > 1.0 && has_singular_overlap(&pair) {
        return Err(Error::SigmaSingular);
    }
    let trace = pair.sum(|p, q| {
        let a = eigen_pow(p, alpha);
        if a == 0.0 {
            0.0
        } else {
            a * eigen_pow(q, 1.0 - alpha)
        }
    });
    Ok(log_trace_to_divergence(trace, alpha))
}

/// Support of ρ overlaps the kernel of σ.
/// Dense eigenvalues of ρ below `SINGULAR_TOL` are treated as rounding noise.
fn has_singular_overlap(pair: &PairSpectra) -> bool {
    let floor = match pair {
        PairSpectra::Commuting(_) => 0.0,
        PairSpectra::General { .. } => SINGULAR_TOL,
    };
    pair.sum(|p, q| {
        if p > floor && q <= SINGULAR_TOL {
            1.0
        } else {
            0.0
        }
    }) > 0.0
}

/// `ln Tr (σ^γ ρ σ^γ)^α / (α − 1)` with `γ = (1−α)/(2α)`, `α > 0`, `α ≠ 1`.
pub fn sandwiched_renyi(rho: &DensityOperator, sigma: &DensityOperator, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let gamma = (1.0 - alpha) / (2.0 * alpha);
    let pair = pair_spectra(rho, sigma)?;
    let trace = match pair {
        PairSpectra::Commuting(blocks) => {
            // σ^γ ρ σ^γ is diagonal with entries p q^{2γ}.
            let mut acc = 0.0;
            for &(c, p, q) in &blocks {
                if p == 0.0 {
                    continue;
                }
                if gamma < 0.0 && q <= SINGULAR_TOL {
                    return Err(Error::SigmaSingular);
                }
                acc += c as f64 * eigen_pow(p * eigen_pow(q, 2.0 * gamma), alpha);
            }
            acc
        }
        PairSpectra::General { sigma: ref mu, .. } => {
            if gamma < 0.0 && mu.iter().any(|&m| m <= SINGULAR_TOL) {
                return Err(Error::SigmaSingular);
            }
            let es = eigendecompose(&sigma.to_dense()?)?;
            let s_gamma = es.map_eigenvalues(|x| eigen_pow(x.max(0.0), gamma));
            let inner = &s_gamma * rho.to_dense()?.entries() * &s_gamma;
            let inner = HermitianMatrix::new((&inner + inner.adjoint()).map(|z| z * 0.5))?;
            eigendecompose(&inner)?
                .eigenvalues
                .iter()
                .map(|&x| eigen_pow(x.max(0.0), alpha))
                .sum()
        }
    };
    Ok(log_trace_to_divergence(trace, alpha))
}

/// `S_1/2(ρ‖σ) = −2 ln Tr √ρ √σ`; `+∞` when the supports do not overlap.
pub fn s_half(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let overlap = pair_spectra(rho, sigma)?.sum(|p, q| sqrt_clamped(p) * sqrt_clamped(q));
    if overlap <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-2.0 * ln(overlap))
}

/// `D(ρ‖σ) = Tr ρ (ln ρ − ln σ)`; `+∞` if the support of ρ is not inside that
/// of σ.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let pair = pair_spectra(rho, sigma)?;
    if has_singular_overlap(&pair) {
        return Ok(f64::INFINITY);
    }
    let cross = pair.sum(|p, q| if p > 0.0 && q > 0.0 { p * ln(q) } else { 0.0 });
    let own = match &pair {
        PairSpectra::Commuting(blocks) => blocks.iter().map(|&(c, p, _)| c as f64 * xlnx(p)).sum(),
        PairSpectra::General { rho, .. } => rho.iter().map(|&p| xlnx(p)).sum::<f64>(),
    };
    Ok(own - cross)
}

/// `S(ρ) = −Tr ρ ln ρ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    Ok(match rho.blocks() {
        Some(blocks) => -blocks.iter().map(|&(c, p)| c as f64 * xlnx(p)).sum::<f64>(),
        None => -rho
            .expanded_eigenvalues()?
            .iter()
            .map(|&p| xlnx(p))
            .sum::<f64>(),
    })
}
