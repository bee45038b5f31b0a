#![allow(dead_code)]

use geothermo_core::{Complex64, HermitianMatrix, Spectrum};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hermitian matrix with entries uniform in [-scale, scale].
pub fn random_hermitian(rng: &mut impl Rng, n: usize, scale: f64) -> HermitianMatrix {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.random_range(-scale..scale), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(
                rng.random_range(-scale..scale),
                rng.random_range(-scale..scale),
            );
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).unwrap()
}

/// Dense density matrix `A A† / Tr(A A†)`.
pub fn random_density(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let a = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &a * a.adjoint();
    let tr: f64 = (0..n).map(|i| m[(i, i)].re).sum();
    let m = m.map(|z| z / tr);
    let m = (&m + m.adjoint()).map(|z| z * 0.5);
    HermitianMatrix::new(m).unwrap()
}

/// Probability vector of length `n`.
pub fn random_probs(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

/// Random spectrum with at most `max_dim` states and energies in [-5, 5].
pub fn random_spectrum(rng: &mut impl Rng, max_dim: u64) -> Spectrum {
    let n_levels = rng.random_range(1..=max_dim.min(32)) as usize;
    let mut energies: Vec<f64> = (0..n_levels).map(|_| rng.random_range(-5.0..5.0)).collect();
    energies.sort_by(f64::total_cmp);
    energies.dedup();
    let mut left = max_dim;
    let mut levels = Vec::new();
    for (k, e) in energies.iter().enumerate() {
        let remaining_levels = (energies.len() - k - 1) as u64;
        let cap = (left - remaining_levels).min(3);
        let m = rng.random_range(1..=cap);
        left -= m;
        levels.push((*e, m));
    }
    Spectrum::new(levels).unwrap()
}

/// Log-uniform temperature in [lo, hi].
pub fn random_temperature(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}
