use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::gram::weight_matrix;
use crate::error::Result;
use crate::scalar::NumericParams;

/// Tolerance for numerical positive semidefiniteness.
pub const PSD_TOL: f64 = 1e-9;

/// The Gram matrix of `V(t)_n` evaluated at `(delta, t)`.
pub fn gram_numeric(n: usize, cap: usize, p: &NumericParams) -> Result<DMatrix<f64>> {
    let w = weight_matrix(n, cap)?;
    let dim = w.len();
    Ok(DMatrix::from_fn(dim, dim, |i, j| w[i][j].numeric(p.delta, p.t)))
}

/// Sorted eigenvalues of the numeric Gram matrix.
pub fn spectrum(n: usize, cap: usize, p: &NumericParams) -> Result<Vec<f64>> {
    let g = gram_numeric(n, cap, p)?;
    let mut ev: Vec<f64> = SymmetricEigen::new(g).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

pub fn is_psd(eigenvalues: &[f64]) -> bool {
    eigenvalues.first().is_none_or(|&e| e >= -PSD_TOL)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub t: f64,
    pub delta: f64,
    pub min_eig: f64,
    pub max_eig: f64,
}

/// Extreme eigenvalues for `n = 0..=n_max`, each `delta`, and the grid
/// `t = delta * k / points`, `k = 1..=points`.
pub fn psd_sweep(n_max: usize, cap: usize, deltas: &[f64], points: usize) -> Result<Vec<SpectrumRow>> {
    let mut rows = Vec::new();
    for &delta in deltas {
        let base = NumericParams::at_delta(delta)?;
        for k in 1..=points {
            let p = base.with_t(delta * k as f64 / points as f64)?;
            for n in 0..=n_max {
                let ev = spectrum(n, cap, &p)?;
                rows.push(SpectrumRow {
                    n,
                    t: p.t,
                    delta,
                    min_eig: ev[0],
                    max_eig: ev[ev.len() - 1],
                });
            }
        }
    }
    Ok(rows)
}

pub fn spectra_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from("n,t,delta,min_eig,max_eig\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:e},{:e}\n", r.n, r.t, r.delta, r.min_eig, r.max_eig));
    }
    out
}
