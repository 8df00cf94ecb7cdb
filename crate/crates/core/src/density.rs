//! Density matrices for noise-channel and fidelity computations.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{PureState, QubitLabel, TOL_PIPELINE};

/// Dense Hermitian matrix over a labeled register, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<QubitLabel>,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn new(labels: Vec<QubitLabel>, entries: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << labels.len();
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                amps: entries.len(),
                qubits: labels.len(),
            });
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { labels, entries })
    }

    /// I/d on the given labels.
    pub fn maximally_mixed(labels: Vec<QubitLabel>) -> Self {
        let dim = 1usize << labels.len();
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = w;
        }
        Self { labels, entries }
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        1usize << self.labels.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|r| (r..d).all(|c| (self.entry(r, c) - self.entry(c, r).conj()).norm() <= tol))
    }

    /// Smallest eigenvalue of the (Hermitian) matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let d = self.dim();
        let m = DMatrix::from_fn(d, d, |r, c| self.entry(r, c));
        m.symmetric_eigenvalues()
            .iter()
            .fold(f64::INFINITY, |acc, &e| acc.min(e))
    }

    /// Trace one, Hermitian, and positive semidefinite within the tolerances
    /// used for physical states.
    pub fn is_valid_state(&self, tol: f64) -> bool {
        (self.trace() - Complex64::ONE).norm() <= tol
            && self.is_hermitian(tol)
            && self.min_eigenvalue() >= -1e-10
    }

    /// Convex mix (1 − w)·self + w·other on the same labels.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * (1.0 - w) + b * w)
            .collect();
        Self::new(self.labels.clone(), entries)
    }

    /// Trace out the `discard` labels; the result keeps the remaining labels
    /// in their original order.
    pub fn partial_trace(&self, discard: &[QubitLabel]) -> Result<Self> {
        let n = self.labels.len();
        let positions: Vec<usize> = discard
            .iter()
            .map(|&l| {
                self.labels
                    .iter()
                    .position(|&x| x == l)
                    .ok_or(Error::UnknownLabel(l))
            })
            .collect::<Result<_>>()?;
        let keep: Vec<usize> = (0..n).filter(|p| !positions.contains(p)).collect();
        let keep_labels: Vec<QubitLabel> = keep.iter().map(|&p| self.labels[p]).collect();

        let kd = 1usize << keep.len();
        let td = 1usize << positions.len();
        let mut out = vec![Complex64::ZERO; kd * kd];
        for r in 0..kd {
            for c in 0..kd {
                let mut acc = Complex64::ZERO;
                for t in 0..td {
                    let row = merge_bits(n, &keep, r, &positions, t);
                    let col = merge_bits(n, &keep, c, &positions, t);
                    acc += self.entry(row, col);
                }
                out[r * kd + c] = acc;
            }
        }
        Self::new(keep_labels, out)
    }

    /// ⟨target|ρ|target⟩. The target must be normalized and on the same labels.
    pub fn fidelity(&self, target: &PureState) -> Result<f64> {
        if target.labels() != self.labels {
            return Err(Error::LabelMismatch);
        }
        if !target.is_normalized(TOL_PIPELINE) {
            return Err(Error::NotNormalized(target.norm_sqr()));
        }
        let d = self.dim();
        let mut acc = Complex64::ZERO;
        for r in 0..d {
            for c in 0..d {
                acc += target.amp(r).conj() * self.entry(r, c) * target.amp(c);
            }
        }
        Ok(acc.re)
    }
}

/// Build a full index from bits packed over two disjoint position sets.
fn merge_bits(n: usize, keep: &[usize], kept: usize, traced: &[usize], t: usize) -> usize {
    let mut idx = 0usize;
    let kk = keep.len();
    for (j, &p) in keep.iter().enumerate() {
        idx |= ((kept >> (kk - 1 - j)) & 1) << (n - 1 - p);
    }
    let tk = traced.len();
    for (j, &p) in traced.iter().enumerate() {
        idx |= ((t >> (tk - 1 - j)) & 1) << (n - 1 - p);
    }
    idx
}
