//! Labeled multi-qubit pure states.
//!
//! Amplitudes are stored dense and indexed big-endian over the ordered label
//! list: the leftmost label is the most significant bit, so a ket string reads
//! left to right. Spin convention throughout the crate: |↑⟩ ≡ bit 0,
//! |↓⟩ ≡ bit 1. Registers never exceed six qubits, so everything is dense.

use std::fmt;

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::gates::Operator;

/// Complex amplitude.
pub type Amplitude = Complex64;

/// Tolerance for single algebraic identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for chained numeric pipelines.
pub const TOL_PIPELINE: f64 = 1e-9;

/// Name of one qubit in a register.
///
/// The six dot sites carry their own variants; anything else (reference
/// circuits, scratch registers) uses a plain index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitLabel {
    P,
    PPrime,
    Q,
    QPrime,
    R,
    RPrime,
    Index(u32),
}

impl QubitLabel {
    /// The six dot sites in protocol order.
    pub const DOTS: [QubitLabel; 6] = [
        QubitLabel::P,
        QubitLabel::PPrime,
        QubitLabel::Q,
        QubitLabel::QPrime,
        QubitLabel::R,
        QubitLabel::RPrime,
    ];
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QubitLabel::P => write!(f, "P"),
            QubitLabel::PPrime => write!(f, "P'"),
            QubitLabel::Q => write!(f, "Q"),
            QubitLabel::QPrime => write!(f, "Q'"),
            QubitLabel::R => write!(f, "R"),
            QubitLabel::RPrime => write!(f, "R'"),
            QubitLabel::Index(i) => write!(f, "q{i}"),
        }
    }
}

fn check_unique(labels: &[QubitLabel]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[i + 1..].contains(l) {
            return Err(Error::DuplicateLabel(*l));
        }
    }
    Ok(())
}

/// Pure state over a labeled register. Not necessarily normalized; projection
/// residuals keep their prefactors and the squared norm is always available
/// through [`PureState::norm_sqr`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    labels: Vec<QubitLabel>,
    amps: Vec<Amplitude>,
}

impl PureState {
    pub fn new(labels: Vec<QubitLabel>, amps: Vec<Amplitude>) -> Result<Self> {
        check_unique(&labels)?;
        if amps.len() != 1usize << labels.len() {
            return Err(Error::DimensionMismatch {
                amps: amps.len(),
                qubits: labels.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { labels, amps })
    }

    /// Basis ket |index⟩ over the given labels.
    pub fn basis(labels: Vec<QubitLabel>, index: usize) -> Result<Self> {
        let dim = 1usize << labels.len();
        let mut amps = vec![Complex64::ZERO; dim];
        if index >= dim {
            return Err(Error::DimensionMismatch {
                amps: index,
                qubits: labels.len(),
            });
        }
        amps[index] = Complex64::ONE;
        Self::new(labels, amps)
    }

    /// State assembled from sparse (basis index, amplitude) terms.
    pub fn from_terms(labels: Vec<QubitLabel>, terms: &[(usize, Amplitude)]) -> Result<Self> {
        let dim = 1usize << labels.len();
        let mut amps = vec![Complex64::ZERO; dim];
        for &(idx, amp) in terms {
            if idx >= dim {
                return Err(Error::DimensionMismatch {
                    amps: idx,
                    qubits: labels.len(),
                });
            }
            amps[idx] += amp;
        }
        Self::new(labels, amps)
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    /// Position of a label in the register, 0 = most significant bit.
    pub fn position_of(&self, label: QubitLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let nsq = self.norm_sqr();
        if nsq <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex64::new(1.0 / nsq.sqrt(), 0.0)))
    }

    pub fn scaled(&self, c: Amplitude) -> Self {
        Self {
            labels: self.labels.clone(),
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// Same amplitudes under a new label list (e.g. move |ξ⟩ from (P,P') to
    /// (R,R') for comparison with Bob's output).
    pub fn relabeled(&self, labels: Vec<QubitLabel>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::LabelMismatch);
        }
        check_unique(&labels)?;
        Ok(Self {
            labels,
            amps: self.amps.clone(),
        })
    }

    /// Tensor product; `self`'s labels become the high bits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        check_unique(&labels)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::new(labels, amps)
    }

    /// ⟨self|other⟩. Labels must match in the same order.
    pub fn inner(&self, other: &Self) -> Result<Amplitude> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// True iff |⟨self|other⟩| ≥ 1 − tol. Both states must be normalized.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> Result<bool> {
        if !self.is_normalized(TOL_PIPELINE) {
            return Err(Error::NotNormalized(self.norm_sqr()));
        }
        if !other.is_normalized(TOL_PIPELINE) {
            return Err(Error::NotNormalized(other.norm_sqr()));
        }
        Ok(self.inner(other)?.norm() >= 1.0 - tol)
    }

    /// Apply `op` to the target qubits, identity on the rest.
    pub fn apply(&self, op: &Operator, targets: &[QubitLabel]) -> Result<Self> {
        if op.arity() != targets.len() {
            return Err(Error::ArityMismatch {
                name: op.name().to_string(),
                arity: op.arity(),
                targets: targets.len(),
            });
        }
        check_unique(targets)?;
        let positions = self.positions(targets)?;

        let n = self.num_qubits();
        let k = targets.len();
        let tdim = 1usize << k;
        let mut out = vec![Complex64::ZERO; self.dim()];
        for (idx, slot) in out.iter_mut().enumerate() {
            let row = extract_bits(idx, n, &positions);
            let base = clear_bits(idx, n, &positions);
            let mut acc = Complex64::ZERO;
            for col in 0..tdim {
                let src = base | scatter_bits(col, n, &positions);
                acc += op.entry(row, col) * self.amps[src];
            }
            *slot = acc;
        }
        Self::new(self.labels.clone(), out)
    }

    /// Contract ⟨bra| against the target qubits. Returns the unnormalized
    /// residual on the remaining labels (prefactors are kept) together with
    /// the outcome probability ‖residual‖² / ‖self‖².
    pub fn project(&self, bra: &Self, targets: &[QubitLabel]) -> Result<(Self, f64)> {
        if bra.labels != targets {
            return Err(Error::LabelMismatch);
        }
        let nsq = self.norm_sqr();
        if nsq <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let positions = self.positions(targets)?;
        let n = self.num_qubits();
        let rest: Vec<usize> = (0..n).filter(|p| !positions.contains(p)).collect();
        let rest_labels: Vec<QubitLabel> = rest.iter().map(|&p| self.labels[p]).collect();

        let mut out = vec![Complex64::ZERO; 1usize << rest.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            let t = extract_bits(idx, n, &positions);
            let r = extract_bits(idx, n, &rest);
            out[r] += bra.amps[t].conj() * amp;
        }
        let residual = Self::new(rest_labels, out)?;
        let prob = residual.norm_sqr() / nsq;
        Ok((residual, prob))
    }

    /// ρ = |self⟩⟨self|. The state must be normalized.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        if !self.is_normalized(TOL_PIPELINE) {
            return Err(Error::NotNormalized(self.norm_sqr()));
        }
        let d = self.dim();
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                entries.push(self.amps[r] * self.amps[c].conj());
            }
        }
        DensityMatrix::new(self.labels.clone(), entries)
    }

    fn positions(&self, targets: &[QubitLabel]) -> Result<Vec<usize>> {
        targets
            .iter()
            .map(|&l| self.position_of(l).ok_or(Error::UnknownLabel(l)))
            .collect()
    }
}

/// Bits of `idx` at the given positions (0 = MSB of an n-qubit index),
/// packed in position order.
fn extract_bits(idx: usize, n: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .fold(0, |acc, &p| (acc << 1) | ((idx >> (n - 1 - p)) & 1))
}

fn clear_bits(idx: usize, n: usize, positions: &[usize]) -> usize {
    positions.iter().fold(idx, |acc, &p| acc & !(1 << (n - 1 - p)))
}

/// Inverse of `extract_bits`: spread the packed bits back to their positions.
fn scatter_bits(packed: usize, n: usize, positions: &[usize]) -> usize {
    let k = positions.len();
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| {
            acc | (((packed >> (k - 1 - j)) & 1) << (n - 1 - p))
        })
}
