//! Depolarizing channel and teleportation-fidelity analysis, exact and
//! Monte Carlo.
//!
//! The channel acts on a chosen subsystem: ρ → p·(I/d ⊗ tr_target ρ) + (1−p)·ρ
//! with d the dimension of the target. The default insertion point is Bob's
//! corrected pair (R,R'), where the end-to-end fidelity collapses to the
//! closed form 1 − p(1 − 1/d).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::protocol::{apply_correction, encode_source, measure_cascade, SourceQubit};
use crate::state::QubitLabel;

use QubitLabel::{RPrime, R};

/// Error probability and target subsystem of one channel application.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    p: f64,
    target: Vec<QubitLabel>,
}

impl NoiseSpec {
    pub fn new(p: f64, target: Vec<QubitLabel>) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::BadProbability(p));
        }
        if target.is_empty() {
            return Err(Error::BadNoiseTarget);
        }
        for (i, l) in target.iter().enumerate() {
            if target[i + 1..].contains(l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        Ok(Self { p, target })
    }

    /// Both of Bob's qubits, the documented default (d = 4).
    pub fn bob_pair(p: f64) -> Result<Self> {
        Self::new(p, vec![R, RPrime])
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn target(&self) -> &[QubitLabel] {
        &self.target
    }

    /// Hilbert dimension of the target subsystem.
    pub fn dim(&self) -> usize {
        1usize << self.target.len()
    }

    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(p, self.target.clone())
    }
}

/// Apply the depolarizing channel to the target subsystem of ρ, identity on
/// the rest.
pub fn depolarize(rho: &DensityMatrix, spec: &NoiseSpec) -> Result<DensityMatrix> {
    let n = rho.labels().len();
    let positions: Vec<usize> = spec
        .target
        .iter()
        .map(|&l| {
            rho.labels()
                .iter()
                .position(|&x| x == l)
                .ok_or(Error::BadNoiseTarget)
        })
        .collect::<Result<_>>()?;
    let reduced = rho.partial_trace(&spec.target)?;

    let rest: Vec<usize> = (0..n).filter(|p| !positions.contains(p)).collect();
    let dim = rho.dim();
    let d = spec.dim() as f64;
    let mut entries = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        for col in 0..dim {
            let mut e = rho.entry(row, col) * (1.0 - spec.p);
            let t_row = extract(row, n, &positions);
            let t_col = extract(col, n, &positions);
            if t_row == t_col {
                let r_row = extract(row, n, &rest);
                let r_col = extract(col, n, &rest);
                e += reduced.entry(r_row, r_col) * (spec.p / d);
            }
            entries.push(e);
        }
    }
    DensityMatrix::new(rho.labels().to_vec(), entries)
}

fn extract(idx: usize, n: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .fold(0, |acc, &p| (acc << 1) | ((idx >> (n - 1 - p)) & 1))
}

/// Exact branch-averaged fidelity of the noisy protocol: each branch is run
/// exactly, the channel hits Bob's corrected state, and fidelities are
/// weighted by branch probability. For the (R,R') target this equals
/// 1 − p(1 − 1/4) for every source.
pub fn noisy_teleport_fidelity(src: &SourceQubit, spec: &NoiseSpec) -> Result<f64> {
    let bob = [R, RPrime];
    if !spec.target.iter().all(|l| bob.contains(l)) {
        return Err(Error::BadNoiseTarget);
    }
    let target = encode_source(src)
        .relabeled(vec![R, RPrime])
        .expect("2 labels");
    let mut total = 0.0;
    for branch in measure_cascade(src) {
        let psi = branch.residual.normalized().expect("nonzero residual");
        let corrected = apply_correction(&psi, branch.record);
        let noisy = depolarize(&corrected.to_density()?, spec)?;
        total += branch.prob * noisy.fidelity(&target)?;
    }
    Ok(total)
}

/// One point of a fidelity-vs-noise sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPoint {
    pub p: f64,
    pub exact_fidelity: f64,
    pub mc_fidelity: f64,
    pub mc_stderr: f64,
}

/// Exact and Monte Carlo fidelity over a probability grid. Each grid point
/// draws `shots` trajectories from a seed derived from `seed` and the point
/// index, so reruns are identical and points are independent.
///
/// The trajectory estimator replaces the target subsystem, with probability
/// p, by a uniformly random basis ket (tensored with the reduced state of
/// the rest); its mean is exactly the channel fidelity.
pub fn fidelity_sweep(
    src: &SourceQubit,
    p_values: &[f64],
    target: &[QubitLabel],
    shots: u64,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if p_values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if shots == 0 {
        return Err(Error::ZeroShots);
    }

    let xi = encode_source(src)
        .relabeled(vec![R, RPrime])
        .expect("2 labels");
    let branches = measure_cascade(src);
    let template = NoiseSpec::new(0.0, target.to_vec())?;
    let d = template.dim();

    // Per-branch corrected states, their intact fidelities, and the fidelity
    // after replacing the target subsystem by each basis ket.
    let mut intact = Vec::with_capacity(branches.len());
    let mut replaced = Vec::with_capacity(branches.len());
    for branch in &branches {
        let psi = branch.residual.normalized().expect("nonzero residual");
        let corrected = apply_correction(&psi, branch.record);
        intact.push(xi.inner(&corrected).expect("same labels").norm_sqr());
        let rho = corrected.to_density()?;
        let per_ket: Vec<f64> = (0..d)
            .map(|ket| {
                let m = replace_target(&rho, target, ket)?;
                m.fidelity(&xi)
            })
            .collect::<Result<_>>()?;
        replaced.push(per_ket);
    }

    let mut points = Vec::with_capacity(p_values.len());
    for (i, &p) in p_values.iter().enumerate() {
        let spec = template.with_p(p)?;
        let exact = noisy_teleport_fidelity(src, &spec)?;

        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..shots {
            let branch = sample_branch(&branches, rng.gen());
            let f = if rng.gen::<f64>() < p {
                replaced[branch][rng.gen_range(0..d)]
            } else {
                intact[branch]
            };
            sum += f;
            sum_sq += f * f;
        }
        let mean = sum / shots as f64;
        let stderr = if shots > 1 {
            let var = ((sum_sq - sum * sum / shots as f64) / (shots as f64 - 1.0)).max(0.0);
            (var / shots as f64).sqrt()
        } else {
            0.0
        };
        points.push(SweepPoint {
            p,
            exact_fidelity: exact,
            mc_fidelity: mean,
            mc_stderr: stderr,
        });
    }
    Ok(points)
}

fn sample_branch(branches: &[crate::protocol::Branch], mut u: f64) -> usize {
    for (i, b) in branches.iter().enumerate() {
        if u < b.prob {
            return i;
        }
        u -= b.prob;
    }
    branches.len() - 1
}

/// |ket⟩⟨ket| on the target subsystem tensored with tr_target(ρ) on the rest,
/// laid out on ρ's original labels.
fn replace_target(
    rho: &DensityMatrix,
    target: &[QubitLabel],
    ket: usize,
) -> Result<DensityMatrix> {
    let n = rho.labels().len();
    let positions: Vec<usize> = target
        .iter()
        .map(|&l| {
            rho.labels()
                .iter()
                .position(|&x| x == l)
                .ok_or(Error::BadNoiseTarget)
        })
        .collect::<Result<_>>()?;
    let rest: Vec<usize> = (0..n).filter(|p| !positions.contains(p)).collect();
    let reduced = rho.partial_trace(target)?;

    let dim = rho.dim();
    let mut entries = vec![Complex64::ZERO; dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            if extract(row, n, &positions) == ket && extract(col, n, &positions) == ket {
                let r_row = extract(row, n, &rest);
                let r_col = extract(col, n, &rest);
                entries[row * dim + col] = reduced.entry(r_row, r_col);
            }
        }
    }
    DensityMatrix::new(rho.labels().to_vec(), entries)
}
