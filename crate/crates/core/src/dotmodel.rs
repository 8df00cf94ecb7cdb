//! Double-dot Hamiltonian on a small occupation-number basis.
//!
//! The model has on-site (U) and nearest-neighbor (U12) Coulomb repulsion,
//! per-dot gate voltages, orbital level energies and a Zeeman term; it
//! contains no hopping, so it is diagonal in the occupation basis and the
//! whole spectrum comes from direct enumeration. Energies are in meV, gate
//! voltages in mV (so e·V lands in meV), fields in tesla, temperatures in
//! kelvin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bohr magneton in meV/T.
pub const BOHR_MAGNETON_MEV_PER_T: f64 = 5.788_381_806_0e-2;
/// Boltzmann constant in meV/K.
pub const BOLTZMANN_MEV_PER_K: f64 = 8.617_333_262e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

/// Model parameters. The g-factor defaults to magnitude 0.44; GaAs has
/// g ≈ −0.44, but only |g| enters the exported quantities here, so the sign
/// is a configuration choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotParams {
    /// On-site Coulomb repulsion U (meV).
    pub u: f64,
    /// Nearest-neighbor Coulomb repulsion U12 (meV).
    pub u12: f64,
    /// Gate voltage per dot (mV).
    pub v: [f64; 2],
    /// Lowest orbital energy per dot (meV).
    pub eps0: [f64; 2],
    /// Orbital level spacing ħω₀ (meV); orbital k sits at eps0 + k·ħω₀.
    pub omega0: f64,
    /// Orbitals kept per dot.
    pub orbitals: usize,
    /// Landé g-factor.
    pub g: f64,
    /// Magnetic field along z (T).
    pub b: f64,
    /// Temperature (K).
    pub temperature: f64,
}

impl Default for DotParams {
    fn default() -> Self {
        Self {
            u: 5.0,
            u12: 1.0,
            v: [0.0; 2],
            eps0: [0.0; 2],
            omega0: 1.0,
            orbitals: 2,
            g: 0.44,
            b: 0.0,
            temperature: 1.0,
        }
    }
}

impl DotParams {
    /// ε_{ik} = ε_{i0} + k·ħω₀.
    pub fn orbital_energy(&self, dot: usize, k: usize) -> f64 {
        self.eps0[dot] + k as f64 * self.omega0
    }

    /// Total number of fermionic modes (2 dots × K orbitals × 2 spins).
    pub fn modes(&self) -> usize {
        4 * self.orbitals
    }

    /// Zeeman splitting |g|μ_B·B between the two spin states.
    pub fn zeeman_splitting(&self) -> f64 {
        self.g.abs() * BOHR_MAGNETON_MEV_PER_T * self.b
    }
}

/// Occupation of every mode, one bit per (dot, orbital, spin). Mode order is
/// dot-major, then orbital, then spin (↑ before ↓), with mode 0 as the
/// lowest bit of `bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    bits: u32,
    orbitals: usize,
}

impl FockConfig {
    pub fn empty(orbitals: usize) -> Self {
        Self { bits: 0, orbitals }
    }

    pub fn from_bits(bits: u32, orbitals: usize) -> Result<Self> {
        let modes = 4 * orbitals;
        if modes >= 32 || bits >= (1u32 << modes) {
            return Err(Error::BadOccupation);
        }
        Ok(Self { bits, orbitals })
    }

    /// Build from explicit occupation numbers, mode order as above.
    pub fn from_occupations(occ: &[u8], orbitals: usize) -> Result<Self> {
        if occ.len() != 4 * orbitals {
            return Err(Error::BadOccupation);
        }
        let mut bits = 0u32;
        for (m, &n) in occ.iter().enumerate() {
            match n {
                0 => {}
                1 => bits |= 1 << m,
                _ => return Err(Error::BadOccupation),
            }
        }
        Ok(Self { bits, orbitals })
    }

    fn mode(&self, dot: usize, k: usize, spin: Spin) -> usize {
        let s = match spin {
            Spin::Up => 0,
            Spin::Down => 1,
        };
        (dot * self.orbitals + k) * 2 + s
    }

    /// Add one electron; the mode must be empty.
    pub fn occupy(mut self, dot: usize, k: usize, spin: Spin) -> Result<Self> {
        let m = self.mode(dot, k, spin);
        if self.bits & (1 << m) != 0 {
            return Err(Error::ModeOccupied);
        }
        self.bits |= 1 << m;
        Ok(self)
    }

    pub fn occupation(&self, dot: usize, k: usize, spin: Spin) -> u32 {
        (self.bits >> self.mode(dot, k, spin)) & 1
    }

    /// N_i, the electron count in one dot.
    pub fn electrons_in_dot(&self, dot: usize) -> u32 {
        (0..self.orbitals)
            .map(|k| {
                self.occupation(dot, k, Spin::Up) + self.occupation(dot, k, Spin::Down)
            })
            .sum()
    }

    pub fn total_electrons(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Spin projection S_z = (n_↑ − n_↓)/2 over all modes.
    pub fn sz(&self) -> f64 {
        let mut up = 0i32;
        let mut down = 0i32;
        for dot in 0..2 {
            for k in 0..self.orbitals {
                up += self.occupation(dot, k, Spin::Up) as i32;
                down += self.occupation(dot, k, Spin::Down) as i32;
            }
        }
         0.5 * (up - down) as f64
    }

    /// Occupation bits as a string, mode 0 first.
    pub fn bit_string(&self) -> String {
        (0..4 * self.orbitals)
            .map(|m| if (self.bits >> m) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Diagonal energy of a configuration:
/// Σᵢ (U/2)Nᵢ(Nᵢ−1) + U12·N₁N₂ − e·ΣᵢVᵢNᵢ + Σ_{ik} ε_{ik} n_{ik} − gμ_B·B·S_z.
pub fn config_energy(config: &FockConfig, params: &DotParams) -> Result<f64> {
    if config.orbitals != params.orbitals {
        return Err(Error::OrbitalMismatch {
            config: config.orbitals,
            params: params.orbitals,
        });
    }
    let mut energy = 0.0;
    for dot in 0..2 {
        let n = config.electrons_in_dot(dot) as f64;
        energy += 0.5 * params.u * n * (n - 1.0);
        energy -= params.v[dot] * n;
        for k in 0..params.orbitals {
            let n_ik = (config.occupation(dot, k, Spin::Up)
                + config.occupation(dot, k, Spin::Down)) as f64;
            energy += params.orbital_energy(dot, k) * n_ik;
        }
    }
    energy += params.u12
        * config.electrons_in_dot(0) as f64
        * config.electrons_in_dot(1) as f64;
    energy -= params.g * BOHR_MAGNETON_MEV_PER_T * params.b * config.sz();
    Ok(energy)
}

/// One spectrum line for the CSV dump.
#[derive(Debug, Clone)]
pub struct SpectrumRow {
    pub config: FockConfig,
    pub n1: u32,
    pub n2: u32,
    pub sz: f64,
    pub energy: f64,
}

/// Energies of every configuration, sorted ascending (ties by bit pattern).
pub fn spectrum(params: &DotParams) -> Vec<SpectrumRow> {
    let modes = params.modes();
    let mut rows: Vec<SpectrumRow> = (0..1u32 << modes)
        .map(|bits| {
            let config = FockConfig {
                bits,
                orbitals: params.orbitals,
            };
            let energy = config_energy(&config, params).expect("orbitals agree");
            SpectrumRow {
                n1: config.electrons_in_dot(0),
                n2: config.electrons_in_dot(1),
                sz: config.sz(),
                energy,
                config,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .expect("finite energies")
            .then(a.config.bits.cmp(&b.config.bits))
    });
    rows
}

/// Ground manifold of the N-electron sector.
#[derive(Debug, Clone)]
pub struct GroundSector {
    pub energy: f64,
    pub configs: Vec<FockConfig>,
}

impl GroundSector {
    pub fn degeneracy(&self) -> usize {
        self.configs.len()
    }

    /// Distinct charge sectors (N₁, N₂) in the ground manifold.
    pub fn charge_sectors(&self) -> Vec<(u32, u32)> {
        let mut sectors: Vec<(u32, u32)> = self
            .configs
            .iter()
            .map(|c| (c.electrons_in_dot(0), c.electrons_in_dot(1)))
            .collect();
        sectors.sort_unstable();
        sectors.dedup();
        sectors
    }
}

const DEGENERACY_TOL: f64 = 1e-9;

/// Enumerate all N-electron configurations and collect the minimal-energy
/// set (degenerate within 1e-9 meV).
pub fn ground_config(n: usize, params: &DotParams) -> Result<GroundSector> {
    let modes = params.modes();
    if n > modes {
        return Err(Error::TooManyElectrons { n, modes });
    }
    let mut best = f64::INFINITY;
    let mut configs = Vec::new();
    for bits in 0..1u32 << modes {
        if bits.count_ones() as usize != n {
            continue;
        }
        let config = FockConfig {
            bits,
            orbitals: params.orbitals,
        };
        let energy = config_energy(&config, params)?;
        if energy < best - DEGENERACY_TOL {
            best = energy;
            configs.clear();
            configs.push(config);
        } else if (energy - best).abs() <= DEGENERACY_TOL {
            configs.push(config);
        }
    }
    Ok(GroundSector {
        energy: best,
        configs,
    })
}

/// Boltzmann weight of one spin state over the two single-electron Zeeman
/// levels: the ground spin saturates to 1 as T → 0 and both weights are 1/2
/// at zero field.
pub fn thermal_init_fidelity(params: &DotParams, target: Spin) -> Result<f64> {
    if params.temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(params.temperature));
    }
    let zeeman = params.g * BOHR_MAGNETON_MEV_PER_T * params.b;
    let e_up = -0.5 * zeeman;
    let e_down = 0.5 * zeeman;
    let beta = 1.0 / (BOLTZMANN_MEV_PER_K * params.temperature);
    let floor = e_up.min(e_down);
    let w_up = (-(e_up - floor) * beta).exp();
    let w_down = (-(e_down - floor) * beta).exp();
    let w = match target {
        Spin::Up => w_up,
        Spin::Down => w_down,
    };
    Ok(w / (w_up + w_down))
}
