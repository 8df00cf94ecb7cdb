//! The operator alphabet: Hadamard, CNOT, Bell states and bras, and the
//! single-qubit bra-ket factors Bob draws corrections from.
//!
//! Operator names `Z`, `X`, `Y'` label the three nontrivial correction
//! factors |↑⟩⟨↑|−|↓⟩⟨↓|, |↑⟩⟨↓|+|↓⟩⟨↑| and |↑⟩⟨↓|−|↓⟩⟨↑|; `-Y'` is the
//! sign-flipped variant that also appears in some table rows.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{PureState, QubitLabel};

/// Dense operator on `arity` qubits, row-major 2^arity × 2^arity.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    name: String,
    arity: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn new(name: impl Into<String>, arity: usize, entries: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << arity;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                amps: entries.len(),
                qubits: arity,
            });
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            name: name.into(),
            arity,
            entries,
        })
    }

    pub fn identity(arity: usize) -> Self {
        let dim = 1usize << arity;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self {
            name: "I".repeat(arity.max(1)),
            arity,
            entries,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1usize << self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn scaled(&self, name: impl Into<String>, c: Complex64) -> Self {
        Self {
            name: name.into(),
            arity: self.arity,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn dagger(&self) -> Self {
        let d = self.dim();
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                entries.push(self.entry(c, r).conj());
            }
        }
        Self {
            name: format!("{}†", self.name),
            arity: self.arity,
            entries,
        }
    }

    /// Matrix product self · other.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                name: other.name.clone(),
                arity: self.arity,
                targets: other.arity,
            });
        }
        let d = self.dim();
        let mut entries = vec![Complex64::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.entry(r, k) * other.entry(k, c);
                }
                entries[r * d + c] = acc;
            }
        }
        Ok(Self {
            name: format!("{}·{}", self.name, other.name),
            arity: self.arity,
            entries,
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim(), other.dim());
        let d = da * db;
        let mut entries = vec![Complex64::ZERO; d * d];
        for ra in 0..da {
            for ca in 0..da {
                for rb in 0..db {
                    for cb in 0..db {
                        entries[(ra * db + rb) * d + (ca * db + cb)] =
                            self.entry(ra, ca) * other.entry(rb, cb);
                    }
                }
            }
        }
        Self {
            name: format!("{}⊗{}", self.name, other.name),
            arity: self.arity + other.arity,
            entries,
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = self.dagger().compose(self).expect("same arity");
        let d = self.dim();
        (0..d).all(|r| {
            (0..d).all(|c| {
                let expect = if r == c { Complex64::ONE } else { Complex64::ZERO };
                (prod.entry(r, c) - expect).norm() <= tol
            })
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.arity == other.arity
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const NEG: Complex64 = Complex64::new(-1.0, 0.0);
const ZERO: Complex64 = Complex64::ZERO;

/// Hadamard transform on one or two qubits. The two-qubit form is the tensor
/// square H⊗H, the 4×4 matrix with overall factor 1/2.
pub fn hadamard(n: usize) -> Result<Operator> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h1 = Operator::new(
        "H",
        1,
        vec![ONE * s, ONE * s, ONE * s, NEG * s],
    )?;
    match n {
        1 => Ok(h1),
        2 => {
            let mut h2 = h1.tensor(&h1);
            h2.name = "H⊗H".into();
            Ok(h2)
        }
        _ => Err(Error::BadHadamardSize(n)),
    }
}

/// CNOT with the first qubit as control: |c,t⟩ → |c, t⊕c⟩.
pub fn cnot() -> Operator {
    Operator::new(
        "CNOT",
        2,
        vec![
            ONE, ZERO, ZERO, ZERO, //
            ZERO, ONE, ZERO, ZERO, //
            ZERO, ZERO, ZERO, ONE, //
            ZERO, ZERO, ONE, ZERO,
        ],
    )
    .expect("static 4x4")
}

/// |↑⟩⟨↓| + |↓⟩⟨↑| (bit flip).
pub fn pauli_x() -> Operator {
    Operator::new("X", 1, vec![ZERO, ONE, ONE, ZERO]).expect("static 2x2")
}

/// |↑⟩⟨↑| − |↓⟩⟨↓| (phase flip).
pub fn pauli_z() -> Operator {
    Operator::new("Z", 1, vec![ONE, ZERO, ZERO, NEG]).expect("static 2x2")
}

/// |↑⟩⟨↓| − |↓⟩⟨↑|: flips the bit and attaches a sign to |↑⟩ input.
pub fn y_prime() -> Operator {
    Operator::new("Y'", 1, vec![ZERO, ONE, NEG, ZERO]).expect("static 2x2")
}

/// |↓⟩⟨↑| − |↑⟩⟨↓|, the global-sign flip of `Y'`.
pub fn neg_y_prime() -> Operator {
    y_prime().scaled("-Y'", NEG)
}

/// The single-qubit operators appearing as correction factors, keyed by name:
/// I, Z, X, Y' and its negation -Y'.
pub fn table1_alphabet() -> Vec<Operator> {
    vec![
        Operator::identity(1),
        pauli_z(),
        pauli_x(),
        y_prime(),
        neg_y_prime(),
    ]
}

/// Look up an alphabet operator by name.
pub fn alphabet_operator(name: &str) -> Option<Operator> {
    table1_alphabet().into_iter().find(|op| op.name() == name)
}

/// One of the four Bell-measurement outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellOutcome {
    #[serde(rename = "Phi+")]
    PhiPlus,
    #[serde(rename = "Phi-")]
    PhiMinus,
    #[serde(rename = "Psi+")]
    PsiPlus,
    #[serde(rename = "Psi-")]
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    /// The ± attached to this outcome in the measurement algebra.
    pub fn sign(self) -> f64 {
        match self {
            BellOutcome::PhiPlus | BellOutcome::PsiPlus => 1.0,
            BellOutcome::PhiMinus | BellOutcome::PsiMinus => -1.0,
        }
    }

    pub fn is_phi(self) -> bool {
        matches!(self, BellOutcome::PhiPlus | BellOutcome::PhiMinus)
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BellOutcome::PhiPlus => "Φ+",
            BellOutcome::PhiMinus => "Φ-",
            BellOutcome::PsiPlus => "Ψ+",
            BellOutcome::PsiMinus => "Ψ-",
        };
        write!(f, "{s}")
    }
}

/// The Bell state for an outcome, on generic labels q0, q1:
/// Φ± = (|↑↑⟩ ± |↓↓⟩)/√2 and Ψ± = (|↑↓⟩ ± |↓↑⟩)/√2.
pub fn bell_state(outcome: BellOutcome) -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (hi, lo) = if outcome.is_phi() {
        (0b00, 0b11)
    } else {
        (0b01, 0b10)
    };
    PureState::from_terms(
        vec![QubitLabel::Index(0), QubitLabel::Index(1)],
        &[(hi, ONE * s), (lo, ONE * (s * outcome.sign()))],
    )
    .expect("static 2-qubit state")
}

/// Indexed Bell ket |β_{x,y}⟩ = (|0,y⟩ + (−1)^x |1,ȳ⟩)/√2.
///
/// The indices are strictly single bits; multi-bit arguments are rejected,
/// which is exactly what makes expressions like β_{10,11} ill-formed.
pub fn bell_ket(x: u8, y: u8) -> Result<PureState> {
    if x > 1 {
        return Err(Error::NotABit(x as u32));
    }
    if y > 1 {
        return Err(Error::NotABit(y as u32));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if x == 1 { -1.0 } else { 1.0 };
    let first = y as usize;
    let second = 0b10 | (1 - y) as usize;
    PureState::from_terms(
        vec![QubitLabel::Index(0), QubitLabel::Index(1)],
        &[(first, ONE * s), (second, ONE * (s * sign))],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{PureState, TOL_EXACT};
    use QubitLabel::Index;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let h = hadamard(1).unwrap();
        let out = PureState::basis(vec![Index(0)], 0)
            .unwrap()
            .apply(&h, &[Index(0)])
            .unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amp(0) - c(s)).norm() < TOL_EXACT);
        assert!((out.amp(1) - c(s)).norm() < TOL_EXACT);
    }

    #[test]
    fn hadamard2_matches_half_sign_matrix() {
        let h2 = hadamard(2).unwrap();
        let signs = [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
        for r in 0..4 {
            for col in 0..4 {
                assert!((h2.entry(r, col) - c(0.5 * signs[r][col])).norm() < TOL_EXACT);
            }
        }
    }

    #[test]
    fn hadamard2_is_exactly_the_tensor_square() {
        let h1 = hadamard(1).unwrap();
        let h2 = hadamard(2).unwrap();
        let square = h1.tensor(&h1);
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(h2.entry(r, col), square.entry(r, col));
            }
        }
    }

    #[test]
    fn hadamard_rejects_other_sizes() {
        assert!(matches!(hadamard(0), Err(Error::BadHadamardSize(0))));
        assert!(matches!(hadamard(3), Err(Error::BadHadamardSize(3))));
    }

    #[test]
    fn cnot_basis_action() {
        let g = cnot();
        for (input, expect) in [(0b00, 0b00), (0b01, 0b01), (0b10, 0b11), (0b11, 0b10)] {
            let s = PureState::basis(vec![Index(0), Index(1)], input).unwrap();
            let out = s.apply(&g, &[Index(0), Index(1)]).unwrap();
            assert_eq!(out.amp(expect), Complex64::ONE, "input {input:02b}");
        }
    }

    #[test]
    fn bell_states_are_orthonormal_and_complete() {
        for a in BellOutcome::ALL {
            for b in BellOutcome::ALL {
                let ov = bell_state(a).inner(&bell_state(b)).unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ov.norm() - expect).abs() < TOL_EXACT, "{a} vs {b}");
            }
        }
        // Σ |β⟩⟨β| = I₄
        for r in 0..4 {
            for col in 0..4 {
                let sum: Complex64 = BellOutcome::ALL
                    .iter()
                    .map(|&o| {
                        let s = bell_state(o);
                        s.amp(r) * s.amp(col).conj()
                    })
                    .sum();
                let expect = if r == col { Complex64::ONE } else { Complex64::ZERO };
                assert!((sum - expect).norm() < TOL_EXACT);
            }
        }
    }

    #[test]
    fn bell_ket_reproduces_the_four_outcomes() {
        let cases = [
            ((0, 0), BellOutcome::PhiPlus),
            ((0, 1), BellOutcome::PsiPlus),
            ((1, 0), BellOutcome::PhiMinus),
            ((1, 1), BellOutcome::PsiMinus),
        ];
        for ((x, y), outcome) in cases {
            let ket = bell_ket(x, y).unwrap();
            let expect = bell_state(outcome);
            assert!(
                ket.inner(&expect).unwrap().norm() > 1.0 - TOL_EXACT,
                "β_{x}{y} should be {outcome}"
            );
        }
    }

    #[test]
    fn bell_ket_rejects_multi_bit_indices() {
        // β_{10,11} with two-bit indices is not meaningful.
        assert!(matches!(bell_ket(0b10, 0b11), Err(Error::NotABit(2))));
        assert!(matches!(bell_ket(0, 3), Err(Error::NotABit(3))));
    }

    #[test]
    fn alphabet_is_unitary_and_anticommutes() {
        for op in table1_alphabet() {
            assert!(op.is_unitary(TOL_EXACT), "{} not unitary", op.name());
        }
        let zx = pauli_z().compose(&pauli_x()).unwrap();
        let xz = pauli_x().compose(&pauli_z()).unwrap();
        assert!(zx.approx_eq(&xz.scaled("-XZ", NEG), TOL_EXACT));
    }

    #[test]
    fn y_prime_action_and_square() {
        let yp = y_prime();
        let up = PureState::basis(vec![Index(0)], 0).unwrap();
        let down = PureState::basis(vec![Index(0)], 1).unwrap();
        // Y'|↓⟩ = |↑⟩ and Y'|↑⟩ = −|↓⟩
        let from_down = down.apply(&yp, &[Index(0)]).unwrap();
        assert!((from_down.amp(0) - Complex64::ONE).norm() < TOL_EXACT);
        let from_up = up.apply(&yp, &[Index(0)]).unwrap();
        assert!((from_up.amp(1) + Complex64::ONE).norm() < TOL_EXACT);
        // (Y')² = −I
        let sq = yp.compose(&yp).unwrap();
        assert!(sq.approx_eq(&Operator::identity(1).scaled("-I", NEG), TOL_EXACT));
    }

    #[test]
    fn involutions_square_to_identity() {
        let id = Operator::identity(1);
        for op in [hadamard(1).unwrap(), pauli_x(), pauli_z()] {
            let sq = op.compose(&op).unwrap();
            assert!(sq.approx_eq(&id, TOL_EXACT), "{}² ≠ I", op.name());
        }
    }
}
