//! The Bennett reference circuit and the checks that pin down the corrected
//! two-qubit Hadamard algebra of the earlier six-qubit treatment.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{bell_ket, cnot, hadamard};
use crate::protocol::ComplexParts;
use crate::state::{PureState, QubitLabel, TOL_EXACT};

fn q(i: u32) -> QubitLabel {
    QubitLabel::Index(i)
}

/// Source qubit a|0⟩ + b|1⟩ for the reference circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BennettSource {
    a: Complex64,
    b: Complex64,
}

impl BennettSource {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let nsq = a.norm_sqr() + b.norm_sqr();
        if (nsq - 1.0).abs() > TOL_EXACT {
            return Err(Error::NotNormalized(nsq));
        }
        Ok(Self { a, b })
    }

    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let nsq = a.norm_sqr() + b.norm_sqr();
        if nsq <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / nsq.sqrt();
        Ok(Self { a: a * s, b: b * s })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }
}

/// |Φ⁽⁰⁾⟩ = (a|0⟩ + b|1⟩) ⊗ (|00⟩ + |11⟩)/√2 on qubits (A', A, B).
fn circuit_input(src: &BennettSource) -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let source = PureState::new(vec![q(0)], vec![src.a, src.b]).expect("1 qubit");
    let epr = PureState::from_terms(
        vec![q(1), q(2)],
        &[(0b00, Complex64::new(s, 0.0)), (0b11, Complex64::new(s, 0.0))],
    )
    .expect("EPR pair");
    source.tensor(&epr).expect("disjoint labels")
}

/// State after the CNOT(A' → A):
/// (1/√2)[a|0⟩(|00⟩+|11⟩) + b|1⟩(|10⟩+|01⟩)].
pub fn intermediate_phi1(src: &BennettSource) -> PureState {
    circuit_input(src)
        .apply(&cnot(), &[q(0), q(1)])
        .expect("3-qubit register")
}

/// Full circuit: CNOT(A' → A) then H on A'. The output groups into the four
/// Alice blocks with overall factor 1/2.
pub fn bennett_circuit(src: &BennettSource) -> PureState {
    intermediate_phi1(src)
        .apply(&hadamard(1).expect("n=1"), &[q(0)])
        .expect("3-qubit register")
}

/// Bob's (unnormalized) coefficient pair (on |0⟩, |1⟩) for each Alice
/// outcome, exactly as the circuit output lists them.
pub fn bennett_blocks(src: &BennettSource) -> [(usize, Complex64, Complex64); 4] {
    [
        (0b00, src.a * 0.5, src.b * 0.5),
        (0b01, src.b * 0.5, src.a * 0.5),
        (0b10, src.a * 0.5, -src.b * 0.5),
        (0b11, -src.b * 0.5, src.a * 0.5),
    ]
}

/// The corrected six-qubit state: H⊗H applied to the first qubit pair of
/// α|10⟩(|0000⟩+|1111⟩)/√2 + β|01⟩(|1100⟩+|0011⟩)/√2, written out term by
/// term with prefactor 1/(2√2).
pub fn corrected_psi2(alpha: Complex64, beta: Complex64) -> PureState {
    let w = 1.0 / (2.0 * std::f64::consts::SQRT_2);
    let alpha_signs = [(0b00, 1.0), (0b01, 1.0), (0b10, -1.0), (0b11, -1.0)];
    let beta_signs = [(0b00, 1.0), (0b01, -1.0), (0b10, 1.0), (0b11, -1.0)];
    let mut terms = Vec::with_capacity(16);
    for (head, sign) in alpha_signs {
        for tail in [0b0000usize, 0b1111] {
            terms.push(((head << 4) | tail, alpha * (w * sign)));
        }
    }
    for (head, sign) in beta_signs {
        for tail in [0b1100usize, 0b0011] {
            terms.push(((head << 4) | tail, beta * (w * sign)));
        }
    }
    PureState::from_terms((0..6).map(q).collect(), &terms).expect("6-qubit state")
}

/// α|10⟩(|0000⟩+|1111⟩)/√2 + β|01⟩(|1100⟩+|0011⟩)/√2, the state the
/// two-qubit Hadamard acts on.
fn pre_hadamard_state(alpha: Complex64, beta: Complex64) -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut terms = Vec::new();
    for tail in [0b0000usize, 0b1111] {
        terms.push(((0b10 << 4) | tail, alpha * s));
    }
    for tail in [0b1100usize, 0b0011] {
        terms.push(((0b01 << 4) | tail, beta * s));
    }
    PureState::from_terms((0..6).map(q).collect(), &terms).expect("6 qubits")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErratumReport {
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BennettReport {
    pub a: ComplexParts,
    pub b: ComplexParts,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

fn states_match(a: &PureState, b: &PureState, tol: f64) -> bool {
    a.labels() == b.labels()
        && a.amps()
            .iter()
            .zip(b.amps())
            .all(|(x, y)| (x - y).norm() <= tol)
}

/// Check the circuit output coefficient-for-coefficient against the four
/// published blocks.
pub fn verify_bennett(src: &BennettSource) -> BennettReport {
    let out = bennett_circuit(src);
    let mut checks = Vec::new();
    for (alice, c0, c1) in bennett_blocks(src) {
        let got0 = out.amp((alice << 1) | 0);
        let got1 = out.amp((alice << 1) | 1);
        let pass = (got0 - c0).norm() <= TOL_EXACT && (got1 - c1).norm() <= TOL_EXACT;
        checks.push(CheckResult {
            name: format!("block_{alice:02b}"),
            pass,
            detail: format!(
                "Alice |{alice:02b}⟩: Bob coefficients ({:.4}{:+.4}i, {:.4}{:+.4}i)",
                got0.re, got0.im, got1.re, got1.im
            ),
        });
    }
    let norm_ok = (out.norm_sqr() - 1.0).abs() <= TOL_EXACT;
    checks.push(CheckResult {
        name: "norm_preserved".into(),
        pass: norm_ok,
        detail: format!("‖output‖² = {}", out.norm_sqr()),
    });
    let all_pass = checks.iter().all(|c| c.pass);
    BennettReport {
        a: src.a.into(),
        b: src.b.into(),
        checks,
        all_pass,
    }
}

/// Run the three corrections to the earlier treatment:
/// the H⊗H expansions of α|10⟩ and β|01⟩, the corrected six-qubit state as
/// an independent pipeline, and the rejection of two-bit Bell-ket indices.
pub fn erratum_check() -> ErratumReport {
    let h2 = hadamard(2).expect("n=2");
    let samples = [
        (Complex64::new(1.0, 0.0), Complex64::ZERO),
        (Complex64::ZERO, Complex64::new(1.0, 0.0)),
        (Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)),
        (Complex64::new(0.6, 0.3), Complex64::new(0.0, (0.55f64).sqrt())),
    ];
    let labels2 = vec![q(0), q(1)];
    let mut checks = Vec::new();

    // H⊗H (α|10⟩) = (α/2)(|00⟩+|01⟩−|10⟩−|11⟩)
    let mut pass = true;
    for &(alpha, _) in &samples {
        let input = PureState::from_terms(labels2.clone(), &[(0b10, alpha)]).expect("ket");
        let got = input.apply(&h2, &[q(0), q(1)]).expect("2 qubits");
        let want = PureState::new(
            labels2.clone(),
            vec![alpha * 0.5, alpha * 0.5, -alpha * 0.5, -alpha * 0.5],
        )
        .expect("expansion");
        pass &= states_match(&got, &want, TOL_EXACT);
    }
    checks.push(CheckResult {
        name: "hadamard2_on_alpha_ket".into(),
        pass,
        detail: "H⊗H α|10⟩ = (α/2)(|00⟩+|01⟩−|10⟩−|11⟩)".into(),
    });

    // H⊗H (β|01⟩) = (β/2)(|00⟩−|01⟩+|10⟩−|11⟩)
    let mut pass = true;
    for &(_, beta) in &samples {
        let input = PureState::from_terms(labels2.clone(), &[(0b01, beta)]).expect("ket");
        let got = input.apply(&h2, &[q(0), q(1)]).expect("2 qubits");
        let want = PureState::new(
            labels2.clone(),
            vec![beta * 0.5, -beta * 0.5, beta * 0.5, -beta * 0.5],
        )
        .expect("expansion");
        pass &= states_match(&got, &want, TOL_EXACT);
    }
    checks.push(CheckResult {
        name: "hadamard2_on_beta_ket".into(),
        pass,
        detail: "H⊗H β|01⟩ = (β/2)(|00⟩−|01⟩+|10⟩−|11⟩)".into(),
    });

    // Corrected |Ψ₂⟩ equals the Hadamard pipeline applied to the
    // pre-transform state.
    let mut pass = true;
    for &(alpha, beta) in &samples {
        let got = pre_hadamard_state(alpha, beta)
            .apply(&h2, &[q(0), q(1)])
            .expect("6 qubits");
        pass &= states_match(&got, &corrected_psi2(alpha, beta), TOL_EXACT);
    }
    checks.push(CheckResult {
        name: "corrected_psi2_pipeline".into(),
        pass,
        detail: "|Ψ₂⟩ matches H⊗H applied to the pre-transform state".into(),
    });

    // β_{10,11} uses two-bit indices and must be rejected.
    let rejected = matches!(bell_ket(0b10, 0b11), Err(Error::NotABit(_)));
    checks.push(CheckResult {
        name: "bell_ket_rejects_two_bit_indices".into(),
        pass: rejected,
        detail: "bell_ket(10₂, 11₂) is a precondition violation".into(),
    });

    let all_pass = checks.iter().all(|c| c.pass);
    ErratumReport { checks, all_pass }
}
