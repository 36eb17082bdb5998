//! Verification oracles.
//!
//! Two layers, because a synthesized S-box circuit has thousands of qubits:
//! at Toffoli granularity the state is just bits, so functional checks run
//! exhaustively on the full circuit; at Clifford+T granularity a branched
//! statevector simulator (capped at [`STATE_WIDTH_LIMIT`] qubits) pins each
//! gadget to its reference unitary across every measurement branch. A
//! circuit whose gadgets all pass equivalence and whose Toffoli-level form
//! passes the exhaustive check is accepted as correct.

use crate::anf::MultiOutputFunction;
use crate::circuit::{Circuit, ClassicalBit, Correction, Gate, Granularity, QubitId, QubitRole};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

/// Statevector simulation is refused beyond this many qubits.
pub const STATE_WIDTH_LIMIT: usize = 14;

/// Exhaustive checking is refused beyond this many input variables.
pub const EXHAUSTIVE_INPUT_LIMIT: usize = 20;

/// Number of workers for exhaustive checks; capped by `ANF_TDEPTH_THREADS`.
fn worker_count(points: usize) -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cap = std::env::var("ANF_TDEPTH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(available);
    cap.min(available).min(points.max(1))
}

/// Classical bit assignment: one bit per qubit plus the classical register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitState {
    pub qubits: Vec<bool>,
    pub classical: Vec<bool>,
}

impl BitState {
    pub fn zeros(circuit: &Circuit) -> Self {
        Self {
            qubits: vec![false; circuit.qubit_count()],
            classical: vec![false; circuit.classical_bits() as usize],
        }
    }
}

/// Propagates classical bits through a Toffoli-level circuit. Uncompute
/// markers execute as plain Toffolis, which is their exact inverse at this
/// granularity. Any gate that could create superposition is refused.
pub fn simulate_reversible(circuit: &Circuit, state: &mut BitState) -> Result<()> {
    if state.qubits.len() != circuit.qubit_count() {
        return Err(Error::InvalidOperands);
    }
    for gate in circuit.gates() {
        match *gate {
            Gate::X(q) => state.qubits[q.0 as usize] ^= true,
            Gate::Cnot { control, target } => {
                state.qubits[target.0 as usize] ^= state.qubits[control.0 as usize];
            }
            Gate::Toffoli {
                control_a,
                control_b,
                target,
                ..
            } => {
                state.qubits[target.0 as usize] ^=
                    state.qubits[control_a.0 as usize] && state.qubits[control_b.0 as usize];
            }
            _ => {
                return Err(Error::Granularity {
                    expected: Granularity::ToffoliLevel,
                    actual: circuit.granularity(),
                })
            }
        }
    }
    Ok(())
}

/// One functional counterexample.
#[derive(Debug, Clone, Serialize)]
pub struct CheckFailure {
    pub x: u64,
    pub y: u64,
    pub expected: u64,
    pub actual: u64,
    pub detail: String,
}

/// Result of an exhaustive functional check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<CheckFailure>,
    pub max_amplitude_error: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run_point(
    circuit: &Circuit,
    inputs: &[QubitId],
    outputs: &[QubitId],
    f: &MultiOutputFunction,
    x: u64,
    y: u64,
) -> Option<CheckFailure> {
    let mut state = BitState::zeros(circuit);
    for (i, q) in inputs.iter().enumerate() {
        state.qubits[q.0 as usize] = x >> i & 1 == 1;
    }
    for (j, q) in outputs.iter().enumerate() {
        state.qubits[q.0 as usize] = y >> j & 1 == 1;
    }
    if let Err(e) = simulate_reversible(circuit, &mut state) {
        return Some(CheckFailure {
            x,
            y,
            expected: 0,
            actual: 0,
            detail: format!("simulation error: {e}"),
        });
    }
    let expected = f.evaluate(x) ^ y;
    let mut actual = 0u64;
    for (j, q) in outputs.iter().enumerate() {
        actual |= (state.qubits[q.0 as usize] as u64) << j;
    }
    if actual != expected {
        return Some(CheckFailure {
            x,
            y,
            expected,
            actual,
            detail: "wrong output value".into(),
        });
    }
    for (i, q) in inputs.iter().enumerate() {
        if state.qubits[q.0 as usize] != (x >> i & 1 == 1) {
            return Some(CheckFailure {
                x,
                y,
                expected,
                actual,
                detail: format!("input qubit {} not preserved", q.0),
            });
        }
    }
    for (q, bit) in state.qubits.iter().enumerate() {
        let role = circuit.role(QubitId(q as u32));
        if role != QubitRole::Input && role != QubitRole::Output && *bit {
            return Some(CheckFailure {
                x,
                y,
                expected,
                actual,
                detail: format!("ancilla qubit {q} not restored to zero"),
            });
        }
    }
    None
}

/// Checks a Toffoli-level circuit against `f` for every input point at
/// `y = 0`, plus 16 deterministic pseudo-random `(x, y)` pairs exercising
/// the XOR-accumulation semantics. Points fan out across worker threads.
pub fn exhaustive_check(circuit: &Circuit, f: &MultiOutputFunction) -> Result<CheckReport> {
    if f.n() > EXHAUSTIVE_INPUT_LIMIT {
        return Err(Error::ExhaustiveWidth {
            n: f.n(),
            limit: EXHAUSTIVE_INPUT_LIMIT,
        });
    }
    let inputs = circuit.qubits_with_role(QubitRole::Input);
    let outputs = circuit.qubits_with_role(QubitRole::Output);
    if inputs.len() != f.n() || outputs.len() != f.m() {
        return Err(Error::Format(format!(
            "circuit has {}/{} input/output qubits, function needs {}/{}",
            inputs.len(),
            outputs.len(),
            f.n(),
            f.m()
        )));
    }
    let points: u64 = 1 << f.n();
    let workers = worker_count(points as usize);
    let chunk = points.div_ceil(workers as u64);
    let mut failures: Vec<CheckFailure> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let inputs = &inputs;
                let outputs = &outputs;
                scope.spawn(move || {
                    let mut local = Vec::new();
                    for x in w * chunk..((w + 1) * chunk).min(points) {
                        if let Some(fail) = run_point(circuit, inputs, outputs, f, x, 0) {
                            local.push(fail);
                            if local.len() >= 8 {
                                break;
                            }
                        }
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            failures.extend(h.join().expect("worker panicked"));
        }
    });
    // Spot-check nonzero output registers with a fixed-seed generator.
    let mask_y = if f.m() == 64 { u64::MAX } else { (1 << f.m()) - 1 };
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut checked = points as usize;
    for _ in 0..16 {
        seed = splitmix(seed);
        let x = seed % points;
        seed = splitmix(seed);
        let y = seed & mask_y;
        checked += 1;
        if let Some(fail) = run_point(circuit, &inputs, &outputs, f, x, y) {
            failures.push(fail);
        }
    }
    failures.sort_by_key(|f| (f.x, f.y));
    failures.truncate(16);
    Ok(CheckReport {
        checked,
        failures,
        max_amplitude_error: 0.0,
    })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// One measurement branch of a simulated circuit.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Measurement outcomes in program order.
    pub outcomes: Vec<(ClassicalBit, bool)>,
    /// Sparse amplitudes over basis states (qubit `q` is bit `q` of the key),
    /// normalized within the branch.
    pub amplitudes: BTreeMap<u64, Complex64>,
    pub probability: f64,
}

/// All surviving branches of a Clifford+T simulation.
#[derive(Debug, Clone)]
pub struct BranchedState {
    pub width: usize,
    pub branches: Vec<Branch>,
}

const BRANCH_PRUNE: f64 = 1e-12;
const AMP_PRUNE: f64 = 1e-13;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn apply_phase(amps: &mut BTreeMap<u64, Complex64>, q: u32, phase: Complex64) {
    for (key, amp) in amps.iter_mut() {
        if key >> q & 1 == 1 {
            *amp *= phase;
        }
    }
}

fn apply_h(amps: &mut BTreeMap<u64, Complex64>, q: u32) {
    let mut next: BTreeMap<u64, Complex64> = BTreeMap::new();
    for (&key, &amp) in amps.iter() {
        let zero = key & !(1 << q);
        let one = key | 1 << q;
        let sign = if key >> q & 1 == 1 { -1.0 } else { 1.0 };
        *next.entry(zero).or_insert(Complex64::ZERO) += amp * FRAC_1_SQRT_2;
        *next.entry(one).or_insert(Complex64::ZERO) += amp * FRAC_1_SQRT_2 * sign;
    }
    next.retain(|_, a| a.norm_sqr() > AMP_PRUNE * AMP_PRUNE);
    *amps = next;
}

/// Full statevector evolution with branching at measurements: each
/// measurement splits every branch into both outcomes (outcome 0 first),
/// dropping branches below probability 1e-12.
pub fn simulate_branches(circuit: &Circuit, basis_input: u64) -> Result<BranchedState> {
    let width = circuit.qubit_count();
    if width > STATE_WIDTH_LIMIT {
        return Err(Error::StateWidth {
            width,
            limit: STATE_WIDTH_LIMIT,
        });
    }
    let phase_t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let phase_tdg = phase_t.conj();
    let phase_s = Complex64::new(0.0, 1.0);
    let phase_sdg = Complex64::new(0.0, -1.0);

    let mut branches = vec![Branch {
        outcomes: Vec::new(),
        amplitudes: BTreeMap::from([(basis_input, Complex64::ONE)]),
        probability: 1.0,
    }];

    for gate in circuit.gates() {
        let mut next_branches = Vec::with_capacity(branches.len());
        for mut branch in branches {
            match *gate {
                Gate::H(q) => {
                    apply_h(&mut branch.amplitudes, q.0);
                    next_branches.push(branch);
                }
                Gate::S(q) => {
                    apply_phase(&mut branch.amplitudes, q.0, phase_s);
                    next_branches.push(branch);
                }
                Gate::Sdg(q) => {
                    apply_phase(&mut branch.amplitudes, q.0, phase_sdg);
                    next_branches.push(branch);
                }
                Gate::T(q) => {
                    apply_phase(&mut branch.amplitudes, q.0, phase_t);
                    next_branches.push(branch);
                }
                Gate::Tdg(q) => {
                    apply_phase(&mut branch.amplitudes, q.0, phase_tdg);
                    next_branches.push(branch);
                }
                Gate::Z(q) => {
                    apply_phase(&mut branch.amplitudes, q.0, -Complex64::ONE);
                    next_branches.push(branch);
                }
                Gate::X(q) => {
                    branch.amplitudes = branch
                        .amplitudes
                        .into_iter()
                        .map(|(k, a)| (k ^ 1 << q.0, a))
                        .collect();
                    next_branches.push(branch);
                }
                Gate::Cz(a, b) => {
                    for (key, amp) in branch.amplitudes.iter_mut() {
                        if key >> a.0 & 1 == 1 && key >> b.0 & 1 == 1 {
                            *amp = -*amp;
                        }
                    }
                    next_branches.push(branch);
                }
                Gate::Cnot { control, target } => {
                    branch.amplitudes = branch
                        .amplitudes
                        .into_iter()
                        .map(|(k, a)| {
                            let flip = (k >> control.0 & 1) << target.0;
                            (k ^ flip, a)
                        })
                        .collect();
                    next_branches.push(branch);
                }
                Gate::Toffoli { .. } => {
                    return Err(Error::Granularity {
                        expected: Granularity::CliffordT,
                        actual: circuit.granularity(),
                    });
                }
                Gate::MeasureZ { qubit, bit } | Gate::MeasureX { qubit, bit } => {
                    let x_basis = matches!(gate, Gate::MeasureX { .. });
                    if x_basis {
                        apply_h(&mut branch.amplitudes, qubit.0);
                    }
                    for outcome in [false, true] {
                        let amps: BTreeMap<u64, Complex64> = branch
                            .amplitudes
                            .iter()
                            .filter(|(k, _)| (*k >> qubit.0 & 1 == 1) == outcome)
                            .map(|(k, a)| (*k, *a))
                            .collect();
                        let p: f64 = amps.values().map(|a| a.norm_sqr()).sum();
                        if p < BRANCH_PRUNE {
                            continue;
                        }
                        let scale = 1.0 / p.sqrt();
                        let mut amps: BTreeMap<u64, Complex64> =
                            amps.into_iter().map(|(k, a)| (k, a * scale)).collect();
                        if x_basis {
                            // Map |outcome> back to the X eigenstate the
                            // measurement leaves behind: H|0> = |+>, H|1> = |->.
                            apply_h(&mut amps, qubit.0);
                        }
                        let mut out = branch.clone();
                        out.amplitudes = amps;
                        out.outcomes.push((bit, outcome));
                        out.probability = branch.probability * p;
                        next_branches.push(out);
                    }
                }
                Gate::CcCorrect { bit, correction } => {
                    let set = branch
                        .outcomes
                        .iter()
                        .rev()
                        .find(|(b, _)| *b == bit)
                        .map(|(_, v)| *v)
                        .ok_or(Error::UnwrittenClassicalBit(bit.0))?;
                    if set {
                        match correction {
                            Correction::Z(q) => {
                                apply_phase(&mut branch.amplitudes, q.0, -Complex64::ONE)
                            }
                            Correction::X(q) => {
                                branch.amplitudes = branch
                                    .amplitudes
                                    .into_iter()
                                    .map(|(k, a)| (k ^ 1 << q.0, a))
                                    .collect();
                            }
                            Correction::Cz(a, b) => {
                                for (key, amp) in branch.amplitudes.iter_mut() {
                                    if key >> a.0 & 1 == 1 && key >> b.0 & 1 == 1 {
                                        *amp = -*amp;
                                    }
                                }
                            }
                        }
                    }
                    next_branches.push(branch);
                }
            }
        }
        branches = next_branches;
    }
    Ok(BranchedState { width, branches })
}

impl BranchedState {
    /// Total probability over surviving branches; 1 within 1e-9 when no
    /// branch was pruned.
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }
}

/// Outcome of a gadget equivalence check.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub pass: bool,
    pub checked: usize,
    pub max_amplitude_error: f64,
    pub counterexample: Option<String>,
}

/// Checks a Clifford+T gadget against a reference basis-state permutation
/// on its data qubits.
///
/// For every computational-basis input over `data` (all other qubits start
/// in |0>) and every measurement branch, the final state must equal the
/// reference image of the input with every non-data qubit restored: |0> for
/// unmeasured scratch qubits, the X-basis eigenstate for measured ones.
/// Comparison is up to a global phase per branch, 1e-10 per amplitude.
pub fn gadget_equivalence(
    circuit: &Circuit,
    data: &[QubitId],
    reference: impl Fn(u64) -> u64,
) -> Result<EquivalenceReport> {
    let width = circuit.qubit_count();
    if width > STATE_WIDTH_LIMIT {
        return Err(Error::StateWidth {
            width,
            limit: STATE_WIDTH_LIMIT,
        });
    }
    let x_measured: Vec<QubitId> = circuit
        .gates()
        .iter()
        .filter_map(|g| match g {
            Gate::MeasureX { qubit, .. } => Some(*qubit),
            _ => None,
        })
        .collect();

    let tol = 1e-10;
    let mut max_err = 0.0f64;
    let mut checked = 0;
    for input in 0..1u64 << data.len() {
        let mut basis = 0u64;
        for (i, q) in data.iter().enumerate() {
            basis |= (input >> i & 1) << q.0;
        }
        let state = simulate_branches(circuit, basis)?;
        let prob_err = (state.total_probability() - 1.0).abs();
        if prob_err > 1e-9 {
            return Ok(EquivalenceReport {
                pass: false,
                checked,
                max_amplitude_error: prob_err,
                counterexample: Some(format!(
                    "input {input:0width$b}: branch probabilities sum to {}",
                    state.total_probability(),
                    width = data.len()
                )),
            });
        }
        let image = reference(input);
        let mut expected_key = 0u64;
        for (i, q) in data.iter().enumerate() {
            expected_key |= (image >> i & 1) << q.0;
        }
        for branch in &state.branches {
            checked += 1;
            // Expected branch state: |image> on data, |0> elsewhere, with
            // X-measured qubits in (|0> +/- |1>)/sqrt(2) per their outcome.
            let mut expected: BTreeMap<u64, Complex64> = BTreeMap::new();
            let mut stack: Vec<(u64, Complex64)> = vec![(expected_key, Complex64::ONE)];
            for q in &x_measured {
                let outcome = branch
                    .outcomes
                    .iter()
                    .rev()
                    .find(|(b, _)| {
                        circuit.gates().iter().any(|g| {
                            matches!(g, Gate::MeasureX { qubit, bit } if qubit == q && b == bit)
                        })
                    })
                    .map(|(_, v)| *v)
                    .unwrap_or(false);
                let sign = if outcome { -1.0 } else { 1.0 };
                stack = stack
                    .into_iter()
                    .flat_map(|(key, amp)| {
                        [
                            (key & !(1 << q.0), amp * FRAC_1_SQRT_2),
                            (key | 1 << q.0, amp * FRAC_1_SQRT_2 * sign),
                        ]
                    })
                    .collect();
            }
            for (k, a) in stack {
                expected.insert(k, a);
            }

            // Align global phase on the first nonzero amplitude.
            let align = expected
                .iter()
                .find_map(|(k, e)| {
                    branch
                        .amplitudes
                        .get(k)
                        .filter(|a| a.norm() > tol)
                        .map(|a| a / e)
                })
                .unwrap_or(Complex64::ONE);
            let mut err = 0.0f64;
            let keys: std::collections::BTreeSet<u64> = expected
                .keys()
                .chain(branch.amplitudes.keys())
                .copied()
                .collect();
            for k in keys {
                let e = expected.get(&k).copied().unwrap_or(Complex64::ZERO) * align;
                let a = branch.amplitudes.get(&k).copied().unwrap_or(Complex64::ZERO);
                err = err.max((e - a).norm());
            }
            max_err = max_err.max(err);
            if err > tol {
                return Ok(EquivalenceReport {
                    pass: false,
                    checked,
                    max_amplitude_error: max_err,
                    counterexample: Some(format!(
                        "input {input:0w$b}, branch {:?}: amplitude error {err:.3e}",
                        branch
                            .outcomes
                            .iter()
                            .map(|(_, v)| u8::from(*v))
                            .collect::<Vec<_>>(),
                        w = data.len(),
                    )),
                });
            }
        }
    }
    Ok(EquivalenceReport {
        pass: true,
        checked,
        max_amplitude_error: max_err,
        counterexample: None,
    })
}
