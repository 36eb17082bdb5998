//! Gate-level intermediate representation.
//!
//! A circuit is an ordered gate list over role-tagged qubits plus a classical
//! register. Depth metrics are weighted longest paths in the dependency DAG:
//! two gates depend on each other iff they share a qubit or a classical bit,
//! and a gate's layer is one past the latest layer among its wires (ASAP).
//! T depth counts only T/T† along a path, CNOT depth only CNOTs; CZ and the
//! classically controlled corrections count toward neither.

use crate::{Error, Result};
use serde::Serialize;
use std::fmt::Write as _;

/// Dense qubit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId(pub u32);

/// Classical bit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalBit(pub u32);

/// What a qubit is for. Fixed at allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitRole {
    Input,
    Output,
    InputCopy,
    TreeNode,
    Helper,
}

impl QubitRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            QubitRole::Input => "input",
            QubitRole::Output => "output",
            QubitRole::InputCopy => "input-copy",
            QubitRole::TreeNode => "tree-node",
            QubitRole::Helper => "helper",
        }
    }

    fn from_str(s: &str) -> Option<Self> {
        Some(match s {
            "input" => QubitRole::Input,
            "output" => QubitRole::Output,
            "input-copy" => QubitRole::InputCopy,
            "tree-node" => QubitRole::TreeNode,
            "helper" => QubitRole::Helper,
            _ => return None,
        })
    }
}

/// Clifford correction applied under classical control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correction {
    Z(QubitId),
    X(QubitId),
    Cz(QubitId, QubitId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H(QubitId),
    S(QubitId),
    Sdg(QubitId),
    T(QubitId),
    Tdg(QubitId),
    X(QubitId),
    Z(QubitId),
    Cz(QubitId, QubitId),
    Cnot {
        control: QubitId,
        target: QubitId,
    },
    /// Only valid at Toffoli granularity. `uncompute` marks gates that the
    /// lowering replaces with measurement-based erasure instead of a compute
    /// gadget; reversible simulation executes them as plain Toffolis.
    Toffoli {
        control_a: QubitId,
        control_b: QubitId,
        target: QubitId,
        uncompute: bool,
    },
    MeasureX {
        qubit: QubitId,
        bit: ClassicalBit,
    },
    MeasureZ {
        qubit: QubitId,
        bit: ClassicalBit,
    },
    CcCorrect {
        bit: ClassicalBit,
        correction: Correction,
    },
}

impl Gate {
    pub fn is_t(&self) -> bool {
        matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// Qubit operands, used for validation and dependency tracking.
    pub fn qubits(&self) -> Vec<QubitId> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) | Gate::X(q)
            | Gate::Z(q) => vec![q],
            Gate::Cz(a, b) => vec![a, b],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Toffoli {
                control_a,
                control_b,
                target,
                ..
            } => vec![control_a, control_b, target],
            Gate::MeasureX { qubit, .. } | Gate::MeasureZ { qubit, .. } => vec![qubit],
            Gate::CcCorrect { correction, .. } => match correction {
                Correction::Z(q) | Correction::X(q) => vec![q],
                Correction::Cz(a, b) => vec![a, b],
            },
        }
    }

    fn classical_bit(&self) -> Option<ClassicalBit> {
        match *self {
            Gate::MeasureX { bit, .. } | Gate::MeasureZ { bit, .. } | Gate::CcCorrect { bit, .. } => {
                Some(bit)
            }
            _ => None,
        }
    }

    fn writes_classical(&self) -> bool {
        matches!(self, Gate::MeasureX { .. } | Gate::MeasureZ { .. })
    }
}

/// Gate granularity of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Granularity {
    ToffoliLevel,
    CliffordT,
}

/// Exact integer resource metrics of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub qubit_count: usize,
    /// Non-input, non-output qubits.
    pub ancilla_count: usize,
    pub t_count: usize,
    pub t_depth: usize,
    pub cnot_count: usize,
    pub cnot_depth: usize,
    pub total_depth: usize,
    pub measure_count: usize,
}

/// ASAP layering of a circuit.
#[derive(Debug, Clone)]
pub struct Schedule {
    /// 1-based layer per gate, parallel to the gate list.
    pub layer_of: Vec<usize>,
    pub layers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    roles: Vec<QubitRole>,
    classical_bits: u32,
    gates: Vec<Gate>,
    granularity: Granularity,
}

impl Circuit {
    pub fn new(granularity: Granularity) -> Self {
        Self {
            roles: Vec::new(),
            classical_bits: 0,
            gates: Vec::new(),
            granularity,
        }
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn add_qubit(&mut self, role: QubitRole) -> QubitId {
        let id = QubitId(self.roles.len() as u32);
        self.roles.push(role);
        id
    }

    pub fn add_classical_bit(&mut self) -> ClassicalBit {
        let id = ClassicalBit(self.classical_bits);
        self.classical_bits += 1;
        id
    }

    pub fn qubit_count(&self) -> usize {
        self.roles.len()
    }

    pub fn classical_bits(&self) -> u32 {
        self.classical_bits
    }

    pub fn role(&self, q: QubitId) -> QubitRole {
        self.roles[q.0 as usize]
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn qubits_with_role(&self, role: QubitRole) -> Vec<QubitId> {
        (0..self.roles.len() as u32)
            .map(QubitId)
            .filter(|q| self.roles[q.0 as usize] == role)
            .collect()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for q in &qs {
            if q.0 as usize >= self.roles.len() {
                return Err(Error::InvalidOperands);
            }
        }
        for (i, a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(a) {
                return Err(Error::InvalidOperands);
            }
        }
        if let Gate::Toffoli { .. } = gate {
            if self.granularity != Granularity::ToffoliLevel {
                return Err(Error::Granularity {
                    expected: Granularity::ToffoliLevel,
                    actual: self.granularity,
                });
            }
        }
        if let Some(bit) = gate.classical_bit() {
            if bit.0 >= self.classical_bits {
                return Err(Error::InvalidOperands);
            }
            if !gate.writes_classical() {
                let written = self.gates.iter().any(|g| {
                    g.writes_classical() && g.classical_bit() == Some(bit)
                });
                if !written {
                    return Err(Error::UnwrittenClassicalBit(bit.0));
                }
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`; qubit tables must match.
    pub fn concat(&mut self, other: &Circuit) -> Result<()> {
        if other.roles != self.roles {
            return Err(Error::InvalidOperands);
        }
        let offset = self.classical_bits;
        self.classical_bits += other.classical_bits;
        for g in &other.gates {
            let shifted = match *g {
                Gate::MeasureX { qubit, bit } => Gate::MeasureX {
                    qubit,
                    bit: ClassicalBit(bit.0 + offset),
                },
                Gate::MeasureZ { qubit, bit } => Gate::MeasureZ {
                    qubit,
                    bit: ClassicalBit(bit.0 + offset),
                },
                Gate::CcCorrect { bit, correction } => Gate::CcCorrect {
                    bit: ClassicalBit(bit.0 + offset),
                    correction,
                },
                other => other,
            };
            self.gates.push(shifted);
        }
        Ok(())
    }

    fn wire_count(&self) -> usize {
        self.roles.len() + self.classical_bits as usize
    }

    fn wires(&self, gate: &Gate) -> Vec<usize> {
        let mut ws: Vec<usize> = gate.qubits().into_iter().map(|q| q.0 as usize).collect();
        if let Some(bit) = gate.classical_bit() {
            ws.push(self.roles.len() + bit.0 as usize);
        }
        ws
    }

    /// ASAP layering over the qubit/classical-bit dependency DAG.
    pub fn schedule(&self) -> Schedule {
        let mut wire_layer = vec![0usize; self.wire_count()];
        let mut layer_of = Vec::with_capacity(self.gates.len());
        let mut layers = 0;
        for gate in &self.gates {
            let ws = self.wires(gate);
            let layer = 1 + ws.iter().map(|&w| wire_layer[w]).max().unwrap_or(0);
            for w in ws {
                wire_layer[w] = layer;
            }
            layer_of.push(layer);
            layers = layers.max(layer);
        }
        Schedule { layer_of, layers }
    }

    /// Weighted longest path over the dependency DAG; `weight` marks the
    /// gates that advance the clock.
    fn weighted_depth(&self, weight: impl Fn(&Gate) -> bool) -> usize {
        let mut wire_depth = vec![0usize; self.wire_count()];
        let mut depth = 0;
        for gate in &self.gates {
            let ws = self.wires(gate);
            let mut d = ws.iter().map(|&w| wire_depth[w]).max().unwrap_or(0);
            if weight(gate) {
                d += 1;
            }
            for w in ws {
                wire_depth[w] = d;
            }
            depth = depth.max(d);
        }
        depth
    }

    /// Exact resource metrics. Refused at Toffoli granularity since a
    /// Toffoli has no intrinsic T cost in this IR.
    pub fn metrics(&self) -> Result<ResourceReport> {
        if self.gates.iter().any(|g| matches!(g, Gate::Toffoli { .. })) {
            return Err(Error::TMetricsAtToffoliLevel);
        }
        let inputs = self.roles.iter().filter(|r| **r == QubitRole::Input).count();
        let outputs = self
            .roles
            .iter()
            .filter(|r| **r == QubitRole::Output)
            .count();
        Ok(ResourceReport {
            qubit_count: self.roles.len(),
            ancilla_count: self.roles.len() - inputs - outputs,
            t_count: self.gates.iter().filter(|g| g.is_t()).count(),
            t_depth: self.weighted_depth(Gate::is_t),
            cnot_count: self.gates.iter().filter(|g| g.is_cnot()).count(),
            cnot_depth: self.weighted_depth(Gate::is_cnot),
            total_depth: self.schedule().layers,
            measure_count: self
                .gates
                .iter()
                .filter(|g| g.writes_classical())
                .count(),
        })
    }

    /// Replaces every Toffoli with the chosen Clifford+T gadget: a compute
    /// gadget for forward Toffolis, measurement-based erasure for uncompute
    /// markers. Helper qubits for the T-depth-1 variant are taken from this
    /// circuit's helper-role qubits, one per Toffoli within a layer, reused
    /// across layers.
    pub fn lower_toffolis(&self, variant: crate::decomp::ToffoliVariant) -> Result<Circuit> {
        crate::decomp::lower_circuit(self, variant)
    }

    /// Emits the textual dialect. One gate per line; an X-basis measurement
    /// expands to its H + Z-measurement pair on a single line.
    pub fn export_text(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\n");
        let _ = writeln!(out, "qreg q[{}];", self.roles.len());
        if self.classical_bits > 0 {
            let _ = writeln!(out, "creg c[{}];", self.classical_bits);
        }
        for (i, role) in self.roles.iter().enumerate() {
            let _ = writeln!(out, "// q[{i}]: {}", role.as_str());
        }
        for gate in &self.gates {
            let line = match *gate {
                Gate::H(q) => format!("h q[{}];", q.0),
                Gate::S(q) => format!("s q[{}];", q.0),
                Gate::Sdg(q) => format!("sdg q[{}];", q.0),
                Gate::T(q) => format!("t q[{}];", q.0),
                Gate::Tdg(q) => format!("tdg q[{}];", q.0),
                Gate::X(q) => format!("x q[{}];", q.0),
                Gate::Z(q) => format!("z q[{}];", q.0),
                Gate::Cz(a, b) => format!("cz q[{}], q[{}];", a.0, b.0),
                Gate::Cnot { control, target } => format!("cx q[{}], q[{}];", control.0, target.0),
                Gate::Toffoli {
                    control_a,
                    control_b,
                    target,
                    uncompute,
                } => format!(
                    "ccx q[{}], q[{}], q[{}];{}",
                    control_a.0,
                    control_b.0,
                    target.0,
                    if uncompute { " // uncompute" } else { "" }
                ),
                Gate::MeasureX { qubit, bit } => {
                    format!("h q[{0}]; measure q[{0}] -> c[{1}];", qubit.0, bit.0)
                }
                Gate::MeasureZ { qubit, bit } => {
                    format!("measure q[{}] -> c[{}];", qubit.0, bit.0)
                }
                Gate::CcCorrect { bit, correction } => match correction {
                    Correction::Z(q) => format!("if (c[{}] == 1) z q[{}];", bit.0, q.0),
                    Correction::X(q) => format!("if (c[{}] == 1) x q[{}];", bit.0, q.0),
                    Correction::Cz(a, b) => {
                        format!("if (c[{}] == 1) cz q[{}], q[{}];", bit.0, a.0, b.0)
                    }
                },
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Parses the dialect emitted by [`Circuit::export_text`]; the round trip
    /// is gate-exact.
    pub fn parse_text(text: &str) -> Result<Circuit> {
        let mut roles: Vec<QubitRole> = Vec::new();
        let mut qubits: Option<usize> = None;
        let mut classical = 0u32;
        let mut gates: Vec<Gate> = Vec::new();
        let mut granularity = Granularity::CliffordT;

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let err = |message: String| Error::Parse {
                line: lineno,
                column: 1,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line == "OPENQASM 2.0;" {
                continue;
            }
            if let Some(rest) = line.strip_prefix("// q[") {
                // Role annotation: "// q[7]: tree-node".
                if let Some((idx, role)) = rest.split_once("]:") {
                    let idx: usize = idx
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad qubit index {idx:?}")))?;
                    let role = QubitRole::from_str(role.trim())
                        .ok_or_else(|| err(format!("unknown role {:?}", role.trim())))?;
                    if idx < roles.len() {
                        roles[idx] = role;
                    }
                }
                continue;
            }
            if line.starts_with("//") {
                continue;
            }
            if let Some(rest) = line.strip_prefix("qreg q[") {
                let n: usize = rest
                    .strip_suffix("];")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("malformed qreg".into()))?;
                qubits = Some(n);
                roles = vec![QubitRole::Input; n];
                continue;
            }
            if let Some(rest) = line.strip_prefix("creg c[") {
                classical = rest
                    .strip_suffix("];")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("malformed creg".into()))?;
                continue;
            }
            if qubits.is_none() {
                return Err(err("gate before qreg declaration".into()));
            }
            let (stmt, comment) = match line.split_once("//") {
                Some((s, c)) => (s.trim(), c.trim()),
                None => (line, ""),
            };
            let gate = parse_gate(stmt, comment, lineno)?;
            if matches!(gate, Gate::Toffoli { .. }) {
                granularity = Granularity::ToffoliLevel;
            }
            gates.push(gate);
        }

        let mut circuit = Circuit {
            roles,
            classical_bits: classical,
            gates: Vec::new(),
            granularity,
        };
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }
}

fn parse_operands(s: &str, lineno: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let inner = part
            .strip_prefix("q[")
            .or_else(|| part.strip_prefix("c["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                line: lineno,
                column: 1,
                message: format!("malformed operand {part:?}"),
            })?;
        out.push(inner.parse().map_err(|_| Error::Parse {
            line: lineno,
            column: 1,
            message: format!("malformed operand {part:?}"),
        })?);
    }
    Ok(out)
}

fn parse_gate(stmt: &str, comment: &str, lineno: usize) -> Result<Gate> {
    let err = |message: String| Error::Parse {
        line: lineno,
        column: 1,
        message,
    };
    // X-basis measurement: "h q[i]; measure q[i] -> c[j];" on one line.
    if stmt.starts_with("h ") && stmt.contains("; measure") {
        let (h_part, m_part) = stmt.split_once(';').unwrap();
        let hq = parse_operands(h_part.trim().strip_prefix("h ").unwrap(), lineno)?;
        let m_part = m_part.trim();
        let rest = m_part
            .strip_prefix("measure ")
            .and_then(|s| s.strip_suffix(';'))
            .ok_or_else(|| err("malformed x-basis measurement".into()))?;
        let (qs, cs) = rest
            .split_once("->")
            .ok_or_else(|| err("malformed measurement".into()))?;
        let q = parse_operands(qs.trim(), lineno)?;
        let c = parse_operands(cs.trim(), lineno)?;
        if hq != q || q.len() != 1 || c.len() != 1 {
            return Err(err("malformed x-basis measurement".into()));
        }
        return Ok(Gate::MeasureX {
            qubit: QubitId(q[0]),
            bit: ClassicalBit(c[0]),
        });
    }
    if let Some(rest) = stmt.strip_prefix("if (") {
        let (cond, action) = rest
            .split_once(')')
            .ok_or_else(|| err("malformed conditional".into()))?;
        let (bit_s, value) = cond
            .split_once("==")
            .ok_or_else(|| err("malformed condition".into()))?;
        if value.trim() != "1" {
            return Err(err("conditions compare against 1".into()));
        }
        let bit = parse_operands(bit_s.trim(), lineno)?;
        let action = action.trim();
        let correction = if let Some(ops) = action.strip_prefix("cz ") {
            let q = parse_operands(ops.strip_suffix(';').unwrap_or(ops), lineno)?;
            if q.len() != 2 {
                return Err(err("cz needs two operands".into()));
            }
            Correction::Cz(QubitId(q[0]), QubitId(q[1]))
        } else if let Some(ops) = action.strip_prefix("z ") {
            let q = parse_operands(ops.strip_suffix(';').unwrap_or(ops), lineno)?;
            Correction::Z(QubitId(q[0]))
        } else if let Some(ops) = action.strip_prefix("x ") {
            let q = parse_operands(ops.strip_suffix(';').unwrap_or(ops), lineno)?;
            Correction::X(QubitId(q[0]))
        } else {
            return Err(err(format!("unsupported correction {action:?}")));
        };
        return Ok(Gate::CcCorrect {
            bit: ClassicalBit(bit[0]),
            correction,
        });
    }
    if let Some(rest) = stmt.strip_prefix("measure ") {
        let rest = rest.strip_suffix(';').unwrap_or(rest);
        let (qs, cs) = rest
            .split_once("->")
            .ok_or_else(|| err("malformed measurement".into()))?;
        let q = parse_operands(qs.trim(), lineno)?;
        let c = parse_operands(cs.trim(), lineno)?;
        return Ok(Gate::MeasureZ {
            qubit: QubitId(q[0]),
            bit: ClassicalBit(c[0]),
        });
    }
    let (name, ops) = stmt
        .split_once(' ')
        .ok_or_else(|| err(format!("malformed statement {stmt:?}")))?;
    let ops = parse_operands(ops.trim_end_matches(';'), lineno)?;
    let one = |f: fn(QubitId) -> Gate| -> Result<Gate> {
        if ops.len() != 1 {
            return Err(Error::Parse {
                line: lineno,
                column: 1,
                message: format!("{name} takes one operand"),
            });
        }
        Ok(f(QubitId(ops[0])))
    };
    match name {
        "h" => one(Gate::H),
        "s" => one(Gate::S),
        "sdg" => one(Gate::Sdg),
        "t" => one(Gate::T),
        "tdg" => one(Gate::Tdg),
        "x" => one(Gate::X),
        "z" => one(Gate::Z),
        "cz" => {
            if ops.len() != 2 {
                return Err(err("cz takes two operands".into()));
            }
            Ok(Gate::Cz(QubitId(ops[0]), QubitId(ops[1])))
        }
        "cx" => {
            if ops.len() != 2 {
                return Err(err("cx takes two operands".into()));
            }
            Ok(Gate::Cnot {
                control: QubitId(ops[0]),
                target: QubitId(ops[1]),
            })
        }
        "ccx" => {
            if ops.len() != 3 {
                return Err(err("ccx takes three operands".into()));
            }
            Ok(Gate::Toffoli {
                control_a: QubitId(ops[0]),
                control_b: QubitId(ops[1]),
                target: QubitId(ops[2]),
                uncompute: comment == "uncompute",
            })
        }
        other => Err(err(format!("unknown gate {other:?}"))),
    }
}
