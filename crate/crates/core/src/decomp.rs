//! Clifford+T gadgets for Toffoli compute/uncompute and balanced binary-tree
//! decomposition of multi-controlled Toffolis.
//!
//! Both compute gadgets spend exactly four T gates on the same phase
//! polynomial `c + (a^b^c) - (a^c) - (b^c)` (in eighth-turns, `c` the
//! Hadamard-frame index of the fresh target); the final S gate absorbs the
//! residual `-2ab`. They differ only in where the four T gates sit:
//!
//! - `tdepth1` hosts all four parities on distinct wires (one helper), so
//!   the whole gadget is a single T layer;
//! - `logical-and` hosts the `a^b^c` parity on the target wire: no helper,
//!   one early T plus one main T layer, and trees of these gadgets stack to
//!   `ceil(log2 k) + 1` because the early T of every level fires at once.
//!
//! Uncomputation is T-free: X-basis measurement of the erased qubit plus a
//! classically controlled CZ on the two qubits that fed it. The gate
//! sequences are reconstructions; `verify::gadget_equivalence` pins them to
//! the Toffoli unitary, and the declared costs are measured from the
//! templates rather than asserted.

use crate::circuit::{Circuit, Gate, Granularity, QubitId, QubitRole};
use crate::{Error, Result};
use serde::Serialize;

/// Which Toffoli-to-Clifford+T decomposition the lowering uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ToffoliVariant {
    /// Four T gates in one layer, one reusable helper qubit.
    TDepth1,
    /// Four T gates in two layers, no helper.
    LogicalAnd,
}

impl ToffoliVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            ToffoliVariant::TDepth1 => "tdepth1",
            ToffoliVariant::LogicalAnd => "logical-and",
        }
    }
}

impl std::str::FromStr for ToffoliVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tdepth1" => Ok(ToffoliVariant::TDepth1),
            "logical-and" => Ok(ToffoliVariant::LogicalAnd),
            other => Err(Error::Format(format!("unknown variant {other:?}"))),
        }
    }
}

/// Operand slot in a gadget template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    ControlA,
    ControlB,
    Target,
    Helper,
}

/// One gate of a gadget template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemplateGate {
    H(Slot),
    S(Slot),
    T(Slot),
    Tdg(Slot),
    Cnot { control: Slot, target: Slot },
}

/// Costs measured from a template instantiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GadgetCosts {
    pub t_count: usize,
    pub t_depth: usize,
    pub cnot_count: usize,
    pub cnot_depth: usize,
    pub helper_count: usize,
}

/// A Toffoli compute gadget over (control a, control b, target, optional
/// helper). The target must start in |0> for the gadget to be phase-exact;
/// on arbitrary basis targets it still maps |a,b,t> to |a,b,t^ab> up to a
/// per-input phase, which is all the lowering needs since every forward
/// Toffoli in a synthesized circuit writes onto a fresh qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToffoliGadget {
    pub variant: ToffoliVariant,
    pub gates: Vec<TemplateGate>,
    pub costs: GadgetCosts,
}

pub fn build_toffoli_gadget(variant: ToffoliVariant) -> ToffoliGadget {
    use Slot::*;
    use TemplateGate::*;
    let gates = match variant {
        // Parities after the dressing CNOTs: target=c, a=a^c, b=b^c,
        // helper=a^b^c; all four T gates fire in one layer.
        ToffoliVariant::TDepth1 => vec![
            H(Target),
            Cnot { control: Target, target: ControlA },
            Cnot { control: ControlA, target: Helper },
            Cnot { control: ControlB, target: Helper },
            Cnot { control: Target, target: ControlB },
            T(Target),
            T(Helper),
            Tdg(ControlA),
            Tdg(ControlB),
            Cnot { control: Target, target: ControlB },
            Cnot { control: ControlB, target: Helper },
            Cnot { control: ControlA, target: Helper },
            Cnot { control: Target, target: ControlA },
            H(Target),
            S(Target),
        ],
        // The early T on the fresh target is input-independent; the main
        // layer holds the remaining three T gates on target=a^b^c, a=a^c,
        // b=b^c.
        ToffoliVariant::LogicalAnd => vec![
            H(Target),
            T(Target),
            Cnot { control: Target, target: ControlA },
            Cnot { control: Target, target: ControlB },
            Cnot { control: ControlA, target: Target },
            Cnot { control: ControlB, target: Target },
            T(Target),
            Tdg(ControlA),
            Tdg(ControlB),
            Cnot { control: ControlB, target: Target },
            Cnot { control: ControlA, target: Target },
            Cnot { control: Target, target: ControlB },
            Cnot { control: Target, target: ControlA },
            H(Target),
            S(Target),
        ],
    };
    let costs = measure_costs(&gates, variant);
    ToffoliGadget {
        variant,
        gates,
        costs,
    }
}

fn measure_costs(gates: &[TemplateGate], variant: ToffoliVariant) -> GadgetCosts {
    let uses_helper = gates.iter().any(|g| {
        matches!(
            g,
            TemplateGate::H(Slot::Helper)
                | TemplateGate::S(Slot::Helper)
                | TemplateGate::T(Slot::Helper)
                | TemplateGate::Tdg(Slot::Helper)
                | TemplateGate::Cnot { control: Slot::Helper, .. }
                | TemplateGate::Cnot { target: Slot::Helper, .. }
        )
    });
    let mut circuit = Circuit::new(Granularity::CliffordT);
    let a = circuit.add_qubit(QubitRole::Input);
    let b = circuit.add_qubit(QubitRole::Input);
    let t = circuit.add_qubit(QubitRole::Output);
    let h = circuit.add_qubit(QubitRole::Helper);
    emit_template(&mut circuit, gates, a, b, t, Some(h)).expect("template instantiation");
    let report = circuit.metrics().expect("template metrics");
    let _ = variant;
    GadgetCosts {
        t_count: report.t_count,
        t_depth: report.t_depth,
        cnot_count: report.cnot_count,
        cnot_depth: report.cnot_depth,
        helper_count: usize::from(uses_helper),
    }
}

fn resolve(slot: Slot, a: QubitId, b: QubitId, t: QubitId, h: Option<QubitId>) -> Result<QubitId> {
    match slot {
        Slot::ControlA => Ok(a),
        Slot::ControlB => Ok(b),
        Slot::Target => Ok(t),
        Slot::Helper => h.ok_or(Error::HelperAllocation {
            needed: 1,
            available: 0,
        }),
    }
}

/// Instantiates a template onto concrete qubits of `circuit`.
pub fn emit_template(
    circuit: &mut Circuit,
    gates: &[TemplateGate],
    a: QubitId,
    b: QubitId,
    t: QubitId,
    h: Option<QubitId>,
) -> Result<()> {
    for g in gates {
        let gate = match *g {
            TemplateGate::H(s) => Gate::H(resolve(s, a, b, t, h)?),
            TemplateGate::S(s) => Gate::S(resolve(s, a, b, t, h)?),
            TemplateGate::T(s) => Gate::T(resolve(s, a, b, t, h)?),
            TemplateGate::Tdg(s) => Gate::Tdg(resolve(s, a, b, t, h)?),
            TemplateGate::Cnot { control, target } => Gate::Cnot {
                control: resolve(control, a, b, t, h)?,
                target: resolve(target, a, b, t, h)?,
            },
        };
        circuit.push(gate)?;
    }
    Ok(())
}

/// Emits the measurement-based erasure of `target`, which is known to hold
/// the AND of `a` and `b`: X-basis measurement plus a classically
/// controlled CZ on the feeding pair. Contains no T gates.
pub fn emit_uncompute(circuit: &mut Circuit, a: QubitId, b: QubitId, target: QubitId) -> Result<()> {
    let bit = circuit.add_classical_bit();
    circuit.push(Gate::MeasureX { qubit: target, bit })?;
    circuit.push(Gate::CcCorrect {
        bit,
        correction: crate::circuit::Correction::Cz(a, b),
    })?;
    Ok(())
}

/// A Toffoli at the tree granularity: two feeding qubits and an output.
pub type ToffoliOp = (QubitId, QubitId, QubitId);

/// Balanced binary AND-tree computing the product of `k` controls onto a
/// target. Leaves pair left to right per level; an odd leaf is promoted
/// unchanged. The root Toffoli writes directly onto the caller's target, so
/// the tree allocates `k-2` fresh node qubits and fires `k-1` Toffolis in
/// `ceil(log2 k)` layers.
#[derive(Debug, Clone)]
pub struct MctTree {
    pub k: usize,
    pub controls: Vec<QubitId>,
    pub target: QubitId,
    pub nodes: Vec<QubitId>,
    /// Compute pass in level order; the final entry is the root.
    pub compute: Vec<ToffoliOp>,
    /// Toffoli layers of the compute pass.
    pub levels: usize,
    /// Single CNOT emitted instead of a Toffoli when `k == 1`.
    pub direct_cnot: Option<(QubitId, QubitId)>,
}

impl MctTree {
    /// Uncompute markers for a standalone tree: every non-root node, mirror
    /// order (root's children first). The root wrote onto the caller's
    /// target and is not erased here.
    pub fn standalone_uncompute(&self) -> Vec<ToffoliOp> {
        self.compute
            .iter()
            .rev()
            .skip(1)
            .copied()
            .collect()
    }

    /// Uncompute markers when the target is a scratch qubit that must also
    /// be erased: the full mirror, root first.
    pub fn full_uncompute(&self) -> Vec<ToffoliOp> {
        self.compute.iter().rev().copied().collect()
    }
}

/// Builds the tree structure, drawing fresh node qubits from `alloc`.
pub fn build_mct_tree(
    controls: &[QubitId],
    target: QubitId,
    mut alloc: impl FnMut() -> QubitId,
) -> MctTree {
    let k = controls.len();
    if k == 0 {
        return MctTree {
            k,
            controls: Vec::new(),
            target,
            nodes: Vec::new(),
            compute: Vec::new(),
            levels: 0,
            direct_cnot: None,
        };
    }
    if k == 1 {
        return MctTree {
            k,
            controls: controls.to_vec(),
            target,
            nodes: Vec::new(),
            compute: Vec::new(),
            levels: 0,
            direct_cnot: Some((controls[0], target)),
        };
    }
    let mut nodes = Vec::new();
    let mut compute = Vec::new();
    let mut level_items: Vec<QubitId> = controls.to_vec();
    let mut levels = 0;
    while level_items.len() > 1 {
        levels += 1;
        let mut next = Vec::with_capacity(level_items.len().div_ceil(2));
        let mut chunks = level_items.chunks_exact(2);
        for pair in &mut chunks {
            let out = if level_items.len() == 2 {
                target
            } else {
                let node = alloc();
                nodes.push(node);
                node
            };
            compute.push((pair[0], pair[1], out));
            next.push(out);
        }
        if let [odd] = chunks.remainder() {
            next.push(*odd);
        }
        level_items = next;
    }
    MctTree {
        k,
        controls: controls.to_vec(),
        target,
        nodes,
        compute,
        levels,
        direct_cnot: None,
    }
}

/// Standalone Toffoli-level circuit for one k-controlled Toffoli acting on
/// |x, 0..0, y>: compute pass, then measurement-based erasure of the
/// internal nodes. Used by the verification command and tests.
pub fn mct_tree_circuit(k: usize) -> (Circuit, MctTree) {
    let mut circuit = Circuit::new(Granularity::ToffoliLevel);
    let controls: Vec<QubitId> = (0..k).map(|_| circuit.add_qubit(QubitRole::Input)).collect();
    let target = circuit.add_qubit(QubitRole::Output);
    let tree = build_mct_tree(&controls, target, || circuit.add_qubit(QubitRole::TreeNode));
    if let Some((c, t)) = tree.direct_cnot {
        circuit
            .push(Gate::Cnot { control: c, target: t })
            .expect("tree cnot");
    }
    for &(a, b, t) in &tree.compute {
        circuit
            .push(Gate::Toffoli {
                control_a: a,
                control_b: b,
                target: t,
                uncompute: false,
            })
            .expect("tree toffoli");
    }
    for &(a, b, t) in &tree.standalone_uncompute() {
        circuit
            .push(Gate::Toffoli {
                control_a: a,
                control_b: b,
                target: t,
                uncompute: true,
            })
            .expect("tree uncompute marker");
    }
    (circuit, tree)
}

/// Helper qubits the T-depth-1 lowering needs for `circuit`: one per
/// Toffoli within a layer, reused across layers.
pub fn helpers_needed(circuit: &Circuit, variant: ToffoliVariant) -> usize {
    if variant == ToffoliVariant::LogicalAnd {
        return 0;
    }
    toffoli_layers(circuit)
        .1
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
}

/// Per-gate Toffoli layer (0 for non-Toffolis) and the layer occupancy
/// counts. The layer of a Toffoli is the Toffoli-weighted longest path to
/// it, which matches the tree level in synthesized circuits.
fn toffoli_layers(circuit: &Circuit) -> (Vec<usize>, Vec<usize>) {
    let wire_count = circuit.qubit_count() + circuit.classical_bits() as usize;
    let mut wire_depth = vec![0usize; wire_count];
    let mut layer_of = Vec::with_capacity(circuit.gates().len());
    let mut occupancy: Vec<usize> = Vec::new();
    for gate in circuit.gates() {
        let mut wires: Vec<usize> = gate.qubits().iter().map(|q| q.0 as usize).collect();
        if let Gate::MeasureX { bit, .. } | Gate::MeasureZ { bit, .. } | Gate::CcCorrect { bit, .. } =
            gate
        {
            wires.push(circuit.qubit_count() + bit.0 as usize);
        }
        let mut d = wires.iter().map(|&w| wire_depth[w]).max().unwrap_or(0);
        let is_forward_toffoli = matches!(gate, Gate::Toffoli { uncompute: false, .. });
        if is_forward_toffoli {
            d += 1;
            if occupancy.len() < d {
                occupancy.resize(d, 0);
            }
            occupancy[d - 1] += 1;
            layer_of.push(d);
        } else {
            layer_of.push(0);
        }
        for w in wires {
            wire_depth[w] = d;
        }
    }
    (layer_of, occupancy)
}

/// Lowers a Toffoli-level circuit to Clifford+T. See
/// [`Circuit::lower_toffolis`].
pub fn lower_circuit(circuit: &Circuit, variant: ToffoliVariant) -> Result<Circuit> {
    if circuit.granularity() != Granularity::ToffoliLevel {
        return Err(Error::Granularity {
            expected: Granularity::ToffoliLevel,
            actual: circuit.granularity(),
        });
    }
    let helpers = circuit.qubits_with_role(QubitRole::Helper);
    let needed = helpers_needed(circuit, variant);
    if needed > helpers.len() {
        return Err(Error::HelperAllocation {
            needed,
            available: helpers.len(),
        });
    }
    let gadget = build_toffoli_gadget(variant);
    let (layer_of, _) = toffoli_layers(circuit);

    let mut lowered = Circuit::new(Granularity::CliffordT);
    for role in circuit.roles() {
        lowered.add_qubit(*role);
    }
    for _ in 0..circuit.classical_bits() {
        lowered.add_classical_bit();
    }
    let mut layer_cursor: Vec<usize> = Vec::new();
    for (idx, gate) in circuit.gates().iter().enumerate() {
        match *gate {
            Gate::Toffoli {
                control_a,
                control_b,
                target,
                uncompute,
            } => {
                if uncompute {
                    emit_uncompute(&mut lowered, control_a, control_b, target)?;
                } else {
                    let helper = if variant == ToffoliVariant::TDepth1 {
                        let layer = layer_of[idx];
                        if layer_cursor.len() < layer {
                            layer_cursor.resize(layer, 0);
                        }
                        let slot = layer_cursor[layer - 1];
                        layer_cursor[layer - 1] += 1;
                        Some(helpers[slot])
                    } else {
                        None
                    };
                    emit_template(
                        &mut lowered,
                        &gadget.gates,
                        control_a,
                        control_b,
                        target,
                        helper,
                    )?;
                }
            }
            other => lowered.push(other)?,
        }
    }
    Ok(lowered)
}

/// The accounting constants for one k-controlled Toffoli, as used by the
/// resource estimates: the worst-case budget rather than the measured
/// template costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MctCost {
    pub ancilla: u128,
    pub t_count: u128,
    pub t_depth: u32,
    pub cnot_count: u128,
}

/// Per-MCT accounting: 2(k-1) ancilla and 9(k-1) CNOTs for the T-depth-1
/// gadget; dropping the k-1 helpers and 3 CNOTs per Toffoli for the
/// logical-AND gadget at the price of one extra T layer.
pub fn cost_model(k: usize, variant: ToffoliVariant) -> MctCost {
    assert!(k >= 2, "cost model is defined for k >= 2");
    let t_depth = ceil_log2(k as u64);
    let k = k as u128;
    match variant {
        ToffoliVariant::TDepth1 => MctCost {
            ancilla: 2 * (k - 1),
            t_count: 4 * (k - 1),
            t_depth,
            cnot_count: 9 * (k - 1),
        },
        ToffoliVariant::LogicalAnd => MctCost {
            ancilla: k - 1,
            t_count: 4 * (k - 1),
            t_depth: t_depth + 1,
            cnot_count: 6 * (k - 1),
        },
    }
}

/// `ceil(log2 x)` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_costs_match_contracts() {
        let td1 = build_toffoli_gadget(ToffoliVariant::TDepth1);
        assert_eq!(td1.costs.t_count, 4);
        assert_eq!(td1.costs.t_depth, 1);
        assert_eq!(td1.costs.helper_count, 1);
        let land = build_toffoli_gadget(ToffoliVariant::LogicalAnd);
        assert_eq!(land.costs.t_count, 4);
        assert_eq!(land.costs.t_depth, 2);
        assert_eq!(land.costs.helper_count, 0);
    }

    #[test]
    fn ceil_log2_values() {
        let expect = [(1, 0), (2, 1), (3, 2), (4, 2), (7, 3), (8, 3), (16, 4), (17, 5)];
        for (x, want) in expect {
            assert_eq!(ceil_log2(x), want, "x={x}");
        }
    }

    #[test]
    fn tree_shapes() {
        let (_, t2) = mct_tree_circuit(2);
        assert_eq!(t2.compute.len(), 1);
        assert_eq!(t2.levels, 1);
        assert!(t2.nodes.is_empty());

        let (_, t4) = mct_tree_circuit(4);
        assert_eq!(t4.compute.len(), 3);
        assert_eq!(t4.levels, 2);
        assert_eq!(t4.nodes.len(), 2);

        let (_, t7) = mct_tree_circuit(7);
        assert_eq!(t7.compute.len(), 6);
        assert_eq!(t7.levels, 3);
        assert_eq!(t7.nodes.len(), 5);

        let (c1, t1) = mct_tree_circuit(1);
        assert!(t1.direct_cnot.is_some());
        assert_eq!(c1.gates().len(), 1);
    }

    #[test]
    fn tree_toffoli_layer_counts_for_k_up_to_64() {
        for k in 2..=64usize {
            let (circuit, tree) = mct_tree_circuit(k);
            assert_eq!(tree.compute.len(), k - 1, "k={k}");
            assert_eq!(tree.levels as u32, ceil_log2(k as u64), "k={k}");
            let (_, occupancy) = toffoli_layers(&circuit);
            assert_eq!(occupancy.len() as u32, ceil_log2(k as u64), "k={k}");
            assert_eq!(occupancy.iter().sum::<usize>(), k - 1, "k={k}");
        }
    }

    #[test]
    fn lowering_counts_for_trees() {
        for k in 2..=16usize {
            let (circuit, _) = mct_tree_circuit(k);
            let mut with_helpers = circuit.clone();
            let needed = helpers_needed(&with_helpers, ToffoliVariant::TDepth1);
            for _ in 0..needed {
                with_helpers.add_qubit(QubitRole::Helper);
            }
            let td1 = with_helpers.lower_toffolis(ToffoliVariant::TDepth1).unwrap();
            let r = td1.metrics().unwrap();
            assert_eq!(r.t_count, 4 * (k - 1), "k={k}");
            assert_eq!(r.t_depth as u32, ceil_log2(k as u64), "k={k}");

            let land = circuit.lower_toffolis(ToffoliVariant::LogicalAnd).unwrap();
            let r = land.metrics().unwrap();
            assert_eq!(r.t_count, 4 * (k - 1), "k={k}");
            assert_eq!(r.t_depth as u32, ceil_log2(k as u64) + 1, "k={k}");
        }
    }

    #[test]
    fn tree_computes_the_product_reversibly() {
        // |x, 0..0, y> maps to |x, 0..0, y ^ AND(x)> for every k <= 8.
        for k in 1..=8usize {
            let (circuit, _) = mct_tree_circuit(k);
            for x in 0u64..1 << k {
                for y in [false, true] {
                    let mut state = crate::verify::BitState::zeros(&circuit);
                    for (i, bit) in state.qubits.iter_mut().take(k).enumerate() {
                        *bit = x >> i & 1 == 1;
                    }
                    state.qubits[k] = y;
                    crate::verify::simulate_reversible(&circuit, &mut state).unwrap();
                    let product = x.count_ones() as usize == k;
                    assert_eq!(state.qubits[k], y ^ product, "k={k} x={x:b} y={y}");
                    assert!(
                        state.qubits[k + 1..].iter().all(|b| !b),
                        "nodes restored k={k} x={x:b}"
                    );
                    for i in 0..k {
                        assert_eq!(state.qubits[i], x >> i & 1 == 1, "controls preserved");
                    }
                }
            }
        }
    }

    #[test]
    fn lowering_without_reserved_helpers_fails() {
        let (circuit, _) = mct_tree_circuit(4);
        assert!(matches!(
            circuit.lower_toffolis(ToffoliVariant::TDepth1),
            Err(Error::HelperAllocation { .. })
        ));
    }

    #[test]
    fn empty_lowering_is_identity() {
        let mut c = Circuit::new(Granularity::ToffoliLevel);
        let a = c.add_qubit(QubitRole::Input);
        let b = c.add_qubit(QubitRole::Output);
        c.push(Gate::Cnot { control: a, target: b }).unwrap();
        let lowered = c.lower_toffolis(ToffoliVariant::TDepth1).unwrap();
        assert_eq!(lowered.gates(), c.gates());
    }

    #[test]
    fn uncompute_gadget_has_no_t_gates() {
        let mut c = Circuit::new(Granularity::CliffordT);
        let a = c.add_qubit(QubitRole::Input);
        let b = c.add_qubit(QubitRole::Input);
        let t = c.add_qubit(QubitRole::TreeNode);
        emit_uncompute(&mut c, a, b, t).unwrap();
        assert_eq!(c.metrics().unwrap().t_count, 0);
        assert_eq!(c.metrics().unwrap().measure_count, 1);
    }

    #[test]
    fn cost_model_values() {
        let c = cost_model(8, ToffoliVariant::TDepth1);
        assert_eq!((c.ancilla, c.t_count, c.t_depth, c.cnot_count), (14, 28, 3, 63));
        let c = cost_model(2, ToffoliVariant::TDepth1);
        assert_eq!((c.ancilla, c.t_count, c.t_depth, c.cnot_count), (2, 4, 1, 9));
        let c = cost_model(2, ToffoliVariant::LogicalAnd);
        assert_eq!(c.cnot_count, 6);
        assert_eq!(c.t_depth, 2);
    }
}
