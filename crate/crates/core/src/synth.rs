//! The four-stage compiler from ANF to a Clifford+T circuit.
//!
//! Stage 1 fans out input copies with CNOT doubling cascades so every
//! nonlinear monomial owns a private control for each of its variables.
//! Stage 2 runs one balanced AND-tree per distinct monomial, all in
//! parallel, each root writing onto that monomial's storage qubit. Stage 3
//! XORs stored monomials, original inputs (linear terms) and the constant
//! onto the output register. Stage 4 erases storage and tree nodes by
//! measurement (mirror order, roots first) and undoes the fan-out with the
//! inverse CNOT cascade.

use crate::anf::{Monomial, MultiOutputFunction};
use crate::circuit::{Circuit, Gate, Granularity, QubitId, QubitRole, ResourceReport};
use crate::decomp::{build_mct_tree, ceil_log2, MctTree, ToffoliVariant};
use crate::estimate::{function_specific_estimate, ResourceBounds};
use crate::Result;
use serde::Serialize;

/// Qubit allocation and stage layout, fixed before any gate is emitted.
#[derive(Debug, Clone)]
pub struct SynthesisPlan {
    pub n: usize,
    pub m: usize,
    /// Deduplicated union of nonlinear monomials over all coordinates.
    pub monomials: Vec<Monomial>,
    /// Extra copies of each variable: occurrences across `monomials`, minus
    /// one for the original, floored at zero.
    pub copy_counts: Vec<usize>,
    /// Toffoli layers of the monomial stage: `ceil(log2 deg)`.
    pub toffoli_layers: usize,
    /// Widest Toffoli layer; the T-depth-1 lowering needs this many helpers.
    pub max_parallel_toffolis: usize,
    pub storage_count: usize,
    pub tree_node_count: usize,
}

impl SynthesisPlan {
    pub fn total_copies(&self) -> usize {
        self.copy_counts.iter().sum()
    }

    /// Fan-out CNOT depth: the deepest doubling cascade over any variable.
    pub fn fan_out_depth(&self) -> usize {
        self.copy_counts
            .iter()
            .map(|&c| ceil_log2(c as u64 + 1) as usize)
            .max()
            .unwrap_or(0)
    }
}

/// Computes the monomial layout for `f`.
pub fn plan(f: &MultiOutputFunction) -> SynthesisPlan {
    let n = f.n();
    let mut set = std::collections::BTreeSet::new();
    for coord in f.coords() {
        set.extend(coord.monomials().iter().filter(|m| m.len() >= 2).copied());
    }
    let monomials: Vec<Monomial> = set.into_iter().collect();
    let copy_counts: Vec<usize> = (0..n)
        .map(|v| {
            let occurrences = monomials.iter().filter(|m| m.contains(v)).count();
            occurrences.saturating_sub(1)
        })
        .collect();
    let mut layer_occupancy: Vec<usize> = Vec::new();
    let mut tree_node_count = 0;
    for m in &monomials {
        let mut items = m.len();
        let mut level = 0;
        while items > 1 {
            let pairs = items / 2;
            if layer_occupancy.len() <= level {
                layer_occupancy.resize(level + 1, 0);
            }
            layer_occupancy[level] += pairs;
            items = items.div_ceil(2);
            level += 1;
        }
        tree_node_count += m.len() - 2;
    }
    SynthesisPlan {
        n,
        m: f.m(),
        storage_count: monomials.len(),
        tree_node_count,
        monomials,
        copy_counts,
        toffoli_layers: layer_occupancy.len(),
        max_parallel_toffolis: layer_occupancy.iter().copied().max().unwrap_or(0),
    }
}

/// Per-stage CNOT-depth accounting from the plan, using the per-T-layer
/// CNOT-depth constants of the gadget variant (9 for tdepth1, 6 for
/// logical-and). The measured whole-circuit depth is reported next to the
/// accounting total; gadget reconstructions with a different internal CNOT
/// depth make the two differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageDepths {
    pub fan_out: usize,
    pub output_xor: usize,
    pub gadget: usize,
    pub accounting_total: usize,
}

pub fn stage_depth_report(f: &MultiOutputFunction, variant: ToffoliVariant) -> StageDepths {
    let plan = plan(f);
    let census = f.census();
    let per_layer = match variant {
        ToffoliVariant::TDepth1 => 9,
        ToffoliVariant::LogicalAnd => 6,
    };
    let fan_out = plan.fan_out_depth();
    let output_xor = census.max_coordinate_terms;
    let gadget = per_layer * plan.toffoli_layers;
    StageDepths {
        fan_out,
        output_xor,
        gadget,
        accounting_total: 2 * fan_out + output_xor + gadget,
    }
}

/// Resource summary of one synthesis, serialized as the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct SynthReport {
    pub n: usize,
    pub m: usize,
    pub variant: &'static str,
    pub ancilla: usize,
    pub t_count: usize,
    pub t_depth: usize,
    pub cnot_count: usize,
    pub cnot_depth: usize,
    pub total_depth: usize,
    pub measurements: usize,
    pub stage_depths: StageDepths,
    /// Worst-case accounting for this function (the per-gate budget used by
    /// the printed resource tables); measured values above can undercut it.
    pub accounting: ResourceBounds,
}

/// A synthesized function: the Toffoli-level circuit (for exhaustive
/// verification), its Clifford+T lowering, and the measured report.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub plan: SynthesisPlan,
    pub toffoli_circuit: Circuit,
    pub circuit: Circuit,
    pub report: SynthReport,
}

struct Layout {
    inputs: Vec<QubitId>,
    copies: Vec<Vec<QubitId>>,
    storage: Vec<QubitId>,
    trees: Vec<MctTree>,
    outputs: Vec<QubitId>,
}

fn allocate(plan: &SynthesisPlan, variant: ToffoliVariant, circuit: &mut Circuit) -> Layout {
    let inputs: Vec<QubitId> = (0..plan.n)
        .map(|_| circuit.add_qubit(QubitRole::Input))
        .collect();
    let copies: Vec<Vec<QubitId>> = plan
        .copy_counts
        .iter()
        .map(|&c| (0..c).map(|_| circuit.add_qubit(QubitRole::InputCopy)).collect())
        .collect();
    let storage: Vec<QubitId> = (0..plan.monomials.len())
        .map(|_| circuit.add_qubit(QubitRole::TreeNode))
        .collect();

    // Control assignment: the i-th monomial using a variable takes its i-th
    // instance (original first, then the copies in allocation order).
    let mut next_instance = vec![0usize; plan.n];
    let mut trees = Vec::with_capacity(plan.monomials.len());
    for (mi, monomial) in plan.monomials.iter().enumerate() {
        let controls: Vec<QubitId> = monomial
            .vars()
            .map(|v| {
                let inst = next_instance[v];
                next_instance[v] += 1;
                if inst == 0 {
                    inputs[v]
                } else {
                    copies[v][inst - 1]
                }
            })
            .collect();
        let tree = build_mct_tree(&controls, storage[mi], || {
            circuit.add_qubit(QubitRole::TreeNode)
        });
        trees.push(tree);
    }
    let helper_count = match variant {
        ToffoliVariant::TDepth1 => plan.max_parallel_toffolis,
        ToffoliVariant::LogicalAnd => 0,
    };
    for _ in 0..helper_count {
        circuit.add_qubit(QubitRole::Helper);
    }
    let outputs: Vec<QubitId> = (0..plan.m)
        .map(|_| circuit.add_qubit(QubitRole::Output))
        .collect();
    Layout {
        inputs,
        copies,
        storage,
        trees,
        outputs,
    }
}

fn emit_toffoli_level(
    f: &MultiOutputFunction,
    plan: &SynthesisPlan,
    layout: &Layout,
    circuit: &mut Circuit,
) -> Result<()> {
    // Stage 1: fan-out cascades, one per variable, recorded for the inverse.
    let mut fanout: Vec<(QubitId, QubitId)> = Vec::new();
    for v in 0..plan.n {
        let targets = &layout.copies[v];
        let mut have = vec![layout.inputs[v]];
        let mut produced = 0;
        while produced < targets.len() {
            let wave = have.clone();
            for src in wave {
                if produced == targets.len() {
                    break;
                }
                let dst = targets[produced];
                produced += 1;
                fanout.push((src, dst));
                have.push(dst);
            }
        }
    }
    for &(control, target) in &fanout {
        circuit.push(Gate::Cnot { control, target })?;
    }

    // Stage 2: all monomial trees, compute passes only.
    for tree in &layout.trees {
        for &(a, b, t) in &tree.compute {
            circuit.push(Gate::Toffoli {
                control_a: a,
                control_b: b,
                target: t,
                uncompute: false,
            })?;
        }
    }

    // Stage 3: accumulate each coordinate onto its output. Coordinate j's
    // CNOT list is rotated by j and the lists are interleaved slot-major so
    // that coordinates reading the same storage or input qubit spread apart.
    let mut term_lists: Vec<Vec<QubitId>> = Vec::with_capacity(plan.m);
    for coord in f.coords() {
        let mut terms = Vec::with_capacity(coord.term_count());
        for monomial in coord.monomials() {
            if monomial.len() >= 2 {
                let idx = plan
                    .monomials
                    .binary_search(monomial)
                    .expect("planned monomial");
                terms.push(layout.storage[idx]);
            }
        }
        for monomial in coord.monomials() {
            if monomial.len() == 1 {
                let v = monomial.vars().next().unwrap();
                terms.push(layout.inputs[v]);
            }
        }
        term_lists.push(terms);
    }
    for (j, terms) in term_lists.iter_mut().enumerate() {
        if !terms.is_empty() {
            let shift = j % terms.len();
            terms.rotate_left(shift);
        }
    }
    let widest = term_lists.iter().map(Vec::len).max().unwrap_or(0);
    for slot in 0..widest {
        for (j, terms) in term_lists.iter().enumerate() {
            if let Some(&source) = terms.get(slot) {
                circuit.push(Gate::Cnot {
                    control: source,
                    target: layout.outputs[j],
                })?;
            }
        }
    }
    for (j, coord) in f.coords().iter().enumerate() {
        if coord.a0() {
            circuit.push(Gate::X(layout.outputs[j]))?;
        }
    }

    // Stage 4: erase storage and tree nodes (mirror order, root first), then
    // undo the fan-out.
    for tree in &layout.trees {
        for &(a, b, t) in &tree.full_uncompute() {
            circuit.push(Gate::Toffoli {
                control_a: a,
                control_b: b,
                target: t,
                uncompute: true,
            })?;
        }
    }
    for &(control, target) in fanout.iter().rev() {
        circuit.push(Gate::Cnot { control, target })?;
    }
    Ok(())
}

/// Compiles `f` into a Clifford+T circuit realizing
/// `|x>|y> -> |x>|y XOR f(x)>` with every scratch qubit returned to |0>.
pub fn synthesize(f: &MultiOutputFunction, variant: ToffoliVariant) -> Result<Synthesis> {
    let plan = plan(f);
    let mut toffoli_circuit = Circuit::new(Granularity::ToffoliLevel);
    let layout = allocate(&plan, variant, &mut toffoli_circuit);
    emit_toffoli_level(f, &plan, &layout, &mut toffoli_circuit)?;
    let circuit = toffoli_circuit.lower_toffolis(variant)?;
    let metrics = circuit.metrics()?;
    let report = build_report(f, &plan, variant, &metrics);
    Ok(Synthesis {
        plan,
        toffoli_circuit,
        circuit,
        report,
    })
}

fn build_report(
    f: &MultiOutputFunction,
    plan: &SynthesisPlan,
    variant: ToffoliVariant,
    metrics: &ResourceReport,
) -> SynthReport {
    SynthReport {
        n: plan.n,
        m: plan.m,
        variant: variant.as_str(),
        ancilla: metrics.ancilla_count,
        t_count: metrics.t_count,
        t_depth: metrics.t_depth,
        cnot_count: metrics.cnot_count,
        cnot_depth: metrics.cnot_depth,
        total_depth: metrics.total_depth,
        measurements: metrics.measure_count,
        stage_depths: stage_depth_report(f, variant),
        accounting: function_specific_estimate(f, variant),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::parse_anf;
    use crate::estimate::{complete_function, theorem1_bounds};
    use crate::verify::exhaustive_check;

    fn lowmc() -> MultiOutputFunction {
        parse_anf("x0 + x1*x2\nx0 + x1 + x0*x2\nx0 + x1 + x2 + x0*x1").unwrap()
    }

    #[test]
    fn plan_counts_for_examples() {
        // Every variable of the four-variable example occurs twice.
        let f = parse_anf("x0*x2 + x1*x3 + x0*x1*x2*x3").unwrap();
        let p = plan(&f);
        assert_eq!(p.copy_counts, vec![1, 1, 1, 1]);
        assert_eq!(p.storage_count, 3);
        assert_eq!(p.toffoli_layers, 2);

        let affine = parse_anf("x0 + x1 + 1").unwrap();
        let p = plan(&affine);
        assert_eq!(p.total_copies(), 0);
        assert_eq!(p.storage_count, 0);

        // All monomials present: copies 1000 and storage 246 at n = 8 once
        // the degree-8 term is excluded, matching the S-box monomial set.
        let full = complete_function(8, 1).unwrap();
        let without_top: Vec<_> = full.coords()[0]
            .monomials()
            .iter()
            .filter(|m| m.len() >= 2 && m.len() <= 7)
            .copied()
            .collect();
        let trimmed = MultiOutputFunction::new(vec![
            crate::anf::BooleanFunction::from_monomials(8, false, without_top).unwrap(),
        ])
        .unwrap();
        let p = plan(&trimmed);
        assert_eq!(p.total_copies(), 1000);
        assert_eq!(p.storage_count, 246);

        let p = plan(&complete_function(8, 1).unwrap());
        assert_eq!(p.total_copies(), 1008);
        assert_eq!(p.storage_count, 247);
        // Doubling cascades replicate each variable in log depth.
        assert_eq!(p.fan_out_depth(), 7);
    }

    #[test]
    fn lowmc_resources() {
        let s = synthesize(&lowmc(), ToffoliVariant::TDepth1).unwrap();
        assert_eq!(s.report.t_count, 12);
        assert_eq!(s.report.t_depth, 1);
        assert_eq!(s.report.ancilla, 9);
        assert!(exhaustive_check(&s.toffoli_circuit, &lowmc()).unwrap().passed());
    }

    #[test]
    fn four_variable_example_resources() {
        let f = parse_anf("x0*x2 + x1*x3 + x0*x1*x2*x3").unwrap();
        let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
        assert_eq!(s.report.t_count, 20);
        assert_eq!(s.report.t_depth, 2);
        assert!(exhaustive_check(&s.toffoli_circuit, &f).unwrap().passed());
    }

    #[test]
    fn t_depth_law_for_single_monomials() {
        for k in 2..=16usize {
            let expr: Vec<String> = (0..k).map(|v| format!("x{v}")).collect();
            let f = parse_anf(&expr.join("*")).unwrap();
            let td1 = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
            assert_eq!(td1.report.t_count, 4 * (k - 1), "k={k}");
            assert_eq!(td1.report.t_depth as u32, ceil_log2(k as u64), "k={k}");
            let land = synthesize(&f, ToffoliVariant::LogicalAnd).unwrap();
            assert_eq!(land.report.t_count, 4 * (k - 1), "k={k}");
            assert_eq!(land.report.t_depth as u32, ceil_log2(k as u64) + 1, "k={k}");
        }
    }

    #[test]
    fn degenerate_functions_cost_no_t() {
        for text in ["0", "1", "x0 + x1 + x2", "x2 + 1"] {
            let f = parse_anf(&format!("vars 3\n{text}")).unwrap();
            let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
            assert_eq!(s.report.t_count, 0, "{text}");
            assert_eq!(s.report.t_depth, 0, "{text}");
            assert!(exhaustive_check(&s.toffoli_circuit, &f).unwrap().passed());
        }
    }

    #[test]
    fn synthesis_is_deterministic() {
        let f = lowmc();
        let a = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
        let b = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
        assert_eq!(a.circuit.export_text(), b.circuit.export_text());
    }

    #[test]
    fn adding_a_monomial_never_decreases_t_count() {
        let base = parse_anf("vars 4\nx0*x1").unwrap();
        let more = parse_anf("vars 4\nx0*x1 + x2*x3").unwrap();
        let deeper = parse_anf("vars 4\nx0*x1 + x2*x3 + x0*x1*x2").unwrap();
        let t = |f: &MultiOutputFunction| {
            synthesize(f, ToffoliVariant::TDepth1).unwrap().report.t_count
        };
        assert!(t(&base) <= t(&more));
        assert!(t(&more) <= t(&deeper));
    }

    #[test]
    fn measured_resources_within_worst_case_bounds() {
        let mut seed = 41u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..25 {
            let n = 2 + (next() % 5) as usize;
            let m = 1 + (next() % 4) as usize;
            let mut lines = Vec::new();
            for _ in 0..m {
                let terms: Vec<String> = (0..1 + next() % 6)
                    .map(|_| {
                        let mask = 1 + next() % ((1 << n) - 1);
                        (0..n)
                            .filter(|v| mask >> v & 1 == 1)
                            .map(|v| format!("x{v}"))
                            .collect::<Vec<_>>()
                            .join("*")
                    })
                    .collect();
                lines.push(terms.join(" + "));
            }
            let f = parse_anf(&format!("vars {n}\n{}", lines.join("\n"))).unwrap();
            let bounds = theorem1_bounds(n, m, ToffoliVariant::TDepth1).unwrap();
            let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
            assert!(s.report.ancilla as u128 <= bounds.ancilla);
            assert!(s.report.t_count as u128 <= bounds.t_count);
            assert!(s.report.cnot_count as u128 <= bounds.cnot_count);
            assert!(s.report.cnot_depth as u128 <= bounds.cnot_depth);
            assert!(s.report.t_depth as u32 <= bounds.t_depth);
        }
    }

    #[test]
    fn stage_depths_for_affine() {
        let f = parse_anf("x0 + x1").unwrap();
        let d = stage_depth_report(&f, ToffoliVariant::TDepth1);
        assert_eq!(d.fan_out, 0);
        assert_eq!(d.gadget, 0);
        assert_eq!(d.output_xor, 2);
    }
}
