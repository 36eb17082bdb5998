//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them on success).
//!
//! Three criteria assert published resource-table numbers that the derived
//! values contradict, and they fail by design rather than paper over it:
//!
//! - the S-box coordinate ANFs derived from the standard lookup table carry
//!   1009 terms in total, while the published accounting uses 1001 (the
//!   1001 matches the inverse S-box, whose widest coordinate has 143 terms,
//!   not the published 145; no function matches both numbers). Every
//!   published CNOT-count cell downstream shifts by 8 per S-box evaluation.
//! - the worst-case ancilla closed form budgets 2(k-1) scratch qubits per
//!   degree-k product and counts the m outputs; the synthesized circuit
//!   writes tree roots straight onto product storage and reuses helpers
//!   across layers, so its measured ancilla is strictly smaller (the
//!   measured count equals the published small-example value of 9, which
//!   the same budget would put at 15). Measured T counts match exactly.
//!
//! Everything else must stay green.

use anf_tdepth::anf::{moebius_transform, parse_anf, BooleanFunction, MultiOutputFunction};
use anf_tdepth::ciphers;
use anf_tdepth::circuit::{Circuit, Granularity, QubitRole};
use anf_tdepth::decomp::{
    build_toffoli_gadget, ceil_log2, emit_template, ToffoliVariant,
};
use anf_tdepth::estimate::{
    complete_function, function_specific_estimate, summation_bounds, theorem1_bounds,
};
use anf_tdepth::synth::{synthesize, Synthesis};
use anf_tdepth::verify::{exhaustive_check, gadget_equivalence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Debug;

struct Checks {
    name: &'static str,
    total: usize,
    failures: Vec<String>,
}

impl Checks {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, ok: bool, detail: String) {
        self.total += 1;
        if !ok {
            self.failures.push(format!("{label}: {detail}"));
        }
    }

    fn eq<T: PartialEq + Debug>(&mut self, label: &str, got: T, want: T) {
        let ok = got == want;
        self.check(label, ok, format!("got {got:?}, want {want:?}"));
    }

    fn le<T: PartialOrd + Debug>(&mut self, label: &str, got: T, bound: T) {
        let ok = got <= bound;
        self.check(label, ok, format!("got {got:?}, bound {bound:?}"));
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("acceptance {}: PASS ({} checks)", self.name, self.total);
        } else {
            println!(
                "acceptance {}: FAIL ({} of {} checks)",
                self.name,
                self.failures.len(),
                self.total
            );
            for f in &self.failures {
                println!("  - {f}");
            }
            panic!(
                "{}: {} of {} checks failed:\n{}",
                self.name,
                self.failures.len(),
                self.total,
                self.failures.join("\n")
            );
        }
    }
}

fn toffoli_perm(x: u64) -> u64 {
    if x & 0b11 == 0b11 {
        x ^ 0b100
    } else {
        x
    }
}

fn lowmc() -> MultiOutputFunction {
    ciphers::lowmc_sbox()
}

fn example2() -> MultiOutputFunction {
    parse_anf("x0*x2 + x1*x3 + x0*x1*x2*x3").unwrap()
}

#[test]
fn c1_toffoli_gadget_contracts() {
    let mut c = Checks::new("c1 toffoli-gadgets");
    for (variant, want_depth, want_helpers) in [
        (ToffoliVariant::TDepth1, 1usize, 1usize),
        (ToffoliVariant::LogicalAnd, 2, 0),
    ] {
        let gadget = build_toffoli_gadget(variant);
        let label = variant.as_str();
        c.eq(&format!("{label} t_count"), gadget.costs.t_count, 4);
        c.eq(&format!("{label} t_depth"), gadget.costs.t_depth, want_depth);
        c.eq(
            &format!("{label} helpers"),
            gadget.costs.helper_count,
            want_helpers,
        );

        let mut circuit = Circuit::new(Granularity::CliffordT);
        let a = circuit.add_qubit(QubitRole::Input);
        let b = circuit.add_qubit(QubitRole::Input);
        let t = circuit.add_qubit(QubitRole::Output);
        let h = (gadget.costs.helper_count > 0).then(|| circuit.add_qubit(QubitRole::Helper));
        emit_template(&mut circuit, &gadget.gates, a, b, t, h).unwrap();
        let report = gadget_equivalence(&circuit, &[a, b, t], toffoli_perm).unwrap();
        c.check(
            &format!("{label} unitary equivalence (all inputs, all branches)"),
            report.pass,
            format!("{:?}", report.counterexample),
        );
        c.le(
            &format!("{label} amplitude error"),
            report.max_amplitude_error,
            1e-10,
        );
    }
    c.finish();
}

#[test]
fn c2_mct_t_cost_law() {
    let mut c = Checks::new("c2 mct-law");
    for k in 2..=16usize {
        let monomial: Vec<String> = (0..k).map(|v| format!("x{v}")).collect();
        let f = parse_anf(&monomial.join("*")).unwrap();
        let td1 = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
        c.eq(&format!("k={k} tdepth1 t_count"), td1.report.t_count, 4 * (k - 1));
        c.eq(
            &format!("k={k} tdepth1 t_depth"),
            td1.report.t_depth,
            ceil_log2(k as u64) as usize,
        );
        let land = synthesize(&f, ToffoliVariant::LogicalAnd).unwrap();
        c.eq(&format!("k={k} logical-and t_count"), land.report.t_count, 4 * (k - 1));
        c.eq(
            &format!("k={k} logical-and t_depth"),
            land.report.t_depth,
            ceil_log2(k as u64) as usize + 1,
        );
    }
    c.finish();
}

#[test]
fn c3_lowmc_sbox() {
    let mut c = Checks::new("c3 lowmc-sbox");
    let f = lowmc();
    let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
    c.eq("t_count", s.report.t_count, 12);
    c.eq("t_depth", s.report.t_depth, 1);
    c.eq("ancilla", s.report.ancilla, 9);
    let check = exhaustive_check(&s.toffoli_circuit, &f).unwrap();
    c.check(
        "exhaustive over all 8 inputs",
        check.passed(),
        format!("{:?}", check.failures.first()),
    );
    let bound = theorem1_bounds(3, 3, ToffoliVariant::TDepth1).unwrap();
    c.le("measured cnot_count vs worst case", s.report.cnot_count as u128, bound.cnot_count);
    println!(
        "  c3 info: measured cnot_count={} (worst-case bound {})",
        s.report.cnot_count, bound.cnot_count
    );
    c.finish();
}

#[test]
fn c4_four_variable_example() {
    let mut c = Checks::new("c4 four-variable-example");
    let f = example2();
    let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
    c.eq("t_count", s.report.t_count, 20);
    c.eq("t_depth", s.report.t_depth, 2);
    let check = exhaustive_check(&s.toffoli_circuit, &f).unwrap();
    c.check(
        "exhaustive over all 16 inputs",
        check.passed(),
        format!("{:?}", check.failures.first()),
    );
    // The published figure for this example prints CNOT depth 12 with a
    // hand-shared layout the text does not specify; report and flag, no
    // hard gate.
    let target = 12usize;
    println!(
        "  c4 info: measured cnot_depth={} (published figure prints {}{})",
        s.report.cnot_depth,
        target,
        if s.report.cnot_depth != target {
            "; differs, structural sharing not reproduced"
        } else {
            ""
        }
    );
    c.finish();
}

#[test]
fn c5_aes_sbox_pipeline() {
    let mut c = Checks::new("c5 aes-sbox");
    let f = ciphers::aes_sbox().unwrap();
    let census = f.census();
    c.eq("census distinct nonlinear", census.distinct_nonlinear, 246);
    // Published total is 1001; the table-derived total is 1009 (see module
    // header). This check asserts the published number and fails.
    c.eq("census total terms (published)", census.total_terms, 1001);
    c.eq("census max coordinate terms", census.max_coordinate_terms, 145);
    c.eq("census degree", census.degree, 7);

    let published = [
        (ToffoliVariant::TDepth1, (2778u128, 9859u128, 186u128, 3048u128, 3u32)),
        (ToffoliVariant::LogicalAnd, (2016, 7573, 177, 3048, 4)),
    ];
    for (variant, (anc, cnot, cnotd, t, td)) in published {
        let e = function_specific_estimate(&f, variant);
        let label = variant.as_str();
        c.eq(&format!("estimate {label} ancilla"), e.ancilla, anc);
        // Published CNOT counts inherit the 1001-term total; derived is +8.
        c.eq(&format!("estimate {label} cnot_count (published)"), e.cnot_count, cnot);
        c.eq(&format!("estimate {label} cnot_depth"), e.cnot_depth, cnotd);
        c.eq(&format!("estimate {label} t_count"), e.t_count, t);
        c.eq(&format!("estimate {label} t_depth"), e.t_depth, td);
    }

    let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
    c.eq("measured t_count", s.report.t_count, 3048);
    c.eq("measured t_depth", s.report.t_depth, 3);
    let check = exhaustive_check(&s.toffoli_circuit, &f).unwrap();
    c.check(
        "exhaustive over all 256 inputs",
        check.passed(),
        format!("{:?}", check.failures.first()),
    );
    // Independent oracle: drive the circuit directly against the raw lookup
    // bytes, bypassing the ANF pipeline entirely.
    let circuit = &s.toffoli_circuit;
    let inputs = circuit.qubits_with_role(QubitRole::Input);
    let outputs = circuit.qubits_with_role(QubitRole::Output);
    let mut bad = 0usize;
    for x in 0u64..256 {
        let mut state = anf_tdepth::verify::BitState::zeros(circuit);
        for (i, q) in inputs.iter().enumerate() {
            state.qubits[q.0 as usize] = x >> i & 1 == 1;
        }
        anf_tdepth::verify::simulate_reversible(circuit, &mut state).unwrap();
        let got: u64 = outputs
            .iter()
            .enumerate()
            .map(|(j, q)| (state.qubits[q.0 as usize] as u64) << j)
            .sum();
        if got != ciphers::AES_SBOX[x as usize] as u64 {
            bad += 1;
        }
        let ancilla_clean = state
            .qubits
            .iter()
            .enumerate()
            .all(|(q, bit)| {
                let role = circuit.role(anf_tdepth::circuit::QubitId(q as u32));
                role == QubitRole::Input || role == QubitRole::Output || !bit
            });
        if !ancilla_clean {
            bad += 1;
        }
    }
    c.eq("raw lookup-byte oracle over all 256 inputs", bad, 0);
    c.finish();
}

#[test]
fn c6_worst_case_bound_algebra() {
    let mut c = Checks::new("c6 bound-algebra");
    for n in 2..=16usize {
        for m in 1..=8usize {
            let closed = theorem1_bounds(n, m, ToffoliVariant::TDepth1).unwrap();
            let sums = summation_bounds(n, m).unwrap();
            let same = closed.ancilla == sums.ancilla
                && closed.t_count == sums.t_count
                && closed.cnot_count == sums.cnot_count
                && closed.cnot_depth == sums.cnot_depth
                && closed.t_depth == sums.t_depth;
            c.check(
                &format!("closed form == summation at n={n} m={m}"),
                same,
                format!("{closed:?} vs {sums:?}"),
            );
        }
    }
    for n in [3usize, 4, 5] {
        let f = complete_function(n, 1).unwrap();
        let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
        let closed = theorem1_bounds(n, 1, ToffoliVariant::TDepth1).unwrap();
        // The closed form budgets 2(k-1) scratch qubits per product and
        // counts the output; the layered circuit allocates fewer. Asserted
        // as written, fails by design (see file header).
        c.eq(
            &format!("complete n={n}: measured ancilla == closed form"),
            s.report.ancilla as u128,
            closed.ancilla,
        );
        c.eq(
            &format!("complete n={n}: measured t_count == closed form"),
            s.report.t_count as u128,
            closed.t_count,
        );
        c.le(
            &format!("complete n={n}: measured cnot_depth within bound"),
            s.report.cnot_depth as u128,
            closed.cnot_depth,
        );
    }
    c.finish();
}

#[test]
fn c7_aes_aggregation_tables() {
    let mut c = Checks::new("c7 aes-tables");
    // Single round, both variants: published cells.
    let published_round = [
        (ToffoliVariant::TDepth1, (44448u128, 158264u128, 200u128, 48768u128, 3u128)),
        (ToffoliVariant::LogicalAnd, (32256, 121688, 191, 48768, 4)),
    ];
    for (variant, (anc, cnot, cnotd, t, td)) in published_round {
        let r = ciphers::aes_round_costs(variant).unwrap().total;
        let label = variant.as_str();
        c.eq(&format!("round {label} ancilla"), r.ancilla, anc);
        c.eq(&format!("round {label} cnot (published)"), r.cnot, cnot);
        c.eq(&format!("round {label} cnot_depth"), r.cnot_depth, cnotd);
        c.eq(&format!("round {label} t"), r.t, t);
        c.eq(&format!("round {label} t_depth"), r.t_depth, td);
    }
    // Complete AES rows.
    let published_full = [
        (128u32, (45600u128, 1582248u128, 1987u128, 487680u128, 30u128)),
        (192, (45856, 1898776, 2387, 585216, 36)),
        (256, (46112, 2215304, 2787, 682752, 42)),
    ];
    for (bits, (anc, cnot, cnotd, t, td)) in published_full {
        let params = ciphers::AesParameters::new(bits).unwrap();
        let full = ciphers::aes_full_costs(params, ToffoliVariant::TDepth1).unwrap();
        c.eq(&format!("aes-{bits} ancilla"), full.ancilla, anc);
        c.eq(&format!("aes-{bits} cnot (published)"), full.cnot, cnot);
        c.eq(&format!("aes-{bits} cnot_depth"), full.cnot_depth, cnotd);
        c.eq(&format!("aes-{bits} t"), full.t, t);
        c.eq(&format!("aes-{bits} t_depth"), full.t_depth, td);
    }
    // Comparison table: prior rows verbatim, present-work rows flagged.
    let rows = ciphers::comparison_rows();
    let prior = rows
        .iter()
        .find(|r| r.key_bits == 128 && r.t_depth == 40)
        .expect("prior 128-bit row");
    c.eq("prior row ancilla", prior.ancilla, 3689);
    c.eq("prior row cnot", prior.cnot, 132376);
    let table = ciphers::comparison_table().unwrap();
    c.eq("present-work rows flagged", table.notes.len(), 3);
    c.check(
        "flag marks inconsistency, never reconciles",
        table.rows.iter().any(|r| r[1].contains("[!]"))
            && table.rows.iter().any(|r| r[2] == "37464"),
        "expected [!] flags and the published 37464 printed verbatim".into(),
    );
    c.finish();
}

#[test]
fn c8_random_function_fuzz() {
    let mut c = Checks::new("c8 fuzz");
    let mut rng = ChaCha8Rng::seed_from_u64(20250809);
    for case in 0..100 {
        let n = rng.gen_range(2..=6usize);
        let m = rng.gen_range(1..=3usize);
        let mut coords: Vec<BooleanFunction> = Vec::with_capacity(m);
        for _ in 0..m {
            let terms = rng.gen_range(0..=8usize);
            let monomials: Vec<_> = (0..terms)
                .map(|_| {
                    let mask = rng.gen_range(1..1u64 << n);
                    anf_tdepth::anf::Monomial::from_mask(mask).unwrap()
                })
                .collect();
            coords.push(BooleanFunction::from_monomials(n, rng.gen_bool(0.3), monomials).unwrap());
        }
        let f = MultiOutputFunction::new(coords).unwrap();
        let s = synthesize(&f, ToffoliVariant::TDepth1).unwrap();
        let check = exhaustive_check(&s.toffoli_circuit, &f).unwrap();
        c.check(
            &format!("case {case}: exhaustive + ancilla restored"),
            check.passed(),
            format!("n={n} m={m} {:?}", check.failures.first()),
        );
        let degree = f.degree();
        let want_td = if degree >= 2 {
            ceil_log2(degree as u64) as usize
        } else {
            0
        };
        c.eq(&format!("case {case}: t_depth law"), s.report.t_depth, want_td);
        let bounds = theorem1_bounds(n, m, ToffoliVariant::TDepth1).unwrap();
        let within = s.report.ancilla as u128 <= bounds.ancilla
            && s.report.t_count as u128 <= bounds.t_count
            && s.report.cnot_count as u128 <= bounds.cnot_count
            && s.report.cnot_depth as u128 <= bounds.cnot_depth
            && s.report.t_depth as u32 <= bounds.t_depth;
        c.check(
            &format!("case {case}: within worst-case bounds"),
            within,
            format!("report {:?} vs bounds {bounds:?}", s.report),
        );
    }
    c.finish();
}

#[test]
fn c9_round_trips() {
    let mut c = Checks::new("c9 round-trips");
    // ANF <-> truth table, exhaustive for n <= 4.
    let mut bad = 0usize;
    let mut total = 0usize;
    for n in 1..=4usize {
        let size = 1 << n;
        for code in 0u64..1 << size {
            let table: Vec<bool> = (0..size).map(|i| code >> i & 1 == 1).collect();
            let bf = BooleanFunction::from_truth_table(&table).unwrap();
            total += 1;
            if bf.truth_table().unwrap() != table {
                bad += 1;
            }
        }
    }
    c.eq(
        &format!("table->anf->table exhaustive n<=4 ({total} functions)"),
        bad,
        0,
    );
    // Moebius involution doubles as the coefficient-level check.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0usize;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10usize);
        let table: Vec<bool> = (0..1 << n).map(|_| rng.gen_bool(0.5)).collect();
        let mut twice = table.clone();
        moebius_transform(&mut twice);
        moebius_transform(&mut twice);
        if twice != table {
            bad += 1;
            continue;
        }
        let bf = BooleanFunction::from_truth_table(&table).unwrap();
        if bf.truth_table().unwrap() != table {
            bad += 1;
        }
    }
    c.eq("randomized round trips n<=10 (1000 cases)", bad, 0);

    // Circuit export <-> parse, gate-exact, on every synthesized example.
    let mut subjects: Vec<(String, Synthesis)> = vec![
        (
            "lowmc tdepth1".into(),
            synthesize(&lowmc(), ToffoliVariant::TDepth1).unwrap(),
        ),
        (
            "lowmc logical-and".into(),
            synthesize(&lowmc(), ToffoliVariant::LogicalAnd).unwrap(),
        ),
        (
            "four-variable example".into(),
            synthesize(&example2(), ToffoliVariant::TDepth1).unwrap(),
        ),
        (
            "aes s-box".into(),
            synthesize(&ciphers::aes_sbox().unwrap(), ToffoliVariant::TDepth1).unwrap(),
        ),
        (
            "16-controlled monomial".into(),
            synthesize(
                &parse_anf(
                    &(0..16).map(|v| format!("x{v}")).collect::<Vec<_>>().join("*"),
                )
                .unwrap(),
                ToffoliVariant::TDepth1,
            )
            .unwrap(),
        ),
    ];
    for (label, s) in subjects.drain(..) {
        for (kind, circuit) in [("toffoli", &s.toffoli_circuit), ("clifford+t", &s.circuit)] {
            let text = circuit.export_text();
            let parsed = Circuit::parse_text(&text).unwrap();
            c.check(
                &format!("{label}: {kind} export/parse gate-exact"),
                &parsed == circuit,
                "re-parsed circuit differs".into(),
            );
        }
    }
    c.finish();
}
