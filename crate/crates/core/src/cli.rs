//! The `anf-tdepth` command line.
//!
//! Exit codes are stable: 0 success, 2 usage or parse failure, 3
//! verification or table-diff failure.

use crate::anf::{parse_anf, parse_truth_tables, MultiOutputFunction};
use crate::ciphers;
use crate::decomp::{
    build_toffoli_gadget, cost_model, helpers_needed, mct_tree_circuit, ToffoliVariant,
};
use crate::estimate::{function_specific_estimate, summation_bounds, theorem1_bounds};
use crate::synth::synthesize;
use crate::verify::{exhaustive_check, gadget_equivalence, STATE_WIDTH_LIMIT};
use crate::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "anf-tdepth",
    about = "Compile Boolean functions into T-depth-optimal Clifford+T circuits",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "tdepth1")]
    TDepth1,
    #[value(name = "logical-and")]
    LogicalAnd,
}

impl From<VariantArg> for ToffoliVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::TDepth1 => ToffoliVariant::TDepth1,
            VariantArg::LogicalAnd => ToffoliVariant::LogicalAnd,
        }
    }
}

/// Input selection: exactly one source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// ANF text file (one coordinate per line)
    #[arg(long)]
    pub anf: Option<PathBuf>,
    /// Truth-table file (bit/hex lines, or a "vars N outs M" integer table)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Inline ANF expression, e.g. "x0*x1 + x2"
    #[arg(long)]
    pub expr: Option<String>,
}

impl InputArgs {
    fn load(&self) -> crate::Result<MultiOutputFunction> {
        if let Some(path) = &self.anf {
            return parse_anf(&std::fs::read_to_string(path)?);
        }
        if let Some(path) = &self.table {
            return parse_truth_tables(&std::fs::read_to_string(path)?);
        }
        parse_anf(self.expr.as_deref().unwrap_or_default())
    }
}

/// Same sources as [`InputArgs`] but optional as a whole.
#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct MaybeInputArgs {
    /// ANF text file (one coordinate per line)
    #[arg(long)]
    pub anf: Option<PathBuf>,
    /// Truth-table file (bit/hex lines, or a "vars N outs M" integer table)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Inline ANF expression, e.g. "x0*x1 + x2"
    #[arg(long)]
    pub expr: Option<String>,
}

impl MaybeInputArgs {
    fn load(&self) -> crate::Result<Option<MultiOutputFunction>> {
        if self.anf.is_none() && self.table.is_none() && self.expr.is_none() {
            return Ok(None);
        }
        let args = InputArgs {
            anf: self.anf.clone(),
            table: self.table.clone(),
            expr: self.expr.clone(),
        };
        args.load().map(Some)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a Clifford+T circuit and its resource report
    Synth {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "tdepth1")]
        variant: VariantArg,
        /// Write the circuit text here (stdout summary otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON resource report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Exhaustively check the circuit against the function
        #[arg(long)]
        verify: bool,
        /// Print the JSON report to stdout
        #[arg(long)]
        json: bool,
    },
    /// Print closed-form, summation and function-specific resource bounds
    Estimate {
        #[arg(short = 'n', long)]
        n: Option<usize>,
        #[arg(short = 'm', long, default_value = "1")]
        m: usize,
        #[arg(long, value_enum, default_value = "tdepth1")]
        variant: VariantArg,
        #[command(flatten)]
        input: MaybeInputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Synthesize and exhaustively verify, failing on any mismatch
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "tdepth1")]
        variant: VariantArg,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the published resource tables and diff every cell
    Tables {
        #[arg(value_enum)]
        which: TableArg,
        #[arg(long)]
        json: bool,
    },
    /// Check both Toffoli gadgets and the multi-controlled trees
    GadgetCheck {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Sbox,
    Round,
    Aes,
    Compare,
}

/// Runs a parsed command, writing to `out`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Error::Io(e)) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_USAGE
        }
        Err(e @ (Error::Parse { .. } | Error::Format(_) | Error::Domain(_))) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> crate::Result<i32> {
    match cli.command {
        Command::Synth {
            input,
            variant,
            out: out_path,
            report,
            verify,
            json,
        } => {
            let f = input.load()?;
            let synthesis = synthesize(&f, variant.into())?;
            let report_json = serde_json::to_string_pretty(&synthesis.report)
                .expect("report serialization");
            if let Some(path) = &out_path {
                std::fs::write(path, synthesis.circuit.export_text())?;
            }
            if let Some(path) = &report {
                std::fs::write(path, &report_json)?;
            }
            if json {
                writeln!(out, "{report_json}")?;
            } else {
                let r = &synthesis.report;
                writeln!(
                    out,
                    "n={} m={} variant={} ancilla={} t_count={} t_depth={} cnot_count={} \
                     cnot_depth={} total_depth={} measurements={}",
                    r.n,
                    r.m,
                    r.variant,
                    r.ancilla,
                    r.t_count,
                    r.t_depth,
                    r.cnot_count,
                    r.cnot_depth,
                    r.total_depth,
                    r.measurements
                )?;
                if out_path.is_none() {
                    writeln!(out, "(no --out given; circuit text not written)")?;
                }
            }
            if verify {
                if f.n() > crate::verify::EXHAUSTIVE_INPUT_LIMIT {
                    writeln!(
                        out,
                        "verify: skipped (n = {} exceeds the exhaustive limit)",
                        f.n()
                    )?;
                } else {
                    let check = exhaustive_check(&synthesis.toffoli_circuit, &f)?;
                    if !check.passed() {
                        writeln!(out, "verify: FAIL {:?}", check.failures.first())?;
                        return Ok(EXIT_VERIFY);
                    }
                    writeln!(out, "verify: ok ({} points)", check.checked)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Estimate {
            n,
            m,
            variant,
            input,
            json,
        } => {
            let function = input.load()?;
            let (n, m) = match (&function, n) {
                (Some(f), _) => (f.n(), f.m()),
                (None, Some(n)) => (n, m),
                (None, None) => {
                    return Err(Error::Domain("estimate needs -n or an input".into()))
                }
            };
            let closed = theorem1_bounds(n, m, variant.into())?;
            let sums = summation_bounds(n, m)?;
            let identity = closed.ancilla == sums.ancilla
                && closed.t_count == sums.t_count
                && closed.cnot_count == sums.cnot_count;
            let specific = function.as_ref().map(|f| function_specific_estimate(f, variant.into()));
            if json {
                let payload = serde_json::json!({
                    "closed_form": closed,
                    "summation": sums,
                    "identity_check": identity,
                    "function_specific": specific,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            } else {
                let show = |out: &mut dyn Write, b: &crate::estimate::ResourceBounds| {
                    writeln!(
                        out,
                        "{:<18} ancilla={} t_count={} cnot_count={} cnot_depth={} t_depth={}",
                        b.source, b.ancilla, b.t_count, b.cnot_count, b.cnot_depth, b.t_depth
                    )
                };
                show(out, &closed)?;
                show(out, &sums)?;
                writeln!(
                    out,
                    "identity check: closed form {} summation",
                    if identity { "==" } else { "!=" }
                )?;
                if let Some(s) = &specific {
                    show(out, s)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, variant, json } => {
            let f = input.load()?;
            if f.n() > crate::verify::EXHAUSTIVE_INPUT_LIMIT {
                return Err(Error::ExhaustiveWidth {
                    n: f.n(),
                    limit: crate::verify::EXHAUSTIVE_INPUT_LIMIT,
                });
            }
            let synthesis = synthesize(&f, variant.into())?;
            let check = exhaustive_check(&synthesis.toffoli_circuit, &f)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&check).unwrap())?;
            } else {
                writeln!(
                    out,
                    "checked {} points: {}",
                    check.checked,
                    if check.passed() { "ok" } else { "FAIL" }
                )?;
                for failure in &check.failures {
                    writeln!(out, "  {failure:?}")?;
                }
            }
            Ok(if check.passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Tables { which, json } => {
            let table = match which {
                TableArg::Sbox => ciphers::sbox_table()?,
                TableArg::Round => ciphers::round_table()?,
                TableArg::Aes => ciphers::aes_table()?,
                TableArg::Compare => ciphers::comparison_table()?,
            };
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&table).unwrap())?;
            } else {
                write!(out, "{}", table.to_text())?;
            }
            Ok(if table.mismatches() == 0 {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
        Command::GadgetCheck { json } => gadget_check(out, json),
    }
}

fn gadget_check(out: &mut impl Write, json: bool) -> crate::Result<i32> {
    use crate::circuit::{Circuit, Granularity, QubitRole};
    use crate::decomp::emit_template;

    let mut results = Vec::new();
    let mut all_pass = true;

    for variant in [ToffoliVariant::TDepth1, ToffoliVariant::LogicalAnd] {
        let gadget = build_toffoli_gadget(variant);
        let mut circuit = Circuit::new(Granularity::CliffordT);
        let a = circuit.add_qubit(QubitRole::Input);
        let b = circuit.add_qubit(QubitRole::Input);
        let t = circuit.add_qubit(QubitRole::Output);
        let helper = (gadget.costs.helper_count > 0).then(|| circuit.add_qubit(QubitRole::Helper));
        emit_template(&mut circuit, &gadget.gates, a, b, t, helper)?;
        let report = gadget_equivalence(&circuit, &[a, b, t], |x| {
            if x & 0b11 == 0b11 {
                x ^ 0b100
            } else {
                x
            }
        })?;
        all_pass &= report.pass;
        results.push(serde_json::json!({
            "subject": format!("toffoli gadget {}", variant.as_str()),
            "method": "branched statevector equivalence",
            "pass": report.pass,
            "max_amplitude_error": report.max_amplitude_error,
            "measured": gadget.costs,
        }));
    }

    for k in 1..=8usize {
        let (circuit, tree) = mct_tree_circuit(k);
        // Reversible exhaustive check at Toffoli granularity.
        let mut reversible_ok = true;
        for x in 0u64..1 << k {
            for y in [false, true] {
                let mut state = crate::verify::BitState::zeros(&circuit);
                for (i, bit) in state.qubits.iter_mut().take(k).enumerate() {
                    *bit = x >> i & 1 == 1;
                }
                state.qubits[k] = y;
                crate::verify::simulate_reversible(&circuit, &mut state)?;
                let product = x.count_ones() as usize == k;
                reversible_ok &= state.qubits[k] == (y ^ product);
                reversible_ok &= state.qubits[k + 1..].iter().all(|b| !b);
                reversible_ok &= (0..k).all(|i| state.qubits[i] == (x >> i & 1 == 1));
            }
        }
        all_pass &= reversible_ok;

        // Statevector equivalence of the lowered tree where it fits.
        let mut lowered_entry = serde_json::json!("skipped (width exceeds statevector limit)");
        let mut with_helpers = circuit.clone();
        for _ in 0..helpers_needed(&with_helpers, ToffoliVariant::TDepth1) {
            with_helpers.add_qubit(QubitRole::Helper);
        }
        if with_helpers.qubit_count() <= STATE_WIDTH_LIMIT {
            let lowered = with_helpers.lower_toffolis(ToffoliVariant::TDepth1)?;
            let data: Vec<crate::circuit::QubitId> = (0..=k as u32)
                .map(crate::circuit::QubitId)
                .collect();
            let mask = (1u64 << k) - 1;
            let report = gadget_equivalence(&lowered, &data, |x| {
                if x & mask == mask {
                    x ^ 1 << k
                } else {
                    x
                }
            })?;
            all_pass &= report.pass;
            lowered_entry = serde_json::json!({
                "pass": report.pass,
                "max_amplitude_error": report.max_amplitude_error,
            });
        }

        let measured = if k >= 2 {
            let mut with_helpers = circuit.clone();
            for _ in 0..helpers_needed(&with_helpers, ToffoliVariant::TDepth1) {
                with_helpers.add_qubit(QubitRole::Helper);
            }
            let lowered = with_helpers.lower_toffolis(ToffoliVariant::TDepth1)?;
            let m = lowered.metrics()?;
            let accounting = cost_model(k, ToffoliVariant::TDepth1);
            serde_json::json!({
                "t_count": m.t_count,
                "t_depth": m.t_depth,
                "cnot_count": m.cnot_count,
                "accounting": accounting,
            })
        } else {
            serde_json::json!({"t_count": 0, "cnot_count": 1})
        };
        results.push(serde_json::json!({
            "subject": format!("{k}-controlled tree ({} toffolis, {} layers)",
                               tree.compute.len(), tree.levels),
            "reversible_exhaustive": reversible_ok,
            "lowered_equivalence": lowered_entry,
            "measured": measured,
        }));
    }

    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "pass": all_pass,
                "results": results,
            }))
            .unwrap()
        )?;
    } else {
        for entry in &results {
            writeln!(out, "{entry}")?;
        }
        writeln!(out, "gadget check: {}", if all_pass { "ok" } else { "FAIL" })?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(args).expect("argument parsing");
        let mut buf = Vec::new();
        let code = run(cli, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn synth_inline_expression() {
        let (code, output) = run_args(&[
            "anf-tdepth",
            "synth",
            "--expr",
            "x0*x2 + x1*x3 + x0*x1*x2*x3",
            "--verify",
        ]);
        assert_eq!(code, EXIT_OK, "{output}");
        assert!(output.contains("t_count=20"));
        assert!(output.contains("t_depth=2"));
        assert!(output.contains("verify: ok"));
    }

    #[test]
    fn synth_constant_has_no_t() {
        let (code, output) = run_args(&["anf-tdepth", "synth", "--expr", "1"]);
        assert_eq!(code, EXIT_OK);
        assert!(output.contains("t_count=0"));
    }

    #[test]
    fn parse_failures_exit_2() {
        let (code, output) = run_args(&["anf-tdepth", "synth", "--expr", "x0 + y1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(output.contains("error"));
    }

    #[test]
    fn estimate_closed_forms() {
        let (code, output) = run_args(&["anf-tdepth", "estimate", "-n", "8", "-m", "8"]);
        assert_eq!(code, EXIT_OK);
        assert!(output.contains("ancilla=2801"), "{output}");
        assert!(output.contains("closed form == summation"));
        let (code, output) = run_args(&["anf-tdepth", "estimate", "-n", "2", "-m", "1"]);
        assert_eq!(code, EXIT_OK);
        assert!(output.contains("t_count=4"));
        let (code, _) = run_args(&["anf-tdepth", "estimate", "-n", "1", "-m", "1"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn verify_subcommand() {
        let (code, output) = run_args(&["anf-tdepth", "verify", "--expr", "x0*x1 + x2"]);
        assert_eq!(code, EXIT_OK, "{output}");
        assert!(output.contains("ok"));
    }

    #[test]
    fn tables_commands_succeed_with_flags() {
        for which in ["sbox", "round", "aes", "compare"] {
            let (code, output) = run_args(&["anf-tdepth", "tables", which]);
            assert_eq!(code, EXIT_OK, "{which}: {output}");
        }
        let (_, output) = run_args(&["anf-tdepth", "tables", "compare"]);
        assert!(output.contains("[!]"));
    }
}
