//! Concrete cipher targets and aggregate AES costs.
//!
//! The AES S-box lives here as embedded data (the standard 256-byte lookup
//! table); its ANF is derived through the truth-table pipeline, never
//! hardcoded, and a census integrity check guards against table typos.
//!
//! The printed aggregate tables carry one known arithmetic slip: they build
//! on a grand total of 1001 coordinate-ANF terms for the S-box, while the
//! table derived from the standard S-box has 1009 (the per-coordinate term
//! counts 131,132,145,136,131,113,111,110 sum to 1009; 1001 matches the
//! inverse S-box instead, whose largest coordinate has 143 terms, not the
//! printed 145). Every CNOT-count cell downstream of that total therefore
//! differs from the published value by 8 per S-box evaluation. The table
//! renderers compute the derived values, print the published ones beside
//! them, and mark exactly those cells as documented discrepancies.

use crate::anf::{parse_anf, MultiOutputFunction};
use crate::decomp::ToffoliVariant;
use crate::estimate::function_specific_estimate;
use crate::{Error, Result};
use serde::Serialize;

/// FIPS-197 S-box lookup table.
pub const AES_SBOX: [u8; 256] = [
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
];

/// Census of the derived S-box ANF, pinned as the integrity check.
pub const AES_CENSUS: (usize, usize, usize, usize) = (246, 1009, 145, 7);

/// The 3-bit S-box used by LowMC: degree 2, so the synthesized circuit has
/// T depth 1.
pub fn lowmc_sbox() -> MultiOutputFunction {
    parse_anf("x0 + x1*x2\nx0 + x1 + x0*x2\nx0 + x1 + x2 + x0*x1").expect("fixed ANF")
}

/// The AES S-box as an 8-input 8-output function, derived from the embedded
/// lookup table through the truth-table pipeline. Errors if the derived
/// census does not match [`AES_CENSUS`].
pub fn aes_sbox() -> Result<MultiOutputFunction> {
    let mut text = String::from("vars 8 outs 8\n");
    for (i, byte) in AES_SBOX.iter().enumerate() {
        text.push_str(&byte.to_string());
        text.push(if i % 16 == 15 { '\n' } else { ' ' });
    }
    let f = crate::anf::parse_truth_tables(&text)?;
    let census = f.census();
    let got = (
        census.distinct_nonlinear,
        census.total_terms,
        census.max_coordinate_terms,
        census.degree,
    );
    if got != AES_CENSUS {
        return Err(Error::Integrity(format!(
            "AES S-box census {got:?} does not match the expected {AES_CENSUS:?}"
        )));
    }
    Ok(f)
}

/// AES key size and its round count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AesParameters {
    pub key_bits: u32,
}

impl AesParameters {
    pub fn new(key_bits: u32) -> Result<Self> {
        match key_bits {
            128 | 192 | 256 => Ok(Self { key_bits }),
            other => Err(Error::Domain(format!(
                "AES key size must be 128, 192 or 256 bits, got {other}"
            ))),
        }
    }

    pub fn rounds(&self) -> u32 {
        match self.key_bits {
            128 => 10,
            192 => 12,
            _ => 14,
        }
    }
}

/// One row of aggregate costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostRow {
    pub ancilla: u128,
    pub cnot: u128,
    pub cnot_depth: u128,
    pub t: u128,
    pub t_depth: u128,
}

impl CostRow {
    const ZERO: CostRow = CostRow {
        ancilla: 0,
        cnot: 0,
        cnot_depth: 0,
        t: 0,
        t_depth: 0,
    };
}

/// Per-transformation costs of one AES round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundCosts {
    pub subbytes: CostRow,
    pub shiftrows: CostRow,
    pub mixcolumns: CostRow,
    pub addroundkey: CostRow,
    pub total: CostRow,
}

/// In-place MixColumns of one column: a fixed prior-work CNOT circuit used
/// as an accounting constant, not synthesized here.
const MIXCOLUMN_CNOTS: u128 = 98;
const MIXCOLUMN_DEPTH: u128 = 13;

/// Costs of a single AES round: 16 parallel S-boxes (counts scale, depths
/// do not), rewiring-only ShiftRows, four parallel in-place MixColumns, and
/// a 128-bit round-key XOR.
pub fn aes_round_costs(variant: ToffoliVariant) -> Result<RoundCosts> {
    let sbox = function_specific_estimate(&aes_sbox()?, variant);
    let subbytes = CostRow {
        ancilla: 16 * sbox.ancilla,
        cnot: 16 * sbox.cnot_count,
        cnot_depth: sbox.cnot_depth,
        t: 16 * sbox.t_count,
        t_depth: sbox.t_depth as u128,
    };
    let mixcolumns = CostRow {
        ancilla: 0,
        cnot: 4 * MIXCOLUMN_CNOTS,
        cnot_depth: MIXCOLUMN_DEPTH,
        t: 0,
        t_depth: 0,
    };
    let addroundkey = CostRow {
        ancilla: 0,
        cnot: 128,
        cnot_depth: 1,
        t: 0,
        t_depth: 0,
    };
    let total = CostRow {
        ancilla: subbytes.ancilla,
        cnot: subbytes.cnot + mixcolumns.cnot + addroundkey.cnot,
        cnot_depth: subbytes.cnot_depth + mixcolumns.cnot_depth + addroundkey.cnot_depth,
        t: subbytes.t,
        t_depth: subbytes.t_depth,
    };
    Ok(RoundCosts {
        subbytes,
        shiftrows: CostRow::ZERO,
        mixcolumns,
        addroundkey,
        total,
    })
}

/// Complete-AES costs: rounds chain serially; S-box ancillas are reclaimed
/// between rounds except the 128 fresh output qubits per round, and the
/// final round omits MixColumns.
pub fn aes_full_costs(params: AesParameters, variant: ToffoliVariant) -> Result<CostRow> {
    let round = aes_round_costs(variant)?.total;
    let r = params.rounds() as u128;
    Ok(CostRow {
        ancilla: round.ancilla + 128 * (r - 1),
        cnot: round.cnot * r - 4 * MIXCOLUMN_CNOTS,
        cnot_depth: round.cnot_depth * r - MIXCOLUMN_DEPTH,
        t: round.t * r,
        t_depth: round.t_depth * r,
    })
}

/// How a rendered cell compares against the published value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Match,
    /// Differs from the published number for a documented reason.
    KnownDiscrepancy,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellDiff {
    pub row: String,
    pub column: String,
    pub computed: u128,
    pub published: u128,
    pub status: CellStatus,
}

/// A rendered aggregate table plus its diff against the published values.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub diffs: Vec<CellDiff>,
}

impl TableReport {
    /// Undocumented cell mismatches; nonzero fails the tables command.
    pub fn mismatches(&self) -> usize {
        self.diffs
            .iter()
            .filter(|d| d.status == CellStatus::Mismatch)
            .count()
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = format!("{}\n", self.title);
        let fmt_row = |cells: &[String], widths: &[usize]| {
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:>width$}", c, width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&fmt_row(&self.header, &widths));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_row(row, &widths));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str("note: ");
            out.push_str(note);
            out.push('\n');
        }
        out
    }
}

const COLUMNS: [&str; 5] = ["Ancilla", "#CNOT", "CNOT depth", "#T", "T depth"];

fn variant_label(variant: ToffoliVariant) -> &'static str {
    match variant {
        ToffoliVariant::TDepth1 => "t-depth-1 gadget",
        ToffoliVariant::LogicalAnd => "logical-AND gadget",
    }
}

/// Builds one table row: computed beside published, CNOT-count slips
/// marked as documented when they equal the known 8-terms-per-S-box delta.
fn diff_row(
    row_label: &str,
    computed: CostRow,
    published: CostRow,
    cnot_slip: u128,
    diffs: &mut Vec<CellDiff>,
    notes: &mut Vec<String>,
) -> Vec<String> {
    let pairs = [
        (COLUMNS[0], computed.ancilla, published.ancilla),
        (COLUMNS[1], computed.cnot, published.cnot),
        (COLUMNS[2], computed.cnot_depth, published.cnot_depth),
        (COLUMNS[3], computed.t, published.t),
        (COLUMNS[4], computed.t_depth, published.t_depth),
    ];
    let mut cells = vec![row_label.to_string()];
    for (column, got, want) in pairs {
        let status = if got == want {
            CellStatus::Match
        } else if column == COLUMNS[1] && got == want + cnot_slip {
            notes.push(format!(
                "{row_label}: {column} computed {got} vs published {want} \
                 (published tables total 1001 S-box ANF terms; the derived table has 1009)"
            ));
            CellStatus::KnownDiscrepancy
        } else {
            CellStatus::Mismatch
        };
        diffs.push(CellDiff {
            row: row_label.to_string(),
            column: column.to_string(),
            computed: got,
            published: want,
            status,
        });
        cells.push(if status == CellStatus::Match {
            got.to_string()
        } else {
            format!("{got} [published: {want}]")
        });
    }
    cells
}

/// S-box resource table, both gadget variants.
pub fn sbox_table() -> Result<TableReport> {
    let published = [
        (ToffoliVariant::LogicalAnd, CostRow { ancilla: 2016, cnot: 7573, cnot_depth: 177, t: 3048, t_depth: 4 }),
        (ToffoliVariant::TDepth1, CostRow { ancilla: 2778, cnot: 9859, cnot_depth: 186, t: 3048, t_depth: 3 }),
    ];
    let sbox = aes_sbox()?;
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    let mut notes = Vec::new();
    for (variant, want) in published {
        let e = function_specific_estimate(&sbox, variant);
        let computed = CostRow {
            ancilla: e.ancilla,
            cnot: e.cnot_count,
            cnot_depth: e.cnot_depth,
            t: e.t_count,
            t_depth: e.t_depth as u128,
        };
        rows.push(diff_row(
            variant_label(variant),
            computed,
            want,
            8,
            &mut diffs,
            &mut notes,
        ));
    }
    let mut header = vec!["Toffoli-to-T".to_string()];
    header.extend(COLUMNS.iter().map(|c| c.to_string()));
    Ok(TableReport {
        title: "AES S-box quantum resource estimates".into(),
        header,
        rows,
        notes,
        diffs,
    })
}

/// Single-round resource table, both gadget variants.
pub fn round_table() -> Result<TableReport> {
    let published = [
        (ToffoliVariant::LogicalAnd, CostRow { ancilla: 32256, cnot: 121688, cnot_depth: 191, t: 48768, t_depth: 4 }),
        (ToffoliVariant::TDepth1, CostRow { ancilla: 44448, cnot: 158264, cnot_depth: 200, t: 48768, t_depth: 3 }),
    ];
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    let mut notes = Vec::new();
    for (variant, want) in published {
        let computed = aes_round_costs(variant)?.total;
        rows.push(diff_row(
            variant_label(variant),
            computed,
            want,
            128,
            &mut diffs,
            &mut notes,
        ));
    }
    let mut header = vec!["Toffoli-to-T".to_string()];
    header.extend(COLUMNS.iter().map(|c| c.to_string()));
    Ok(TableReport {
        title: "Single AES round quantum resource estimates".into(),
        header,
        rows,
        notes,
        diffs,
    })
}

/// Complete-AES table for the T-depth-1 construction.
pub fn aes_table() -> Result<TableReport> {
    let published = [
        (128u32, CostRow { ancilla: 45600, cnot: 1582248, cnot_depth: 1987, t: 487680, t_depth: 30 }),
        (192, CostRow { ancilla: 45856, cnot: 1898776, cnot_depth: 2387, t: 585216, t_depth: 36 }),
        (256, CostRow { ancilla: 46112, cnot: 2215304, cnot_depth: 2787, t: 682752, t_depth: 42 }),
    ];
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    let mut notes = Vec::new();
    for (key_bits, want) in published {
        let params = AesParameters::new(key_bits)?;
        let computed = aes_full_costs(params, ToffoliVariant::TDepth1)?;
        let label = format!("AES-{key_bits} ({} rounds)", params.rounds());
        let mut cells = diff_row(
            &label,
            computed,
            want,
            128 * params.rounds() as u128,
            &mut diffs,
            &mut notes,
        );
        cells.insert(1, params.rounds().to_string());
        rows.push(cells);
    }
    let mut header = vec!["Key".to_string(), "Rounds".to_string()];
    header.extend(COLUMNS.iter().map(|c| c.to_string()));
    Ok(TableReport {
        title: "Complete AES, T-depth-1 construction".into(),
        header,
        rows,
        notes,
        diffs,
    })
}

/// One literal row of the published comparison with previous circuits.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub key_bits: u32,
    pub reference: &'static str,
    pub ancilla: u128,
    pub cnot: u128,
    pub cnot_depth: Option<u128>,
    pub t: u128,
    pub t_depth: u128,
    pub present_work: bool,
}

/// Published comparison rows. Prior-work rows are literal constants; no
/// prior circuit is re-synthesized here.
pub fn comparison_rows() -> Vec<ComparisonRow> {
    let row = |key_bits, reference, ancilla, cnot, cnot_depth, t, t_depth, present_work| {
        ComparisonRow {
            key_bits,
            reference,
            ancilla,
            cnot,
            cnot_depth,
            t,
            t_depth,
            present_work,
        }
    };
    vec![
        row(128, "Eurocrypt 2020 (Tab. 4)", 4244, 284420, None, 54400, 120, false),
        row(128, "Asiacrypt 2023 (Tab. 13)", 3689, 132376, None, 27200, 40, false),
        row(128, "Asiacrypt 2022 (Tab. 7)", 5576, 285393, None, 62400, 30, false),
        row(128, "this work", 37464, 1441128, Some(1987), 487680, 30, true),
        row(192, "Eurocrypt 2020 (Tab. 4)", 4564, 321021, None, 60928, 144, false),
        row(192, "Asiacrypt 2023 (Tab. 13)", 3945, 149256, None, 30464, 48, false),
        row(192, "this work", 37480, 1729824, Some(2387), 585216, 36, true),
        row(256, "Eurocrypt 2020 (Tab. 4)", 4884, 393534, None, 75072, 168, false),
        row(256, "Asiacrypt 2023 (Tab. 13)", 4457, 187128, None, 38080, 56, false),
        row(256, "this work", 37496, 2017736, Some(2787), 682752, 42, true),
    ]
}

/// Comparison table: literal published rows, with each present-work row
/// flagged against the independently computed complete-AES numbers (the
/// published comparison disagrees with the published full-AES table; the
/// two are printed side by side, never reconciled).
pub fn comparison_table() -> Result<TableReport> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut diffs = Vec::new();
    for row in comparison_rows() {
        let mut flag = "";
        if row.present_work {
            let params = AesParameters::new(row.key_bits)?;
            let computed = aes_full_costs(params, ToffoliVariant::TDepth1)?;
            if computed.ancilla != row.ancilla || computed.cnot != row.cnot {
                flag = " [!]";
                notes.push(format!(
                    "AES-{}: published comparison row ({} ancilla, {} CNOT) is inconsistent \
                     with the published full-AES table; derived values are {} ancilla, {} CNOT",
                    row.key_bits, row.ancilla, row.cnot, computed.ancilla, computed.cnot
                ));
                for (column, got, want) in [
                    ("Ancilla", computed.ancilla, row.ancilla),
                    ("#CNOT", computed.cnot, row.cnot),
                ] {
                    diffs.push(CellDiff {
                        row: format!("AES-{} {}", row.key_bits, row.reference),
                        column: column.to_string(),
                        computed: got,
                        published: want,
                        status: CellStatus::KnownDiscrepancy,
                    });
                }
            }
        }
        rows.push(vec![
            row.key_bits.to_string(),
            format!("{}{}", row.reference, flag),
            row.ancilla.to_string(),
            row.cnot.to_string(),
            row.cnot_depth.map_or("NA".into(), |d| d.to_string()),
            row.t.to_string(),
            row.t_depth.to_string(),
        ]);
    }
    let header = vec![
        "Key".to_string(),
        "Reference".to_string(),
        "Ancilla".to_string(),
        "CNOT count".to_string(),
        "CNOT depth".to_string(),
        "T count".to_string(),
        "T depth".to_string(),
    ];
    Ok(TableReport {
        title: "Complete AES: comparison with previous circuits".into(),
        header,
        rows,
        notes,
        diffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle for the embedded table: the S-box rebuilt from
    /// GF(2^8) inversion and the affine map.
    fn gf_mul(mut a: u8, mut b: u8) -> u8 {
        let mut p = 0u8;
        for _ in 0..8 {
            if b & 1 == 1 {
                p ^= a;
            }
            let hi = a & 0x80 != 0;
            a <<= 1;
            if hi {
                a ^= 0x1b;
            }
            b >>= 1;
        }
        p
    }

    fn sbox_from_field(x: u8) -> u8 {
        let inv = if x == 0 {
            0
        } else {
            let mut r = 1u8;
            for _ in 0..254 {
                r = gf_mul(r, x);
            }
            r
        };
        let mut out = 0u8;
        for i in 0..8u32 {
            let bit = (inv >> i
                ^ inv >> ((i + 4) % 8)
                ^ inv >> ((i + 5) % 8)
                ^ inv >> ((i + 6) % 8)
                ^ inv >> ((i + 7) % 8)
                ^ 0x63 >> i)
                & 1;
            out |= bit << i;
        }
        out
    }

    #[test]
    fn embedded_table_matches_field_construction() {
        for x in 0..=255u8 {
            assert_eq!(AES_SBOX[x as usize], sbox_from_field(x), "x={x:#04x}");
        }
    }

    #[test]
    fn lowmc_coordinates() {
        let s = lowmc_sbox();
        assert_eq!(s.coords()[1].to_string(), "x0 + x1 + x0*x2");
        assert_eq!(s.degree(), 2);
        assert_eq!(s.evaluate(0), 0);
    }

    #[test]
    fn aes_sbox_census_and_values() {
        let f = aes_sbox().unwrap();
        let census = f.census();
        assert_eq!(census.distinct_nonlinear, 246);
        assert_eq!(census.total_terms, 1009);
        assert_eq!(census.max_coordinate_terms, 145);
        assert_eq!(census.degree, 7);
        assert_eq!(f.evaluate(0x00), 0x63);
        assert_eq!(f.evaluate(0x53), 0xED);
        // The degree-8 monomial is absent from every coordinate.
        for coord in f.coords() {
            assert!(coord.monomials().iter().all(|m| m.len() <= 7));
        }
    }

    #[test]
    fn sbox_estimates_both_variants() {
        let f = aes_sbox().unwrap();
        let td1 = function_specific_estimate(&f, ToffoliVariant::TDepth1);
        assert_eq!(td1.ancilla, 2778);
        assert_eq!(td1.t_count, 3048);
        assert_eq!(td1.t_depth, 3);
        assert_eq!(td1.cnot_depth, 186);
        assert_eq!(td1.cnot_count, 9867); // published: 9859, see module docs
        let land = function_specific_estimate(&f, ToffoliVariant::LogicalAnd);
        assert_eq!(land.ancilla, 2016);
        assert_eq!(land.t_depth, 4);
        assert_eq!(land.cnot_depth, 177);
        assert_eq!(land.cnot_count, 7581); // published: 7573
    }

    #[test]
    fn round_costs() {
        let r = aes_round_costs(ToffoliVariant::TDepth1).unwrap();
        assert_eq!(r.mixcolumns.cnot, 392);
        assert_eq!(r.mixcolumns.cnot_depth, 13);
        assert_eq!(r.addroundkey.cnot, 128);
        assert_eq!(r.shiftrows, CostRow::ZERO);
        assert_eq!(r.total.ancilla, 44448);
        assert_eq!(r.total.t, 48768);
        assert_eq!(r.total.t_depth, 3);
        assert_eq!(r.total.cnot_depth, 200);
        let la = aes_round_costs(ToffoliVariant::LogicalAnd).unwrap();
        assert_eq!(la.total.ancilla, 32256);
        assert_eq!(la.total.t_depth, 4);
        assert_eq!(la.total.cnot_depth, 191);
    }

    #[test]
    fn full_costs_linear_in_rounds() {
        for (bits, rounds) in [(128u32, 10u128), (192, 12), (256, 14)] {
            let params = AesParameters::new(bits).unwrap();
            assert_eq!(params.rounds() as u128, rounds);
            let full = aes_full_costs(params, ToffoliVariant::TDepth1).unwrap();
            assert_eq!(full.t, 48768 * rounds);
            assert_eq!(full.t_depth, 3 * rounds);
            assert_eq!(full.cnot_depth, 200 * rounds - 13);
            assert_eq!(full.ancilla, 44448 + 128 * (rounds - 1));
        }
        assert!(AesParameters::new(100).is_err());
    }

    #[test]
    fn tables_have_no_undocumented_mismatches() {
        for table in [
            sbox_table().unwrap(),
            round_table().unwrap(),
            aes_table().unwrap(),
            comparison_table().unwrap(),
        ] {
            assert_eq!(table.mismatches(), 0, "{}", table.title);
        }
    }

    #[test]
    fn comparison_flags_present_work_rows() {
        let t = comparison_table().unwrap();
        assert!(t.notes.len() == 3);
        assert!(t.rows.iter().any(|r| r[1].contains("[!]")));
        // Prior rows appear verbatim.
        assert!(t
            .rows
            .iter()
            .any(|r| r[2] == "3689" && r[3] == "132376" && r[6] == "40"));
    }
}
