//! Boolean functions in algebraic normal form.
//!
//! A function is stored as its canonical ANF: a sorted, duplicate-free set of
//! monomials plus the constant bit. Truth tables use the convention that the
//! table index encodes the input point with `x0` in the least significant
//! bit. Conversion in either direction is the binary Moebius transform,
//! which is its own inverse over GF(2).

use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Dense truth tables are capped at this many variables; ANF-only inputs may
/// exceed it since degree and synthesis never materialize the table.
pub const TABLE_ARITY_LIMIT: usize = 24;

/// Hard cap on variable indices imposed by the bitmask representation.
pub const VARIABLE_LIMIT: usize = 64;

/// A product of distinct variables, stored as a bitmask over `x0..x63`.
///
/// The empty product is not representable; the constant term lives in
/// [`BooleanFunction::a0`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub fn from_mask(mask: u64) -> Option<Self> {
        (mask != 0).then_some(Self(mask))
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in vars {
            if v >= VARIABLE_LIMIT {
                return Err(Error::VariableRange {
                    index: v,
                    n: VARIABLE_LIMIT,
                });
            }
            mask |= 1 << v;
        }
        Self::from_mask(mask).ok_or_else(|| Error::Format("empty monomial".into()))
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    /// Variable indices in increasing order.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..VARIABLE_LIMIT).filter(move |v| self.0 >> v & 1 == 1)
    }

    /// Number of variables in the product (the monomial's degree).
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, var: usize) -> bool {
        var < VARIABLE_LIMIT && self.0 >> var & 1 == 1
    }

    pub fn max_var(&self) -> usize {
        VARIABLE_LIMIT - 1 - self.0.leading_zeros() as usize
    }

    /// Evaluates the product at an input point (`x0` = bit 0 of `x`).
    pub fn evaluate(&self, x: u64) -> bool {
        x & self.0 == self.0
    }
}

/// Monomials order by degree first, then lexicographically by variable list,
/// matching the order used by the canonical text form.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vars().cmp(other.vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "x{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// In-place binary Moebius transform over GF(2).
///
/// Maps a truth table to its ANF coefficient vector (coefficient of the
/// monomial with variable mask `i` lands at index `i`) and back; the
/// transform is an involution.
pub fn moebius_transform(bits: &mut [bool]) {
    debug_assert!(bits.len().is_power_of_two());
    let mut step = 1;
    while step < bits.len() {
        for block in bits.chunks_mut(2 * step) {
            let (lo, hi) = block.split_at_mut(step);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h ^= *l;
            }
        }
        step *= 2;
    }
}

/// A single-output Boolean function over `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: usize,
    a0: bool,
    monomials: Vec<Monomial>,
    degree: usize,
}

impl BooleanFunction {
    /// Builds a function from monomials, cancelling duplicate terms in pairs.
    pub fn from_monomials<I>(n: usize, a0: bool, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        if n > VARIABLE_LIMIT {
            return Err(Error::ArityLimit {
                n,
                limit: VARIABLE_LIMIT,
            });
        }
        let mut set: BTreeSet<Monomial> = BTreeSet::new();
        for m in monomials {
            if m.max_var() >= n {
                return Err(Error::VariableRange {
                    index: m.max_var(),
                    n,
                });
            }
            // GF(2): adding a term twice removes it.
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        let monomials: Vec<_> = set.into_iter().collect();
        let degree = monomials.iter().map(|m| m.len()).max().unwrap_or(0);
        Ok(Self {
            n,
            a0,
            monomials,
            degree,
        })
    }

    /// Recovers the ANF of a truth table via the Moebius transform.
    pub fn from_truth_table(table: &[bool]) -> Result<Self> {
        if !table.len().is_power_of_two() || table.is_empty() {
            return Err(Error::Format(format!(
                "truth table length {} is not a power of two",
                table.len()
            )));
        }
        let n = table.len().trailing_zeros() as usize;
        if n > TABLE_ARITY_LIMIT {
            return Err(Error::ArityLimit {
                n,
                limit: TABLE_ARITY_LIMIT,
            });
        }
        let mut coeffs = table.to_vec();
        moebius_transform(&mut coeffs);
        let a0 = coeffs[0];
        let monomials = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| **c)
            .map(|(mask, _)| Monomial(mask as u64));
        Self::from_monomials(n.max(1), a0, monomials)
    }

    /// Materializes the truth table (only valid up to [`TABLE_ARITY_LIMIT`]).
    pub fn truth_table(&self) -> Result<Vec<bool>> {
        if self.n > TABLE_ARITY_LIMIT {
            return Err(Error::ArityLimit {
                n: self.n,
                limit: TABLE_ARITY_LIMIT,
            });
        }
        let mut coeffs = vec![false; 1 << self.n];
        coeffs[0] = self.a0;
        for m in &self.monomials {
            coeffs[m.mask() as usize] = true;
        }
        moebius_transform(&mut coeffs);
        Ok(coeffs)
    }

    pub fn evaluate(&self, x: u64) -> bool {
        let mut acc = self.a0;
        for m in &self.monomials {
            acc ^= m.evaluate(x);
        }
        acc
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a0(&self) -> bool {
        self.a0
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Maximum monomial degree; 0 for constants, 1 for affine non-constant.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonconstant term count (linear and nonlinear).
    pub fn term_count(&self) -> usize {
        self.monomials.len()
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() && !self.a0 {
            return write!(f, "0");
        }
        let mut first = true;
        for m in &self.monomials {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        if self.a0 {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// An `n`-input, `m`-output Boolean function: one coordinate per output bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiOutputFunction {
    n: usize,
    coords: Vec<BooleanFunction>,
}

/// Summary counts over all coordinate ANFs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MonomialCensus {
    /// Distinct degree >= 2 monomials across all coordinates.
    pub distinct_nonlinear: usize,
    /// Nonconstant terms summed over coordinates (with multiplicity).
    pub total_terms: usize,
    /// Largest nonconstant term count of any single coordinate.
    pub max_coordinate_terms: usize,
    /// Maximum algebraic degree.
    pub degree: usize,
}

impl MultiOutputFunction {
    pub fn new(coords: Vec<BooleanFunction>) -> Result<Self> {
        let n = match coords.first() {
            Some(c) => c.n(),
            None => return Err(Error::Format("a function needs at least one output".into())),
        };
        if coords.iter().any(|c| c.n() != n) {
            return Err(Error::Format(
                "all coordinates must share the same variable count".into(),
            ));
        }
        Ok(Self { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BooleanFunction] {
        &self.coords
    }

    /// Maximum degree over all coordinates.
    pub fn degree(&self) -> usize {
        self.coords.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    /// Coordinate-wise evaluation; output bit `j` is coordinate `j`.
    pub fn evaluate(&self, x: u64) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .fold(0, |acc, (j, c)| acc | (c.evaluate(x) as u64) << j)
    }

    pub fn census(&self) -> MonomialCensus {
        let mut distinct: BTreeSet<Monomial> = BTreeSet::new();
        let mut total = 0;
        let mut max_terms = 0;
        let mut degree = 0;
        for c in &self.coords {
            total += c.term_count();
            max_terms = max_terms.max(c.term_count());
            degree = degree.max(c.degree());
            distinct.extend(c.monomials().iter().filter(|m| m.len() >= 2));
        }
        MonomialCensus {
            distinct_nonlinear: distinct.len(),
            total_terms: total,
            max_coordinate_terms: max_terms,
            degree,
        }
    }

    /// Canonical text form; always carries the variable-count header so the
    /// round trip through [`parse_anf`] is exact even when trailing
    /// variables are unused.
    pub fn to_anf_text(&self) -> String {
        let mut out = format!("vars {}\n", self.n);
        for c in &self.coords {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parses the ANF text format.
///
/// Grammar (whitespace insignificant, `⊕` accepted for `+`):
///
/// ```text
/// file   := [header NL] line (NL line)*
/// header := "vars" INT
/// line   := term ("+" term)* | "0"
/// term   := "1" | factor ("*" factor)*
/// factor := "x" INT
/// ```
///
/// One coordinate per non-blank line. Without a header, the variable count
/// is inferred as one plus the highest index used. Duplicate terms cancel in
/// pairs.
pub fn parse_anf(text: &str) -> Result<MultiOutputFunction> {
    let mut declared_n: Option<usize> = None;
    let mut raw_coords: Vec<(bool, Vec<Monomial>, usize)> = Vec::new();
    let mut max_var: Option<usize> = None;

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        if raw_coords.is_empty() && declared_n.is_none() {
            if let Some(rest) = strip_header(line) {
                let value = rest.trim();
                let n: usize = value.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    column: line.len() - rest.len() + 1,
                    message: format!("invalid variable count {value:?}"),
                })?;
                if n == 0 || n > VARIABLE_LIMIT {
                    return Err(Error::Parse {
                        line: lineno,
                        column: 1,
                        message: format!("variable count must be in 1..={VARIABLE_LIMIT}"),
                    });
                }
                declared_n = Some(n);
                continue;
            }
        }
        let (a0, monomials, line_max) = parse_anf_line(line, lineno, declared_n)?;
        if let Some(v) = line_max {
            max_var = Some(max_var.map_or(v, |m: usize| m.max(v)));
        }
        raw_coords.push((a0, monomials, lineno));
    }

    if raw_coords.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no coordinate lines".into(),
        });
    }
    let n = declared_n.unwrap_or_else(|| max_var.map_or(1, |v| v + 1));
    let coords = raw_coords
        .into_iter()
        .map(|(a0, monomials, _)| BooleanFunction::from_monomials(n, a0, monomials))
        .collect::<Result<Vec<_>>>()?;
    MultiOutputFunction::new(coords)
}

fn strip_header(line: &str) -> Option<&str> {
    let trimmed = line.trim_start();
    let rest = trimmed.strip_prefix("vars")?;
    // "vars" must be a standalone word followed by the count.
    rest.chars().next().filter(|c| c.is_whitespace())?;
    Some(rest)
}

/// One coordinate line. Returns `(a0, monomials, highest index seen)`.
fn parse_anf_line(
    line: &str,
    lineno: usize,
    declared_n: Option<usize>,
) -> Result<(bool, Vec<Monomial>, Option<usize>)> {
    let mut a0 = false;
    let mut monomials = Vec::new();
    let mut max_var = None;
    let mut chars = line.char_indices().peekable();
    let column = |idx: usize| line[..idx].chars().count() + 1;
    let err = |idx: usize, message: String| Error::Parse {
        line: lineno,
        column: column(idx),
        message,
    };

    let mut expect_term = true;
    let mut seen_any = false;
    let mut zero_line = false;
    while let Some(&(idx, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if !expect_term {
            if ch == '+' || ch == '⊕' {
                chars.next();
                expect_term = true;
                continue;
            }
            return Err(err(idx, format!("expected '+' between terms, found {ch:?}")));
        }
        if zero_line {
            return Err(err(idx, "'0' must stand alone on its line".into()));
        }
        match ch {
            '0' => {
                chars.next();
                if seen_any {
                    return Err(err(idx, "'0' must stand alone on its line".into()));
                }
                zero_line = true;
                seen_any = true;
                expect_term = false;
            }
            '1' => {
                chars.next();
                a0 ^= true;
                seen_any = true;
                expect_term = false;
            }
            'x' => {
                let mut mask = 0u64;
                loop {
                    let (xi, xc) = *chars.peek().ok_or_else(|| {
                        err(line.len(), "expected a variable factor".into())
                    })?;
                    if xc != 'x' {
                        return Err(err(xi, format!("expected variable, found {xc:?}")));
                    }
                    chars.next();
                    let start = xi + 1;
                    let mut end = start;
                    while let Some(&(di, dc)) = chars.peek() {
                        if dc.is_ascii_digit() {
                            chars.next();
                            end = di + dc.len_utf8();
                        } else {
                            break;
                        }
                    }
                    if end == start {
                        return Err(err(xi, "variable without an index".into()));
                    }
                    let index: usize = line[start..end]
                        .parse()
                        .map_err(|_| err(start, format!("invalid index {:?}", &line[start..end])))?;
                    if let Some(n) = declared_n {
                        if index >= n {
                            return Err(err(
                                xi,
                                format!("variable x{index} exceeds declared count {n}"),
                            ));
                        }
                    }
                    if index >= VARIABLE_LIMIT {
                        return Err(err(
                            xi,
                            format!("variable index {index} exceeds the limit {VARIABLE_LIMIT}"),
                        ));
                    }
                    mask |= 1 << index;
                    max_var = Some(max_var.map_or(index, |m: usize| m.max(index)));
                    // A '*' continues the product.
                    let mut more = false;
                    while let Some(&(si, sc)) = chars.peek() {
                        if sc.is_whitespace() {
                            chars.next();
                        } else if sc == '*' {
                            chars.next();
                            more = true;
                            // Skip whitespace before the next factor.
                            while let Some(&(_, wc)) = chars.peek() {
                                if wc.is_whitespace() {
                                    chars.next();
                                } else {
                                    break;
                                }
                            }
                            if chars.peek().is_none() {
                                return Err(err(si, "product ends after '*'".into()));
                            }
                            break;
                        } else {
                            break;
                        }
                    }
                    if !more {
                        break;
                    }
                }
                monomials.push(Monomial(mask));
                seen_any = true;
                expect_term = false;
            }
            other => {
                return Err(err(idx, format!("unexpected {other:?}")));
            }
        }
    }
    if expect_term {
        return Err(Error::Parse {
            line: lineno,
            column: line.chars().count() + 1,
            message: if seen_any {
                "dangling '+' at end of line".into()
            } else {
                "empty coordinate line".into()
            },
        });
    }
    Ok((a0, monomials, max_var))
}

/// Parses the truth-table text format.
///
/// Either a `vars N outs M` header followed by `2^N` whitespace-separated
/// integers (each below `2^M`), or one line per coordinate where each line is
/// a `{0,1}` string of length `2^n` (character `i` is the value at point `i`)
/// or a hex string of length `2^n/4` (the table read as an integer, bit `i`
/// = point `i`, most significant digit first). An all-binary line of
/// power-of-two length is always read as raw bits.
pub fn parse_truth_tables(text: &str) -> Result<MultiOutputFunction> {
    let mut lines = text.lines().enumerate().peekable();
    // Skip leading blanks.
    while let Some((_, l)) = lines.peek() {
        if l.trim().is_empty() {
            lines.next();
        } else {
            break;
        }
    }
    if let Some(&(lineno, first)) = lines.peek().as_ref() {
        let fields: Vec<&str> = first.split_whitespace().collect();
        if fields.first() == Some(&"vars") {
            if fields.len() != 4 || fields[2] != "outs" {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: 1,
                    message: "expected header \"vars N outs M\"".into(),
                });
            }
            let n: usize = fields[1].parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                column: 1,
                message: format!("invalid variable count {:?}", fields[1]),
            })?;
            let m: usize = fields[3].parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                column: 1,
                message: format!("invalid output count {:?}", fields[3]),
            })?;
            lines.next();
            return parse_integer_table(lines, n, m);
        }
    }

    let mut coords = Vec::new();
    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let entry = line.trim();
        if entry.is_empty() {
            continue;
        }
        let table = parse_table_line(entry, lineno)?;
        coords.push(BooleanFunction::from_truth_table(&table)?);
    }
    if coords.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no truth-table lines".into(),
        });
    }
    MultiOutputFunction::new(coords)
}

fn parse_table_line(entry: &str, lineno: usize) -> Result<Vec<bool>> {
    let binary = entry.chars().all(|c| c == '0' || c == '1');
    if binary && entry.len().is_power_of_two() {
        return Ok(entry.chars().map(|c| c == '1').collect());
    }
    if entry.chars().all(|c| c.is_ascii_hexdigit()) && (4 * entry.len()).is_power_of_two() {
        let bits = 4 * entry.len();
        let mut table = vec![false; bits];
        for (pos, c) in entry.chars().rev().enumerate() {
            let nibble = c.to_digit(16).unwrap();
            for b in 0..4 {
                table[4 * pos + b] = nibble >> b & 1 == 1;
            }
        }
        return Ok(table);
    }
    Err(Error::Parse {
        line: lineno,
        column: 1,
        message: "expected a power-of-two-length binary or hex truth table".into(),
    })
}

fn parse_integer_table<'a, I>(lines: I, n: usize, m: usize) -> Result<MultiOutputFunction>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    if n == 0 || n > TABLE_ARITY_LIMIT {
        return Err(Error::ArityLimit {
            n,
            limit: TABLE_ARITY_LIMIT,
        });
    }
    if m == 0 || m > 64 {
        return Err(Error::Format(format!("output count {m} must be in 1..=64")));
    }
    let mut values = Vec::with_capacity(1 << n);
    for (lineno, line) in lines {
        for field in line.split_whitespace() {
            let v: u64 = field.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                column: 1,
                message: format!("invalid table entry {field:?}"),
            })?;
            if m < 64 && v >= 1 << m {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: 1,
                    message: format!("entry {v} does not fit in {m} output bits"),
                });
            }
            values.push(v);
        }
    }
    if values.len() != 1 << n {
        return Err(Error::Format(format!(
            "expected {} table entries, got {}",
            1usize << n,
            values.len()
        )));
    }
    let coords = (0..m)
        .map(|j| {
            let table: Vec<bool> = values.iter().map(|v| v >> j & 1 == 1).collect();
            BooleanFunction::from_truth_table(&table)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiOutputFunction::new(coords)
}
