//! File formats: matrix files, factor files, and the JSON result document.
//!
//! Matrix file: a header line with the dimension `n`, then `n` lines of `n`
//! whitespace-separated rationals (`p/q` or plain integers). Parsing and
//! serialization round-trip bit exactly.
//!
//! Factor file: one factor per line, `multiplicity : c0 c1 ... cd` with
//! coefficients lowest degree first.
//!
//! All numbers in JSON documents are exact decimal strings, never floats.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use eigenpoly::solver::{FactorOutcome, SeedOrigin, SolveReport};
use eigenpoly::unipoly::FactoredCharPoly;
use eigenpoly::{QMatrix, QVector, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_rational(token: &str, line: usize) -> Result<Rational, ParseError> {
    Rational::from_str(token).map_err(|e| err(line, format!("bad rational '{token}': {e}")))
}

/// Parses a matrix file. Errors carry 1-based line numbers.
pub fn parse_matrix(text: &str) -> Result<QMatrix, ParseError> {
    let mut lines = text.lines().enumerate();
    let (line_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| err(1, "empty matrix file"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| err(line_no + 1, format!("bad dimension '{}'", header.trim())))?;
    if n == 0 {
        return Err(err(line_no + 1, "dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for (idx, raw) in lines {
        if raw.trim().is_empty() {
            continue;
        }
        let entries: Vec<Rational> = raw
            .split_whitespace()
            .map(|tok| parse_rational(tok, idx + 1))
            .collect::<Result<_, _>>()?;
        if entries.len() != n {
            return Err(err(
                idx + 1,
                format!("expected {n} entries, found {}", entries.len()),
            ));
        }
        rows.push(entries);
        if rows.len() == n {
            break;
        }
    }
    if rows.len() != n {
        return Err(err(
            text.lines().count(),
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    QMatrix::from_rows(rows).map_err(|e| err(1, e.to_string()))
}

/// Serializes a matrix in the matrix-file format.
pub fn write_matrix(a: &QMatrix) -> String {
    let n = a.dim();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| a.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a factor file: `multiplicity : c0 c1 ... cd` per line.
pub fn parse_factor_file(text: &str) -> Result<FactoredCharPoly, ParseError> {
    let mut parts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (mult_str, coeff_str) = line
            .split_once(':')
            .ok_or_else(|| err(idx + 1, "expected 'multiplicity : coefficients'"))?;
        let multiplicity: usize = mult_str
            .trim()
            .parse()
            .map_err(|_| err(idx + 1, format!("bad multiplicity '{}'", mult_str.trim())))?;
        if multiplicity == 0 {
            return Err(err(idx + 1, "multiplicity must be positive"));
        }
        let coeffs: Vec<Rational> = coeff_str
            .split_whitespace()
            .map(|tok| parse_rational(tok, idx + 1))
            .collect::<Result<_, _>>()?;
        if coeffs.len() < 2 {
            return Err(err(idx + 1, "factor needs degree at least one"));
        }
        parts.push((UniPoly::from_coeffs(coeffs), multiplicity));
    }
    if parts.is_empty() {
        return Err(err(1, "no factors found"));
    }
    Ok(FactoredCharPoly::from_parts(parts))
}

/// Serializes a factorization in the factor-file format.
pub fn write_factor_file(fac: &FactoredCharPoly) -> String {
    let mut out = String::new();
    for (f, m) in fac.factors() {
        let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{m} : {}\n", coeffs.join(" ")));
    }
    out
}

fn rational_strings(v: &QVector) -> Vec<String> {
    v.entries().iter().map(|x| x.to_string()).collect()
}

fn poly_strings(f: &UniPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

// --- JSON result document -----------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FactorEntry {
    /// Coefficients lowest degree first, exact strings.
    pub coefficients: Vec<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EigenvectorEntry {
    /// The seed vector the polynomial vector was built from.
    pub seed: Vec<String>,
    /// `column:<j>` for a cofactor image, `basis:<i>` for a reduced-basis
    /// vector (0-based indices).
    pub origin: String,
    /// Coefficient vectors, lowest-degree coefficient first.
    pub coefficients: Vec<Vec<String>>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FactorResultEntry {
    pub factor_index: usize,
    /// `solved` or `unsupported-generalized`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_exponent: Option<usize>,
    pub probe_seed: u64,
    pub probe_attempts: usize,
    #[serde(default)]
    pub eigenvectors: Vec<EigenvectorEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Timing {
    /// Wall-clock seconds as a decimal string.
    pub wall_time_s: String,
    pub matvec_count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultDocument {
    pub dimension: usize,
    /// Characteristic polynomial coefficients, lowest degree first.
    pub char_poly: Vec<String>,
    pub factors: Vec<FactorEntry>,
    pub base_seed: u64,
    pub strategy: String,
    pub results: Vec<FactorResultEntry>,
    pub timing: Timing,
}

/// Builds the result document from a solve report, re-verifying every
/// eigenvector independently; `verified` flags reflect that recomputation,
/// not the solver's claim.
pub fn result_document(
    a: &QMatrix,
    report: &SolveReport,
    strategy: &str,
    wall_time_s: f64,
    matvec_count: u64,
) -> Result<ResultDocument, eigenpoly::solver::SolveError> {
    let mut results = Vec::with_capacity(report.factors.len());
    for fr in &report.factors {
        match &fr.outcome {
            FactorOutcome::Solved(set) => {
                let set_ok = eigenpoly::solver::verify_eigenvector_set(a, set)?;
                let eigenvectors = set
                    .vectors
                    .iter()
                    .zip(&set.seeds)
                    .zip(&set.seed_origins)
                    .map(|((phi, seed), origin)| EigenvectorEntry {
                        seed: rational_strings(seed),
                        origin: match origin {
                            SeedOrigin::Column(j) => format!("column:{j}"),
                            SeedOrigin::BasisVector(i) => format!("basis:{i}"),
                        },
                        coefficients: phi
                            .iter_lowest_first()
                            .map(rational_strings)
                            .collect(),
                        verified: set_ok,
                    })
                    .collect();
                results.push(FactorResultEntry {
                    factor_index: set.factor_index,
                    status: "solved".into(),
                    strategy: Some(set.strategy.name().into()),
                    observed_exponent: None,
                    probe_seed: fr.probe_seed,
                    probe_attempts: fr.probe_attempts,
                    eigenvectors,
                });
            }
            FactorOutcome::UnsupportedGeneralized {
                factor_index,
                observed_exponent,
                ..
            } => {
                results.push(FactorResultEntry {
                    factor_index: *factor_index,
                    status: "unsupported-generalized".into(),
                    strategy: None,
                    observed_exponent: Some(*observed_exponent),
                    probe_seed: fr.probe_seed,
                    probe_attempts: fr.probe_attempts,
                    eigenvectors: Vec::new(),
                });
            }
        }
    }
    Ok(ResultDocument {
        dimension: a.dim(),
        char_poly: poly_strings(&report.char_poly),
        factors: report
            .factorization
            .factors()
            .iter()
            .map(|(f, m)| FactorEntry {
                coefficients: poly_strings(f),
                multiplicity: *m,
            })
            .collect(),
        base_seed: report.base_seed,
        strategy: strategy.into(),
        results,
        timing: Timing {
            wall_time_s: format!("{wall_time_s:.6}"),
            matvec_count,
        },
    })
}

// --- generator ground-truth sidecar --------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupEntry {
    pub column_start: usize,
    pub column_len: usize,
    pub factor_indices: Vec<usize>,
    /// Degree of the unit annihilating polynomials under generic mixing.
    pub generic_unit_annihilator_degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TruthDocument {
    pub seed: u64,
    pub transform_rounds: usize,
    pub entry_bound: i64,
    /// Block polynomials in layout order, coefficients lowest first.
    pub blocks: Vec<Vec<String>>,
    pub factors: Vec<FactorEntry>,
    pub char_poly: Vec<String>,
    pub groups: Vec<GroupEntry>,
}

pub fn truth_document(truth: &eigenpoly::matrixgen::GroundTruth) -> TruthDocument {
    TruthDocument {
        seed: truth.seed,
        transform_rounds: truth.transform_rounds,
        entry_bound: truth.entry_bound,
        blocks: truth.blocks.iter().map(poly_strings).collect(),
        factors: truth
            .factorization
            .factors()
            .iter()
            .map(|(f, m)| FactorEntry {
                coefficients: poly_strings(f),
                multiplicity: *m,
            })
            .collect(),
        char_poly: poly_strings(&truth.char_poly),
        groups: truth
            .group_column_ranges
            .iter()
            .zip(&truth.group_factor_indices)
            .map(|(&(column_start, column_len), factor_indices)| GroupEntry {
                column_start,
                column_len,
                factor_indices: factor_indices.clone(),
                generic_unit_annihilator_degree: truth
                    .expected_unit_annihilator_degree(column_start),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eigenpoly::rat;

    #[test]
    fn matrix_roundtrip_is_bit_exact() {
        let mut a = QMatrix::zeros(2);
        a.set(0, 0, rat(1) / rat(3));
        a.set(0, 1, rat(-7));
        a.set(1, 0, rat(22) / rat(7));
        a.set(1, 1, rat(0));
        let text = write_matrix(&a);
        assert_eq!(parse_matrix(&text).unwrap(), a);
        assert_eq!(text, "2\n1/3 -7\n22/7 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_matrix("2\n1 2\n3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_matrix("2\n1 x\n3 4\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_matrix("").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn factor_file_roundtrip() {
        let fac = FactoredCharPoly::from_parts(vec![
            (UniPoly::from_i64(&[12, 1, 1]), 1),
            (UniPoly::from_i64(&[-41, -60, -5, 1]), 2),
        ]);
        let text = write_factor_file(&fac);
        assert_eq!(parse_factor_file(&text).unwrap(), fac);
        assert!(parse_factor_file("1 : 5\n").is_err()); // constant factor
        assert_eq!(parse_factor_file("0 : 1 2\n").unwrap_err().line, 1);
    }

    #[test]
    fn result_document_roundtrips_through_json() {
        let a = QMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]);
        let report =
            eigenpoly::solver::solve_all(&a, &eigenpoly::solver::SolveOptions::default())
                .unwrap();
        let doc = result_document(&a, &report, "auto", 0.001, 42).unwrap();
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: ResultDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert!(doc.results.iter().all(|r| r
            .eigenvectors
            .iter()
            .all(|e| e.verified)));
        // Exact strings, never floats: the wall time is a string field.
        assert!(json.contains("\"wall_time_s\": \"0.001000\""));
    }
}
