//! Report assembly and rendering as canonical JSON or aligned text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgebraSpec, NilindexReport, Violation};
use crate::ce::ce_complex;
use crate::complex::{Complex, ComplexError};
use crate::dp::{dp_complex, Truncation};
use crate::exactla::{Field, Scalar};
use crate::oracle::{self, DecompositionReport, KernelCounts, OracleError, SemidirectReport};
use crate::reference;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// Text form used by [`render`].
pub trait TableView {
    fn table(&self) -> String;
}

/// Deterministic rendering: JSON objects have sorted keys.
pub fn render<R: Serialize + TableView>(report: &R, format: Format) -> String {
    match format {
        Format::Json => {
            let value = serde_json::to_value(report).expect("reports serialize");
            let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Table => report.table(),
    }
}

fn scalar_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(q) => Value::String(crate::exactla::format_rational(q)),
        Scalar::ModP { value, .. } => Value::from(*value),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub algebra: String,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub valid: bool,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilindex: Option<NilindexReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilindex_error: Option<String>,
}

pub fn validate_report(id: &str, spec: &AlgebraSpec) -> ValidateReport {
    let validation = spec.validate();
    let valid = validation.is_valid();
    let (nilindex, nilindex_error) = if valid {
        match spec.nilindex() {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    ValidateReport {
        algebra: id.to_string(),
        even: spec.even_names().to_vec(),
        odd: spec.odd_names().to_vec(),
        valid,
        violations: validation.violations,
        nilindex,
        nilindex_error,
    }
}

impl TableView for ValidateReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra     {}", self.algebra);
        let _ = writeln!(s, "even        {}", self.even.join(" "));
        let _ = writeln!(s, "odd         {}", self.odd.join(" "));
        let _ = writeln!(s, "valid       {}", self.valid);
        for v in &self.violations {
            let _ = writeln!(s, "violation   {v}");
        }
        if let Some(r) = &self.nilindex {
            let _ = writeln!(s, "nilindex    ({}, {})", r.even_index, r.odd_index);
            let _ = writeln!(s, "filiform    {}", r.is_filiform);
        }
        if let Some(e) = &self.nilindex_error {
            let _ = writeln!(s, "nilindex    {e}");
        }
        s
    }
}

/// Per-degree dimensions with optional cross-checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub algebra: String,
    /// `0` for the rationals, otherwise the prime.
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Vec<u32>>,
    pub kmax: usize,
    pub dims: Vec<usize>,
    pub total: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_dims: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_total: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_total_agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl BettiReport {
    /// False when any attached comparison disagrees.
    pub fn agrees(&self) -> bool {
        [self.oracle_agrees, self.reference_agrees, self.reference_total_agrees]
            .iter()
            .all(|f| f.unwrap_or(true))
    }
}

pub const NO_REFERENCE: &str = "no published reference";

fn is_catalog_name(id: &str) -> bool {
    crate::algebra::catalog_names().any(|n| n == id)
}

/// Characteristic-zero Betti numbers up to `kmax`; `model` attaches the
/// lattice-point formula for `L_{n,m}`.
pub fn betti_report(id: &str, spec: &AlgebraSpec, kmax: usize, model: Option<(usize, usize)>) -> Result<BettiReport, ComplexError> {
    let complex = ce_complex(spec);
    let dims = complex.betti_numbers(kmax)?;
    let oracle_dims = model.map(|(n, m)| (0..=kmax).map(|k| oracle::betti_formula(n, m, k)).collect::<Vec<_>>());
    let oracle_agrees = oracle_dims
        .as_ref()
        .map(|o| o.iter().zip(&dims).all(|(a, b)| *a == *b as u64));
    let reference_dims = reference::betti_sequence(id).map(|s| s.prefix(kmax));
    let reference_agrees = reference_dims.as_ref().map(|r| *r == dims);
    let reference_note = (is_catalog_name(id) && reference_dims.is_none()).then(|| NO_REFERENCE.to_string());
    Ok(BettiReport {
        algebra: id.to_string(),
        characteristic: 0,
        truncation: None,
        kmax,
        total: dims.iter().sum(),
        dims,
        oracle_dims,
        oracle_agrees,
        reference_dims,
        reference_agrees,
        reference_total: None,
        reference_total_agrees: None,
        reference_note,
        timing_ms: None,
    })
}

/// Divided-power cohomology over the whole finite complex.
pub fn dph_report(id: &str, spec: &AlgebraSpec, trunc: &Truncation) -> Result<BettiReport, ComplexError> {
    let complex = dp_complex(spec, trunc)?;
    let summary = complex.dph()?;
    let reference_total = reference::dph_total(id, trunc.p(), trunc.heights()).map(|v| v as i64);
    let reference_total_agrees = reference_total.map(|r| r == summary.total as i64);
    let reference_note = (is_catalog_name(id) && reference_total.is_none()).then(|| NO_REFERENCE.to_string());
    Ok(BettiReport {
        algebra: id.to_string(),
        characteristic: trunc.p(),
        truncation: Some(trunc.heights().to_vec()),
        kmax: summary.dims.len() - 1,
        total: summary.total,
        dims: summary.dims,
        oracle_dims: None,
        oracle_agrees: None,
        reference_dims: None,
        reference_agrees: None,
        reference_total,
        reference_total_agrees,
        reference_note,
        timing_ms: None,
    })
}

impl TableView for BettiReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra    {}", self.algebra);
        match self.characteristic {
            0 => {
                let _ = writeln!(s, "field      Q");
            }
            p => {
                let _ = writeln!(s, "field      F_{p}");
            }
        }
        if let Some(t) = &self.truncation {
            let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "truncation {}", t.join(","));
        }
        let _ = writeln!(s, "{:>4} {:>8} {:>8} {:>10}", "k", "dim", "oracle", "reference");
        for (k, d) in self.dims.iter().enumerate() {
            let o = self.oracle_dims.as_ref().map_or("-".to_string(), |v| v[k].to_string());
            let r = self.reference_dims.as_ref().map_or("-".to_string(), |v| v[k].to_string());
            let _ = writeln!(s, "{k:>4} {d:>8} {o:>8} {r:>10}");
        }
        let _ = write!(s, "total      {}", self.total);
        if let Some(r) = self.reference_total {
            let _ = write!(s, " (reference {r})");
        }
        s.push('\n');
        if let Some(note) = &self.reference_note {
            let _ = writeln!(s, "reference  {note}");
        }
        let _ = writeln!(s, "agrees     {}", self.agrees());
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time_ms    {ms}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub degree: usize,
    pub index: usize,
    pub parity: u8,
    pub representative: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductRow {
    pub left: [usize; 2],
    pub right: [usize; 2],
    /// `(class index, coefficient)` pairs in degree `left + right`.
    pub result: Vec<(usize, Value)>,
}

/// Multiplication table of basis classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductReport {
    pub algebra: String,
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Vec<u32>>,
    pub kmax: usize,
    pub dims: Vec<usize>,
    pub classes: Vec<ClassRow>,
    pub products: Vec<ProductRow>,
    pub supercommutative: bool,
    pub associative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn product_report<F: Field>(id: &str, complex: &Complex<F>, kmax: usize) -> Result<ProductReport, ComplexError> {
    let kmax = complex.top_degree().map_or(kmax, |top| kmax.min(top));
    let table = complex.product_table(kmax)?;
    let f = complex.field();
    let mut classes = Vec::new();
    for k in 0..=kmax {
        let h = complex.cohomology(k)?;
        for (index, r) in h.representatives.iter().enumerate() {
            classes.push(ClassRow {
                degree: k,
                index,
                parity: h.parities()[index],
                representative: complex.render(&complex.cochain_from_vector(k, r)),
            });
        }
    }
    let products = table
        .entries
        .iter()
        .map(|e| ProductRow {
            left: [e.left.degree, e.left.index],
            right: [e.right.degree, e.right.index],
            result: e.result.iter().map(|(i, c)| (*i, scalar_value(&f.to_scalar(c)))).collect(),
        })
        .collect();
    let characteristic = f.kind().characteristic();
    let truncation = match complex.rule() {
        crate::complex::PowerRule::Divided { bounds } => Some(
            bounds
                .iter()
                .map(|&b| {
                    let mut t = 0;
                    let mut x = b as u64;
                    while x > 1 {
                        x /= characteristic;
                        t += 1;
                    }
                    t
                })
                .collect(),
        ),
        crate::complex::PowerRule::Plain => None,
    };
    Ok(ProductReport {
        algebra: id.to_string(),
        characteristic,
        modulus: (characteristic != 0).then_some(characteristic),
        truncation,
        kmax,
        dims: table.dims.clone(),
        classes,
        products,
        supercommutative: complex.supercommutativity_failures(&table).is_empty(),
        associative: complex.associativity_failures(&table).is_empty(),
        timing_ms: None,
    })
}

impl ProductReport {
    pub fn class(&self, degree: usize, index: usize) -> Option<&ClassRow> {
        self.classes.iter().find(|c| c.degree == degree && c.index == index)
    }
}

impl TableView for ProductReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra    {}", self.algebra);
        match self.modulus {
            None => {
                let _ = writeln!(s, "field      Q");
            }
            Some(p) => {
                let _ = writeln!(s, "field      F_{p}");
            }
        }
        let _ = writeln!(s, "kmax       {}", self.kmax);
        let _ = writeln!(s, "classes");
        for c in &self.classes {
            let _ = writeln!(s, "  [{}.{}] parity {}  {}", c.degree, c.index, c.parity, c.representative);
        }
        let _ = writeln!(s, "products");
        for p in &self.products {
            let deg = p.left[0] + p.right[0];
            let rhs = if p.result.is_empty() {
                "0".to_string()
            } else {
                p.result
                    .iter()
                    .map(|(i, c)| {
                        let c = scalar_text(c);
                        if c == "1" {
                            format!("[{deg}.{i}]")
                        } else {
                            format!("{c}*[{deg}.{i}]")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let _ = writeln!(s, "  [{}.{}]*[{}.{}] = {rhs}", p.left[0], p.left[1], p.right[0], p.right[1]);
        }
        let _ = writeln!(s, "supercommutative {}", self.supercommutative);
        let _ = writeln!(s, "associative      {}", self.associative);
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time_ms    {ms}");
        }
        s
    }
}

/// Aggregated oracle checks for a model algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub algebra: String,
    pub n: usize,
    pub m: usize,
    pub kmax: usize,
    pub betti_direct: Vec<usize>,
    pub betti_formula: Vec<u64>,
    pub formula_agrees: bool,
    pub kernel_counts: Vec<KernelCounts>,
    pub decomposition: Vec<DecompositionReport>,
    pub semidirect: SemidirectReport,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn oracle_report(n: usize, m: usize, kmax: usize) -> Result<OracleReport, OracleError> {
    let spec = crate::algebra::model_filiform(n, m).map_err(|_| OracleError::InvalidDimension)?;
    let betti_direct = ce_complex(&spec).betti_numbers(kmax)?;
    let betti_formula: Vec<u64> = (0..=kmax).map(|k| oracle::betti_formula(n, m, k)).collect();
    let formula_agrees = betti_formula.iter().zip(&betti_direct).all(|(a, b)| *a == *b as u64);
    let kernel_counts = (0..=kmax).map(|k| oracle::kernel_counts(n, m, k)).collect::<Result<Vec<_>, _>>()?;
    let decomposition = (0..=kmax)
        .map(|k| oracle::hs_decomposition_check(n, m, k))
        .collect::<Result<Vec<_>, _>>()?;
    let semidirect = oracle::semidirect_check(n, m, kmax)?;
    let passed = formula_agrees
        && kernel_counts.iter().all(|c| c.agree())
        && decomposition.iter().all(|d| d.holds)
        && semidirect.passed();
    Ok(OracleReport {
        algebra: format!("L{n},{m}"),
        n,
        m,
        kmax,
        betti_direct,
        betti_formula,
        formula_agrees,
        kernel_counts,
        decomposition,
        semidirect,
        passed,
        timing_ms: None,
    })
}

impl TableView for OracleReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra    {}", self.algebra);
        let _ = writeln!(
            s,
            "{:>4} {:>7} {:>8} {:>9} {:>9} {:>9} {:>7}",
            "k", "betti", "formula", "ker(rank)", "ker(wts)", "ker(lat)", "split"
        );
        for k in 0..=self.kmax {
            let c = &self.kernel_counts[k];
            let _ = writeln!(
                s,
                "{k:>4} {:>7} {:>8} {:>9} {:>9} {:>9} {:>7}",
                self.betti_direct[k],
                self.betti_formula[k],
                c.by_rank,
                c.by_weights,
                c.by_formula,
                self.decomposition[k].holds
            );
        }
        let sd = &self.semidirect;
        let _ = writeln!(s, "direct sum          {}", sd.direct_sum);
        let _ = writeln!(s, "kernel part closed  {}", sd.kernel_part_closed);
        let _ = writeln!(s, "ideal square zero   {}", sd.ideal_square_zero);
        let _ = writeln!(s, "ideal stable        {}", sd.ideal_stable);
        for v in &sd.violations {
            let _ = writeln!(s, "violation  {v}");
        }
        let _ = writeln!(s, "passed     {}", self.passed);
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time_ms    {ms}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, model_filiform};

    #[test]
    fn model_report_json() {
        let r = betti_report("L1,2", &model_filiform(1, 2).unwrap(), 4, Some((1, 2))).unwrap();
        assert_eq!(r.dims, vec![1, 3, 4, 4, 4]);
        assert_eq!(r.oracle_agrees, Some(true));
        let text = render(&r, Format::Json);
        assert_eq!(text, render(&r, Format::Json));
        let back: BettiReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let value: Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(!text.contains("timing"));
    }

    #[test]
    fn table_rows() {
        let r = betti_report("F22_4", &catalog("F22_4").unwrap(), 4, None).unwrap();
        let table = render(&r, Format::Table);
        let row = table.lines().find(|l| l.trim_start().starts_with("2 ")).unwrap();
        assert_eq!(row.split_whitespace().nth(1), Some("6"));
        assert_eq!(r.reference_agrees, Some(true));
    }

    #[test]
    fn degree_zero_report() {
        let r = betti_report("F12_1", &catalog("F12_1").unwrap(), 0, None).unwrap();
        assert_eq!(r.dims, vec![1]);
    }

    #[test]
    fn missing_reference_is_marked() {
        let t = Truncation::ones(5, 2).unwrap();
        let r = dph_report("F22_2", &catalog("F22_2").unwrap(), &t).unwrap();
        assert_eq!(r.reference_total, None);
        assert_eq!(r.reference_note.as_deref(), Some(NO_REFERENCE));
        assert!(r.agrees());
    }

    #[test]
    fn product_report_round_trip() {
        let t = Truncation::ones(5, 2).unwrap();
        let c = dp_complex(&catalog("F12_3").unwrap(), &t).unwrap();
        let r = product_report("F12_3", &c, 5).unwrap();
        assert_eq!(r.modulus, Some(5));
        assert_eq!(r.truncation, Some(vec![1, 1]));
        let text = render(&r, Format::Json);
        let back: ProductReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let q = product_report("F22_3", &ce_complex(&catalog("F22_3").unwrap()), 3).unwrap();
        assert!(render(&q, Format::Json).contains("\"2\""));
    }
}
