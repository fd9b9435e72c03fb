use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, AlgebraSpec};
use crate::exactla::{format_rational, parse_rational};

/// On-disk JSON shape of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub even: Vec<String>,
    pub odd: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub out: BTreeMap<String, String>,
}

fn build(doc: &AlgebraDocument) -> Result<AlgebraSpec, AlgebraError> {
    let parse_err = |e: AlgebraError| AlgebraError::Parse(e.to_string());
    let mut spec = AlgebraSpec::empty(doc.even.clone(), doc.odd.clone()).map_err(parse_err)?;
    for entry in &doc.brackets {
        let k = spec.index_of(&entry.left).map_err(parse_err)?;
        let l = spec.index_of(&entry.right).map_err(parse_err)?;
        let mut out = Vec::with_capacity(entry.out.len());
        for (name, text) in &entry.out {
            let i = spec.index_of(name).map_err(parse_err)?;
            let c = parse_rational(text)
                .ok_or_else(|| AlgebraError::Parse(format!("bad coefficient {text:?} for {name}")))?;
            out.push((i, c));
        }
        out.sort_by_key(|(i, _)| *i);
        spec.insert_bracket(k, l, out).map_err(parse_err)?;
    }
    Ok(spec)
}

/// Parses a JSON algebra document without checking the axioms.
pub fn parse_algebra(text: &str) -> Result<AlgebraSpec, AlgebraError> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    build(&doc)
}

/// Parses and validates a JSON algebra document.
pub fn load_algebra(text: &str) -> Result<AlgebraSpec, AlgebraError> {
    let spec = parse_algebra(text)?;
    let report = spec.validate();
    if report.is_valid() {
        Ok(spec)
    } else {
        Err(AlgebraError::Validation(report))
    }
}

/// Canonical document: brackets ordered by basis index pair.
pub fn to_document(spec: &AlgebraSpec) -> AlgebraDocument {
    let brackets = spec
        .stored_brackets()
        .map(|(&(k, l), out)| BracketEntry {
            left: spec.name(k).to_string(),
            right: spec.name(l).to_string(),
            out: out
                .iter()
                .map(|(i, c)| (spec.name(*i).to_string(), format_rational(c)))
                .collect(),
        })
        .collect();
    AlgebraDocument {
        even: spec.even_names().to_vec(),
        odd: spec.odd_names().to_vec(),
        brackets,
    }
}

impl AlgebraSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&to_document(self)).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, catalog_names, model_filiform};
    use num_rational::BigRational;

    const L12: &str = r#"{"even":["X0","X1"],"odd":["Y1","Y2"],"brackets":[{"left":"X0","right":"Y1","out":{"Y2":"1"}}]}"#;

    #[test]
    fn loads_model() {
        assert_eq!(load_algebra(L12).unwrap(), model_filiform(1, 2).unwrap());
    }

    #[test]
    fn half_coefficient() {
        let text = serde_json::to_string(&to_document(&catalog("F22_2").unwrap())).unwrap();
        assert!(text.contains(r#""X2":"1/2""#));
        let spec = load_algebra(&text).unwrap();
        assert_eq!(
            spec.structure_constant(spec.index_of("Y1").unwrap(), spec.index_of("Y2").unwrap(), spec.index_of("X2").unwrap()),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn round_trip_is_identity() {
        for name in catalog_names() {
            let spec = catalog(name).unwrap();
            let doc = to_document(&spec);
            let text = serde_json::to_string(&doc).unwrap();
            let back = load_algebra(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(to_document(&back), doc);
        }
    }

    #[test]
    fn parity_violation_is_validation_error() {
        let text = r#"{"even":["X0","X1"],"odd":["Y1"],"brackets":[{"left":"X0","right":"X1","out":{"Y1":"1"}}]}"#;
        assert!(matches!(load_algebra(text), Err(AlgebraError::Validation(_))));
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        let cases = [
            "not json",
            r#"{"even":["X0","X0"],"odd":[]}"#,
            r#"{"even":["X0","X1"],"odd":[],"brackets":[{"left":"X1","right":"X0","out":{}}]}"#,
            r#"{"even":["X0","X1"],"odd":[],"brackets":[{"left":"X0","right":"X1","out":{"X1":"1/0"}}]}"#,
            r#"{"even":["X0","X1"],"odd":[],"brackets":[{"left":"X0","right":"Z","out":{}}]}"#,
        ];
        for text in cases {
            assert!(matches!(load_algebra(text), Err(AlgebraError::Parse(_))), "{text}");
        }
    }
}
