//! Serializable report for algebra files.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::format::AlgebraFile;
use crate::noise::{check_algebra_projection_products, closure_in_lattice, completion, validate_noise_type, Axiom};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub space: Vec<String>,
    pub elements: Vec<String>,
    /// First failed axiom; absent when the algebra is noise-type.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<Axiom>,
    /// Elements witnessing the failure.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub complements: BTreeMap<String, String>,
    /// `Q_x Q_y = Q_{x∧y}` over all ordered pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection_products: Option<bool>,
    /// The closure added nothing, so the completion can only be the algebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_collapsed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion_equals_algebra: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Validation, the projection-product identity and the completion.
pub fn validate_algebra_file(file: &AlgebraFile) -> ValidationReport {
    let mut report = ValidationReport {
        valid: false,
        space: file.space.weights().iter().map(rational::format).collect(),
        elements: file.members.clone(),
        axiom: None,
        witness: Vec::new(),
        complements: BTreeMap::new(),
        projection_products: None,
        closure_collapsed: None,
        completion_equals_algebra: None,
        error: None,
    };
    let b = match validate_noise_type(&file.space, file.elements()) {
        Ok(b) => b,
        Err(v) => {
            report.axiom = Some(v.axiom);
            report.witness = v.witness.iter().map(|w| file.name_of(w)).collect();
            return report;
        }
    };
    report.complements = b.complement_pairs().map(|(x, xc)| (file.name_of(x), file.name_of(xc))).collect();
    let products = check_algebra_projection_products(&b);
    report.projection_products = Some(products.holds);
    if let Some(w) = products.witness {
        report.witness = w.iter().map(|x| file.name_of(x)).collect();
    }
    let cl = closure_in_lattice(&b);
    report.closure_collapsed = Some(cl.is_collapsed());
    match completion(&cl) {
        Ok(c) => report.completion_equals_algebra = Some(c.same_elements(&b)),
        Err(e) => report.error = Some(e.to_string()),
    }
    report.valid = products.holds && report.completion_equals_algebra == Some(true);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_algebra;

    #[test]
    fn two_coin_report() {
        let f = parse_algebra(
            "space = [1/4, 1/4, 1/4, 1/4]\nfield F1 = [a b | c d]\nfield F2 = [a c | b d]\nalgebra = {0, F1, F2, 1}\n",
        )
        .unwrap();
        let r = validate_algebra_file(&f);
        assert!(r.valid);
        assert_eq!(r.complements["F1"], "F2");
        assert_eq!(r.complements["0"], "1");
        assert_eq!(r.projection_products, Some(true));
    }

    #[test]
    fn pentagon_report_names_the_triple() {
        let f = parse_algebra(
            "space = [1/4, 1/4, 1/4, 1/4]\nfield u = [a | c | b d]\nfield v = [a b | c d]\nfield w = [a c | b d]\nalgebra = {0, u, v, w, 1}\n",
        )
        .unwrap();
        let r = validate_algebra_file(&f);
        assert!(!r.valid);
        assert_eq!(r.axiom, Some(Axiom::Distributive));
        assert_eq!(r.witness.len(), 3);
        assert!(r.witness.iter().all(|w| ["0", "1", "u", "v", "w"].contains(&w.as_str())));
    }
}
