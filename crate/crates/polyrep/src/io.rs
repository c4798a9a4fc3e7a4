//! JSON documents exchanged by the command-line front end: parameter,
//! polynomial, polytope, and verification-report documents.

use serde_json::{json, Value};

use crate::interpolant::{EpsilonParams, InterpolantParams};
use crate::polytope::{MetricParams, Polytope};
use crate::representation::{ExpandedPolys, PolyRepresentation, VerificationReport};

/// Parameter document: exponent, weights keyed by vertex index, matrix
/// deviation, form scales, and the metric/epsilon table.
pub fn params_document(
    params: &InterpolantParams,
    mp: &MetricParams,
    eps: &EpsilonParams,
) -> Value {
    let y: serde_json::Map<String, Value> = params
        .y
        .iter()
        .enumerate()
        .map(|(i, &v)| (i.to_string(), json!(v)))
        .collect();
    json!({
        "k": params.k,
        "y": y,
        "aDeviation": params.a_deviation,
        "lambdas": params.lambdas,
        "gamma": mp.gamma,
        "alpha": mp.alpha,
        "phi": mp.phi,
        "degP": mp.deg_p,
        "eps1": eps.eps1,
        "eps2": eps.eps2,
        "eps3": eps.eps3,
        "delta": eps.delta,
    })
}

/// Polynomial list document for p_1 ... p_{d-1}; reports when the
/// expansion was skipped for size.
pub fn polynomials_document(rep: &PolyRepresentation) -> Value {
    match &rep.expanded {
        ExpandedPolys::Exact(polys) => json!({
            "coefficients": "exact",
            "polynomials": polys.iter().map(|p| p.to_document()).collect::<Vec<_>>(),
        }),
        ExpandedPolys::Float(polys) => json!({
            "coefficients": "float",
            "polynomials": polys.iter().map(|p| p.to_document()).collect::<Vec<_>>(),
        }),
        ExpandedPolys::TooLarge => json!({
            "coefficients": "skipped",
            "polynomials": Value::Null,
        }),
    }
}

/// Polytope document: vertices, facet incidence per vertex, diameter.
pub fn polytope_document(p: &Polytope) -> Value {
    json!({
        "vertices": p.vertices,
        "incidence": p.incidence,
        "diameter": p.diameter,
    })
}

/// Report document: the serialized verification report.
pub fn report_document(report: &VerificationReport) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolant::{build_params, epsilon_params};
    use crate::polytope::{
        facet_forms, form_scales, metric_params, polytope_from_text, FormMode,
    };
    use crate::representation::build_representation;
    use crate::shapes;

    #[test]
    fn documents_round_trip() {
        let p = polytope_from_text(&shapes::tetrahedron_json()).unwrap();
        let forms = facet_forms(&p, FormMode::Normalized);
        let mp = metric_params(&p, &forms).unwrap();
        let eps = epsilon_params(&mp, p.facets.len(), p.dim).unwrap();
        let params = build_params(&p, &forms, 27, form_scales(&p)).unwrap();
        let doc = params_document(&params, &mp, &eps);
        assert_eq!(doc["k"], 27);
        assert_eq!(doc["y"].as_object().unwrap().len(), 4);
        assert!(doc["aDeviation"].as_f64().unwrap() < 0.25);

        let rep = build_representation(&p, FormMode::Raw, params);
        let pd = polynomials_document(&rep);
        assert_eq!(pd["coefficients"], "exact");
        assert_eq!(pd["polynomials"].as_array().unwrap().len(), 2);
        // constant term of the cubic is 4
        let terms = pd["polynomials"][0]["terms"].as_array().unwrap();
        assert_eq!(terms[0]["coef"], "4");

        let vd = polytope_document(&p);
        assert_eq!(vd["vertices"].as_array().unwrap().len(), 4);
    }
}
