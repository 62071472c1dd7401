//! JSON encoding of curvature and sharpness reports.
//!
//! Rationals encode as `{"num", "den", "approx"}`. `num` and `den` are JSON
//! integers when they fit in `i64` and decimal strings otherwise; `approx` is
//! a 12-significant-digit display value and is never read back. Object keys
//! come out sorted, so output is byte-stable.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::curvature::CurvatureReport;
use crate::graph::Graph;
use crate::rational::{approx, Rational};
use crate::sharpness::SharpnessReport;

const APPROX_DIGITS: usize = 12;

fn integer_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    }
}

fn integer_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn rational_json(r: &Rational) -> Value {
    json!({
        "num": integer_json(r.numer()),
        "den": integer_json(r.denom()),
        "approx": approx(r, APPROX_DIGITS),
    })
}

/// Decodes `{"num", "den", ...}`, ignoring `approx`.
pub fn rational_from_json(v: &Value) -> Option<Rational> {
    let num = integer_from_json(v.get("num")?)?;
    let den = integer_from_json(v.get("den")?)?;
    (!den.is_zero()).then(|| Rational::new(num, den))
}

fn pair(g: &Graph, (u, v): (usize, usize)) -> Value {
    json!([g.label(u), g.label(v)])
}

pub fn curvature_report_json(g: &Graph, r: &CurvatureReport) -> Value {
    let inst = &r.instance;
    let coupling: Vec<Value> = r
        .coupling
        .entries()
        .map(|(i, j, mass)| json!({"from": g.label(inst.sources[i]), "to": g.label(inst.sinks[j]), "mass": mass}))
        .collect();
    json!({
        "edge": pair(g, r.edge()),
        "kappa": rational_json(&r.kappa),
        "cost": r.coupling.cost,
        "lcm": inst.lcm,
        "coupling": coupling,
        "upper_bound": rational_json(&r.upper_bound),
        "bound_attained": r.bound_attained,
    })
}

pub fn curvature_reports_json(g: &Graph, reports: &[CurvatureReport]) -> Value {
    json!({ "edges": reports.iter().map(|r| curvature_report_json(g, r)).collect::<Vec<_>>() })
}

pub fn sharpness_report_json(g: &Graph, r: &SharpnessReport) -> Value {
    let mut kappa = rational_json(&r.kappa_min);
    kappa["witness_edge"] = pair(g, r.witness_edge);
    let checks: Map<String, Value> = r
        .checks
        .iter()
        .map(|(name, c)| (name.clone(), json!({"pass": c.pass, "witnesses": c.witnesses})))
        .collect();
    let mut out = json!({
        "diameter": r.diameter,
        "kappa_min": kappa,
        "sharp": r.sharp,
        "poles": r.poles.iter().map(|&p| pair(g, p)).collect::<Vec<_>>(),
        "checks": checks,
    });
    if let Some((rr, t)) = r.structure {
        out["structure"] = json!({"r": rr, "t": t});
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::edge_curvature;
    use crate::graph::{figure1, hypercube};
    use crate::rational::ratio;
    use crate::sharpness::sharpness_verdict;

    #[test]
    fn rational_round_trip() {
        for r in [ratio(1, 12), ratio(-3, 4), ratio(0, 1), ratio(2, 1)] {
            assert_eq!(rational_from_json(&rational_json(&r)), Some(r));
        }
        let huge = Rational::new(BigInt::from(10).pow(30) + 1u32, BigInt::from(7));
        let v = rational_json(&huge);
        assert!(v["num"].is_string());
        assert_eq!(rational_from_json(&v), Some(huge));
        assert_eq!(rational_from_json(&json!({"num": 1, "den": 0})), None);
    }

    #[test]
    fn figure1_json() {
        let g = figure1();
        let r = edge_curvature(&g, g.index_of("x").unwrap(), g.index_of("y").unwrap()).unwrap();
        let v = curvature_report_json(&g, &r);
        assert_eq!(v["kappa"], json!({"num": 1, "den": 12, "approx": "0.0833333333333"}));
        assert_eq!(v["cost"], json!(14));
        assert_eq!(v["edge"], json!(["x", "y"]));
        let moved: u64 = v["coupling"].as_array().unwrap().iter().map(|e| e["mass"].as_u64().unwrap()).sum();
        assert_eq!(moved, 6);
    }

    #[test]
    fn sharpness_json_schema() {
        let g = hypercube(3).unwrap();
        let v = sharpness_report_json(&g, &sharpness_verdict(&g).unwrap());
        assert_eq!(v["diameter"], json!(3));
        assert_eq!(v["sharp"], json!(true));
        assert_eq!(rational_from_json(&v["kappa_min"]), Some(ratio(2, 3)));
        assert_eq!(v["poles"].as_array().unwrap().len(), 4);
        assert!(v.get("structure").is_none());
    }
}
