//! JSON-string API behind the browser demo. Pure functions so the whole demo
//! logic builds and tests on the host; the wasm layer is a thin cast.

use humbert::kernels::{Scalar, SeriesControl};
use humbert::oracle::{compare_formal, parse_rational, IdentityId, IdentityParams};
use humbert::verify::{
    check_applicability, evaluate, relative_error, run_grid, FunctionId, GridSpec, MethodId, NumIn,
};
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn parse_params(function: FunctionId, params_json: &str) -> Result<BTreeMap<String, f64>, String> {
    let map: BTreeMap<String, f64> =
        serde_json::from_str(params_json).map_err(|e| format!("params: {e}"))?;
    for name in function.param_names() {
        if !map.contains_key(*name) {
            return Err(format!("{function} requires parameter '{name}'"));
        }
    }
    Ok(map)
}

/// Evaluates every representation defined for `function` at one point and
/// reports values, pairwise relative errors, and the PASS/SKIP status.
pub fn compare_point(
    function: &str,
    params_json: &str,
    x_re: f64,
    x_im: f64,
    y_re: f64,
    y_im: f64,
    gate: f64,
) -> String {
    let function = match FunctionId::parse(function) {
        Some(f) => f,
        None => return err_json(format!("unknown function '{function}'")),
    };
    let params = match parse_params(function, params_json) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let spec = GridSpec {
        function,
        representations: MethodId::applicable_to(function).to_vec(),
        params: params
            .iter()
            .map(|(k, &v)| (k.clone(), vec![NumIn::Real(v)]))
            .collect(),
        points: vec![[
            NumIn::Complex { re: x_re, im: x_im },
            NumIn::Complex { re: y_re, im: y_im },
        ]],
        gate,
        ctrl: None,
    };
    match run_grid(&spec, gate) {
        Ok(records) => {
            let record = serde_json::to_value(&records[0]).expect("serializable");
            json!({ "gate": gate, "record": record }).to_string()
        }
        Err(e) => err_json(e),
    }
}

/// Methods swept per locus: the reduction formulas on their loci, the
/// 2F1-series form off-axis.
fn sweep_methods(function: FunctionId, locus: &str) -> Result<Vec<MethodId>, String> {
    let methods: &[MethodId] = match (function, locus) {
        (FunctionId::Phi3, "square") => {
            &[MethodId::Direct, MethodId::Diag2f2, MethodId::Gaussterms]
        }
        (FunctionId::Psi2, "equal") => &[
            MethodId::Direct,
            MethodId::Equalargs3f3,
            MethodId::Phi3shift,
        ],
        (_, "ratio") => &[MethodId::Direct, MethodId::Series2f1],
        _ => return Err(format!("locus '{locus}' is not defined for {function}")),
    };
    Ok(methods.to_vec())
}

/// Sweeps x over [x_from, x_to] along a locus (y = x² for "square", y = x for
/// "equal", y = t·x for "ratio") and returns per-point method values plus the
/// worst pairwise disagreement, ready for plotting.
pub fn sweep(
    function: &str,
    params_json: &str,
    locus: &str,
    t_ratio: f64,
    x_from: f64,
    x_to: f64,
    steps: u32,
) -> String {
    let function = match FunctionId::parse(function) {
        Some(f) => f,
        None => return err_json(format!("unknown function '{function}'")),
    };
    let params = match parse_params(function, params_json) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let methods = match sweep_methods(function, locus) {
        Ok(m) => m,
        Err(e) => return err_json(e),
    };
    if steps == 0 || steps > 5000 {
        return err_json("steps must be in 1..=5000");
    }
    let scalar_params: BTreeMap<String, Scalar> = params
        .iter()
        .map(|(k, &v)| (k.clone(), Scalar::new(v, 0.0)))
        .collect();
    let ctrl = SeriesControl::default();
    let mut rows = Vec::new();
    for i in 0..=steps {
        let x = x_from + (x_to - x_from) * i as f64 / steps as f64;
        let y = match locus {
            "square" => x * x,
            "equal" => x,
            _ => t_ratio * x,
        };
        let (xs, ys) = (Scalar::new(x, 0.0), Scalar::new(y, 0.0));
        let mut values = serde_json::Map::new();
        let mut converged: Vec<Scalar> = Vec::new();
        for &m in &methods {
            let entry = if check_applicability(function, m, &scalar_params, xs, ys).is_err() {
                Value::Null
            } else {
                match evaluate(function, m, &scalar_params, xs, ys, &ctrl) {
                    Ok(o) => {
                        converged.push(o.value);
                        json!({ "re": o.value.re, "im": o.value.im })
                    }
                    Err(_) => Value::Null,
                }
            };
            values.insert(m.as_str().to_string(), entry);
        }
        let mut max_err = 0.0f64;
        for i in 0..converged.len() {
            for j in (i + 1)..converged.len() {
                max_err = max_err.max(relative_error(converged[i], converged[j]));
            }
        }
        rows.push(json!({ "x": x, "y": y, "values": values, "max_rel_err": max_err }));
    }
    json!({
        "function": function.as_str(),
        "locus": locus,
        "methods": methods.iter().map(|m| m.as_str()).collect::<Vec<_>>(),
        "rows": rows,
    })
    .to_string()
}

/// Runs the exact-rational oracle and returns the certificate.
pub fn certificate(identity: &str, params: &str, deg: u32) -> String {
    let id = match IdentityId::parse(identity) {
        Some(i) => i,
        None => return err_json(format!("unknown identity '{identity}'")),
    };
    let mut p = IdentityParams::default();
    for pair in params.split(',').filter(|s| !s.trim().is_empty()) {
        let mut kv = pair.splitn(2, '=');
        let k = kv.next().unwrap_or("").trim();
        let v = match kv.next() {
            Some(v) => v.trim(),
            None => return err_json(format!("'{pair}' is not of the form name=value")),
        };
        let r = match parse_rational(v) {
            Ok(r) => r,
            Err(e) => return err_json(e),
        };
        match k {
            "a" => p.a = Some(r),
            "b" => p.b = Some(r),
            "c" => p.c = Some(r),
            other => return err_json(format!("unknown parameter '{other}'")),
        }
    }
    match compare_formal(id, &p, deg as usize, deg as usize) {
        Ok(cert) => cert.to_json().to_string(),
        Err(e) => err_json(e),
    }
}

/// The identity catalogue for populating the demo's selector.
pub fn identities() -> String {
    let list: Vec<Value> = IdentityId::LISTED
        .iter()
        .map(|id| {
            json!({
                "id": id.as_str(),
                "formula": id.formula(),
                "note": id.correction(),
                "params": id.required_params(),
            })
        })
        .collect();
    json!(list).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_point_reports_all_methods() {
        let out = compare_point("phi3", r#"{"b": 1.5, "c": 2.5}"#, 0.4, 0.0, 0.16, 0.0, 1e-8);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_none(), "{out}");
        let record = &v["record"];
        assert_eq!(record["status"], "PASS");
        for m in ["direct", "series2f1", "diag2f2", "gaussterms"] {
            assert!(record["outcomes"][m].is_object(), "{m} missing");
        }
        assert!(record["pairwise_rel_err"].as_object().unwrap().len() >= 6);
    }

    #[test]
    fn compare_point_rejects_bad_input() {
        let v: Value =
            serde_json::from_str(&compare_point("phi9", "{}", 0.0, 0.0, 0.0, 0.0, 1e-8)).unwrap();
        assert!(v["error"].is_string());
        let v: Value = serde_json::from_str(&compare_point(
            "phi3",
            r#"{"b": 1.0}"#,
            0.0,
            0.0,
            0.0,
            0.0,
            1e-8,
        ))
        .unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn sweep_square_locus_has_three_methods_and_small_errors() {
        let out = sweep(
            "phi3",
            r#"{"b": 1.5, "c": 2.5}"#,
            "square",
            0.0,
            -1.0,
            2.0,
            24,
        );
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_none(), "{out}");
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 25);
        for row in rows {
            assert!(row["max_rel_err"].as_f64().unwrap() <= 1e-9);
            assert!(row["values"]["direct"]["re"].is_number());
        }
    }

    #[test]
    fn sweep_ratio_locus_skips_the_origin() {
        let out = sweep(
            "psi2",
            r#"{"a": 1.0, "b": 1.0, "c": 2.0}"#,
            "ratio",
            0.5,
            -1.0,
            1.0,
            10,
        );
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        // x = 0 sits mid-sweep; series2f1 must be null there, direct present
        let mid = &rows[5];
        assert_eq!(mid["x"], 0.0);
        assert!(mid["values"]["series2f1"].is_null());
        assert!(mid["values"]["direct"].is_object());
    }

    #[test]
    fn certificate_round_trips() {
        let v: Value = serde_json::from_str(&certificate("eq15", "b=1,c=5/2", 6)).unwrap();
        assert_eq!(v["equal"], true);
        let v: Value = serde_json::from_str(&certificate("eq15printed", "b=1,c=3", 6)).unwrap();
        assert_eq!(v["equal"], false);
        let v: Value = serde_json::from_str(&certificate("eq15", "b=1", 6)).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn identities_catalogue_lists_seven() {
        let v: Value = serde_json::from_str(&identities()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 7);
    }
}
