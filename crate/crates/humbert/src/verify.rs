//! Grid-sweep verification harness.
//!
//! A [`GridSpec`] names one function, a set of representations, parameter
//! value lists, and evaluation points. [`run_grid`] produces one
//! [`VerificationRecord`] per (parameter combination × point) in
//! deterministic lexicographic order; two runs of the same spec serialize to
//! byte-identical reports. Domain guards and parameter poles yield SKIPPED
//! records, never FAIL: the identities carry explicit side conditions and a
//! point outside them is not a counterexample.

use crate::direct::{phi2_direct, phi3_direct, psi2_direct, Phi2Params, Phi3Params, Psi2Params};
use crate::error::{Error, Result};
use crate::kernels::{EvalOutcome, Scalar, SeriesControl};
use crate::reprs::{
    phi2_via_2f1_series, phi3_diagonal_2f2, phi3_gauss_terms, phi3_via_2f1_series,
    psi2_equal_args_3f3, psi2_via_2f1_series, psi2_via_phi3, MIN_DIVISOR_ABS,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionId {
    Phi2,
    Phi3,
    Psi2,
}

impl FunctionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FunctionId::Phi2 => "phi2",
            FunctionId::Phi3 => "phi3",
            FunctionId::Psi2 => "psi2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "phi2" => Some(FunctionId::Phi2),
            "phi3" => Some(FunctionId::Phi3),
            "psi2" => Some(FunctionId::Psi2),
            _ => None,
        }
    }

    /// Parameter names the function takes, in CLI order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            FunctionId::Phi3 => &["b", "c"],
            _ => &["a", "b", "c"],
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodId {
    Direct,
    Series2f1,
    Phi3shift,
    Diag2f2,
    Equalargs3f3,
    Gaussterms,
}

impl MethodId {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodId::Direct => "direct",
            MethodId::Series2f1 => "series2f1",
            MethodId::Phi3shift => "phi3shift",
            MethodId::Diag2f2 => "diag2f2",
            MethodId::Equalargs3f3 => "equalargs3f3",
            MethodId::Gaussterms => "gaussterms",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "direct" => Some(MethodId::Direct),
            "series2f1" => Some(MethodId::Series2f1),
            "phi3shift" => Some(MethodId::Phi3shift),
            "diag2f2" => Some(MethodId::Diag2f2),
            "equalargs3f3" => Some(MethodId::Equalargs3f3),
            "gaussterms" => Some(MethodId::Gaussterms),
            _ => None,
        }
    }

    /// Methods defined for `function`.
    pub fn applicable_to(function: FunctionId) -> &'static [MethodId] {
        match function {
            FunctionId::Phi2 => &[MethodId::Direct, MethodId::Series2f1],
            FunctionId::Phi3 => &[
                MethodId::Direct,
                MethodId::Series2f1,
                MethodId::Diag2f2,
                MethodId::Gaussterms,
            ],
            FunctionId::Psi2 => &[
                MethodId::Direct,
                MethodId::Series2f1,
                MethodId::Phi3shift,
                MethodId::Equalargs3f3,
            ],
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A scalar in a spec file: a bare number or a {re, im} object.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum NumIn {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl NumIn {
    pub fn to_scalar(self) -> Scalar {
        match self {
            NumIn::Real(x) => Scalar::new(x, 0.0),
            NumIn::Complex { re, im } => Scalar::new(re, im),
        }
    }
}

/// Truncation policy as it appears in a spec file; absent fields take the
/// library defaults.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
pub struct CtrlIn {
    pub rel_tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub small_run: Option<usize>,
}

impl CtrlIn {
    pub fn to_control(self) -> SeriesControl {
        let d = SeriesControl::default();
        SeriesControl {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            max_terms: self.max_terms.unwrap_or(d.max_terms),
            small_run: self.small_run.unwrap_or(d.small_run),
        }
    }
}

/// One verification grid: function, representations, parameter value lists,
/// points, agreement gate, and truncation policy.
#[derive(Debug, Clone, Deserialize)]
pub struct GridSpec {
    pub function: FunctionId,
    pub representations: Vec<MethodId>,
    pub params: BTreeMap<String, Vec<NumIn>>,
    pub points: Vec<[NumIn; 2]>,
    pub gate: f64,
    #[serde(default)]
    pub ctrl: Option<CtrlIn>,
}

impl GridSpec {
    /// Convenience constructor for real parameter grids.
    pub fn with_real_grid(
        function: FunctionId,
        representations: &[MethodId],
        params: &[(&str, &[f64])],
        points: &[(f64, f64)],
        gate: f64,
    ) -> Self {
        Self {
            function,
            representations: representations.to_vec(),
            params: params
                .iter()
                .map(|(n, vs)| (n.to_string(), vs.iter().map(|&v| NumIn::Real(v)).collect()))
                .collect(),
            points: points
                .iter()
                .map(|&(x, y)| [NumIn::Real(x), NumIn::Real(y)])
                .collect(),
            gate,
            ctrl: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexOut {
    pub re: f64,
    pub im: f64,
}

impl From<Scalar> for ComplexOut {
    fn from(s: Scalar) -> Self {
        Self { re: s.re, im: s.im }
    }
}

/// Per-representation outcome inside a record.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum MethodOutcome {
    Evaluated {
        value: ComplexOut,
        terms: usize,
        est_error: f64,
        converged: bool,
    },
    Skipped {
        skipped: &'static str,
        reason: String,
    },
}

impl MethodOutcome {
    fn from_eval(o: EvalOutcome) -> Self {
        MethodOutcome::Evaluated {
            value: o.value.into(),
            terms: o.terms,
            est_error: o.est_error,
            converged: o.converged,
        }
    }

    fn converged_value(&self) -> Option<Scalar> {
        match self {
            MethodOutcome::Evaluated {
                value,
                converged: true,
                ..
            } => Some(Scalar::new(value.re, value.im)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordStatus {
    Pass,
    Fail,
    SkippedDomain,
    SkippedPole,
}

impl RecordStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordStatus::Pass => "PASS",
            RecordStatus::Fail => "FAIL",
            RecordStatus::SkippedDomain => "SKIPPED(domain)",
            RecordStatus::SkippedPole => "SKIPPED(pole)",
        }
    }

    pub fn is_skip(&self) -> bool {
        matches!(
            self,
            RecordStatus::SkippedDomain | RecordStatus::SkippedPole
        )
    }
}

impl Serialize for RecordStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One grid point's values under every requested representation, the pairwise
/// relative errors among converged outcomes, and the aggregate status.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub function: FunctionId,
    pub params: BTreeMap<String, ComplexOut>,
    pub x: ComplexOut,
    pub y: ComplexOut,
    pub outcomes: BTreeMap<&'static str, MethodOutcome>,
    pub pairwise_rel_err: BTreeMap<String, f64>,
    pub status: RecordStatus,
}

impl VerificationRecord {
    pub fn max_pairwise_err(&self) -> Option<(&str, f64)> {
        self.pairwise_rel_err
            .iter()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, &v)| (k.as_str(), v))
    }
}

/// Symmetric relative error with a floor that avoids division blowups near
/// zeros of the functions.
pub fn relative_error(u: Scalar, v: Scalar) -> f64 {
    (u - v).norm() / u.norm().max(v.norm()).max(1e-300)
}

/// Locus membership up to parsing/rounding noise: `0.4 * 0.4` is not the
/// f64 `0.16`, yet the point clearly sits on y = x². The slack is far below
/// every agreement gate.
fn on_locus(y: Scalar, target: Scalar) -> bool {
    (y - target).norm() <= 1e-12 * y.norm().max(target.norm()).max(1.0)
}

/// Checks whether `method` applies to this function at these parameters and
/// this point; `Err(reason)` marks a domain skip.
pub fn check_applicability(
    function: FunctionId,
    method: MethodId,
    params: &BTreeMap<String, Scalar>,
    x: Scalar,
    y: Scalar,
) -> std::result::Result<(), String> {
    match method {
        MethodId::Direct => Ok(()),
        MethodId::Series2f1 => {
            if x.norm() < MIN_DIVISOR_ABS {
                return Err(format!("|x| < {MIN_DIVISOR_ABS}"));
            }
            if function == FunctionId::Phi3 && y.norm() < MIN_DIVISOR_ABS {
                return Err(format!("|y| < {MIN_DIVISOR_ABS}"));
            }
            Ok(())
        }
        MethodId::Phi3shift => {
            let (a, b) = (params.get("a"), params.get("b"));
            if a != b {
                return Err("requires a = b".into());
            }
            Ok(())
        }
        MethodId::Diag2f2 | MethodId::Gaussterms => {
            if !on_locus(y, x * x) {
                return Err("requires y = x^2".into());
            }
            Ok(())
        }
        MethodId::Equalargs3f3 => {
            if !on_locus(y, x) {
                return Err("requires y = x".into());
            }
            Ok(())
        }
    }
}

/// Evaluates one function by one method at one point.
pub fn evaluate(
    function: FunctionId,
    method: MethodId,
    params: &BTreeMap<String, Scalar>,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    let need = |name: &str| -> Result<Scalar> {
        params
            .get(name)
            .copied()
            .ok_or_else(|| Error::Config(format!("{function} requires parameter '{name}'")))
    };
    match (function, method) {
        (FunctionId::Phi3, MethodId::Direct) => phi3_direct(
            &Phi3Params {
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (FunctionId::Phi3, MethodId::Series2f1) => phi3_via_2f1_series(
            &Phi3Params {
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (FunctionId::Phi3, MethodId::Diag2f2) => phi3_diagonal_2f2(
            &Phi3Params {
                b: need("b")?,
                c: need("c")?,
            },
            x,
            ctrl,
        ),
        (FunctionId::Phi3, MethodId::Gaussterms) => phi3_gauss_terms(
            &Phi3Params {
                b: need("b")?,
                c: need("c")?,
            },
            x,
            ctrl,
        ),
        (FunctionId::Psi2, MethodId::Direct) => psi2_direct(
            &Psi2Params {
                a: need("a")?,
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (FunctionId::Psi2, MethodId::Series2f1) => psi2_via_2f1_series(
            &Psi2Params {
                a: need("a")?,
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (FunctionId::Psi2, MethodId::Phi3shift) => psi2_via_phi3(
            &Psi2Params {
                a: need("a")?,
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (FunctionId::Psi2, MethodId::Equalargs3f3) => {
            psi2_equal_args_3f3(need("a")?, need("b")?, need("c")?, x, ctrl)
        }
        (FunctionId::Phi2, MethodId::Direct) => phi2_direct(
            &Phi2Params {
                a: need("a")?,
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (FunctionId::Phi2, MethodId::Series2f1) => phi2_via_2f1_series(
            &Phi2Params {
                a: need("a")?,
                b: need("b")?,
                c: need("c")?,
            },
            x,
            y,
            ctrl,
        ),
        (f, m) => Err(Error::Config(format!("method {m} is not defined for {f}"))),
    }
}

fn validate_spec(spec: &GridSpec) -> Result<()> {
    if spec.representations.is_empty() {
        return Err(Error::Config("representations list is empty".into()));
    }
    for m in &spec.representations {
        if !MethodId::applicable_to(spec.function).contains(m) {
            return Err(Error::Config(format!(
                "representation {m} is not applicable to {}",
                spec.function
            )));
        }
    }
    if spec.points.is_empty() {
        return Err(Error::Config("points list is empty".into()));
    }
    for name in spec.function.param_names() {
        match spec.params.get(*name) {
            Some(vs) if !vs.is_empty() => {}
            _ => {
                return Err(Error::Config(format!(
                    "parameter '{name}' needs a non-empty value list"
                )))
            }
        }
    }
    for name in spec.params.keys() {
        if !spec.function.param_names().contains(&name.as_str()) {
            return Err(Error::Config(format!(
                "parameter '{name}' is not used by {}",
                spec.function
            )));
        }
    }
    if spec.gate <= 0.0 || !spec.gate.is_finite() {
        return Err(Error::Config("gate must be positive and finite".into()));
    }
    Ok(())
}

fn evaluate_record(
    function: FunctionId,
    representations: &[MethodId],
    params: &BTreeMap<String, Scalar>,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
    gate: f64,
) -> VerificationRecord {
    let mut outcomes: BTreeMap<&'static str, MethodOutcome> = BTreeMap::new();
    let mut converged: Vec<(MethodId, Scalar)> = Vec::new();
    let mut any_domain_skip = false;
    let mut any_pole_skip = false;
    let mut any_unconverged = false;

    for &m in representations {
        let outcome = match check_applicability(function, m, params, x, y) {
            Err(reason) => {
                any_domain_skip = true;
                MethodOutcome::Skipped {
                    skipped: "domain",
                    reason,
                }
            }
            Ok(()) => match evaluate(function, m, params, x, y, ctrl) {
                Ok(o) => MethodOutcome::from_eval(o),
                Err(Error::Domain(reason)) => {
                    any_domain_skip = true;
                    MethodOutcome::Skipped {
                        skipped: "domain",
                        reason,
                    }
                }
                Err(Error::InvalidParameter(reason)) => {
                    any_pole_skip = true;
                    MethodOutcome::Skipped {
                        skipped: "pole",
                        reason,
                    }
                }
                Err(Error::NotConverged { partial }) => {
                    any_unconverged = true;
                    MethodOutcome::from_eval(partial)
                }
                Err(e) => {
                    any_unconverged = true;
                    MethodOutcome::Skipped {
                        skipped: "error",
                        reason: e.to_string(),
                    }
                }
            },
        };
        if let Some(v) = outcome.converged_value() {
            converged.push((m, v));
        }
        outcomes.insert(m.as_str(), outcome);
    }

    let mut pairwise_rel_err = BTreeMap::new();
    for (i, (mi, vi)) in converged.iter().enumerate() {
        for (mj, vj) in converged.iter().skip(i + 1) {
            pairwise_rel_err.insert(format!("{mi}|{mj}"), relative_error(*vi, *vj));
        }
    }

    let status = if any_pole_skip {
        RecordStatus::SkippedPole
    } else if any_domain_skip {
        RecordStatus::SkippedDomain
    } else if any_unconverged {
        RecordStatus::Fail
    } else if pairwise_rel_err.values().all(|&e| e <= gate) {
        RecordStatus::Pass
    } else {
        RecordStatus::Fail
    };

    VerificationRecord {
        function,
        params: params.iter().map(|(k, &v)| (k.clone(), v.into())).collect(),
        x: x.into(),
        y: y.into(),
        outcomes,
        pairwise_rel_err,
        status,
    }
}

/// Runs the whole grid. Records appear in lexicographic order over the
/// parameter value lists (in parameter-name order) and then the point list,
/// independent of any execution parallelism.
pub fn run_grid(spec: &GridSpec, gate: f64) -> Result<Vec<VerificationRecord>> {
    validate_spec(spec)?;
    let ctrl = spec.ctrl.unwrap_or_default().to_control();
    ctrl.validate()?;
    let names: Vec<&str> = spec.function.param_names().to_vec();
    let lists: Vec<Vec<Scalar>> = names
        .iter()
        .map(|n| spec.params[*n].iter().map(|v| v.to_scalar()).collect())
        .collect();

    let mut records = Vec::new();
    let mut index = vec![0usize; lists.len()];
    loop {
        let params: BTreeMap<String, Scalar> = names
            .iter()
            .enumerate()
            .map(|(slot, n)| (n.to_string(), lists[slot][index[slot]]))
            .collect();
        for point in &spec.points {
            let (x, y) = (point[0].to_scalar(), point[1].to_scalar());
            records.push(evaluate_record(
                spec.function,
                &spec.representations,
                &params,
                x,
                y,
                &ctrl,
                gate,
            ));
        }
        // odometer over the parameter lists
        let mut carry = index.len();
        while carry > 0 {
            index[carry - 1] += 1;
            if index[carry - 1] < lists[carry - 1].len() {
                break;
            }
            index[carry - 1] = 0;
            carry -= 1;
        }
        if carry == 0 {
            break;
        }
    }
    Ok(records)
}

/// Aggregate over the argmax of pairwise errors among PASS and FAIL records.
#[derive(Debug, Clone, Serialize)]
pub struct ArgmaxPoint {
    pub function: FunctionId,
    pub params: BTreeMap<String, ComplexOut>,
    pub x: ComplexOut,
    pub y: ComplexOut,
    pub pair: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub max_rel_err: f64,
    pub argmax_point: Option<ArgmaxPoint>,
}

pub fn summarize(records: &[VerificationRecord]) -> Summary {
    let mut summary = Summary {
        total: records.len(),
        pass: 0,
        fail: 0,
        skipped: 0,
        max_rel_err: 0.0,
        argmax_point: None,
    };
    for r in records {
        match r.status {
            RecordStatus::Pass => summary.pass += 1,
            RecordStatus::Fail => summary.fail += 1,
            _ => summary.skipped += 1,
        }
        if r.status.is_skip() {
            continue;
        }
        if let Some((pair, err)) = r.max_pairwise_err() {
            if err >= summary.max_rel_err {
                summary.max_rel_err = err;
                summary.argmax_point = Some(ArgmaxPoint {
                    function: r.function,
                    params: r.params.clone(),
                    x: r.x,
                    y: r.y,
                    pair: pair.to_string(),
                });
            }
        }
    }
    summary
}

/// Full JSON report: records plus summary. Deterministic byte-for-byte for a
/// given spec.
pub fn report_json(records: &[VerificationRecord], summary: &Summary) -> String {
    #[derive(Serialize)]
    struct Report<'a> {
        records: &'a [VerificationRecord],
        summary: &'a Summary,
    }
    let mut s = serde_json::to_string_pretty(&Report { records, summary })
        .expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// CSV report, one row per record and method pair (skipped records emit a
/// single row with an empty pair).
pub fn report_csv(records: &[VerificationRecord]) -> String {
    let mut out = String::from("function,method_pair,a,b,c,x_re,x_im,y_re,y_im,rel_err,status\n");
    let cell = |p: &BTreeMap<String, ComplexOut>, n: &str| {
        p.get(n).map(|v| v.re.to_string()).unwrap_or_default()
    };
    for r in records {
        let fixed = format!(
            "{},{},{},{},{},{},{}",
            cell(&r.params, "a"),
            cell(&r.params, "b"),
            cell(&r.params, "c"),
            r.x.re,
            r.x.im,
            r.y.re,
            r.y.im
        );
        if r.pairwise_rel_err.is_empty() {
            out.push_str(&format!("{},,{},,{}\n", r.function, fixed, r.status));
        } else {
            for (pair, err) in &r.pairwise_rel_err {
                out.push_str(&format!(
                    "{},{},{},{:e},{}\n",
                    r.function, pair, fixed, err, r.status
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_point_spec() -> GridSpec {
        GridSpec::with_real_grid(
            FunctionId::Phi3,
            &[MethodId::Direct, MethodId::Series2f1],
            &[("b", &[1.0]), ("c", &[2.0])],
            &[(0.5, 0.25)],
            1e-8,
        )
    }

    #[test]
    fn single_point_grid_passes() {
        let spec = single_point_spec();
        let records = run_grid(&spec, spec.gate).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].status, RecordStatus::Pass);
        assert_eq!(records[0].pairwise_rel_err.len(), 1);
    }

    #[test]
    fn zero_x_point_is_domain_skip() {
        let mut spec = single_point_spec();
        spec.points = vec![[NumIn::Real(0.0), NumIn::Real(0.25)]];
        let records = run_grid(&spec, spec.gate).unwrap();
        assert_eq!(records[0].status, RecordStatus::SkippedDomain);
        assert!(records[0].pairwise_rel_err.is_empty());
    }

    #[test]
    fn pole_parameter_is_pole_skip() {
        let mut spec = single_point_spec();
        spec.params.insert("c".into(), vec![NumIn::Real(-1.0)]);
        let records = run_grid(&spec, spec.gate).unwrap();
        assert_eq!(records[0].status, RecordStatus::SkippedPole);
    }

    #[test]
    fn empty_points_is_config_error() {
        let mut spec = single_point_spec();
        spec.points.clear();
        assert!(matches!(run_grid(&spec, 1e-8), Err(Error::Config(_))));
    }

    #[test]
    fn inapplicable_representation_is_config_error() {
        let mut spec = single_point_spec();
        spec.representations.push(MethodId::Equalargs3f3);
        assert!(matches!(run_grid(&spec, 1e-8), Err(Error::Config(_))));
    }

    #[test]
    fn unreasonable_gate_fails_records() {
        let spec = GridSpec::with_real_grid(
            FunctionId::Phi3,
            &[MethodId::Direct, MethodId::Series2f1],
            &[("b", &[1.5]), ("c", &[2.5])],
            &[(-1.0, 3.0)],
            1e-16,
        );
        let records = run_grid(&spec, spec.gate).unwrap();
        assert_eq!(records[0].status, RecordStatus::Fail);
        let summary = summarize(&records);
        assert_eq!(summary.fail, 1);
    }

    #[test]
    fn summarize_counts_partition_records() {
        let spec = single_point_spec();
        let mut records = run_grid(&spec, spec.gate).unwrap();
        let s = summarize(&records);
        assert_eq!((s.total, s.pass, s.fail, s.skipped), (1, 1, 0, 0));
        assert!(s.max_rel_err < 1e-10);
        assert!(s.argmax_point.is_some());

        records.clear();
        let s = summarize(&records);
        assert_eq!((s.total, s.pass, s.fail, s.skipped), (0, 0, 0, 0));
        assert_eq!(s.max_rel_err, 0.0);
        assert!(s.argmax_point.is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = GridSpec::with_real_grid(
            FunctionId::Psi2,
            &[MethodId::Direct, MethodId::Series2f1],
            &[("a", &[0.5, 1.0]), ("b", &[1.5]), ("c", &[2.0, 3.25])],
            &[(0.5, 0.25), (1.0, -0.5), (0.0, 1.0)],
            1e-8,
        );
        let r1 = run_grid(&spec, spec.gate).unwrap();
        let r2 = run_grid(&spec, spec.gate).unwrap();
        let j1 = report_json(&r1, &summarize(&r1));
        let j2 = report_json(&r2, &summarize(&r2));
        assert_eq!(j1, j2);
        assert_eq!(report_csv(&r1), report_csv(&r2));
    }

    #[test]
    fn grid_order_is_lexicographic() {
        let spec = GridSpec::with_real_grid(
            FunctionId::Phi3,
            &[MethodId::Direct],
            &[("b", &[1.0, 2.0]), ("c", &[2.0, 3.0])],
            &[(0.1, 0.1), (0.2, 0.2)],
            1e-8,
        );
        let records = run_grid(&spec, spec.gate).unwrap();
        let got: Vec<(f64, f64, f64)> = records
            .iter()
            .map(|r| (r.params["b"].re, r.params["c"].re, r.x.re))
            .collect();
        let expect = vec![
            (1.0, 2.0, 0.1),
            (1.0, 2.0, 0.2),
            (1.0, 3.0, 0.1),
            (1.0, 3.0, 0.2),
            (2.0, 2.0, 0.1),
            (2.0, 2.0, 0.2),
            (2.0, 3.0, 0.1),
            (2.0, 3.0, 0.2),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn csv_shape() {
        let spec = single_point_spec();
        let records = run_grid(&spec, spec.gate).unwrap();
        let csv = report_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "function,method_pair,a,b,c,x_re,x_im,y_re,y_im,rel_err,status"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("phi3,direct|series2f1,,1,2,0.5,0,0.25,0,"));
        assert!(row.ends_with(",PASS"));
    }
}
