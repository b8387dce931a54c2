//! Alternative representations of Φ₂, Φ₃, Ψ₂: outer series of terminating
//! ₂F₁ polynomials, the exponential shift to Φ₃, and the y = x² / y = x
//! reduction formulas. Each evaluator is independent of the direct
//! double-series path and must agree with it on the shared domain.
//!
//! ```text
//! Φ₃(b;c;x,y)      = e^{x+y/x} Σ_k (−y/x)^k/k! · ₂F₁(−k, −k−c+b+1; c; x²/y)
//! Ψ₂(a;b,c;x,y)    = Σ_k (a)_k/(b)_k · ₂F₁(−k, −k−b+1; c; y/x) · x^k/k!
//! Φ₂(a,b;c;x,y)    = Σ_m (a)_m/(c)_m · ₂F₁(−m, b; 1−a−m; y/x) · x^m/m!
//! Ψ₂(b;b,c;x,y)    = e^{x+y} Φ₃(c−b; c; −y, x·y)
//! Φ₃(b;c;x,x²)     = e^{2x} ₂F₂(c−b/2, c−b/2−1/2; c, 2c−b−1; −4x)
//! Φ₃(b;c;x,x²)     = e^{2x} Σ_k (−x)^k/k! · ₂F₁(−k, −k−c+b+1; c; 1)
//! Ψ₂(a;b,c;x,x)    = ₃F₃(a, (c+b)/2, (c+b−1)/2; b, c, c+b−1; 4x)
//! ```
//!
//! The outer sums stop under the run rule of the supplied `SeriesControl`.
//! `est_error` carries the tail heuristic plus a cancellation floor of
//! machine epsilon times the largest intermediate outer term, so the harness
//! can tell digit loss from identity failure.

use crate::direct::{phi3_direct, Phi2Params, Phi3Params, Psi2Params};
use crate::error::{Error, Result};
use crate::kernels::{
    gauss_2f1_unit, hyp2f1_terminating, nonpositive_int, pfq, EvalOutcome, Kahan, Scalar,
    SeriesControl, ONE,
};

/// Representations that divide by x (or y) refuse arguments below this
/// magnitude rather than attempting a limit.
pub const MIN_DIVISOR_ABS: f64 = 1e-8;

fn guard_divisor(name: &str, v: Scalar) -> Result<()> {
    if v.norm() < MIN_DIVISOR_ABS {
        return Err(Error::Domain(format!(
            "|{name}| = {} is below the {MIN_DIVISOR_ABS} divisor threshold",
            v.norm()
        )));
    }
    Ok(())
}

struct OuterSum {
    value: Scalar,
    terms: usize,
    tail: f64,
    max_term: f64,
}

/// Run-rule accumulation of the outer terms produced by `term(k)`.
fn sum_outer(
    ctrl: &SeriesControl,
    mut term: impl FnMut(usize) -> Result<Scalar>,
) -> Result<OuterSum> {
    ctrl.validate()?;
    let mut acc = Kahan::default();
    let mut run = 0usize;
    let mut max_term = 0.0f64;
    let mut last = 0.0f64;
    for k in 0..ctrl.max_terms {
        let t = term(k)?;
        acc.add(t);
        last = t.norm();
        max_term = max_term.max(last);
        let total = acc.value().norm();
        if !last.is_finite() || !total.is_finite() {
            return Err(Error::NonFinite(
                "summing an outer representation series".into(),
            ));
        }
        if last <= ctrl.rel_tol * total {
            run += 1;
            if run >= ctrl.small_run {
                return Ok(OuterSum {
                    value: acc.value(),
                    terms: k + 1,
                    tail: last * ctrl.small_run as f64,
                    max_term,
                });
            }
        } else {
            run = 0;
        }
    }
    Err(Error::NotConverged {
        partial: EvalOutcome {
            value: acc.value(),
            terms: ctrl.max_terms,
            est_error: last * ctrl.small_run as f64,
            converged: false,
        },
    })
}

fn finish(sum: Result<OuterSum>, prefactor: Scalar) -> Result<EvalOutcome> {
    let pn = prefactor.norm();
    match sum {
        Ok(s) => {
            let value = prefactor * s.value;
            if !value.is_finite() {
                return Err(Error::NonFinite(
                    "applying the exponential prefactor".into(),
                ));
            }
            Ok(EvalOutcome {
                value,
                terms: s.terms,
                est_error: (s.tail + f64::EPSILON * s.max_term) * pn,
                converged: true,
            })
        }
        Err(Error::NotConverged { partial }) => Err(Error::NotConverged {
            partial: EvalOutcome {
                value: prefactor * partial.value,
                est_error: partial.est_error * pn,
                ..partial
            },
        }),
        Err(e) => Err(e),
    }
}

/// Rescales a delegated evaluation by an exponential prefactor.
fn scale_eval(inner: Result<EvalOutcome>, prefactor: Scalar) -> Result<EvalOutcome> {
    let pn = prefactor.norm();
    match inner {
        Ok(o) => {
            let value = prefactor * o.value;
            if !value.is_finite() {
                return Err(Error::NonFinite(
                    "applying the exponential prefactor".into(),
                ));
            }
            Ok(EvalOutcome {
                value,
                est_error: o.est_error * pn,
                ..o
            })
        }
        Err(Error::NotConverged { partial }) => Err(Error::NotConverged {
            partial: EvalOutcome {
                value: prefactor * partial.value,
                est_error: partial.est_error * pn,
                ..partial
            },
        }),
        Err(e) => Err(e),
    }
}

/// Φ₃ as `exp(x + y/x) Σ_k ((−y/x)^k / k!) ₂F₁(−k, −k−c+b+1; c; x²/y)`.
///
/// Requires |x|, |y| above the divisor threshold.
pub fn phi3_via_2f1_series(
    p: &Phi3Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    guard_divisor("x", x)?;
    guard_divisor("y", y)?;
    let (b, c) = (p.b, p.c);
    let w = -y / x;
    let z = x * x / y;
    let prefactor = (x + y / x).exp();
    let mut coef = ONE; // w^k / k!
    let sum = sum_outer(ctrl, |k| {
        if k > 0 {
            coef = coef * w / k as f64;
        }
        let beta = b - c + (1.0 - k as f64); // −k − c + b + 1
        Ok(coef * hyp2f1_terminating(k, beta, c, z)?)
    });
    finish(sum, prefactor)
}

/// Ψ₂ as `Σ_k (a)_k/(b)_k ₂F₁(−k, −k−b+1; c; y/x) x^k/k!`. Requires |x|
/// above the divisor threshold.
pub fn psi2_via_2f1_series(
    p: &Psi2Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    guard_divisor("x", x)?;
    let (a, b, c) = (p.a, p.b, p.c);
    let z = y / x;
    let mut coef = ONE; // (a)_k / (b)_k · x^k / k!
    let sum = sum_outer(ctrl, |k| {
        if k > 0 {
            let prev = (k - 1) as f64;
            coef = coef * (a + prev) * x / ((b + prev) * k as f64);
        }
        let beta = (1.0 - k as f64) - b; // −k − b + 1
        Ok(coef * hyp2f1_terminating(k, beta, c, z)?)
    });
    finish(sum, ONE)
}

/// Φ₂ as `Σ_m (a)_m/(c)_m ₂F₁(−m, b; 1−a−m; y/x) x^m/m!`. Requires |x| above
/// the divisor threshold and a away from nonpositive integers (otherwise the
/// terminating ₂F₁'s lower parameter vanishes inside the sum).
pub fn phi2_via_2f1_series(
    p: &Phi2Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    if nonpositive_int(p.a).is_some() {
        return Err(Error::InvalidParameter(format!(
            "parameter a = {} makes the lower parameter 1-a-m vanish inside the sum",
            p.a
        )));
    }
    guard_divisor("x", x)?;
    let (a, b, c) = (p.a, p.b, p.c);
    let z = y / x;
    let mut coef = ONE; // (a)_m / (c)_m · x^m / m!
    let sum = sum_outer(ctrl, |m| {
        if m > 0 {
            let prev = (m - 1) as f64;
            coef = coef * (a + prev) * x / ((c + prev) * m as f64);
        }
        let gamma = (1.0 - m as f64) - a; // 1 − a − m
        Ok(coef * hyp2f1_terminating(m, b, gamma, z)?)
    });
    finish(sum, ONE)
}

/// Equal-upper-parameter Ψ₂ through the exponential shift:
/// `Ψ₂(b; b, c; x, y) = exp(x+y) Φ₃(c−b; c; −y, x·y)`.
pub fn psi2_via_phi3(
    p: &Psi2Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    if p.a != p.b {
        return Err(Error::InvalidParameter(format!(
            "the exponential shift applies only for a = b (got a = {}, b = {})",
            p.a, p.b
        )));
    }
    let shifted = Phi3Params {
        b: p.c - p.b,
        c: p.c,
    };
    scale_eval(phi3_direct(&shifted, -y, x * y, ctrl), (x + y).exp())
}

/// Φ₃ on the y = x² locus as `exp(2x) ₂F₂(c−b/2, c−b/2−1/2; c, 2c−b−1; −4x)`.
pub fn phi3_diagonal_2f2(p: &Phi3Params, x: Scalar, ctrl: &SeriesControl) -> Result<EvalOutcome> {
    p.validate()?;
    let (b, c) = (p.b, p.c);
    let shifted = c + c - b - 1.0;
    if nonpositive_int(shifted).is_some() {
        return Err(Error::InvalidParameter(format!(
            "lower parameter 2c-b-1 = {shifted} is a nonpositive integer"
        )));
    }
    let upper = [c - b / 2.0, c - b / 2.0 - 0.5];
    let lower = [c, shifted];
    scale_eval(pfq(&upper, &lower, x * -4.0, ctrl), (x * 2.0).exp())
}

/// Equal-argument Ψ₂ as `₃F₃(a, (c+b)/2, (c+b−1)/2; b, c, c+b−1; 4x)`.
pub fn psi2_equal_args_3f3(
    a: Scalar,
    b: Scalar,
    c: Scalar,
    x: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    for (name, v) in [("b", b), ("c", c), ("c+b-1", c + b - 1.0)] {
        if nonpositive_int(v).is_some() {
            return Err(Error::InvalidParameter(format!(
                "lower parameter {name} = {v} is a nonpositive integer"
            )));
        }
    }
    let upper = [a, (c + b) / 2.0, (c + b - 1.0) / 2.0];
    let lower = [b, c, c + b - 1.0];
    pfq(&upper, &lower, x * 4.0, ctrl)
}

/// Φ₃ on the y = x² locus as `exp(2x) Σ_k (−x)^k/k! ₂F₁(−k, −k−c+b+1; c; 1)`,
/// with each unit-argument ₂F₁ summed in closed form.
pub fn phi3_gauss_terms(p: &Phi3Params, x: Scalar, ctrl: &SeriesControl) -> Result<EvalOutcome> {
    p.validate()?;
    let (b, c) = (p.b, p.c);
    let shifted = c + c - b - 1.0;
    if nonpositive_int(shifted).is_some() {
        return Err(Error::InvalidParameter(format!(
            "lower parameter 2c-b-1 = {shifted} is a nonpositive integer"
        )));
    }
    let w = -x;
    let mut coef = ONE; // (−x)^k / k!
    let sum = sum_outer(ctrl, |k| {
        if k > 0 {
            coef = coef * w / k as f64;
        }
        let upper_a = Scalar::new(-(k as f64), 0.0);
        let upper_b = b - c + (1.0 - k as f64); // −k − c + b + 1
        Ok(coef * gauss_2f1_unit(upper_a, upper_b, c)?)
    });
    finish(sum, (x * 2.0).exp())
}
