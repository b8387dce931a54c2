//! Reference evaluators for Φ₂, Φ₃, Ψ₂ by direct double-series summation.
//!
//! ```text
//! Φ₂(a,b; c; x,y) = Σ (a)_m (b)_n / (c)_{m+n} · x^m y^n / (m! n!)
//! Φ₃(b; c; x,y)   = Σ (b)_n / (c)_{n+k}     · x^n y^k / (n! k!)
//! Ψ₂(a; b,c; x,y) = Σ (a)_{n+k} / ((b)_n (c)_k) · x^n y^k / (n! k!)
//! ```
//!
//! All three are entire in x and y. Summation runs over anti-diagonals
//! n + k = N, the natural monotone-decay unit for entire double series, and
//! stops once `small_run` consecutive whole diagonals are small relative to
//! the partial sum. A diagonal may contain an interior zero term, which is
//! why truncation is per-diagonal rather than per-term.

use crate::error::{Error, Result};
use crate::kernels::{nonpositive_int, EvalOutcome, Kahan, Scalar, SeriesControl, ONE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi3Params {
    pub b: Scalar,
    pub c: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Psi2Params {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi2Params {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

fn check_pole(name: &str, v: Scalar) -> Result<()> {
    if nonpositive_int(v).is_some() {
        return Err(Error::InvalidParameter(format!(
            "parameter {name} = {v} is a nonpositive integer"
        )));
    }
    Ok(())
}

impl Phi3Params {
    pub fn validate(&self) -> Result<()> {
        check_pole("c", self.c)
    }
}

impl Psi2Params {
    pub fn validate(&self) -> Result<()> {
        check_pole("b", self.b)?;
        check_pole("c", self.c)
    }
}

impl Phi2Params {
    pub fn validate(&self) -> Result<()> {
        check_pole("c", self.c)
    }
}

/// Sums Σ_N scale(N) · Σ_{n+k=N} row(n) col(k) by anti-diagonals.
///
/// `row_step(n, prev)` maps row(n−1) to row(n) and similarly for the other
/// two; all three sequences start at 1. `terms` in the outcome counts
/// diagonals consumed.
fn sum_antidiagonals(
    ctrl: &SeriesControl,
    mut row_step: impl FnMut(usize, Scalar) -> Scalar,
    mut col_step: impl FnMut(usize, Scalar) -> Scalar,
    mut scale_step: impl FnMut(usize, Scalar) -> Scalar,
) -> Result<EvalOutcome> {
    ctrl.validate()?;
    let mut row = vec![ONE];
    let mut col = vec![ONE];
    let mut scale = ONE;
    let mut acc = Kahan::default();
    let mut run = 0usize;
    let mut last = 0.0f64;
    for diag in 0..ctrl.max_terms {
        if diag > 0 {
            let r = row_step(diag, row[diag - 1]);
            let c = col_step(diag, col[diag - 1]);
            row.push(r);
            col.push(c);
            scale = scale_step(diag, scale);
        }
        // Pair terms from both ends of the diagonal. Every float operation
        // here is bitwise commutative, so swapping the row and column roles
        // (the Φ₂ symmetry) reproduces the sum exactly.
        let mut dsum = Kahan::default();
        let (mut lo, mut hi) = (0usize, diag);
        while lo < hi {
            dsum.add(row[lo] * col[hi] + row[hi] * col[lo]);
            lo += 1;
            hi -= 1;
        }
        if lo == hi {
            dsum.add(row[lo] * col[lo]);
        }
        let d = dsum.value() * scale;
        acc.add(d);
        last = d.norm();
        let total = acc.value().norm();
        if !last.is_finite() || !total.is_finite() {
            return Err(Error::NonFinite("summing a Humbert double series".into()));
        }
        if last <= ctrl.rel_tol * total {
            run += 1;
            if run >= ctrl.small_run {
                return Ok(EvalOutcome {
                    value: acc.value(),
                    terms: diag + 1,
                    est_error: last * ctrl.small_run as f64,
                    converged: true,
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

/// Φ₃(b; c; x, y) by anti-diagonal double-series summation.
pub fn phi3_direct(
    p: &Phi3Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    let (b, c) = (p.b, p.c);
    sum_antidiagonals(
        ctrl,
        |n, prev| prev * (b + (n - 1) as f64) * x / n as f64,
        |k, prev| prev * y / k as f64,
        |nn, prev| prev / (c + (nn - 1) as f64),
    )
}

/// Ψ₂(a; b, c; x, y) by anti-diagonal double-series summation.
pub fn psi2_direct(
    p: &Psi2Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    let (a, b, c) = (p.a, p.b, p.c);
    sum_antidiagonals(
        ctrl,
        |n, prev| prev * x / ((b + (n - 1) as f64) * n as f64),
        |k, prev| prev * y / ((c + (k - 1) as f64) * k as f64),
        |nn, prev| prev * (a + (nn - 1) as f64),
    )
}

/// Φ₂(a, b; c; x, y) by anti-diagonal double-series summation.
pub fn phi2_direct(
    p: &Phi2Params,
    x: Scalar,
    y: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    p.validate()?;
    let (a, b, c) = (p.a, p.b, p.c);
    sum_antidiagonals(
        ctrl,
        |m, prev| prev * (a + (m - 1) as f64) * x / m as f64,
        |n, prev| prev * (b + (n - 1) as f64) * y / n as f64,
        |nn, prev| prev / (c + (nn - 1) as f64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::pfq;
    use crate::oracle::{poch_rational, Rational};
    use num_bigint::BigInt;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;

    fn re(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    fn rel_err(u: Scalar, v: Scalar) -> f64 {
        (u - v).norm() / u.norm().max(v.norm()).max(1e-300)
    }

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn phi3_reference_values() {
        let p = Phi3Params {
            b: re(1.0),
            c: re(2.0),
        };
        let v = phi3_direct(&p, ONE, re(0.0), &ctrl()).unwrap();
        assert!(rel_err(v.value, re(std::f64::consts::E - 1.0)) <= 1e-14);
        assert!(v.converged);

        let p = Phi3Params {
            b: re(3.7),
            c: re(1.2),
        };
        let v = phi3_direct(&p, re(0.0), re(0.0), &ctrl()).unwrap();
        assert_eq!(v.value, ONE);
    }

    #[test]
    fn phi3_axis_value_matches_rational_partial_sum() {
        // Φ₃(1; 1; 0, 1) = Σ_k 1/(k!)²; freeze the 30-term exact partial sum.
        let mut acc = Rational::zero();
        let mut fac = Rational::one();
        for k in 0..=30usize {
            if k > 0 {
                fac *= Rational::from_integer(BigInt::from(k));
            }
            acc += Rational::one() / (&fac * &fac);
        }
        let expected = acc.to_f64().unwrap();
        assert!((expected - 2.2795853023360673).abs() <= 1e-15);

        let p = Phi3Params {
            b: re(1.0),
            c: re(1.0),
        };
        let v = phi3_direct(&p, re(0.0), ONE, &ctrl()).unwrap();
        assert!(rel_err(v.value, re(expected)) <= 1e-14);
    }

    #[test]
    fn psi2_reference_values() {
        let p = Psi2Params {
            a: re(2.5),
            b: re(1.5),
            c: re(3.0),
        };
        let v = psi2_direct(&p, re(0.0), re(0.0), &ctrl()).unwrap();
        assert_eq!(v.value, ONE);

        // Ψ₂(1; 1, 2; x, 0) = ₁F₁(1; 1; x) = e^x
        let p = Psi2Params {
            a: re(1.0),
            b: re(1.0),
            c: re(2.0),
        };
        let v = psi2_direct(&p, re(0.7), re(0.0), &ctrl()).unwrap();
        assert!(rel_err(v.value, re(0.7f64.exp())) <= 1e-14);
    }

    #[test]
    fn phi2_reference_values() {
        let p = Phi2Params {
            a: re(1.1),
            b: re(2.2),
            c: re(3.3),
        };
        let v = phi2_direct(&p, re(0.0), re(0.0), &ctrl()).unwrap();
        assert_eq!(v.value, ONE);

        // y = 0 collapses the b-sum regardless of b
        let p = Phi2Params {
            a: re(1.0),
            b: re(5.0),
            c: re(2.0),
        };
        let v = phi2_direct(&p, ONE, re(0.0), &ctrl()).unwrap();
        assert!(rel_err(v.value, re(std::f64::consts::E - 1.0)) <= 1e-14);
    }

    #[test]
    fn pole_parameters_rejected() {
        let p = Phi3Params {
            b: re(1.0),
            c: re(-3.0),
        };
        assert!(matches!(
            phi3_direct(&p, ONE, ONE, &ctrl()),
            Err(Error::InvalidParameter(_))
        ));
        let p = Psi2Params {
            a: re(1.0),
            b: re(0.0),
            c: re(2.0),
        };
        assert!(matches!(
            psi2_direct(&p, ONE, ONE, &ctrl()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn boundary_reductions_to_single_series() {
        let xs = [-3.0, -1.2, 0.4, 3.0];
        let bs = [0.5, 1.3, 2.0];
        let cs = [1.5, 2.75];
        let aa = [0.7, 1.6];
        let c0 = ctrl();
        for &b in &bs {
            for &c in &cs {
                for &x in &xs {
                    // Φ₃(b; c; x, 0) = ₁F₁(b; c; x)
                    let lhs = phi3_direct(&Phi3Params { b: re(b), c: re(c) }, re(x), re(0.0), &c0)
                        .unwrap()
                        .value;
                    let rhs = pfq(&[re(b)], &[re(c)], re(x), &c0).unwrap().value;
                    assert!(rel_err(lhs, rhs) <= 1e-12, "phi3 x-axis b={b} c={c} x={x}");

                    // Φ₃(b; c; 0, y) = ₀F₁(; c; y)
                    let lhs = phi3_direct(&Phi3Params { b: re(b), c: re(c) }, re(0.0), re(x), &c0)
                        .unwrap()
                        .value;
                    let rhs = pfq(&[], &[re(c)], re(x), &c0).unwrap().value;
                    assert!(rel_err(lhs, rhs) <= 1e-12, "phi3 y-axis b={b} c={c} y={x}");

                    for &a in &aa {
                        // Ψ₂(a; b, c; x, 0) = ₁F₁(a; b; x), Ψ₂(a; b, c; 0, y) = ₁F₁(a; c; y)
                        let p = Psi2Params {
                            a: re(a),
                            b: re(b),
                            c: re(c),
                        };
                        let lhs = psi2_direct(&p, re(x), re(0.0), &c0).unwrap().value;
                        let rhs = pfq(&[re(a)], &[re(b)], re(x), &c0).unwrap().value;
                        assert!(rel_err(lhs, rhs) <= 1e-12, "psi2 x-axis a={a} b={b} c={c}");
                        let lhs = psi2_direct(&p, re(0.0), re(x), &c0).unwrap().value;
                        let rhs = pfq(&[re(a)], &[re(c)], re(x), &c0).unwrap().value;
                        assert!(rel_err(lhs, rhs) <= 1e-12, "psi2 y-axis a={a} b={b} c={c}");

                        // Φ₂(a, b; c; x, 0) = ₁F₁(a; c; x)
                        let p = Phi2Params {
                            a: re(a),
                            b: re(b),
                            c: re(c),
                        };
                        let lhs = phi2_direct(&p, re(x), re(0.0), &c0).unwrap().value;
                        let rhs = pfq(&[re(a)], &[re(c)], re(x), &c0).unwrap().value;
                        assert!(rel_err(lhs, rhs) <= 1e-12, "phi2 x-axis a={a} b={b} c={c}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn phi2_is_symmetric_under_swapping_both_pairs(
            a in -4.0f64..4.0,
            b in -4.0f64..4.0,
            c in 0.3f64..5.0,
            x in -3.0f64..3.0,
            y in -3.0f64..3.0,
        ) {
            let u = phi2_direct(&Phi2Params { a: re(a), b: re(b), c: re(c) }, re(x), re(y), &ctrl()).unwrap();
            let v = phi2_direct(&Phi2Params { a: re(b), b: re(a), c: re(c) }, re(y), re(x), &ctrl()).unwrap();
            prop_assert!(rel_err(u.value, v.value) <= 1e-13);
        }
    }

    /// Distance from the nearest nonpositive integer, used to keep sampled
    /// parameters away from poles.
    fn pole_distance(v: f64) -> f64 {
        if v > 0.0 {
            v.min((v - v.round()).abs() + 1.0)
        } else {
            (v - v.round()).abs()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn entire_functions_converge_under_default_control(
            a in -10.0f64..10.0,
            b in -10.0f64..10.0,
            c in -10.0f64..10.0,
            x in -5.0f64..5.0,
            y in -5.0f64..5.0,
        ) {
            prop_assume!(pole_distance(b) > 0.25 && pole_distance(c) > 0.25);
            let c0 = ctrl();
            let v = phi3_direct(&Phi3Params { b: re(b), c: re(c) }, re(x), re(y), &c0).unwrap();
            prop_assert!(v.converged);
            let v = psi2_direct(&Psi2Params { a: re(a), b: re(b), c: re(c) }, re(x), re(y), &c0).unwrap();
            prop_assert!(v.converged);
            let v = phi2_direct(&Phi2Params { a: re(a), b: re(b), c: re(c) }, re(x), re(y), &c0).unwrap();
            prop_assert!(v.converged);
        }
    }

    /// Exact-rational partial sums of the three double series, by rows and by
    /// anti-diagonals, over the triangle n + k ≤ deg.
    fn rational_partial_sums(
        summand: impl Fn(usize, usize) -> Rational,
        deg: usize,
    ) -> (Rational, Rational) {
        let mut by_rows = Rational::zero();
        for n in 0..=deg {
            for k in 0..=(deg - n) {
                by_rows += summand(n, k);
            }
        }
        let mut by_diagonals = Rational::zero();
        for total in 0..=deg {
            for n in 0..=total {
                by_diagonals += summand(n, total - n);
            }
        }
        (by_rows, by_diagonals)
    }

    #[test]
    fn row_and_antidiagonal_partial_sums_agree_exactly() {
        let rat = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        let fact = |n: usize| {
            Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
        };
        let (a, b, c) = (rat(1, 2), rat(3, 2), rat(5, 3));
        let (x, y) = (rat(3, 7), rat(-2, 5));
        let xp = |n: usize| {
            let mut p = Rational::one();
            for _ in 0..n {
                p *= &x;
            }
            p
        };
        let yp = |k: usize| {
            let mut p = Rational::one();
            for _ in 0..k {
                p *= &y;
            }
            p
        };

        let phi3 = |n: usize, k: usize| {
            poch_rational(&b, n) * xp(n) * yp(k) / (poch_rational(&c, n + k) * fact(n) * fact(k))
        };
        let psi2 = |n: usize, k: usize| {
            poch_rational(&a, n + k) * xp(n) * yp(k)
                / (poch_rational(&b, n) * poch_rational(&c, k) * fact(n) * fact(k))
        };
        let phi2 = |m: usize, n: usize| {
            poch_rational(&a, m) * poch_rational(&b, n) * xp(m) * yp(n)
                / (poch_rational(&c, m + n) * fact(m) * fact(n))
        };
        for deg in [0usize, 1, 5, 12] {
            for f in [&phi3 as &dyn Fn(usize, usize) -> Rational, &psi2, &phi2] {
                let (rows, diags) = rational_partial_sums(f, deg);
                assert_eq!(rows, diags, "deg={deg}");
            }
        }
    }

    #[test]
    fn truncated_partial_is_carried_by_not_converged() {
        let tight = SeriesControl {
            rel_tol: f64::MIN_POSITIVE,
            max_terms: 9,
            small_run: 3,
        };
        let p = Phi3Params {
            b: re(1.0),
            c: re(2.0),
        };
        match phi3_direct(&p, re(0.25), re(0.125), &tight) {
            Err(Error::NotConverged { partial }) => {
                assert_eq!(partial.terms, 9);
                assert!(!partial.converged);
                assert!(partial.value.is_finite());
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }
}
