//! Scalar kernels: Pochhammer symbols and one-variable hypergeometric series.
//!
//! Everything here is a pure function of its inputs and is safe to call from
//! any number of threads. The three series entry points are
//!
//! ```text
//! pFq(u1..up; l1..lq; z) = Σ_n (u1)_n…(up)_n / ((l1)_n…(lq)_n) z^n / n!
//! 2F1(-k, β; γ; z)       = Σ_{j=0..k} (-k)_j (β)_j / ((γ)_j j!) z^j      (exact polynomial)
//! 2F1(a, b; c; 1)        = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))                 (unit-argument sum)
//! ```

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use num_complex::Complex64;

/// Complex double-precision scalar carrying every argument, parameter, and
/// function value in this crate.
pub type Scalar = Complex64;

pub(crate) const ONE: Scalar = Scalar::new(1.0, 0.0);
pub(crate) const ZERO: Scalar = Scalar::new(0.0, 0.0);

/// Truncation policy for infinite series.
///
/// A sum stops once `small_run` consecutive terms (or anti-diagonals, for the
/// double series) have magnitude at most `rel_tol` times the partial sum, or
/// errs with [`Error::NotConverged`] after `max_terms` summation units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub small_run: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 5000,
            small_run: 3,
        }
    }
}

impl SeriesControl {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.rel_tol <= 0.0 || !self.rel_tol.is_finite() {
            return Err(Error::Config("rel_tol must be positive and finite".into()));
        }
        if self.max_terms == 0 {
            return Err(Error::Config("max_terms must be at least 1".into()));
        }
        if self.small_run == 0 {
            return Err(Error::Config("small_run must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of a series evaluation.
///
/// `terms` counts the summation units consumed: individual terms for single
/// series, anti-diagonals for the double series. `est_error` is a heuristic
/// absolute bound on the neglected tail plus a cancellation floor.
/// `converged == false` only ever escapes inside [`Error::NotConverged`], in
/// which case `terms == max_terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOutcome {
    pub value: Scalar,
    pub terms: usize,
    pub est_error: f64,
    pub converged: bool,
}

/// Compensated (Kahan) accumulator, applied componentwise to re/im.
///
/// The alternating outer series of the representation evaluators cancel
/// heavily; plain summation costs digits there.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: Scalar,
    comp: Scalar,
}

impl Kahan {
    pub(crate) fn add(&mut self, v: Scalar) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Scalar {
        self.sum
    }
}

/// `Some(k)` when `s` is the nonpositive integer `-k` (exactly, in f64).
pub(crate) fn nonpositive_int(s: Scalar) -> Option<u64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re > -9.0e15 {
        Some((-s.re) as u64)
    } else {
        None
    }
}

/// Rising factorial `(a)_n = a (a+1) … (a+n-1)`, with `(a)_0 = 1`.
///
/// Total function: a nonpositive-integer `a` with `-a < n` yields an exact 0
/// because one factor is exactly zero.
pub fn pochhammer(a: Scalar, n: usize) -> Scalar {
    let mut p = ONE;
    for i in 0..n {
        p *= a + i as f64;
    }
    p
}

/// Generalized hypergeometric series `pFq(upper; lower; z)`.
///
/// Terminating series (some upper parameter a nonpositive integer `-k` that
/// acts before any lower-parameter pole) are summed exactly over their k+1
/// terms and always report `converged = true`. Non-terminating series use the
/// run-rule stopping policy of `ctrl`.
pub fn pfq(
    upper: &[Scalar],
    lower: &[Scalar],
    z: Scalar,
    ctrl: &SeriesControl,
) -> Result<EvalOutcome> {
    ctrl.validate()?;
    let terminates = upper.iter().copied().filter_map(nonpositive_int).min();
    // (l)_n with l = -p first vanishes in the term of index p + 1.
    let pole = lower.iter().copied().filter_map(nonpositive_int).min();
    if let Some(p) = pole {
        match terminates {
            Some(k) if k <= p => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "lower parameter -{p} reaches a Pochhammer zero before the series terminates"
                )))
            }
        }
    }

    let step = |term: Scalar, n: usize| -> Scalar {
        let nf = n as f64;
        let mut num = z;
        for &u in upper {
            num *= u + nf;
        }
        let mut den = Scalar::new(nf + 1.0, 0.0);
        for &l in lower {
            den *= l + nf;
        }
        term * num / den
    };

    let mut acc = Kahan::default();
    acc.add(ONE);
    let mut term = ONE;

    if let Some(k) = terminates {
        let k = k as usize;
        for n in 0..k {
            term = step(term, n);
            acc.add(term);
        }
        let value = acc.value();
        if !value.is_finite() {
            return Err(Error::NonFinite("summing a terminating series".into()));
        }
        return Ok(EvalOutcome {
            value,
            terms: k + 1,
            est_error: 0.0,
            converged: true,
        });
    }

    let mut run = 0usize;
    for n in 0..ctrl.max_terms - 1 {
        term = step(term, n);
        acc.add(term);
        let t = term.norm();
        let s = acc.value().norm();
        if !t.is_finite() || !s.is_finite() {
            return Err(Error::NonFinite("summing a pFq series".into()));
        }
        if t <= ctrl.rel_tol * s {
            run += 1;
            if run >= ctrl.small_run {
                return Ok(EvalOutcome {
                    value: acc.value(),
                    terms: n + 2,
                    est_error: t * ctrl.small_run as f64,
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
            est_error: term.norm() * ctrl.small_run as f64,
            converged: false,
        },
    })
}

/// Terminating Gauss series `2F1(-k, β; γ; z)` as an exact (k+1)-term
/// polynomial sum, independent of any `SeriesControl`.
///
/// When the largest intermediate term dwarfs the float result (alternating
/// sums near unit argument can cancel twelve digits and more), the sum is
/// redone in exact Gaussian-rational arithmetic on the dyadic input values.
pub fn hyp2f1_terminating(k: usize, beta: Scalar, gamma: Scalar, z: Scalar) -> Result<Scalar> {
    if let Some(m) = nonpositive_int(gamma) {
        if (m as usize) < k {
            return Err(Error::InvalidParameter(format!(
                "lower parameter {gamma} has a Pochhammer zero within the degree-{k} sum"
            )));
        }
    }
    let mut acc = Kahan::default();
    let mut term = ONE;
    acc.add(term);
    let mut max_term = 1.0f64;
    let kf = k as f64;
    for j in 0..k {
        let jf = j as f64;
        term = term * (jf - kf) * (beta + jf) * z / ((gamma + jf) * (jf + 1.0));
        acc.add(term);
        max_term = max_term.max(term.norm());
    }
    let v = acc.value();
    let cancellation_heavy = !v.is_finite() || max_term > v.norm() * 1e3;
    if cancellation_heavy {
        if let Some(exact) = crate::exact::hyp2f1_terminating_exact(k, beta, gamma, z) {
            if exact.is_finite() {
                return Ok(exact);
            }
        }
    }
    if !v.is_finite() {
        return Err(Error::NonFinite("summing a terminating 2F1".into()));
    }
    Ok(v)
}

/// Unit-argument Gauss sum `2F1(a, b; c; 1)`.
///
/// For a nonpositive-integer `a = -k` the Γ-ratio is taken in its
/// Pochhammer form `(c-b)_k / (c)_k`, which avoids Γ at nonpositive
/// arguments and agrees with [`hyp2f1_terminating`] at `z = 1`. Otherwise
/// `Re(c-a-b) > 0` is required and log-gamma differences are used.
pub fn gauss_2f1_unit(a: Scalar, b: Scalar, c: Scalar) -> Result<Scalar> {
    if let Some(k) = nonpositive_int(a) {
        let k = k as usize;
        if let Some(m) = nonpositive_int(c) {
            if (m as usize) < k {
                return Err(Error::InvalidParameter(format!(
                    "lower parameter {c} has a Pochhammer zero within the degree-{k} sum"
                )));
            }
        }
        // factor-by-factor quotient: the two Pochhammer products overflow for
        // large k while their ratio stays representable
        let cb = c - b;
        let mut ratio = ONE;
        for i in 0..k {
            ratio *= (cb + i as f64) / (c + i as f64);
        }
        if !ratio.is_finite() {
            return Err(Error::NonFinite("forming the Pochhammer ratio".into()));
        }
        return Ok(ratio);
    }
    let s = c - a - b;
    if s.re <= 0.0 || s.re.is_nan() {
        return Err(Error::InvalidParameter(
            "unit-argument sum needs Re(c-a-b) > 0 or a terminating upper parameter".into(),
        ));
    }
    if nonpositive_int(c).is_some() {
        return Err(Error::InvalidParameter(format!(
            "parameter c = {c} is a Γ pole"
        )));
    }
    // Γ poles in the denominator give an exact zero through 1/Γ.
    if nonpositive_int(c - a).is_some() || nonpositive_int(c - b).is_some() {
        return Ok(ZERO);
    }
    let lg = ln_gamma(c) + ln_gamma(s) - ln_gamma(c - a) - ln_gamma(c - b);
    let v = lg.exp();
    if !v.is_finite() {
        return Err(Error::NonFinite("evaluating the Γ ratio".into()));
    }
    Ok(v)
}
