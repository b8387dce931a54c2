//! Exact-rational formal oracle.
//!
//! Expands both sides of each supported identity as a truncated bivariate
//! power series in (x, t) after the substitution y = t·x, entirely over the
//! rationals, and compares the coefficient tables. This certifies the
//! identities — and the adopted parameter corrections — independently of any
//! floating-point evaluation.
//!
//! The substitution turns every ratio argument into a polynomial object:
//! y/x = t, x²/y = x/t (whose Laurent part cancels against the outer (−t)^k
//! factor), x·y = t·x². For a fixed target degree box (i ≤ dx, j ≤ dt) the
//! contributing outer index of the 2F1-series forms is bounded by dx + dt,
//! which the expanders enforce, so every table entry is a finite exact sum.

mod series;

pub use series::{poch_rational, Rational};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;
use series::{factorial, int, Monomial, Series2};
use std::collections::BTreeMap;
use std::fmt;

/// Degree cap for formal expansions (cost guard).
pub const MAX_FORMAL_DEGREE: usize = 12;

/// The identities the oracle can expand. `Eq15Printed` is the rejected
/// parameterization of `Eq15`, kept so the mismatch is reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentityId {
    Eq13,
    Eq14,
    Eq15,
    Eq15Printed,
    Eq16,
    Eq33,
    Eq34,
    Bc3f3,
}

impl IdentityId {
    /// The identities listed by the CLI, in listing order.
    pub const LISTED: [IdentityId; 7] = [
        IdentityId::Eq13,
        IdentityId::Eq14,
        IdentityId::Eq15,
        IdentityId::Eq16,
        IdentityId::Eq33,
        IdentityId::Eq34,
        IdentityId::Bc3f3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Eq13 => "eq13",
            IdentityId::Eq14 => "eq14",
            IdentityId::Eq15 => "eq15",
            IdentityId::Eq15Printed => "eq15printed",
            IdentityId::Eq16 => "eq16",
            IdentityId::Eq33 => "eq33",
            IdentityId::Eq34 => "eq34",
            IdentityId::Bc3f3 => "bc3f3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "eq13" => Some(IdentityId::Eq13),
            "eq14" => Some(IdentityId::Eq14),
            "eq15" => Some(IdentityId::Eq15),
            "eq15printed" => Some(IdentityId::Eq15Printed),
            "eq16" => Some(IdentityId::Eq16),
            "eq33" => Some(IdentityId::Eq33),
            "eq34" => Some(IdentityId::Eq34),
            "bc3f3" => Some(IdentityId::Bc3f3),
            _ => None,
        }
    }

    /// Human-readable statement of the identity (with y = t·x undone).
    pub fn formula(&self) -> &'static str {
        match self {
            IdentityId::Eq13 => "Psi2(b; b,c; x,y) = exp(x+y) Phi3(c-b; c; -y, x*y)",
            IdentityId::Eq14 => {
                "Psi2(a; b,c; x,y) = sum_k (a)_k/(b)_k 2F1(-k, -k-b+1; c; y/x) x^k/k!"
            }
            IdentityId::Eq15 | IdentityId::Eq15Printed => {
                "Phi3(b; c; x,y) = exp(x+y/x) sum_k (-y/x)^k/k! 2F1(-k, -k-c+b+1; c; x^2/y)"
            }
            IdentityId::Eq16 => {
                "Phi2(a,b; c; x,y) = sum_m (a)_m/(c)_m 2F1(-m, b; 1-a-m; y/x) x^m/m!"
            }
            IdentityId::Eq33 => "Phi3(b; c; x,x^2) = exp(2x) 2F2(c-b/2, c-b/2-1/2; c, 2c-b-1; -4x)",
            IdentityId::Eq34 => "Psi2(b; b,2b; x,x) = 2F2(3b/2, (3b-1)/2; 2b, 3b-1; 4x)",
            IdentityId::Bc3f3 => "Psi2(a; b,c; x,x) = 3F3(a, (c+b)/2, (c+b-1)/2; b, c, c+b-1; 4x)",
        }
    }

    /// Adopted correction relative to the commonly printed form, if any.
    pub fn correction(&self) -> Option<&'static str> {
        match self {
            IdentityId::Eq13 => Some(
                "right side read as the one-upper-parameter series Phi3; \
                 the two-parameter reading does not match the expansion",
            ),
            IdentityId::Eq15 => Some(
                "upper parameter -k-c+b+1 (printed -k-b+1 is available as eq15printed \
                 and fails the coefficient comparison); single (-y/x)^k/k! outer factor",
            ),
            IdentityId::Eq15Printed => Some("rejected variant of eq15, kept for comparison"),
            IdentityId::Bc3f3 => Some("left side bound as Psi2(a; b, c; x, x)"),
            _ => None,
        }
    }

    /// Parameter names the identity requires.
    pub fn required_params(&self) -> &'static [&'static str] {
        match self {
            IdentityId::Eq13 | IdentityId::Eq15 | IdentityId::Eq15Printed | IdentityId::Eq33 => {
                &["b", "c"]
            }
            IdentityId::Eq34 => &["b"],
            IdentityId::Eq14 | IdentityId::Eq16 | IdentityId::Bc3f3 => &["a", "b", "c"],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

/// Rational parameter values for one identity instance.
#[derive(Debug, Clone, Default)]
pub struct IdentityParams {
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub c: Option<Rational>,
}

impl IdentityParams {
    pub fn from_integers(a: Option<i64>, b: Option<i64>, c: Option<i64>) -> Self {
        Self {
            a: a.map(int),
            b: b.map(int),
            c: c.map(int),
        }
    }

    pub fn from_ratios(
        a: Option<(i64, i64)>,
        b: Option<(i64, i64)>,
        c: Option<(i64, i64)>,
    ) -> Self {
        let r = |(n, d): (i64, i64)| Rational::new(BigInt::from(n), BigInt::from(d));
        Self {
            a: a.map(r),
            b: b.map(r),
            c: c.map(r),
        }
    }

    fn get(&self, name: &str) -> Option<&Rational> {
        match name {
            "a" => self.a.as_ref(),
            "b" => self.b.as_ref(),
            "c" => self.c.as_ref(),
            _ => None,
        }
    }

    fn need(&self, name: &str) -> Result<&Rational> {
        self.get(name)
            .ok_or_else(|| Error::Config(format!("identity requires parameter '{name}'")))
    }
}

/// Exact-rational bivariate coefficient table; absent keys mean zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalCoeffTable {
    pub max_deg_x: usize,
    pub max_deg_t: usize,
    pub coeff: BTreeMap<(usize, usize), Rational>,
}

impl RationalCoeffTable {
    fn from_series(s: &Series2) -> Self {
        let (dx, dt) = s.dims();
        let mut coeff = BTreeMap::new();
        for i in 0..=dx {
            for j in 0..=dt {
                let v = s.get(i, j);
                if !v.is_zero() {
                    coeff.insert((i, j), v.clone());
                }
            }
        }
        Self {
            max_deg_x: dx,
            max_deg_t: dt,
            coeff,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.coeff
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Exact evaluation of the truncated series at rational (x, t).
    pub fn eval(&self, x: &Rational, t: &Rational) -> Rational {
        let mut xp = vec![Rational::one()];
        for _ in 0..self.max_deg_x {
            let last = xp.last().unwrap() * x;
            xp.push(last);
        }
        let mut tp = vec![Rational::one()];
        for _ in 0..self.max_deg_t {
            let last = tp.last().unwrap() * t;
            tp.push(last);
        }
        let mut acc = Rational::zero();
        for (&(i, j), v) in &self.coeff {
            acc += v * &xp[i] * &tp[j];
        }
        acc
    }
}

/// Lowest-total-degree coefficient disagreement.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub deg_x: usize,
    pub deg_t: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of a coefficient-wise comparison of both sides of an identity.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub identity: IdentityId,
    pub params: IdentityParams,
    pub max_deg_x: usize,
    pub max_deg_t: usize,
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let mut params = serde_json::Map::new();
        for name in ["a", "b", "c"] {
            if let Some(v) = self.params.get(name) {
                params.insert(name.into(), json!(v.to_string()));
            }
        }
        json!({
            "identity": self.identity.as_str(),
            "params": params,
            "max_deg_x": self.max_deg_x,
            "max_deg_t": self.max_deg_t,
            "equal": self.equal,
            "first_mismatch": self.first_mismatch.as_ref().map(|m| json!({
                "deg_x": m.deg_x,
                "deg_t": m.deg_t,
                "lhs": m.lhs.to_string(),
                "rhs": m.rhs.to_string(),
            })),
        })
    }
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Config(format!("'{s}' is not a rational (expected p or p/q)"));
    let mut parts = s.splitn(2, '/');
    let p: i64 = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    match parts.next() {
        None => Ok(int(p)),
        Some(q) => {
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
        }
    }
}

fn poch_nonzero(a: &Rational, n: usize, what: &str) -> Result<Rational> {
    let p = poch_rational(a, n);
    if p.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "({what})_{n} vanishes: parameter sits on a pole"
        )));
    }
    Ok(p)
}

/// Σ (a)_{n+k} / ((b)_n (c)_k) · xa^n ya^k / (n! k!)
fn psi2_series(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    xa: &Monomial,
    ya: &Monomial,
    dx: usize,
    dt: usize,
) -> Result<Series2> {
    let mut out = Series2::zero(dx, dt);
    let mut cxn = Rational::one();
    let mut n = 0usize;
    loop {
        let (ix, jx) = (n * xa.px, n * xa.pt);
        if ix > dx || jx > dt {
            break;
        }
        let mut cyk = Rational::one();
        let mut k = 0usize;
        loop {
            let (i, j) = (ix + k * ya.px, jx + k * ya.pt);
            if i > dx || j > dt {
                break;
            }
            let num = poch_rational(a, n + k) * &cxn * &cyk;
            let den =
                poch_nonzero(b, n, "b")? * poch_nonzero(c, k, "c")? * factorial(n) * factorial(k);
            out.add_at(i, j, num / den);
            k += 1;
            cyk *= &ya.coef;
        }
        n += 1;
        cxn *= &xa.coef;
    }
    Ok(out)
}

/// Σ (b)_n / (c)_{n+k} · xa^n ya^k / (n! k!)
fn phi3_series(
    b: &Rational,
    c: &Rational,
    xa: &Monomial,
    ya: &Monomial,
    dx: usize,
    dt: usize,
) -> Result<Series2> {
    let mut out = Series2::zero(dx, dt);
    let mut cxn = Rational::one();
    let mut n = 0usize;
    loop {
        let (ix, jx) = (n * xa.px, n * xa.pt);
        if ix > dx || jx > dt {
            break;
        }
        let mut cyk = Rational::one();
        let mut k = 0usize;
        loop {
            let (i, j) = (ix + k * ya.px, jx + k * ya.pt);
            if i > dx || j > dt {
                break;
            }
            let num = poch_rational(b, n) * &cxn * &cyk;
            let den = poch_nonzero(c, n + k, "c")? * factorial(n) * factorial(k);
            out.add_at(i, j, num / den);
            k += 1;
            cyk *= &ya.coef;
        }
        n += 1;
        cxn *= &xa.coef;
    }
    Ok(out)
}

/// Σ (a)_m (b)_n / (c)_{m+n} · xa^m ya^n / (m! n!)
fn phi2_series(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    xa: &Monomial,
    ya: &Monomial,
    dx: usize,
    dt: usize,
) -> Result<Series2> {
    let mut out = Series2::zero(dx, dt);
    let mut cxm = Rational::one();
    let mut m = 0usize;
    loop {
        let (ix, jx) = (m * xa.px, m * xa.pt);
        if ix > dx || jx > dt {
            break;
        }
        let mut cyn = Rational::one();
        let mut n = 0usize;
        loop {
            let (i, j) = (ix + n * ya.px, jx + n * ya.pt);
            if i > dx || j > dt {
                break;
            }
            let num = poch_rational(a, m) * poch_rational(b, n) * &cxm * &cyn;
            let den = poch_nonzero(c, m + n, "c")? * factorial(m) * factorial(n);
            out.add_at(i, j, num / den);
            n += 1;
            cyn *= &ya.coef;
        }
        m += 1;
        cxm *= &xa.coef;
    }
    Ok(out)
}

/// Σ_n Π(u)_n / Π(l)_n · (zcoef · x)^n / n!, univariate in x.
fn pfq_series(
    upper: &[Rational],
    lower: &[Rational],
    zcoef: &Rational,
    dx: usize,
    dt: usize,
) -> Result<Series2> {
    let mut out = Series2::zero(dx, dt);
    let mut zn = Rational::one();
    for n in 0..=dx {
        let mut num = poch_rational(&Rational::one(), 0);
        for u in upper {
            num *= poch_rational(u, n);
        }
        let mut den = factorial(n);
        for l in lower {
            den *= poch_nonzero(l, n, "lower")?;
        }
        out.add_at(n, 0, num * &zn / den);
        zn *= zcoef;
    }
    Ok(out)
}

fn mono(coef: Rational, px: usize, pt: usize) -> Monomial {
    Monomial::new(coef, px, pt)
}

/// Σ_k prefix(k) Σ_m inner(k, m) x^{xk(k,m)} t^{tk(k,m)} for the 2F1-series
/// right sides; each caller supplies the exact coefficient of one (k, m) cell.
fn sum_2f1_form(
    dx: usize,
    dt: usize,
    k_max: usize,
    mut cell: impl FnMut(usize, usize) -> Result<Option<(usize, usize, Rational)>>,
) -> Result<Series2> {
    let mut out = Series2::zero(dx, dt);
    for k in 0..=k_max {
        for m in 0..=k {
            if let Some((i, j, v)) = cell(k, m)? {
                out.add_at(i, j, v);
            }
        }
    }
    Ok(out)
}

fn expand_side(
    id: IdentityId,
    side: Side,
    params: &IdentityParams,
    dx: usize,
    dt: usize,
) -> Result<Series2> {
    let one = Rational::one;
    let x_arg = || mono(one(), 1, 0); // x
    let tx_arg = || mono(one(), 1, 1); // y = t·x
    match (id, side) {
        (IdentityId::Eq13, Side::Lhs) => {
            let (b, c) = (params.need("b")?, params.need("c")?);
            psi2_series(b, b, c, &x_arg(), &tx_arg(), dx, dt)
        }
        (IdentityId::Eq13, Side::Rhs) => {
            // exp(x + y) Phi3(c-b; c; -y, x·y) with y = t·x
            let (b, c) = (params.need("b")?, params.need("c")?);
            let phi = phi3_series(&(c - b), c, &mono(-one(), 1, 1), &mono(one(), 2, 1), dx, dt)?;
            let e = Series2::exp_monomial(&one(), 1, 0, dx, dt).mul(&Series2::exp_monomial(
                &one(),
                1,
                1,
                dx,
                dt,
            ));
            Ok(e.mul(&phi))
        }
        (IdentityId::Eq14, Side::Lhs) => {
            let (a, b, c) = (params.need("a")?, params.need("b")?, params.need("c")?);
            psi2_series(a, b, c, &x_arg(), &tx_arg(), dx, dt)
        }
        (IdentityId::Eq14, Side::Rhs) => {
            // Σ_k (a)_k/(b)_k ₂F₁(-k, -k-b+1; c; t) x^k / k!
            let (a, b, c) = (params.need("a")?, params.need("b")?, params.need("c")?);
            sum_2f1_form(dx, dt, dx, |k, m| {
                if k > dx || m > dt {
                    return Ok(None);
                }
                let outer = poch_rational(a, k) / (poch_nonzero(b, k, "b")? * factorial(k));
                let beta = int(1 - k as i64) - b;
                let inner = poch_rational(&int(-(k as i64)), m) * poch_rational(&beta, m)
                    / (poch_nonzero(c, m, "c")? * factorial(m));
                Ok(Some((k, m, outer * inner)))
            })
        }
        (IdentityId::Eq15, Side::Lhs) | (IdentityId::Eq15Printed, Side::Lhs) => {
            let (b, c) = (params.need("b")?, params.need("c")?);
            phi3_series(b, c, &x_arg(), &tx_arg(), dx, dt)
        }
        (IdentityId::Eq15, Side::Rhs) | (IdentityId::Eq15Printed, Side::Rhs) => {
            // exp(x + t) Σ_k (−t)^k/k! ₂F₁(−k, β_k; c; x/t); the (x/t)^m factor
            // cancels against t^k, landing at x^m t^{k−m}. Contributions to the
            // (dx, dt) box therefore have k ≤ dx + dt.
            let (b, c) = (params.need("b")?, params.need("c")?);
            let printed = id == IdentityId::Eq15Printed;
            let s = sum_2f1_form(dx, dt, dx + dt, |k, m| {
                if m > dx || k - m > dt {
                    return Ok(None);
                }
                let beta = if printed {
                    int(1 - k as i64) - b
                } else {
                    int(1 - k as i64) - c + b
                };
                let sign = if k % 2 == 0 { one() } else { -one() };
                let v = sign * poch_rational(&int(-(k as i64)), m) * poch_rational(&beta, m)
                    / (poch_nonzero(c, m, "c")? * factorial(m) * factorial(k));
                Ok(Some((m, k - m, v)))
            })?;
            let e = Series2::exp_monomial(&one(), 1, 0, dx, dt).mul(&Series2::exp_monomial(
                &one(),
                0,
                1,
                dx,
                dt,
            ));
            Ok(e.mul(&s))
        }
        (IdentityId::Eq16, Side::Lhs) => {
            let (a, b, c) = (params.need("a")?, params.need("b")?, params.need("c")?);
            phi2_series(a, b, c, &x_arg(), &tx_arg(), dx, dt)
        }
        (IdentityId::Eq16, Side::Rhs) => {
            // Σ_m (a)_m/(c)_m ₂F₁(-m, b; 1-a-m; t) x^m / m!
            let (a, b, c) = (params.need("a")?, params.need("b")?, params.need("c")?);
            sum_2f1_form(dx, dt, dx, |m, j| {
                if m > dx || j > dt {
                    return Ok(None);
                }
                let outer = poch_rational(a, m) / (poch_nonzero(c, m, "c")? * factorial(m));
                let gamma = int(1 - m as i64) - a;
                let inner = poch_rational(&int(-(m as i64)), j) * poch_rational(b, j)
                    / (poch_nonzero(&gamma, j, "1-a-m")? * factorial(j));
                Ok(Some((m, j, outer * inner)))
            })
        }
        (IdentityId::Eq33, Side::Lhs) => {
            let (b, c) = (params.need("b")?, params.need("c")?);
            phi3_series(b, c, &x_arg(), &mono(one(), 2, 0), dx, dt)
        }
        (IdentityId::Eq33, Side::Rhs) => {
            let (b, c) = (params.need("b")?, params.need("c")?);
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let upper = [c - b * &half, c - b * &half - &half];
            let lower = [c.clone(), c + c - b - one()];
            let f = pfq_series(&upper, &lower, &int(-4), dx, dt)?;
            Ok(Series2::exp_monomial(&int(2), 1, 0, dx, dt).mul(&f))
        }
        (IdentityId::Eq34, Side::Lhs) => {
            let b = params.need("b")?;
            psi2_series(b, b, &(b + b), &x_arg(), &mono(one(), 1, 0), dx, dt)
        }
        (IdentityId::Eq34, Side::Rhs) => {
            let b = params.need("b")?;
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let three_b = b + b + b;
            let upper = [&three_b * &half, (&three_b - one()) * &half];
            let lower = [b + b, three_b - one()];
            pfq_series(&upper, &lower, &int(4), dx, dt)
        }
        (IdentityId::Bc3f3, Side::Lhs) => {
            let (a, b, c) = (params.need("a")?, params.need("b")?, params.need("c")?);
            psi2_series(a, b, c, &x_arg(), &mono(one(), 1, 0), dx, dt)
        }
        (IdentityId::Bc3f3, Side::Rhs) => {
            let (a, b, c) = (params.need("a")?, params.need("b")?, params.need("c")?);
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let upper = [a.clone(), (c + b) * &half, (c + b - one()) * &half];
            let lower = [b.clone(), c.clone(), c + b - one()];
            pfq_series(&upper, &lower, &int(4), dx, dt)
        }
    }
}

/// Expands one side of an identity to an exact coefficient table.
pub fn expand_formal(
    id: IdentityId,
    side: Side,
    params: &IdentityParams,
    max_deg_x: usize,
    max_deg_t: usize,
) -> Result<RationalCoeffTable> {
    if max_deg_x > MAX_FORMAL_DEGREE || max_deg_t > MAX_FORMAL_DEGREE {
        return Err(Error::CapExceeded(format!(
            "requested degrees ({max_deg_x}, {max_deg_t}) exceed the cap {MAX_FORMAL_DEGREE}"
        )));
    }
    for name in id.required_params() {
        params.need(name)?;
    }
    let s = expand_side(id, side, params, max_deg_x, max_deg_t)?;
    Ok(RationalCoeffTable::from_series(&s))
}

/// Expands both sides and compares every coefficient exactly. The reported
/// mismatch, if any, is the lowest-total-degree disagreement.
pub fn compare_formal(
    id: IdentityId,
    params: &IdentityParams,
    max_deg_x: usize,
    max_deg_t: usize,
) -> Result<Certificate> {
    let lhs = expand_formal(id, Side::Lhs, params, max_deg_x, max_deg_t)?;
    let rhs = expand_formal(id, Side::Rhs, params, max_deg_x, max_deg_t)?;
    let mut keys: Vec<(usize, usize)> = lhs.coeff.keys().chain(rhs.coeff.keys()).copied().collect();
    keys.sort_by_key(|&(i, j)| (i + j, i, j));
    keys.dedup();
    let mut first_mismatch = None;
    for (i, j) in keys {
        let l = lhs.get(i, j);
        let r = rhs.get(i, j);
        if l != r {
            first_mismatch = Some(Mismatch {
                deg_x: i,
                deg_t: j,
                lhs: l,
                rhs: r,
            });
            break;
        }
    }
    Ok(Certificate {
        identity: id,
        params: params.clone(),
        max_deg_x,
        max_deg_t,
        equal: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn psi2_low_degree_table() {
        // Ψ₂(1; 1, 2; x, y) = 1 + x + y/2 + x²/2 + xy + y²/6 + O(deg 3);
        // under y = t·x the keys are (n+k, k).
        let p = IdentityParams::from_integers(None, Some(1), Some(2));
        let t = expand_formal(IdentityId::Eq13, Side::Lhs, &p, 2, 2).unwrap();
        assert_eq!(t.get(0, 0), rat(1, 1));
        assert_eq!(t.get(1, 0), rat(1, 1)); // x
        assert_eq!(t.get(1, 1), rat(1, 2)); // y/2
        assert_eq!(t.get(2, 0), rat(1, 2)); // x²/2
        assert_eq!(t.get(2, 1), rat(1, 1)); // x·y
        assert_eq!(t.get(2, 2), rat(1, 6)); // y²/6
    }

    #[test]
    fn eq13_right_side_matches_left_table() {
        let p = IdentityParams::from_integers(None, Some(1), Some(2));
        let lhs = expand_formal(IdentityId::Eq13, Side::Lhs, &p, 2, 2).unwrap();
        let rhs = expand_formal(IdentityId::Eq13, Side::Rhs, &p, 2, 2).unwrap();
        assert_eq!(lhs.coeff, rhs.coeff);
    }

    #[test]
    fn eq34_constant_term() {
        let p = IdentityParams::from_integers(None, Some(1), None);
        for side in [Side::Lhs, Side::Rhs] {
            let t = expand_formal(IdentityId::Eq34, side, &p, 0, 0).unwrap();
            assert_eq!(t.get(0, 0), rat(1, 1));
        }
    }

    #[test]
    fn eq15_corrected_form_certified() {
        let p = IdentityParams::from_integers(None, Some(1), Some(2));
        let cert = compare_formal(IdentityId::Eq15, &p, 6, 6).unwrap();
        assert!(cert.equal, "mismatch: {:?}", cert.first_mismatch);
    }

    #[test]
    fn eq15_printed_form_rejected() {
        // b ≠ c-1 and c ≠ 2b so the two parameterizations genuinely differ
        let p = IdentityParams::from_integers(None, Some(1), Some(3));
        let cert = compare_formal(IdentityId::Eq15Printed, &p, 6, 6).unwrap();
        assert!(!cert.equal);
        let m = cert.first_mismatch.unwrap();
        assert!(m.deg_x + m.deg_t <= 2, "mismatch unexpectedly deep: {m:?}");
    }

    #[test]
    fn eq14_certified_at_low_degree() {
        let p = IdentityParams::from_integers(Some(1), Some(1), Some(2));
        let cert = compare_formal(IdentityId::Eq14, &p, 4, 4).unwrap();
        assert!(cert.equal, "mismatch: {:?}", cert.first_mismatch);
    }

    #[test]
    fn rational_parameters_work() {
        let p = IdentityParams::from_ratios(None, Some((1, 2)), Some((5, 2)));
        let cert = compare_formal(IdentityId::Eq15, &p, 5, 5).unwrap();
        assert!(cert.equal);
    }

    #[test]
    fn degree_cap_enforced() {
        let p = IdentityParams::from_integers(None, Some(1), Some(2));
        let err = expand_formal(IdentityId::Eq15, Side::Lhs, &p, 13, 2).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn pole_parameters_rejected() {
        let p = IdentityParams::from_integers(None, Some(1), Some(-2));
        let err = compare_formal(IdentityId::Eq15, &p, 4, 4).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        // eq33 with 2c-b-1 = 0
        let p = IdentityParams::from_integers(None, Some(1), Some(1));
        let err = compare_formal(IdentityId::Eq33, &p, 4, 4).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn missing_parameter_is_config_error() {
        let p = IdentityParams::from_integers(None, Some(1), None);
        let err = compare_formal(IdentityId::Eq15, &p, 4, 4).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-7/4").unwrap(), rat(-7, 4));
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let p = IdentityParams::from_integers(None, Some(1), Some(2));
        let cert = compare_formal(IdentityId::Eq15, &p, 4, 4).unwrap();
        let v = cert.to_json();
        assert_eq!(v["identity"], "eq15");
        assert_eq!(v["equal"], true);
        assert_eq!(v["params"]["b"], "1");
        assert!(v["first_mismatch"].is_null());
    }
}
