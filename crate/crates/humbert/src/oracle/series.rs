//! Exact-rational truncated bivariate power series in (x, t).
//!
//! Under the substitution y = t·x every identity handled by the oracle
//! becomes a genuine power series in x and t with rational coefficients, so
//! both sides can be expanded and compared coefficient-by-coefficient without
//! any floating arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept reduced with positive denominator
/// (guaranteed by the underlying representation).
pub type Rational = BigRational;

/// Rising factorial `(a)_n` over the rationals.
pub fn poch_rational(a: &Rational, n: usize) -> Rational {
    let mut p = Rational::one();
    let mut f = a.clone();
    for _ in 0..n {
        p *= &f;
        f += Rational::one();
    }
    p
}

pub(crate) fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Monomial `coef · x^px · t^pt`. Every argument fed into the double-series
/// expanders (x, t·x, −t·x, t·x², x², …) has this shape, which keeps the
/// expansions finite: each power of the argument raises the x-degree.
#[derive(Debug, Clone)]
pub(crate) struct Monomial {
    pub coef: Rational,
    pub px: usize,
    pub pt: usize,
}

impl Monomial {
    pub fn new(coef: Rational, px: usize, pt: usize) -> Self {
        assert!(px >= 1, "expansion arguments must carry a positive x-power");
        Self { coef, px, pt }
    }
}

/// Dense bivariate series truncated to the box i ≤ dx (x-power), j ≤ dt (t-power).
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Series2 {
    dx: usize,
    dt: usize,
    c: Vec<Rational>,
}

impl Series2 {
    pub fn zero(dx: usize, dt: usize) -> Self {
        Self {
            dx,
            dt,
            c: vec![Rational::zero(); (dx + 1) * (dt + 1)],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dx, self.dt)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.dt + 1) + j
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.c[self.idx(i, j)]
    }

    /// Adds `v` to the (i, j) coefficient; silently drops out-of-box targets.
    pub fn add_at(&mut self, i: usize, j: usize, v: Rational) {
        if i <= self.dx && j <= self.dt {
            let k = self.idx(i, j);
            self.c[k] += v;
        }
    }

    /// Truncating product.
    pub fn mul(&self, o: &Series2) -> Series2 {
        assert_eq!((self.dx, self.dt), (o.dx, o.dt));
        let mut out = Series2::zero(self.dx, self.dt);
        for i1 in 0..=self.dx {
            for j1 in 0..=self.dt {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(self.dx - i1) {
                    for j2 in 0..=(self.dt - j1) {
                        let b = o.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let k = out.idx(i1 + i2, j1 + j2);
                        out.c[k] += a * b;
                    }
                }
            }
        }
        out
    }

    /// exp(coef · x^px · t^pt), truncated to the box. The exponent monomial
    /// must be non-constant so the expansion terminates.
    pub fn exp_monomial(coef: &Rational, px: usize, pt: usize, dx: usize, dt: usize) -> Series2 {
        assert!(px + pt >= 1, "exp of a constant does not truncate");
        let mut out = Series2::zero(dx, dt);
        let mut term = Rational::one();
        let mut j = 0usize;
        loop {
            let (ix, it) = (j * px, j * pt);
            if ix > dx || it > dt {
                break;
            }
            out.add_at(ix, it, term.clone());
            j += 1;
            term = term * coef / int(j as i64);
        }
        out
    }
}
