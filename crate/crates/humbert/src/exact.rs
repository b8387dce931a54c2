//! Exact Gaussian-rational fallback for cancellation-heavy terminating sums.
//!
//! Every finite f64 is a dyadic rational, so a terminating hypergeometric
//! polynomial of f64 inputs has an exactly computable value. The float kernel
//! switches to this path when the largest intermediate term dwarfs the
//! result, which is where plain double summation loses digits (the unit
//! argument Vandermonde case is the worst offender).

use crate::kernels::Scalar;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Complex number with exact rational components.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CRat {
    re: BigRational,
    im: BigRational,
}

impl CRat {
    pub fn from_scalar(s: Scalar) -> Option<Self> {
        Some(Self {
            re: BigRational::from_float(s.re)?,
            im: BigRational::from_float(s.im)?,
        })
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn add_real(&self, r: i64) -> Self {
        Self {
            re: &self.re + BigRational::from_integer(r.into()),
            im: self.im.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// Division by a nonzero Gaussian rational.
    pub fn div(&self, o: &Self) -> Self {
        let norm = &o.re * &o.re + &o.im * &o.im;
        Self {
            re: (&self.re * &o.re + &self.im * &o.im) / &norm,
            im: (&self.im * &o.re - &self.re * &o.im) / &norm,
        }
    }
}

/// Exact value of the terminating sum Σ_{j=0..k} (−k)_j (β)_j / ((γ)_j j!) z^j.
///
/// Callers must have verified (γ)_j ≠ 0 for j ≤ k. Returns `None` only for
/// non-finite inputs.
pub(crate) fn hyp2f1_terminating_exact(
    k: usize,
    beta: Scalar,
    gamma: Scalar,
    z: Scalar,
) -> Option<Scalar> {
    let beta = CRat::from_scalar(beta)?;
    let gamma = CRat::from_scalar(gamma)?;
    let z = CRat::from_scalar(z)?;
    let mut term = CRat::one();
    let mut acc = CRat::one();
    for j in 0..k {
        let num = CRat::from_int(j as i64 - k as i64)
            .mul(&beta.add_real(j as i64))
            .mul(&z);
        let den = gamma.add_real(j as i64).mul(&CRat::from_int(j as i64 + 1));
        term = term.mul(&num).div(&den);
        if term.is_zero() {
            break; // a nonpositive-integer β truncated the polynomial early
        }
        acc = acc.add(&term);
    }
    Some(acc.to_scalar())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rational_division_round_trips() {
        let a = CRat::from_scalar(Scalar::new(3.5, -1.25)).unwrap();
        let b = CRat::from_scalar(Scalar::new(-0.75, 2.0)).unwrap();
        let q = a.mul(&b).div(&b);
        assert_eq!(q, a);
    }

    #[test]
    fn exact_terminating_sum_matches_hand_value() {
        // 2F1(-2, -2; 2; 1) = 1 + 2 + 1/3 = 10/3
        let v = hyp2f1_terminating_exact(
            2,
            Scalar::new(-2.0, 0.0),
            Scalar::new(2.0, 0.0),
            Scalar::new(1.0, 0.0),
        )
        .unwrap();
        assert!((v.re - 10.0 / 3.0).abs() <= 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn early_termination_on_zero_factor() {
        // β = -1 kills every term past j = 1 regardless of k
        let v = hyp2f1_terminating_exact(
            5,
            Scalar::new(-1.0, 0.0),
            Scalar::new(3.0, 0.0),
            Scalar::new(2.0, 0.0),
        )
        .unwrap();
        // 1 + (-5)(-1)(2)/(3·1) = 1 + 10/3
        assert!((v.re - (1.0 + 10.0 / 3.0)).abs() <= 1e-15);
    }
}
