//! Exact arithmetic over ℚ: scalars, dense vectors, matrices, rank-3 tensors
//! and small multivariate polynomials.
//!
//! Nothing in here ever rounds. Scalars are [`num::BigRational`] values, which
//! are kept in lowest terms with a positive denominator.

mod matrix;
mod poly;
mod tensor;

pub use matrix::{nullspace, Matrix};
pub use poly::{poly_expand_quadratic, MultiPoly, QuadraticConstraint};
pub use tensor::Tensor3;

use num::{BigInt, One, Zero};

use crate::error::Error;

/// Exact rational scalar.
pub type Rational = num::BigRational;

/// Coordinate vector with respect to a fixed basis.
pub type Vector = Vec<Rational>;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Parses a comma separated list such as `"1,0,1/2"`. The empty string is the
/// empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn add_assign(acc: &mut [Rational], b: &[Rational]) {
    for (x, y) in acc.iter_mut().zip(b) {
        *x += y;
    }
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales `v` by a positive factor so that its entries are coprime integers.
/// The zero vector is returned unchanged.
pub fn clear_denominators(v: &[Rational]) -> Vector {
    use num::Integer;
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let mut num_gcd = BigInt::zero();
    for x in v {
        let n = x.numer() * (&den / x.denom());
        num_gcd = num_gcd.gcd(&n);
    }
    let factor = Rational::new(den, num_gcd);
    v.iter().map(|x| x * &factor).collect()
}
