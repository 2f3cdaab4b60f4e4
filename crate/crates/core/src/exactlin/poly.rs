use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use super::{format_rational, Matrix, Rational};
use crate::error::Error;

/// Sparse multivariate polynomial over ℚ in a fixed, ordered set of variables.
///
/// Terms are keyed by exponent vectors of length `vars.len()`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Variables named `prefix1 … prefixN`.
    pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.add_term(e, Rational::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector has wrong length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point has wrong dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Terms from the leading one down, in graded lexicographic order.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        ts
    }

    /// Canonical scalar multiple: coprime integer coefficients and a positive
    /// leading coefficient. Two polynomials define the same hypersurface
    /// condition up to scaling iff their normalizations are equal.
    pub fn normalized(&self) -> Self {
        let Some((_, lead)) = self.sorted_terms().first().map(|(e, c)| ((*e).clone(), (*c).clone())) else {
            return self.clone();
        };
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut factor = Rational::new(den, g);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &k) in self.vars.iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// A quadratic condition `β(M, M) = 0` imposed on a matrix family.
pub enum QuadraticConstraint<'a> {
    /// `M·M = 0`.
    SquareIsZero,
    /// `β(M, M) = 0` for a caller-supplied bilinear map `β`.
    Bilinear(&'a dyn Fn(&Matrix, &Matrix) -> Matrix),
}

/// Expands a quadratic matrix condition over the family `t ↦ Σ tᵢ·Bᵢ`.
///
/// Each entry of `β(M(t), M(t)) = Σᵢⱼ tᵢtⱼ·β(Bᵢ, Bⱼ)` is a homogeneous
/// quadratic in `t₁ … t_p`. The returned list holds the distinct nonzero
/// entries, each [normalized](MultiPoly::normalized), in first-seen order
/// (row-major over the result matrix).
pub fn poly_expand_quadratic(family: &[Matrix], constraint: QuadraticConstraint<'_>) -> Result<Vec<MultiPoly>, Error> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    if let Some(bad) = family
        .iter()
        .position(|b| b.rows() != first.rows() || b.cols() != first.cols())
    {
        return Err(Error::Shape(format!(
            "family member {} is {}x{}, expected {}x{}",
            bad + 1,
            family[bad].rows(),
            family[bad].cols(),
            first.rows(),
            first.cols()
        )));
    }
    let beta = |a: &Matrix, b: &Matrix| -> Result<Matrix, Error> {
        match &constraint {
            QuadraticConstraint::SquareIsZero => a.mul(b),
            QuadraticConstraint::Bilinear(f) => Ok(f(a, b)),
        }
    };
    let p = family.len();
    let vars = MultiPoly::var_names("t", p);
    let mut products: Vec<((usize, usize), Matrix)> = Vec::new();
    for i in 0..p {
        for j in 0..p {
            products.push(((i, j), beta(&family[i], &family[j])?));
        }
    }
    let (rows, cols) = (products[0].1.rows(), products[0].1.cols());
    let mut out: Vec<MultiPoly> = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut poly = MultiPoly::zero(vars.clone());
            for ((i, j), m) in &products {
                let coeff = m.get(r, c);
                if coeff.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; p];
                e[*i] += 1;
                e[*j] += 1;
                poly.add_term(e, coeff.clone());
            }
            if poly.is_zero() {
                continue;
            }
            let poly = poly.normalized();
            if !out.contains(&poly) {
                out.push(poly);
            }
        }
    }
    Ok(out)
}
