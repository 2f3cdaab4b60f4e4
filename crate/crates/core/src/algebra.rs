//! Finite-dimensional algebras given by structure constants, and the basic
//! predicates on them: the Zinbiel identity, subalgebras and ideals,
//! homomorphisms, and change of basis.

use num::Zero;

use crate::error::Error;
use crate::exactlin::{add, unit, Matrix, Rational, Tensor3, Vector};
use crate::report::{self, CheckReport, Condition};

/// An algebra `eᵢ·eⱼ = Σₖ mult[i][j][k]·eₖ` over ℚ.
///
/// Nothing here forces the Zinbiel identity; ask [`Algebra::is_zinbiel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    mult: Tensor3,
    names: Option<Vec<String>>,
}

/// Which closure property [`Algebra::subspace_check`] tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceMode {
    Subalgebra,
    /// Two-sided ideal.
    Ideal,
}

impl Algebra {
    pub fn new(mult: Tensor3) -> Result<Self, Error> {
        let (a, b, c) = mult.dims();
        if a != b || b != c {
            return Err(Error::Shape(format!(
                "structure constants must be n x n x n, got {a} x {b} x {c}"
            )));
        }
        Ok(Self { mult, names: None })
    }

    /// The algebra with zero multiplication.
    pub fn null(dim: usize) -> Self {
        Self {
            mult: Tensor3::zeros(dim, dim, dim),
            names: None,
        }
    }

    /// Builds an algebra from nonzero products `(i, j, k, c)` meaning
    /// `eᵢ·eⱼ` has coefficient `c` on `eₖ`. Indices are 1-based.
    pub fn from_table(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self, Error> {
        let mut mult = Tensor3::zeros(dim, dim, dim);
        for (i, j, k, c) in entries {
            if [*i, *j, *k].iter().any(|&x| x == 0 || x > dim) {
                return Err(Error::Shape(format!("index ({i},{j},{k}) out of range 1..={dim}")));
            }
            mult.set(i - 1, j - 1, k - 1, c.clone());
        }
        Ok(Self { mult, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, Error> {
        if names.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} basis names for a {}-dimensional algebra",
                names.len(),
                self.dim()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.mult.dims().0
    }

    pub fn mult(&self) -> &Tensor3 {
        &self.mult
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.mult.apply(a, b)
    }

    /// Product of basis vectors `eᵢ·eⱼ`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        self.mult.slot(i, j)
    }

    /// `(x·y)·z = x·(y·z + z·y)` on all basis triples.
    pub fn is_zinbiel(&self) -> CheckReport {
        report::run(&[self.zinbiel_condition("Zinbiel")])
    }

    pub(crate) fn zinbiel_condition(&self, label: &str) -> Condition<'_> {
        let n = self.dim();
        Condition::new(label, "x,y,z", &[n, n, n], move |t| {
            let (x, y, z) = (unit(n, t[0]), unit(n, t[1]), unit(n, t[2]));
            let lhs = self.mul(&self.mul(&x, &y), &z);
            let rhs = self.mul(&x, &add(&self.mul(&y, &z), &self.mul(&z, &y)));
            (lhs, rhs)
        })
    }

    /// Whether the span of the rows of `basis` is a subalgebra (or a
    /// two-sided ideal) of `self`.
    pub fn subspace_check(&self, basis: &Matrix, mode: SubspaceMode) -> Result<bool, Error> {
        let n = self.dim();
        if basis.cols() != n {
            return Err(Error::Shape(format!(
                "basis vectors have length {}, algebra has dimension {n}",
                basis.cols()
            )));
        }
        if basis.rank() != basis.rows() {
            return Err(Error::Dependent("subspace basis rows".into()));
        }
        let span = Span::new(basis);
        let vectors = basis.row_vectors();
        let ok = match mode {
            SubspaceMode::Subalgebra => vectors
                .iter()
                .all(|a| vectors.iter().all(|b| span.contains(&self.mul(a, b)))),
            SubspaceMode::Ideal => vectors.iter().all(|a| {
                (0..n).all(|k| {
                    let e = unit(n, k);
                    span.contains(&self.mul(a, &e)) && span.contains(&self.mul(&e, a))
                })
            }),
        };
        Ok(ok)
    }

    /// Checks `φ(x·y) = φ(x)·φ(y)` on basis pairs, where `phi` is a
    /// `dim(target) × dim(self)` matrix.
    pub fn is_homomorphism(&self, target: &Algebra, phi: &Matrix) -> Result<CheckReport, Error> {
        let (n, m) = (self.dim(), target.dim());
        if phi.rows() != m || phi.cols() != n {
            return Err(Error::Shape(format!(
                "map must be {m}x{n}, got {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        let cond = Condition::new("hom", "x,y", &[n, n], |t| {
            let lhs = phi.apply(self.basis_product(t[0], t[1]));
            let rhs = target.mul(&phi.column(t[0]), &phi.column(t[1]));
            (lhs, rhs)
        });
        Ok(report::run(&[cond]))
    }

    /// Whether `phi` is a bijective homomorphism `self → target`.
    pub fn is_isomorphism(&self, target: &Algebra, phi: &Matrix) -> Result<bool, Error> {
        Ok(phi.is_invertible() && self.is_homomorphism(target, phi)?.passed)
    }

    /// Structure constants with respect to the basis formed by the columns
    /// of `p` (written in the current coordinates).
    ///
    /// `p` is then an isomorphism from the returned algebra onto `self`.
    pub fn change_of_basis(&self, p: &Matrix) -> Result<Algebra, Error> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::Shape(format!("change of basis must be {n}x{n}")));
        }
        let inv = p.inverse().ok_or_else(|| Error::Singular("change of basis".into()))?;
        let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
        let mult = Tensor3::from_fn(n, n, n, |i, j| inv.apply(&self.mul(&cols[i], &cols[j])));
        Ok(Algebra { mult, names: None })
    }

    /// The algebra on `self ⊕ other` with no mixed products.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let mut mult = Tensor3::zeros(n + m, n + m, n + m);
        for ((i, j, k), c) in self.mult.nonzero_entries() {
            mult.set(i, j, k, c.clone());
        }
        for ((i, j, k), c) in other.mult.nonzero_entries() {
            mult.set(n + i, n + j, n + k, c.clone());
        }
        Algebra { mult, names: None }
    }

    pub fn is_null(&self) -> bool {
        self.mult.is_zero()
    }
}

/// Membership test for the row span of a matrix with independent rows.
pub(crate) struct Span {
    basis: Matrix,
    rank: usize,
}

impl Span {
    pub(crate) fn new(basis: &Matrix) -> Self {
        Self {
            basis: basis.clone(),
            rank: basis.rank(),
        }
    }

    pub(crate) fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.row_vectors();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, v.len()).is_ok_and(|m| m.rank() == self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::int;

    fn rows(r: &[&[i64]]) -> Matrix {
        let cols = r.first().map_or(0, |x| x.len());
        Matrix::from_rows(r.iter().map(|x| x.iter().map(|&v| int(v)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn a1_is_zinbiel() {
        assert!(catalog::a1().is_zinbiel().passed);
    }

    #[test]
    fn null_algebras_are_zinbiel() {
        for n in 0..4 {
            assert!(Algebra::null(n).is_zinbiel().passed);
        }
    }

    #[test]
    fn idempotent_line_fails_with_witness() {
        // e·e = e: (e·e)·e = e but e·(e·e + e·e) = 2e.
        let a = Algebra::from_table(1, &[(1, 1, 1, int(1))]).unwrap();
        let report = a.is_zinbiel();
        assert!(!report.passed);
        let w = report.condition_results[0].witness.as_ref().unwrap();
        assert_eq!(w.basis_tuple, vec![0, 0, 0]);
        assert_eq!(w.lhs_value, vec![int(1)]);
        assert_eq!(w.rhs_value, vec![int(2)]);
    }

    #[test]
    fn subspace_examples() {
        let a6 = catalog::a6();
        assert!(a6
            .subspace_check(&rows(&[&[0, 1, 0], &[0, 0, 1]]), SubspaceMode::Subalgebra)
            .unwrap());
        let a1 = catalog::a1();
        assert!(a1.subspace_check(&rows(&[&[0, 0, 1]]), SubspaceMode::Ideal).unwrap());
        assert!(a1.subspace_check(&Matrix::identity(3), SubspaceMode::Ideal).unwrap());
        // span{e1} in A1 is not closed: e1·e1 = e3
        assert!(!a1
            .subspace_check(&rows(&[&[1, 0, 0]]), SubspaceMode::Subalgebra)
            .unwrap());
        assert!(matches!(
            a1.subspace_check(&rows(&[&[1, 0, 0], &[2, 0, 0]]), SubspaceMode::Subalgebra),
            Err(Error::Dependent(_))
        ));
    }

    #[test]
    fn homomorphism_examples() {
        let a1 = catalog::a1();
        assert!(a1.is_homomorphism(&a1, &Matrix::identity(3)).unwrap().passed);
        assert!(a1.is_homomorphism(&a1, &Matrix::zeros(3, 3)).unwrap().passed);
        let swap = rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let report = a1.is_homomorphism(&a1, &swap).unwrap();
        assert!(!report.passed);
        let w = report.condition_results[0].witness.as_ref().unwrap();
        // φ(e1·e1) = e3, φ(e1)·φ(e1) = e2·e2 = 0
        assert_eq!(w.basis_tuple, vec![0, 0]);
        assert_eq!(w.lhs_value, vec![int(0), int(0), int(1)]);
        assert_eq!(w.rhs_value, vec![int(0), int(0), int(0)]);
        assert!(a1.is_homomorphism(&a1, &Matrix::identity(2)).is_err());
    }

    #[test]
    fn change_of_basis_scaling() {
        let a1 = catalog::a1();
        let mut p = Matrix::identity(3);
        p.set(0, 0, int(2));
        let b = a1.change_of_basis(&p).unwrap();
        assert_eq!(b.mult().get(0, 0, 2), &int(4));
        assert_eq!(a1.change_of_basis(&Matrix::identity(3)).unwrap(), a1);
        assert!(matches!(
            a1.change_of_basis(&Matrix::zeros(3, 3)),
            Err(Error::Singular(_))
        ));
        assert!(b.is_homomorphism(&a1, &p).unwrap().passed);
    }

    #[test]
    fn change_of_basis_round_trip() {
        let a6 = catalog::a6();
        let p = rows(&[&[1, 2, 0], &[0, -1, 1], &[2, 0, -2]]);
        let back = a6
            .change_of_basis(&p)
            .unwrap()
            .change_of_basis(&p.inverse().unwrap())
            .unwrap();
        assert_eq!(back, a6);
        assert!(a6.change_of_basis(&p).unwrap().is_zinbiel().passed);
    }
}
