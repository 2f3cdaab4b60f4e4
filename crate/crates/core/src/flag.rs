//! Flag datums: extending structures through a one-dimensional space
//! `V = span{u}`.
//!
//! A flag datum `(x₀, k₀, μ, D, T)` of `Z` is the extending datum
//!
//! ```text
//! u ◁ x = μ(x)u,   x ▷ u = 0,   u ⊳ x = D(x),   x ⊲ u = T(x),
//! ω(u, u) = x₀,    u ∗ u = k₀u,
//! ```
//!
//! so the extension is generated by `u∘u = x₀ + k₀u`, `x∘u = T(x)` and
//! `u∘x = D(x) + μ(x)u`.
//!
//! `D` and `T` are stored as matrices acting on column vectors, so column
//! `i` of `D` is `D(eᵢ)`.

use num::Zero;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::{
    add, add_assign, dot, nullspace, poly_expand_quadratic, scale, sub, unit, zero_vec, Matrix, MultiPoly,
    QuadraticConstraint, Rational, Tensor3, Vector,
};
use crate::extending::{build_unified, datums_equivalent, ExtendingDatum, MorphismPair};
use crate::report::{self, CheckReport, Condition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagDatum {
    pub base: Algebra,
    pub x0: Vector,
    pub k0: Rational,
    /// `μ(eᵢ)` for each basis vector.
    pub mu: Vector,
    pub d: Matrix,
    pub t: Matrix,
}

impl FlagDatum {
    pub fn zero(base: Algebra) -> Self {
        let n = base.dim();
        Self {
            base,
            x0: zero_vec(n),
            k0: Rational::zero(),
            mu: zero_vec(n),
            d: Matrix::zeros(n, n),
            t: Matrix::zeros(n, n),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.base.dim();
        if self.x0.len() != n || self.mu.len() != n {
            return Err(Error::Shape(format!("x0 and mu must have length {n}")));
        }
        for (name, m) in [("D", &self.d), ("T", &self.t)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape(format!("{name} must be {n}x{n}")));
            }
        }
        Ok(())
    }

    fn mu_of(&self, x: &[Rational]) -> Rational {
        dot(&self.mu, x)
    }

    /// Reads a flag datum back from an extending datum with `dim V = 1` and
    /// `x ▷ u = 0`.
    pub fn from_datum(d: &ExtendingDatum) -> Result<Self, Error> {
        d.validate()?;
        if d.dim_v != 1 {
            return Err(Error::Shape(format!("a flag datum needs dim V = 1, got {}", d.dim_v)));
        }
        if !d.act_right.is_zero() {
            return Err(Error::Shape("a flag datum has x ▷ u = 0".into()));
        }
        let n = d.dim_z();
        let images = |f: &dyn Fn(usize) -> Vector| (0..n).map(f).collect::<Vec<_>>();
        Ok(Self {
            base: d.base.clone(),
            x0: d.omega.slot(0, 0).to_vec(),
            k0: d.star.get(0, 0, 0).clone(),
            mu: (0..n).map(|i| d.act_left.get(0, i, 0).clone()).collect(),
            d: Matrix::from_images(&images(&|i| d.proj_right.slot(0, i).to_vec()), n)?,
            t: Matrix::from_images(&images(&|i| d.proj_left.slot(i, 0).to_vec()), n)?,
        })
    }

    /// The corresponding extending datum on `Z ⊕ span{u}`.
    pub fn to_datum(&self) -> ExtendingDatum {
        let n = self.base.dim();
        let mut d = ExtendingDatum::trivial(self.base.clone(), 1);
        d.act_left = Tensor3::from_fn(1, n, 1, |_, i| vec![self.mu[i].clone()]);
        d.proj_right = Tensor3::from_fn(1, n, n, |_, i| self.d.column(i));
        d.proj_left = Tensor3::from_fn(n, 1, n, |i, _| self.t.column(i));
        d.omega = Tensor3::from_fn(1, 1, n, |_, _| self.x0.clone());
        d.star = Tensor3::from_fn(1, 1, 1, |_, _| vec![self.k0.clone()]);
        d
    }
}

/// The flag conditions, derived from the extending conditions at
/// `dim V = 1`. `F4` and `F8` split into two results each.
///
/// ```text
/// F1   μ(x·y) + μ(y·x) = μ(x)μ(y)
/// F2   μ(D(x) + T(x)) = 0
/// F3   D(x·y) + D(y·x) = D(x)·y + μ(x)D(y)
/// F4a  T(x·y) = T(x)·y
/// F4b  T(x)·y = x·(D(y) + T(y)) + μ(y)T(x)
/// F5   T²(x) = 2x·x₀ + 2k₀T(x)
/// F6   D²(x) = T(D(x)) − D(T(x))
/// F7   T(D(x)) = x₀·x + k₀D(x) − μ(x)x₀
/// F8a  T(x₀) = 2D(x₀) + k₀x₀
/// F8b  2μ(x₀) + k₀² = 0
/// ```
pub fn verify_flag(fd: &FlagDatum) -> Result<CheckReport, Error> {
    fd.validate()?;
    Ok(report::run(&flag_conditions(fd)))
}

fn flag_conditions(fd: &FlagDatum) -> Vec<Condition<'_>> {
    let n = fd.base.dim();
    let z = &fd.base;
    let (d, t) = (&fd.d, &fd.t);
    let e = move |i: usize| unit(n, i);
    let two = Rational::from_integer(2.into());
    let two2 = two.clone();
    let two3 = two.clone();
    vec![
        Condition::new("F1", "x,y", &[n, n], move |ix| {
            let (x, y) = (e(ix[0]), e(ix[1]));
            let lhs = fd.mu_of(&z.mul(&x, &y)) + fd.mu_of(&z.mul(&y, &x));
            (vec![lhs], vec![fd.mu_of(&x) * fd.mu_of(&y)])
        }),
        Condition::new("F2", "x", &[n], move |ix| {
            let x = e(ix[0]);
            (vec![fd.mu_of(&add(&d.apply(&x), &t.apply(&x)))], vec![Rational::zero()])
        }),
        Condition::new("F3", "x,y", &[n, n], move |ix| {
            let (x, y) = (e(ix[0]), e(ix[1]));
            let lhs = add(&d.apply(&z.mul(&x, &y)), &d.apply(&z.mul(&y, &x)));
            let rhs = add(&z.mul(&d.apply(&x), &y), &scale(&fd.mu_of(&x), &d.apply(&y)));
            (lhs, rhs)
        }),
        Condition::new("F4a", "x,y", &[n, n], move |ix| {
            let (x, y) = (e(ix[0]), e(ix[1]));
            (t.apply(&z.mul(&x, &y)), z.mul(&t.apply(&x), &y))
        }),
        Condition::new("F4b", "x,y", &[n, n], move |ix| {
            let (x, y) = (e(ix[0]), e(ix[1]));
            let rhs = add(
                &z.mul(&x, &add(&d.apply(&y), &t.apply(&y))),
                &scale(&fd.mu_of(&y), &t.apply(&x)),
            );
            (z.mul(&t.apply(&x), &y), rhs)
        }),
        Condition::new("F5", "x", &[n], move |ix| {
            let x = e(ix[0]);
            let rhs = scale(&two, &add(&z.mul(&x, &fd.x0), &scale(&fd.k0, &t.apply(&x))));
            (t.apply(&t.apply(&x)), rhs)
        }),
        Condition::new("F6", "x", &[n], move |ix| {
            let x = e(ix[0]);
            (
                d.apply(&d.apply(&x)),
                sub(&t.apply(&d.apply(&x)), &d.apply(&t.apply(&x))),
            )
        }),
        Condition::new("F7", "x", &[n], move |ix| {
            let x = e(ix[0]);
            let mut rhs = z.mul(&fd.x0, &x);
            add_assign(&mut rhs, &scale(&fd.k0, &d.apply(&x)));
            let rhs = sub(&rhs, &scale(&fd.mu_of(&x), &fd.x0));
            (t.apply(&d.apply(&x)), rhs)
        }),
        Condition::new("F8a", "", &[], move |_| {
            let rhs = add(&scale(&two2, &d.apply(&fd.x0)), &scale(&fd.k0, &fd.x0));
            (t.apply(&fd.x0), rhs)
        }),
        Condition::new("F8b", "", &[], move |_| {
            let lhs = &two3 * fd.mu_of(&fd.x0) + &fd.k0 * &fd.k0;
            (vec![lhs], vec![Rational::zero()])
        }),
    ]
}

/// The datum of `fd` and the `(n+1)`-dimensional extension it defines.
/// `fd` must pass [`verify_flag`].
pub fn build_flag_extension(fd: &FlagDatum) -> Result<(ExtendingDatum, Algebra), Error> {
    let report = verify_flag(fd)?;
    if !report.passed {
        return Err(Error::precondition("not a flag datum", report));
    }
    let d = fd.to_datum();
    let a = build_unified(&d, true)?;
    Ok((d, a))
}

/// The extension product of `fd` without any checks; not necessarily
/// Zinbiel.
pub fn flag_extension_unchecked(fd: &FlagDatum) -> Result<Algebra, Error> {
    fd.validate()?;
    build_unified(&fd.to_datum(), true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagMode {
    /// `x₀ = 0`, `k₀ = 0`, `T = 0`; solve for `D`.
    D,
    /// `x₀ = 0`, `k₀ = 0`, `D = 0`; solve for `T`.
    T,
}

/// Solutions `Σ tᵢ·Bᵢ` of a reduced flag system: the `Bᵢ` span the linear
/// solutions, and a point is an actual solution iff every residual vanishes
/// at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub linear_basis: Vec<Matrix>,
    pub residuals: Vec<MultiPoly>,
}

impl SolutionFamily {
    pub fn dim(&self) -> usize {
        self.linear_basis.len()
    }

    /// `Σ tᵢ·Bᵢ`.
    pub fn point(&self, t: &[Rational]) -> Result<Matrix, Error> {
        if t.len() != self.dim() {
            return Err(Error::Shape(format!("expected {} parameters", self.dim())));
        }
        let mut acc = match self.linear_basis.first() {
            Some(b) => Matrix::zeros(b.rows(), b.cols()),
            None => return Ok(Matrix::zeros(0, 0)),
        };
        for (ti, b) in t.iter().zip(&self.linear_basis) {
            acc = acc.add(&b.scale(ti))?;
        }
        Ok(acc)
    }

    /// The flag datum with the solved map set to `Σ tᵢ·Bᵢ` and everything
    /// else except `μ` zero.
    pub fn lift(&self, base: &Algebra, mu: &[Rational], mode: FlagMode, t: &[Rational]) -> Result<FlagDatum, Error> {
        let mut fd = FlagDatum::zero(base.clone());
        fd.mu = mu.to_vec();
        let m = if self.dim() == 0 {
            Matrix::zeros(base.dim(), base.dim())
        } else {
            self.point(t)?
        };
        match mode {
            FlagMode::D => fd.d = m,
            FlagMode::T => fd.t = m,
        }
        fd.validate()?;
        Ok(fd)
    }
}

/// Solves the reduced flag system for `D` (or `T`) at a fixed `μ`.
///
/// With the other map, `x₀` and `k₀` zero, the flag conditions split into a
/// linear part and one quadratic condition:
///
/// - D-case: `μ∘D = 0`, `D(x·y) + D(y·x) = D(x)·y + μ(x)D(y)`,
///   `x·D(y) = 0`; quadratic `D² = 0`.
/// - T-case: `μ∘T = 0`, `T(x·y) = T(x)·y`, `T(x)·y = x·T(y) + μ(y)T(x)`;
///   quadratic `T² = 0`.
///
/// Unknowns are the coefficients `a_ij` of `D(eᵢ) = Σⱼ a_ij·eⱼ` in row-major
/// order, so the basis comes out in that order of free coefficients.
/// Fails with [`Error::Precondition`] when `μ` violates `F1`.
pub fn solve_reduced(z: &Algebra, mu: &[Rational], mode: FlagMode) -> Result<SolutionFamily, Error> {
    let n = z.dim();
    if mu.len() != n {
        return Err(Error::Shape(format!("mu must have length {n}")));
    }
    let mut probe = FlagDatum::zero(z.clone());
    probe.mu = mu.to_vec();
    let f1 = report::run(&flag_conditions(&probe)[..1]);
    if !f1.passed {
        return Err(Error::precondition("mu violates F1", f1));
    }

    let unknown = |p: usize| Matrix::unit(n, n, p % n, p / n);
    let e = |i: usize| unit(n, i);
    let mu_of = |x: &[Rational]| dot(mu, x);
    let residual = |m: &Matrix| -> Vector {
        let mut out: Vector = (0..n).map(|i| mu_of(&m.apply(&e(i)))).collect();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (e(i), e(j));
                match mode {
                    FlagMode::D => {
                        let lhs = add(&m.apply(&z.mul(&x, &y)), &m.apply(&z.mul(&y, &x)));
                        let rhs = add(&z.mul(&m.apply(&x), &y), &scale(&mu_of(&x), &m.apply(&y)));
                        out.extend(sub(&lhs, &rhs));
                        out.extend(z.mul(&x, &m.apply(&y)));
                    }
                    FlagMode::T => {
                        out.extend(sub(&m.apply(&z.mul(&x, &y)), &z.mul(&m.apply(&x), &y)));
                        let rhs = add(&z.mul(&x, &m.apply(&y)), &scale(&mu_of(&y), &m.apply(&x)));
                        out.extend(sub(&z.mul(&m.apply(&x), &y), &rhs));
                    }
                }
            }
        }
        out
    };
    let columns: Vec<Vector> = (0..n * n).map(|p| residual(&unknown(p))).collect();
    let system = Matrix::from_images(&columns, columns.first().map_or(0, Vec::len))?;
    let linear_basis: Vec<Matrix> = nullspace(&system)
        .into_iter()
        .map(|c| {
            let mut m = Matrix::zeros(n, n);
            for (p, cp) in c.iter().enumerate() {
                if !cp.is_zero() {
                    m = m.add(&unknown(p).scale(cp)).expect("same shape");
                }
            }
            m
        })
        .collect();
    let residuals = poly_expand_quadratic(&linear_basis, QuadraticConstraint::SquareIsZero)?;
    Ok(SolutionFamily {
        linear_basis,
        residuals,
    })
}

/// The polynomials `μ(eᵢ·eⱼ) + μ(eⱼ·eᵢ) − μᵢμⱼ` in `mu1 … mun`, normalized,
/// without zeros or repeats. Their common zeros are the `μ` allowed by `F1`.
pub fn mu_constraints(z: &Algebra) -> Vec<MultiPoly> {
    let n = z.dim();
    let vars = MultiPoly::var_names("mu", n);
    let var = |i| MultiPoly::var(vars.clone(), i);
    let linear = |v: &[Rational]| {
        let mut p = MultiPoly::zero(vars.clone());
        for (k, c) in v.iter().enumerate() {
            p = p.add(&var(k).scale(c));
        }
        p
    };
    let mut out: Vec<MultiPoly> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let sym = add(z.basis_product(i, j), z.basis_product(j, i));
            let p = linear(&sym).sub(&var(i).mul(&var(j)));
            if p.is_zero() {
                continue;
            }
            let p = p.normalized();
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// `(q, r)` with `s(u) = q·u` and `r(u) = r_vec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagEquivalenceWitness {
    pub q: Rational,
    pub r_vec: Vector,
}

impl FlagEquivalenceWitness {
    pub fn to_pair(&self) -> MorphismPair {
        let n = self.r_vec.len();
        MorphismPair {
            r: Matrix::from_images(std::slice::from_ref(&self.r_vec), n).expect("one column"),
            s: Matrix::from_rows(vec![vec![self.q.clone()]], 1).expect("1x1"),
        }
    }
}

/// The flag relations for `fd ≡ fd2` via `(q, r)`, writing `r` for `r(u)`:
///
/// ```text
/// μ = μ′
/// D(x) = q·D′(x) + r·x − μ(x)·r
/// T(x) = q·T′(x) + x·r
/// k₀ = q·k₀′ + μ′(r)
/// x₀ = q²·x₀′ + r·r − k₀·r + q·T′(r) + q·D′(r)
/// ```
pub fn flag_equivalence_report(
    fd: &FlagDatum,
    fd2: &FlagDatum,
    w: &FlagEquivalenceWitness,
) -> Result<CheckReport, Error> {
    fd.validate()?;
    fd2.validate()?;
    if fd.base != fd2.base {
        return Err(Error::Shape("flag datums must share the base algebra".into()));
    }
    let n = fd.base.dim();
    if w.r_vec.len() != n {
        return Err(Error::Shape(format!("r must have length {n}")));
    }
    if w.q.is_zero() {
        return Err(Error::Singular("q must be nonzero".into()));
    }
    let z = &fd.base;
    let (q, r) = (&w.q, &w.r_vec);
    let e = move |i: usize| unit(n, i);
    let conds = [
        Condition::new("mu", "x", &[n], move |ix| {
            (vec![fd.mu[ix[0]].clone()], vec![fd2.mu[ix[0]].clone()])
        }),
        Condition::new("D", "x", &[n], move |ix| {
            let x = e(ix[0]);
            let mut rhs = scale(q, &fd2.d.apply(&x));
            add_assign(&mut rhs, &z.mul(r, &x));
            let rhs = sub(&rhs, &scale(&fd.mu_of(&x), r));
            (fd.d.apply(&x), rhs)
        }),
        Condition::new("T", "x", &[n], move |ix| {
            let x = e(ix[0]);
            (fd.t.apply(&x), add(&scale(q, &fd2.t.apply(&x)), &z.mul(&x, r)))
        }),
        Condition::new("k0", "", &[], move |_| {
            (vec![fd.k0.clone()], vec![q * &fd2.k0 + fd2.mu_of(r)])
        }),
        Condition::new("x0", "", &[], move |_| {
            let mut rhs = scale(&(q * q), &fd2.x0);
            add_assign(&mut rhs, &z.mul(r, r));
            add_assign(&mut rhs, &scale(&-fd.k0.clone(), r));
            add_assign(&mut rhs, &scale(q, &fd2.t.apply(r)));
            add_assign(&mut rhs, &scale(q, &fd2.d.apply(r)));
            (fd.x0.clone(), rhs)
        }),
    ];
    Ok(report::run(&conds))
}

/// Whether `(q, r)` witnesses `fd ≡ fd2`. The specialized flag relations
/// are compared with [`datums_equivalent`] on the induced extending datums;
/// a disagreement is an [`Error::Internal`].
pub fn flag_equivalent(fd: &FlagDatum, fd2: &FlagDatum, w: &FlagEquivalenceWitness) -> Result<bool, Error> {
    let specialized = flag_equivalence_report(fd, fd2, w)?.passed;
    let general = datums_equivalent(&fd.to_datum(), &fd2.to_datum(), &w.to_pair())?;
    if specialized != general {
        return Err(Error::Internal(format!(
            "flag relations say {specialized}, datum equivalence says {general}"
        )));
    }
    Ok(specialized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, q};
    use num::One;

    fn one() -> Rational {
        Rational::one()
    }

    fn images(n: usize, imgs: &[(usize, Vector)]) -> Matrix {
        let mut cols = vec![zero_vec(n); n];
        for (i, v) in imgs {
            cols[*i] = v.clone();
        }
        Matrix::from_images(&cols, n).unwrap()
    }

    #[test]
    fn zero_datum_passes_and_extends_by_a_null_line() {
        let fd = FlagDatum::zero(catalog::a1());
        let report = verify_flag(&fd).unwrap();
        assert!(report.passed);
        let labels: Vec<_> = report.condition_results.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["F1", "F2", "F3", "F4a", "F4b", "F5", "F6", "F7", "F8a", "F8b"]);
        let (_, e) = build_flag_extension(&fd).unwrap();
        assert_eq!(e, catalog::a1().direct_sum(&Algebra::null(1)));
    }

    #[test]
    fn f1_failure_is_witnessed() {
        let mut fd = FlagDatum::zero(catalog::a1());
        fd.mu = vec![int(2), int(0), int(1)];
        let report = verify_flag(&fd).unwrap();
        let w = report.result("F1").unwrap().witness.clone().unwrap();
        assert_eq!(w.basis_tuple, vec![0, 0]);
        // μ(e3) + μ(e3) against μ1·μ1
        assert_eq!((w.lhs_value, w.rhs_value), (vec![int(2)], vec![int(4)]));
    }

    #[test]
    fn d1_family_at_nonzero_mu_is_not_a_flag_datum() {
        // μ = (2, 0, 2) already breaks F1 at (e1, e3): 0 ≠ μ1·μ3.
        let mut fd = FlagDatum::zero(catalog::a1());
        fd.mu = vec![int(2), int(0), int(2)];
        fd.d = images(3, &[(1, vec![int(3), int(0), int(-3)])]);
        let report = verify_flag(&fd).unwrap();
        let w = report.result("F1").unwrap().witness.clone().unwrap();
        assert_eq!(w.basis_tuple, vec![0, 2]);
        assert!(!flag_extension_unchecked(&fd).unwrap().is_zinbiel().passed);
        assert!(build_flag_extension(&fd).is_err());
    }

    #[test]
    fn d5_family_extends_a5() {
        let mut fd = FlagDatum::zero(catalog::a5(int(1)));
        fd.d = images(
            3,
            &[(0, vec![int(0), int(0), int(1)]), (1, vec![int(0), int(0), int(2)])],
        );
        let (_, e) = build_flag_extension(&fd).unwrap();
        assert!(e.is_zinbiel().passed);
        // u∘e1 = e3, u∘e2 = 2e3
        assert_eq!(e.basis_product(3, 0), &[int(0), int(0), int(1), int(0)]);
        assert_eq!(e.basis_product(3, 1), &[int(0), int(0), int(2), int(0)]);
    }

    #[test]
    fn solver_on_a5() {
        let a5 = catalog::a5(int(1));
        let fam = solve_reduced(&a5, &zero_vec(3), FlagMode::D).unwrap();
        assert_eq!(fam.dim(), 2);
        assert!(fam.residuals.is_empty());
        let expected = [images(3, &[(0, unit(3, 2))]), images(3, &[(1, unit(3, 2))])];
        assert_eq!(fam.linear_basis, expected);

        let fam = solve_reduced(&a5, &zero_vec(3), FlagMode::T).unwrap();
        assert_eq!(fam.dim(), 3);
        let shown: Vec<String> = fam.residuals.iter().map(|p| p.to_string()).collect();
        // T(e1) = t1·e3, T(e2) = t2·e3 are free; the third direction
        // squares to something nonzero.
        assert_eq!(shown, ["t3^2", "t1*t3", "t2*t3"]);
        assert_eq!(fam.linear_basis[0], images(3, &[(0, unit(3, 2))]));
        assert_eq!(fam.linear_basis[1], images(3, &[(1, unit(3, 2))]));
    }

    #[test]
    fn solver_rejects_mu_outside_f1() {
        let err = solve_reduced(&catalog::a2(), &[int(1), int(0), q(1, 2)], FlagMode::D).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn mu_constraints_examples() {
        let null = mu_constraints(&Algebra::null(2));
        let shown: Vec<String> = null.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["mu1^2", "mu1*mu2", "mu2^2"]);

        let a1: Vec<String> = mu_constraints(&catalog::a1()).iter().map(|p| p.to_string()).collect();
        assert_eq!(a1[0], "mu1^2 - 2*mu3");
        assert!(a1.contains(&"mu1*mu2".to_string()));
        let a3: Vec<String> = mu_constraints(&catalog::a3()).iter().map(|p| p.to_string()).collect();
        assert!(a3.contains(&"mu1*mu2".to_string()));
    }

    #[test]
    fn flag_equivalence_examples() {
        let mut fd = FlagDatum::zero(catalog::a5(int(1)));
        fd.d = images(3, &[(0, unit(3, 2))]);
        let id = FlagEquivalenceWitness {
            q: one(),
            r_vec: zero_vec(3),
        };
        assert!(flag_equivalent(&fd, &fd, &id).unwrap());

        let mut doubled = fd.clone();
        doubled.d = fd.d.scale(&int(2));
        let w = FlagEquivalenceWitness {
            q: int(2),
            r_vec: zero_vec(3),
        };
        assert!(flag_equivalent(&doubled, &fd, &w).unwrap());
        assert!(!flag_equivalent(&fd, &doubled, &w).unwrap());

        // Null base: every relation is 0 = 0 at r = 0.
        let null = FlagDatum::zero(Algebra::null(1));
        let w = FlagEquivalenceWitness {
            q: int(2),
            r_vec: zero_vec(1),
        };
        assert!(flag_equivalent(&null, &null, &w).unwrap());
        let bad = FlagEquivalenceWitness {
            q: int(0),
            r_vec: zero_vec(1),
        };
        assert!(matches!(flag_equivalent(&null, &null, &bad), Err(Error::Singular(_))));
    }

    #[test]
    fn shifting_by_r_changes_d_and_x0() {
        // On A5 with r = e1: D(x) = r·x, T(x) = x·r, x0 = r·r.
        let fd2 = FlagDatum::zero(catalog::a5(int(1)));
        let mut fd = fd2.clone();
        let r = unit(3, 0);
        fd.d = images(3, &[(0, unit(3, 2)), (1, unit(3, 2))]);
        fd.t = images(3, &[(0, unit(3, 2))]);
        fd.x0 = unit(3, 2);
        let w = FlagEquivalenceWitness { q: one(), r_vec: r };
        assert!(flag_equivalent(&fd, &fd2, &w).unwrap());
        assert!(verify_flag(&fd).unwrap().passed);
    }
}
