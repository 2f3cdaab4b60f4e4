//! Extending datums of a Zinbiel algebra `Z` through a complement `V`, the
//! unified product `Z ♮ V`, and the relations used to classify them.
//!
//! A datum is six bilinear maps
//!
//! | field        | symbol | signature   |
//! |--------------|--------|-------------|
//! | `act_left`   | `u ◁ x` | `V × Z → V` |
//! | `act_right`  | `x ▷ u` | `Z × V → V` |
//! | `proj_left`  | `x ⊲ u` | `Z × V → Z` |
//! | `proj_right` | `u ⊳ x` | `V × Z → Z` |
//! | `omega`      | `ω(u, v)` | `V × V → Z` |
//! | `star`       | `u ∗ v` | `V × V → V` |
//!
//! and the unified product on `Z ⊕ V` is
//!
//! ```text
//! (x, u) ∘ (y, v) = (x·y + x⊲v + u⊳y + ω(u, v),  x▷v + u◁y + u∗v).
//! ```
//!
//! Coordinates on `Z ⊕ V` always list the `Z` basis first.

use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::{add, add_assign, is_zero_vec, sub, unit, zero_vec, Matrix, Rational, Tensor3, Vector};
use crate::report::{self, CheckReport, Condition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendingDatum {
    pub base: Algebra,
    pub dim_v: usize,
    /// `u ◁ x`, dims `(dim V, dim Z, dim V)`.
    pub act_left: Tensor3,
    /// `x ▷ u`, dims `(dim Z, dim V, dim V)`.
    pub act_right: Tensor3,
    /// `x ⊲ u`, dims `(dim Z, dim V, dim Z)`.
    pub proj_left: Tensor3,
    /// `u ⊳ x`, dims `(dim V, dim Z, dim Z)`.
    pub proj_right: Tensor3,
    /// `ω(u, v)`, dims `(dim V, dim V, dim Z)`.
    pub omega: Tensor3,
    /// `u ∗ v`, dims `(dim V, dim V, dim V)`.
    pub star: Tensor3,
}

/// A pair `(r, s)` with `r: V → Z` and `s: V → V`, describing the map
/// `ψ(x, u) = (x + r(u), s(u))` between unified products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismPair {
    /// `dim Z × dim V`.
    pub r: Matrix,
    /// `dim V × dim V`.
    pub s: Matrix,
}

impl MorphismPair {
    pub fn identity(dim_z: usize, dim_v: usize) -> Self {
        Self {
            r: Matrix::zeros(dim_z, dim_v),
            s: Matrix::identity(dim_v),
        }
    }

    /// The block matrix of `ψ` on `Z ⊕ V`.
    pub fn as_block_matrix(&self) -> Matrix {
        let (n, m) = (self.r.rows(), self.s.rows());
        let mut psi = Matrix::identity(n + m);
        for i in 0..n {
            for j in 0..m {
                psi.set(i, n + j, self.r.get(i, j).clone());
            }
        }
        for i in 0..m {
            for j in 0..m {
                psi.set(n + i, n + j, self.s.get(i, j).clone());
            }
        }
        psi
    }

    /// The pair of `ψ⁻¹`, namely `(−r∘s⁻¹, s⁻¹)`.
    pub fn inverse(&self) -> Result<Self, Error> {
        let s_inv = self
            .s
            .inverse()
            .ok_or_else(|| Error::Singular("s in morphism pair".into()))?;
        let r = self.r.mul(&s_inv)?.scale(&-Rational::from_integer(1.into()));
        Ok(Self { r, s: s_inv })
    }
}

/// An algebra `E` with a subalgebra `Z` and a chosen complement `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionPresentation {
    pub total: Algebra,
    /// `dim E × dim Z`; column `i` is the `i`-th basis vector of `Z` in `E`.
    pub z_embed: Matrix,
    /// `dim V × dim E`; the rows span `V`.
    pub complement: Matrix,
}

impl InclusionPresentation {
    /// `Z` spanned by the listed basis vectors of `total` (0-based) and `V`
    /// by the remaining ones.
    pub fn coordinate_split(total: Algebra, z_indices: &[usize]) -> Result<Self, Error> {
        let n = total.dim();
        if let Some(&bad) = z_indices.iter().find(|&&i| i >= n) {
            return Err(Error::Shape(format!("basis index {} out of range 1..={n}", bad + 1)));
        }
        let mut seen = vec![false; n];
        for &i in z_indices {
            if seen[i] {
                return Err(Error::Dependent(format!("basis index {} listed twice", i + 1)));
            }
            seen[i] = true;
        }
        let z_images: Vec<Vector> = z_indices.iter().map(|&i| unit(n, i)).collect();
        let v_rows: Vec<Vector> = (0..n).filter(|i| !seen[*i]).map(|i| unit(n, i)).collect();
        Ok(Self {
            z_embed: Matrix::from_images(&z_images, n)?,
            complement: Matrix::from_rows(v_rows, n)?,
            total,
        })
    }

    /// The matrix of `(x, u) ↦ x + u` from `Z ⊕ V` to `E`.
    pub fn sum_map(&self) -> Result<Matrix, Error> {
        self.z_embed.hstack(&self.complement.transpose())
    }
}

impl ExtendingDatum {
    /// The datum with all six maps zero; its unified product is `Z` plus a
    /// null algebra on `V`.
    pub fn trivial(base: Algebra, dim_v: usize) -> Self {
        let n = base.dim();
        let m = dim_v;
        Self {
            base,
            dim_v,
            act_left: Tensor3::zeros(m, n, m),
            act_right: Tensor3::zeros(n, m, m),
            proj_left: Tensor3::zeros(n, m, n),
            proj_right: Tensor3::zeros(m, n, n),
            omega: Tensor3::zeros(m, m, n),
            star: Tensor3::zeros(m, m, m),
        }
    }

    pub fn dim_z(&self) -> usize {
        self.base.dim()
    }

    /// Checks that every tensor has the dimensions its role requires.
    pub fn validate(&self) -> Result<(), Error> {
        let (n, m) = (self.dim_z(), self.dim_v);
        let expect = [
            ("actL", &self.act_left, (m, n, m)),
            ("actR", &self.act_right, (n, m, m)),
            ("projL", &self.proj_left, (n, m, n)),
            ("projR", &self.proj_right, (m, n, n)),
            ("omega", &self.omega, (m, m, n)),
            ("star", &self.star, (m, m, m)),
        ];
        for (name, t, dims) in expect {
            if t.dims() != dims {
                return Err(Error::Shape(format!(
                    "{name} has dims {:?}, expected {dims:?}",
                    t.dims()
                )));
            }
        }
        Ok(())
    }

    fn zmul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.base.mul(x, y)
    }
    fn act_l(&self, u: &[Rational], x: &[Rational]) -> Vector {
        self.act_left.apply(u, x)
    }
    fn act_r(&self, x: &[Rational], u: &[Rational]) -> Vector {
        self.act_right.apply(x, u)
    }
    fn proj_l(&self, x: &[Rational], u: &[Rational]) -> Vector {
        self.proj_left.apply(x, u)
    }
    fn proj_r(&self, u: &[Rational], x: &[Rational]) -> Vector {
        self.proj_right.apply(u, x)
    }
    fn om(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.omega.apply(u, v)
    }
    fn st(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.star.apply(u, v)
    }

    /// The unified product of `(x, u)` and `(y, v)`.
    pub fn product(&self, (x, u): (&[Rational], &[Rational]), (y, v): (&[Rational], &[Rational])) -> (Vector, Vector) {
        let mut z = self.zmul(x, y);
        add_assign(&mut z, &self.proj_l(x, v));
        add_assign(&mut z, &self.proj_r(u, y));
        add_assign(&mut z, &self.om(u, v));
        let mut w = self.act_r(x, v);
        add_assign(&mut w, &self.act_l(u, y));
        add_assign(&mut w, &self.st(u, v));
        (z, w)
    }

    /// The twelve compatibility conditions (Z1 split into its three
    /// bimodule equations) under which the unified product is Zinbiel.
    pub fn verify(&self) -> CheckReport {
        report::run(&self.conditions())
    }

    pub(crate) fn conditions(&self) -> Vec<Condition<'_>> {
        let (n, m) = (self.dim_z(), self.dim_v);
        let z = move |i: usize| unit(n, i);
        let v = move |i: usize| unit(m, i);
        vec![
            Condition::new("Z1.1", "x,y,w", &[n, n, m], move |t| {
                let (x, y, w) = (z(t[0]), z(t[1]), v(t[2]));
                let lhs = self.act_r(&self.zmul(&x, &y), &w);
                let rhs = self.act_r(&x, &add(&self.act_r(&y, &w), &self.act_l(&w, &y)));
                (lhs, rhs)
            }),
            Condition::new("Z1.2", "x,v,z", &[n, m, n], move |t| {
                let (x, vv, zz) = (z(t[0]), v(t[1]), z(t[2]));
                let lhs = self.act_l(&self.act_r(&x, &vv), &zz);
                let rhs = self.act_r(&x, &add(&self.act_l(&vv, &zz), &self.act_r(&zz, &vv)));
                (lhs, rhs)
            }),
            Condition::new("Z1.3", "u,y,z", &[m, n, n], move |t| {
                let (u, y, zz) = (v(t[0]), z(t[1]), z(t[2]));
                let lhs = self.act_l(&self.act_l(&u, &y), &zz);
                let rhs = self.act_l(&u, &add(&self.zmul(&y, &zz), &self.zmul(&zz, &y)));
                (lhs, rhs)
            }),
            Condition::new("Z2", "x,v,y", &[n, m, n], move |t| {
                let (x, vv, y) = (z(t[0]), v(t[1]), z(t[2]));
                let lhs = add(
                    &self.zmul(&self.proj_l(&x, &vv), &y),
                    &self.proj_r(&self.act_r(&x, &vv), &y),
                );
                let rhs = add(
                    &self.zmul(&x, &add(&self.proj_r(&vv, &y), &self.proj_l(&y, &vv))),
                    &self.proj_l(&x, &add(&self.act_l(&vv, &y), &self.act_r(&y, &vv))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z3", "u,x,y", &[m, n, n], move |t| {
                let (u, x, y) = (v(t[0]), z(t[1]), z(t[2]));
                let lhs = add(
                    &self.zmul(&self.proj_r(&u, &x), &y),
                    &self.proj_r(&self.act_l(&u, &x), &y),
                );
                let rhs = self.proj_r(&u, &add(&self.zmul(&x, &y), &self.zmul(&y, &x)));
                (lhs, rhs)
            }),
            Condition::new("Z4", "u,v,x", &[m, m, n], move |t| {
                let (u, vv, x) = (v(t[0]), v(t[1]), z(t[2]));
                let lhs = add(&self.zmul(&self.om(&u, &vv), &x), &self.proj_r(&self.st(&u, &vv), &x));
                let rhs = add(
                    &self.proj_r(&u, &add(&self.proj_r(&vv, &x), &self.proj_l(&x, &vv))),
                    &self.om(&u, &add(&self.act_l(&vv, &x), &self.act_r(&x, &vv))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z5", "u,v,x", &[m, m, n], move |t| {
                let (u, vv, x) = (v(t[0]), v(t[1]), z(t[2]));
                let lhs = self.act_l(&self.st(&u, &vv), &x);
                let rhs = add(
                    &self.act_l(&u, &add(&self.proj_r(&vv, &x), &self.proj_l(&x, &vv))),
                    &self.st(&u, &add(&self.act_l(&vv, &x), &self.act_r(&x, &vv))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z6", "x,y,w", &[n, n, m], move |t| {
                let (x, y, w) = (z(t[0]), z(t[1]), v(t[2]));
                let lhs = self.proj_l(&self.zmul(&x, &y), &w);
                let rhs = add(
                    &self.zmul(&x, &add(&self.proj_l(&y, &w), &self.proj_r(&w, &y))),
                    &self.proj_l(&x, &add(&self.act_r(&y, &w), &self.act_l(&w, &y))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z7", "x,v,w", &[n, m, m], move |t| {
                let (x, vv, w) = (z(t[0]), v(t[1]), v(t[2]));
                let lhs = add(
                    &self.proj_l(&self.proj_l(&x, &vv), &w),
                    &self.om(&self.act_r(&x, &vv), &w),
                );
                let rhs = add(
                    &self.zmul(&x, &add(&self.om(&vv, &w), &self.om(&w, &vv))),
                    &self.proj_l(&x, &add(&self.st(&vv, &w), &self.st(&w, &vv))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z8", "x,v,w", &[n, m, m], move |t| {
                let (x, vv, w) = (z(t[0]), v(t[1]), v(t[2]));
                let lhs = add(
                    &self.act_r(&self.proj_l(&x, &vv), &w),
                    &self.st(&self.act_r(&x, &vv), &w),
                );
                let rhs = self.act_r(&x, &add(&self.st(&vv, &w), &self.st(&w, &vv)));
                (lhs, rhs)
            }),
            Condition::new("Z9", "u,x,w", &[m, n, m], move |t| {
                let (u, x, w) = (v(t[0]), z(t[1]), v(t[2]));
                let lhs = add(
                    &self.proj_l(&self.proj_r(&u, &x), &w),
                    &self.om(&self.act_l(&u, &x), &w),
                );
                let rhs = add(
                    &self.proj_r(&u, &add(&self.proj_l(&x, &w), &self.proj_r(&w, &x))),
                    &self.om(&u, &add(&self.act_l(&w, &x), &self.act_r(&x, &w))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z10", "u,x,w", &[m, n, m], move |t| {
                let (u, x, w) = (v(t[0]), z(t[1]), v(t[2]));
                let lhs = add(&self.act_r(&self.proj_r(&u, &x), &w), &self.st(&self.act_l(&u, &x), &w));
                let rhs = add(
                    &self.act_l(&u, &add(&self.proj_l(&x, &w), &self.proj_r(&w, &x))),
                    &self.st(&u, &add(&self.act_r(&x, &w), &self.act_l(&w, &x))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z11", "u,v,w", &[m, m, m], move |t| {
                let (u, vv, w) = (v(t[0]), v(t[1]), v(t[2]));
                let lhs = add(&self.proj_l(&self.om(&u, &vv), &w), &self.om(&self.st(&u, &vv), &w));
                let rhs = add(
                    &self.proj_r(&u, &add(&self.om(&vv, &w), &self.om(&w, &vv))),
                    &self.om(&u, &add(&self.st(&vv, &w), &self.st(&w, &vv))),
                );
                (lhs, rhs)
            }),
            Condition::new("Z12", "u,v,w", &[m, m, m], move |t| {
                let (u, vv, w) = (v(t[0]), v(t[1]), v(t[2]));
                let lhs = add(&self.act_r(&self.om(&u, &vv), &w), &self.st(&self.st(&u, &vv), &w));
                let rhs = add(
                    &self.act_l(&u, &add(&self.om(&vv, &w), &self.om(&w, &vv))),
                    &self.st(&u, &add(&self.st(&vv, &w), &self.st(&w, &vv))),
                );
                (lhs, rhs)
            }),
        ]
    }

    /// Structure constants of the unified product, without checking
    /// anything. The result need not be a Zinbiel algebra.
    pub fn unified_algebra(&self) -> Algebra {
        let (n, m) = (self.dim_z(), self.dim_v);
        let split = |i: usize| -> (Vector, Vector) {
            if i < n {
                (unit(n, i), zero_vec(m))
            } else {
                (zero_vec(n), unit(m, i - n))
            }
        };
        let mult = Tensor3::from_fn(n + m, n + m, n + m, |i, j| {
            let (x, u) = split(i);
            let (y, v) = split(j);
            let (zp, vp) = self.product((&x, &u), (&y, &v));
            zp.into_iter().chain(vp).collect()
        });
        Algebra::new(mult).expect("square tensor")
    }
}

/// Runs the Z1–Z12 checks on `d`.
pub fn verify_datum(d: &ExtendingDatum) -> CheckReport {
    d.verify()
}

/// The unified product `Z ♮ V`.
///
/// With `force == false` the datum must pass [`verify_datum`]. With
/// `force == true` the raw product is returned unchecked, which is what the
/// brute-force oracle needs; it is then not guaranteed to be Zinbiel.
pub fn build_unified(d: &ExtendingDatum, force: bool) -> Result<Algebra, Error> {
    d.validate()?;
    if !force {
        let report = d.verify();
        if !report.passed {
            return Err(Error::precondition("extending datum fails Z1-Z12", report));
        }
    }
    Ok(d.unified_algebra())
}

/// Decomposition of `E` along `Z ⊕ V`.
struct Splitting {
    n: usize,
    inv: Matrix,
}

impl Splitting {
    fn new(p: &InclusionPresentation) -> Result<(Self, Matrix), Error> {
        let big = p.total.dim();
        let n = p.z_embed.cols();
        if p.z_embed.rows() != big || p.complement.cols() != big {
            return Err(Error::Shape(format!(
                "presentation of a {big}-dimensional algebra has z_embed {}x{} and complement {}x{}",
                p.z_embed.rows(),
                p.z_embed.cols(),
                p.complement.rows(),
                p.complement.cols()
            )));
        }
        if n + p.complement.rows() != big {
            return Err(Error::NotComplementary(format!(
                "dim Z + dim V = {} + {} != {big}",
                n,
                p.complement.rows()
            )));
        }
        let sum = p.sum_map()?;
        let inv = sum
            .inverse()
            .ok_or_else(|| Error::NotComplementary("Z and V intersect nontrivially".into()))?;
        Ok((Self { n, inv }, sum))
    }

    /// `(p(e), e − p(e))` in `Z`- and `V`-coordinates.
    fn split(&self, e: &[Rational]) -> (Vector, Vector) {
        let c = self.inv.apply(e);
        let (z, v) = c.split_at(self.n);
        (z.to_vec(), v.to_vec())
    }
}

/// Reads off the extending datum of `E ⊇ Z` with respect to the complement
/// `V`: every product is split into its `Z`-part (via the projection with
/// kernel `V`) and its `V`-part.
pub fn extract_datum(p: &InclusionPresentation) -> Result<ExtendingDatum, Error> {
    let (sp, _) = Splitting::new(p)?;
    let n = sp.n;
    let m = p.complement.rows();
    let zs: Vec<Vector> = (0..n).map(|i| p.z_embed.column(i)).collect();
    let vs: Vec<Vector> = p.complement.row_vectors();
    let e = &p.total;

    let mut base = Tensor3::zeros(n, n, n);
    let mut act_left = Tensor3::zeros(m, n, m);
    let mut act_right = Tensor3::zeros(n, m, m);
    let mut proj_left = Tensor3::zeros(n, m, n);
    let mut proj_right = Tensor3::zeros(m, n, n);
    let mut omega = Tensor3::zeros(m, m, n);
    let mut star = Tensor3::zeros(m, m, m);

    for i in 0..n {
        for j in 0..n {
            let (zp, vp) = sp.split(&e.mul(&zs[i], &zs[j]));
            if !is_zero_vec(&vp) {
                return Err(Error::NotClosed(format!("z{}·z{} leaves Z", i + 1, j + 1)));
            }
            set_slot(&mut base, i, j, &zp);
        }
    }
    for (i, z) in zs.iter().enumerate() {
        for (a, v) in vs.iter().enumerate() {
            let (zp, vp) = sp.split(&e.mul(z, v));
            set_slot(&mut proj_left, i, a, &zp);
            set_slot(&mut act_right, i, a, &vp);
            let (zp, vp) = sp.split(&e.mul(v, z));
            set_slot(&mut proj_right, a, i, &zp);
            set_slot(&mut act_left, a, i, &vp);
        }
    }
    for a in 0..m {
        for b in 0..m {
            let (zp, vp) = sp.split(&e.mul(&vs[a], &vs[b]));
            set_slot(&mut omega, a, b, &zp);
            set_slot(&mut star, a, b, &vp);
        }
    }
    Ok(ExtendingDatum {
        base: Algebra::new(base)?,
        dim_v: m,
        act_left,
        act_right,
        proj_left,
        proj_right,
        omega,
        star,
    })
}

fn set_slot(t: &mut Tensor3, i: usize, j: usize, v: &[Rational]) {
    for (k, c) in v.iter().enumerate() {
        t.set(i, j, k, c.clone());
    }
}

/// Verifies that `(x, u) ↦ x + u` is an isomorphism from the unified product
/// of [`extract_datum`]`(p)` onto `p.total` that is the identity on `Z` and
/// induces the identity on `V`.
///
/// The unified product is built unchecked, so this also works when `E` is
/// not a Zinbiel algebra.
pub fn round_trip_report(p: &InclusionPresentation) -> Result<CheckReport, Error> {
    let d = extract_datum(p)?;
    let unified = build_unified(&d, true)?;
    let (sp, sum) = Splitting::new(p)?;
    let mut report = unified.is_homomorphism(&p.total, &sum)?;
    let n = sp.n;
    let m = d.dim_v;
    let stabilizes = Condition::new("stabilizes Z", "x", &[n], |t| {
        let (zp, vp) = sp.split(&sum.column(t[0]));
        let lhs: Vector = zp.into_iter().chain(vp).collect();
        (lhs, unit(n + m, t[0]))
    });
    let costabilizes = Condition::new("co-stabilizes V", "u", &[m], |t| {
        let (_, vp) = sp.split(&sum.column(n + t[0]));
        (vp, unit(m, t[0]))
    });
    report = report.merge(report::run(&[stabilizes, costabilizes]));
    Ok(report)
}

fn same_shape(d: &ExtendingDatum, d2: &ExtendingDatum) -> Result<(), Error> {
    if d.base != d2.base || d.dim_v != d2.dim_v {
        return Err(Error::Shape("datums must share the base algebra and dim V".into()));
    }
    d.validate()?;
    d2.validate()
}

fn check_pair(d: &ExtendingDatum, pair: &MorphismPair) -> Result<(), Error> {
    let (n, m) = (d.dim_z(), d.dim_v);
    if pair.r.rows() != n || pair.r.cols() != m || pair.s.rows() != m || pair.s.cols() != m {
        return Err(Error::Shape(format!(
            "r must be {n}x{m} and s {m}x{m}, got {}x{} and {}x{}",
            pair.r.rows(),
            pair.r.cols(),
            pair.s.rows(),
            pair.s.cols()
        )));
    }
    Ok(())
}

/// Conditions M1–M6 under which `ψ(x, u) = (x + r(u), s(u))` is a
/// homomorphism `Z ♮ V → Z ♮′ V`.
///
/// The verdict is cross-checked against a direct homomorphism test of `ψ` on
/// the two unified products; a disagreement is returned as
/// [`Error::Internal`].
pub fn is_morphism_pair(d: &ExtendingDatum, d2: &ExtendingDatum, pair: &MorphismPair) -> Result<CheckReport, Error> {
    same_shape(d, d2)?;
    check_pair(d, pair)?;
    let (n, m) = (d.dim_z(), d.dim_v);
    let r = |u: &[Rational]| pair.r.apply(u);
    let s = |u: &[Rational]| pair.s.apply(u);
    let z = |i| unit(n, i);
    let v = |i| unit(m, i);
    let conds = [
        Condition::new("M1", "x,u", &[n, m], |t| {
            let (x, u) = (z(t[0]), v(t[1]));
            (s(&d.act_r(&x, &u)), d2.act_r(&x, &s(&u)))
        }),
        Condition::new("M2", "u,x", &[m, n], |t| {
            let (u, x) = (v(t[0]), z(t[1]));
            (s(&d.act_l(&u, &x)), d2.act_l(&s(&u), &x))
        }),
        Condition::new("M3", "u,x", &[m, n], |t| {
            let (u, x) = (v(t[0]), z(t[1]));
            let lhs = add(&d.proj_r(&u, &x), &r(&d.act_l(&u, &x)));
            let rhs = add(&d.zmul(&r(&u), &x), &d2.proj_r(&s(&u), &x));
            (lhs, rhs)
        }),
        Condition::new("M4", "x,u", &[n, m], |t| {
            let (x, u) = (z(t[0]), v(t[1]));
            let lhs = add(&d.proj_l(&x, &u), &r(&d.act_r(&x, &u)));
            let rhs = add(&d.zmul(&x, &r(&u)), &d2.proj_l(&x, &s(&u)));
            (lhs, rhs)
        }),
        Condition::new("M5", "u,v", &[m, m], |t| {
            let (u, vv) = (v(t[0]), v(t[1]));
            let lhs = s(&d.st(&u, &vv));
            let mut rhs = d2.act_r(&r(&u), &s(&vv));
            add_assign(&mut rhs, &d2.act_l(&s(&u), &r(&vv)));
            add_assign(&mut rhs, &d2.st(&s(&u), &s(&vv)));
            (lhs, rhs)
        }),
        Condition::new("M6", "u,v", &[m, m], |t| {
            let (u, vv) = (v(t[0]), v(t[1]));
            let lhs = add(&d.om(&u, &vv), &r(&d.st(&u, &vv)));
            let mut rhs = d.zmul(&r(&u), &r(&vv));
            add_assign(&mut rhs, &d2.proj_l(&r(&u), &s(&vv)));
            add_assign(&mut rhs, &d2.proj_r(&s(&u), &r(&vv)));
            add_assign(&mut rhs, &d2.om(&s(&u), &s(&vv)));
            (lhs, rhs)
        }),
    ];
    let report = report::run(&conds);
    let direct = d
        .unified_algebra()
        .is_homomorphism(&d2.unified_algebra(), &pair.as_block_matrix())?;
    if direct.passed != report.passed {
        return Err(Error::Internal(format!(
            "M1-M6 verdict {} disagrees with direct homomorphism check {}",
            report.passed, direct.passed
        )));
    }
    Ok(report)
}

/// The six relations defining `d ≡ d2` via `(r, s)`, one result each.
pub fn equivalence_report(d: &ExtendingDatum, d2: &ExtendingDatum, pair: &MorphismPair) -> Result<CheckReport, Error> {
    same_shape(d, d2)?;
    check_pair(d, pair)?;
    let s_inv = pair
        .s
        .inverse()
        .ok_or_else(|| Error::Singular("s must be invertible".into()))?;
    let (n, m) = (d.dim_z(), d.dim_v);
    let r = |u: &[Rational]| pair.r.apply(u);
    let s = |u: &[Rational]| pair.s.apply(u);
    let si = |u: &[Rational]| s_inv.apply(u);
    let z = |i| unit(n, i);
    let v = |i| unit(m, i);
    // r(u)▷′s(v) + s(u)◁′r(v) + s(u)∗′s(v)
    let twisted_star = |u: &[Rational], vv: &[Rational]| {
        let mut w = d2.act_r(&r(u), &s(vv));
        add_assign(&mut w, &d2.act_l(&s(u), &r(vv)));
        add_assign(&mut w, &d2.st(&s(u), &s(vv)));
        w
    };
    let conds = [
        Condition::new("E1", "u,x", &[m, n], |t| {
            let (u, x) = (v(t[0]), z(t[1]));
            (d.act_l(&u, &x), si(&d2.act_l(&s(&u), &x)))
        }),
        Condition::new("E2", "x,u", &[n, m], |t| {
            let (x, u) = (z(t[0]), v(t[1]));
            (d.act_r(&x, &u), si(&d2.act_r(&x, &s(&u))))
        }),
        Condition::new("E3", "u,x", &[m, n], |t| {
            let (u, x) = (v(t[0]), z(t[1]));
            let rhs = sub(
                &add(&d.zmul(&r(&u), &x), &d2.proj_r(&s(&u), &x)),
                &r(&si(&d2.act_l(&s(&u), &x))),
            );
            (d.proj_r(&u, &x), rhs)
        }),
        Condition::new("E4", "x,u", &[n, m], |t| {
            let (x, u) = (z(t[0]), v(t[1]));
            let rhs = sub(
                &add(&d.zmul(&x, &r(&u)), &d2.proj_l(&x, &s(&u))),
                &r(&si(&d2.act_r(&x, &s(&u)))),
            );
            (d.proj_l(&x, &u), rhs)
        }),
        Condition::new("E5", "u,v", &[m, m], |t| {
            let (u, vv) = (v(t[0]), v(t[1]));
            (d.st(&u, &vv), si(&twisted_star(&u, &vv)))
        }),
        Condition::new("E6", "u,v", &[m, m], |t| {
            let (u, vv) = (v(t[0]), v(t[1]));
            let mut rhs = d.zmul(&r(&u), &r(&vv));
            add_assign(&mut rhs, &d2.proj_l(&r(&u), &s(&vv)));
            add_assign(&mut rhs, &d2.proj_r(&s(&u), &r(&vv)));
            add_assign(&mut rhs, &d2.om(&s(&u), &s(&vv)));
            let rhs = sub(&rhs, &r(&si(&twisted_star(&u, &vv))));
            (d.om(&u, &vv), rhs)
        }),
    ];
    Ok(report::run(&conds))
}

/// Whether `(r, s)` witnesses `d ≡ d2`, i.e. `ψ(x, u) = (x + r(u), s(u))` is
/// an isomorphism `Z ♮ V → Z ♮′ V` fixing `Z`. `s` must be invertible.
pub fn datums_equivalent(d: &ExtendingDatum, d2: &ExtendingDatum, pair: &MorphismPair) -> Result<bool, Error> {
    Ok(equivalence_report(d, d2, pair)?.passed)
}

/// Whether `r` witnesses `d ≈ d2`: `ψ(x, u) = (x + r(u), u)` is an
/// isomorphism that fixes `Z` and induces the identity on `V`.
///
/// Requires `◁ = ◁′` and `▷ = ▷′`; otherwise no such `ψ` exists and an
/// [`Error::Precondition`] is returned.
pub fn datums_cohomologous(d: &ExtendingDatum, d2: &ExtendingDatum, r: &Matrix) -> Result<bool, Error> {
    same_shape(d, d2)?;
    if d.act_left != d2.act_left || d.act_right != d2.act_right {
        return Err(Error::Precondition {
            context: "cohomologous datums must share the actions ◁ and ▷".into(),
            report: None,
        });
    }
    let pair = MorphismPair {
        r: r.clone(),
        s: Matrix::identity(d.dim_v),
    };
    check_pair(d, &pair)?;
    let (n, m) = (d.dim_z(), d.dim_v);
    let rr = |u: &[Rational]| r.apply(u);
    let z = |i| unit(n, i);
    let v = |i| unit(m, i);
    let conds = [
        Condition::new("C1", "u,x", &[m, n], |t| {
            let (u, x) = (v(t[0]), z(t[1]));
            let rhs = sub(&add(&d.zmul(&rr(&u), &x), &d2.proj_r(&u, &x)), &rr(&d2.act_l(&u, &x)));
            (d.proj_r(&u, &x), rhs)
        }),
        Condition::new("C2", "x,u", &[n, m], |t| {
            let (x, u) = (z(t[0]), v(t[1]));
            let rhs = sub(&add(&d.zmul(&x, &rr(&u)), &d2.proj_l(&x, &u)), &rr(&d2.act_r(&x, &u)));
            (d.proj_l(&x, &u), rhs)
        }),
        Condition::new("C3", "u,v", &[m, m], |t| {
            let (u, vv) = (v(t[0]), v(t[1]));
            let mut rhs = d2.act_r(&rr(&u), &vv);
            add_assign(&mut rhs, &d2.act_l(&u, &rr(&vv)));
            add_assign(&mut rhs, &d2.st(&u, &vv));
            (d.st(&u, &vv), rhs)
        }),
        Condition::new("C4", "u,v", &[m, m], |t| {
            let (u, vv) = (v(t[0]), v(t[1]));
            let mut inner = d2.act_r(&rr(&u), &vv);
            add_assign(&mut inner, &d2.act_l(&u, &rr(&vv)));
            add_assign(&mut inner, &d2.st(&u, &vv));
            let mut rhs = d.zmul(&rr(&u), &rr(&vv));
            add_assign(&mut rhs, &d2.proj_l(&rr(&u), &vv));
            add_assign(&mut rhs, &d2.proj_r(&u, &rr(&vv)));
            add_assign(&mut rhs, &d2.om(&u, &vv));
            (d.om(&u, &vv), sub(&rhs, &rr(&inner)))
        }),
    ];
    Ok(report::run(&conds).passed)
}

/// The datum `d` whose unified product is carried onto that of `d2` by
/// `ψ(x, u) = (x + r(u), s(u))`, i.e. the unique `d` with `d ≡ d2` via
/// `pair`. `s` must be invertible.
pub fn pull_back(d2: &ExtendingDatum, pair: &MorphismPair) -> Result<ExtendingDatum, Error> {
    d2.validate()?;
    check_pair(d2, pair)?;
    if !pair.s.is_invertible() {
        return Err(Error::Singular("s must be invertible".into()));
    }
    // Columns of ψ are the images of the basis of Z ⊕ V, so changing basis
    // along ψ transports the product of d2 back through ψ.
    let pulled = d2.unified_algebra().change_of_basis(&pair.as_block_matrix())?;
    let p = InclusionPresentation::coordinate_split(pulled, &(0..d2.dim_z()).collect::<Vec<_>>())?;
    let d = extract_datum(&p)?;
    if d.base != d2.base {
        return Err(Error::Internal("pull-back changed the base algebra".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, q};

    fn a6_presentation() -> InclusionPresentation {
        InclusionPresentation::coordinate_split(catalog::a6(), &[1, 2]).unwrap()
    }

    #[test]
    fn trivial_datum_passes_everything() {
        let d = ExtendingDatum::trivial(catalog::a1(), 2);
        let report = verify_datum(&d);
        assert!(report.passed);
        assert_eq!(report.condition_results.len(), 14);
        let u = build_unified(&d, false).unwrap();
        assert_eq!(u, catalog::a1().direct_sum(&Algebra::null(2)));
    }

    #[test]
    fn a6_extraction_matches_hand_computation() {
        let d = extract_datum(&a6_presentation()).unwrap();
        // Z = span{e2, e3} is null; u = e1.
        assert!(d.base.is_null());
        assert_eq!(d.omega.slot(0, 0), &[int(1), int(0)]);
        assert_eq!(d.proj_right.slot(0, 0), &[int(0), q(1, 2)]);
        assert_eq!(d.proj_left.slot(0, 0), &[int(0), int(1)]);
        assert!(d.act_left.is_zero() && d.act_right.is_zero() && d.star.is_zero());
        assert!(d.proj_right.slot(0, 1).iter().all(|c| c == &int(0)));
        assert!(verify_datum(&d).passed);
        assert!(round_trip_report(&a6_presentation()).unwrap().passed);
    }

    #[test]
    fn omega_only_on_a1_fails_z4() {
        let mut d = ExtendingDatum::trivial(catalog::a1(), 1);
        d.omega.set(0, 0, 0, int(1));
        let report = verify_datum(&d);
        let z4 = report.result("Z4").unwrap();
        assert!(!z4.passed);
        let w = z4.witness.as_ref().unwrap();
        assert_eq!(w.basis_tuple, vec![0, 0, 0]);
        assert_eq!(w.lhs_value, vec![int(0), int(0), int(1)]);
        assert_eq!(w.rhs_value, vec![int(0), int(0), int(0)]);
        assert!(build_unified(&d, false).is_err());
        assert!(!build_unified(&d, true).unwrap().is_zinbiel().passed);
    }

    #[test]
    fn extraction_rejects_bad_presentations() {
        // span{e1} in A1 is not a subalgebra.
        let p = InclusionPresentation::coordinate_split(catalog::a1(), &[0]).unwrap();
        assert!(matches!(extract_datum(&p), Err(Error::NotClosed(_))));
        let mut p = a6_presentation();
        p.complement = Matrix::from_rows(vec![vec![int(0), int(1), int(1)]], 3).unwrap();
        assert!(matches!(extract_datum(&p), Err(Error::NotComplementary(_))));
    }

    #[test]
    fn morphism_pair_examples() {
        let d = extract_datum(&a6_presentation()).unwrap();
        let id = MorphismPair::identity(2, 1);
        assert!(is_morphism_pair(&d, &d, &id).unwrap().passed);
        let pair = MorphismPair {
            r: Matrix::from_rows(vec![vec![int(1)], vec![int(0)]], 1).unwrap(),
            s: Matrix::identity(1),
        };
        let report = is_morphism_pair(&d, &d, &pair).unwrap();
        assert_eq!(report.failed_labels(), vec!["M6"]);
        let w = report.result("M6").unwrap().witness.as_ref().unwrap();
        assert_eq!(w.lhs_value, vec![int(1), int(0)]);
        assert_eq!(w.rhs_value, vec![int(1), q(3, 2)]);
    }

    #[test]
    fn equivalence_examples() {
        let d = extract_datum(&a6_presentation()).unwrap();
        let trivial = ExtendingDatum::trivial(d.base.clone(), 1);
        assert!(datums_equivalent(&d, &d, &MorphismPair::identity(2, 1)).unwrap());
        assert!(!datums_equivalent(&d, &trivial, &MorphismPair::identity(2, 1)).unwrap());
        let singular = MorphismPair {
            r: Matrix::zeros(2, 1),
            s: Matrix::zeros(1, 1),
        };
        assert!(matches!(datums_equivalent(&d, &d, &singular), Err(Error::Singular(_))));
        assert!(datums_cohomologous(&d, &d, &Matrix::zeros(2, 1)).unwrap());
    }

    #[test]
    fn pull_back_is_equivalent_and_invertible() {
        let d2 = extract_datum(&a6_presentation()).unwrap();
        let pair = MorphismPair {
            r: Matrix::from_rows(vec![vec![int(1)], vec![int(-2)]], 1).unwrap(),
            s: Matrix::from_rows(vec![vec![int(3)]], 1).unwrap(),
        };
        let d = pull_back(&d2, &pair).unwrap();
        assert!(verify_datum(&d).passed);
        assert!(datums_equivalent(&d, &d2, &pair).unwrap());
        assert!(is_morphism_pair(&d, &d2, &pair).unwrap().passed);
        assert!(datums_equivalent(&d2, &d, &pair.inverse().unwrap()).unwrap());
    }

    #[test]
    fn cohomologous_precondition_is_distinct() {
        let d = extract_datum(&a6_presentation()).unwrap();
        let mut d2 = d.clone();
        d2.act_left.set(0, 0, 0, int(1));
        assert!(matches!(
            datums_cohomologous(&d, &d2, &Matrix::zeros(2, 1)),
            Err(Error::Precondition { .. })
        ));
    }
}
