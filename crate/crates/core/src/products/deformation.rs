use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::{add, add_assign, sub, unit, Matrix, Rational, Tensor3, Vector};
use crate::report::{self, CheckReport, Condition};

use super::{bicrossed, MatchedPair};

/// Largest grid [`search_deformation_maps`] walks unless told otherwise.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 20;

fn check_r(mp: &MatchedPair, r: &Matrix, name: &str) -> Result<(), Error> {
    let (n, m) = (mp.base.dim(), mp.top.dim());
    if r.rows() != n || r.cols() != m {
        return Err(Error::Shape(format!(
            "{name} must be {n}x{m} (W → Z), got {}x{}",
            r.rows(),
            r.cols()
        )));
    }
    Ok(())
}

/// `u ·_r v = u·v + u◁r(v) + r(u)▷v`.
fn deformed_product(mp: &MatchedPair, r: &Matrix, u: &[Rational], v: &[Rational]) -> Vector {
    let mut w = mp.top.mul(u, v);
    add_assign(&mut w, &mp.act_left.apply(u, &r.apply(v)));
    add_assign(&mut w, &mp.act_right.apply(&r.apply(u), v));
    w
}

/// The deformation-map equation
/// `r(u·v) − r(u)·r(v) = u⊳r(v) + r(u)⊲v − r(u◁r(v) + r(u)▷v)`
/// on basis pairs of `W`.
pub fn deformation_report(mp: &MatchedPair, r: &Matrix) -> Result<CheckReport, Error> {
    mp.validate()?;
    check_r(mp, r, "r")?;
    let m = mp.top.dim();
    let cond = Condition::new("deformation map", "u,v", &[m, m], move |t| {
        let (u, v) = (unit(m, t[0]), unit(m, t[1]));
        let (ru, rv) = (r.apply(&u), r.apply(&v));
        let lhs = sub(&r.apply(&mp.top.mul(&u, &v)), &mp.base.mul(&ru, &rv));
        let twist = add(&mp.act_left.apply(&u, &rv), &mp.act_right.apply(&ru, &v));
        let rhs = sub(
            &add(&mp.proj_right.apply(&u, &rv), &mp.proj_left.apply(&ru, &v)),
            &r.apply(&twist),
        );
        (lhs, rhs)
    });
    Ok(report::run(&[cond]))
}

pub fn is_deformation_map(mp: &MatchedPair, r: &Matrix) -> Result<bool, Error> {
    Ok(deformation_report(mp, r)?.passed)
}

/// The `r`-deformation `W_r` of `W`.
///
/// Besides checking that `r` is a deformation map, verifies that the graph
/// `{(r(u), u)}` is a subalgebra of `Z ⋈ W` meeting `Z` trivially; a failure
/// there is an [`Error::Internal`].
pub fn r_deform(mp: &MatchedPair, r: &Matrix) -> Result<Algebra, Error> {
    let report = deformation_report(mp, r)?;
    if !report.passed {
        return Err(Error::precondition("r is not a deformation map", report));
    }
    let (n, m) = (mp.base.dim(), mp.top.dim());
    let mult = Tensor3::from_fn(m, m, m, |i, j| deformed_product(mp, r, &unit(m, i), &unit(m, j)));

    let (_, product) = bicrossed(mp)?;
    let graph_rows: Vec<Vector> = (0..m)
        .map(|a| r.column(a).into_iter().chain(unit(m, a)).collect())
        .collect();
    let graph = Matrix::from_rows(graph_rows.clone(), n + m)?;
    if !product.subspace_check(&graph, crate::algebra::SubspaceMode::Subalgebra)? {
        return Err(Error::Internal("graph of a deformation map is not a subalgebra".into()));
    }
    let z_rows = (0..n).map(|i| unit(n + m, i));
    let stacked = Matrix::from_rows(z_rows.chain(graph_rows).collect(), n + m)?;
    if stacked.rank() != n + m {
        return Err(Error::Internal(
            "graph of a deformation map is not a complement of Z".into(),
        ));
    }
    Algebra::new(mult)
}

/// Whether `σ` is an isomorphism `W_r → W_R`, i.e.
/// `σ(u·v) − σ(u)·σ(v) = σ(u)◁R(σ(v)) + R(σ(u))▷σ(v) − σ(u◁r(v)) − σ(r(u)▷v)`.
pub fn deformations_equivalent(mp: &MatchedPair, r: &Matrix, big_r: &Matrix, sigma: &Matrix) -> Result<bool, Error> {
    mp.validate()?;
    check_r(mp, r, "r")?;
    check_r(mp, big_r, "R")?;
    let m = mp.top.dim();
    if sigma.rows() != m || sigma.cols() != m {
        return Err(Error::Shape(format!("sigma must be {m}x{m}")));
    }
    if !sigma.is_invertible() {
        return Err(Error::Singular("sigma must be invertible".into()));
    }
    let cond = Condition::new("equivalent deformations", "u,v", &[m, m], move |t| {
        let (u, v) = (unit(m, t[0]), unit(m, t[1]));
        let (su, sv) = (sigma.apply(&u), sigma.apply(&v));
        let lhs = sub(&sigma.apply(&mp.top.mul(&u, &v)), &mp.top.mul(&su, &sv));
        let mut rhs = mp.act_left.apply(&su, &big_r.apply(&sv));
        add_assign(&mut rhs, &mp.act_right.apply(&big_r.apply(&su), &sv));
        let twist = add(
            &mp.act_left.apply(&u, &r.apply(&v)),
            &mp.act_right.apply(&r.apply(&u), &v),
        );
        (lhs, sub(&rhs, &sigma.apply(&twist)))
    });
    Ok(report::run(&[cond]).passed)
}

/// Every `W → Z` matrix with entries from `coeffs` that is a deformation
/// map, in lexicographic order of row-major entries (with `coeffs` sorted
/// ascending). Fails when the grid has more than `budget` points.
pub fn search_deformation_maps(mp: &MatchedPair, coeffs: &[Rational], budget: u128) -> Result<Vec<Matrix>, Error> {
    mp.validate()?;
    let mut coeffs = coeffs.to_vec();
    coeffs.sort();
    coeffs.dedup();
    if coeffs.is_empty() {
        return Ok(Vec::new());
    }
    let (n, m) = (mp.base.dim(), mp.top.dim());
    let cells = n * m;
    let candidates = (coeffs.len() as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    let mut found = Vec::new();
    let grid = vec![coeffs.len(); cells];
    for digits in report::tuples(&grid) {
        let rows = (0..n)
            .map(|i| (0..m).map(|j| coeffs[digits[i * m + j]].clone()).collect())
            .collect();
        let r = Matrix::from_rows(rows, m)?;
        if is_deformation_map(mp, &r)? {
            found.push(r);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, q};
    use crate::products::MatchedPair;

    fn col(v: &[Rational]) -> Matrix {
        Matrix::from_images(&[v.to_vec()], v.len()).unwrap()
    }

    #[test]
    fn zero_map_is_always_a_deformation() {
        let mp = catalog::a3_matched_pair();
        let zero = Matrix::zeros(2, 1);
        assert!(is_deformation_map(&mp, &zero).unwrap());
        assert_eq!(r_deform(&mp, &zero).unwrap(), mp.top);
    }

    #[test]
    fn a3_pair_accepts_every_map() {
        let mp = catalog::a3_matched_pair();
        for t in [1, -2, 5] {
            assert!(is_deformation_map(&mp, &col(&[int(0), int(t)])).unwrap());
        }
        let r = col(&[int(1), int(0)]);
        assert!(is_deformation_map(&mp, &r).unwrap());
        assert_eq!(r_deform(&mp, &r).unwrap(), Algebra::null(1));
        let found = search_deformation_maps(&mp, &[int(1), int(0), int(-1), int(0)], 100).unwrap();
        assert_eq!(found.len(), 9);
        assert_eq!(found[0], col(&[int(-1), int(-1)]));
        assert_eq!(found[8], col(&[int(1), int(1)]));
    }

    #[test]
    fn trivial_pair_needs_square_zero_image() {
        // Z = A1, W null of dim 1: the condition is r(u)·r(u) = 0, i.e. the
        // e1-coordinate of r(u) vanishes.
        let mp = MatchedPair::trivial(catalog::a1(), Algebra::null(1));
        let found = search_deformation_maps(&mp, &[int(0), int(1)], 1000).unwrap();
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|r| r.get(0, 0) == &int(0)));
        let bad = col(&[int(1), int(0), int(0)]);
        assert!(!is_deformation_map(&mp, &bad).unwrap());
        assert!(matches!(r_deform(&mp, &bad), Err(Error::Precondition { .. })));
    }

    #[test]
    fn search_limits() {
        let mp = MatchedPair::trivial(catalog::a1(), Algebra::null(2));
        assert!(search_deformation_maps(&mp, &[], 10).unwrap().is_empty());
        assert!(matches!(
            search_deformation_maps(&mp, &[int(0), int(1)], 10),
            Err(Error::BudgetExceeded {
                candidates: 64,
                budget: 10
            })
        ));
    }

    #[test]
    fn deformation_equivalence() {
        let mp = catalog::a3_matched_pair();
        let r = col(&[int(1), int(0)]);
        let big_r = col(&[int(0), int(1)]);
        let id = Matrix::identity(1);
        assert!(deformations_equivalent(&mp, &r, &r, &id).unwrap());
        assert!(deformations_equivalent(&mp, &r, &big_r, &id).unwrap());
        assert!(matches!(
            deformations_equivalent(&mp, &r, &r, &Matrix::zeros(1, 1)),
            Err(Error::Singular(_))
        ));
    }

    fn regular_pair_on_a1() -> MatchedPair {
        // Z = A1 acting on a null copy of itself.
        let b = crate::products::Bimodule::regular(catalog::a1());
        let mut mp = MatchedPair::trivial(catalog::a1(), Algebra::null(3));
        mp.act_left = b.act_left;
        mp.act_right = b.act_right;
        mp
    }

    fn diag(d: [Rational; 3]) -> Matrix {
        let mut m = Matrix::zeros(3, 3);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    #[test]
    fn deformations_of_the_regular_pair_on_a1() {
        // r = diag(a, 0, a/2) solves the deformation equation, and W_r has
        // the single product e1 ·_r e1 = 2a·e3.
        let mp = regular_pair_on_a1();
        assert!(bicrossed(&mp).unwrap().0.passed);
        let r = diag([int(2), int(0), int(1)]);
        let big_r = diag([int(1), int(0), q(1, 2)]);
        let w_r = r_deform(&mp, &r).unwrap();
        assert_eq!(w_r, Algebra::from_table(3, &[(1, 1, 3, int(4))]).unwrap());
        assert!(w_r.is_zinbiel().passed);
        assert!(!is_deformation_map(&mp, &diag([int(2), int(0), int(2)])).unwrap());

        assert!(!deformations_equivalent(&mp, &r, &big_r, &Matrix::identity(3)).unwrap());
        // σ(e1 ·_r e1) = σ(e1) ·_R σ(e1) needs σ3 = σ1²/2.
        let sigma = diag([int(2), int(1), int(2)]);
        assert!(deformations_equivalent(&mp, &r, &big_r, &sigma).unwrap());

        // The relation says exactly that σ: W_r → W_R is a homomorphism.
        let w_big_r = r_deform(&mp, &big_r).unwrap();
        for s in [
            Matrix::identity(3),
            sigma,
            diag([int(1), int(-1), q(1, 2)]),
            diag([int(1), int(5), int(1)]),
        ] {
            assert_eq!(
                deformations_equivalent(&mp, &r, &big_r, &s).unwrap(),
                w_r.is_homomorphism(&w_big_r, &s).unwrap().passed
            );
        }
    }
}
