use crate::algebra::{Algebra, SubspaceMode};
use crate::error::Error;
use crate::exactlin::{Matrix, Tensor3};
use crate::extending::{build_unified, extract_datum, ExtendingDatum, InclusionPresentation};
use crate::report::{self, CheckReport};

use super::expect_dims;

/// Mutual actions of two Zinbiel algebras `Z` and `W` on each other.
///
/// Signatures follow the bicrossed product
/// `(x, u)∘(y, v) = (x·y + x⊲v + u⊳y, x▷v + u◁y + u·v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub base: Algebra,
    pub top: Algebra,
    /// `u ◁ x`, dims `(dim W, dim Z, dim W)`.
    pub act_left: Tensor3,
    /// `u ⊳ x`, dims `(dim W, dim Z, dim Z)`.
    pub proj_right: Tensor3,
    /// `x ⊲ u`, dims `(dim Z, dim W, dim Z)`.
    pub proj_left: Tensor3,
    /// `x ▷ u`, dims `(dim Z, dim W, dim W)`.
    pub act_right: Tensor3,
}

const SIGNATURE_NOTE: &str =
    "signatures: u◁x in W, u⊳x in Z, x⊲u in Z, x▷u in W (as required by the bicrossed product)";

impl MatchedPair {
    pub fn trivial(base: Algebra, top: Algebra) -> Self {
        let (n, m) = (base.dim(), top.dim());
        Self {
            base,
            top,
            act_left: Tensor3::zeros(m, n, m),
            proj_right: Tensor3::zeros(m, n, n),
            proj_left: Tensor3::zeros(n, m, n),
            act_right: Tensor3::zeros(n, m, m),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (n, m) = (self.base.dim(), self.top.dim());
        expect_dims("actL", &self.act_left, (m, n, m))?;
        expect_dims("projR", &self.proj_right, (m, n, n))?;
        expect_dims("projL", &self.proj_left, (n, m, n))?;
        expect_dims("actR", &self.act_right, (n, m, m))
    }

    /// The extending datum with `ω = 0` and `∗` the product of `W`.
    pub fn to_datum(&self) -> ExtendingDatum {
        let mut d = ExtendingDatum::trivial(self.base.clone(), self.top.dim());
        d.act_left = self.act_left.clone();
        d.act_right = self.act_right.clone();
        d.proj_left = self.proj_left.clone();
        d.proj_right = self.proj_right.clone();
        d.star = self.top.mult().clone();
        d
    }
}

/// Checks the extending conditions `Z1.1`–`Z12` at `ω = 0`, `∗ = ·_W`
/// (where `Z12` is the Zinbiel identity of `W`) plus the Zinbiel identity of
/// `Z` (label `Z`), and builds the bicrossed product `Z ⋈ W`.
///
/// The report passes iff the returned algebra is Zinbiel.
pub fn bicrossed(mp: &MatchedPair) -> Result<(CheckReport, Algebra), Error> {
    mp.validate()?;
    let d = mp.to_datum();
    let mut conds = vec![mp.base.zinbiel_condition("Z")];
    conds.extend(d.conditions());
    let report = report::run(&conds).with_note(SIGNATURE_NOTE);
    Ok((report, build_unified(&d, true)?))
}

/// Splits an algebra `E = Z ⊕ W` with both summands subalgebras into a
/// matched pair. Bases are given as rows in the coordinates of `E`; the
/// bicrossed product of the result is isomorphic to `E` via `(x, u) ↦ x + u`.
pub fn factorization_extract(e: &Algebra, z_basis: &Matrix, w_basis: &Matrix) -> Result<MatchedPair, Error> {
    if !e.subspace_check(z_basis, SubspaceMode::Subalgebra)? {
        return Err(Error::NotClosed("Z is not a subalgebra".into()));
    }
    if !e.subspace_check(w_basis, SubspaceMode::Subalgebra)? {
        return Err(Error::NotClosed("W is not a subalgebra".into()));
    }
    let p = InclusionPresentation {
        total: e.clone(),
        z_embed: z_basis.transpose(),
        complement: w_basis.clone(),
    };
    let d = extract_datum(&p)?;
    if !d.omega.is_zero() {
        return Err(Error::Internal("closed complement produced a nonzero cocycle".into()));
    }
    Ok(MatchedPair {
        top: Algebra::new(d.star)?,
        base: d.base,
        act_left: d.act_left,
        proj_right: d.proj_right,
        proj_left: d.proj_left,
        act_right: d.act_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, q, unit};

    fn a3_pair() -> MatchedPair {
        catalog::a3_matched_pair()
    }

    #[test]
    fn a3_factorization() {
        let mp = a3_pair();
        assert!(mp.base.is_null() && mp.top.is_null());
        assert_eq!(mp.proj_left.slot(0, 0), &[int(0), q(1, 2)]);
        assert_eq!(mp.proj_right.slot(0, 0), &[int(0), q(-1, 2)]);
        assert_eq!(mp.proj_left.nonzero_entries().count(), 1);
        assert_eq!(mp.proj_right.nonzero_entries().count(), 1);
        assert!(mp.act_left.is_zero() && mp.act_right.is_zero());

        let (report, e) = bicrossed(&mp).unwrap();
        assert!(report.passed);
        assert!(!report.notes.is_empty());
        let sum = Matrix::from_images(&[unit(3, 0), unit(3, 2), unit(3, 1)], 3).unwrap();
        assert!(e.is_isomorphism(&catalog::a3(), &sum).unwrap());
    }

    #[test]
    fn perturbed_a3_pair_fails_both_ways() {
        let mut mp = a3_pair();
        mp.act_left.set(0, 0, 0, int(1));
        let (report, e) = bicrossed(&mp).unwrap();
        assert!(!report.passed);
        assert!(!e.is_zinbiel().passed);
    }

    #[test]
    fn direct_product_has_trivial_actions() {
        let e = catalog::a1().direct_sum(&catalog::a4());
        let z = Matrix::from_rows((0..3).map(|i| unit(6, i)).collect(), 6).unwrap();
        let w = Matrix::from_rows((3..6).map(|i| unit(6, i)).collect(), 6).unwrap();
        let mp = factorization_extract(&e, &z, &w).unwrap();
        assert_eq!(mp, MatchedPair::trivial(catalog::a1(), catalog::a4()));
    }

    #[test]
    fn a2_plane_is_not_a_factorization() {
        let z = Matrix::from_rows(vec![unit(3, 0), unit(3, 2)], 3).unwrap();
        let w = Matrix::from_rows(vec![unit(3, 1)], 3).unwrap();
        assert!(matches!(
            factorization_extract(&catalog::a2(), &z, &w),
            Err(Error::NotClosed(_))
        ));
    }
}
