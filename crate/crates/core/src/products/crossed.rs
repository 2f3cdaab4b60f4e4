use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::Tensor3;
use crate::extending::{build_unified, ExtendingDatum};
use crate::report::{self, CheckReport};

use super::expect_dims;

/// Data for a crossed product `Z #_ω W`: `W` acts on `Z` on both sides and
/// `ω` is a `Z`-valued cocycle on `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedSystem {
    pub base: Algebra,
    pub top: Algebra,
    /// `u ⊳ x`, dims `(dim W, dim Z, dim Z)`.
    pub proj_right: Tensor3,
    /// `x ⊲ u`, dims `(dim Z, dim W, dim Z)`.
    pub proj_left: Tensor3,
    /// `ω(u, v)`, dims `(dim W, dim W, dim Z)`.
    pub omega: Tensor3,
}

/// Labels of the extending conditions that survive when both actions on
/// `W` vanish and `∗` is the product of `W`. The rest hold trivially,
/// except `Z12`, which becomes the Zinbiel identity of `W`.
const SURVIVING: [(&str, &str); 7] = [
    ("Z2", "CS1"),
    ("Z3", "CS2"),
    ("Z4", "CS3"),
    ("Z6", "CS4"),
    ("Z7", "CS5"),
    ("Z9", "CS6"),
    ("Z11", "CS7"),
];

impl CrossedSystem {
    pub fn trivial(base: Algebra, top: Algebra) -> Self {
        let (n, m) = (base.dim(), top.dim());
        Self {
            base,
            top,
            proj_right: Tensor3::zeros(m, n, n),
            proj_left: Tensor3::zeros(n, m, n),
            omega: Tensor3::zeros(m, m, n),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (n, m) = (self.base.dim(), self.top.dim());
        expect_dims("projR", &self.proj_right, (m, n, n))?;
        expect_dims("projL", &self.proj_left, (n, m, n))?;
        expect_dims("omega", &self.omega, (m, m, n))
    }

    pub fn to_datum(&self) -> ExtendingDatum {
        let mut d = ExtendingDatum::trivial(self.base.clone(), self.top.dim());
        d.proj_right = self.proj_right.clone();
        d.proj_left = self.proj_left.clone();
        d.omega = self.omega.clone();
        d.star = self.top.mult().clone();
        d
    }
}

/// Checks `CS1`–`CS7` together with the Zinbiel identities of `Z` (label
/// `Z`) and `W` (label `W`), and builds `Z ⊕ W` with
/// `(x, u)∘(y, v) = (x·y + x⊲v + u⊳y + ω(u, v), u·v)`.
///
/// The report passes iff the returned algebra is Zinbiel.
pub fn crossed(cs: &CrossedSystem) -> Result<(CheckReport, Algebra), Error> {
    cs.validate()?;
    let d = cs.to_datum();
    let mut conds = vec![cs.base.zinbiel_condition("Z"), cs.top.zinbiel_condition("W")];
    for c in d.conditions() {
        if let Some((_, label)) = SURVIVING.iter().find(|(z, _)| *z == c.label()) {
            conds.push(c.relabel(*label));
        }
    }
    let report = report::run(&conds).with_note("Z and W check the Zinbiel identity of each factor");
    Ok((report, build_unified(&d, true)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, Matrix};

    fn line_by_plane(omega_slot: (usize, usize)) -> CrossedSystem {
        let mut cs = CrossedSystem::trivial(Algebra::null(1), Algebra::null(2));
        cs.omega.set(omega_slot.0, omega_slot.1, 0, int(1));
        cs
    }

    #[test]
    fn direct_sum_passes() {
        let cs = CrossedSystem::trivial(catalog::a1(), Algebra::null(2));
        let (report, e) = crossed(&cs).unwrap();
        assert!(report.passed);
        assert_eq!(report.condition_results.len(), 9);
        assert_eq!(e, catalog::a1().direct_sum(&Algebra::null(2)));
    }

    #[test]
    fn a1_reassembled_from_its_quotient() {
        // Z = span{e3}, W = A1/Z with basis f1, f2 and ω(f1, f1) = e3.
        let (report, e) = crossed(&line_by_plane((0, 0))).unwrap();
        assert!(report.passed && e.is_zinbiel().passed);
        // (z, f1, f2) ↦ (e3, e1, e2)
        let p = Matrix::from_images(
            &[
                vec![int(0), int(0), int(1)],
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
            ],
            3,
        )
        .unwrap();
        assert!(e.is_isomorphism(&catalog::a1(), &p).unwrap());
    }

    #[test]
    fn any_cocycle_on_null_data_passes() {
        let (report, e) = crossed(&line_by_plane((0, 1))).unwrap();
        assert!(report.passed);
        assert!(e.is_zinbiel().passed);
    }

    #[test]
    fn non_zinbiel_top_is_reported() {
        let bad_top = Algebra::from_table(1, &[(1, 1, 1, int(1))]).unwrap();
        let cs = CrossedSystem::trivial(Algebra::null(1), bad_top);
        let (report, e) = crossed(&cs).unwrap();
        assert_eq!(report.failed_labels(), vec!["W"]);
        assert!(!e.is_zinbiel().passed);
    }
}
