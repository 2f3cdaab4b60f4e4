use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::Tensor3;
use crate::extending::{build_unified, ExtendingDatum};
use crate::report::{self, CheckReport};

use super::expect_dims;

/// A vector space `V` with actions `x ▷ v` and `v ◁ x` of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub base: Algebra,
    pub dim_v: usize,
    /// `x ▷ v`, dims `(dim Z, dim V, dim V)`.
    pub act_right: Tensor3,
    /// `v ◁ x`, dims `(dim V, dim Z, dim V)`.
    pub act_left: Tensor3,
}

impl Bimodule {
    pub fn zero(base: Algebra, dim_v: usize) -> Self {
        let n = base.dim();
        Self {
            base,
            dim_v,
            act_right: Tensor3::zeros(n, dim_v, dim_v),
            act_left: Tensor3::zeros(dim_v, n, dim_v),
        }
    }

    /// `V = Z` with both actions given by the product of `Z`.
    pub fn regular(base: Algebra) -> Self {
        let n = base.dim();
        Self {
            act_right: base.mult().clone(),
            act_left: base.mult().clone(),
            dim_v: n,
            base,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (n, m) = (self.base.dim(), self.dim_v);
        expect_dims("actR", &self.act_right, (n, m, m))?;
        expect_dims("actL", &self.act_left, (m, n, m))
    }

    /// The extending datum whose only nonzero maps are the two actions.
    pub fn to_datum(&self) -> ExtendingDatum {
        let mut d = ExtendingDatum::trivial(self.base.clone(), self.dim_v);
        d.act_right = self.act_right.clone();
        d.act_left = self.act_left.clone();
        d
    }
}

/// The three bimodule axioms, labelled `BM1`–`BM3`:
///
/// ```text
/// (x·y) ▷ v = x ▷ (y ▷ v + v ◁ y)
/// (x ▷ v) ◁ y = x ▷ (v ◁ y + y ▷ v)
/// (v ◁ x) ◁ y = v ◁ (x·y + y·x)
/// ```
pub fn is_bimodule(b: &Bimodule) -> Result<CheckReport, Error> {
    b.validate()?;
    let d = b.to_datum();
    let conds: Vec<_> = d
        .conditions()
        .into_iter()
        .take(3)
        .zip(["BM1", "BM2", "BM3"])
        .map(|(c, l)| c.relabel(l))
        .collect();
    Ok(report::run(&conds))
}

/// `Z ⊕ V` with `(x, u)·(y, v) = (x·y, x ▷ v + u ◁ y)`.
pub fn semidirect(b: &Bimodule) -> Result<Algebra, Error> {
    let report = is_bimodule(b)?;
    if !report.passed {
        return Err(Error::precondition("not a bimodule", report));
    }
    build_unified(&b.to_datum(), true)
}
