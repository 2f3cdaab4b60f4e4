//! Built-in fixtures: six 3-dimensional Zinbiel algebras `A1`–`A6` and the
//! 4-dimensional flag extensions `DA*` (solving for `D`) and `TA*` (solving
//! for `T`) built on them.
//!
//! Flag fixtures are assembled from their flag datum, never transcribed, and
//! [`Catalog::algebra`] returns their extension product without checking the
//! flag conditions. Several of them are not Zinbiel for any parameter value,
//! because their `μ` violates `F1`; [`crate::flag::verify_flag`] reports
//! which.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::{int, q, unit, zero_vec, Matrix, Rational, Vector};
use crate::flag::{flag_extension_unchecked, FlagDatum, FlagMode};
use crate::products::{factorization_extract, MatchedPair};

/// Parameter bindings by name, e.g. `lambda`, `mu1`, `a21`.
pub type Params = BTreeMap<String, Rational>;

pub fn params(pairs: &[(&str, Rational)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn a1() -> Algebra {
    table(&[(1, 1, 3, int(1))])
}

pub fn a2() -> Algebra {
    table(&[(1, 1, 3, int(1)), (2, 2, 3, int(1))])
}

pub fn a3() -> Algebra {
    table(&[(1, 2, 3, q(1, 2)), (2, 1, 3, q(-1, 2))])
}

pub fn a4() -> Algebra {
    table(&[(2, 1, 3, int(1))])
}

/// `A5` with `e2·e2 = λe3`; only `λ ≠ 0` belongs to the family.
pub fn a5(lambda: Rational) -> Algebra {
    table(&[(1, 1, 3, int(1)), (1, 2, 3, int(1)), (2, 2, 3, lambda)])
}

pub fn a6() -> Algebra {
    table(&[(1, 1, 2, int(1)), (1, 2, 3, q(1, 2)), (2, 1, 3, int(1))])
}

fn table(entries: &[(usize, usize, usize, Rational)]) -> Algebra {
    Algebra::from_table(3, entries).expect("fixture table is well formed")
}

/// `A1`–`A6` with `A5` at `λ = 1`.
pub fn standard_algebras() -> Vec<Algebra> {
    vec![a1(), a2(), a3(), a4(), a5(int(1)), a6()]
}

/// `A3 = span{e1, e3} ⋈ span{e2}`.
pub fn a3_matched_pair() -> MatchedPair {
    let z = Matrix::from_rows(vec![unit(3, 0), unit(3, 2)], 3).expect("rows");
    let w = Matrix::from_rows(vec![unit(3, 1)], 3).expect("rows");
    factorization_extract(&a3(), &z, &w).expect("A3 factorizes")
}

/// A fixture id together with the parameter values it is recorded at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub id: String,
    pub params: Params,
}

/// Metadata of a flag fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagFamily {
    pub id: &'static str,
    /// Name of the solution family the fixture instantiates, e.g. `D1`.
    pub family: &'static str,
    pub base: &'static str,
    pub mode: FlagMode,
    /// Every parameter the fixture needs, base parameters first.
    pub params: Vec<&'static str>,
    pub recorded: Params,
}

type AlgebraBuild = Box<dyn Fn(&Args) -> Result<Algebra, Error> + Send + Sync>;
type FlagBuild = fn(&Args) -> Result<FlagParts, Error>;

struct AlgebraEntry {
    id: &'static str,
    params: &'static [&'static str],
    recorded: Vec<(&'static str, Rational)>,
    build: AlgebraBuild,
}

struct FlagEntry {
    id: &'static str,
    family: &'static str,
    base: &'static str,
    mode: FlagMode,
    params: &'static [&'static str],
    recorded: Vec<(&'static str, Rational)>,
    build: FlagBuild,
}

/// `μ` and the images `D(eᵢ)`, `T(eᵢ)` that are nonzero.
struct FlagParts {
    mu: Vector,
    d: Vec<(usize, Vector)>,
    t: Vec<(usize, Vector)>,
}

impl FlagParts {
    fn d(mu: Vector, d: Vec<(usize, Vector)>) -> Self {
        Self { mu, d, t: Vec::new() }
    }
    fn t(mu: Vector, t: Vec<(usize, Vector)>) -> Self {
        Self { mu, d: Vec::new(), t }
    }
}

struct Args<'a> {
    id: &'a str,
    params: &'a Params,
}

impl Args<'_> {
    fn get(&self, name: &str) -> Result<Rational, Error> {
        self.params.get(name).cloned().ok_or_else(|| Error::MissingParam {
            fixture: self.id.to_string(),
            param: name.to_string(),
        })
    }

    fn nonzero(&self, name: &str) -> Result<Rational, Error> {
        let v = self.get(name)?;
        if v.is_zero() {
            return Err(Error::InvalidParam(format!("{}: {name} must be nonzero", self.id)));
        }
        Ok(v)
    }
}

fn v3(a: Rational, b: Rational, c: Rational) -> Vector {
    vec![a, b, c]
}

fn half() -> Rational {
    q(1, 2)
}

/// Holds the fixture constructors. [`Catalog::standard`] is the built-in
/// set; fixtures can be replaced to exercise the acceptance suite.
pub struct Catalog {
    algebras: Vec<AlgebraEntry>,
    flags: Vec<FlagEntry>,
}

impl Catalog {
    pub fn empty() -> Self {
        Self {
            algebras: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let fixed = |id: &'static str, f: fn() -> Algebra| AlgebraEntry {
            id,
            params: &[],
            recorded: Vec::new(),
            build: Box::new(move |_| Ok(f())),
        };
        let algebras = vec![
            fixed("A1", a1),
            fixed("A2", a2),
            fixed("A3", a3),
            fixed("A4", a4),
            AlgebraEntry {
                id: "A5",
                params: &["lambda"],
                recorded: vec![("lambda", int(1))],
                build: Box::new(|a| Ok(a5(a.nonzero("lambda")?))),
            },
            fixed("A6", a6),
        ];
        Self {
            algebras,
            flags: standard_flags(),
        }
    }

    /// Replaces the constructor of base algebra `id` by a constant, which
    /// also changes every flag fixture built on it.
    pub fn replace_algebra(&mut self, id: &str, value: Algebra) -> Result<(), Error> {
        let entry = self
            .algebras
            .iter_mut()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
        entry.build = Box::new(move |_| Ok(value.clone()));
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty() && self.flags.is_empty()
    }

    pub fn algebra_ids(&self) -> Vec<&'static str> {
        self.algebras.iter().map(|e| e.id).collect()
    }

    pub fn flag_families(&self) -> Vec<FlagFamily> {
        self.flags
            .iter()
            .map(|e| {
                let base = self.algebra_entry(e.base).expect("flag base is registered");
                let mut all: Vec<&'static str> = base.params.to_vec();
                all.extend(e.params);
                let recorded = base
                    .recorded
                    .iter()
                    .chain(&e.recorded)
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect();
                FlagFamily {
                    id: e.id,
                    family: e.family,
                    base: e.base,
                    mode: e.mode,
                    params: all,
                    recorded,
                }
            })
            .collect()
    }

    /// Every fixture at its recorded parameters.
    pub fn fixtures(&self) -> Vec<Fixture> {
        let mut out: Vec<Fixture> = self
            .algebras
            .iter()
            .map(|e| Fixture {
                id: e.id.to_string(),
                params: e.recorded.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            })
            .collect();
        out.extend(self.flag_families().into_iter().map(|f| Fixture {
            id: f.id.to_string(),
            params: f.recorded,
        }));
        out
    }

    fn algebra_entry(&self, id: &str) -> Option<&AlgebraEntry> {
        self.algebras.iter().find(|e| e.id == id)
    }

    fn check_names(id: &str, allowed: &[&str], params: &Params) -> Result<(), Error> {
        match params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(extra) => Err(Error::InvalidParam(format!("{id} has no parameter {extra}"))),
            None => Ok(()),
        }
    }

    /// The algebra of fixture `id`; for flag fixtures, the unchecked
    /// extension product of the flag datum.
    pub fn algebra(&self, id: &str, params: &Params) -> Result<Algebra, Error> {
        if let Some(e) = self.algebra_entry(id) {
            Self::check_names(id, e.params, params)?;
            return (e.build)(&Args { id, params });
        }
        flag_extension_unchecked(&self.flag(id, params)?)
    }

    pub fn flag(&self, id: &str, params: &Params) -> Result<FlagDatum, Error> {
        let e = self
            .flags
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
        let base_entry = self
            .algebra_entry(e.base)
            .ok_or_else(|| Error::UnknownFixture(e.base.to_string()))?;
        let mut allowed: Vec<&str> = base_entry.params.to_vec();
        allowed.extend(e.params);
        Self::check_names(id, &allowed, params)?;
        let args = Args { id, params };
        let base = (base_entry.build)(&args)?;
        let parts = (e.build)(&args)?;
        let n = base.dim();
        let images = |imgs: &[(usize, Vector)]| {
            let mut cols = vec![zero_vec(n); n];
            for (i, v) in imgs {
                cols[*i] = v.clone();
            }
            Matrix::from_images(&cols, n)
        };
        let mut fd = FlagDatum::zero(base);
        fd.mu = parts.mu;
        fd.d = images(&parts.d)?;
        fd.t = images(&parts.t)?;
        fd.validate()?;
        Ok(fd)
    }
}

/// [`Catalog::standard`]`.algebra(id, params)`.
pub fn get_algebra(id: &str, params: &Params) -> Result<Algebra, Error> {
    Catalog::standard().algebra(id, params)
}

/// [`Catalog::standard`]`.flag(id, params)`.
pub fn get_flag(id: &str, params: &Params) -> Result<FlagDatum, Error> {
    Catalog::standard().flag(id, params)
}

fn standard_flags() -> Vec<FlagEntry> {
    use FlagMode::{D, T};
    let entry = |id, family, base, mode, params, recorded: &[(&'static str, i64)], build| FlagEntry {
        id,
        family,
        base,
        mode,
        params,
        recorded: recorded.iter().map(|(k, v)| (*k, int(*v))).collect(),
        build,
    };
    vec![
        entry("DA1", "D1", "A1", D, &["mu1", "a21"], &[("mu1", 2), ("a21", 3)], |a| {
            let (m1, a21) = (a.nonzero("mu1")?, a.get("a21")?);
            let mu = v3(m1.clone(), Rational::zero(), half() * &m1 * &m1);
            let c = -(int(2) * &a21) / &m1;
            Ok(FlagParts::d(mu, vec![(1, v3(a21, Rational::zero(), c))]))
        }),
        entry("DA2", "D2", "A2", D, &["mu1"], &[("mu1", 1)], |a| {
            let m1 = a.nonzero("mu1")?;
            Ok(FlagParts::d(
                v3(m1.clone(), Rational::zero(), half() * &m1 * &m1),
                vec![],
            ))
        }),
        entry(
            "DA3.1",
            "D31",
            "A3",
            D,
            &["mu2", "mu3", "a21", "a31"],
            &[("mu2", 1), ("mu3", 1), ("a21", 1), ("a31", 1)],
            |a| {
                let mu = v3(Rational::zero(), a.nonzero("mu2")?, a.nonzero("mu3")?);
                Ok(FlagParts::d(
                    mu,
                    vec![(1, scale_first(a.get("a21")?)), (2, scale_first(a.get("a31")?))],
                ))
            },
        ),
        entry(
            "DA3.2",
            "D32",
            "A3",
            D,
            &["mu1", "mu3", "a12", "a32"],
            &[("mu1", 1), ("mu3", 1), ("a12", 1), ("a32", 1)],
            |a| {
                let mu = v3(a.nonzero("mu1")?, Rational::zero(), a.nonzero("mu3")?);
                let e2 = |c: Rational| v3(Rational::zero(), c, Rational::zero());
                Ok(FlagParts::d(mu, vec![(0, e2(a.get("a12")?)), (2, e2(a.get("a32")?))]))
            },
        ),
        entry(
            "DA4.1",
            "D41",
            "A4",
            D,
            &["mu1", "mu2", "a21", "a23"],
            &[("mu1", 1), ("mu2", 1), ("a21", 1), ("a23", 1)],
            |a| {
                let (m1, m2) = (a.get("mu1")?, a.get("mu2")?);
                let mu = v3(m1.clone(), m2.clone(), m1 * m2);
                Ok(FlagParts::d(
                    mu,
                    vec![(1, v3(a.get("a21")?, Rational::zero(), a.get("a23")?))],
                ))
            },
        ),
        entry(
            "DA4.2",
            "D42",
            "A4",
            D,
            &["mu1", "mu2", "a12"],
            &[("mu1", 1), ("mu2", 1), ("a12", 1)],
            |a| {
                let (m1, m2, a12) = (a.get("mu1")?, a.get("mu2")?, a.get("a12")?);
                let mu = v3(m1.clone(), m2.clone(), &m1 * &m2);
                let e2 = |c: Rational| v3(Rational::zero(), c, Rational::zero());
                Ok(FlagParts::d(mu, vec![(0, e2(a12.clone())), (2, e2(m2 * a12))]))
            },
        ),
        entry("DA5", "D5", "A5", D, &["a13", "a23"], &[("a13", 1), ("a23", 2)], |a| {
            let e3 = |c: Rational| v3(Rational::zero(), Rational::zero(), c);
            Ok(FlagParts::d(
                zero_vec(3),
                vec![(0, e3(a.get("a13")?)), (1, e3(a.get("a23")?))],
            ))
        }),
        entry("DA6", "D6", "A6", D, &["mu1"], &[("mu1", 1)], |a| {
            Ok(FlagParts::d(a6_mu(a)?, vec![]))
        }),
        entry(
            "TA1.1",
            "T11",
            "A1",
            T,
            &["mu1", "mu2", "b21"],
            &[("mu1", 1), ("mu2", 0), ("b21", 1)],
            |a| {
                let (m1, b21) = (a.nonzero("mu1")?, a.get("b21")?);
                let mu = v3(m1.clone(), a.get("mu2")?, half() * &m1 * &m1);
                let c = -(int(2) * &b21) / &m1;
                Ok(FlagParts::t(mu, vec![(1, v3(b21, Rational::zero(), c))]))
            },
        ),
        entry(
            "TA1.2",
            "T12",
            "A1",
            T,
            &["mu1", "mu2", "b12"],
            &[("mu1", 1), ("mu2", 0), ("b12", 1)],
            |a| {
                let (m1, m2, b12) = (a.nonzero("mu1")?, a.get("mu2")?, a.get("b12")?);
                let c = -(int(2) * &m2 * &b12) / (&m1 * &m1);
                let mu = v3(m1.clone(), m2, half() * &m1 * &m1);
                Ok(FlagParts::t(mu, vec![(0, v3(Rational::zero(), b12, c))]))
            },
        ),
        entry(
            "TA2.1",
            "T21",
            "A2",
            T,
            &["mu1", "b21"],
            &[("mu1", 1), ("b21", 1)],
            |a| {
                let (m1, b21) = (a.nonzero("mu1")?, a.get("b21")?);
                let c = -(int(2) * &b21) / &m1;
                let mu = v3(m1.clone(), m1.clone(), half() * &m1 * &m1);
                Ok(FlagParts::t(mu, vec![(1, v3(b21, Rational::zero(), c))]))
            },
        ),
        entry(
            "TA2.2",
            "T22",
            "A2",
            T,
            &["mu1", "b12"],
            &[("mu1", 1), ("b12", 1)],
            |a| {
                let (m1, b12) = (a.nonzero("mu1")?, a.get("b12")?);
                let c = -(int(2) * &b12) / &m1;
                let mu = v3(m1.clone(), m1.clone(), half() * &m1 * &m1);
                Ok(FlagParts::t(mu, vec![(0, v3(Rational::zero(), b12, c))]))
            },
        ),
        entry(
            "TA3.1",
            "T31",
            "A3",
            T,
            &["mu2", "mu3", "b21"],
            &[("mu2", 1), ("mu3", 1), ("b21", 1)],
            |a| {
                let mu = v3(Rational::zero(), a.nonzero("mu2")?, a.nonzero("mu3")?);
                Ok(FlagParts::t(mu, vec![(1, scale_first(a.get("b21")?))]))
            },
        ),
        entry(
            "TA3.2",
            "T32",
            "A3",
            T,
            &["mu2", "mu3", "b12"],
            &[("mu2", 1), ("mu3", 1), ("b12", 1)],
            |a| {
                let (m2, m3, b12) = (a.nonzero("mu2")?, a.nonzero("mu3")?, a.get("b12")?);
                let c = -(&m2 * &b12) / &m3;
                Ok(FlagParts::t(
                    v3(Rational::zero(), m2, m3),
                    vec![(0, v3(Rational::zero(), b12, c))],
                ))
            },
        ),
        entry(
            "TA3.3",
            "T33",
            "A3",
            T,
            &["mu1", "mu3", "b21"],
            &[("mu1", 1), ("mu3", 1), ("b21", 1)],
            |a| {
                let (m1, m3, b21) = (a.nonzero("mu1")?, a.nonzero("mu3")?, a.get("b21")?);
                let c = -(&m1 * &b21) / &m3;
                Ok(FlagParts::t(
                    v3(m1, Rational::zero(), m3),
                    vec![(1, v3(b21, Rational::zero(), c))],
                ))
            },
        ),
        entry(
            "TA3.4",
            "T34",
            "A3",
            T,
            &["mu1", "mu3", "b12"],
            &[("mu1", 1), ("mu3", 1), ("b12", 1)],
            |a| {
                let mu = v3(a.nonzero("mu1")?, Rational::zero(), a.nonzero("mu3")?);
                Ok(FlagParts::t(
                    mu,
                    vec![(0, v3(Rational::zero(), a.get("b12")?, Rational::zero()))],
                ))
            },
        ),
        entry(
            "TA4.1",
            "T41",
            "A4",
            T,
            &["mu1", "mu2", "b21"],
            &[("mu1", 1), ("mu2", 1), ("b21", 1)],
            |a| {
                let (m1, m2, b21) = (a.get("mu1")?, a.nonzero("mu2")?, a.get("b21")?);
                let c = -&b21 / &m2;
                let mu = v3(m1.clone(), m2.clone(), m1 * m2);
                Ok(FlagParts::t(mu, vec![(1, v3(b21, Rational::zero(), c))]))
            },
        ),
        entry(
            "TA4.2",
            "T42",
            "A4",
            T,
            &["mu1", "mu2", "b11", "b12"],
            &[("mu1", 1), ("mu2", 1), ("b11", 1), ("b12", 1)],
            |a| {
                let (m1, m2) = (a.nonzero("mu1")?, a.nonzero("mu2")?);
                let (b11, b12) = (a.get("b11")?, a.get("b12")?);
                let c = -(&b11 / &m2 + &b12 / &m1);
                let mu = v3(m1.clone(), m2.clone(), m1 * m2);
                Ok(FlagParts::t(mu, vec![(0, v3(b11, b12, c))]))
            },
        ),
        entry("TA5.1", "T51", "A5", T, &["b23"], &[("b23", 1)], |a| {
            Ok(FlagParts::t(
                zero_vec(3),
                vec![(1, v3(Rational::zero(), Rational::zero(), a.get("b23")?))],
            ))
        }),
        entry("TA5.2", "T52", "A5", T, &["mu1"], &[("mu1", 1)], |a| {
            let m1 = a.get("mu1")?;
            Ok(FlagParts::t(v3(m1.clone(), half() * &m1, half() * &m1 * &m1), vec![]))
        }),
        entry("TA6", "T6", "A6", T, &["mu1"], &[("mu1", 1)], |a| {
            Ok(FlagParts::t(a6_mu(a)?, vec![]))
        }),
    ]
}

fn scale_first(c: Rational) -> Vector {
    v3(c, Rational::zero(), Rational::zero())
}

fn a6_mu(a: &Args) -> Result<Vector, Error> {
    let m1 = a.get("mu1")?;
    let m2 = half() * &m1 * &m1;
    let m3 = q(1, 3) * &m1 * &m1 * &m1;
    Ok(v3(m1, m2, m3))
}
