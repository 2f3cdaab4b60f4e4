//! Seeded random inputs for property checks and the acceptance suite.
//!
//! All generators take a [`rand::Rng`]; with a seeded `ChaCha8Rng` the
//! output is reproducible across platforms.

use num::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Algebra;
use crate::catalog;
use crate::exactlin::{int, q, Rational, Tensor3};
use crate::extending::ExtendingDatum;
use crate::products::{CrossedSystem, MatchedPair};

/// `p/d` with `|p| ≤ 5` and `1 ≤ d ≤ 4`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    q(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Each entry is nonzero with probability `density`, and then `±1`.
pub fn sparse_tensor<R: Rng>(rng: &mut R, dims: (usize, usize, usize), density: f64) -> Tensor3 {
    let mut t = Tensor3::zeros(dims.0, dims.1, dims.2);
    for i in 0..dims.0 {
        for j in 0..dims.1 {
            for k in 0..dims.2 {
                if rng.gen_bool(density) {
                    t.set(i, j, k, int(if rng.gen_bool(0.5) { 1 } else { -1 }));
                }
            }
        }
    }
    t
}

/// A Zinbiel algebra of dimension 1, 2 or 3 drawn from a fixed list that
/// includes the null algebra of each dimension.
pub fn small_zinbiel<R: Rng>(rng: &mut R, dim: usize) -> Algebra {
    let pick = match dim {
        1 => vec![Algebra::null(1)],
        2 => vec![
            Algebra::null(2),
            Algebra::from_table(2, &[(1, 1, 2, int(1))]).expect("table"),
            Algebra::from_table(2, &[(2, 2, 1, int(1))]).expect("table"),
        ],
        3 => {
            let mut v = catalog::standard_algebras();
            v.push(catalog::a5(nonzero_rational(rng)));
            v.push(Algebra::null(3));
            v
        }
        _ => panic!("small_zinbiel supports dimensions 1 to 3"),
    };
    pick.choose(rng).expect("nonempty").clone()
}

/// An algebra with random sparse `±1` structure constants, usually not
/// Zinbiel.
pub fn sparse_algebra<R: Rng>(rng: &mut R, dim: usize, density: f64) -> Algebra {
    Algebra::new(sparse_tensor(rng, (dim, dim, dim), density)).expect("cubic tensor")
}

/// A datum over `base` whose six maps are sparse `±1` tensors.
pub fn datum<R: Rng>(rng: &mut R, base: Algebra, dim_v: usize, density: f64) -> ExtendingDatum {
    let (n, m) = (base.dim(), dim_v);
    ExtendingDatum {
        act_left: sparse_tensor(rng, (m, n, m), density),
        act_right: sparse_tensor(rng, (n, m, m), density),
        proj_left: sparse_tensor(rng, (n, m, n), density),
        proj_right: sparse_tensor(rng, (m, n, n), density),
        omega: sparse_tensor(rng, (m, m, n), density),
        star: sparse_tensor(rng, (m, m, m), density),
        base,
        dim_v,
    }
}

pub fn crossed_system<R: Rng>(rng: &mut R, base: Algebra, top: Algebra, density: f64) -> CrossedSystem {
    let (n, m) = (base.dim(), top.dim());
    CrossedSystem {
        proj_right: sparse_tensor(rng, (m, n, n), density),
        proj_left: sparse_tensor(rng, (n, m, n), density),
        omega: sparse_tensor(rng, (m, m, n), density),
        base,
        top,
    }
}

pub fn matched_pair<R: Rng>(rng: &mut R, base: Algebra, top: Algebra, density: f64) -> MatchedPair {
    let (n, m) = (base.dim(), top.dim());
    MatchedPair {
        act_left: sparse_tensor(rng, (m, n, m), density),
        act_right: sparse_tensor(rng, (n, m, m), density),
        proj_left: sparse_tensor(rng, (n, m, n), density),
        proj_right: sparse_tensor(rng, (m, n, n), density),
        base,
        top,
    }
}

/// A density from a spread that yields both passing and failing inputs.
pub fn density<R: Rng>(rng: &mut R) -> f64 {
    *[0.02, 0.05, 0.1, 0.2, 0.35].choose(rng).expect("nonempty")
}
