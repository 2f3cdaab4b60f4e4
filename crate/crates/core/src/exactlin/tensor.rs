use num::Zero;

use super::{Rational, Vector};

/// Structure constants of a bilinear map `A × B → C`.
///
/// Entry `(i, j, k)` is the coefficient of the `k`-th basis vector of `C` in
/// the image of the pair of basis vectors `(aᵢ, bⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dims: (usize, usize, usize),
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(d1: usize, d2: usize, d3: usize) -> Self {
        Self {
            dims: (d1, d2, d3),
            data: vec![Rational::zero(); d1 * d2 * d3],
        }
    }

    /// Builds the tensor whose `(i, j)` slot is `f(i, j)`.
    pub fn from_fn(d1: usize, d2: usize, d3: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = Self::zeros(d1, d2, d3);
        for i in 0..d1 {
            for j in 0..d2 {
                let v = f(i, j);
                assert_eq!(v.len(), d3, "slot ({i}, {j}) has wrong length");
                t.slot_mut(i, j).clone_from_slice(&v);
            }
        }
        t
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let (d1, d2, d3) = self.dims;
        debug_assert!(i < d1 && j < d2 && k < d3);
        (i * d2 + j) * d3 + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let idx = self.index(i, j, k);
        self.data[idx] = v;
    }

    /// Image of the basis pair `(aᵢ, bⱼ)`.
    pub fn slot(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.index(i, j, 0);
        &self.data[start..start + self.dims.2]
    }

    fn slot_mut(&mut self, i: usize, j: usize) -> &mut [Rational] {
        let d3 = self.dims.2;
        let start = (i * self.dims.1 + j) * d3;
        &mut self.data[start..start + d3]
    }

    /// Evaluates the bilinear map on coordinate vectors.
    pub fn apply(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let (d1, d2, d3) = self.dims;
        assert_eq!(a.len(), d1, "left argument has wrong length");
        assert_eq!(b.len(), d2, "right argument has wrong length");
        let mut out = vec![Rational::zero(); d3];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (o, c) in out.iter_mut().zip(self.slot(i, j)) {
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries as `((i, j, k), value)` in index order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rational)> + '_ {
        let (_, d2, d3) = self.dims;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| ((idx / (d2 * d3), (idx / d3) % d2, idx % d3), v))
    }
}
