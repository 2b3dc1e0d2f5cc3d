//! Alternating invertible matrices: the standard forms, orthogonal sums,
//! stabilization, congruence transforms and exact Pfaffians.
//!
//! "Alternating" here means skew-symmetric with an exactly zero diagonal.
//! The diagonal condition is independent of skew-symmetry in characteristic
//! 2 and is always enforced, so censuses over F_2 see the right object set.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{RingElement, RingHandle};

/// A square matrix validated to satisfy `M^t = -M` with zero diagonal.
/// The size is always even (odd alternating matrices are singular and
/// never carry a form class here); the empty 0x0 matrix is permitted as
/// the neutral element of the orthogonal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingMatrix {
    mat: ExactMatrix,
}

impl AlternatingMatrix {
    /// Validate and wrap. Rejects non-square, odd-size, nonzero-diagonal and
    /// non-skew matrices.
    pub fn new(mat: ExactMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotAlternating(format!(
                "not square: {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let n = mat.nrows();
        if n % 2 != 0 {
            return Err(Error::NotAlternating(format!("odd size {}", n)));
        }
        for i in 0..n {
            if !mat.entry(i, i).is_zero() {
                return Err(Error::NotAlternating(format!("nonzero diagonal at {}", i)));
            }
            for j in (i + 1)..n {
                let upper = mat.entry(i, j);
                let lower = mat.entry(j, i);
                if &upper.neg() != lower {
                    return Err(Error::NotAlternating(format!(
                        "entry ({},{}) is not the negative of ({},{})",
                        j, i, i, j
                    )));
                }
            }
        }
        Ok(AlternatingMatrix { mat })
    }

    /// Build from the strict upper triangle; the rest is filled by
    /// skew-symmetry.
    pub fn from_upper(
        ring: RingHandle,
        size: usize,
        mut upper: impl FnMut(usize, usize) -> RingElement,
    ) -> Result<Self> {
        if size % 2 != 0 {
            return Err(Error::NotAlternating(format!("odd size {}", size)));
        }
        let mut m = ExactMatrix::zero(ring, size, size);
        for i in 0..size {
            for j in (i + 1)..size {
                let v = upper(i, j);
                m.set(j, i, v.neg());
                m.set(i, j, v);
            }
        }
        Ok(AlternatingMatrix { mat: m })
    }

    pub fn empty(ring: RingHandle) -> Self {
        AlternatingMatrix { mat: ExactMatrix::zero(ring, 0, 0) }
    }

    /// The standard symplectic form of rank 2n: block-diagonal copies of
    /// `[[0,1],[-1,0]]`.
    pub fn psi(ring: RingHandle, n: usize) -> Self {
        let one = ring.one();
        let zero = ring.zero();
        let mat = ExactMatrix::from_fn(ring, 2 * n, 2 * n, |i, j| {
            if i % 2 == 0 && j == i + 1 {
                one.clone()
            } else if i % 2 == 1 && j + 1 == i {
                one.neg()
            } else {
                zero.clone()
            }
        });
        AlternatingMatrix { mat }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.mat
    }

    pub fn ring(&self) -> &RingHandle {
        self.mat.ring()
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn half(&self) -> usize {
        self.size() / 2
    }

    /// Exact Pfaffian by expansion along the first row, signs calibrated so
    /// that `Pf(psi_{2n}) = 1`; satisfies `Pf(M)^2 = det(M)`.
    pub fn pfaffian(&self) -> RingElement {
        let idx: Vec<usize> = (0..self.size()).collect();
        self.pf_rec(&idx)
    }

    fn pf_rec(&self, idx: &[usize]) -> RingElement {
        let ring = self.ring();
        if idx.is_empty() {
            return ring.one();
        }
        let i0 = idx[0];
        let mut acc = ring.zero();
        for p in 1..idx.len() {
            let j = idx[p];
            let a = self.mat.entry(i0, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .copied()
                .filter(|&k| k != j)
                .collect();
            let sub = self.pf_rec(&rest);
            let term = a.mul(&sub).expect("same ring");
            acc = if p % 2 == 1 {
                acc.add(&term).expect("same ring")
            } else {
                acc.sub(&term).expect("same ring")
            };
        }
        acc
    }

    /// Orthogonal (block-diagonal) sum.
    pub fn perp(&self, other: &Self) -> Result<Self> {
        let mat = self.mat.direct_sum(&other.mat)?;
        // Block-diagonal sum of alternating matrices is alternating.
        Ok(AlternatingMatrix { mat })
    }

    /// `M ⊥ psi_{2s}`; the Pfaffian is unchanged.
    pub fn stabilize(&self, s: usize) -> Self {
        if s == 0 {
            return self.clone();
        }
        let psi = AlternatingMatrix::psi(self.ring().clone(), s);
        self.perp(&psi).expect("same ring")
    }

    /// Congruence transform `G^t M G`, revalidated alternating. `G` need not
    /// be invertible; the Pfaffian transforms by `det(G)`.
    pub fn congruence(g: &ExactMatrix, m: &Self) -> Result<Self> {
        if !g.is_square() || g.nrows() != m.size() {
            return Err(Error::ShapeMismatch(format!(
                "congruence of {}x{} form by {}x{} matrix",
                m.size(),
                m.size(),
                g.nrows(),
                g.ncols()
            )));
        }
        let prod = g.transpose().mul(m.matrix())?.mul(g)?;
        AlternatingMatrix::new(prod)
    }
}

/// The standard symmetric swap of rank 2n: block-diagonal copies of
/// `[[0,1],[1,0]]`. Symmetric and an involution; `det = (-1)^n`.
pub fn sigma(ring: RingHandle, n: usize) -> ExactMatrix {
    let one = ring.one();
    let zero = ring.zero();
    ExactMatrix::from_fn(ring, 2 * n, 2 * n, |i, j| {
        if (i % 2 == 0 && j == i + 1) || (i % 2 == 1 && j + 1 == i) {
            one.clone()
        } else {
            zero.clone()
        }
    })
}
