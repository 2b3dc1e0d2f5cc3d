//! Dense exact matrices over a [`RingHandle`].
//!
//! Determinants use Bird's division-free scheme (O(n^4) ring operations),
//! valid over any commutative ring including non-domains like Z/4; inverses
//! go through the adjugate and require a certified unit determinant, so no
//! division by a non-unit can ever occur.

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingHandle, UnitStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: RingHandle,
    nrows: usize,
    ncols: usize,
    entries: Vec<RingElement>,
}

impl ExactMatrix {
    pub fn from_rows(ring: RingHandle, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for e in row {
                if e.owner() != &ring {
                    return Err(Error::MixedRings);
                }
                entries.push(e);
            }
        }
        Ok(ExactMatrix { ring, nrows, ncols, entries })
    }

    pub fn from_fn(
        ring: RingHandle,
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                let e = f(i, j);
                debug_assert!(e.owner() == &ring);
                entries.push(e);
            }
        }
        ExactMatrix { ring, nrows, ncols, entries }
    }

    pub fn zero(ring: RingHandle, nrows: usize, ncols: usize) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, nrows, ncols, |_, _| z.clone())
    }

    pub fn identity(ring: RingHandle, n: usize) -> Self {
        let one = ring.one();
        let zero = ring.zero();
        Self::from_fn(ring, n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn ring(&self) -> &RingHandle {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        debug_assert!(v.owner() == &self.ring);
        self.entries[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RingElement> {
        (0..self.ncols).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<RingElement> {
        (0..self.nrows).map(|i| self.entry(i, j).clone()).collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { ring: self.ring.clone(), nrows: self.nrows, ncols: self.ncols, entries })
    }

    pub fn neg(&self) -> Self {
        ExactMatrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let zero = self.ring.zero();
        let mut entries = Vec::with_capacity(self.nrows * other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = zero.clone();
                for k in 0..self.ncols {
                    let a = self.entry(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(ExactMatrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            ncols: other.ncols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.ncols, self.nrows, |i, j| {
            self.entry(j, i).clone()
        })
    }

    pub fn scalar_mul(&self, s: &RingElement) -> Result<Self> {
        if s.owner() != &self.ring {
            return Err(Error::MixedRings);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { ring: self.ring.clone(), nrows: self.nrows, ncols: self.ncols, entries })
    }

    /// Block-diagonal sum: `self` in the top-left corner, `other` bottom-right.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let zero = self.ring.zero();
        let (r, c) = (self.nrows, self.ncols);
        Ok(Self::from_fn(
            self.ring.clone(),
            r + other.nrows,
            c + other.ncols,
            |i, j| {
                if i < r && j < c {
                    self.entry(i, j).clone()
                } else if i >= r && j >= c {
                    other.entry(i - r, j - c).clone()
                } else {
                    zero.clone()
                }
            },
        ))
    }

    /// Exact determinant by Bird's division-free iteration: with `mu(X)` the
    /// strictly upper part of `X` plus the diagonal `mu_ii = -(X_{i+1,i+1} +
    /// ... + X_{nn})`, the map `X -> mu(X) A` applied n-1 times to `A` puts
    /// `(-1)^(n-1) det(A)` in the top-left corner. Only ring additions and
    /// multiplications are used, so the result is valid over any commutative
    /// ring.
    pub fn det(&self) -> Result<RingElement> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.nrows, cols: self.ncols });
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        if n == 1 {
            return Ok(self.entry(0, 0).clone());
        }
        let mut x = self.clone();
        for _ in 1..n {
            x = x.bird_mu()?.mul(self)?;
        }
        let top = x.entry(0, 0).clone();
        if n % 2 == 1 {
            Ok(top)
        } else {
            Ok(top.neg())
        }
    }

    fn bird_mu(&self) -> Result<Self> {
        let n = self.nrows;
        let zero = self.ring.zero();
        // suffix[i] = X_{i+1,i+1} + ... + X_{n-1,n-1}
        let mut suffix = vec![zero.clone(); n];
        for i in (0..n.saturating_sub(1)).rev() {
            suffix[i] = suffix[i + 1].add(self.entry(i + 1, i + 1))?;
        }
        Ok(Self::from_fn(self.ring.clone(), n, n, |i, j| {
            if j > i {
                self.entry(i, j).clone()
            } else if j == i {
                suffix[i].neg()
            } else {
                zero.clone()
            }
        }))
    }

    /// Delete one row and one column.
    pub fn minor(&self, cut_row: usize, cut_col: usize) -> Self {
        Self::from_fn(self.ring.clone(), self.nrows - 1, self.ncols - 1, |i, j| {
            let si = if i < cut_row { i } else { i + 1 };
            let sj = if j < cut_col { j } else { j + 1 };
            self.entry(si, sj).clone()
        })
    }

    /// Adjugate (transposed cofactor matrix); `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.nrows, cols: self.ncols });
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            return Ok(Self::identity(self.ring.clone(), 1));
        }
        let mut out = Self::zero(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(j, i).det()?;
                let signed = if (i + j) % 2 == 0 { cof } else { cof.neg() };
                out.set(i, j, signed);
            }
        }
        Ok(out)
    }

    /// Inverse via `det^{-1} * adjugate`. The determinant must be certified a
    /// unit, either by `unit_status` or by the supplied inverse certificate
    /// (which is verified against the freshly computed determinant).
    pub fn inverse(&self, det_inverse: Option<&RingElement>) -> Result<Self> {
        let det = self.det()?;
        let inv_det = match det_inverse {
            Some(c) => {
                if c.owner() != &self.ring {
                    return Err(Error::MixedRings);
                }
                if !det.mul(c)?.is_one() {
                    return Err(Error::BadCertificate(
                        "det * certificate != 1".into(),
                    ));
                }
                c.clone()
            }
            None => match det.unit_status() {
                UnitStatus::Yes(inv) => inv,
                UnitStatus::No | UnitStatus::Unknown => return Err(Error::NotInvertible),
            },
        };
        let inv = self.adjugate()?.scalar_mul(&inv_det)?;
        debug_assert!(self
            .mul(&inv)
            .map(|p| p == Self::identity(self.ring.clone(), self.nrows))
            .unwrap_or(false));
        Ok(inv)
    }

    /// Row vector times matrix.
    pub fn act_on_row(&self, row: &[RingElement]) -> Result<Vec<RingElement>> {
        if row.len() != self.nrows {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} times {}x{}",
                row.len(),
                self.nrows,
                self.ncols
            )));
        }
        let zero = self.ring.zero();
        let mut out = Vec::with_capacity(self.ncols);
        for j in 0..self.ncols {
            let mut acc = zero.clone();
            for (i, r) in row.iter().enumerate() {
                if r.is_zero() || self.entry(i, j).is_zero() {
                    continue;
                }
                acc = acc.add(&r.mul(self.entry(i, j))?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn act_on_col(&self, col: &[RingElement]) -> Result<Vec<RingElement>> {
        if col.len() != self.ncols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times column of length {}",
                self.nrows,
                self.ncols,
                col.len()
            )));
        }
        let zero = self.ring.zero();
        let mut out = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut acc = zero.clone();
            for (j, c) in col.iter().enumerate() {
                if c.is_zero() || self.entry(i, j).is_zero() {
                    continue;
                }
                acc = acc.add(&self.entry(i, j).mul(c)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Deterministic serialization used for canonical representatives:
    /// entries in row-major order, canonical strings, ';' between rows.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        for i in 0..self.nrows {
            if i > 0 {
                s.push(';');
            }
            for j in 0..self.ncols {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&self.entry(i, j).to_canonical_string());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zmat(rows: &[&[i64]]) -> ExactMatrix {
        let ring = RingHandle::integers();
        ExactMatrix::from_rows(
            ring.clone(),
            rows.iter()
                .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Laplace cofactor expansion: the independent determinant oracle.
    fn det_laplace(m: &ExactMatrix) -> RingElement {
        let n = m.nrows();
        if n == 0 {
            return m.ring().one();
        }
        if n == 1 {
            return m.entry(0, 0).clone();
        }
        let mut acc = m.ring().zero();
        for j in 0..n {
            let a = m.entry(0, j);
            if a.is_zero() {
                continue;
            }
            let sub = det_laplace(&m.minor(0, j));
            let term = a.mul(&sub).unwrap();
            acc = if j % 2 == 0 {
                acc.add(&term).unwrap()
            } else {
                acc.sub(&term).unwrap()
            };
        }
        acc
    }

    #[test]
    fn det_2x2_formula() {
        let m = zmat(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), RingHandle::integers().from_i64(-2));
    }

    #[test]
    fn det_matches_laplace_oracle_on_random_matrices() {
        let rings = vec![
            RingHandle::integers(),
            RingHandle::modular_u64(4).unwrap(),
            RingHandle::modular_u64(5).unwrap(),
            RingHandle::polynomial(RingHandle::integers(), &["a", "b"], MonomialOrder::GrLex)
                .unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for ring in rings {
            for n in 1..=5usize {
                for _ in 0..6 {
                    let m = ExactMatrix::from_fn(ring.clone(), n, n, |_, _| {
                        ring.random_element(&mut rng, 4, 1, 1)
                    });
                    assert_eq!(m.det().unwrap(), det_laplace(&m));
                }
            }
        }
    }

    #[test]
    fn det_multiplicative_on_random_pairs() {
        let ring = RingHandle::modular_u64(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=4usize {
            for _ in 0..10 {
                let a = ExactMatrix::from_fn(ring.clone(), n, n, |_, _| {
                    ring.random_element(&mut rng, 5, 1, 1)
                });
                let b = ExactMatrix::from_fn(ring.clone(), n, n, |_, _| {
                    ring.random_element(&mut rng, 5, 1, 1)
                });
                let lhs = a.mul(&b).unwrap().det().unwrap();
                let rhs = a.det().unwrap().mul(&b.det().unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn transpose_involution_and_identity_mul() {
        let m = zmat(&[&[0, 1], &[-1, 0]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(
            m.transpose(),
            zmat(&[&[0, -1], &[1, 0]])
        );
        let i3 = ExactMatrix::identity(RingHandle::integers(), 3);
        let a = zmat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(i3.mul(&a).unwrap(), a);
    }

    #[test]
    fn inverse_with_certificate_over_z5() {
        let z5 = RingHandle::modular_u64(5).unwrap();
        let m = ExactMatrix::from_rows(
            z5.clone(),
            vec![
                vec![z5.from_i64(0), z5.from_i64(2)],
                vec![z5.from_i64(-2), z5.from_i64(0)],
            ],
        )
        .unwrap();
        let inv = m.inverse(Some(&z5.from_i64(4))).unwrap();
        let expected = ExactMatrix::from_rows(
            z5.clone(),
            vec![
                vec![z5.from_i64(0), z5.from_i64(2)],
                vec![z5.from_i64(3), z5.from_i64(0)],
            ],
        )
        .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(z5, 2));
    }

    #[test]
    fn inverse_rejects_non_units_and_bad_certificates() {
        let m = zmat(&[&[2]]);
        assert!(matches!(m.inverse(None), Err(Error::NotInvertible)));
        let z5 = RingHandle::modular_u64(5).unwrap();
        let a = ExactMatrix::identity(z5.clone(), 2);
        assert!(matches!(
            a.inverse(Some(&z5.from_i64(2))),
            Err(Error::BadCertificate(_))
        ));
    }

    #[test]
    fn direct_sum_blocks() {
        let a = zmat(&[&[0, 1], &[-1, 0]]);
        let s = a.direct_sum(&a).unwrap();
        assert_eq!(s.nrows(), 4);
        assert_eq!(s.entry(0, 1), &RingHandle::integers().from_i64(1));
        assert_eq!(s.entry(2, 3), &RingHandle::integers().from_i64(1));
        assert!(s.entry(0, 2).is_zero());
    }
}
