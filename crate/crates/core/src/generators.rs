//! Generator constructors for the elementary, special linear and symplectic
//! subgroups, plus factorization of signed permutation matrices into
//! elementary generators.
//!
//! Indices are 0-based throughout the Rust API; the JSON wire format uses
//! 1-based indices.

use crate::altform::AlternatingMatrix;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{RingElement, RingHandle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `I + lambda * E_{row,col}` with `row != col`; determinant 1.
    Elementary {
        row: usize,
        col: usize,
        lambda: RingElement,
    },
    /// Permutation matrix `P e_j = e_{perm[j]}`. With `sign_corrected` set
    /// and an odd permutation, the entry in column 0 is negated so the
    /// determinant is 1.
    Permutation { perm: Vec<usize>, sign_corrected: bool },
    /// Symplectic transvection `x -> x + lambda * psi(x, v) * v` against the
    /// given alternating form; as a matrix, `I + lambda * v * (psi v)^t`.
    /// Preserves the form exactly.
    Transvection {
        v: Vec<RingElement>,
        lambda: RingElement,
        form: AlternatingMatrix,
    },
}

impl GeneratorSpec {
    /// The inverse generator of the same kind.
    pub fn inverse(&self) -> GeneratorSpec {
        match self {
            GeneratorSpec::Elementary { row, col, lambda } => GeneratorSpec::Elementary {
                row: *row,
                col: *col,
                lambda: lambda.neg(),
            },
            GeneratorSpec::Permutation { perm, sign_corrected } => {
                let mut inv = vec![0usize; perm.len()];
                for (j, &i) in perm.iter().enumerate() {
                    inv[i] = j;
                }
                // The inverse of a sign-corrected odd permutation is not a
                // sign-corrected permutation matrix in general; callers that
                // need exact inverses should use elementary factorizations.
                GeneratorSpec::Permutation { perm: inv, sign_corrected: *sign_corrected }
            }
            GeneratorSpec::Transvection { v, lambda, form } => GeneratorSpec::Transvection {
                v: v.clone(),
                lambda: lambda.neg(),
                form: form.clone(),
            },
        }
    }
}

/// Instantiate a generator at ambient size `n`.
pub fn build_generator(ring: &RingHandle, spec: &GeneratorSpec, n: usize) -> Result<ExactMatrix> {
    match spec {
        GeneratorSpec::Elementary { row, col, lambda } => {
            if row == col {
                return Err(Error::BadSpec("elementary generator needs row != col".into()));
            }
            if *row >= n || *col >= n {
                return Err(Error::BadSpec(format!(
                    "elementary indices ({},{}) out of range for size {}",
                    row, col, n
                )));
            }
            if lambda.owner() != ring {
                return Err(Error::MixedRings);
            }
            let mut m = ExactMatrix::identity(ring.clone(), n);
            m.set(*row, *col, lambda.clone());
            Ok(m)
        }
        GeneratorSpec::Permutation { perm, sign_corrected } => {
            if perm.len() != n {
                return Err(Error::BadSpec(format!(
                    "permutation of length {} at size {}",
                    perm.len(),
                    n
                )));
            }
            let mut seen = vec![false; n];
            for &i in perm {
                if i >= n || seen[i] {
                    return Err(Error::BadSpec("not a permutation".into()));
                }
                seen[i] = true;
            }
            let odd = permutation_is_odd(perm);
            let mut m = ExactMatrix::zero(ring.clone(), n, n);
            for (j, &i) in perm.iter().enumerate() {
                let v = if *sign_corrected && odd && j == 0 {
                    ring.one().neg()
                } else {
                    ring.one()
                };
                m.set(i, j, v);
            }
            Ok(m)
        }
        GeneratorSpec::Transvection { v, lambda, form } => {
            if form.size() != n {
                return Err(Error::BadSpec(format!(
                    "transvection form has size {}, ambient size is {}",
                    form.size(),
                    n
                )));
            }
            if v.len() != n {
                return Err(Error::BadSpec(format!(
                    "transvection vector length {} at size {}",
                    v.len(),
                    n
                )));
            }
            for e in v {
                if e.owner() != ring {
                    return Err(Error::MixedRings);
                }
            }
            // w = psi * v; T = I + lambda * v * w^t
            let w = form.matrix().act_on_col(v)?;
            let mut m = ExactMatrix::identity(ring.clone(), n);
            for i in 0..n {
                if v[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if w[j].is_zero() {
                        continue;
                    }
                    let add = lambda.mul(&v[i])?.mul(&w[j])?;
                    m.set(i, j, m.entry(i, j).add(&add)?);
                }
            }
            // Form preservation is part of the construction contract.
            let check = AlternatingMatrix::congruence(&m, form)?;
            if check != *form {
                return Err(Error::BadSpec(
                    "transvection does not preserve the form".into(),
                ));
            }
            Ok(m)
        }
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// The block swap `[[0, id_s], [id_r, 0]]` sending `(u, v)` to `(v, u)` for
/// `u` of length `r`, `v` of length `s`. For even `rs` its determinant is 1
/// and it factors into elementary generators.
pub fn block_swap(ring: &RingHandle, r: usize, s: usize) -> ExactMatrix {
    let one = ring.one();
    let zero = ring.zero();
    ExactMatrix::from_fn(ring.clone(), r + s, r + s, |i, j| {
        let hit = if i < s { j == r + i } else { j == i - s };
        if hit {
            one.clone()
        } else {
            zero.clone()
        }
    })
}

/// Factor a monomial matrix (one unit entry of value 1 or -1 per row and
/// column) with determinant 1 into elementary generators whose product is
/// exactly the input. Fails with `BadSpec` on anything else.
pub fn factor_signed_permutation(m: &ExactMatrix) -> Result<Vec<GeneratorSpec>> {
    let ring = m.ring().clone();
    let n = m.nrows();
    if !m.is_square() {
        return Err(Error::BadSpec("not square".into()));
    }
    let one = ring.one();
    let minus_one = one.neg();
    for i in 0..n {
        let mut hits = 0;
        for j in 0..n {
            let e = m.entry(i, j);
            if e.is_zero() {
                continue;
            }
            if e != &one && e != &minus_one {
                return Err(Error::BadSpec("entries must be 0, 1 or -1".into()));
            }
            hits += 1;
        }
        if hits != 1 {
            return Err(Error::BadSpec("not a monomial matrix".into()));
        }
    }

    // Reduce a working copy to the identity by row operations
    // row_a += lambda * row_b, recording each as a left factor E_{a,b}(lambda).
    // Then m = product of the inverses in reverse order.
    let mut work = m.clone();
    let mut applied: Vec<GeneratorSpec> = Vec::new();
    let row_op = |work: &mut ExactMatrix,
                      applied: &mut Vec<GeneratorSpec>,
                      a: usize,
                      b: usize,
                      lambda: &RingElement|
     -> Result<()> {
        for j in 0..n {
            let add = lambda.mul(work.entry(b, j))?;
            work.set(a, j, work.entry(a, j).add(&add)?);
        }
        applied.push(GeneratorSpec::Elementary { row: a, col: b, lambda: lambda.clone() });
        Ok(())
    };
    // (row_a, row_b) -> (row_b, -row_a), three elementary row operations.
    let signed_swap = |work: &mut ExactMatrix,
                           applied: &mut Vec<GeneratorSpec>,
                           a: usize,
                           b: usize|
     -> Result<()> {
        row_op(work, applied, a, b, &one)?;
        row_op(work, applied, b, a, &minus_one)?;
        row_op(work, applied, a, b, &one)?;
        Ok(())
    };

    for j in 0..n {
        let i = (0..n)
            .find(|&i| !work.entry(i, j).is_zero())
            .expect("monomial matrix has a pivot per column");
        if i != j {
            // move the pivot of column j into row j
            signed_swap(&mut work, &mut applied, j, i)?;
        }
    }
    // Now work is diagonal with +-1 entries and determinant 1, so the -1s
    // come in pairs; clear each pair with a double signed swap.
    let mut negs: Vec<usize> = (0..n)
        .filter(|&i| work.entry(i, i) == &minus_one)
        .collect();
    if negs.len() % 2 != 0 {
        return Err(Error::BadSpec("determinant is -1, not factorable".into()));
    }
    while let (Some(a), Some(b)) = (negs.pop(), negs.pop()) {
        signed_swap(&mut work, &mut applied, a, b)?;
        signed_swap(&mut work, &mut applied, a, b)?;
    }
    if work != ExactMatrix::identity(ring.clone(), n) {
        return Err(Error::BadSpec("reduction did not reach the identity".into()));
    }
    // applied_k ... applied_1 * m = I, hence m = inv(applied_1) ... inv(applied_k).
    let factors: Vec<GeneratorSpec> = applied.iter().map(|g| g.inverse()).collect();
    Ok(factors)
}

/// Multiply out a list of generator specs at size `n`.
pub fn assemble(ring: &RingHandle, specs: &[GeneratorSpec], n: usize) -> Result<ExactMatrix> {
    let mut acc = ExactMatrix::identity(ring.clone(), n);
    for spec in specs {
        acc = acc.mul(&build_generator(ring, spec, n)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingHandle {
        RingHandle::integers()
    }

    #[test]
    fn elementary_at_size_2() {
        let lam = z().from_i64(5);
        let g = build_generator(
            &z(),
            &GeneratorSpec::Elementary { row: 0, col: 1, lambda: lam },
            2,
        )
        .unwrap();
        let expected = ExactMatrix::from_rows(
            z(),
            vec![
                vec![z().from_i64(1), z().from_i64(5)],
                vec![z().from_i64(0), z().from_i64(1)],
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
        assert!(g.det().unwrap().is_one());
    }

    #[test]
    fn elementary_rejects_diagonal() {
        assert!(build_generator(
            &z(),
            &GeneratorSpec::Elementary { row: 1, col: 1, lambda: z().one() },
            3
        )
        .is_err());
    }

    #[test]
    fn transvection_preserves_psi() {
        let form = AlternatingMatrix::psi(z(), 1);
        let v = vec![z().one(), z().zero()];
        let t = build_generator(
            &z(),
            &GeneratorSpec::Transvection { v, lambda: z().one(), form: form.clone() },
            2,
        )
        .unwrap();
        assert_eq!(AlternatingMatrix::congruence(&t, &form).unwrap(), form);
        assert!(t.det().unwrap().is_one());
    }

    #[test]
    fn transvections_preserve_psi4_over_z4() {
        let ring = RingHandle::modular_u64(4).unwrap();
        let form = AlternatingMatrix::psi(ring.clone(), 2);
        for raw in [[1i64, 0, 2, 1], [3, 1, 0, 0], [1, 1, 1, 1]] {
            let v: Vec<_> = raw.iter().map(|&x| ring.from_i64(x)).collect();
            for lam in 1..4 {
                let t = build_generator(
                    &ring,
                    &GeneratorSpec::Transvection {
                        v: v.clone(),
                        lambda: ring.from_i64(lam),
                        form: form.clone(),
                    },
                    4,
                )
                .unwrap();
                assert_eq!(AlternatingMatrix::congruence(&t, &form).unwrap(), form);
            }
        }
    }

    #[test]
    fn block_swap_even_rs_has_det_one_and_factors() {
        for (r, s) in [(2usize, 2usize), (2, 4), (4, 2), (1, 2), (2, 1)] {
            let b = block_swap(&z(), r, s);
            assert!(b.det().unwrap().is_one(), "det of block swap {}x{}", r, s);
            let factors = factor_signed_permutation(&b).unwrap();
            let prod = assemble(&z(), &factors, r + s).unwrap();
            assert_eq!(prod, b, "refactored block swap {}x{}", r, s);
        }
    }

    #[test]
    fn block_swap_moves_blocks() {
        // (u, v) -> (v, u) with r = 1, s = 2
        let b = block_swap(&z(), 1, 2);
        let u = vec![z().from_i64(7), z().from_i64(8), z().from_i64(9)];
        let out = b.act_on_col(&u).unwrap();
        let vals: Vec<String> = out.iter().map(|e| e.to_canonical_string()).collect();
        assert_eq!(vals, vec!["8", "9", "7"]);
    }

    #[test]
    fn sign_corrected_permutation_has_det_one() {
        // swap of two basis vectors is odd; sign correction makes det 1
        let g = build_generator(
            &z(),
            &GeneratorSpec::Permutation { perm: vec![1, 0, 2], sign_corrected: true },
            3,
        )
        .unwrap();
        assert!(g.det().unwrap().is_one());
        let plain = build_generator(
            &z(),
            &GeneratorSpec::Permutation { perm: vec![1, 0, 2], sign_corrected: false },
            3,
        )
        .unwrap();
        assert_eq!(plain.det().unwrap(), z().from_i64(-1));
    }

    #[test]
    fn factor_rejects_det_minus_one() {
        let g = build_generator(
            &z(),
            &GeneratorSpec::Permutation { perm: vec![1, 0], sign_corrected: false },
            2,
        )
        .unwrap();
        assert!(factor_signed_permutation(&g).is_err());
    }
}
