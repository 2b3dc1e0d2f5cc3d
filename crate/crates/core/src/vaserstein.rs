//! Unimodular rows with section certificates, Suslin matrices, kernel
//! idempotents, the Vaserstein symbol for rows of length 3, and the
//! SL_4-action on rows.
//!
//! The symbol is implemented for the free rank-2 module with the standard
//! trivialization `1 -> e1 ^ e2`, so the canonical form on it is the
//! standard 2x2 symplectic form and the abstract exterior-algebra pairing
//! becomes a concrete 3x3 determinant: columns are the retracted basis
//! vectors and the section.

use crate::altform::AlternatingMatrix;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{RingElement, RingHandle};

/// Default cap on the row length accepted by [`suslin_matrix`]; the matrix
/// has size `2^(n-1)`.
pub const SUSLIN_DEFAULT_CAP: usize = 5;

/// A row `a` together with a section column `b` certifying `a * b = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularRow {
    ring: RingHandle,
    a: Vec<RingElement>,
    b: Vec<RingElement>,
}

impl UnimodularRow {
    /// Verify the certificate and store. A failure signals a bad certificate,
    /// not a proof that the row is non-unimodular.
    pub fn new(ring: RingHandle, a: Vec<RingElement>, b: Vec<RingElement>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::WrongLength { want: a.len(), got: b.len() });
        }
        for e in a.iter().chain(b.iter()) {
            if e.owner() != &ring {
                return Err(Error::MixedRings);
            }
        }
        let mut acc = ring.zero();
        for (x, y) in a.iter().zip(b.iter()) {
            acc = acc.add(&x.mul(y)?)?;
        }
        if !acc.is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(UnimodularRow { ring, a, b })
    }

    pub fn ring(&self) -> &RingHandle {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn row(&self) -> &[RingElement] {
        &self.a
    }

    pub fn section(&self) -> &[RingElement] {
        &self.b
    }

    pub fn canonical_key(&self) -> String {
        self.a
            .iter()
            .map(|e| e.to_canonical_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Suslin's recursive matrix of size `2^(n-1)`:
/// `alpha_1(a,b) = (a_1)` and
/// `alpha_n = [[a_1 I, alpha_{n-1}(a',b')], [-alpha_{n-1}(b',a')^t, b_1 I]]`.
/// For a row with section and `n >= 2` its determinant is 1; without any
/// unimodularity assumption, `det = (a b^t)^(2^(n-2))`.
pub fn suslin_matrix(a: &[RingElement], b: &[RingElement], cap: usize) -> Result<ExactMatrix> {
    let n = a.len();
    if n == 0 || b.len() != n {
        return Err(Error::WrongLength { want: n.max(1), got: b.len() });
    }
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    let ring = a[0].owner().clone();
    for e in a.iter().chain(b.iter()) {
        if e.owner() != &ring {
            return Err(Error::MixedRings);
        }
    }
    Ok(suslin_rec(&ring, a, b))
}

fn suslin_rec(ring: &RingHandle, a: &[RingElement], b: &[RingElement]) -> ExactMatrix {
    let n = a.len();
    if n == 1 {
        return ExactMatrix::from_fn(ring.clone(), 1, 1, |_, _| a[0].clone());
    }
    let upper = suslin_rec(ring, &a[1..], &b[1..]);
    let lower = suslin_rec(ring, &b[1..], &a[1..]).transpose().neg();
    let half = upper.nrows();
    let zero = ring.zero();
    ExactMatrix::from_fn(ring.clone(), 2 * half, 2 * half, |i, j| {
        if i < half && j < half {
            if i == j {
                a[0].clone()
            } else {
                zero.clone()
            }
        } else if i < half {
            upper.entry(i, j - half).clone()
        } else if j < half {
            lower.entry(i - half, j).clone()
        } else if i == j {
            b[0].clone()
        } else {
            zero.clone()
        }
    })
}

/// The retraction idempotent onto the kernel of `a`: `Q = I - b a`,
/// satisfying `Q^2 = Q`, `a Q = 0`, `Q b = 0`.
pub fn kernel_idempotent(row: &UnimodularRow) -> ExactMatrix {
    let n = row.len();
    let ring = row.ring().clone();
    let one = ring.one();
    ExactMatrix::from_fn(ring, n, n, |i, j| {
        let prod = row.b[i].mul(&row.a[j]).expect("same ring");
        if i == j {
            one.sub(&prod).expect("same ring")
        } else {
            prod.neg()
        }
    })
}

/// Orientation of the trivialization: the symbol convention (`Plus`) or its
/// negative, the classical layout's sign (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn tag(&self) -> &'static str {
        match self {
            Orientation::Plus => "+1",
            Orientation::Minus => "-1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "+1" | "+" | "1" => Some(Orientation::Plus),
            "-1" | "-" => Some(Orientation::Minus),
            _ => None,
        }
    }
}

/// Input of the symbol: a certified row of length 3 plus the orientation.
#[derive(Debug, Clone)]
pub struct SymbolInput {
    pub row: UnimodularRow,
    pub orientation: Orientation,
}

impl SymbolInput {
    pub fn new(row: UnimodularRow, orientation: Orientation) -> Result<Self> {
        if row.len() != 3 {
            return Err(Error::WrongLength { want: 3, got: row.len() });
        }
        Ok(SymbolInput { row, orientation })
    }
}

/// 3x3 determinant of three column vectors.
fn det3(ring: &RingHandle, cols: [&[RingElement]; 3]) -> Result<RingElement> {
    let m = ExactMatrix::from_fn(ring.clone(), 3, 3, |i, j| cols[j][i].clone());
    m.det()
}

/// The Vaserstein symbol `V(a, s)` as a 4x4 alternating matrix.
///
/// With `r` the kernel retraction of the section and `eps` the orientation
/// sign, the bilinear rule is
/// `V((x,u),(y,v)) = eps * det[r x | r y | b] + a(x) v - a(y) u`;
/// on basis vectors this gives `V_ij = eps * det[r e_i | r e_j | b]` for
/// `i < j <= 3` and `V_i4 = a_i`. The basepoint `a = (0,0,1)`, `b = e3`,
/// `eps = +1` evaluates to the standard form `psi_4` exactly.
pub fn vaserstein_symbol(inp: &SymbolInput) -> Result<AlternatingMatrix> {
    let row = &inp.row;
    if row.len() != 3 {
        return Err(Error::WrongLength { want: 3, got: row.len() });
    }
    let ring = row.ring().clone();
    let a = row.row();
    let b = row.section();
    // retracted basis vectors r(e_j) = e_j - b * a_j, as columns
    let mut retracted: Vec<Vec<RingElement>> = Vec::with_capacity(3);
    for j in 0..3 {
        let mut col = Vec::with_capacity(3);
        for i in 0..3 {
            let prod = b[i].mul(&a[j])?;
            let base = if i == j { ring.one() } else { ring.zero() };
            col.push(base.sub(&prod)?);
        }
        retracted.push(col);
    }
    AlternatingMatrix::from_upper(ring.clone(), 4, |i, j| {
        if j < 3 {
            let d = det3(&ring, [&retracted[i], &retracted[j], b]).expect("same ring");
            match inp.orientation {
                Orientation::Plus => d,
                Orientation::Minus => d.neg(),
            }
        } else {
            a[i].clone()
        }
    })
}

/// Check the transformation law of the symbol against a determinant-1
/// change of coordinates:
/// `(phi ⊕ 1)^t V(a, b) (phi ⊕ 1) = V(a phi, phi^{-1} b)` exactly.
/// The determinant-1 certificate is verified; the contract is that the
/// identity holds for every such `phi`.
pub fn symbol_transform_check(inp: &SymbolInput, phi: &ExactMatrix) -> Result<bool> {
    let ring = inp.row.ring().clone();
    if phi.ring() != &ring {
        return Err(Error::MixedRings);
    }
    if !phi.is_square() || phi.nrows() != 3 {
        return Err(Error::ShapeMismatch(format!(
            "coordinate change must be 3x3, got {}x{}",
            phi.nrows(),
            phi.ncols()
        )));
    }
    if !phi.det()?.is_one() {
        return Err(Error::BadCertificate("phi must have determinant 1".into()));
    }
    let v = vaserstein_symbol(inp)?;
    let phi_ext = phi.direct_sum(&ExactMatrix::identity(ring.clone(), 1))?;
    let lhs = AlternatingMatrix::congruence(&phi_ext, &v)?;

    // det(phi) = 1, so the inverse is the plain adjugate.
    let phi_inv = phi.inverse(Some(&ring.one()))?;
    let new_a = phi.act_on_row(inp.row.row())?;
    let new_b = phi_inv.act_on_col(inp.row.section())?;
    let new_row = UnimodularRow::new(ring, new_a, new_b)?;
    let rhs = vaserstein_symbol(&SymbolInput::new(new_row, inp.orientation)?)?;
    Ok(lhs == rhs)
}

/// The SL_4-action on rows: with `chi = phi^t V(a,b) phi`, the new row is
/// `(chi_14, chi_24, chi_34)` and the returned section is read off the 4th
/// row of `chi^{-1}`, which satisfies the certificate identity because
/// `chi^{-1} chi = I` in the 4th diagonal entry and `chi_44 = 0`.
pub fn sl4_act(inp: &SymbolInput, phi: &ExactMatrix) -> Result<UnimodularRow> {
    let ring = inp.row.ring().clone();
    if phi.ring() != &ring {
        return Err(Error::MixedRings);
    }
    if !phi.is_square() || phi.nrows() != 4 {
        return Err(Error::ShapeMismatch(format!(
            "action matrix must be 4x4, got {}x{}",
            phi.nrows(),
            phi.ncols()
        )));
    }
    if !phi.det()?.is_one() {
        return Err(Error::BadCertificate("phi must have determinant 1".into()));
    }
    let v = vaserstein_symbol(inp)?;
    let chi = AlternatingMatrix::congruence(phi, &v)?;
    let a: Vec<RingElement> = (0..3).map(|i| chi.matrix().entry(i, 3).clone()).collect();
    let inv = chi.matrix().inverse(None)?;
    let b: Vec<RingElement> = (0..3).map(|j| inv.entry(3, j).clone()).collect();
    UnimodularRow::new(ring, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_generator, GeneratorSpec};
    use crate::ring::MonomialOrder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z() -> RingHandle {
        RingHandle::integers()
    }

    fn s5() -> RingHandle {
        let base = RingHandle::polynomial(
            z(),
            &["x1", "y1", "x2", "y2", "x3", "y3"],
            MonomialOrder::GrLex,
        )
        .unwrap();
        let rel = base.parse("x1*y1+x2*y2+x3*y3-1").unwrap();
        RingHandle::quotient(base, &rel).unwrap()
    }

    fn zrow(a: &[i64], b: &[i64]) -> Result<UnimodularRow> {
        let ring = z();
        UnimodularRow::new(
            ring.clone(),
            a.iter().map(|&v| ring.from_i64(v)).collect(),
            b.iter().map(|&v| ring.from_i64(v)).collect(),
        )
    }

    fn basepoint() -> SymbolInput {
        SymbolInput::new(zrow(&[0, 0, 1], &[0, 0, 1]).unwrap(), Orientation::Plus).unwrap()
    }

    #[test]
    fn certificate_is_verified() {
        assert!(zrow(&[1, 0, 0], &[1, 0, 0]).is_ok());
        assert!(matches!(zrow(&[2, 0], &[1, 0]), Err(Error::NotUnimodular)));
        // the universal row over the quadric coordinate ring
        let r = s5();
        let a: Vec<_> = ["x1", "x2", "x3"].iter().map(|v| r.var(v).unwrap()).collect();
        let b: Vec<_> = ["y1", "y2", "y3"].iter().map(|v| r.var(v).unwrap()).collect();
        assert!(UnimodularRow::new(r, a, b).is_ok());
    }

    #[test]
    fn suslin_base_case_and_one_expansion() {
        let ring = RingHandle::polynomial(
            z(),
            &["a1", "a2", "b1", "b2"],
            MonomialOrder::GrLex,
        )
        .unwrap();
        let v = |n: &str| ring.var(n).unwrap();
        let a = vec![v("a1"), v("a2")];
        let b = vec![v("b1"), v("b2")];
        let m1 = suslin_matrix(&a[..1], &b[..1], SUSLIN_DEFAULT_CAP).unwrap();
        assert_eq!(m1.nrows(), 1);
        assert_eq!(m1.entry(0, 0), &v("a1"));
        // alpha_2 = [[a1, a2], [-b2, b1]]
        let m2 = suslin_matrix(&a, &b, SUSLIN_DEFAULT_CAP).unwrap();
        assert_eq!(m2.entry(0, 0), &v("a1"));
        assert_eq!(m2.entry(0, 1), &v("a2"));
        assert_eq!(m2.entry(1, 0), &v("b2").neg());
        assert_eq!(m2.entry(1, 1), &v("b1"));
        // det(alpha_2) = a1 b1 + a2 b2
        let expected = v("a1")
            .mul(&v("b1"))
            .unwrap()
            .add(&v("a2").mul(&v("b2")).unwrap())
            .unwrap();
        assert_eq!(m2.det().unwrap(), expected);
    }

    #[test]
    fn suslin_det_identity_n3() {
        let ring = RingHandle::polynomial(
            z(),
            &["a1", "a2", "a3", "b1", "b2", "b3"],
            MonomialOrder::GrLex,
        )
        .unwrap();
        let a: Vec<_> = ["a1", "a2", "a3"].iter().map(|n| ring.var(n).unwrap()).collect();
        let b: Vec<_> = ["b1", "b2", "b3"].iter().map(|n| ring.var(n).unwrap()).collect();
        let m = suslin_matrix(&a, &b, SUSLIN_DEFAULT_CAP).unwrap();
        assert_eq!(m.nrows(), 4);
        let mut dot = ring.zero();
        for (x, y) in a.iter().zip(b.iter()) {
            dot = dot.add(&x.mul(y).unwrap()).unwrap();
        }
        assert_eq!(m.det().unwrap(), dot.mul(&dot).unwrap());
    }

    #[test]
    fn suslin_cap_is_enforced() {
        let ring = z();
        let a: Vec<_> = (0..6).map(|_| ring.one()).collect();
        let b: Vec<_> = (0..6).map(|_| ring.zero()).collect();
        assert!(matches!(
            suslin_matrix(&a, &b, SUSLIN_DEFAULT_CAP),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn kernel_idempotent_basepoint_and_laws() {
        let row = zrow(&[0, 0, 1], &[0, 0, 1]).unwrap();
        let q = kernel_idempotent(&row);
        let expected = ExactMatrix::from_rows(
            z(),
            vec![
                vec![z().from_i64(1), z().from_i64(0), z().from_i64(0)],
                vec![z().from_i64(0), z().from_i64(1), z().from_i64(0)],
                vec![z().from_i64(0), z().from_i64(0), z().from_i64(0)],
            ],
        )
        .unwrap();
        assert_eq!(q, expected);

        // randomized laws over Z/6: Q^2 = Q, aQ = 0, Qb = 0
        let ring = RingHandle::modular_u64(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut found = 0;
        while found < 15 {
            let a: Vec<_> = (0..3).map(|_| ring.random_element(&mut rng, 5, 1, 1)).collect();
            let b: Vec<_> = (0..3).map(|_| ring.random_element(&mut rng, 5, 1, 1)).collect();
            let Ok(row) = UnimodularRow::new(ring.clone(), a.clone(), b.clone()) else {
                continue;
            };
            found += 1;
            let q = kernel_idempotent(&row);
            assert_eq!(q.mul(&q).unwrap(), q);
            assert!(q.act_on_row(&a).unwrap().iter().all(|e| e.is_zero()));
            assert!(q.act_on_col(&b).unwrap().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn basepoint_symbol_is_psi4() {
        let v = vaserstein_symbol(&basepoint()).unwrap();
        assert_eq!(v, AlternatingMatrix::psi(z(), 2));
    }

    #[test]
    fn symbol_of_middle_basis_row() {
        let inp =
            SymbolInput::new(zrow(&[0, 1, 0], &[0, 1, 0]).unwrap(), Orientation::Plus).unwrap();
        let v = vaserstein_symbol(&inp).unwrap();
        let rows: Vec<Vec<i64>> = vec![
            vec![0, 0, -1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, -1, 0, 0],
        ];
        let expected = ExactMatrix::from_rows(
            z(),
            rows.iter()
                .map(|r| r.iter().map(|&x| z().from_i64(x)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(v.matrix(), &expected);
        assert!(v.pfaffian().is_one());
    }

    #[test]
    fn universal_symbol_has_pfaffian_one() {
        let r = s5();
        let a: Vec<_> = ["x1", "x2", "x3"].iter().map(|v| r.var(v).unwrap()).collect();
        let b: Vec<_> = ["y1", "y2", "y3"].iter().map(|v| r.var(v).unwrap()).collect();
        let row = UnimodularRow::new(r, a, b).unwrap();
        let v = vaserstein_symbol(&SymbolInput::new(row, Orientation::Plus).unwrap()).unwrap();
        assert!(v.pfaffian().is_one());
    }

    #[test]
    fn orientation_minus_flips_the_det_block_only() {
        let inp_plus = basepoint();
        let inp_minus =
            SymbolInput::new(inp_plus.row.clone(), Orientation::Minus).unwrap();
        let vp = vaserstein_symbol(&inp_plus).unwrap();
        let vm = vaserstein_symbol(&inp_minus).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_eq!(vm.matrix().entry(i, j), &vp.matrix().entry(i, j).neg());
            }
            assert_eq!(vm.matrix().entry(i, 3), vp.matrix().entry(i, 3));
        }
    }

    #[test]
    fn transform_check_identity_and_elementary() {
        let inp = basepoint();
        let i3 = ExactMatrix::identity(z(), 3);
        assert!(symbol_transform_check(&inp, &i3).unwrap());

        let zl = RingHandle::polynomial(z(), &["l"], MonomialOrder::GrLex).unwrap();
        let lam = zl.var("l").unwrap();
        let row = UnimodularRow::new(
            zl.clone(),
            vec![zl.zero(), zl.zero(), zl.one()],
            vec![zl.zero(), zl.zero(), zl.one()],
        )
        .unwrap();
        let inp = SymbolInput::new(row, Orientation::Plus).unwrap();
        let phi = build_generator(
            &zl,
            &GeneratorSpec::Elementary { row: 0, col: 1, lambda: lam },
            3,
        )
        .unwrap();
        assert!(symbol_transform_check(&inp, &phi).unwrap());
    }

    #[test]
    fn transform_check_diag_units_over_z5() {
        let z5 = RingHandle::modular_u64(5).unwrap();
        let row = UnimodularRow::new(
            z5.clone(),
            vec![z5.from_i64(0), z5.from_i64(0), z5.from_i64(1)],
            vec![z5.from_i64(0), z5.from_i64(0), z5.from_i64(1)],
        )
        .unwrap();
        let inp = SymbolInput::new(row, Orientation::Plus).unwrap();
        // diag(u, u^{-1}, 1) with u = 2
        let phi = ExactMatrix::from_rows(
            z5.clone(),
            vec![
                vec![z5.from_i64(2), z5.from_i64(0), z5.from_i64(0)],
                vec![z5.from_i64(0), z5.from_i64(3), z5.from_i64(0)],
                vec![z5.from_i64(0), z5.from_i64(0), z5.from_i64(1)],
            ],
        )
        .unwrap();
        assert!(symbol_transform_check(&inp, &phi).unwrap());
    }

    #[test]
    fn transform_check_rejects_non_det1() {
        let inp = basepoint();
        let two = ExactMatrix::from_rows(
            z(),
            vec![
                vec![z().from_i64(2), z().from_i64(0), z().from_i64(0)],
                vec![z().from_i64(0), z().from_i64(1), z().from_i64(0)],
                vec![z().from_i64(0), z().from_i64(0), z().from_i64(1)],
            ],
        )
        .unwrap();
        assert!(matches!(
            symbol_transform_check(&inp, &two),
            Err(Error::BadCertificate(_))
        ));
    }

    #[test]
    fn sl4_identity_action_returns_the_row() {
        let inp = basepoint();
        let out = sl4_act(&inp, &ExactMatrix::identity(z(), 4)).unwrap();
        assert_eq!(out.row(), inp.row.row());
    }

    #[test]
    fn sl4_block_action_is_right_multiplication() {
        let z5 = RingHandle::modular_u64(5).unwrap();
        let row = UnimodularRow::new(
            z5.clone(),
            vec![z5.from_i64(0), z5.from_i64(0), z5.from_i64(1)],
            vec![z5.from_i64(0), z5.from_i64(0), z5.from_i64(1)],
        )
        .unwrap();
        let inp = SymbolInput::new(row.clone(), Orientation::Plus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..12 {
            // random det-1 3x3 as a short product of elementaries
            let mut phi3 = ExactMatrix::identity(z5.clone(), 3);
            for _ in 0..4 {
                let i = rng.gen_range(0..3);
                let mut j = rng.gen_range(0..3);
                while j == i {
                    j = rng.gen_range(0..3);
                }
                let g = build_generator(
                    &z5,
                    &GeneratorSpec::Elementary {
                        row: i,
                        col: j,
                        lambda: z5.random_element(&mut rng, 4, 1, 1),
                    },
                    3,
                )
                .unwrap();
                phi3 = phi3.mul(&g).unwrap();
            }
            let phi = phi3.direct_sum(&ExactMatrix::identity(z5.clone(), 1)).unwrap();
            let out = sl4_act(&inp, &phi).unwrap();
            let expected = phi3.act_on_row(row.row()).unwrap();
            assert_eq!(out.row(), &expected[..]);
        }
    }
}
