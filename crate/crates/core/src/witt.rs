//! Representative-level arithmetic of the stable congruence groups of
//! alternating invertible matrices: group law, negation, the Pfaffian
//! homomorphism, witness-certified equivalence, the hyperbolic and eta maps,
//! and the xi map from free-module triples.
//!
//! Classes are represented, never canonically decided: equality of classes
//! over a general ring is certified positively by a [`WitnessWord`], or
//! decided exhaustively over finite rings by the census module. No normal
//! form for the equivalence exists, so none is pretended.

use crate::altform::{sigma, AlternatingMatrix};
use crate::error::{Error, Result};
use crate::generators::{self, GeneratorSpec};
use crate::matrix::ExactMatrix;
use crate::ring::{RingElement, UnitStatus};

/// Which subgroup the equivalence is taken in: the elementary subgroup or
/// all of SL.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFlag {
    Elementary,
    SpecialLinear,
}

impl GroupFlag {
    pub fn tag(&self) -> &'static str {
        match self {
            GroupFlag::Elementary => "E",
            GroupFlag::SpecialLinear => "SL",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "E" => Some(GroupFlag::Elementary),
            "SL" => Some(GroupFlag::SpecialLinear),
            _ => None,
        }
    }
}

/// A representative of a stable congruence class: an alternating invertible
/// matrix, the group flag, and (when available) a verified inverse of its
/// Pfaffian. Membership in the Pfaffian-kernel subgroup corresponds to
/// `Pf = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittRep {
    rep: AlternatingMatrix,
    group: GroupFlag,
    pfaffian: RingElement,
    pf_inverse: Option<RingElement>,
}

impl WittRep {
    /// Wrap a representative; the Pfaffian-unit certificate is filled in
    /// automatically where `unit_status` can decide.
    pub fn new(rep: AlternatingMatrix, group: GroupFlag) -> Self {
        let pfaffian = rep.pfaffian();
        let pf_inverse = match pfaffian.unit_status() {
            UnitStatus::Yes(inv) => Some(inv),
            _ => None,
        };
        WittRep { rep, group, pfaffian, pf_inverse }
    }

    /// Wrap with an explicit Pfaffian-inverse certificate, verified here.
    pub fn with_certificate(
        rep: AlternatingMatrix,
        group: GroupFlag,
        pf_inverse: RingElement,
    ) -> Result<Self> {
        let pfaffian = rep.pfaffian();
        if !pfaffian.mul(&pf_inverse)?.is_one() {
            return Err(Error::BadCertificate("Pf * certificate != 1".into()));
        }
        Ok(WittRep { rep, group, pfaffian, pf_inverse: Some(pf_inverse) })
    }

    pub fn rep(&self) -> &AlternatingMatrix {
        &self.rep
    }

    pub fn group(&self) -> GroupFlag {
        self.group
    }

    pub fn pfaffian(&self) -> &RingElement {
        &self.pfaffian
    }

    pub fn pf_certificate(&self) -> Option<&RingElement> {
        self.pf_inverse.as_ref()
    }

    /// Representative of the Pfaffian kernel (the W rather than W' groups)?
    pub fn is_kernel_rep(&self) -> bool {
        self.pfaffian.is_one()
    }

    /// Group law: the orthogonal sum of representatives. Pfaffians multiply.
    pub fn add(&self, other: &WittRep) -> Result<WittRep> {
        if self.group != other.group {
            return Err(Error::BadSpec("group flags differ".into()));
        }
        let rep = self.rep.perp(&other.rep)?;
        let pfaffian = self.pfaffian.mul(&other.pfaffian)?;
        let pf_inverse = match (&self.pf_inverse, &other.pf_inverse) {
            (Some(a), Some(b)) => Some(a.mul(b)?),
            _ => None,
        };
        Ok(WittRep { rep, group: self.group, pfaffian, pf_inverse })
    }

    /// Class inverse at representative level: `sigma * rep^{-1} * sigma`.
    /// Requires the Pfaffian-unit certificate; the result's Pfaffian is the
    /// inverse of this one's.
    pub fn neg(&self) -> Result<WittRep> {
        let pf_inv = self.pf_inverse.clone().ok_or(Error::NotInvertible)?;
        // det = Pf^2, so det^{-1} = (Pf^{-1})^2.
        let det_inv = pf_inv.mul(&pf_inv)?;
        let inv = self.rep.matrix().inverse(Some(&det_inv))?;
        let inv_alt = AlternatingMatrix::new(inv)?;
        let s = sigma(self.rep.ring().clone(), self.rep.half());
        let rep = AlternatingMatrix::congruence(&s, &inv_alt)?;
        // Pf(neg) = Pf^{-1}; its inverse certificate is the original Pfaffian.
        let pfaffian = rep.pfaffian();
        debug_assert_eq!(pfaffian, pf_inv);
        Ok(WittRep {
            rep,
            group: self.group,
            pfaffian,
            pf_inverse: Some(self.pfaffian.clone()),
        })
    }
}

/// One factor of a witness word: an elementary generator spec or an explicit
/// SL matrix (the latter only admissible under the SL flag).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessFactor {
    Elem {
        row: usize,
        col: usize,
        lambda: RingElement,
    },
    Explicit(ExactMatrix),
}

/// A product expression certifying an equivalence of stabilized alternating
/// matrices. The stabilization level `s` is explicit so both sides of the
/// defining identity are padded by the same amount.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessWord {
    pub factors: Vec<WitnessFactor>,
    pub stabilization: usize,
}

impl WitnessWord {
    pub fn empty(stabilization: usize) -> Self {
        WitnessWord { factors: Vec::new(), stabilization }
    }
}

/// Outcome of a witness check: either the identity holds, or the first
/// failing entry is reported with both sides' values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessCheck {
    Verified,
    Mismatch {
        row: usize,
        col: usize,
        left: RingElement,
        right: RingElement,
    },
}

impl WitnessCheck {
    pub fn verified(&self) -> bool {
        matches!(self, WitnessCheck::Verified)
    }
}

/// Check the stabilized congruence identity
/// `M ⊥ psi_{2n+2s} = E^t (N ⊥ psi_{2m+2s}) E` for `M` of size 2m, `N` of
/// size 2n and `E` the assembled word at size 2m+2n+2s.
///
/// Shape and group violations (wrong factor size, explicit factor under the
/// E flag, explicit factor without determinant 1) are `BadWitness` errors,
/// distinct from an identity failure, which is reported as a
/// [`WitnessCheck::Mismatch`] locus.
pub fn check_equiv_witness(
    m: &AlternatingMatrix,
    n: &AlternatingMatrix,
    word: &WitnessWord,
    flag: GroupFlag,
) -> Result<WitnessCheck> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    let ring = m.ring().clone();
    let half_m = m.half();
    let half_n = n.half();
    let total = 2 * half_m + 2 * half_n + 2 * word.stabilization;

    let mut e = ExactMatrix::identity(ring.clone(), total);
    for factor in &word.factors {
        let g = match factor {
            WitnessFactor::Elem { row, col, lambda } => generators::build_generator(
                &ring,
                &GeneratorSpec::Elementary { row: *row, col: *col, lambda: lambda.clone() },
                total,
            )
            .map_err(|err| Error::BadWitness(err.to_string()))?,
            WitnessFactor::Explicit(mat) => {
                if flag == GroupFlag::Elementary {
                    return Err(Error::BadWitness(
                        "explicit matrix factor in an elementary-flag word".into(),
                    ));
                }
                if mat.ring() != &ring {
                    return Err(Error::BadWitness("factor over a different ring".into()));
                }
                if mat.nrows() != total || mat.ncols() != total {
                    return Err(Error::BadWitness(format!(
                        "factor is {}x{}, stabilized size is {}",
                        mat.nrows(),
                        mat.ncols(),
                        total
                    )));
                }
                if !mat.det()?.is_one() {
                    return Err(Error::BadWitness("explicit factor has det != 1".into()));
                }
                mat.clone()
            }
        };
        e = e.mul(&g)?;
    }

    let lhs = m.stabilize(half_n + word.stabilization);
    let rhs_inner = n.stabilize(half_m + word.stabilization);
    let rhs = AlternatingMatrix::congruence(&e, &rhs_inner)?;
    for i in 0..total {
        for j in 0..total {
            if lhs.matrix().entry(i, j) != rhs.matrix().entry(i, j) {
                return Ok(WitnessCheck::Mismatch {
                    row: i,
                    col: j,
                    left: lhs.matrix().entry(i, j).clone(),
                    right: rhs.matrix().entry(i, j).clone(),
                });
            }
        }
    }
    Ok(WitnessCheck::Verified)
}

/// Witness for commutativity of the group law: the block swap congruence
/// carrying `y ⊥ x` to `x ⊥ y`, emitted as elementary factors (the swap of
/// two even-sized blocks has determinant 1). Verifies under the E flag with
/// `check_equiv_witness(add(x,y).rep, add(y,x).rep, w, _)`.
pub fn commutativity_witness(x: &WittRep, y: &WittRep) -> Result<WitnessWord> {
    if x.rep().ring() != y.rep().ring() {
        return Err(Error::MixedRings);
    }
    let b = generators::block_swap(x.rep().ring(), x.rep().size(), y.rep().size());
    let factors = generators::factor_signed_permutation(&b)?
        .into_iter()
        .map(|g| match g {
            GeneratorSpec::Elementary { row, col, lambda } => {
                WitnessFactor::Elem { row, col, lambda }
            }
            _ => unreachable!("signed permutation factors are elementary"),
        })
        .collect();
    Ok(WitnessWord { factors, stabilization: 0 })
}

/// The hyperbolic map `M -> M^t psi M`. When `det(M) = 1` the image has
/// Pfaffian 1, i.e. lands among kernel representatives.
pub fn hyperbolic(m: &ExactMatrix, det_inverse: Option<&RingElement>) -> Result<WittRep> {
    if !m.is_square() || m.nrows() % 2 != 0 {
        return Err(Error::ShapeMismatch(format!(
            "hyperbolic map needs an even square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let half = m.nrows() / 2;
    let psi = AlternatingMatrix::psi(m.ring().clone(), half);
    let rep = AlternatingMatrix::congruence(m, &psi)?;
    match det_inverse {
        Some(c) => WittRep::with_certificate(rep, GroupFlag::Elementary, c.clone()),
        None => Ok(WittRep::new(rep, GroupFlag::Elementary)),
    }
}

/// The formal difference `[R^{2n}, M] - [R^{2n}, psi_{2n}]`: data only, no
/// group structure is computed on the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaValue {
    pub plus: AlternatingMatrix,
    pub minus: AlternatingMatrix,
    /// Set only when the difference is literally zero (`plus` equals the
    /// standard form); congruent-but-unequal pairs are not decided.
    pub zero: bool,
}

pub fn eta(x: &WittRep) -> Result<EtaValue> {
    if x.pf_certificate().is_none() {
        return Err(Error::NotInvertible);
    }
    let psi = AlternatingMatrix::psi(x.rep().ring().clone(), x.rep().half());
    let zero = x.rep() == &psi;
    Ok(EtaValue { plus: x.rep().clone(), minus: psi, zero })
}

/// A triple of two alternating forms on the same free module, with an
/// optional basis change.
#[derive(Debug, Clone)]
pub struct FreeTriple {
    pub g: AlternatingMatrix,
    pub f: AlternatingMatrix,
    pub alpha: Option<ExactMatrix>,
}

impl FreeTriple {
    pub fn new(g: AlternatingMatrix, f: AlternatingMatrix, alpha: Option<ExactMatrix>) -> Result<Self> {
        if g.ring() != f.ring() {
            return Err(Error::MixedRings);
        }
        if g.size() != f.size() {
            return Err(Error::ShapeMismatch(format!(
                "triple forms of sizes {} and {}",
                g.size(),
                f.size()
            )));
        }
        if let Some(a) = &alpha {
            if a.ring() != g.ring() {
                return Err(Error::MixedRings);
            }
            if !a.is_square() || a.nrows() != g.size() {
                return Err(Error::ShapeMismatch(format!(
                    "basis change is {}x{}, forms have size {}",
                    a.nrows(),
                    a.ncols(),
                    g.size()
                )));
            }
        }
        Ok(FreeTriple { g, f, alpha })
    }
}

/// The xi map on free triples:
/// `(alpha^t f alpha) ⊥ sigma (alpha^t g alpha)^{-1} sigma^t`, of size 4n.
/// `det_inverse`, when given, certifies the determinant of `alpha^t g alpha`.
/// Since sigma is symmetric, its transpose is implemented as sigma itself.
pub fn xi_triple(t: &FreeTriple, det_inverse: Option<&RingElement>) -> Result<WittRep> {
    let ring = t.g.ring().clone();
    let alpha = match &t.alpha {
        Some(a) => a.clone(),
        None => ExactMatrix::identity(ring.clone(), t.g.size()),
    };
    let af = AlternatingMatrix::congruence(&alpha, &t.f)?;
    let ag = AlternatingMatrix::congruence(&alpha, &t.g)?;
    let inv = ag.matrix().inverse(det_inverse)?;
    let inv_alt = AlternatingMatrix::new(inv)?;
    let s = sigma(ring, ag.half());
    let twisted = AlternatingMatrix::congruence(&s, &inv_alt)?;
    let rep = af.perp(&twisted)?;
    Ok(WittRep::new(rep, GroupFlag::Elementary))
}
