//! Presented commutative rings with exact canonical-form arithmetic.
//!
//! Four presentations are supported: the integers, modular rings `Z/m`,
//! multivariate polynomial rings over a scalar base, and quotients of a
//! polynomial ring by a single relation with monic leading term. One monic
//! relation is trivially a Groebner basis of the ideal it generates, so
//! one-polynomial division yields canonical normal forms without a general
//! Groebner engine; this covers the coordinate rings of the odd quadrics
//! and finite fields `F_p[t]/(f)`.
//!
//! Every element is stored in canonical form, so structural equality is
//! ring equality. All values are immutable and all operations pure.

mod parse;
mod poly;

pub use poly::{CoeffMode, MPoly, MonomialOrder, Scalar, Term};

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Exhaustive unit search is attempted only on rings at most this large.
const UNIT_SEARCH_CAP: u64 = 4096;

#[derive(Debug)]
pub enum RingKind {
    Integers,
    Modular {
        modulus: BigUint,
    },
    Polynomial {
        base: RingHandle,
        vars: Vec<String>,
        order: MonomialOrder,
    },
    Quotient {
        base: RingHandle,
        relation: MPoly,
    },
}

/// A presented commutative ring. Cheap to clone; equality is structural.
#[derive(Clone, Debug)]
pub struct RingHandle {
    inner: Arc<RingKind>,
}

impl PartialEq for RingHandle {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        match (&*self.inner, &*other.inner) {
            (RingKind::Integers, RingKind::Integers) => true,
            (RingKind::Modular { modulus: a }, RingKind::Modular { modulus: b }) => a == b,
            (
                RingKind::Polynomial { base: ba, vars: va, order: oa },
                RingKind::Polynomial { base: bb, vars: vb, order: ob },
            ) => ba == bb && va == vb && oa == ob,
            (
                RingKind::Quotient { base: ba, relation: ra },
                RingKind::Quotient { base: bb, relation: rb },
            ) => ba == bb && ra == rb,
            _ => false,
        }
    }
}

impl Eq for RingHandle {}

impl fmt::Display for RingHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.inner {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular { modulus } => write!(f, "Z/{}", modulus),
            RingKind::Polynomial { base, vars, .. } => {
                write!(f, "{}[{}]", base, vars.join(","))
            }
            RingKind::Quotient { base, relation } => {
                let vars = base.vars().expect("quotient base is polynomial");
                write!(f, "{}/({})", base, parse::print_poly(relation, vars))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Payload {
    Int(BigInt),
    Residue(BigUint),
    Poly(MPoly),
}

/// An element of a [`RingHandle`], always held in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    owner: RingHandle,
    payload: Payload,
}

/// Tri-state unit test. `Yes` carries a verified inverse; `No` is only
/// returned with proof; `Unknown` is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitStatus {
    Yes(RingElement),
    No,
    Unknown,
}

impl RingHandle {
    fn from_kind(kind: RingKind) -> Self {
        RingHandle { inner: Arc::new(kind) }
    }

    pub fn kind(&self) -> &RingKind {
        &self.inner
    }

    pub fn integers() -> Self {
        Self::from_kind(RingKind::Integers)
    }

    pub fn modular_u64(m: u64) -> Result<Self> {
        Self::modular(BigUint::from(m))
    }

    pub fn modular(m: BigUint) -> Result<Self> {
        if m < BigUint::from(2u32) {
            return Err(Error::BadRing("modulus must be at least 2".into()));
        }
        Ok(Self::from_kind(RingKind::Modular { modulus: m }))
    }

    /// Polynomial ring over a scalar base (integers or modular).
    pub fn polynomial(base: RingHandle, vars: &[&str], order: MonomialOrder) -> Result<Self> {
        if !matches!(*base.inner, RingKind::Integers | RingKind::Modular { .. }) {
            return Err(Error::BadRing(
                "polynomial coefficients must come from the integers or a modular ring".into(),
            ));
        }
        if vars.is_empty() {
            return Err(Error::BadRing("polynomial ring needs at least one variable".into()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            if v.is_empty()
                || v.chars().next().map(|c| c.is_ascii_digit()).unwrap_or(true)
                || v.chars().any(|c| "+-*^ \t()".contains(c))
            {
                return Err(Error::BadRing(format!("invalid variable name {:?}", v)));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::BadRing(format!("duplicate variable name {:?}", v)));
            }
            names.push(v.to_string());
        }
        Ok(Self::from_kind(RingKind::Polynomial { base, vars: names, order }))
    }

    /// Quotient of a polynomial ring by one relation whose leading
    /// coefficient (in the declared monomial order) is exactly 1.
    pub fn quotient(base: RingHandle, relation: &RingElement) -> Result<Self> {
        if relation.owner != base {
            return Err(Error::MixedRings);
        }
        let RingKind::Polynomial { .. } = &*base.inner else {
            return Err(Error::BadRing("quotient base must be a polynomial ring".into()));
        };
        let Payload::Poly(rel) = &relation.payload else {
            return Err(Error::BadRing("relation must be a polynomial".into()));
        };
        if rel.is_zero() || rel.is_constant() {
            return Err(Error::BadRing("relation must be nonconstant".into()));
        }
        if !rel.terms[0].coeff.is_one() {
            return Err(Error::BadRing(
                "relation's leading coefficient must be 1 (monic leading term)".into(),
            ));
        }
        Ok(Self::from_kind(RingKind::Quotient { base, relation: rel.clone() }))
    }

    /// The polynomial ring a quotient was formed from.
    pub fn polynomial_base(&self) -> Option<&RingHandle> {
        match &*self.inner {
            RingKind::Quotient { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn relation(&self) -> Option<RingElement> {
        match &*self.inner {
            RingKind::Quotient { base, relation } => Some(RingElement {
                owner: base.clone(),
                payload: Payload::Poly(relation.clone()),
            }),
            _ => None,
        }
    }

    /// Variable names, for polynomial and quotient rings.
    pub fn vars(&self) -> Option<&[String]> {
        match &*self.inner {
            RingKind::Polynomial { vars, .. } => Some(vars),
            RingKind::Quotient { base, .. } => base.vars(),
            _ => None,
        }
    }

    pub fn monomial_order(&self) -> Option<MonomialOrder> {
        match &*self.inner {
            RingKind::Polynomial { order, .. } => Some(*order),
            RingKind::Quotient { base, .. } => base.monomial_order(),
            _ => None,
        }
    }

    /// Coefficient context of the underlying polynomial ring.
    fn coeff_mode(&self) -> Option<CoeffMode<'_>> {
        match &*self.inner {
            RingKind::Polynomial { base, .. } => match &*base.inner {
                RingKind::Integers => Some(CoeffMode::Int),
                RingKind::Modular { modulus } => Some(CoeffMode::Mod(modulus)),
                _ => unreachable!("polynomial base is scalar by construction"),
            },
            RingKind::Quotient { base, .. } => base.coeff_mode(),
            _ => None,
        }
    }

    fn quotient_relation(&self) -> Option<&MPoly> {
        match &*self.inner {
            RingKind::Quotient { relation, .. } => Some(relation),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        let payload = match &*self.inner {
            RingKind::Integers => Payload::Int(v.clone()),
            RingKind::Modular { modulus } => {
                let mi = BigInt::from(modulus.clone());
                let mut r = v % &mi;
                if r.sign() == num_bigint::Sign::Minus {
                    r += &mi;
                }
                Payload::Residue(r.to_biguint().expect("nonnegative"))
            }
            RingKind::Polynomial { .. } | RingKind::Quotient { .. } => {
                let mode = self.coeff_mode().expect("polynomial-like ring");
                let nvars = self.vars().expect("polynomial-like ring").len();
                Payload::Poly(MPoly::constant(nvars, mode.from_bigint(v)))
            }
        };
        RingElement { owner: self.clone(), payload }
    }

    /// The variable `name` as an element of a polynomial or quotient ring.
    pub fn var(&self, name: &str) -> Result<RingElement> {
        let vars = self
            .vars()
            .ok_or_else(|| Error::Unsupported("ring has no variables".into()))?;
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {:?}", name)))?;
        let mode = self.coeff_mode().expect("polynomial-like ring");
        let p = MPoly::variable(vars.len(), idx, mode.one());
        // A single variable is never reducible by a nonconstant monic relation
        // unless the relation is that variable itself; reduce anyway.
        Ok(self.attach_poly(p))
    }

    /// Wrap a polynomial payload, applying quotient reduction when needed.
    fn attach_poly(&self, p: MPoly) -> RingElement {
        let payload = match self.quotient_relation() {
            Some(rel) => {
                let mode = self.coeff_mode().expect("quotient over polynomial");
                let order = self.monomial_order().expect("quotient over polynomial");
                Payload::Poly(p.reduce_by(rel, order, &mode))
            }
            None => Payload::Poly(p),
        };
        RingElement { owner: self.clone(), payload }
    }

    /// Parse an element from the canonical string grammar.
    pub fn parse(&self, s: &str) -> Result<RingElement> {
        match &*self.inner {
            RingKind::Integers => Ok(RingElement {
                owner: self.clone(),
                payload: Payload::Int(parse::parse_bigint(s)?),
            }),
            RingKind::Modular { modulus } => Ok(RingElement {
                owner: self.clone(),
                payload: Payload::Residue(parse::parse_residue(s, modulus)?),
            }),
            RingKind::Polynomial { vars, order, .. } => {
                let mode = self.coeff_mode().expect("polynomial ring");
                let p = parse::parse_poly(s, vars, *order, &mode)?;
                Ok(RingElement { owner: self.clone(), payload: Payload::Poly(p) })
            }
            RingKind::Quotient { base, .. } => {
                let vars = base.vars().unwrap();
                let order = base.monomial_order().unwrap();
                let mode = self.coeff_mode().expect("quotient ring");
                let p = parse::parse_poly(s, vars, order, &mode)?;
                Ok(self.attach_poly(p))
            }
        }
    }

    /// Reduce an element of the base polynomial ring into this quotient ring.
    pub fn reduce_from_base(&self, x: &RingElement) -> Result<RingElement> {
        let RingKind::Quotient { base, .. } = &*self.inner else {
            return Err(Error::Unsupported("reduce_from_base needs a quotient ring".into()));
        };
        if x.owner != *base {
            return Err(Error::MixedRings);
        }
        let Payload::Poly(p) = &x.payload else {
            return Err(Error::Unsupported("expected polynomial payload".into()));
        };
        Ok(self.attach_poly(p.clone()))
    }

    /// Number of elements, when the presentation is finite and recognizable:
    /// `Z/m`, or a univariate quotient over `Z/m` whose relation has leading
    /// monomial `t^d` (then elements are the residues of degree `< d`).
    pub fn element_count(&self) -> Option<BigUint> {
        match &*self.inner {
            RingKind::Integers | RingKind::Polynomial { .. } => None,
            RingKind::Modular { modulus } => Some(modulus.clone()),
            RingKind::Quotient { base, relation } => {
                let vars = base.vars().unwrap();
                if vars.len() != 1 {
                    return None;
                }
                let RingKind::Polynomial { base: scalars, .. } = &*base.inner else {
                    return None;
                };
                let RingKind::Modular { modulus } = &*scalars.inner else {
                    return None;
                };
                let lead = &relation.terms[0];
                let d = lead.exps[0];
                // Finiteness needs every residue to have degree < d, i.e. the
                // leading monomial must be the pure power t^d.
                let max_mon = relation.terms.iter().map(|t| t.exps[0]).max().unwrap_or(0);
                if d == 0 || max_mon != d {
                    return None;
                }
                let mut count = BigUint::one();
                for _ in 0..d {
                    count *= modulus;
                }
                Some(count)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.element_count().is_some()
    }

    /// The `idx`-th element of a finite ring, in the canonical enumeration
    /// order (residues ascending; univariate quotient residues by base-m
    /// digit counting, constant coefficient least significant).
    pub fn element_at(&self, idx: &BigUint) -> Option<RingElement> {
        let count = self.element_count()?;
        if idx >= &count {
            return None;
        }
        match &*self.inner {
            RingKind::Modular { .. } => Some(RingElement {
                owner: self.clone(),
                payload: Payload::Residue(idx.clone()),
            }),
            RingKind::Quotient { base, relation } => {
                let RingKind::Polynomial { base: scalars, order, .. } = &*base.inner else {
                    return None;
                };
                let RingKind::Modular { modulus } = &*scalars.inner else {
                    return None;
                };
                let d = relation.terms[0].exps[0];
                let mode = CoeffMode::Mod(modulus);
                let mut terms = Vec::new();
                let mut rest = idx.clone();
                for deg in 0..d {
                    let digit = &rest % modulus;
                    rest /= modulus;
                    if !digit.is_zero() {
                        terms.push(Term { exps: vec![deg], coeff: Scalar::Residue(digit) });
                    }
                }
                let p = MPoly::canonicalize(terms, *order, &mode);
                Some(RingElement { owner: self.clone(), payload: Payload::Poly(p) })
            }
            _ => None,
        }
    }

    /// Iterate all elements of a finite ring in canonical order.
    pub fn enumerate(&self) -> Result<Vec<RingElement>> {
        let count = self.element_count().ok_or(Error::NotEnumerable)?;
        let n = count.to_u64().ok_or(Error::NotEnumerable)?;
        let mut out = Vec::with_capacity(n as usize);
        let mut i = BigUint::zero();
        while i < count {
            out.push(self.element_at(&i).expect("index in range"));
            i += 1u32;
        }
        Ok(out)
    }

    /// A random element, for randomized test suites and benchmarks. Infinite
    /// rings draw small values: integers in `[-bound, bound]`, polynomials
    /// with at most `terms` monomials of degree at most `degree`.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        bound: i64,
        terms: usize,
        degree: u32,
    ) -> RingElement {
        match &*self.inner {
            RingKind::Integers => self.from_i64(rng.gen_range(-bound..=bound)),
            RingKind::Modular { modulus } => {
                let m = modulus.to_u64().unwrap_or(u64::MAX);
                self.from_i64(rng.gen_range(0..m.max(1)) as i64)
            }
            RingKind::Polynomial { vars, order, .. } => {
                let mode = self.coeff_mode().unwrap();
                let nvars = vars.len();
                let mut ts = Vec::new();
                for _ in 0..rng.gen_range(0..=terms) {
                    let mut exps = vec![0u32; nvars];
                    let mut left = degree;
                    for e in exps.iter_mut() {
                        if left == 0 {
                            break;
                        }
                        *e = rng.gen_range(0..=left);
                        left -= *e;
                    }
                    let c = mode.from_bigint(&BigInt::from(rng.gen_range(-bound..=bound)));
                    ts.push(Term { exps, coeff: c });
                }
                let p = MPoly::canonicalize(ts, *order, &mode);
                RingElement { owner: self.clone(), payload: Payload::Poly(p) }
            }
            RingKind::Quotient { base, .. } => {
                let raw = base.random_element(rng, bound, terms, degree);
                self.reduce_from_base(&raw).expect("base element")
            }
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl RingElement {
    pub fn owner(&self) -> &RingHandle {
        &self.owner
    }

    /// Canonical string per the element grammar; bit-exact round trip with
    /// [`RingHandle::parse`].
    pub fn to_canonical_string(&self) -> String {
        match &self.payload {
            Payload::Int(v) => parse::print_bigint(v),
            Payload::Residue(v) => parse::print_residue(v),
            Payload::Poly(p) => parse::print_poly(p, self.owner.vars().expect("has vars")),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(v) => v.is_zero(),
            Payload::Residue(v) => v.is_zero(),
            Payload::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.payload {
            Payload::Int(v) => v.is_one(),
            Payload::Residue(v) => v.is_one(),
            Payload::Poly(p) => {
                p.terms.len() == 1
                    && p.terms[0].exps.iter().all(|&e| e == 0)
                    && p.terms[0].coeff.is_one()
            }
        }
    }

    fn check_owner(&self, other: &RingElement) -> Result<()> {
        if self.owner == other.owner {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_owner(other)?;
        let payload = match (&*self.owner.inner, &self.payload, &other.payload) {
            (RingKind::Integers, Payload::Int(a), Payload::Int(b)) => Payload::Int(a + b),
            (RingKind::Modular { modulus }, Payload::Residue(a), Payload::Residue(b)) => {
                Payload::Residue((a + b) % modulus)
            }
            (_, Payload::Poly(a), Payload::Poly(b)) => {
                let mode = self.owner.coeff_mode().expect("polynomial-like");
                let order = self.owner.monomial_order().expect("polynomial-like");
                // Normal forms are closed under addition: no monomial of the
                // sum is divisible by the relation's leading monomial.
                Payload::Poly(a.add(b, order, &mode))
            }
            _ => unreachable!("payload kind matches ring kind"),
        };
        Ok(RingElement { owner: self.owner.clone(), payload })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        let payload = match (&*self.owner.inner, &self.payload) {
            (RingKind::Integers, Payload::Int(a)) => Payload::Int(-a),
            (RingKind::Modular { modulus }, Payload::Residue(a)) => {
                Payload::Residue((modulus - a % modulus) % modulus)
            }
            (_, Payload::Poly(a)) => {
                let mode = self.owner.coeff_mode().expect("polynomial-like");
                Payload::Poly(a.neg(&mode))
            }
            _ => unreachable!("payload kind matches ring kind"),
        };
        RingElement { owner: self.owner.clone(), payload }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_owner(other)?;
        match (&*self.owner.inner, &self.payload, &other.payload) {
            (RingKind::Integers, Payload::Int(a), Payload::Int(b)) => Ok(RingElement {
                owner: self.owner.clone(),
                payload: Payload::Int(a * b),
            }),
            (RingKind::Modular { modulus }, Payload::Residue(a), Payload::Residue(b)) => {
                Ok(RingElement {
                    owner: self.owner.clone(),
                    payload: Payload::Residue((a * b) % modulus),
                })
            }
            (_, Payload::Poly(a), Payload::Poly(b)) => {
                let mode = self.owner.coeff_mode().expect("polynomial-like");
                let order = self.owner.monomial_order().expect("polynomial-like");
                let prod = a.mul(b, order, &mode);
                Ok(self.owner.attach_poly(prod))
            }
            _ => unreachable!("payload kind matches ring kind"),
        }
    }

    /// Canonical normal form. Elements are kept reduced at all times, so
    /// this re-runs the reduction and is the identity on quotient elements;
    /// it errors on non-quotient owners per the operation contract.
    pub fn normal_form(&self) -> Result<RingElement> {
        let Payload::Poly(p) = &self.payload else {
            return Err(Error::Unsupported("normal_form needs a quotient ring".into()));
        };
        if self.owner.quotient_relation().is_none() {
            return Err(Error::Unsupported("normal_form needs a quotient ring".into()));
        }
        Ok(self.owner.attach_poly(p.clone()))
    }

    /// Decide unit-ness where a proof is available.
    ///
    /// `Yes` always carries a verified inverse. `No` is returned only with
    /// proof: integers outside `{1,-1}`, modular non-units via gcd, constants
    /// that are non-units of the scalar base, nonconstant polynomials over an
    /// integral domain, and exhaustive search over small finite rings.
    /// Everything else is `Unknown`.
    pub fn unit_status(&self) -> UnitStatus {
        let status = self.unit_status_inner();
        if let UnitStatus::Yes(inv) = &status {
            debug_assert!(self.mul(inv).map(|p| p.is_one()).unwrap_or(false));
        }
        status
    }

    fn unit_status_inner(&self) -> UnitStatus {
        match (&*self.owner.inner, &self.payload) {
            (RingKind::Integers, Payload::Int(v)) => {
                if v.is_one() || (-v).is_one() {
                    UnitStatus::Yes(self.clone())
                } else {
                    UnitStatus::No
                }
            }
            (RingKind::Modular { modulus }, Payload::Residue(v)) => {
                match modular_inverse(v, modulus) {
                    Some(inv) => UnitStatus::Yes(RingElement {
                        owner: self.owner.clone(),
                        payload: Payload::Residue(inv),
                    }),
                    None => UnitStatus::No,
                }
            }
            (RingKind::Polynomial { base, .. }, Payload::Poly(p)) => {
                let mode = self.owner.coeff_mode().expect("polynomial ring");
                if let Some(c) = p.as_constant(&mode) {
                    // Constants: a constant inverse exists iff the scalar is a
                    // base unit; evaluation at 0 shows a constant unit cannot
                    // have a nonconstant inverse either.
                    return self.scalar_unit(base, &c);
                }
                match &*base.inner {
                    // Over an integral domain, units are the base units.
                    RingKind::Integers => UnitStatus::No,
                    RingKind::Modular { modulus } if is_probable_prime(modulus) => UnitStatus::No,
                    // Over Z/m with m composite, nonconstant units exist
                    // (nilpotent coefficients); no decision procedure here.
                    _ => UnitStatus::Unknown,
                }
            }
            (RingKind::Quotient { base, .. }, Payload::Poly(p)) => {
                if let Some(count) = self.owner.element_count() {
                    if count.to_u64().map(|c| c <= UNIT_SEARCH_CAP).unwrap_or(false) {
                        return self.unit_by_search();
                    }
                }
                let mode = self.owner.coeff_mode().expect("quotient ring");
                if let Some(c) = p.as_constant(&mode) {
                    let RingKind::Polynomial { base: scalars, .. } = &*base.inner else {
                        return UnitStatus::Unknown;
                    };
                    if let UnitStatus::Yes(inv) = self.scalar_unit(scalars, &c) {
                        return UnitStatus::Yes(inv);
                    }
                    // A constant non-unit of the base may still invert against
                    // the relation; undecided here.
                    return UnitStatus::Unknown;
                }
                UnitStatus::Unknown
            }
            _ => unreachable!("payload kind matches ring kind"),
        }
    }

    /// Unit test for a scalar constant, lifted back into `self.owner`.
    fn scalar_unit(&self, scalars: &RingHandle, c: &Scalar) -> UnitStatus {
        match (&*scalars.inner, c) {
            (RingKind::Integers, Scalar::Int(v)) => {
                if v.is_one() || (-v).is_one() {
                    let inv = if v.is_one() { 1 } else { -1 };
                    UnitStatus::Yes(self.owner.from_i64(inv))
                } else {
                    UnitStatus::No
                }
            }
            (RingKind::Modular { modulus }, Scalar::Residue(v)) => {
                match modular_inverse(v, modulus) {
                    Some(inv) => UnitStatus::Yes(
                        self.owner.from_bigint(&BigInt::from(inv)),
                    ),
                    None => UnitStatus::No,
                }
            }
            _ => UnitStatus::Unknown,
        }
    }

    fn unit_by_search(&self) -> UnitStatus {
        let Ok(all) = self.owner.enumerate() else {
            return UnitStatus::Unknown;
        };
        for cand in all {
            if let Ok(prod) = self.mul(&cand) {
                if prod.is_one() {
                    return UnitStatus::Yes(cand);
                }
            }
        }
        UnitStatus::No
    }
}

fn modular_inverse(v: &BigUint, m: &BigUint) -> Option<BigUint> {
    let vi = BigInt::from(v.clone());
    let mi = BigInt::from(m.clone());
    let e = vi.extended_gcd(&mi);
    if !e.gcd.is_one() {
        return None;
    }
    let mut x = e.x % &mi;
    if x.sign() == num_bigint::Sign::Minus {
        x += &mi;
    }
    x.to_biguint()
}

/// Trial division; moduli in this crate are desk-scale.
fn is_probable_prime(m: &BigUint) -> bool {
    let Some(n) = m.to_u64() else { return false };
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
