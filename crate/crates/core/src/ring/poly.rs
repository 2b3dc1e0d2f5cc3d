//! Sparse multivariate polynomials in canonical form.
//!
//! Terms are kept strictly descending in the owning ring's monomial order
//! with no zero coefficients, so structural equality is ring equality.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Monomial order tag, fixed per polynomial ring at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded lexicographic: total degree first, ties broken lexicographically
    /// in the declared variable order. The default.
    GrLex,
    /// Plain lexicographic in the declared variable order.
    Lex,
}

impl MonomialOrder {
    pub fn tag(&self) -> &'static str {
        match self {
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "grlex" => Some(MonomialOrder::GrLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    /// Compare exponent vectors of equal length.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        if let MonomialOrder::GrLex = self {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Coefficient of a polynomial term: an integer or a residue in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Residue(BigUint),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(c) => c.is_zero(),
            Scalar::Residue(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(c) => c.is_one(),
            Scalar::Residue(c) => c.is_one(),
        }
    }
}

/// Coefficient arithmetic context: the scalar base ring of a polynomial ring.
#[derive(Debug, Clone, Copy)]
pub enum CoeffMode<'a> {
    Int,
    Mod(&'a BigUint),
}

impl<'a> CoeffMode<'a> {
    pub fn zero(&self) -> Scalar {
        match self {
            CoeffMode::Int => Scalar::Int(BigInt::zero()),
            CoeffMode::Mod(_) => Scalar::Residue(BigUint::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            CoeffMode::Int => Scalar::Int(BigInt::one()),
            CoeffMode::Mod(_) => Scalar::Residue(BigUint::one()),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            CoeffMode::Int => Scalar::Int(v.clone()),
            CoeffMode::Mod(m) => {
                let mi = BigInt::from((*m).clone());
                let mut r = v % &mi;
                if r.sign() == num_bigint::Sign::Minus {
                    r += &mi;
                }
                Scalar::Residue(r.to_biguint().expect("nonnegative residue"))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoeffMode::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (CoeffMode::Mod(m), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x + y) % *m)
            }
            _ => unreachable!("scalar/coefficient-mode mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoeffMode::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x - y),
            (CoeffMode::Mod(m), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x + (*m - y % *m)) % *m)
            }
            _ => unreachable!("scalar/coefficient-mode mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoeffMode::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (CoeffMode::Mod(m), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x * y) % *m)
            }
            _ => unreachable!("scalar/coefficient-mode mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (CoeffMode::Int, Scalar::Int(x)) => Scalar::Int(-x),
            (CoeffMode::Mod(m), Scalar::Residue(x)) => {
                Scalar::Residue((*m - x % *m) % *m)
            }
            _ => unreachable!("scalar/coefficient-mode mismatch"),
        }
    }
}

/// One monomial-coefficient pair. `exps.len()` equals the ring's variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coeff: Scalar,
}

/// A polynomial in canonical form: terms strictly descending, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub terms: Vec<Term>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: vec![Term { exps: vec![0; nvars], coeff: c }],
        }
    }

    pub fn variable(nvars: usize, idx: usize, one: Scalar) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        MPoly { terms: vec![Term { exps, coeff: one }] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms[0].exps.iter().all(|&e| e == 0))
    }

    /// Constant coefficient view; `None` if the polynomial is not constant.
    pub fn as_constant(&self, mode: &CoeffMode) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(mode.zero());
        }
        if self.is_constant() {
            return Some(self.terms[0].coeff.clone());
        }
        None
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.exps.iter().map(|&e| e as u64).sum())
            .max()
            .unwrap_or(0)
    }

    /// Sort, merge equal monomials, drop zero coefficients.
    pub fn canonicalize(terms: Vec<Term>, order: MonomialOrder, mode: &CoeffMode) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| order.cmp(&b.exps, &a.exps));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.exps == t.exps {
                    last.coeff = mode.add(&last.coeff, &t.coeff);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coeff.is_zero());
        MPoly { terms: out }
    }

    /// Merge two canonical polynomials; `sub` selects subtraction.
    fn merge(&self, other: &Self, order: MonomialOrder, mode: &CoeffMode, sub: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = if i == self.terms.len() {
                false
            } else if j == other.terms.len() {
                true
            } else {
                match order.cmp(&self.terms[i].exps, &other.terms[j].exps) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let c = if sub {
                            mode.sub(&self.terms[i].coeff, &other.terms[j].coeff)
                        } else {
                            mode.add(&self.terms[i].coeff, &other.terms[j].coeff)
                        };
                        if !c.is_zero() {
                            out.push(Term { exps: self.terms[i].exps.clone(), coeff: c });
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                }
            };
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                let t = &other.terms[j];
                let coeff = if sub { mode.neg(&t.coeff) } else { t.coeff.clone() };
                out.push(Term { exps: t.exps.clone(), coeff });
                j += 1;
            }
        }
        MPoly { terms: out }
    }

    pub fn add(&self, other: &Self, order: MonomialOrder, mode: &CoeffMode) -> Self {
        self.merge(other, order, mode, false)
    }

    pub fn sub(&self, other: &Self, order: MonomialOrder, mode: &CoeffMode) -> Self {
        self.merge(other, order, mode, true)
    }

    pub fn neg(&self, mode: &CoeffMode) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term { exps: t.exps.clone(), coeff: mode.neg(&t.coeff) })
                .collect(),
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, exps: &[u32], coeff: &Scalar, mode: &CoeffMode) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = mode.mul(&t.coeff, coeff);
            if c.is_zero() {
                continue;
            }
            let e: Vec<u32> = t.exps.iter().zip(exps.iter()).map(|(a, b)| a + b).collect();
            terms.push(Term { exps: e, coeff: c });
        }
        // Term-multiplication preserves strict descending order.
        MPoly { terms }
    }

    pub fn mul(&self, other: &Self, order: MonomialOrder, mode: &CoeffMode) -> Self {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let mut acc = MPoly::zero();
        for t in &other.terms {
            acc = acc.add(&self.mul_term(&t.exps, &t.coeff, mode), order, mode);
        }
        acc
    }

    /// Reduce modulo a single relation whose leading coefficient is 1.
    ///
    /// Repeatedly clears the highest term divisible by the relation's leading
    /// monomial; the result contains no such monomial. This is complete
    /// normal-form reduction because a one-element monic set is a Groebner
    /// basis of the ideal it generates.
    pub fn reduce_by(&self, relation: &Self, order: MonomialOrder, mode: &CoeffMode) -> Self {
        debug_assert!(!relation.terms.is_empty());
        let lead = &relation.terms[0];
        debug_assert!(lead.coeff.is_one());
        let tail = MPoly { terms: relation.terms[1..].to_vec() };
        let mut cur = self.clone();
        loop {
            let hit = cur.terms.iter().position(|t| {
                t.exps.iter().zip(lead.exps.iter()).all(|(a, b)| a >= b)
            });
            let Some(idx) = hit else { return cur };
            let t = cur.terms[idx].clone();
            let q: Vec<u32> = t.exps.iter().zip(lead.exps.iter()).map(|(a, b)| a - b).collect();
            // cur -= (t / lead) * relation, i.e. drop t and subtract (t/lead)*tail.
            cur.terms.remove(idx);
            let sub = tail.mul_term(&q, &t.coeff, mode);
            cur = cur.sub(&sub, order, mode);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Scalar {
        Scalar::Int(BigInt::from(v))
    }

    #[test]
    fn grlex_compares_degree_then_lex() {
        let ord = MonomialOrder::GrLex;
        // x*y vs x^2: equal degree, lex picks x^2.
        assert_eq!(ord.cmp(&[1, 1], &[2, 0]), Ordering::Less);
        // degree dominates.
        assert_eq!(ord.cmp(&[3, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(ord.cmp(&[1, 1], &[1, 1]), Ordering::Equal);
    }

    #[test]
    fn canonicalize_merges_and_drops_zeros() {
        let mode = CoeffMode::Int;
        let terms = vec![
            Term { exps: vec![1, 0], coeff: int(2) },
            Term { exps: vec![0, 0], coeff: int(5) },
            Term { exps: vec![1, 0], coeff: int(-2) },
        ];
        let p = MPoly::canonicalize(terms, MonomialOrder::GrLex, &mode);
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[0].exps, vec![0, 0]);
    }

    #[test]
    fn single_step_division() {
        // relation x*y - 1 in Z[x, y]; reduce x^2*y -> x.
        let mode = CoeffMode::Int;
        let ord = MonomialOrder::GrLex;
        let rel = MPoly::canonicalize(
            vec![
                Term { exps: vec![1, 1], coeff: int(1) },
                Term { exps: vec![0, 0], coeff: int(-1) },
            ],
            ord,
            &mode,
        );
        let p = MPoly::canonicalize(vec![Term { exps: vec![2, 1], coeff: int(1) }], ord, &mode);
        let r = p.reduce_by(&rel, ord, &mode);
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].exps, vec![1, 0]);
    }
}
