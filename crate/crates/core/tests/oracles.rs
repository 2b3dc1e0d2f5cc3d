//! Independent oracles for the exact kernels: the Pfaffian against its
//! combinatorial perfect-matching definition, and the division-free
//! determinant against Laplace cofactor expansion. Both oracles live here,
//! in test code only, and share no code path with the implementations they
//! check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wittkit::altform::AlternatingMatrix;
use wittkit::matrix::ExactMatrix;
use wittkit::ring::{MonomialOrder, RingElement, RingHandle};

/// Laplace cofactor expansion along the first row.
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
        let term = a.mul(&det_laplace(&m.minor(0, j))).unwrap();
        acc = if j % 2 == 0 {
            acc.add(&term).unwrap()
        } else {
            acc.sub(&term).unwrap()
        };
    }
    acc
}

/// Combinatorial Pfaffian: sum over perfect matchings of the index set,
/// each signed by the parity of its flattened pair sequence.
fn pfaffian_matchings(m: &ExactMatrix) -> RingElement {
    let n = m.nrows();
    assert_eq!(n % 2, 0);
    let ring = m.ring().clone();
    let mut acc = ring.zero();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; n];
    fn go(
        m: &ExactMatrix,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        acc: &mut RingElement,
    ) {
        let n = used.len();
        let Some(i) = (0..n).find(|&i| !used[i]) else {
            // flatten and count inversions
            let flat: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            let mut inversions = 0usize;
            for x in 0..flat.len() {
                for y in (x + 1)..flat.len() {
                    if flat[x] > flat[y] {
                        inversions += 1;
                    }
                }
            }
            let mut term = m.ring().one();
            for &(a, b) in pairs.iter() {
                term = term.mul(m.entry(a, b)).unwrap();
            }
            *acc = if inversions % 2 == 0 {
                acc.add(&term).unwrap()
            } else {
                acc.sub(&term).unwrap()
            };
            return;
        };
        used[i] = true;
        for j in (i + 1)..n {
            if used[j] {
                continue;
            }
            used[j] = true;
            pairs.push((i, j));
            go(m, used, pairs, acc);
            pairs.pop();
            used[j] = false;
        }
        used[i] = false;
    }
    go(m, &mut used, &mut pairs, &mut acc);
    acc
}

fn test_rings() -> Vec<RingHandle> {
    vec![
        RingHandle::integers(),
        RingHandle::modular_u64(4).unwrap(),
        RingHandle::modular_u64(5).unwrap(),
        RingHandle::polynomial(RingHandle::integers(), &["a", "b", "c"], MonomialOrder::GrLex)
            .unwrap(),
    ]
}

#[test]
fn pfaffian_matches_perfect_matching_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for ring in test_rings() {
        for half in 1..=3usize {
            for _ in 0..8 {
                let m = AlternatingMatrix::from_upper(ring.clone(), 2 * half, |_, _| {
                    ring.random_element(&mut rng, 4, 1, 1)
                })
                .unwrap();
                assert_eq!(m.pfaffian(), pfaffian_matchings(m.matrix()));
            }
        }
    }
}

#[test]
fn determinant_matches_laplace_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for ring in test_rings() {
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
fn pfaffian_squared_is_laplace_determinant() {
    // Cross-law through two independent routes: recursive Pfaffian squared
    // against the Laplace determinant, so neither side touches Bird's scheme.
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for ring in test_rings() {
        for half in 1..=3usize {
            for _ in 0..5 {
                let m = AlternatingMatrix::from_upper(ring.clone(), 2 * half, |_, _| {
                    ring.random_element(&mut rng, 3, 1, 1)
                })
                .unwrap();
                let pf = m.pfaffian();
                assert_eq!(pf.mul(&pf).unwrap(), det_laplace(m.matrix()));
            }
        }
    }
}

#[test]
fn suslin_alpha2_against_hand_expansion() {
    // One expansion of the recursion by hand gives [[a1, a2], [-b2, b1]];
    // frozen here as the derived oracle for the base step.
    let ring = RingHandle::polynomial(
        RingHandle::integers(),
        &["a1", "a2", "b1", "b2"],
        MonomialOrder::GrLex,
    )
    .unwrap();
    let v = |n: &str| ring.var(n).unwrap();
    let m = wittkit::vaserstein::suslin_matrix(
        &[v("a1"), v("a2")],
        &[v("b1"), v("b2")],
        5,
    )
    .unwrap();
    let expected = ExactMatrix::from_rows(
        ring.clone(),
        vec![
            vec![v("a1"), v("a2")],
            vec![v("b2").neg(), v("b1")],
        ],
    )
    .unwrap();
    assert_eq!(m, expected);
}
