//! Shared fixtures for the kernel benchmarks.

use wittkit::altform::AlternatingMatrix;
use wittkit::matrix::ExactMatrix;
use wittkit::ring::{MonomialOrder, RingElement, RingHandle};

pub fn s5() -> RingHandle {
    let base = RingHandle::polynomial(
        RingHandle::integers(),
        &["x1", "y1", "x2", "y2", "x3", "y3"],
        MonomialOrder::GrLex,
    )
    .expect("valid presentation");
    let rel = base.parse("x1*y1+x2*y2+x3*y3-1").expect("valid relation");
    RingHandle::quotient(base, &rel).expect("monic relation")
}

pub fn universal_row(ring: &RingHandle) -> (Vec<RingElement>, Vec<RingElement>) {
    let a = ["x1", "x2", "x3"].iter().map(|v| ring.var(v).unwrap()).collect();
    let b = ["y1", "y2", "y3"].iter().map(|v| ring.var(v).unwrap()).collect();
    (a, b)
}

/// Dense integer test matrix with entries in a small deterministic pattern.
pub fn dense_int_matrix(n: usize) -> ExactMatrix {
    let ring = RingHandle::integers();
    ExactMatrix::from_fn(ring.clone(), n, n, |i, j| {
        ring.from_i64(((i * 7 + j * 3) % 11) as i64 - 5)
    })
}

pub fn dense_alternating(n_half: usize) -> AlternatingMatrix {
    let ring = RingHandle::integers();
    AlternatingMatrix::from_upper(ring.clone(), 2 * n_half, |i, j| {
        ring.from_i64(((i * 5 + j) % 7) as i64 - 3)
    })
    .expect("even size")
}
