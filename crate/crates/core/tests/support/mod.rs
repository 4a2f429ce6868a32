//! Shared helpers for the integration suites: Richardson-extrapolated
//! central differences and scaled-error predicates.
//!
//! The finite differences here are deliberately independent of the jet
//! kernel; they are the oracle the jets are graded against.

/// Step per total derivative order, index = order. First derivatives can sit
/// at 1e-4; higher orders divide by h^n and need wider stencils to keep the
/// quotient above f64 roundoff.
pub const FD_STEPS: [f64; 4] = [0.0, 1e-4, 1e-3, 4e-3];

fn stencil(order: usize) -> &'static [(isize, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => panic!("no stencil for order {order}"),
    }
}

/// Central-difference estimate of d^{a+b} f / du^a dv^b with one Richardson
/// extrapolation level. Both axes share the total-order step so the tensor
/// stencil's h^(a+b) denominator stays clear of roundoff.
pub fn fd_partial(f: &dyn Fn(f64, f64) -> f64, u: f64, v: f64, a: usize, b: usize) -> f64 {
    let n = a + b;
    assert!((1..=3).contains(&n), "unsupported total order {n}");
    let h = FD_STEPS[n];
    let estimate = |h: f64| -> f64 {
        let mut acc = 0.0;
        for &(i, ci) in stencil(a) {
            for &(j, cj) in stencil(b) {
                acc += ci * cj * f(u + i as f64 * h, v + j as f64 * h);
            }
        }
        acc / h.powi(n as i32)
    };
    (4.0 * estimate(h / 2.0) - estimate(h)) / 3.0
}

/// One-dimensional wrapper over [`fd_partial`].
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, x: f64, order: usize) -> f64 {
    fd_partial(&|u, _| f(u), x, 0.0, order, 0)
}

/// |got - want| relative to max(1, |want|); the clamp keeps near-zero
/// references from inflating the quotient.
pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// All (a, b) partial-order pairs with 1 <= a + b <= 3.
pub const MIXED_ORDERS: [(usize, usize); 9] = [
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];
