//! Truncated bivariate Taylor jets of total degree 3.
//!
//! A [`Jet2`] carries the 10 Taylor coefficients c[a][b], a + b <= 3, of a
//! smooth function of (u, v) at a base point. Coefficients are stored in
//! factorial-scaled form, c[a][b] = (d^{a+b} f / du^a dv^b) / (a! b!), so the
//! truncated product is a plain Cauchy convolution and no binomial weights
//! appear anywhere in the arithmetic. [`Jet2::partial`] rescales on exit.
//!
//! Degree 3 is exactly what one application of the third-form
//! Laplace-Beltrami operator consumes: second derivatives of the chart enter
//! the operator's coefficient fields, and the operator differentiates those
//! once more. [`Jet2::deriv_u`] / [`Jet2::deriv_v`] shift a jet down one
//! order; the returned jet's top-degree slots are zero and it is exact only
//! through total degree 2.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::JetError;
use crate::scalar::Scalar;

/// Guard band for jet division and square roots.
pub const JET_GUARD: f64 = 1e-12;

/// Monomial exponents (a, b) in storage order: graded by total degree.
const TERMS: [(usize, usize); 10] = [
    (0, 0),
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

/// Storage index of exponent pair (a, b); usize::MAX marks a + b > 3.
const IDX: [[usize; 4]; 4] = {
    let mut t = [[usize::MAX; 4]; 4];
    let mut i = 0;
    while i < 10 {
        t[TERMS[i].0][TERMS[i].1] = i;
        i += 1;
    }
    t
};

const FACT: [f64; 4] = [1.0, 1.0, 2.0, 6.0];

/// Degree-3 bivariate Taylor jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    c: [f64; 10],
}

/// Vector of three jets; re-exported as [`crate::JVec3`].
pub use crate::minkowski::JVec3;

impl Jet2 {
    pub const ZERO: Jet2 = Jet2 { c: [0.0; 10] };

    /// Jet of the constant function `x`.
    pub fn constant(x: f64) -> Jet2 {
        assert!(x.is_finite(), "non-finite jet constant {x}");
        let mut c = [0.0; 10];
        c[0] = x;
        Jet2 { c }
    }

    /// Jet of the coordinate function u at base value `u0`.
    pub fn seed_u(u0: f64) -> Jet2 {
        assert!(u0.is_finite(), "non-finite jet seed {u0}");
        let mut c = [0.0; 10];
        c[0] = u0;
        c[IDX[1][0]] = 1.0;
        Jet2 { c }
    }

    /// Jet of the coordinate function v at base value `v0`.
    pub fn seed_v(v0: f64) -> Jet2 {
        assert!(v0.is_finite(), "non-finite jet seed {v0}");
        let mut c = [0.0; 10];
        c[0] = v0;
        c[IDX[0][1]] = 1.0;
        Jet2 { c }
    }

    /// Value slot: the function value at the base point.
    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Raw factorial-scaled coefficient c[a][b].
    #[inline]
    pub fn coeff(&self, a: usize, b: usize) -> f64 {
        assert!(a + b <= 3, "coefficient ({a},{b}) beyond degree 3");
        self.c[IDX[a][b]]
    }

    /// Partial derivative d^{ou+ov} f / du^ou dv^ov at the base point.
    pub fn partial(&self, ord_u: usize, ord_v: usize) -> Result<f64, JetError> {
        if ord_u + ord_v > 3 {
            return Err(JetError::OrderTooHigh {
                ord_u,
                ord_v,
            });
        }
        Ok(self.c[IDX[ord_u][ord_v]] * FACT[ord_u] * FACT[ord_v])
    }

    /// Jet of df/du. Exact through total degree 2; degree-3 slots are zero.
    pub fn deriv_u(self) -> Jet2 {
        let mut c = [0.0; 10];
        for &(a, b) in TERMS.iter() {
            if a + b <= 2 {
                c[IDX[a][b]] = (a as f64 + 1.0) * self.c[IDX[a + 1][b]];
            }
        }
        Jet2 { c }
    }

    /// Jet of df/dv. Exact through total degree 2; degree-3 slots are zero.
    pub fn deriv_v(self) -> Jet2 {
        let mut c = [0.0; 10];
        for &(a, b) in TERMS.iter() {
            if a + b <= 2 {
                c[IDX[a][b]] = (b as f64 + 1.0) * self.c[IDX[a][b + 1]];
            }
        }
        Jet2 { c }
    }

    /// Flips the sign when the value slot is negative. Smooth on either side
    /// of zero, which is all the pipeline needs: |det I| never crosses zero
    /// on an admissible patch.
    pub fn abs_by_value(self) -> Jet2 {
        if self.c[0] < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Division with a guard band on the divisor's value slot.
    pub fn try_div(self, rhs: Jet2) -> Result<Jet2, JetError> {
        let h0 = rhs.c[0];
        if h0.abs() <= JET_GUARD {
            return Err(JetError::DivisionNearZero { value: h0 });
        }
        let mut q = [0.0; 10];
        for (k, &(a, b)) in TERMS.iter().enumerate() {
            let mut acc = self.c[k];
            for (l, &(da, db)) in TERMS.iter().enumerate().skip(1) {
                if da <= a && db <= b {
                    acc -= rhs.c[l] * q[IDX[a - da][b - db]];
                }
            }
            q[k] = acc / h0;
        }
        Ok(Jet2 { c: q })
    }

    /// Square root; the value slot must exceed the guard band.
    pub fn try_sqrt(self) -> Result<Jet2, JetError> {
        let a0 = self.c[0];
        if a0 <= JET_GUARD {
            return Err(JetError::SqrtDomain { value: a0 });
        }
        let s = a0.sqrt();
        Ok(self.compose([
            s,
            0.5 / s,
            -1.0 / (8.0 * a0 * s),
            1.0 / (16.0 * a0 * a0 * s),
        ]))
    }

    pub fn sin(self) -> Jet2 {
        let (s, c) = self.c[0].sin_cos();
        self.compose([s, c, -s / 2.0, -c / 6.0])
    }

    pub fn cos(self) -> Jet2 {
        let (s, c) = self.c[0].sin_cos();
        self.compose([c, -s, -c / 2.0, s / 6.0])
    }

    pub fn asinh(self) -> Jet2 {
        let a0 = self.c[0];
        let t = 1.0 + a0 * a0;
        let r = 1.0 / t.sqrt();
        let r3 = r * r * r;
        self.compose([
            a0.asinh(),
            r,
            -a0 * r3 / 2.0,
            (2.0 * a0 * a0 - 1.0) * r3 * r * r / 6.0,
        ])
    }

    /// Univariate composition: `coef[k]` = g^(k)(value) / k!. Exact at degree
    /// 3 because the perturbation part has no constant term, so its fourth
    /// power is truncated away.
    fn compose(self, coef: [f64; 4]) -> Jet2 {
        let mut w = self;
        w.c[0] = 0.0;
        let w2 = w * w;
        let w3 = w2 * w;
        let mut out = Jet2::constant(coef[0]);
        out = out + w * coef[1] + w2 * coef[2] + w3 * coef[3];
        out
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: Jet2) -> Jet2 {
        for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
            *x += y;
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(mut self, rhs: Jet2) -> Jet2 {
        for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
            *x -= y;
        }
        self
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(mut self) -> Jet2 {
        for x in self.c.iter_mut() {
            *x = -*x;
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let mut out = [0.0; 10];
        for (i, &(a1, b1)) in TERMS.iter().enumerate() {
            for (j, &(a2, b2)) in TERMS.iter().enumerate() {
                let (a, b) = (a1 + a2, b1 + b2);
                if a + b <= 3 {
                    out[IDX[a][b]] += self.c[i] * rhs.c[j];
                }
            }
        }
        Jet2 { c: out }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(mut self, s: f64) -> Jet2 {
        for x in self.c.iter_mut() {
            *x *= s;
        }
        self
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, s: f64) -> Jet2 {
        self.c[0] += s;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, s: f64) -> Jet2 {
        self.c[0] -= s;
        self
    }
}

impl Scalar for Jet2 {
    fn lift(value: f64) -> Self {
        Jet2::constant(value)
    }
    fn sin(self) -> Self {
        Jet2::sin(self)
    }
    fn cos(self) -> Self {
        Jet2::cos(self)
    }
    fn sqrt(self) -> Self {
        self.try_sqrt()
            .expect("chart radicand must stay positive on its domain")
    }
    fn asinh(self) -> Self {
        Jet2::asinh(self)
    }
}
