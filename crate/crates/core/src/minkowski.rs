//! Vector algebra of Lorentz-Minkowski 3-space with signature (+, +, -).
//!
//! The third coordinate is the timelike one: <p, q> = p1 q1 + p2 q2 - p3 q3.
//! The cross product is the Lorentzian one, defined so that
//! <p x q, r> = det(p, q, r) under this signature; on the standard basis
//! e1 x e2 = -e3 (the sign flip relative to the Euclidean product sits in the
//! timelike component).

use crate::scalar::Scalar;
use crate::Jet2;

/// Default tolerance for causal classification and rotation predicates.
pub const CAUSAL_TOL: f64 = 1e-12;

/// Causal class of a vector. The zero vector counts as spacelike.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Vector with components in any chart carrier (`f64` or jets).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LVector<T> {
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

/// Point / vector of Lorentz-Minkowski 3-space.
pub type LVec3 = LVector<f64>;

/// Vector of degree-3 jets: a chart point together with all its partials.
pub type JVec3 = LVector<Jet2>;

impl LVec3 {
    /// All components must be finite.
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        assert!(
            x1.is_finite() && x2.is_finite() && x3.is_finite(),
            "non-finite LVec3 component ({x1}, {x2}, {x3})"
        );
        LVector { x1, x2, x3 }
    }

    pub const ZERO: LVec3 = LVector {
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub fn is_zero(&self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0 && self.x3 == 0.0
    }

    /// Euclidean squared length, used only to scale tolerance bands.
    pub fn euclid_norm_sq(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    /// Lorentzian norm sqrt(|<p, p>|). Zero for lightlike vectors.
    pub fn norm(&self) -> f64 {
        inner(*self, *self).abs().sqrt()
    }

    /// Causal class with the default tolerance band.
    pub fn causal_character(&self) -> CausalCharacter {
        self.causal_character_tol(CAUSAL_TOL)
    }

    /// Causal class with |<p, p>| compared against `tol * (1 + |p|^2_euclid)`.
    pub fn causal_character_tol(&self, tol: f64) -> CausalCharacter {
        if self.is_zero() {
            return CausalCharacter::Spacelike;
        }
        let q = inner(*self, *self);
        let band = tol * (1.0 + self.euclid_norm_sq());
        if q.abs() <= band {
            CausalCharacter::Lightlike
        } else if q > 0.0 {
            CausalCharacter::Spacelike
        } else {
            CausalCharacter::Timelike
        }
    }

    pub fn scale(&self, s: f64) -> LVec3 {
        LVector {
            x1: self.x1 * s,
            x2: self.x2 * s,
            x3: self.x3 * s,
        }
    }

    pub fn sub(&self, rhs: LVec3) -> LVec3 {
        LVector {
            x1: self.x1 - rhs.x1,
            x2: self.x2 - rhs.x2,
            x3: self.x3 - rhs.x3,
        }
    }
}

impl<T: Copy> LVector<T> {
    pub fn component(&self, i: usize) -> T {
        match i {
            0 => self.x1,
            1 => self.x2,
            2 => self.x3,
            _ => panic!("LVector component index {i} out of range"),
        }
    }
}

/// Lorentzian inner product p1 q1 + p2 q2 - p3 q3.
pub fn inner<T: Scalar>(p: LVector<T>, q: LVector<T>) -> T {
    p.x1 * q.x1 + p.x2 * q.x2 - p.x3 * q.x3
}

/// Lorentzian cross product
/// (p2 q3 - q2 p3, q1 p3 - p1 q3, q1 p2 - p1 q2).
pub fn cross<T: Scalar>(p: LVector<T>, q: LVector<T>) -> LVector<T> {
    LVector {
        x1: p.x2 * q.x3 - q.x2 * p.x3,
        x2: q.x1 * p.x3 - p.x1 * q.x3,
        x3: q.x1 * p.x2 - p.x1 * q.x2,
    }
}

/// Dense 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LMat3 {
    pub m: [[f64; 3]; 3],
}

impl LMat3 {
    pub const IDENTITY: LMat3 = LMat3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn apply(&self, p: LVec3) -> LVec3 {
        let m = &self.m;
        LVector {
            x1: m[0][0] * p.x1 + m[0][1] * p.x2 + m[0][2] * p.x3,
            x2: m[1][0] * p.x1 + m[1][1] * p.x2 + m[1][2] * p.x3,
            x3: m[2][0] * p.x1 + m[2][1] * p.x2 + m[2][2] * p.x3,
        }
    }

    pub fn mul(&self, rhs: &LMat3) -> LMat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for (k, row) in rhs.m.iter().enumerate() {
                    out[i][j] += self.m[i][k] * row[j];
                }
            }
        }
        LMat3 { m: out }
    }

    pub fn transpose(&self) -> LMat3 {
        let m = &self.m;
        LMat3 {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// Rotation by angle `v` about the timelike x3-axis.
pub fn rotation_timelike(v: f64) -> LMat3 {
    let (s, c) = v.sin_cos();
    LMat3 {
        m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
    }
}

/// Checks that `m` preserves the signature form, is orientation-preserving,
/// and fixes the timelike axis: max |M^t e M - e| <= tol with
/// e = diag(1, 1, -1), |det M - 1| <= tol, and M e3 = e3 within tol.
pub fn is_lorentz_rotation(m: &LMat3, tol: f64) -> bool {
    const EPS_DIAG: [f64; 3] = [1.0, 1.0, -1.0];
    let mt = m.transpose();
    // M^t (e M) entrywise against e.
    let mut em = *m;
    for (i, row) in em.m.iter_mut().enumerate() {
        for x in row.iter_mut() {
            *x *= EPS_DIAG[i];
        }
    }
    let g = mt.mul(&em);
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { EPS_DIAG[i] } else { 0.0 };
            if (g.m[i][j] - want).abs() > tol {
                return false;
            }
        }
    }
    if (m.det() - 1.0).abs() > tol {
        return false;
    }
    let axis = m.apply(LVec3::new(0.0, 0.0, 1.0));
    axis.x1.abs() <= tol && axis.x2.abs() <= tol && (axis.x3 - 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: LVec3 = LVector {
        x1: 1.0,
        x2: 0.0,
        x3: 0.0,
    };
    const E2: LVec3 = LVector {
        x1: 0.0,
        x2: 1.0,
        x3: 0.0,
    };
    const E3: LVec3 = LVector {
        x1: 0.0,
        x2: 0.0,
        x3: 1.0,
    };

    #[test]
    fn inner_signature() {
        assert_eq!(inner(E1, E1), 1.0);
        assert_eq!(inner(E2, E2), 1.0);
        assert_eq!(inner(E3, E3), -1.0);
        let p = LVec3::new(1.0, 1.0, 2f64.sqrt());
        assert!(inner(p, p).abs() < 1e-15);
    }

    #[test]
    fn cross_basis() {
        assert_eq!(cross(E1, E2), LVec3::new(0.0, 0.0, -1.0));
        assert_eq!(cross(E2, E3), E1);
        let p = LVec3::new(0.3, -1.2, 0.7);
        assert_eq!(cross(p, p), LVec3::ZERO);
    }

    #[test]
    fn norms() {
        assert_eq!(LVec3::new(0.0, 0.0, 2.0).norm(), 2.0);
        assert_eq!(LVec3::new(3.0, 0.0, 5.0).norm(), 4.0);
        let lightlike = LVec3::new(1.0, 1.0, 2f64.sqrt());
        assert!(lightlike.norm() < 1e-7);
    }

    #[test]
    fn causal_classes() {
        assert_eq!(E3.causal_character(), CausalCharacter::Timelike);
        assert_eq!(E1.causal_character(), CausalCharacter::Spacelike);
        assert_eq!(
            LVec3::new(1.0, 1.0, 2f64.sqrt()).causal_character(),
            CausalCharacter::Lightlike
        );
        assert_eq!(LVec3::ZERO.causal_character(), CausalCharacter::Spacelike);
    }

    #[test]
    fn rotation_basics() {
        let id = rotation_timelike(0.0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(id.m[i][j], LMat3::IDENTITY.m[i][j]);
            }
        }
        let q = rotation_timelike(std::f64::consts::FRAC_PI_2).apply(E1);
        assert!(q.sub(E2).euclid_norm_sq().sqrt() < 1e-15);
        // Lightlike directions stay lightlike under the rotation.
        let l = LVec3::new(1.0, 1.0, 2f64.sqrt());
        let rl = rotation_timelike(1.3).apply(l);
        assert!(inner(rl, rl).abs() < 1e-14);
        assert_eq!(rl.causal_character(), CausalCharacter::Lightlike);
    }

    #[test]
    fn rotation_predicate() {
        assert!(is_lorentz_rotation(&rotation_timelike(0.8), 1e-12));
        assert!(is_lorentz_rotation(
            &rotation_timelike(2.0 * std::f64::consts::PI),
            1e-9
        ));
        let double = LMat3 {
            m: [[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 2.0]],
        };
        assert!(!is_lorentz_rotation(&double, 1e-12));
        // A genuine Lorentz boost preserves the form but moves the axis.
        let t = 0.5f64;
        let boost = LMat3 {
            m: [
                [1.0, 0.0, 0.0],
                [0.0, t.cosh(), t.sinh()],
                [0.0, t.sinh(), t.cosh()],
            ],
        };
        assert!(!is_lorentz_rotation(&boost, 1e-12));
    }

    #[test]
    #[should_panic(expected = "non-finite")]
    fn rejects_non_finite() {
        let _ = LVec3::new(f64::NAN, 0.0, 0.0);
    }
}
