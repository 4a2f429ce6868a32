//! Laplace-Beltrami operators on a chart: the third-fundamental-form
//! operator (the engine's main subject) and the first-form operator kept as
//! a cross-check.
//!
//! The third-form operator evaluated on a scalar field phi is
//!
//! ```text
//! lb3 phi = -(sqrt|det I| / det II) * (d/du P - d/dv Q)
//! P = (Z phi_u - Y phi_v) / (sqrt|det I| det II)
//! Q = (Y phi_u - X phi_v) / (sqrt|det I| det II)
//! ```
//!
//! with X, Y, Z the det-I-scaled third-form coefficients from
//! [`crate::curvature::xyz_combos`]. Everything inside the outer derivatives
//! is jet-valued, so those derivatives are exact; the finite-difference
//! version of the outer step exists only in test oracles.

use std::sync::Arc;

use crate::curvature::{xyz_combos, GeometryJets, PARABOLIC_GUARD};
use crate::error::GeomError;
use crate::jet::Jet2;
use crate::minkowski::LVec3;
use crate::surface::ParametricSurface;

type FieldScalarFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type FieldJetFn = dyn Fn(Jet2, Jet2) -> Jet2 + Send + Sync;

/// Scalar function on the chart domain, evaluable at points and at jets.
#[derive(Clone)]
pub struct ScalarField {
    scalar: Arc<FieldScalarFn>,
    jet: Arc<FieldJetFn>,
}

impl ScalarField {
    pub fn new(
        scalar: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        jet: impl Fn(Jet2, Jet2) -> Jet2 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            scalar: Arc::new(scalar),
            jet: Arc::new(jet),
        }
    }

    pub fn constant(c: f64) -> Self {
        ScalarField::new(move |_, _| c, move |_, _| Jet2::constant(c))
    }

    /// Component `i` (0-based) of a surface chart, as a field on (u, v).
    /// Band checks are left to the operator evaluation.
    pub fn chart_component(surface: &ParametricSurface, i: usize) -> Self {
        assert!(i < 3, "chart component index {i} out of range");
        let s1 = surface.clone();
        let s2 = surface.clone();
        ScalarField::new(
            move |u, v| s1.eval_raw(u, v).component(i),
            move |u, v| s2.jets_at(u, v).component(i),
        )
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        (self.scalar)(u, v)
    }

    pub fn eval_jet(&self, u: Jet2, v: Jet2) -> Jet2 {
        (self.jet)(u, v)
    }
}

/// Operator value with the intermediate quantities that determine it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeltramiResult {
    pub value: f64,
    pub det_i: f64,
    pub det_ii: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// P and Q quotient values at the point.
    pub p: f64,
    pub q: f64,
}

struct Lb3Context {
    r: crate::minkowski::JVec3,
    x: Jet2,
    y: Jet2,
    z: Jet2,
    denom: Jet2,
    det_i: f64,
    det_ii: f64,
    outer: f64,
}

fn lb3_context(surface: &ParametricSurface, u: f64, v: f64) -> Result<Lb3Context, GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    let det_ii = gj.det_ii.value();
    if det_ii.abs() <= PARABOLIC_GUARD {
        return Err(GeomError::ParabolicPoint { det_ii });
    }
    let (x, y, z) = xyz_combos(gj.e, gj.f, gj.g, gj.l, gj.m, gj.n);
    let denom = gj.sqrt_abs_det_i * gj.det_ii;
    let outer = -gj.sqrt_abs_det_i.value() / det_ii;
    Ok(Lb3Context {
        r: gj.r,
        x,
        y,
        z,
        denom,
        det_i: gj.det_i.value(),
        det_ii,
        outer,
    })
}

impl Lb3Context {
    fn apply(&self, phi: Jet2) -> Result<BeltramiResult, GeomError> {
        let pu = phi.deriv_u();
        let pv = phi.deriv_v();
        let p = (self.z * pu - self.y * pv).try_div(self.denom)?;
        let q = (self.y * pu - self.x * pv).try_div(self.denom)?;
        let du_p = p.partial(1, 0)?;
        let dv_q = q.partial(0, 1)?;
        Ok(BeltramiResult {
            value: self.outer * (du_p - dv_q),
            det_i: self.det_i,
            det_ii: self.det_ii,
            x: self.x.value(),
            y: self.y.value(),
            z: self.z.value(),
            p: p.value(),
            q: q.value(),
        })
    }
}

/// Third-form Laplace-Beltrami of a scalar field.
pub fn lb3_scalar(
    surface: &ParametricSurface,
    field: &ScalarField,
    u: f64,
    v: f64,
) -> Result<BeltramiResult, GeomError> {
    let ctx = lb3_context(surface, u, v)?;
    let phi = field.eval_jet(Jet2::seed_u(u), Jet2::seed_v(v));
    ctx.apply(phi)
}

/// Third-form Laplace-Beltrami applied to the position vector, component by
/// component.
pub fn lb3_position(surface: &ParametricSurface, u: f64, v: f64) -> Result<LVec3, GeomError> {
    let ctx = lb3_context(surface, u, v)?;
    let r1 = ctx.apply(ctx.r.x1)?;
    let r2 = ctx.apply(ctx.r.x2)?;
    let r3 = ctx.apply(ctx.r.x3)?;
    Ok(LVec3::new(r1.value, r2.value, r3.value))
}

/// P and Q quotients of the third-form operator for a scalar field, as plain
/// point values. This is the quantity test oracles re-differentiate by
/// finite differences.
pub fn lb3_quotients(
    surface: &ParametricSurface,
    field: &ScalarField,
    u: f64,
    v: f64,
) -> Result<(f64, f64), GeomError> {
    let r = lb3_scalar(surface, field, u, v)?;
    Ok((r.p, r.q))
}

/// First-form Laplace-Beltrami of the position vector:
/// lb1 phi = (1 / sqrt|det I|) *
///           (d/du [(G phi_u - F phi_v) / sqrt|det I|]
///          + d/dv [(E phi_v - F phi_u) / sqrt|det I|]).
///
/// On these charts the result is colinear with the Gauss map with magnitude
/// 2|H|; the overall sign is a convention of the Lorentzian divergence.
pub fn lb1_position(surface: &ParametricSurface, u: f64, v: f64) -> Result<LVec3, GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    let sqrt_det = gj.sqrt_abs_det_i;
    let mut out = [0.0; 3];
    for (i, phi) in [gj.r.x1, gj.r.x2, gj.r.x3].into_iter().enumerate() {
        let pu = phi.deriv_u();
        let pv = phi.deriv_v();
        let a = (gj.g * pu - gj.f * pv).try_div(sqrt_det)?;
        let b = (gj.e * pv - gj.f * pu).try_div(sqrt_det)?;
        out[i] = (a.partial(1, 0)? + b.partial(0, 1)?) / sqrt_det.value();
    }
    Ok(LVec3::new(out[0], out[1], out[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{gauss_map, invariants};
    use crate::minkowski::{inner, rotation_timelike};

    fn tl() -> ParametricSurface {
        ParametricSurface::tl_surface()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs()),
            "{a} vs {b} (tol {tol})"
        );
    }

    #[test]
    fn kills_constants() {
        let s = tl();
        let r = lb3_scalar(&s, &ScalarField::constant(4.2), 1.3, 0.9).unwrap();
        assert_eq!(r.value, 0.0);
        assert!((r.p, r.q) == (0.0, 0.0));
    }

    #[test]
    fn linear_in_the_field() {
        let s = tl();
        let f1 = ScalarField::chart_component(&s, 0);
        let f2 = ScalarField::chart_component(&s, 1);
        let s1 = s.clone();
        let s2 = s.clone();
        let combo = ScalarField::new(
            move |u, v| {
                let r = s1.eval_raw(u, v);
                2.0 * r.x1 - 3.0 * r.x2 + 7.0
            },
            move |u, v| {
                let r = s2.jets_at(u, v);
                r.x1 * 2.0 - r.x2 * 3.0 + 7.0
            },
        );
        for (u, v) in [(1.0, 0.0), (0.9, 2.2), (-1.8, 4.0), (2.4, 1.1)] {
            let a = lb3_scalar(&s, &combo, u, v).unwrap().value;
            let b1 = lb3_scalar(&s, &f1, u, v).unwrap().value;
            let b2 = lb3_scalar(&s, &f2, u, v).unwrap().value;
            let want = 2.0 * b1 - 3.0 * b2;
            close(a, want, 1e-9);
        }
    }

    #[test]
    fn periodic_in_v() {
        let s = tl();
        let tau = 2.0 * std::f64::consts::PI;
        for (u, v) in [(0.9, 0.4), (1.6, 3.0), (-2.2, 1.7)] {
            let a = lb3_position(&s, u, v).unwrap();
            let b = lb3_position(&s, u, v + tau).unwrap();
            let scale = 1.0 + a.euclid_norm_sq().sqrt();
            assert!(a.sub(b).euclid_norm_sq().sqrt() <= 1e-9 * scale);
        }
    }

    #[test]
    fn equivariant_under_rotation() {
        let s = tl();
        for (u, v, c) in [(1.0, 0.0, 0.9), (1.5, 1.2, 2.5), (-0.8, 0.5, 4.0)] {
            let moved = lb3_position(&s, u, v + c).unwrap();
            let base = lb3_position(&s, u, v).unwrap();
            let want = rotation_timelike(c).apply(base);
            let scale = 1.0 + want.euclid_norm_sq().sqrt();
            assert!(
                moved.sub(want).euclid_norm_sq().sqrt() <= 1e-8 * scale,
                "equivariance gap at ({u},{v},{c})"
            );
        }
    }

    #[test]
    fn parabolic_points_are_rejected() {
        let s = tl();
        // det II = 1 - 2u^2 vanishes at u = 1/sqrt(2).
        let err = lb3_position(&s, std::f64::consts::FRAC_1_SQRT_2, 0.3);
        assert!(matches!(err, Err(GeomError::ParabolicPoint { .. })));
    }

    #[test]
    fn lb1_is_mean_curvature_times_normal() {
        let s = tl();
        for (u, v) in [(1.0, 0.0), (0.6, 2.0), (1.9, 4.2), (-1.3, 0.8)] {
            let lb1 = lb1_position(&s, u, v).unwrap();
            let n = gauss_map(&s, u, v).unwrap();
            let (h, _) = invariants(&s, u, v).unwrap();
            // <n, n> = 1 on this family, so the coefficient is <lb1, n>.
            let c = inner(lb1, n);
            let resid = lb1.sub(n.scale(c));
            let scale = 1.0 + lb1.euclid_norm_sq().sqrt();
            assert!(
                resid.euclid_norm_sq().sqrt() <= 1e-7 * scale,
                "lb1 not colinear with the normal at ({u},{v})"
            );
            close(c.abs(), 2.0 * h.abs(), 1e-7);
        }
        let lb1 = lb1_position(&s, 1.0, 0.0).unwrap();
        close(lb1.norm(), 2.6832815729997477, 1e-9);
    }
}
