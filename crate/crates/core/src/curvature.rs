//! Jet-driven curvature pipeline.
//!
//! Every quantity here is produced by differentiating the chart through jet
//! arithmetic: first fundamental form, unit normal, second and third forms,
//! mean and Gauss curvature. No printed closed form enters this path, which
//! is what lets the audit module grade such forms against it.
//!
//! Derivative bookkeeping: chart jets are exact to total degree 3, so first
//! derivatives of the chart are exact to degree 2, the normal to degree 2,
//! and the form coefficients to degree 1. One more derivative (taken by the
//! Laplace-Beltrami module) lands on exact value slots.

use crate::error::GeomError;
use crate::jet::Jet2;
use crate::minkowski::{cross, inner, CausalCharacter, JVec3, LVec3, LVector};
use crate::scalar::Scalar;
use crate::surface::ParametricSurface;

/// Guard on |det I|: below this the normal direction is unusable.
pub const METRIC_GUARD: f64 = 1e-12;

/// Guard on |det II|: below this the third form is singular.
pub const PARABOLIC_GUARD: f64 = 1e-12;

/// Normal-orientation convention. Flipping the normal negates H; K is
/// invariant because L, M, N all change sign together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LorentzSign {
    #[default]
    Plus,
    Minus,
}

impl LorentzSign {
    pub fn factor(self) -> f64 {
        match self {
            LorentzSign::Plus => 1.0,
            LorentzSign::Minus => -1.0,
        }
    }
}

/// Coefficients of the first fundamental form and its determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub det: f64,
}

/// Coefficients of the second fundamental form and its determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondForm {
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub det: f64,
}

/// Coefficients of the third fundamental form e_ij = <n_i, n_j>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdForm {
    pub e11: f64,
    pub e12: f64,
    pub e22: f64,
}

/// Everything the pipeline knows about one chart point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointGeometry {
    pub u: f64,
    pub v: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub det_i: f64,
    /// Unit normal (Gauss map value).
    pub normal: LVec3,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub det_ii: f64,
    pub e11: f64,
    pub e12: f64,
    pub e22: f64,
    pub h: f64,
    pub k: f64,
    /// det I times the third-form coefficients; see [`xyz_combos`].
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Causal character of the tangent plane (sign of det I).
    pub character: CausalCharacter,
}

/// The standard (I, II) combinations
/// X = E M^2 - 2 F L M + G L^2,
/// Y = E M N - F L N + G L M - F M^2,
/// Z = G M^2 - 2 F N M + E N^2;
/// each equals det I times the matching third-form coefficient.
pub fn xyz_combos<T: Scalar>(e: T, f: T, g: T, l: T, m: T, n: T) -> (T, T, T) {
    let two = T::lift(2.0);
    let x = e * m * m - two * f * l * m + g * l * l;
    let y = e * m * n - f * l * n + g * l * m - f * m * m;
    let z = g * m * m - two * f * n * m + e * n * n;
    (x, y, z)
}

fn jmap(p: &JVec3, op: impl Fn(Jet2) -> Jet2) -> JVec3 {
    LVector {
        x1: op(p.x1),
        x2: op(p.x2),
        x3: op(p.x3),
    }
}

fn jvalue(p: &JVec3) -> LVec3 {
    LVec3::new(p.x1.value(), p.x2.value(), p.x3.value())
}

/// Jet-valued geometry of one chart point, shared by the public accessors
/// and by the Laplace-Beltrami module.
pub(crate) struct GeometryJets {
    pub r: JVec3,
    pub ru: JVec3,
    pub rv: JVec3,
    pub e: Jet2,
    pub f: Jet2,
    pub g: Jet2,
    pub det_i: Jet2,
    pub sqrt_abs_det_i: Jet2,
    pub normal: JVec3,
    pub l: Jet2,
    pub m: Jet2,
    pub n: Jet2,
    pub det_ii: Jet2,
}

impl GeometryJets {
    pub fn compute(surface: &ParametricSurface, u: f64, v: f64) -> Result<Self, GeomError> {
        let r = surface.jets(u, v)?;
        let ru = jmap(&r, Jet2::deriv_u);
        let rv = jmap(&r, Jet2::deriv_v);
        let e = inner(ru, ru);
        let f = inner(ru, rv);
        let g = inner(rv, rv);
        let det_i = e * g - f * f;
        if det_i.value().abs() <= METRIC_GUARD {
            return Err(GeomError::DegenerateMetric {
                det_i: det_i.value(),
            });
        }
        let sqrt_abs_det_i = det_i.abs_by_value().try_sqrt()?;
        let raw = cross(ru, rv);
        let normal = LVector {
            x1: raw.x1.try_div(sqrt_abs_det_i)?,
            x2: raw.x2.try_div(sqrt_abs_det_i)?,
            x3: raw.x3.try_div(sqrt_abs_det_i)?,
        };
        let ruu = jmap(&ru, Jet2::deriv_u);
        let ruv = jmap(&ru, Jet2::deriv_v);
        let rvv = jmap(&rv, Jet2::deriv_v);
        let l = inner(ruu, normal);
        let m = inner(ruv, normal);
        let n = inner(rvv, normal);
        let det_ii = l * n - m * m;
        Ok(GeometryJets {
            r,
            ru,
            rv,
            e,
            f,
            g,
            det_i,
            sqrt_abs_det_i,
            normal,
            l,
            m,
            n,
            det_ii,
        })
    }

    pub fn third_form(&self) -> ThirdForm {
        let nu = jmap(&self.normal, Jet2::deriv_u);
        let nv = jmap(&self.normal, Jet2::deriv_v);
        ThirdForm {
            e11: inner(nu, nu).value(),
            e12: inner(nu, nv).value(),
            e22: inner(nv, nv).value(),
        }
    }
}

pub fn first_form(surface: &ParametricSurface, u: f64, v: f64) -> Result<FirstForm, GeomError> {
    let r = surface.jets(u, v)?;
    let ru = jmap(&r, Jet2::deriv_u);
    let rv = jmap(&r, Jet2::deriv_v);
    let e = inner(ru, ru).value();
    let f = inner(ru, rv).value();
    let g = inner(rv, rv).value();
    Ok(FirstForm {
        e,
        f,
        g,
        det: e * g - f * f,
    })
}

/// Unit normal n = (R_u x R_v) / sqrt(|det I|).
pub fn gauss_map(surface: &ParametricSurface, u: f64, v: f64) -> Result<LVec3, GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    Ok(jvalue(&gj.normal))
}

pub fn second_form(surface: &ParametricSurface, u: f64, v: f64) -> Result<SecondForm, GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    Ok(SecondForm {
        l: gj.l.value(),
        m: gj.m.value(),
        n: gj.n.value(),
        det: gj.det_ii.value(),
    })
}

/// Second form through the Weingarten route b_ij = -<R_i, n_j>. Used as a
/// cross-check on [`second_form`]; the <R_ij, n> route is authoritative.
pub fn second_form_weingarten(
    surface: &ParametricSurface,
    u: f64,
    v: f64,
) -> Result<SecondForm, GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    let nu = jmap(&gj.normal, Jet2::deriv_u);
    let nv = jmap(&gj.normal, Jet2::deriv_v);
    let l = -inner(gj.ru, nu).value();
    let m = -inner(gj.ru, nv).value();
    let n = -inner(gj.rv, nv).value();
    Ok(SecondForm {
        l,
        m,
        n,
        det: l * n - m * m,
    })
}

pub fn third_form(surface: &ParametricSurface, u: f64, v: f64) -> Result<ThirdForm, GeomError> {
    Ok(GeometryJets::compute(surface, u, v)?.third_form())
}

/// Mean and Gauss curvature
/// H = (E N - 2 F M + G L) / (2 det I), K = det II / det I.
pub fn invariants(surface: &ParametricSurface, u: f64, v: f64) -> Result<(f64, f64), GeomError> {
    invariants_signed(surface, u, v, LorentzSign::Plus)
}

/// Same as [`invariants`] with an explicit sign convention multiplier.
pub fn invariants_signed(
    surface: &ParametricSurface,
    u: f64,
    v: f64,
    sign: LorentzSign,
) -> Result<(f64, f64), GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    let (h, k) = invariants_from_jets(&gj);
    Ok((sign.factor() * h, k))
}

fn invariants_from_jets(gj: &GeometryJets) -> (f64, f64) {
    let (e, f, g) = (gj.e.value(), gj.f.value(), gj.g.value());
    let (l, m, n) = (gj.l.value(), gj.m.value(), gj.n.value());
    let det_i = gj.det_i.value();
    let h = (e * n - 2.0 * f * m + g * l) / (2.0 * det_i);
    let k = gj.det_ii.value() / det_i;
    (h, k)
}

/// Full geometric state of one chart point.
pub fn point_geometry(
    surface: &ParametricSurface,
    u: f64,
    v: f64,
) -> Result<PointGeometry, GeomError> {
    let gj = GeometryJets::compute(surface, u, v)?;
    let third = gj.third_form();
    let (h, k) = invariants_from_jets(&gj);
    let (e, f, g) = (gj.e.value(), gj.f.value(), gj.g.value());
    let (l, m, n) = (gj.l.value(), gj.m.value(), gj.n.value());
    let (x, y, z) = xyz_combos(e, f, g, l, m, n);
    let det_i = gj.det_i.value();
    let character = if det_i < 0.0 {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Spacelike
    };
    Ok(PointGeometry {
        u,
        v,
        e,
        f,
        g,
        det_i,
        normal: jvalue(&gj.normal),
        l,
        m,
        n,
        det_ii: gj.det_ii.value(),
        e11: third.e11,
        e12: third.e12,
        e22: third.e22,
        h,
        k,
        x,
        y,
        z,
        character,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::ParametricSurface;

    fn close(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs()),
            "{a} vs {b} (tol {tol})"
        );
    }

    fn tl() -> ParametricSurface {
        ParametricSurface::tl_surface()
    }

    #[test]
    fn first_form_at_pinned_point() {
        let ff = first_form(&tl(), 1.0, 0.0).unwrap();
        close(ff.e, 0.0, 1e-13);
        close(ff.f, -1.0, 1e-13);
        close(ff.g, 2.0, 1e-13);
        close(ff.det, -1.0, 1e-13);
    }

    #[test]
    fn first_form_closed_forms_on_grid() {
        let s = tl();
        for i in 0..20 {
            let u = 0.2 + 2.8 * (i as f64) / 19.0;
            for sgn in [1.0, -1.0] {
                let u = sgn * u;
                for j in 0..12 {
                    let v = 0.5236 * j as f64;
                    let ff = first_form(&s, u, v).unwrap();
                    let scale = 1.0 + u.powi(4);
                    assert!(ff.e.abs() <= 1e-10 * scale, "E={:e} at ({u},{v})", ff.e);
                    close(ff.f, -u * u, 1e-10);
                    close(ff.g, u.powi(4) + u * u, 1e-10);
                    close(ff.det, -u.powi(4), 1e-10);
                    assert!(ff.det < 0.0);
                }
            }
        }
    }

    #[test]
    fn gauss_map_at_pinned_point() {
        let n = gauss_map(&tl(), 1.0, 0.0).unwrap();
        let s5 = 5f64.sqrt();
        close(n.x1, -s5, 1e-12);
        close(n.x2, -s5, 1e-12);
        close(n.x3, -3.0, 1e-12);
    }

    #[test]
    fn gauss_map_unit_and_tangent() {
        let s = tl();
        for (u, v) in [(1.4, 2.1), (0.5, 0.0), (-2.0, 4.0), (2.9, 1.0)] {
            let n = gauss_map(&s, u, v).unwrap();
            close(crate::minkowski::inner(n, n), 1.0, 1e-11);
            let r = s.jets(u, v).unwrap();
            let ru = LVec3::new(
                r.x1.partial(1, 0).unwrap(),
                r.x2.partial(1, 0).unwrap(),
                r.x3.partial(1, 0).unwrap(),
            );
            let rv = LVec3::new(
                r.x1.partial(0, 1).unwrap(),
                r.x2.partial(0, 1).unwrap(),
                r.x3.partial(0, 1).unwrap(),
            );
            let scale = 1.0 + ru.euclid_norm_sq().max(rv.euclid_norm_sq());
            assert!(crate::minkowski::inner(n, ru).abs() <= 1e-11 * scale);
            assert!(crate::minkowski::inner(n, rv).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn second_form_at_pinned_point() {
        let sf = second_form(&tl(), 1.0, 0.0).unwrap();
        let s5 = 5f64.sqrt();
        close(sf.l, 2.0 / s5, 1e-12);
        close(sf.m, -s5, 1e-12);
        close(sf.n, 2.0 * s5, 1e-12);
        close(sf.det, -1.0, 1e-12);
    }

    #[test]
    fn second_form_closed_forms() {
        // L = 2/eta', M = -eta', N = (u^2+1) eta', det II = 1 - 2u^2.
        let s = tl();
        for u in [0.4, 0.9, 1.7, 2.6, -1.2, -2.9] {
            let ep = (4.0 * u * u + 1f64).sqrt();
            for v in [0.0, 1.1, 3.9] {
                let sf = second_form(&s, u, v).unwrap();
                close(sf.l, 2.0 / ep, 1e-10);
                close(sf.m, -ep, 1e-10);
                close(sf.n, (u * u + 1.0) * ep, 1e-10);
                close(sf.det, 1.0 - 2.0 * u * u, 1e-10);
            }
        }
    }

    #[test]
    fn weingarten_route_agrees() {
        let s = tl();
        for (u, v) in [(0.7, 0.2), (1.0, 0.0), (2.2, 4.4), (-1.5, 1.0)] {
            let a = second_form(&s, u, v).unwrap();
            let b = second_form_weingarten(&s, u, v).unwrap();
            close(a.l, b.l, 1e-10);
            close(a.m, b.m, 1e-10);
            close(a.n, b.n, 1e-10);
            close(a.det, b.det, 1e-10);
        }
    }

    #[test]
    fn third_form_at_pinned_point() {
        let tf = third_form(&tl(), 1.0, 0.0).unwrap();
        close(tf.e11, 2.4, 1e-11);
        // e12 = 2 H M - K F, e22 = 2 H N - K G at this point.
        close(tf.e12, -5.0, 1e-11);
        close(tf.e22, 10.0, 1e-11);
    }

    #[test]
    fn invariants_at_pinned_point() {
        let (h, k) = invariants(&tl(), 1.0, 0.0).unwrap();
        close(h, 3.0 / 5f64.sqrt(), 1e-12);
        close(k, 1.0, 1e-12);
        let (hm, km) = invariants_signed(&tl(), 1.0, 0.0, LorentzSign::Minus).unwrap();
        close(hm, -3.0 / 5f64.sqrt(), 1e-12);
        close(km, 1.0, 1e-12);
    }

    #[test]
    fn invariants_closed_forms() {
        // H = 3 / eta'(u), K = (2u^2 - 1) / u^4.
        let s = tl();
        for u in [0.3, 0.5, 1.0, 2.0, 2.9, -0.8, -2.1] {
            let (h, k) = invariants(&s, u, 1.23).unwrap();
            let ep = (4.0 * u * u + 1f64).sqrt();
            close(h, 3.0 / ep, 1e-10);
            close(k, (2.0 * u * u - 1.0) / u.powi(4), 1e-10);
        }
    }

    #[test]
    fn scalars_are_rotation_invariant() {
        let s = tl();
        for u in [0.5, 1.0, 2.0] {
            let base = point_geometry(&s, u, 0.0).unwrap();
            for j in 1..24 {
                let v = 2.0 * std::f64::consts::PI * (j as f64) / 24.0;
                let pg = point_geometry(&s, u, v).unwrap();
                for (a, b) in [
                    (pg.e, base.e),
                    (pg.f, base.f),
                    (pg.g, base.g),
                    (pg.det_i, base.det_i),
                    (pg.l, base.l),
                    (pg.m, base.m),
                    (pg.n, base.n),
                    (pg.det_ii, base.det_ii),
                    (pg.h, base.h),
                    (pg.k, base.k),
                    (pg.e11, base.e11),
                    (pg.e12, base.e12),
                    (pg.e22, base.e22),
                ] {
                    close(a, b, 1e-8);
                }
            }
        }
    }

    #[test]
    fn cayley_hamilton_bridge() {
        // III = 2 H II - K I, equivalently (X, Y, Z) = det I * (e11, e12, e22).
        let s = tl();
        for i in 0..21 {
            let u = 0.25 + 2.7 * (i as f64) / 20.0;
            for sgn in [1.0, -1.0] {
                let u = sgn * u;
                for j in 0..21 {
                    let v = 2.0 * std::f64::consts::PI * (j as f64) / 21.0;
                    let pg = point_geometry(&s, u, v).unwrap();
                    let scale = 1.0
                        + pg.x.abs().max(pg.y.abs()).max(pg.z.abs())
                        + pg.det_i.abs() * (1.0 + pg.e11.abs().max(pg.e22.abs()));
                    assert!((pg.x - pg.det_i * pg.e11).abs() <= 1e-8 * scale);
                    assert!((pg.y - pg.det_i * pg.e12).abs() <= 1e-8 * scale);
                    assert!((pg.z - pg.det_i * pg.e22).abs() <= 1e-8 * scale);
                    // Componentwise Cayley-Hamilton residuals.
                    let ch = [
                        pg.e11 - (2.0 * pg.h * pg.l - pg.k * pg.e),
                        pg.e12 - (2.0 * pg.h * pg.m - pg.k * pg.f),
                        pg.e22 - (2.0 * pg.h * pg.n - pg.k * pg.g),
                    ];
                    let ch_scale = 1.0
                        + pg.e11.abs().max(pg.e12.abs()).max(pg.e22.abs())
                        + pg.h.abs() * (pg.l.abs() + pg.m.abs() + pg.n.abs());
                    for r in ch {
                        assert!(r.abs() <= 1e-8 * ch_scale, "CH residual {r:e} at ({u},{v})");
                    }
                }
            }
        }
    }

    #[test]
    fn xyz_at_pinned_point() {
        let pg = point_geometry(&tl(), 1.0, 0.0).unwrap();
        close(pg.x, -2.4, 1e-11);
        close(pg.y, 5.0, 1e-11);
        close(pg.z, -10.0, 1e-11);
        let (x0, y0, z0) = xyz_combos(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!((x0, y0, z0), (0.0, 0.0, 0.0));
    }

    #[test]
    fn timelike_character() {
        let pg = point_geometry(&tl(), 1.3, 2.0).unwrap();
        assert_eq!(pg.character, CausalCharacter::Timelike);
        assert!(pg.det_i < 0.0);
    }

    #[test]
    fn degenerate_band_propagates() {
        assert!(matches!(
            point_geometry(&tl(), 1e-5, 0.0),
            Err(GeomError::DomainExcluded { .. })
        ));
    }
}
