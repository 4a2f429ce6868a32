//! Profile curves and rotational surface charts.
//!
//! The engine's base chart rotates a lightlike profile about the timelike
//! axis. The profile's tangent is lightlike for every u, while the swept
//! surface itself is timelike away from u = 0 (det I = -u^4), so the chart
//! carries an excluded band around u = 0 where the metric degenerates.

use std::sync::Arc;

use crate::error::GeomError;
use crate::jet::Jet2;
use crate::minkowski::{CausalCharacter, JVec3, LVec3, LVector};
use crate::scalar::Scalar;

/// Default half-width of the excluded band around u = 0.
pub const DEFAULT_U_EXCLUDE: f64 = 1e-3;

/// Height function of the lightlike profile:
/// eta(u) = u sqrt(4u^2 + 1) / 2 + asinh(2u) / 4.
///
/// Its derivative is sqrt(4u^2 + 1), which is exactly what makes the profile
/// tangent (2u, 1, eta'(u)) lightlike.
pub fn eta<T: Scalar>(u: T) -> T {
    let root = (u * u * T::lift(4.0) + T::lift(1.0)).sqrt();
    u * root * T::lift(0.5) + (u * T::lift(2.0)).asinh() * T::lift(0.25)
}

fn gamma_lightlike<T: Scalar>(u: T) -> [T; 3] {
    [u * u, u, eta(u)]
}

/// Applies the timelike-axis rotation by angle v to a profile value.
fn rotate_profile<T: Scalar>(g: [T; 3], v: T) -> LVector<T> {
    let s = v.sin();
    let c = v.cos();
    LVector {
        x1: g[0] * c - g[1] * s,
        x2: g[0] * s + g[1] * c,
        x3: g[2],
    }
}

fn tl_chart<T: Scalar>(u: T, v: T) -> LVector<T> {
    let s = v.sin();
    let c = v.cos();
    LVector {
        x1: u * u * c - u * s,
        x2: u * u * s + u * c,
        x3: eta(u),
    }
}

type ProfileScalarFn = dyn Fn(f64) -> [f64; 3] + Send + Sync;
type ProfileJetFn = dyn Fn(Jet2) -> [Jet2; 3] + Send + Sync;

/// Space curve (zeta(u), mu(u), eta(u)) evaluable at plain points and at
/// jets, plus the causal character its construction promises.
#[derive(Clone)]
pub struct ProfileCurve {
    scalar: Arc<ProfileScalarFn>,
    jet: Arc<ProfileJetFn>,
    intended_character: CausalCharacter,
}

impl ProfileCurve {
    pub fn new(
        scalar: impl Fn(f64) -> [f64; 3] + Send + Sync + 'static,
        jet: impl Fn(Jet2) -> [Jet2; 3] + Send + Sync + 'static,
        intended_character: CausalCharacter,
    ) -> Self {
        ProfileCurve {
            scalar: Arc::new(scalar),
            jet: Arc::new(jet),
            intended_character,
        }
    }

    /// The engine's lightlike profile gamma(u) = (u^2, u, eta(u)).
    pub fn lightlike() -> Self {
        ProfileCurve::new(
            gamma_lightlike::<f64>,
            gamma_lightlike::<Jet2>,
            CausalCharacter::Lightlike,
        )
    }

    pub fn eval(&self, u: f64) -> LVec3 {
        let [x1, x2, x3] = (self.scalar)(u);
        LVec3::new(x1, x2, x3)
    }

    pub fn eval_jet(&self, u: Jet2) -> JVec3 {
        let [x1, x2, x3] = (self.jet)(u);
        LVector { x1, x2, x3 }
    }

    pub fn intended_character(&self) -> CausalCharacter {
        self.intended_character
    }
}

type ChartScalarFn = dyn Fn(f64, f64) -> LVec3 + Send + Sync;
type ChartJetFn = dyn Fn(Jet2, Jet2) -> JVec3 + Send + Sync;

/// Surface chart R(u, v), evaluable at plain points and at jets, with an
/// excluded band |u| < u_exclude where evaluation refuses to run.
#[derive(Clone)]
pub struct ParametricSurface {
    scalar: Arc<ChartScalarFn>,
    jet: Arc<ChartJetFn>,
    u_exclude: f64,
}

impl ParametricSurface {
    pub fn new(
        scalar: impl Fn(f64, f64) -> LVec3 + Send + Sync + 'static,
        jet: impl Fn(Jet2, Jet2) -> JVec3 + Send + Sync + 'static,
    ) -> Self {
        ParametricSurface {
            scalar: Arc::new(scalar),
            jet: Arc::new(jet),
            u_exclude: DEFAULT_U_EXCLUDE,
        }
    }

    /// Chart (u, v) -> T(v) gamma(u) for any profile.
    pub fn make_rotational(profile: ProfileCurve) -> Self {
        let p = profile.clone();
        ParametricSurface::new(
            move |u, v| {
                let g = (profile.scalar)(u);
                let r = rotate_profile(g, v);
                LVec3::new(r.x1, r.x2, r.x3)
            },
            move |u, v| rotate_profile((p.jet)(u), v),
        )
    }

    /// The concrete chart
    /// (u^2 cos v - u sin v, u^2 sin v + u cos v, eta(u)),
    /// written out directly rather than routed through
    /// [`ParametricSurface::make_rotational`]; tests pin the two to agree.
    pub fn tl_surface() -> Self {
        ParametricSurface::new(
            |u, v| {
                let r = tl_chart(u, v);
                LVec3::new(r.x1, r.x2, r.x3)
            },
            tl_chart::<Jet2>,
        )
    }

    pub fn with_u_exclude(mut self, band: f64) -> Self {
        assert!(band >= 0.0 && band.is_finite());
        self.u_exclude = band;
        self
    }

    pub fn u_exclude(&self) -> f64 {
        self.u_exclude
    }

    pub fn admissible(&self, u: f64) -> bool {
        u.abs() >= self.u_exclude
    }

    fn check_band(&self, u: f64) -> Result<(), GeomError> {
        if self.admissible(u) {
            Ok(())
        } else {
            Err(GeomError::DomainExcluded {
                u,
                band: self.u_exclude,
            })
        }
    }

    /// Chart point.
    pub fn eval(&self, u: f64, v: f64) -> Result<LVec3, GeomError> {
        self.check_band(u)?;
        Ok((self.scalar)(u, v))
    }

    /// Chart point with all partials to total degree 3.
    pub fn jets(&self, u: f64, v: f64) -> Result<JVec3, GeomError> {
        self.check_band(u)?;
        Ok((self.jet)(Jet2::seed_u(u), Jet2::seed_v(v)))
    }

    /// Chart point without the band check; for composing derived fields
    /// whose band handling happens at the operator level.
    pub(crate) fn eval_raw(&self, u: f64, v: f64) -> LVec3 {
        (self.scalar)(u, v)
    }

    /// Chart jets at caller-supplied jet arguments; lets derived fields
    /// compose with the chart without reseeding.
    pub(crate) fn jets_at(&self, u: Jet2, v: Jet2) -> JVec3 {
        (self.jet)(u, v)
    }
}
