//! Literal evaluators for the audited closed forms.
//!
//! Each function is a faithful transcription of one registry entry's anchor
//! expression. Shared subexpressions are deliberately not factored out across
//! formulas: the consistency checks in the parent module compare these
//! transcriptions against each other, which only means something while each
//! transcription stands alone. eta'^2 is written as 4u^2 + 1 throughout, which
//! is the defining identity of eta, not a reading choice.

use crate::error::GeomError;

/// Denominators at or below this absolute magnitude are treated as singular.
pub(super) const DENOM_GUARD: f64 = 1e-12;

fn eta_prime(u: f64) -> f64 {
    (4.0 * u * u + 1.0).sqrt()
}

fn check_denom(d: f64, what: &'static str) -> Result<f64, GeomError> {
    if d.abs() <= DENOM_GUARD {
        Err(GeomError::SingularDenominator(what))
    } else {
        Ok(d)
    }
}

pub(super) fn eq2_surface(u: f64, v: f64) -> [f64; 3] {
    let (sv, cv) = v.sin_cos();
    [
        u * u * cv - u * sv,
        u * u * sv + u * cv,
        0.5 * u * (4.0 * u * u + 1.0).sqrt() + 0.25 * (2.0 * u).asinh(),
    ]
}

/// The 1/sqrt|det I| prefactor uses det I = -u^4 as transcribed.
pub(super) fn eq3_gauss(u: f64, v: f64) -> Result<[f64; 3], GeomError> {
    let root_det = check_denom(u * u, "sqrt|det I| = u^2")?;
    let ep = eta_prime(u);
    let (sv, cv) = v.sin_cos();
    Ok([
        -u * (sv + u * cv) * ep / root_det,
        -u * (cv + u * sv) * ep / root_det,
        (-2.0 * u * u * u + u) / root_det,
    ])
}

pub(super) fn proof_efg(u: f64, _v: f64) -> [f64; 3] {
    let u2 = u * u;
    [0.0, -u2, u2 * u2 + u2]
}

pub(super) fn proof_l(u: f64, v: f64) -> Result<f64, GeomError> {
    let root_det = check_denom(u * u, "sqrt|det I| = u^2")?;
    let s2 = (2.0 * v).sin();
    Ok((-2.0 * u * s2 - 2.0 * u * u) / root_det * eta_prime(u))
}

pub(super) fn proof_m(u: f64, v: f64) -> Result<f64, GeomError> {
    let root_det = check_denom(u * u, "sqrt|det I| = u^2")?;
    let (s2, c2) = (2.0 * v).sin_cos();
    let u2 = u * u;
    Ok((u * s2 - 2.0 * u2 * c2 + u2) / root_det * eta_prime(u))
}

pub(super) fn proof_n(u: f64, v: f64) -> Result<f64, GeomError> {
    let root_det = check_denom(u * u, "sqrt|det I| = u^2")?;
    let (s2, c2) = (2.0 * v).sin_cos();
    let u2 = u * u;
    Ok((u * s2 + u2 * c2 + u2 * u2) / root_det * eta_prime(u))
}

pub(super) fn proof_x(u: f64, v: f64) -> f64 {
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    2.0 * u * ep2 * (4.0 * u2 * s2 + 4.0 * u * c2 + 2.0 * s4 - u * c4 + 2.0 * u3 + u)
}

/// One operator between the cos(2v) and sin(4v) terms is absent in the
/// transcription; '+' is the adopted reading (see the registry notes).
pub(super) fn proof_y(u: f64, v: f64) -> f64 {
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    0.5 * ep2
        * (-(12.0 * u3 + 8.0 * u) * s2
            + (8.0 * u4 - 4.0 * u2) * c2
            + (4.0 * u3 - 2.0 * u) * s4
            + (6.0 * u2 + 3.0) * c4
            - 8.0 * u4
            - 3.0)
}

pub(super) fn proof_z(u: f64, v: f64) -> f64 {
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    -0.5 * ep2
        * (-(8.0 * u3 + 8.0 * u) * s2
            + (16.0 * u4 + 4.0 * u2) * c2
            + (4.0 * u3 + 6.0 * u) * s4
            + (-4.0 * u4 + u2 + 3.0) * c4
            - 10.0 * u4
            - 3.0 * u2
            - 3.0)
}

pub(super) fn proof_det_ii(u: f64, v: f64) -> Result<f64, GeomError> {
    let u2 = check_denom(u * u, "u^2")?;
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let u3 = u2 * u;
    let u4 = u2 * u2;
    Ok(ep2 / u2
        * ((-2.0 * u3 - 4.0 * u) * s2 + 2.0 * u2 * c2 + u * s4 + (-2.0 * u2 + 1.5) * c4
            - 2.0 * u4
            - 3.0 * u2
            - 1.5))
}

pub(super) fn thm_delta3_r1(u: f64, v: f64) -> Result<f64, GeomError> {
    let denom = check_denom(phi(u, v), "Phi")?;
    let (s1, c1) = v.sin_cos();
    let (s3, c3) = (3.0 * v).sin_cos();
    let (s5, c5) = (5.0 * v).sin_cos();
    let (s7, c7) = (7.0 * v).sin_cos();
    let (s9, c9) = (9.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let u5 = u4 * u;
    let u6 = u4 * u2;
    let u7 = u6 * u;
    let u8 = u4 * u4;
    let u9 = u8 * u;
    let u10 = u8 * u2;
    let bracket = (224.0 * u9 + 760.0 * u7 + 468.0 * u5 + 4.0 * u3 + 6.0 * u) * s1
        + (64.0 * u10 + 80.0 * u8 + 100.0 * u6 - 94.0 * u4 + 188.0 * u2) * c1
        + (-96.0 * u9 - 696.0 * u7 - 220.0 * u5 + 148.0 * u3 + 120.0 * u) * s3
        + (160.0 * u8 - 572.0 * u6 - 710.0 * u4 + 160.0 * u2 - 12.0) * c3
        + (344.0 * u7 - 188.0 * u5 - 556.0 * u3 + 48.0 * u) * s5
        + (16.0 * u8 - 452.0 * u6 - 214.0 * u4 - 432.0 * u2 + 12.0) * c5
        + (-56.0 * u7 + 48.0 * u5 - 4.0 * u3 - 75.0 * u) * s7
        + (-44.0 * u6 + 64.0 * u4 + 90.0 * u2 + 6.0) * c7
        + (12.0 * u5 - 8.0 * u3 - 9.0 * u) * s9
        + (-16.0 * u6 + 18.0 * u4 - 6.0 * u2 - 6.0) * c9;
    Ok(-(u4 / denom) * bracket)
}

/// The leading bracket is never closed in the transcription; the
/// delimiter-balancing reading closes it after the cos(9v) term.
pub(super) fn thm_delta3_r2(u: f64, v: f64) -> Result<f64, GeomError> {
    let denom = check_denom(phi(u, v), "Phi")?;
    let (s1, c1) = v.sin_cos();
    let (s3, c3) = (3.0 * v).sin_cos();
    let (s5, c5) = (5.0 * v).sin_cos();
    let (s7, c7) = (7.0 * v).sin_cos();
    let (s9, c9) = (9.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let u5 = u4 * u;
    let u6 = u4 * u2;
    let u7 = u6 * u;
    let u8 = u4 * u4;
    let u9 = u8 * u;
    let u10 = u8 * u2;
    let bracket = (64.0 * u10 - 272.0 * u8 - 1540.0 * u6 - 182.0 * u4 - 264.0 * u2) * s1
        + (160.0 * u9 - 8.0 * u7 - 876.0 * u5 - 332.0 * u3 - 6.0 * u) * c1
        + (-128.0 * u8 + 692.0 * u6 - 318.0 * u4 + 692.0 * u2 + 12.0) * s3
        + (96.0 * u9 - 232.0 * u7 + 1148.0 * u5 - 164.0 * u3 + 120.0 * u) * c3
        + (16.0 * u8 - 564.0 * u6 - 338.0 * u4 + 60.0 * u2 + 12.0) * s5
        + (120.0 * u7 - 572.0 * u5 + 196.0 * u3 - 48.0 * u) * c5
        + (148.0 * u6 - 148.0 * u4 - 46.0 * u2 - 6.0) * s7
        + (56.0 * u7 + 168.0 * u5 - 28.0 * u3 - 75.0 * u) * c7
        + (-16.0 * u6 + 18.0 * u4 - 6.0 * u2 - 6.0) * s9
        + (12.0 * u5 + 8.0 * u3 + 9.0 * u) * c9;
    Ok(-(2.0 * u4 / denom) * bracket)
}

pub(super) fn thm_delta3_r3(u: f64, v: f64) -> Result<f64, GeomError> {
    let denom = check_denom(theta(u, v), "Theta")?;
    let ep = eta_prime(u);
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let (s6, c6) = (6.0 * v).sin_cos();
    let (s8, c8) = (8.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let u6 = u4 * u2;
    let u8 = u4 * u4;
    let quadratic_part = u * (32.0 * u6 + 83.0 * u4 + 65.0 * u2 + 36.0) * s2 / 16.0
        - u2 * (32.0 * u6 + 100.0 * u4 + 51.0 * u2 + 22.0) * c2 / 16.0
        - u * (24.0 * u6 + 78.0 * u4 + 43.0 * u2 + 12.0) * s4 / 16.0
        + (38.0 * u6 - 32.0 * u4 - 25.0 * u2 + 8.0 * u8 - 9.0) * c4 / 16.0
        + u * (4.0 * u6 + 27.0 * u4 + 5.0 * u2 - 12.0) * s6 / 16.0
        - u2 * (16.0 * u4 - 27.0 * u2 - 22.0) * c6 / 16.0
        - u * (12.0 * u4 + 5.0 * u2 - 12.0) * s8 / 32.0
        + (16.0 * u6 - 24.0 * u4 - 21.0 * u2 + 9.0) * c8 / 64.0
        + (80.0 * u8 + 256.0 * u6 + 224.0 * u4 + 121.0 * u2 + 27.0) / 64.0;
    let linear_part = u2 * (32.0 * u6 - 24.0 * u4 + 109.0 * u2 - 87.0) * s2 / 16.0
        + u3 * (4.0 * u4 - 3.0 * u2 + 24.0) * c2 / 4.0
        + (104.0 * u6 - 58.0 * u4 + 93.0 * u2 - 6.0) * s4 / 16.0
        - u * (16.0 * u6 - 50.0 * u4 + 14.0 * u2 - 9.0) * c4 / 8.0
        - u2 * (20.0 * u4 - 69.0 * u2 + 19.0) * s6 / 16.0
        - u3 * (19.0 * u2 - 8.0) * c6 / 4.0
        - (20.0 * u4 - 31.0 * u2 - 6.0) * s8 / 32.0
        + u * (16.0 * u4 - 32.0 * u2 + 15.0) * c8 / 32.0
        + u * (64.0 * u6 + 112.0 * u4 - 8.0 * u2 - 51.0) / 32.0;
    Ok(-(u4 / denom) * (quadratic_part * ep2 + linear_part * ep))
}

pub(super) fn phi(u: f64, v: f64) -> f64 {
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let (s6, c6) = (6.0 * v).sin_cos();
    let (s8, c8) = (8.0 * v).sin_cos();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let u5 = u4 * u;
    let u6 = u4 * u2;
    let u7 = u6 * u;
    let u8 = u4 * u4;
    let first = u * s4 - (2.0 * u3 + 4.0 * u) * s2 + (-4.0 * u2 + 3.0) * c2 * c2
        + 2.0 * u2 * c2
        - 2.0 * u4
        - u2
        - 3.0;
    let second = (64.0 * u7 + 192.0 * u5 + 176.0 * u3 + 144.0 * u) * s2
        + (64.0 * u8 - 144.0 * u6 - 56.0 * u2) * c2
        - (64.0 * u5 + 112.0 * u3 + 24.0 * u) * s4
        + (48.0 * u6 - 88.0 * u2 - 36.0) * c4
        + (32.0 * u5 - 56.0 * u3 - 48.0 * u) * s6
        + (-16.0 * u4 + 56.0 * u2) * c6
        + (-16.0 * u3 + 12.0 * u) * s8
        + (16.0 * u4 - 28.0 * u2 + 9.0) * c8
        + 32.0 * u8
        + 112.0 * u6
        + 216.0 * u4
        + 116.0 * u2
        + 27.0;
    ep2 * first * second
}

pub(super) fn theta(u: f64, v: f64) -> f64 {
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    let (s6, c6) = (6.0 * v).sin_cos();
    let (s8, c8) = (8.0 * v).sin_cos();
    let (s10, c10) = (10.0 * v).sin_cos();
    let (s12, c12) = (12.0 * v).sin_cos();
    let u2 = u * u;
    let u4 = u2 * u2;
    let u6 = u4 * u2;
    let u8 = u4 * u4;
    let u10 = u8 * u2;
    let u12 = u8 * u4;
    ep2 * (3.0 * u * (32.0 * u10 + 136.0 * u8 + 312.0 * u6 - 424.0 * u4 - 249.0 * u2 - 90.0) * s2
        / 32.0
        + u2 * (32.0 * u8 + 152.0 * u6 + 256.0 * u4 + 132.0 * u2 + 33.0) * c2 / 32.0
        - 3.0 * u * (192.0 * u8 + 672.0 * u6 + 896.0 * u4 + 444.0 * u2 + 45.0) * s4 / 64.0
        + 3.0 * (8.0 * u10 + 8.0 * u8 - 12.0 * u6 - 81.0 * u4 - 60.0) * c4 / 16.0
        + u * (176.0 * u8 + 528.0 * u6 + 300.0 * u4 - 203.0 * u2 - 270.0) * s6 / 64.0
        - u2 * (48.0 * u6 - 272.0 * u4 - 648.0 * u2 - 297.0) * c6 / 64.0
        - 3.0 * u * (28.0 * u6 + 20.0 * u4 - 46.0 * u2 - 9.0) * s8 / 32.0
        + 3.0 * (32.0 * u8 - 120.0 * u6 - 204.0 * u4 + 66.0 * u2 + 27.0) * c8 / 128.0
        + 3.0 * u * (16.0 * u6 + 20.0 * u4 - 59.0 * u2 + 18.0) * s10 / 64.0
        + 9.0 * u2 * (16.0 * u2 + 11.0) * c10 / 64.0
        - u * (48.0 * u4 - 76.0 * u2 + 27.0) * s12 / 64.0
        + (64.0 * u6 - 192.0 * u4 + 144.0 * u2 - 27.0) * c12 / 256.0
        + (128.0 * u12 + 768.0 * u10 + 2496.0 * u8 + 3576.0 * u6 + 2652.0 * u4 + 1170.0 * u2
            + 135.0)
            / 128.0)
}

pub(super) fn cor4_h(u: f64, v: f64) -> Result<f64, GeomError> {
    let u2 = u * u;
    let u4 = check_denom(u2 * u2, "u^4")?;
    let (s2, c2) = (2.0 * v).sin_cos();
    Ok(-(eta_prime(u) / u4) * (u2 * u * s2 + 2.0 * u2 * c2 + u4))
}

pub(super) fn cor4_k(u: f64, v: f64) -> Result<f64, GeomError> {
    let u2 = u * u;
    let u4 = u2 * u2;
    let u6 = check_denom(u4 * u2, "u^6")?;
    let ep2 = 4.0 * u * u + 1.0;
    let (s2, c2) = (2.0 * v).sin_cos();
    let (s4, c4) = (4.0 * v).sin_cos();
    Ok(ep2 / u6
        * (-(2.0 * u2 * u + 4.0 * u) * s2 + 2.0 * u2 * c2 + u * s4 + (-2.0 * u2 + 1.5) * c4
            - 2.0 * u4
            - 3.0 * u2
            - 1.5))
}

/// Numerator of the mean curvature; its real zeros are the minimality locus.
pub(super) fn h_numerator(u: f64, v: f64) -> f64 {
    let (s2, c2) = (2.0 * v).sin_cos();
    let u2 = u * u;
    u2 * u * s2 + 2.0 * u2 * c2 + u2 * u2
}

pub(super) fn min_roots_radicand(v: f64) -> f64 {
    2.0 * (2.0 * v).cos() + 0.25 * (2.0 * v).sin()
}

/// Both transcribed root branches, when the radicand admits them.
pub(super) fn min_roots_branches(v: f64) -> Option<[f64; 2]> {
    let radicand = min_roots_radicand(v);
    if radicand < 0.0 {
        return None;
    }
    let root = radicand.sqrt();
    let half_s2 = 0.5 * (2.0 * v).sin();
    Some([-root - half_s2, root - half_s2])
}

/// Worst mean-curvature-numerator residual over the transcribed root
/// branches. The value depends on v alone.
pub(super) fn min_roots_residual(v: f64) -> Result<f64, GeomError> {
    let branches = min_roots_branches(v)
        .ok_or(GeomError::SingularDenominator("negative radicand in transcribed roots"))?;
    Ok(branches
        .into_iter()
        .map(|root| h_numerator(root, v).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominator_values_at_unit_point() {
        // Hand evaluation: 5 * (-5) * 328 and 5 * 24557 / 256.
        assert!((phi(1.0, 0.0) - -8200.0).abs() < 1e-9);
        assert!((theta(1.0, 0.0) - 479.62890625).abs() < 1e-9);
    }

    #[test]
    fn h_numerator_vanishes_on_corrected_roots() {
        for v in [0.9f64, 1.4, 2.0, 4.4] {
            let s2 = (2.0 * v).sin();
            let c2 = (2.0 * v).cos();
            let disc = s2 * s2 - 8.0 * c2;
            if disc < 0.0 {
                continue;
            }
            for sign in [-1.0, 1.0] {
                let u = (-s2 + sign * disc.sqrt()) / 2.0;
                assert!(h_numerator(u, v).abs() <= 1e-12 * (1.0 + u.powi(4)));
            }
        }
    }

    #[test]
    fn transcribed_roots_respect_radicand_sign() {
        assert!(min_roots_branches(std::f64::consts::FRAC_PI_2).is_none());
        let branches = min_roots_branches(0.0).unwrap();
        assert!((branches[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((branches[1] - 2f64.sqrt()).abs() < 1e-12);
    }
}
