//! Grades a registry of transcribed closed-form expressions against the jet
//! pipeline over a sampling grid.
//!
//! Every registry entry carries its anchor text, the literal expression it
//! was transcribed from. An entry is graded sample by sample against its
//! pipeline counterpart; the worst relative error (denominator
//! max(|pipeline value|, 1)) decides MATCH or MISMATCH, and a verdict with
//! too few evaluated samples stays INCONCLUSIVE. Three additional checks
//! grade the transcriptions against each other, which separates internal
//! consistency of the transcribed family from agreement with the pipeline.

mod formulas;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use serde::Serialize;

use crate::beltrami::lb3_position;
use crate::curvature::{first_form, gauss_map, invariants, point_geometry, second_form, xyz_combos};
use crate::error::{GeomError, JetError};
use crate::surface::{ParametricSurface, DEFAULT_U_EXCLUDE};

/// Identifier of one transcribed formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    Eq2Surface,
    Eq3Gauss,
    ProofEfg,
    ProofL,
    ProofM,
    ProofN,
    ProofX,
    ProofY,
    ProofZ,
    ProofDetii,
    ThmDelta3R1,
    ThmDelta3R2,
    ThmDelta3R3,
    Phi,
    Theta,
    Cor4H,
    Cor4K,
    MinRoots,
}

impl FormulaId {
    pub const ALL: [FormulaId; 18] = [
        FormulaId::Eq2Surface,
        FormulaId::Eq3Gauss,
        FormulaId::ProofEfg,
        FormulaId::ProofL,
        FormulaId::ProofM,
        FormulaId::ProofN,
        FormulaId::ProofX,
        FormulaId::ProofY,
        FormulaId::ProofZ,
        FormulaId::ProofDetii,
        FormulaId::ThmDelta3R1,
        FormulaId::ThmDelta3R2,
        FormulaId::ThmDelta3R3,
        FormulaId::Phi,
        FormulaId::Theta,
        FormulaId::Cor4H,
        FormulaId::Cor4K,
        FormulaId::MinRoots,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::Eq2Surface => "EQ2_SURFACE",
            FormulaId::Eq3Gauss => "EQ3_GAUSS",
            FormulaId::ProofEfg => "PROOF_EFG",
            FormulaId::ProofL => "PROOF_L",
            FormulaId::ProofM => "PROOF_M",
            FormulaId::ProofN => "PROOF_N",
            FormulaId::ProofX => "PROOF_X",
            FormulaId::ProofY => "PROOF_Y",
            FormulaId::ProofZ => "PROOF_Z",
            FormulaId::ProofDetii => "PROOF_DETII",
            FormulaId::ThmDelta3R1 => "THM_DELTA3_R1",
            FormulaId::ThmDelta3R2 => "THM_DELTA3_R2",
            FormulaId::ThmDelta3R3 => "THM_DELTA3_R3",
            FormulaId::Phi => "PHI",
            FormulaId::Theta => "THETA",
            FormulaId::Cor4H => "COR4_H",
            FormulaId::Cor4K => "COR4_K",
            FormulaId::MinRoots => "MIN_ROOTS",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shape of a formula's value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaArity {
    Scalar,
    Vector3,
}

/// Evaluated formula value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormulaValue {
    Scalar(f64),
    Vector([f64; 3]),
}

impl FormulaValue {
    pub fn components(&self) -> &[f64] {
        match self {
            FormulaValue::Scalar(x) => std::slice::from_ref(x),
            FormulaValue::Vector(xs) => xs,
        }
    }

    fn all_finite(&self) -> bool {
        self.components().iter().all(|x| x.is_finite())
    }
}

/// Pipeline quantity a transcription is graded against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counterpart {
    ChartPoint,
    GaussMap,
    FirstFormTriple,
    SecondL,
    SecondM,
    SecondN,
    SecondDet,
    ComboX,
    ComboY,
    ComboZ,
    Lb3R1,
    Lb3R2,
    Lb3R3,
    MeanCurvature,
    GaussCurvature,
    /// Residual grading: the transcribed value is compared against zero.
    ZeroResidual,
    /// Bare denominator polynomial; nothing in the pipeline corresponds.
    None,
}

impl Counterpart {
    pub fn describe(self) -> &'static str {
        match self {
            Counterpart::ChartPoint => "chart point R(u,v)",
            Counterpart::GaussMap => "unit normal",
            Counterpart::FirstFormTriple => "(E, F, G)",
            Counterpart::SecondL => "L",
            Counterpart::SecondM => "M",
            Counterpart::SecondN => "N",
            Counterpart::SecondDet => "det II",
            Counterpart::ComboX => "X = det I * e11",
            Counterpart::ComboY => "Y = det I * e12",
            Counterpart::ComboZ => "Z = det I * e22",
            Counterpart::Lb3R1 => "third-form Laplacian of R, component 1",
            Counterpart::Lb3R2 => "third-form Laplacian of R, component 2",
            Counterpart::Lb3R3 => "third-form Laplacian of R, component 3",
            Counterpart::MeanCurvature => "H",
            Counterpart::GaussCurvature => "K",
            Counterpart::ZeroResidual => "zero (residual grading)",
            Counterpart::None => "none",
        }
    }
}

/// One registry entry: a transcription plus how it is graded.
#[derive(Debug, Clone, Copy)]
pub struct TranscribedFormula {
    pub id: FormulaId,
    pub paper_anchor: &'static str,
    pub arity: FormulaArity,
    pub counterpart: Counterpart,
    pub notes: Option<&'static str>,
}

static REGISTRY: [TranscribedFormula; 18] = [
    TranscribedFormula {
        id: FormulaId::Eq2Surface,
        paper_anchor: "R(u,v) = (u^2 cos(v) - u sin(v), u^2 sin(v) + u cos(v), \
                       2^{-1} u sqrt(4u^2+1) + 2^{-2} sinh^{-1}(2u))",
        arity: FormulaArity::Vector3,
        counterpart: Counterpart::ChartPoint,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::Eq3Gauss,
        paper_anchor: "e = |det I|^{-1/2} (-u(sin(v)+u cos(v)) eta', \
                       -u(cos(v)+u sin(v)) eta', -2u^3+u)",
        arity: FormulaArity::Vector3,
        counterpart: Counterpart::GaussMap,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofEfg,
        paper_anchor: "E = 0, F = -u^2, G = u^4 + u^2",
        arity: FormulaArity::Vector3,
        counterpart: Counterpart::FirstFormTriple,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofL,
        paper_anchor: "L = (-2u sin(2v) - 2u^2) eta' / sqrt|det I|",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::SecondL,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofM,
        paper_anchor: "M = (u sin(2v) - 2u^2 cos(2v) + u^2) eta' / sqrt|det I|",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::SecondM,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofN,
        paper_anchor: "N = (u sin(2v) + u^2 cos(2v) + u^4) eta' / sqrt|det I|",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::SecondN,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofX,
        paper_anchor: "X = 2u eta'^2 [4u^2 sin(2v) + 4u cos(2v) + 2 sin(4v) - u cos(4v) \
                       + 2u^3 + u]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::ComboX,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofY,
        paper_anchor: "Y = 2^{-1} eta'^2 [-(12u^3+8u)sin(2v) + (8u^4-4u^2)cos(2v) \
                       (4u^3-2u)sin(4v) + (6u^2+3)cos(4v) - 8u^4 - 3]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::ComboY,
        notes: Some(
            "an operator is missing between the cos(2v) and sin(4v) terms as transcribed; \
             '+' is adopted, the reading the X,Y,Z consistency check confirms",
        ),
    },
    TranscribedFormula {
        id: FormulaId::ProofZ,
        paper_anchor: "Z = -2^{-1} eta'^2 [-(8u^3+8u)sin(2v) + (16u^4+4u^2)cos(2v) \
                       + (4u^3+6u)sin(4v) + (-4u^4+u^2+3)cos(4v) - 10u^4 - 3u^2 - 3]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::ComboZ,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ProofDetii,
        paper_anchor: "det II = (eta'^2/u^2)[(-2u^3-4u)sin(2v) + 2u^2 cos(2v) + u sin(4v) \
                       + (-2u^2+3/2)cos(4v) - 2u^4 - 3u^2 - 3/2]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::SecondDet,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ThmDelta3R1,
        paper_anchor: "Delta^III R_1 = -(u^4/Phi)[(224u^9+760u^7+468u^5+4u^3+6u)sin(v) + ... \
                       + (-16u^6+18u^4-6u^2-6)cos(9v)]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::Lb3R1,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::ThmDelta3R2,
        paper_anchor: "Delta^III R_2 = -(2u^4/Phi)[(64u^10-272u^8-1540u^6-182u^4-264u^2)sin(v) \
                       + ... + (12u^5+8u^3+9u)cos(9v)",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::Lb3R2,
        notes: Some(
            "the leading bracket is never closed as transcribed; the delimiter-balancing \
             reading, closing after the cos(9v) term, is adopted",
        ),
    },
    TranscribedFormula {
        id: FormulaId::ThmDelta3R3,
        paper_anchor: "Delta^III R_3 = -(u^4/Theta){[2^{-4}u(32u^6+83u^4+65u^2+36)sin(2v) \
                       + ...] eta'^2 + [2^{-4}u^2(32u^6-24u^4+109u^2-87)sin(2v) + ...] eta'}",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::Lb3R3,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::Phi,
        paper_anchor: "Phi = eta'^2 [u sin(4v) - (2u^3+4u)sin(2v) + (-4u^2+3)cos^2(2v) \
                       + 2u^2 cos(2v) - 2u^4 - u^2 - 3] . [(64u^7+192u^5+176u^3+144u)sin(2v) \
                       + ... + 32u^8+112u^6+216u^4+116u^2+27]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::None,
        notes: Some(
            "denominator of THM_DELTA3_R1 and THM_DELTA3_R2; no pipeline counterpart exists, \
             so every sample is skipped and the verdict stays INCONCLUSIVE",
        ),
    },
    TranscribedFormula {
        id: FormulaId::Theta,
        paper_anchor: "Theta = eta'^2 [3*2^{-5}u(32u^10+136u^8+312u^6-424u^4-249u^2-90)sin(2v) \
                       + ... + 2^{-7}(128u^12+768u^10+2496u^8+3576u^6+2652u^4+1170u^2+135)]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::None,
        notes: Some(
            "denominator of THM_DELTA3_R3; no pipeline counterpart exists, so every sample \
             is skipped and the verdict stays INCONCLUSIVE",
        ),
    },
    TranscribedFormula {
        id: FormulaId::Cor4H,
        paper_anchor: "H = -(eta'/u^4)(u^3 sin(2v) + 2u^2 cos(2v) + u^4)",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::MeanCurvature,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::Cor4K,
        paper_anchor: "K = (eta'^2/u^6)[-(2u^3+4u)sin(2v) + 2u^2 cos(2v) + u sin(4v) \
                       + (-2u^2+3/2)cos(4v) - 2u^4 - 3u^2 - 3/2]",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::GaussCurvature,
        notes: None,
    },
    TranscribedFormula {
        id: FormulaId::MinRoots,
        paper_anchor: "u_{3,4} = -+ sqrt(2cos(2v) + 2^{-2}sin(2v)) - 2^{-1}sin(2v)",
        arity: FormulaArity::Scalar,
        counterpart: Counterpart::ZeroResidual,
        notes: Some(
            "graded by substituting each real transcribed root into the mean-curvature \
             numerator u^3 sin(2v) + 2u^2 cos(2v) + u^4; samples where the radicand is \
             negative are skipped",
        ),
    },
];

/// The fixed, enumerable set of transcribed formulas.
pub fn registry() -> &'static [TranscribedFormula] {
    &REGISTRY
}

fn entry(id: FormulaId) -> &'static TranscribedFormula {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .expect("registry covers every formula id")
}

/// Literal evaluation of one transcribed expression, reading choices and all.
pub fn eval_transcribed(id: FormulaId, u: f64, v: f64) -> Result<FormulaValue, GeomError> {
    use FormulaValue::{Scalar, Vector};
    Ok(match id {
        FormulaId::Eq2Surface => Vector(formulas::eq2_surface(u, v)),
        FormulaId::Eq3Gauss => Vector(formulas::eq3_gauss(u, v)?),
        FormulaId::ProofEfg => Vector(formulas::proof_efg(u, v)),
        FormulaId::ProofL => Scalar(formulas::proof_l(u, v)?),
        FormulaId::ProofM => Scalar(formulas::proof_m(u, v)?),
        FormulaId::ProofN => Scalar(formulas::proof_n(u, v)?),
        FormulaId::ProofX => Scalar(formulas::proof_x(u, v)),
        FormulaId::ProofY => Scalar(formulas::proof_y(u, v)),
        FormulaId::ProofZ => Scalar(formulas::proof_z(u, v)),
        FormulaId::ProofDetii => Scalar(formulas::proof_det_ii(u, v)?),
        FormulaId::ThmDelta3R1 => Scalar(formulas::thm_delta3_r1(u, v)?),
        FormulaId::ThmDelta3R2 => Scalar(formulas::thm_delta3_r2(u, v)?),
        FormulaId::ThmDelta3R3 => Scalar(formulas::thm_delta3_r3(u, v)?),
        FormulaId::Phi => Scalar(formulas::phi(u, v)),
        FormulaId::Theta => Scalar(formulas::theta(u, v)),
        FormulaId::Cor4H => Scalar(formulas::cor4_h(u, v)?),
        FormulaId::Cor4K => Scalar(formulas::cor4_k(u, v)?),
        FormulaId::MinRoots => Scalar(formulas::min_roots_residual(v)?),
    })
}

fn pipeline_value(
    surface: &ParametricSurface,
    which: Counterpart,
    u: f64,
    v: f64,
) -> Result<Option<FormulaValue>, GeomError> {
    use FormulaValue::{Scalar, Vector};
    let value = match which {
        Counterpart::ChartPoint => {
            let p = surface.eval(u, v)?;
            Vector([p.x1, p.x2, p.x3])
        }
        Counterpart::GaussMap => {
            let n = gauss_map(surface, u, v)?;
            Vector([n.x1, n.x2, n.x3])
        }
        Counterpart::FirstFormTriple => {
            let ff = first_form(surface, u, v)?;
            Vector([ff.e, ff.f, ff.g])
        }
        Counterpart::SecondL => Scalar(second_form(surface, u, v)?.l),
        Counterpart::SecondM => Scalar(second_form(surface, u, v)?.m),
        Counterpart::SecondN => Scalar(second_form(surface, u, v)?.n),
        Counterpart::SecondDet => Scalar(second_form(surface, u, v)?.det),
        Counterpart::ComboX => Scalar(point_geometry(surface, u, v)?.x),
        Counterpart::ComboY => Scalar(point_geometry(surface, u, v)?.y),
        Counterpart::ComboZ => Scalar(point_geometry(surface, u, v)?.z),
        Counterpart::Lb3R1 => Scalar(lb3_position(surface, u, v)?.x1),
        Counterpart::Lb3R2 => Scalar(lb3_position(surface, u, v)?.x2),
        Counterpart::Lb3R3 => Scalar(lb3_position(surface, u, v)?.x3),
        Counterpart::MeanCurvature => Scalar(invariants(surface, u, v)?.0),
        Counterpart::GaussCurvature => Scalar(invariants(surface, u, v)?.1),
        Counterpart::ZeroResidual => Scalar(0.0),
        Counterpart::None => return Ok(None),
    };
    Ok(Some(value))
}

/// Sampling grid: two closed u-ranges (one per sign) crossed with a
/// half-open v-range.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditGrid {
    pub u_ranges: [(f64, f64); 2],
    /// Points per u-range, endpoints included.
    pub nu_per_range: usize,
    /// nv equally spaced points; the right endpoint is excluded.
    pub v_range: (f64, f64),
    pub nv: usize,
    /// Samples with |u| below this are skipped as "excluded band".
    pub u_exclude: f64,
    /// Verdicts with fewer evaluated samples stay INCONCLUSIVE.
    pub min_evaluated: usize,
}

impl Default for AuditGrid {
    fn default() -> Self {
        AuditGrid {
            u_ranges: [(0.2, 3.0), (-3.0, -0.2)],
            nu_per_range: 20,
            v_range: (0.0, TAU),
            nv: 24,
            u_exclude: DEFAULT_U_EXCLUDE,
            min_evaluated: 100,
        }
    }
}

impl AuditGrid {
    /// Total u-point count across both ranges.
    pub fn nu_total(&self) -> usize {
        2 * self.nu_per_range
    }

    /// Deterministic sample order: first u-range, then the second, each
    /// u-major with v ascending.
    pub fn samples(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.nu_total() * self.nv);
        for &(a, b) in &self.u_ranges {
            for i in 0..self.nu_per_range {
                let t = if self.nu_per_range > 1 {
                    i as f64 / (self.nu_per_range - 1) as f64
                } else {
                    0.0
                };
                let u = a + (b - a) * t;
                for k in 0..self.nv {
                    let v =
                        self.v_range.0 + (self.v_range.1 - self.v_range.0) * k as f64 / self.nv as f64;
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Grid echo embedded in the serialized report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMeta {
    pub u_ranges: [[f64; 2]; 2],
    pub nu: usize,
    pub v_range: [f64; 2],
    pub nv: usize,
}

impl From<&AuditGrid> for GridMeta {
    fn from(g: &AuditGrid) -> Self {
        GridMeta {
            u_ranges: [
                [g.u_ranges[0].0, g.u_ranges[0].1],
                [g.u_ranges[1].0, g.u_ranges[1].1],
            ],
            nu: g.nu_total(),
            v_range: [g.v_range.0, g.v_range.1],
            nv: g.nv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Outcome of grading one formula, or one consistency check, over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct AuditVerdict {
    pub formula_id: String,
    pub paper_anchor: String,
    /// Total samples attempted; samples = evaluated + skipped.
    pub samples: usize,
    pub skipped: usize,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    /// Sample where the worst relative error occurred, absent when no
    /// evaluated sample produced a positive error.
    pub argmax: Option<[f64; 2]>,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Skip counts by reason; diagnostic only, not part of the wire format.
    #[serde(skip)]
    pub skip_reasons: BTreeMap<&'static str, usize>,
    /// Zero-based worst component for vector formulas; diagnostic only.
    #[serde(skip)]
    pub argmax_component: Option<usize>,
}

impl AuditVerdict {
    pub fn evaluated(&self) -> usize {
        self.samples - self.skipped
    }
}

struct Accumulator {
    samples: usize,
    skipped: usize,
    skip_reasons: BTreeMap<&'static str, usize>,
    max_abs_err: f64,
    max_rel_err: f64,
    argmax: Option<[f64; 2]>,
    argmax_component: Option<usize>,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            samples: 0,
            skipped: 0,
            skip_reasons: BTreeMap::new(),
            max_abs_err: 0.0,
            max_rel_err: 0.0,
            argmax: None,
            argmax_component: None,
        }
    }

    fn skip(&mut self, reason: &'static str) {
        self.samples += 1;
        self.skipped += 1;
        *self.skip_reasons.entry(reason).or_insert(0) += 1;
    }

    /// Both values must be finite and of equal arity.
    fn record(&mut self, got: &FormulaValue, reference: &FormulaValue, u: f64, v: f64) {
        let g = got.components();
        let r = reference.components();
        debug_assert_eq!(g.len(), r.len());
        self.samples += 1;
        for (i, (&gi, &ri)) in g.iter().zip(r).enumerate() {
            let abs = (gi - ri).abs();
            let rel = abs / ri.abs().max(1.0);
            if abs > self.max_abs_err {
                self.max_abs_err = abs;
            }
            if rel > self.max_rel_err {
                self.max_rel_err = rel;
                self.argmax = Some([u, v]);
                self.argmax_component = Some(i);
            }
        }
    }

    fn finish(self, formula_id: &str, anchor: &str, tol: f64, min_evaluated: usize) -> AuditVerdict {
        let evaluated = self.samples - self.skipped;
        let verdict = if evaluated < min_evaluated {
            Verdict::Inconclusive
        } else if self.max_rel_err <= tol {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        AuditVerdict {
            formula_id: formula_id.to_owned(),
            paper_anchor: anchor.to_owned(),
            samples: self.samples,
            skipped: self.skipped,
            max_abs_err: self.max_abs_err,
            max_rel_err: self.max_rel_err,
            argmax: self.argmax,
            tolerance: tol,
            verdict,
            skip_reasons: self.skip_reasons,
            argmax_component: self.argmax_component,
        }
    }
}

fn skip_reason(err: &GeomError) -> &'static str {
    match err {
        GeomError::DomainExcluded { .. } => "excluded band",
        GeomError::DegenerateMetric { .. } => "degenerate metric",
        GeomError::ParabolicPoint { .. } => "parabolic point",
        GeomError::SingularDenominator(_) => "singular denominator",
        GeomError::Jet(JetError::DivisionNearZero { .. }) => "singular denominator",
        GeomError::Jet(_) => "jet domain",
    }
}

/// Grades one registry entry over the grid.
pub fn audit(id: FormulaId, grid: &AuditGrid, tol: f64) -> AuditVerdict {
    let entry = entry(id);
    let surface = ParametricSurface::tl_surface().with_u_exclude(grid.u_exclude);
    let mut acc = Accumulator::new();
    for (u, v) in grid.samples() {
        if u.abs() < grid.u_exclude {
            acc.skip("excluded band");
            continue;
        }
        let got = match eval_transcribed(id, u, v) {
            Ok(x) => x,
            Err(e) => {
                acc.skip(skip_reason(&e));
                continue;
            }
        };
        let reference = match pipeline_value(&surface, entry.counterpart, u, v) {
            Ok(Some(x)) => x,
            Ok(None) => {
                acc.skip("no pipeline counterpart");
                continue;
            }
            Err(e) => {
                acc.skip(skip_reason(&e));
                continue;
            }
        };
        if !got.all_finite() || !reference.all_finite() {
            acc.skip("non-finite value");
            continue;
        }
        acc.record(&got, &reference, u, v);
    }
    acc.finish(id.as_str(), entry.paper_anchor, tol, grid.min_evaluated)
}

/// Transcription-vs-transcription checks; the composite built from parts is
/// the reference side of the relative error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ConsistencyCheck {
    DetiiFromLmn,
    KFromDetii,
    XyzFromForms,
}

impl ConsistencyCheck {
    /// Sorted by id string, the report order.
    const ALL: [ConsistencyCheck; 3] = [
        ConsistencyCheck::DetiiFromLmn,
        ConsistencyCheck::KFromDetii,
        ConsistencyCheck::XyzFromForms,
    ];

    fn id(self) -> &'static str {
        match self {
            ConsistencyCheck::DetiiFromLmn => "CONSISTENCY_DETII_FROM_LMN",
            ConsistencyCheck::KFromDetii => "CONSISTENCY_K_FROM_DETII",
            ConsistencyCheck::XyzFromForms => "CONSISTENCY_XYZ_FROM_FORMS",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            ConsistencyCheck::DetiiFromLmn => "det II = LN - M^2, from the transcribed L, M, N",
            ConsistencyCheck::KFromDetii => {
                "K == det II / u^4, from the transcribed K and det II brackets"
            }
            ConsistencyCheck::XyzFromForms => {
                "X = EM^2-2FLM+GL^2, Y = EMN-FLN+GLM-FM^2, Z = GM^2-2FNM+EN^2, \
                 from the transcribed E..N"
            }
        }
    }
}

fn transcribed_scalar(id: FormulaId, u: f64, v: f64) -> Result<f64, GeomError> {
    match eval_transcribed(id, u, v)? {
        FormulaValue::Scalar(x) => Ok(x),
        FormulaValue::Vector(_) => unreachable!("{id} is scalar"),
    }
}

/// (printed, derived-from-parts) pair for one consistency sample.
fn consistency_sample(
    check: ConsistencyCheck,
    u: f64,
    v: f64,
) -> Result<(FormulaValue, FormulaValue), GeomError> {
    use FormulaValue::{Scalar, Vector};
    match check {
        ConsistencyCheck::DetiiFromLmn => {
            let l = transcribed_scalar(FormulaId::ProofL, u, v)?;
            let m = transcribed_scalar(FormulaId::ProofM, u, v)?;
            let n = transcribed_scalar(FormulaId::ProofN, u, v)?;
            let printed = eval_transcribed(FormulaId::ProofDetii, u, v)?;
            Ok((printed, Scalar(l * n - m * m)))
        }
        ConsistencyCheck::KFromDetii => {
            let det_ii = transcribed_scalar(FormulaId::ProofDetii, u, v)?;
            let u4 = u * u * u * u;
            if u4.abs() <= formulas::DENOM_GUARD {
                return Err(GeomError::SingularDenominator("u^4"));
            }
            let printed = eval_transcribed(FormulaId::Cor4K, u, v)?;
            Ok((printed, Scalar(det_ii / u4)))
        }
        ConsistencyCheck::XyzFromForms => {
            let [e, f, g] = match eval_transcribed(FormulaId::ProofEfg, u, v)? {
                Vector(xs) => xs,
                Scalar(_) => unreachable!("PROOF_EFG is a triple"),
            };
            let l = transcribed_scalar(FormulaId::ProofL, u, v)?;
            let m = transcribed_scalar(FormulaId::ProofM, u, v)?;
            let n = transcribed_scalar(FormulaId::ProofN, u, v)?;
            let (x, y, z) = xyz_combos(e, f, g, l, m, n);
            let printed = Vector([
                formulas::proof_x(u, v),
                formulas::proof_y(u, v),
                formulas::proof_z(u, v),
            ]);
            Ok((printed, Vector([x, y, z])))
        }
    }
}

fn consistency(check: ConsistencyCheck, grid: &AuditGrid, tol: f64) -> AuditVerdict {
    let mut acc = Accumulator::new();
    for (u, v) in grid.samples() {
        if u.abs() < grid.u_exclude {
            acc.skip("excluded band");
            continue;
        }
        match consistency_sample(check, u, v) {
            Ok((printed, derived)) => {
                if !printed.all_finite() || !derived.all_finite() {
                    acc.skip("non-finite value");
                    continue;
                }
                acc.record(&printed, &derived, u, v);
            }
            Err(e) => acc.skip(skip_reason(&e)),
        }
    }
    acc.finish(check.id(), check.anchor(), tol, grid.min_evaluated)
}

/// Full audit outcome; serialization is deterministic for a fixed grid.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub engine_version: String,
    pub grid: GridMeta,
    pub tolerance: f64,
    pub verdicts: Vec<AuditVerdict>,
    pub consistency_checks: Vec<AuditVerdict>,
}

/// Grades every registry entry plus the consistency suite. Verdicts are
/// ordered by formula id.
pub fn audit_all(grid: &AuditGrid, tol: f64) -> AuditReport {
    let mut verdicts: Vec<AuditVerdict> =
        FormulaId::ALL.iter().map(|&id| audit(id, grid, tol)).collect();
    verdicts.sort_by(|a, b| a.formula_id.cmp(&b.formula_id));
    let consistency_checks = ConsistencyCheck::ALL
        .iter()
        .map(|&c| consistency(c, grid, tol))
        .collect();
    AuditReport {
        engine_version: crate::ENGINE_VERSION.to_owned(),
        grid: GridMeta::from(grid),
        tolerance: tol,
        verdicts,
        consistency_checks,
    }
}

impl AuditReport {
    /// Pretty JSON with a trailing newline, byte-stable across runs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn has_mismatch(&self) -> bool {
        self.verdicts
            .iter()
            .chain(&self.consistency_checks)
            .any(|vd| vd.verdict == Verdict::Mismatch)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Formula audit\n\n");
        out.push_str(&format!("- engine version: {}\n", self.engine_version));
        out.push_str(&format!(
            "- grid: u in [{}, {}] and [{}, {}] ({} points total), v in [{}, {}) ({} points)\n",
            self.grid.u_ranges[0][0],
            self.grid.u_ranges[0][1],
            self.grid.u_ranges[1][0],
            self.grid.u_ranges[1][1],
            self.grid.nu,
            self.grid.v_range[0],
            self.grid.v_range[1],
            self.grid.nv,
        ));
        out.push_str(&format!(
            "- tolerance: {:e} relative, denominator max(|reference|, 1)\n\n",
            self.tolerance
        ));
        render_table(&mut out, &self.verdicts);
        out.push_str("\n## Consistency checks\n\n");
        render_table(&mut out, &self.consistency_checks);
        out.push_str("\n## Notes\n\n");
        for vd in self.verdicts.iter().chain(&self.consistency_checks) {
            if !vd.skip_reasons.is_empty() {
                let detail: Vec<String> = vd
                    .skip_reasons
                    .iter()
                    .map(|(reason, count)| format!("{reason}: {count}"))
                    .collect();
                out.push_str(&format!(
                    "- {}: skipped {} of {} ({})\n",
                    vd.formula_id,
                    vd.skipped,
                    vd.samples,
                    detail.join(", ")
                ));
            }
        }
        for entry in registry() {
            if let Some(notes) = entry.notes {
                out.push_str(&format!("- {}: {}\n", entry.id, notes));
            }
        }
        out
    }
}

fn render_table(out: &mut String, verdicts: &[AuditVerdict]) {
    out.push_str("| formula | verdict | evaluated | skipped | max abs err | max rel err | argmax (u, v) |\n");
    out.push_str("|---|---|---:|---:|---:|---:|---|\n");
    for vd in verdicts {
        let argmax = match vd.argmax {
            Some([u, v]) => format!("({u:.6}, {v:.6})"),
            None => "-".to_owned(),
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {:.3e} | {:.3e} | {} |\n",
            vd.formula_id,
            vd.verdict.as_str(),
            vd.evaluated(),
            vd.skipped,
            vd.max_abs_err,
            vd.max_rel_err,
            argmax,
        ));
    }
}

/// Real root of the corrected minimality quadratic u^2 + u sin(2v) + 2cos(2v).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorrectedRoot {
    pub u: f64,
    /// |u^3 sin(2v) + 2u^2 cos(2v) + u^4| at the root.
    pub residual: f64,
}

/// One transcribed root branch, graded by the same numerator residual.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TranscribedRoot {
    pub branch: &'static str,
    pub radicand: f64,
    pub u: Option<f64>,
    pub residual: Option<f64>,
    pub failure: Option<&'static str>,
}

/// Minimality locus record at one v.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalLocus {
    pub v: f64,
    /// Discriminant sin^2(2v) - 8cos(2v) of the corrected quadratic.
    pub discriminant: f64,
    /// Ascending real roots; empty when the discriminant is negative.
    pub corrected_roots: Vec<CorrectedRoot>,
    pub transcribed_roots: [TranscribedRoot; 2],
    /// The complex pair is acknowledged without entering numeric scope.
    pub complex_pair: &'static str,
}

/// Solves the corrected minimality quadratic at v and grades the transcribed
/// root branches beside it.
pub fn minimal_locus(v: f64) -> MinimalLocus {
    let s2 = (2.0 * v).sin();
    let c2 = (2.0 * v).cos();
    let discriminant = s2 * s2 - 8.0 * c2;
    let corrected_roots = if discriminant < 0.0 {
        Vec::new()
    } else {
        let root = discriminant.sqrt();
        [(-s2 - root) / 2.0, (-s2 + root) / 2.0]
            .into_iter()
            .map(|u| CorrectedRoot {
                u,
                residual: formulas::h_numerator(u, v).abs(),
            })
            .collect()
    };
    let radicand = formulas::min_roots_radicand(v);
    let transcribed_roots = match formulas::min_roots_branches(v) {
        Some(branches) => ["u3", "u4"].map(|branch| {
            let u = branches[if branch == "u3" { 0 } else { 1 }];
            TranscribedRoot {
                branch,
                radicand,
                u: Some(u),
                residual: Some(formulas::h_numerator(u, v).abs()),
                failure: None,
            }
        }),
        None => ["u3", "u4"].map(|branch| TranscribedRoot {
            branch,
            radicand,
            u: None,
            residual: None,
            failure: Some("negative radicand"),
        }),
    };
    MinimalLocus {
        v,
        discriminant,
        corrected_roots,
        transcribed_roots,
        complex_pair: "u = -+ i/2 (acknowledged, outside numeric scope)",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn registry_covers_every_id() {
        assert_eq!(registry().len(), 18);
        let ids: BTreeSet<&str> = registry().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), 18);
        for entry in registry() {
            assert!(!entry.paper_anchor.is_empty());
        }
        for id in FormulaId::ALL {
            assert!(registry().iter().any(|e| e.id == id));
        }
    }

    #[test]
    fn transcription_pins_at_unit_point() {
        let root5 = 5f64.sqrt();
        let pin = |id, want: f64| match eval_transcribed(id, 1.0, 0.0).unwrap() {
            FormulaValue::Scalar(x) => close(x, want, 1e-9),
            FormulaValue::Vector(_) => panic!("scalar pin"),
        };
        pin(FormulaId::ProofX, 60.0);
        pin(FormulaId::ProofY, 5.0);
        pin(FormulaId::ProofZ, -10.0);
        pin(FormulaId::ProofDetii, -25.0);
        pin(FormulaId::Cor4H, -3.0 * root5);
        pin(FormulaId::Cor4K, -25.0);
        pin(FormulaId::ProofL, -2.0 * root5);
        pin(FormulaId::ProofM, -root5);
        pin(FormulaId::ProofN, 2.0 * root5);
        match eval_transcribed(FormulaId::Eq3Gauss, 1.0, 0.0).unwrap() {
            FormulaValue::Vector([a, b, c]) => {
                close(a, -root5, 1e-9);
                close(b, -root5, 1e-9);
                close(c, -1.0, 1e-9);
            }
            FormulaValue::Scalar(_) => panic!("vector pin"),
        }
    }

    #[test]
    fn default_grid_shape() {
        let grid = AuditGrid::default();
        let samples = grid.samples();
        assert_eq!(samples.len(), 960);
        assert_eq!(samples[0], (0.2, 0.0));
        assert_eq!(grid.nu_total(), 40);
        // Positive range first, negative second.
        assert!(samples[0].0 > 0.0 && samples[959].0 < 0.0);
        // v stays inside the half-open range.
        assert!(samples.iter().all(|&(_, v)| (0.0..TAU).contains(&v)));
    }

    #[test]
    fn chart_transcription_matches_pipeline() {
        let verdict = audit(FormulaId::Eq2Surface, &AuditGrid::default(), 1e-6);
        assert_eq!(verdict.verdict, Verdict::Match);
        assert_eq!(verdict.samples, 960);
        assert_eq!(verdict.skipped, 0);
        assert!(verdict.max_rel_err <= 1e-13);
    }

    #[test]
    fn first_form_transcription_matches_pipeline() {
        let verdict = audit(FormulaId::ProofEfg, &AuditGrid::default(), 1e-6);
        assert_eq!(verdict.verdict, Verdict::Match);
        assert!(verdict.max_rel_err <= 1e-10);
    }

    #[test]
    fn gauss_transcription_mismatches_pipeline() {
        let verdict = audit(FormulaId::Eq3Gauss, &AuditGrid::default(), 1e-6);
        assert_eq!(verdict.verdict, Verdict::Mismatch);
        assert!(verdict.argmax.is_some());
        assert!(verdict.max_rel_err > 1e-2);
        // At (1, 0) the first two components agree and the third differs by 2.
        let got = match eval_transcribed(FormulaId::Eq3Gauss, 1.0, 0.0).unwrap() {
            FormulaValue::Vector(xs) => xs,
            FormulaValue::Scalar(_) => unreachable!(),
        };
        let n = crate::curvature::gauss_map(&ParametricSurface::tl_surface(), 1.0, 0.0).unwrap();
        close(got[0], n.x1, 1e-12);
        close(got[1], n.x2, 1e-12);
        close((got[2] - n.x3).abs(), 2.0, 1e-12);
    }

    #[test]
    fn too_few_samples_is_inconclusive() {
        let grid = AuditGrid {
            nu_per_range: 1,
            nv: 3,
            ..AuditGrid::default()
        };
        let verdict = audit(FormulaId::Eq2Surface, &grid, 1e-6);
        assert_eq!(verdict.samples, 6);
        assert_eq!(verdict.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn verdicts_are_monotone_in_tolerance() {
        let grid = AuditGrid::default();
        let tight = audit(FormulaId::Cor4H, &grid, 1e-6);
        assert_eq!(tight.verdict, Verdict::Mismatch);
        let loose = audit(FormulaId::Cor4H, &grid, tight.max_rel_err * (1.0 + 1e-12) + 1e-300);
        assert_eq!(loose.verdict, Verdict::Match);
    }

    #[test]
    fn report_is_deterministic_and_consistent() {
        let grid = AuditGrid::default();
        let report = audit_all(&grid, 1e-8);
        assert_eq!(report.verdicts.len(), 18);
        assert_eq!(report.consistency_checks.len(), 3);
        // Ordered by id.
        for pair in report.verdicts.windows(2) {
            assert!(pair[0].formula_id < pair[1].formula_id);
        }
        for pair in report.consistency_checks.windows(2) {
            assert!(pair[0].formula_id < pair[1].formula_id);
        }
        // The transcribed family is internally consistent at 1e-8.
        for check in &report.consistency_checks {
            assert_eq!(check.verdict, Verdict::Match, "{}", check.formula_id);
            assert!(check.evaluated() >= 100);
        }
        // Denominator polynomials never grade against the pipeline.
        for id in ["PHI", "THETA"] {
            let vd = report.verdicts.iter().find(|vd| vd.formula_id == id).unwrap();
            assert_eq!(vd.verdict, Verdict::Inconclusive);
            assert_eq!(vd.skipped, vd.samples);
            assert_eq!(vd.skip_reasons.get("no pipeline counterpart"), Some(&960));
            assert_eq!(vd.argmax, None);
        }
        // Every mismatch carries its worst sample.
        for vd in &report.verdicts {
            if vd.verdict == Verdict::Mismatch {
                assert!(vd.argmax.is_some(), "{}", vd.formula_id);
                assert!(vd.max_rel_err > 0.0);
            }
        }
        let again = audit_all(&grid, 1e-8);
        assert_eq!(report.to_json(), again.to_json());
        assert_eq!(report.to_markdown(), again.to_markdown());
    }

    #[test]
    fn report_json_shape() {
        let grid = AuditGrid {
            nu_per_range: 2,
            nv: 2,
            ..AuditGrid::default()
        };
        let report = audit_all(&grid, 1e-6);
        let json = report.to_json();
        assert!(json.ends_with('\n'));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let top: BTreeSet<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            top,
            BTreeSet::from(["engine_version", "grid", "tolerance", "verdicts", "consistency_checks"])
        );
        let grid_keys: BTreeSet<&str> = value["grid"].as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(grid_keys, BTreeSet::from(["u_ranges", "nu", "v_range", "nv"]));
        for vd in value["verdicts"].as_array().unwrap() {
            let keys: BTreeSet<&str> = vd.as_object().unwrap().keys().map(String::as_str).collect();
            assert_eq!(
                keys,
                BTreeSet::from([
                    "formula_id",
                    "paper_anchor",
                    "samples",
                    "skipped",
                    "max_abs_err",
                    "max_rel_err",
                    "argmax",
                    "tolerance",
                    "verdict",
                ])
            );
            assert!(vd["argmax"].is_null() || vd["argmax"].as_array().unwrap().len() == 2);
        }
    }

    #[test]
    fn minimal_locus_at_quarter_turn() {
        let locus = minimal_locus(FRAC_PI_2);
        assert_eq!(locus.corrected_roots.len(), 2);
        let expected = 2f64.sqrt();
        close(locus.corrected_roots[0].u, -expected, 1e-12);
        close(locus.corrected_roots[1].u, expected, 1e-12);
        for root in &locus.corrected_roots {
            assert!(root.residual <= 1e-12);
        }
        // The transcribed radicand is negative here.
        for branch in &locus.transcribed_roots {
            assert!(branch.radicand < 0.0);
            assert_eq!(branch.u, None);
            assert_eq!(branch.failure, Some("negative radicand"));
        }
    }

    #[test]
    fn minimal_locus_at_zero() {
        let locus = minimal_locus(0.0);
        assert!(locus.corrected_roots.is_empty());
        close(locus.discriminant, -8.0, 1e-12);
        // The transcribed branches exist here but miss the numerator zero set.
        for branch in &locus.transcribed_roots {
            assert_eq!(branch.failure, None);
            close(branch.residual.unwrap(), 8.0, 1e-12);
        }
    }

    #[test]
    fn min_roots_audit_grades_residuals() {
        let verdict = audit(FormulaId::MinRoots, &AuditGrid::default(), 1e-6);
        assert_eq!(verdict.verdict, Verdict::Mismatch);
        // Roughly half the v-values put the radicand below zero.
        assert!(verdict.skipped > 0);
        assert!(verdict.evaluated() >= 100);
        assert_eq!(
            verdict.skip_reasons.keys().copied().collect::<Vec<_>>(),
            vec!["singular denominator"]
        );
    }

    #[test]
    fn counterpart_descriptions_are_nonempty() {
        for entry in registry() {
            assert!(!entry.counterpart.describe().is_empty());
        }
    }

    #[test]
    fn rotational_v_dependence_is_flagged() {
        // The transcribed L depends on v while the pipeline L cannot; the
        // mismatch must already show between two v-samples at fixed u.
        let a = transcribed_scalar(FormulaId::ProofL, 1.0, 0.0).unwrap();
        let b = transcribed_scalar(FormulaId::ProofL, 1.0, PI / 4.0).unwrap();
        assert!((a - b).abs() > 1.0);
        let verdict = audit(FormulaId::ProofL, &AuditGrid::default(), 1e-6);
        assert_eq!(verdict.verdict, Verdict::Mismatch);
    }
}
