use thiserror::Error;

/// Failures inside jet arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum JetError {
    /// Divisor's value slot is within the guard band of zero.
    #[error("jet division by near-zero value ({value:e})")]
    DivisionNearZero { value: f64 },
    /// Square root of a jet whose value slot is not positive.
    #[error("jet sqrt of non-positive value ({value:e})")]
    SqrtDomain { value: f64 },
    /// Requested partial exceeds the stored total degree.
    #[error("partial of order ({ord_u},{ord_v}) exceeds jet degree 3")]
    OrderTooHigh { ord_u: usize, ord_v: usize },
}

/// Failures of geometric evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeomError {
    /// Parameter fell inside the excluded band around the profile's
    /// degenerate point.
    #[error("u = {u:e} lies in the excluded band |u| < {band:e}")]
    DomainExcluded { u: f64, band: f64 },
    /// |det I| under the metric guard: normal and shape data undefined.
    #[error("degenerate first fundamental form, det I = {det_i:e}")]
    DegenerateMetric { det_i: f64 },
    /// |det II| under the guard: the third-form operator is undefined.
    #[error("parabolic point, det II = {det_ii:e}")]
    ParabolicPoint { det_ii: f64 },
    /// A transcribed reference expression's own denominator vanished.
    #[error("singular denominator in transcribed expression: {0}")]
    SingularDenominator(&'static str),
    #[error(transparent)]
    Jet(#[from] JetError),
}
