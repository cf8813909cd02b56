use thiserror::Error;

pub type Result<T, E = GeoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("point is off its model space (constraint residual {residual:e})")]
    OffManifold { residual: f64 },

    #[error("vector is not tangent at its base point (residual {residual:e})")]
    NotTangent { residual: f64 },

    #[error("immersion degenerates at u = {u:?}: smallest singular value {sigma:e}")]
    DegeneratePoint { u: [f64; 3], sigma: f64 },

    #[error("adapted frame undefined: 1 - C^2 = {gap:e}")]
    FrameDegenerate { gap: f64 },

    #[error("focal point reached: |det Q| = {det:e}")]
    FocalPoint { det: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("denominator 1 {sign} C vanishes at C = {c}")]
    DegenerateDenominator { sign: char, c: f64 },

    #[error("invalid example: {0}")]
    InvalidExample(String),

    #[error("polynomial has no nonzero coefficient")]
    ZeroPolynomial,

    #[error("alpha4 is required for the S2xH2 case")]
    MissingAlpha4,
}
