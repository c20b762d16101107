use thiserror::Error;

/// Crate-wide error type. Variants are grouped into validation failures
/// (bad inputs, rejected by precondition checks) and numerical failures
/// (the computation ran but could not deliver the requested accuracy).
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0}; expected 2 or 3")]
    UnsupportedDimension(usize),

    #[error("strong convexity violated: {0}")]
    ConvexityViolation(String),

    #[error("material pair inadmissible: {0}")]
    InadmissiblePair(String),

    #[error("degenerate shape: {0}")]
    DegenerateShape(String),

    #[error("shape grammar: {0}")]
    ShapeGrammar(String),

    #[error("mesh error: {0}")]
    Mesh(String),

    #[error("evaluation point on or too close to the surface: dist {dist:.3e} < cutoff {cutoff:.3e} (est. rel. error {est_rel_err:.2e})")]
    NearSurface {
        dist: f64,
        cutoff: f64,
        est_rel_err: f64,
    },

    #[error("evaluation at the kernel singularity")]
    AtSingularity,

    #[error("linear system singular or ill-conditioned (cond = {cond:.3e})")]
    SingularSystem { cond: f64 },

    #[error("rank-deficient sample set: {0}")]
    RankDeficient(String),

    #[error("fit residual {residual:.3e} exceeds threshold {threshold:.3e}; quadrature under-resolved")]
    FitResidual { residual: f64, threshold: f64 },

    #[error("zero contrast: {0}")]
    ZeroContrast(String),

    #[error("contrast sign inadmissible for the variational branch: requires kappa_tilde > kappa (mu_tilde > mu)")]
    ContrastSign,

    #[error("maximizer did not converge within {iters} iterations (residual {residual:.3e})")]
    NonConvergence { iters: usize, residual: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("non-symmetric input: {0}")]
    NonSymmetric(String),

    #[error("eigen-decomposition failure: {0}")]
    EigenFailure(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    /// CLI exit code class: 2 for validation errors, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedDimension(_)
            | Error::ConvexityViolation(_)
            | Error::InadmissiblePair(_)
            | Error::DegenerateShape(_)
            | Error::ShapeGrammar(_)
            | Error::Mesh(_)
            | Error::NonSymmetric(_)
            | Error::ZeroContrast(_)
            | Error::ContrastSign
            | Error::Io(_)
            | Error::Json(_)
            | Error::Config(_) => 2,
            Error::NearSurface { .. }
            | Error::AtSingularity
            | Error::SingularSystem { .. }
            | Error::RankDeficient(_)
            | Error::FitResidual { .. }
            | Error::NonConvergence { .. }
            | Error::GridTooCoarse(_)
            | Error::EigenFailure(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
