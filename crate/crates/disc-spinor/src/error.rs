//! Error type shared across the library.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
///
/// Domain errors (invalid inputs) and accuracy errors (a numerical check
/// inside an operation did not meet its budget) share this enum; callers that
/// need to distinguish them can match on the variant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("disc radius must be positive and finite, got rho0 = {rho0}")]
    RadiusNotPositive { rho0: f64 },

    #[error("coordinate radius rho = {rho} lies outside [0, inf)")]
    RhoInvalid { rho: f64 },

    #[error("x = {x} lies outside [-1, 1]")]
    XOutOfDomain { x: f64 },

    #[error("x = {x} maps to infinite coordinate radius")]
    XAtInfinity { x: f64 },

    #[error("evaluation at x = {x} touches the endpoints x = +/-1")]
    BoundaryTouched { x: f64 },

    #[error("spin-connection parameter epsilon = {epsilon} lies outside [0, 1/2)")]
    EpsilonOutOfRange { epsilon: f64 },

    #[error("field strength must lie in (0, 1/2], got {strength}")]
    FieldStrengthOutOfRange { strength: f64 },

    #[error("order n = {n} exceeds degree l = {l}")]
    OrderExceedsDegree { l: u32, n: u32 },

    #[error("identity requires order n >= {min_n}, got n = {n}")]
    OrderTooSmall { n: u32, min_n: u32 },

    #[error("unknown identity name `{name}`")]
    UnknownIdentity { name: String },

    #[error("request needs at least {needed} quadrature nodes, got {got}")]
    InsufficientNodes { needed: usize, got: usize },

    #[error("sample count {samples} does not match quadrature node count {nodes}")]
    SampleCountMismatch { nodes: usize, samples: usize },

    #[error("weight exponents must exceed -1, got alpha = {alpha}, beta = {beta}")]
    WeightExponentOutOfRange { alpha: f64, beta: f64 },

    #[error("dimension d = {d} unsupported; need even d with 2 <= d <= 10")]
    UnsupportedDimension { d: u32 },

    #[error("invalid index pair ({a}, {b}) for dimension d = {d}")]
    InvalidIndexPair { a: u32, b: u32, d: u32 },

    #[error("k^2 must equal {required_square:+} for the index pair ({a}, {b})")]
    InvalidK { a: u32, b: u32, required_square: f64 },

    #[error("state vector is zero")]
    ZeroState,

    #[error("state is not a spin eigenvector (relative deviation {deviation:.3e})")]
    IndefiniteSpin { deviation: f64 },

    #[error("operation requires dimension d >= {min_d}, got d = {d}")]
    DimensionTooSmall { d: u32, min_d: u32 },

    #[error(
        "coefficient recursion is overdetermined at (epsilon = {epsilon}, n = {n}, \
         l0 = {l0}): lowest-degree consistency residual {residual:.6e} exceeds 1e-8"
    )]
    RecursionInconsistent {
        epsilon: f64,
        n: u32,
        l0: u32,
        residual: f64,
    },

    #[error("a tower with l0 = 0 carries no companion profile")]
    NoBMode,

    #[error("perturbation degree l = {l} lies outside the tower range [{n}, {l0}]")]
    PerturbDegreeOutOfRange { l: i64, n: u32, l0: u32 },

    #[error("scan mass m_sq = {m_sq} is degenerate with the recursion at degree l = {l}")]
    DegenerateScanMass { m_sq: f64, l: u32 },

    #[error("scan range l_stop = {l_stop} too short: need l_stop >= n + {min_span} with n = {n}")]
    ScanRangeTooShort { l_stop: u32, n: u32, min_span: u32 },

    #[error("endpoint coefficients are available for the n = 0 branch only, got n = {n}")]
    EndpointOrderUnsupported { n: u32 },

    #[error("projection order l_max = {l_max} below required minimum {min}")]
    ProjectionOrderTooLow { l_max: u32, min: u32 },

    #[error("quadrature did not settle: relative change {delta:.3e} after node doubling")]
    QuadratureNotConverged { delta: f64 },

    #[error("eigenvalue oracle did not settle: max shift {max_shift:.3e} after grid doubling")]
    OracleNotConverged { max_shift: f64 },
}
