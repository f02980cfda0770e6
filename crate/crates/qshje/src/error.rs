use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("potential evaluation outside tabulated range: x = {x}, range [{lo}, {hi}]")]
    PotentialRange { x: f64, lo: f64, hi: f64 },

    #[error("invalid potential: {0}")]
    Potential(String),

    #[error("anchor x0 = {0} is not an interior grid node")]
    AnchorNotOnGrid(f64),

    #[error("solution overflow in classically forbidden region near x = {x:.6} (|y| > {limit:.1e}); shrink the domain or move x0")]
    ForbiddenOverflow { x: f64, limit: f64 },

    #[error("degenerate microstate: mu*nu - sigma*gamma = {0:.3e} is too close to zero")]
    DegenerateMicrostate(f64),

    #[error("amplitude must be strictly positive; violated near x = {0:.6}")]
    NonpositiveAmplitude(f64),

    #[error("branch tracking failed: angle jump {jump:.4} rad exceeds pi/2 between x = {x_prev:.6} and x = {x:.6}; refine the grid")]
    BranchJump { x_prev: f64, x: f64, jump: f64 },

    #[error("wave function vanishes inside the integration interval near x = {0:.6}; split the interval at the nodes")]
    NodeInInterval(f64),

    #[error("state classification: {0}")]
    Classification(String),

    #[error("gauge factor must be nonzero")]
    ZeroGauge,

    #[error("zero superposition: C1 = C2 = 0")]
    ZeroCoefficients,

    #[error("energy differentiation failed: branches at E+dE and E-dE drift apart by {0:.4} rad even after refinement; reduce dE")]
    EnergyBranchMismatch(f64),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
