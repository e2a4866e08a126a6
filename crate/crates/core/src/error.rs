use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points are not in convex position")]
    NotConvex,
    #[error("angle is undefined when the vertex coincides with an endpoint")]
    DegenerateAngle,
    #[error("perpendicular bisector is undefined for coincident points")]
    CoincidentEndpoints,
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("edge endpoints must be distinct members of the cap")]
    InvalidEdge,
    #[error("point sequence does not form a cap")]
    NotCap,
    #[error("cap size {0} is not even")]
    OddCapSize(usize),
    #[error("bisector of edge ({0}, {1}) meets more than two points")]
    TooManyBisectorPoints(usize, usize),
    #[error("edge ({0}, {1}) has more than one witness candidate")]
    AmbiguousWitness(usize, usize),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("instance too small: {0}")]
    InstanceTooSmall(String),
    #[error("duplicate parameter {0}")]
    DuplicateParameter(String),
    #[error("invalid arithmetic-progression instance: {0}")]
    InvalidAp3(String),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("angular scale too large: the image spans more than a semicircle")]
    ScaleTooLarge,
    #[error("rejection budget exhausted after {0} attempts")]
    RejectionBudget(usize),
    #[error("format error: {0}")]
    Format(String),
}
