use thiserror::Error;

/// Which of the input-angle conditions was violated by a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionTag {
    /// `beta_sigma + gamma/2 < pi` on both sides and `beta_L + beta_R + gamma/2 > pi`.
    I,
    /// `gamma > 0`.
    Ii,
    /// `delta_sigma >= 0`.
    IiiA,
    /// `delta_sigma < beta_sigma` on both sides.
    IiiB,
    /// `gamma + delta_L + delta_R < pi`.
    IiiC,
}

impl std::fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConditionTag::I => "i",
            ConditionTag::Ii => "ii",
            ConditionTag::IiiA => "iii.a",
            ConditionTag::IiiB => "iii.b",
            ConditionTag::IiiC => "iii.c",
        };
        f.write_str(s)
    }
}

/// Left or right side of a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    /// The other side.
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Suffix used in vertex and edge labels.
    pub fn suffix(self) -> &'static str {
        match self {
            Side::Left => "L",
            Side::Right => "R",
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.suffix())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate point: {0}")]
    DegeneratePoint(&'static str),

    #[error("point is not on the minor arc: {0}")]
    NotOnArc(&'static str),

    #[error("no intersection: {0}")]
    NoIntersection(&'static str),

    #[error("invalid raw parameter: {0}")]
    InvalidRawParams(&'static str),

    #[error("condition ({tag}) violated: {detail}")]
    ConditionViolation { tag: ConditionTag, detail: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("positive gadget not constructible on side {side}: phi_{side} = {phi} > 2 zeta_{side} = {zeta2}")]
    NotConstructible { side: Side, phi: f64, zeta2: f64 },

    #[error("dividing angle phi_L = {0} lies outside (0, gamma)")]
    DegenerateDividing(f64),

    #[error("canonical solution out of range: {0}")]
    SolutionOutOfRange(String),

    #[error("canonical bracket violated: {0}")]
    BracketViolation(String),

    #[error("invalid crease pattern: {0}")]
    InvalidPattern(String),

    #[error("parameter sampling exhausted after {0} rejections")]
    SamplingExhausted(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
