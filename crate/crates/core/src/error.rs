use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// A construction precondition that was checked and found violated.
///
/// Indices are 0-based; `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// The supplied base completion does not complete the base fitting matrix.
    BaseCompletion,
    /// A component completion does not complete its fitting matrix.
    ComponentCompletion { component: usize },
    /// The witness is not an upper-triangulable submatrix of the base.
    WitnessNotTriangulable,
    /// The witness columns are not the columns of the largest component ranks.
    WitnessNotTopRanked { inside_min: usize, outside_max: usize },
    /// The base completion has the wrong rank.
    BaseRank { rank: usize, expected: usize },
    /// The base completion rows picked out by the witness are dependent.
    WitnessRowsDependent,
    /// An encoder that must have full row rank does not.
    NotFullRank { which: Which },
    /// D·G does not complete the base fitting matrix.
    BaseDecoderInvalid,
    /// A component decoder does not pair with its encoder.
    ComponentDecoderInvalid { component: usize },
    /// The ordering does not list component ranks in non-increasing order.
    RankOrder { position: usize },
    /// The base problem is not a directed cycle.
    BaseNotCycle,
    /// A component code is longer than that component's minrank.
    ComponentCodeNotOptimal { component: usize, length: usize, minrank: usize },
}

/// Identifies an input matrix in a [`Condition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Base,
    Component(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch {
        context: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        bound: usize,
    },
    InvalidPermutation,
    BlockDimension {
        block_row: usize,
        block_col: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// A receiver demands a message it already has.
    DemandKnown {
        receiver: usize,
        message: usize,
    },
    MessageOutOfRange {
        receiver: usize,
        message: usize,
        num_messages: usize,
    },
    /// A receiver without any demanded message.
    NoDemand {
        receiver: usize,
    },
    /// No receiver demands this message.
    UndemandedMessage {
        message: usize,
    },
    /// A fitting-matrix row must hold exactly one `1`.
    RowDemand {
        row: usize,
        ones: usize,
    },
    TooManyUnknowns {
        count: usize,
        cap: usize,
    },
    TooManyMessages {
        count: usize,
        cap: usize,
    },
    ComponentCount {
        expected: usize,
        found: usize,
    },
    Precondition(Condition),
    /// A post-check on a construction failed.
    Invariant(&'static str),
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Which::Base => f.write_str("base encoder"),
            Which::Component(c) => write!(f, "encoder of component {}", c + 1),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::BaseCompletion => {
                f.write_str("base completion does not complete the base fitting matrix")
            }
            Condition::ComponentCompletion { component } => write!(
                f,
                "completion of component {} does not complete its fitting matrix",
                component + 1
            ),
            Condition::WitnessNotTriangulable => {
                f.write_str("condition (i): witness is not upper-triangulable in the base")
            }
            Condition::WitnessNotTopRanked {
                inside_min,
                outside_max,
            } => write!(
                f,
                "condition (i): witness columns are not a top-rank set (smallest rank inside {inside_min} < largest rank outside {outside_max})"
            ),
            Condition::BaseRank { rank, expected } => write!(
                f,
                "condition (ii): base completion has rank {rank}, expected {expected}"
            ),
            Condition::WitnessRowsDependent => f.write_str(
                "condition (ii): base completion rows indexed by the witness are dependent",
            ),
            Condition::NotFullRank { which } => write!(f, "{which} is not full row rank"),
            Condition::BaseDecoderInvalid => {
                f.write_str("base decoder times base encoder does not complete the base fitting matrix")
            }
            Condition::ComponentDecoderInvalid { component } => write!(
                f,
                "decoder of component {} does not pair with its encoder",
                component + 1
            ),
            Condition::RankOrder { position } => write!(
                f,
                "ordering is not rank non-increasing at position {}",
                position + 1
            ),
            Condition::BaseNotCycle => f.write_str("base problem is not a directed cycle"),
            Condition::ComponentCodeNotOptimal {
                component,
                length,
                minrank,
            } => write!(
                f,
                "code of component {} has length {length} but its minrank is {minrank}",
                component + 1
            ),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                found,
            } => write!(
                f,
                "{context}: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::IndexOutOfRange {
                context,
                index,
                bound,
            } => write!(f, "{context}: index {} out of range 1..={bound}", index + 1),
            Error::InvalidPermutation => f.write_str("mapping is not a permutation"),
            Error::BlockDimension {
                block_row,
                block_col,
                expected,
                found,
            } => write!(
                f,
                "block ({}, {}): expected {}x{}, found {}x{}",
                block_row + 1,
                block_col + 1,
                expected.0,
                expected.1,
                found.0,
                found.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::DemandKnown { receiver, message } => write!(
                f,
                "receiver {} demands message {} which it already knows",
                receiver + 1,
                message + 1
            ),
            Error::MessageOutOfRange {
                receiver,
                message,
                num_messages,
            } => write!(
                f,
                "receiver {} refers to message {} but there are {num_messages} messages",
                receiver + 1,
                message + 1
            ),
            Error::NoDemand { receiver } => {
                write!(f, "receiver {} demands no message", receiver + 1)
            }
            Error::UndemandedMessage { message } => {
                write!(f, "message {} is demanded by no receiver", message + 1)
            }
            Error::RowDemand { row, ones } => write!(
                f,
                "row {} holds {ones} ones, a fitting matrix row needs exactly one",
                row + 1
            ),
            Error::TooManyUnknowns { count, cap } => write!(
                f,
                "{count} unknown entries exceed the exhaustive search cap of {cap}"
            ),
            Error::TooManyMessages { count, cap } => write!(
                f,
                "{count} messages exceed the exhaustive simulation cap of {cap}"
            ),
            Error::ComponentCount { expected, found } => {
                write!(f, "expected {expected} components, found {found}")
            }
            Error::Precondition(c) => write!(f, "precondition failed: {c}"),
            Error::Invariant(what) => write!(f, "internal invariant violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<Condition> for Error {
    fn from(c: Condition) -> Self {
        Error::Precondition(c)
    }
}
