use crate::element::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("window {0} has an odd number of negative entries")]
    OddParity(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("family mismatch: {left} vs {right}")]
    FamilyMismatch { left: Family, right: Family },

    #[error("generator s_{index} is out of range for {family}_{rank}")]
    GeneratorOutOfRange {
        family: Family,
        rank: usize,
        index: usize,
    },

    #[error("value {value} is out of range for rank {rank}")]
    ValueOutOfRange { value: i32, rank: usize },

    #[error("hop list repeats {0}")]
    DuplicateListItem(i32),

    #[error("malformed unfolding: {0}")]
    MalformedUnfolding(String),

    #[error("malformed parabolic factor: {0}")]
    MalformedFactor(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{family}_{rank} exceeds the supported rank {limit} for {what}")]
    RankTooLarge {
        family: Family,
        rank: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("{family}_{rank} has {order} elements, over the table budget of {budget}")]
    TableBudget {
        family: Family,
        rank: usize,
        order: u128,
        budget: usize,
    },

    #[error("{0} is not an element of the table's group")]
    NotInGroup(String),

    #[error("element length {length} exceeds the interval bound {bound}")]
    LengthBound { length: usize, bound: usize },

    #[error("{0}")]
    Unsupported(String),
}
