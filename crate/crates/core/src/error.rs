use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A set bit would land at or past the word width.
    #[error("bitstream overflow: {needed} bits needed, capacity is {capacity}")]
    Overflow { needed: u32, capacity: u32 },

    #[error("bit range {start}..={end} out of range for capacity {capacity}")]
    IndexOutOfRange { start: u32, end: u32, capacity: u32 },

    #[error("not a left-element set with conductor {conductor}: {reason}")]
    InvalidLeftElements { conductor: u32, reason: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{element} is not a right generator of the semigroup")]
    NotRightGenerator { element: u32 },

    #[error("{element} is not in the order-{order} seed window")]
    OutsideSeedWindow { element: u32, order: u32 },

    /// A node of this genus needs a conductor wider than the bitstream.
    #[error("capacity exhausted at genus {genus}: conductor {conductor} exceeds {capacity} bits")]
    CapacityExhausted { genus: u32, conductor: u32, capacity: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
