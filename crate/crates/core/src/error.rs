use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A position was supplied both as a plain cell and as a ghost cell.
    #[error("position ({row},{col}) appears as both a plain and a ghost cell")]
    Overlap { row: u32, col: u32 },

    /// Rows and columns are 1-based; zero is not a valid coordinate.
    #[error("position ({row},{col}) is out of range: rows and columns start at 1")]
    InvalidPosition { row: u32, col: u32 },

    /// Grid text contained a character other than '.', 'O', 'X'.
    #[error("unexpected character {found:?} at line {line}, column {col}")]
    Parse { line: usize, col: usize, found: char },

    /// An operation that requires a ghost-free diagram was given ghosts.
    #[error("diagram contains ghost cells; operation is defined for ghost-free diagrams only")]
    GhostSeed,

    /// Closure search grew beyond the configured node cap.
    #[error("closure exceeded the node cap of {0}")]
    CapExceeded(usize),

    /// The edge relation fed to the poset layer contained a cycle.
    #[error("edge relation is cyclic; move edges must form a DAG")]
    Cycle,

    /// An evaluation point had fewer coordinates than the polynomial has variables.
    #[error("evaluation point has {got} coordinates but {needed} variables appear")]
    Arity { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
