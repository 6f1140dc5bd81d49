// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("out of bounds: {0}")]
    OutOfBounds(String),

    /// A window class whose stride rounds down to zero.
    #[error("degenerate window stride for class (h={h}, w={w})")]
    DegenerateStride { h: u32, w: u32 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{rows}x{cols} is too large for exhaustive search (limit {limit} cells)")]
    TooLarge {
        rows: usize,
        cols: usize,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn bounds(msg: impl Into<String>) -> Self {
        Error::OutOfBounds(msg.into())
    }
}
