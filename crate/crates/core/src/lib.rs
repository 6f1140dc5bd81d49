// SPDX-License-Identifier: Apache-2.0

//! Maximum-perimeter matching frames in two-dimensional strings.
//!
//! A frame is the boundary of a rectangle with at least two rows and two
//! columns. It matches when its top row equals its bottom row and its left
//! column equals its right column.

pub mod approx;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod exact;
pub mod grid;
pub mod index;
pub mod io;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod range;
pub mod scds;
pub mod suffix;

pub use approx::{approx_max_frame, decide};
pub use error::{Error, Result};
pub use exact::max_matching_frame;
pub use grid::{Frame, Matrix};
pub use index::MatrixIndex;
