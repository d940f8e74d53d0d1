//! Executable finite models of notions of size — syndetic, thick, piecewise
//! syndetic — in semigroups, together with their filter-relative
//! generalizations, plus symbolic eventually-periodic subsets of the
//! positive integers.
//!
//! The crate is organized so that every structural fact it relies on can be
//! checked two ways: decision procedures compute each answer along multiple
//! independent routes and refuse to return when the routes disagree, and the
//! test suites sweep the same claims exhaustively at small orders.

pub mod enumerate;
pub mod error;
pub mod filter;
pub mod mask;
pub mod natset;
pub mod relative;
pub mod semigroup;
pub mod size;
pub mod stack;
pub mod unreduced;

pub use enumerate::{catalog_up_to, enumerate_semigroups, random_semigroup};
pub use error::{Error, Result};
pub use filter::{FilterKernel, PointUltrafilter};
pub use mask::SubsetMask;
pub use natset::{factorial_example_window, EpClassification, EventuallyPeriodicSet, WindowSet};
pub use relative::{Decomposition, RelativeContext};
pub use semigroup::{KernelReport, NamedKind, Semigroup};
pub use size::{is_piecewise_syndetic, is_syndetic, is_thick, Notion, SizeVerdict, Witness};
pub use stack::Stack;
