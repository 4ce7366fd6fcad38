//! A finite-domain constraint solver whose depth-first search is
//! parameterized by how it records and restores states on the path.
//!
//! Restoration strategies:
//!
//! * copying: a full state copy per choice point;
//! * trailing: pre-images of changed domains, undone in place;
//! * recomputation: copies every `d` levels, replaying choices in between;
//! * recollection: copies every `d` levels plus the domains changed at each
//!   level, overlaid onto a copy without re-running propagation.
//!
//! Every strategy explores the same tree, visits the same nodes and finds
//! the same solutions; they differ only in time and memory.
//!
//! ```
//! use recollect::models;
//! use recollect::restoration::Strategy;
//! use recollect::search::{dfs, SearchMode};
//!
//! let p = models::queens(6).unwrap();
//! let r = dfs(p.instantiate().unwrap(), Strategy::Trail, SearchMode::AllSolutions);
//! assert_eq!(r.solutions.len(), 4);
//! ```

pub mod bench;
pub mod domain;
pub mod error;
pub mod models;
pub mod propagation;
pub mod restoration;
pub mod search;
pub mod state;

pub use domain::{Domain, Range, VarId};
pub use error::{Error, Result};
pub use restoration::{Distance, Flavor, Strategy};
pub use search::{dfs, Engine, SearchMode, SearchResult, SearchStats};
pub use state::{ByteModel, State, Status};
