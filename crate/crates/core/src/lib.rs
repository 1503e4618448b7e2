//! Finite n-quandles of links.
//!
//! Presentations for two-bridge links, torus links and torus links with
//! axis are enumerated into Cayley graphs with Winker's method, turned into
//! operation tables, and analysed through their automorphism, inner and
//! transvection groups.

pub mod enumerator;
pub mod error;
pub mod groups;
pub mod links;
pub mod presentation;
pub mod quandle;
pub mod report;
pub mod tables;
pub mod words;

pub use enumerator::{enumerate, CayleyTable, DEFAULT_CAP};
pub use error::{Error, Result};
pub use groups::{automorphism_group, group_isomorphic, inner_group, transvection_group, Catalog, GroupSpec, PermGroup};
pub use presentation::{parse_presentation, QuandlePresentation};
pub use quandle::FiniteQuandle;
