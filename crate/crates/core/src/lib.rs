//! Ribbon graphs as signed rotation systems, their partial duals and
//! partial Petrials, and the Euler-genus polynomials obtained by summing
//! over all edge subsets.

pub mod catalog;
mod edit;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod poly;
pub mod recursions;
pub mod reproduce;
pub mod twuality;
pub mod verify;

pub use enumerate::EnumOptions;
pub use error::{Error, ErrorClass, Result};
pub use format::{parse_rg, render_rg};
pub use graph::{Edge, EdgeId, FaceWalk, Flag, HalfEdge, RibbonGraph, VertexId};
pub use poly::GenusPolynomial;
pub use twuality::{EdgeSubset, Twuality, TwualityWord};
