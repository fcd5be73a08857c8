//! Matrix product codes over finite commutative Frobenius rings.

pub mod classify;
pub mod code;
pub mod error;
pub mod limits;
pub mod matrix;
pub mod json;
pub mod mpc;
mod poly;
pub mod repro;
pub mod search;
pub mod ring;

pub use code::{inner_product, Code, CodeKind, CodeParams, RowCodeDirection, Words};
pub use error::{Error, Result};
pub use limits::Limits;
pub use matrix::{Extension, FrrCertificate, RingMatrix};
pub use ring::{make_ring, Elem, Ring, RingSpec, WeightTable};
pub use classify::{Direction, Lemma46Decomposition, ProfileSets, SfrrProfile};
pub use mpc::{BoundReport, MpcSpec, ReportOptions, Thm51Bounds};
