//! Universal sets and tuples in finite groups, additive bases built from
//! them, and the graph counting behind basis powers.

pub mod basis;
pub mod error;
pub mod ff;
pub mod group;
pub mod par;
pub mod powers;
pub mod rng;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use group::{make_group, product_set, translate, Group, GroupSpec, Subset};
pub use par::Exec;
pub use verify::{Strategy, Verdict, VerifyMode, VerifyOptions};
