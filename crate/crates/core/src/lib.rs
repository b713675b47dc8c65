pub mod cliffordks;
pub mod cores;
pub mod error;
pub mod field;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod quadext;
pub mod quadform;
pub mod rmhodge;
pub mod serial;
pub mod spinbranch;
pub mod zlattice;

pub use error::{Error, Result};
