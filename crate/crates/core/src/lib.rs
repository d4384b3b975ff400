//! Ree groups, their unitals, and string C-group verification.

pub mod bignum;
pub mod cgroup;
pub mod error;
pub mod gf3;
pub mod oracles;
pub mod perm;
pub mod rank3;
pub mod ree;
pub mod unital;

pub use error::{Error, Result};
