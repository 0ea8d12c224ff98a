//! Discrete weak KAM theory on finite cost instances.
//!
//! Given points `X = {0, .., n-1}` and a one-step cost `c(x, y)`, the crate
//! computes the critical constant `alpha0`, the Mane potential, the Peierls
//! barrier, weak KAM solutions, Aubry sets and strict critical
//! sub-solutions. Every identity is checked exactly over rationals, or up
//! to a tolerance in float mode, and cross-checked against the brute-force
//! references in [`oracle`].
//!
//! ```
//! use wkam::tropical::{rat, CostInstance};
//!
//! let inst = CostInstance::from_rows(vec![
//!     vec![rat(2, 1), rat(0, 1)],
//!     vec![rat(1, 1), rat(3, 1)],
//! ])
//! .unwrap();
//! let crit = wkam::critical::critical_value(&inst).unwrap();
//! assert_eq!(crit.alpha0, rat(-1, 2));
//! ```

pub mod barrier;
pub mod cli;
pub mod critical;
pub mod error;
pub mod models;
pub mod oracle;
pub mod potential;
pub mod subsolution;
pub mod tropical;

pub use error::{Result, WkamError};
