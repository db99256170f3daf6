//! Numerical certification for a family of close-to-convex analytic function
//! classes on the unit disk.
//!
//! The library works with truncated power series and produces *sampled
//! sub-disk certificates*: a claimed analytic inequality is checked on a
//! dense polar grid, and the reported margin is discounted by a rigorous
//! truncation-tail allowance at the outermost radius.  A passing certificate
//! is strong numerical evidence on the sampled sub-disk, not a proof on the
//! open disk.
//!
//! Modules:
//! - [`series`]: truncated complex power series arithmetic,
//! - [`disk`]: polar sampling grids and range statistics,
//! - [`classes`]: class parameters, witness products, and certificates,
//! - [`synthesis`]: member construction, transforms, and random generators,
//! - [`bounds`]: coefficient and functional bounds with verification reports,
//! - [`suite`]: the seeded deterministic property suite.

pub mod bounds;
pub mod classes;
pub mod disk;
pub mod error;
pub mod series;
pub mod suite;
pub mod synthesis;

pub use error::{Error, Result};
pub use series::TruncatedSeries;
pub use suite::CERT_ORDER;
