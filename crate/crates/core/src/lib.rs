//! Exact kernel for the Temperley-Lieb-Jones planar algebra and its
//! lowest-weight-zero annular modules.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`]: exact arithmetic in `Q(q)` and `Q(q)[t]`, quantum integers.
//! * [`tl`]: rectangular Temperley-Lieb diagrams and the algebra `TL_m`.
//! * [`jones_wenzl`]: Jones-Wenzl idempotents by Wenzl's recursion.
//! * [`annular`]: the annular modules `V(t)`, Gram matrices, annular trace
//!   and elementary annular tangles.
//! * [`se_algebra`]: the graded algebra `⊕ D(n, m)` with its product,
//!   involution and trace, plus the bimodule action on `⊕ H_{i,j}`.
//! * [`report`]: CPAI coefficients, sweeps, the expression language and the
//!   aggregated certificate behind the `tlj` CLI.

pub mod annular;
pub mod error;
pub mod jones_wenzl;
pub mod matching;
pub mod report;
pub mod scalar;
pub mod se_algebra;
pub mod tl;

pub use error::{Error, Result};
pub use scalar::{qint, qint_t, NumericParams, Scalar, TPoly};
