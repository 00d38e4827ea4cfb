//! Exact symbolic calculus for tautological classes on Jacobians.
//!
//! The crate has four engines:
//!
//! - [`tautring`]: the free bigraded algebra on the generators `p_i`, `q_i`
//!   over `Q[g]`, with the sl2 operators `e`, `h` and the lowering operator.
//! - [`relations`]: derived tautological relations at a numeric genus
//!   (dimension vanishing closed under the lowering operator and generator
//!   multiplication), with exact membership certificates.
//! - [`curvepow`]: intersection calculus of decorated diagonal classes on
//!   small powers of a curve, including the pullback of the `q_i` along the
//!   sum map from the square of the curve to the Jacobian.
//! - [`cohom`]: an exact Künneth algebra over `Q` (exterior algebras for
//!   abelian factors, truncated curve cohomology) with cup products, Fourier
//!   transforms and the degeneration computation on test families.
//!
//! Everything is exact rational arithmetic; all values are immutable and the
//! operations are pure functions.

pub mod coeff;
pub mod cohom;
pub mod curvepow;
pub mod expr;
pub mod linalg;
pub mod relations;
pub mod tautring;

pub use coeff::GenusPoly;
pub use tautring::{GenKind, TautElement, TautMonomial};
