//! Exact computations with the odd nilpotent cone of the classical Lie
//! superalgebras `gl(m|n)`, `sl(m|n)`, `osp`, `q(n)` and `p(n)`.

pub mod exact_linalg;
pub mod superalgebra;
pub mod nilcone;
pub mod orbit_census;
pub mod canonical_form;
pub mod cli;
