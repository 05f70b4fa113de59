//! Exact analysis of the dilated floor difference
//! `f_α(n) = ⌊α²n⌋ − ⌊α⌊αn⌋⌋`.
//!
//! * [`exact`]: rationals, quadratic irrationals, certified constants.
//! * [`floorfn`]: evaluation of `f_α` and its floor/ceiling variants.
//! * [`rational`]: exact ranges for rational `α` and the closed forms.
//! * [`irrational`]: observed ranges and witness searches for irrational `α`.
//! * [`am`]: the sets `A_m = {α ∈ (0,1] : f_α(m) = 1}` as exact interval unions.
//! * [`acceptance`]: the end-to-end verification suite.

pub mod acceptance;
pub mod am;
pub mod error;
pub mod exact;
pub mod floorfn;
pub mod irrational;
pub mod rational;
pub mod sets;

pub use error::{Error, Result};
pub use exact::{AlgNum, Enclosure, QuadExt, Rat};
