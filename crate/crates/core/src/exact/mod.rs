//! Exact scalars: big rationals, quadratic irrationals and certified
//! enclosures of π and e.

mod alg;
mod between;
mod enclosure;
mod integer;
mod surd_sum;

pub use alg::{format_sig, AlgNum, ArithOp, QuadExt, Rat};
pub use between::rational_between;
pub use enclosure::{
    floor_enclosure, Constants, Enclosure, FloorOutcome, BUNDLED_CONSTANTS, CONSTANTS_ENV,
};
pub use integer::{extended_gcd, is_perfect_square, isqrt, mod_inverse, squarefree_decompose};
pub use surd_sum::SurdSum;
