//! Continued fraction expansions of quadratic irrationals in the field of
//! formal Laurent series `F_q((1/Y))`, the Artin map and its natural
//! extension, Hecke-ray degree-escape experiments and exact invariant
//! measure computations.

pub mod algebra;
pub mod cfe;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod natext;
pub mod surd;

#[cfg(test)]
mod testutil;

pub use algebra::{Ctx, Degree, FieldCtx, Fq, Poly, Val};
pub use error::{Error, Result};
pub use laurent::Laurent;
pub use natext::{AtomicMeasure, NatExtPair};
pub use surd::{Kernel, Moebius, QuadElem, Surd};
