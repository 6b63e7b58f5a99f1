//! Exact arithmetic in F_q and F_q[Y].

mod field;
mod poly;

pub use field::{Ctx, FieldCtx, Fq};
pub use poly::{Degree, Poly, Val};
