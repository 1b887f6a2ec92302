//! The two numerical functors on the homotopy category: `π`, degreewise
//! semisimplification of minimal models, and `p`, the quotient by the
//! numerical ideal.

mod checks;
mod graded;
mod pi;
mod trace;

pub use checks::*;
pub use graded::*;
pub use pi::*;
pub use trace::*;

/// Default depth for power and nilpotency searches.
pub const DEFAULT_BOUND: usize = 8;
