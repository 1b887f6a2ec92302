//! Bounded complexes over the model category and their homotopy category.

mod axioms;
mod complex;
mod hom;
mod minimize;
mod tensor;
mod weights;

pub use axioms::*;
pub use complex::*;
pub use hom::*;
pub use minimize::*;
pub use weights::*;
