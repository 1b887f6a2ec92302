//! Exact models of numerical quotients of rigid symmetric monoidal categories,
//! their bounded homotopy categories, and the numerical functors between them.

pub mod bench;
pub mod catcore;
pub mod homotopy;
pub mod numfun;
pub mod qlinalg;
