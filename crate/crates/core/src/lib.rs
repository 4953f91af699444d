pub mod arith;
pub mod congruence;
pub mod data;
pub mod eisenstein;
pub mod error;
pub mod linalg;
pub mod modforms;
pub mod modsym;
pub mod nearlyhol;
pub mod numfield;
pub mod poly;
pub mod qseries;
pub mod rankin;

pub use arith::{DirichletCharacter, Rational};
pub use error::{Error, Result};
pub use numfield::{FieldElem, PrimeIdealRef, QuadField};
pub use qseries::QSeries;
