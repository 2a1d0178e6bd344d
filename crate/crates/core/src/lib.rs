pub mod arith;
pub mod cli;
pub mod budget;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod spectrum;
pub mod tate;
pub mod weil;

pub use budget::Budget;
pub use cyclotomic::CycInt;
pub use error::{Error, ErrorKind, Result};
pub use field::{CharacterIndex, Elem, FieldSpec, FieldTable};
pub use spectrum::{Eigenvalue, Factor, Spectrum, ZetaFunction};
pub use weil::{Coefficients, ExponentTuple};
