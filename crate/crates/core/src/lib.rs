//! Polynomial matrix arithmetic over prime fields.

pub mod appint;
pub mod detred;
pub mod error;
pub mod forms;
pub mod fraction;
pub mod kernel;
pub mod matrix;
pub mod modring;
pub mod oracle;
pub mod polmat;
pub mod solve;
pub mod sylres;
pub mod upoly;
pub mod tuning;

pub use error::{Error, Result};
pub use forms::Shift;
pub use matrix::Mat;
pub use modring::{FieldCtx, NttPlan};
pub use polmat::PolMat;
pub use upoly::Poly;
