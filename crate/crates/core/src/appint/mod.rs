//! Approximant and interpolant bases.

mod mbasis;
mod pmbasis;

pub use mbasis::{m_intbasis_with, mbasis, mbasis1, mbasis1_compact, mbasis_with, OrderOneBasis, Residual};
pub use pmbasis::{m_intbasis, pm_intbasis, pm_intbasis_with, pmbasis, pmbasis_with, EvalPoints};
