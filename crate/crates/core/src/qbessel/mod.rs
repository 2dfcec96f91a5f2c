//! Jackson q-Bessel functions `J_ν^(j)` and modified q-Bessel functions
//! `I_ν^(j)` of kinds 1–3, their difference equation, ladder and
//! recurrence identities, and q-Wronskians.

pub(crate) mod identities;
mod kind;
mod series;
pub(crate) mod wronskian;

pub use identities::{diffeq_residual, ladder_check, recurrence_check, Ladder, Recurrence, Residual};
pub use kind::Kind;
pub(crate) use series::kind1_pole;
pub use series::{i_eval_path, jackson_j, modified_i, BesselPoint, EvalPath, KIND1_SWITCH};
pub use wronskian::{fundamental_system_degenerate, q_wronskian, wronskian_closed_form_ii, WronskianPair};
