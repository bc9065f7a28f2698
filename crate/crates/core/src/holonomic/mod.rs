//! Differential operators in `D = t·d/dt`, the recurrences they induce,
//! exact solutions, the Frobenius basis at the maximal unipotent point,
//! the mirror map, and estimation of Apery limits.
//!
//! An operator `Σ b_ij tⁱ Dʲ` acting on `Σ u(n) tⁿ` gives the recurrence
//! `Σ_i P_i(n)·u(n−i) = 0` with `P_i(n) = Σ_j b_ij (n−i)ʲ`.

mod binomial;
mod frobenius;
mod limit;
mod operator;
mod recurrence;
mod table;

pub use binomial::{apery_binomial_oracle, apery_binomial_oracle_with, InnerExponent};
pub use frobenius::{apply_to_log_series, frobenius_mum, mirror_map};
pub use limit::{apery_limit, estimate_limit, ratio_limit, ApproxLimit, LimitMethod};
pub use operator::{mukai_operator, DiffOp, Variety};
pub use recurrence::{
    apery_pair, denominator_bound_check, op_to_recurrence, pair_from_recurrence,
    regularize_recurrence, solve, Normalization, Recurrence, SeqPair,
};
pub use table::{tabulated_constant, TabulatedConstant};
