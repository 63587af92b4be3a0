//! Both sides of every inequality as one-dimensional radial integrals.

mod cases;
mod hyperbolic;
mod registry;
mod remainder;
mod report;
mod sample;
mod suite;
mod sweep;

pub use cases::hyperbolic_dx_constant;
pub use hyperbolic::hyperbolic_weight_constant;
pub use registry::{CaseId, InequalityCase};
pub use remainder::{remainder_rp, remainder_rp_integral_form};
pub use report::{
    evaluate_case, evaluate_case_with, identity_residual, quantitative_case, rellich2_chain, EvalOptions,
    IntegralRecord, RellichChain, Status, VerificationReport,
};
pub use suite::{expand, run_suite, BetaChoice, Cell, CellOutcome, Grid};
pub use sweep::{hardy_side_terms, sharpness_sweep, sharpness_sweep_with, SweepPoint};
