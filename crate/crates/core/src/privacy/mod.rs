//! Differentially private learning of finite classes.

mod conditions;
mod generic;
mod histogram;
mod learner;
mod params;
mod regression;

pub use conditions::{check_conditions, sup_cover, sup_distance, ConditionReport, CoverReport, EXACT_COVER_MAX};
pub use generic::{
    generic_private_learner, generic_sample_size, generic_sample_size_with, selection_probabilities,
    Selection, GENERIC_C,
};
pub use histogram::{frequencies, laplace, stable_histogram, HistogramOutput, HistogramRule};
pub use learner::{
    batch_count, private_learn_mc, private_learn_mc_with, Calibration, DpOutcome, DpReport,
    FailureReason, BATCH_C1,
};
pub use params::{BudgetLedger, Debit, PrivacyParams, LEDGER_EPS};
pub use regression::{private_learn_reg, private_learn_reg_with, RegressionReport};
