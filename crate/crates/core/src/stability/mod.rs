//! Tournament distributions and the globally stable learner.

mod g;
mod tournament;

pub use g::{
    block_size, draw_cap, estimate_stability, run_g, stability_bound, GOutput, GRun, GsEstimate,
    GlobalStableLearner, OutputTally, StabilityTrial,
};
pub use tournament::{
    sample_dk_mc, soa_mistake_positions, TournamentOutcome, TournamentSample, TournamentSampler,
};
