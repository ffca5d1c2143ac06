//! The Cantor-type subset `G(M)` of the level set `E(α, β)` and the
//! machinery used to bound its dimension from below.
//!
//! Positions of a `G(M)` digit string come in three roles: runs of 2's of
//! length `m_k` starting after `n'_k`, separator digits `2M` at `n'_k` and
//! every `m_k` positions after the run, and free digits in `[2, M]`.
//! Deleting the separators (the map `f`) leaves the admissible words `D_n`,
//! which carry the fundamental intervals, the measure `μ` and the gap bound.

mod admissible;
mod holder;
mod measure;
mod point;
mod schedule;

pub use admissible::{
    count_d_n, enumerate_d_n, free_count, fundamental_interval, gap, gap_check, gap_table,
    AdmissibleWord, FundamentalInterval, GapEntry, GapSummary, DEFAULT_WORD_BUDGET,
};
pub use holder::{holder_estimate, HolderFit};
pub use measure::{mass_check, mass_length_report, MassCheck, MassDistribution, MassLengthReport};
pub use point::{
    block_ratios, deletion_count, deletion_positions, generate_point, project_f, run_profile_check,
    validate_point, BlockRatios, Fill, ProfileMismatch, ProfileReport,
};
pub use schedule::{Role, Schedule, ScheduleRecord};
