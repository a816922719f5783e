//! ANOVA, correlation and distribution tails.

mod anova;
mod correlation;
mod dist;

pub use anova::{anova_factorial, anova_mixed, AnovaCell, AnovaTable, ErrorTerm, Observation, SubjectObservation};
pub use correlation::{average_ranks, pearson, spearman, CorrelationResult};
pub use dist::{f_survival, normal_cdf, t_two_sided};
