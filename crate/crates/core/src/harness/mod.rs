//! Experiment runner, regression tables and verification suites.

mod expect;
mod experiment;
mod report;
mod roster;
mod run;
mod verify;

pub use expect::{Comparison, ComparisonRow, Expectations};
pub use experiment::{ExperimentSpec, HarnessConfig, KRange, OutputFormat, SourceInput, Task};
pub use report::{
    BoundRow, ClassifyReport, ComplexityReport, ComplexityRow, DecomposeReport, Document, RecurrenceReport,
    RecurrenceRow, Report, SharedRow, SharedWindowReport,
};
pub use roster::{aperiodic_roster, periodic_roster, recurrent_pairs, RosterEntry};
pub use run::{run, Outcome};
pub use verify::{nested_maximal_window, verify_suite, verify_suite_with, Check, SuiteName, SuiteSummary, VerifyOptions};
