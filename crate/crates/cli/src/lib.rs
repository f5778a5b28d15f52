//! Library side of the `cubic` command: input handling, reports, text
//! rendering and batch processing.

pub mod batch;
pub mod input;
pub mod report;
pub mod text;

/// Exit status of the `cubic` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    InputError = 1,
    DegreeGate = 2,
    Disagreement = 3,
}
