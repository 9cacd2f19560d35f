//! The local field K = E((t)): truncated Laurent series, differential forms, residues.

pub mod forms;
pub mod series;

pub use forms::{d_form, form_grade, residue, DifferentialForm, GradedForm};
pub use series::{LaurentSeries, EXACT};
