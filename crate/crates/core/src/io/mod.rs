//! Instance documents in, reports out.

mod document;
mod report;

pub use document::{parse_instance, Body, ExplicitAlgebra, InstanceDocument};
pub use report::{
    analysis_report, cohomology_report, emit_report, hkt_report, sl_report, sweep_report, tex_escape, tex_form,
    validate_report, Cell, Format, Report, Section,
};
