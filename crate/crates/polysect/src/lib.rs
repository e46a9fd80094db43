//! File formats, reports and the command-line front end for
//! `polysect-core`.

pub mod bodyspec;
pub mod cli;
pub mod off;
pub mod report;
pub mod svg;
