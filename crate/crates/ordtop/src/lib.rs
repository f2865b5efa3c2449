//! Finite order-topological structures and exhaustive audits.

pub mod classify;
pub mod completion;
pub mod explorer;
pub mod finstruct;
pub mod laws;
pub mod patchwork;
pub mod powerdomain;
pub mod report;
pub mod speclat;
pub mod uniformity;
