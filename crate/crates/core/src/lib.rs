pub mod certificate;
pub mod extremal;
pub mod field;
pub mod flag;
pub mod graph;
