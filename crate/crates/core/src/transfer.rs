//! Transfer matrices (placeholder while the engine lands).
pub struct TransferSystem;
