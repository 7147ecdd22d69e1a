//! Sampling (placeholder while the engine lands).
pub struct SamplerTables;
pub fn build_sampler() {}
pub fn draw() {}
pub fn estimate() {}
