pub mod cli;
pub mod constructions;
pub mod engine;
pub mod exactfield;
pub mod flownet;
pub mod ordinals;
