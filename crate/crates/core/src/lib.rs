pub mod circuits;
pub mod components;
pub mod engine;
pub mod patterns;
