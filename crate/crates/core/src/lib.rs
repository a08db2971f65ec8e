pub mod braid_cover;
pub mod cli;
pub mod configurations;
pub mod linalg;
pub mod numerology;
pub mod orbit_engine;
pub mod spin_core;
