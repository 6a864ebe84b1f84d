pub mod curve;
pub mod icis;
pub mod node;
pub mod unfolding;
pub mod vfield;
