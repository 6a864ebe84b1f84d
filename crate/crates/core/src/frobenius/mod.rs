//! The residue pairing, flat coordinates and Euler field of the node
//! family.

pub mod euler;
pub mod fiber;
pub mod flat;
pub mod pairing;
