pub mod groebner;
pub mod node;
