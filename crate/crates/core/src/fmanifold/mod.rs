pub mod curve;
pub mod node;
pub mod semisimple;
pub mod stratum;
pub mod structure;
