pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod residue;
pub mod series;
pub mod unipoly;
