//! Computational group theory for the 3-local identification of M12 and SL3(3).

pub mod words;
pub mod perm;
pub mod coset;
pub mod gf3;
pub mod designs;
pub mod graphs;
pub mod models;
pub mod verify;
