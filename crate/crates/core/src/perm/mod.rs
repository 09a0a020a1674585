//! Permutation groups: stabilizer chains, orbit-stabilizer computations,
//! normal structure and the checks built on them.

mod group;
pub mod named;
#[allow(clippy::module_inception)]
mod perm;
pub mod checks;
mod structure;
mod table;

pub use group::{orbit_of, ElementIter, GroupError, PermGroup, ELEMENT_CAP};
pub use perm::{Perm, PermError};
pub use structure::{
    factorize, fingerprint, is_isomorphic_to, is_p_group, is_simple, o_p, p_group_prime, p_part, product_of_o_p,
    recognize, sylow, Fingerprint, Quotient, SmallGroup,
};
pub use table::{are_isomorphic, isomorphic, TableGroup, TABLE_CAP};
