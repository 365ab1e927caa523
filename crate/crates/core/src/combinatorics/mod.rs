//! Partitions, permutations, symmetric-group characters and the Euler
//! transform of integer sequences.

mod characters;
mod euler;
mod partition;
mod permutation;

pub use characters::{character_table, character_value, CharacterTable};
pub use euler::{forward_euler, inverse_euler};
pub use partition::{factorial, partitions_of, z_of, Partition};
pub use permutation::{Permutation, Permutations};
