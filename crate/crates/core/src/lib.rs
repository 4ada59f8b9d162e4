//! Square-tiled surfaces: cylinder decompositions, Dehn multitwist actions
//! on the non-tautological part of homology, and subgroup indices in SL2(Z).
//!
//! ```
//! use origami_kz::{homology::standard_basis, monodromy::dehn_twist_action, Direction, Mat2, Origami};
//!
//! let o = Origami::l_shape(2, 4).unwrap();
//! let basis = standard_basis(&o).unwrap();
//! let d = dehn_twist_action(&o, Direction::new(2, 3).unwrap(), &basis).unwrap();
//! assert_eq!(d, Mat2::new(2, 1, -1, 0).unwrap());
//! ```

pub mod census;
pub mod coset;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod monodromy;
pub mod origami;
pub mod perm;
pub mod sl2;

pub use coset::{contains_minus_identity, index_in_sl2};
pub use error::{Error, Result};
pub use geometry::{decompose, horizontal_decomposition, shear_matrix, Direction};
pub use origami::{Origami, SingularityData};
pub use perm::Permutation;
pub use sl2::{matrix_to_word, word_to_matrix, Generator, Mat2, Word};
