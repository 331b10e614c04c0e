//! Exhaustive exploration of the tree of numerical semigroups.
//!
//! Every node carries two bitstreams: the gap bitstream `G` and the seed
//! bitstream `S`. Children come from their parent by shifts and masks
//! ([`tree`]); descendant counts three levels down are read off `S` in
//! closed form. [`wilf`] tracks the Eliahou constant along the way.
//!
//! ```
//! use sgtree::{SemigroupState, tree::descendant_counts};
//!
//! let s = SemigroupState::<u128>::from_left_elements(&[0, 3, 6], 8).unwrap();
//! assert_eq!(s.gap_bits().to_bit_string(8), "11011010");
//! assert_eq!(s.seed_bits().to_bit_string(8), "10110111");
//! let d = descendant_counts(&s);
//! assert_eq!((d.children, d.grandchildren, d.great_grandchildren), (2, 3, 3));
//! ```

pub mod bitstream;
pub mod error;
pub mod oracle;
pub mod render;
pub mod semigroup;
pub mod tree;
pub mod verify;
pub mod wilf;

pub use bitstream::{Bitstream, Wide, Word, U256};
pub use error::{Error, Result};
pub use semigroup::{SeedTable, SemigroupState};
pub use tree::{DescendantCounts, EliahouHit, ExplorationReport, ExploreConfig};
pub use wilf::EliahouParams;
