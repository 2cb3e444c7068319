pub mod caps;
pub mod error;
pub mod ffield;
pub mod freeword;
pub mod groups;
pub mod lawkit;
pub mod spectra;
pub mod verify;
pub mod walks;

pub use caps::Caps;
pub use error::{Error, Result};
pub use ffield::{FieldElt, FieldSpec};
pub use freeword::{Generator, Letter, Word};
pub use groups::{Elem, Group, GroupDescriptor, GroupOps, TableGroup};
pub use lawkit::{LawRecipe, LieTypeTag};
