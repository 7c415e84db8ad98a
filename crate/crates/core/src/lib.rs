pub mod action;
pub mod admissible;
pub mod error;
pub mod exact;
pub mod g2;
pub mod phi;
pub mod presentations;
pub mod prover;
pub mod roots;
pub mod suite;
pub mod weyl;
pub mod word;

pub use error::{Error, Result};
pub use exact::{LaurentPoly, Rational};
pub use presentations::{presentation_for, DerivedRelationSet, Presentation, Relation};
pub use roots::{FoldingMap, Root, RootSet, RootSystem, RootType, SignedRoot};
pub use weyl::{Subgroup, WeylElement, WeylGroup};
pub use word::{GenKind, GenSymbol, MonoidWord};
