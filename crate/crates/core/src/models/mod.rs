//! Concrete realizations of the Toeplitz, circle and quantum-group algebras,
//! their pullback presentations and the maps between them.

mod graded;
pub mod maps;
mod params;
mod relations;
pub mod spaces;
mod toeplitz;
mod triple;

pub use graded::GradedOperator;
pub use maps::{domain_letters, hom_defect, map_apply, word, MapName};
pub use params::QParameters;
pub use relations::{check_relations, RelationDefect, RelationReport};
pub use spaces::{build_space, Space, SpaceId};
pub use toeplitz::{q_generators, symbol_extract, toeplitz_of, toeplitz_shift};
pub use triple::ToeplitzTriple;
