//! Circle-action spectral subspaces, cleaving maps restricted to a single
//! corepresentation, convolution clutching matrices and the associated
//! idempotents.

mod associated;
mod corep;
mod spectral;
mod words;

pub use crate::ktheory::fiber_rank;
pub use associated::{associated_idempotent, AssociatedModule};
pub use corep::{clutching_matrix, CleavingOnCorep, Coefficients, CorepKind, Corepresentation};
pub use spectral::{reconstruct, spectral_component, SpectralComponentRequest};
pub use words::{Letter, WordMatrix, WordTensor};
