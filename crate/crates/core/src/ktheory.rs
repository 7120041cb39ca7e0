//! Connecting-map representatives, index computations, the homotopy suite
//! and the operational `(rank, charge)` invariant.

mod bott;
mod fredholm;
mod homotopy;
mod invariant;
mod milnor;
mod naturality;
mod winding;

pub use bott::{bott_unitary, BottUnitary};
pub use fredholm::{fredholm_index, kernel_index, IndexReport};
pub use homotopy::{bilateral_rep, homotopy_paths, homotopy_paths_with, HomotopySuite, PathLabel, PathOptions, UnitaryPath};
pub use invariant::{character, character_matrix, connecting_class, fiber_rank, k_invariant, triple_invariant, triple_rank, KInvariant};
pub use milnor::{milnor_idempotent, MilnorData, MilnorIdempotent, IDEMPOTENT_TOLERANCE};
pub use naturality::{naturality_check, NaturalityReport};
pub use winding::{winding_number, WINDING_SAMPLES};
