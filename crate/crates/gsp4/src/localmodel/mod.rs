//! Local model computations: Laurent series matrices over F_p, affine charts,
//! Schubert coordinates, Frobenius identities, torus fixed points and the
//! Springer fibre blocks.

pub mod chart;
pub mod frobenius;
pub mod laurent;
pub mod schubert;
pub mod springer;
pub mod torus;

pub use chart::{chart_matrix, chart_membership};
pub use laurent::{Laurent, LaurentMatrix};
pub use schubert::{irr_components, monodromy_dim, schubert_coords};
pub use springer::springer_blocks;
pub use torus::torus_fixed_bounds;
