//! Certifying objects: compressions with a scalar leading block, isometry
//! search, and the quadratic matrix equation solvers built on them.

pub mod compress;
pub mod equations;
pub mod isometry;
pub(crate) mod lsq;
pub mod residuals;

pub use compress::{compress_normal, compression_residual, convex_representation, fan_pall_compress, unitary_from_congruence};
pub use equations::{
    solve_eq_a, solve_eq_b, solve_eq_b_with, solve_eq_c, solve_eq_d, solve_eq_e, solve_eq_f, sphere_intersection,
    BPairing, EquationSolution,
};
pub use isometry::{find_isometry, search_isometry, Isometry, SearchOptions, DEFAULT_SEED};
