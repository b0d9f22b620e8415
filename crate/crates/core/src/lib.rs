//! Local Eichler orders of level p^n inside M2(Q_p), their principal left
//! ideals of reduced norm p, and the metacommutation permutation induced by
//! right multiplication with a unit.
//!
//! The census of norm-p ideals splits into two sides of p ideals each —
//! `S1(s)` generated by [[1, s], [0, p]] and `S2(s)` generated by
//! [[p, 0], [s p^n, 1]] — plus, at level p, the radical generated by
//! gamma = [[0, 1], [p^n, 0]]. A unit w permutes the census by sending the
//! ideal of g to the ideal of g * w. This crate computes the permutation,
//! models it on the projective line over F_p, locates the ideals as
//! segments on the Bruhat-Tits tree, and ships an independent module-
//! arithmetic path plus batch suites that verify each structural claim.
//!
//! All arithmetic is exact over Z/p^K; questions that would need digits
//! beyond the chosen precision fail loudly with
//! [`Error::PrecisionExhausted`].
//!
//! ```
//! use metacommute_core::{sigma_perm, EichlerOrder, Mat2};
//!
//! let order = EichlerOrder::new(3, 1)?;
//! let w = Mat2::from_i64(order.modulus(), [[1, 1], [0, 1]]);
//! let report = sigma_perm(&order, &w)?;
//! assert_eq!(report.cycles()[0].len(), 3); // S1 is a single 3-cycle
//! assert_eq!(report.fixed_s2(), 3);        // S2 is pointwise fixed
//! # Ok::<(), metacommute_core::Error>(())
//! ```

mod error;
pub mod metacommute;
pub mod order;
pub mod padic;
pub mod rmodule;
pub mod tree;
pub mod verify;

pub use error::Error;
pub use metacommute::{
    check_diagrams, fixed_count_formula, kernel_member, pgl_order, sigma_apply, sigma_perm,
    tau_perm, PermutationReport, ProjPoint, TauPerm,
};
pub use order::{EichlerOrder, IdealLabel, NormPIdeal};
pub use padic::{quad_char, Mat2, Modulus, PAdicScalar, Valuation};
pub use rmodule::{brute_sigma, module_hnf, verify_census, CensusModules, ModuleBasis};
pub use tree::{
    act, ball, canonical_vertex, distance, export_dot, geodesic, neighbors, segment_of_ideal,
    Segment, TreeVertex,
};
pub use verify::{run_all, SuiteResult, VerifyConfig};
