//! Upper bounds for the homotopy depth of finite polyhedra.
//!
//! The bounds come from splitting lengths of the fundamental group and of
//! the homology groups of the space (or of its universal cover). Splitting
//! lengths are computed exactly: by exhaustive subgroup search for finite
//! groups, and by closed forms for free, abelian and elementary amenable
//! groups.

pub mod abelian;
pub mod depth;
pub mod error;
pub mod finitegroup;
pub mod intlinalg;
pub mod topology;
pub mod verify;

pub use abelian::{sl_abelian, FgAbelianGroup};
pub use depth::{
    best_bound, bound_2dim, bound_general, bound_with_rule, sl_of, wedge_exact_depth, BoundOutcome,
    DepthBoundReport, Pi1Descriptor, Rule, WedgeDepth,
};
pub use error::{Error, Result};
pub use finitegroup::{FiniteGroup, SeriesResult, Subgroup, DEFAULT_CAP};
pub use intlinalg::{rank, smith_normal_form, IntMatrix, SnfResult};
pub use topology::{
    euler_characteristic, homology, pi1_of, poincare_polynomial, universal_cover_homology,
    ChainComplex, HomologyProfile, SpaceExpr,
};
