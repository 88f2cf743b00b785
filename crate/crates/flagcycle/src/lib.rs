//! Exact enumeration, construction, and verification of the Schubert
//! varieties dual to base cycles in SL(n,ℝ)-flag domains.
//!
//! A flag domain is an open orbit of SL(n,ℝ) on a complex flag manifold
//! Z = SL(n,ℂ)/P; its base cycle C₀ is the unique compact K-orbit inside,
//! here realized as the set of flags isotropic for the standard symmetric
//! bilinear form.  The Schubert varieties of the Iwasawa-Borel subgroup
//! (upper-triangular matrices) that meet C₀ in the dual dimension are cut
//! out by purely combinatorial conditions on permutations; their
//! intersection points with C₀ admit explicit closed-form flags over ℚ(i).
//!
//! The crate enumerates those permutations (full-flag, measurable G/P, and
//! non-measurable G/P via its measurable model), constructs the intersection
//! points, and certifies every claimed property — isotropy, τ-genericity,
//! Schubert-cell membership, orientation splits, homology coefficients —
//! with exact Gaussian-rational linear algebra.  No floating point is used
//! anywhere.
//!
//! Module map:
//! - [`exactnum`]: Gaussian-rational scalars and exact matrices (rank, Gram).
//! - [`perm`]: permutations, lengths, dimension sequences, Bruhat order.
//! - [`conditions`]: the spacing / double-box-contraction predicates and the
//!   canonical rearrangement lift.
//! - [`enumerate`]: generation of all dual Schubert varieties.
//! - [`flags`]: exact flags, τ-genericity, isotropy, orientation, cell
//!   location.
//! - [`intersect`]: explicit intersection points with the base cycle and a
//!   verification report.
//! - [`geometry`]: dimension bookkeeping and homology-class output.
//! - [`oracle`]: brute-force cross-checks at desk scale.

pub mod exactnum;
pub mod perm;
pub mod conditions;
pub mod enumerate;
pub mod flags;
pub mod intersect;
pub mod geometry;
pub mod oracle;

use thiserror::Error;

/// Error type shared by the whole crate.
///
/// The CLI maps `InvalidInput` to exit code 2 (usage error) and the
/// remaining variants to exit code 3 (precondition error).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: unparsable permutation text, dimension parts that do
    /// not sum to n, a grouping sequence of the wrong total, and the like.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An operation was invoked outside its domain of validity (asymmetric
    /// dimension sequence where a symmetric one is required, a permutation
    /// that is not a minimal representative, a construction whose defining
    /// condition fails, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Matrix shapes do not line up.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// Guard against factorial blowup in the brute-force oracles.
    #[error("input too large: {0}")]
    TooLarge(String),
}
