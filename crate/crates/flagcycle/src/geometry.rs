//! Dimension bookkeeping for the flag manifold, the base cycle, and the
//! Schubert varieties dual to it, plus the homology-class decomposition of
//! the cycle in terms of Schubert classes.

use serde::Serialize;

use crate::enumerate::{enumerate_fullflag, enumerate_measurable, measurable_model};
use crate::perm::{Classification, DimensionSequence, Permutation};
use crate::Error;

/// Complex dimension of the flag manifold of type d: Σ_{i<j} d_i d_j.
pub fn dim_flag_manifold(d: &DimensionSequence) -> usize {
    let parts = d.parts();
    let mut total = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            total += parts[i] * parts[j];
        }
    }
    total
}

fn full_flag_cycle_dim(n: usize) -> usize {
    let m = n / 2;
    if n % 2 == 0 {
        m * m - m
    } else {
        m * m
    }
}

/// Middle-block contribution to the cycle dimension for a symmetric-e type:
/// the cycle dimension of a full flag of length e′ — (e′/2)(e′/2 − 1) for
/// even e′ and ((e′−1)/2)² for odd.  Distinct from the middle term in
/// `conditions::length_correction`; the two add up to e′(e′−1)/2.
fn middle_cycle_term(e_prime: usize) -> usize {
    full_flag_cycle_dim(e_prime)
}

/// Complex dimension of the base cycle (the isotropic flags) of type d.
/// Full flag: m² − m for n = 2m, m² for n = 2m+1.  Symmetric types lose
/// Σ d_i(d_i−1)/2 over the leading blocks plus the middle-block term.  A
/// non-symmetric type inherits the value of its measurable model, whose
/// cycle maps biholomorphically onto this one.
pub fn dim_base_cycle(d: &DimensionSequence) -> Result<usize, Error> {
    let n = d.n();
    match d.classification() {
        Classification::FullFlag => Ok(full_flag_cycle_dim(n)),
        Classification::SymmetricD { s } => {
            let lead: usize = d.parts()[..s].iter().map(|&di| di * (di - 1) / 2).sum();
            Ok(full_flag_cycle_dim(n) - lead)
        }
        Classification::SymmetricE { s, e_prime } => {
            if s == 0 {
                return Err(Error::Precondition(format!(
                    "({d}) is a single block: the flag manifold degenerates to a point"
                )));
            }
            let lead: usize = d.parts()[..s].iter().map(|&di| di * (di - 1) / 2).sum();
            Ok(full_flag_cycle_dim(n) - lead - middle_cycle_term(e_prime))
        }
        Classification::NonSymmetric => dim_base_cycle(&measurable_model(d).model),
    }
}

/// The common dimension of every Schubert variety dual to the cycle:
/// dim Z − dim C₀.  For a non-symmetric type the flag manifold dimension is
/// taken through the measurable model, dim Z = dim Ẑ − dim_drop.
pub fn expected_schubert_dim(d: &DimensionSequence) -> Result<usize, Error> {
    match d.classification() {
        Classification::NonSymmetric => {
            let model = measurable_model(d);
            Ok(dim_flag_manifold(&model.model) - model.dim_drop - dim_base_cycle(&model.model)?)
        }
        _ => Ok(dim_flag_manifold(d) - dim_base_cycle(d)?),
    }
}

/// The decomposition [C₀] = coefficient · Σ [S_w] of the base cycle's
/// homology class into the Schubert classes it is dual to.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyClass {
    pub coefficient: usize,
    pub classes: Vec<Permutation>,
}

/// Computes the coefficient from the matching count formula — 2^m or 2^{m−1}
/// for full flags (n odd/even), 2^{m−1} for a symmetric-d type, and
/// 2^{d_1+⋯+d_s} or 2^{d_1+⋯+d_s−1} for a symmetric-e type (n odd/even) —
/// and enumerates the classes.  The coefficient is the number of
/// intersection points of each S_w with the cycle inside one open orbit.
pub fn homology_class(d: &DimensionSequence) -> Result<HomologyClass, Error> {
    let n = d.n();
    let m = n / 2;
    let (coefficient, classes) = match d.classification() {
        Classification::FullFlag => {
            let coefficient = if n % 2 == 1 { 1 << m } else { 1 << (m - 1) };
            (coefficient, enumerate_fullflag(n)?)
        }
        Classification::SymmetricD { .. } => {
            let classes = enumerate_measurable(d)?.into_iter().map(|mem| mem.w).collect();
            (1 << (m - 1), classes)
        }
        Classification::SymmetricE { s, .. } => {
            if s == 0 {
                return Err(Error::Precondition(format!(
                    "({d}) is a single block: the flag manifold degenerates to a point"
                )));
            }
            let lead: usize = d.parts()[..s].iter().sum();
            let coefficient = if n % 2 == 1 { 1 << lead } else { 1 << (lead - 1) };
            let classes = enumerate_measurable(d)?.into_iter().map(|mem| mem.w).collect();
            (coefficient, classes)
        }
        Classification::NonSymmetric => {
            return Err(Error::Precondition(format!(
                "homology decomposition needs a measurable type; ({d}) is not symmetric"
            )));
        }
    };
    Ok(HomologyClass {
        coefficient,
        classes,
    })
}
