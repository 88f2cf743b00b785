//! Brute-force ground truth at desk scale: exhaustive filters over the
//! symmetric group, randomized sampling of Schubert cells, and the
//! genericity dichotomy check that ties the combinatorics to the geometry.

use itertools::Itertools;
use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::{generalized_spacing, spacing};
use crate::exactnum::GaussianRational;
use crate::flags::{is_tau_generic, Flag};
use crate::geometry::expected_schubert_dim;
use crate::intersect::construct_points;
use crate::perm::{DimensionSequence, Permutation};
use crate::Error;

const BRUTE_LIMIT: usize = 9;

fn guard_size(n: usize, limit: usize) -> Result<(), Error> {
    if n > limit {
        return Err(Error::TooLarge(format!(
            "exhaustive search over {n} letters; the practical limit here is {limit}"
        )));
    }
    Ok(())
}

fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|images| Permutation::from_images(images).expect("images form a bijection"))
}

/// Filters the whole symmetric group for spacing permutations of critical
/// length — the definition, with no shortcuts.  The enumeration in
/// `enumerate_fullflag` must reproduce this list exactly.
pub fn brute_fullflag(n: usize) -> Result<Vec<Permutation>, Error> {
    guard_size(n, BRUTE_LIMIT)?;
    if n < 2 {
        return Err(Error::Precondition(format!(
            "no critical-length permutations exist for n = {n}"
        )));
    }
    let critical = expected_schubert_dim(&DimensionSequence::full_flag(n))?;
    let mut members: Vec<Permutation> = all_permutations(n)
        .filter(|w| w.length() == critical && spacing(w))
        .collect();
    members.sort();
    Ok(members)
}

fn minimal_reps(d: &DimensionSequence) -> Vec<Permutation> {
    // Distribute the values 1..n over the blocks, each block sorted
    // ascending: exactly the minimal coset representatives of type d.
    fn step(parts: &[usize], remaining: Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let Some((&first, rest)) = parts.split_first() else {
            out.push(Permutation::from_images(prefix.clone()).expect("images form a bijection"));
            return;
        };
        for block in remaining.iter().copied().combinations(first) {
            let leftover: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|v| !block.contains(v))
                .collect();
            let len = prefix.len();
            prefix.extend_from_slice(&block);
            step(rest, leftover, prefix, out);
            prefix.truncate(len);
        }
    }
    let mut out = Vec::new();
    step(d.parts(), (1..=d.n()).collect(), &mut Vec::new(), &mut out);
    out
}

/// Filters every minimal representative of a symmetric type for generalized
/// spacing at the expected dimension.  Ground truth for
/// `enumerate_measurable`.
pub fn brute_measurable(d: &DimensionSequence) -> Result<Vec<Permutation>, Error> {
    guard_size(d.n(), BRUTE_LIMIT)?;
    if !d.is_symmetric() {
        return Err(Error::Precondition(format!(
            "({d}) is not symmetric; brute_measurable needs a measurable type"
        )));
    }
    let expected = expected_schubert_dim(d)?;
    let mut members = Vec::new();
    for w in minimal_reps(d) {
        if w.length() == expected && generalized_spacing(&w, d)? {
            members.push(w);
        }
    }
    members.sort();
    Ok(members)
}

fn mix_seed(w: &Permutation, seed: u64) -> u64 {
    // FNV-1a over the images, folded with the caller's seed, so the same
    // seed drives independent streams for different permutations.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in w.images() {
        h ^= x as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let numer: i64 = rng.random_range(1..=1000);
    let denom: i64 = rng.random_range(1..=1000);
    let sign = if rng.random::<bool>() { 1 } else { -1 };
    BigRational::new(BigInt::from(sign * numer), BigInt::from(denom))
}

/// A pseudo-random point of the full-flag Schubert cell of w, in the
/// canonical column form: column a has a 1 in row w(a), free coordinates in
/// the rows above it not already used as pivots, zeros elsewhere.  The free
/// coordinates are filled with nonzero rationals in both real and imaginary
/// parts; the draw is determined by (w, seed).
pub fn sample_cell_point(w: &Permutation, seed: u64) -> Flag {
    let n = w.n();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(w, seed));
    let mut columns = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    for a in 1..=n {
        let pivot = w.image(a);
        let mut column = vec![GaussianRational::zero(); n];
        column[pivot - 1] = GaussianRational::one();
        for row in 1..pivot {
            if !used[row] {
                column[row - 1] =
                    GaussianRational::new(random_rational(&mut rng), random_rational(&mut rng));
            }
        }
        used[pivot] = true;
        columns.push(column);
    }
    Flag::new(DimensionSequence::full_flag(n), columns).expect("cell form is invertible")
}

/// Outcome of sweeping every critical-length permutation at a given n:
/// spacing ones must admit a τ-generic constructed point, non-spacing ones
/// must fail τ-genericity at every sampled point of their cell.
#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub pass: bool,
    pub n: usize,
    pub critical_length: usize,
    pub trials: usize,
    pub spacing_checked: usize,
    pub non_spacing_checked: usize,
    pub counterexamples: Vec<String>,
}

/// Sweeps all w of critical length in the symmetric group on n letters.
/// For spacing w, at least one of the 2^m constructed sign-vector points
/// must be τ-generic; for non-spacing w, every one of `trials` sampled cell
/// points must fail τ-genericity.  Exhaustive, so n is capped at 8.
pub fn check_genericity_dichotomy(
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<DichotomyReport, Error> {
    guard_size(n, 8)?;
    if n < 2 {
        return Err(Error::Precondition(format!(
            "the dichotomy is empty for n = {n}"
        )));
    }
    let critical = expected_schubert_dim(&DimensionSequence::full_flag(n))?;
    let critical_words: Vec<Permutation> = all_permutations(n)
        .filter(|w| w.length() == critical)
        .collect();

    let results: Vec<(bool, Option<String>)> = critical_words
        .par_iter()
        .map(|w| {
            if spacing(w) {
                let generic = construct_points(w).iter().any(is_tau_generic);
                let failure = (!generic).then(|| {
                    format!("spacing {w}: no constructed point is τ-generic")
                });
                (true, failure)
            } else {
                let failure = (0..trials).find_map(|t| {
                    let point = sample_cell_point(w, seed.wrapping_add(t as u64));
                    is_tau_generic(&point)
                        .then(|| format!("non-spacing {w}: sampled point {t} is τ-generic"))
                });
                (false, failure)
            }
        })
        .collect();

    let spacing_checked = results.iter().filter(|(sp, _)| *sp).count();
    let non_spacing_checked = results.len() - spacing_checked;
    let counterexamples: Vec<String> =
        results.into_iter().filter_map(|(_, failure)| failure).collect();
    Ok(DichotomyReport {
        pass: counterexamples.is_empty(),
        n,
        critical_length: critical,
        trials,
        spacing_checked,
        non_spacing_checked,
        counterexamples,
    })
}
