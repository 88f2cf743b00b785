//! The combinatorial membership predicates: spacing, double box contraction,
//! their block-level generalizations, and the canonical rearrangement that
//! lifts a partial-flag permutation to a full-flag one.
//!
//! Conventions for the full-flag case, n = 2m or 2m+1: the one-line notation
//! is read as w = k_1 … k_m [l_*] l_m … l_1, i.e. k_i = w(i) and
//! l_i = w(n+1−i), with a middle letter l_* only for odd n.

use crate::perm::{block_decompose, is_minimal_rep, DimensionSequence, Permutation};
use crate::Error;

/// The pairs (k_i, l_i) read off the ends of the one-line notation, plus the
/// middle letter when n is odd.
pub fn split_pairs(w: &Permutation) -> (Vec<(usize, usize)>, Option<usize>) {
    let n = w.n();
    let m = n / 2;
    let pairs = (1..=m).map(|i| (w.image(i), w.image(n + 1 - i))).collect();
    let middle = (n % 2 == 1).then(|| w.image(m + 1));
    (pairs, middle)
}

/// Spacing condition: l_i < k_i for every pair.
pub fn spacing(w: &Permutation) -> bool {
    let (pairs, _) = split_pairs(w);
    pairs.iter().all(|&(k, l)| l < k)
}

/// Ordered set {1..n} with exact removal; `immediate_left(v)` is the largest
/// remaining element smaller than `v`.
struct Residual {
    present: Vec<bool>,
}

impl Residual {
    fn new(n: usize) -> Self {
        let mut present = vec![true; n + 1];
        present[0] = false;
        Residual { present }
    }

    fn immediate_left(&self, v: usize) -> Option<usize> {
        (1..v).rev().find(|&x| self.present[x])
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.present[v]);
        self.present[v] = false;
    }
}

/// Double box contraction: the pairs (k_1,l_1), …, (k_m,l_m), in this order,
/// can be produced by repeatedly picking k_i and its immediate left neighbor
/// l_i from what remains of {1..n}, removing both as you go.  For odd n the
/// single leftover is w(m+1) automatically.
pub fn double_box(w: &Permutation) -> bool {
    let (pairs, _) = split_pairs(w);
    let mut residual = Residual::new(w.n());
    for (k, l) in pairs {
        if residual.immediate_left(k) != Some(l) {
            return false;
        }
        residual.remove(k);
        residual.remove(l);
    }
    true
}

fn require_symmetric(d: &DimensionSequence) -> Result<(), Error> {
    if !d.is_symmetric() {
        return Err(Error::Precondition(format!(
            "dimension sequence ({d}) is not symmetric"
        )));
    }
    Ok(())
}

fn require_minimal(w: &Permutation, d: &DimensionSequence) -> Result<(), Error> {
    if !is_minimal_rep(w, d)? {
        return Err(Error::Precondition(format!(
            "{w} is not a minimal representative for ({d}): blocks must increase"
        )));
    }
    Ok(())
}

/// The symmetric block pairs (B_j, B̃_j) of a minimal representative: block j
/// from the front paired with block j from the back, for j = 1..s (half the
/// parts, middle block excluded when the count is odd).
fn symmetric_pairs(
    w: &Permutation,
    d: &DimensionSequence,
) -> Result<(Vec<(Vec<usize>, Vec<usize>)>, Option<Vec<usize>>), Error> {
    require_symmetric(d)?;
    require_minimal(w, d)?;
    let blocks = block_decompose(w, d)?;
    let half = blocks.len() / 2;
    let middle = (blocks.len() % 2 == 1).then(|| blocks[half].clone());
    let pairs = (0..half)
        .map(|j| (blocks[j].clone(), blocks[blocks.len() - 1 - j].clone()))
        .collect();
    Ok((pairs, middle))
}

/// Generalized spacing: every symmetric block pair admits a perfect matching
/// pairing each k ∈ B_j against a distinct smaller l ∈ B̃_j.  Matching the
/// sorted blocks elementwise decides existence (the greedy choice is optimal
/// for this interval condition), and minimal representatives arrive sorted.
pub fn generalized_spacing(w: &Permutation, d: &DimensionSequence) -> Result<bool, Error> {
    let (pairs, _) = symmetric_pairs(w, d)?;
    Ok(pairs
        .iter()
        .all(|(b, b_tilde)| b.iter().zip(b_tilde).all(|(&k, &l)| l < k)))
}

/// Generalized double box contraction: block pairs are produced in order
/// j = 1..s, each step choosing d_j disjoint pairs (l, k) with l immediately
/// left of k in the residual set as it stood at the START of the step; the
/// whole step's 2·d_j values are then removed together.  Within a step the
/// sorted blocks are matched elementwise; because valid pairs are disjoint
/// adjacent intervals of the residual order, any valid pairing equals the
/// sorted one, so this loses no generality.
pub fn generalized_double_box(w: &Permutation, d: &DimensionSequence) -> Result<bool, Error> {
    let (pairs, _) = symmetric_pairs(w, d)?;
    let mut residual = Residual::new(w.n());
    for (b, b_tilde) in pairs {
        let ok = b
            .iter()
            .zip(&b_tilde)
            .all(|(&k, &l)| residual.immediate_left(k) == Some(l));
        if !ok {
            return Ok(false);
        }
        for v in b.iter().chain(&b_tilde) {
            residual.remove(*v);
        }
    }
    Ok(true)
}

/// Total length gained by a canonical rearrangement:
/// Σ_{i=1}^{s} d_i(d_i−1)/2 from reversing the B̃ blocks, plus the middle
/// term (e′/2)² for even e′ or (e′−1)(e′+1)/4 for odd e′.
pub fn length_correction(d: &DimensionSequence) -> Result<usize, Error> {
    require_symmetric(d)?;
    let half = d.len() / 2;
    let pair_term: usize = d.parts()[..half].iter().map(|&di| di * (di - 1) / 2).sum();
    let middle_term = if d.len() % 2 == 1 {
        let e = d.parts()[half];
        if e % 2 == 0 {
            (e / 2) * (e / 2)
        } else {
            (e - 1) * (e + 1) / 4
        }
    } else {
        0
    };
    Ok(pair_term + middle_term)
}

/// The canonical rearrangement ŵ of a generalized-double-box w: front blocks
/// B_j stay, each back block B̃_j is reversed to decreasing order, and the
/// middle block l′_1 … l′_{e′} is rotated to
/// l′_{h+1} … l′_{e′} l′_1 … l′_h with h = e′/2 (even e′) or (e′+1)/2 (odd).
/// The result satisfies the plain double box contraction, with
/// length(ŵ) = length(w) + length_correction(d).
pub fn canonical_rearrangement(
    w: &Permutation,
    d: &DimensionSequence,
) -> Result<Permutation, Error> {
    if !generalized_double_box(w, d)? {
        return Err(Error::Precondition(format!(
            "{w} does not satisfy the generalized double box contraction for ({d})"
        )));
    }
    let blocks = block_decompose(w, d)?;
    let half = blocks.len() / 2;
    let has_middle = blocks.len() % 2 == 1;
    let mut images = Vec::with_capacity(w.n());
    for b in &blocks[..half] {
        images.extend(b.iter().copied());
    }
    if has_middle {
        let middle = &blocks[half];
        let e = middle.len();
        let h = if e % 2 == 0 { e / 2 } else { (e + 1) / 2 };
        images.extend(middle[h..].iter().copied());
        images.extend(middle[..h].iter().copied());
    }
    for b in blocks[blocks.len() - half..].iter() {
        images.extend(b.iter().rev().copied());
    }
    Permutation::from_images(images)
}

/// Grouping check used when projecting from the measurable model: for every
/// group of t_j consecutive blocks with t_j > 1, the blocks must descend —
/// the last element of each block smaller than the first element of the
/// block before it.
pub fn strictly_decreasing_groups(
    w_hat: &Permutation,
    d_hat: &DimensionSequence,
    t: &[usize],
) -> Result<bool, Error> {
    if t.iter().any(|&tj| tj == 0) || t.iter().sum::<usize>() != d_hat.len() {
        return Err(Error::InvalidInput(format!(
            "grouping {t:?} does not partition {} blocks",
            d_hat.len()
        )));
    }
    let blocks = block_decompose(w_hat, d_hat)?;
    let mut start = 0;
    for &tj in t {
        let group = &blocks[start..start + tj];
        for pair in group.windows(2) {
            let first_of_upper = pair[0][0];
            let last_of_lower = *pair[1].last().unwrap();
            if last_of_lower >= first_of_upper {
                return Ok(false);
            }
        }
        start += tj;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn d(s: &str) -> DimensionSequence {
        s.parse().unwrap()
    }

    #[test]
    fn spacing_examples() {
        assert!(spacing(&p("2,6,5,4,3,1")));
        assert!(!spacing(&p("2,6,1,5,3,4")));
        assert!(spacing(&p("2,4,3,1")));
        assert!(spacing(&p("2,1")));
        assert!(!spacing(&Permutation::identity(6)));
        // Odd n ignores the middle letter.
        assert!(spacing(&p("2,3,1")));
        assert!(spacing(&p("3,1,2")));
    }

    #[test]
    fn double_box_examples() {
        assert!(double_box(&p("2,5,6,3,4,1")));
        assert!(!double_box(&p("2,6,5,4,3,1")));
        assert!(double_box(&p("3,4,1,2")));
        assert!(double_box(&p("2,3,1")));
        assert!(double_box(&p("3,1,2")));
        assert!(double_box(&p("2,1")));
        assert!(!double_box(&p("1,2")));
        assert!(!double_box(&Permutation::identity(4)));
    }

    #[test]
    fn double_box_implies_spacing_exhaustive() {
        for n in 2..=7 {
            for images in (1..=n).permutations(n) {
                let w = Permutation::from_images(images).unwrap();
                if double_box(&w) {
                    assert!(spacing(&w), "double box without spacing at {w}");
                }
            }
        }
    }

    #[test]
    fn generalized_spacing_examples() {
        assert!(generalized_spacing(&p("2,4,6,3,5,1"), &d("1,2,2,1")).unwrap());
        assert!(!generalized_spacing(&p("1,4,6,3,5,2"), &d("1,2,2,1")).unwrap());
        assert!(!generalized_spacing(&Permutation::identity(6), &d("1,2,2,1")).unwrap());
        // Full flag degenerates to the plain spacing condition.
        let ff = DimensionSequence::full_flag(6);
        assert!(generalized_spacing(&p("2,6,5,4,3,1"), &ff).unwrap());
    }

    #[test]
    fn generalized_preconditions() {
        // Non-symmetric dimension sequence is refused.
        assert!(generalized_spacing(&p("2,4,6,3,5,1"), &d("2,4")).is_err());
        assert!(generalized_double_box(&p("2,4,6,3,5,1"), &d("4,2")).is_err());
        // So is a non-minimal representative: blocks must increase.
        assert!(generalized_double_box(&p("2,5,6,3,4,1"), &d("3,3")).is_err());
        assert!(generalized_spacing(&p("2,4,6,5,3,1"), &d("1,2,2,1")).is_err());
    }

    #[test]
    fn generalized_double_box_examples() {
        assert!(generalized_double_box(&p("2,4,6,3,5,1"), &d("1,2,2,1")).unwrap());
        // (34)(12): 1 is not adjacent to 3 in {1,2,3,4} at step start.
        assert!(!generalized_double_box(&p("3,4,1,2"), &d("2,2")).unwrap());
        assert!(generalized_double_box(&p("2,3,4,5,6,1"), &d("1,4,1")).unwrap());
        assert!(generalized_double_box(&p("3,1,4,5,6,2"), &d("1,4,1")).unwrap());
        // 2 is not the immediate left neighbor of 4 in {1,…,6}.
        assert!(!generalized_double_box(&p("4,1,3,5,6,2"), &d("1,4,1")).unwrap());
    }

    #[test]
    fn rearrangement_examples() {
        let w = p("2,4,6,3,5,1");
        let w_hat = canonical_rearrangement(&w, &d("1,2,2,1")).unwrap();
        assert_eq!(w_hat, p("2,4,6,5,3,1"));
        assert!(double_box(&w_hat));
        assert_eq!(w_hat.length(), w.length() + 1);

        // Full flag: the rearrangement is the identity transformation.
        let v = p("2,4,3,1");
        assert_eq!(
            canonical_rearrangement(&v, &DimensionSequence::full_flag(4)).unwrap(),
            v
        );

        // Even middle block rotates by e′/2.
        let w = p("2,3,4,5,6,1");
        let w_hat = canonical_rearrangement(&w, &d("1,4,1")).unwrap();
        assert_eq!(w_hat, p("2,5,6,3,4,1"));
        assert_eq!(w_hat.length(), w.length() + length_correction(&d("1,4,1")).unwrap());

        // Odd middle block rotates by (e′+1)/2.
        let w = p("2,3,4,5,1");
        let w_hat = canonical_rearrangement(&w, &d("1,3,1")).unwrap();
        assert_eq!(w_hat, p("2,5,3,4,1"));
        assert!(double_box(&w_hat));
        assert_eq!(w_hat.length(), w.length() + 2);

        assert!(canonical_rearrangement(&p("3,4,1,2"), &d("2,2")).is_err());
    }

    #[test]
    fn length_corrections() {
        assert_eq!(length_correction(&DimensionSequence::full_flag(6)).unwrap(), 0);
        assert_eq!(length_correction(&d("1,2,2,1")).unwrap(), 1);
        assert_eq!(length_correction(&d("1,4,1")).unwrap(), 4);
        assert_eq!(length_correction(&d("1,3,1")).unwrap(), 2);
        assert_eq!(length_correction(&d("3,3")).unwrap(), 3);
        assert_eq!(length_correction(&d("2,1,2")).unwrap(), 1);
        assert!(length_correction(&d("2,4")).is_err());
    }

    #[test]
    fn decreasing_groups_examples() {
        let dh = d("1,4,1");
        assert!(strictly_decreasing_groups(&p("2,3,4,5,6,1"), &dh, &[1, 2]).unwrap());
        assert!(!strictly_decreasing_groups(&p("3,1,4,5,6,2"), &dh, &[1, 2]).unwrap());
        assert!(strictly_decreasing_groups(&p("3,1,4,5,6,2"), &dh, &[1, 1, 1]).unwrap());
        assert!(strictly_decreasing_groups(&p("2,3,4,5,6,1"), &dh, &[1, 1]).is_err());
        assert!(strictly_decreasing_groups(&p("2,3,4,5,6,1"), &dh, &[0, 3]).is_err());
    }
}
