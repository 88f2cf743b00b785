//! Permutations in one-line notation, their lengths, and the block
//! bookkeeping for dimension sequences.
//!
//! Everything downstream indexes permutations the way the combinatorics is
//! usually written: 1-based, with `w.image(i)` the value in position `i`.
//! Dimension sequences classify into the four shapes that drive the rest of
//! the crate (full flag, the two symmetric shapes, and everything else).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// An element of Σ_n stored as its one-line notation `w(1) … w(n)`.
///
/// Serializes as the canonical comma-separated string, e.g. `"2,5,6,3,4,1"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds from one-line notation, checking that it is a bijection of
    /// {1..n}.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty permutation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::InvalidInput(format!(
                    "value {v} out of range 1..={n} in one-line notation"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidInput(format!(
                    "value {v} repeated in one-line notation"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// w(i), 1-indexed.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (pos, &v) in self.images.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Permutation { images: inv }
    }

    /// The number of inversions, i.e. pairs i < j with w(i) > w(j).  This is
    /// the dimension of the corresponding Schubert cell in the full flag
    /// manifold.
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Independent second computation of the length: sort the one-line
    /// notation by moving 1, then 2, then 3, … left to its final position,
    /// and count the entries each value passes over.  Each pass is one
    /// inversion removed, so the sum is again the length; the two
    /// implementations cross-check each other.
    pub fn length_by_moves(&self) -> usize {
        let mut v = self.images.clone();
        let mut total = 0;
        for value in 1..=v.len() {
            let target = value - 1;
            let pos = v.iter().position(|&x| x == value).unwrap();
            total += pos - target;
            v[target..=pos].rotate_right(1);
        }
        total
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form: comma-separated one-line notation, "2,5,6,3,4,1".
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Accepts comma- or whitespace-separated one-line notation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let images: Vec<usize> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("invalid entry '{tok}' in permutation")))
            })
            .collect::<Result<_, _>>()?;
        Permutation::from_images(images)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(w: Permutation) -> String {
        w.to_string()
    }
}

/// How a dimension sequence sits with respect to reversal; this is what
/// decides which enumeration and which dimension formulas apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// All parts equal to 1 (the full flag manifold).
    FullFlag,
    /// Palindrome with an even number of parts: (d_1..d_s, d_s..d_1).
    SymmetricD { s: usize },
    /// Palindrome with an odd number of parts: (d_1..d_s, e′, d_s..d_1).
    /// `s` may be 0, the degenerate single-block case.
    SymmetricE { s: usize, e_prime: usize },
    /// Everything else; reached through its measurable model.
    NonSymmetric,
}

/// A dimension sequence d = (d_1, …, d_s): the block sizes of a flag type,
/// positive and summing to the ambient dimension n.
///
/// Serializes as the plain list of parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimensionSequence {
    parts: Vec<usize>,
}

impl DimensionSequence {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("empty dimension sequence".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidInput(
                "dimension sequence parts must be positive".into(),
            ));
        }
        Ok(DimensionSequence { parts })
    }

    pub fn full_flag(n: usize) -> Self {
        DimensionSequence {
            parts: vec![1; n],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The ambient dimension n = Σ d_i.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Partial sums δ_1 < δ_2 < … < δ_s = n (the flag's subspace dimensions).
    pub fn delta(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &d| {
                *acc += d;
                Some(*acc)
            })
            .collect()
    }

    pub fn classification(&self) -> Classification {
        if self.parts.iter().all(|&p| p == 1) {
            return Classification::FullFlag;
        }
        let reversed: Vec<usize> = self.parts.iter().rev().copied().collect();
        if self.parts != reversed {
            return Classification::NonSymmetric;
        }
        let len = self.parts.len();
        if len % 2 == 0 {
            Classification::SymmetricD { s: len / 2 }
        } else {
            Classification::SymmetricE {
                s: len / 2,
                e_prime: self.parts[len / 2],
            }
        }
    }

    /// True for the shapes carrying an invariant measure: full flag or
    /// either symmetric palindrome.
    pub fn is_symmetric(&self) -> bool {
        !matches!(self.classification(), Classification::NonSymmetric)
    }
}

impl fmt::Debug for DimensionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for DimensionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for DimensionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<usize> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    Error::InvalidInput(format!("invalid entry '{tok}' in dimension sequence"))
                })
            })
            .collect::<Result<_, _>>()?;
        DimensionSequence::new(parts)
    }
}

impl TryFrom<Vec<usize>> for DimensionSequence {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self, Error> {
        DimensionSequence::new(parts)
    }
}

impl From<DimensionSequence> for Vec<usize> {
    fn from(d: DimensionSequence) -> Vec<usize> {
        d.parts
    }
}

fn check_same_n(w: &Permutation, d: &DimensionSequence) -> Result<(), Error> {
    if w.n() != d.n() {
        return Err(Error::ShapeMismatch(format!(
            "permutation of Σ_{} against dimension sequence summing to {}",
            w.n(),
            d.n()
        )));
    }
    Ok(())
}

/// Cuts the one-line notation into consecutive blocks of sizes d_1, …, d_s.
pub fn block_decompose(w: &Permutation, d: &DimensionSequence) -> Result<Vec<Vec<usize>>, Error> {
    check_same_n(w, d)?;
    let mut blocks = Vec::with_capacity(d.len());
    let mut start = 0;
    for &size in d.parts() {
        blocks.push(w.images()[start..start + size].to_vec());
        start += size;
    }
    Ok(blocks)
}

/// True iff every block of `w` is strictly increasing, i.e. `w` is the
/// shortest element of its coset modulo the block-permuting subgroup
/// Σ_{d_1} × … × Σ_{d_s}.
pub fn is_minimal_rep(w: &Permutation, d: &DimensionSequence) -> Result<bool, Error> {
    let blocks = block_decompose(w, d)?;
    Ok(blocks.iter().all(|b| b.windows(2).all(|p| p[0] < p[1])))
}

/// The minimal coset representative: each block sorted ascending.
pub fn min_rep(w: &Permutation, d: &DimensionSequence) -> Result<Permutation, Error> {
    let blocks = block_decompose(w, d)?;
    let mut images = Vec::with_capacity(w.n());
    for mut b in blocks {
        b.sort_unstable();
        images.extend(b);
    }
    Permutation::from_images(images)
}

/// Dimension of the Schubert cell of `w` in the partial flag manifold of
/// type `d`: the length of the minimal representative.
pub fn cell_dimension(w: &Permutation, d: &DimensionSequence) -> Result<usize, Error> {
    Ok(min_rep(w, d)?.length())
}

/// r(i,j) = #{a ≤ i : w(a) ≤ j} for all 0 ≤ i, j ≤ n, as an (n+1)×(n+1)
/// table.  This is the rank profile of the permutation matrix, the data that
/// decides closure order between Schubert cells.
fn rank_table(w: &Permutation) -> Vec<Vec<usize>> {
    let n = w.n();
    let mut r = vec![vec![0usize; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            r[i][j] = r[i - 1][j] + usize::from(w.image(i) <= j);
        }
    }
    r
}

/// Bruhat order on Σ_n: u ≤ w iff the Schubert variety of u is contained in
/// the closure of the cell of w, decided by the rank-matrix criterion
/// r_u(i,j) ≥ r_w(i,j) for all i, j.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool, Error> {
    if u.n() != w.n() {
        return Err(Error::ShapeMismatch(format!(
            "Bruhat comparison between Σ_{} and Σ_{}",
            u.n(),
            w.n()
        )));
    }
    let ru = rank_table(u);
    let rw = rank_table(w);
    for i in 1..=u.n() {
        for j in 1..=u.n() {
            if ru[i][j] < rw[i][j] {
                return Ok(false);
            }
        }
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
    fn parse_and_display() {
        assert_eq!(p("2,5,6,3,4,1").to_string(), "2,5,6,3,4,1");
        assert_eq!(p("2 5 6 3 4 1"), p("2,5,6,3,4,1"));
        assert_eq!(p("1").to_string(), "1");
        for bad in ["", "0,1", "1,1", "1,3", "a,b", "2,,"] {
            assert!(bad.parse::<Permutation>().is_err(), "accepted '{bad}'");
        }
    }

    #[test]
    fn serde_roundtrip() {
        let w = p("2,4,3,1");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "\"2,4,3,1\"");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), w);
        assert!(serde_json::from_str::<Permutation>("\"1,1\"").is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("2,5,6,3,4,1").length(), 9);
        assert_eq!(Permutation::identity(7).length(), 0);
        assert_eq!(p("2,4,3,1").length(), 4);
        assert_eq!(p("2,6,5,4,3,1").length(), 11);
        // Longest element reverses everything.
        assert_eq!(p("6,5,4,3,2,1").length(), 15);
    }

    #[test]
    fn both_length_computations_agree_on_sigma_6() {
        for images in (1..=6usize).permutations(6) {
            let w = Permutation::from_images(images).unwrap();
            assert_eq!(w.length(), w.length_by_moves(), "at {w}");
        }
    }

    #[test]
    fn inverse_basics() {
        assert_eq!(p("2,3,1").inverse(), p("3,1,2"));
        let w = p("2,5,6,3,4,1");
        assert_eq!(w.inverse().inverse(), w);
        assert_eq!(w.length(), w.inverse().length());
    }

    #[test]
    fn classification_cases() {
        use Classification::*;
        assert_eq!(d("1,1,1,1").classification(), FullFlag);
        assert_eq!(d("1,2,2,1").classification(), SymmetricD { s: 2 });
        assert_eq!(d("3,3").classification(), SymmetricD { s: 1 });
        assert_eq!(d("1,4,1").classification(), SymmetricE { s: 1, e_prime: 4 });
        assert_eq!(d("2,1,2").classification(), SymmetricE { s: 1, e_prime: 1 });
        assert_eq!(d("6").classification(), SymmetricE { s: 0, e_prime: 6 });
        assert_eq!(d("2,4,3").classification(), NonSymmetric);
        assert_eq!(d("1,5").classification(), NonSymmetric);
    }

    #[test]
    fn all_ones_is_full_flag() {
        // The all-ones palindrome must classify as FullFlag, not SymmetricE.
        assert_eq!(d("1,1,1").classification(), Classification::FullFlag);
        assert_eq!(d("1,1,1,1").classification(), Classification::FullFlag);
        assert!(d("1,1,1").is_symmetric());
    }

    #[test]
    fn delta_partial_sums() {
        assert_eq!(d("1,2,2,1").delta(), vec![1, 3, 5, 6]);
        assert_eq!(d("6").delta(), vec![6]);
        assert_eq!(d("1,4,1").n(), 6);
    }

    #[test]
    fn dims_validation() {
        assert!("".parse::<DimensionSequence>().is_err());
        assert!("1,0,1".parse::<DimensionSequence>().is_err());
        assert!("1,x".parse::<DimensionSequence>().is_err());
        assert_eq!(d("1 2 2 1"), d("1,2,2,1"));
    }

    #[test]
    fn block_decomposition() {
        assert_eq!(
            block_decompose(&p("2,4,6,3,5,1"), &d("1,2,2,1")).unwrap(),
            vec![vec![2], vec![4, 6], vec![3, 5], vec![1]]
        );
        assert_eq!(
            block_decompose(&p("2,3,4,5,6,1"), &d("1,4,1")).unwrap(),
            vec![vec![2], vec![3, 4, 5, 6], vec![1]]
        );
        assert_eq!(
            block_decompose(&p("1,2,3,4,5,6"), &d("6")).unwrap(),
            vec![vec![1, 2, 3, 4, 5, 6]]
        );
        assert!(block_decompose(&p("1,2,3"), &d("2,2")).is_err());
    }

    #[test]
    fn minimal_representatives() {
        assert_eq!(min_rep(&p("2,4,6,5,3,1"), &d("1,2,2,1")).unwrap(), p("2,4,6,3,5,1"));
        assert!(is_minimal_rep(&p("2,4,3,1"), &DimensionSequence::full_flag(4)).unwrap());
        assert_eq!(min_rep(&p("3,1,2,4,5,6"), &d("3,3")).unwrap(), Permutation::identity(6));
        assert!(!is_minimal_rep(&p("2,5,6,3,4,1"), &d("3,3")).unwrap());
    }

    #[test]
    fn cell_dimensions() {
        assert_eq!(cell_dimension(&p("2,4,6,3,5,1"), &d("1,2,2,1")).unwrap(), 8);
        assert_eq!(cell_dimension(&Permutation::identity(6), &d("1,2,2,1")).unwrap(), 0);
        assert_eq!(
            cell_dimension(&p("2,5,6,3,4,1"), &DimensionSequence::full_flag(6)).unwrap(),
            9
        );
    }

    /// Brute-force Bruhat order on Σ_4 by transitive closure of the cover
    /// moves (apply a transposition, length goes up), compared against the
    /// rank-matrix criterion on every pair.
    #[test]
    fn bruhat_matches_transitive_closure_on_sigma_4() {
        let all: Vec<Permutation> = (1..=4usize)
            .permutations(4)
            .map(|v| Permutation::from_images(v).unwrap())
            .collect();
        let idx = |w: &Permutation| all.iter().position(|x| x == w).unwrap();
        let n = all.len();
        // reach[a][b] = b is obtainable from a by length-increasing transpositions.
        let mut reach = vec![vec![false; n]; n];
        for (a, w) in all.iter().enumerate() {
            reach[a][a] = true;
            for i in 0..4 {
                for j in i + 1..4 {
                    let mut images = w.images().to_vec();
                    images.swap(i, j);
                    let t = Permutation::from_images(images).unwrap();
                    if t.length() > w.length() {
                        reach[a][idx(&t)] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if reach[a][k] && reach[k][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                assert_eq!(
                    bruhat_leq(&all[a], &all[b]).unwrap(),
                    reach[a][b],
                    "disagreement at {} vs {}",
                    all[a],
                    all[b]
                );
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let id = Permutation::identity(4);
        for images in (1..=4usize).permutations(4) {
            let w = Permutation::from_images(images).unwrap();
            assert!(bruhat_leq(&id, &w).unwrap());
            assert!(bruhat_leq(&w, &w).unwrap());
        }
        // The two length-4 members of Σ_4 are incomparable.
        assert!(!bruhat_leq(&p("2,4,3,1"), &p("3,4,1,2")).unwrap());
        assert!(!bruhat_leq(&p("3,4,1,2"), &p("2,4,3,1")).unwrap());
        assert!(bruhat_leq(&p("1,2,3"), &p("1,2,3,4")).is_err());
    }
}
