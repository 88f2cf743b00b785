//! Exact flag geometry: τ-genericity, isotropy with respect to the standard
//! bilinear form, orientation for even ambient dimension, and locating the
//! Schubert cell containing a flag.
//!
//! A flag is stored as a full adapted basis — n column vectors over the
//! Gaussian rationals — together with a dimension sequence; the first δ_i
//! columns span the subspace V_i.  One representation serves full and
//! partial flags alike: projecting a flag to a coarser type is a matter of
//! reading fewer prefix levels off the same basis.

use serde::{Deserialize, Serialize};

use crate::exactnum::{gram, ExactMatrix, Form, GaussianRational};
use crate::perm::{DimensionSequence, Permutation};
use crate::Error;

/// A flag V_1 ⊂ … ⊂ V_s = ℂⁿ of type `dims`, as an adapted basis.
///
/// JSON form: `{"n": …, "dims": […], "basis": [[…], …]}` where `basis` is
/// the list of n column vectors, each a list of n canonical scalar strings.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FlagRepr", into = "FlagRepr")]
pub struct Flag {
    dims: DimensionSequence,
    basis: ExactMatrix,
}

#[derive(Serialize, Deserialize)]
struct FlagRepr {
    n: usize,
    dims: Vec<usize>,
    basis: Vec<Vec<String>>,
}

impl Flag {
    /// Builds a flag from its adapted basis given as column vectors.  The
    /// columns must be n vectors of length n with exact rank n (this also
    /// forces every prefix to have full rank).
    pub fn new(dims: DimensionSequence, columns: Vec<Vec<GaussianRational>>) -> Result<Self, Error> {
        let n = dims.n();
        if columns.len() != n || columns.iter().any(|c| c.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "flag of type ({dims}) needs {n} column vectors of length {n}"
            )));
        }
        let basis = ExactMatrix::from_columns(columns)?;
        if basis.rank() != n {
            return Err(Error::InvalidInput(
                "flag basis is singular: columns must be linearly independent".into(),
            ));
        }
        Ok(Flag { dims, basis })
    }

    pub fn n(&self) -> usize {
        self.dims.n()
    }

    pub fn dims(&self) -> &DimensionSequence {
        &self.dims
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    /// Basis matrix of V_i for the i-th level (1-based), i.e. the first δ_i
    /// columns.
    pub fn level(&self, i: usize) -> ExactMatrix {
        self.basis.columns_prefix(self.dims.delta()[i - 1])
    }

    /// Reinterprets the same adapted basis as a flag of a coarser type.
    pub fn project(&self, dims: DimensionSequence) -> Result<Flag, Error> {
        if dims.n() != self.n() {
            return Err(Error::ShapeMismatch(format!(
                "cannot project a flag in dimension {} to type ({dims})",
                self.n()
            )));
        }
        Ok(Flag {
            dims,
            basis: self.basis.clone(),
        })
    }
}

impl std::fmt::Debug for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Flag(({}), {:?})", self.dims, self.basis)
    }
}

impl TryFrom<FlagRepr> for Flag {
    type Error = Error;
    fn try_from(repr: FlagRepr) -> Result<Self, Error> {
        let dims = DimensionSequence::new(repr.dims)?;
        if dims.n() != repr.n {
            return Err(Error::InvalidInput(format!(
                "dims ({dims}) sum to {}, not the declared n = {}",
                dims.n(),
                repr.n
            )));
        }
        let columns: Vec<Vec<GaussianRational>> = repr
            .basis
            .into_iter()
            .map(|col| col.iter().map(|s| s.parse()).collect())
            .collect::<Result<_, _>>()?;
        Flag::new(dims, columns)
    }
}

impl From<Flag> for FlagRepr {
    fn from(flag: Flag) -> FlagRepr {
        let n = flag.n();
        let basis = (0..n)
            .map(|j| flag.basis.column(j).iter().map(|e| e.to_string()).collect())
            .collect();
        FlagRepr {
            n,
            dims: flag.dims.parts().to_vec(),
            basis,
        }
    }
}

/// dim(V ∩ W) for subspaces given by full-rank basis matrices with the same
/// ambient dimension: dim V + dim W − rank[V | W].
fn intersection_dim(v: &ExactMatrix, w: &ExactMatrix) -> usize {
    let stacked = v.hstack(w).expect("same ambient dimension");
    v.cols() + w.cols() - stacked.rank()
}

/// τ-genericity: the flag meets its complex conjugate as little as the
/// dimensions allow, dim(V_i ∩ τ(V_j)) = max{0, δ_i + δ_j − n} for all i, j.
/// These are the flags in the open SL(n,ℝ)-orbit.
pub fn is_tau_generic(z: &Flag) -> bool {
    let delta = z.dims().delta();
    let n = z.n();
    let s = delta.len();
    // The condition is symmetric in (i, j): conjugating the intersection
    // swaps the roles, so only i ≤ j is checked.  V_s = ℂⁿ meets everything
    // in full, so the top level is skipped.
    let conjugates: Vec<ExactMatrix> = (1..s).map(|j| z.level(j).conjugate()).collect();
    for i in 1..s {
        let vi = z.level(i);
        for j in i..s {
            let expected = (delta[i - 1] + delta[j - 1]).saturating_sub(n);
            if intersection_dim(&vi, &conjugates[j - 1]) != expected {
                return false;
            }
        }
    }
    true
}

/// Isotropy with respect to the standard symmetric bilinear form b(v,w) =
/// vᵗw: dim(V_i ∩ V_j^⊥) = min{δ_i, n − δ_j} for all i, j, computed as
/// δ_i − rank(gram(V_j, V_i)).  These flags make up the base cycle.
pub fn is_isotropic(z: &Flag) -> bool {
    let delta = z.dims().delta();
    let n = z.n();
    let s = delta.len();
    // gram(V_j, V_i) is the transpose of gram(V_i, V_j); rank is symmetric,
    // so only i ≤ j is checked.  Pairing against V_s = ℂⁿ always has rank
    // δ_i (the form is nondegenerate), so the top level is skipped.
    for i in 1..s {
        for j in i..s {
            let g = gram(&z.level(j), &z.level(i), Form::Bilinear).expect("same ambient dimension");
            let expected = (delta[i - 1] + delta[j - 1]).saturating_sub(n);
            if g.rank() != expected {
                return false;
            }
        }
    }
    true
}

/// Orientation of a flag with even ambient dimension n = 2m, read off the
/// middle subspace V_m: the sign of the real 2m×2m determinant whose columns
/// interleave real and imaginary parts of a basis of V_m.  A complex change
/// of basis scales this determinant by |det T|² > 0, so the sign depends
/// only on the subspace; τ-genericity (V_m ∩ τ(V_m) = 0) makes it nonzero.
pub fn orientation(z: &Flag) -> Result<i32, Error> {
    let n = z.n();
    if n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "orientation needs even ambient dimension, got n = {n}"
        )));
    }
    let m = n / 2;
    let level = z
        .dims()
        .delta()
        .iter()
        .position(|&d| d == m)
        .ok_or_else(|| {
            Error::Precondition(format!(
                "orientation needs the middle subspace of dimension {m} as a flag level of ({})",
                z.dims()
            ))
        })?;
    let vm = z.level(level + 1);
    let mut real = ExactMatrix::zeros(n, n);
    for j in 0..m {
        for r in 0..n {
            let entry = vm.get(r, j);
            real.set(r, 2 * j, GaussianRational::from_rational(entry.re().clone()));
            real.set(r, 2 * j + 1, GaussianRational::from_rational(entry.im().clone()));
        }
    }
    let det = real.det()?;
    use num::Signed;
    if det.re().is_positive() {
        Ok(1)
    } else if det.re().is_negative() {
        Ok(-1)
    } else {
        Err(Error::Precondition(
            "orientation undefined: V_m meets its conjugate".into(),
        ))
    }
}

/// Finds the Schubert cell containing the flag: reduces the basis to column
/// echelon form, reads off the pivot rows, and groups them by flag level.
/// Column c's pivot is its lowest nonzero row after cancelling against
/// earlier pivots; the rows pivoted within level i but not level i−1, sorted
/// ascending, form the i-th block of the answer — which is therefore a
/// minimal representative for the flag's type.
pub fn cell_of_flag(z: &Flag) -> Permutation {
    let n = z.n();
    let mut cols: Vec<Vec<GaussianRational>> = (0..n).map(|j| z.basis().column(j)).collect();
    // pivot_of_row[r] = index of the finished column whose pivot is row r.
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; n];
    let mut pivot_row_of_col = vec![0usize; n];
    for c in 0..n {
        loop {
            let low = (0..n)
                .rev()
                .find(|&r| !cols[c][r].is_zero())
                .expect("full-rank basis cannot reduce a column to zero");
            match pivot_of_row[low] {
                Some(p) => {
                    // Cancel the low entry against column p; this only
                    // touches rows ≤ low, so the new low is strictly higher.
                    let factor = &cols[c][low] / &cols[p][low];
                    for r in 0..=low {
                        let delta = &factor * &cols[p][r];
                        cols[c][r] = &cols[c][r] - &delta;
                    }
                    debug_assert!(cols[c][low].is_zero());
                }
                None => {
                    pivot_of_row[low] = Some(c);
                    pivot_row_of_col[c] = low;
                    break;
                }
            }
        }
    }
    let mut images = Vec::with_capacity(n);
    let mut start = 0;
    for &d in z.dims().parts() {
        let mut block: Vec<usize> = pivot_row_of_col[start..start + d]
            .iter()
            .map(|&r| r + 1)
            .collect();
        block.sort_unstable();
        images.extend(block);
        start += d;
    }
    Permutation::from_images(images).expect("pivot rows form a bijection")
}

/// Whether two flags of the same type have identical subspaces at every
/// level, decided by exact rank: span(A) = span(B) iff rank[A|B] stays at
/// the common column count.
pub fn flags_equal(a: &Flag, b: &Flag) -> Result<bool, Error> {
    if a.dims() != b.dims() {
        return Err(Error::ShapeMismatch(format!(
            "comparing flags of types ({}) and ({})",
            a.dims(),
            b.dims()
        )));
    }
    let delta = a.dims().delta();
    for (i, &d) in delta.iter().enumerate() {
        if d == a.n() {
            continue; // top level is the whole space for both
        }
        let stacked = a.level(i + 1).hstack(&b.level(i + 1))?;
        if stacked.rank() != d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The coordinate flag of a permutation: column a is the standard basis
/// vector e_{w(a)}.
pub fn coordinate_flag(w: &Permutation, dims: DimensionSequence) -> Result<Flag, Error> {
    if w.n() != dims.n() {
        return Err(Error::ShapeMismatch(format!(
            "permutation of Σ_{} against dimension sequence summing to {}",
            w.n(),
            dims.n()
        )));
    }
    let n = w.n();
    let columns = (1..=n)
        .map(|a| {
            let mut col = vec![GaussianRational::zero(); n];
            col[w.image(a) - 1] = GaussianRational::one();
            col
        })
        .collect();
    Flag::new(dims, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn ff(n: usize) -> DimensionSequence {
        DimensionSequence::full_flag(n)
    }

    fn flag(dims: &str, cols: &[&[&str]]) -> Flag {
        let dims: DimensionSequence = dims.parse().unwrap();
        let columns = cols.iter().map(|c| c.iter().map(|s| g(s)).collect()).collect();
        Flag::new(dims, columns).unwrap()
    }

    #[test]
    fn construction_guards() {
        // Singular basis is rejected.
        let cols = vec![vec![g("1"), g("0")], vec![g("2"), g("0")]];
        assert!(Flag::new(ff(2), cols).is_err());
        // Wrong column count.
        let cols = vec![vec![g("1"), g("0")]];
        assert!(Flag::new(ff(2), cols).is_err());
    }

    #[test]
    fn tau_generic_examples() {
        let z = flag("1,1,1", &[&["i", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]]);
        assert!(is_tau_generic(&z));
        let coord = coordinate_flag(&Permutation::identity(3), ff(3)).unwrap();
        assert!(!is_tau_generic(&coord));
    }

    #[test]
    fn isotropic_examples() {
        // V_1 = span(i·e1 + e2) in ℂ², completed by e1: b(v,v) = 0.
        let z = flag("1,1", &[&["i", "1"], &["1", "0"]]);
        assert!(is_isotropic(&z));
        assert!(is_tau_generic(&z));
        let coord = coordinate_flag(&Permutation::identity(2), ff(2)).unwrap();
        assert!(!is_isotropic(&coord));
    }

    #[test]
    fn cell_of_coordinate_flags() {
        for w in ["1,2,3", "2,3,1", "3,1,2", "2,4,3,1"] {
            let w: Permutation = w.parse().unwrap();
            let z = coordinate_flag(&w, ff(w.n())).unwrap();
            assert_eq!(cell_of_flag(&z), w);
        }
    }

    #[test]
    fn cell_locates_reduced_columns() {
        let z = flag("1,1,1", &[&["i", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]]);
        assert_eq!(cell_of_flag(&z), "2,3,1".parse().unwrap());
        // Second column collides with the first pivot and must be reduced.
        let z = flag("1,1", &[&["i", "1"], &["0", "1"]]);
        assert_eq!(cell_of_flag(&z), "2,1".parse().unwrap());
    }

    #[test]
    fn cell_respects_partial_types() {
        // Same basis, coarser type: blocks come out sorted.
        let z = flag("1,1,1", &[&["0", "0", "1"], &["0", "1", "0"], &["1", "0", "0"]]);
        assert_eq!(cell_of_flag(&z), "3,2,1".parse().unwrap());
        let partial = z.project("2,1".parse().unwrap()).unwrap();
        assert_eq!(cell_of_flag(&partial), "2,3,1".parse().unwrap());
    }

    #[test]
    fn orientation_interleaved_determinant() {
        // Pairs (2,1) and (4,3) with both signs +: columns e2,e1,e4,e3 as
        // real interleaving, an even permutation of the identity.
        let plus = flag(
            "1,1,1,1",
            &[
                &["i", "1", "0", "0"],
                &["0", "0", "i", "1"],
                &["0", "0", "1", "0"],
                &["1", "0", "0", "0"],
            ],
        );
        assert_eq!(orientation(&plus).unwrap(), 1);
        // Flipping one sign reverses the orientation.
        let mixed = flag(
            "1,1,1,1",
            &[
                &["-i", "1", "0", "0"],
                &["0", "0", "i", "1"],
                &["0", "0", "1", "0"],
                &["1", "0", "0", "0"],
            ],
        );
        assert_eq!(orientation(&mixed).unwrap(), -1);
        // Positive rescaling leaves it unchanged.
        let rescaled = flag(
            "1,1,1,1",
            &[
                &["2i", "2", "0", "0"],
                &["0", "0", "i", "1"],
                &["0", "0", "1", "0"],
                &["1", "0", "0", "0"],
            ],
        );
        assert_eq!(orientation(&rescaled).unwrap(), 1);
    }

    #[test]
    fn orientation_preconditions() {
        let odd = coordinate_flag(&Permutation::identity(3), ff(3)).unwrap();
        assert!(orientation(&odd).is_err());
        // Type (2,4) of n=6 has no level at m=3.
        let id6 = Permutation::identity(6);
        let z = coordinate_flag(&id6, "2,4".parse().unwrap()).unwrap();
        assert!(orientation(&z).is_err());
        // Coordinate flags have real V_m: the determinant degenerates.
        let real = coordinate_flag(&Permutation::identity(4), ff(4)).unwrap();
        assert!(orientation(&real).is_err());
    }

    #[test]
    fn flag_equality_by_spans() {
        let a = flag("1,1", &[&["i", "1"], &["1", "0"]]);
        // Same spans, different adapted basis: scale V_1's vector, change
        // the completion vector by something inside the flag.
        let b = flag("1,1", &[&["2i", "2"], &["1+i", "1"]]);
        assert!(flags_equal(&a, &b).unwrap());
        let c = flag("1,1", &[&["-i", "1"], &["1", "0"]]);
        assert!(!flags_equal(&a, &c).unwrap());
        let partial = a.project("2".parse().unwrap()).unwrap();
        assert!(flags_equal(&a, &partial).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let z = flag("1,1,1", &[&["i", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]]);
        let json = serde_json::to_string(&z).unwrap();
        let back: Flag = serde_json::from_str(&json).unwrap();
        assert_eq!(z, back);
        assert!(json.contains("\"n\":3"));
        // A singular basis is rejected on the way in.
        let bad = r#"{"n":2,"dims":[1,1],"basis":[["1","0"],["2","0"]]}"#;
        assert!(serde_json::from_str::<Flag>(bad).is_err());
        // So is a dims/n mismatch.
        let bad = r#"{"n":3,"dims":[1,1],"basis":[["1","0"],["0","1"]]}"#;
        assert!(serde_json::from_str::<Flag>(bad).is_err());
    }

    #[test]
    fn projection_keeps_isotropy_checks_consistent() {
        // An isotropic τ-generic full flag in ℂ⁴ stays so at type (2,2),
        // where only the middle level is checked.
        let z = flag(
            "1,1,1,1",
            &[
                &["i", "1", "0", "0"],
                &["0", "0", "i", "1"],
                &["0", "0", "1", "0"],
                &["1", "0", "0", "0"],
            ],
        );
        assert!(is_isotropic(&z));
        assert!(is_tau_generic(&z));
        let projected = z.project("2,2".parse().unwrap()).unwrap();
        assert!(is_isotropic(&projected));
        assert!(is_tau_generic(&projected));
        assert_eq!(orientation(&projected).unwrap(), orientation(&z).unwrap());
    }
}
