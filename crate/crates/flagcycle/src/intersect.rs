//! Explicit intersection points of a dual Schubert variety with the base
//! cycle, and the verification report that checks a claimed member end to
//! end with exact arithmetic.

use serde::Serialize;

use crate::conditions::{
    canonical_rearrangement, double_box, generalized_double_box, generalized_spacing, spacing,
    split_pairs,
};
use crate::enumerate::enumerate_nonmeasurable;
use crate::exactnum::GaussianRational;
use crate::flags::{cell_of_flag, flags_equal, is_isotropic, is_tau_generic, orientation, Flag};
use crate::geometry::expected_schubert_dim;
use crate::perm::{min_rep, Classification, DimensionSequence, Permutation};
use crate::Error;

/// The 2^m candidate intersection points read off the end pairs of w.  For
/// each sign vector σ ∈ {±1}^m the flag has basis columns
///
///   σ_1·i·e_{l_1} + e_{k_1}, …, σ_m·i·e_{l_m} + e_{k_m},
///   (e_{l_*} when n is odd,)  e_{l_m}, …, e_{l_1},
///
/// where k_j = w(j) and l_j = w(n+1−j).  Sign j is read from bit j−1 of the
/// mask, 0 meaning +1, so mask 0 is the all-plus point and masks are emitted
/// in increasing order.  The construction itself needs nothing from w beyond
/// its values; whether the flags actually lie on the cycle and in the open
/// orbits is what the membership conditions decide.
pub fn construct_points(w: &Permutation) -> Vec<Flag> {
    let n = w.n();
    let m = n / 2;
    let (pairs, middle) = split_pairs(w);
    let dims = DimensionSequence::full_flag(n);
    let mut flags = Vec::with_capacity(1 << m);
    for mask in 0usize..(1 << m) {
        let mut columns = Vec::with_capacity(n);
        for (j, &(k, l)) in pairs.iter().enumerate() {
            let mut v = vec![GaussianRational::zero(); n];
            let sign: i64 = if mask >> j & 1 == 0 { 1 } else { -1 };
            v[l - 1] = GaussianRational::i() * GaussianRational::from_int(sign);
            v[k - 1] = GaussianRational::one();
            columns.push(v);
        }
        if let Some(mid) = middle {
            let mut v = vec![GaussianRational::zero(); n];
            v[mid - 1] = GaussianRational::one();
            columns.push(v);
        }
        for &(_, l) in pairs.iter().rev() {
            let mut v = vec![GaussianRational::zero(); n];
            v[l - 1] = GaussianRational::one();
            columns.push(v);
        }
        flags.push(Flag::new(dims.clone(), columns).expect("sign-vector basis is invertible"));
    }
    flags
}

/// Intersection points of the full-flag Schubert variety S_w with the base
/// cycle: the 2^m flags of `construct_points`, valid exactly when w
/// satisfies the double box condition.
pub fn intersection_points_fullflag(w: &Permutation) -> Result<Vec<Flag>, Error> {
    if !double_box(w) {
        return Err(Error::Precondition(format!(
            "{w} does not satisfy the double box condition; S_{{{w}}} is not dual to the cycle"
        )));
    }
    Ok(construct_points(w))
}

/// One intersection point of a partial-flag Schubert variety, together with
/// the orientation class it meets (only defined when n is even).
#[derive(Clone, Debug)]
pub struct LabeledPoint {
    pub flag: Flag,
    pub orientation: Option<i32>,
}

/// Intersection points for a symmetric type d: lift w to its canonical
/// rearrangement, construct the full-flag points, project to type d, and
/// keep one representative per distinct flag.  Masks are scanned in
/// increasing order, so each projected point is represented by its lowest
/// mask — the lift whose collapsed middle signs are all +, which is the one
/// used to label the orientation class when n is even.
pub fn partial_points_labeled(
    w: &Permutation,
    d: &DimensionSequence,
) -> Result<Vec<LabeledPoint>, Error> {
    if !generalized_double_box(w, d)? {
        return Err(Error::Precondition(format!(
            "{w} does not satisfy the double box condition for type ({d})"
        )));
    }
    let lift = canonical_rearrangement(w, d)?;
    project_and_label(&lift, d)
}

/// Intersection points of S_w with the base cycle in a flag manifold of
/// symmetric type d.
pub fn intersection_points_partial(
    w: &Permutation,
    d: &DimensionSequence,
) -> Result<Vec<Flag>, Error> {
    Ok(partial_points_labeled(w, d)?
        .into_iter()
        .map(|p| p.flag)
        .collect())
}

fn project_and_label(
    lift: &Permutation,
    d: &DimensionSequence,
) -> Result<Vec<LabeledPoint>, Error> {
    let even = d.n() % 2 == 0;
    let mut points: Vec<LabeledPoint> = Vec::new();
    for full in construct_points(lift) {
        let label = if even { Some(orientation(&full)?) } else { None };
        let projected = full.project(d.clone())?;
        let mut seen = false;
        for kept in &points {
            if flags_equal(&kept.flag, &projected)? {
                seen = true;
                break;
            }
        }
        if !seen {
            points.push(LabeledPoint {
                flag: projected,
                orientation: label,
            });
        }
    }
    Ok(points)
}

/// Intersection points (with orientation labels when n is even) for any
/// type: full flags construct directly, symmetric types lift through the
/// canonical rearrangement, non-symmetric types lift through the member's
/// measurable model.  Errors if w is not a member for d.
pub fn intersection_points_labeled(
    w: &Permutation,
    d: &DimensionSequence,
) -> Result<Vec<LabeledPoint>, Error> {
    if w.n() != d.n() {
        return Err(Error::ShapeMismatch(format!(
            "w acts on {} letters but the type sums to {}",
            w.n(),
            d.n()
        )));
    }
    match d.classification() {
        Classification::FullFlag => {
            let even = d.n() % 2 == 0;
            intersection_points_fullflag(w)?
                .into_iter()
                .map(|flag| {
                    let orientation = if even { Some(orientation(&flag)?) } else { None };
                    Ok(LabeledPoint { flag, orientation })
                })
                .collect()
        }
        Classification::SymmetricD { .. } | Classification::SymmetricE { .. } => {
            partial_points_labeled(w, d)
        }
        Classification::NonSymmetric => {
            let lift = enumerate_nonmeasurable(d)?
                .into_iter()
                .find(|mem| &mem.w == w)
                .map(|mem| mem.model.lift)
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "{w} is not the projection of any measurable member for type ({d})"
                    ))
                })?;
            project_and_label(&lift, d)
        }
    }
}

/// Checks run on a single constructed intersection point.
#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub isotropic: bool,
    pub tau_generic: bool,
    pub in_cell: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<i32>,
}

/// Everything `verify_intersection` measured about one (w, d) pair.  `pass`
/// is true exactly when w is a member for type d, its length matches the
/// common dimension of the dual Schubert varieties, the constructed points
/// are pairwise distinct in the expected number, every point is isotropic,
/// τ-generic and lies in the cell of w, and (for even n) the points split
/// evenly between the two orientation classes.  Any failed check appends a
/// line to `failures` instead of aborting.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub w: Permutation,
    pub dims: DimensionSequence,
    pub spacing: bool,
    pub double_box: bool,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_distinct: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_per_orbit: Option<usize>,
    pub constructed: usize,
    pub distinct: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plus_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minus_points: Option<usize>,
    pub points: Vec<PointCheck>,
    pub failures: Vec<String>,
}

fn push_fail(failures: &mut Vec<String>, msg: String) {
    failures.push(msg);
}

/// Per-orbit intersection count for a symmetric type: 2^m for odd full
/// flags, 2^{m−1} for even full flags and symmetric-d types, 2^{d_1+⋯+d_s}
/// and 2^{d_1+⋯+d_s−1} for odd and even symmetric-e types.
fn per_orbit_count(d: &DimensionSequence) -> Option<usize> {
    let n = d.n();
    let m = n / 2;
    match d.classification() {
        Classification::FullFlag => Some(if n % 2 == 1 { 1 << m } else { 1 << (m - 1) }),
        Classification::SymmetricD { .. } => Some(1 << (m - 1)),
        Classification::SymmetricE { s, .. } => {
            if s == 0 {
                return None;
            }
            let lead: usize = d.parts()[..s].iter().sum();
            Some(if n % 2 == 1 { 1 << lead } else { 1 << (lead - 1) })
        }
        Classification::NonSymmetric => None,
    }
}

/// Total number of distinct projected points for a symmetric type:
/// 2^{d_1+⋯+d_s} with s = ⌊(number of blocks)/2⌋.  For a full flag this is
/// 2^m; middle-block sign choices collapse under projection.
fn distinct_count(d: &DimensionSequence) -> usize {
    let lead: usize = d.parts()[..d.len() / 2].iter().sum();
    1 << lead
}

fn check_points(
    w: &Permutation,
    d: &DimensionSequence,
    labeled: &[LabeledPoint],
    report_even: bool,
    failures: &mut Vec<String>,
) -> (Vec<PointCheck>, Option<usize>, Option<usize>) {
    let expected_cell = min_rep(w, d).unwrap_or_else(|_| w.clone());
    let mut checks = Vec::with_capacity(labeled.len());
    let mut plus = 0usize;
    let mut minus = 0usize;
    for (idx, point) in labeled.iter().enumerate() {
        let isotropic = is_isotropic(&point.flag);
        let tau_generic = is_tau_generic(&point.flag);
        let in_cell = cell_of_flag(&point.flag) == expected_cell;
        if !isotropic {
            push_fail(failures, format!("point {idx} is not isotropic"));
        }
        if !tau_generic {
            push_fail(failures, format!("point {idx} is not τ-generic"));
        }
        if !in_cell {
            push_fail(failures, format!("point {idx} lies outside the cell of {w}"));
        }
        match point.orientation {
            Some(1) => plus += 1,
            Some(-1) => minus += 1,
            _ => {}
        }
        checks.push(PointCheck {
            isotropic,
            tau_generic,
            in_cell,
            orientation: point.orientation,
        });
    }
    if report_even {
        if plus != minus {
            push_fail(
                failures,
                format!("orientation split {plus}/{minus} is uneven"),
            );
        }
        (checks, Some(plus), Some(minus))
    } else {
        (checks, None, None)
    }
}

/// Runs every check the library can make about the claimed duality between
/// S_w and the base cycle of type d, and reports rather than errors: a
/// non-member, a length mismatch, or a failed point check all come back as
/// `pass = false` with an explanation.
pub fn verify_intersection(w: &Permutation, d: &DimensionSequence) -> VerifyReport {
    let n = d.n();
    let even = n % 2 == 0;
    let mut failures = Vec::new();
    let length = w.length();

    if w.n() != n {
        return VerifyReport {
            pass: false,
            w: w.clone(),
            dims: d.clone(),
            spacing: false,
            double_box: false,
            length,
            expected_length: None,
            expected_distinct: None,
            expected_per_orbit: None,
            constructed: 0,
            distinct: 0,
            plus_points: None,
            minus_points: None,
            points: Vec::new(),
            failures: vec![format!(
                "w acts on {} letters but the type sums to {n}",
                w.n()
            )],
        };
    }

    let expected_length = expected_schubert_dim(d).ok();

    // For a non-symmetric type membership has no local test; it means being
    // the projection of a measurable-model member, so we look w up in the
    // enumeration and keep the matching lift for the construction below.
    let mut model_lift = None;
    let (spacing_ok, member) = match d.classification() {
        Classification::FullFlag => (spacing(w), double_box(w)),
        Classification::SymmetricD { .. } | Classification::SymmetricE { .. } => {
            let sp = generalized_spacing(w, d);
            let db = generalized_double_box(w, d);
            match (sp, db) {
                (Ok(sp), Ok(db)) => (sp, db),
                (sp, db) => {
                    let err = sp.err().or_else(|| db.err()).unwrap();
                    push_fail(&mut failures, err.to_string());
                    (false, false)
                }
            }
        }
        Classification::NonSymmetric => {
            match enumerate_nonmeasurable(d) {
                Ok(members) => {
                    model_lift = members
                        .into_iter()
                        .find(|mem| &mem.w == w)
                        .map(|mem| mem.model.lift);
                }
                Err(err) => push_fail(&mut failures, err.to_string()),
            }
            let member = model_lift.is_some();
            (member, member)
        }
    };

    if !member {
        push_fail(
            &mut failures,
            format!("{w} is not a member for type ({d}); no points constructed"),
        );
        return VerifyReport {
            pass: false,
            w: w.clone(),
            dims: d.clone(),
            spacing: spacing_ok,
            double_box: false,
            length,
            expected_length,
            expected_distinct: None,
            expected_per_orbit: None,
            constructed: 0,
            distinct: 0,
            plus_points: None,
            minus_points: None,
            points: Vec::new(),
            failures,
        };
    }

    match expected_length {
        Some(expected) if expected != length => {
            push_fail(
                &mut failures,
                format!("length {length} differs from the expected dimension {expected}"),
            );
        }
        None => push_fail(&mut failures, "expected dimension is undefined".into()),
        _ => {}
    }

    // Construct the points.  Members of a non-symmetric type go through
    // their measurable model's lift; symmetric types (full flags included)
    // go through the canonical rearrangement directly.
    let (labeled, constructed, expected_distinct, expected_per_orbit) =
        match d.classification() {
            Classification::FullFlag => {
                let labeled: Result<Vec<LabeledPoint>, Error> = construct_points(w)
                    .into_iter()
                    .map(|flag| {
                        let orientation = if even { Some(orientation(&flag)?) } else { None };
                        Ok(LabeledPoint { flag, orientation })
                    })
                    .collect();
                match labeled {
                    Ok(labeled) => {
                        let count = labeled.len();
                        (labeled, count, Some(distinct_count(d)), per_orbit_count(d))
                    }
                    Err(err) => {
                        push_fail(&mut failures, err.to_string());
                        (Vec::new(), 0, None, None)
                    }
                }
            }
            Classification::SymmetricD { .. } | Classification::SymmetricE { .. } => {
                match partial_points_labeled(w, d) {
                    Ok(labeled) => {
                        let constructed = 1 << (n / 2);
                        (labeled, constructed, Some(distinct_count(d)), per_orbit_count(d))
                    }
                    Err(err) => {
                        push_fail(&mut failures, err.to_string());
                        (Vec::new(), 0, None, None)
                    }
                }
            }
            Classification::NonSymmetric => {
                let lift = model_lift.take().expect("membership was established above");
                match project_and_label(&lift, d) {
                    Ok(labeled) => {
                        let model = crate::enumerate::measurable_model(d);
                        (
                            labeled,
                            1 << (lift.n() / 2),
                            Some(distinct_count(&model.model)),
                            per_orbit_count(&model.model),
                        )
                    }
                    Err(err) => {
                        push_fail(&mut failures, err.to_string());
                        (Vec::new(), 0, None, None)
                    }
                }
            }
        };

    // For full flags every mask gives a distinct flag (the spans differ in
    // the V_j); for projected types distinctness was enforced during
    // construction, so `labeled` already holds the distinct points.
    let distinct = if matches!(d.classification(), Classification::FullFlag) {
        let mut count = 0usize;
        let mut dedup_failed = false;
        for (i, a) in labeled.iter().enumerate() {
            let mut fresh = true;
            for b in labeled.iter().take(i) {
                match flags_equal(&a.flag, &b.flag) {
                    Ok(true) => {
                        fresh = false;
                        break;
                    }
                    Ok(false) => {}
                    Err(err) => {
                        if !dedup_failed {
                            push_fail(&mut failures, err.to_string());
                            dedup_failed = true;
                        }
                    }
                }
            }
            if fresh {
                count += 1;
            }
        }
        count
    } else {
        labeled.len()
    };

    if let Some(expected) = expected_distinct {
        if distinct != expected {
            push_fail(
                &mut failures,
                format!("{distinct} distinct points where {expected} were expected"),
            );
        }
    }

    let (points, plus_points, minus_points) = check_points(w, d, &labeled, even, &mut failures);

    if let (Some(per_orbit), Some(plus)) = (expected_per_orbit, plus_points) {
        if plus != per_orbit {
            push_fail(
                &mut failures,
                format!("{plus} points per orientation class where {per_orbit} were expected"),
            );
        }
    }
    if let (Some(per_orbit), None) = (expected_per_orbit, plus_points) {
        // Odd n: a single orbit meets all the distinct points.
        if distinct != per_orbit {
            push_fail(
                &mut failures,
                format!("{distinct} points in the orbit where {per_orbit} were expected"),
            );
        }
    }

    VerifyReport {
        pass: failures.is_empty(),
        w: w.clone(),
        dims: d.clone(),
        spacing: spacing_ok,
        double_box: member,
        length,
        expected_length,
        expected_distinct,
        expected_per_orbit,
        constructed,
        distinct,
        plus_points,
        minus_points,
        points,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }
    fn d(s: &str) -> DimensionSequence {
        s.parse().unwrap()
    }

    #[test]
    fn two_points_on_the_projective_line_pencil() {
        let points = intersection_points_fullflag(&p("2,3,1")).unwrap();
        assert_eq!(points.len(), 2);
        // V_1 = span(±i·e_1 + e_2) for the two sign choices.
        for (idx, flag) in points.iter().enumerate() {
            let v = flag.basis().column(0);
            assert_eq!(v[0].im(), &BigRational::from_integer(if idx == 0 { 1 } else { -1 }.into()));
            assert_eq!(v[1], crate::exactnum::GaussianRational::one());
            assert!(v[2].is_zero());
        }
    }

    #[test]
    fn member_at_six_letters_passes_all_checks() {
        let report = verify_intersection(&p("2,5,6,3,4,1"), &DimensionSequence::full_flag(6));
        assert!(report.pass, "failures: {:?}", report.failures);
        assert_eq!(report.constructed, 8);
        assert_eq!(report.distinct, 8);
        assert_eq!(report.expected_per_orbit, Some(4));
        assert_eq!(report.plus_points, Some(4));
        assert_eq!(report.minus_points, Some(4));
        assert!(report.points.iter().all(|c| c.isotropic && c.tau_generic && c.in_cell));
    }

    #[test]
    fn spacing_without_double_box_is_rejected() {
        let w = p("2,6,5,4,3,1");
        assert!(intersection_points_fullflag(&w).is_err());
        let report = verify_intersection(&w, &DimensionSequence::full_flag(6));
        assert!(!report.pass);
        assert!(report.spacing);
        assert!(!report.double_box);
        assert_eq!(report.constructed, 0);
        assert!(report.points.is_empty());
    }

    #[test]
    fn identity_fails_spacing() {
        let report = verify_intersection(&p("1,2,3,4"), &DimensionSequence::full_flag(4));
        assert!(!report.pass);
        assert!(!report.spacing);
        assert!(!report.double_box);
    }

    #[test]
    fn four_letter_member_splits_two_and_two() {
        let report = verify_intersection(&p("2,4,3,1"), &DimensionSequence::full_flag(4));
        assert!(report.pass, "failures: {:?}", report.failures);
        assert_eq!(report.distinct, 4);
        assert_eq!(report.plus_points, Some(2));
        assert_eq!(report.minus_points, Some(2));
        // Mask 0 is the all-plus point, whose orientation is positive here.
        assert_eq!(report.points[0].orientation, Some(1));
    }

    #[test]
    fn partial_type_collapses_middle_signs() {
        // (1,2,2,1): all eight lifted points stay distinct.
        let report = verify_intersection(&p("2,4,6,3,5,1"), &d("1,2,2,1"));
        assert!(report.pass, "failures: {:?}", report.failures);
        assert_eq!(report.constructed, 8);
        assert_eq!(report.distinct, 8);
        assert_eq!(report.expected_per_orbit, Some(4));

        // (1,4,1): the middle two sign choices collapse, leaving 2 points
        // split one per orientation class.
        for member in crate::enumerate::enumerate_measurable(&d("1,4,1")).unwrap() {
            let report = verify_intersection(&member.w, &d("1,4,1"));
            assert!(report.pass, "member {}: {:?}", member.w, report.failures);
            assert_eq!(report.constructed, 8);
            assert_eq!(report.distinct, 2);
            assert_eq!(report.plus_points, Some(1));
            assert_eq!(report.minus_points, Some(1));
        }
    }

    #[test]
    fn odd_symmetric_type_keeps_leading_signs() {
        // (1,3,1), n = 5: 2 distinct points, one orbit, no orientation.
        let members = crate::enumerate::enumerate_measurable(&d("1,3,1")).unwrap();
        assert!(!members.is_empty());
        for member in members {
            let report = verify_intersection(&member.w, &d("1,3,1"));
            assert!(report.pass, "member {}: {:?}", member.w, report.failures);
            assert_eq!(report.distinct, 2);
            assert_eq!(report.expected_per_orbit, Some(2));
            assert_eq!(report.plus_points, None);
        }
    }

    #[test]
    fn non_symmetric_type_goes_through_its_model() {
        let members = enumerate_nonmeasurable(&d("1,5")).unwrap();
        assert_eq!(members.len(), 1);
        let report = verify_intersection(&members[0].w, &d("1,5"));
        assert!(report.pass, "failures: {:?}", report.failures);
        assert_eq!(report.distinct, 2);
        assert_eq!(report.plus_points, Some(1));
        assert_eq!(report.minus_points, Some(1));

        // A non-member of the same type reports cleanly.
        let report = verify_intersection(&p("1,2,3,4,5,6"), &d("1,5"));
        assert!(!report.pass);
        assert_eq!(report.constructed, 0);
    }

    #[test]
    fn wrong_letter_count_is_reported_not_panicked() {
        let report = verify_intersection(&p("2,1"), &DimensionSequence::full_flag(3));
        assert!(!report.pass);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn masks_enumerate_all_sign_vectors() {
        let points = construct_points(&p("2,5,6,3,4,1"));
        assert_eq!(points.len(), 8);
        // Bit j−1 of the mask controls pair j: mask 1 flips only σ_1.
        let v = points[1].basis().column(0);
        assert_eq!(v[0].im(), &BigRational::from_integer((-1).into()));
        let u = points[1].basis().column(1);
        assert_eq!(u[3].im(), &BigRational::from_integer(1.into()));
    }
}
