//! Generation of every permutation whose Schubert variety meets the base
//! cycle: the full-flag case via the immediate-predecessor game, the
//! measurable partial-flag case via block steps of the same game, and the
//! non-measurable case by filtering and projecting its measurable model.

use crate::conditions::{canonical_rearrangement, strictly_decreasing_groups};
use crate::perm::{block_decompose, DimensionSequence, Permutation};
use crate::Error;

/// Full-flag enumeration: all w ∈ Σ_n built by repeatedly choosing a value
/// k from the remaining ordered set together with its immediate left
/// neighbor.  There are (n−1)(n−3)⋯ such elements.  Output is sorted
/// lexicographically on one-line notation.
pub fn enumerate_fullflag(n: usize) -> Result<Vec<Permutation>, Error> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "full-flag enumeration needs n >= 2, got {n}"
        )));
    }
    let m = n / 2;
    let mut out = Vec::new();
    let mut ks = Vec::with_capacity(m);
    let mut ls = Vec::with_capacity(m);
    let residual: Vec<usize> = (1..=n).collect();
    fullflag_step(&residual, m, &mut ks, &mut ls, &mut out);
    out.sort();
    Ok(out)
}

fn fullflag_step(
    residual: &[usize],
    remaining: usize,
    ks: &mut Vec<usize>,
    ls: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if remaining == 0 {
        let mut images = ks.clone();
        images.extend(residual.iter().copied()); // at most one leftover (odd n)
        images.extend(ls.iter().rev().copied());
        out.push(Permutation::from_images(images).expect("constructed bijection"));
        return;
    }
    // Any element except the smallest has an immediate left neighbor.
    for idx in 1..residual.len() {
        ks.push(residual[idx]);
        ls.push(residual[idx - 1]);
        let rest: Vec<usize> = residual
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx && i != idx - 1)
            .map(|(_, &v)| v)
            .collect();
        fullflag_step(&rest, remaining - 1, ks, ls, out);
        ks.pop();
        ls.pop();
    }
}

/// A member of the measurable enumeration: the minimal representative `w`
/// together with its canonical rearrangement `lift`, a full-flag member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurableMember {
    pub w: Permutation,
    pub lift: Permutation,
}

/// Measurable partial-flag enumeration for a symmetric dimension sequence:
/// block step j chooses d_j disjoint (left-neighbor, value) pairs from the
/// residual ordered set as it stands at the start of the step; the front
/// blocks collect the values, the mirrored back blocks the neighbors, and
/// for an odd number of blocks the leftover residual is the middle block.
/// Output is sorted lexicographically on the one-line notation of `w`.
pub fn enumerate_measurable(d: &DimensionSequence) -> Result<Vec<MeasurableMember>, Error> {
    if !d.is_symmetric() {
        return Err(Error::Precondition(format!(
            "measurable enumeration needs a symmetric dimension sequence, got ({d})"
        )));
    }
    let half = d.len() / 2;
    let step_sizes: Vec<usize> = d.parts()[..half].to_vec();
    let residual: Vec<usize> = (1..=d.n()).collect();
    let mut front: Vec<Vec<usize>> = Vec::with_capacity(half);
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(half);
    let mut ws = Vec::new();
    measurable_step(&residual, &step_sizes, &mut front, &mut back, &mut ws);
    let mut out = Vec::with_capacity(ws.len());
    for w in ws {
        let lift = canonical_rearrangement(&w, d)?;
        out.push(MeasurableMember { w, lift });
    }
    out.sort_by(|a, b| a.w.cmp(&b.w));
    Ok(out)
}

fn measurable_step(
    residual: &[usize],
    step_sizes: &[usize],
    front: &mut Vec<Vec<usize>>,
    back: &mut Vec<Vec<usize>>,
    out: &mut Vec<Permutation>,
) {
    let Some((&size, rest_sizes)) = step_sizes.split_first() else {
        // Leftover residual (possibly empty) is the middle block.
        let mut images: Vec<usize> = front.iter().flatten().copied().collect();
        images.extend(residual.iter().copied());
        images.extend(back.iter().rev().flatten().copied());
        out.push(Permutation::from_images(images).expect("constructed bijection"));
        return;
    };
    // Choose `size` disjoint adjacent index pairs (q-1, q) of the residual.
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    choose_pairs(residual, size, 1, &mut chosen, &mut |qs| {
        let ks: Vec<usize> = qs.iter().map(|&q| residual[q]).collect();
        let ls: Vec<usize> = qs.iter().map(|&q| residual[q - 1]).collect();
        let rest: Vec<usize> = residual
            .iter()
            .copied()
            .filter(|v| !ks.contains(v) && !ls.contains(v))
            .collect();
        front.push(ks);
        back.push(ls);
        measurable_step(&rest, rest_sizes, front, back, out);
        front.pop();
        back.pop();
    });
}

/// Enumerates index sets q_1 < … < q_size with q_{i+1} ≥ q_i + 2, so the
/// pairs (q−1, q) never overlap.
fn choose_pairs(
    residual: &[usize],
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == size {
        visit(chosen);
        return;
    }
    for q in from..residual.len() {
        chosen.push(q);
        choose_pairs(residual, size, q + 2, chosen, visit);
        chosen.pop();
    }
}

/// The measurable model of an arbitrary dimension sequence f: the refined
/// symmetric sequence d̂ whose partial sums are those of f united with those
/// of reversed f, the grouping t that reassembles f from d̂, and the drop in
/// dimension from the flag manifold of d̂ to that of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurableModel {
    pub original: DimensionSequence,
    pub model: DimensionSequence,
    /// t_j = how many consecutive d̂-blocks merge into the j-th block of f.
    pub t: Vec<usize>,
    /// Partial sums of t: positions within d̂ where each f-block ends.
    pub delta: Vec<usize>,
    /// dim Z(f) = dim Z(d̂) − dim_drop.
    pub dim_drop: usize,
}

pub fn measurable_model(f: &DimensionSequence) -> MeasurableModel {
    let n = f.n();
    let forward = f.delta();
    let mut cuts: Vec<usize> = forward.clone();
    let mut backward_acc = 0;
    for &part in f.parts().iter().rev() {
        backward_acc += part;
        cuts.push(backward_acc);
    }
    cuts.sort_unstable();
    cuts.dedup();
    debug_assert_eq!(*cuts.last().unwrap(), n);

    let mut parts = Vec::with_capacity(cuts.len());
    let mut prev = 0;
    for &c in &cuts {
        parts.push(c - prev);
        prev = c;
    }
    let model = DimensionSequence::new(parts).expect("positive refined parts");

    // delta: 1-based index within `cuts` of each forward partial sum.
    let delta: Vec<usize> = forward
        .iter()
        .map(|x| cuts.iter().position(|c| c == x).unwrap() + 1)
        .collect();
    let mut t = Vec::with_capacity(delta.len());
    let mut prev_idx = 0;
    for &idx in &delta {
        t.push(idx - prev_idx);
        prev_idx = idx;
    }

    // Every merged group of t_j > 1 blocks flattens the pairwise products
    // of its block sizes out of the dimension count.
    let mut dim_drop = 0;
    let mut start = 0;
    for &tj in &t {
        if tj > 1 {
            let group = &model.parts()[start..start + tj];
            for h in 0..group.len() {
                for g in h + 1..group.len() {
                    dim_drop += group[h] * group[g];
                }
            }
        }
        start += tj;
    }

    MeasurableModel {
        original: f.clone(),
        model,
        t,
        delta,
        dim_drop,
    }
}

/// A member of the non-measurable enumeration: the projected minimal
/// representative `w` for the original sequence, and the measurable-model
/// member it comes from (whose length exceeds w's by exactly `dim_drop`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMeasurableMember {
    pub w: Permutation,
    pub model: MeasurableMember,
}

/// Non-measurable enumeration via the measurable model: enumerate the model,
/// keep the members whose grouped blocks descend strictly, and project each
/// survivor by merging every group into a single ascending block.
pub fn enumerate_nonmeasurable(f: &DimensionSequence) -> Result<Vec<NonMeasurableMember>, Error> {
    let model = measurable_model(f);
    if !model.model.is_symmetric() {
        // Unreachable for any valid f: the union of forward and backward
        // partial sums is mirror-symmetric.  Guarded for robustness.
        return Err(Error::Precondition(format!(
            "measurable model ({}) of ({f}) is not symmetric",
            model.model
        )));
    }
    let mut out = Vec::new();
    for member in enumerate_measurable(&model.model)? {
        if !strictly_decreasing_groups(&member.w, &model.model, &model.t)? {
            continue;
        }
        let blocks = block_decompose(&member.w, &model.model)?;
        let mut images = Vec::with_capacity(f.n());
        let mut start = 0;
        for &tj in &model.t {
            let mut merged: Vec<usize> = blocks[start..start + tj].concat();
            merged.sort_unstable();
            images.extend(merged);
            start += tj;
        }
        let w = Permutation::from_images(images)?;
        out.push(NonMeasurableMember { w, model: member });
    }
    out.sort_by(|a, b| a.w.cmp(&b.w));
    Ok(out)
}
