use super::closure::closure_with_progress;
use super::{CategorySpec, ClosureRound, CellFamily, GeneratorSet, Kind};
use crate::color::{is_charge_balanced, is_colored, is_xyyx_colorable};
use crate::error::{Error, Result};
use crate::word::{gamma, Word};

fn require(spec: &CategorySpec, kind: Kind) -> Result<()> {
    if spec.kind() != kind {
        return Err(Error::KindMismatch(format!("{} is {:?}, expected {:?}", spec.label(), spec.kind(), kind)));
    }
    Ok(())
}

/// Free complexification: every diagram of an even-difference cell `(k, l)`
/// is re-read at the alternating words `(γ_k, γ_l)`, and the result is closed
/// as a unitary category.
///
/// Odd-difference cells have no alternating re-reading that is balanced, so
/// they contribute no generators.
pub fn complexify(spec: &CategorySpec, max_points: usize, slack: usize) -> Result<CategorySpec> {
    complexify_with_progress(spec, max_points, slack, &mut |_| {})
}

pub fn complexify_with_progress(
    spec: &CategorySpec,
    max_points: usize,
    slack: usize,
    progress: &mut dyn FnMut(&ClosureRound),
) -> Result<CategorySpec> {
    require(spec, Kind::Orthogonal)?;
    let cells = spec.cells(max_points)?;
    let mut gens = Vec::new();
    for ((a, b), ds) in cells.iter() {
        if (a.len() + b.len()) % 2 == 1 {
            continue;
        }
        for d in ds {
            let g = d.with_words(gamma(a.len()), gamma(b.len()))?;
            if !is_charge_balanced(&g) || (is_xyyx_colorable(d) && !is_colored(&g)) {
                return Err(Error::Colorability(format!("alternating re-reading of {d} is {g}")));
            }
            gens.push((format!("{d}"), g));
        }
    }
    let closed = closure_with_progress(&GeneratorSet::new(Kind::Unitary, gens), max_points, slack, progress)?;
    Ok(CategorySpec::Generated(closed))
}

/// Orthogonal family `D₂(k, l) = D(γ_k, γ_l)` for `k − l` even, empty
/// otherwise, re-worded at all-`a` words.
pub fn decomplexify(spec: &CategorySpec, max_points: usize) -> Result<CategorySpec> {
    require(spec, Kind::Unitary)?;
    let fam = CellFamily::from_fn(Kind::Orthogonal, max_points, |a, b| {
        if (a.len() + b.len()) % 2 == 1 {
            return Ok(Vec::new());
        }
        spec.cell(&gamma(a.len()), &gamma(b.len()))?
            .into_iter()
            .map(|d| d.with_words(Word::all_a(a.len()), Word::all_a(b.len())))
            .collect()
    })?;
    Ok(CategorySpec::Cells(fam))
}

/// Keeps even-difference cells and empties the odd ones.
pub fn double_category(spec: &CategorySpec, max_points: usize) -> Result<CategorySpec> {
    require(spec, Kind::Orthogonal)?;
    let fam = CellFamily::from_fn(Kind::Orthogonal, max_points, |a, b| {
        if (a.len() + b.len()) % 2 == 1 {
            Ok(Vec::new())
        } else {
            spec.cell(a, b)
        }
    })?;
    Ok(CategorySpec::Cells(fam))
}
