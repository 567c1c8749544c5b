//! Cellwise comparisons and the invariants derived from a category's cells.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    cap, cap_ab, cap_ba, complexify_with_progress, decomplexify, double_category, CategoryId, CategorySpec, CellFamily,
    ClosureRound, Kind,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::word::{delta, gamma, Word};

/// A diagram that breaks a claimed property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub note: String,
    pub diagram: Diagram,
}

impl Witness {
    fn new(note: impl Into<String>, diagram: Diagram) -> Self {
        Witness { note: note.into(), diagram }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub max_points: usize,
    pub cells_checked: usize,
    pub left_total: usize,
    pub right_total: usize,
    pub equal: bool,
    /// First differing diagram in canonical cell order.
    pub witness: Option<Witness>,
}

/// Cellwise set equality on every word pair within `max_points`.
pub fn compare(left: &CategorySpec, right: &CategorySpec, max_points: usize) -> Result<Comparison> {
    if left.kind() != right.kind() {
        return Err(Error::KindMismatch(format!("cannot compare {} with {}", left.label(), right.label())));
    }
    let l = left.cells(max_points)?;
    let r = right.cells(max_points)?;
    let mut witness = None;
    for ((_, ls), (_, rs)) in l.iter().zip(r.iter()) {
        if ls != rs {
            let extra_left = ls.iter().find(|d| rs.binary_search(d).is_err());
            let extra_right = rs.iter().find(|d| ls.binary_search(d).is_err());
            witness = match (extra_left, extra_right) {
                (Some(d), _) => Some(Witness::new(format!("only in {}", left.label()), d.clone())),
                (None, Some(d)) => Some(Witness::new(format!("only in {}", right.label()), d.clone())),
                (None, None) => None,
            };
            break;
        }
    }
    Ok(Comparison {
        left: left.label(),
        right: right.label(),
        max_points,
        cells_checked: l.iter().count(),
        left_total: l.total(),
        right_total: r.total(),
        equal: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LevelResult {
    Finite(usize),
    /// No fixed vector in any odd power up to `2·cap + 1`.
    AboveCap(usize),
}

/// Smallest `l ≤ cap` with a diagram in the cell `(∅, a^{2l+1})`.
pub fn level(spec: &CategorySpec, cap: usize) -> Result<LevelResult> {
    if spec.kind() != Kind::Orthogonal {
        return Err(Error::KindMismatch(format!("level is defined for orthogonal families, got {}", spec.label())));
    }
    for l in 0..=cap {
        if !spec.cell(&Word::empty(), &Word::all_a(2 * l + 1))?.is_empty() {
            return Ok(LevelResult::Finite(l));
        }
    }
    Ok(LevelResult::AboveCap(cap))
}

/// Fixed-point counts `|D(∅, a^k)|` (orthogonal) or `|D(∅, γ_k)|`
/// (unitary) for `k = 0..=max_k`.
pub fn moments(spec: &CategorySpec, max_k: usize) -> Result<Vec<usize>> {
    (0..=max_k)
        .map(|k| {
            let w = match spec.kind() {
                Kind::Orthogonal => Word::all_a(k),
                Kind::Unitary => gamma(k),
            };
            Ok(spec.cell(&Word::empty(), &w)?.len())
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub label: String,
    pub max_points: usize,
    pub odd_fixed_cells_empty: bool,
    pub equals_its_doubling: bool,
    pub parity_contained: bool,
    pub agree: bool,
    pub witness: Option<Witness>,
}

/// The three characterizations of infinite level: odd fixed cells empty,
/// invariance under doubling, and containment in the even-parity cells.
pub fn infinite_level_equivalences(spec: &CategorySpec, max_points: usize) -> Result<EquivalenceReport> {
    let cells = spec.cells(max_points)?;
    let mut witness = None;
    let mut odd_fixed_cells_empty = true;
    for l in (1..=max_points / 2).step_by(2) {
        if let Some(d) = cells.cell(&Word::empty(), &Word::all_a(l))?.first() {
            odd_fixed_cells_empty = false;
            witness.get_or_insert_with(|| Witness::new("odd fixed cell is nonempty", d.clone()));
            break;
        }
    }
    let doubled = double_category(spec, max_points)?;
    let cmp = compare(&doubled, spec, max_points)?;
    let equals_its_doubling = cmp.equal;
    if let Some(w) = cmp.witness {
        witness.get_or_insert(w);
    }
    let mut parity_contained = true;
    for ((a, b), ds) in cells.iter() {
        if (a.len() + b.len()) % 2 == 1 && !ds.is_empty() {
            parity_contained = false;
            witness.get_or_insert_with(|| Witness::new("odd-parity cell is nonempty", ds[0].clone()));
            break;
        }
    }
    Ok(EquivalenceReport {
        label: spec.label(),
        max_points,
        odd_fixed_cells_empty,
        equals_its_doubling,
        parity_contained,
        agree: odd_fixed_cells_empty == equals_its_doubling && equals_its_doubling == parity_contained,
        witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub tested: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub label: String,
    pub max_points: usize,
    pub checks: Vec<AxiomCheck>,
    pub passed: bool,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type CellList<'a> = Vec<(&'a (Word, Word), &'a Vec<Diagram>)>;

fn points(a: &Word, b: &Word) -> usize {
    2 * (a.len() + b.len())
}

/// Runs `f` on each item in parallel and reports the first failure in input
/// order together with the number of tests performed.
fn scan<T: Sync>(
    name: &str,
    items: &[T],
    f: impl Fn(&T) -> Result<(usize, Option<Witness>)> + Sync,
) -> Result<AxiomCheck> {
    let results: Vec<(usize, Option<Witness>)> = items.par_iter().map(&f).collect::<Result<_>>()?;
    let tested = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1);
    Ok(AxiomCheck { name: name.to_string(), tested, passed: witness.is_none(), witness })
}

/// Checks, within `max_points`, that the tabulated cells form a category with
/// duality and involution stable under tensor products.
///
/// When `source` is given, `spec` is read as the family `D₂` obtained from
/// the unitary `source` and the three alternating-word tensor chains are
/// verified inside `source` as well.
pub fn verify_category_axioms(
    spec: &CategorySpec,
    max_points: usize,
    source: Option<&CategorySpec>,
) -> Result<AxiomReport> {
    let fam = spec.cells(max_points)?;
    let kind = fam.kind();
    let cells: CellList = fam.iter().collect();
    let by_upper: BTreeMap<&Word, CellList> = cells.iter().fold(BTreeMap::new(), |mut m, c| {
        m.entry(&c.0 .0).or_insert_with(Vec::new).push(*c);
        m
    });
    let member = |d: &Diagram| -> Result<bool> { fam.contains(d) };
    let mut checks = Vec::new();

    checks.push(scan("identities", &cells, |((a, b), _)| {
        if a != b || points(a, b) > max_points {
            return Ok((0, None));
        }
        let id = Diagram::identity(a);
        Ok((1, (!member(&id)?).then(|| Witness::new("identity missing", id))))
    })?);

    let duals: Vec<Diagram> = match kind {
        Kind::Orthogonal => vec![cap()],
        Kind::Unitary => vec![cap_ab(), cap_ba()],
    };
    let duals: Vec<Diagram> = duals.iter().flat_map(|d| [d.clone(), d.involute()]).collect();
    checks.push(scan("duality", &duals, |d| {
        Ok((1, (max_points >= 4 && !member(d)?).then(|| Witness::new("duality cap missing", d.clone()))))
    })?);

    checks.push(scan("involution", &cells, |(_, ds)| {
        for d in ds.iter() {
            let inv = d.involute();
            if !member(&inv)? {
                return Ok((ds.len(), Some(Witness::new("involute missing", inv))));
            }
        }
        Ok((ds.len(), None))
    })?);

    if kind == Kind::Unitary {
        checks.push(scan("conjugation", &cells, |(_, ds)| {
            for d in ds.iter() {
                let c = d.conjugate();
                if !member(&c)? {
                    return Ok((ds.len(), Some(Witness::new("conjugate missing", c))));
                }
            }
            Ok((ds.len(), None))
        })?);
    }

    checks.push(scan("composition", &cells, |((a, b), ds)| {
        let mut tested = 0;
        for ((_, c), es) in by_upper.get(b).into_iter().flatten() {
            if points(a, c) > max_points {
                continue;
            }
            for d in ds.iter() {
                for e in es.iter() {
                    tested += 1;
                    let (comp, _) = d.compose(e)?;
                    if !member(&comp)? {
                        return Ok((tested, Some(Witness::new(format!("composite of {d} and {e} missing"), comp))));
                    }
                }
            }
        }
        Ok((tested, None))
    })?);

    checks.push(scan("tensor", &cells, |((a, b), ds)| {
        let mut tested = 0;
        for ((c, e), es) in &cells {
            if points(a, b) + points(c, e) > max_points {
                continue;
            }
            for d in ds.iter() {
                for x in es.iter() {
                    tested += 1;
                    let t = d.tensor(x);
                    if !member(&t)? {
                        return Ok((tested, Some(Witness::new(format!("tensor of {d} and {x} missing"), t))));
                    }
                }
            }
        }
        Ok((tested, None))
    })?);

    if let Some(source) = source {
        if kind != Kind::Orthogonal || source.kind() != Kind::Unitary {
            return Err(Error::KindMismatch("tensor chains need an orthogonal family and a unitary source".into()));
        }
        for (name, first_odd, second_odd) in
            [("chain even⊗even", false, false), ("chain odd⊗even", true, false), ("chain odd⊗odd", true, true)]
        {
            checks.push(scan(name, &cells, |((a, b), ds)| {
                if (a.len() % 2 == 1) != first_odd || (a.len() + b.len()) % 2 == 1 {
                    return Ok((0, None));
                }
                let mut tested = 0;
                for ((c, e), es) in &cells {
                    if (c.len() % 2 == 1) != second_odd
                        || (c.len() + e.len()) % 2 == 1
                        || points(a, b) + points(c, e) > max_points
                    {
                        continue;
                    }
                    for d in ds.iter() {
                        for x in es.iter() {
                            tested += 1;
                            if let Some(w) = chain_step(source, &fam, d, x)? {
                                return Ok((tested, Some(w)));
                            }
                        }
                    }
                }
                Ok((tested, None))
            })?);
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(AxiomReport { label: spec.label(), max_points, checks, passed })
}

/// Lifts `d ∈ D₂(k, l)` and `x ∈ D₂(p, q)` to alternating words, conjugating
/// the second factor when `k` is odd so the words continue to alternate, and
/// checks the tensor lands in `source(γ_{k+p}, γ_{l+q})` and back in `D₂`.
fn chain_step(source: &CategorySpec, fam: &CellFamily, d: &Diagram, x: &Diagram) -> Result<Option<Witness>> {
    let (k, l, p, q) = (d.upper().len(), d.lower().len(), x.upper().len(), x.lower().len());
    let lifted_d = d.with_words(gamma(k), gamma(l))?;
    let lifted_x = x.with_words(gamma(p), gamma(q))?;
    if !source.member(&lifted_d)? {
        return Ok(Some(Witness::new("lift missing from source", lifted_d)));
    }
    let second = if k % 2 == 1 {
        let c = lifted_x.conjugate();
        debug_assert_eq!(c.upper(), &delta(p));
        if !source.member(&c)? {
            return Ok(Some(Witness::new("conjugated lift missing from source", c)));
        }
        c
    } else {
        lifted_x
    };
    let t = lifted_d.tensor(&second);
    if t.upper() != &gamma(k + p) || t.lower() != &gamma(l + q) {
        return Ok(Some(Witness::new("tensor words do not alternate", t)));
    }
    if !source.member(&t)? {
        return Ok(Some(Witness::new("lifted tensor missing from source", t)));
    }
    let flat = d.tensor(x);
    if !fam.contains(&flat)? {
        return Ok(Some(Witness::new("tensor missing from D₂", flat)));
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundTripCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl RoundTripCheck {
    fn from_comparison(name: String, c: Comparison) -> Self {
        RoundTripCheck { name, passed: c.equal, witness: c.witness }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundTripReport {
    pub category: CategoryId,
    pub max_points: usize,
    pub slack: usize,
    pub checks: Vec<RoundTripCheck>,
    pub passed: bool,
}

/// Complexification round trips starting from a named category.
///
/// * orthogonal `A`: `complexify(A)` equals the unitary partner, and for
///   infinite-level `A` also `decomplexify(complexify(A)) = A`; for `s` the
///   way back lands on `s′` instead;
/// * unitary `C`: `decomplexify(C)` equals the orthogonal partner, passes
///   the category axioms with the alternating tensor chains, and
///   `complexify(decomplexify(C)) = C`.
pub fn roundtrip(
    id: CategoryId,
    max_points: usize,
    slack: usize,
    progress: &mut dyn FnMut(&ClosureRound),
) -> Result<RoundTripReport> {
    let named = |c: CategoryId| CategorySpec::Named(c);
    let partner = id.partner();
    let mut checks = Vec::new();
    match id.kind() {
        Kind::Orthogonal => {
            let up = complexify_with_progress(&named(id), max_points, slack, progress)?;
            checks.push(RoundTripCheck::from_comparison(
                format!("complexify({id}) = {partner}"),
                compare(&up, &named(partner), max_points)?,
            ));
            let down = decomplexify(&up, max_points)?;
            let back = if id == CategoryId::S { CategoryId::SPrime } else { id };
            checks.push(RoundTripCheck::from_comparison(
                format!("decomplexify(complexify({id})) = {back}"),
                compare(&down, &named(back), max_points)?,
            ));
            if id == CategoryId::S {
                let other = complexify_with_progress(&named(CategoryId::SPrime), max_points, slack, progress)?;
                checks.push(RoundTripCheck::from_comparison(
                    "complexify(s) = complexify(s-prime)".to_string(),
                    compare(&up, &other, max_points)?,
                ));
            }
        }
        Kind::Unitary => {
            let down = decomplexify(&named(id), max_points)?;
            checks.push(RoundTripCheck::from_comparison(
                format!("decomplexify({id}) = {partner}"),
                compare(&down, &named(partner), max_points)?,
            ));
            let axioms = verify_category_axioms(&down, max_points, Some(&named(id)))?;
            for c in axioms.checks {
                checks.push(RoundTripCheck {
                    name: format!("decomplexify({id}) axiom: {}", c.name),
                    passed: c.passed,
                    witness: c.witness,
                });
            }
            let eq = infinite_level_equivalences(&down, max_points)?;
            checks.push(RoundTripCheck {
                name: format!("decomplexify({id}) has infinite level"),
                passed: eq.odd_fixed_cells_empty && eq.agree,
                witness: eq.witness,
            });
            let back = complexify_with_progress(&down, max_points, slack, progress)?;
            checks.push(RoundTripCheck::from_comparison(
                format!("complexify(decomplexify({id})) = {id}"),
                compare(&back, &named(id), max_points)?,
            ));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(RoundTripReport { category: id, max_points, slack, checks, passed })
}

/// Which way the `h`/`k` correspondence runs.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionReport {
    pub max_points: usize,
    /// `complexify(h) = k` cellwise.
    pub complexify_h_is_k: bool,
    /// `decomplexify(k) = h` cellwise.
    pub decomplexify_k_is_h: bool,
    /// Outcome of reading the identity literally, with `h` as the
    /// complexification of `k`.
    pub literal_reading: String,
    pub conclusion: String,
}

pub fn hk_direction(
    max_points: usize,
    slack: usize,
    progress: &mut dyn FnMut(&ClosureRound),
) -> Result<DirectionReport> {
    let h = CategorySpec::Named(CategoryId::H);
    let k = CategorySpec::Named(CategoryId::K);
    let up = complexify_with_progress(&h, max_points, slack, progress)?;
    let complexify_h_is_k = compare(&up, &k, max_points)?.equal;
    let decomplexify_k_is_h = compare(&decomplexify(&k, max_points)?, &h, max_points)?.equal;
    let literal_reading = match complexify_with_progress(&k, max_points, slack, progress) {
        Err(e) => format!("rejected: {e}"),
        Ok(_) => "accepted".to_string(),
    };
    let conclusion = if complexify_h_is_k && decomplexify_k_is_h {
        "k is the free complexification of h".to_string()
    } else {
        "neither direction holds within the cap".to_string()
    };
    Ok(DirectionReport { max_points, complexify_h_is_k, decomplexify_k_is_h, literal_reading, conclusion })
}
