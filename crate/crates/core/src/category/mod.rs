//! The seven diagram categories, their closure from generators, the
//! complexification and doubling functors, and the derived invariants.

mod analysis;
mod closure;
mod functors;
mod generators;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use analysis::{
    compare, hk_direction, roundtrip, infinite_level_equivalences, level, moments, verify_category_axioms, AxiomCheck, AxiomReport,
    Comparison, DirectionReport, EquivalenceReport, LevelResult, RoundTripCheck, RoundTripReport, Witness,
};
pub use closure::{closure, closure_with_progress, Closure, ClosureRound};
pub use functors::{complexify, complexify_with_progress, decomplexify, double_category};
pub use generators::{
    block4, block4_on, cap, cap_ab, cap_ba, jdiag, jdiag_on, unit_cap, GeneratorSet,
};

use crate::color::{is_charge_balanced, is_colored, is_xyyx_colorable};
use crate::diagram::Diagram;
use crate::doubling::is_doubled;
use crate::enumerate::cell_matchings;
use crate::error::{Error, Result};
use crate::partition::BlockRule;
use crate::word::{all_words, Word};

/// Orthogonal categories live on all-`a` words (`u = ū`); unitary ones on
/// arbitrary words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Orthogonal,
    Unitary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CategoryId {
    O,
    H,
    S,
    SPrime,
    U,
    K,
    P,
}

impl CategoryId {
    pub const ALL: [CategoryId; 7] =
        [CategoryId::O, CategoryId::H, CategoryId::S, CategoryId::SPrime, CategoryId::U, CategoryId::K, CategoryId::P];

    pub fn kind(self) -> Kind {
        match self {
            CategoryId::O | CategoryId::H | CategoryId::S | CategoryId::SPrime => Kind::Orthogonal,
            CategoryId::U | CategoryId::K | CategoryId::P => Kind::Unitary,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CategoryId::O => "o",
            CategoryId::H => "h",
            CategoryId::S => "s",
            CategoryId::SPrime => "s-prime",
            CategoryId::U => "u",
            CategoryId::K => "k",
            CategoryId::P => "p",
        }
    }

    /// The category on the other side of complexification: `o ↔ u`,
    /// `h ↔ k`, `s′ ↔ p`, and `s → p`.
    pub fn partner(self) -> CategoryId {
        match self {
            CategoryId::O => CategoryId::U,
            CategoryId::H => CategoryId::K,
            CategoryId::S | CategoryId::SPrime => CategoryId::P,
            CategoryId::U => CategoryId::O,
            CategoryId::K => CategoryId::H,
            CategoryId::P => CategoryId::SPrime,
        }
    }

    /// Membership predicate on a single diagram. Orthogonal predicates reject
    /// words containing `b`.
    pub fn predicate(self, d: &Diagram) -> bool {
        if self.kind() == Kind::Orthogonal && !(d.upper().is_all_a() && d.lower().is_all_a()) {
            return false;
        }
        match self {
            CategoryId::S => true,
            CategoryId::SPrime => (d.upper().len() + d.lower().len()).is_multiple_of(2),
            CategoryId::H => is_xyyx_colorable(d),
            CategoryId::O => is_doubled(d),
            CategoryId::P => is_charge_balanced(d),
            CategoryId::K => is_colored(d),
            CategoryId::U => is_doubled(d) && is_colored(d),
        }
    }

    /// Block shape implied by the predicate, used only to prune enumeration.
    fn block_rule(self) -> BlockRule {
        match self {
            CategoryId::O | CategoryId::U => BlockRule::PairsOnly,
            CategoryId::H | CategoryId::K => BlockRule::EvenOnly,
            CategoryId::S | CategoryId::SPrime | CategoryId::P => BlockRule::Any,
        }
    }

    /// The cell `D(upper, lower)`, in canonical order.
    pub fn cell(self, upper: &Word, lower: &Word) -> Result<Vec<Diagram>> {
        check_words(self.kind(), upper, lower)?;
        if self == CategoryId::SPrime && (upper.len() + lower.len()) % 2 == 1 {
            return Ok(Vec::new());
        }
        Ok(cell_matchings(upper, lower, self.block_rule()).into_iter().filter(|d| self.predicate(d)).collect())
    }
}

impl Serialize for CategoryId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "o" => CategoryId::O,
            "h" => CategoryId::H,
            "s" => CategoryId::S,
            "s-prime" | "s'" | "s′" | "sprime" => CategoryId::SPrime,
            "u" => CategoryId::U,
            "k" => CategoryId::K,
            "p" => CategoryId::P,
            other => return Err(Error::UnknownCategory(other.to_string())),
        })
    }
}

fn check_words(kind: Kind, upper: &Word, lower: &Word) -> Result<()> {
    if kind == Kind::Orthogonal && !(upper.is_all_a() && lower.is_all_a()) {
        return Err(Error::NotOrthogonal(upper.clone(), lower.clone()));
    }
    Ok(())
}

/// Word pairs `(α, β)` with `2|α| + 2|β| ≤ max_points`, in canonical order.
pub fn word_pairs(kind: Kind, max_points: usize) -> Vec<(Word, Word)> {
    let max_legs = max_points / 2;
    let mut out = Vec::new();
    for k in 0..=max_legs {
        for l in 0..=max_legs - k {
            match kind {
                Kind::Orthogonal => out.push((Word::all_a(k), Word::all_a(l))),
                Kind::Unitary => {
                    for a in all_words(k) {
                        for b in all_words(l) {
                            out.push((a.clone(), b));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// An explicitly tabulated family of diagram sets, one per word pair within
/// `max_points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellFamily {
    kind: Kind,
    max_points: usize,
    #[serde(serialize_with = "serialize_cells")]
    cells: BTreeMap<(Word, Word), Vec<Diagram>>,
}

fn serialize_cells<S: serde::Serializer>(
    cells: &BTreeMap<(Word, Word), Vec<Diagram>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(cells.len()))?;
    for ((a, b), ds) in cells {
        seq.serialize_element(&(a, b, ds))?;
    }
    seq.end()
}

impl CellFamily {
    /// Builds a family from a per-cell listing; cells not supplied are empty.
    pub fn from_fn(
        kind: Kind,
        max_points: usize,
        mut f: impl FnMut(&Word, &Word) -> Result<Vec<Diagram>>,
    ) -> Result<Self> {
        let mut cells = BTreeMap::new();
        for (a, b) in word_pairs(kind, max_points) {
            let mut ds = f(&a, &b)?;
            ds.sort();
            ds.dedup();
            cells.insert((a, b), ds);
        }
        Ok(CellFamily { kind, max_points, cells })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    pub fn cell(&self, upper: &Word, lower: &Word) -> Result<&[Diagram]> {
        check_words(self.kind, upper, lower)?;
        let points = 2 * (upper.len() + lower.len());
        if points > self.max_points {
            return Err(Error::CapExceeded { points, cap: self.max_points });
        }
        Ok(self.cells.get(&(upper.clone(), lower.clone())).map(Vec::as_slice).unwrap_or(&[]))
    }

    pub fn contains(&self, d: &Diagram) -> Result<bool> {
        Ok(self.cell(d.upper(), d.lower())?.binary_search(d).is_ok())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Word, Word), &Vec<Diagram>)> {
        self.cells.iter()
    }

    pub fn total(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    /// Removes one diagram; used to build negative controls.
    pub fn remove(&mut self, d: &Diagram) -> bool {
        match self.cells.get_mut(&(d.upper().clone(), d.lower().clone())) {
            Some(ds) => match ds.binary_search(d) {
                Ok(i) => {
                    ds.remove(i);
                    true
                }
                Err(_) => false,
            },
            None => false,
        }
    }

    /// Same cells, truncated to a smaller cap.
    pub fn restrict(&self, max_points: usize) -> CellFamily {
        let cells = self
            .cells
            .iter()
            .filter(|((a, b), _)| 2 * (a.len() + b.len()) <= max_points)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        CellFamily { kind: self.kind, max_points: max_points.min(self.max_points), cells }
    }
}

/// A family of diagram sets `D(α, β)`.
#[derive(Debug, Clone)]
pub enum CategorySpec {
    /// Given by a membership predicate; unbounded.
    Named(CategoryId),
    /// Closure of a generator list, valid up to its cap.
    Generated(Closure),
    /// Explicit cells up to a cap (functor outputs).
    Cells(CellFamily),
}

impl CategorySpec {
    pub fn named(id: CategoryId) -> Self {
        CategorySpec::Named(id)
    }

    pub fn kind(&self) -> Kind {
        match self {
            CategorySpec::Named(id) => id.kind(),
            CategorySpec::Generated(c) => c.kind(),
            CategorySpec::Cells(f) => f.kind(),
        }
    }

    /// Largest point count covered, `None` when unbounded.
    pub fn cap(&self) -> Option<usize> {
        match self {
            CategorySpec::Named(_) => None,
            CategorySpec::Generated(c) => Some(c.max_points()),
            CategorySpec::Cells(f) => Some(f.max_points()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CategorySpec::Named(id) => id.to_string(),
            CategorySpec::Generated(c) => format!("closure({})", c.label()),
            CategorySpec::Cells(f) => format!("cells(≤{} points)", f.max_points()),
        }
    }

    pub fn member(&self, d: &Diagram) -> Result<bool> {
        match self {
            CategorySpec::Named(id) => {
                check_words(id.kind(), d.upper(), d.lower())?;
                Ok(id.predicate(d))
            }
            CategorySpec::Generated(c) => c.contains(d),
            CategorySpec::Cells(f) => f.contains(d),
        }
    }

    pub fn cell(&self, upper: &Word, lower: &Word) -> Result<Vec<Diagram>> {
        match self {
            CategorySpec::Named(id) => id.cell(upper, lower),
            CategorySpec::Generated(c) => c.cell(upper, lower),
            CategorySpec::Cells(f) => f.cell(upper, lower).map(<[Diagram]>::to_vec),
        }
    }

    /// Tabulates every cell within `max_points`.
    pub fn cells(&self, max_points: usize) -> Result<CellFamily> {
        if let Some(cap) = self.cap() {
            if max_points > cap {
                return Err(Error::CapExceeded { points: max_points, cap });
            }
        }
        match self {
            CategorySpec::Cells(f) => Ok(f.restrict(max_points)),
            _ => CellFamily::from_fn(self.kind(), max_points, |a, b| self.cell(a, b)),
        }
    }
}

impl From<CategoryId> for CategorySpec {
    fn from(id: CategoryId) -> Self {
        CategorySpec::Named(id)
    }
}
