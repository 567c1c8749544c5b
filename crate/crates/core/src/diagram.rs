//! Colored Temperley-Lieb diagrams.
//!
//! A diagram between words `α` (upper row) and `β` (lower row) is a
//! noncrossing perfect matching on `2|α| + 2|β|` boundary points: each letter
//! contributes one *leg* made of two adjacent points. Points are indexed upper
//! row left to right, then lower row left to right, starting from zero.
//!
//! Noncrossing is decided on the boundary circle obtained by reading the
//! upper row left to right and then the lower row right to left.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct Diagram {
    upper: Word,
    lower: Word,
    /// Canonical: each pair is `(min, max)`, sorted ascending.
    pairs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    upper: Word,
    lower: Word,
    pairs: Vec<[usize; 2]>,
}

impl TryFrom<RawDiagram> for Diagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        Diagram::new(raw.upper, raw.lower, raw.pairs.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<Diagram> for RawDiagram {
    fn from(d: Diagram) -> Self {
        RawDiagram {
            upper: d.upper,
            lower: d.lower,
            pairs: d.pairs.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// Circle position of `point` in a diagram with `upper_pts` upper and
/// `lower_pts` lower points.
pub(crate) fn circle_pos(point: usize, upper_pts: usize, lower_pts: usize) -> usize {
    if point < upper_pts {
        point
    } else {
        upper_pts + (lower_pts - 1 - (point - upper_pts))
    }
}

/// Inverse of [`circle_pos`]; the map is an involution on the lower row.
pub(crate) fn point_at(circle: usize, upper_pts: usize, lower_pts: usize) -> usize {
    circle_pos(circle, upper_pts, lower_pts)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

impl Diagram {
    /// Validated constructor: the pairs must form a noncrossing perfect
    /// matching of the `2|upper| + 2|lower|` points.
    pub fn new(upper: Word, lower: Word, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let total = 2 * (upper.len() + lower.len());
        let mut seen = vec![0usize; total];
        for &(a, b) in &pairs {
            for p in [a, b] {
                if p >= total {
                    return Err(Error::PointOutOfRange { point: p, total });
                }
                seen[p] += 1;
            }
        }
        if let Some((p, &c)) = seen.iter().enumerate().find(|(_, &c)| c != 1) {
            return Err(Error::NotPerfect(p, c));
        }
        let d = Self::from_pairs_unchecked(upper, lower, pairs);
        d.check_noncrossing()?;
        Ok(d)
    }

    /// Canonicalizes the pair list without validation.
    pub(crate) fn from_pairs_unchecked(upper: Word, lower: Word, pairs: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Diagram { upper, lower, pairs }
    }

    pub fn empty() -> Self {
        Diagram { upper: Word::empty(), lower: Word::empty(), pairs: Vec::new() }
    }

    /// The identity of `End(u^α)`: point `p` of the upper row joined to point
    /// `p` of the lower row.
    pub fn identity(word: &Word) -> Self {
        let k = 2 * word.len();
        let pairs = (0..k).map(|p| (p, k + p)).collect();
        Self::from_pairs_unchecked(word.clone(), word.clone(), pairs)
    }

    pub fn upper(&self) -> &Word {
        &self.upper
    }

    pub fn lower(&self) -> &Word {
        &self.lower
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn upper_points(&self) -> usize {
        2 * self.upper.len()
    }

    pub fn lower_points(&self) -> usize {
        2 * self.lower.len()
    }

    pub fn num_points(&self) -> usize {
        self.upper_points() + self.lower_points()
    }

    pub fn num_legs(&self) -> usize {
        self.upper.len() + self.lower.len()
    }

    /// `partner[p]` is the point matched with `p`.
    pub fn partners(&self) -> Vec<usize> {
        let mut partner = vec![0; self.num_points()];
        for &(a, b) in &self.pairs {
            partner[a] = b;
            partner[b] = a;
        }
        partner
    }

    fn check_noncrossing(&self) -> Result<()> {
        let (up, lp) = (self.upper_points(), self.lower_points());
        let partner = self.partners();
        let mut stack: Vec<usize> = Vec::new();
        for c in 0..up + lp {
            let p = point_at(c, up, lp);
            let q = partner[p];
            let cq = circle_pos(q, up, lp);
            if cq > c {
                stack.push(c);
            } else {
                let top = stack.pop().expect("partner opened earlier");
                if top != cq {
                    let pa = point_at(top, up, lp);
                    return Err(Error::Crossing(
                        (pa.min(partner[pa]), pa.max(partner[pa])),
                        (p.min(q), p.max(q)),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_noncrossing(&self) -> bool {
        self.check_noncrossing().is_ok()
    }

    /// Same matching, new words of the same lengths.
    pub fn with_words(&self, upper: Word, lower: Word) -> Result<Self> {
        if upper.len() != self.upper.len() || lower.len() != self.lower.len() {
            return Err(Error::Guard(format!(
                "rewording ({}, {}) to ({upper}, {lower}) changes leg counts",
                self.upper, self.lower
            )));
        }
        Ok(Diagram { upper, lower, pairs: self.pairs.clone() })
    }

    /// Horizontal juxtaposition `D ⊗ E`.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (du, dl) = (self.upper_points(), self.lower_points());
        let eu = other.upper_points();
        let top = du + eu;
        let map_d = |p: usize| if p < du { p } else { top + (p - du) };
        let map_e = |p: usize| if p < eu { du + p } else { top + dl + (p - eu) };
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (map_d(a), map_d(b)))
            .chain(other.pairs.iter().map(|&(a, b)| (map_e(a), map_e(b))))
            .collect();
        Diagram::from_pairs_unchecked(
            self.upper.concat(&other.upper),
            self.lower.concat(&other.lower),
            pairs,
        )
    }

    /// Vertical stacking: `self` maps `α → β`, `next` maps `β → γ`; the result
    /// maps `α → γ`. Also returns the number of middle-leg components that are
    /// cut off from the boundary; the scalar of the composite is `n^rc`.
    pub fn compose(&self, next: &Diagram) -> Result<(Diagram, usize)> {
        if self.lower != next.upper {
            return Err(Error::WordMismatch { lower: self.lower.clone(), upper: next.upper.clone() });
        }
        let (au, mid) = (self.upper_points(), self.lower_points());
        let gl = next.lower_points();
        // nodes: self's points [0, au + mid), then next's lower points.
        let total = au + mid + gl;
        let map_next = |p: usize| if p < mid { au + p } else { au + mid + (p - mid) };
        let mut parent: Vec<usize> = (0..total).collect();
        for &(a, b) in &self.pairs {
            union(&mut parent, a, b);
        }
        for &(a, b) in &next.pairs {
            union(&mut parent, map_next(a), map_next(b));
        }
        // every component containing a boundary point is a path with exactly
        // two boundary endpoints.
        let boundary: Vec<usize> = (0..au).chain(au + mid..total).collect();
        let mut open: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut pairs = Vec::with_capacity(boundary.len() / 2);
        for &p in &boundary {
            let r = find(&mut parent, p);
            let out = if p < au { p } else { p - mid };
            match open.remove(&r) {
                Some(q) => pairs.push((q, out)),
                None => {
                    open.insert(r, out);
                }
            }
        }
        debug_assert!(open.is_empty());

        // leg-level components for the loop scalar
        let (al, ml, gll) = (self.upper.len(), self.lower.len(), next.lower.len());
        let mut lp: Vec<usize> = (0..al + ml + gll).collect();
        let leg_self = |p: usize| p / 2;
        let leg_next = |p: usize| al + p / 2;
        for &(a, b) in &self.pairs {
            union(&mut lp, leg_self(a), leg_self(b));
        }
        for &(a, b) in &next.pairs {
            union(&mut lp, leg_next(a), leg_next(b));
        }
        let mut touches = vec![false; al + ml + gll];
        for leg in (0..al).chain(al + ml..al + ml + gll) {
            let r = find(&mut lp, leg);
            touches[r] = true;
        }
        let mut rc = 0;
        for leg in al..al + ml {
            if find(&mut lp, leg) == leg && !touches[leg] {
                rc += 1;
            }
        }
        let d = Diagram::from_pairs_unchecked(self.upper.clone(), next.lower.clone(), pairs);
        Ok((d, rc))
    }

    /// Vertical flip: upper and lower rows swap.
    pub fn involute(&self) -> Diagram {
        let (up, lp) = (self.upper_points(), self.lower_points());
        let map = |p: usize| if p < up { lp + p } else { p - up };
        let pairs = self.pairs.iter().map(|&(a, b)| (map(a), map(b))).collect();
        Diagram::from_pairs_unchecked(self.lower.clone(), self.upper.clone(), pairs)
    }

    /// Rotates the upper row down to the left of the lower row, giving the
    /// fixed-point diagram in `D(∅, rev(ᾱ)·β)`. Boundary circle order is
    /// preserved, so the leg partition and all colors are unchanged.
    pub fn bend(&self) -> Diagram {
        let up = self.upper_points();
        let map = |p: usize| if p < up { up - 1 - p } else { p };
        let pairs = self.pairs.iter().map(|&(a, b)| (map(a), map(b))).collect();
        let word = self.upper.bar().reversed().concat(&self.lower);
        Diagram::from_pairs_unchecked(Word::empty(), word, pairs)
    }

    /// Letterwise bar on both words. The matching is kept, so the two colors
    /// of every leg swap and every string keeps its match status.
    pub fn conjugate(&self) -> Diagram {
        Diagram { upper: self.upper.bar(), lower: self.lower.bar(), pairs: self.pairs.clone() }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} → {}) {{", self.upper, self.lower)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}
