//! The doubling map: every point becomes two adjacent points and every string
//! two parallel strings.

use crate::diagram::{circle_pos, point_at, Diagram};
use crate::error::{Error, Result};
use crate::word::Word;

/// A noncrossing matching in the one-point-per-string picture: `upper` points
/// on top, `lower` points below, indexed like [`Diagram`] points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointMatching {
    upper: usize,
    lower: usize,
    pairs: Vec<(usize, usize)>,
}

impl PointMatching {
    pub fn new(upper: usize, lower: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let total = upper + lower;
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
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        let m = PointMatching { upper, lower, pairs };
        // reuse the diagram crossing test by viewing each point as a leg pair
        // of a matching that is noncrossing iff this one is
        let circ: Vec<(usize, usize)> = m
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (circle_pos(a, upper, lower), circle_pos(b, upper, lower));
                (x.min(y), x.max(y))
            })
            .collect();
        for (i, &(a, b)) in circ.iter().enumerate() {
            for &(c, d) in &circ[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(Error::Crossing(m.pairs[i], (point_at(c, upper, lower), point_at(d, upper, lower))));
                }
            }
        }
        Ok(m)
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The planar doubling, as a diagram between `a^upper` and `a^lower`.
    pub fn double(&self) -> Diagram {
        let (u, l) = (self.upper, self.lower);
        let to_point = |c: usize| point_at(c, 2 * u, 2 * l);
        let pairs = self
            .pairs
            .iter()
            .flat_map(|&(a, b)| {
                let (x, y) = (circle_pos(a, u, l), circle_pos(b, u, l));
                let (x, y) = (x.min(y), x.max(y));
                [(to_point(2 * x), to_point(2 * y + 1)), (to_point(2 * x + 1), to_point(2 * y))]
            })
            .collect();
        Diagram::from_pairs_unchecked(Word::all_a(u), Word::all_a(l), pairs)
    }
}

/// Recovers the matching `m` with `double(m)` equal to `d` up to words, if any.
pub fn undouble(d: &Diagram) -> Option<PointMatching> {
    let (up, lp) = (d.upper_points(), d.lower_points());
    let (u, l) = (d.upper().len(), d.lower().len());
    let partner = d.partners();
    let circ_partner = |c: usize| circle_pos(partner[point_at(c, up, lp)], up, lp);
    let mut pairs = Vec::new();
    for leg in 0..u + l {
        let (first, second) = (2 * leg, 2 * leg + 1);
        let p1 = circ_partner(first);
        if p1 % 2 == 0 {
            return None;
        }
        let other = p1 / 2;
        if other == leg || circ_partner(second) != 2 * other {
            return None;
        }
        if leg < other {
            pairs.push((point_at(leg, u, l), point_at(other, u, l)));
        }
    }
    Some(PointMatching::new(u, l, pairs).expect("parallel strings of a noncrossing matching"))
}

/// Membership in the image of the doubling map (ignoring words).
pub fn is_doubled(d: &Diagram) -> bool {
    undouble(d).is_some_and(|m| m.double().pairs() == d.pairs())
}
