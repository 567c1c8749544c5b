//! Enumeration of the noncrossing matchings of a two-row cell.

use crate::diagram::{circle_pos, point_at, Diagram};
use crate::partition::{nc_partitions, BlockRule, LegPartition};
use crate::word::Word;

/// Fattened matchings between `upper` and `lower` whose leg partitions obey
/// `rule`, in canonical order.
pub fn cell_matchings(upper: &Word, lower: &Word, rule: BlockRule) -> Vec<Diagram> {
    let (k, l) = (upper.len(), lower.len());
    let mut out: Vec<Diagram> = nc_partitions(k + l, rule)
        .into_iter()
        .map(|circ| {
            let labels: Vec<usize> = (0..k + l).map(|leg| circ[circle_pos(leg, k, l)]).collect();
            LegPartition::new(k, l, &labels)
                .and_then(|p| p.fatten(upper.clone(), lower.clone()))
                .expect("noncrossing partitions fatten to noncrossing matchings")
        })
        .collect();
    out.sort();
    out
}

/// All noncrossing matchings of the cell, in canonical order.
pub fn all_matchings(upper: &Word, lower: &Word) -> Vec<Diagram> {
    cell_matchings(upper, lower, BlockRule::Any)
}

/// Independent enumerator: backtracking over point pairings in boundary order,
/// rejecting a pair as soon as it crosses one already placed. Shares nothing
/// with the partition machinery.
pub fn backtrack_matchings(upper: &Word, lower: &Word) -> Vec<Diagram> {
    let (up, lp) = (2 * upper.len(), 2 * lower.len());
    let n = up + lp;
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut placed: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    fn crosses(a: usize, b: usize, c: usize, d: usize) -> bool {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    fn go(
        partner: &mut Vec<Option<usize>>,
        placed: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(first) = partner.iter().position(|p| p.is_none()) else {
            out.push(placed.clone());
            return;
        };
        for second in first + 1..partner.len() {
            if partner[second].is_some() {
                continue;
            }
            if placed.iter().any(|&(c, d)| crosses(first, second, c, d)) {
                continue;
            }
            partner[first] = Some(second);
            partner[second] = Some(first);
            placed.push((first, second));
            go(partner, placed, out);
            placed.pop();
            partner[first] = None;
            partner[second] = None;
        }
    }

    go(&mut partner, &mut placed, &mut out);
    let mut diagrams: Vec<Diagram> = out
        .into_iter()
        .map(|circ_pairs| {
            let pairs = circ_pairs
                .into_iter()
                .map(|(a, b)| (point_at(a, up, lp), point_at(b, up, lp)))
                .collect();
            Diagram::new(upper.clone(), lower.clone(), pairs).expect("backtracking yields valid matchings")
        })
        .collect();
    diagrams.sort();
    diagrams
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(m: usize) -> usize {
        (0..m).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    #[test]
    fn counts_are_catalan_for_every_row_split() {
        for m in 0..=6 {
            for k in 0..=m {
                let (u, l) = (Word::all_a(k), Word::all_a(m - k));
                let fast = all_matchings(&u, &l);
                assert_eq!(fast.len(), catalan(m));
                assert_eq!(fast, backtrack_matchings(&u, &l), "split {k}+{}", m - k);
            }
        }
    }
}
