//! Leg partitions and the fattening bijection.
//!
//! A leg is the adjacent point pair `(2i, 2i + 1)` of one row. Joining legs
//! that share a string turns a noncrossing matching into a noncrossing
//! partition of the legs ("un-fattening"); fattening goes back by drawing, for
//! each block, one string from the second point of every leg to the first
//! point of the next leg of the block, cyclically in boundary-circle order.

use serde::Serialize;

use crate::diagram::{circle_pos, Diagram};
use crate::error::{Error, Result};
use crate::word::Word;

/// Partition of the legs of a two-row diagram. Legs are indexed upper row
/// first (`0..upper_legs`), then lower row (`upper_legs..upper_legs+lower_legs`).
/// Labels form a restricted growth string, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LegPartition {
    upper_legs: usize,
    lower_legs: usize,
    labels: Vec<usize>,
}

/// Relabels so that labels appear in first-occurrence order `0, 1, 2, …`.
pub fn canonical_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = seen.len();
            *seen.entry(l).or_insert(next)
        })
        .collect()
}

impl LegPartition {
    pub fn new(upper_legs: usize, lower_legs: usize, labels: &[usize]) -> Result<Self> {
        if labels.len() != upper_legs + lower_legs {
            return Err(Error::Guard(format!(
                "{} labels for {} legs",
                labels.len(),
                upper_legs + lower_legs
            )));
        }
        let p = LegPartition { upper_legs, lower_legs, labels: canonical_labels(labels) };
        if !p.is_noncrossing() {
            return Err(Error::Parse(format!("leg partition {:?} is crossing", p.labels)));
        }
        Ok(p)
    }

    pub fn upper_legs(&self) -> usize {
        self.upper_legs
    }

    pub fn lower_legs(&self) -> usize {
        self.lower_legs
    }

    pub fn num_legs(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted leg lists, ordered by smallest leg.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (leg, &b) in self.labels.iter().enumerate() {
            blocks[b].push(leg);
        }
        blocks
    }

    /// Circle position of a leg: upper legs left to right, then lower legs
    /// right to left.
    pub fn leg_circle(&self, leg: usize) -> usize {
        circle_pos(leg, self.upper_legs, self.lower_legs)
    }

    /// Labels listed in circle order.
    pub fn circle_labels(&self) -> Vec<usize> {
        let m = self.num_legs();
        let mut out = vec![0; m];
        for leg in 0..m {
            out[self.leg_circle(leg)] = self.labels[leg];
        }
        canonical_labels(&out)
    }

    pub fn is_noncrossing(&self) -> bool {
        is_noncrossing_sequence(&self.circle_labels())
    }

    /// Blocks with their legs in circle order.
    pub fn circle_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = self.blocks();
        for b in &mut blocks {
            b.sort_by_key(|&leg| self.leg_circle(leg));
        }
        blocks
    }

    /// First and second point of a leg in circle order.
    fn leg_points(&self, leg: usize) -> (usize, usize) {
        if leg < self.upper_legs {
            (2 * leg, 2 * leg + 1)
        } else {
            (2 * leg + 1, 2 * leg)
        }
    }

    /// The fattened matching, carrying the given words.
    pub fn fatten(&self, upper: Word, lower: Word) -> Result<Diagram> {
        if upper.len() != self.upper_legs || lower.len() != self.lower_legs {
            return Err(Error::Guard(format!(
                "words ({upper}, {lower}) do not fit a {}+{} leg partition",
                self.upper_legs, self.lower_legs
            )));
        }
        let mut pairs = Vec::with_capacity(self.num_legs());
        for block in self.circle_blocks() {
            for (i, &a) in block.iter().enumerate() {
                let b = block[(i + 1) % block.len()];
                pairs.push((self.leg_points(a).1, self.leg_points(b).0));
            }
        }
        Ok(Diagram::from_pairs_unchecked(upper, lower, pairs))
    }

    /// Mirror image (upper and lower rows swapped).
    pub fn involute(&self) -> LegPartition {
        let (k, l) = (self.upper_legs, self.lower_legs);
        let mut labels = vec![0; k + l];
        for (leg, &b) in self.labels.iter().enumerate() {
            let target = if leg < k { l + leg } else { leg - k };
            labels[target] = b;
        }
        LegPartition { upper_legs: l, lower_legs: k, labels: canonical_labels(&labels) }
    }
}

/// Noncrossing test for a label sequence read in linear (= circle) order:
/// everything strictly between two consecutive elements of a block must
/// belong to blocks lying entirely between them.
pub fn is_noncrossing_sequence(labels: &[usize]) -> bool {
    let mut first = std::collections::HashMap::new();
    let mut last = std::collections::HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        first.entry(l).or_insert(i);
        last.insert(l, i);
    }
    let mut prev: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (j, &l) in labels.iter().enumerate() {
        if let Some(&i) = prev.get(&l) {
            for &inner in &labels[i + 1..j] {
                if first[&inner] < i || last[&inner] > j {
                    return false;
                }
            }
        }
        prev.insert(l, j);
    }
    true
}

/// Un-fattens a matching into the partition of its legs.
pub fn unfatten(d: &Diagram) -> LegPartition {
    let (k, l) = (d.upper().len(), d.lower().len());
    let mut parent: Vec<usize> = (0..k + l).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in d.pairs() {
        let (ra, rb) = (find(&mut parent, a / 2), find(&mut parent, b / 2));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..k + l).map(|x| find(&mut parent, x)).collect();
    LegPartition { upper_legs: k, lower_legs: l, labels: canonical_labels(&roots) }
}

/// Block-size restriction applied while enumerating noncrossing partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockRule {
    Any,
    PairsOnly,
    EvenOnly,
}

impl BlockRule {
    fn allows_final(self, size: usize) -> bool {
        match self {
            BlockRule::Any => true,
            BlockRule::PairsOnly => size == 2,
            BlockRule::EvenOnly => size.is_multiple_of(2),
        }
    }
}

/// All noncrossing partitions of `m` linearly ordered points (as canonical
/// label strings) whose blocks satisfy `rule`.
pub fn nc_partitions(m: usize, rule: BlockRule) -> Vec<Vec<usize>> {
    struct Gen {
        m: usize,
        rule: BlockRule,
        labels: Vec<usize>,
        sizes: Vec<usize>,
        // open blocks, innermost last
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }

    impl Gen {
        fn go(&mut self, pos: usize) {
            if pos == self.m {
                if self.stack.iter().all(|&b| self.rule.allows_final(self.sizes[b])) {
                    self.out.push(self.labels.clone());
                }
                return;
            }
            // start a new block
            let nb = self.sizes.len();
            self.sizes.push(1);
            self.stack.push(nb);
            self.labels.push(nb);
            self.go(pos + 1);
            self.labels.pop();
            self.stack.pop();
            self.sizes.pop();

            // join an open block, closing everything nested inside it
            for depth in (0..self.stack.len()).rev() {
                let closed: Vec<usize> = self.stack[depth + 1..].to_vec();
                if !closed.iter().all(|&b| self.rule.allows_final(self.sizes[b])) {
                    // an invalid block cannot be closed; deeper joins close it too
                    break;
                }
                let target = self.stack[depth];
                if self.rule == BlockRule::PairsOnly && self.sizes[target] >= 2 {
                    continue;
                }
                self.stack.truncate(depth + 1);
                self.sizes[target] += 1;
                self.labels.push(target);
                self.go(pos + 1);
                self.labels.pop();
                self.sizes[target] -= 1;
                self.stack.extend_from_slice(&closed);
            }
        }
    }

    let mut g = Gen { m, rule, labels: Vec::new(), sizes: Vec::new(), stack: Vec::new(), out: Vec::new() };
    g.go(0);
    g.out
}
