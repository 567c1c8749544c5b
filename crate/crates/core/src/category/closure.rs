//! Bounded saturation of a generator list.
//!
//! Every diagram is stored bent into fixed-point position: the upper row is
//! rotated down to the left of the lower row, so `D(α, β)` corresponds to
//! `D(∅, rev(ᾱ)·β)`. In that one-row picture, closure under tensor product,
//! composition, involution and conjugation (with identities and duality caps
//! present) amounts to closure under
//!
//! * concatenation,
//! * cyclic rotation,
//! * contraction of two adjacent legs with opposite letters (capping them off),
//! * reversal with letterwise bar (involution) and letterwise bar (conjugation).
//!
//! A diagram is kept as its word plus the leg partition from un-fattening.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{check_words, GeneratorSet, Kind};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::partition::{unfatten, LegPartition};
use crate::word::{Letter, Word};

const MAX_LEGS: usize = 16;

/// Bent diagram: `len` legs, bit `i` of `letters` set when leg `i` is `b`,
/// 4-bit canonical block labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Fixed {
    len: u8,
    letters: u16,
    labels: u64,
}

impl Fixed {
    fn new(letters: &[u8], labels: &[u8]) -> Fixed {
        debug_assert_eq!(letters.len(), labels.len());
        let mut map = [u8::MAX; MAX_LEGS];
        let mut next = 0u8;
        let mut packed_letters = 0u16;
        let mut packed_labels = 0u64;
        for (i, (&l, &b)) in letters.iter().zip(labels).enumerate() {
            if map[b as usize] == u8::MAX {
                map[b as usize] = next;
                next += 1;
            }
            packed_letters |= (l as u16) << i;
            packed_labels |= (map[b as usize] as u64) << (4 * i);
        }
        Fixed { len: letters.len() as u8, letters: packed_letters, labels: packed_labels }
    }

    fn len(self) -> usize {
        self.len as usize
    }

    fn letter(self, i: usize) -> u8 {
        (self.letters >> i & 1) as u8
    }

    fn label(self, i: usize) -> u8 {
        (self.labels >> (4 * i) & 0xf) as u8
    }

    fn unpack(self) -> (Vec<u8>, Vec<u8>) {
        ((0..self.len()).map(|i| self.letter(i)).collect(), (0..self.len()).map(|i| self.label(i)).collect())
    }

    fn word_key(self) -> (u8, u16) {
        (self.len, self.letters)
    }

    fn concat(self, other: Fixed) -> Fixed {
        let (mut l1, mut b1) = self.unpack();
        let (l2, b2) = other.unpack();
        let shift = self.label_count();
        l1.extend(l2);
        b1.extend(b2.into_iter().map(|b| b + shift));
        Fixed::new(&l1, &b1)
    }

    fn label_count(self) -> u8 {
        (0..self.len()).map(|i| self.label(i) + 1).max().unwrap_or(0)
    }

    fn rotate(self) -> Fixed {
        let (mut l, mut b) = self.unpack();
        if !l.is_empty() {
            l.rotate_left(1);
            b.rotate_left(1);
        }
        Fixed::new(&l, &b)
    }

    fn bar(self) -> Fixed {
        let (l, b) = self.unpack();
        let l: Vec<u8> = l.into_iter().map(|x| 1 - x).collect();
        Fixed::new(&l, &b)
    }

    fn reverse(self) -> Fixed {
        let (mut l, mut b) = self.unpack();
        l.reverse();
        b.reverse();
        Fixed::new(&l, &b)
    }

    /// Caps off legs `i` and `i + 1`: their blocks merge and the two legs
    /// disappear.
    fn contract(self, i: usize) -> Fixed {
        let (mut l, mut b) = self.unpack();
        let (keep, drop) = (b[i], b[i + 1]);
        for x in b.iter_mut() {
            if *x == drop {
                *x = keep;
            }
        }
        l.drain(i..i + 2);
        b.drain(i..i + 2);
        Fixed::new(&l, &b)
    }
}

fn letter_bit(l: Letter) -> u8 {
    match l {
        Letter::A => 0,
        Letter::B => 1,
    }
}

/// Bent word of a cell `(α, β)`: `rev(ᾱ)·β`, or all-`a` when orthogonal.
fn bent_letters(kind: Kind, upper: &Word, lower: &Word) -> Vec<u8> {
    match kind {
        Kind::Orthogonal => vec![0; upper.len() + lower.len()],
        Kind::Unitary => upper
            .letters()
            .iter()
            .rev()
            .map(|&l| letter_bit(l.bar()))
            .chain(lower.letters().iter().map(|&l| letter_bit(l)))
            .collect(),
    }
}

fn bend(kind: Kind, d: &Diagram) -> Fixed {
    let k = d.upper().len();
    let part = unfatten(d);
    let labels = part.labels();
    let bent: Vec<u8> =
        (0..part.num_legs()).map(|j| if j < k { labels[k - 1 - j] } else { labels[j] } as u8).collect();
    Fixed::new(&bent_letters(kind, d.upper(), d.lower()), &bent)
}

fn unbend(kind: Kind, f: Fixed, k: usize) -> Diagram {
    let (letters, labels) = f.unpack();
    let to_letter = |x: u8| if x == 0 { Letter::A } else { Letter::B };
    let upper = match kind {
        Kind::Orthogonal => Word::all_a(k),
        Kind::Unitary => Word::new(letters[..k].iter().rev().map(|&x| to_letter(x).bar()).collect()),
    };
    let lower = Word::new(letters[k..].iter().map(|&x| to_letter(x)).collect());
    let leg_labels: Vec<usize> =
        (0..letters.len()).map(|leg| if leg < k { labels[k - 1 - leg] } else { labels[leg] } as usize).collect();
    LegPartition::new(k, letters.len() - k, &leg_labels)
        .and_then(|p| p.fatten(upper, lower))
        .expect("stored partitions are noncrossing")
}

/// Progress of one saturation round.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureRound {
    pub round: usize,
    pub new_diagrams: usize,
    pub total: usize,
}

/// A saturated family, valid for diagrams with at most `max_points` points.
#[derive(Debug, Clone)]
pub struct Closure {
    kind: Kind,
    max_points: usize,
    slack: usize,
    label: String,
    set: HashSet<Fixed>,
    by_word: BTreeMap<(u8, u16), Vec<Fixed>>,
}

impl Closure {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    pub fn slack(&self) -> usize {
        self.slack
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of stored (bent) diagrams.
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    fn check(&self, upper: &Word, lower: &Word) -> Result<()> {
        check_words(self.kind, upper, lower)?;
        let points = 2 * (upper.len() + lower.len());
        if points > self.max_points {
            return Err(Error::CapExceeded { points, cap: self.max_points });
        }
        Ok(())
    }

    pub fn contains(&self, d: &Diagram) -> Result<bool> {
        self.check(d.upper(), d.lower())?;
        Ok(self.set.contains(&bend(self.kind, d)))
    }

    pub fn cell(&self, upper: &Word, lower: &Word) -> Result<Vec<Diagram>> {
        self.check(upper, lower)?;
        let letters = bent_letters(self.kind, upper, lower);
        let key = Fixed::new(&letters, &vec![0; letters.len()]).word_key();
        let mut out: Vec<Diagram> = self
            .by_word
            .get(&key)
            .map(|fs| fs.iter().map(|&f| unbend(self.kind, f, upper.len())).collect())
            .unwrap_or_default();
        out.sort();
        Ok(out)
    }
}

/// Smallest family containing `gens`, every identity and the duality caps,
/// closed under tensor, composition, involution and conjugation among
/// diagrams of at most `max_points + slack` points, then truncated to
/// `max_points`.
pub fn closure(gens: &GeneratorSet, max_points: usize, slack: usize) -> Result<Closure> {
    closure_with_progress(gens, max_points, slack, &mut |_| {})
}

pub fn closure_with_progress(
    gens: &GeneratorSet,
    max_points: usize,
    slack: usize,
    progress: &mut dyn FnMut(&ClosureRound),
) -> Result<Closure> {
    let kind = gens.kind;
    let work_legs = (max_points + slack) / 2;
    if work_legs > MAX_LEGS {
        return Err(Error::Guard(format!("closure limited to {} points, asked for {}", 2 * MAX_LEGS, 2 * work_legs)));
    }
    let mut seeds: Vec<Fixed> = Vec::new();
    for (name, g) in &gens.items {
        check_words(kind, g.upper(), g.lower())
            .map_err(|_| Error::KindMismatch(format!("generator {name} has b-letters in an orthogonal set")))?;
        if g.num_legs() > work_legs {
            return Err(Error::CapExceeded { points: g.num_points(), cap: 2 * work_legs });
        }
        seeds.push(bend(kind, g));
    }
    match kind {
        Kind::Orthogonal => seeds.push(Fixed::new(&[0, 0], &[0, 0])),
        Kind::Unitary => {
            seeds.push(Fixed::new(&[0, 1], &[0, 0]));
            seeds.push(Fixed::new(&[1, 0], &[0, 0]));
        }
    }
    for k in 0..=work_legs / 2 {
        let words = match kind {
            Kind::Orthogonal => vec![Word::all_a(k)],
            Kind::Unitary => crate::word::all_words(k),
        };
        for w in words {
            seeds.push(bend(kind, &Diagram::identity(&w)));
        }
    }

    let mut all: HashSet<Fixed> = HashSet::new();
    let mut by_len: Vec<Vec<Fixed>> = vec![Vec::new(); work_legs + 1];
    let mut frontier: Vec<Fixed> = {
        let s: HashSet<Fixed> = seeds.into_iter().collect();
        let mut v: Vec<Fixed> = s.into_iter().collect();
        v.sort_unstable();
        v
    };
    let mut round = 0;
    while !frontier.is_empty() {
        for &f in &frontier {
            all.insert(f);
            by_len[f.len()].push(f);
        }
        round += 1;
        let snapshot = &by_len;
        let produced: Vec<Vec<Fixed>> = frontier
            .par_iter()
            .map(|&x| {
                let mut out = vec![x.rotate(), x.reverse()];
                if kind == Kind::Unitary {
                    out.push(x.bar());
                    out.push(x.reverse().bar());
                }
                for i in 0..x.len().saturating_sub(1) {
                    if kind == Kind::Orthogonal || x.letter(i) != x.letter(i + 1) {
                        out.push(x.contract(i));
                    }
                }
                for (len, ys) in snapshot.iter().enumerate() {
                    if len + x.len() > work_legs {
                        break;
                    }
                    for &y in ys {
                        out.push(x.concat(y));
                        out.push(y.concat(x));
                    }
                }
                out
            })
            .collect();
        let mut next: HashSet<Fixed> = HashSet::new();
        for f in produced.into_iter().flatten() {
            if !all.contains(&f) {
                next.insert(f);
            }
        }
        let mut next: Vec<Fixed> = next.into_iter().collect();
        next.sort_unstable();
        progress(&ClosureRound { round, new_diagrams: next.len(), total: all.len() + next.len() });
        frontier = next;
    }

    let keep_legs = max_points / 2;
    let set: HashSet<Fixed> = all.into_iter().filter(|f| f.len() <= keep_legs).collect();
    let mut by_word: BTreeMap<(u8, u16), Vec<Fixed>> = BTreeMap::new();
    for &f in &set {
        by_word.entry(f.word_key()).or_default().push(f);
    }
    for v in by_word.values_mut() {
        v.sort_unstable();
    }
    let label = gens.items.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ");
    Ok(Closure { kind, max_points, slack, label, set, by_word })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::generators::*;
    use crate::category::CategoryId;
    use crate::enumerate::all_matchings;

    #[test]
    fn bend_unbend_roundtrip() {
        for (a, b) in [("ab", "b"), ("", "abba"), ("bab", ""), ("a", "ab")] {
            let (a, b): (Word, Word) = (a.parse().unwrap(), b.parse().unwrap());
            for d in all_matchings(&a, &b) {
                let f = bend(Kind::Unitary, &d);
                assert_eq!(unbend(Kind::Unitary, f, a.len()), d);
            }
        }
    }

    #[test]
    fn bending_preserves_colorability() {
        // the bent cap of an identity is colored exactly when the original is
        let id = Diagram::identity(&"ab".parse().unwrap());
        let f = bend(Kind::Unitary, &id);
        let flat = unbend(Kind::Unitary, f, 0);
        assert!(crate::color::is_colored(&flat));
        assert_eq!(flat.lower().to_string(), "abab");
    }

    #[test]
    fn closure_of_cap_is_o_up_to_eight_points() {
        let c = closure(&GeneratorSet::presentation(CategoryId::O), 8, 4).unwrap();
        for (a, b) in crate::category::word_pairs(Kind::Orthogonal, 8) {
            assert_eq!(c.cell(&a, &b).unwrap(), CategoryId::O.cell(&a, &b).unwrap(), "({a}, {b})");
        }
        assert!(c.contains(&cap()).unwrap());
        assert!(!c.contains(&unit_cap()).unwrap());
        assert!(c.contains(&Diagram::identity(&Word::all_a(5))).is_err());
    }

    #[test]
    fn contraction_merges_blocks() {
        let f = Fixed::new(&[0, 1, 0, 1], &[0, 1, 1, 0]);
        let g = f.contract(1);
        assert_eq!(g, Fixed::new(&[0, 1], &[0, 0]));
    }
}
