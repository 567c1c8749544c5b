//! Point colorings and the colorability predicates.
//!
//! Colors are derived, never stored: either letterwise from the words
//! (`a → x y`, `b → y x` on each row, left to right) or from the fixed row
//! pattern `x y y x x y y x …`. A string *matches* when its two endpoints carry
//! the same color.

use serde::Serialize;

use crate::diagram::Diagram;
use crate::partition::unfatten;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    X,
    Y,
}

/// Row colors from a word: each letter colors its two points.
pub fn word_colors(word: &Word) -> Vec<Color> {
    word.letters()
        .iter()
        .flat_map(|l| match l {
            Letter::A => [Color::X, Color::Y],
            Letter::B => [Color::Y, Color::X],
        })
        .collect()
}

/// The fixed row pattern `x y y x x y y x …` on `points` points.
pub fn xyyx_colors(points: usize) -> Vec<Color> {
    const PATTERN: [Color; 4] = [Color::X, Color::Y, Color::Y, Color::X];
    (0..points).map(|p| PATTERN[p % 4]).collect()
}

fn mismatches_with(d: &Diagram, upper: &[Color], lower: &[Color]) -> usize {
    let color = |p: usize| if p < upper.len() { upper[p] } else { lower[p - upper.len()] };
    d.pairs().iter().filter(|&&(a, b)| color(a) != color(b)).count()
}

/// Number of strings whose endpoints carry different word-rule colors.
pub fn mismatch_count(d: &Diagram) -> usize {
    mismatches_with(d, &word_colors(d.upper()), &word_colors(d.lower()))
}

/// Every string matches under the word rule.
pub fn is_colored(d: &Diagram) -> bool {
    mismatch_count(d) == 0
}

/// Even number of mismatched strings under the word rule.
pub fn is_half_colored(d: &Diagram) -> bool {
    mismatch_count(d).is_multiple_of(2)
}

/// Every string matches under the fixed `xyyx` row pattern.
pub fn is_xyyx_colorable(d: &Diagram) -> bool {
    mismatches_with(d, &xyyx_colors(d.upper_points()), &xyyx_colors(d.lower_points())) == 0
}

/// Color of the first point of each leg in boundary-circle order, indexed by
/// leg (upper legs first). Upper `a` and lower `b` legs open with `x`.
pub fn leg_circle_colors(upper: &Word, lower: &Word) -> Vec<Color> {
    let up = upper.letters().iter().map(|l| match l {
        Letter::A => Color::X,
        Letter::B => Color::Y,
    });
    let low = lower.letters().iter().map(|l| match l {
        Letter::A => Color::Y,
        Letter::B => Color::X,
    });
    up.chain(low).collect()
}

/// Signed half-coloring.
///
/// Walk the boundary circle and put a charge in the gaps between consecutive
/// legs: a leg opening with `y` drops `+1` into the gap after it, a leg opening
/// with `x` drops `-1` into the gap before it. Two consecutive legs of one
/// block are joined by a matching string exactly when the string's own
/// contribution to the gaps it spans is zero; a mismatched string contributes
/// `±1` according to its orientation.
///
/// The diagram is charge-balanced when the total charge vanishes and every
/// string spans gaps of total charge zero, i.e. mismatched strings cancel
/// inside every string and overall. Colored diagrams are always balanced; the
/// converse fails as soon as a singleton leg is present.
pub fn is_charge_balanced(d: &Diagram) -> bool {
    let (k, l) = (d.upper().len(), d.lower().len());
    let m = k + l;
    if m == 0 {
        return true;
    }
    let colors = leg_circle_colors(d.upper(), d.lower());
    let part = unfatten(d);
    // gap g sits between circle legs g - 1 and g (gap 0 wraps around)
    let mut gap = vec![0i64; m];
    for leg in 0..m {
        let c = part.leg_circle(leg);
        match colors[leg] {
            Color::Y => gap[(c + 1) % m] += 1,
            Color::X => gap[c] -= 1,
        }
    }
    if gap.iter().sum::<i64>() != 0 {
        return false;
    }
    // prefix[g] = gap[0] + … + gap[g - 1]
    let mut prefix = vec![0i64; m + 1];
    for g in 0..m {
        prefix[g + 1] = prefix[g] + gap[g];
    }
    let span = |from: usize, to: usize| prefix[to + 1] - prefix[from];
    part.circle_blocks().iter().all(|block| {
        block.windows(2).all(|w| {
            let (a, b) = (part.leg_circle(w[0]), part.leg_circle(w[1]));
            span(a + 1, b) == 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn nested_cap_is_colored_side_by_side_is_half() {
        let nested = Diagram::new(Word::empty(), w("ab"), vec![(0, 3), (1, 2)]).unwrap();
        assert!(is_colored(&nested));
        let side = Diagram::new(Word::empty(), w("ab"), vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(mismatch_count(&side), 2);
        assert!(is_half_colored(&side) && !is_colored(&side));
        assert!(is_charge_balanced(&side));
        // same matching on `aa` has an even mismatch count but is unbalanced
        let side_aa = side.with_words(Word::empty(), w("aa")).unwrap();
        assert!(is_half_colored(&side_aa));
        assert!(!is_charge_balanced(&side_aa));
    }

    #[test]
    fn gamma_colors_reproduce_xyyx() {
        for k in 0..9 {
            assert_eq!(word_colors(&crate::word::gamma(k)), xyyx_colors(2 * k));
        }
    }

    #[test]
    fn block4_is_xyyx_colorable() {
        let b4 = Diagram::new(Word::all_a(2), Word::all_a(2), vec![(0, 4), (3, 7), (1, 2), (5, 6)]).unwrap();
        assert!(is_xyyx_colorable(&b4));
        let single = Diagram::new(Word::empty(), w("a"), vec![(0, 1)]).unwrap();
        assert!(!is_xyyx_colorable(&single));
        assert!(!is_charge_balanced(&single));
    }

    #[test]
    fn jdiag_words_are_balanced() {
        let j = Diagram::new(w("a"), w("a"), vec![(0, 1), (2, 3)]).unwrap();
        assert!(is_charge_balanced(&j));
        assert!(!is_colored(&j));
        assert!(!is_charge_balanced(&j.with_words(w("a"), w("b")).unwrap()));
    }
}
