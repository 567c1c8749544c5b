//! Generator presentations of the seven categories.

use crate::category::{CategoryId, Kind};
use crate::diagram::Diagram;
use crate::word::Word;

fn w(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn d(upper: &str, lower: &str, pairs: &[(usize, usize)]) -> Diagram {
    Diagram::new(w(upper), w(lower), pairs.to_vec()).expect("literal generator")
}

/// The doubled cap in `D(∅, aa)`.
pub fn cap() -> Diagram {
    d("", "aa", &[(0, 3), (1, 2)])
}

/// Outer through-strings with an inner cap and cup: one block of four legs.
pub fn block4() -> Diagram {
    block4_on("aa")
}

/// Upper cap over lower cup in `End(u)`: two singleton legs.
pub fn jdiag() -> Diagram {
    jdiag_on("a")
}

/// Single-leg cap in `D(∅, a)`.
pub fn unit_cap() -> Diagram {
    d("", "a", &[(0, 1)])
}

pub fn cap_ab() -> Diagram {
    d("", "ab", &[(0, 3), (1, 2)])
}

pub fn cap_ba() -> Diagram {
    d("", "ba", &[(0, 3), (1, 2)])
}

pub fn block4_on(word: &str) -> Diagram {
    d(word, word, &[(0, 4), (1, 2), (3, 7), (5, 6)])
}

pub fn jdiag_on(word: &str) -> Diagram {
    d(word, word, &[(0, 1), (2, 3)])
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub kind: Kind,
    pub items: Vec<(String, Diagram)>,
}

impl GeneratorSet {
    pub fn new(kind: Kind, items: Vec<(String, Diagram)>) -> Self {
        GeneratorSet { kind, items }
    }

    pub fn diagrams(&self) -> Vec<Diagram> {
        self.items.iter().map(|(_, d)| d.clone()).collect()
    }

    /// The generating diagrams of each named category.
    pub fn presentation(id: CategoryId) -> Self {
        let named = |pairs: Vec<(&str, Diagram)>| -> Vec<(String, Diagram)> {
            pairs.into_iter().map(|(n, d)| (n.to_string(), d)).collect()
        };
        let items = match id {
            CategoryId::O => named(vec![("cap", cap())]),
            CategoryId::H => named(vec![("cap", cap()), ("block4", block4())]),
            CategoryId::SPrime => named(vec![("cap", cap()), ("block4", block4()), ("jdiag", jdiag())]),
            CategoryId::S => named(vec![("cap", cap()), ("block4", block4()), ("unit_cap", unit_cap())]),
            CategoryId::U => named(vec![("cap_ab", cap_ab()), ("cap_ba", cap_ba())]),
            CategoryId::K => named(vec![
                ("cap_ab", cap_ab()),
                ("cap_ba", cap_ba()),
                ("block4_ab", block4_on("ab")),
                ("block4_ba", block4_on("ba")),
            ]),
            CategoryId::P => named(vec![
                ("cap_ab", cap_ab()),
                ("cap_ba", cap_ba()),
                ("block4_ab", block4_on("ab")),
                ("block4_ba", block4_on("ba")),
                ("jdiag_a", jdiag_on("a")),
                ("jdiag_b", jdiag_on("b")),
            ]),
        };
        GeneratorSet { kind: id.kind(), items }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_belong_to_their_categories() {
        for id in CategoryId::ALL {
            for (name, g) in GeneratorSet::presentation(id).items {
                assert!(id.predicate(&g), "{name} not in {id}");
            }
        }
    }
}
