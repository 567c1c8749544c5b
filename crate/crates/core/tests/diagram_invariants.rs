use fqg_core::category::{block4, cap, cap_ab, cap_ba, jdiag};
use fqg_core::color::{is_colored, is_half_colored, mismatch_count, word_colors, xyyx_colors};
use fqg_core::doubling::PointMatching;
use fqg_core::enumerate::{all_matchings, backtrack_matchings};
use fqg_core::partition::unfatten;
use fqg_core::word::all_words;
use fqg_core::{delta, gamma, Diagram, Word};
use proptest::prelude::*;

fn catalan(m: usize) -> usize {
    (0..m).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Every matching of every all-`a` cell with at most `max_points` points.
fn all_a_diagrams(max_points: usize) -> Vec<Diagram> {
    let legs = max_points / 2;
    (0..=legs)
        .flat_map(|k| (0..=legs - k).map(move |l| (k, l)))
        .flat_map(|(k, l)| all_matchings(&Word::all_a(k), &Word::all_a(l)))
        .collect()
}

#[test]
fn gamma_and_delta() {
    assert_eq!(gamma(0), Word::empty());
    assert_eq!(gamma(3), w("aba"));
    assert_eq!(delta(3), w("bab"));
    assert_eq!(gamma(4).bar(), delta(4));
}

#[test]
fn catalan_counts_against_backtracking() {
    for m in 0..=8 {
        let (k, l) = (m / 2, m - m / 2);
        let fast = all_matchings(&Word::all_a(k), &Word::all_a(l));
        assert_eq!(fast.len(), catalan(m), "m = {m}");
        if m <= 6 {
            assert_eq!(fast, backtrack_matchings(&Word::all_a(k), &Word::all_a(l)));
        }
    }
}

#[test]
fn tensor_examples() {
    assert_eq!(Diagram::empty().tensor(&cap_ab()), cap_ab());
    let t = cap_ab().tensor(&cap_ba());
    assert_eq!(t.lower(), &w("abba"));
    assert_eq!(t.pairs(), &[(0, 3), (1, 2), (4, 7), (5, 6)]);
    assert!(is_colored(&t));
}

#[test]
fn composition_scalars() {
    let (d, rc) = cap().compose(&cap().involute()).unwrap();
    assert_eq!((d, rc), (Diagram::empty(), 1));
    assert_eq!(jdiag().compose(&jdiag()).unwrap(), (jdiag(), 1));
    let id = Diagram::identity(&w("ab"));
    assert_eq!(id.compose(&id).unwrap(), (id.clone(), 0));
    assert_eq!(Diagram::empty().compose(&Diagram::empty()).unwrap(), (Diagram::empty(), 0));
    assert!(cap_ab().compose(&cap_ba().involute()).is_err());
}

#[test]
fn involute_and_conjugate_examples() {
    assert_eq!(cap_ab().conjugate(), cap_ba());
    assert_eq!(cap_ab().involute().upper(), &w("ab"));
    assert_eq!(Diagram::identity(&w("aab")).involute(), Diagram::identity(&w("aab")));
}

#[test]
fn half_colored_example() {
    let side = Diagram::new(Word::empty(), w("ab"), vec![(0, 1), (2, 3)]).unwrap();
    assert_eq!(mismatch_count(&side), 2);
    assert!(is_half_colored(&side) && !is_colored(&side));
    assert!(is_colored(&cap_ab()));
}

#[test]
fn unfatten_examples() {
    assert_eq!(unfatten(&block4()).num_blocks(), 1);
    assert_eq!(unfatten(&cap()).num_blocks(), 1);
    let side = Diagram::new(Word::empty(), w("aa"), vec![(0, 1), (2, 3)]).unwrap();
    assert_eq!(unfatten(&side).num_blocks(), 2);
}

#[test]
fn doubling_examples() {
    let single = PointMatching::new(0, 2, vec![(0, 1)]).unwrap();
    assert_eq!(single.double().pairs(), &[(0, 3), (1, 2)]);
    // the doubled image of the 4-point matchings has the two elements
    let pm: Vec<PointMatching> = [vec![(0, 1), (2, 3)], vec![(0, 3), (1, 2)]]
        .into_iter()
        .map(|p| PointMatching::new(0, 4, p).unwrap())
        .collect();
    let mut doubled: Vec<Diagram> = pm.iter().map(PointMatching::double).collect();
    doubled.dedup();
    assert_eq!(doubled.len(), 2);
}

#[test]
fn doubling_preserves_noncrossing_up_to_eight_points() {
    for m in 0..=4 {
        for k in 0..=2 * m {
            let (u, l) = (k, 2 * m - k);
            let ms = backtrack_points(u, l);
            assert_eq!(ms.len(), catalan(m));
            for d in ms {
                let pm = PointMatching::new(u, l, d).unwrap();
                assert!(pm.double().is_noncrossing());
            }
        }
    }
}

/// Noncrossing perfect matchings on `u + l` points (one point per string).
fn backtrack_points(u: usize, l: usize) -> Vec<Vec<(usize, usize)>> {
    let n = u + l;
    let circ = |p: usize| if p < u { p } else { u + (l - 1 - (p - u)) };
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<(usize, usize)>)> = vec![((0..n).collect(), Vec::new())];
    while let Some((free, placed)) = stack.pop() {
        let Some(&first) = free.first() else {
            out.push(placed);
            continue;
        };
        for (i, &second) in free.iter().enumerate().skip(1) {
            // in circle order, the points strictly between must pair among themselves
            let (a, b) = (circ(first).min(circ(second)), circ(first).max(circ(second)));
            let inside = free.iter().filter(|&&p| a < circ(p) && circ(p) < b).count();
            if inside % 2 == 1 {
                continue;
            }
            if placed.iter().any(|&(c, d)| {
                let (c, d) = (circ(c).min(circ(d)), circ(c).max(circ(d)));
                (a < c && c < b && b < d) || (c < a && a < d && d < b)
            }) {
                continue;
            }
            let mut rest = free.clone();
            rest.remove(i);
            rest.remove(0);
            let mut p = placed.clone();
            p.push((first, second));
            stack.push((rest, p));
        }
    }
    out
}

#[test]
fn operations_preserve_noncrossing_up_to_twelve_points() {
    for d in all_a_diagrams(12) {
        assert!(d.involute().is_noncrossing());
        assert!(d.conjugate().is_noncrossing());
        assert_eq!(d.involute().involute(), d);
        assert_eq!(d.conjugate().conjugate(), d);
    }
    let small = all_a_diagrams(6);
    for d in &small {
        for e in &small {
            assert!(d.tensor(e).is_noncrossing());
            if d.lower() == e.upper() {
                assert!(d.compose(e).unwrap().0.is_noncrossing());
            }
        }
    }
}

#[test]
fn composition_is_associative_with_additive_scalars() {
    let ds = all_a_diagrams(8);
    let from = |k: usize| ds.iter().filter(move |d| d.upper().len() == k);
    for d in &ds {
        for e in from(d.lower().len()) {
            for f in from(e.lower().len()) {
                let (de, r1) = d.compose(e).unwrap();
                let (left, r2) = de.compose(f).unwrap();
                let (ef, r3) = e.compose(f).unwrap();
                let (right, r4) = d.compose(&ef).unwrap();
                assert_eq!(left, right);
                assert_eq!(r1 + r2, r3 + r4);
            }
        }
    }
}

#[test]
fn interchange_law() {
    let ds = all_a_diagrams(6);
    let from = |k: usize| ds.iter().filter(move |d| d.upper().len() == k);
    for d in &ds {
        for d2 in from(d.lower().len()) {
            let (dd, r1) = d.compose(d2).unwrap();
            for e in ds.iter().filter(|e| e.num_legs() + d.num_legs() <= 4) {
                for e2 in from(e.lower().len()) {
                    let (ee, r2) = e.compose(e2).unwrap();
                    let (lhs, r) = d.tensor(e).compose(&d2.tensor(e2)).unwrap();
                    assert_eq!((lhs, r), (dd.tensor(&ee), r1 + r2));
                }
            }
        }
    }
}

#[test]
fn conjugation_and_involution_respect_colors_up_to_ten_points() {
    for legs in 0..=5 {
        for k in 0..=legs {
            for a in all_words(k) {
                for b in all_words(legs - k) {
                    for d in all_matchings(&a, &b) {
                        assert_eq!(is_colored(&d), is_colored(&d.conjugate()), "{d}");
                        assert_eq!(mismatch_count(&d) % 2, mismatch_count(&d.involute()) % 2, "{d}");
                    }
                }
            }
        }
    }
}

#[test]
fn alternating_words_reproduce_the_fixed_pattern() {
    for k in 0..=8 {
        assert_eq!(word_colors(&gamma(k)), xyyx_colors(2 * k));
    }
}

#[test]
fn json_round_trip_and_validation() {
    let d = cap_ab().tensor(&Diagram::identity(&w("b")));
    let s = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<Diagram>(&s).unwrap(), d);
    let crossing = r#"{"upper":"","lower":"aa","pairs":[[0,2],[1,3]]}"#;
    assert!(serde_json::from_str::<Diagram>(crossing).is_err());
    let imperfect = r#"{"upper":"","lower":"a","pairs":[[0,1],[1,0]]}"#;
    assert!(serde_json::from_str::<Diagram>(imperfect).is_err());
}

fn arb_diagram(max_legs: usize) -> impl Strategy<Value = Diagram> {
    (0..=max_legs)
        .prop_flat_map(|legs| (0..=legs).prop_map(move |k| (k, legs - k)))
        .prop_flat_map(|(k, l)| {
            let words = (proptest::collection::vec(any::<bool>(), k), proptest::collection::vec(any::<bool>(), l));
            (words, any::<prop::sample::Index>())
        })
        .prop_map(|((a, b), idx)| {
            let word = |v: Vec<bool>| -> Word { v.iter().map(|&x| if x { 'b' } else { 'a' }).collect::<String>().parse().unwrap() };
            let ds = all_matchings(&word(a), &word(b));
            ds[idx.index(ds.len())].clone()
        })
}

proptest! {
    #[test]
    fn bend_keeps_partition_shape(d in arb_diagram(6)) {
        let bent = d.bend();
        prop_assert!(bent.is_noncrossing());
        prop_assert_eq!(bent.upper().len(), 0);
        prop_assert_eq!(unfatten(&bent).num_blocks(), unfatten(&d).num_blocks());
        prop_assert_eq!(is_colored(&bent), is_colored(&d));
    }

    #[test]
    fn identity_is_neutral(d in arb_diagram(6)) {
        let left = Diagram::identity(d.upper()).compose(&d).unwrap();
        let right = d.compose(&Diagram::identity(d.lower())).unwrap();
        prop_assert_eq!(left, (d.clone(), 0));
        prop_assert_eq!(right, (d, 0));
    }

    #[test]
    fn fattening_round_trips(d in arb_diagram(7)) {
        let p = unfatten(&d);
        prop_assert!(p.is_noncrossing());
        prop_assert_eq!(p.fatten(d.upper().clone(), d.lower().clone()).unwrap(), d);
    }

    #[test]
    fn involution_reverses_composition(d in arb_diagram(5), e in arb_diagram(5)) {
        if d.lower() == e.upper() {
            let (de, r) = d.compose(&e).unwrap();
            prop_assert_eq!(e.involute().compose(&d.involute()).unwrap(), (de.involute(), r));
        }
    }
}
