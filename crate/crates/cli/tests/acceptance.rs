//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use fqg_core::category::*;
use fqg_core::enumerate::{all_matchings, backtrack_matchings};
use fqg_core::group::{verify_thm14, verify_thm14_with, FiniteGroup, LambdaMap};
use fqg_core::linear::{check_functorial, gram, rank_exact, realize, span_dim_oracle, stabilization, Dimension, TensorMap};
use fqg_core::word::all_words;
use fqg_core::{gamma, Diagram, LegPartition, Word};

const CAP: usize = 12;
const SLACK: usize = 4;

type Verdict = Result<String, String>;

fn named(id: CategoryId) -> CategorySpec {
    CategorySpec::Named(id)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn equal(a: &CategorySpec, b: &CategorySpec, what: &str) -> Result<usize, String> {
    let c = compare(a, b, CAP).map_err(|e| e.to_string())?;
    ensure(c.equal, || format!("{what}: first difference {:?}", c.witness))?;
    Ok(c.left_total)
}

fn criterion_1() -> Verdict {
    let mut sizes = Vec::new();
    for id in CategoryId::ALL {
        let c = closure(&GeneratorSet::presentation(id), CAP, SLACK).map_err(|e| e.to_string())?;
        let n = equal(&CategorySpec::Generated(c), &named(id), &format!("closure({id})"))?;
        sizes.push(format!("{id}={n}"));
    }
    Ok(format!("closure = predicate on all cells ≤ {CAP} points ({})", sizes.join(" ")))
}

fn criterion_2() -> Verdict {
    let cx = |id| complexify(&named(id), CAP, SLACK).map_err(|e| e.to_string());
    equal(&cx(CategoryId::O)?, &named(CategoryId::U), "complexify(o) = u")?;
    let s = cx(CategoryId::S)?;
    let sp = cx(CategoryId::SPrime)?;
    equal(&s, &named(CategoryId::P), "complexify(s) = p")?;
    equal(&sp, &named(CategoryId::P), "complexify(s') = p")?;
    let d = hk_direction(CAP, SLACK, &mut |_| {}).map_err(|e| e.to_string())?;
    Ok(format!(
        "complexify(o)=u, complexify(s)=complexify(s')=p; h/k: complexify(h)=k {}, decomplexify(k)=h {}, literal reading {}",
        d.complexify_h_is_k, d.decomplexify_k_is_h, d.literal_reading
    ))
}

fn criterion_3() -> Verdict {
    let mut parts = Vec::new();
    for c in [CategoryId::U, CategoryId::K, CategoryId::P] {
        let r = roundtrip(c, CAP, SLACK, &mut |_| {}).map_err(|e| e.to_string())?;
        if let Some(bad) = r.checks.iter().find(|x| !x.passed) {
            return Err(format!("{c}: {} failed, witness {:?}", bad.name, bad.witness));
        }
        let down = decomplexify(&named(c), CAP).map_err(|e| e.to_string())?;
        let eq = infinite_level_equivalences(&down, CAP).map_err(|e| e.to_string())?;
        ensure(eq.odd_fixed_cells_empty, || format!("decomplexify({c}) has a nonempty odd fixed cell"))?;
        parts.push(format!("{c}→{}→{c}", c.partner()));
    }
    Ok(format!("{} with axioms and all three tensor chains", parts.join(", ")))
}

fn criterion_4() -> Verdict {
    let lv = |id, cap| level(&named(id), cap).map_err(|e| e.to_string());
    ensure(lv(CategoryId::S, 6)? == LevelResult::Finite(0), || "level(s) ≠ 0".into())?;
    for id in [CategoryId::O, CategoryId::H, CategoryId::SPrime] {
        for cap in 0..=6 {
            let l = lv(id, cap)?;
            ensure(l == LevelResult::AboveCap(cap), || format!("level({id}, {cap}) = {l:?}"))?;
        }
    }
    Ok("level(s)=0; o, h, s' above cap for caps 0..=6".into())
}

fn criterion_5() -> Verdict {
    let tri = Diagram::new(Word::empty(), Word::all_a(3), vec![(0, 5), (1, 2), (3, 4)]).unwrap();
    let fork = LegPartition::new(1, 2, &[0, 0, 0]).and_then(|p| p.fatten(Word::all_a(1), Word::all_a(2))).unwrap();
    let variants: Vec<(&str, Vec<Diagram>, bool)> = vec![
        ("<cap, unit_cap>", vec![cap(), unit_cap()], false),
        ("<cap, three-leg block>", vec![cap(), tri], false),
        ("<cap, fork a→aa>", vec![cap(), fork], false),
        ("<cap, jdiag>", vec![cap(), jdiag()], true),
        ("<cap, block4, jdiag>", vec![cap(), block4(), jdiag()], true),
    ];
    let mut specs: Vec<(String, CategorySpec, bool)> = [CategoryId::O, CategoryId::H, CategoryId::S, CategoryId::SPrime]
        .into_iter()
        .map(|id| (id.to_string(), named(id), id != CategoryId::S))
        .collect();
    for (name, gens, infinite) in variants {
        let items = gens.into_iter().enumerate().map(|(i, d)| (format!("g{i}"), d)).collect();
        let c = closure(&GeneratorSet::new(Kind::Orthogonal, items), CAP, SLACK).map_err(|e| e.to_string())?;
        specs.push((name.to_string(), CategorySpec::Generated(c), infinite));
    }
    let mut shown = Vec::new();
    for (name, spec, infinite) in &specs {
        let r = infinite_level_equivalences(spec, CAP).map_err(|e| e.to_string())?;
        ensure(r.agree, || format!("{name}: verdicts disagree {r:?}"))?;
        ensure(r.odd_fixed_cells_empty == *infinite, || format!("{name}: expected infinite level {infinite}"))?;
        shown.push(format!("{name}:{}", r.odd_fixed_cells_empty));
    }
    Ok(format!("three verdicts agree on {} families ({})", specs.len(), shown.join(", ")))
}

/// Brute-force count: backtracked matchings filtered by the predicate.
fn brute_moment(id: CategoryId, k: usize) -> usize {
    let w = if id.kind() == Kind::Orthogonal { Word::all_a(k) } else { gamma(k) };
    backtrack_matchings(&Word::empty(), &w).into_iter().filter(|d| id.predicate(d)).count()
}

fn criterion_6() -> Verdict {
    let expect: [(CategoryId, &[usize]); 3] = [
        (CategoryId::O, &[1, 0, 1, 0, 2, 0, 5, 0, 14]),
        (CategoryId::S, &[1, 1, 2, 5, 14, 42, 132, 429, 1430]),
        (CategoryId::SPrime, &[1, 0, 2, 0, 14]),
    ];
    for (id, table) in expect {
        let m = moments(&named(id), table.len() - 1).map_err(|e| e.to_string())?;
        ensure(m == table, || format!("moments({id}) = {m:?}"))?;
        let brute: Vec<usize> = (0..table.len()).map(|k| brute_moment(id, k)).collect();
        ensure(brute == table, || format!("brute-force moments({id}) = {brute:?}"))?;
    }
    for (c, a) in [(CategoryId::U, CategoryId::O), (CategoryId::K, CategoryId::H), (CategoryId::P, CategoryId::SPrime)] {
        let mu = moments(&named(c), 8).map_err(|e| e.to_string())?;
        let ma = moments(&named(a), 8).map_err(|e| e.to_string())?;
        for k in (0..=8).step_by(2) {
            ensure(mu[k] == ma[k], || format!("moments({c})[{k}] = {} ≠ moments({a})[{k}] = {}", mu[k], ma[k]))?;
            ensure(brute_moment(c, k) == mu[k], || format!("brute-force moments({c})[{k}]"))?;
        }
    }
    Ok("o, s, s' tables exact; u/k/p equal o/h/s' on even γ-cells; brute-force enumerator agrees".into())
}

/// Every diagram, over all words, with at most 8 points.
fn diagrams_up_to_8() -> Vec<Diagram> {
    let mut out = Vec::new();
    for legs in 0..=4 {
        for k in 0..=legs {
            for a in all_words(k) {
                for b in all_words(legs - k) {
                    out.extend(all_matchings(&a, &b));
                }
            }
        }
    }
    out
}

fn criterion_7() -> Verdict {
    let ds = diagrams_up_to_8();
    let mut by_upper: BTreeMap<&Word, Vec<&Diagram>> = BTreeMap::new();
    for d in &ds {
        by_upper.entry(d.upper()).or_default().push(d);
    }
    let mut pairs = 0usize;
    for n in [2, 3] {
        let dim = Dimension::new(n).unwrap();
        let real: BTreeMap<&Diagram, TensorMap> = ds.iter().map(|d| (d, realize(d, dim).unwrap())).collect();
        for d in &ds {
            for e in by_upper.get(d.lower()).into_iter().flatten() {
                pairs += 1;
                let (comp, rc) = d.compose(e).map_err(|x| x.to_string())?;
                let lhs = real[*e].after(&real[d]).map_err(|x| x.to_string())?;
                let rhs = realize(&comp, dim).map_err(|x| x.to_string())?.scaled((n as i64).pow(rc as u32));
                ensure(lhs == rhs, || format!("n={n}: {d} then {e}"))?;
            }
        }
    }
    // the library's own check on a sample agrees
    ensure(check_functorial(&jdiag(), &jdiag(), Dimension::new(3).unwrap()).unwrap(), || "J² ≠ 3J".into())?;
    Ok(format!("{pairs} composable pairs (n = 2, 3), zero failures"))
}

fn criterion_8() -> Verdict {
    let mut cells = 0;
    let mut thresholds = BTreeMap::new();
    for id in CategoryId::ALL {
        for (a, b) in word_pairs(id.kind(), 8) {
            let cell = named(id).cell(&a, &b).map_err(|e| e.to_string())?;
            if cell.is_empty() {
                continue;
            }
            cells += 1;
            for n in 1..=3 {
                let dim = Dimension::new(n).unwrap();
                let r = rank_exact(&gram(&cell, dim).map_err(|e| e.to_string())?);
                let o = span_dim_oracle(&cell, dim).map_err(|e| e.to_string())?;
                ensure(r == o, || format!("{id}({a},{b}) n={n}: gram rank {r} ≠ span {o}"))?;
            }
            let st = stabilization(&cell, 6).map_err(|e| e.to_string())?;
            let t = st.threshold.ok_or_else(|| format!("{id}({a},{b}) has not stabilized by n=6: {:?}", st.ranks))?;
            *thresholds.entry(t).or_insert(0) += 1;
        }
    }
    Ok(format!("{cells} nonempty cells, n ∈ {{1,2,3}}; stabilization thresholds {thresholds:?}"))
}

fn criterion_9() -> Verdict {
    let mut parts = Vec::new();
    for g in [FiniteGroup::z2(), FiniteGroup::z4(), FiniteGroup::klein(), FiniteGroup::s3()] {
        let r = verify_thm14(&g, 6).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{}: {r:?}", g.name()))?;
        let neg = verify_thm14_with(&g, 6, LambdaMap::Trivial).map_err(|e| e.to_string())?;
        let control = if r.lambda.len() == 1 {
            // with Λ trivial the control map coincides with the true one
            "control n/a (Λ trivial)".to_string()
        } else {
            ensure(!neg.passed, || format!("{}: negative control accepted", g.name()))?;
            "control rejected".to_string()
        };
        parts.push(format!("{} |Λ|={} ball={} {control}", g.name(), r.lambda.len(), r.t_spheres.iter().sum::<usize>()));
    }
    Ok(parts.join("; "))
}

fn criterion_10() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_fqg");
    let runs: Vec<Vec<&str>> = vec![
        vec!["enumerate", "--category", "u", "--lower", "ab"],
        vec!["enumerate", "--category", "s", "--upper", "aa", "--lower", "aa", "--format", "csv"],
        vec!["closure-check", "--category", "p"],
        vec!["closure-check", "--category", "k", "--format", "csv"],
        vec!["roundtrip", "--category", "o"],
        vec!["roundtrip", "--category", "k"],
        vec!["moments", "--category", "s", "--k", "8", "--format", "csv"],
        vec!["level", "--category", "h"],
        vec!["gram", "--category", "s", "--lower", "aaaa", "--n", "2"],
        vec!["group-check", "--group", "S3", "--radius", "4"],
    ];
    for args in &runs {
        let outs: Vec<_> = (0..2)
            .map(|_| Command::new(bin).args(args).output().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(outs[0].status.code() == Some(0), || format!("{args:?} exited {:?}", outs[0].status.code()))?;
        ensure(outs[0].stdout == outs[1].stdout && !outs[0].stdout.is_empty(), || {
            format!("{args:?} output differs between runs")
        })?;
    }
    Ok(format!("{} commands, byte-identical output across repeated runs", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("generator/predicate agreement", criterion_1),
        ("complexification identities", criterion_2),
        ("decomplexification round trip", criterion_3),
        ("level values", criterion_4),
        ("infinite-level equivalence", criterion_5),
        ("moment tables", criterion_6),
        ("functoriality oracle", criterion_7),
        ("Gram rank correctness", criterion_8),
        ("free product at ball scale", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
        eprintln!("  ({name}: {:.1?})", start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
