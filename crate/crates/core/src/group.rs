//! Free products `Z * Γ` with `Γ` a finite group, and a ball-bounded check
//! that the subgroup generated by `t_i = z·g_i` is `Z * Λ` with
//! `Λ = ⟨g_i⁻¹ g_j⟩`.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_ORDER: usize = 64;
/// Largest radius accepted by [`verify_thm14`].
pub const MAX_RADIUS: usize = 8;
/// Largest ball enumerated before giving up.
pub const MAX_BALL: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElementRef {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
struct CayleyTable {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    generators: Vec<ElementRef>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, associativity, identity and inverses,
    /// and that the generators generate.
    pub fn new(name: &str, elements: Vec<String>, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let order = elements.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if order == 0 || order > MAX_ORDER {
            return bad(format!("order {order} outside 1..={MAX_ORDER}"));
        }
        if table.len() != order || table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return bad("table must be a square array of element indices".into());
        }
        let Some(identity) = (0..order).find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            match (0..order).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverse.push(y),
                None => return bad(format!("{} has no inverse", elements[x])),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({}, {}, {})", elements[a], elements[b], elements[c]));
                    }
                }
            }
        }
        if generators.is_empty() || generators.iter().any(|&g| g >= order) {
            return bad("generators must be a nonempty list of elements".into());
        }
        let g = FiniteGroup { name: name.to_string(), elements, table, identity, inverse, generators };
        let generated = g.generated(&g.generators).len();
        if generated != order {
            return Err(Error::NonGenerating { generated, order });
        }
        Ok(g)
    }

    pub fn from_json(name: &str, json: &str) -> Result<Self> {
        let raw: CayleyTable = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let generators = raw
            .generators
            .iter()
            .map(|r| match r {
                ElementRef::Index(i) => Ok(*i),
                ElementRef::Name(s) => raw
                    .elements
                    .iter()
                    .position(|e| e == s)
                    .ok_or_else(|| Error::InvalidGroup(format!("unknown generator {s}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::new(name, raw.elements, raw.table, generators)
    }

    /// `Z_n` generated by the listed residues.
    pub fn cyclic(n: usize, generators: Vec<usize>) -> Result<Self> {
        let elements = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(&format!("Z{n}"), elements, table, generators)
    }

    pub fn z2() -> Self {
        FiniteGroup::cyclic(2, vec![1]).expect("valid group")
    }

    pub fn z4() -> Self {
        FiniteGroup::cyclic(4, vec![1, 2]).expect("valid group")
    }

    /// `Z_2 × Z_2` with the two coordinate generators.
    pub fn klein() -> Self {
        let elements = ["e", "a", "b", "ab"].map(String::from).to_vec();
        let table = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        FiniteGroup::new("Z2xZ2", elements, table, vec![1, 2]).expect("valid group")
    }

    /// `S_3` generated by a transposition and a 3-cycle.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [1, 2, 0], [0, 2, 1], [2, 1, 0], [2, 0, 1]];
        let names = ["e", "(01)", "(012)", "(12)", "(02)", "(021)"];
        // (p·q)(i) = p(q(i))
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = [p[q[0]], p[q[1]], p[q[2]]];
                        perms.iter().position(|x| *x == r).expect("closed")
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new("S3", names.map(String::from).to_vec(), table, vec![1, 2]).expect("valid group")
    }

    /// Built-in groups by name.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "Z2" | "z2" => Ok(FiniteGroup::z2()),
            "Z4" | "z4" => Ok(FiniteGroup::z4()),
            "Z2xZ2" | "klein" | "z2xz2" => Ok(FiniteGroup::klein()),
            "S3" | "s3" => Ok(FiniteGroup::s3()),
            other => Err(Error::InvalidGroup(format!("unknown built-in group {other}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// `Λ = ⟨g_i⁻¹ g_j⟩` for the group's generators.
pub fn lambda_subgroup(g: &FiniteGroup) -> Vec<usize> {
    g.generated(&lambda_generators(g))
}

fn lambda_generators(g: &FiniteGroup) -> Vec<usize> {
    let gens = g.generators();
    let set: BTreeSet<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.mul(g.inv(a), b))
        .filter(|&x| x != g.identity())
        .collect();
    set.into_iter().collect()
}

/// A syllable of a word in `Z * Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Syllable {
    Z(i64),
    G(usize),
}

/// Reduced word: alternating nontrivial powers of `z` and nontrivial
/// elements of `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Default)]
pub struct FPWord(Vec<Syllable>);

impl FPWord {
    pub fn identity() -> Self {
        FPWord(Vec::new())
    }

    pub fn z(m: i64) -> Self {
        FPWord::reduce(&[Syllable::Z(m)], None)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Normal form of a raw syllable list. `group` may be omitted only when
    /// no two group syllables become adjacent.
    pub fn reduce(raw: &[Syllable], group: Option<&FiniteGroup>) -> Self {
        let mut out: Vec<Syllable> = Vec::with_capacity(raw.len());
        for &s in raw {
            let s = match (out.last().copied(), s) {
                (Some(Syllable::Z(a)), Syllable::Z(b)) => {
                    out.pop();
                    Syllable::Z(a + b)
                }
                (Some(Syllable::G(a)), Syllable::G(b)) => {
                    out.pop();
                    Syllable::G(group.expect("group needed to merge syllables").mul(a, b))
                }
                _ => s,
            };
            let trivial = match s {
                Syllable::Z(m) => m == 0,
                Syllable::G(x) => group.is_some_and(|g| x == g.identity()),
            };
            if !trivial {
                out.push(s);
            }
        }
        FPWord(out)
    }

    pub fn g(x: usize, group: &FiniteGroup) -> Self {
        FPWord::reduce(&[Syllable::G(x)], Some(group))
    }

    pub fn mul(&self, other: &FPWord, group: &FiniteGroup) -> FPWord {
        let raw: Vec<Syllable> = self.0.iter().chain(&other.0).copied().collect();
        FPWord::reduce(&raw, Some(group))
    }

    pub fn inverse(&self, group: &FiniteGroup) -> FPWord {
        FPWord(
            self.0
                .iter()
                .rev()
                .map(|&s| match s {
                    Syllable::Z(m) => Syllable::Z(-m),
                    Syllable::G(x) => Syllable::G(group.inv(x)),
                })
                .collect(),
        )
    }
}

/// Balls in a finitely generated subgroup of `Z * Γ`, as spheres by radius.
/// Inverses of the generators are added automatically.
pub fn spheres(gens: &[FPWord], radius: usize, group: &FiniteGroup) -> Result<Vec<Vec<FPWord>>> {
    let mut steps: Vec<FPWord> = gens.iter().flat_map(|w| [w.clone(), w.inverse(group)]).collect();
    steps.sort();
    steps.dedup();
    let mut seen: HashSet<FPWord> = HashSet::from([FPWord::identity()]);
    let mut out = vec![vec![FPWord::identity()]];
    for _ in 0..radius {
        let last = out.last().expect("nonempty");
        let candidates: Vec<FPWord> =
            last.par_iter().flat_map_iter(|w| steps.iter().map(move |s| w.mul(s, group))).collect();
        let mut next: Vec<FPWord> = candidates.into_iter().filter(|w| !seen.contains(w)).collect();
        next.sort();
        next.dedup();
        seen.extend(next.iter().cloned());
        if seen.len() > MAX_BALL {
            return Err(Error::Guard(format!("ball exceeds {MAX_BALL} elements")));
        }
        out.push(next);
    }
    Ok(out)
}

/// How the `Λ` factor is sent into `Z * Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaMap {
    /// `λ ↦ λ`, the inclusion of Λ into the free product.
    Embedding,
    /// `λ ↦ e`, a deliberately wrong map used as a negative control.
    Trivial,
}

/// The map `Z * Λ → Z * Γ`, `z ↦ z·g_1`.
fn apply(w: &FPWord, g: &FiniteGroup, map: LambdaMap) -> FPWord {
    let g1 = g.generators()[0];
    let mut raw = Vec::new();
    for &s in w.syllables() {
        match s {
            Syllable::Z(m) if m > 0 => {
                for _ in 0..m {
                    raw.extend([Syllable::Z(1), Syllable::G(g1)]);
                }
            }
            Syllable::Z(m) => {
                for _ in 0..-m {
                    raw.extend([Syllable::G(g.inv(g1)), Syllable::Z(-1)]);
                }
            }
            Syllable::G(x) => raw.push(Syllable::G(match map {
                LambdaMap::Embedding => x,
                LambdaMap::Trivial => g.identity(),
            })),
        }
    }
    FPWord::reduce(&raw, Some(g))
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupReport {
    pub group: String,
    pub order: usize,
    pub generators: Vec<String>,
    pub lambda: Vec<String>,
    pub map: LambdaMap,
    pub radius: usize,
    /// Sphere sizes of `Z * Λ` in the generators `z` and `g_i⁻¹ g_j`.
    pub standard_spheres: Vec<usize>,
    /// Sphere sizes of `⟨t_1, …, t_n⟩`.
    pub t_spheres: Vec<usize>,
    /// Sphere sizes of `Z * Λ` in the generators `z·g_1⁻¹g_i`, which map to `t_i`.
    pub pulled_back_spheres: Vec<usize>,
    pub injective: bool,
    /// Images of the standard `r`-ball lie in the `t`-ball of radius `2r`.
    pub image_in_t_ball: bool,
    /// The `t`-ball of radius `r` lies in the image of the standard `2r`-ball.
    pub t_ball_in_image: bool,
    /// The pulled-back ball maps bijectively onto the `t`-ball, radius by radius.
    pub ball_bijection: bool,
    pub homomorphism_radius: usize,
    pub homomorphism: bool,
    pub passed: bool,
}

fn flatten(spheres: &[Vec<FPWord>]) -> Vec<FPWord> {
    spheres.iter().flatten().cloned().collect()
}

pub fn verify_thm14(g: &FiniteGroup, radius: usize) -> Result<SubgroupReport> {
    verify_thm14_with(g, radius, LambdaMap::Embedding)
}

/// Checks the isomorphism `Z * Λ ≅ ⟨z·g_1, …, z·g_n⟩` on balls of the
/// given radius. Word length counts `z^{±1}`, each `λ` generator and each
/// `t_i^{±1}` as 1.
pub fn verify_thm14_with(g: &FiniteGroup, radius: usize, map: LambdaMap) -> Result<SubgroupReport> {
    if radius > MAX_RADIUS {
        return Err(Error::Guard(format!("radius {radius} exceeds {MAX_RADIUS}")));
    }
    let lambda = lambda_subgroup(g);
    let phi = |w: &FPWord| apply(w, g, map);
    let g1 = g.generators()[0];

    let mut std_gens = vec![FPWord::z(1)];
    std_gens.extend(lambda_generators(g).into_iter().map(|x| FPWord::g(x, g)));
    let t_gens: Vec<FPWord> = g.generators().iter().map(|&x| FPWord::z(1).mul(&FPWord::g(x, g), g)).collect();
    let pulled_gens: Vec<FPWord> =
        g.generators().iter().map(|&x| FPWord::z(1).mul(&FPWord::g(g.mul(g.inv(g1), x), g), g)).collect();

    let std = spheres(&std_gens, 2 * radius, g)?;
    let std_r = flatten(&std[..=radius]);
    let t_big: HashSet<FPWord> = flatten(&spheres(&t_gens, 2 * radius, g)?).into_iter().collect();
    let t = spheres(&t_gens, radius, g)?;
    let pulled = spheres(&pulled_gens, radius, g)?;

    let images: Vec<FPWord> = std_r.par_iter().map(phi).collect();
    let injective = images.iter().collect::<HashSet<_>>().len() == images.len();
    let image_in_t_ball = images.iter().all(|w| t_big.contains(w));
    let image_2r: HashSet<FPWord> = flatten(&std).par_iter().map(phi).collect::<Vec<_>>().into_iter().collect();
    let t_ball_in_image = t.iter().flatten().all(|w| image_2r.contains(w));

    let mut ball_bijection = pulled.iter().map(Vec::len).eq(t.iter().map(Vec::len));
    let mut pulled_ball: Vec<FPWord> = Vec::new();
    let mut t_ball: Vec<FPWord> = Vec::new();
    for (p, s) in pulled.iter().zip(&t) {
        pulled_ball.extend(p.iter().map(phi));
        t_ball.extend(s.iter().cloned());
        let mut a = pulled_ball.clone();
        let mut b = t_ball.clone();
        a.sort();
        b.sort();
        let distinct = {
            let before = a.len();
            a.dedup();
            a.len() == before
        };
        ball_bijection &= distinct && a == b;
    }

    let homomorphism_radius = radius / 2;
    let small = flatten(&std[..=homomorphism_radius]);
    let homomorphism = small
        .par_iter()
        .all(|u| small.iter().all(|v| phi(&u.mul(v, g)) == phi(u).mul(&phi(v), g)));

    let passed = injective && image_in_t_ball && t_ball_in_image && ball_bijection && homomorphism;
    let names = |xs: &[usize]| xs.iter().map(|&x| g.element_name(x).to_string()).collect();
    Ok(SubgroupReport {
        group: g.name().to_string(),
        order: g.order(),
        generators: names(g.generators()),
        lambda: names(&lambda),
        map,
        radius,
        standard_spheres: std[..=radius].iter().map(Vec::len).collect(),
        t_spheres: t.iter().map(Vec::len).collect(),
        pulled_back_spheres: pulled.iter().map(Vec::len).collect(),
        injective,
        image_in_t_ball,
        t_ball_in_image,
        ball_bijection,
        homomorphism_radius,
        homomorphism,
        passed,
    })
}
