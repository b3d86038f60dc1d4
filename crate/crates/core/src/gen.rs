//! Seeded random instances for property checks and the acceptance corpus.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{Chain, SemisimplicialSet, SimplicialMap};
use crate::lamp::Perm;
use crate::nerve::PosetNerve;
use crate::orbit::{CofiniteEmbedding, IndexedSequence, SubsequenceChain};
use crate::poset::FinitePoset;
use crate::rational::int;

pub type Rng64 = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random order on `n` elements: each pair `i < j` related with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[a], order[b]));
            }
        }
    }
    FinitePoset::from_pairs(n, &pairs).expect("relations follow a linear order")
}

/// `p` with a new least element appended (last index).
pub fn with_bottom(p: &FinitePoset) -> FinitePoset {
    let n = p.len();
    let mut labels = p.labels().to_vec();
    labels.push("⊥".into());
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|x| (n, x)).collect();
    for a in 0..n {
        for b in 0..n {
            if a != b && p.leq(a, b) {
                pairs.push((a, b));
            }
        }
    }
    FinitePoset::from_relations(labels, &pairs).expect("adding a bottom keeps the order acyclic")
}

/// A union-closed family of subsets of `{0..bits}` with `size` members, ordered by inclusion.
/// Unions of minimal members are again members, which gives witnesses.
pub fn union_closed_family<R: Rng>(rng: &mut R, bits: u32, size: usize) -> FinitePoset {
    let mut family: BTreeSet<u32> = BTreeSet::new();
    let full = (1u32 << bits) - 1;
    let mut guard = 0;
    while family.len() < size && guard < 1000 {
        guard += 1;
        let s = rng.gen_range(0..=full);
        let mut next = family.clone();
        next.insert(s);
        loop {
            let unions: Vec<u32> = next.iter().flat_map(|&a| next.iter().map(move |&b| a | b)).collect();
            let before = next.len();
            next.extend(unions);
            if next.len() == before {
                break;
            }
        }
        if next.len() <= size {
            family = next;
        }
    }
    let members: Vec<u32> = family.into_iter().collect();
    let labels = members.iter().map(|&s| format!("{{{}}}", bit_list(s))).collect();
    let mut pairs = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if i != j && a & b == a {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_relations(labels, &pairs).expect("inclusion is an order")
}

fn bit_list(s: u32) -> String {
    (0..32).filter(|b| s & (1 << b) != 0).map(|b| b.to_string()).collect::<Vec<_>>().join(",")
}

/// A poset with planted witnesses: a random order with a bottom, or a union-closed family.
pub fn planted_w_poset<R: Rng>(rng: &mut R, max_elements: usize) -> FinitePoset {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..max_elements);
        let density = rng.gen_range(0.1..0.6);
        with_bottom(&random_poset(rng, n, density))
    } else {
        let size = rng.gen_range(3..=max_elements);
        union_closed_family(rng, 4, size)
    }
}

/// Random ordered simplicial complex: the faces of random facets, at most `cap` simplices.
pub fn random_complex<R: Rng>(rng: &mut R, vertices: usize, max_dim: usize, cap: usize) -> SemisimplicialSet {
    let mut simplices: BTreeSet<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
    for _ in 0..4 * vertices {
        let dim = rng.gen_range(1..=max_dim.min(vertices - 1));
        let mut facet: Vec<usize> = (0..vertices).collect::<Vec<_>>().choose_multiple(rng, dim + 1).copied().collect();
        facet.sort_unstable();
        let mut faces = BTreeSet::new();
        for mask in 1u32..(1 << facet.len()) {
            faces.insert(facet.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &v)| v).collect::<Vec<_>>());
        }
        let grown: BTreeSet<Vec<usize>> = simplices.union(&faces).cloned().collect();
        if grown.len() <= cap {
            simplices = grown;
        }
    }
    simplicial_complex(vertices, &simplices.into_iter().collect::<Vec<_>>())
}

/// Semisimplicial set of an ordered simplicial complex given by a face-closed set of sorted vertex lists.
pub fn simplicial_complex(vertices: usize, simplices: &[Vec<usize>]) -> SemisimplicialSet {
    let top = simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0);
    let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for s in simplices {
        levels[s.len() - 1].push(s.clone());
    }
    levels[0] = (0..vertices).map(|v| vec![v]).collect();
    for l in levels.iter_mut() {
        l.sort();
    }
    let index: Vec<BTreeMap<&Vec<usize>, usize>> = levels.iter().map(|l| l.iter().enumerate().map(|(k, s)| (s, k)).collect()).collect();
    let mut faces = vec![Vec::new()];
    for p in 1..=top {
        faces.push(
            levels[p]
                .iter()
                .map(|s| {
                    (0..=p)
                        .map(|i| {
                            let mut t = s.clone();
                            t.remove(i);
                            index[p - 1][&t]
                        })
                        .collect()
                })
                .collect(),
        );
    }
    let labels = levels
        .iter()
        .map(|l| l.iter().map(|s| format!("[{}]", s.iter().map(usize::to_string).collect::<Vec<_>>().join(","))).collect())
        .collect();
    SemisimplicialSet::new(levels.iter().map(Vec::len).collect(), faces, Some(labels)).expect("ordered complexes are semisimplicial")
}

/// A random reduced cycle of level `p` in `x` (possibly zero), as an integer combination of a cycle basis.
pub fn random_cycle<R: Rng>(rng: &mut R, x: &SemisimplicialSet, p: usize) -> Chain {
    let basis = crate::filling::cycle_basis(x, p);
    let mut dense = vec![int(0); x.count(p)];
    for b in &basis {
        let c = int(rng.gen_range(-2..=2));
        for (d, v) in dense.iter_mut().zip(b) {
            *d += &c * v;
        }
    }
    let lcm = dense.iter().fold(num_bigint::BigInt::from(1), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    Chain::from_terms(p, dense.into_iter().enumerate().map(|(s, q)| (s, q * crate::rational::Rat::from_integer(lcm.clone()))))
}

/// Monotone maps `f ⪯ g : P → P`, built along a linear extension.
pub fn random_comparable_maps<R: Rng>(rng: &mut R, p: &FinitePoset) -> (Vec<usize>, Vec<usize>) {
    let order = p.linear_extension();
    let n = p.len();
    let mut g = (0..n).collect::<Vec<_>>();
    for _ in 0..20 {
        let mut cand_g = vec![usize::MAX; n];
        let ok = order.iter().all(|&x| {
            let options: Vec<usize> =
                (0..n).filter(|&y| order.iter().take_while(|&&w| w != x).all(|&w| !p.leq(w, x) || p.leq(cand_g[w], y))).collect();
            match options.choose(rng) {
                Some(&y) => {
                    cand_g[x] = y;
                    true
                }
                None => false,
            }
        });
        if ok {
            g = cand_g;
            break;
        }
    }
    let mut f = vec![usize::MAX; n];
    for &x in &order {
        let options: Vec<usize> =
            (0..n).filter(|&y| p.leq(y, g[x]) && order.iter().take_while(|&&w| w != x).all(|&w| !p.leq(w, x) || p.leq(f[w], y))).collect();
        f[x] = *options.choose(rng).expect("g(x) is always an option");
    }
    (f, g)
}

/// Induced maps of `f ⪯ g` from the nerve of `P` at `source_dim` into `target`.
pub fn comparable_nerve_maps(source: &PosetNerve, target: &PosetNerve, f: &[usize], g: &[usize]) -> (SimplicialMap, SimplicialMap) {
    (source.induced_map(target, f).expect("f is monotone"), source.induced_map(target, g).expect("g is monotone"))
}

pub fn random_embedding<R: Rng>(rng: &mut R, max_missing: usize, range: u64) -> CofiniteEmbedding {
    let k = rng.gen_range(0..=max_missing);
    CofiniteEmbedding::new((0..k).map(|_| rng.gen_range(1..=range)).collect()).expect("positive")
}

/// `x_0 ⪯ … ⪯ x_p` of co-finite subsequences of the identity sequence.
pub fn random_cofinite_chain<R: Rng>(rng: &mut R, p: usize, range: u64) -> SubsequenceChain {
    let mut missing: BTreeSet<u64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..=range)).collect();
    let mut members = vec![IndexedSequence::cofinite("n", CofiniteEmbedding::new(missing.iter().copied().collect()).unwrap())];
    for _ in 0..p {
        for _ in 0..rng.gen_range(0..3) {
            missing.insert(rng.gen_range(1..=range));
        }
        members.push(IndexedSequence::cofinite("n", CofiniteEmbedding::new(missing.iter().copied().collect()).unwrap()));
    }
    members.reverse();
    SubsequenceChain::new(members).expect("one ground sequence")
}

pub fn random_perm<R: Rng>(rng: &mut R, m: usize) -> Perm {
    let mut p: Perm = (0..m).collect();
    p.shuffle(rng);
    p
}

/// Base size and generators of a random `H ≤ Sym(Y_0)`.
pub fn random_lamp_instance<R: Rng>(rng: &mut R, max_base: usize, max_gens: usize) -> (usize, Vec<Perm>) {
    let m = rng.gen_range(1..=max_base);
    let k = rng.gen_range(0..=max_gens);
    (m, (0..k).map(|_| random_perm(rng, m)).collect())
}
