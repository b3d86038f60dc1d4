//! Acceptance suite: one line per criterion, all comparisons exact.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::Rng;
use uacyc::cone::cone;
use uacyc::filling::{min_l1_fill, vertex_cycles};
use uacyc::homology::{cohomology_betti, reduced_homology};
use uacyc::homotopy::{order_homotopy, verify_homotopy, w_pipeline};
use uacyc::lamp::{verify_binate, verify_commuting_conjugates, BinateWitness, LampElement};
use uacyc::nerve::{nerve_of_poset, PosetNerve};
use uacyc::orbit::{
    monoid_simplicial_identities, orbit_index, tuple_face, verify_face_commutation, CofiniteEmbedding, Embedding, IndexedSequence,
    SubsequenceChain,
};
use uacyc::poset_w::{check_interweaving, check_w, interweave, is_admissible, random_integer_sequence, CofinalSequence, IntegerLine};
use uacyc::rational::{format_rat, int};
use uacyc::{fixtures, gen, linalg, par, FinitePoset, Rat, SemisimplicialSet};

/// Every comparison below is between exact rationals; the slack is zero.
const TOLERANCE: i64 = 0;

/// Largest cycle-space dimension enumerated in the W-pipeline criterion.
const PIPELINE_DIMENSION_CAP: usize = 64;

fn within(a: &Rat, b: &Rat) -> bool {
    *a <= b + int(TOLERANCE)
}

fn exactly(a: &Rat, b: &Rat) -> bool {
    within(a, b) && within(b, a)
}

/// Tallies for the oracle criterion, fed by the others.
#[derive(Default)]
struct Oracles {
    complexes: AtomicUsize,
    homology_mismatches: AtomicUsize,
    fillings_compared: AtomicUsize,
    lp_beaten: AtomicUsize,
}

impl Oracles {
    fn compare_homology(&self, x: &SemisimplicialSet, max_p: usize) {
        self.complexes.fetch_add(1, Ordering::Relaxed);
        let rank = |q: usize| linalg::rank(&linalg::from_ints(&x.boundary_matrix(q)));
        for p in 0..x.max_dim().min(max_p + 1) {
            let expected = x.count(p) - rank(p) - rank(p + 1);
            if reduced_homology(x, p).expect("levels present").betti != expected {
                self.homology_mismatches.fetch_add(1, Ordering::Relaxed);
            }
        }
    }

    fn compare_filling(&self, lp: &Rat, constructive: &Rat) {
        self.fillings_compared.fetch_add(1, Ordering::Relaxed);
        if !within(lp, constructive) {
            self.lp_beaten.fetch_add(1, Ordering::Relaxed);
        }
    }
}

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: String) -> Outcome {
    Outcome { passed, summary }
}

fn cone_constant(oracles: &Oracles) -> Outcome {
    let mut rng = gen::rng(101);
    let complexes: Vec<SemisimplicialSet> = (0..50)
        .map(|_| {
            let v = rng.gen_range(3..=8);
            gen::random_complex(&mut rng, v, 3, 60)
        })
        .collect();
    let mut base_cycles = 0usize;
    let mut apex_cycles = 0usize;
    let mut failures = Vec::new();
    for (k, x) in complexes.iter().enumerate() {
        let cx = cone(x, "v");
        oracles.compare_homology(x, 3);
        oracles.compare_homology(cx.complex(), 3);
        for p in 0..=x.max_dim().min(3) {
            for trial in 0..6 {
                // half the corpus lives on the base, half anywhere in the cone
                let on_base = trial % 2 == 0;
                let z = if on_base { cx.include(&gen::random_cycle(&mut rng, x, p)) } else { gen::random_cycle(&mut rng, cx.complex(), p) };
                if z.is_zero() {
                    continue;
                }
                let c = cx.fill(&z).expect("reduced cycles fill in the cone");
                let boundary_ok = cx.complex().boundary(&c).expect("levels present") == z;
                let norm_ok = if on_base { exactly(&c.norm(), &z.norm()) } else { within(&c.norm(), &z.norm()) };
                let lp = min_l1_fill(cx.complex(), &z).expect("cone is acyclic");
                let lp_ok = within(&lp.norm, &z.norm());
                oracles.compare_filling(&lp.norm, &c.norm());
                if on_base {
                    base_cycles += 1;
                } else {
                    apex_cycles += 1;
                }
                if !(boundary_ok && norm_ok && lp_ok) {
                    failures.push(format!("complex {k}, level {p}: cone {} vs cycle {}", format_rat(&c.norm()), format_rat(&z.norm())));
                }
            }
        }
    }
    outcome(
        failures.is_empty() && base_cycles > 0,
        format!(
            "{base_cycles} base cycles with ‖cone fill‖ = ‖z‖, {apex_cycles} cone cycles with ≤, LP ≤ ‖z‖; {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn quillen_bound() -> Outcome {
    let mut rng = gen::rng(202);
    let posets: Vec<(FinitePoset, Vec<usize>, Vec<usize>)> = (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            let d = rng.gen_range(0.1..0.7);
            let p = gen::random_poset(&mut rng, n, d);
            let (f, g) = gen::random_comparable_maps(&mut rng, &p);
            (p, f, g)
        })
        .collect();
    let results = par::map(&posets, |(p, f, g)| {
        let source = nerve_of_poset(p, 3);
        let target = nerve_of_poset(p, 4);
        let fm = source.induced_map(&target, f).expect("monotone");
        let gm = source.induced_map(&target, g).expect("monotone");
        match order_homotopy(source.complex(), &target, &fm, &gm, 3) {
            Ok(h) => {
                let identity = verify_homotopy(source.complex(), &target, &fm, &gm, &h).is_ok();
                let bounds = (0..=3).all(|q| within(&h.norms[q], &int(2 * (q as i64 + 1))));
                (identity && bounds, h.norms)
            }
            Err(_) => (false, vec![]),
        }
    });
    let failures = results.iter().filter(|(ok, _)| !ok).count();
    let mut worst = vec![int(0); 4];
    for (_, norms) in &results {
        for (w, n) in worst.iter_mut().zip(norms) {
            if n > w {
                *w = n.clone();
            }
        }
    }
    let worst: Vec<String> = worst.iter().map(format_rat).collect();
    outcome(failures == 0, format!("100 pairs f ⪯ g, dh + hd = f - g; worst ‖h_p‖ for p = 0..3: {worst:?} vs 2(p+1); {failures} failures"))
}

fn w_corpus() -> Vec<FinitePoset> {
    let mut rng = gen::rng(303);
    (0..50).map(|_| gen::planted_w_poset(&mut rng, 8)).collect()
}

fn w_pipeline_constant(corpus: &[FinitePoset], oracles: &Oracles) -> Outcome {
    let mut uncertified = 0;
    let mut jobs = Vec::new();
    let reports: Vec<_> = corpus.iter().map(|p| check_w(p, 5)).collect();
    for (p, r) in corpus.iter().zip(&reports) {
        if !r.holds() {
            uncertified += 1;
            continue;
        }
        for t in &r.tables {
            jobs.push((p, t));
        }
    }
    let per_table = par::map(&jobs, |(p, table)| {
        let pn = nerve_of_poset(p, 3);
        let qn: PosetNerve = nerve_of_poset(&p.induced(&table.subposet), 2);
        let inclusion = qn.induced_map(&pn, &table.subposet).expect("inclusions are monotone");
        let mut worst = vec![int(0); 3];
        let mut cycles = 0usize;
        let mut failures = 0usize;
        for level in 0..=2 {
            let zs = match vertex_cycles(qn.complex(), level, PIPELINE_DIMENSION_CAP) {
                Ok(zs) => zs,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            for z in &zs {
                cycles += 1;
                match w_pipeline(&pn, &qn, table, z) {
                    Ok(out) => {
                        let lp = min_l1_fill(pn.complex(), &inclusion.apply(z)).expect("constructive filling exists");
                        oracles.compare_filling(&lp.norm, &out.certificate.norm);
                        if !out.holds()
                            || !within(&out.certificate.ratio, &int(2 * level as i64 + 3))
                            || !within(&lp.norm, &out.certificate.norm)
                        {
                            failures += 1;
                        }
                        if out.certificate.ratio > worst[level] {
                            worst[level] = out.certificate.ratio.clone();
                        }
                    }
                    Err(_) => failures += 1,
                }
            }
        }
        (cycles, failures, worst)
    });
    let mut cycles = 0;
    let mut failures = 0;
    let mut worst = vec![int(0); 3];
    for (c, f, w) in per_table {
        cycles += c;
        failures += f;
        for (a, b) in worst.iter_mut().zip(w) {
            if b > *a {
                *a = b;
            }
        }
    }
    let worst: Vec<String> = worst.iter().map(format_rat).collect();
    outcome(
        uncertified == 0 && failures == 0 && cycles > 0,
        format!(
            "{} posets, {} subposets, {cycles} vertex cycles; worst ratio per level {worst:?} vs 2p+3; {uncertified} uncertified, {failures} failures",
            corpus.len(),
            jobs.len()
        ),
    )
}

fn w_vanishing(corpus: &[FinitePoset], oracles: &Oracles) -> Outcome {
    let mut failures = 0;
    for p in corpus {
        let x = nerve_of_poset(p, 3);
        oracles.compare_homology(x.complex(), 2);
        let homology = (0..=2).all(|q| reduced_homology(x.complex(), q).expect("levels present").vanishes());
        let cohomology = (1..=2).all(|q| cohomology_betti(x.complex(), q).expect("levels present") == 0);
        if !(homology && cohomology) {
            failures += 1;
        }
    }
    let anti = nerve_of_poset(&fixtures::antichain2(), 2);
    let square = nerve_of_poset(&fixtures::square_poset(), 3);
    oracles.compare_homology(anti.complex(), 1);
    oracles.compare_homology(square.complex(), 2);
    let anti_ok = !check_w(&fixtures::antichain2(), 4).holds() && reduced_homology(anti.complex(), 0).unwrap().betti == 1;
    let square_ok = !check_w(&fixtures::square_poset(), 4).holds()
        && reduced_homology(square.complex(), 0).unwrap().vanishes()
        && reduced_homology(square.complex(), 1).unwrap().betti == 1;
    outcome(
        failures == 0 && anti_ok && square_ok,
        format!(
            "{} W posets acyclic through level 2 ({failures} failures); antichain H~_0 rank 1: {anti_ok}; square H~_1 rank 1: {square_ok}",
            corpus.len()
        ),
    )
}

fn evens_and_multiples_of_four() -> bool {
    let chain = SubsequenceChain::new(vec![
        IndexedSequence::stream("n", (1..=16).map(|k| 4 * k).collect()).unwrap(),
        IndexedSequence::stream("n", (1..=32).map(|k| 2 * k).collect()).unwrap(),
        IndexedSequence::cofinite("n", CofiniteEmbedding::identity()),
    ])
    .unwrap();
    let idx = orbit_index(&chain, 8).unwrap();
    let doubling = idx.iter().all(|eta| (1..=8).all(|n| eta.eval(n) == Some(2 * n)));
    let merged = tuple_face(&idx, 1);
    let quadrupling = (1..=8).all(|n| merged[0].eval(n) == Some(4 * n));
    doubling && quadrupling && verify_face_commutation(&chain, 8).unwrap().holds()
}

fn orbit_isomorphism() -> Outcome {
    let mut rng = gen::rng(505);
    let chains: Vec<SubsequenceChain> = (0..200)
        .map(|_| {
            let p = rng.gen_range(1..=4);
            gen::random_cofinite_chain(&mut rng, p, 16)
        })
        .collect();
    let reports = par::map(&chains, |c| {
        let r = verify_face_commutation(c, 16).expect("window covers the co-finite data");
        // inner faces must be the composite of adjacent entries
        let idx = orbit_index(c, 16).unwrap();
        let inner = (1..idx.len()).all(|i| match (&tuple_face(&idx, i)[i - 1], &idx[i - 1], &idx[i]) {
            (Embedding::Cofinite(m), Embedding::Cofinite(a), Embedding::Cofinite(b)) => *m == a.compose(b),
            _ => false,
        });
        (r.faces.len(), r.holds() && inner)
    });
    let faces: usize = reports.iter().map(|r| r.0).sum();
    let failures = reports.iter().filter(|r| !r.1).count();
    let golden = evens_and_multiples_of_four();
    outcome(
        failures == 0 && golden,
        format!(
            "200 chains, {faces} faces commute with I, inner faces are η_i η_(i+1); evens/multiples of 4: {golden}; {failures} failures"
        ),
    )
}

fn monoid_identities() -> Outcome {
    let mut rng = gen::rng(606);
    let tuples: Vec<Vec<CofiniteEmbedding>> = (0..500)
        .map(|_| {
            let p = rng.gen_range(2..=5);
            (0..p).map(|_| gen::random_embedding(&mut rng, 3, 12)).collect()
        })
        .collect();
    let r = monoid_simplicial_identities(&tuples);
    outcome(r.passed() && r.checked > 0, format!("500 tuples, {} identities d_i d_j = d_(j-1) d_i; failure {:?}", r.checked, r.failure))
}

fn binate() -> Outcome {
    let mut rng = gen::rng(707);
    let instances: Vec<(usize, Vec<Vec<usize>>)> = (0..50).map(|_| gen::random_lamp_instance(&mut rng, 5, 3)).collect();
    let reports = par::map(&instances, |(m, gens)| verify_binate(&BinateWitness::canonical(*m, gens).unwrap(), 4));
    let words: usize = reports.iter().map(|r| r.words_checked).sum();
    let binate_failures = reports.iter().filter(|r| !r.holds()).count();
    let mut inconclusive = 0;
    for (m, gens) in &instances {
        let lamps: Vec<LampElement> = gens.iter().map(|g| LampElement::lamp_at(0, g.clone()).unwrap()).collect();
        let r = verify_commuting_conjugates(&lamps, &LampElement::shift_by(*m, 1), 4).unwrap();
        if !r.conclusive() {
            inconclusive += 1;
        }
    }
    outcome(
        binate_failures == 0 && inconclusive == 0,
        format!(
            "50 instances, {words} words to length 4, {binate_failures} binate failures; conjugates conclusive on all but {inconclusive}"
        ),
    )
}

fn interweaving() -> Outcome {
    let evens = CofinalSequence::new("evens", |n| 2 * n as i64);
    let odds = CofinalSequence::new("odds", |n| 2 * n as i64 - 1);
    let w = interweave(&IntegerLine, &[evens, odds], 5, 64).unwrap();
    let golden = w.y == [2, 3, 6, 7, 10] && w.select(&[1]) == [2, 6, 10] && w.select(&[2]) == [3, 7];
    let mut rng = gen::rng(808);
    let families: Vec<Vec<Vec<i64>>> = (0..100)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            (0..k).map(|_| random_integer_sequence(&mut rng, 128, 4)).collect()
        })
        .collect();
    let results = par::map(&families, |f| {
        let seqs: Vec<CofinalSequence<i64>> =
            f.iter().enumerate().map(|(i, x)| CofinalSequence::from_prefix(format!("x{i}"), x.clone())).collect();
        match interweave(&IntegerLine, &seqs, 16, 128) {
            Ok(w) => check_interweaving(&IntegerLine, &w, f).holds() && is_admissible(&IntegerLine, &w.y),
            Err(_) => false,
        }
    });
    let failures = results.iter().filter(|ok| !**ok).count();
    outcome(golden && failures == 0, format!("golden y = {:?}; 100 random families (k ≤ 4), {failures} failures", w.y))
}

fn oracle_agreement(oracles: &Oracles) -> Outcome {
    for x in [fixtures::hollow_triangle(2), fixtures::filled_triangle(2), fixtures::antichain_complex()] {
        oracles.compare_homology(&x, 2);
    }
    let m = oracles.homology_mismatches.load(Ordering::Relaxed);
    let b = oracles.lp_beaten.load(Ordering::Relaxed);
    outcome(
        m == 0 && b == 0,
        format!(
            "SNF vs rank-nullity on {} complexes ({m} mismatches); LP vs {} constructive fillings ({b} beaten)",
            oracles.complexes.load(Ordering::Relaxed),
            oracles.fillings_compared.load(Ordering::Relaxed)
        ),
    )
}

#[test]
fn acceptance() {
    let oracles = Oracles::default();
    let corpus = w_corpus();
    let mut lines = Vec::new();
    let mut run = |n: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let line =
            format!("{} criterion {n} ({name}): {} [{:.1}s]", if o.passed { "PASS" } else { "FAIL" }, o.summary, t.elapsed().as_secs_f64());
        println!("{line}");
        lines.push((o.passed, line));
    };
    run(1, "cone constant", &|| cone_constant(&oracles));
    run(2, "order homotopy bound", &quillen_bound);
    run(3, "W pipeline constant", &|| w_pipeline_constant(&corpus, &oracles));
    run(4, "W implies vanishing", &|| w_vanishing(&corpus, &oracles));
    run(5, "orbit isomorphism", &orbit_isomorphism);
    run(6, "monoid nerve identities", &monoid_identities);
    run(7, "binate identities", &binate);
    run(8, "interweaving", &interweaving);
    run(9, "oracle agreement", &|| oracle_agreement(&oracles));
    let failed: Vec<&String> = lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.iter().map(|l| l.as_str()).collect::<Vec<_>>().join("\n"));
}
