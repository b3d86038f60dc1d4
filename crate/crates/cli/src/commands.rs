use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};
use uacyc::complex::{Chain, SemisimplicialSet};
use uacyc::filling::{self, Constant, ConstantMethod, ConstantWitness};
use uacyc::homology::{cohomology_betti, reduced_homology};
use uacyc::homotopy::{order_homotopy, verify_homotopy, w_pipeline};
use uacyc::io::{homotopy_levels, ChainFile};
use uacyc::lamp::{verify_binate, verify_commuting_conjugates, BinateWitness, LampElement, Perm};
use uacyc::nerve::{nerve_of_poset, PosetNerve};
use uacyc::orbit::{monoid_simplicial_identities, verify_face_commutation, CofiniteEmbedding, IndexedSequence, SubsequenceChain};
use uacyc::poset::FinitePoset;
use uacyc::poset_w::{check_interweaving, check_w, interweave, is_admissible, CofinalSequence, IntegerLine, WReport};
use uacyc::rational::{format_rat, int, parse_rat, Rat};
use uacyc::{gen, linalg, Error};

use crate::inputs::{Checked, InputError, Inputs};
use crate::report::{Assertion, RunReport};
use crate::{Cli, Command, ComplexSource};

struct Run {
    inputs: Inputs,
    assertions: Vec<Assertion>,
    details: BTreeMap<String, Value>,
    text: Vec<String>,
}

impl Run {
    fn push(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.to_string(), v);
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::Cohomology { .. } => "cohomology",
        Command::Fill { .. } => "fill",
        Command::Constant { .. } => "constant",
        Command::Wcheck { .. } => "wcheck",
        Command::Interweave { .. } => "interweave",
        Command::OrderHomotopy { .. } => "order-homotopy",
        Command::WPipeline { .. } => "w-pipeline",
        Command::OrbitCheck { .. } => "orbit-check",
        Command::MonoidCheck { .. } => "monoid-check",
        Command::BinateCheck { .. } => "binate-check",
        Command::ConjugatesCheck { .. } => "conjugates-check",
    }
}

fn settings(cli: &Cli) -> BTreeMap<&'static str, String> {
    let g = &cli.global;
    let mut s = BTreeMap::new();
    s.insert("seed", g.seed.to_string());
    s.insert("max_q", g.max_q.to_string());
    s.insert("window", g.window.to_string());
    s.insert("word_cap", g.word_cap.to_string());
    s.insert("dim_cap", g.dim_cap.to_string());
    let extra = match &cli.command {
        Command::Homology { max_p, expect_vanishing, .. } | Command::Cohomology { max_p, expect_vanishing, .. } => {
            format!("max_p={max_p:?} expect_vanishing={expect_vanishing}")
        }
        Command::Constant { level, claim, samples, .. } => format!("level={level} claim={claim:?} samples={samples:?}"),
        Command::Interweave { count, depth, .. } => format!("count={count} depth={depth:?}"),
        Command::OrderHomotopy { count, max_p, .. } => format!("count={count} max_p={max_p}"),
        Command::WPipeline { max_p, .. } => format!("max_p={max_p}"),
        Command::OrbitCheck { count, max_p, .. } | Command::MonoidCheck { count, max_p } => format!("count={count} max_p={max_p}"),
        Command::BinateCheck { count, psi_from, .. } => format!("count={count} psi_from={psi_from}"),
        Command::ConjugatesCheck { count, max_power, .. } => format!("count={count} max_power={max_power}"),
        Command::Fill { .. } | Command::Wcheck { .. } => String::new(),
    };
    s.insert("command_options", extra);
    s
}

pub fn run(cli: &Cli) -> Checked<RunReport> {
    let name = command_name(&cli.command);
    let settings = settings(cli);
    let mut run = Run { inputs: Inputs::new(name, &settings), assertions: Vec::new(), details: BTreeMap::new(), text: Vec::new() };
    let g = &cli.global;
    match &cli.command {
        Command::Homology { source, max_p, expect_vanishing } => homology(&mut run, source, *max_p, *expect_vanishing)?,
        Command::Cohomology { source, max_p, expect_vanishing } => cohomology(&mut run, source, *max_p, *expect_vanishing)?,
        Command::Fill { complex, cycle } => fill(&mut run, complex, cycle)?,
        Command::Constant { source, level, claim, samples } => {
            constant(&mut run, source, *level, claim.as_deref(), *samples, g.dim_cap, g.seed)?
        }
        Command::Wcheck { poset } => wcheck(&mut run, poset, g.max_q)?,
        Command::Interweave { sequences, count, depth } => {
            interweave_cmd(&mut run, sequences.as_deref(), *count, depth.unwrap_or(g.window), g.window, g.seed)?
        }
        Command::OrderHomotopy { poset, maps, count, max_p } => {
            order_homotopy_cmd(&mut run, poset, maps.as_deref(), *count, *max_p, g.seed)?
        }
        Command::WPipeline { poset, max_p } => w_pipeline_cmd(&mut run, poset, g.max_q, *max_p, g.dim_cap)?,
        Command::OrbitCheck { chain, count, max_p } => orbit_check(&mut run, chain.as_deref(), *count, *max_p, g.window, g.seed)?,
        Command::MonoidCheck { count, max_p } => monoid_check(&mut run, *count, *max_p, g.seed)?,
        Command::BinateCheck { group, count, psi_from } => binate_check(&mut run, group.as_deref(), *count, *psi_from, g.word_cap, g.seed)?,
        Command::ConjugatesCheck { group, count, max_power } => conjugates_check(&mut run, group.as_deref(), *count, *max_power, g.seed)?,
    }
    Ok(RunReport {
        command: name.to_string(),
        inputs_digest: run.inputs.digest(),
        settings: json!(settings),
        assertions: run.assertions,
        details: json!(run.details),
        text: run.text,
    })
}

/// Failures of the constructions themselves, as opposed to bad input.
fn is_computational(e: &Error) -> bool {
    matches!(e, Error::FillerFailure(_) | Error::CarrierViolation(_) | Error::HomotopyIdentity(_) | Error::InvalidWitness(_))
}

fn load_source(run: &Run, source: &ComplexSource, top: Option<usize>) -> Checked<SemisimplicialSet> {
    match (&source.complex, &source.poset) {
        (Some(c), None) => run.inputs.complex(c),
        (None, Some(p)) => {
            let poset = run.inputs.poset(p)?;
            Ok(nerve_of_poset(&poset, top.unwrap_or(3)).complex().clone())
        }
        _ => Err(InputError("give exactly one of --complex or --poset".into())),
    }
}

fn levels_for(x: &SemisimplicialSet, max_p: Option<usize>) -> Checked<Vec<usize>> {
    let top = match max_p {
        Some(p) => p,
        None if x.max_dim() == 0 => return Err(InputError("a complex of dimension 0 has no complete homology level; pass --max-p".into())),
        None => x.max_dim() - 1,
    };
    x.ensure_level(top + 1).map_err(InputError::from)?;
    Ok((0..=top).collect())
}

fn rational_betti(x: &SemisimplicialSet, p: usize) -> usize {
    let rank = |q: usize| linalg::rank(&linalg::from_ints(&x.boundary_matrix(q)));
    x.count(p) - rank(p) - rank(p + 1)
}

fn homology(run: &mut Run, source: &ComplexSource, max_p: Option<usize>, expect_vanishing: bool) -> Checked<()> {
    let x = load_source(run, source, max_p.map(|p| p + 1))?;
    let mut rows = Vec::new();
    for p in levels_for(&x, max_p)? {
        let h = reduced_homology(&x, p)?;
        let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
        run.text.push(format!("H~_{p}: betti {} torsion [{}]", h.betti, torsion.join(", ")));
        run.push(Assertion::equal(
            format!("level {p} Smith betti matches rank-nullity"),
            &int(h.betti as i64),
            &int(rational_betti(&x, p) as i64),
        ));
        if expect_vanishing {
            run.push(Assertion::check(format!("level {p} reduced homology vanishes"), h.vanishes()));
        }
        rows.push(json!({"level": p, "betti": h.betti, "torsion": torsion}));
    }
    run.detail("homology", Value::Array(rows));
    Ok(())
}

fn cohomology(run: &mut Run, source: &ComplexSource, max_p: Option<usize>, expect_vanishing: bool) -> Checked<()> {
    let x = load_source(run, source, max_p.map(|p| p + 1))?;
    let mut rows = Vec::new();
    for p in levels_for(&x, max_p)? {
        let b = cohomology_betti(&x, p)?;
        let h = reduced_homology(&x, p)?;
        run.text.push(format!("H~^{p}: dimension {b}"));
        run.push(Assertion::equal(format!("level {p} cohomology matches homology rank"), &int(b as i64), &int(h.betti as i64)));
        if expect_vanishing {
            run.push(Assertion::check(format!("level {p} reduced cohomology vanishes"), b == 0));
        }
        rows.push(json!({"level": p, "dimension": b}));
    }
    run.detail("cohomology", Value::Array(rows));
    Ok(())
}

fn chain_text(x: &SemisimplicialSet, c: &Chain) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.terms().map(|(s, q)| format!("{}·{}", format_rat(q), x.labels(c.level)[s])).collect::<Vec<_>>().join(" + ")
}

fn fill(run: &mut Run, complex: &Path, cycle: &Path) -> Checked<()> {
    let x = run.inputs.complex(complex)?;
    let z = run.inputs.chain(cycle)?;
    match filling::min_l1_fill(&x, &z) {
        Ok(cert) => {
            let boundary = x.boundary(&cert.filling)?;
            run.text.push(format!("filling: {}", chain_text(&x, &cert.filling)));
            run.push(Assertion::check("cycle bounds", true));
            run.push(Assertion::check("boundary of filling equals cycle", boundary == z));
            run.push(Assertion::check("dual cochain certifies optimality", cert.optimal));
            run.text.push(format!("norm {}, ratio {}", format_rat(&cert.norm), format_rat(&cert.ratio)));
            run.detail("ratio", json!(format_rat(&cert.ratio)));
            run.detail("norm", json!(format_rat(&cert.norm)));
            run.detail("filling", json!(ChainFile::from_chain(&cert.filling)));
            if let Some(y) = &cert.dual {
                run.detail("dual", json!(ChainFile::from_chain(y)));
            }
        }
        Err(Error::NotABoundary { certificate }) => {
            run.text.push(format!("obstruction: {}", chain_text(&x, &certificate)));
            run.push(
                Assertion::check("cycle bounds", false)
                    .with_note("NotABoundary: the cochain vanishes on boundaries and pairs nontrivially with the cycle"),
            );
            run.detail("obstruction", json!(ChainFile::from_chain(&certificate)));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn constant(
    run: &mut Run,
    source: &ComplexSource,
    level: usize,
    claim: Option<&str>,
    samples: Option<usize>,
    cap: usize,
    seed: u64,
) -> Checked<()> {
    let x = load_source(run, source, Some(level + 1))?;
    let claim = claim.map(parse_rat).transpose()?;
    let method = match samples {
        Some(n) => ConstantMethod::CycleSample(filling::sample_vertex_cycles(&x, level, n, &mut gen::rng(seed))),
        None => ConstantMethod::VertexEnumeration { cap },
    };
    let r = filling::uniform_constant(&x, level, method)?;
    let method_name = if r.exact { "all vertex cycles" } else { "sampled vertex cycles (lower bound)" };
    run.text.push(format!("level {level}: {} cycles, {method_name}", r.cycles_checked));
    match &r.constant {
        Constant::Finite(k) => {
            run.text.push(format!("constant {}", format_rat(k)));
            run.push(Assertion::check(format!("every level-{level} cycle bounds"), true));
            if let Some(c) = &claim {
                let a = Assertion::bound(format!("level {level} filling constant"), k, c);
                run.push(if r.exact { a } else { a.with_note("sampled: lower bound only") });
            }
            run.detail("constant", json!(format_rat(k)));
        }
        Constant::Infinite => {
            run.text.push("constant infinite".into());
            run.push(Assertion::check(format!("every level-{level} cycle bounds"), false).with_note("NotABoundary"));
            run.detail("constant", json!("infinite"));
        }
    }
    run.detail("exact", json!(r.exact));
    run.detail("cycles_checked", json!(r.cycles_checked));
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .take(3)
        .map(|w| match w {
            ConstantWitness::Filled { cycle, certificate } => json!({
                "cycle": ChainFile::from_chain(cycle),
                "filling": ChainFile::from_chain(&certificate.filling),
                "ratio": format_rat(&certificate.ratio),
            }),
            ConstantWitness::Unfillable { cycle, obstruction } => json!({
                "cycle": ChainFile::from_chain(cycle),
                "obstruction": ChainFile::from_chain(obstruction),
            }),
        })
        .collect();
    run.detail("witnesses", Value::Array(witnesses));
    Ok(())
}

fn labels_of(p: &FinitePoset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| p.label(x).to_string()).collect()
}

fn w_details(run: &mut Run, p: &FinitePoset, r: &WReport) {
    let tables: Vec<Value> = r
        .tables
        .iter()
        .map(|t| {
            let witness: BTreeMap<String, String> =
                t.witness.iter().map(|(&m, &y)| (format!("{:?}", uacyc::poset_w::index_list(m)), p.label(y).to_string())).collect();
            json!({"subposet": labels_of(p, &t.subposet), "minimals": labels_of(p, &t.minimals), "witness": witness})
        })
        .collect();
    for t in &r.tables {
        let entries: Vec<String> =
            t.witness.iter().map(|(&m, &y)| format!("y{:?}={}", uacyc::poset_w::index_list(m), p.label(y))).collect();
        run.text.push(format!(
            "Q={{{}}} minimal {:?}: {}",
            labels_of(p, &t.subposet).join(","),
            labels_of(p, &t.minimals),
            entries.join(" ")
        ));
    }
    run.detail("tables", Value::Array(tables));
    if let Some(f) = &r.failure {
        run.text.push(format!(
            "no witnesses for Q={{{}}} (minimal {:?}): nothing fits I={:?}",
            labels_of(p, &f.subposet).join(","),
            labels_of(p, &f.minimals),
            f.unsatisfiable
        ));
        run.detail(
            "failure",
            json!({"subposet": labels_of(p, &f.subposet), "minimals": labels_of(p, &f.minimals), "unsatisfiable": f.unsatisfiable}),
        );
    }
}

fn wcheck(run: &mut Run, poset: &Path, max_q: usize) -> Checked<()> {
    let p = run.inputs.poset(poset)?;
    let r = check_w(&p, max_q);
    w_details(run, &p, &r);
    run.push(Assertion::check(format!("W witnesses exist for all {} subposets of size ≤ {max_q}", r.subposets_checked), r.holds()));
    Ok(())
}

#[derive(Deserialize)]
struct SequencesFile {
    sequences: Vec<Vec<i64>>,
}

fn interweave_one(windows: &[Vec<i64>], depth: usize) -> uacyc::Result<(Vec<i64>, bool)> {
    let horizon = windows.iter().map(Vec::len).min().unwrap_or(0);
    let seqs: Vec<CofinalSequence<i64>> =
        windows.iter().enumerate().map(|(i, w)| CofinalSequence::from_prefix(format!("x{}", i + 1), w[..horizon].to_vec())).collect();
    let w = interweave(&IntegerLine, &seqs, depth, horizon)?;
    let ok = check_interweaving(&IntegerLine, &w, windows).holds() && is_admissible(&IntegerLine, &w.y);
    Ok((w.y, ok))
}

fn interweave_cmd(run: &mut Run, file: Option<&Path>, count: usize, depth: usize, window: usize, seed: u64) -> Checked<()> {
    if let Some(path) = file {
        let f: SequencesFile = run.inputs.json(path)?;
        if f.sequences.is_empty() || f.sequences.iter().any(Vec::is_empty) {
            return Err(InputError("need at least one nonempty sequence".into()));
        }
        let (y, ok) = interweave_one(&f.sequences, depth)?;
        run.text.push(format!("y = {y:?}"));
        run.push(Assertion::check("y^I are subsequences of y, of their sources and of common upper bounds", ok));
        run.detail("y", json!(y));
        return Ok(());
    }
    let mut rng = gen::rng(seed);
    let families: Vec<Vec<Vec<i64>>> = (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            (0..k).map(|_| uacyc::poset_w::random_integer_sequence(&mut rng, 8 * window, 4)).collect()
        })
        .collect();
    let results = uacyc::par::map(&families, |f| interweave_one(f, window));
    let mut failures = 0;
    for r in results {
        match r {
            Ok((_, true)) => {}
            Ok((_, false)) => failures += 1,
            Err(e) => return Err(e.into()),
        }
    }
    run.text.push(format!("{count} random families, window {window}"));
    run.push(Assertion::check(format!("interweaving relations on {count} random families"), failures == 0));
    run.detail("failures", json!(failures));
    Ok(())
}

#[derive(Deserialize)]
struct MapsFile {
    f: Vec<String>,
    g: Vec<String>,
}

fn map_from_labels(p: &FinitePoset, labels: &[String]) -> Checked<Vec<usize>> {
    if labels.len() != p.len() {
        return Err(InputError(format!("a map needs one image per element ({} given, {} expected)", labels.len(), p.len())));
    }
    labels.iter().map(|l| p.index_of(l).ok_or_else(|| InputError(format!("unknown element {l:?}")))).collect()
}

fn homotopy_assertions(
    run: &mut Run,
    source: &PosetNerve,
    target: &PosetNerve,
    f: &[usize],
    g: &[usize],
    max_p: usize,
    keep: bool,
) -> Checked<Vec<Rat>> {
    let fm = source.induced_map(target, f).map_err(|_| InputError("f is not order-preserving".into()))?;
    let gm = source.induced_map(target, g).map_err(|_| InputError("g is not order-preserving".into()))?;
    let h = match order_homotopy(source.complex(), target, &fm, &gm, max_p) {
        Ok(h) => h,
        Err(Error::NotComparable(x)) => {
            return Err(InputError(format!("f({0}) is not below g({0})", source.poset().label(source.tuple(0, x)[0]))))
        }
        Err(e) if is_computational(&e) => {
            if keep {
                run.push(Assertion::check("homotopy synthesized", false).with_note(e.to_string()));
            }
            return Ok(vec![]);
        }
        Err(e) => return Err(e.into()),
    };
    if keep {
        run.push(Assertion::check("homotopy identity d h + h d = f - g", verify_homotopy(source.complex(), target, &fm, &gm, &h).is_ok()));
        for p in 0..=max_p {
            run.push(Assertion::bound(format!("level {p} homotopy norm"), &h.norms[p], &int(2 * (p as i64 + 1))));
        }
        run.detail("homotopy", json!(homotopy_levels(&h)));
    } else if verify_homotopy(source.complex(), target, &fm, &gm, &h).is_err() {
        return Ok(vec![]);
    }
    Ok(h.norms)
}

fn order_homotopy_cmd(run: &mut Run, poset: &Path, maps: Option<&Path>, count: usize, max_p: usize, seed: u64) -> Checked<()> {
    let p = run.inputs.poset(poset)?;
    let source = nerve_of_poset(&p, max_p);
    let target = nerve_of_poset(&p, max_p + 1);
    if let Some(path) = maps {
        let m: MapsFile = run.inputs.json(path)?;
        let f = map_from_labels(&p, &m.f)?;
        let g = map_from_labels(&p, &m.g)?;
        homotopy_assertions(run, &source, &target, &f, &g, max_p, true)?;
        return Ok(());
    }
    let mut rng = gen::rng(seed);
    let mut worst = vec![int(0); max_p + 1];
    let mut identity_failures = 0;
    for _ in 0..count {
        let (f, g) = gen::random_comparable_maps(&mut rng, &p);
        let norms = homotopy_assertions(run, &source, &target, &f, &g, max_p, false)?;
        if norms.is_empty() {
            identity_failures += 1;
            continue;
        }
        for (w, n) in worst.iter_mut().zip(norms) {
            if n > *w {
                *w = n;
            }
        }
    }
    run.push(Assertion::check(format!("homotopy identity on {count} random comparable pairs"), identity_failures == 0));
    for (q, w) in worst.iter().enumerate() {
        run.push(Assertion::bound(format!("level {q} worst homotopy norm"), w, &int(2 * (q as i64 + 1))));
    }
    Ok(())
}

fn w_pipeline_cmd(run: &mut Run, poset: &Path, max_q: usize, max_p: usize, cap: usize) -> Checked<()> {
    let p = run.inputs.poset(poset)?;
    let r = check_w(&p, max_q);
    if let Some(f) = &r.failure {
        w_details(run, &p, &r);
        run.push(
            Assertion::check(format!("W witnesses exist for all subposets of size ≤ {max_q}"), false)
                .with_note(format!("refusing to build fillings: no witnesses for I={:?}", f.unsatisfiable)),
        );
        return Ok(());
    }
    run.push(Assertion::check(format!("W witnesses exist for all {} subposets of size ≤ {max_q}", r.subposets_checked), true));
    let pn = nerve_of_poset(&p, max_p + 1);
    let mut worst = vec![int(0); max_p + 1];
    let mut cycles = vec![0usize; max_p + 1];
    let mut beaten = vec![0usize; max_p + 1];
    let mut errors = Vec::new();
    for table in &r.tables {
        let qn = nerve_of_poset(&p.induced(&table.subposet), max_p);
        let inclusion = qn.induced_map(&pn, &table.subposet)?;
        for level in 0..=max_p {
            let zs = filling::vertex_cycles(qn.complex(), level, cap)?;
            let outcomes = uacyc::par::map(&zs, |z| -> uacyc::Result<(Rat, bool)> {
                let out = w_pipeline(&pn, &qn, table, z)?;
                let lp = filling::min_l1_fill(pn.complex(), &inclusion.apply(z))?;
                Ok((out.certificate.ratio, lp.norm <= out.certificate.norm))
            });
            for o in outcomes {
                cycles[level] += 1;
                let (ratio, lp_ok) = match o {
                    Ok(v) => v,
                    Err(e) if is_computational(&e) => {
                        errors.push(e.to_string());
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                if !lp_ok {
                    beaten[level] += 1;
                }
                if ratio > worst[level] {
                    worst[level] = ratio;
                }
            }
        }
    }
    for level in 0..=max_p {
        run.text.push(format!("level {level}: {} vertex cycles, worst constructive ratio {}", cycles[level], format_rat(&worst[level])));
        run.push(Assertion::bound(format!("level {level} constructive ratio"), &worst[level], &int(2 * level as i64 + 3)));
        run.push(Assertion::check(format!("level {level} LP optimum never exceeds the constructive norm"), beaten[level] == 0));
    }
    let mut a = Assertion::check("every constructive filling was built", errors.is_empty());
    if let Some(e) = errors.first() {
        a = a.with_note(e.clone());
    }
    run.push(a);
    run.detail("cycles", json!(cycles));
    run.detail("worst_ratio", json!(worst.iter().map(format_rat).collect::<Vec<_>>()));
    Ok(())
}

#[derive(Deserialize)]
struct ChainInput {
    members: Vec<CofiniteEmbedding>,
}

fn orbit_check(run: &mut Run, file: Option<&Path>, count: usize, max_p: usize, window: usize, seed: u64) -> Checked<()> {
    let chains: Vec<SubsequenceChain> = match file {
        Some(path) => {
            let c: ChainInput = run.inputs.json(path)?;
            let members = c
                .members
                .into_iter()
                .map(|e| Ok(IndexedSequence::cofinite("n", CofiniteEmbedding::new(e.missing().to_vec())?)))
                .collect::<uacyc::Result<Vec<_>>>()?;
            vec![SubsequenceChain::new(members)?]
        }
        None => {
            let mut rng = gen::rng(seed);
            (0..count)
                .map(|_| {
                    let p = rng.gen_range(1..=max_p.max(1));
                    gen::random_cofinite_chain(&mut rng, p, window as u64)
                })
                .collect()
        }
    };
    let reports = uacyc::par::map(&chains, |c| verify_face_commutation(c, window));
    let mut faces = 0;
    let mut failed = 0;
    for r in reports {
        let r = r?;
        faces += r.faces.len();
        failed += r.faces.iter().filter(|f| !f.holds).count();
    }
    run.text.push(format!("{} chains, {faces} faces", chains.len()));
    run.push(Assertion::check(format!("I(d_i x) = d_i I(x) on {faces} faces"), failed == 0));
    run.detail("faces", json!(faces));
    run.detail("failed", json!(failed));
    Ok(())
}

fn monoid_check(run: &mut Run, count: usize, max_p: usize, seed: u64) -> Checked<()> {
    let mut rng = gen::rng(seed);
    let tuples: Vec<Vec<CofiniteEmbedding>> = (0..count)
        .map(|_| {
            let p = rng.gen_range(2..=max_p.max(2));
            (0..p).map(|_| gen::random_embedding(&mut rng, 3, 12)).collect()
        })
        .collect();
    let r = monoid_simplicial_identities(&tuples);
    let pointwise = tuples.iter().all(|t| {
        t.windows(2).all(|w| {
            let prod = w[0].compose(&w[1]);
            (1..=30).all(|n| prod.eval(n) == w[1].eval(w[0].eval(n)))
        })
    });
    run.text.push(format!("{count} tuples, {} face identities", r.checked));
    run.push(Assertion::check(format!("d_i d_j = d_(j-1) d_i on {} pairs", r.checked), r.passed()));
    run.push(Assertion::check("products agree pointwise on n ≤ 30", pointwise));
    if let Some((k, i, j)) = r.failure {
        run.detail("failure", json!({"tuple": tuples[k], "i": i, "j": j}));
    }
    Ok(())
}

#[derive(Deserialize)]
struct GroupFile {
    base: usize,
    generators: Vec<Perm>,
}

fn binate_check(run: &mut Run, file: Option<&Path>, count: usize, psi_from: i64, word_cap: usize, seed: u64) -> Checked<()> {
    let groups: Vec<(usize, Vec<Perm>)> = match file {
        Some(path) => {
            let g: GroupFile = run.inputs.json(path)?;
            if g.generators.iter().any(|p| p.len() != g.base || !uacyc::lamp::is_perm(p)) {
                return Err(InputError(format!("generators must be permutations of 0..{}", g.base)));
            }
            vec![(g.base, g.generators)]
        }
        None => {
            let mut rng = gen::rng(seed);
            (0..count).map(|_| gen::random_lamp_instance(&mut rng, 5, 3)).collect()
        }
    };
    let witnesses: Vec<BinateWitness> =
        groups.iter().map(|(m, gens)| BinateWitness::with_psi_from(*m, gens, psi_from)).collect::<uacyc::Result<_>>()?;
    let reports = uacyc::par::map(&witnesses, |w| verify_binate(w, word_cap));
    let words: usize = reports.iter().map(|r| r.words_checked).sum();
    let first = reports.iter().find_map(|r| r.failure.clone());
    run.text.push(format!("{} groups, {words} words up to length {word_cap}", groups.len()));
    let mut a = Assertion::check(format!("binate identities with ψ from level {psi_from}"), first.is_none());
    if let Some(f) = &first {
        a = a.with_note(format!("{:?} fails on {}", f.identity, f.word.join(" ")));
        run.detail("failure", json!(f));
    }
    run.push(a);
    if file.is_none() && psi_from == 1 {
        let control = groups.iter().find(|(_, gens)| gens.iter().any(|p| p.iter().enumerate().any(|(i, &x)| i != x)));
        if let Some((m, gens)) = control {
            let w = BinateWitness::with_psi_from(*m, gens, 2)?;
            run.push(Assertion::check("ψ placed from level 2 is rejected", !verify_binate(&w, word_cap).holds()));
        }
    }
    run.detail("words_checked", json!(words));
    Ok(())
}

#[derive(Deserialize)]
struct LampGroupFile {
    base: usize,
    #[serde(default = "one")]
    shift: i64,
    generators: Vec<BTreeMap<String, Perm>>,
}

fn one() -> i64 {
    1
}

fn lamp_generator(base: usize, levels: &BTreeMap<String, Perm>) -> Checked<LampElement> {
    let mut g = LampElement::identity(base);
    for (level, perm) in levels {
        let l: i64 = level.trim().parse().map_err(|_| InputError(format!("level {level:?} is not an integer")))?;
        if perm.len() != base {
            return Err(InputError(format!("lamp at level {l} does not permute {base} points")));
        }
        g = uacyc::lamp::lamp_compose(&g, &LampElement::lamp_at(l, perm.clone())?);
    }
    Ok(g)
}

fn conjugates_check(run: &mut Run, file: Option<&Path>, count: usize, max_power: u64, seed: u64) -> Checked<()> {
    let instances: Vec<(Vec<LampElement>, LampElement)> = match file {
        Some(path) => {
            let g: LampGroupFile = run.inputs.json(path)?;
            let gens = g.generators.iter().map(|l| lamp_generator(g.base, l)).collect::<Checked<Vec<_>>>()?;
            vec![(gens, LampElement::shift_by(g.base, g.shift))]
        }
        None => {
            let mut rng = gen::rng(seed);
            (0..count)
                .map(|_| {
                    let (m, gens) = gen::random_lamp_instance(&mut rng, 5, 3);
                    let gens = gens.into_iter().map(|p| LampElement::lamp_at(0, p).expect("random perms are valid")).collect();
                    (gens, LampElement::shift_by(m, 1))
                })
                .collect()
        }
    };
    let mut conclusive = 0;
    let mut failure = None;
    for (k, (gens, t)) in instances.iter().enumerate() {
        let r = match verify_commuting_conjugates(gens, t, max_power) {
            Ok(r) => r,
            Err(Error::InfiniteSupport(g)) => return Err(InputError(format!("generator {} of instance {k} has infinite support", g + 1))),
            Err(e) => return Err(e.into()),
        };
        if r.conclusive() {
            conclusive += 1;
        }
        if failure.is_none() {
            if let Some((p, i, j)) = r.failure {
                failure = Some(json!({"instance": k, "power": p, "generators": [i + 1, j + 1]}));
            }
        }
    }
    run.text.push(format!("{} groups, powers 1..={max_power}", instances.len()));
    run.push(Assertion::check("[H, t^p H t^-p] = 1", failure.is_none()));
    run.push(Assertion::check("every pass is conclusive (supports separate within the checked powers)", conclusive == instances.len()));
    if let Some(f) = failure {
        run.detail("failure", f);
    }
    run.detail("conclusive", json!(conclusive));
    Ok(())
}
