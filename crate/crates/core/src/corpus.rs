//! Bundled fixtures and the acceptance suite that runs over them.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alexander::{alexander_at_t_squared, conway, LinkCode};
use crate::constructions::{artin_spin, braid_closure, load_table, table_knot, KNOT_TABLE};
use crate::diagram::{
    parse, serialize, Component, ComponentKind, CrossingClass, CrossingId, CrossingSign, Diagram,
    Mode, Passage, Role, Surgery,
};
use crate::laurent::LaurentPoly;
use crate::moves::{
    apply_f_move, apply_r1, apply_r2, apply_r3, apply_welded_commute, canonicalize, insert_bigon,
    insert_kink, r3_sites, Gap, MoveKind, Position, Terminal,
};
use crate::skein::{
    evaluate, skein_sign, smooth_crossing, switch_crossing, NodeKind, SkeinConfig, TraceNode,
};

pub const FIXTURES: &[(&str, &str)] = &[
    ("tw_std", include_str!("../fixtures/tw_std.twin")),
    ("tw_split", include_str!("../fixtures/tw_split.twin")),
    ("tw_giller", include_str!("../fixtures/tw_giller.twin")),
    (
        "tw_unknot_pair",
        include_str!("../fixtures/tw_unknot_pair.twin"),
    ),
    ("giller_ex", include_str!("../fixtures/giller_ex.knot")),
];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn fixture(name: &str) -> Option<Diagram> {
    fixture_text(name).map(|t| parse(t).expect("bundled fixture parses"))
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub multiplier: LaurentPoly,
    pub cases: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            multiplier: LaurentPoly::t_minus_t_inv(),
            cases: 200,
            seed: 0x7e1a_5eed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Names of the checks inside this criterion that failed.
    pub failed_checks: Vec<String>,
    pub elapsed_ms: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {:>10.2} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.detail
        )
    }
}

pub fn render_table(reports: &[CriterionReport]) -> String {
    let mut out: String = reports.iter().map(|r| r.line() + "\n").collect();
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
    out
}

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    f: impl FnOnce() -> (bool, String),
) -> CriterionReport {
    timed_checks(id, name, limit, || {
        let (ok, detail) = f();
        let failed = if ok { vec![] } else { vec![name.to_string()] };
        (detail, failed)
    })
}

fn timed_checks(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    f: impl FnOnce() -> (String, Vec<String>),
) -> CriterionReport {
    let start = Instant::now();
    let (mut detail, mut failed_checks) = f();
    let ok = failed_checks.is_empty();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    if let Some(l) = limit.filter(|_| !in_time) {
        detail.push_str(&format!(" (over the {} ms limit)", l.as_millis()));
        failed_checks.push("time limit".into());
    }
    CriterionReport {
        id,
        name,
        passed: ok && in_time,
        detail,
        failed_checks,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
    }
}

fn config(opts: &SuiteOptions) -> SkeinConfig {
    SkeinConfig {
        multiplier: opts.multiplier.clone(),
        ..SkeinConfig::default()
    }
}

fn expected_spin_value() -> LaurentPoly {
    "t^-2 - 1 + t^2".parse().expect("literal")
}

fn value_check(name: &str, cfg: &SkeinConfig, expected: &LaurentPoly) -> (bool, String) {
    let d = fixture(name).expect("bundled");
    match evaluate(&d, cfg) {
        Ok(r) => match r.value() {
            Some(v) => (v == expected, format!("{name} = {v}")),
            None => (false, format!("{name} unresolved")),
        },
        Err(e) => (false, format!("{name}: {e}")),
    }
}

pub fn run_acceptance(opts: &SuiteOptions) -> Vec<CriterionReport> {
    let ms = Duration::from_millis;
    let cfg = config(opts);
    vec![
        timed(1, "standard twin", Some(ms(10)), || {
            value_check("tw_std", &cfg, &LaurentPoly::one())
        }),
        timed(2, "split twin", Some(ms(10)), || {
            value_check("tw_split", &cfg, &LaurentPoly::zero())
        }),
        timed(3, "Tw_G value and tree", Some(ms(1000)), || {
            giller_twin_check(&cfg)
        }),
        timed(4, "Tw_U value and first branch", Some(ms(1000)), || {
            unknot_pair_check(&cfg)
        }),
        timed(5, "2-knot Giller polynomial", Some(ms(1000)), || {
            value_check("giller_ex", &cfg, &expected_spin_value())
        }),
        timed(6, "spun table knots", Some(ms(30_000)), || {
            spin_sweep(&cfg, 7)
        }),
        timed_checks(7, "property suites", None, || property_suites(opts)),
        timed(8, "Conway oracle", None, || conway_checks(opts.seed, 100)),
        timed(9, "negative control", None, || {
            let degenerate = SkeinConfig {
                multiplier: LaurentPoly::one(),
                ..cfg.clone()
            };
            let (ok, detail) = giller_twin_check(&degenerate);
            (!ok, format!("with multiplier 1: {detail}"))
        }),
    ]
}

fn giller_twin_check(cfg: &SkeinConfig) -> (bool, String) {
    let d = fixture("tw_giller").expect("bundled");
    let r = match evaluate(
        &d,
        &SkeinConfig {
            emit_trace: true,
            ..cfg.clone()
        },
    ) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let Some(v) = r.value().cloned() else {
        return (false, "unresolved".into());
    };
    let trace = r.trace.as_ref().expect("trace requested");
    let weighted = trace.weighted_leaves();
    let standard: Vec<_> = weighted
        .iter()
        .filter(|(_, n)| n.kind == NodeKind::Terminal(Terminal::Standard))
        .collect();
    let split: Vec<_> = weighted
        .iter()
        .filter(|(_, n)| n.kind == NodeKind::Terminal(Terminal::Split))
        .collect();
    let standard_ok = standard.len() == 2
        && standard
            .iter()
            .all(|(_, n)| n.value.as_ref().is_some_and(|x| x.is_one()));
    let cancel = split.iter().fold(LaurentPoly::zero(), |acc, (w, n)| {
        &acc + &(w * n.value.as_ref().unwrap_or(&LaurentPoly::zero()))
    });
    let tree_ok = standard_ok && split.len() == 2 && cancel.is_zero() && weighted.len() == 4;
    (
        v == expected_spin_value() && tree_ok,
        format!(
            "I = {v}; {} standard, {} split leaves; split contributions sum to {cancel}",
            standard.len(),
            split.len()
        ),
    )
}

fn unknot_pair_check(cfg: &SkeinConfig) -> (bool, String) {
    let d = fixture("tw_unknot_pair").expect("bundled");
    let r = match evaluate(
        &d,
        &SkeinConfig {
            emit_trace: true,
            ..cfg.clone()
        },
    ) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let Some(v) = r.value().cloned() else {
        return (false, "unresolved".into());
    };
    let root = r.trace.as_ref().expect("trace requested");
    let negative_root = matches!(
        root.kind,
        NodeKind::Crossing {
            sign: CrossingSign::Negative,
            ..
        }
    );
    (
        v == expected_spin_value() && negative_root,
        format!(
            "I = {v}; first branch {}",
            if negative_root {
                "negative"
            } else {
                "not negative"
            }
        ),
    )
}

/// Crossing number read from a table name such as `7_4`; the unknot has none.
pub fn crossing_number(name: &str) -> usize {
    name.split('_')
        .next()
        .and_then(|n| n.parse().ok())
        .unwrap_or(0)
}

/// Artin spins of every table knot with at most `max_crossings`
/// crossings, cut at each passage, against the Conway oracle.
pub fn spin_sweep(cfg: &SkeinConfig, max_crossings: usize) -> (bool, String) {
    let table = load_table(KNOT_TABLE).expect("bundled table parses");
    let (mut agree, mut wrong, mut unresolved) = (Vec::new(), Vec::new(), Vec::new());
    for (name, k) in table
        .iter()
        .filter(|(n, _)| crossing_number(n) <= max_crossings)
    {
        let target = alexander_at_t_squared(&k.to_link()).expect("table codes are valid");
        let cuts = k.passages.len().max(1);
        let mut knot_ok = true;
        let mut knot_resolved = false;
        for cut in 0..cuts {
            if let Some(v) = evaluate(&artin_spin(k, cut), cfg)
                .ok()
                .and_then(|r| r.value().cloned())
            {
                knot_resolved = true;
                knot_ok &= v == target;
            }
        }
        match (knot_resolved, knot_ok) {
            (false, _) => unresolved.push(name.clone()),
            (true, true) => agree.push(name.clone()),
            (true, false) => wrong.push(name.clone()),
        }
    }
    let mut detail = format!("{} knots agree ({})", agree.len(), agree.join(" "));
    if !wrong.is_empty() {
        detail.push_str(&format!("; disagree: {}", wrong.join(" ")));
    }
    if !unresolved.is_empty() {
        detail.push_str(&format!("; unresolved: {}", unresolved.join(" ")));
    }
    (wrong.is_empty() && !agree.is_empty(), detail)
}

/// Random diagram with `crossings` crossings spread over the arcs of
/// `mode` and `loops` loops. Not necessarily evaluable.
pub fn random_diagram(rng: &mut impl Rng, mode: Mode, crossings: usize, loops: usize) -> Diagram {
    let mut passages: Vec<Passage> = (1..=crossings as u32)
        .flat_map(|i| [Passage::over(i), Passage::under(i)])
        .collect();
    passages.shuffle(rng);
    let mut labels: Vec<(ComponentKind, String)> = match mode {
        Mode::Twin => vec![
            (ComponentKind::TwinArc, "A".into()),
            (ComponentKind::TwinArc, "B".into()),
        ],
        Mode::TwoKnot => vec![(ComponentKind::KnotArc, "K".into())],
    };
    labels.extend((1..=loops).map(|i| (ComponentKind::Loop, format!("L{i}"))));
    let mut cuts: Vec<usize> = (0..labels.len() - 1)
        .map(|_| rng.gen_range(0..=passages.len()))
        .collect();
    cuts.sort_unstable();
    cuts.push(passages.len());
    let mut start = 0;
    let components = labels
        .into_iter()
        .zip(cuts)
        .map(|((kind, label), end)| {
            let mut c = Component::new(kind, label, passages[start..end].to_vec());
            start = end;
            if kind == ComponentKind::Loop {
                c.surgery = Some(if rng.gen_bool(0.8) {
                    Surgery::DEFAULT
                } else {
                    Surgery {
                        gamma: rng.gen_range(-3..=3),
                        slope: (rng.gen_range(-5..=5), rng.gen_range(1..=5)),
                    }
                });
            }
            c
        })
        .collect();
    let signs = (1..=crossings as u32)
        .map(|i| {
            (
                CrossingId(i),
                if rng.gen_bool(0.5) {
                    CrossingSign::Positive
                } else {
                    CrossingSign::Negative
                },
            )
        })
        .collect();
    Diagram::new(mode, components, signs)
}

fn random_sign(rng: &mut impl Rng) -> CrossingSign {
    if rng.gen_bool(0.5) {
        CrossingSign::Positive
    } else {
        CrossingSign::Negative
    }
}

fn random_gap(rng: &mut impl Rng, d: &Diagram) -> Gap {
    let c = d.components().choose(rng).expect("nonempty diagram");
    Gap::new(c.label.clone(), rng.gen_range(0..=c.passages.len()))
}

fn positions(d: &Diagram) -> Vec<Position> {
    d.components()
        .iter()
        .flat_map(|c| (0..c.passages.len()).map(|i| Position::new(c.label.clone(), i)))
        .collect()
}

/// Every diagram one move away from `d` that removes or rearranges
/// crossings, tagged with the move.
pub fn neighbours(d: &Diagram) -> Vec<(MoveKind, Diagram)> {
    let mut out = Vec::new();
    for p in positions(d) {
        if let Ok(x) = apply_r1(d, &p) {
            out.push((MoveKind::R1, x));
        }
        if let Ok(x) = apply_r2(d, &p) {
            out.push((MoveKind::R2, x));
        }
        if let Ok(x) = apply_welded_commute(d, &p) {
            out.push((MoveKind::WeldedCommute, x));
        }
    }
    for p in r3_sites(d) {
        if let Ok(x) = apply_r3(d, &p) {
            out.push((MoveKind::R3, x));
        }
    }
    for &id in d.crossings().keys() {
        if let Ok(x) = apply_f_move(d, id) {
            out.push((MoveKind::FMove, x));
        }
    }
    out
}

/// One random move: a kink or bigon insertion, or any applicable
/// removal, triangle, commute or F move.
pub fn random_move(rng: &mut impl Rng, d: &Diagram) -> (MoveKind, Diagram) {
    if d.components().is_empty() {
        return (MoveKind::R1, d.clone());
    }
    match rng.gen_range(0..4) {
        0 => {
            let role = if rng.gen_bool(0.5) {
                Role::Over
            } else {
                Role::Under
            };
            let x =
                insert_kink(d, &random_gap(rng, d), role, random_sign(rng)).expect("gap in range");
            (MoveKind::R1, x)
        }
        1 => {
            let (a, b) = (random_gap(rng, d), random_gap(rng, d));
            let x = insert_bigon(d, &a, &b, rng.gen_bool(0.5), random_sign(rng))
                .expect("gaps in range");
            (MoveKind::R2, x)
        }
        _ => {
            let mut options = neighbours(d);
            if options.is_empty() {
                return (MoveKind::R1, d.clone());
            }
            let k = rng.gen_range(0..options.len());
            options.swap_remove(k)
        }
    }
}

fn resolved(d: &Diagram, cfg: &SkeinConfig) -> Option<LaurentPoly> {
    evaluate(d, cfg).ok().and_then(|r| r.value().cloned())
}

/// Resolvable diagrams the property suites start from: the twin and
/// 2-knot fixtures, spins of small table knots at every cut, and the
/// loop-carrying diagrams one smoothing below them.
pub fn seed_pool(cfg: &SkeinConfig) -> Vec<Diagram> {
    let mut pool: Vec<Diagram> = FIXTURES
        .iter()
        .map(|(_, t)| parse(t).expect("bundled"))
        .collect();
    for (_, k) in load_table(KNOT_TABLE)
        .expect("bundled")
        .iter()
        .filter(|(_, k)| k.crossing_count() <= 5)
    {
        for cut in 0..k.passages.len().max(1) {
            pool.push(artin_spin(k, cut));
        }
        pool.push(artin_spin(&k.mirror(), 0));
    }
    let mut smoothed = Vec::new();
    for d in &pool {
        for &id in d.crossings().keys() {
            if eligible(d, id) {
                if let Ok(s) = smooth_crossing(d, id) {
                    smoothed.push(s);
                }
            }
        }
    }
    pool.extend(smoothed);
    pool.retain(|d| resolved(d, cfg).is_some());
    pool
}

fn eligible(d: &Diagram, id: CrossingId) -> bool {
    matches!(
        d.classify_crossing(id),
        Ok(CrossingClass::ArcSelf | CrossingClass::ArcLoop)
    )
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn perturbed(rng: &mut impl Rng, d: &Diagram, max_moves: usize) -> Diagram {
    let n = rng.gen_range(0..=max_moves);
    (0..n).fold(d.clone(), |x, _| random_move(rng, &x).1)
}

/// The randomized property suites, each run until `cases` comparisons
/// between resolved values have been made (or the attempt cap is hit).
pub fn property_suites(opts: &SuiteOptions) -> (String, Vec<String>) {
    let cfg = config(opts);
    let pool = seed_pool(&cfg);
    let looped: Vec<&Diagram> = pool.iter().filter(|d| d.loop_count() > 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let cap = opts.cases * 20;
    let mut tallies = Vec::new();

    let mut t = Tally::new("skein identity");
    for _ in 0..cap {
        if t.checked >= opts.cases {
            break;
        }
        let base = pool.choose(&mut rng).expect("pool");
        let d = perturbed(&mut rng, base, 1);
        let ids: Vec<CrossingId> = d
            .crossings()
            .keys()
            .copied()
            .filter(|&c| eligible(&d, c))
            .collect();
        let Some(&id) = ids.choose(&mut rng) else {
            continue;
        };
        let (Ok(sw), Ok(sm)) = (switch_crossing(&d, id), smooth_crossing(&d, id)) else {
            continue;
        };
        let (Some(v), Some(a), Some(b)) =
            (resolved(&d, &cfg), resolved(&sw, &cfg), resolved(&sm, &cfg))
        else {
            continue;
        };
        let m = &cfg.multiplier * &b;
        let rhs = match skein_sign(&d, id) {
            Some(CrossingSign::Positive) => &a + &m,
            _ => &a - &m,
        };
        t.record(v == rhs, || format!("{} at {id}", serialize(&d)));
    }
    tallies.push(t);

    let mut t = Tally::new("move invariance");
    let mut sym = Tally::new("symmetry");
    let mut memo = Tally::new("memo on = off");
    for _ in 0..cap {
        if t.checked >= opts.cases && sym.checked >= opts.cases && memo.checked >= opts.cases {
            break;
        }
        let d = pool.choose(&mut rng).expect("pool");
        let e = perturbed(&mut rng, d, 3);
        let Some(v) = resolved(&e, &cfg) else {
            continue;
        };
        let before = resolved(d, &cfg).expect("pool is resolvable");
        t.record(v == before, || {
            format!("{} -> {}", serialize(d), serialize(&e))
        });
        if e.mode() == Mode::Twin {
            let parity = if e.loop_count() % 2 == 0 {
                v.clone()
            } else {
                -&v
            };
            sym.record(v.invert() == parity, || format!("{} = {v}", serialize(&e)));
        }
        let off = resolved(&e, &cfg.clone().without_memo());
        memo.record(off.as_ref() == Some(&v), || serialize(&e));
    }
    tallies.extend([t, sym, memo]);

    let mut t = Tally::new("loop reversal sign");
    for _ in 0..cap {
        if t.checked >= opts.cases || looped.is_empty() {
            break;
        }
        let base = *looped.choose(&mut rng).expect("pool");
        let d = perturbed(&mut rng, base, 2);
        let labels: Vec<String> = d.loops().map(|(_, c)| c.label.clone()).collect();
        let Some(label) = labels.choose(&mut rng) else {
            continue;
        };
        let r = d.reverse_component(label).expect("label exists");
        let (Some(v), Some(w)) = (resolved(&d, &cfg), resolved(&r, &cfg)) else {
            continue;
        };
        t.record(w == -&v, || format!("{} reversing {label}", serialize(&d)));
    }
    tallies.push(t);

    let mut t = Tally::new("parse round trip");
    while t.checked < opts.cases {
        let mode = if rng.gen_bool(0.5) {
            Mode::Twin
        } else {
            Mode::TwoKnot
        };
        let (n, loops) = (rng.gen_range(0..8), rng.gen_range(0..3));
        let d = random_diagram(&mut rng, mode, n, loops);
        let text = serialize(&d);
        let ok = match parse(&text) {
            Ok(p) => serialize(&p) == text && canonicalize(&p) == canonicalize(&d),
            Err(_) => false,
        };
        t.record(ok, || text.clone());
    }
    tallies.push(t);

    let failed = tallies
        .iter()
        .filter(|t| !t.failures.is_empty() || t.checked < opts.cases)
        .map(|t| t.name.to_string())
        .collect();
    let detail = tallies
        .iter()
        .map(|t| match t.failures.first() {
            None => format!("{} {}/{}", t.name, t.checked, t.checked),
            Some(f) => format!(
                "{} {} failed of {} (e.g. {f})",
                t.name,
                t.failures.len(),
                t.checked
            ),
        })
        .collect::<Vec<_>>()
        .join("; ");
    (detail, failed)
}

fn link_to_diagram(l: &LinkCode) -> Diagram {
    let mut comps = vec![
        Component::twin_arc("A", vec![]),
        Component::twin_arc("B", vec![]),
    ];
    comps.extend(
        l.components
            .iter()
            .enumerate()
            .map(|(i, c)| Component::surgery_loop(format!("L{}", i + 1), c.clone())),
    );
    Diagram::new(Mode::Twin, comps, l.crossings.clone())
}

fn diagram_to_link(d: &Diagram) -> LinkCode {
    LinkCode::new(
        d.loops().map(|(_, c)| c.passages.clone()).collect(),
        d.crossings().clone(),
    )
}

/// A random classical Reidemeister move on a link code: kink, bigon or
/// triangle, kept only if the code stays planar.
pub fn random_classical_move(rng: &mut impl Rng, l: &LinkCode) -> LinkCode {
    let d = link_to_diagram(l);
    let loop_gap = |rng: &mut ChaCha8Rng| {
        let (_, c) = d
            .loops()
            .collect::<Vec<_>>()
            .choose(rng)
            .copied()
            .expect("a component");
        Gap::new(c.label.clone(), rng.gen_range(0..=c.passages.len()))
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    for _ in 0..50 {
        let next = match local.gen_range(0..3) {
            0 => {
                let role = if local.gen_bool(0.5) {
                    Role::Over
                } else {
                    Role::Under
                };
                let g = loop_gap(&mut local);
                insert_kink(&d, &g, role, random_sign(&mut local)).ok()
            }
            1 => {
                let (a, b) = (loop_gap(&mut local), loop_gap(&mut local));
                insert_bigon(&d, &a, &b, local.gen_bool(0.5), random_sign(&mut local)).ok()
            }
            _ => r3_sites(&d)
                .choose(&mut local)
                .and_then(|p| apply_r3(&d, p).ok()),
        };
        if let Some(x) = next.filter(|x| x.is_classical()) {
            return diagram_to_link(&x);
        }
    }
    l.clone()
}

/// Fixed values of the Conway oracle and its invariance under random
/// planar move sequences starting from table knots and small links.
pub fn conway_checks(seed: u64, sequences: usize) -> (bool, String) {
    let z = |s: &str| LaurentPoly::parse_in(s, "z").expect("literal");
    let knot = |name: &str| conway(&table_knot(name).expect("bundled").to_link()).expect("valid");
    let split = LinkCode::new(
        vec![table_knot("3_1").expect("bundled").passages, vec![]],
        table_knot("3_1").expect("bundled").crossings,
    );
    let fixed = [
        ("unknot", knot("unknot"), LaurentPoly::one()),
        ("split", conway(&split).expect("valid"), LaurentPoly::zero()),
        ("3_1", knot("3_1"), z("1 + z^2")),
        ("4_1", knot("4_1"), z("1 - z^2")),
    ];
    let mut failures: Vec<String> = fixed
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(n, got, _)| format!("{n} gave {}", got.display_in("z")))
        .collect();
    let mut starts: Vec<LinkCode> = load_table(KNOT_TABLE)
        .expect("bundled")
        .into_iter()
        .filter(|(_, k)| k.crossing_count() <= 6)
        .map(|(_, k)| k.to_link())
        .collect();
    starts.push(braid_closure(2, &[1, 1]));
    starts.push(braid_closure(2, &[-1, -1, -1, -1]));
    starts.push(split);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    for i in 0..sequences {
        let start = &starts[i % starts.len()];
        let before = conway(start).expect("valid");
        let steps = rng.gen_range(1..=4);
        let moved = (0..steps).fold(start.clone(), |l, _| random_classical_move(&mut rng, &l));
        match conway(&moved) {
            Ok(after) if after == before => {}
            Ok(after) => failures.push(format!("{start} -> {moved}: {}", after.display_in("z"))),
            Err(e) => failures.push(format!("{moved}: {e}")),
        }
    }
    let detail = match failures.first() {
        None => format!("fixed values hold; {sequences} move sequences invariant"),
        Some(f) => format!("{} failures (e.g. {f})", failures.len()),
    };
    (failures.is_empty(), detail)
}

/// Value of every leaf weighted by its path coefficient, summed: equals
/// the root value of a resolved trace.
pub fn leaf_sum(trace: &TraceNode) -> LaurentPoly {
    trace
        .weighted_leaves()
        .into_iter()
        .fold(LaurentPoly::zero(), |acc, (w, n)| {
            &acc + &(&w * n.value.as_ref().unwrap_or(&LaurentPoly::zero()))
        })
}
