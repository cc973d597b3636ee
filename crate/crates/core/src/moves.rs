//! Diagram rewriting.
//!
//! Moves act on Gauss codes directly. Because virtual crossings are not
//! recorded, the virtual Reidemeister moves are identities; the moves
//! implemented here are the classical ones (R1, R2, R3), the welded move
//! that lets two adjacent over-passages trade places, and the twin move
//! F that slides a crossing between the two twin arcs off a shared
//! endpoint marker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    ComponentKind, CrossingId, CrossingSign, Diagram, DiagramError, Mode, Passage, Role, Slot,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    #[serde(rename = "welded_commute")]
    WeldedCommute,
    #[serde(rename = "F_move")]
    FMove,
}

/// A passage position named by component label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub label: String,
    pub index: usize,
}

impl Position {
    pub fn new(label: impl Into<String>, index: usize) -> Self {
        Self {
            label: label.into(),
            index,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEvent {
    pub move_kind: MoveKind,
    pub crossings: Vec<CrossingId>,
    pub position: Position,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("{kind:?} not applicable at {label}[{index}]: {reason}")]
    NotApplicable {
        kind: MoveKind,
        label: String,
        index: usize,
        reason: String,
    },
    #[error("F move not applicable to crossing {crossing}: {reason}")]
    FNotApplicable {
        crossing: CrossingId,
        reason: String,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn not_applicable(kind: MoveKind, at: &Position, reason: impl Into<String>) -> MoveError {
    MoveError::NotApplicable {
        kind,
        label: at.label.clone(),
        index: at.index,
        reason: reason.into(),
    }
}

/// Resolves `at` and the passage slot after it.
fn adjacent_pair(d: &Diagram, at: &Position, kind: MoveKind) -> Result<(Slot, Slot), MoveError> {
    let ci = d
        .component_index(&at.label)
        .ok_or_else(|| DiagramError::UnknownLabel(at.label.clone()))?;
    let comp = &d.components()[ci];
    if at.index >= comp.passages.len() {
        return Err(not_applicable(kind, at, "index out of range"));
    }
    let next = comp
        .next_index(at.index)
        .ok_or_else(|| not_applicable(kind, at, "no passage follows this one"))?;
    Ok((
        Slot {
            component: ci,
            index: at.index,
        },
        Slot {
            component: ci,
            index: next,
        },
    ))
}

fn slots_adjacent(d: &Diagram, a: Slot, b: Slot) -> bool {
    a.component == b.component && d.components()[a.component].next_index(a.index) == Some(b.index)
}

fn event(kind: MoveKind, crossings: Vec<CrossingId>, d: &Diagram, slot: Slot) -> MoveEvent {
    MoveEvent {
        move_kind: kind,
        crossings,
        position: Position::new(d.components()[slot.component].label.clone(), slot.index),
    }
}

/// Removes a kink: the passage at `at` and the next one belong to one crossing.
pub fn apply_r1(d: &Diagram, at: &Position) -> Result<Diagram, MoveError> {
    let (a, b) = adjacent_pair(d, at, MoveKind::R1)?;
    let (pa, pb) = (d.passage_at(a), d.passage_at(b));
    if pa.crossing != pb.crossing {
        return Err(not_applicable(
            MoveKind::R1,
            at,
            "passages belong to different crossings",
        ));
    }
    Ok(d.without_crossings(&[pa.crossing]))
}

/// Cancels two opposite crossings forming a bigon. `at` names the first
/// of two adjacent passages with equal roles; their partners must also
/// be adjacent, in either order.
pub fn apply_r2(d: &Diagram, at: &Position) -> Result<Diagram, MoveError> {
    let (a, b) = adjacent_pair(d, at, MoveKind::R2)?;
    let (pa, pb) = (d.passage_at(a), d.passage_at(b));
    check_r2(d, pa, pb).map_err(|reason| not_applicable(MoveKind::R2, at, reason))?;
    Ok(d.without_crossings(&[pa.crossing, pb.crossing]))
}

fn check_r2(d: &Diagram, pa: Passage, pb: Passage) -> Result<(), &'static str> {
    if pa.crossing == pb.crossing {
        return Err("both passages belong to one crossing");
    }
    if pa.role != pb.role {
        return Err("passages have different roles");
    }
    if d.sign(pa.crossing) == d.sign(pb.crossing) {
        return Err("crossings have the same sign");
    }
    let partner = |id: CrossingId| -> Slot {
        let (o, u) = d.locate(id).expect("valid diagram");
        if pa.role == Role::Over {
            u
        } else {
            o
        }
    };
    let (qa, qb) = (partner(pa.crossing), partner(pb.crossing));
    if slots_adjacent(d, qa, qb) || slots_adjacent(d, qb, qa) {
        Ok(())
    } else {
        Err("partner passages are not adjacent")
    }
}

/// Swaps two adjacent over-passages (the welded forbidden move).
pub fn apply_welded_commute(d: &Diagram, at: &Position) -> Result<Diagram, MoveError> {
    let (a, b) = adjacent_pair(d, at, MoveKind::WeldedCommute)?;
    if !(d.passage_at(a).is_over() && d.passage_at(b).is_over()) {
        return Err(not_applicable(
            MoveKind::WeldedCommute,
            at,
            "only two over-passages commute",
        ));
    }
    Ok(swap(d, a, b))
}

fn swap(d: &Diagram, a: Slot, b: Slot) -> Diagram {
    let mut out = d.clone();
    out.components_mut()[a.component]
        .passages
        .swap(a.index, b.index);
    out
}

/// Which marker a passage is adjacent to on its twin arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Marker {
    Plus,
    Minus,
}

fn markers_of(d: &Diagram, slot: Slot) -> Vec<Marker> {
    let n = d.components()[slot.component].passages.len();
    let mut out = Vec::new();
    if slot.index == 0 {
        out.push(Marker::Plus);
    }
    if slot.index + 1 == n {
        out.push(Marker::Minus);
    }
    out
}

/// Slides a crossing between the two twin arcs off the marker both of its
/// passages are next to.
pub fn apply_f_move(d: &Diagram, crossing: CrossingId) -> Result<Diagram, MoveError> {
    let fail = |reason: &str| MoveError::FNotApplicable {
        crossing,
        reason: reason.to_string(),
    };
    if d.mode() != Mode::Twin {
        return Err(fail("F moves exist only for twins"));
    }
    let (o, u) = d.locate(crossing)?;
    let kinds = (
        d.components()[o.component].kind,
        d.components()[u.component].kind,
    );
    if kinds != (ComponentKind::TwinArc, ComponentKind::TwinArc) || o.component == u.component {
        return Err(fail("passages must lie on the two different twin arcs"));
    }
    let mo = markers_of(d, o);
    if !markers_of(d, u).iter().any(|m| mo.contains(m)) {
        return Err(fail("passages are not next to the same marker"));
    }
    Ok(d.without_crossings(&[crossing]))
}

/// The pairs of R3 sites: `(top, middle, bottom)` adjacent slot pairs.
#[derive(Clone, Copy, Debug)]
struct Triangle {
    top: (Slot, Slot),
    middle: (Slot, Slot),
    bottom: (Slot, Slot),
}

/// Finds an R3 triangle whose top strand is the over-pair starting at
/// `first`. The crossing shared by top and middle is `a`, top and bottom
/// `b`, middle and bottom `c`.
fn find_triangle(d: &Diagram, first: Slot) -> Option<Triangle> {
    let comp = &d.components()[first.component];
    let second = Slot {
        component: first.component,
        index: comp.next_index(first.index)?,
    };
    let (p1, p2) = (d.passage_at(first), d.passage_at(second));
    if !(p1.is_over() && p2.is_over()) || p1.crossing == p2.crossing {
        return None;
    }
    for (a, b) in [(p1.crossing, p2.crossing), (p2.crossing, p1.crossing)] {
        let (_, ua) = d.locate(a).ok()?;
        let (_, ub) = d.locate(b).ok()?;
        // Middle strand: U_a next to some O_c; bottom strand: U_b next to U_c.
        let mcomp = &d.components()[ua.component];
        let mut neighbours = Vec::new();
        if let Some(i) = mcomp.next_index(ua.index) {
            neighbours.push((
                Slot {
                    component: ua.component,
                    index: i,
                },
                false,
            ));
        }
        if let Some(i) = prev_index(mcomp.passages.len(), mcomp.is_loop(), ua.index) {
            neighbours.push((
                Slot {
                    component: ua.component,
                    index: i,
                },
                true,
            ));
        }
        for (oc_slot, oc_before) in neighbours {
            let pc = d.passage_at(oc_slot);
            if !pc.is_over() || pc.crossing == a || pc.crossing == b {
                continue;
            }
            let c = pc.crossing;
            let (_, uc) = d.locate(c).ok()?;
            let (bottom, uc_before_ub) = if slots_adjacent(d, uc, ub) {
                ((uc, ub), true)
            } else if slots_adjacent(d, ub, uc) {
                ((ub, uc), false)
            } else {
                continue;
            };
            // Orders along each strand, +1 when the first listed passage comes first.
            let o_top: i32 = if p1.crossing == b { 1 } else { -1 };
            let o_mid: i32 = if oc_before { 1 } else { -1 };
            let o_bot: i32 = if uc_before_ub { 1 } else { -1 };
            let s = |id| d.sign(id).map(CrossingSign::as_i32).unwrap_or(0);
            let (ea, eb, ec) = (s(a), s(b), s(c));
            if ea * o_top * o_mid == eb * o_top * o_bot && eb * o_top * o_bot == ec * o_mid * o_bot
            {
                let middle = if oc_before {
                    (oc_slot, ua)
                } else {
                    (ua, oc_slot)
                };
                return Some(Triangle {
                    top: (first, second),
                    middle,
                    bottom,
                });
            }
        }
    }
    None
}

fn prev_index(n: usize, is_loop: bool, i: usize) -> Option<usize> {
    if i > 0 {
        Some(i - 1)
    } else if is_loop && n > 1 {
        Some(n - 1)
    } else {
        None
    }
}

/// Slides the strand over the crossing opposite it in a triangle. `at`
/// names the first of the two adjacent over-passages of the top strand.
/// The triangle must be realizable: its crossing signs have to match the
/// order in which each strand meets its two vertices.
pub fn apply_r3(d: &Diagram, at: &Position) -> Result<Diagram, MoveError> {
    let (first, _) = adjacent_pair(d, at, MoveKind::R3)?;
    let tri = find_triangle(d, first).ok_or_else(|| {
        not_applicable(MoveKind::R3, at, "no realizable triangle on this over-pair")
    })?;
    let mut out = d.clone();
    for (x, y) in [tri.top, tri.middle, tri.bottom] {
        out.components_mut()[x.component]
            .passages
            .swap(x.index, y.index);
    }
    Ok(out)
}

/// Every position at which [`apply_r3`] succeeds.
pub fn r3_sites(d: &Diagram) -> Vec<Position> {
    let mut out = Vec::new();
    for (ci, comp) in d.components().iter().enumerate() {
        for i in 0..comp.passages.len() {
            let slot = Slot {
                component: ci,
                index: i,
            };
            if find_triangle(d, slot).is_some() {
                out.push(Position::new(comp.label.clone(), i));
            }
        }
    }
    out
}

/// A gap between passages: `index` passages of the component precede it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gap {
    pub label: String,
    pub index: usize,
}

impl Gap {
    pub fn new(label: impl Into<String>, index: usize) -> Self {
        Self {
            label: label.into(),
            index,
        }
    }
}

fn fresh_id(d: &Diagram, skip: u32) -> CrossingId {
    let max = d.crossings().keys().map(|c| c.0).max().unwrap_or(0);
    CrossingId(max + 1 + skip)
}

fn gap_slot(d: &Diagram, gap: &Gap, kind: MoveKind) -> Result<usize, MoveError> {
    let ci = d
        .component_index(&gap.label)
        .ok_or_else(|| DiagramError::UnknownLabel(gap.label.clone()))?;
    if gap.index > d.components()[ci].passages.len() {
        return Err(MoveError::NotApplicable {
            kind,
            label: gap.label.clone(),
            index: gap.index,
            reason: "gap out of range".into(),
        });
    }
    Ok(ci)
}

/// Adds a kink at `gap`, the inverse of [`apply_r1`].
pub fn insert_kink(
    d: &Diagram,
    gap: &Gap,
    first: Role,
    sign: CrossingSign,
) -> Result<Diagram, MoveError> {
    let ci = gap_slot(d, gap, MoveKind::R1)?;
    let id = fresh_id(d, 0);
    let mut out = d.clone();
    let ps = &mut out.components_mut()[ci].passages;
    ps.insert(
        gap.index,
        Passage {
            crossing: id,
            role: first.flip(),
        },
    );
    ps.insert(
        gap.index,
        Passage {
            crossing: id,
            role: first,
        },
    );
    out.crossings_mut().insert(id, sign);
    Ok(out)
}

/// Pushes one strand across another, the inverse of [`apply_r2`]. The
/// strand at `over` gains two over-passages; the strand at `under` meets
/// the same two crossings in the same order, or reversed when
/// `antiparallel` is set. The first crossing has sign `sign`.
pub fn insert_bigon(
    d: &Diagram,
    over: &Gap,
    under: &Gap,
    antiparallel: bool,
    sign: CrossingSign,
) -> Result<Diagram, MoveError> {
    let co = gap_slot(d, over, MoveKind::R2)?;
    let cu = gap_slot(d, under, MoveKind::R2)?;
    let (a, b) = (fresh_id(d, 0), fresh_id(d, 1));
    let top = [Passage::over(a.0), Passage::over(b.0)];
    let bottom = if antiparallel {
        [Passage::under(b.0), Passage::under(a.0)]
    } else {
        [Passage::under(a.0), Passage::under(b.0)]
    };
    let mut edits = [(co, over.index, top), (cu, under.index, bottom)];
    // Later positions first so earlier indices stay valid.
    edits.sort_by_key(|e| std::cmp::Reverse((e.0, e.1)));
    let mut out = d.clone();
    for (ci, at, pair) in edits {
        let ps = &mut out.components_mut()[ci].passages;
        ps.insert(at, pair[1]);
        ps.insert(at, pair[0]);
    }
    out.crossings_mut().insert(a, sign);
    out.crossings_mut().insert(b, sign.flip());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Greedy simplification

enum Reduction {
    R1(Slot),
    R2(Slot),
    F(CrossingId, Slot),
}

/// Range of the maximal run of over-passages containing `i`, as the list
/// of indices in traversal order.
fn over_run(d: &Diagram, ci: usize, i: usize) -> Vec<usize> {
    let comp = &d.components()[ci];
    let n = comp.passages.len();
    if !comp.passages[i].is_over() {
        return vec![];
    }
    if comp.is_loop() && comp.passages.iter().all(Passage::is_over) {
        return (0..n).map(|k| (i + k) % n).collect();
    }
    let mut start = i;
    while let Some(p) = prev_index(n, comp.is_loop(), start) {
        if !comp.passages[p].is_over() {
            break;
        }
        start = p;
    }
    let mut run = vec![start];
    let mut cur = start;
    while let Some(nx) = comp.next_index(cur) {
        if !comp.passages[nx].is_over() || nx == start {
            break;
        }
        run.push(nx);
        cur = nx;
    }
    run
}

fn direct_reduction(d: &Diagram) -> Option<Reduction> {
    let comps = d.components();
    for (ci, comp) in comps.iter().enumerate() {
        for i in 0..comp.passages.len() {
            if let Some(j) = comp.next_index(i) {
                if comp.passages[i].crossing == comp.passages[j].crossing {
                    return Some(Reduction::R1(Slot {
                        component: ci,
                        index: i,
                    }));
                }
            }
        }
    }
    for (ci, comp) in comps.iter().enumerate() {
        for i in 0..comp.passages.len() {
            if let Some(j) = comp.next_index(i) {
                if check_r2(d, comp.passages[i], comp.passages[j]).is_ok() {
                    return Some(Reduction::R2(Slot {
                        component: ci,
                        index: i,
                    }));
                }
            }
        }
    }
    if d.mode() == Mode::Twin {
        for (ci, comp) in comps.iter().enumerate() {
            for (i, p) in comp.passages.iter().enumerate() {
                if apply_f_move(d, p.crossing).is_ok() {
                    return Some(Reduction::F(
                        p.crossing,
                        Slot {
                            component: ci,
                            index: i,
                        },
                    ));
                }
            }
        }
    }
    None
}

/// Moves the over-passage at `from` to `to` inside one over-run by
/// successive commutes, stepping forward or backward.
fn commute_along(
    d: &mut Diagram,
    events: &mut Vec<MoveEvent>,
    ci: usize,
    from: usize,
    to: usize,
    forward: bool,
) {
    let (n, is_loop) = {
        let c = &d.components()[ci];
        (c.passages.len(), c.is_loop())
    };
    let mut p = from;
    while p != to {
        let (x, y) = if forward {
            (p, d.components()[ci].next_index(p).expect("inside a run"))
        } else {
            (prev_index(n, is_loop, p).expect("inside a run"), p)
        };
        let ids = vec![
            d.components()[ci].passages[x].crossing,
            d.components()[ci].passages[y].crossing,
        ];
        events.push(event(
            MoveKind::WeldedCommute,
            ids,
            d,
            Slot {
                component: ci,
                index: x,
            },
        ));
        *d = swap(
            d,
            Slot {
                component: ci,
                index: x,
            },
            Slot {
                component: ci,
                index: y,
            },
        );
        p = if forward { y } else { x };
    }
}

/// A run of commutes: move the passage at `from` to `to` on component `ci`.
type Slide = (usize, usize, usize, bool);

/// Reductions that become available after reordering one over-run.
fn plan_commute_reductions(d: &Diagram) -> Vec<(Vec<Slide>, Reduction)> {
    let mut plans = Vec::new();
    let occ = d.occurrences();
    let locate = |id: &CrossingId| -> (Slot, Slot) {
        let slots = &occ[id];
        let (a, b) = (slots[0], slots[1]);
        if d.passage_at(a).is_over() {
            (a, b)
        } else {
            (b, a)
        }
    };

    // R1: O_c in the over-run right before or right after U_c.
    for id in d.crossings().keys() {
        let (o, u) = locate(id);
        if o.component != u.component {
            continue;
        }
        let comp = &d.components()[u.component];
        let n = comp.passages.len();
        if let Some(before) = prev_index(n, comp.is_loop(), u.index) {
            if before != o.index && over_run(d, u.component, before).contains(&o.index) {
                plans.push((
                    vec![(u.component, o.index, before, true)],
                    Reduction::R1(Slot {
                        component: u.component,
                        index: before,
                    }),
                ));
            }
        }
        if let Some(after) = comp.next_index(u.index) {
            if after != o.index && over_run(d, u.component, after).contains(&o.index) {
                plans.push((
                    vec![(u.component, o.index, after, false)],
                    Reduction::R1(Slot {
                        component: u.component,
                        index: u.index,
                    }),
                ));
            }
        }
    }

    // R2: adjacent under-passages of opposite crossings whose overs share a run.
    for comp in d.components() {
        for i in 0..comp.passages.len() {
            let Some(j) = comp.next_index(i) else {
                continue;
            };
            let (pa, pb) = (comp.passages[i], comp.passages[j]);
            if pa.is_over() || pb.is_over() || pa.crossing == pb.crossing {
                continue;
            }
            if d.sign(pa.crossing) == d.sign(pb.crossing) {
                continue;
            }
            let (oa, _) = locate(&pa.crossing);
            let (ob, _) = locate(&pb.crossing);
            if oa.component != ob.component {
                continue;
            }
            let run = over_run(d, oa.component, oa.index);
            let (Some(ka), Some(kb)) = (
                run.iter().position(|&x| x == oa.index),
                run.iter().position(|&x| x == ob.index),
            ) else {
                continue;
            };
            let (slide, first) = if kb > ka {
                ((oa.component, ob.index, run[ka + 1], false), oa.index)
            } else {
                ((oa.component, ob.index, run[ka - 1], true), run[ka - 1])
            };
            plans.push((
                vec![slide],
                Reduction::R2(Slot {
                    component: oa.component,
                    index: first,
                }),
            ));
        }
    }

    // F: a crossing between the arcs whose passages can each be brought
    // to the same end of their arc.
    if d.mode() == Mode::Twin {
        let arcs: Vec<usize> = d.arcs().map(|(i, _)| i).collect();
        if arcs.len() != 2 {
            return plans;
        }
        for id in d.crossings().keys() {
            let (o, u) = locate(id);
            if o.component == u.component
                || !arcs.contains(&o.component)
                || !arcs.contains(&u.component)
            {
                continue;
            }
            for plus in [true, false] {
                let end_of = |s: Slot| {
                    let n = d.components()[s.component].passages.len();
                    if plus {
                        0
                    } else {
                        n - 1
                    }
                };
                let reach = |s: Slot| -> bool {
                    let end = end_of(s);
                    s.index == end
                        || (d.passage_at(s).is_over()
                            && d.components()[s.component].passages[end].is_over()
                            && over_run(d, s.component, end).contains(&s.index))
                };
                if reach(o) && reach(u) {
                    let slides = [o, u]
                        .iter()
                        .map(|s| (s.component, s.index, end_of(*s), !plus))
                        .collect();
                    let slot = Slot {
                        component: o.component,
                        index: end_of(o),
                    };
                    plans.push((slides, Reduction::F(*id, slot)));
                    break;
                }
            }
        }
    }
    plans
}

fn perform(d: &Diagram, r: Reduction, events: &mut Vec<MoveEvent>) -> Diagram {
    match r {
        Reduction::R1(slot) => {
            let id = d.passage_at(slot).crossing;
            events.push(event(MoveKind::R1, vec![id], d, slot));
            d.without_crossings(&[id])
        }
        Reduction::R2(slot) => {
            let comp = &d.components()[slot.component];
            let next = comp.next_index(slot.index).expect("pair");
            let ids = vec![
                comp.passages[slot.index].crossing,
                comp.passages[next].crossing,
            ];
            debug_assert!(check_r2(d, comp.passages[slot.index], comp.passages[next]).is_ok());
            events.push(event(MoveKind::R2, ids.clone(), d, slot));
            d.without_crossings(&ids)
        }
        Reduction::F(id, slot) => {
            events.push(event(MoveKind::FMove, vec![id], d, slot));
            d.without_crossings(&[id])
        }
    }
}

/// Greedy, deterministic simplification: R1, then R2, then F, and only
/// when none fires directly, a reordering of one over-run that enables
/// one of them. A classical diagram is only reordered into another
/// classical one. Every reduction removes at least one crossing.
pub fn simplify(d: &Diagram) -> (Diagram, Vec<MoveEvent>) {
    let mut cur = d.clone();
    let mut events = Vec::new();
    loop {
        if let Some(r) = direct_reduction(&cur) {
            cur = perform(&cur, r, &mut events);
            continue;
        }
        let classical = cur.is_classical();
        let mut chosen = None;
        for (slides, r) in plan_commute_reductions(&cur) {
            let mut next = cur.clone();
            let mut step = Vec::new();
            for (ci, from, to, forward) in slides {
                commute_along(&mut next, &mut step, ci, from, to, forward);
            }
            let next = perform(&next, r, &mut step);
            if !classical || next.is_classical() {
                chosen = Some((next, step));
                break;
            }
        }
        match chosen {
            Some((next, step)) => {
                events.extend(step);
                cur = next;
            }
            None => return (cur, events),
        }
    }
}

fn has_detached_loop_block(d: &Diagram) -> bool {
    d.connected_block_indices()
        .iter()
        .any(|block| block.iter().all(|&i| d.components()[i].is_loop()))
        || has_stacked_loop_block(d)
}

/// A set of loops lying entirely below (or entirely above) everything
/// else. In a classical diagram such a set lifts off, so the diagram splits.
fn has_stacked_loop_block(d: &Diagram) -> bool {
    if d.loop_count() == 0 {
        return false;
    }
    let occ = d.occurrences();
    let pairs: Vec<(usize, usize)> = occ
        .values()
        .map(|slots| {
            let (a, b) = (slots[0], slots[1]);
            if d.passage_at(a).is_over() {
                (a.component, b.component)
            } else {
                (b.component, a.component)
            }
        })
        .collect();
    let comps = d.components();
    let closed_block = |seed: usize, below: bool| -> bool {
        let mut set = vec![false; comps.len()];
        set[seed] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(o, u) in &pairs {
                let (inner, outer) = if below { (o, u) } else { (u, o) };
                if set[inner] && !set[outer] {
                    set[outer] = true;
                    changed = true;
                }
            }
        }
        set.iter()
            .enumerate()
            .all(|(i, &m)| !m || comps[i].is_loop())
    };
    let candidate = d
        .loops()
        .any(|(i, _)| closed_block(i, true) || closed_block(i, false));
    candidate && d.is_classical()
}

/// Standard twin (or, for a 2-knot, the unknotted sphere) after simplification.
pub fn is_trivial(d: &Diagram) -> bool {
    let (s, _) = simplify(d);
    terminal_kind(&s) == Some(Terminal::Standard)
}

/// A classical diagram with no loops and a single knotted arc, every
/// crossing of which is met first from above: the spin of an unknot.
fn is_descending_classical_arc(d: &Diagram) -> bool {
    if d.loop_count() > 0 {
        return false;
    }
    let mut nonempty = d.arcs().filter(|(_, c)| !c.passages.is_empty());
    let Some((_, arc)) = nonempty.next() else {
        return false;
    };
    if nonempty.next().is_some() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    arc.passages
        .iter()
        .all(|p| !seen.insert(p.crossing) || p.is_over())
        && d.is_classical()
}

/// True iff the diagram simplifies to two crossingless arcs and nothing else.
pub fn is_standard_twin(d: &Diagram) -> bool {
    d.mode() == Mode::Twin && is_trivial(d)
}

/// True iff after simplification some loop cluster is detached from the
/// arcs, or the diagram is classical and some loop cluster lies wholly
/// above or below the rest.
pub fn is_split(d: &Diagram) -> bool {
    let (s, _) = simplify(d);
    has_detached_loop_block(&s)
}

/// Terminal classification of an already simplified diagram.
pub(crate) fn terminal_kind(s: &Diagram) -> Option<Terminal> {
    if (s.crossing_count() == 0 && s.loop_count() == 0) || is_descending_classical_arc(s) {
        Some(Terminal::Standard)
    } else if has_detached_loop_block(s) {
        Some(Terminal::Split)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Standard,
    Split,
}

// ---------------------------------------------------------------------------
// Canonical form

/// Key of a diagram up to crossing relabeling, loop order, loop rotation
/// and loop reversal. `sign` is `(-1)^(number of loop reversals)` used to
/// reach the minimizing representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub key: String,
    pub sign: i8,
}

struct Numbering {
    ids: BTreeMap<CrossingId, u32>,
    next: u32,
}

impl Numbering {
    fn render_passages(
        &mut self,
        passages: &[Passage],
        signs: &BTreeMap<CrossingId, CrossingSign>,
        out: &mut String,
    ) {
        for p in passages {
            let n = *self.ids.entry(p.crossing).or_insert_with(|| {
                self.next += 1;
                self.next
            });
            out.push(' ');
            out.push(p.role.symbol());
            out.push_str(&n.to_string());
            out.push(signs[&p.crossing].symbol());
        }
    }
}

fn loop_variant(passages: &[Passage], reversed: bool, rotation: usize) -> Vec<Passage> {
    let mut v = passages.to_vec();
    if reversed {
        v.reverse();
    }
    let n = v.len();
    if n > 0 {
        v.rotate_left(rotation % n);
    }
    v
}

pub fn canonicalize(d: &Diagram) -> CanonicalForm {
    let mut arcs: Vec<&crate::diagram::Component> =
        d.components().iter().filter(|c| !c.is_loop()).collect();
    arcs.sort_by(|a, b| a.label.cmp(&b.label));
    let loops: Vec<&crate::diagram::Component> =
        d.components().iter().filter(|c| c.is_loop()).collect();
    let k = loops.len();

    let mut best: Option<(String, u32, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << k) {
        // Signs under this choice of loop reversals.
        let mut signs = d.crossings().clone();
        for (li, l) in loops.iter().enumerate() {
            if mask & (1 << li) == 0 {
                continue;
            }
            let mut count: BTreeMap<CrossingId, u8> = BTreeMap::new();
            for p in &l.passages {
                *count.entry(p.crossing).or_default() += 1;
            }
            for (id, c) in count {
                if c == 1 {
                    if let Some(s) = signs.get_mut(&id) {
                        *s = s.flip();
                    }
                }
            }
        }
        let mut numbering = Numbering {
            ids: BTreeMap::new(),
            next: 0,
        };
        let mut head = format!("{} {{", d.mode().keyword());
        for a in &arcs {
            head.push_str(" arc ");
            head.push_str(&a.label);
            head.push(':');
            numbering.render_passages(&a.passages, &signs, &mut head);
            head.push_str(" ;");
        }
        let candidate = best_loop_order(&loops, mask, &signs, numbering, head);
        let reversals = mask.count_ones();
        let better = match &best {
            None => true,
            Some((key, revs, rots)) => (&candidate.0, reversals, &candidate.1) < (key, *revs, rots),
        };
        if better {
            best = Some((candidate.0, reversals, candidate.1));
        }
    }
    let (key, reversals, _) = best.expect("at least one candidate");
    CanonicalForm {
        key,
        sign: if reversals % 2 == 0 { 1 } else { -1 },
    }
}

/// Lexicographically least concatenation of loop segments for fixed
/// signs. Segments never prefix one another, so a greedy choice that
/// branches only on exact ties is optimal. Returns the key and the
/// rotation offsets used, in placement order.
fn best_loop_order(
    loops: &[&crate::diagram::Component],
    mask: u32,
    signs: &BTreeMap<CrossingId, CrossingSign>,
    numbering: Numbering,
    head: String,
) -> (String, Vec<usize>) {
    struct State {
        text: String,
        numbering: Numbering,
        remaining: Vec<usize>,
        rotations: Vec<usize>,
    }
    let mut frontier = vec![State {
        text: head,
        numbering,
        remaining: (0..loops.len()).collect(),
        rotations: vec![],
    }];
    while frontier[0].remaining.iter().len() > 0 {
        let mut next_states: Vec<State> = Vec::new();
        let mut best_segment: Option<String> = None;
        for st in &frontier {
            for &li in &st.remaining {
                let l = loops[li];
                let reversed = mask & (1 << li) != 0;
                let len = l.passages.len().max(1);
                for rot in 0..len {
                    let variant = loop_variant(&l.passages, reversed, rot);
                    let mut numbering = Numbering {
                        ids: st.numbering.ids.clone(),
                        next: st.numbering.next,
                    };
                    let mut seg = String::from(" loop:");
                    numbering.render_passages(&variant, signs, &mut seg);
                    if let Some(s) = l.surgery.filter(|s| !s.is_default()) {
                        seg.push_str(&format!(" {s}"));
                    }
                    seg.push_str(" ;");
                    let cmp = best_segment.as_ref().map(|b| seg.cmp(b));
                    if matches!(cmp, Some(std::cmp::Ordering::Greater)) {
                        continue;
                    }
                    if matches!(cmp, None | Some(std::cmp::Ordering::Less)) {
                        best_segment = Some(seg.clone());
                        next_states.clear();
                    }
                    let mut rotations = st.rotations.clone();
                    rotations.push(rot);
                    next_states.push(State {
                        text: format!("{}{}", st.text, seg),
                        numbering,
                        remaining: st.remaining.iter().copied().filter(|&x| x != li).collect(),
                        rotations,
                    });
                }
            }
        }
        // Identical texts with identical numbering state are interchangeable.
        next_states.sort_by(|a, b| a.rotations.cmp(&b.rotations));
        next_states.dedup_by(|a, b| a.text == b.text && a.remaining == b.remaining);
        frontier = next_states;
    }
    let best = frontier
        .into_iter()
        .min_by(|a, b| a.rotations.cmp(&b.rotations))
        .expect("non-empty frontier");
    (format!("{} }}", best.text), best.rotations)
}
