//! Skein recursion for the twin invariant and Giller's polynomial.
//!
//! A node is simplified, tested against the base cases, looked up in the
//! memo by canonical key, and otherwise split at one eligible crossing:
//!
//! ```text
//! I(+) = I(-) + m * I(0)
//! ```
//!
//! where `m` is the configured multiplier (default `t - t^-1`).

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::diagram::{
    validate, Component, CrossingClass, CrossingId, CrossingSign, Diagram, DiagramError, Mode,
    ValidationReport,
};
use crate::laurent::LaurentPoly;
use crate::moves::{canonicalize, simplify, terminal_kind, Terminal};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Descending,
    FirstEligible,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "descending" => Ok(Self::Descending),
            "first_eligible" | "first-eligible" => Ok(Self::FirstEligible),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinConfig {
    pub multiplier: LaurentPoly,
    pub depth_budget: usize,
    pub strategy: Strategy,
    pub emit_trace: bool,
    pub memo: bool,
    pub parallel: bool,
}

impl Default for SkeinConfig {
    fn default() -> Self {
        Self {
            multiplier: LaurentPoly::t_minus_t_inv(),
            depth_budget: 64,
            strategy: Strategy::Descending,
            emit_trace: false,
            memo: true,
            parallel: false,
        }
    }
}

impl SkeinConfig {
    pub fn with_trace(mut self) -> Self {
        self.emit_trace = true;
        self
    }

    pub fn without_memo(mut self) -> Self {
        self.memo = false;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("loops with non-default surgery labels: {}", .0.join(", "))]
    NonDefaultSurgery(Vec<String>),
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("crossing {0} is a ribbon intersection between the two arcs")]
    UnsupportedRibbonIntersection(CrossingId),
    #[error("crossing {0} involves only loops")]
    UnsupportedLoopSmoothing(CrossingId),
    #[error("no eligible crossing")]
    NoEligibleCrossing,
    #[error("result carries no trace")]
    TraceAbsent,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Value(LaurentPoly),
    Unresolved(String),
}

impl Outcome {
    pub fn value(&self) -> Option<&LaurentPoly> {
        match self {
            Outcome::Value(v) => Some(v),
            Outcome::Unresolved(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes_expanded: usize,
    pub memo_hits: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Terminal(Terminal),
    Unresolved(String),
    Crossing { id: CrossingId, sign: CrossingSign },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    Switch,
    Smooth,
}

/// One node of the resolution tree. `value` is this node's own value;
/// a memo hit copies the subtree recorded for its canonical
/// representative and sets `memo_sign`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNode {
    pub key: String,
    pub kind: NodeKind,
    pub loops: usize,
    pub value: Option<LaurentPoly>,
    pub memo_sign: Option<i8>,
    pub children: Vec<(Edge, LaurentPoly, TraceNode)>,
}

impl TraceNode {
    pub fn leaves(&self) -> Vec<&TraceNode> {
        if self.children.is_empty() {
            return vec![self];
        }
        self.children
            .iter()
            .flat_map(|(_, _, n)| n.leaves())
            .collect()
    }

    /// Leaves paired with the product of edge coefficients leading to them.
    pub fn weighted_leaves(&self) -> Vec<(LaurentPoly, &TraceNode)> {
        if self.children.is_empty() {
            return vec![(LaurentPoly::one(), self)];
        }
        let mut out = Vec::new();
        for (_, c, n) in &self.children {
            for (w, leaf) in n.weighted_leaves() {
                out.push((c * &w, leaf));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("key".into(), json!(self.key));
        match &self.kind {
            NodeKind::Terminal(t) => {
                obj.insert("terminal".into(), json!(t));
            }
            NodeKind::Unresolved(reason) => {
                obj.insert("terminal".into(), json!("unresolved"));
                obj.insert("reason".into(), json!(reason));
            }
            NodeKind::Crossing { id, sign } => {
                obj.insert("crossing".into(), json!(id.0));
                obj.insert("sign".into(), json!(sign.symbol().to_string()));
            }
        }
        obj.insert("loops".into(), json!(self.loops));
        obj.insert(
            "value".into(),
            self.value
                .as_ref()
                .map_or(serde_json::Value::Null, |v| json!(v.to_string())),
        );
        if let Some(s) = self.memo_sign {
            obj.insert("memo_sign".into(), json!(s));
        }
        let children: Vec<_> = self
            .children
            .iter()
            .map(
                |(e, c, n)| json!({ "edge": e, "coefficient": c.to_string(), "node": n.to_json() }),
            )
            .collect();
        obj.insert("children".into(), json!(children));
        serde_json::Value::Object(obj)
    }

    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("digraph skein {\n  node [shape=box, fontname=\"monospace\"];\n");
        let mut next = 0usize;
        self.write_dot(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn write_dot(&self, out: &mut String, next: &mut usize) -> usize {
        let me = *next;
        *next += 1;
        let head = match &self.kind {
            NodeKind::Terminal(Terminal::Standard) => "standard".to_string(),
            NodeKind::Terminal(Terminal::Split) => "split".to_string(),
            NodeKind::Unresolved(r) => format!("unresolved: {r}"),
            NodeKind::Crossing { id, sign } => format!("crossing {}{}", id.0, sign.symbol()),
        };
        let value = self
            .value
            .as_ref()
            .map_or("?".to_string(), ToString::to_string);
        let label = format!("{head}\\nloops {}\\nI = {value}", self.loops).replace('"', "\\\"");
        let _ = writeln!(out, "  n{me} [label=\"{label}\"];");
        for (edge, coeff, child) in &self.children {
            let id = child.write_dot(out, next);
            let text = match edge {
                Edge::Switch => "switch".to_string(),
                Edge::Smooth => format!("smooth ×({coeff})"),
            };
            let _ = writeln!(out, "  n{me} -> n{id} [label=\"{text}\"];");
        }
        me
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinResult {
    pub outcome: Outcome,
    pub trace: Option<TraceNode>,
    pub stats: Stats,
}

impl SkeinResult {
    pub fn value(&self) -> Option<&LaurentPoly> {
        self.outcome.value()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFormat {
    Json,
    Dot,
}

impl std::str::FromStr for TraceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "dot" => Ok(Self::Dot),
            other => Err(format!("unknown trace format {other:?}")),
        }
    }
}

pub fn export_trace(r: &SkeinResult, format: TraceFormat) -> Result<String, SkeinError> {
    let trace = r.trace.as_ref().ok_or(SkeinError::TraceAbsent)?;
    Ok(match format {
        TraceFormat::Json => serde_json::to_string_pretty(&trace.to_json()).expect("json"),
        TraceFormat::Dot => trace.to_dot(),
    })
}

// ---------------------------------------------------------------------------
// Local operations

/// Exchanges over and under at `id` and flips its sign.
pub fn switch_crossing(d: &Diagram, id: CrossingId) -> Result<Diagram, SkeinError> {
    let (o, u) = d.locate(id)?;
    let mut out = d.clone();
    for slot in [o, u] {
        let p = &mut out.components_mut()[slot.component].passages[slot.index];
        p.role = p.role.flip();
    }
    let s = out
        .crossings_mut()
        .get_mut(&id)
        .expect("located crossing has a sign");
    *s = s.flip();
    Ok(out)
}

/// Index of the second twin arc, which the skein steps read from the
/// negative marker to the positive one so that the two arcs form a
/// single oriented curve.
fn reversed_arc(d: &Diagram) -> Option<usize> {
    match d.mode() {
        Mode::Twin => d.arcs().nth(1).map(|(i, _)| i),
        Mode::TwoKnot => None,
    }
}

/// Sign of `id` with the second twin arc read backwards; this is the sign
/// the skein relation uses.
pub fn skein_sign(d: &Diagram, id: CrossingId) -> Option<CrossingSign> {
    let s = d.sign(id)?;
    let on_reversed = match (reversed_arc(d), d.locate(id)) {
        (Some(b), Ok((x, y))) => (x.component == b) != (y.component == b),
        _ => false,
    };
    Some(if on_reversed { s.flip() } else { s })
}

/// Oriented smoothing at an arc crossing, the second twin arc read
/// backwards.
pub fn smooth_crossing(d: &Diagram, id: CrossingId) -> Result<Diagram, SkeinError> {
    match d.classify_crossing(id)? {
        CrossingClass::ArcArc => return Err(SkeinError::UnsupportedRibbonIntersection(id)),
        CrossingClass::LoopSelf | CrossingClass::LoopLoop => {
            return Err(SkeinError::UnsupportedLoopSmoothing(id))
        }
        _ => {}
    }
    match reversed_arc(d) {
        Some(b) => Ok(smooth_forward(&d.reverse_component_at(b), id).reverse_component_at(b)),
        None => Ok(smooth_forward(d, id)),
    }
}

fn smooth_forward(d: &Diagram, id: CrossingId) -> Diagram {
    let (a, b) = d.locate(id).expect("classified crossing");
    let label = d.fresh_loop_label();
    let mut out = d.clone();
    out.crossings_mut().remove(&id);
    if a.component == b.component {
        let (i, j) = (a.index.min(b.index), a.index.max(b.index));
        let arc = &mut out.components_mut()[a.component];
        let inner: Vec<_> = arc.passages[i + 1..j].to_vec();
        arc.passages.drain(i..=j);
        out.components_mut()
            .push(Component::surgery_loop(label, inner));
    } else {
        let (arc_slot, loop_slot) = if d.components()[a.component].is_loop() {
            (b, a)
        } else {
            (a, b)
        };
        let lp = &d.components()[loop_slot.component].passages;
        let k = loop_slot.index;
        let spliced: Vec<_> = lp[k + 1..].iter().chain(lp[..k].iter()).copied().collect();
        let arc = &mut out.components_mut()[arc_slot.component];
        arc.passages
            .splice(arc_slot.index..=arc_slot.index, spliced);
        out.components_mut().remove(loop_slot.component);
    }
    out
}

fn eligible(d: &Diagram, id: CrossingId) -> bool {
    matches!(
        d.classify_crossing(id),
        Ok(CrossingClass::ArcSelf | CrossingClass::ArcLoop)
    )
}

/// Components in walk order: arcs by label, then loops as stored.
fn walk_order(d: &Diagram) -> Vec<usize> {
    let mut arcs: Vec<(usize, &Component)> = d.arcs().collect();
    arcs.sort_by(|x, y| x.1.label.cmp(&y.1.label));
    arcs.into_iter()
        .map(|(i, _)| i)
        .chain(d.loops().map(|(i, _)| i))
        .collect()
}

pub fn choose_crossing(d: &Diagram, strategy: Strategy) -> Result<CrossingId, SkeinError> {
    let mut first = None;
    let mut seen = HashSet::new();
    for ci in walk_order(d) {
        for p in &d.components()[ci].passages {
            let fresh = seen.insert(p.crossing);
            if !eligible(d, p.crossing) {
                continue;
            }
            first.get_or_insert(p.crossing);
            if strategy == Strategy::Descending && fresh && !p.is_over() {
                return Ok(p.crossing);
            }
        }
    }
    first.ok_or(SkeinError::NoEligibleCrossing)
}

// ---------------------------------------------------------------------------
// Evaluation

struct MemoEntry {
    value: LaurentPoly,
    trace: Option<TraceNode>,
}

struct Engine<'a> {
    cfg: &'a SkeinConfig,
    memo: Mutex<HashMap<String, MemoEntry>>,
    nodes: AtomicUsize,
    hits: AtomicUsize,
    max_depth: AtomicUsize,
}

struct NodeResult {
    value: Result<LaurentPoly, String>,
    trace: Option<TraceNode>,
}

impl Engine<'_> {
    fn eval(&self, d: &Diagram, depth: usize, path: &[String]) -> NodeResult {
        self.max_depth.fetch_max(depth, Ordering::Relaxed);
        let (s, _) = simplify(d);
        let leaf = |kind: NodeKind, value: Result<LaurentPoly, String>, key: String| NodeResult {
            trace: self.cfg.emit_trace.then(|| TraceNode {
                key,
                kind,
                loops: s.loop_count(),
                value: value.as_ref().ok().cloned(),
                memo_sign: None,
                children: vec![],
            }),
            value,
        };
        if let Some(t) = terminal_kind(&s) {
            let v = match t {
                Terminal::Standard => LaurentPoly::one(),
                Terminal::Split => LaurentPoly::zero(),
            };
            let key = if self.cfg.emit_trace {
                canonicalize(&s).key
            } else {
                String::new()
            };
            return leaf(NodeKind::Terminal(t), Ok(v), key);
        }
        let canon = canonicalize(&s);
        let sign = LaurentPoly::constant(canon.sign as i64);
        if self.cfg.memo {
            if let Some(e) = self.memo.lock().expect("memo lock").get(&canon.key) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                let value = &sign * &e.value;
                let trace = e.trace.clone().map(|mut t| {
                    t.value = Some(value.clone());
                    t.memo_sign = Some(canon.sign);
                    t
                });
                return NodeResult {
                    value: Ok(value),
                    trace,
                };
            }
        }
        if path.contains(&canon.key) {
            return leaf(
                NodeKind::Unresolved("cycle".into()),
                Err("cycle".into()),
                canon.key,
            );
        }
        if depth >= self.cfg.depth_budget {
            let reason = format!("depth budget {} exceeded", self.cfg.depth_budget);
            return leaf(NodeKind::Unresolved(reason.clone()), Err(reason), canon.key);
        }
        let id = match choose_crossing(&s, self.cfg.strategy) {
            Ok(id) => id,
            Err(e) => {
                let reason = if s
                    .crossings()
                    .keys()
                    .any(|&c| matches!(s.classify_crossing(c), Ok(CrossingClass::ArcArc)))
                {
                    format!("{e}: remaining arc crossings are ribbon intersections")
                } else {
                    format!("{e}: remaining crossings involve only loops")
                };
                return leaf(NodeKind::Unresolved(reason.clone()), Err(reason), canon.key);
            }
        };
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let crossing_sign = skein_sign(&s, id).expect("chosen crossing exists");
        let switched = switch_crossing(&s, id).expect("eligible crossing");
        let smoothed = smooth_crossing(&s, id).expect("eligible crossing");
        let mut sub_path = path.to_vec();
        sub_path.push(canon.key.clone());
        let (a, b) = if self.cfg.parallel {
            rayon::join(
                || self.eval(&switched, depth + 1, &sub_path),
                || self.eval(&smoothed, depth + 1, &sub_path),
            )
        } else {
            let a = self.eval(&switched, depth + 1, &sub_path);
            let b = self.eval(&smoothed, depth + 1, &sub_path);
            (a, b)
        };
        let coeff = match crossing_sign {
            CrossingSign::Positive => self.cfg.multiplier.clone(),
            CrossingSign::Negative => -&self.cfg.multiplier,
        };
        let value = match (&a.value, &b.value) {
            (Ok(x), Ok(y)) => Ok(x + &(&coeff * y)),
            (Err(r), _) | (_, Err(r)) => Err(r.clone()),
        };
        let trace = self.cfg.emit_trace.then(|| TraceNode {
            key: canon.key.clone(),
            kind: NodeKind::Crossing {
                id,
                sign: crossing_sign,
            },
            loops: s.loop_count(),
            value: value.as_ref().ok().cloned(),
            memo_sign: None,
            children: vec![
                (Edge::Switch, LaurentPoly::one(), a.trace.expect("trace on")),
                (Edge::Smooth, coeff, b.trace.expect("trace on")),
            ],
        });
        if let (true, Ok(v)) = (self.cfg.memo, &value) {
            self.memo
                .lock()
                .expect("memo lock")
                .entry(canon.key)
                .or_insert(MemoEntry {
                    value: &sign * v,
                    trace: trace.clone(),
                });
        }
        NodeResult { value, trace }
    }
}

/// Checks that `d` may be evaluated at all.
pub fn check_evaluable(d: &Diagram) -> Result<(), SkeinError> {
    let report = validate(d);
    if !report.is_empty() {
        return Err(SkeinError::Invalid(report));
    }
    let odd = d.nondefault_surgery_loops();
    if !odd.is_empty() {
        return Err(SkeinError::NonDefaultSurgery(
            odd.into_iter().map(String::from).collect(),
        ));
    }
    Ok(())
}

pub fn evaluate(d: &Diagram, cfg: &SkeinConfig) -> Result<SkeinResult, SkeinError> {
    if cfg.depth_budget == 0 {
        return Err(SkeinError::Config("depth budget must be at least 1"));
    }
    if cfg.multiplier.is_zero() {
        return Err(SkeinError::Config("multiplier must be nonzero"));
    }
    check_evaluable(d)?;
    let engine = Engine {
        cfg,
        memo: Mutex::new(HashMap::new()),
        nodes: AtomicUsize::new(0),
        hits: AtomicUsize::new(0),
        max_depth: AtomicUsize::new(0),
    };
    let r = engine.eval(d, 0, &[]);
    Ok(SkeinResult {
        outcome: match r.value {
            Ok(v) => Outcome::Value(v),
            Err(reason) => Outcome::Unresolved(reason),
        },
        trace: r.trace,
        stats: Stats {
            nodes_expanded: engine.nodes.into_inner(),
            memo_hits: engine.hits.into_inner(),
            max_depth: engine.max_depth.into_inner(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse, serialize, Passage};

    fn d(s: &str) -> Diagram {
        parse(s).unwrap()
    }

    fn value(s: &str) -> Option<LaurentPoly> {
        evaluate(&d(s), &SkeinConfig::default())
            .unwrap()
            .outcome
            .value()
            .cloned()
    }

    #[test]
    fn switch_is_an_involution() {
        let x = d("twin { arc A: O1+ U1+ ; arc B: ; }");
        let y = switch_crossing(&x, CrossingId(1)).unwrap();
        assert_eq!(serialize(&y), "twin { arc A: U1- O1- ; arc B: ; }");
        assert_eq!(switch_crossing(&y, CrossingId(1)).unwrap(), x);
        assert!(switch_crossing(&x, CrossingId(9)).is_err());
    }

    #[test]
    fn smoothing_examples() {
        let x = d("twin { arc A: O1+ U2+ O3+ U1+ O2+ U3+ ; arc B: ; }");
        let y = smooth_crossing(&x, CrossingId(1)).unwrap();
        assert_eq!(
            y.component("A").unwrap().passages,
            vec![Passage::over(2), Passage::under(3)]
        );
        assert_eq!(
            y.component("L1").unwrap().passages,
            vec![Passage::under(2), Passage::over(3)]
        );

        let merge = d("twin { arc A: O1+ ; arc B: ; loop T: U1+ ; }");
        let y = smooth_crossing(&merge, CrossingId(1)).unwrap();
        assert_eq!(serialize(&y), "twin { arc A: ; arc B: ; }");

        let splice = d("twin { arc A: O5+ O1+ U5+ ; arc B: ; loop T: O7+ U1+ U7+ ; }");
        let y = smooth_crossing(&splice, CrossingId(1)).unwrap();
        assert_eq!(
            y.component("A").unwrap().passages,
            vec![
                Passage::over(5),
                Passage::under(7),
                Passage::over(7),
                Passage::under(5)
            ]
        );

        let ribbon = d("twin { arc A: O1+ ; arc B: U1+ ; }");
        assert_eq!(
            smooth_crossing(&ribbon, CrossingId(1)),
            Err(SkeinError::UnsupportedRibbonIntersection(CrossingId(1)))
        );
        let loops = d("twin { arc A: ; arc B: ; loop S: O1+ ; loop T: U1+ ; }");
        assert_eq!(
            smooth_crossing(&loops, CrossingId(1)),
            Err(SkeinError::UnsupportedLoopSmoothing(CrossingId(1)))
        );
    }

    #[test]
    fn choose_examples() {
        let x = d("twin { arc A: O2+ U1+ O1+ U2+ ; arc B: ; }");
        assert_eq!(
            choose_crossing(&x, Strategy::Descending).unwrap(),
            CrossingId(1)
        );
        assert_eq!(
            choose_crossing(&x, Strategy::FirstEligible).unwrap(),
            CrossingId(2)
        );
        let desc = d("twin { arc A: O1+ U1+ ; arc B: ; }");
        assert_eq!(
            choose_crossing(&desc, Strategy::Descending).unwrap(),
            CrossingId(1)
        );
        let ribbon = d("twin { arc A: O1+ ; arc B: U1+ ; }");
        assert_eq!(
            choose_crossing(&ribbon, Strategy::Descending),
            Err(SkeinError::NoEligibleCrossing)
        );
    }

    #[test]
    fn base_cases() {
        assert_eq!(
            value("twin { arc A: ; arc B: ; }"),
            Some(LaurentPoly::one())
        );
        assert_eq!(
            value("twin { arc A: ; arc B: ; loop T: ; }"),
            Some(LaurentPoly::zero())
        );
        assert_eq!(value("knot { arc K: ; }"), Some(LaurentPoly::one()));
    }

    #[test]
    fn spun_trefoil() {
        let v = value("twin { arc A: O1+ U2+ O3+ U1+ O2+ U3+ ; arc B: ; }").unwrap();
        assert_eq!(v.to_string(), "t^-2 - 1 + t^2");
    }

    #[test]
    fn refuses_nondefault_surgery() {
        let x = d("twin { arc A: ; arc B: ; loop T: (1, 0/1) ; }");
        assert!(matches!(
            evaluate(&x, &SkeinConfig::default()),
            Err(SkeinError::NonDefaultSurgery(_))
        ));
    }

    #[test]
    fn ribbon_only_is_unresolved() {
        let x = d("twin { arc A: O1+ U2+ ; arc B: O2+ U1+ ; }");
        let r = evaluate(&x, &SkeinConfig::default().with_trace()).unwrap();
        assert!(matches!(r.outcome, Outcome::Unresolved(_)));
        let leaves = r.trace.as_ref().unwrap().leaves();
        assert!(leaves
            .iter()
            .any(|n| matches!(n.kind, NodeKind::Unresolved(_))));
    }

    #[test]
    fn trace_export() {
        let r = evaluate(
            &Diagram::standard_twin(),
            &SkeinConfig::default().with_trace(),
        )
        .unwrap();
        let t = r.trace.as_ref().unwrap();
        assert!(t.children.is_empty());
        let js = export_trace(&r, TraceFormat::Json).unwrap();
        assert!(js.contains("\"terminal\": \"standard\""));
        let dot = export_trace(&r, TraceFormat::Dot).unwrap();
        assert!(dot.starts_with("digraph"));
        let bare = evaluate(&Diagram::standard_twin(), &SkeinConfig::default()).unwrap();
        assert_eq!(
            export_trace(&bare, TraceFormat::Json),
            Err(SkeinError::TraceAbsent)
        );
    }
}
