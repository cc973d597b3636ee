//! Welded Gauss-code presentations of ribbon twins and ribbon 2-knots.
//!
//! A diagram records only its classical crossings. Each component is the
//! ordered list of passages through those crossings; virtual crossings
//! are implicit, so every virtual Reidemeister move (and the welded
//! over-commute) is either an identity or a reordering of passages.
//!
//! Twin arcs are always stored oriented from the `⊕` marker to the `⊖`
//! marker: the first passage of an arc is the one next to `⊕`.

mod genus;
mod text;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use text::{parse, parse_document, parse_lenient, serialize, NamedBlock, ParseError};
pub use validate::{validate, Location, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingId(pub u32);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn flip(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Self::Positive => 1,
            Self::Negative => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Self::Positive => '+',
            Self::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Self {
        match self {
            Self::Over => Self::Under,
            Self::Under => Self::Over,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Self::Over => 'O',
            Self::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: CrossingId,
    #[serde(rename = "strand_role")]
    pub role: Role,
}

impl Passage {
    pub fn over(id: u32) -> Self {
        Self {
            crossing: CrossingId(id),
            role: Role::Over,
        }
    }

    pub fn under(id: u32) -> Self {
        Self {
            crossing: CrossingId(id),
            role: Role::Under,
        }
    }

    pub fn is_over(&self) -> bool {
        self.role == Role::Over
    }

    pub fn with_role(self, role: Role) -> Self {
        Self { role, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    TwinArc,
    KnotArc,
    Loop,
}

impl ComponentKind {
    pub fn is_arc(self) -> bool {
        !matches!(self, Self::Loop)
    }
}

/// Surgery label `(gamma, beta/alpha)` carried by a torus component.
/// Inert metadata: the skein engine only accepts the default `(0, 0/1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surgery {
    pub gamma: i64,
    pub slope: (i64, i64),
}

impl Surgery {
    pub const DEFAULT: Surgery = Surgery {
        gamma: 0,
        slope: (0, 1),
    };

    pub fn is_default(&self) -> bool {
        *self == Self::DEFAULT
    }
}

impl fmt::Display for Surgery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}/{})", self.gamma, self.slope.0, self.slope.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub label: String,
    pub passages: Vec<Passage>,
    pub surgery: Option<Surgery>,
}

impl Component {
    pub fn new(kind: ComponentKind, label: impl Into<String>, passages: Vec<Passage>) -> Self {
        Self {
            kind,
            label: label.into(),
            passages,
            surgery: None,
        }
    }

    pub fn twin_arc(label: impl Into<String>, passages: Vec<Passage>) -> Self {
        Self::new(ComponentKind::TwinArc, label, passages)
    }

    pub fn knot_arc(label: impl Into<String>, passages: Vec<Passage>) -> Self {
        Self::new(ComponentKind::KnotArc, label, passages)
    }

    pub fn surgery_loop(label: impl Into<String>, passages: Vec<Passage>) -> Self {
        Self {
            surgery: Some(Surgery::DEFAULT),
            ..Self::new(ComponentKind::Loop, label, passages)
        }
    }

    pub fn is_loop(&self) -> bool {
        self.kind == ComponentKind::Loop
    }

    /// Index of the passage following `i`, wrapping on loops.
    pub fn next_index(&self, i: usize) -> Option<usize> {
        let n = self.passages.len();
        if i + 1 < n {
            Some(i + 1)
        } else if self.is_loop() && n > 1 {
            Some(0)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Twin,
    TwoKnot,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Self::Twin => "twin",
            Self::TwoKnot => "knot",
        }
    }

    pub fn arc_kind(self) -> ComponentKind {
        match self {
            Self::Twin => ComponentKind::TwinArc,
            Self::TwoKnot => ComponentKind::KnotArc,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingClass {
    ArcSelf,
    ArcArc,
    ArcLoop,
    LoopSelf,
    LoopLoop,
}

/// Where a passage sits: component index and position within it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub component: usize,
    pub index: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("unknown component {0:?}")]
    UnknownLabel(String),
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    mode: Mode,
    components: Vec<Component>,
    crossings: BTreeMap<CrossingId, CrossingSign>,
}

impl Diagram {
    /// Assembles a diagram without checking it; see [`validate`].
    pub fn new(
        mode: Mode,
        components: Vec<Component>,
        crossings: BTreeMap<CrossingId, CrossingSign>,
    ) -> Self {
        Self {
            mode,
            components,
            crossings,
        }
    }

    /// The crossingless twin `twin { arc A: ; arc B: ; }`.
    pub fn standard_twin() -> Self {
        Self::new(
            Mode::Twin,
            vec![
                Component::twin_arc("A", vec![]),
                Component::twin_arc("B", vec![]),
            ],
            BTreeMap::new(),
        )
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn crossings(&self) -> &BTreeMap<CrossingId, CrossingSign> {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn sign(&self, id: CrossingId) -> Option<CrossingSign> {
        self.crossings.get(&id).copied()
    }

    pub fn component(&self, label: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.label == label)
    }

    pub fn component_index(&self, label: &str) -> Option<usize> {
        self.components.iter().position(|c| c.label == label)
    }

    pub fn loop_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_loop()).count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, &Component)> + '_ {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind.is_arc())
    }

    pub fn loops(&self) -> impl Iterator<Item = (usize, &Component)> + '_ {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_loop())
    }

    pub fn passage_at(&self, slot: Slot) -> Passage {
        self.components[slot.component].passages[slot.index]
    }

    /// Every passage slot, grouped by crossing id.
    pub fn occurrences(&self) -> BTreeMap<CrossingId, Vec<Slot>> {
        let mut map: BTreeMap<CrossingId, Vec<Slot>> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (pi, p) in comp.passages.iter().enumerate() {
                map.entry(p.crossing).or_default().push(Slot {
                    component: ci,
                    index: pi,
                });
            }
        }
        map
    }

    /// `(over, under)` slots of a crossing in a valid diagram.
    pub fn locate(&self, id: CrossingId) -> Result<(Slot, Slot), DiagramError> {
        let mut over = None;
        let mut under = None;
        for (ci, comp) in self.components.iter().enumerate() {
            for (pi, p) in comp.passages.iter().enumerate() {
                if p.crossing == id {
                    let slot = Slot {
                        component: ci,
                        index: pi,
                    };
                    match p.role {
                        Role::Over => over = Some(slot),
                        Role::Under => under = Some(slot),
                    }
                }
            }
        }
        match (over, under) {
            (Some(o), Some(u)) if self.crossings.contains_key(&id) => Ok((o, u)),
            _ => Err(DiagramError::UnknownCrossing(id)),
        }
    }

    pub fn classify_crossing(&self, id: CrossingId) -> Result<CrossingClass, DiagramError> {
        let (o, u) = self.locate(id)?;
        let ko = self.components[o.component].kind;
        let ku = self.components[u.component].kind;
        Ok(
            match (ko.is_arc(), ku.is_arc(), o.component == u.component) {
                (true, true, true) => CrossingClass::ArcSelf,
                (true, true, false) => CrossingClass::ArcArc,
                (false, false, true) => CrossingClass::LoopSelf,
                (false, false, false) => CrossingClass::LoopLoop,
                _ => CrossingClass::ArcLoop,
            },
        )
    }

    /// Reverses the orientation of one component. Crossings with exactly
    /// one passage on it change sign.
    pub fn reverse_component(&self, label: &str) -> Result<Diagram, DiagramError> {
        let idx = self
            .component_index(label)
            .ok_or_else(|| DiagramError::UnknownLabel(label.to_string()))?;
        Ok(self.reverse_component_at(idx))
    }

    pub(crate) fn reverse_component_at(&self, idx: usize) -> Diagram {
        let mut out = self.clone();
        let mut on_it: BTreeMap<CrossingId, usize> = BTreeMap::new();
        for p in &out.components[idx].passages {
            *on_it.entry(p.crossing).or_default() += 1;
        }
        for (id, count) in on_it {
            if count == 1 {
                if let Some(s) = out.crossings.get_mut(&id) {
                    *s = s.flip();
                }
            }
        }
        out.components[idx].passages.reverse();
        out
    }

    /// Finest partition of components in which two components sharing a
    /// crossing lie in the same block. Blocks hold component indices in
    /// diagram order and are ordered by their first member.
    pub fn connected_block_indices(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for slots in self.occurrences().values() {
            for pair in slots.windows(2) {
                let a = find(&mut parent, pair[0].component);
                let b = find(&mut parent, pair[1].component);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            blocks.entry(r).or_default().push(i);
        }
        blocks.into_values().collect()
    }

    /// Same partition as [`Self::connected_block_indices`], by label.
    pub fn connected_blocks(&self) -> Vec<Vec<String>> {
        self.connected_block_indices()
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|i| self.components[i].label.clone())
                    .collect()
            })
            .collect()
    }

    /// Canonical text form: arcs then loops, each group sorted by label,
    /// crossings renumbered `1..n` in order of first appearance.
    pub fn normalized(&self) -> Diagram {
        let mut order: Vec<usize> = (0..self.components.len()).collect();
        order.sort_by(|&a, &b| {
            let ca = &self.components[a];
            let cb = &self.components[b];
            (ca.is_loop(), &ca.label).cmp(&(cb.is_loop(), &cb.label))
        });
        let components: Vec<Component> =
            order.iter().map(|&i| self.components[i].clone()).collect();
        Self::new(self.mode, components, self.crossings.clone()).renumbered()
    }

    /// Renumbers crossings `1..n` by first appearance, keeping component order.
    pub fn renumbered(&self) -> Diagram {
        let mut map: BTreeMap<CrossingId, CrossingId> = BTreeMap::new();
        let mut next = 1u32;
        for comp in &self.components {
            for p in &comp.passages {
                map.entry(p.crossing).or_insert_with(|| {
                    let id = CrossingId(next);
                    next += 1;
                    id
                });
            }
        }
        for id in self.crossings.keys() {
            map.entry(*id).or_insert_with(|| {
                let id = CrossingId(next);
                next += 1;
                id
            });
        }
        self.relabeled(|id| map[&id])
    }

    /// Applies an injective crossing relabeling.
    pub fn relabeled(&self, f: impl Fn(CrossingId) -> CrossingId) -> Diagram {
        let components = self
            .components
            .iter()
            .map(|c| Component {
                passages: c
                    .passages
                    .iter()
                    .map(|p| Passage {
                        crossing: f(p.crossing),
                        role: p.role,
                    })
                    .collect(),
                ..c.clone()
            })
            .collect();
        let crossings = self.crossings.iter().map(|(id, s)| (f(*id), *s)).collect();
        Self::new(self.mode, components, crossings)
    }

    /// Removes the listed crossings and all of their passages.
    pub(crate) fn without_crossings(&self, ids: &[CrossingId]) -> Diagram {
        let drop: BTreeSet<CrossingId> = ids.iter().copied().collect();
        let mut out = self.clone();
        for comp in &mut out.components {
            comp.passages.retain(|p| !drop.contains(&p.crossing));
        }
        out.crossings.retain(|id, _| !drop.contains(id));
        out
    }

    pub(crate) fn components_mut(&mut self) -> &mut Vec<Component> {
        &mut self.components
    }

    pub(crate) fn crossings_mut(&mut self) -> &mut BTreeMap<CrossingId, CrossingSign> {
        &mut self.crossings
    }

    /// A loop label not used by any component.
    pub(crate) fn fresh_loop_label(&self) -> String {
        (1..)
            .map(|i| format!("L{i}"))
            .find(|l| self.component(l).is_none())
            .expect("label space is unbounded")
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_empty()
    }

    /// Loops carrying a surgery label other than `(0, 0/1)`.
    pub fn nondefault_surgery_loops(&self) -> Vec<&str> {
        self.components
            .iter()
            .filter(|c| c.surgery.is_some_and(|s| !s.is_default()))
            .map(|c| c.label.as_str())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serialization is infallible")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
