use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ComponentKind, CrossingId, Diagram, Mode, Role};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Location {
    pub label: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub message: String,
    pub location: Option<Location>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(
                f,
                "{} at {}[{}]: {}",
                self.code, loc.label, loc.index, self.message
            ),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn codes(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.code.as_str()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("; "))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Lists every violated diagram invariant.
pub fn validate(d: &Diagram) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |code: &str, message: String, location: Option<Location>| {
        out.push(Violation {
            code: code.into(),
            message,
            location,
        })
    };

    let count = |k: ComponentKind| d.components().iter().filter(|c| c.kind == k).count();
    let (twin_arcs, knot_arcs) = (count(ComponentKind::TwinArc), count(ComponentKind::KnotArc));
    match d.mode() {
        Mode::Twin if twin_arcs != 2 || knot_arcs != 0 => push(
            "mode-arity",
            format!("a twin needs exactly two twin arcs (found {twin_arcs} twin, {knot_arcs} knot arcs)"),
            None,
        ),
        Mode::TwoKnot if knot_arcs != 1 || twin_arcs != 0 => push(
            "mode-arity",
            format!("a 2-knot needs exactly one arc (found {knot_arcs} knot, {twin_arcs} twin arcs)"),
            None,
        ),
        _ => {}
    }

    let mut seen_labels = BTreeSet::new();
    for c in d.components() {
        if !seen_labels.insert(c.label.as_str()) {
            push(
                "duplicate-label",
                format!("component label {:?} used twice", c.label),
                None,
            );
        }
        if let Some(s) = c.surgery {
            let loc = Some(Location {
                label: c.label.clone(),
                index: 0,
            });
            if c.kind.is_arc() {
                push(
                    "surgery-on-arc",
                    format!("arc {} carries surgery label {s}", c.label),
                    loc,
                );
            } else if gcd(s.slope.0, s.slope.1) != 1 {
                push(
                    "surgery-slope",
                    format!("slope {}/{} is not reduced", s.slope.0, s.slope.1),
                    loc,
                );
            }
        }
    }

    let mut roles: BTreeMap<CrossingId, Vec<(Role, Location)>> = BTreeMap::new();
    for c in d.components() {
        for (i, p) in c.passages.iter().enumerate() {
            roles.entry(p.crossing).or_default().push((
                p.role,
                Location {
                    label: c.label.clone(),
                    index: i,
                },
            ));
        }
    }
    for (id, uses) in &roles {
        if !d.crossings().contains_key(id) {
            push(
                "unknown-crossing",
                format!("passage references crossing {id}, which has no sign"),
                Some(uses[0].1.clone()),
            );
            continue;
        }
        let overs = uses.iter().filter(|(r, _)| *r == Role::Over).count();
        let unders = uses.len() - overs;
        if overs != 1 || unders != 1 {
            let message = match (overs, unders) {
                (1, 0) => format!("crossing {id} lacks an under passage"),
                (0, 1) => format!("crossing {id} lacks an over passage"),
                _ => format!("crossing {id} has {overs} over and {unders} under passages"),
            };
            push("role-pairing", message, Some(uses[0].1.clone()));
        }
    }
    for id in d.crossings().keys() {
        if !roles.contains_key(id) {
            push(
                "role-pairing",
                format!("crossing {id} has no passages"),
                None,
            );
        }
    }

    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse, Component, CrossingSign, Passage, Surgery};

    #[test]
    fn standard_twin_is_valid() {
        assert!(validate(&Diagram::standard_twin()).is_empty());
    }

    #[test]
    fn double_over_is_role_pairing() {
        let d = Diagram::new(
            Mode::Twin,
            vec![
                Component::twin_arc("A", vec![Passage::over(1)]),
                Component::twin_arc("B", vec![Passage::over(1)]),
            ],
            [(CrossingId(1), CrossingSign::Positive)].into(),
        );
        let report = validate(&d);
        assert_eq!(report.codes(), vec!["role-pairing"]);
    }

    #[test]
    fn surgery_on_arc_flagged() {
        let mut a = Component::twin_arc("A", vec![]);
        a.surgery = Some(Surgery::DEFAULT);
        let d = Diagram::new(
            Mode::Twin,
            vec![a, Component::twin_arc("B", vec![])],
            Default::default(),
        );
        assert_eq!(validate(&d).codes(), vec!["surgery-on-arc"]);
    }

    #[test]
    fn arity_and_slope_checks() {
        let one_arc = parse("twin { arc A: ; }").unwrap();
        assert_eq!(validate(&one_arc).codes(), vec!["mode-arity"]);
        let knot = parse("knot { arc K: O1+ U1+ ; }").unwrap();
        assert!(validate(&knot).is_empty());
        let two = parse("knot { arc K: ; arc J: ; }").unwrap();
        assert_eq!(validate(&two).codes(), vec!["mode-arity"]);
        let slope = parse("twin { arc A: ; arc B: ; loop T: (1, 2/4) ; }").unwrap();
        assert_eq!(validate(&slope).codes(), vec!["surgery-slope"]);
        let dup = parse("twin { arc A: ; arc A: ; }").unwrap();
        assert_eq!(validate(&dup).codes(), vec!["duplicate-label"]);
    }

    #[test]
    fn dangling_sign_entry() {
        let d = Diagram::new(
            Mode::Twin,
            vec![
                Component::twin_arc("A", vec![]),
                Component::twin_arc("B", vec![]),
            ],
            [(CrossingId(4), CrossingSign::Negative)].into(),
        );
        assert_eq!(validate(&d).codes(), vec!["role-pairing"]);
    }
}
