//! Twins built from classical knots and ribbon 2-knots.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alexander::{CodeError, LinkCode};
use crate::diagram::{
    parse_document, Component, ComponentKind, CrossingId, CrossingSign, Diagram, Mode, Passage,
    Role,
};

/// Gauss code of a classical knot: one closed strand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalKnotCode {
    pub passages: Vec<Passage>,
    pub crossings: BTreeMap<CrossingId, CrossingSign>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("unknown knot {0:?}")]
    UnknownKnot(String),
    #[error("expected a {expected} diagram")]
    WrongMode { expected: &'static str },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("{0}")]
    Table(String),
}

impl ClassicalKnotCode {
    pub fn unknot() -> Self {
        Self::default()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        self.to_link().validate()
    }

    pub fn to_link(&self) -> LinkCode {
        LinkCode::new(vec![self.passages.clone()], self.crossings.clone())
    }

    pub fn from_link(link: &LinkCode) -> Result<Self, CodeError> {
        if link.components.len() != 1 {
            return Err(CodeError::NotAKnot);
        }
        let k = Self {
            passages: link.components[0].clone(),
            crossings: link.crossings.clone(),
        };
        k.validate()?;
        Ok(k)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        Self {
            passages: self
                .passages
                .iter()
                .map(|p| p.with_role(p.role.flip()))
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|(id, s)| (*id, s.flip()))
                .collect(),
        }
    }

    /// The code as a single loop of a knot block.
    pub fn to_diagram(&self) -> Diagram {
        Diagram::new(
            Mode::TwoKnot,
            vec![Component::new(
                ComponentKind::Loop,
                "K",
                self.passages.clone(),
            )],
            self.crossings.clone(),
        )
    }

    pub fn from_diagram(d: &Diagram) -> Result<Self, CodeError> {
        match d.components() {
            [c] if c.is_loop() => {
                let k = Self {
                    passages: c.passages.clone(),
                    crossings: d.crossings().clone(),
                };
                k.validate()?;
                Ok(k)
            }
            _ => Err(CodeError::NotAKnot),
        }
    }
}

impl fmt::Display for ClassicalKnotCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.passages {
            write!(
                f,
                "{}{}{}",
                p.role.symbol(),
                p.crossing.0,
                self.crossings[&p.crossing].symbol()
            )?;
        }
        Ok(())
    }
}

impl FromStr for ClassicalKnotCode {
    type Err = CodeError;

    /// Reads compact codes such as `O1+U2+O3+U1+O2+U3+`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        let mut k = Self::default();
        while let Some(r) = chars.next() {
            let role = match r {
                'O' => Role::Over,
                'U' => Role::Under,
                other => return Err(CodeError::Malformed(format!("unexpected {other:?}"))),
            };
            let mut digits = String::new();
            while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(*c);
                chars.next();
            }
            let id = CrossingId(
                digits
                    .parse()
                    .map_err(|_| CodeError::Malformed("missing crossing number".into()))?,
            );
            let sign = match chars.next() {
                Some('+') => CrossingSign::Positive,
                Some('-') => CrossingSign::Negative,
                _ => return Err(CodeError::Malformed(format!("crossing {id} lacks a sign"))),
            };
            if k.crossings.insert(id, sign).is_some_and(|old| old != sign) {
                return Err(CodeError::Malformed(format!("crossing {id} has two signs")));
            }
            k.passages.push(Passage { crossing: id, role });
        }
        k.validate()?;
        Ok(k)
    }
}

/// Spins `k` about a plane cutting it at `cut_at`: the opened strand
/// becomes the first twin arc and the second arc is crossingless.
pub fn artin_spin(k: &ClassicalKnotCode, cut_at: usize) -> Diagram {
    let mut passages = k.passages.clone();
    if !passages.is_empty() {
        let n = passages.len();
        passages.rotate_left(cut_at % n);
    }
    Diagram::new(
        Mode::Twin,
        vec![
            Component::twin_arc("A", passages),
            Component::twin_arc("B", vec![]),
        ],
        k.crossings.clone(),
    )
}

/// Pairs a 2-knot with an unknotted sphere through the two marked points.
pub fn twin_closure(k2: &Diagram) -> Result<Diagram, ConstructionError> {
    if k2.mode() != Mode::TwoKnot {
        return Err(ConstructionError::WrongMode { expected: "knot" });
    }
    let mut components = Vec::new();
    for c in k2.components() {
        if c.kind == ComponentKind::KnotArc {
            components.push(Component::twin_arc("A", c.passages.clone()));
            components.push(Component::twin_arc("B", vec![]));
        }
    }
    components.extend(k2.loops().map(|(_, c)| c.clone()));
    Ok(Diagram::new(Mode::Twin, components, k2.crossings().clone()))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Copy2 {
    Forward,
    Backward,
}

/// Doubles every strand of a 2-knot diagram into the boundary of a thin
/// band: each crossing of sign `s` becomes four, with sign `s` where both
/// copies run the same way and `-s` where exactly one runs backward. The
/// arc's doubled boundary becomes the first twin arc; each loop becomes
/// two loops.
pub fn connect_sum_twin(k0: &Diagram) -> Result<Diagram, ConstructionError> {
    use Copy2::*;
    if k0.mode() != Mode::TwoKnot {
        return Err(ConstructionError::WrongMode { expected: "knot" });
    }
    let mut ids: BTreeMap<(CrossingId, Copy2, Copy2), CrossingId> = BTreeMap::new();
    let mut crossings = BTreeMap::new();
    for (&id, &s) in k0.crossings() {
        for over in [Forward, Backward] {
            for under in [Forward, Backward] {
                let new = CrossingId(ids.len() as u32 + 1);
                ids.insert((id, over, under), new);
                crossings.insert(new, if over == under { s } else { s.flip() });
            }
        }
    }
    // Order in which a copy meets the two copies of the other band.
    let meet = |p: Passage, mine: Copy2| -> Vec<Passage> {
        let positive = k0.sign(p.crossing) == Some(CrossingSign::Positive);
        let first_forward = match (p.role, mine) {
            (Role::Over, Forward) | (Role::Under, Backward) => positive,
            (Role::Over, Backward) | (Role::Under, Forward) => !positive,
        };
        let order = if first_forward {
            [Forward, Backward]
        } else {
            [Backward, Forward]
        };
        order
            .iter()
            .map(|&other| {
                let key = match p.role {
                    Role::Over => (p.crossing, mine, other),
                    Role::Under => (p.crossing, other, mine),
                };
                Passage {
                    crossing: ids[&key],
                    role: p.role,
                }
            })
            .collect()
    };
    let double = |passages: &[Passage]| -> (Vec<Passage>, Vec<Passage>) {
        let f = passages.iter().flat_map(|&p| meet(p, Forward)).collect();
        let b = passages
            .iter()
            .rev()
            .flat_map(|&p| meet(p, Backward))
            .collect();
        (f, b)
    };
    let mut components = Vec::new();
    for c in k0.components() {
        let (f, b) = double(&c.passages);
        match c.kind {
            ComponentKind::Loop => {
                let mut fl = c.clone();
                fl.passages = f;
                let mut bl = c.clone();
                bl.label = format!("{}'", c.label);
                bl.passages = b;
                components.push(fl);
                components.push(bl);
            }
            _ => {
                components.push(Component::twin_arc("A", f.into_iter().chain(b).collect()));
                components.push(Component::twin_arc("B", vec![]));
            }
        }
    }
    Ok(Diagram::new(Mode::Twin, components, crossings))
}

/// Closure of a braid word on `strands` strands. Letter `i` is the
/// positive generator exchanging positions `i` and `i + 1` (1-based) with
/// the strand moving right passing over; `-i` is its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> LinkCode {
    let mut crossings = BTreeMap::new();
    for (k, &g) in word.iter().enumerate() {
        let s = if g > 0 {
            CrossingSign::Positive
        } else {
            CrossingSign::Negative
        };
        crossings.insert(CrossingId(k as u32 + 1), s);
    }
    let mut visited = vec![false; strands];
    let mut components = Vec::new();
    for start in 0..strands {
        if visited[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut pos = start;
        loop {
            visited[pos] = true;
            for (k, &g) in word.iter().enumerate() {
                let i = g.unsigned_abs() as usize - 1;
                let id = CrossingId(k as u32 + 1);
                let moving_right_over = g > 0;
                if pos == i {
                    let role = if moving_right_over {
                        Role::Over
                    } else {
                        Role::Under
                    };
                    comp.push(Passage { crossing: id, role });
                    pos = i + 1;
                } else if pos == i + 1 {
                    let role = if moving_right_over {
                        Role::Under
                    } else {
                        Role::Over
                    };
                    comp.push(Passage { crossing: id, role });
                    pos = i;
                }
            }
            if pos == start {
                break;
            }
        }
        components.push(comp);
    }
    LinkCode::new(components, crossings)
}

/// Renumbers crossings by first appearance.
pub fn renumber_code(k: &ClassicalKnotCode) -> ClassicalKnotCode {
    let mut ids: BTreeMap<CrossingId, CrossingId> = BTreeMap::new();
    let mut out = ClassicalKnotCode::default();
    for p in &k.passages {
        let n = ids.len() as u32 + 1;
        let id = *ids.entry(p.crossing).or_insert(CrossingId(n));
        out.crossings.insert(id, k.crossings[&p.crossing]);
        out.passages.push(Passage {
            crossing: id,
            role: p.role,
        });
    }
    out
}

pub const KNOT_TABLE: &str = include_str!("../fixtures/knots.table");

/// Names in the bundled table, in file order.
pub fn table_names() -> Vec<String> {
    load_table(KNOT_TABLE)
        .expect("bundled table parses")
        .into_iter()
        .map(|(n, _)| n)
        .collect()
}

pub fn table_knot(name: &str) -> Result<ClassicalKnotCode, ConstructionError> {
    load_table(KNOT_TABLE)?
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, k)| k)
        .ok_or_else(|| ConstructionError::UnknownKnot(name.to_string()))
}

/// Reads a knot table: named `knot` blocks holding one loop each.
pub fn load_table(text: &str) -> Result<Vec<(String, ClassicalKnotCode)>, ConstructionError> {
    let blocks = parse_document(text).map_err(|e| ConstructionError::Table(e.to_string()))?;
    blocks
        .into_iter()
        .map(|b| {
            let name = b
                .name
                .ok_or_else(|| ConstructionError::Table("table entry without a name".into()))?;
            let k = if b.diagram.components().is_empty() {
                ClassicalKnotCode::unknot()
            } else {
                ClassicalKnotCode::from_diagram(&b.diagram)?
            };
            Ok((name, k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::conway;
    use crate::diagram::{serialize, validate};
    use crate::laurent::LaurentPoly;
    use crate::moves::is_standard_twin;

    fn z(s: &str) -> LaurentPoly {
        LaurentPoly::parse_in(s, "z").unwrap()
    }

    #[test]
    fn compact_code_round_trip() {
        let k: ClassicalKnotCode = "O1+U2+O3+U1+O2+U3+".parse().unwrap();
        assert_eq!(k.to_string(), "O1+U2+O3+U1+O2+U3+");
        assert!("O1+U1-".parse::<ClassicalKnotCode>().is_err());
        assert!("O1+O1+".parse::<ClassicalKnotCode>().is_err());
    }

    #[test]
    fn spin_of_unknot_is_standard() {
        assert_eq!(
            artin_spin(&ClassicalKnotCode::unknot(), 0),
            Diagram::standard_twin()
        );
        let k: ClassicalKnotCode = "O1+U2+O3+U1+O2+U3+".parse().unwrap();
        let d = artin_spin(&k, 2);
        let first: Vec<_> = d
            .component("A")
            .unwrap()
            .passages
            .iter()
            .take(2)
            .copied()
            .collect();
        assert_eq!(first, vec![Passage::over(3), Passage::under(1)]);
        assert_eq!(
            serialize(&d),
            "twin { arc A: O1+ U2+ O3+ U1+ O2+ U3+ ; arc B: ; }"
        );
    }

    #[test]
    fn braid_closures() {
        let tre = braid_closure(2, &[1, 1, 1]);
        assert_eq!(tre.components.len(), 1);
        assert_eq!(conway(&tre).unwrap(), z("1 + z^2"));
        let fig8 = braid_closure(3, &[1, -2, 1, -2]);
        assert_eq!(conway(&fig8).unwrap(), z("1 - z^2"));
        let hopf = braid_closure(2, &[1, 1]);
        assert_eq!(hopf.components.len(), 2);
        assert_eq!(conway(&hopf).unwrap(), z("z"));
    }

    #[test]
    fn closure_and_connect_sum() {
        let k2 = crate::diagram::parse("knot { arc K: O1+ U2- U1+ O2- ; }").unwrap();
        let tw = twin_closure(&k2).unwrap();
        assert_eq!(tw.crossings(), k2.crossings());
        assert!(validate(&tw).is_empty());

        let cs = connect_sum_twin(&k2).unwrap();
        assert_eq!(cs.crossing_count(), 4 * k2.crossing_count());
        assert!(validate(&cs).is_empty());

        let empty = crate::diagram::parse("knot { arc K: ; }").unwrap();
        assert!(is_standard_twin(&connect_sum_twin(&empty).unwrap()));
        assert!(twin_closure(&Diagram::standard_twin()).is_err());
    }

    #[test]
    fn table_has_unknot_and_trefoil() {
        assert_eq!(table_knot("unknot").unwrap(), ClassicalKnotCode::unknot());
        assert_eq!(table_knot("3_1").unwrap().to_string(), "O1+U2+O3+U1+O2+U3+");
        assert!(matches!(
            table_knot("9_99"),
            Err(ConstructionError::UnknownKnot(_))
        ));
    }
}
