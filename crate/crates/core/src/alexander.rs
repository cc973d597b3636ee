//! Conway and Alexander polynomials of classical knots and links.
//!
//! The recursion walks the components from their base points and switches
//! the first crossing met from below; a diagram in which every crossing is
//! first met from above is an unlink.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CrossingId, CrossingSign, Passage, Role};
use crate::laurent::LaurentPoly;

/// A closed classical link diagram as one cyclic Gauss code per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkCode {
    pub components: Vec<Vec<Passage>>,
    pub crossings: BTreeMap<CrossingId, CrossingSign>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("crossing {0} has no sign")]
    UnknownCrossing(CrossingId),
    #[error("crossing {0} must appear once over and once under")]
    RolePairing(CrossingId),
    #[error("a knot code has exactly one component")]
    NotAKnot,
    #[error("malformed code: {0}")]
    Malformed(String),
}

impl LinkCode {
    pub fn new(
        components: Vec<Vec<Passage>>,
        crossings: BTreeMap<CrossingId, CrossingSign>,
    ) -> Self {
        Self {
            components,
            crossings,
        }
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        let mut roles: BTreeMap<CrossingId, (usize, usize)> = BTreeMap::new();
        for p in self.components.iter().flatten() {
            if !self.crossings.contains_key(&p.crossing) {
                return Err(CodeError::UnknownCrossing(p.crossing));
            }
            let e = roles.entry(p.crossing).or_default();
            match p.role {
                Role::Over => e.0 += 1,
                Role::Under => e.1 += 1,
            }
        }
        for id in self.crossings.keys() {
            if roles.get(id) != Some(&(1, 1)) {
                return Err(CodeError::RolePairing(*id));
            }
        }
        Ok(())
    }

    fn locate(&self, id: CrossingId) -> [(usize, usize); 2] {
        let mut out = Vec::with_capacity(2);
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                if p.crossing == id {
                    out.push((ci, i));
                }
            }
        }
        [out[0], out[1]]
    }

    pub fn switch(&self, id: CrossingId) -> LinkCode {
        let mut out = self.clone();
        for p in out.components.iter_mut().flatten() {
            if p.crossing == id {
                p.role = p.role.flip();
            }
        }
        if let Some(s) = out.crossings.get_mut(&id) {
            *s = s.flip();
        }
        out
    }

    pub fn smooth(&self, id: CrossingId) -> LinkCode {
        let [(ca, ia), (cb, ib)] = self.locate(id);
        let mut out = self.clone();
        out.crossings.remove(&id);
        if ca == cb {
            let comp = &self.components[ca];
            let (i, j) = (ia.min(ib), ia.max(ib));
            let inner = comp[i + 1..j].to_vec();
            let outer: Vec<_> = comp[j + 1..].iter().chain(&comp[..i]).copied().collect();
            out.components[ca] = outer;
            out.components.push(inner);
        } else {
            let (x, y) = (&self.components[ca], &self.components[cb]);
            let merged: Vec<_> = x[..ia]
                .iter()
                .chain(&y[ib + 1..])
                .chain(&y[..ib])
                .chain(&x[ia + 1..])
                .copied()
                .collect();
            out.components[ca] = merged;
            out.components.remove(cb);
        }
        out
    }

    /// The first crossing met at its under-passage before its over-passage.
    fn first_ascending(&self) -> Option<CrossingId> {
        let mut seen = HashSet::new();
        for p in self.components.iter().flatten() {
            if seen.insert(p.crossing) && p.role == Role::Under {
                return Some(p.crossing);
            }
        }
        None
    }

    pub fn is_descending(&self) -> bool {
        self.first_ascending().is_none()
    }

    /// Relabels crossings by first appearance; used as the memo key.
    fn key(&self) -> String {
        let mut ids = HashMap::new();
        let mut s = String::new();
        for comp in &self.components {
            s.push('|');
            for p in comp {
                let n = ids.len() + 1;
                let n = *ids.entry(p.crossing).or_insert(n);
                s.push(p.role.symbol());
                s.push_str(&n.to_string());
                s.push(self.crossings[&p.crossing].symbol());
            }
        }
        s
    }
}

impl fmt::Display for LinkCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| {
                        format!(
                            "{}{}{}",
                            p.role.symbol(),
                            p.crossing.0,
                            self.crossings[&p.crossing].symbol()
                        )
                    })
                    .collect()
            })
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

/// The Conway polynomial, in the variable `z`.
pub fn conway(code: &LinkCode) -> Result<LaurentPoly, CodeError> {
    code.validate()?;
    let mut memo = HashMap::new();
    Ok(conway_rec(code, &mut memo))
}

fn conway_rec(code: &LinkCode, memo: &mut HashMap<String, LaurentPoly>) -> LaurentPoly {
    let Some(id) = code.first_ascending() else {
        return if code.components.len() == 1 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        };
    };
    let key = code.key();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let z = LaurentPoly::monomial(1, 1);
    let switched = conway_rec(&code.switch(id), memo);
    let smoothed = conway_rec(&code.smooth(id), memo);
    let v = match code.crossings[&id] {
        CrossingSign::Positive => &switched + &(&z * &smoothed),
        CrossingSign::Negative => &switched - &(&z * &smoothed),
    };
    memo.insert(key, v.clone());
    v
}

/// Symmetrized Alexander polynomial in `u = t^(1/2)`: the Conway
/// polynomial at `z = u - u^-1`.
pub fn alexander_symmetrized(code: &LinkCode) -> Result<LaurentPoly, CodeError> {
    Ok(conway(code)?.compose(&LaurentPoly::t_minus_t_inv()))
}

/// `Δ(t^2)`, i.e. the Conway polynomial at `z = t - t^-1`, in `t`.
pub fn alexander_at_t_squared(code: &LinkCode) -> Result<LaurentPoly, CodeError> {
    alexander_symmetrized(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(components: &[&[(char, u32)]], signs: &[(u32, i32)]) -> LinkCode {
        LinkCode::new(
            components
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&(r, id)| {
                            if r == 'O' {
                                Passage::over(id)
                            } else {
                                Passage::under(id)
                            }
                        })
                        .collect()
                })
                .collect(),
            signs
                .iter()
                .map(|&(id, s)| {
                    (
                        CrossingId(id),
                        if s > 0 {
                            CrossingSign::Positive
                        } else {
                            CrossingSign::Negative
                        },
                    )
                })
                .collect(),
        )
    }

    fn z(s: &str) -> LaurentPoly {
        LaurentPoly::parse_in(s, "z").unwrap()
    }

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(conway(&code(&[&[]], &[])).unwrap(), LaurentPoly::one());
        assert_eq!(
            conway(&code(&[&[], &[]], &[])).unwrap(),
            LaurentPoly::zero()
        );
        // twisted unknot
        let kink = code(&[&[('U', 1), ('O', 1)]], &[(1, -1)]);
        assert_eq!(conway(&kink).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn hopf_links() {
        let pos = code(
            &[&[('O', 1), ('U', 2)], &[('U', 1), ('O', 2)]],
            &[(1, 1), (2, 1)],
        );
        assert_eq!(conway(&pos).unwrap(), z("z"));
        let neg = code(
            &[&[('O', 1), ('U', 2)], &[('U', 1), ('O', 2)]],
            &[(1, -1), (2, -1)],
        );
        assert_eq!(conway(&neg).unwrap(), z("-z"));
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let tre = code(
            &[&[('O', 1), ('U', 2), ('O', 3), ('U', 1), ('O', 2), ('U', 3)]],
            &[(1, 1), (2, 1), (3, 1)],
        );
        assert_eq!(conway(&tre).unwrap(), z("1 + z^2"));
        let fig8 = code(
            &[&[
                ('O', 1),
                ('U', 2),
                ('O', 3),
                ('U', 1),
                ('O', 4),
                ('U', 3),
                ('O', 2),
                ('U', 4),
            ]],
            &[(1, -1), (2, -1), (3, 1), (4, 1)],
        );
        assert_eq!(conway(&fig8).unwrap(), z("1 - z^2"));
        let a = alexander_symmetrized(&tre).unwrap();
        assert_eq!(a.to_string(), "t^-2 - 1 + t^2");
        assert!(a.is_symmetric());
    }

    #[test]
    fn rejects_bad_codes() {
        let bad = code(&[&[('O', 1), ('O', 1)]], &[(1, 1)]);
        assert_eq!(conway(&bad), Err(CodeError::RolePairing(CrossingId(1))));
        let unsigned = code(&[&[('O', 1), ('U', 1)]], &[]);
        assert_eq!(
            conway(&unsigned),
            Err(CodeError::UnknownCrossing(CrossingId(1)))
        );
    }
}
