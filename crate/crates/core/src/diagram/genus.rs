//! Supporting genus of a diagram, by face tracing on the signed Gauss code.

use std::collections::BTreeMap;

use super::{CrossingId, CrossingSign, Diagram, Role};

/// Half-edges at a crossing, in counterclockwise order for a positive
/// crossing: over-out, under-out, over-in, under-in. A negative crossing
/// swaps the two under half-edges.
const OVER_OUT: usize = 0;
const UNDER_OUT: usize = 1;
const OVER_IN: usize = 2;
const UNDER_IN: usize = 3;

fn ccw_next(h: usize, sign: CrossingSign) -> usize {
    let order = match sign {
        CrossingSign::Positive => [OVER_OUT, UNDER_OUT, OVER_IN, UNDER_IN],
        CrossingSign::Negative => [OVER_OUT, UNDER_IN, OVER_IN, UNDER_OUT],
    };
    let k = order.iter().position(|&x| x == h).expect("half-edge");
    order[(k + 1) % 4]
}

impl Diagram {
    /// Closed curves of the diagram: loops as they are, and the arcs
    /// joined end to end through the marker points (the second arc run
    /// backwards), with crossing signs adjusted for that reversal.
    fn closed_curves(&self) -> (Vec<Vec<super::Passage>>, BTreeMap<CrossingId, CrossingSign>) {
        let mut d = self.clone();
        let arcs: Vec<usize> = self.arcs().map(|(i, _)| i).collect();
        if arcs.len() == 2 {
            d = d.reverse_component_at(arcs[1]);
        }
        let mut joined = Vec::new();
        for &i in &arcs {
            joined.extend(d.components()[i].passages.iter().copied());
        }
        let mut curves = vec![joined];
        curves.extend(d.loops().map(|(_, c)| c.passages.clone()));
        curves.retain(|c| !c.is_empty());
        (curves, d.crossings().clone())
    }

    /// Genus of the closed surface on which the diagram (arcs joined
    /// through the markers) embeds without virtual crossings. Zero means
    /// the diagram is classical.
    pub fn supporting_genus(&self) -> usize {
        let (curves, signs) = self.closed_curves();
        let ids: Vec<CrossingId> = signs.keys().copied().collect();
        if ids.is_empty() {
            return 0;
        }
        let index: BTreeMap<CrossingId, usize> =
            ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let he = |id: CrossingId, h: usize| index[&id] * 4 + h;
        let n = ids.len() * 4;
        let mut edge = vec![usize::MAX; n];
        for curve in &curves {
            for (i, p) in curve.iter().enumerate() {
                let q = curve[(i + 1) % curve.len()];
                let out = he(
                    p.crossing,
                    if p.role == Role::Over {
                        OVER_OUT
                    } else {
                        UNDER_OUT
                    },
                );
                let inn = he(
                    q.crossing,
                    if q.role == Role::Over {
                        OVER_IN
                    } else {
                        UNDER_IN
                    },
                );
                edge[out] = inn;
                edge[inn] = out;
            }
        }
        let rot = |h: usize| {
            let (c, k) = (h / 4, h % 4);
            c * 4 + ccw_next(k, signs[&ids[c]])
        };
        let mut seen = vec![false; n];
        let mut faces = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = rot(edge[h]);
            }
        }
        // Connected pieces of the crossing graph.
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (h, &e) in edge.iter().enumerate() {
            let (a, b) = (find(&mut parent, h / 4), find(&mut parent, e / 4));
            parent[a] = b;
        }
        let pieces = (0..ids.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count();
        let v = ids.len() as i64;
        let e = 2 * v;
        let chi = v - e + faces as i64;
        ((2 * pieces as i64 - chi) / 2) as usize
    }

    pub fn is_classical(&self) -> bool {
        self.supporting_genus() == 0
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse;

    #[test]
    fn classical_and_virtual_codes() {
        let tre = parse("twin { arc A: O1+ U2+ O3+ U1+ O2+ U3+ ; arc B: ; }").unwrap();
        assert_eq!(tre.supporting_genus(), 0);
        // the virtual trefoil
        let vt = parse("twin { arc A: O1+ U2+ U1+ O2+ ; arc B: ; }").unwrap();
        assert_eq!(vt.supporting_genus(), 1);
        let kink = parse("twin { arc A: O1- U1- ; arc B: ; }").unwrap();
        assert_eq!(kink.supporting_genus(), 0);
        // one crossing between a long arc and a closed curve cannot be planar
        let once = parse("twin { arc A: O1+ ; arc B: ; loop T: U1+ ; }").unwrap();
        assert_eq!(once.supporting_genus(), 1);
        let twice = parse("twin { arc A: O1+ O2- ; arc B: ; loop T: U2- U1+ ; }").unwrap();
        assert_eq!(twice.supporting_genus(), 0);
    }
}
