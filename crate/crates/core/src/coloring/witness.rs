use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::{truncation, Point};
use crate::presentation::{OrbitKind, SystemPresentation};

/// A finite description of a continuous coloring of the whole system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// The empty coloring of the empty space.
    Empty,
    /// Everything gets color 0; valid only without edges.
    Constant,
    /// Point `k` of a limit orbit gets `orientation ⊕ par(k)`, connector
    /// point `f^k(z)` gets `orientation(left) ⊕ par(leftAnchor + k)`, family
    /// members copy their limit orbit, isolated orbits alternate from 0.
    Parity { orientation: BTreeMap<String, u8> },
    /// Explicit colors on every periodic orbit. Connector point `f^k(z)`
    /// copies the left orbit for `k ≤ 0`, the right orbit for `k ≥ 2`, and
    /// takes its bridge color at `k = 1`; family members copy their limit.
    Explicit {
        orbits: BTreeMap<String, Vec<u8>>,
        bridges: BTreeMap<String, u8>,
    },
}

fn par(x: i64) -> u8 {
    x.rem_euclid(2) as u8
}

/// `0,1,0,1,…` with the last point recolored 2 when the length is odd.
fn cyclic_pattern(len: usize) -> Vec<u8> {
    let mut c: Vec<u8> = (0..len).map(|k| (k % 2) as u8).collect();
    if len >= 3 && len % 2 == 1 {
        c[len - 1] = 2;
    }
    c
}

/// The three-color witness used once the fixed set is open.
pub(crate) fn explicit_three_coloring(s: &SystemPresentation) -> Witness {
    let orbits: BTreeMap<String, Vec<u8>> =
        s.orbits.iter().map(|o| (o.id.clone(), cyclic_pattern(o.length))).collect();
    let mut bridges = BTreeMap::new();
    for c in &s.connectors {
        let at = |id: &str, k: i64| {
            let pattern = &orbits[id];
            pattern[k.rem_euclid(pattern.len() as i64) as usize]
        };
        let before = at(&c.left.orbit, c.left.anchor as i64);
        let after = at(&c.right.orbit, c.right.anchor as i64 + 2);
        let bridge = (0u8..3).find(|&x| x != before && x != after).unwrap_or(0);
        bridges.insert(c.id.clone(), bridge);
    }
    Witness::Explicit { orbits, bridges }
}

impl Witness {
    pub fn colors_used(&self) -> u8 {
        match self {
            Witness::Empty => 0,
            Witness::Constant => 1,
            Witness::Parity { .. } => 2,
            Witness::Explicit { .. } => 3,
        }
    }

    /// Color of a point under the witness rule, or `None` if the witness
    /// does not cover it.
    pub fn color(&self, s: &SystemPresentation, p: Point) -> Option<u8> {
        match self {
            Witness::Empty => None,
            Witness::Constant => Some(0),
            Witness::Parity { orientation } => {
                let orbit_color = |oi: usize, k: i64| -> Option<u8> {
                    let o = &s.orbits[oi];
                    match o.kind {
                        OrbitKind::Limit => Some(orientation.get(&o.id)? ^ par(k)),
                        OrbitKind::Isolated => Some(par(k)),
                    }
                };
                match p {
                    Point::Orbit { orbit, k } => orbit_color(orbit, k as i64),
                    Point::Connector { connector, k } => {
                        let c = &s.connectors[connector];
                        Some(orientation.get(&c.left.orbit)? ^ par(c.left.anchor as i64 + k))
                    }
                    Point::Member { family, k, .. } => {
                        let f = &s.families[family];
                        orbit_color(s.orbit_index(&f.limit)?, k as i64)
                    }
                }
            }
            Witness::Explicit { orbits, bridges } => {
                let at = |id: &str, k: i64| -> Option<u8> {
                    let pattern = orbits.get(id)?;
                    pattern.get(k.rem_euclid(pattern.len().max(1) as i64) as usize).copied()
                };
                match p {
                    Point::Orbit { orbit, k } => at(&s.orbits[orbit].id, k as i64),
                    Point::Connector { connector, k } => {
                        let c = &s.connectors[connector];
                        match k {
                            k if k <= 0 => at(&c.left.orbit, c.left.anchor as i64 + k),
                            1 => bridges.get(&c.id).copied(),
                            k => at(&c.right.orbit, c.right.anchor as i64 + k),
                        }
                    }
                    Point::Member { family, k, .. } => at(&s.families[family].limit, k as i64),
                }
            }
        }
    }
}

/// Checks the witness on the window of radius `n`: every edge is
/// bichromatic, colors stay below the witness's palette, and every
/// connector tail and family member agrees with its limit orbit at the
/// matching point for `q = 2..=n+1` periods out.
pub fn verify_witness(s: &SystemPresentation, witness: &Witness, n: usize) -> bool {
    if let Witness::Empty = witness {
        return s.is_empty();
    }
    if let Witness::Parity { orientation } = witness {
        let covered = s
            .orbits
            .iter()
            .filter(|o| o.kind == OrbitKind::Limit)
            .all(|o| orientation.get(&o.id).is_some_and(|&b| b <= 1));
        if !covered {
            return false;
        }
    }
    let t = truncation(s, n);
    let palette = witness.colors_used();
    let mut colors = Vec::with_capacity(t.points.len());
    for &p in &t.points {
        match witness.color(s, p) {
            Some(c) if c < palette => colors.push(c),
            _ => return false,
        }
    }
    if t.graph.edges().iter().any(|&(u, v)| colors[u] == colors[v]) {
        return false;
    }
    let color = |p: Point| witness.color(s, p);
    for (ci, c) in s.connectors.iter().enumerate() {
        let (Some(l), Some(r)) = (s.orbit_index(&c.left.orbit), s.orbit_index(&c.right.orbit)) else {
            return false;
        };
        let (ll, rl) = (s.orbits[l].length as i64, s.orbits[r].length as i64);
        for q in 2..=(n as i64 + 1) {
            for x in 0..ll {
                let tail = color(Point::Connector { connector: ci, k: -q * ll + x });
                let limit = color(Point::Orbit { orbit: l, k: (c.left.anchor as i64 + x).rem_euclid(ll) as usize });
                if tail != limit {
                    return false;
                }
            }
            for x in 0..rl {
                let tail = color(Point::Connector { connector: ci, k: q * rl + x });
                let limit = color(Point::Orbit { orbit: r, k: (c.right.anchor as i64 + x).rem_euclid(rl) as usize });
                if tail != limit {
                    return false;
                }
            }
        }
    }
    for (fi, f) in s.families.iter().enumerate() {
        let Some(l) = s.orbit_index(&f.limit) else { return false };
        let len = s.orbits[l].length;
        for member in 0..n {
            for k in 0..f.size {
                let a = color(Point::Member { family: fi, member, k });
                if a != color(Point::Orbit { orbit: l, k: k % len }) {
                    return false;
                }
            }
        }
    }
    true
}
