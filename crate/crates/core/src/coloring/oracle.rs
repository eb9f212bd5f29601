use std::collections::VecDeque;

use crate::analysis::{fixed_point_set, truncation, Point};
use crate::presentation::SystemPresentation;

/// Independent check for the 2-coloring answer: a signed-graph search on
/// the window of radius `n`. Graph edges ask for different colors. Connector
/// points one or more periods into a tail, and family member points, are
/// linked to the limit point they approach and must share its color.
pub fn constrained_truncation_colorable(s: &SystemPresentation, n: usize) -> bool {
    if !fixed_point_set(s).is_open {
        return false;
    }
    let t = truncation(s, n);
    let size = t.points.len();
    // (neighbor, 1 if the colors must differ)
    let mut links: Vec<Vec<(usize, u8)>> = vec![Vec::new(); size];
    let mut link = |a: usize, b: usize, differ: u8| {
        links[a].push((b, differ));
        links[b].push((a, differ));
    };
    for (u, v) in t.graph.edges() {
        link(u, v, 1);
    }
    let mut orbit_vertex = Vec::with_capacity(s.orbits.len());
    for (oi, o) in s.orbits.iter().enumerate() {
        let base = t.vertex_of(Point::Orbit { orbit: oi, k: 0 }).expect("orbit points are kept");
        orbit_vertex.push((base, o.length));
    }
    let at_orbit = |oi: usize, k: i64| {
        let (base, len) = orbit_vertex[oi];
        base + k.rem_euclid(len as i64) as usize
    };
    let radius = n as i64;
    for (ci, c) in s.connectors.iter().enumerate() {
        let (Some(l), Some(r)) = (s.orbit_index(&c.left.orbit), s.orbit_index(&c.right.orbit)) else {
            continue;
        };
        let base = t.vertex_of(Point::Connector { connector: ci, k: -radius }).expect("window start");
        let vertex = |k: i64| base + (k + radius) as usize;
        let (ll, rl) = (s.orbits[l].length as i64, s.orbits[r].length as i64);
        for k in -radius..=-ll {
            link(vertex(k), at_orbit(l, c.left.anchor as i64 + k), 0);
        }
        for k in rl..=radius {
            link(vertex(k), at_orbit(r, c.right.anchor as i64 + k), 0);
        }
    }
    for (vi, p) in t.points.iter().enumerate() {
        if let Point::Member { family, k, .. } = *p {
            if let Some(l) = s.orbit_index(&s.families[family].limit) {
                link(vi, at_orbit(l, k as i64), 0);
            }
        }
    }

    let mut color = vec![u8::MAX; size];
    for root in 0..size {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, differ) in &links[u] {
                let want = color[u] ^ differ;
                if color[v] == u8::MAX {
                    color[v] = want;
                    queue.push_back(v);
                } else if color[v] != want {
                    return false;
                }
            }
        }
    }
    true
}
