//! Cantor-Bendixson structure, the fixed point set, removable pieces and
//! finite truncations of a presentation.

mod graph;
mod truncate;

pub use graph::{cycle_graph, path_graph, FiniteGraph};
pub use truncate::{truncate, truncation, Point, Truncation};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::presentation::{OrbitKind, SystemPresentation};

/// The derived set: limit orbits only, now isolated.
pub fn cb_derivative(s: &SystemPresentation) -> SystemPresentation {
    let mut out = SystemPresentation::empty(s.mode);
    out.orbits = s
        .orbits
        .iter()
        .filter(|o| o.kind == OrbitKind::Limit)
        .cloned()
        .map(|mut o| {
            o.kind = OrbitKind::Isolated;
            o
        })
        .collect();
    out
}

pub fn cb_rank(s: &SystemPresentation) -> usize {
    if s.is_empty() {
        0
    } else if s.orbits.iter().all(|o| o.kind != OrbitKind::Limit) {
        1
    } else {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FixedPointReport {
    pub fixed_limit_orbits: BTreeSet<String>,
    pub isolated_fixed_orbits: BTreeSet<String>,
    pub is_open: bool,
}

/// Fixed limit orbits are accumulated by non-fixed points (every limit
/// orbit is reached and no family consists of fixed points), so the fixed
/// set is open exactly when there are none.
pub fn fixed_point_set(s: &SystemPresentation) -> FixedPointReport {
    let fixed = |kind| {
        s.orbits
            .iter()
            .filter(|o| o.length == 1 && o.kind == kind)
            .map(|o| o.id.clone())
            .collect::<BTreeSet<_>>()
    };
    let fixed_limit_orbits = fixed(OrbitKind::Limit);
    FixedPointReport {
        is_open: fixed_limit_orbits.is_empty(),
        isolated_fixed_orbits: fixed(OrbitKind::Isolated),
        fixed_limit_orbits,
    }
}

/// Drops pieces that never affect continuous 2-colorability: isolated fixed
/// points, isolated even orbits, and even families whose limit orbit is not
/// fixed. A limit orbit left with nothing converging to it becomes isolated,
/// and the process repeats until nothing changes.
pub fn remove_removables(s: &SystemPresentation) -> SystemPresentation {
    let mut cur = s.clone();
    loop {
        let before = cur.clone();
        let fixed_limits: BTreeSet<String> = cur
            .orbits
            .iter()
            .filter(|o| o.length == 1 && o.kind == OrbitKind::Limit)
            .map(|o| o.id.clone())
            .collect();
        cur.families
            .retain(|f| f.size % 2 == 1 || fixed_limits.contains(&f.limit));
        let reached: BTreeSet<String> = cur
            .connectors
            .iter()
            .flat_map(|c| [c.left.orbit.clone(), c.right.orbit.clone()])
            .chain(cur.families.iter().map(|f| f.limit.clone()))
            .collect();
        for o in &mut cur.orbits {
            if o.kind == OrbitKind::Limit && !reached.contains(&o.id) {
                o.kind = OrbitKind::Isolated;
            }
        }
        cur.orbits
            .retain(|o| o.kind == OrbitKind::Limit || (o.length != 1 && o.length % 2 == 1));
        if cur == before {
            return cur;
        }
    }
}
