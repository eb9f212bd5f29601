use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::analysis::{truncation, Point};
use crate::presentation::SystemPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "+")]
    Forward,
    #[serde(rename = "-")]
    Reverse,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Reverse => -1,
        }
    }
}

/// Point `k` goes to point `shift ± k` of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub target: String,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "into")]
pub enum FamilyImage {
    /// Member `i` goes to member `i` of the target family.
    Family { target: String },
    /// Point `j` of member `i` goes to connector point
    /// `offset + outward·size·i ± j`, marching down one tail.
    Tail { target: String, offset: i64, outward: i64 },
}

/// A point map between two presentations, given per orbit, connector and
/// family. The direction says whether the map commutes with the dynamics
/// or with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingMap {
    pub direction: Direction,
    pub orbits: BTreeMap<String, Placement>,
    pub connectors: BTreeMap<String, Placement>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, FamilyImage>,
}

fn successor(s: &SystemPresentation, p: Point) -> Point {
    match p {
        Point::Orbit { orbit, k } => Point::Orbit { orbit, k: (k + 1) % s.orbits[orbit].length },
        Point::Connector { connector, k } => Point::Connector { connector, k: k + 1 },
        Point::Member { family, member, k } => Point::Member { family, member, k: (k + 1) % s.families[family].size },
    }
}

fn adjacent(s: &SystemPresentation, p: Point, q: Point) -> bool {
    p != q && (successor(s, p) == q || successor(s, q) == p)
}

/// Where the points `connector k` tend as `k` runs to `-∞` (`forward =
/// false`) or `+∞` in steps of `step`, for `k ≡ base`. `None` if the
/// step is not a multiple of the limit period.
fn tail_limit(s: &SystemPresentation, connector: usize, forward: bool, base: i64, step: usize) -> Option<Point> {
    let c = &s.connectors[connector];
    let end = if forward { &c.right } else { &c.left };
    let orbit = s.orbit_index(&end.orbit)?;
    let len = s.orbits[orbit].length;
    if step % len != 0 {
        return None;
    }
    Some(Point::Orbit { orbit, k: (end.anchor as i64 + base).rem_euclid(len as i64) as usize })
}

impl EmbeddingMap {
    pub fn identity(s: &SystemPresentation) -> EmbeddingMap {
        let place = |id: &String| (id.clone(), Placement { target: id.clone(), shift: 0 });
        EmbeddingMap {
            direction: Direction::Forward,
            orbits: s.orbits.iter().map(|o| place(&o.id)).collect(),
            connectors: s.connectors.iter().map(|c| place(&c.id)).collect(),
            families: s
                .families
                .iter()
                .map(|f| (f.id.clone(), FamilyImage::Family { target: f.id.clone() }))
                .collect(),
        }
    }

    pub fn image(&self, a: &SystemPresentation, b: &SystemPresentation, p: Point) -> Option<Point> {
        let sign = self.direction.sign();
        match p {
            Point::Orbit { orbit, k } => {
                let place = self.orbits.get(&a.orbits[orbit].id)?;
                let target = b.orbit_index(&place.target)?;
                let len = b.orbits[target].length as i64;
                Some(Point::Orbit { orbit: target, k: (place.shift + sign * k as i64).rem_euclid(len) as usize })
            }
            Point::Connector { connector, k } => {
                let place = self.connectors.get(&a.connectors[connector].id)?;
                let target = b.connectors.iter().position(|c| c.id == place.target)?;
                Some(Point::Connector { connector: target, k: place.shift + sign * k })
            }
            Point::Member { family, member, k } => {
                let size = a.families[family].size;
                match self.families.get(&a.families[family].id)? {
                    FamilyImage::Family { target } => {
                        let t = b.families.iter().position(|f| &f.id == target)?;
                        let tsize = b.families[t].size as i64;
                        Some(Point::Member { family: t, member, k: (sign * k as i64).rem_euclid(tsize) as usize })
                    }
                    FamilyImage::Tail { target, offset, outward } => {
                        let t = b.connectors.iter().position(|c| &c.id == target)?;
                        let k = offset + outward * (size * member) as i64 + sign * k as i64;
                        Some(Point::Connector { connector: t, k })
                    }
                }
            }
        }
    }

    /// Limit in `b` of the images of a source sequence tending to a
    /// periodic point: the images of `connector` points along one tail, or
    /// of point `k` of ever later family members.
    fn image_limit(&self, a: &SystemPresentation, b: &SystemPresentation, tail: Tail) -> Option<Point> {
        let sign = self.direction.sign();
        match tail {
            Tail::Connector { connector, forward, r, step } => {
                let place = self.connectors.get(&a.connectors[connector].id)?;
                let target = b.connectors.iter().position(|c| c.id == place.target)?;
                let k = place.shift + sign * r;
                let target_forward = forward == (sign == 1);
                tail_limit(b, target, target_forward, k, step)
            }
            Tail::Family { family, k } => {
                let size = a.families[family].size;
                match self.families.get(&a.families[family].id)? {
                    FamilyImage::Family { target } => {
                        let t = b.families.iter().position(|f| &f.id == target)?;
                        let limit = b.orbit_index(&b.families[t].limit)?;
                        let len = b.orbits[limit].length as i64;
                        Some(Point::Orbit { orbit: limit, k: (sign * k as i64).rem_euclid(len) as usize })
                    }
                    FamilyImage::Tail { target, offset, outward } => {
                        let t = b.connectors.iter().position(|c| &c.id == target)?;
                        if *outward == 0 {
                            return None;
                        }
                        tail_limit(b, t, *outward > 0, offset + sign * k as i64, size)
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Tail {
    /// `connector` points `r + q·step` for `q → ±∞`.
    Connector { connector: usize, forward: bool, r: i64, step: usize },
    Family { family: usize, k: usize },
}

/// Checks the map on the radius-`n` window of `a`: every placement
/// resolves, images are distinct, edges go to edges, and along every tail
/// the images tend to the image of the limit point.
pub fn verify_embedding(a: &SystemPresentation, b: &SystemPresentation, map: &EmbeddingMap, n: usize) -> bool {
    let t = truncation(a, n);
    let mut images = Vec::with_capacity(t.points.len());
    let mut seen = BTreeSet::new();
    for &p in &t.points {
        let Some(q) = map.image(a, b, p) else { return false };
        if !seen.insert(q) {
            return false;
        }
        images.push(q);
    }
    if !t.graph.edges().iter().all(|&(u, v)| adjacent(b, images[u], images[v])) {
        return false;
    }
    for (ci, c) in a.connectors.iter().enumerate() {
        for (forward, end) in [(false, &c.left), (true, &c.right)] {
            let Some(orbit) = a.orbit_index(&end.orbit) else { return false };
            let len = a.orbits[orbit].length;
            for r in 0..len as i64 {
                let source = Point::Orbit { orbit, k: (end.anchor as i64 + r).rem_euclid(len as i64) as usize };
                let tail = Tail::Connector { connector: ci, forward, r, step: len };
                if map.image_limit(a, b, tail) != map.image(a, b, source) {
                    return false;
                }
            }
        }
    }
    for (fi, f) in a.families.iter().enumerate() {
        let Some(orbit) = a.orbit_index(&f.limit) else { return false };
        let len = a.orbits[orbit].length;
        for k in 0..f.size {
            let source = Point::Orbit { orbit, k: k % len };
            if map.image_limit(a, b, Tail::Family { family: fi, k }) != map.image(a, b, source) {
                return false;
            }
        }
    }
    true
}
