use std::collections::BTreeMap;

use itertools::Itertools;

use super::embedding::{Direction, EmbeddingMap, Placement};
use crate::presentation::{gcd, make_sigma_p, normal_right_anchor, PTuple, SystemPresentation};

/// A relabeling of one presentation onto another: orbit `j` goes to
/// `orbits[j]` with its points rotated by `rotation[j]` (and reflected when
/// reversed), connector `c` goes to `connectors[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub orbits: Vec<usize>,
    pub reversed: bool,
    pub rotation: Vec<i64>,
    pub connectors: Vec<usize>,
}

/// `(left, right, right anchor with the left anchor moved to 0)`.
fn connector_triples(s: &SystemPresentation) -> Option<Vec<(usize, usize, usize)>> {
    s.connectors
        .iter()
        .map(|c| {
            let l = s.orbit_index(&c.left.orbit)?;
            let r = s.orbit_index(&c.right.orbit)?;
            let d = normal_right_anchor(s.orbits[l].length, c.left.anchor, s.orbits[r].length, c.right.anchor);
            Some((l, r, d))
        })
        .collect()
}

/// Searches for a relabeling of orbits preserving lengths and kinds,
/// possibly reversing time, with per-orbit rotations, that carries the
/// connectors of `a` onto those of `b` with matching anchors. Presentations
/// with families are not handled.
pub fn structural_isomorphism(a: &SystemPresentation, b: &SystemPresentation) -> Option<Isomorphism> {
    if a.orbits.len() != b.orbits.len()
        || a.connectors.len() != b.connectors.len()
        || !a.families.is_empty()
        || !b.families.is_empty()
    {
        return None;
    }
    let shape = |s: &SystemPresentation| s.orbits.iter().map(|o| (o.length, o.kind == crate::presentation::OrbitKind::Limit)).sorted().collect::<Vec<_>>();
    if shape(a) != shape(b) {
        return None;
    }
    let source = connector_triples(a)?;
    let target = connector_triples(b)?;
    let mut target_sorted: Vec<(usize, usize, usize)> = target.clone();
    target_sorted.sort();
    let n = a.orbits.len();
    let len_a: Vec<usize> = a.orbits.iter().map(|o| o.length).collect();
    let len_b: Vec<usize> = b.orbits.iter().map(|o| o.length).collect();

    for perm in (0..n).permutations(n) {
        if (0..n).any(|j| len_a[j] != len_b[perm[j]] || a.orbits[j].kind != b.orbits[perm[j]].kind) {
            continue;
        }
        for reversed in [false, true] {
            // A common rotation of every orbit changes nothing, so the
            // first orbit stays put.
            let ranges = (0..n).map(|j| if j == 0 { 0..1 } else { 0..len_a[j] });
            for rotation in ranges.multi_cartesian_product() {
                let image = |&(l, r, d): &(usize, usize, usize)| {
                    let g = gcd(len_a[l], len_a[r]) as i64;
                    let (rl, rr) = (rotation[l] as i64, rotation[r] as i64);
                    if reversed {
                        (perm[r], perm[l], (d as i64 + rl - rr).rem_euclid(g) as usize)
                    } else {
                        (perm[l], perm[r], (d as i64 + rr - rl).rem_euclid(g) as usize)
                    }
                };
                let mut mapped: Vec<(usize, usize, usize)> = source.iter().map(image).collect();
                mapped.sort();
                if mapped != target_sorted {
                    continue;
                }
                // Pair equal triples in order.
                let mut pool: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
                for (i, t) in target.iter().enumerate() {
                    pool.entry(*t).or_default().push(i);
                }
                let mut connectors = vec![0; source.len()];
                for (i, c) in source.iter().enumerate() {
                    let slot = pool.get_mut(&image(c)).expect("matched multiset");
                    connectors[i] = slot.remove(0);
                }
                return Some(Isomorphism {
                    orbits: perm.clone(),
                    reversed,
                    rotation: rotation.iter().map(|&x| x as i64).collect(),
                    connectors,
                });
            }
        }
    }
    None
}

/// Least `s ≥ 0` with `s ≡ x (mod m)` and `s ≡ y (mod n)`.
fn crt(x: i64, m: usize, y: i64, n: usize) -> Option<i64> {
    let (m, n) = (m as i64, n as i64);
    let lcm = m / gcd(m as usize, n as usize) as i64 * n;
    (0..lcm).find(|s| (s - x).rem_euclid(m) == 0 && (s - y).rem_euclid(n) == 0)
}

impl Isomorphism {
    /// The point map realizing the relabeling.
    pub fn embedding(&self, a: &SystemPresentation, b: &SystemPresentation) -> Option<EmbeddingMap> {
        let sign: i64 = if self.reversed { -1 } else { 1 };
        let orbits = a
            .orbits
            .iter()
            .enumerate()
            .map(|(j, o)| (o.id.clone(), Placement { target: b.orbits[self.orbits[j]].id.clone(), shift: self.rotation[j] }))
            .collect();
        let mut connectors = BTreeMap::new();
        for (ci, c) in a.connectors.iter().enumerate() {
            let t = &b.connectors[self.connectors[ci]];
            let l = a.orbit_index(&c.left.orbit)?;
            let r = a.orbit_index(&c.right.orbit)?;
            let (ll, rl) = (a.orbits[l].length, a.orbits[r].length);
            let (al, ar) = (c.left.anchor as i64, c.right.anchor as i64);
            let (tl, tr) = (t.left.anchor as i64, t.right.anchor as i64);
            let (pl, pr) = (self.rotation[l], self.rotation[r]);
            // Tails of the source connector must land on the images of its
            // limit points.
            let shift = if sign == 1 {
                crt(pl + al - tl, ll, pr + ar - tr, rl)?
            } else {
                crt(pl - al - tr, ll, pr - ar - tl, rl)?
            };
            connectors.insert(c.id.clone(), Placement { target: t.id.clone(), shift });
        }
        Some(EmbeddingMap {
            direction: if self.reversed { Direction::Reverse } else { Direction::Forward },
            orbits,
            connectors,
            families: BTreeMap::new(),
        })
    }
}

/// Whether `Σ_p` and `Σ_q` are the same presentation up to relabeling
/// orbits, rotating them, and reversing time.
pub fn sigma_p_equivalent(p: &PTuple, q: &PTuple) -> bool {
    if p == q {
        return true;
    }
    let mut lp = p.lambdas().to_vec();
    let mut lq = q.lambdas().to_vec();
    lp.sort();
    lq.sort();
    lp == lq && structural_isomorphism(&make_sigma_p(p), &make_sigma_p(q)).is_some()
}
