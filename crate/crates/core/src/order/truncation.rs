use std::collections::BTreeMap;

use serde::Serialize;

use super::hom::{HomOutcome, HomSearch, DEFAULT_BUDGET};
use crate::analysis::{truncation, Point, Truncation};
use crate::presentation::{gcd, OrbitKind, SystemPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum TruncationOutcome {
    /// No constrained embedding of the windows exists.
    Refuted { reason: String },
    /// An embedding of the windows, by vertex label. Evidence, not proof.
    PartialEmbedding { map: BTreeMap<String, String> },
    Unknown,
}

impl TruncationOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, TruncationOutcome::Refuted { .. })
    }
}

/// Size of the finite orbit through a point, if it is periodic.
fn period(s: &SystemPresentation, p: Point) -> Option<usize> {
    match p {
        Point::Orbit { orbit, .. } => Some(s.orbits[orbit].length),
        Point::Member { family, .. } => Some(s.families[family].size),
        Point::Connector { .. } => None,
    }
}

/// No isolated point has period at most two.
fn period_two_set_is_nowhere_dense(s: &SystemPresentation) -> bool {
    s.orbits.iter().all(|o| o.kind == OrbitKind::Limit || o.length > 2) && s.families.iter().all(|f| f.size > 2)
}

fn slack(b: &SystemPresentation) -> usize {
    b.orbits
        .iter()
        .map(|o| o.length)
        .chain(b.families.iter().map(|f| f.size))
        .fold(1, |acc, x| acc / gcd(acc, x) * x)
}

pub fn truncation_refutes(a: &SystemPresentation, b: &SystemPresentation, n: usize) -> TruncationOutcome {
    truncation_refutes_with_budget(a, b, n, DEFAULT_BUDGET)
}

/// Looks for an injective homomorphism from the radius-`n` window of `a`
/// into a wider window of `b`, restricted the way any injective continuous
/// homomorphism must be: orbits of three or more points go onto orbits of
/// the same size, two-point orbits too when isolated points of period two
/// are absent from `a`, connector points go to connector points, and each
/// connector's limit points go where its image's tails lead.
pub fn truncation_refutes_with_budget(
    a: &SystemPresentation,
    b: &SystemPresentation,
    n: usize,
    budget: u64,
) -> TruncationOutcome {
    let source = truncation(a, n);
    let target = truncation(b, 2 * n + slack(b));
    let strict_pairs = period_two_set_is_nowhere_dense(a);
    let domains: Vec<Vec<usize>> = source
        .points
        .iter()
        .map(|&p| {
            let wanted = period(a, p);
            (0..target.points.len())
                .filter(|&x| {
                    let q = target.points[x];
                    match (p, wanted) {
                        (Point::Connector { .. }, _) => matches!(q, Point::Connector { .. }),
                        (_, Some(len)) if len >= 3 || (len == 2 && strict_pairs) => period(b, q) == Some(len),
                        _ => true,
                    }
                })
                .collect()
        })
        .collect();

    let windows: Vec<Vec<usize>> = (0..a.connectors.len())
        .map(|ci| {
            (-(n as i64)..=n as i64)
                .map(|k| source.vertex_of(Point::Connector { connector: ci, k }).expect("window point"))
                .collect()
        })
        .collect();
    let check = |image: &[Option<usize>], v: usize| -> bool {
        let touched: Vec<usize> = match source.points[v] {
            Point::Connector { connector, .. } => vec![connector],
            Point::Orbit { orbit, .. } => {
                let id = &a.orbits[orbit].id;
                (0..a.connectors.len())
                    .filter(|&c| &a.connectors[c].left.orbit == id || &a.connectors[c].right.orbit == id)
                    .collect()
            }
            Point::Member { .. } => Vec::new(),
        };
        touched.into_iter().all(|c| tails_cohere(a, b, &source, &target, &windows[c], c, image, n))
    };
    let search = HomSearch::new(&source.graph, &target.graph).domains(domains).budget(budget).check(check);
    match search.run() {
        HomOutcome::Found(map) => TruncationOutcome::PartialEmbedding {
            map: map
                .iter()
                .enumerate()
                .map(|(v, &x)| (source.graph.label(v).to_string(), target.graph.label(x).to_string()))
                .collect(),
        },
        HomOutcome::NotFound => TruncationOutcome::Refuted {
            reason: format!(
                "no constrained injective homomorphism from the radius {n} window into the radius {} window",
                2 * n + slack(b)
            ),
        },
        HomOutcome::Unknown => TruncationOutcome::Unknown,
    }
}

/// Once two points of a connector window are placed, the window runs along
/// one target connector as `k ↦ shift + θk`. Its tails then lead to fixed
/// target points, which the source limit points must match.
#[allow(clippy::too_many_arguments)]
fn tails_cohere(
    a: &SystemPresentation,
    b: &SystemPresentation,
    source: &Truncation,
    target: &Truncation,
    window: &[usize],
    connector: usize,
    image: &[Option<usize>],
    n: usize,
) -> bool {
    let placed: Vec<(i64, usize, i64)> = window
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| {
            let x = image[v]?;
            match target.points[x] {
                Point::Connector { connector: t, k } => Some((i as i64 - n as i64, t, k)),
                _ => None,
            }
        })
        .collect();
    if placed.len() < 2 {
        return true;
    }
    let (k0, t0, x0) = placed[0];
    let (k1, _, x1) = placed[1];
    let theta = if (x1 - x0) * (k1 - k0) > 0 { 1 } else { -1 };
    let shift = x0 - theta * k0;
    if placed.iter().any(|&(k, t, x)| t != t0 || x != shift + theta * k) {
        return false;
    }
    let c = &a.connectors[connector];
    let tc = &b.connectors[t0];
    for (forward, end) in [(false, &c.left), (true, &c.right)] {
        let Some(orbit) = a.orbit_index(&end.orbit) else { return false };
        let len = a.orbits[orbit].length;
        let target_forward = forward == (theta == 1);
        let tend = if target_forward { &tc.right } else { &tc.left };
        let Some(torbit) = b.orbit_index(&tend.orbit) else { return false };
        let tlen = b.orbits[torbit].length;
        if len % tlen != 0 {
            return false;
        }
        for r in 0..len as i64 {
            let source_point = Point::Orbit { orbit, k: (end.anchor as i64 + r).rem_euclid(len as i64) as usize };
            let Some(sv) = source.vertex_of(source_point) else { continue };
            let Some(x) = image[sv] else { continue };
            let predicted = Point::Orbit {
                orbit: torbit,
                k: (tend.anchor as i64 + shift + theta * r).rem_euclid(tlen as i64) as usize,
            };
            if target.points[x] != predicted {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_n_sigma, make_odd_cycle, make_sigma_p, make_x1, PTuple};

    fn smallest() -> SystemPresentation {
        make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap())
    }

    #[test]
    fn five_cycle_does_not_fit_in_sigma_p() {
        assert!(truncation_refutes(&make_odd_cycle(1), &smallest(), 6).is_refuted());
    }

    #[test]
    fn sigma_p_fits_in_itself() {
        let out = truncation_refutes(&smallest(), &smallest(), 6);
        let TruncationOutcome::PartialEmbedding { map } = out else { panic!("{out:?}") };
        assert_eq!(map.len(), 2 + 13);
    }

    #[test]
    fn n_sigma_two_and_four_are_apart() {
        assert!(truncation_refutes(&make_n_sigma(2), &make_n_sigma(4), 6).is_refuted());
        assert!(truncation_refutes(&make_n_sigma(4), &make_n_sigma(2), 6).is_refuted());
    }

    #[test]
    fn tails_separate_zero_and_one() {
        assert!(truncation_refutes(&make_n_sigma(0), &make_n_sigma(1), 6).is_refuted());
        assert!(truncation_refutes(&make_n_sigma(1), &make_n_sigma(0), 6).is_refuted());
    }

    #[test]
    fn x1_windows_fit_everywhere_infinite() {
        assert!(!truncation_refutes(&make_x1(), &smallest(), 6).is_refuted());
        assert!(!truncation_refutes(&make_x1(), &make_n_sigma(0), 6).is_refuted());
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let p = make_sigma_p(&PTuple::new(vec![4, 2], 3, vec![1]).unwrap());
        assert_eq!(truncation_refutes_with_budget(&p, &p, 6, 2), TruncationOutcome::Unknown);
    }
}
