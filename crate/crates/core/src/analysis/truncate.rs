use super::FiniteGraph;
use crate::presentation::SystemPresentation;

/// A point of the system, addressed by the structure carrying it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// `f^k` of the base point of a periodic orbit, `0 ≤ k < λ`.
    Orbit { orbit: usize, k: usize },
    /// `f^k(z)` for the base point `z` of a connector.
    Connector { connector: usize, k: i64 },
    /// Point `k` of member `member` of a family.
    Member { family: usize, member: usize, k: usize },
}

/// A finite window onto the graph of the system, with each vertex tied
/// back to the point it stands for.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub graph: FiniteGraph,
    pub points: Vec<Point>,
}

impl Truncation {
    pub fn vertex_of(&self, p: Point) -> Option<usize> {
        self.points.iter().position(|&q| q == p)
    }
}

/// All periodic points, connector points `f^k(z)` with `|k| ≤ n`, and the
/// first `n` members of every family; edges join each included `x` to `f(x)`.
pub fn truncation(s: &SystemPresentation, n: usize) -> Truncation {
    let mut graph = FiniteGraph::new();
    let mut points = Vec::new();
    let mut push = |graph: &mut FiniteGraph, label: String, p: Point| {
        points.push(p);
        graph.add_vertex(label)
    };
    for (oi, o) in s.orbits.iter().enumerate() {
        let first = graph.vertex_count();
        for k in 0..o.length {
            push(&mut graph, format!("{}:{k}", o.id), Point::Orbit { orbit: oi, k });
        }
        for k in 0..o.length {
            graph.add_edge(first + k, first + (k + 1) % o.length);
        }
    }
    let radius = n as i64;
    for (ci, c) in s.connectors.iter().enumerate() {
        let first = graph.vertex_count();
        for k in -radius..=radius {
            push(&mut graph, format!("{}:{k}", c.id), Point::Connector { connector: ci, k });
        }
        for i in 1..=(2 * n) {
            graph.add_edge(first + i - 1, first + i);
        }
    }
    for (fi, f) in s.families.iter().enumerate() {
        for member in 0..n {
            let first = graph.vertex_count();
            for k in 0..f.size {
                push(
                    &mut graph,
                    format!("{}#{member}:{k}", f.id),
                    Point::Member { family: fi, member, k },
                );
            }
            for k in 0..f.size {
                graph.add_edge(first + k, first + (k + 1) % f.size);
            }
        }
    }
    Truncation { graph, points }
}

pub fn truncate(s: &SystemPresentation, n: usize) -> FiniteGraph {
    truncation(s, n).graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_n_sigma, make_odd_cycle, make_sigma_p, make_x1, PTuple};

    #[test]
    fn odd_cycle_truncates_to_a_triangle() {
        for n in [1, 5] {
            let g = truncate(&make_odd_cycle(0), n);
            assert_eq!(g.vertex_count(), 3);
            assert_eq!(g.edge_count(), 3);
        }
    }

    #[test]
    fn zero_sigma_window_is_a_path_and_a_fixed_vertex() {
        let g = truncate(&make_n_sigma(0), 2);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 4);
        let fixed = g.index_of("y0:0").unwrap();
        assert_eq!(g.degree(fixed), 0);
        let degrees: Vec<usize> = (-2..=2).map(|k| g.degree(g.index_of(&format!("z:{k}")).unwrap())).collect();
        assert_eq!(degrees, vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn sigma_p_window_size() {
        let s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        assert_eq!(truncate(&s, 3).vertex_count(), 2 + 7);
    }

    #[test]
    fn two_point_orbit_contributes_one_edge() {
        let s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        let g = truncate(&s, 1);
        assert_eq!(g.edge_count(), 1 + 2);
    }

    #[test]
    fn family_members_are_windowed() {
        let g = truncate(&make_x1(), 4);
        assert_eq!(g.vertex_count(), 1 + 8);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn windows_grow_as_induced_subgraphs() {
        let s = make_sigma_p(&PTuple::new(vec![2, 4], 1, vec![1]).unwrap());
        let small = truncate(&s, 3);
        let big = truncate(&s, 4);
        let keep: Vec<usize> = small.labels().iter().map(|l| big.index_of(l).unwrap()).collect();
        let induced = big.induced(&keep);
        assert_eq!(induced.edges(), small.edges());
    }
}
