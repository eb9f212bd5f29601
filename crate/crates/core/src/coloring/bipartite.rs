use std::collections::VecDeque;

use crate::analysis::FiniteGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColoring {
    Coloring(Vec<u8>),
    /// Vertices of an odd cycle, in order.
    OddCycle(Vec<usize>),
}

impl TwoColoring {
    pub fn coloring(&self) -> Option<&[u8]> {
        match self {
            TwoColoring::Coloring(c) => Some(c),
            TwoColoring::OddCycle(_) => None,
        }
    }
}

/// Breadth-first 2-coloring; a conflicting edge closes an odd cycle
/// through the search tree.
pub fn finite_two_colorable(g: &FiniteGraph) -> TwoColoring {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = color[u] ^ 1;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return TwoColoring::OddCycle(close_cycle(u, v, &parent, &depth));
                }
            }
        }
    }
    TwoColoring::Coloring(color)
}

fn close_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up = vec![a];
    let mut down = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        down.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up.push(a);
        down.push(b);
    }
    down.pop();
    down.reverse();
    up.extend(down);
    up
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{cycle_graph, path_graph};
    use proptest::prelude::*;

    fn is_odd_cycle(g: &FiniteGraph, c: &[usize]) -> bool {
        let mut sorted = c.to_vec();
        sorted.sort();
        sorted.dedup();
        c.len() % 2 == 1
            && sorted.len() == c.len()
            && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    fn exhaustive_two_colorable(g: &FiniteGraph) -> bool {
        let n = g.vertex_count();
        let edges = g.edges();
        (0u32..1 << n).any(|mask| edges.iter().all(|&(u, v)| (mask >> u) & 1 != (mask >> v) & 1))
    }

    #[test]
    fn triangle_gives_a_three_cycle() {
        let g = cycle_graph(3);
        let TwoColoring::OddCycle(c) = finite_two_colorable(&g) else { panic!() };
        assert_eq!(c.len(), 3);
        assert!(is_odd_cycle(&g, &c));
    }

    #[test]
    fn path_alternates() {
        assert_eq!(finite_two_colorable(&path_graph(5)), TwoColoring::Coloring(vec![0, 1, 0, 1, 0]));
    }

    #[test]
    fn even_cycle_is_bipartite() {
        let g = cycle_graph(6);
        let TwoColoring::Coloring(c) = finite_two_colorable(&g) else { panic!() };
        assert!(g.edges().iter().all(|&(u, v)| c[u] != c[v]));
    }

    fn arb_graph(max: usize) -> impl Strategy<Value = FiniteGraph> {
        (1..=max).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |es| {
                let mut g = FiniteGraph::with_vertices((0..n).map(|i| i.to_string()));
                for (u, v) in es {
                    g.add_edge(u, v);
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_exhaustive_enumeration(g in arb_graph(20)) {
            let answer = finite_two_colorable(&g);
            prop_assert_eq!(answer.coloring().is_some(), exhaustive_two_colorable(&g));
            match answer {
                TwoColoring::Coloring(c) => {
                    prop_assert!(g.edges().iter().all(|&(u, v)| c[u] != c[v]));
                }
                TwoColoring::OddCycle(c) => prop_assert!(is_odd_cycle(&g, &c)),
            }
        }
    }
}
