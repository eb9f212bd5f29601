use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::analysis::FiniteGraph;
use crate::order::{HomOutcome, HomSearch, DEFAULT_BUDGET};

fn subset_label(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().join(","))
}

/// `K(n, k)`: the `k`-subsets of `{1..n}`, adjacent when disjoint.
/// Vertices are in lexicographic order.
pub fn kneser_graph(n: usize, k: usize) -> FiniteGraph {
    let sets: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
    let mut g = FiniteGraph::with_vertices(sets.iter().map(|s| subset_label(s)));
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if a.iter().all(|x| !b.contains(x)) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn complete_graph(n: usize) -> FiniteGraph {
    let mut g = FiniteGraph::with_vertices((0..n).map(|i| i.to_string()));
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j);
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChromaticOutcome {
    Chi(usize),
    /// No proper coloring with at most the allowed number of colors.
    NotFound,
    Unknown,
}

/// Least number of colors, up to `max_colors`, admitting a proper coloring.
pub fn chromatic_number(g: &FiniteGraph, max_colors: usize) -> ChromaticOutcome {
    chromatic_number_with_budget(g, max_colors, DEFAULT_BUDGET)
}

pub fn chromatic_number_with_budget(g: &FiniteGraph, max_colors: usize, budget: u64) -> ChromaticOutcome {
    if g.vertex_count() == 0 {
        return ChromaticOutcome::Chi(0);
    }
    for c in 1..=max_colors {
        let target = complete_graph(c);
        let outcome = HomSearch::new(g, &target).injective(false).budget(budget).run_parallel();
        match outcome {
            HomOutcome::Found(_) => return ChromaticOutcome::Chi(c),
            HomOutcome::NotFound => {}
            HomOutcome::Unknown => return ChromaticOutcome::Unknown,
        }
    }
    ChromaticOutcome::NotFound
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KneserRow {
    pub p: u32,
    #[serde(serialize_with = "decimal")]
    pub n: BigUint,
    #[serde(serialize_with = "decimal")]
    pub k: BigUint,
    /// `C(n, k)`, the number of vertices.
    #[serde(serialize_with = "decimal")]
    pub vertices: BigUint,
    /// `n − 2k + 2`.
    #[serde(serialize_with = "decimal")]
    pub chi: BigUint,
}

/// Big integers go out as decimal strings.
fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KneserReport {
    pub rows: Vec<KneserRow>,
    /// `3 ≤ n_{p+1}/k_{p+1} < n_p/k_p`.
    pub ratios_decrease: bool,
    pub vertex_counts_increase: bool,
    pub chromatic_numbers_distinct: bool,
}

impl KneserReport {
    pub fn passed(&self) -> bool {
        self.ratios_decrease && self.vertex_counts_increase && self.chromatic_numbers_distinct
    }
}

fn binomial(n: &BigUint, k: &BigUint) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = BigUint::one();
    // acc = C(n, i - 1) at the top of each step, so the division is exact.
    while &i <= k {
        acc = acc * (n + 1u32 - &i) / &i;
        i += 1u32;
    }
    acc
}

/// Checks the sequence `n_p = 3·2^p + 1`, `k_p = 2^p` for `p ≤ p_max`.
pub fn kneser_sequence_check(p_max: u32) -> KneserReport {
    let rows: Vec<KneserRow> = (0..=p_max)
        .map(|p| {
            let k = BigUint::one() << p;
            let n = &k * 3u32 + 1u32;
            let vertices = binomial(&n, &k);
            let chi = &n + 2u32 - &k * 2u32;
            KneserRow { p, n, k, vertices, chi }
        })
        .collect();
    let ratios_decrease = rows.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        b.n >= &b.k * 3u32 && &b.n * &a.k < &a.n * &b.k
    });
    let vertex_counts_increase = rows.windows(2).all(|w| w[0].vertices < w[1].vertices);
    let chromatic_numbers_distinct = rows.iter().map(|r| &r.chi).all_unique();
    KneserReport { rows, ratios_decrease, vertex_counts_increase, chromatic_numbers_distinct }
}
