use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::FiniteGraph;

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "map")]
pub enum HomOutcome {
    /// `map[v]` is the image of source vertex `v`.
    Found(Vec<usize>),
    NotFound,
    /// The node budget ran out before the search finished.
    Unknown,
}

impl HomOutcome {
    pub fn map(&self) -> Option<&[usize]> {
        match self {
            HomOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Bits {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn and(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn any_outside(&self, used: &Bits) -> bool {
        self.0.iter().zip(&used.0).any(|(a, u)| a & !u != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

type Check<'a> = dyn Fn(&[Option<usize>], usize) -> bool + Sync + 'a;

/// Backtracking search for a homomorphism between finite graphs with
/// forward checking on candidate sets.
pub struct HomSearch<'a> {
    source: &'a FiniteGraph,
    target: &'a FiniteGraph,
    injective: bool,
    budget: u64,
    domains: Option<Vec<Vec<usize>>>,
    check: Option<Box<Check<'a>>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a FiniteGraph, target: &'a FiniteGraph) -> Self {
        HomSearch { source, target, injective: true, budget: DEFAULT_BUDGET, domains: None, check: None }
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    /// Candidate nodes tried before giving up with [`HomOutcome::Unknown`].
    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    /// Allowed images per source vertex.
    pub fn domains(mut self, domains: Vec<Vec<usize>>) -> Self {
        self.domains = Some(domains);
        self
    }

    /// Extra test on each partial map, called with the map so far and the
    /// vertex just assigned; returning false prunes the branch.
    pub fn check(mut self, f: impl Fn(&[Option<usize>], usize) -> bool + Sync + 'a) -> Self {
        self.check = Some(Box::new(f));
        self
    }

    /// Source vertices in search order: start from the highest degree,
    /// then keep taking the vertex with most already-placed neighbors.
    /// Ties go to higher degree, then smaller label.
    fn order(&self) -> Vec<usize> {
        let g = self.source;
        let n = g.vertex_count();
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    links[a]
                        .cmp(&links[b])
                        .then(g.degree(a).cmp(&g.degree(b)))
                        .then(g.label(b).cmp(g.label(a)))
                })
                .expect("unplaced vertex");
            placed[v] = true;
            order.push(v);
            for w in g.neighbors(v) {
                links[w] += 1;
            }
        }
        order
    }

    fn initial_domains(&self) -> Vec<Bits> {
        let (g, h) = (self.source, self.target);
        let m = h.vertex_count();
        (0..g.vertex_count())
            .map(|v| {
                let mut d = match &self.domains {
                    Some(ds) => {
                        let mut b = Bits::empty(m);
                        for &x in &ds[v] {
                            b.set(x);
                        }
                        b
                    }
                    None => Bits::full(m),
                };
                if self.injective {
                    for x in 0..m {
                        if h.degree(x) < g.degree(v) {
                            d.clear(x);
                        }
                    }
                }
                if g.degree(v) > 0 {
                    for x in 0..m {
                        if h.degree(x) == 0 {
                            d.clear(x);
                        }
                    }
                }
                d
            })
            .collect()
    }

    pub fn run(&self) -> HomOutcome {
        let order = self.order();
        let mut state = State::new(self);
        state.search(&order, 0)
    }

    /// Splits on the images of the first vertex and searches the branches
    /// in parallel, each with the full budget. The reported map is the one
    /// from the first successful branch in candidate order.
    pub fn run_parallel(&self) -> HomOutcome {
        let order = self.order();
        let Some(&first) = order.first() else {
            return HomOutcome::Found(Vec::new());
        };
        let root = State::new(self);
        let candidates: Vec<usize> = root.domains[first].iter().collect();
        let results: Vec<HomOutcome> = candidates
            .par_iter()
            .map(|&x| {
                let mut state = State::new(self);
                match state.assign(first, x) {
                    Some(saved) => {
                        let out = state.search(&order, 1);
                        state.undo(first, x, saved);
                        out
                    }
                    None => HomOutcome::NotFound,
                }
            })
            .collect();
        if let Some(found) = results.iter().find(|r| matches!(r, HomOutcome::Found(_))) {
            return found.clone();
        }
        if results.iter().any(|r| *r == HomOutcome::Unknown) {
            HomOutcome::Unknown
        } else {
            HomOutcome::NotFound
        }
    }
}

struct State<'s, 'a> {
    search: &'s HomSearch<'a>,
    adjacency: Vec<Bits>,
    domains: Vec<Bits>,
    image: Vec<Option<usize>>,
    used: Bits,
    nodes: u64,
    exhausted: bool,
}

impl<'s, 'a> State<'s, 'a> {
    fn new(search: &'s HomSearch<'a>) -> Self {
        let h = search.target;
        let m = h.vertex_count();
        let adjacency = (0..m)
            .map(|x| {
                let mut b = Bits::empty(m);
                for y in h.neighbors(x) {
                    b.set(y);
                }
                b
            })
            .collect();
        State {
            search,
            adjacency,
            domains: search.initial_domains(),
            image: vec![None; search.source.vertex_count()],
            used: Bits::empty(m),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Places `v` at `x` and narrows the neighbors' candidates. Returns the
    /// overwritten candidate sets, or `None` (with nothing changed) if some
    /// neighbor is left without candidates or the check fails.
    fn assign(&mut self, v: usize, x: usize) -> Option<Vec<(usize, Bits)>> {
        let injective = self.search.injective;
        self.image[v] = Some(x);
        if injective {
            self.used.set(x);
        }
        let mut saved = Vec::new();
        let mut ok = true;
        for w in self.search.source.neighbors(v) {
            if self.image[w].is_some() {
                continue;
            }
            saved.push((w, self.domains[w].clone()));
            self.domains[w].and(&self.adjacency[x]);
            let alive = if injective {
                self.domains[w].any_outside(&self.used)
            } else {
                self.domains[w].iter().next().is_some()
            };
            if !alive {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(check) = &self.search.check {
                ok = check(&self.image, v);
            }
        }
        if ok {
            Some(saved)
        } else {
            self.undo(v, x, saved);
            None
        }
    }

    fn undo(&mut self, v: usize, x: usize, saved: Vec<(usize, Bits)>) {
        for (w, d) in saved.into_iter().rev() {
            self.domains[w] = d;
        }
        self.image[v] = None;
        if self.search.injective {
            self.used.clear(x);
        }
    }

    fn search(&mut self, order: &[usize], depth: usize) -> HomOutcome {
        if depth == order.len() {
            return HomOutcome::Found(self.image.iter().map(|x| x.expect("complete map")).collect());
        }
        let v = order[depth];
        let candidates: Vec<usize> = self.domains[v].iter().collect();
        for x in candidates {
            if self.search.injective && self.used.has(x) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.search.budget {
                self.exhausted = true;
                return HomOutcome::Unknown;
            }
            if let Some(saved) = self.assign(v, x) {
                let out = self.search(order, depth + 1);
                self.undo(v, x, saved);
                if out != HomOutcome::NotFound {
                    return out;
                }
            }
        }
        if self.exhausted {
            HomOutcome::Unknown
        } else {
            HomOutcome::NotFound
        }
    }
}

/// Injective map carrying every edge of `g` to an edge of `h`.
pub fn injective_hom_exists(g: &FiniteGraph, h: &FiniteGraph) -> HomOutcome {
    HomSearch::new(g, h).run()
}

/// Same without injectivity.
pub fn hom_exists(g: &FiniteGraph, h: &FiniteGraph) -> HomOutcome {
    HomSearch::new(g, h).injective(false).run()
}

pub fn is_homomorphism(g: &FiniteGraph, h: &FiniteGraph, map: &[usize], injective: bool) -> bool {
    if map.len() != g.vertex_count() || map.iter().any(|&x| x >= h.vertex_count()) {
        return false;
    }
    if injective {
        let mut seen = std::collections::BTreeSet::new();
        if !map.iter().all(|x| seen.insert(x)) {
            return false;
        }
    }
    g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}
