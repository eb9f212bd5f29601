use serde::Serialize;

use super::seq::EventuallyPeriodicSeq;
use crate::analysis::FiniteGraph;
use crate::error::{Error, Result};

/// Vertices `ε^∞`, `01^∞` and `β` for blocks `k < depth`, with the induced
/// edges. Labels spell the words: `2^inf`, `0 1^inf`, `0^5 1^inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XnuSample {
    pub kappa: usize,
    pub nu: EventuallyPeriodicSeq,
    pub depth: usize,
    pub graph: FiniteGraph,
}

impl XnuSample {
    pub fn to_dot(&self) -> String {
        self.graph.to_dot()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XnuCounts {
    pub vertices: usize,
    pub edges: usize,
}

impl XnuCounts {
    /// Sizes of the sample without building it. Each block contributes one
    /// clique of `κ` words per entry; every entry past block 0 also links
    /// its `κ − 1` nonzero words to the previous `0^n 1^∞`.
    pub fn closed_form(kappa: usize, nu: &EventuallyPeriodicSeq, depth: usize) -> XnuCounts {
        let total = nu.partial_sum(depth) as usize;
        let first = if depth > 0 { nu.at(0) as usize } else { 0 };
        XnuCounts {
            vertices: 2 * kappa + kappa * total,
            edges: kappa * (kappa - 1)
                + 1
                + if depth > 0 { kappa - 1 } else { 0 }
                + total * kappa * (kappa - 1) / 2
                + (kappa - 1) * (total - first),
        }
    }
}

fn limit(e: usize) -> String {
    format!("{e}^inf")
}

fn word(e: usize, n: u64, tail: usize) -> String {
    format!("{e}^{n} {tail}^inf")
}

struct Words<'a> {
    kappa: usize,
    nu: &'a EventuallyPeriodicSeq,
}

impl Words<'_> {
    /// The symbol after `ε` in the tail, read modulo `2κ − 1` so that the
    /// words of even blocks close up as `(2κ−2)^n 0^∞`.
    fn next(&self, e: usize) -> usize {
        (e + 1) % (2 * self.kappa - 1)
    }

    /// `β_ε^{ν,k,j}`. Indices `j ≥ ν(k)` are allowed and name the same
    /// word as a later block.
    fn beta(&self, e: usize, k: usize, j: u64) -> String {
        word(e, 2 + j + self.nu.partial_sum(k), self.next(e))
    }

    fn odd_symbols(&self) -> std::ops::Range<usize> {
        1..self.kappa
    }

    fn even_symbols(&self) -> std::ops::Range<usize> {
        self.kappa..2 * self.kappa - 1
    }
}

/// The finite piece of `(X_ν, G_ν)` made of blocks `k < depth`.
pub fn make_x_nu(kappa: usize, nu: &EventuallyPeriodicSeq, depth: usize) -> Result<XnuSample> {
    if kappa < 2 {
        return Err(Error::InvalidArgument(format!("kappa must be at least 2, got {kappa}")));
    }
    if depth < 1 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let w = Words { kappa, nu };
    let mut g = FiniteGraph::new();
    for e in 0..2 * kappa - 1 {
        g.add_vertex(limit(e));
    }
    let zero_one = word(0, 1, 1).replace("0^1 ", "0 ");
    g.add_vertex(zero_one.clone());
    for k in 0..depth {
        let symbols = if k % 2 == 1 { w.odd_symbols() } else { w.even_symbols() };
        for j in 0..nu.at(k) {
            g.add_vertex(w.beta(0, k, j));
            for e in symbols.clone() {
                g.add_vertex(w.beta(e, k, j));
            }
        }
    }

    let mut edges: Vec<(String, String)> = Vec::new();
    for a in 0..kappa {
        for b in a + 1..kappa {
            edges.push((limit(a), limit(b)));
        }
    }
    let low: Vec<usize> = std::iter::once(0).chain(w.even_symbols()).collect();
    for (i, &a) in low.iter().enumerate() {
        for &b in &low[i + 1..] {
            edges.push((limit(a), limit(b)));
        }
    }
    edges.push((limit(0), zero_one.clone()));
    for e in w.even_symbols() {
        edges.push((zero_one.clone(), w.beta(e, 0, 0)));
    }
    for k in (0..depth).step_by(2) {
        // Even block `k` and the odd block after it.
        for j in 0..nu.at(k) {
            for (i, &a) in low.iter().enumerate() {
                for &b in &low[i + 1..] {
                    edges.push((w.beta(a, k, j), w.beta(b, k, j)));
                }
            }
        }
        for j in 0..nu.at(k + 1) {
            for e in w.odd_symbols() {
                edges.push((w.beta(0, k, nu.at(k) - 1 + j), w.beta(e, k + 1, j)));
            }
            for a in 0..kappa {
                for b in a + 1..kappa {
                    edges.push((w.beta(a, k + 1, j), w.beta(b, k + 1, j)));
                }
            }
        }
        for j in 0..nu.at(k + 2) {
            for e in w.even_symbols() {
                edges.push((w.beta(0, k + 1, nu.at(k + 1) - 1 + j), w.beta(e, k + 2, j)));
            }
        }
    }
    for (a, b) in edges {
        if let (Some(u), Some(v)) = (g.index_of(&a), g.index_of(&b)) {
            g.add_edge(u, v);
        }
    }
    Ok(XnuSample { kappa, nu: nu.clone(), depth, graph: g })
}

/// Which way the limit cliques are matched: odd blocks of the source onto
/// even blocks of the target, or onto odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    OddToEven,
    OddToOdd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum ForcedOutcome {
    /// Some alignment survives every forced equation checked.
    ForcedTailMatch { source_block: usize, target_block: usize, branch: Branch },
    /// Every alignment has failed by this index of the source sequence.
    Contradiction { index: usize },
}

/// Replays the forcing argument against an injective continuous
/// homomorphism `X_ν → X_ν'`. It must fix `0^∞` and, far enough out, send
/// source block `a` onto target block `b` entry by entry, where `a` is
/// even and the parity of `b` depends on which limit clique goes where.
/// The first word of the next block then has to land on the first word of
/// the next target block, which compares exponents and forces
/// `ν(a + n) = ν'(b + n)` for every `n`. Each candidate alignment is
/// followed for `bound` steps.
pub fn x_nu_forced_compare(
    kappa: usize,
    nu: &EventuallyPeriodicSeq,
    target: &EventuallyPeriodicSeq,
    bound: usize,
) -> Result<ForcedOutcome> {
    if kappa < 2 {
        return Err(Error::InvalidArgument(format!("kappa must be at least 2, got {kappa}")));
    }
    let even_at_least = |x: usize| x.max(2).next_multiple_of(2);
    let a0 = even_at_least(nu.preperiod.len());
    let b0 = target.preperiod.len().max(1);
    let mut worst = 0;
    for a in (0..nu.period.len()).map(|i| a0 + 2 * i) {
        for b in b0..b0 + 2 * target.period.len() {
            match first_failure(nu, target, a, b, bound) {
                None => {
                    let branch = if b % 2 == 1 { Branch::OddToEven } else { Branch::OddToOdd };
                    return Ok(ForcedOutcome::ForcedTailMatch { source_block: a, target_block: b, branch });
                }
                Some(n) => worst = worst.max(a + n),
            }
        }
    }
    Ok(ForcedOutcome::Contradiction { index: worst })
}

/// Follows the images block by block. Once source block `a + n − 1` sits
/// on target block `b + n − 1`, the last `0^m 1^∞` of the source block has
/// exponent `m = 2 + S_ν(a + n) − 1` in source terms, and its image
/// `0^{m'} 1^∞` must be followed by the first word of target block
/// `b + n`. Comparing the two block lengths at each step is the same as
/// comparing exponents.
fn first_failure(
    nu: &EventuallyPeriodicSeq,
    target: &EventuallyPeriodicSeq,
    a: usize,
    b: usize,
    bound: usize,
) -> Option<usize> {
    // Exponent offset between a source word and its image, fixed by the
    // first block of the alignment.
    let offset = target.partial_sum(b) as i64 - nu.partial_sum(a) as i64;
    for n in 0..bound {
        let source_end = 2 + nu.partial_sum(a + n + 1) as i64 - 1;
        let image_end = source_end + offset;
        let target_end = 2 + target.partial_sum(b + n + 1) as i64 - 1;
        if image_end != target_end {
            return Some(n);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antichains::seq::et_equivalent;
    use std::collections::BTreeSet;

    fn seq(s: &str) -> EventuallyPeriodicSeq {
        s.parse().unwrap()
    }

    /// Edge set as label pairs, for comparing with hand-written lists.
    fn edge_set(g: &FiniteGraph) -> BTreeSet<(String, String)> {
        g.edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
                if a < b { (a, b) } else { (b, a) }
            })
            .collect()
    }

    /// The `κ = 2`, `ν = 1,3,2,…` picture, blocks 0 to 2.
    #[test]
    fn kappa_two_picture() {
        let s = make_x_nu(2, &seq("1,3,2;1"), 3).unwrap();
        let pictured = [
            ("0 1^inf", "2^2 0^inf"),
            ("0 1^inf", "0^inf"),
            ("0^2 1^inf", "1^3 2^inf"),
            ("0^2 1^inf", "2^2 0^inf"),
            ("1^3 2^inf", "0^3 1^inf"),
            ("0^3 1^inf", "1^4 2^inf"),
            ("1^4 2^inf", "0^4 1^inf"),
            ("0^4 1^inf", "1^5 2^inf"),
            ("1^5 2^inf", "0^5 1^inf"),
            ("0^5 1^inf", "2^6 0^inf"),
            ("0^6 1^inf", "2^6 0^inf"),
            ("0^6 1^inf", "2^7 0^inf"),
            ("0^7 1^inf", "2^7 0^inf"),
            ("1^inf", "0^inf"),
            ("0^inf", "2^inf"),
        ];
        let expected: BTreeSet<(String, String)> = pictured
            .iter()
            .map(|&(a, b)| if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) })
            .collect();
        assert_eq!(edge_set(&s.graph), expected);
        assert_eq!(s.graph.vertex_count(), 16);
    }

    /// Blocks 0 and 1 of the `κ = 3` picture.
    #[test]
    fn kappa_three_picture_top() {
        let s = make_x_nu(3, &seq("1,3,2;1"), 2).unwrap();
        let e = edge_set(&s.graph);
        let has = |a: &str, b: &str| e.contains(&if a < b { (a.into(), b.into()) } else { (b.into(), a.into()) });
        assert!(has("0 1^inf", "4^2 0^inf"));
        assert!(has("0 1^inf", "3^2 4^inf"));
        assert!(has("4^2 0^inf", "3^2 4^inf"));
        assert!(has("0^2 1^inf", "4^2 0^inf"));
        assert!(has("0^2 1^inf", "3^2 4^inf"));
        assert!(has("0^2 1^inf", "2^3 3^inf"));
        assert!(has("0^2 1^inf", "1^3 2^inf"));
        assert!(has("2^3 3^inf", "1^3 2^inf"));
        assert!(has("2^3 3^inf", "0^3 1^inf"));
        assert!(has("0^3 1^inf", "2^4 3^inf"));
        assert!(!has("0^2 1^inf", "0^3 1^inf"));
    }

    #[test]
    fn limit_cliques() {
        for kappa in 2..6 {
            let s = make_x_nu(kappa, &seq("2"), 1).unwrap();
            let g = &s.graph;
            let lim = |e: usize| g.index_of(&limit(e)).unwrap();
            for a in 0..2 * kappa - 1 {
                for b in 0..2 * kappa - 1 {
                    let low = |x: usize| x == 0 || x >= kappa;
                    let want = a != b && ((a < kappa && b < kappa) || (low(a) && low(b)));
                    assert_eq!(g.has_edge(lim(a), lim(b)), want, "κ={kappa} {a} {b}");
                }
            }
            assert_eq!(g.degree(lim(0)), 2 * kappa - 2 + 1);
        }
    }

    /// Every nonzero word of an odd block sees its `κ − 1` clique mates and
    /// the two neighboring `0^n 1^∞`.
    #[test]
    fn odd_block_neighborhoods() {
        for kappa in 2..5 {
            let nu = seq("2,3;1,2");
            let s = make_x_nu(kappa, &nu, 5).unwrap();
            let g = &s.graph;
            for k in [1usize, 3] {
                for j in 0..nu.at(k) {
                    let m = 2 + j + nu.partial_sum(k);
                    for e in 1..kappa {
                        let v = g.index_of(&word(e, m, e + 1)).unwrap();
                        let mut want: BTreeSet<String> =
                            (0..kappa).filter(|&x| x != e).map(|x| word(x, m, x + 1)).collect();
                        want.insert(word(0, m - 1, 1));
                        let got: BTreeSet<String> = g.neighbors(v).map(|u| g.label(u).to_string()).collect();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn counts_match_closed_form() {
        for kappa in 2..6 {
            for nu in ["1", "1,3,2;1", "2;3,1", "4,1;2,2,5"] {
                let nu = seq(nu);
                for depth in 1..7 {
                    let s = make_x_nu(kappa, &nu, depth).unwrap();
                    let c = XnuCounts::closed_form(kappa, &nu, depth);
                    assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (c.vertices, c.edges));
                }
            }
        }
    }

    #[test]
    fn deterministic_and_rejects_bad_input() {
        let nu = seq("1,2;3");
        assert_eq!(make_x_nu(3, &nu, 4).unwrap(), make_x_nu(3, &nu, 4).unwrap());
        assert!(make_x_nu(1, &nu, 4).is_err());
        assert!(make_x_nu(2, &nu, 0).is_err());
    }

    #[test]
    fn forced_examples() {
        let bound = |a: &EventuallyPeriodicSeq, b: &EventuallyPeriodicSeq| {
            4 * (a.period.iter().sum::<u64>() + b.period.iter().sum::<u64>()) as usize
        };
        let (a, b) = (seq("1,2"), seq("1,3"));
        assert!(matches!(x_nu_forced_compare(2, &a, &b, 8).unwrap(), ForcedOutcome::Contradiction { .. }));
        let c = seq("3,1;2,1,1");
        assert!(matches!(x_nu_forced_compare(2, &c, &c, bound(&c, &c)).unwrap(), ForcedOutcome::ForcedTailMatch { .. }));
        assert!(matches!(
            x_nu_forced_compare(2, &c, &c.shifted(1), bound(&c, &c)).unwrap(),
            ForcedOutcome::ForcedTailMatch { .. }
        ));
    }

    #[test]
    fn contradiction_exactly_off_tail_equivalence() {
        let samples: Vec<EventuallyPeriodicSeq> =
            ["1", "2", "1,2", "2,1", "1,3", "1,1,2", "3;1,2", "1,2;2,2,1", "5,5;1,1,2", "2,3,1", "1;3,2,1"]
                .iter()
                .map(|s| seq(s))
                .collect();
        for a in &samples {
            for b in &samples {
                let bound = 4 * (a.period.iter().sum::<u64>() + b.period.iter().sum::<u64>()) as usize;
                let out = x_nu_forced_compare(2, a, b, bound).unwrap();
                let refuted = matches!(out, ForcedOutcome::Contradiction { .. });
                assert_eq!(refuted, !et_equivalent(a, b), "{a} vs {b}: {out:?}");
            }
        }
    }
}
