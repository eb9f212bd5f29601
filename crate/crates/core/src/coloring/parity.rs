use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{OrbitKind, SystemPresentation};

/// `x_left ⊕ x_right = rhs`, contributed by one connector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XorEquation {
    pub left: usize,
    pub right: usize,
    pub rhs: u8,
    pub connector: String,
}

/// One boolean per even limit orbit (which parity class gets color 0) and
/// one equation per connector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityConstraintSystem {
    pub variables: Vec<String>,
    pub equations: Vec<XorEquation>,
}

/// One traversed equation of a cycle: from variable `from` to variable `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleStep {
    pub equation: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParitySolution {
    Consistent(Vec<u8>),
    /// A shortest cycle of equations whose right-hand sides sum to 1.
    Inconsistent(Vec<CycleStep>),
}

fn par(x: i64) -> u8 {
    x.rem_euclid(2) as u8
}

/// Builds the system for a presentation already stripped of removable parts.
pub fn constraint_system(s: &SystemPresentation) -> Result<ParityConstraintSystem> {
    for o in &s.orbits {
        if o.kind == OrbitKind::Limit && o.length == 1 {
            return Err(Error::PreconditionViolated(format!("orbit {} is a fixed limit orbit", o.id)));
        }
        if o.length >= 3 && o.length % 2 == 1 {
            return Err(Error::PreconditionViolated(format!(
                "orbit {} has odd length {}",
                o.id, o.length
            )));
        }
    }
    if let Some(f) = s.families.iter().find(|f| f.size % 2 == 1) {
        return Err(Error::PreconditionViolated(format!(
            "family {} has members of odd size {}",
            f.id, f.size
        )));
    }
    let limits: Vec<usize> = (0..s.orbits.len())
        .filter(|&i| s.orbits[i].kind == OrbitKind::Limit)
        .collect();
    let variable_of = |id: &str| limits.iter().position(|&i| s.orbits[i].id == id);
    let mut equations = Vec::with_capacity(s.connectors.len());
    for c in &s.connectors {
        let (Some(left), Some(right)) = (variable_of(&c.left.orbit), variable_of(&c.right.orbit)) else {
            return Err(Error::PreconditionViolated(format!(
                "connector {} does not join two limit orbits",
                c.id
            )));
        };
        equations.push(XorEquation {
            left,
            right,
            rhs: par(c.left.anchor as i64) ^ par(c.right.anchor as i64),
            connector: c.id.clone(),
        });
    }
    Ok(ParityConstraintSystem {
        variables: limits.iter().map(|&i| s.orbits[i].id.clone()).collect(),
        equations,
    })
}

impl ParityConstraintSystem {
    /// Union-find with parity: consistent systems get the assignment in
    /// which every component root is 0.
    pub fn solve(&self) -> ParitySolution {
        let n = self.variables.len();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut offset = vec![0u8; n];
        fn find(parent: &mut [usize], offset: &mut [u8], v: usize) -> (usize, u8) {
            let p = parent[v];
            if p == v {
                return (v, 0);
            }
            let (root, above) = find(parent, offset, p);
            offset[v] ^= above;
            parent[v] = root;
            (root, offset[v])
        }
        let mut consistent = true;
        for eq in &self.equations {
            let (ra, pa) = find(&mut parent, &mut offset, eq.left);
            let (rb, pb) = find(&mut parent, &mut offset, eq.right);
            if ra == rb {
                if pa ^ pb != eq.rhs {
                    consistent = false;
                    break;
                }
            } else {
                parent[rb] = ra;
                offset[rb] = pa ^ pb ^ eq.rhs;
            }
        }
        if consistent {
            let values = (0..n).map(|v| find(&mut parent, &mut offset, v).1).collect();
            ParitySolution::Consistent(values)
        } else {
            ParitySolution::Inconsistent(self.shortest_odd_cycle().expect("inconsistent systems have odd cycles"))
        }
    }

    /// Shortest cycle with odd right-hand side sum. Equations are tried in
    /// lexicographic connector order and the first shortest one wins.
    pub fn shortest_odd_cycle(&self) -> Option<Vec<CycleStep>> {
        let n = self.variables.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, eq) in self.equations.iter().enumerate() {
            incident[eq.left].push(i);
            if eq.right != eq.left {
                incident[eq.right].push(i);
            }
        }
        let mut order: Vec<usize> = (0..self.equations.len()).collect();
        order.sort_by(|&a, &b| self.equations[a].connector.cmp(&self.equations[b].connector).then(a.cmp(&b)));

        let mut best: Option<Vec<CycleStep>> = None;
        for &e in &order {
            let eq = &self.equations[e];
            let first = CycleStep { equation: e, from: eq.left, to: eq.right };
            if eq.left == eq.right {
                if eq.rhs == 1 {
                    return Some(vec![first]);
                }
                continue;
            }
            let limit = best.as_ref().map_or(usize::MAX, Vec::len);
            // Nodes are (variable, accumulated parity), starting after the
            // first step; the walk must come back to the start with parity
            // rhs ⊕ 1 so the whole cycle is odd.
            let start = eq.right * 2;
            let goal = eq.left * 2 + (eq.rhs ^ 1) as usize;
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; 2 * n];
            let mut dist = vec![usize::MAX; 2 * n];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                if node == goal || dist[node] + 2 > limit {
                    break;
                }
                let (v, p) = (node / 2, node % 2);
                for &i in &incident[v] {
                    if i == e {
                        continue;
                    }
                    let other = &self.equations[i];
                    let w = if other.left == v { other.right } else { other.left };
                    let next = w * 2 + (p ^ other.rhs as usize);
                    if dist[next] == usize::MAX {
                        dist[next] = dist[node] + 1;
                        prev[next] = Some((node, i));
                        queue.push_back(next);
                    }
                }
            }
            if dist[goal] == usize::MAX || dist[goal] + 1 >= limit {
                continue;
            }
            let mut tail = Vec::new();
            let mut node = goal;
            while let Some((from, i)) = prev[node] {
                tail.push(CycleStep { equation: i, from: from / 2, to: node / 2 });
                node = from;
            }
            tail.reverse();
            let mut cycle = vec![first];
            cycle.extend(tail);
            best = Some(cycle);
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_n_sigma, make_sigma_p, PTuple};

    fn system(vars: usize, eqs: &[(usize, usize, u8)]) -> ParityConstraintSystem {
        ParityConstraintSystem {
            variables: (0..vars).map(|i| format!("v{i}")).collect(),
            equations: eqs
                .iter()
                .enumerate()
                .map(|(i, &(left, right, rhs))| XorEquation { left, right, rhs, connector: format!("e{i}") })
                .collect(),
        }
    }

    /// Every assignment, checked directly.
    fn brute_force_consistent(s: &ParityConstraintSystem) -> bool {
        let n = s.variables.len();
        (0u32..1 << n).any(|mask| {
            s.equations
                .iter()
                .all(|e| (((mask >> e.left) ^ (mask >> e.right)) & 1) as u8 == e.rhs)
        })
    }

    #[test]
    fn single_orbit_sigma_p_is_inconsistent() {
        let s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        let sys = constraint_system(&s).unwrap();
        assert_eq!(sys.variables.len(), 1);
        assert_eq!(sys.equations, vec![XorEquation { left: 0, right: 0, rhs: 1, connector: "z0".into() }]);
        assert!(matches!(sys.solve(), ParitySolution::Inconsistent(c) if c.len() == 1));
    }

    #[test]
    fn two_orbit_sigma_p_equations() {
        let s = make_sigma_p(&PTuple::new(vec![2, 2], 1, vec![0]).unwrap());
        let sys = constraint_system(&s).unwrap();
        let eqs: Vec<(usize, usize, u8)> = sys.equations.iter().map(|e| (e.left, e.right, e.rhs)).collect();
        assert_eq!(eqs, vec![(0, 1, 0), (1, 0, 1)]);
    }

    #[test]
    fn fixed_limit_orbit_is_refused() {
        let err = constraint_system(&make_n_sigma(2)).unwrap_err();
        assert!(err.to_string().contains("y0"));
    }

    #[test]
    fn finds_the_short_odd_cycle() {
        // A long odd cycle 0-1-2-3-4-0 and a short one 5-6-5.
        let sys = system(
            7,
            &[(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 4, 0), (4, 0, 1), (5, 6, 0), (6, 5, 1)],
        );
        let ParitySolution::Inconsistent(cycle) = sys.solve() else { panic!() };
        assert_eq!(cycle.len(), 2);
        let sum: u8 = cycle.iter().map(|s| sys.equations[s.equation].rhs).fold(0, |a, b| a ^ b);
        assert_eq!(sum, 1);
    }

    #[test]
    fn consistent_assignment_satisfies_everything() {
        let sys = system(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 0), (3, 0, 0)]);
        let ParitySolution::Consistent(x) = sys.solve() else { panic!() };
        for e in &sys.equations {
            assert_eq!(x[e.left] ^ x[e.right], e.rhs);
        }
    }

    use proptest::prelude::*;

    fn arb_system() -> impl Strategy<Value = ParityConstraintSystem> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 0u8..2), 0..10).prop_map(move |eqs| system(n, &eqs))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(sys in arb_system()) {
            let fast = matches!(sys.solve(), ParitySolution::Consistent(_));
            prop_assert_eq!(fast, brute_force_consistent(&sys));
        }

        #[test]
        fn odd_cycles_are_closed_simple_and_odd(sys in arb_system()) {
            if let ParitySolution::Inconsistent(cycle) = sys.solve() {
                let sum = cycle.iter().map(|s| sys.equations[s.equation].rhs).fold(0, |a, b| a ^ b);
                prop_assert_eq!(sum, 1);
                for w in cycle.windows(2) {
                    prop_assert_eq!(w[0].to, w[1].from);
                }
                prop_assert_eq!(cycle.last().unwrap().to, cycle[0].from);
                let mut seen: Vec<usize> = cycle.iter().map(|s| s.from).collect();
                seen.sort();
                seen.dedup();
                prop_assert_eq!(seen.len(), cycle.len());
            }
        }

        #[test]
        fn duplicating_an_equation_keeps_consistency(sys in arb_system(), pick in 0usize..10) {
            let before = matches!(sys.solve(), ParitySolution::Consistent(_));
            let mut doubled = sys.clone();
            if !sys.equations.is_empty() {
                let e = sys.equations[pick % sys.equations.len()].clone();
                doubled.equations.push(e);
            }
            prop_assert_eq!(before, matches!(doubled.solve(), ParitySolution::Consistent(_)));
        }
    }
}
