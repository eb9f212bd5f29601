//! Continuous colorings: the decision procedure for every number of
//! colors, its witnesses and obstructions, and the finite oracles used to
//! cross-check the two-color case.

mod bipartite;
mod oracle;
mod parity;
mod witness;

pub use bipartite::{finite_two_colorable, TwoColoring};
pub use oracle::constrained_truncation_colorable;
pub use parity::{constraint_system, CycleStep, ParityConstraintSystem, ParitySolution, XorEquation};
pub use witness::{verify_witness, Witness};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{fixed_point_set, remove_removables};
use crate::error::{Error, Result};
use crate::presentation::{validate, OrbitKind, SystemPresentation};

/// Number of colors. Finite counts above three behave like three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kappa {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "inf")]
    Aleph0,
}

impl Kappa {
    pub const ALL: [Kappa; 5] = [Kappa::Zero, Kappa::One, Kappa::Two, Kappa::Three, Kappa::Aleph0];

    pub fn from_count(n: usize) -> Kappa {
        match n {
            0 => Kappa::Zero,
            1 => Kappa::One,
            2 => Kappa::Two,
            _ => Kappa::Three,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kappa::Zero => "0",
            Kappa::One => "1",
            Kappa::Two => "2",
            Kappa::Three => "3",
            Kappa::Aleph0 => "inf",
        })
    }
}

impl FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kappa> {
        match s.trim() {
            "0" => Ok(Kappa::Zero),
            "1" => Ok(Kappa::One),
            "2" => Ok(Kappa::Two),
            "3" => Ok(Kappa::Three),
            "inf" | "aleph0" => Ok(Kappa::Aleph0),
            other => Err(Error::InvalidArgument(format!(
                "number of colors must be 0, 1, 2, 3 or inf, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Obstruction {
    /// Zero colors on a nonempty space.
    NonEmpty,
    /// One color and `source` carries an edge.
    HasEdge { source: String },
    /// A fixed point that is a limit of non-fixed points.
    FixedPointNotOpen { orbit: String },
    /// An orbit or family member of odd size at least three.
    OddFiniteOrbit { source: String, length: usize },
    /// Connectors whose parity equations sum to 1 around a cycle; `orbits[i]`
    /// is where the `i`-th connector is entered.
    OddConstraintCycle { connectors: Vec<String>, orbits: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer")]
pub enum Answer {
    Colorable { witness: Witness },
    NotColorable { obstruction: Obstruction },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDecision {
    pub kappa: Kappa,
    #[serde(flatten)]
    pub answer: Answer,
}

impl ColoringDecision {
    pub fn is_colorable(&self) -> bool {
        matches!(self.answer, Answer::Colorable { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.answer {
            Answer::Colorable { witness } => Some(witness),
            Answer::NotColorable { .. } => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match &self.answer {
            Answer::Colorable { .. } => None,
            Answer::NotColorable { obstruction } => Some(obstruction),
        }
    }
}

/// Window radius past which the truncation oracle is expected to agree
/// with [`decide_continuous_coloring`]. An engineering bound, checked
/// empirically.
pub fn n0(s: &SystemPresentation) -> usize {
    2 * s.max_length().max(1) * (s.connectors.len() + s.families.len() + 1)
}

/// Decides whether the graph of `s` has a continuous coloring with `kappa`
/// colors.
pub fn decide_continuous_coloring(s: &SystemPresentation, kappa: Kappa) -> Result<ColoringDecision> {
    validate(s).into_result()?;
    let no = |obstruction| Ok(ColoringDecision { kappa, answer: Answer::NotColorable { obstruction } });
    let yes = |witness| Ok(ColoringDecision { kappa, answer: Answer::Colorable { witness } });
    match kappa {
        Kappa::Zero if s.is_empty() => yes(Witness::Empty),
        Kappa::Zero => no(Obstruction::NonEmpty),
        Kappa::One => match edge_source(s) {
            Some(source) => no(Obstruction::HasEdge { source }),
            None if s.is_empty() => yes(Witness::Empty),
            None => yes(Witness::Constant),
        },
        Kappa::Three | Kappa::Aleph0 => match first_fixed_limit(s) {
            Some(orbit) => no(Obstruction::FixedPointNotOpen { orbit }),
            None if s.is_empty() => yes(Witness::Empty),
            None => yes(witness::explicit_three_coloring(s)),
        },
        Kappa::Two => decide_two(s).map(|answer| ColoringDecision { kappa, answer }),
    }
}

fn first_fixed_limit(s: &SystemPresentation) -> Option<String> {
    fixed_point_set(s).fixed_limit_orbits.into_iter().next()
}

fn edge_source(s: &SystemPresentation) -> Option<String> {
    s.orbits
        .iter()
        .find(|o| o.length >= 2)
        .map(|o| o.id.clone())
        .or_else(|| s.connectors.first().map(|c| c.id.clone()))
        .or_else(|| s.families.first().map(|f| f.id.clone()))
}

fn decide_two(s: &SystemPresentation) -> Result<Answer> {
    let no = |obstruction| Ok(Answer::NotColorable { obstruction });
    if let Some(orbit) = first_fixed_limit(s) {
        return no(Obstruction::FixedPointNotOpen { orbit });
    }
    if s.is_empty() {
        return Ok(Answer::Colorable { witness: Witness::Empty });
    }
    let core = remove_removables(s);
    let odd_orbit = core
        .orbits
        .iter()
        .filter(|o| o.length >= 3 && o.length % 2 == 1)
        .min_by_key(|o| o.length)
        .map(|o| (o.id.clone(), o.length));
    let odd_family = core
        .families
        .iter()
        .filter(|f| f.size >= 3 && f.size % 2 == 1)
        .min_by_key(|f| f.size)
        .map(|f| (f.id.clone(), f.size));
    let odd = match (odd_orbit, odd_family) {
        (Some(o), Some(f)) if f.1 < o.1 => Some(f),
        (Some(o), _) => Some(o),
        (None, f) => f,
    };
    if let Some((source, length)) = odd {
        return no(Obstruction::OddFiniteOrbit { source, length });
    }
    let system = constraint_system(&core)?;
    match system.solve() {
        ParitySolution::Consistent(values) => {
            let mut orientation: BTreeMap<String, u8> = s
                .orbits
                .iter()
                .filter(|o| o.kind == OrbitKind::Limit)
                .map(|o| (o.id.clone(), 0))
                .collect();
            for (id, x) in system.variables.iter().zip(values) {
                orientation.insert(id.clone(), x);
            }
            Ok(Answer::Colorable { witness: Witness::Parity { orientation } })
        }
        ParitySolution::Inconsistent(cycle) => no(Obstruction::OddConstraintCycle {
            connectors: cycle.iter().map(|st| system.equations[st.equation].connector.clone()).collect(),
            orbits: cycle.iter().map(|st| system.variables[st.from].clone()).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{
        make_n_sigma, make_odd_cycle, make_sigma_p, make_x1, Connector, Endpoint, Family, Mode, PTuple,
        PeriodicOrbit,
    };
    use proptest::prelude::*;

    fn decide(s: &SystemPresentation, k: Kappa) -> ColoringDecision {
        decide_continuous_coloring(s, k).unwrap()
    }

    fn box_tuples() -> Vec<PTuple> {
        let mut out = Vec::new();
        for l in 0..=1usize {
            for lambdas in itertools::repeat_n([2usize, 4], l + 1).multi_cartesian_product() {
                for m in (1..lambdas[0]).step_by(2) {
                    for eps in itertools::repeat_n([0u8, 1], l).multi_cartesian_product() {
                        out.push(PTuple::new(lambdas.clone(), m, eps).unwrap());
                    }
                }
            }
        }
        out
    }
    use itertools::Itertools;

    #[test]
    fn odd_cycle_has_odd_orbit() {
        let d = decide(&make_odd_cycle(0), Kappa::Two);
        assert_eq!(
            d.obstruction(),
            Some(&Obstruction::OddFiniteOrbit { source: "y0".into(), length: 3 })
        );
        assert!(decide(&make_odd_cycle(0), Kappa::Three).is_colorable());
    }

    #[test]
    fn x1_fixed_point_is_not_open() {
        for k in [Kappa::Two, Kappa::Three, Kappa::Aleph0] {
            let d = decide(&make_x1(), k);
            assert_eq!(d.obstruction(), Some(&Obstruction::FixedPointNotOpen { orbit: "y0".into() }));
        }
    }

    #[test]
    fn sigma_p_box_needs_three_colors() {
        for p in box_tuples() {
            let s = make_sigma_p(&p);
            let d = decide(&s, Kappa::Two);
            assert!(
                matches!(d.obstruction(), Some(Obstruction::OddConstraintCycle { .. })),
                "{p}"
            );
            let d = decide(&s, Kappa::Aleph0);
            assert!(d.is_colorable(), "{p}");
            assert!(verify_witness(&s, d.witness().unwrap(), 8));
        }
    }

    #[test]
    fn n_sigma_aleph0() {
        for n in 0..=8 {
            let colorable = decide(&make_n_sigma(n), Kappa::Aleph0).is_colorable();
            assert_eq!(colorable, n % 2 == 1 && n != 1, "n = {n}");
        }
    }

    #[test]
    fn trivial_kappas() {
        let empty = SystemPresentation::empty(Mode::Subshift);
        for k in Kappa::ALL {
            assert!(decide(&empty, k).is_colorable());
        }
        assert!(!decide(&make_x1(), Kappa::Zero).is_colorable());
        assert_eq!(
            decide(&make_x1(), Kappa::One).obstruction(),
            Some(&Obstruction::HasEdge { source: "x".into() })
        );
        let mut points = SystemPresentation::empty(Mode::Homeomorphism);
        points.orbits.push(PeriodicOrbit { id: "p".into(), length: 1, kind: OrbitKind::Isolated, word: None });
        assert_eq!(decide(&points, Kappa::One).witness(), Some(&Witness::Constant));
    }

    #[test]
    fn kappa_spelling() {
        for k in Kappa::ALL {
            assert_eq!(k.to_string().parse::<Kappa>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{k}\""));
        }
        assert!("4".parse::<Kappa>().is_err());
        assert_eq!(Kappa::from_count(7), Kappa::Three);
    }

    #[test]
    fn decision_document_shape() {
        let s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        let v = serde_json::to_value(decide(&s, Kappa::Two)).unwrap();
        assert_eq!(v["answer"], "NotColorable");
        assert_eq!(v["obstruction"]["kind"], "OddConstraintCycle");
        assert_eq!(v["obstruction"]["connectors"], serde_json::json!(["z0"]));
        let back: ColoringDecision = serde_json::from_value(v).unwrap();
        assert_eq!(back, decide(&s, Kappa::Two));
    }

    fn even_pair(right_anchor: usize) -> SystemPresentation {
        let mut s = SystemPresentation::empty(Mode::Homeomorphism);
        for id in ["a", "b"] {
            s.orbits.push(PeriodicOrbit { id: id.into(), length: 2, kind: OrbitKind::Limit, word: None });
        }
        for (id, from, to, anchor) in [("z0", "a", "b", 0), ("z1", "b", "a", right_anchor)] {
            s.connectors.push(Connector {
                id: id.into(),
                left: Endpoint { orbit: from.into(), anchor: 0 },
                right: Endpoint { orbit: to.into(), anchor },
                middle: None,
            });
        }
        s
    }

    #[test]
    fn consistent_pair_gets_a_verified_parity_witness() {
        let s = even_pair(0);
        let d = decide(&s, Kappa::Two);
        let Some(Witness::Parity { orientation }) = d.witness() else { panic!("{d:?}") };
        assert_eq!(orientation.len(), 2);
        assert!(verify_witness(&s, d.witness().unwrap(), 16));
        assert!(constrained_truncation_colorable(&s, n0(&s)));

        let mut flipped = orientation.clone();
        *flipped.get_mut("b").unwrap() ^= 1;
        assert!(!verify_witness(&s, &Witness::Parity { orientation: flipped }, 16));

        assert!(!decide(&even_pair(1), Kappa::Two).is_colorable());
    }

    #[test]
    fn odd_family_is_an_odd_orbit() {
        let mut s = SystemPresentation::empty(Mode::Homeomorphism);
        s.orbits.push(PeriodicOrbit { id: "y".into(), length: 3, kind: OrbitKind::Limit, word: None });
        s.orbits.push(PeriodicOrbit { id: "c".into(), length: 5, kind: OrbitKind::Isolated, word: None });
        s.families.push(Family { id: "f".into(), size: 3, limit: "y".into() });
        let d = decide(&s, Kappa::Two);
        assert_eq!(d.obstruction(), Some(&Obstruction::OddFiniteOrbit { source: "y".into(), length: 3 }));
    }

    #[test]
    fn three_colorings_verify() {
        for s in [make_odd_cycle(0), make_odd_cycle(2), even_pair(1), make_sigma_p(&PTuple::new(vec![4, 2], 3, vec![1]).unwrap())] {
            let d = decide(&s, Kappa::Three);
            assert!(verify_witness(&s, d.witness().unwrap(), 8));
        }
    }

    // Random homeomorphism-mode presentations for the property tests.
    prop_compose! {
        fn arb_presentation()(
            lengths in proptest::collection::vec((1usize..=6, any::<bool>()), 1..=5),
            raw_connectors in proptest::collection::vec((0usize..5, 0usize..5, 0usize..6), 0..=6),
            raw_families in proptest::collection::vec((0usize..5, 1usize..=3), 0..=2),
        ) -> SystemPresentation {
            let mut s = SystemPresentation::empty(Mode::Homeomorphism);
            for (i, &(len, limit)) in lengths.iter().enumerate() {
                let kind = if limit { OrbitKind::Limit } else { OrbitKind::Isolated };
                s.orbits.push(PeriodicOrbit { id: format!("o{i}"), length: len, kind, word: None });
            }
            let limits: Vec<usize> = (0..s.orbits.len()).filter(|&i| s.orbits[i].kind == OrbitKind::Limit).collect();
            if !limits.is_empty() {
                for (ci, &(a, b, anchor)) in raw_connectors.iter().enumerate() {
                    let (l, r) = (limits[a % limits.len()], limits[b % limits.len()]);
                    let (ll, rl) = (s.orbits[l].length, s.orbits[r].length);
                    s.connectors.push(Connector {
                        id: format!("c{ci}"),
                        left: Endpoint { orbit: s.orbits[l].id.clone(), anchor: 0 },
                        right: Endpoint {
                            orbit: s.orbits[r].id.clone(),
                            anchor: crate::presentation::normal_right_anchor(ll, 0, rl, anchor % rl),
                        },
                        middle: None,
                    });
                }
                for (fi, &(a, mult)) in raw_families.iter().enumerate() {
                    let l = limits[a % limits.len()];
                    let len = s.orbits[l].length;
                    let size = if len == 1 { mult + 1 } else { len * mult };
                    s.families.push(Family { id: format!("f{fi}"), size, limit: s.orbits[l].id.clone() });
                }
            }
            let reached: std::collections::BTreeSet<String> = s.connectors.iter()
                .flat_map(|c| [c.left.orbit.clone(), c.right.orbit.clone()])
                .chain(s.families.iter().map(|f| f.limit.clone()))
                .collect();
            for o in &mut s.orbits {
                if !reached.contains(&o.id) {
                    o.kind = OrbitKind::Isolated;
                }
            }
            s
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn two_colors_agree_with_the_truncation_oracle(s in arb_presentation()) {
            prop_assume!(validate(&s).is_ok());
            let d = decide(&s, Kappa::Two);
            prop_assert_eq!(d.is_colorable(), constrained_truncation_colorable(&s, n0(&s)));
        }

        #[test]
        fn colorability_is_monotone(s in arb_presentation()) {
            prop_assume!(validate(&s).is_ok());
            let answers: Vec<bool> = Kappa::ALL.iter().map(|&k| decide(&s, k).is_colorable()).collect();
            for w in answers.windows(2) {
                prop_assert!(!w[0] || w[1]);
            }
        }

        #[test]
        fn witnesses_verify(s in arb_presentation()) {
            prop_assume!(validate(&s).is_ok());
            for k in Kappa::ALL {
                if let Some(w) = decide(&s, k).witness() {
                    for n in [4, 8, 16] {
                        prop_assert!(verify_witness(&s, w, n), "kappa {} window {}", k, n);
                    }
                }
            }
        }

        #[test]
        fn relabeling_orbits_keeps_the_answer(s in arb_presentation(), seed in any::<u64>()) {
            prop_assume!(validate(&s).is_ok());
            let mut shuffled = s.clone();
            let n = shuffled.orbits.len();
            shuffled.orbits.rotate_left(seed as usize % n);
            if seed % 2 == 1 {
                shuffled.orbits.reverse();
                shuffled.connectors.reverse();
            }
            for k in Kappa::ALL {
                prop_assert_eq!(decide(&s, k).is_colorable(), decide(&shuffled, k).is_colorable());
            }
        }
    }
}
