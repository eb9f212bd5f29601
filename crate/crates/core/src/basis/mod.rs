//! The canonical minimal element below a system without a continuous
//! 2-coloring, and canonical parameters for the `Σ_p` family.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::fixed_point_set;
use crate::coloring::{decide_continuous_coloring, Kappa, Obstruction};
use crate::error::{Error, Result};
use crate::order::sigma_p_equivalent;
use crate::presentation::{
    gcd, make_n_sigma, make_odd_cycle, make_sigma_p, make_x1, normal_right_anchor, PTuple,
    SystemPresentation,
};

/// Whether the basis is taken among homeomorphisms or among subshifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisMode {
    Homeo,
    Subshift,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", content = "params")]
pub enum BasisElement {
    /// The cycle with `2q+3` vertices.
    OddCycle { q: usize },
    X1,
    /// Only `n = 0`, `n = 1` and even `n`; odd `n ≥ 3` is an odd cycle.
    NSigma { n: usize },
    SigmaP(PTuple),
}

impl BasisElement {
    /// `NSigma(n)`, or the odd cycle it coincides with when `n ≥ 3` is odd.
    pub fn n_sigma(n: usize) -> BasisElement {
        if n >= 3 && n % 2 == 1 {
            BasisElement::OddCycle { q: (n - 3) / 2 }
        } else {
            BasisElement::NSigma { n }
        }
    }

    /// Every element of the same kind is rewritten to its canonical form.
    pub fn canonical(&self) -> BasisElement {
        match self {
            BasisElement::NSigma { n } => BasisElement::n_sigma(*n),
            BasisElement::SigmaP(p) => BasisElement::SigmaP(canon_p(p)),
            other => other.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BasisElement::OddCycle { .. })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::OddCycle { q } => write!(f, "OddCycle({q})"),
            BasisElement::X1 => write!(f, "X1"),
            BasisElement::NSigma { n } => write!(f, "NSigma({n})"),
            BasisElement::SigmaP(p) => write!(f, "SigmaP({p})"),
        }
    }
}

/// The presentation of a basis element.
pub fn make(e: &BasisElement) -> SystemPresentation {
    match e {
        BasisElement::OddCycle { q } => make_odd_cycle(*q),
        BasisElement::X1 => make_x1(),
        BasisElement::NSigma { n } => make_n_sigma(*n),
        BasisElement::SigmaP(p) => make_sigma_p(p),
    }
}

/// The canonical element below `s`, which must have no continuous 2-coloring.
pub fn basis_below(s: &SystemPresentation, mode: BasisMode) -> Result<BasisElement> {
    let decision = decide_continuous_coloring(s, Kappa::Two)?;
    match decision.obstruction() {
        None => Err(Error::Colorable),
        Some(Obstruction::FixedPointNotOpen { .. }) => match mode {
            BasisMode::Homeo => Ok(BasisElement::X1),
            BasisMode::Subshift => subshift_fixed_case(s).map(BasisElement::n_sigma),
        },
        Some(Obstruction::OddFiniteOrbit { length, .. }) => Ok(BasisElement::OddCycle { q: (length - 3) / 2 }),
        Some(Obstruction::OddConstraintCycle { .. }) => Ok(BasisElement::SigmaP(canon_p(&extract_p(s)?))),
        Some(other) => Err(Error::PreconditionViolated(format!("unexpected obstruction {other:?}"))),
    }
}

/// Which `ₙΣ` sits below a subshift whose fixed point set is not open:
/// the first connector (by id) ending at the first fixed limit orbit (by id)
/// decides. Both ends there gives 0, another fixed orbit gives 1, and an
/// orbit of length `λ ≥ 2` gives `λ`.
pub fn subshift_fixed_case(s: &SystemPresentation) -> Result<usize> {
    let report = fixed_point_set(s);
    for fixed in &report.fixed_limit_orbits {
        let incident = s
            .connectors
            .iter()
            .filter(|c| &c.left.orbit == fixed || &c.right.orbit == fixed)
            .min_by(|a, b| a.id.cmp(&b.id));
        let Some(c) = incident else { continue };
        if c.left.orbit == c.right.orbit {
            return Ok(0);
        }
        let other = if &c.left.orbit == fixed { &c.right.orbit } else { &c.left.orbit };
        let len = s.orbit(other).map_or(1, |o| o.length);
        return Ok(if len == 1 { 1 } else { len });
    }
    Err(Error::NoFixedWitness)
}

/// Reads a parameter tuple off the odd cycle of connectors found by the
/// 2-coloring decision. The first connector of the cycle closes it; the
/// others become the empty-middle connectors, with orbit rotations chosen
/// so their anchors vanish. What is left on the closing connector is `m`.
pub fn extract_p(s: &SystemPresentation) -> Result<PTuple> {
    let decision = decide_continuous_coloring(s, Kappa::Two)?;
    let Some(Obstruction::OddConstraintCycle { connectors, orbits }) = decision.obstruction() else {
        return Err(Error::PreconditionViolated(
            "the system has no odd cycle of connector constraints".into(),
        ));
    };
    let len = connectors.len();
    let connector = |id: &str| s.connectors.iter().find(|c| c.id == id).expect("cycle connectors exist");
    // (connector, from, to) in traversal order
    let mut steps: Vec<(&str, &str, &str)> = (0..len)
        .map(|i| (connectors[i].as_str(), orbits[i].as_str(), orbits[(i + 1) % len].as_str()))
        .collect();
    let closing = connector(steps[0].0);
    if closing.left.orbit != steps[0].1 {
        steps = steps.iter().rev().map(|&(c, from, to)| (c, to, from)).collect();
    }
    let at = steps.iter().position(|st| st.0 == closing.id).expect("closing connector is on the cycle");
    steps.rotate_left(at + 1);

    let length = |id: &str| s.orbit(id).expect("cycle orbits exist").length;
    let offset = |c: &crate::presentation::Connector| {
        normal_right_anchor(length(&c.left.orbit), c.left.anchor, length(&c.right.orbit), c.right.anchor) as i64
    };
    let mut lambdas = Vec::with_capacity(len);
    let mut epsilons = Vec::with_capacity(len - 1);
    let mut rotation = 0i64;
    for &(id, from, to) in &steps[..len - 1] {
        let c = connector(id);
        let d = offset(c);
        lambdas.push(length(from));
        let forward = c.left.orbit == from && c.right.orbit == to;
        epsilons.push(if forward { 0 } else { 1 });
        rotation = if forward { rotation - d } else { rotation + d }.rem_euclid(length(to) as i64);
    }
    let (_, last, first) = steps[len - 1];
    lambdas.push(length(last));
    let g = gcd(length(last), length(first)) as i64;
    let m = (rotation - offset(closing)).rem_euclid(g) as usize;
    // Orbits are listed from the closing connector's right end.
    PTuple::new(lambdas, m, epsilons)
}

/// All `p'` in the box `{l} × {even λ ≤ Λ}^{l+1} × {odd m < λ_0} × 2^l`
/// (with `Λ` the largest length of `p`) presenting the same system as `p`.
pub fn enumerate_fp(p: &PTuple) -> BTreeSet<PTuple> {
    let l = p.l();
    let evens: Vec<usize> = (2..=p.max_lambda()).step_by(2).collect();
    let candidates: Vec<PTuple> = itertools::repeat_n(evens, l + 1)
        .multi_cartesian_product()
        .flat_map(|lambdas| {
            let ms: Vec<usize> = (1..lambdas[0]).step_by(2).collect();
            ms.into_iter()
                .cartesian_product(itertools::repeat_n([0u8, 1], l).multi_cartesian_product())
                .map(move |(m, eps)| PTuple::new(lambdas.clone(), m, eps).expect("box tuples are valid"))
        })
        .collect();
    candidates.into_par_iter().filter(|q| sigma_p_equivalent(p, q)).collect::<Vec<_>>().into_iter().collect()
}

/// The lexicographically least tuple presenting the same system as `p`.
pub fn canon_p(p: &PTuple) -> PTuple {
    enumerate_fp(p).into_iter().next().unwrap_or_else(|| p.clone())
}
