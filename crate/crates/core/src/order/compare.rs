use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::embedding::{verify_embedding, Direction, EmbeddingMap, FamilyImage, Placement};
use super::hom::{injective_hom_exists, HomOutcome};
use super::structure::structural_isomorphism;
use super::truncation::{truncation_refutes, TruncationOutcome};
use crate::analysis::truncate;
use crate::basis::{make, BasisElement};
use crate::coloring::{decide_continuous_coloring, Kappa};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Below,
    Above,
    Equivalent,
    Incomparable,
}

impl Relation {
    pub fn dual(self) -> Relation {
        match self {
            Relation::Below => Relation::Above,
            Relation::Above => Relation::Below,
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RefutationReason {
    SizeMismatch,
    OrbitCountMismatch,
    ColoringSeparation,
    ForcedContradiction,
    ExhaustiveSearch,
}

/// Evidence for one direction of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    Embedding {
        map: EmbeddingMap,
    },
    Refutation {
        reason: RefutationReason,
        detail: String,
        /// Set for coloring separations: the source has no continuous
        /// `κ`-coloring while the target has one.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kappa: Option<Kappa>,
    },
}

impl Certificate {
    pub fn embeds(&self) -> bool {
        matches!(self, Certificate::Embedding { .. })
    }

    fn refute(reason: RefutationReason, detail: impl Into<String>) -> Certificate {
        Certificate::Refutation { reason, detail: detail.into(), kappa: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub relation: Relation,
    /// Whether the first element embeds into the second.
    pub forward: Certificate,
    pub backward: Certificate,
}

/// Compares two basis elements. `NSigma(n)` for odd `n ≥ 3` is read as the
/// odd cycle it is; `Σ_p` is kept with the given parameters so that maps
/// refer to `make(a)` and `make(b)` as passed.
pub fn compare_canonical(a: &BasisElement, b: &BasisElement) -> ComparisonVerdict {
    let forward = embeds(a, b);
    let backward = embeds(b, a);
    let relation = match (forward.embeds(), backward.embeds()) {
        (true, true) => Relation::Equivalent,
        (true, false) => Relation::Below,
        (false, true) => Relation::Above,
        (false, false) => Relation::Incomparable,
    };
    ComparisonVerdict { relation, forward, backward }
}

fn normalize(e: &BasisElement) -> BasisElement {
    match e {
        BasisElement::NSigma { n } => BasisElement::n_sigma(*n),
        other => other.clone(),
    }
}

/// One direction: an embedding of `make(a)` into `make(b)`, or a reason
/// none exists.
pub fn embeds(a: &BasisElement, b: &BasisElement) -> Certificate {
    use BasisElement::*;
    use RefutationReason::*;
    let (a, b) = (normalize(a), normalize(b));
    if a == b {
        return Certificate::Embedding { map: EmbeddingMap::identity(&make(&a)) };
    }
    match (&a, &b) {
        (OddCycle { q }, OddCycle { q: r }) => Certificate::refute(
            ExhaustiveSearch,
            format!("no injective homomorphism from the {}-cycle into the {}-cycle", 2 * q + 3, 2 * r + 3),
        ),
        (OddCycle { q }, _) => Certificate::refute(
            ForcedContradiction,
            format!("an injective image of the {}-cycle is an odd cycle, and the target graph has none", 2 * q + 3),
        ),
        (_, OddCycle { .. }) => Certificate::refute(SizeMismatch, "an infinite system cannot embed into a finite one"),
        (X1, NSigma { .. }) => Certificate::Embedding { map: x1_into_connector_tail() },
        (NSigma { .. } | SigmaP(_), X1) => Certificate::refute(
            SizeMismatch,
            "a connector is an infinite connected component, while every component of the target has at most two points",
        ),
        (X1 | NSigma { .. }, SigmaP(_)) => Certificate::Refutation {
            reason: ColoringSeparation,
            detail: "the source has no continuous coloring with countably many colors, the target has one".into(),
            kappa: Some(Kappa::Aleph0),
        },
        (SigmaP(_), NSigma { n }) => Certificate::refute(
            ForcedContradiction,
            format!(
                "every connector of NSigma({n}) has an end at the fixed point, so some connector tail would \
                 collapse a limit orbit of at least two points onto it"
            ),
        ),
        (NSigma { n: m }, NSigma { n }) => Certificate::refute(
            ForcedContradiction,
            format!(
                "connectors must go onto connectors with tails onto tails; the ends of NSigma({m}) (periods {}) \
                 do not match those of NSigma({n}) (periods {})",
                end_periods(*m),
                end_periods(*n)
            ),
        ),
        (SigmaP(p), SigmaP(q)) => {
            let (sa, sb) = (make(&a), make(&b));
            match structural_isomorphism(&sa, &sb).and_then(|iso| iso.embedding(&sa, &sb)) {
                Some(map) => Certificate::Embedding { map },
                None if p.lambdas().len() != q.lambdas().len() => Certificate::refute(
                    OrbitCountMismatch,
                    format!("{} limit orbits against {}", p.lambdas().len(), q.lambdas().len()),
                ),
                None => Certificate::refute(
                    ForcedContradiction,
                    "an embedding would carry connectors onto connectors and limit orbits onto limit orbits, \
                     which forces a relabeling; none matches the anchors",
                ),
            }
        }
        // Identical elements were handled above.
        (X1, X1) => unreachable!(),
    }
}

fn end_periods(n: usize) -> String {
    match n {
        0 => "1 and 1, one fixed point".into(),
        1 => "1 and 1, two fixed points".into(),
        _ => format!("1 and {n}"),
    }
}

/// The pair `{x_i, x_i + 1}` of X1 goes down the left tail of the
/// connector, two steps per member, ending at the fixed point.
fn x1_into_connector_tail() -> EmbeddingMap {
    EmbeddingMap {
        direction: Direction::Forward,
        orbits: BTreeMap::from([("y0".to_string(), Placement { target: "y0".into(), shift: 0 })]),
        connectors: BTreeMap::new(),
        families: BTreeMap::from([(
            "x".to_string(),
            FamilyImage::Tail { target: "z".into(), offset: -2, outward: -1 },
        )]),
    }
}

/// Rechecks a certificate independently of how it was produced. Embeddings
/// are verified on a window, coloring separations by deciding both sides,
/// exhaustive searches by repeating them, and the remaining refutations by
/// a constrained search on windows of radius 6. A search that runs out of
/// budget counts as not confirmed.
pub fn verify_certificate(a: &BasisElement, b: &BasisElement, cert: &Certificate) -> bool {
    let (sa, sb) = (make(a), make(b));
    match cert {
        Certificate::Embedding { map } => verify_embedding(&sa, &sb, map, 10),
        Certificate::Refutation { reason: RefutationReason::ColoringSeparation, kappa, .. } => {
            let Some(kappa) = kappa else { return false };
            matches!(
                (decide_continuous_coloring(&sa, *kappa), decide_continuous_coloring(&sb, *kappa)),
                (Ok(x), Ok(y)) if !x.is_colorable() && y.is_colorable()
            )
        }
        Certificate::Refutation { reason: RefutationReason::ExhaustiveSearch, .. } => {
            injective_hom_exists(&truncate(&sa, 0), &truncate(&sb, 0)) == HomOutcome::NotFound
        }
        Certificate::Refutation { .. } => truncation_refutes(&sa, &sb, 6).is_refuted(),
    }
}

/// The truncation check alone, for reporting.
pub fn confirm_by_truncation(a: &BasisElement, b: &BasisElement, n: usize) -> TruncationOutcome {
    truncation_refutes(&make(a), &make(b), n)
}
