use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{normal_right_anchor, Mode, OrbitKind, SystemPresentation, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DuplicateId { id: String },
    ZeroLength { orbit: String },
    MissingWord { orbit: String },
    WordLength { orbit: String, expected: usize, found: usize },
    NonPrimitiveWord { orbit: String },
    ConjugateWords { first: String, second: String },
    UnreachableLimitOrbit { orbit: String },
    UnknownOrbit { owner: String, orbit: String },
    EndpointNotLimit { connector: String, orbit: String },
    AnchorOutOfRange { connector: String, orbit: String, anchor: usize },
    MiddleOutsideSubshift { connector: String },
    AnchorMismatch { connector: String },
    PeriodicConnector { connector: String },
    FamilyInSubshift { family: String },
    FamilyLimitNotLimit { family: String },
    FamilySize { family: String, size: usize, limit_length: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateId { id } => write!(f, "duplicate id {id}"),
            ZeroLength { orbit } => write!(f, "orbit {orbit} has length 0"),
            MissingWord { orbit } => write!(f, "orbit {orbit} has no word in subshift mode"),
            WordLength { orbit, expected, found } => {
                write!(f, "orbit {orbit} has length {expected} but a word of length {found}")
            }
            NonPrimitiveWord { orbit } => write!(f, "non-primitive word in orbit {orbit}"),
            ConjugateWords { first, second } => {
                write!(f, "orbits {first} and {second} carry conjugate words")
            }
            UnreachableLimitOrbit { orbit } => write!(f, "unreachable limit orbit {orbit}"),
            UnknownOrbit { owner, orbit } => write!(f, "{owner} refers to unknown orbit {orbit}"),
            EndpointNotLimit { connector, orbit } => {
                write!(f, "connector {connector} ends at non-limit orbit {orbit}")
            }
            AnchorOutOfRange { connector, orbit, anchor } => {
                write!(f, "connector {connector} anchor {anchor} is outside orbit {orbit}")
            }
            MiddleOutsideSubshift { connector } => {
                write!(f, "connector {connector} has a middle word outside subshift mode")
            }
            AnchorMismatch { connector } => {
                write!(f, "connector {connector} anchors disagree with its middle word")
            }
            PeriodicConnector { connector } => {
                write!(f, "connector {connector} is a point of its periodic orbit")
            }
            FamilyInSubshift { family } => {
                write!(f, "family {family} cannot occur in a subshift presentation")
            }
            FamilyLimitNotLimit { family } => {
                write!(f, "family {family} converges to a non-limit orbit")
            }
            FamilySize { family, size, limit_length } => write!(
                f,
                "family {family} has members of size {size}, which must be at least 2 and a multiple of {limit_length}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid(self.violations.iter().map(|v| v.to_string()).collect()))
        }
    }
}

pub(crate) fn is_primitive(w: &[String]) -> bool {
    let n = w.len();
    (1..n).filter(|d| n % d == 0).all(|d| (0..n).any(|i| w[i] != w[i % d]))
}

pub(crate) fn are_conjugate(u: &[String], v: &[String]) -> bool {
    let n = u.len();
    n == v.len() && (0..n.max(1)).any(|r| (0..n).all(|i| u[(i + r) % n] == v[i]))
}

/// Checks every structural invariant; downstream operations assume none fail.
pub fn validate(s: &SystemPresentation) -> ValidationReport {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let ids = s
        .orbits
        .iter()
        .map(|o| &o.id)
        .chain(s.connectors.iter().map(|c| &c.id))
        .chain(s.families.iter().map(|f| &f.id));
    for id in ids {
        if !seen.insert(id.as_str()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
    }

    let lengths: BTreeMap<&str, (usize, OrbitKind)> =
        s.orbits.iter().map(|o| (o.id.as_str(), (o.length, o.kind))).collect();

    for o in &s.orbits {
        if o.length == 0 {
            out.push(Violation::ZeroLength { orbit: o.id.clone() });
        }
        match &o.word {
            None if s.mode == Mode::Subshift => {
                out.push(Violation::MissingWord { orbit: o.id.clone() })
            }
            None => {}
            Some(w) if w.len() != o.length => out.push(Violation::WordLength {
                orbit: o.id.clone(),
                expected: o.length,
                found: w.len(),
            }),
            Some(w) if !is_primitive(w) => {
                out.push(Violation::NonPrimitiveWord { orbit: o.id.clone() })
            }
            Some(_) => {}
        }
    }
    let words: Vec<(&String, &Word)> = s
        .orbits
        .iter()
        .filter_map(|o| o.word.as_ref().map(|w| (&o.id, w)))
        .collect();
    for (i, (a, u)) in words.iter().enumerate() {
        for (b, v) in &words[i + 1..] {
            if are_conjugate(u, v) {
                out.push(Violation::ConjugateWords {
                    first: (*a).clone(),
                    second: (*b).clone(),
                });
            }
        }
    }

    let mut reached = BTreeSet::new();
    for c in &s.connectors {
        let mut ends_ok = true;
        for end in [&c.left, &c.right] {
            match lengths.get(end.orbit.as_str()) {
                None => {
                    ends_ok = false;
                    out.push(Violation::UnknownOrbit {
                        owner: c.id.clone(),
                        orbit: end.orbit.clone(),
                    });
                }
                Some(&(len, kind)) => {
                    reached.insert(end.orbit.as_str());
                    if kind != OrbitKind::Limit {
                        out.push(Violation::EndpointNotLimit {
                            connector: c.id.clone(),
                            orbit: end.orbit.clone(),
                        });
                    }
                    if len == 0 || end.anchor >= len {
                        ends_ok = false;
                        out.push(Violation::AnchorOutOfRange {
                            connector: c.id.clone(),
                            orbit: end.orbit.clone(),
                            anchor: end.anchor,
                        });
                    }
                }
            }
        }
        match s.mode {
            Mode::Homeomorphism => {
                if c.middle.is_some() {
                    out.push(Violation::MiddleOutsideSubshift { connector: c.id.clone() });
                }
            }
            Mode::Subshift if ends_ok => check_shift_connector(s, c, &mut out),
            Mode::Subshift => {}
        }
    }

    for f in &s.families {
        if s.mode == Mode::Subshift {
            out.push(Violation::FamilyInSubshift { family: f.id.clone() });
        }
        match lengths.get(f.limit.as_str()) {
            None => out.push(Violation::UnknownOrbit {
                owner: f.id.clone(),
                orbit: f.limit.clone(),
            }),
            Some(&(len, kind)) => {
                reached.insert(f.limit.as_str());
                if kind != OrbitKind::Limit {
                    out.push(Violation::FamilyLimitNotLimit { family: f.id.clone() });
                }
                // A family of fixed points would make the fixed set open
                // around a fixed limit orbit, which the presentation cannot express.
                if f.size < 2 || len == 0 || f.size % len != 0 {
                    out.push(Violation::FamilySize {
                        family: f.id.clone(),
                        size: f.size,
                        limit_length: len,
                    });
                }
            }
        }
    }

    for o in &s.orbits {
        if o.kind == OrbitKind::Limit && !reached.contains(o.id.as_str()) {
            out.push(Violation::UnreachableLimitOrbit { orbit: o.id.clone() });
        }
    }
    ValidationReport { violations: out }
}

fn check_shift_connector(s: &SystemPresentation, c: &super::Connector, out: &mut Vec<Violation>) {
    let (Some(l), Some(r)) = (s.orbit(&c.left.orbit), s.orbit(&c.right.orbit)) else {
        return;
    };
    let middle_len = c.middle.as_ref().map_or(0, Vec::len);
    let expected = normal_right_anchor(l.length, 0, r.length, (r.length - middle_len % r.length) % r.length);
    let given = normal_right_anchor(l.length, c.left.anchor, r.length, c.right.anchor);
    if expected != given {
        out.push(Violation::AnchorMismatch { connector: c.id.clone() });
    }
    if c.left.orbit == c.right.orbit {
        if let Some(w) = &l.word {
            let middle = c.middle.as_deref().unwrap_or(&[]);
            let periodic = middle_len % l.length == 0
                && middle.iter().enumerate().all(|(i, x)| *x == w[i % l.length]);
            if periodic {
                out.push(Violation::PeriodicConnector { connector: c.id.clone() });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_sigma_p, Connector, Endpoint, Family, PTuple, PeriodicOrbit};

    fn w(s: &str) -> Word {
        s.chars().map(|c| c.to_string()).collect()
    }

    fn orbit(id: &str, len: usize, kind: OrbitKind) -> PeriodicOrbit {
        PeriodicOrbit { id: id.into(), length: len, kind, word: None }
    }

    fn messages(s: &SystemPresentation) -> Vec<String> {
        validate(s).violations.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn sigma_p_validates() {
        let s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        assert!(validate(&s).is_ok());
    }

    #[test]
    fn limit_orbit_without_structure_is_unreachable() {
        let mut s = SystemPresentation::empty(Mode::Homeomorphism);
        s.orbits.push(orbit("y", 2, OrbitKind::Limit));
        assert!(messages(&s).iter().any(|m| m.contains("unreachable limit orbit")));
    }

    #[test]
    fn square_word_is_not_primitive() {
        let mut s = SystemPresentation::empty(Mode::Subshift);
        s.orbits.push(PeriodicOrbit {
            id: "y".into(),
            length: 4,
            kind: OrbitKind::Isolated,
            word: Some(w("abab")),
        });
        assert!(messages(&s).iter().any(|m| m.contains("non-primitive word")));
    }

    #[test]
    fn primitive_and_conjugate_helpers() {
        assert!(is_primitive(&w("a")));
        assert!(is_primitive(&w("aab")));
        assert!(!is_primitive(&w("aa")));
        assert!(!is_primitive(&w("abcabc")));
        assert!(are_conjugate(&w("abc"), &w("cab")));
        assert!(!are_conjugate(&w("abc"), &w("acb")));
    }

    #[test]
    fn catches_structural_faults() {
        let mut s = SystemPresentation::empty(Mode::Homeomorphism);
        s.orbits.push(orbit("y", 2, OrbitKind::Limit));
        s.orbits.push(orbit("i", 2, OrbitKind::Isolated));
        s.connectors.push(Connector {
            id: "z".into(),
            left: Endpoint { orbit: "y".into(), anchor: 2 },
            right: Endpoint { orbit: "i".into(), anchor: 0 },
            middle: None,
        });
        s.families.push(Family { id: "f".into(), size: 3, limit: "y".into() });
        s.families.push(Family { id: "y".into(), size: 2, limit: "nowhere".into() });
        let report = validate(&s);
        let kinds: Vec<&Violation> = report.violations.iter().collect();
        assert!(kinds.iter().any(|v| matches!(v, Violation::DuplicateId { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::AnchorOutOfRange { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::EndpointNotLimit { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::FamilySize { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::UnknownOrbit { .. })));
    }

    #[test]
    fn fixed_point_families_are_rejected() {
        let mut s = SystemPresentation::empty(Mode::Homeomorphism);
        s.orbits.push(orbit("y", 1, OrbitKind::Limit));
        s.families.push(Family { id: "f".into(), size: 1, limit: "y".into() });
        assert!(!validate(&s).is_ok());
    }

    #[test]
    fn subshift_connector_must_match_its_middle() {
        let mut s = make_sigma_p(&PTuple::new(vec![4], 1, vec![]).unwrap());
        assert!(validate(&s).is_ok());
        s.connectors[0].right.anchor = 1;
        assert!(messages(&s).iter().any(|m| m.contains("anchors disagree")));
    }

    #[test]
    fn connector_equal_to_periodic_point_is_rejected() {
        let mut s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        s.connectors[0].middle = Some(vec!["a^0_0".into(), "a^0_1".into()]);
        s.connectors[0].right.anchor = 0;
        assert!(messages(&s).iter().any(|m| m.contains("is a point of its periodic orbit")));
    }

    #[test]
    fn subshift_forbids_families() {
        let mut s = make_sigma_p(&PTuple::new(vec![2], 1, vec![]).unwrap());
        s.families.push(Family { id: "f".into(), size: 2, limit: "y0".into() });
        assert!(messages(&s).iter().any(|m| m.contains("cannot occur in a subshift")));
    }
}
