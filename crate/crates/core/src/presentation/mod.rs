//! Finite data describing a rank two system: periodic limit orbits,
//! isolated periodic orbits, connector orbits running between limit orbits,
//! and countable families of finite orbits accumulating on a limit orbit.

mod construct;
mod io;
mod ptuple;
mod validate;

pub use construct::{make_n_sigma, make_odd_cycle, make_sigma_p, make_x1};
pub use io::{parse, serialize, ParseError};
pub use ptuple::PTuple;
pub use validate::{validate, ValidationReport, Violation};

use serde::{Deserialize, Serialize};

/// A finite string over an alphabet whose symbols are themselves strings.
pub type Word = Vec<String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Homeomorphism,
    Subshift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    Limit,
    Isolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicOrbit {
    pub id: String,
    #[serde(rename = "lambda")]
    pub length: usize,
    pub kind: OrbitKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoint {
    pub orbit: String,
    pub anchor: usize,
}

/// The orbit of a point `z` with `f^{-q len(left)}(z)` tending to point
/// `left.anchor` of the left orbit and `f^{q len(right)}(z)` tending to point
/// `right.anchor` of the right orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Connector {
    pub id: String,
    pub left: Endpoint,
    pub right: Endpoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle: Option<Word>,
}

/// Countably many pairwise disjoint isolated orbits of `size` points each,
/// converging to the orbit `limit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub id: String,
    pub size: usize,
    pub limit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemPresentation {
    pub mode: Mode,
    #[serde(default)]
    pub orbits: Vec<PeriodicOrbit>,
    #[serde(default)]
    pub connectors: Vec<Connector>,
    #[serde(default)]
    pub families: Vec<Family>,
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Right anchor of the connector once its base point is moved so that the
/// left anchor is 0. Base points differing by a multiple of the left length
/// keep the left anchor, so the right anchor is only meaningful modulo
/// `gcd(left_len, right_len)`; the least residue is returned.
pub fn normal_right_anchor(
    left_len: usize,
    left_anchor: usize,
    right_len: usize,
    right_anchor: usize,
) -> usize {
    let g = gcd(left_len, right_len).max(1) as i64;
    (right_anchor as i64 - left_anchor as i64).rem_euclid(g) as usize
}

impl SystemPresentation {
    pub fn empty(mode: Mode) -> Self {
        SystemPresentation {
            mode,
            orbits: Vec::new(),
            connectors: Vec::new(),
            families: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty() && self.connectors.is_empty() && self.families.is_empty()
    }

    pub fn orbit_index(&self, id: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.id == id)
    }

    pub fn orbit(&self, id: &str) -> Option<&PeriodicOrbit> {
        self.orbits.iter().find(|o| o.id == id)
    }

    pub fn max_length(&self) -> usize {
        let orbits = self.orbits.iter().map(|o| o.length);
        let families = self.families.iter().map(|f| f.size);
        orbits.chain(families).max().unwrap_or(1)
    }

    /// Coordinate `i` of `σ^k` applied to the base point `w^ℤ` of an orbit.
    pub fn orbit_symbol(&self, orbit: usize, k: i64, i: i64) -> Option<&str> {
        let w = self.orbits.get(orbit)?.word.as_ref()?;
        Some(&w[(i + k).rem_euclid(w.len() as i64) as usize])
    }

    /// Coordinate `i` of `σ^k(z)` for the connector `z = w_L^{-∞}·middle·w_R^∞`.
    pub fn connector_symbol(&self, connector: usize, k: i64, i: i64) -> Option<&str> {
        let c = self.connectors.get(connector)?;
        let left = self.orbit(&c.left.orbit)?.word.as_ref()?;
        let right = self.orbit(&c.right.orbit)?.word.as_ref()?;
        let middle = c.middle.as_deref().unwrap_or(&[]);
        let j = i + k;
        let sym = if j < 0 {
            &left[j.rem_euclid(left.len() as i64) as usize]
        } else if (j as usize) < middle.len() {
            &middle[j as usize]
        } else {
            &right[(j - middle.len() as i64).rem_euclid(right.len() as i64) as usize]
        };
        Some(sym)
    }

    /// Connectors with the left anchor moved to 0. Subshift connectors are
    /// pinned to their middle word and are left alone.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        if self.mode == Mode::Subshift {
            return out;
        }
        for c in &mut out.connectors {
            let (Some(l), Some(r)) = (self.orbit(&c.left.orbit), self.orbit(&c.right.orbit)) else {
                continue;
            };
            let anchor = normal_right_anchor(l.length, c.left.anchor, r.length, c.right.anchor);
            c.left.anchor = 0;
            c.right.anchor = anchor;
        }
        out
    }

    /// The same system with the homeomorphism replaced by its inverse,
    /// presented without words. Point `k` of an orbit becomes point `-k`.
    pub fn inverted(&self) -> Self {
        let mut out = self.clone();
        out.mode = Mode::Homeomorphism;
        for o in &mut out.orbits {
            o.word = None;
        }
        for c in &mut out.connectors {
            let l = self.orbit(&c.left.orbit).map_or(1, |o| o.length);
            let r = self.orbit(&c.right.orbit).map_or(1, |o| o.length);
            let new_left = Endpoint {
                orbit: c.right.orbit.clone(),
                anchor: (r - c.right.anchor % r) % r,
            };
            let new_right = Endpoint {
                orbit: c.left.orbit.clone(),
                anchor: (l - c.left.anchor % l) % l,
            };
            c.left = new_left;
            c.right = new_right;
            c.middle = None;
        }
        out.normalized()
    }
}
