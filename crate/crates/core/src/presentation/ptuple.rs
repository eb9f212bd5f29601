use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(l, λ_0..λ_l, m, ε_0..ε_{l-1})` of the subshift `Σ_p`:
/// `l+1` even cycle lengths, an odd offset `m < λ_0` on the closing
/// connector and one orientation bit per remaining connector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPTuple", into = "RawPTuple")]
pub struct PTuple {
    lambdas: Vec<usize>,
    m: usize,
    epsilons: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPTuple {
    l: usize,
    lambdas: Vec<usize>,
    m: usize,
    epsilons: Vec<u8>,
}

impl TryFrom<RawPTuple> for PTuple {
    type Error = Error;

    fn try_from(raw: RawPTuple) -> Result<Self> {
        if raw.lambdas.len() != raw.l + 1 {
            return Err(Error::InvalidPTuple(format!(
                "l = {} needs {} lengths, got {}",
                raw.l,
                raw.l + 1,
                raw.lambdas.len()
            )));
        }
        PTuple::new(raw.lambdas, raw.m, raw.epsilons)
    }
}

impl From<PTuple> for RawPTuple {
    fn from(p: PTuple) -> Self {
        RawPTuple {
            l: p.l(),
            lambdas: p.lambdas,
            m: p.m,
            epsilons: p.epsilons,
        }
    }
}

impl PTuple {
    pub fn new(lambdas: Vec<usize>, m: usize, epsilons: Vec<u8>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidPTuple("at least one length is required".into()));
        }
        if let Some(bad) = lambdas.iter().find(|&&x| x == 0 || x % 2 == 1) {
            return Err(Error::InvalidPTuple(format!("length {bad} is not a positive even number")));
        }
        if m % 2 == 0 || m >= lambdas[0] {
            return Err(Error::InvalidPTuple(format!(
                "m = {m} must be odd and below λ_0 = {}",
                lambdas[0]
            )));
        }
        if epsilons.len() + 1 != lambdas.len() {
            return Err(Error::InvalidPTuple(format!(
                "{} lengths need {} orientation bits, got {}",
                lambdas.len(),
                lambdas.len() - 1,
                epsilons.len()
            )));
        }
        if epsilons.iter().any(|&e| e > 1) {
            return Err(Error::InvalidPTuple("orientation bits must be 0 or 1".into()));
        }
        Ok(PTuple { lambdas, m, epsilons })
    }

    pub fn l(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn lambdas(&self) -> &[usize] {
        &self.lambdas
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn epsilons(&self) -> &[u8] {
        &self.epsilons
    }

    pub fn max_lambda(&self) -> usize {
        self.lambdas.iter().copied().max().unwrap_or(0)
    }

    /// Flattened `(l, λ_0, …, λ_l, m, ε_0, …)`; comparing these compares tuples.
    pub fn lex_key(&self) -> Vec<usize> {
        let mut key = Vec::with_capacity(2 * self.lambdas.len() + 1);
        key.push(self.l());
        key.extend(&self.lambdas);
        key.push(self.m);
        key.extend(self.epsilons.iter().map(|&e| e as usize));
        key
    }
}

impl Ord for PTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_key().cmp(&other.lex_key())
    }
}

impl PartialOrd for PTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join(xs: impl Iterator<Item = String>) -> String {
    xs.collect::<Vec<_>>().join(",")
}

/// `l;λ_0,…,λ_l;m;ε_0,…,ε_{l-1}`
impl fmt::Display for PTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{};{};{};{}",
            self.l(),
            join(self.lambdas.iter().map(|x| x.to_string())),
            self.m,
            join(self.epsilons.iter().map(|x| x.to_string()))
        )
    }
}

impl FromStr for PTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::InvalidPTuple(format!("expected `l;λ…;m;ε…`, got `{s}`")));
        }
        let num = |t: &str| -> Result<usize> {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidPTuple(format!("`{t}` is not a natural number")))
        };
        let list = |t: &str| -> Result<Vec<usize>> {
            t.split(',').filter(|x| !x.trim().is_empty()).map(num).collect()
        };
        let l = num(parts[0])?;
        let lambdas = list(parts[1])?;
        let m = num(parts[2])?;
        let epsilons = parts.get(3).map_or(Ok(Vec::new()), |t| list(t))?;
        if lambdas.len() != l + 1 {
            return Err(Error::InvalidPTuple(format!(
                "l = {l} needs {} lengths, got {}",
                l + 1,
                lambdas.len()
            )));
        }
        let epsilons = epsilons.into_iter().map(|e| e.min(2) as u8).collect();
        PTuple::new(lambdas, m, epsilons)
    }
}
