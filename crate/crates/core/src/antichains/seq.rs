use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::gcd;

/// A sequence of positive integers, given by a finite prefix followed by a
/// repeated block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventuallyPeriodicSeq {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl EventuallyPeriodicSeq {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("the repeated block is empty".into()));
        }
        if preperiod.iter().chain(&period).any(|&x| x == 0) {
            return Err(Error::InvalidArgument("sequence entries must be positive".into()));
        }
        Ok(EventuallyPeriodicSeq { preperiod, period })
    }

    pub fn periodic(period: Vec<u64>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn at(&self, n: usize) -> u64 {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<u64> {
        (0..len).map(|n| self.at(n)).collect()
    }

    /// The sequence with its first `t` terms removed.
    pub fn shifted(&self, t: usize) -> EventuallyPeriodicSeq {
        let pre = self.preperiod.len();
        if t <= pre {
            return EventuallyPeriodicSeq { preperiod: self.preperiod[t..].to_vec(), period: self.period.clone() };
        }
        let r = (t - pre) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        EventuallyPeriodicSeq { preperiod: Vec::new(), period }
    }

    /// Sum of the first `k` terms.
    pub fn partial_sum(&self, k: usize) -> u64 {
        (0..k).map(|n| self.at(n)).sum()
    }
}

/// `pre;period`, each a comma separated list; the prefix may be empty.
impl FromStr for EventuallyPeriodicSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let list = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>().map_err(|_| Error::InvalidArgument(format!("not a positive integer: {x:?}"))))
                .collect()
        };
        match s.split_once(';') {
            Some((pre, period)) => Self::new(list(pre)?, list(period)?),
            None => Self::new(Vec::new(), list(s)?),
        }
    }
}

impl fmt::Display for EventuallyPeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.preperiod), join(&self.period))
    }
}

/// Whether some tail of `a` equals some tail of `b`. Past both prefixes
/// the sequences are periodic, so it suffices to try every phase of each
/// and compare one common period.
pub fn et_equivalent(a: &EventuallyPeriodicSeq, b: &EventuallyPeriodicSeq) -> bool {
    let (pa, pb) = (a.period.len(), b.period.len());
    let window = pa / gcd(pa, pb) * pb;
    let (sa, sb) = (a.preperiod.len(), b.preperiod.len());
    (sa..sa + pa).any(|l| (sb..sb + pb).any(|m| (0..window).all(|n| a.at(l + n) == b.at(m + n))))
}
