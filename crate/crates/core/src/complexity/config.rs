use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::par::Parallelism;
use crate::{Error, Result};

/// Restricts candidate window indices to a union of residue classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CongruenceFilter {
    modulus: usize,
    residues: Vec<usize>,
}

impl CongruenceFilter {
    pub fn new(modulus: usize, residues: impl IntoIterator<Item = usize>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("congruence modulus must be positive".into()));
        }
        let mut residues: Vec<usize> = residues.into_iter().collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.is_empty() {
            return Err(Error::InvalidArgument("congruence filter needs at least one residue".into()));
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(Error::InvalidArgument(format!("residue {r} is not below modulus {modulus}")));
        }
        Ok(CongruenceFilter { modulus, residues })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn admits(&self, h: usize) -> bool {
        self.residues.binary_search(&(h % self.modulus)).is_ok()
    }
}

/// `"m:r1,r2"`, for example `"3:0,1"`.
impl FromStr for CongruenceFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("congruence filter {s:?}: expected MOD:R1,R2,..."));
        let (m, rs) = s.split_once(':').ok_or_else(bad)?;
        let modulus = m.trim().parse().map_err(|_| bad())?;
        let residues = rs
            .split(',')
            .map(|r| r.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        CongruenceFilter::new(modulus, residues)
    }
}

impl fmt::Display for CongruenceFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "{}:{}", self.modulus, rs.join(","))
    }
}

impl TryFrom<String> for CongruenceFilter {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CongruenceFilter> for String {
    fn from(c: CongruenceFilter) -> String {
        c.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Strategy {
    #[default]
    Exhaustive,
    Greedy,
    /// Exhaustive up to the given size, then greedy extension.
    Hybrid(usize),
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "greedy" => Ok(Strategy::Greedy),
            other => other
                .strip_prefix("hybrid(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .filter(|&n: &usize| n >= 1)
                .map(Strategy::Hybrid)
                .ok_or_else(|| {
                    Error::Parse(format!("strategy {s:?}: expected exhaustive, greedy or hybrid(N)"))
                }),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => f.write_str("exhaustive"),
            Strategy::Greedy => f.write_str("greedy"),
            Strategy::Hybrid(n) => write!(f, "hybrid({n})"),
        }
    }
}

impl TryFrom<String> for Strategy {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Strategy> for String {
    fn from(s: Strategy) -> String {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub horizon: usize,
    pub scan_length: usize,
    pub congruence_filter: Option<CongruenceFilter>,
    pub parallelism: Parallelism,
    pub strategy: Strategy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            horizon: 60,
            scan_length: 20_000,
            congruence_filter: None,
            parallelism: Parallelism::Auto,
            strategy: Strategy::Exhaustive,
        }
    }
}

impl SearchConfig {
    pub fn new(horizon: usize, scan_length: usize) -> Self {
        SearchConfig { horizon, scan_length, ..Default::default() }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn with_filter(mut self, filter: CongruenceFilter) -> Self {
        self.congruence_filter = Some(filter);
        self
    }

    /// Candidate indices in `[1, H]` passing the congruence filter.
    pub fn candidates(&self) -> Vec<usize> {
        (1..=self.horizon)
            .filter(|&h| self.congruence_filter.as_ref().is_none_or(|f| f.admits(h)))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.scan_length < self.horizon + 1 {
            return Err(Error::InsufficientScan(format!(
                "scan length {} must be at least horizon + 1 = {}",
                self.scan_length,
                self.horizon + 1
            )));
        }
        Ok(())
    }

    pub fn validate_for(&self, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidArgument("window size k must be at least 1".into()));
        }
        self.validate()?;
        if self.horizon + 1 < k || self.candidates().len() + 1 < k {
            return Err(Error::HorizonTooSmall { horizon: self.horizon, k });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_round_trips() {
        let f: CongruenceFilter = "3:1,0".parse().unwrap();
        assert_eq!(f.residues(), &[0, 1]);
        assert_eq!(f.to_string(), "3:0,1");
        assert!(f.admits(6) && f.admits(7) && !f.admits(8));
        assert!("3:3".parse::<CongruenceFilter>().is_err());
        assert!("0:0".parse::<CongruenceFilter>().is_err());
        assert!("3".parse::<CongruenceFilter>().is_err());
    }

    #[test]
    fn strategy_round_trips() {
        for s in [Strategy::Exhaustive, Strategy::Greedy, Strategy::Hybrid(3)] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("hybrid(0)".parse::<Strategy>().is_err());
        assert!("random".parse::<Strategy>().is_err());
    }

    #[test]
    fn validation() {
        assert!(SearchConfig::new(60, 60).validate().is_err());
        assert!(SearchConfig::new(60, 61).validate().is_ok());
        assert_eq!(
            SearchConfig::new(2, 100).validate_for(4),
            Err(Error::HorizonTooSmall { horizon: 2, k: 4 })
        );
        let filtered = SearchConfig::new(6, 100).with_filter(CongruenceFilter::new(3, [0]).unwrap());
        assert_eq!(filtered.candidates(), vec![3, 6]);
        assert!(filtered.validate_for(3).is_ok());
        assert!(filtered.validate_for(4).is_err());
    }

    #[test]
    fn config_toml() {
        let c: SearchConfig = toml::from_str(
            "horizon = 30\nscan_length = 5000\nstrategy = \"hybrid(2)\"\ncongruence_filter = \"2:0\"\nparallelism = \"sequential\"",
        )
        .unwrap();
        assert_eq!(c.horizon, 30);
        assert_eq!(c.strategy, Strategy::Hybrid(2));
        assert_eq!(c.parallelism, Parallelism::Sequential);
        assert_eq!(c.congruence_filter.unwrap().modulus(), 2);
    }
}
