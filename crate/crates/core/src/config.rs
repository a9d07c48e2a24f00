use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entry distribution of a random projection matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RpDistribution {
    /// ±1, each with probability 1/2.
    #[default]
    PlusMinusOne,
    /// +1 w.p. 1/6, 0 w.p. 2/3, −1 w.p. 1/6.
    Sparse,
}

impl FromStr for RpDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm1" | "plus_minus_one" | "plusminusone" => Ok(RpDistribution::PlusMinusOne),
            "sparse" => Ok(RpDistribution::Sparse),
            other => Err(Error::InvalidArgument(format!(
                "unknown projection distribution `{other}` (expected pm1 or sparse)"
            ))),
        }
    }
}

/// Run parameters shared by every initializer and the Lloyd search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterConfig {
    pub k: usize,
    /// Oversampling factor `l` of K-means||.
    pub oversampling: f64,
    /// Sampling rounds `r` of K-means||.
    pub rounds: usize,
    /// Lloyd iterations used to refine each subset's prototypes.
    pub t_init: usize,
    pub subsets: usize,
    /// Random projection dimension `P`.
    pub rp_dim: usize,
    pub rp_dist: RpDistribution,
    pub seed: u64,
    /// Lloyd stops once at most this many assignments change in an iteration.
    pub conv_threshold: usize,
    pub max_lloyd_iters: usize,
}

impl ClusterConfig {
    pub const DEFAULT_ROUNDS: usize = 5;
    pub const DEFAULT_T_INIT: usize = 5;
    pub const DEFAULT_SUBSETS: usize = 8;
    pub const DEFAULT_RP_DIM: usize = 40;
    pub const DEFAULT_MAX_LLOYD_ITERS: usize = 300;

    /// Defaults: `l = 2K`, `r = 5`, `T_init = 5`, `S = 8`, `P = 40` with ±1
    /// entries, threshold 0, at most 300 Lloyd iterations.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            oversampling: 2.0 * k as f64,
            rounds: Self::DEFAULT_ROUNDS,
            t_init: Self::DEFAULT_T_INIT,
            subsets: Self::DEFAULT_SUBSETS,
            rp_dim: Self::DEFAULT_RP_DIM,
            rp_dist: RpDistribution::PlusMinusOne,
            seed: 0,
            conv_threshold: 0,
            max_lloyd_iters: Self::DEFAULT_MAX_LLOYD_ITERS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(what.to_string()));
        if self.k == 0 {
            return bad("k must be at least 1");
        }
        if self.rounds == 0 {
            return bad("rounds must be at least 1");
        }
        if self.subsets == 0 {
            return bad("subsets must be at least 1");
        }
        if self.rp_dim == 0 {
            return bad("projection dimension must be at least 1");
        }
        if !(self.oversampling > 0.0 && self.oversampling.is_finite()) {
            return bad("oversampling factor must be a positive finite number");
        }
        Ok(())
    }
}

/// Changed-assignment threshold equal to 1% of `n`, rounded down.
pub fn one_percent_threshold(n: usize) -> usize {
    n / 100
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_experimental_settings() {
        let c = ClusterConfig::new(10);
        assert_eq!(c.oversampling, 20.0);
        assert_eq!((c.rounds, c.t_init, c.subsets, c.rp_dim), (5, 5, 8, 40));
        assert_eq!(c.rp_dist, RpDistribution::PlusMinusOne);
        assert_eq!(c.conv_threshold, 0);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn validation_rejects_degenerate_values() {
        for f in [
            (|c: &mut ClusterConfig| c.k = 0) as fn(&mut ClusterConfig),
            |c| c.rounds = 0,
            |c| c.subsets = 0,
            |c| c.rp_dim = 0,
            |c| c.oversampling = 0.0,
        ] {
            let mut c = ClusterConfig::new(3);
            f(&mut c);
            assert!(c.validate().is_err());
        }
    }

    #[test]
    fn one_percent_rounds_down() {
        assert_eq!(one_percent_threshold(1000), 10);
        assert_eq!(one_percent_threshold(199), 1);
        assert_eq!(one_percent_threshold(99), 0);
    }
}
