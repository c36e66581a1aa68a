//! Monte Carlo validation of the closed-form error probabilities.

use super::model::{IdentityHypotheses, PopulationSpec};
use crate::error::{Error, Result};
use crate::seed;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionRule {
    /// Threshold at each identity's `(mu0 + mu1)/2`.
    PerIdentity,
    /// One global threshold at `(u0 + u1)/2`.
    Pooled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: u64,
}

fn binomial_se(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Empirical error rate of the chosen rule on a fixed identity set.
///
/// Each draw picks an identity uniformly, a hypothesis fairly, an
/// observation from that hypothesis, and decides H1 when `x` exceeds the
/// rule's threshold (direction flipped under `sign_aware` for identities
/// with `mu1 < mu0` under the per-identity rule).
pub fn pe_monte_carlo(
    hyps: &[IdentityHypotheses],
    spec: &PopulationSpec,
    rule: DecisionRule,
    sign_aware: bool,
    n: u64,
    seed_value: u64,
) -> Result<McEstimate> {
    if n < 1000 {
        return Err(Error::config("Monte Carlo needs at least 1000 samples"));
    }
    if hyps.is_empty() {
        return Err(Error::config("empty identity set"));
    }
    let mut rng = seed::rng_from(seed_value, "theory-mc", rule as u64);
    let noise = Normal::new(0.0, spec.sigma).expect("valid sigma");
    let pooled_t = spec.pooled_threshold();
    let mut errors = 0u64;
    for _ in 0..n {
        let k = rng.gen_range(0..hyps.len());
        let h1 = rng.gen_bool(0.5);
        let mean = if h1 { hyps[k].mu1 } else { hyps[k].mu0 };
        let x = mean + noise.sample(&mut rng);
        let decide_h1 = match rule {
            DecisionRule::Pooled => x > pooled_t,
            DecisionRule::PerIdentity => {
                let above = x > hyps[k].threshold;
                if sign_aware && hyps[k].mu1 < hyps[k].mu0 {
                    !above
                } else {
                    above
                }
            }
        };
        if decide_h1 != h1 {
            errors += 1;
        }
    }
    let p = errors as f64 / n as f64;
    Ok(McEstimate {
        estimate: p,
        std_error: binomial_se(p, n),
        n_samples: n,
    })
}

/// Monte Carlo estimate of the rep-averaged error rate: every draw samples
/// a fresh identity from the priors before observing. This estimates the
/// same quantity as averaging closed forms over identity draws.
pub fn pe_monte_carlo_hierarchical(
    spec: &PopulationSpec,
    rule: DecisionRule,
    sign_aware: bool,
    n: u64,
    seed_value: u64,
) -> Result<McEstimate> {
    if n < 1000 {
        return Err(Error::config("Monte Carlo needs at least 1000 samples"));
    }
    let mut rng = seed::rng_from(seed_value, "theory-mc-hier", rule as u64);
    let prior0 = Normal::new(spec.u0, spec.sigma_mu).expect("valid prior");
    let prior1 = Normal::new(spec.u1, spec.sigma_mu).expect("valid prior");
    let noise = Normal::new(0.0, spec.sigma).expect("valid sigma");
    let pooled_t = spec.pooled_threshold();
    let mut errors = 0u64;
    for _ in 0..n {
        let mu0 = prior0.sample(&mut rng);
        let mu1 = prior1.sample(&mut rng);
        let h1 = rng.gen_bool(0.5);
        let x = if h1 { mu1 } else { mu0 } + noise.sample(&mut rng);
        let decide_h1 = match rule {
            DecisionRule::Pooled => x > pooled_t,
            DecisionRule::PerIdentity => {
                let above = x > 0.5 * (mu0 + mu1);
                if sign_aware && mu1 < mu0 {
                    !above
                } else {
                    above
                }
            }
        };
        if decide_h1 != h1 {
            errors += 1;
        }
    }
    let p = errors as f64 / n as f64;
    Ok(McEstimate {
        estimate: p,
        std_error: binomial_se(p, n),
        n_samples: n,
    })
}
