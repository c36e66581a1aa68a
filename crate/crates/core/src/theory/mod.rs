//! Exact and Monte Carlo evaluation of the identity-conditioning theory:
//! per-identity vs pooled Bayes error probabilities for Gaussian
//! hypothesis pairs with Gaussian priors on the per-identity means.

mod model;
mod monte_carlo;
mod normal;
mod sweep;

pub use model::{
    pe_com_closed, pe_ind_closed, pe_taylor, sample_identities, sample_identities_with,
    IdentityHypotheses, PopulationSpec,
};
pub use monte_carlo::{pe_monte_carlo, pe_monte_carlo_hierarchical, DecisionRule, McEstimate};
pub use normal::{erfc, std_normal, std_normal_cdf, std_normal_cdf_second_deriv, std_normal_pdf};
pub use sweep::{sweep, write_sweep_csv, SweepCell, SweepParams};

use crate::error::Result;
use serde::{Deserialize, Serialize};

/// Closed forms, Taylor form, and Monte Carlo validation for one sampled
/// identity set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryReport {
    pub schema: u32,
    pub spec: PopulationSpec,
    pub sign_aware: bool,
    pub identities: Vec<IdentityHypotheses>,
    pub pe_ind_closed: f64,
    pub pe_com_closed: f64,
    pub pe_taylor: f64,
    pub pe_ind_mc: f64,
    pub se_ind: f64,
    pub pe_com_mc: f64,
    pub se_com: f64,
    pub n_samples: u64,
}

pub fn theory_report(
    spec: &PopulationSpec,
    mc_n: u64,
    seed: u64,
    sign_aware: bool,
) -> Result<TheoryReport> {
    let hyps = sample_identities(spec, seed);
    let ind_mc = pe_monte_carlo(
        &hyps,
        spec,
        DecisionRule::PerIdentity,
        sign_aware,
        mc_n,
        seed,
    )?;
    let com_mc = pe_monte_carlo(&hyps, spec, DecisionRule::Pooled, sign_aware, mc_n, seed)?;
    Ok(TheoryReport {
        schema: 1,
        spec: *spec,
        sign_aware,
        pe_ind_closed: pe_ind_closed(&hyps, sign_aware),
        pe_com_closed: pe_com_closed(&hyps, spec),
        pe_taylor: pe_taylor(&hyps, spec),
        pe_ind_mc: ind_mc.estimate,
        se_ind: ind_mc.std_error,
        pe_com_mc: com_mc.estimate,
        se_com: com_mc.std_error,
        n_samples: mc_n,
        identities: hyps,
    })
}
