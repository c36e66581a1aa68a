//! Identity prototypes: per-identity mean vectors and orthonormal pose bases.

use super::generator::{GeneratorContext, GeneratorParams};
use crate::error::{Error, Result};
use crate::seed;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationParams {
    pub k: usize,
    pub dim: usize,
    pub pose_dim: usize,
    pub noise_sigma: f64,
}

impl Default for PopulationParams {
    fn default() -> Self {
        PopulationParams {
            k: 10,
            dim: 32,
            pose_dim: 4,
            noise_sigma: 0.25,
        }
    }
}

impl PopulationParams {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::config("population needs at least 2 identities"));
        }
        if self.dim < 8 {
            return Err(Error::config("face dimension must be at least 8"));
        }
        if self.pose_dim < 1 || self.pose_dim >= self.dim {
            return Err(Error::config("pose dimension must satisfy 1 <= p < D"));
        }
        if !(self.noise_sigma >= 0.0) {
            return Err(Error::config("noise sigma must be nonnegative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityPrototype {
    pub index: usize,
    pub mean: Vec<f64>,
    /// Orthonormal columns, each of length `dim`.
    pub pose_basis: Vec<Vec<f64>>,
    pub texture_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    pub params: PopulationParams,
    pub prototypes: Vec<IdentityPrototype>,
    pub generator_ctx: GeneratorContext,
    pub seed: u64,
}

const MIN_MEAN_DISTANCE: f64 = 1.0;
const REJECTION_BUDGET: usize = 1000;

fn random_vector<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    (0..dim).map(|_| StandardNormal.sample(rng)).collect()
}

/// Modified Gram–Schmidt with re-draws on near-dependence.
pub(crate) fn orthonormal_columns<R: Rng>(dim: usize, count: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(count);
    while columns.len() < count {
        let mut v = random_vector(dim, rng);
        for c in &columns {
            let dot: f64 = v.iter().zip(c.iter()).map(|(a, b)| a * b).sum();
            for (vi, ci) in v.iter_mut().zip(c.iter()) {
                *vi -= dot * ci;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        columns.push(v);
    }
    columns
}

/// Generate `K` prototypes with pairwise mean distances above
/// `MIN_MEAN_DISTANCE` (enforced by rejection).
pub fn gen_population(params: &PopulationParams, seed_value: u64) -> Result<Population> {
    params.validate()?;
    let mut rng = seed::rng_from(seed_value, "population", 0);
    let mut prototypes: Vec<IdentityPrototype> = Vec::with_capacity(params.k);
    for index in 0..params.k {
        let mut attempts = 0;
        let mean = loop {
            let candidate = random_vector(params.dim, &mut rng);
            let ok = prototypes.iter().all(|p| {
                let d2: f64 = p
                    .mean
                    .iter()
                    .zip(candidate.iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                d2.sqrt() > MIN_MEAN_DISTANCE
            });
            if ok {
                break candidate;
            }
            attempts += 1;
            if attempts > REJECTION_BUDGET {
                return Err(Error::numeric(format!(
                    "could not place identity {index}: rejection budget exhausted"
                )));
            }
        };
        let pose_basis = orthonormal_columns(params.dim, params.pose_dim, &mut rng);
        prototypes.push(IdentityPrototype {
            index,
            mean,
            pose_basis,
            texture_seed: seed::derive_seed(seed_value, "texture", index as u64),
        });
    }
    let generator_ctx = GeneratorContext::derive(params, &GeneratorParams::default(), seed_value);
    Ok(Population {
        params: *params,
        prototypes,
        generator_ctx,
        seed: seed_value,
    })
}

impl Population {
    /// Expected variance of a pose coefficient recovered by projecting a
    /// foreign sample's deviation onto a target basis; used to normalize
    /// deepfake pose coefficients back to the authentic scale.
    pub fn projected_pose_variance(&self) -> f64 {
        let p = self.params.pose_dim as f64;
        let d = self.params.dim as f64;
        p / d + self.params.noise_sigma * self.params.noise_sigma
    }
}
