//! Synthetic identity-structured "face" vectors, toy deepfake generators,
//! and session-based dataset splits.
//!
//! Faces are vectors `x = mean_k + B_k z + noise` where each identity `k`
//! has its own mean and orthonormal pose basis `B_k`. Two generator
//! families turn a source identity's sample into a deepfake of a target
//! identity; each family stamps a fixed low-amplitude signature into its
//! own subspace — the synthetic stand-in for the processing traces real
//! generators leave behind.

mod generator;
mod io;
mod population;
mod sample;
mod split;

pub use generator::{make_deepfake, GeneratorContext, GeneratorParams};
pub use io::{read_split_csv, write_split_csv, DatasetManifest};
pub use population::{gen_population, IdentityPrototype, Population, PopulationParams};
pub use sample::{gen_authentic, FaceSample, Family, Provenance};
pub use split::{split_sessions, DatasetSplit, SplitPlan};

use crate::error::Result;
use crate::seed;
use serde::{Deserialize, Serialize};

/// Everything needed to produce one reproducible dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub population: PopulationParams,
    pub generator: GeneratorParams,
    pub plan: SplitPlan,
    /// Authentic samples per identity per session.
    pub samples_per_session: usize,
    /// Extra sessions (beyond the split plan) reserved for teacher
    /// pretraining; disjoint from every split.
    pub pool_sessions: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            population: PopulationParams::default(),
            generator: GeneratorParams::default(),
            plan: SplitPlan::default(),
            samples_per_session: 12,
            pool_sessions: 3,
            seed: 0,
        }
    }
}

/// A generated dataset: the population that produced it, the four split
/// partitions, and the disjoint teacher pool.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub config: SynthConfig,
    pub population: Population,
    pub split: DatasetSplit,
    pub teacher_pool: Vec<FaceSample>,
}

/// Generate the full dataset for a config. Deepfakes are produced for the
/// detector-train, validation, and test session blocks (never for the
/// reconstruction block): family A everywhere, and family B additionally in
/// the test block so mismatch evaluations can filter on it. The teacher
/// pool gets its own sessions with family-A deepfakes.
pub fn generate_dataset(config: &SynthConfig) -> Result<Dataset> {
    let population = gen_population(&config.population, config.seed)?;
    let plan = &config.plan;
    let total_sessions = plan.total_sessions();
    let k = config.population.k;
    let n = config.samples_per_session;

    let mut authentic: Vec<FaceSample> = Vec::new();
    for proto in &population.prototypes {
        let samples = gen_authentic(
            proto,
            n * (total_sessions + config.pool_sessions),
            total_sessions + config.pool_sessions,
            config.population.noise_sigma,
            seed::derive_seed(config.seed, "authentic", proto.index as u64),
        );
        authentic.extend(samples);
    }

    // authentic is identity-major with sessions assigned round-robin, so
    // sample `idx` of an identity in a given session sits at a fixed offset.
    let sessions_gen = total_sessions + config.pool_sessions;
    let sample_at = |identity: usize, session: usize, idx: usize| -> &FaceSample {
        let per_identity = n * sessions_gen;
        &authentic[identity * per_identity + (idx * sessions_gen + (session - 1))]
    };

    let mut deepfakes: Vec<FaceSample> = Vec::new();
    let df_session_first = plan.recon_sessions + 1;
    for target in 0..k {
        for session in df_session_first..=sessions_gen {
            let in_test_block = plan.is_test_session(session);
            let families: &[Family] = if in_test_block {
                &[Family::A, Family::B]
            } else {
                &[Family::A]
            };
            for idx in 0..n {
                // rotate sources over the other identities
                let source_identity = (target + 1 + (idx % (k - 1))) % k;
                let source = sample_at(source_identity, session, idx);
                for &family in families {
                    deepfakes.push(make_deepfake(
                        family,
                        source,
                        &population.prototypes[source_identity],
                        &population.prototypes[target],
                        &config.generator,
                        &population,
                    )?);
                }
            }
        }
    }

    let mut all: Vec<FaceSample> = Vec::new();
    let pool_first = total_sessions + 1;
    let mut teacher_pool: Vec<FaceSample> = Vec::new();
    for s in authentic.into_iter().chain(deepfakes.into_iter()) {
        if s.session >= pool_first {
            teacher_pool.push(s);
        } else {
            all.push(s);
        }
    }
    sort_samples(&mut all);
    sort_samples(&mut teacher_pool);

    let split = split_sessions(all, plan, 0)?;
    Ok(Dataset {
        config: config.clone(),
        population,
        split,
        teacher_pool,
    })
}

/// Canonical sample order: identity, session, authentic before deepfake,
/// then family/source.
pub(crate) fn sort_samples(samples: &mut [FaceSample]) {
    samples.sort_by(|a, b| {
        (
            a.identity,
            a.session,
            !a.authentic,
            a.provenance.as_ref().map(|p| (p.family, p.source_identity)),
        )
            .cmp(&(
                b.identity,
                b.session,
                !b.authentic,
                b.provenance.as_ref().map(|p| (p.family, p.source_identity)),
            ))
    });
}
