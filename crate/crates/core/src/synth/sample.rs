//! Face samples and authentic sample generation.

use super::population::IdentityPrototype;
use crate::seed;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Generator family: `A` is the swap-blend family, `B` the noise-renoise
/// family with smoothing. Stand-ins for GAN-based and diffusion-based
/// face swappers.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Family {
    A,
    B,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            other => Err(crate::error::Error::config(format!(
                "unknown generator family '{other}' (expected A or B)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source_identity: usize,
    pub family: Family,
}

/// One face vector with its identity, session, and authenticity label.
/// Authentic samples carry no provenance; deepfakes record their source
/// identity and generator family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceSample {
    pub x: Vec<f64>,
    pub identity: usize,
    pub session: usize,
    pub authentic: bool,
    pub provenance: Option<Provenance>,
}

impl FaceSample {
    /// The contrastive label: 1 for authentic, 0 for deepfake.
    pub fn label_y(&self) -> u8 {
        u8::from(self.authentic)
    }
}

/// Draw `n` authentic samples: `x = mean + B z + eps` with `z ~ N(0, I_p)`
/// and isotropic noise. Samples are assigned round-robin to sessions
/// `1..=sessions`.
pub fn gen_authentic(
    proto: &IdentityPrototype,
    n: usize,
    sessions: usize,
    noise_sigma: f64,
    seed_value: u64,
) -> Vec<FaceSample> {
    assert!(n >= 1 && sessions >= 1);
    let mut rng = seed::rng_from(seed_value, "authentic-samples", proto.index as u64);
    let dim = proto.mean.len();
    (0..n)
        .map(|i| {
            let mut x = proto.mean.clone();
            for basis_col in &proto.pose_basis {
                let z: f64 = StandardNormal.sample(&mut rng);
                for (xi, bi) in x.iter_mut().zip(basis_col.iter()) {
                    *xi += z * bi;
                }
            }
            for xi in x.iter_mut().take(dim) {
                let e: f64 = StandardNormal.sample(&mut rng);
                *xi += noise_sigma * e;
            }
            FaceSample {
                x,
                identity: proto.index,
                session: (i % sessions) + 1,
                authentic: true,
                provenance: None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::population::{gen_population, PopulationParams};

    #[test]
    fn zero_noise_zero_pose_yields_the_mean() {
        let params = PopulationParams {
            k: 2,
            dim: 8,
            pose_dim: 1,
            noise_sigma: 0.25,
        };
        let mut pop = gen_population(&params, 0).unwrap();
        // degenerate pose: zero out the basis column
        pop.prototypes[0].pose_basis[0].iter_mut().for_each(|v| *v = 0.0);
        let samples = gen_authentic(&pop.prototypes[0], 5, 2, 0.0, 1);
        for s in samples {
            assert_eq!(s.x, pop.prototypes[0].mean);
        }
    }

    #[test]
    fn sessions_cover_the_requested_range() {
        let pop = gen_population(&PopulationParams::default(), 0).unwrap();
        let samples = gen_authentic(&pop.prototypes[0], 20, 4, 0.25, 1);
        let seen: std::collections::BTreeSet<usize> =
            samples.iter().map(|s| s.session).collect();
        assert_eq!(seen, (1..=4).collect());
    }

    #[test]
    fn sample_mean_converges_to_prototype_mean() {
        let pop = gen_population(&PopulationParams::default(), 3).unwrap();
        let proto = &pop.prototypes[1];
        let n = 10_000;
        let samples = gen_authentic(proto, n, 1, 0.25, 9);
        // per-coordinate deviation scale: pose + noise
        let coord_sigma = ((proto.pose_basis.len() as f64 / proto.mean.len() as f64)
            + 0.25 * 0.25)
            .sqrt();
        let tol = 3.0 * coord_sigma / (n as f64).sqrt() * 3.0;
        for c in 0..proto.mean.len() {
            let mean_c = samples.iter().map(|s| s.x[c]).sum::<f64>() / n as f64;
            assert!(
                (mean_c - proto.mean[c]).abs() < tol.max(0.03),
                "coordinate {c}: {mean_c} vs {}",
                proto.mean[c]
            );
        }
    }
}
