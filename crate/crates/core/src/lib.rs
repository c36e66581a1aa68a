//! Identity-conditioned deepfake detection on synthetic face vectors.
//!
//! The toolkit has three layers:
//!
//! * a minimal dense-network engine ([`nn`]) with gradient verification,
//! * the Gaussian identity-conditioning theory ([`theory`]): closed-form
//!   and Monte Carlo error probabilities for per-identity vs pooled
//!   decision rules,
//! * the detection pipeline itself: synthetic data ([`synth`]),
//!   per-identity reconstruction operators ([`recon`]), teacher–student
//!   feature distillation ([`distill`]), the Siamese detector
//!   ([`detector`]), and evaluation/orchestration ([`eval`]).
//!
//! Everything is seeded and deterministic: the same master seed and
//! configuration produce byte-identical artifacts.

pub mod config;
pub mod detector;
pub mod distill;
pub mod error;
pub mod eval;
pub mod nn;
pub mod recon;
pub mod seed;
pub mod synth;
pub mod theory;

pub use error::{Error, Result};
