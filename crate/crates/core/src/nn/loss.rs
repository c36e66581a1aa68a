//! Loss primitives shared across the pipeline.

use crate::error::{Error, Result};

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "euclidean_distance: length mismatch {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Pairwise contrastive loss: `(1-Y) d^2 + Y [max(0, m-d)]^2`.
///
/// `y = true` marks the pair whose distance should grow beyond the margin
/// (the authentic case); `y = false` marks the pair pulled together.
pub fn contrastive_loss(d: f64, y: bool, margin: f64) -> f64 {
    if y {
        let h = (margin - d).max(0.0);
        h * h
    } else {
        d * d
    }
}

/// d(contrastive)/d(distance).
pub fn contrastive_loss_ddist(d: f64, y: bool, margin: f64) -> f64 {
    if y {
        if d < margin {
            -2.0 * (margin - d)
        } else {
            0.0
        }
    } else {
        2.0 * d
    }
}

/// Squared hinge on a distance: `[max(0, m_h - d)]^2`.
pub fn hinge_sq_loss(d: f64, margin: f64) -> f64 {
    let h = (margin - d).max(0.0);
    h * h
}

pub fn hinge_sq_loss_ddist(d: f64, margin: f64) -> f64 {
    if d < margin {
        -2.0 * (margin - d)
    } else {
        0.0
    }
}

/// Mean squared componentwise difference.
pub fn mse_loss(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "mse_loss: length mismatch {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as f64;
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        / n)
}

/// d(mse)/d(a).
pub fn mse_grad(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len() as f64;
    a.iter().zip(b.iter()).map(|(x, y)| 2.0 * (x - y) / n).collect()
}
