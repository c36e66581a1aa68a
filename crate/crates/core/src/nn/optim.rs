//! SGD and Adam parameter updates.

use super::net::{DenseNet, Gradients};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum OptimizerKind {
    Sgd,
    Adam { beta1: f64, beta2: f64, eps: f64 },
}

/// Optimizer state. Adam keeps first/second moment accumulators shaped
/// exactly like the parameters; the frozen prefix never accumulates state.
#[derive(Debug, Clone)]
pub struct Optimizer {
    pub kind: OptimizerKind,
    pub learning_rate: f64,
    step_count: u64,
    m: Vec<(Vec<f64>, Vec<f64>)>,
    v: Vec<(Vec<f64>, Vec<f64>)>,
}

impl Optimizer {
    pub fn sgd(learning_rate: f64) -> Self {
        Optimizer {
            kind: OptimizerKind::Sgd,
            learning_rate,
            step_count: 0,
            m: Vec::new(),
            v: Vec::new(),
        }
    }

    pub fn adam(learning_rate: f64) -> Self {
        Optimizer {
            kind: OptimizerKind::Adam {
                beta1: 0.9,
                beta2: 0.999,
                eps: 1e-8,
            },
            learning_rate,
            step_count: 0,
            m: Vec::new(),
            v: Vec::new(),
        }
    }

    fn ensure_state(&mut self, net: &DenseNet) {
        if self.m.len() != net.layers.len() {
            self.m = net
                .layers
                .iter()
                .map(|l| (vec![0.0; l.weights.len()], vec![0.0; l.bias.len()]))
                .collect();
            self.v = self.m.clone();
        }
    }

    /// Apply one update step. Frozen-prefix layers are left bit-identical.
    pub fn step(&mut self, net: &mut DenseNet, grads: &Gradients) -> Result<()> {
        if grads.layers.len() != net.layers.len() {
            return Err(Error::config("gradient/parameter shape mismatch"));
        }
        for (g, l) in grads.layers.iter().zip(net.layers.iter()) {
            if g.d_weights.len() != l.weights.len() || g.d_bias.len() != l.bias.len() {
                return Err(Error::config("gradient/parameter shape mismatch"));
            }
        }
        self.ensure_state(net);
        self.step_count += 1;
        let frozen = net.frozen_prefix_len;
        match self.kind {
            OptimizerKind::Sgd => {
                for (li, layer) in net.layers.iter_mut().enumerate().skip(frozen) {
                    let g = &grads.layers[li];
                    for (p, gp) in layer.weights.iter_mut().zip(g.d_weights.iter()) {
                        *p -= self.learning_rate * gp;
                    }
                    for (p, gp) in layer.bias.iter_mut().zip(g.d_bias.iter()) {
                        *p -= self.learning_rate * gp;
                    }
                }
            }
            OptimizerKind::Adam { beta1, beta2, eps } => {
                let t = self.step_count as i32;
                let bc1 = 1.0 - beta1.powi(t);
                let bc2 = 1.0 - beta2.powi(t);
                for (li, layer) in net.layers.iter_mut().enumerate().skip(frozen) {
                    let g = &grads.layers[li];
                    let (mw, mb) = &mut self.m[li];
                    let (vw, vb) = &mut self.v[li];
                    adam_update(
                        &mut layer.weights,
                        &g.d_weights,
                        mw,
                        vw,
                        self.learning_rate,
                        beta1,
                        beta2,
                        eps,
                        bc1,
                        bc2,
                    );
                    adam_update(
                        &mut layer.bias,
                        &g.d_bias,
                        mb,
                        vb,
                        self.learning_rate,
                        beta1,
                        beta2,
                        eps,
                        bc1,
                        bc2,
                    );
                }
            }
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn adam_update(
    params: &mut [f64],
    grads: &[f64],
    m: &mut [f64],
    v: &mut [f64],
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    bc1: f64,
    bc2: f64,
) {
    for i in 0..params.len() {
        m[i] = beta1 * m[i] + (1.0 - beta1) * grads[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * grads[i] * grads[i];
        let m_hat = m[i] / bc1;
        let v_hat = v[i] / bc2;
        params[i] -= lr * m_hat / (v_hat.sqrt() + eps);
    }
}
