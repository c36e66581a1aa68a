//! Dense feed-forward networks over `f64` vectors.

use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Activation {
    Linear,
    Relu,
    Tanh,
}

impl Activation {
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Linear => z,
            Activation::Relu => z.max(0.0),
            Activation::Tanh => z.tanh(),
        }
    }

    /// Derivative as a function of the pre-activation `z`.
    pub fn derivative(self, z: f64) -> f64 {
        match self {
            Activation::Linear => 1.0,
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => {
                let t = z.tanh();
                1.0 - t * t
            }
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            Activation::Linear => 0,
            Activation::Relu => 1,
            Activation::Tanh => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(Activation::Linear),
            1 => Ok(Activation::Relu),
            2 => Ok(Activation::Tanh),
            other => Err(Error::config(format!("unknown activation tag {other}"))),
        }
    }
}

/// One affine layer: `y = act(W x + b)` with `W` stored row-major `[out × in]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub input_dim: usize,
    pub output_dim: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
    pub activation: Activation,
}

impl Layer {
    pub fn zeros(input_dim: usize, output_dim: usize, activation: Activation) -> Self {
        Layer {
            input_dim,
            output_dim,
            weights: vec![0.0; input_dim * output_dim],
            bias: vec![0.0; output_dim],
            activation,
        }
    }

    fn affine(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for o in 0..self.output_dim {
            let row = &self.weights[o * self.input_dim..(o + 1) * self.input_dim];
            let mut acc = self.bias[o];
            for (w, xi) in row.iter().zip(x.iter()) {
                acc += w * xi;
            }
            out.push(acc);
        }
    }
}

/// Records of a forward pass needed for backpropagation.
#[derive(Debug, Clone)]
pub struct ForwardTrace {
    pub input: Vec<f64>,
    /// Pre-activation vectors, one per layer.
    pub pre: Vec<Vec<f64>>,
    /// Post-activation vectors, one per layer. `post.last()` is the output.
    pub post: Vec<Vec<f64>>,
}

impl ForwardTrace {
    pub fn output(&self) -> &[f64] {
        self.post.last().map(Vec::as_slice).unwrap_or(&self.input)
    }
}

/// Per-layer parameter gradients. Frozen-prefix entries are exactly zero.
#[derive(Debug, Clone)]
pub struct LayerGrad {
    pub d_weights: Vec<f64>,
    pub d_bias: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Gradients {
    pub layers: Vec<LayerGrad>,
}

impl Gradients {
    pub fn zeros_like(net: &DenseNet) -> Self {
        Gradients {
            layers: net
                .layers
                .iter()
                .map(|l| LayerGrad {
                    d_weights: vec![0.0; l.weights.len()],
                    d_bias: vec![0.0; l.bias.len()],
                })
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Gradients) {
        for (a, b) in self.layers.iter_mut().zip(other.layers.iter()) {
            for (x, y) in a.d_weights.iter_mut().zip(b.d_weights.iter()) {
                *x += y;
            }
            for (x, y) in a.d_bias.iter_mut().zip(b.d_bias.iter()) {
                *x += y;
            }
        }
    }

    pub fn scale(&mut self, c: f64) {
        for g in self.layers.iter_mut() {
            for x in g.d_weights.iter_mut() {
                *x *= c;
            }
            for x in g.d_bias.iter_mut() {
                *x *= c;
            }
        }
    }
}

/// A minibatch: row-major inputs with per-row target vectors where the loss
/// needs them.
#[derive(Debug, Clone)]
pub struct Batch {
    pub inputs: Vec<Vec<f64>>,
    pub targets: Vec<Vec<f64>>,
}

impl Batch {
    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::config("batch must contain at least one row"));
        }
        for row in self.inputs.iter().chain(self.targets.iter()) {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::numeric("batch contains non-finite values"));
            }
        }
        Ok(())
    }
}

/// Dense feed-forward network. The first `frozen_prefix_len` layers are
/// excluded from parameter updates (their gradients are pinned to zero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseNet {
    pub layers: Vec<Layer>,
    pub frozen_prefix_len: usize,
}

impl DenseNet {
    pub fn new(layers: Vec<Layer>, frozen_prefix_len: usize) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::config("network needs at least one layer"));
        }
        for w in layers.windows(2) {
            if w[0].output_dim != w[1].input_dim {
                return Err(Error::config(format!(
                    "layer dimensions do not chain: {} -> {}",
                    w[0].output_dim, w[1].input_dim
                )));
            }
        }
        if frozen_prefix_len > layers.len() {
            return Err(Error::config("frozen prefix longer than the network"));
        }
        Ok(DenseNet {
            layers,
            frozen_prefix_len,
        })
    }

    /// Xavier-uniform initialization: `U(±sqrt(6/(fan_in+fan_out)))`, biases zero.
    pub fn init<R: Rng>(
        dims: &[usize],
        activations: &[Activation],
        frozen_prefix_len: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if dims.len() < 2 || activations.len() != dims.len() - 1 {
            return Err(Error::config("dims/activations lengths inconsistent"));
        }
        let mut layers = Vec::with_capacity(activations.len());
        for (i, act) in activations.iter().enumerate() {
            let (fan_in, fan_out) = (dims[i], dims[i + 1]);
            let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
            let mut layer = Layer::zeros(fan_in, fan_out, *act);
            for w in layer.weights.iter_mut() {
                *w = rng.gen_range(-bound..=bound);
            }
            layers.push(layer);
        }
        DenseNet::new(layers, frozen_prefix_len)
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().output_dim
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.forward_trace(x)?.post.pop_or_input())
    }

    pub fn forward_trace(&self, x: &[f64]) -> Result<ForwardTrace> {
        if x.len() != self.input_dim() {
            return Err(Error::config(format!(
                "input length {} does not match first layer input size {}",
                x.len(),
                self.input_dim()
            )));
        }
        let mut trace = ForwardTrace {
            input: x.to_vec(),
            pre: Vec::with_capacity(self.layers.len()),
            post: Vec::with_capacity(self.layers.len()),
        };
        let mut cur = x.to_vec();
        for (li, layer) in self.layers.iter().enumerate() {
            let mut z = Vec::new();
            layer.affine(&cur, &mut z);
            if z.iter().any(|v| !v.is_finite()) {
                return Err(Error::numeric(format!(
                    "non-finite pre-activation at layer {li}"
                )));
            }
            cur = z.iter().map(|&v| layer.activation.apply(v)).collect();
            trace.pre.push(z);
            trace.post.push(cur.clone());
        }
        Ok(trace)
    }

    /// Activations entering the final layer; the "penultimate features" of a
    /// classifier net.
    pub fn penultimate(&self, x: &[f64]) -> Result<Vec<f64>> {
        let trace = self.forward_trace(x)?;
        let n = trace.post.len();
        if n >= 2 {
            Ok(trace.post[n - 2].clone())
        } else {
            Ok(trace.input)
        }
    }

    /// Backpropagate `d_loss/d_output` through the net. Returns parameter
    /// gradients (zeroed over the frozen prefix) and `d_loss/d_input`.
    pub fn backward(&self, trace: &ForwardTrace, d_output: &[f64]) -> (Gradients, Vec<f64>) {
        debug_assert_eq!(d_output.len(), self.output_dim());
        let mut grads = Gradients::zeros_like(self);
        let mut delta: Vec<f64> = d_output.to_vec();
        for li in (0..self.layers.len()).rev() {
            let layer = &self.layers[li];
            // d/dz = d/dy * act'(z)
            for (d, z) in delta.iter_mut().zip(trace.pre[li].iter()) {
                *d *= layer.activation.derivative(*z);
            }
            let below: &[f64] = if li == 0 {
                &trace.input
            } else {
                &trace.post[li - 1]
            };
            if li >= self.frozen_prefix_len {
                let g = &mut grads.layers[li];
                for o in 0..layer.output_dim {
                    let row = &mut g.d_weights[o * layer.input_dim..(o + 1) * layer.input_dim];
                    for (gw, xi) in row.iter_mut().zip(below.iter()) {
                        *gw += delta[o] * xi;
                    }
                    g.d_bias[o] += delta[o];
                }
            }
            let mut d_below = vec![0.0; layer.input_dim];
            for o in 0..layer.output_dim {
                let row = &layer.weights[o * layer.input_dim..(o + 1) * layer.input_dim];
                for (db, w) in d_below.iter_mut().zip(row.iter()) {
                    *db += delta[o] * w;
                }
            }
            delta = d_below;
        }
        (grads, delta)
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.bias.len()).sum()
    }

    /// Number of parameters in the trainable (non-frozen) suffix.
    pub fn trainable_param_count(&self) -> usize {
        self.layers[self.frozen_prefix_len..]
            .iter()
            .map(|l| l.weights.len() + l.bias.len())
            .sum()
    }
}

trait PopOrInput {
    fn pop_or_input(self) -> Vec<f64>;
}

impl PopOrInput for Vec<Vec<f64>> {
    fn pop_or_input(mut self) -> Vec<f64> {
        self.pop().expect("network has at least one layer")
    }
}
