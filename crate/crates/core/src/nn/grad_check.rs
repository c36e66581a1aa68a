//! Central-difference gradient verification.
//!
//! Loss compositions register themselves through [`DiffSystem`]: anything
//! that exposes a flat parameter view, a scalar loss, and analytic
//! gradients can be checked against finite differences.

use super::net::{Batch, DenseNet, Gradients};
use crate::error::Result;

/// A differentiable system: flattened trainable parameters plus a scalar
/// loss. Implemented by each registered loss composition.
pub trait DiffSystem {
    fn param_count(&self) -> usize;
    fn get_param(&self, idx: usize) -> f64;
    fn set_param(&mut self, idx: usize, value: f64);
    fn loss(&self) -> Result<f64>;
    /// Analytic gradient for every trainable parameter, in `idx` order.
    fn analytic_grads(&self) -> Result<Vec<f64>>;
}

/// Max over parameters of the relative error between analytic and
/// central-difference gradients:
/// `|analytic - cd| / max(|analytic|, |cd|, 1e-12)`.
pub fn grad_check<S: DiffSystem>(system: &mut S, eps: f64) -> Result<f64> {
    assert!(eps > 0.0, "grad_check eps must be positive");
    let analytic = system.analytic_grads()?;
    let mut max_rel = 0.0f64;
    for i in 0..system.param_count() {
        let orig = system.get_param(i);
        system.set_param(i, orig + eps);
        let up = system.loss()?;
        system.set_param(i, orig - eps);
        let down = system.loss()?;
        system.set_param(i, orig);
        let cd = (up - down) / (2.0 * eps);
        let a = analytic[i];
        let rel = (a - cd).abs() / a.abs().max(cd.abs()).max(1e-12);
        if rel > max_rel {
            max_rel = rel;
        }
    }
    Ok(max_rel)
}

/// Flat indexing over the trainable suffix of a set of nets: weights then
/// bias, layer by layer, net by net.
pub(crate) fn net_param_count(nets: &[&DenseNet]) -> usize {
    nets.iter().map(|n| n.trainable_param_count()).sum()
}

pub(crate) fn net_get_param(nets: &[&DenseNet], mut idx: usize) -> f64 {
    for net in nets {
        for layer in &net.layers[net.frozen_prefix_len..] {
            if idx < layer.weights.len() {
                return layer.weights[idx];
            }
            idx -= layer.weights.len();
            if idx < layer.bias.len() {
                return layer.bias[idx];
            }
            idx -= layer.bias.len();
        }
    }
    panic!("parameter index out of range");
}

pub(crate) fn net_set_param(nets: &mut [&mut DenseNet], mut idx: usize, value: f64) {
    for net in nets.iter_mut() {
        let frozen = net.frozen_prefix_len;
        for layer in &mut net.layers[frozen..] {
            if idx < layer.weights.len() {
                layer.weights[idx] = value;
                return;
            }
            idx -= layer.weights.len();
            if idx < layer.bias.len() {
                layer.bias[idx] = value;
                return;
            }
            idx -= layer.bias.len();
        }
    }
    panic!("parameter index out of range");
}

pub(crate) fn flatten_trainable(nets: &[&DenseNet], grads: &[Gradients]) -> Vec<f64> {
    let mut out = Vec::new();
    for (net, g) in nets.iter().zip(grads.iter()) {
        for li in net.frozen_prefix_len..net.layers.len() {
            out.extend_from_slice(&g.layers[li].d_weights);
            out.extend_from_slice(&g.layers[li].d_bias);
        }
    }
    out
}

/// The basic registered composition: batch-mean MSE between `net(input)`
/// and the batch targets.
pub struct NetMseSystem {
    pub net: DenseNet,
    pub batch: Batch,
}

impl NetMseSystem {
    pub fn new(net: DenseNet, batch: Batch) -> Result<Self> {
        batch.validate()?;
        Ok(NetMseSystem { net, batch })
    }

    /// Batch-mean loss and parameter gradients in one backward sweep.
    pub fn loss_and_grads(&self) -> Result<(f64, Gradients)> {
        let mut total = 0.0;
        let mut grads = Gradients::zeros_like(&self.net);
        let n = self.batch.inputs.len() as f64;
        for (x, t) in self.batch.inputs.iter().zip(self.batch.targets.iter()) {
            let trace = self.net.forward_trace(x)?;
            total += super::loss::mse_loss(trace.output(), t)?;
            let d_out = super::loss::mse_grad(trace.output(), t);
            let (g, _) = self.net.backward(&trace, &d_out);
            grads.add_assign(&g);
        }
        grads.scale(1.0 / n);
        Ok((total / n, grads))
    }
}

impl DiffSystem for NetMseSystem {
    fn param_count(&self) -> usize {
        net_param_count(&[&self.net])
    }

    fn get_param(&self, idx: usize) -> f64 {
        net_get_param(&[&self.net], idx)
    }

    fn set_param(&mut self, idx: usize, value: f64) {
        net_set_param(&mut [&mut self.net], idx, value);
    }

    fn loss(&self) -> Result<f64> {
        Ok(self.loss_and_grads()?.0)
    }

    fn analytic_grads(&self) -> Result<Vec<f64>> {
        let (_, g) = self.loss_and_grads()?;
        Ok(flatten_trainable(&[&self.net], &[g]))
    }
}

/// Convenience wrapper: check a net under batch-mean MSE.
pub fn grad_check_net(net: &DenseNet, batch: &Batch, eps: f64) -> Result<f64> {
    let mut system = NetMseSystem::new(net.clone(), batch.clone())?;
    grad_check(&mut system, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::net::Activation;
    use crate::seed::rng_from;
    use rand::Rng;

    fn random_batch<R: Rng>(n: usize, din: usize, dout: usize, rng: &mut R) -> Batch {
        Batch {
            inputs: (0..n)
                .map(|_| (0..din).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect(),
            targets: (0..n)
                .map(|_| (0..dout).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect(),
        }
    }

    #[test]
    fn linear_net_matches_finite_differences() {
        let mut rng = rng_from(11, "gradcheck-linear", 0);
        let net = DenseNet::init(
            &[3, 4, 2],
            &[Activation::Linear, Activation::Linear],
            0,
            &mut rng,
        )
        .unwrap();
        let batch = random_batch(5, 3, 2, &mut rng);
        let err = grad_check_net(&net, &batch, 1e-5).unwrap();
        assert!(err < 1e-6, "relative error {err}");
    }

    #[test]
    fn tanh_and_relu_nets_match_finite_differences() {
        for seed in 0..20u64 {
            let mut rng = rng_from(seed, "gradcheck-mixed", 0);
            let net = DenseNet::init(
                &[4, 6, 3],
                &[Activation::Tanh, Activation::Relu],
                0,
                &mut rng,
            )
            .unwrap();
            // Keep inputs away from relu kinks: with |x| >= 1e-3 the
            // pre-activations stay clear of zero at this scale.
            let mut batch = random_batch(4, 4, 3, &mut rng);
            for row in batch.inputs.iter_mut() {
                for v in row.iter_mut() {
                    if v.abs() < 1e-3 {
                        *v = 1e-3_f64.copysign(*v);
                    }
                }
            }
            let err = grad_check_net(&net, &batch, 1e-5).unwrap();
            assert!(err < 1e-4, "seed {seed}: relative error {err}");
        }
    }

    #[test]
    fn corrupted_gradient_is_detected() {
        struct Corrupted(NetMseSystem);
        impl DiffSystem for Corrupted {
            fn param_count(&self) -> usize {
                self.0.param_count()
            }
            fn get_param(&self, idx: usize) -> f64 {
                self.0.get_param(idx)
            }
            fn set_param(&mut self, idx: usize, value: f64) {
                self.0.set_param(idx, value)
            }
            fn loss(&self) -> Result<f64> {
                self.0.loss()
            }
            fn analytic_grads(&self) -> Result<Vec<f64>> {
                Ok(self
                    .0
                    .analytic_grads()?
                    .into_iter()
                    .map(|g| g * 1.1)
                    .collect())
            }
        }
        let mut rng = rng_from(3, "gradcheck-corrupt", 0);
        let net = DenseNet::init(&[2, 2], &[Activation::Linear], 0, &mut rng).unwrap();
        let batch = random_batch(3, 2, 2, &mut rng);
        let mut sys = Corrupted(NetMseSystem::new(net, batch).unwrap());
        let err = grad_check(&mut sys, 1e-5).unwrap();
        assert!((err - 0.1f64 / 1.1).abs() < 1e-3, "expected ~0.0909, got {err}");
    }

    #[test]
    fn frozen_parameters_are_excluded() {
        let mut rng = rng_from(5, "gradcheck-frozen", 0);
        let net = DenseNet::init(
            &[3, 3, 2],
            &[Activation::Tanh, Activation::Linear],
            1,
            &mut rng,
        )
        .unwrap();
        let expected = net.layers[1].weights.len() + net.layers[1].bias.len();
        let batch = random_batch(2, 3, 2, &mut rng);
        let sys = NetMseSystem::new(net, batch).unwrap();
        assert_eq!(sys.param_count(), expected);
    }
}
