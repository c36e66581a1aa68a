//! Minimal dense-network engine: forward/backward passes, SGD/Adam,
//! loss primitives, finite-difference gradient verification, and a binary
//! checkpoint format.

mod checkpoint;
mod grad_check;
mod loss;
mod net;
mod optim;

pub use checkpoint::{load_net, save_net};
pub use grad_check::{grad_check, grad_check_net, DiffSystem, NetMseSystem};
pub use loss::{
    contrastive_loss, contrastive_loss_ddist, euclidean_distance, hinge_sq_loss,
    hinge_sq_loss_ddist, mse_grad, mse_loss,
};
pub use net::{Activation, Batch, DenseNet, ForwardTrace, Gradients, Layer, LayerGrad};
pub use optim::{Optimizer, OptimizerKind};
