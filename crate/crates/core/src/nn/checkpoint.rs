//! Binary network checkpoints.
//!
//! Layout (all integers little-endian):
//! magic `DFIDNET1`, u32 layer count, u32 frozen_prefix_len, then per layer
//! `u32 in_dim, u32 out_dim, u8 activation tag`, then per layer the
//! row-major `f64` weights followed by the `f64` bias.

use super::net::{Activation, DenseNet, Layer};
use crate::error::{Error, Result};
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: &[u8; 8] = b"DFIDNET1";

pub fn save_net(net: &DenseNet, path: &Path) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(net.layers.len() as u32).to_le_bytes());
    buf.extend_from_slice(&(net.frozen_prefix_len as u32).to_le_bytes());
    for layer in &net.layers {
        buf.extend_from_slice(&(layer.input_dim as u32).to_le_bytes());
        buf.extend_from_slice(&(layer.output_dim as u32).to_le_bytes());
        buf.push(layer.activation.tag());
    }
    for layer in &net.layers {
        for w in layer.weights.iter().chain(layer.bias.iter()) {
            buf.extend_from_slice(&w.to_le_bytes());
        }
    }
    let display = path.display().to_string();
    let mut file =
        std::fs::File::create(path).map_err(|e| Error::io(display.clone(), e))?;
    file.write_all(&buf).map_err(|e| Error::io(display, e))?;
    Ok(())
}

pub fn load_net(path: &Path) -> Result<DenseNet> {
    let display = path.display().to_string();
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(display.clone(), e))?;
    let mut cursor = 0usize;
    let take = |cursor: &mut usize, n: usize| -> Result<&[u8]> {
        if *cursor + n > bytes.len() {
            return Err(Error::Parse {
                path: display.clone(),
                message: "truncated checkpoint".into(),
            });
        }
        let s = &bytes[*cursor..*cursor + n];
        *cursor += n;
        Ok(s)
    };
    if take(&mut cursor, 8)? != MAGIC {
        return Err(Error::Parse {
            path: display.clone(),
            message: "bad magic; not a network checkpoint".into(),
        });
    }
    let read_u32 = |cursor: &mut usize| -> Result<u32> {
        let s = take(cursor, 4)?;
        Ok(u32::from_le_bytes([s[0], s[1], s[2], s[3]]))
    };
    let n_layers = read_u32(&mut cursor)? as usize;
    let frozen = read_u32(&mut cursor)? as usize;
    let mut headers = Vec::with_capacity(n_layers);
    for _ in 0..n_layers {
        let input_dim = read_u32(&mut cursor)? as usize;
        let output_dim = read_u32(&mut cursor)? as usize;
        let act = Activation::from_tag(take(&mut cursor, 1)?[0])?;
        headers.push((input_dim, output_dim, act));
    }
    let mut layers = Vec::with_capacity(n_layers);
    for (input_dim, output_dim, act) in headers {
        let mut layer = Layer::zeros(input_dim, output_dim, act);
        for slot in layer.weights.iter_mut().chain(layer.bias.iter_mut()) {
            let s = take(&mut cursor, 8)?;
            *slot = f64::from_le_bytes([s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7]]);
        }
        layers.push(layer);
    }
    if cursor != bytes.len() {
        return Err(Error::Parse {
            path: display,
            message: "trailing bytes after checkpoint payload".into(),
        });
    }
    DenseNet::new(layers, frozen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut rng = rng_from(9, "ckpt", 0);
        let net = DenseNet::init(
            &[5, 4, 3],
            &[Activation::Tanh, Activation::Linear],
            1,
            &mut rng,
        )
        .unwrap();
        let dir = std::env::temp_dir().join("dfid_ckpt_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("net.ckpt");
        save_net(&net, &path).unwrap();
        let loaded = load_net(&path).unwrap();
        assert_eq!(net, loaded);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn garbage_is_rejected() {
        let dir = std::env::temp_dir().join("dfid_ckpt_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("garbage.ckpt");
        std::fs::write(&path, b"not a checkpoint").unwrap();
        assert!(load_net(&path).is_err());
        std::fs::remove_file(&path).ok();
    }
}
