//! Model files: the 4-byte magic `RTCM`, a little-endian `u16` format
//! version, a `u8` algorithm tag (position in table order), then the model
//! as JSON.

use std::io::{Read, Write};

use super::{Algorithm, TrainedModel};

const MAGIC: &[u8; 4] = b"RTCM";
const VERSION: u16 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ModelIoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not a model file")]
    BadMagic,
    #[error("unsupported model format version {0}")]
    UnsupportedVersion(u16),
    #[error("unknown algorithm tag {0}")]
    UnknownTag(u8),
    #[error("header says {header} but payload holds {payload}")]
    TagMismatch {
        header: Algorithm,
        payload: Algorithm,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn save_model<W: Write>(model: &TrainedModel, mut out: W) -> Result<(), ModelIoError> {
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&[model.algorithm.tag()])?;
    serde_json::to_writer(&mut out, model)?;
    out.flush()?;
    Ok(())
}

pub fn load_model<R: Read>(mut input: R) -> Result<TrainedModel, ModelIoError> {
    let mut header = [0u8; 7];
    input.read_exact(&mut header)?;
    if &header[..4] != MAGIC {
        return Err(ModelIoError::BadMagic);
    }
    let version = u16::from_le_bytes([header[4], header[5]]);
    if version != VERSION {
        return Err(ModelIoError::UnsupportedVersion(version));
    }
    let tagged = Algorithm::from_tag(header[6]).ok_or(ModelIoError::UnknownTag(header[6]))?;
    let model: TrainedModel = serde_json::from_reader(input)?;
    if model.algorithm != tagged {
        return Err(ModelIoError::TagMismatch {
            header: tagged,
            payload: model.algorithm,
        });
    }
    Ok(model)
}
