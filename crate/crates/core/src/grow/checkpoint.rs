//! Versioned, checksummed checkpoint files.
//!
//! Layout: 8-byte magic, version (u32 LE), SHA-256 of the config, payload
//! length (u64 LE), SHA-256 of the payload, then the JSON payload.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::round::SearchState;
use super::{CheckpointError, GrowError};

const MAGIC: &[u8; 8] = b"CYCGROW\0";
const VERSION: u32 = 1;
const HEADER: usize = 8 + 4 + 32 + 8 + 32;

pub fn checkpoint_bytes(state: &SearchState) -> Vec<u8> {
    let payload = serde_json::to_vec(state).expect("search state serializes");
    let mut out = Vec::with_capacity(HEADER + payload.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&state.config.hash());
    out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    out.extend_from_slice(&Sha256::digest(&payload));
    out.extend_from_slice(&payload);
    out
}

pub fn state_from_bytes(bytes: &[u8]) -> Result<SearchState, CheckpointError> {
    if bytes.len() < 8 || &bytes[..8] != MAGIC {
        return Err(if bytes.len() < 8 && MAGIC.starts_with(bytes) { CheckpointError::Truncated } else { CheckpointError::BadMagic });
    }
    if bytes.len() < HEADER {
        return Err(CheckpointError::Truncated);
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(CheckpointError::Version(version));
    }
    let config_hash = &bytes[12..44];
    let len = u64::from_le_bytes(bytes[44..52].try_into().expect("8 bytes"));
    let checksum = &bytes[52..84];
    let payload = &bytes[HEADER..];
    if (payload.len() as u64) < len {
        return Err(CheckpointError::Truncated);
    }
    if payload.len() as u64 != len {
        return Err(CheckpointError::Payload("trailing bytes after payload".into()));
    }
    if Sha256::digest(payload).as_slice() != checksum {
        return Err(CheckpointError::Checksum);
    }
    let state: SearchState = serde_json::from_slice(payload).map_err(|e| CheckpointError::Payload(e.to_string()))?;
    if state.config.hash().as_slice() != config_hash {
        return Err(CheckpointError::ConfigHash);
    }
    Ok(state)
}

/// Writes the checkpoint atomically (temporary file, then rename).
pub fn save_checkpoint(state: &SearchState, path: &Path) -> Result<(), GrowError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, checkpoint_bytes(state))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_checkpoint(path: &Path) -> Result<SearchState, GrowError> {
    let bytes = fs::read(path)?;
    let state = state_from_bytes(&bytes)?;
    state.config.validate()?;
    Ok(state)
}
