//! Binary cache of discrete-log tables.
//!
//! Layout (all little-endian):
//!
//! ```text
//! offset  size  field
//! 0       4     magic "FWT1"
//! 4       8     p
//! 12      4     f
//! 16      8*(q-1)  dlog of the elements 1, 2, ..., q-1 in element order
//! ```
//!
//! The generator is the element whose entry is 1. Readers verify the header,
//! the length and the bijectivity of the table; anything else is treated as a
//! cache miss.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{FieldSpec, FieldTable};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"FWT1";
pub const HEADER_LEN: usize = 16;

pub fn cache_path(dir: &Path, spec: &FieldSpec) -> PathBuf {
    dir.join(format!("gf-{}-{}.fwt", spec.p, spec.f))
}

pub fn encode_header(spec: &FieldSpec) -> Result<[u8; HEADER_LEN]> {
    if spec.q > u32::MAX as u64 {
        return Err(Error::domain("field too large for the cache format"));
    }
    let mut header = [0u8; HEADER_LEN];
    header[..4].copy_from_slice(MAGIC);
    header[4..12].copy_from_slice(&spec.p.to_le_bytes());
    header[12..16].copy_from_slice(&spec.f.to_le_bytes());
    Ok(header)
}

/// Serializes a table to bytes in the cache layout.
pub fn to_bytes(table: &FieldTable) -> Result<Vec<u8>> {
    let spec = table.spec();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * (spec.q as usize - 1));
    out.extend_from_slice(&encode_header(&spec)?);
    for e in table.raw_dlog_entries() {
        out.extend_from_slice(&e.to_le_bytes());
    }
    Ok(out)
}

/// Parses the cache layout; `None` when the header does not match `spec`.
pub fn parse(bytes: &[u8], spec: &FieldSpec) -> Option<Vec<u64>> {
    if bytes.len() < HEADER_LEN || &bytes[..HEADER_LEN] != encode_header(spec).ok()?.as_slice() {
        return None;
    }
    let body = &bytes[HEADER_LEN..];
    if body.len() != 8 * (spec.q as usize - 1) {
        return None;
    }
    Some(
        body.chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect(),
    )
}

pub(crate) fn load(dir: &Path, spec: &FieldSpec) -> Result<Option<Vec<u64>>> {
    let path = cache_path(dir, spec);
    if !path.exists() {
        return Ok(None);
    }
    let bytes = fs::read(path)?;
    Ok(parse(&bytes, spec))
}

pub(crate) fn store(dir: &Path, table: &FieldTable) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, &table.spec());
    let tmp = path.with_extension("fwt.tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        w.write_all(&to_bytes(table)?)?;
        w.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}
