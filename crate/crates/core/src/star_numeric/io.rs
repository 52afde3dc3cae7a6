//! `.moya` grid files: a 16-byte header followed by little-endian complex f64 pairs.
//!
//! Header layout: magic `MOYA`, u8 version, u8 dim, u16 N, f32 L, 4 zero bytes.
//! A JSON sidecar with the same stem records the full spec and, optionally, σ.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{GridFunction, GridSpec};
use crate::error::{Error, Result};
use crate::geometry::SkewForm;

pub const MAGIC: &[u8; 4] = b"MOYA";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sidecar {
    pub spec: GridSpec,
    pub theta: f64,
    #[serde(default)]
    pub sigma: Option<SkewForm>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Header {
    pub version: u8,
    pub dim: u8,
    pub n: u16,
    pub length: f32,
}

pub fn encode(f: &GridFunction) -> Result<Vec<u8>> {
    let spec = f.spec();
    let dim = u8::try_from(spec.dim).map_err(|_| Error::Format("dim does not fit in u8".into()))?;
    let n = u16::try_from(spec.n).map_err(|_| Error::Format("N does not fit in u16".into()))?;
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * spec.total());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(dim);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&(spec.length as f32).to_le_bytes());
    out.extend_from_slice(&[0; 4]);
    for v in f.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_header(bytes: &[u8]) -> Result<Header> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!("file too short for header: {} bytes", bytes.len())));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let header = Header {
        version: bytes[4],
        dim: bytes[5],
        n: u16::from_le_bytes([bytes[6], bytes[7]]),
        length: f32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes")),
    };
    if header.version != VERSION {
        return Err(Error::Format(format!("unsupported version {}", header.version)));
    }
    Ok(header)
}

/// Decodes a grid; `spec` (usually from the sidecar) must agree with the header.
pub fn decode(bytes: &[u8], spec: Option<&GridSpec>) -> Result<GridFunction> {
    let h = decode_header(bytes)?;
    let spec = match spec {
        Some(s) => {
            if s.dim != h.dim as usize || s.n != h.n as usize || (s.length as f32) != h.length {
                return Err(Error::Format(format!(
                    "header (d={}, N={}, L={}) disagrees with sidecar (d={}, N={}, L={})",
                    h.dim, h.n, h.length, s.dim, s.n, s.length
                )));
            }
            s.clone()
        }
        None => GridSpec::new(h.dim as usize, h.n as usize, h.length as f64, 1.0)?,
    };
    spec.validate()?;
    let body = &bytes[HEADER_LEN..];
    if body.len() != 16 * spec.total() {
        return Err(Error::Format(format!(
            "body has {} bytes, expected {}",
            body.len(),
            16 * spec.total()
        )));
    }
    let values = body
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().expect("8 bytes")),
                f64::from_le_bytes(c[8..].try_into().expect("8 bytes")),
            )
        })
        .collect();
    GridFunction::new(spec, values)
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// Writes `path` and its JSON sidecar.
pub fn save_grid(path: &Path, f: &GridFunction, sigma: Option<&SkewForm>) -> Result<()> {
    fs::write(path, encode(f)?)?;
    let side = Sidecar { spec: f.spec().clone(), theta: f.spec().theta, sigma: sigma.cloned() };
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&side)? + "\n")?;
    Ok(())
}

/// Reads a grid and, when present, its sidecar.
pub fn load_grid(path: &Path) -> Result<(GridFunction, Option<Sidecar>)> {
    let bytes = fs::read(path)?;
    let side_path = sidecar_path(path);
    let sidecar: Option<Sidecar> = if side_path.exists() {
        Some(serde_json::from_str(&fs::read_to_string(&side_path)?)?)
    } else {
        None
    };
    if let Some(s) = &sidecar {
        if s.theta != s.spec.theta {
            return Err(Error::Format("sidecar theta disagrees with its spec".into()));
        }
    }
    let f = decode(&bytes, sidecar.as_ref().map(|s| &s.spec))?;
    Ok((f, sidecar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star_numeric::functions::gaussian;

    #[test]
    fn header_layout() {
        let spec = GridSpec::new(2, 8, 3.0, 0.5).unwrap();
        let bytes = encode(&gaussian(&spec, &[0.0, 0.0], 1.0)).unwrap();
        assert_eq!(bytes.len(), 16 + 64 * 16);
        assert_eq!(&bytes[..4], b"MOYA");
        assert_eq!(bytes[4], 1);
        assert_eq!(bytes[5], 2);
        assert_eq!(u16::from_le_bytes([bytes[6], bytes[7]]), 8);
        assert_eq!(f32::from_le_bytes(bytes[8..12].try_into().unwrap()), 3.0);
        assert_eq!(&bytes[12..16], &[0, 0, 0, 0]);
    }

    #[test]
    fn round_trip_is_exact() {
        let spec = GridSpec::new(2, 16, 8.0f64.sqrt(), 0.5).unwrap();
        let f = gaussian(&spec, &[0.1, 0.0], 1.0).scale(Complex64::new(0.3, -1.0));
        let g = decode(&encode(&f).unwrap(), Some(&spec)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn mismatches_are_format_errors() {
        let spec = GridSpec::new(2, 8, 3.0, 0.5).unwrap();
        let mut bytes = encode(&GridFunction::constant(&spec, Complex64::new(1.0, 0.0))).unwrap();
        let other = GridSpec::new(2, 16, 3.0, 0.5).unwrap();
        assert!(matches!(decode(&bytes, Some(&other)), Err(Error::Format(_))));
        bytes.pop();
        assert!(matches!(decode(&bytes, Some(&spec)), Err(Error::Format(_))));
        bytes[0] = b'X';
        assert!(matches!(decode(&bytes, None), Err(Error::Format(_))));
    }
}
