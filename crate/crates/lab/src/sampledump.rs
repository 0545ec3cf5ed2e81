//! Binary dump of a coupled sample so a single trial can be replayed later.
//!
//! Layout, all little-endian:
//!
//! | offset | size | field                                   |
//! |--------|------|-----------------------------------------|
//! | 0      | 8    | magic `b"MSFCPL01"`                     |
//! | 8      | 8    | `n` (u64)                               |
//! | 16     | 8    | `epsilon` (f64)                         |
//! | 24     | 8    | `p_horizon` (f64)                       |
//! | 32     | 8    | `seed` (u64)                            |
//! | 40     | 1    | lambda present flag (u8, 0 or 1)        |
//! | 41     | 8    | `lambda` (f64, zero when absent)        |
//! | 49     | 8    | triple count (u64)                      |
//! | 57     | 25k  | triples, sorted by pair                 |
//!
//! Each triple is `u` (u32), `v` (u32), `w` (f64), `b` (u8), `w_prime` (f64).

use std::io::Write;
use std::path::Path;

use mstlab_core::sample::{CoupledSample, EdgeWeightTriple, NoiseParameters};

use crate::LabError;

const MAGIC: &[u8; 8] = b"MSFCPL01";
const TRIPLE_BYTES: usize = 25;

pub fn write_sample(path: &Path, sample: &CoupledSample) -> Result<(), LabError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut buf = Vec::with_capacity(57 + TRIPLE_BYTES * sample.triples.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(sample.params.n as u64).to_le_bytes());
    buf.extend_from_slice(&sample.params.epsilon.to_le_bytes());
    buf.extend_from_slice(&sample.params.p_horizon.to_le_bytes());
    buf.extend_from_slice(&sample.seed.to_le_bytes());
    buf.push(sample.params.lambda.is_some() as u8);
    buf.extend_from_slice(&sample.params.lambda.unwrap_or(0.0).to_le_bytes());
    buf.extend_from_slice(&(sample.triples.len() as u64).to_le_bytes());
    for t in &sample.triples {
        buf.extend_from_slice(&t.u.to_le_bytes());
        buf.extend_from_slice(&t.v.to_le_bytes());
        buf.extend_from_slice(&t.w.to_le_bytes());
        buf.push(t.b as u8);
        buf.extend_from_slice(&t.w_prime.to_le_bytes());
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&buf)?;
    Ok(())
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], LabError> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.data.len());
        let Some(end) = end else {
            return Err(LabError::Parse("sample dump truncated".into()));
        };
        let slice = &self.data[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u64(&mut self) -> Result<u64, LabError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, LabError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, LabError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u8(&mut self) -> Result<u8, LabError> {
        Ok(self.take(1)?[0])
    }
}

pub fn read_sample(path: &Path) -> Result<CoupledSample, LabError> {
    let data = std::fs::read(path)?;
    let mut cur = Cursor {
        data: &data,
        pos: 0,
    };
    if cur.take(8)? != MAGIC {
        return Err(LabError::Parse(format!(
            "{}: not a sample dump (bad magic)",
            path.display()
        )));
    }
    let n = cur.u64()? as usize;
    let epsilon = cur.f64()?;
    let p_horizon = cur.f64()?;
    let seed = cur.u64()?;
    let lambda = match cur.u8()? {
        0 => {
            cur.f64()?;
            None
        }
        1 => Some(cur.f64()?),
        other => {
            return Err(LabError::Parse(format!(
                "{}: bad lambda flag {other}",
                path.display()
            )))
        }
    };
    let count = cur.u64()? as usize;
    let mut triples = Vec::with_capacity(count);
    for _ in 0..count {
        let u = cur.u32()?;
        let v = cur.u32()?;
        let w = cur.f64()?;
        let b = match cur.u8()? {
            0 => false,
            1 => true,
            other => {
                return Err(LabError::Parse(format!(
                    "{}: bad flip flag {other}",
                    path.display()
                )))
            }
        };
        let w_prime = cur.f64()?;
        triples.push(EdgeWeightTriple {
            u,
            v,
            w,
            b,
            w_prime,
        });
    }
    if cur.pos != data.len() {
        return Err(LabError::Parse(format!(
            "{}: trailing bytes after triples",
            path.display()
        )));
    }
    Ok(CoupledSample {
        params: NoiseParameters {
            n,
            epsilon,
            lambda,
            p_horizon,
        },
        triples,
        seed,
    })
}
