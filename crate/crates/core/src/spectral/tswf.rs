//! TSWF: a minimal little-endian container for one field.
//!
//! Layout: `b"TSWF"`, `u32` version (1), `u32` dimension, `u32` points per axis,
//! `f64` torus length, `u8` representation (0 physical, 1 frequency), then the
//! samples as interleaved `f64` real/imaginary pairs in row-major order.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::field::{Field, Representation};
use super::grid::GridSpec;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"TSWF";
const VERSION: u32 = 1;

pub fn write_field(mut w: impl Write, field: &Field) -> Result<()> {
    let g = field.grid();
    let mut header = Vec::with_capacity(25);
    header.extend_from_slice(MAGIC);
    header.extend_from_slice(&VERSION.to_le_bytes());
    header.extend_from_slice(&g.dim().to_le_bytes());
    header.extend_from_slice(&(g.points() as u32).to_le_bytes());
    header.extend_from_slice(&g.length().to_le_bytes());
    header.push(match field.representation() {
        Representation::Physical => 0,
        Representation::Frequency => 1,
    });
    w.write_all(&header)?;
    let mut body = Vec::with_capacity(field.samples().len() * 16);
    for v in field.samples() {
        body.extend_from_slice(&v.re.to_le_bytes());
        body.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&body)?;
    Ok(())
}

pub fn read_field(mut r: impl Read) -> Result<Field> {
    let mut header = [0u8; 25];
    r.read_exact(&mut header).map_err(|e| Error::Format(format!("truncated header: {e}")))?;
    if &header[0..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let u32_at = |i: usize| u32::from_le_bytes(header[i..i + 4].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let dim = u32_at(8);
    let points = u32_at(12) as usize;
    let length = f64::from_le_bytes(header[16..24].try_into().unwrap());
    let repr = match header[24] {
        0 => Representation::Physical,
        1 => Representation::Frequency,
        other => return Err(Error::Format(format!("unknown representation flag {other}"))),
    };
    let grid = GridSpec::new(dim, points, length)?;
    let mut body = vec![0u8; grid.total_points() * 16];
    r.read_exact(&mut body).map_err(|e| Error::Format(format!("truncated samples: {e}")))?;
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(Error::Format("trailing bytes after samples".into()));
    }
    let data = body
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    Field::new(grid, repr, data)
}
