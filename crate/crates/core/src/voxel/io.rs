//! Serialisations of [`VoxelSet`]: run-length binary, CSV grid indices and
//! OBJ hexahedron meshes.

use std::collections::HashMap;
use std::io::{self, Write};

use super::{Packing, VoxelSet};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"FCVX";
const VERSION: u8 = 1;

/// Binary layout (little endian):
///
/// ```text
/// "FCVX" | version u8 | base u32 | depth u8 | cells u64 | runs u64
/// runs × (gap varint, length varint)
/// ```
///
/// A run covers consecutive packed addresses; `gap` is measured from the end
/// of the previous run (from 0 for the first). Varints are LEB128.
pub fn encode_binary(v: &VoxelSet) -> Vec<u8> {
    let mut runs: Vec<(u64, u64)> = Vec::new();
    for &c in v.codes() {
        match runs.last_mut() {
            Some((start, len)) if *start + *len == c => *len += 1,
            _ => runs.push((c, 1)),
        }
    }

    let mut out = Vec::with_capacity(26 + runs.len() * 4);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&v.base().to_le_bytes());
    out.push(v.depth() as u8);
    out.extend_from_slice(&(v.len() as u64).to_le_bytes());
    out.extend_from_slice(&(runs.len() as u64).to_le_bytes());
    let mut end = 0u64;
    for (start, len) in runs {
        put_varint(&mut out, start - end);
        put_varint(&mut out, len);
        end = start + len;
    }
    out
}

pub fn decode_binary(bytes: &[u8]) -> Result<VoxelSet> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.to_string(),
    };
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4).ok_or_else(|| bad("truncated header"))? != MAGIC {
        return Err(bad("not a voxel file"));
    }
    let version = r.take(1).ok_or_else(|| bad("truncated header"))?[0];
    if version != VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let base = u32::from_le_bytes(r.array().ok_or_else(|| bad("truncated header"))?);
    let depth = r.take(1).ok_or_else(|| bad("truncated header"))?[0] as u32;
    let count = u64::from_le_bytes(r.array().ok_or_else(|| bad("truncated header"))?);
    let nruns = u64::from_le_bytes(r.array().ok_or_else(|| bad("truncated header"))?);

    let pack = Packing::new(base)?;
    pack.check_depth(depth)?;
    let limit = if depth == 0 {
        1
    } else {
        1u128 << (pack.bits * depth).min(64)
    };

    let mut cells = Vec::with_capacity(count.min(1 << 24) as usize);
    let mut end = 0u64;
    for _ in 0..nruns {
        let gap = r.varint().ok_or_else(|| bad("truncated run"))?;
        let len = r.varint().ok_or_else(|| bad("truncated run"))?;
        let start = end.checked_add(gap).ok_or_else(|| bad("run overflow"))?;
        let stop = start.checked_add(len).ok_or_else(|| bad("run overflow"))?;
        if len == 0 || (stop as u128) > limit || (gap == 0 && end > 0) {
            return Err(bad("malformed run"));
        }
        cells.extend(start..stop);
        end = stop;
    }
    if cells.len() as u64 != count {
        return Err(bad("cell count does not match runs"));
    }
    let v = VoxelSet { base, depth, cells };
    // every code must be a valid address, not just fit in the bit budget
    let per_level = (base as u64).pow(3);
    if v.codes()
        .iter()
        .any(|&c| (1..=depth).any(|l| pack.digit_code(c, depth, l) >= per_level))
    {
        return Err(bad("invalid digit code"));
    }
    Ok(v)
}

/// One `k,x_idx,y_idx,z_idx` row per cell, in depth-`k` grid indices.
pub fn write_csv<W: Write>(v: &VoxelSet, mut w: W) -> io::Result<()> {
    writeln!(w, "k,x_idx,y_idx,z_idx")?;
    let k = v.depth();
    for [x, y, z] in v.grid_cells() {
        writeln!(w, "{k},{x},{y},{z}")?;
    }
    Ok(())
}

/// One hexahedron (six quads) per cell in unit-cube coordinates. With `weld`,
/// coincident vertices of neighbouring cells are shared.
pub fn write_obj<W: Write>(v: &VoxelSet, weld: bool, mut w: W) -> io::Result<()> {
    const CORNERS: [[u64; 3]; 8] = [
        [0, 0, 0],
        [1, 0, 0],
        [1, 1, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 0, 1],
        [1, 1, 1],
        [0, 1, 1],
    ];
    // outward-facing quads over the corner numbering above
    const FACES: [[usize; 4]; 6] = [
        [0, 3, 2, 1],
        [4, 5, 6, 7],
        [0, 1, 5, 4],
        [2, 3, 7, 6],
        [0, 4, 7, 3],
        [1, 2, 6, 5],
    ];

    let scale = 1.0 / v.extent() as f64;
    writeln!(
        w,
        "# fractalcube voxel mesh: base {} depth {} cells {}",
        v.base(),
        v.depth(),
        v.len()
    )?;

    let mut welded: HashMap<[u64; 3], usize> = HashMap::new();
    let mut next = 1usize;
    let mut faces = Vec::with_capacity(v.len() * 6);
    for g in v.grid_cells() {
        let mut idx = [0usize; 8];
        for (slot, c) in idx.iter_mut().zip(CORNERS) {
            let p = [g[0] + c[0], g[1] + c[1], g[2] + c[2]];
            let fresh = |w: &mut W, next: &mut usize| -> io::Result<usize> {
                writeln!(
                    w,
                    "v {} {} {}",
                    p[0] as f64 * scale,
                    p[1] as f64 * scale,
                    p[2] as f64 * scale
                )?;
                *next += 1;
                Ok(*next - 1)
            };
            *slot = if weld {
                match welded.get(&p) {
                    Some(&i) => i,
                    None => {
                        let i = fresh(&mut w, &mut next)?;
                        welded.insert(p, i);
                        i
                    }
                }
            } else {
                fresh(&mut w, &mut next)?
            };
        }
        for f in FACES {
            faces.push([idx[f[0]], idx[f[1]], idx[f[2]], idx[f[3]]]);
        }
    }
    for [a, b, c, d] in faces {
        writeln!(w, "f {a} {b} {c} {d}")?;
    }
    Ok(())
}

fn put_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.bytes.get(self.pos..self.pos + n)?;
        self.pos += n;
        Some(s)
    }

    fn array<const N: usize>(&mut self) -> Option<[u8; N]> {
        self.take(N)?.try_into().ok()
    }

    fn varint(&mut self) -> Option<u64> {
        let mut v = 0u64;
        for shift in (0..64).step_by(7) {
            let b = self.take(1)?[0];
            v |= ((b & 0x7f) as u64) << shift;
            if b & 0x80 == 0 {
                return Some(v);
            }
        }
        None
    }
}
