use crate::hash::{draw, stream_seed, to_unit};
use crate::FieldError;
use lattice_core::{LatticeCoord, Parallelogram};
use std::io::{Read, Write};

const MAGIC: &[u8; 4] = b"TAUF";
const VERSION: u32 = 1;

#[inline]
pub(crate) fn vertex_key(v: LatticeCoord) -> u64 {
    ((v.a as u32 as u64) << 32) | v.b as u32 as u64
}

/// Activation time of `v` in stream `(seed, stream)` without materialising a
/// field. Identical to the value a sampled [`TauField`] stores.
#[inline]
pub fn raw_tau(seed: u64, stream: u64, v: LatticeCoord) -> u64 {
    draw(stream_seed(seed, stream), vertex_key(v))
}

/// I.i.d. uniform activation times on a window.
///
/// Values are stored as raw 64-bit draws; [`TauField::tau`] maps them to
/// `(0, 1)`. Distinct vertices always get distinct raw values, so ordering by
/// raw value is strict. Where a caller only sees the 52-bit `f64` times and
/// they tie, the documented tie-break is lexicographic `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauField {
    window: Parallelogram,
    seed: u64,
    stream: u64,
    values: Vec<u64>,
}

pub fn sample_tau(window: Parallelogram, seed: u64, stream: u64) -> Result<TauField, FieldError> {
    if window.is_empty() {
        return Err(FieldError::EmptyWindow);
    }
    let s = stream_seed(seed, stream);
    let values = window.iter().map(|v| draw(s, vertex_key(v))).collect();
    Ok(TauField { window, seed, stream, values })
}

impl TauField {
    /// Field with explicit raw values in row-major window order.
    pub fn from_raw(window: Parallelogram, seed: u64, stream: u64, values: Vec<u64>) -> Result<Self, FieldError> {
        if window.is_empty() {
            return Err(FieldError::EmptyWindow);
        }
        if values.len() != window.len() {
            return Err(FieldError::CountMismatch { expected: window.len() as u64, found: values.len() as u64 });
        }
        Ok(TauField { window, seed, stream, values })
    }

    pub fn window(&self) -> Parallelogram {
        self.window
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn raw_values(&self) -> &[u64] {
        &self.values
    }

    #[inline]
    pub fn raw_at(&self, idx: usize) -> u64 {
        self.values[idx]
    }

    #[inline]
    pub fn tau_at(&self, idx: usize) -> f64 {
        to_unit(self.values[idx])
    }

    /// `τ_v`, or `None` outside the window.
    #[inline]
    pub fn tau(&self, v: LatticeCoord) -> Option<f64> {
        self.window.index_of(v).map(|i| self.tau_at(i))
    }

    /// Window indices sorted by increasing activation time.
    pub fn activation_order(&self) -> Vec<u32> {
        let mut keyed: Vec<(u64, u32)> = self.values.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        keyed.sort_unstable();
        // Sampled fields never repeat a raw value; explicit ones might, and
        // then equal times are ordered lexicographically by (a, b).
        let w = self.window;
        let mut i = 0;
        while i < keyed.len() {
            let mut j = i + 1;
            while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                j += 1;
            }
            if j - i > 1 {
                keyed[i..j].sort_by_key(|&(_, k)| w.coord_at(k as usize));
            }
            i = j;
        }
        keyed.into_iter().map(|(_, i)| i).collect()
    }

    /// Binary dump: `TAUF`, version, window bounds (4 × i32), seed, stream,
    /// count, then the raw values in row-major order. All little-endian.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<(), FieldError> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        for x in [self.window.a_lo, self.window.a_hi, self.window.b_lo, self.window.b_hi] {
            w.write_all(&x.to_le_bytes())?;
        }
        w.write_all(&self.seed.to_le_bytes())?;
        w.write_all(&self.stream.to_le_bytes())?;
        w.write_all(&(self.values.len() as u64).to_le_bytes())?;
        let mut buf = Vec::with_capacity(self.values.len() * 8);
        for x in &self.values {
            buf.extend_from_slice(&x.to_le_bytes());
        }
        w.write_all(&buf)?;
        Ok(())
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self, FieldError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(FieldError::BadMagic);
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(FieldError::UnsupportedVersion(version));
        }
        let mut b = [0i32; 4];
        for x in &mut b {
            *x = read_u32(&mut r)? as i32;
        }
        let window = Parallelogram::new(b[0], b[1], b[2], b[3]);
        let seed = read_u64(&mut r)?;
        let stream = read_u64(&mut r)?;
        let count = read_u64(&mut r)?;
        if window.is_empty() || count != window.len() as u64 {
            return Err(FieldError::CountMismatch { expected: window.len() as u64, found: count });
        }
        let mut bytes = vec![0u8; count as usize * 8];
        r.read_exact(&mut bytes)?;
        let values = bytes.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
        Ok(TauField { window, seed, stream, values })
    }
}

fn read_u32<R: Read>(r: &mut R) -> std::io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> std::io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}
