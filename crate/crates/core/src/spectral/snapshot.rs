//! BSFS binary snapshots.
//!
//! Layout (all little-endian): magic `BSFS`, `u32` format version, grid kind
//! byte (0 radial, 1 periodic), `u64` n, `f64` extent, space byte
//! (0 physical, 1 Fourier), then interleaved `f64` pairs `(re, im)` in storage
//! order.

use std::io::{Read, Write};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::field::{Space, SpectralField};
use crate::spectral::grid::{Grid, GridKind, GridSpec};

pub const MAGIC: &[u8; 4] = b"BSFS";
pub const FORMAT_VERSION: u32 = 1;

pub fn write_snapshot<W: Write>(mut out: W, field: &SpectralField) -> Result<()> {
    let spec = field.grid().spec();
    out.write_all(MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&[match spec.kind {
        GridKind::Radial3D => 0u8,
        GridKind::Periodic3D => 1u8,
    }])?;
    out.write_all(&(spec.n as u64).to_le_bytes())?;
    out.write_all(&spec.extent.to_le_bytes())?;
    out.write_all(&[match field.space() {
        Space::Physical => 0u8,
        Space::Fourier => 1u8,
    }])?;
    let mut buf = Vec::with_capacity(16 * field.len());
    for v in field.data() {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

/// Real per-mode array (e.g. an accumulated phase) written as a Fourier
/// snapshot with zero imaginary parts.
pub fn write_real_snapshot<W: Write>(out: W, grid: &Arc<Grid>, values: &[f64]) -> Result<()> {
    let data = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let field = SpectralField::new(Arc::clone(grid), data, Space::Fourier)?;
    write_snapshot(out, &field)
}

pub fn read_snapshot<R: Read>(mut input: R) -> Result<SpectralField> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let mut b4 = [0u8; 4];
    input.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let mut b1 = [0u8; 1];
    input.read_exact(&mut b1)?;
    let kind = match b1[0] {
        0 => GridKind::Radial3D,
        1 => GridKind::Periodic3D,
        other => return Err(Error::Format(format!("unknown grid kind {other}"))),
    };
    let mut b8 = [0u8; 8];
    input.read_exact(&mut b8)?;
    let n = usize::try_from(u64::from_le_bytes(b8))
        .map_err(|_| Error::Format("n does not fit in usize".into()))?;
    input.read_exact(&mut b8)?;
    let extent = f64::from_le_bytes(b8);
    input.read_exact(&mut b1)?;
    let space = match b1[0] {
        0 => Space::Physical,
        1 => Space::Fourier,
        other => return Err(Error::Format(format!("unknown space tag {other}"))),
    };
    let spec = match kind {
        GridKind::Radial3D => GridSpec::radial(n, extent),
        GridKind::Periodic3D => GridSpec::periodic(n, extent),
    };
    let grid = Grid::new(spec)?;
    let mut raw = vec![0u8; 16 * grid.len()];
    input.read_exact(&mut raw)?;
    let data = raw
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect();
    let mut trailing = [0u8; 1];
    if input.read(&mut trailing)? != 0 {
        return Err(Error::Format("trailing bytes after data".into()));
    }
    SpectralField::new(grid, data, space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_layout_is_exact() {
        let grid = Grid::new(GridSpec::radial(16, 2.5)).unwrap();
        let mut f = SpectralField::zeros(grid, Space::Fourier);
        f.data_mut()[0] = Complex64::new(1.0, -2.0);
        let mut bytes = Vec::new();
        write_snapshot(&mut bytes, &f).unwrap();
        assert_eq!(&bytes[..4], b"BSFS");
        assert_eq!(&bytes[4..8], &1u32.to_le_bytes());
        assert_eq!(bytes[8], 0);
        assert_eq!(&bytes[9..17], &16u64.to_le_bytes());
        assert_eq!(&bytes[17..25], &2.5f64.to_le_bytes());
        assert_eq!(bytes[25], 1);
        assert_eq!(&bytes[26..34], &1.0f64.to_le_bytes());
        assert_eq!(&bytes[34..42], &(-2.0f64).to_le_bytes());
        assert_eq!(bytes.len(), 26 + 16 * 16);
    }

    #[test]
    fn rejects_corrupt_input() {
        assert!(read_snapshot(&b"BSFX\x01\x00\x00\x00"[..]).is_err());
        let grid = Grid::new(GridSpec::periodic(16, 3.0)).unwrap();
        let mut bytes = Vec::new();
        write_snapshot(&mut bytes, &SpectralField::zeros(grid, Space::Physical)).unwrap();
        assert!(read_snapshot(&bytes[..bytes.len() - 1]).is_err());
        bytes.push(0);
        assert!(read_snapshot(&bytes[..]).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_is_bit_exact(
            values in proptest::collection::vec((-1e300f64..1e300, -1e300f64..1e300), 32),
            extent in 1e-3f64..1e6,
            fourier in any::<bool>(),
        ) {
            let grid = Grid::new(GridSpec::radial(32, extent)).unwrap();
            let data = values.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
            let space = if fourier { Space::Fourier } else { Space::Physical };
            let f = SpectralField::new(grid, data, space).unwrap();
            let mut bytes = Vec::new();
            write_snapshot(&mut bytes, &f).unwrap();
            let g = read_snapshot(&bytes[..]).unwrap();
            prop_assert_eq!(g.space(), f.space());
            prop_assert_eq!(g.grid().spec(), f.grid().spec());
            prop_assert_eq!(g.data(), f.data());
        }
    }
}
