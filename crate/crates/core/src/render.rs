//! Raster plots of nim-value periods as binary PPM (P6) images.
//!
//! Each band is one member of the additive family, one pixel column per heap
//! starting at x = 1, colored by nim-value. Bands are padded to the widest
//! period with the background color. Rows keep a fixed pixel-per-position
//! scale; there is no per-row rescaling to a common width.

use std::io::{self, Write};

use thiserror::Error;

use crate::additive::AdditiveParams;
use crate::nim::{Convention, GrundySequence, Nimber};

/// Nim-value colors: purple (0), blue (1), green (2), yellow (3).
pub const PALETTE: [[u8; 3]; 4] = [[100, 40, 140], [40, 80, 220], [40, 170, 80], [240, 200, 40]];

/// Fill for columns beyond a band's period.
pub const BACKGROUND: [u8; 3] = [255, 255, 255];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// One band per k in 1..m, i.e. δ = m + k.
    PerK,
    /// One band per layer n in 0..layers with δ = d + 2mn, for a fixed
    /// residue d.
    PerDeltaClass { d: usize, layers: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterRow {
    pub label: String,
    pub values: Vec<Nimber>,
}

/// Labeled value rows padded (at render time) to a common width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimberRaster {
    pub rows: Vec<RasterRow>,
    pub width: usize,
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("per-k mode needs m >= 2")]
    NeedsBands,
    #[error("per-delta-class residue must satisfy 1 <= d < 2m")]
    BadResidue,
    #[error("layers and scale must be at least 1")]
    BadSize,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Compute one band per family member, each exactly one formula period of
/// sink nim-values long.
pub fn family_raster(m: usize, mode: RenderMode) -> Result<NimberRaster, RenderError> {
    let deltas: Vec<(String, usize)> = match mode {
        RenderMode::PerK => {
            if m < 2 {
                return Err(RenderError::NeedsBands);
            }
            (1..m).map(|k| (format!("k={k}"), m + k)).collect()
        }
        RenderMode::PerDeltaClass { d, layers } => {
            if d < 1 || d >= 2 * m {
                return Err(RenderError::BadResidue);
            }
            if layers < 1 {
                return Err(RenderError::BadSize);
            }
            (0..layers)
                .map(|n| {
                    let delta = d + 2 * m * n;
                    (format!("delta={delta}"), delta)
                })
                .collect()
        }
    };
    let rows: Vec<RasterRow> = deltas
        .into_iter()
        .map(|(label, delta)| {
            let params = AdditiveParams::new(m, delta);
            let seq = GrundySequence::compute(&params.set(), Convention::Sink, params.period());
            RasterRow {
                label,
                values: seq.values().to_vec(),
            }
        })
        .collect();
    let width = rows.iter().map(|r| r.values.len()).max().unwrap_or(0);
    Ok(NimberRaster { rows, width })
}

/// Encode as binary PPM, each band `scale` pixel rows tall.
pub fn encode_ppm(raster: &NimberRaster, scale: usize) -> Vec<u8> {
    assert!(scale >= 1 && raster.width >= 1 && !raster.rows.is_empty());
    let height = raster.rows.len() * scale;
    let mut out = format!("P6\n{} {}\n255\n", raster.width, height).into_bytes();
    for row in &raster.rows {
        let mut band = Vec::with_capacity(raster.width * 3);
        for x in 0..raster.width {
            let rgb = match row.values.get(x) {
                Some(&v) => PALETTE[v as usize],
                None => BACKGROUND,
            };
            band.extend_from_slice(&rgb);
        }
        for _ in 0..scale {
            out.extend_from_slice(&band);
        }
    }
    out
}

/// Build the raster and write PPM bytes to `out`; returns the raster.
pub fn render_family<W: Write>(
    m: usize,
    mode: RenderMode,
    scale: usize,
    out: &mut W,
) -> Result<NimberRaster, RenderError> {
    if scale < 1 {
        return Err(RenderError::BadSize);
    }
    let raster = family_raster(m, mode)?;
    out.write_all(&encode_ppm(&raster, scale))?;
    Ok(raster)
}
