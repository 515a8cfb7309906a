//! Binary PPM (P6) rasters. One pixel per grid cell, row 0 at the top
//! (largest `y`). Convert with e.g. `magick basin.ppm basin.png`.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::analysis::basin::immediate_basin;
use crate::analysis::classify::LabelKind;
use crate::grids::{BasinGrid, BifurcationGrid, GridSpec2D};
use crate::io::csv::{basin_label_text, MIRROR_WQA};
use crate::io::IoError;
use crate::map::State;
use crate::params::ModelParams;

pub type Rgb = [u8; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    pub fundamental_fp: Rgb,
    pub nonfundamental_basin: Rgb,
    pub fixed_point_overlay: Rgb,
    pub wqa_basin: Rgb,
    pub wqa_overlay: Rgb,
    pub mirror_wqa_basin: Rgb,
    pub divergent: Rgb,
    pub undecided: Rgb,
    pub outline: Rgb,
    pub background: Rgb,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            fundamental_fp: [0, 160, 0],
            nonfundamental_basin: [170, 210, 255],
            fixed_point_overlay: [0, 0, 255],
            wqa_basin: [255, 190, 190],
            wqa_overlay: [255, 0, 0],
            mirror_wqa_basin: [210, 180, 140],
            divergent: [128, 128, 128],
            undecided: [0, 0, 0],
            outline: [255, 220, 0],
            background: [255, 255, 255],
        }
    }
}

impl Palette {
    /// Cell colour for a label as written in the CSV tables.
    pub fn cell(&self, label: &str) -> Rgb {
        match label {
            "FundamentalFP" => self.fundamental_fp,
            "NonfundamentalFP" => self.nonfundamental_basin,
            "WQA" => self.wqa_basin,
            MIRROR_WQA => self.mirror_wqa_basin,
            "Divergent" => self.divergent,
            _ => self.undecided,
        }
    }

    pub fn kind(&self, kind: LabelKind) -> Rgb {
        self.cell(kind.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    /// Row-major, row 0 at the top.
    pub pixels: Vec<Rgb>,
}

impl Raster {
    pub fn filled(width: usize, height: usize, colour: Rgb) -> Self {
        Self { width, height, pixels: vec![colour; width * height] }
    }

    /// Sets the pixel of grid cell `(i, j)`, `j` counted from the bottom.
    pub fn set_cell(&mut self, i: usize, j: usize, colour: Rgb) {
        let row = self.height - 1 - j;
        self.pixels[row * self.width + i] = colour;
    }

    pub fn cell(&self, i: usize, j: usize) -> Rgb {
        self.pixels[(self.height - 1 - j) * self.width + i]
    }

    pub fn plot(&mut self, spec: &GridSpec2D, s: State, colour: Rgb) {
        if let Some((i, j)) = spec.locate(s) {
            self.set_cell(i, j, colour);
        }
    }

    /// Straight segment, sampled densely enough to leave no gaps.
    pub fn segment(&mut self, spec: &GridSpec2D, a: State, b: State, colour: Rgb) {
        let n = 2 * (spec.nx + spec.ny);
        for k in 0..=n {
            let t = k as f64 / n as f64;
            self.plot(spec, State::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)), colour);
        }
    }

    pub fn contains(&self, colour: Rgb) -> bool {
        self.pixels.contains(&colour)
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for p in &self.pixels {
            out.extend_from_slice(p);
        }
        out
    }

    pub fn write_ppm(&self, path: &Path) -> Result<(), IoError> {
        let mut f = File::create(path).map_err(|e| IoError::at(path, e))?;
        f.write_all(&self.to_ppm()).map_err(|e| IoError::at(path, e))
    }
}

/// Basin picture from cell labels (CSV text, row-major with `j` outer),
/// composited with the immediate-basin outline, the fixed segment, the
/// origin and the attractor overlay.
pub fn render_basin_labels<'a>(
    spec: &GridSpec2D,
    params: &ModelParams,
    labels: impl IntoIterator<Item = &'a str>,
    overlay: &[State],
    pal: &Palette,
) -> Raster {
    let mut img = Raster::filled(spec.nx, spec.ny, pal.undecided);
    for (k, label) in labels.into_iter().enumerate().take(spec.len()) {
        img.set_cell(k % spec.nx, k / spec.nx, pal.cell(label));
    }
    if let Ok(basin) = immediate_basin(params) {
        let v = basin.vertices;
        for e in 0..4 {
            img.segment(spec, v[e], v[(e + 1) % 4], pal.outline);
        }
    }
    let h = params.h;
    img.segment(spec, State::new(-h, -h), State::new(h, h), pal.fixed_point_overlay);
    img.plot(spec, State::ORIGIN, pal.fundamental_fp);
    for &s in overlay {
        img.plot(spec, s, pal.wqa_overlay);
    }
    img
}

pub fn render_basin(grid: &BasinGrid, pal: &Palette) -> Raster {
    let mirror = grid.mirror_flags();
    let labels = grid.cells.iter().zip(&mirror).map(|(l, &m)| basin_label_text(*l, m));
    render_basin_labels(&grid.spec, &grid.params, labels, &grid.overlay, pal)
}

/// `b` to the right, `c` upwards.
pub fn render_bifurcation(grid: &BifurcationGrid, pal: &Palette) -> Raster {
    let mut img = Raster::filled(grid.spec.nb, grid.spec.nc, pal.undecided);
    for j in 0..grid.spec.nc {
        for i in 0..grid.spec.nb {
            img.set_cell(i, j, pal.kind(grid.cell(i, j).kind()));
        }
    }
    img
}

/// Orbit points on a white background with the band edges `x = ±h` in grey.
pub fn render_orbit(spec: &GridSpec2D, h: f64, states: &[State], colour: Rgb, pal: &Palette) -> Raster {
    let mut img = Raster::filled(spec.nx, spec.ny, pal.background);
    for x in [-h, h] {
        img.segment(spec, State::new(x, spec.y_min), State::new(x, spec.y_max), pal.divergent);
    }
    for &s in states {
        img.plot(spec, s, colour);
    }
    img
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_size() {
        let img = Raster::filled(250, 250, [1, 2, 3]);
        let bytes = img.to_ppm();
        let header = b"P6\n250 250\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes.len() - header.len(), 187_500);
    }

    #[test]
    fn rows_are_flipped() {
        let mut img = Raster::filled(2, 3, [0, 0, 0]);
        img.set_cell(1, 0, [9, 9, 9]);
        assert_eq!(img.pixels[2 * 2 + 1], [9, 9, 9]);
        assert_eq!(img.cell(1, 0), [9, 9, 9]);
    }

    #[test]
    fn palette_bytes() {
        let p = Palette::default();
        assert_eq!(p.cell("WQA-"), [210, 180, 140]);
        assert_eq!(p.cell("PeriodicAnomaly"), [0, 0, 0]);
        assert_eq!(p.kind(LabelKind::Divergent), [128, 128, 128]);
    }
}
