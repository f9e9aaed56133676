use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CellCode, RasterGrid};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Pgm,
    Svg,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pgm" => Ok(Format::Pgm),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown raster format {other:?}")),
        }
    }
}

fn fill(code: CellCode) -> &'static str {
    match code {
        CellCode::EssentialBand => "#000000",
        CellCode::FilledPositiveWinding => "#4f6d9a",
        CellCode::EigenRegion => "#d98c3f",
        CellCode::Resolvent => "#ffffff",
        CellCode::IsolatedMark => "#c0392b",
        CellCode::Ambiguous => "#9b9b9b",
    }
}

pub fn render<T: Real>(grid: &RasterGrid<T>, format: Format) -> Vec<u8> {
    match format {
        Format::Pgm => pgm(grid),
        Format::Svg => svg(grid).into_bytes(),
        Format::Json => {
            let mut out = serde_json::to_vec(grid).expect("grid serializes");
            out.push(b'\n');
            out
        }
    }
}

fn pgm<T: Real>(grid: &RasterGrid<T>) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.width, grid.height).into_bytes();
    out.extend(grid.cells.iter().map(|c| c.gray()));
    out
}

fn svg<T: Real>(grid: &RasterGrid<T>) -> String {
    let (w, h) = (grid.width, grid.height);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#,
        fill(CellCode::Resolvent)
    );
    let _ = writeln!(out, r#"<g class="regions" shape-rendering="crispEdges">"#);
    for row in 0..h {
        let mut col = 0;
        while col < w {
            let code = grid.cell(col, row);
            let start = col;
            while col < w && grid.cell(col, row) == code {
                col += 1;
            }
            if matches!(
                code,
                CellCode::Resolvent | CellCode::EssentialBand | CellCode::IsolatedMark
            ) {
                continue;
            }
            let _ = writeln!(
                out,
                r#"<rect x="{start}" y="{row}" width="{}" height="1" fill="{}"/>"#,
                col - start,
                fill(code)
            );
        }
    }
    let _ = writeln!(out, "</g>");

    let (dx, dy) = grid.pixel_size();
    let to_px = |z: num_complex::Complex<T>| {
        (
            ((z.re - grid.bbox.re_min) / dx).to_f64_lossy(),
            ((grid.bbox.im_max - z.im) / dy).to_f64_lossy(),
        )
    };
    if !grid.curve.is_empty() {
        let mut pts = String::new();
        for z in grid.curve.iter().chain(grid.curve.first()) {
            let (x, y) = to_px(*z);
            let _ = write!(pts, "{x:.3},{y:.3} ");
        }
        let _ = writeln!(
            out,
            r#"<polyline class="essential" fill="none" stroke="{}" stroke-width="1" points="{}"/>"#,
            fill(CellCode::EssentialBand),
            pts.trim_end()
        );
    }
    let radius = (w.max(h) as f64 / 80.0).max(2.0);
    for row in 0..h {
        for col in 0..w {
            if grid.cell(col, row) == CellCode::IsolatedMark {
                let _ = writeln!(
                    out,
                    r#"<circle class="isolated" cx="{}" cy="{}" r="{radius:.2}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                    col as f64 + 0.5,
                    row as f64 + 0.5,
                    fill(CellCode::IsolatedMark)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use crate::polynomial::ComplexPoly;
    use crate::raster::Bbox;
    use crate::spectral::HarmonicSymbol;

    fn blank(w: usize, h: usize) -> RasterGrid<f64> {
        RasterGrid {
            bbox: Bbox::new(-1.0, 1.0, -1.0, 1.0).unwrap(),
            width: w,
            height: h,
            cells: vec![CellCode::Resolvent; w * h],
            symbol: HarmonicSymbol::new(ComplexPoly::zero()),
            tolerances: Tolerances::default(),
            n_max: 0,
            lambda: Vec::new(),
            curve: Vec::new(),
        }
    }

    #[test]
    fn pgm_header_and_body() {
        let bytes = render(&blank(2, 2), Format::Pgm);
        assert_eq!(&bytes[..11], b"P5\n2 2\n255\n");
        assert_eq!(&bytes[11..], &[255u8; 4]);
        let text = String::from_utf8_lossy(&bytes[..11]);
        assert_eq!(
            text.split_whitespace().collect::<Vec<_>>(),
            ["P5", "2", "2", "255"]
        );
    }

    #[test]
    fn one_marker() {
        let mut g = blank(5, 4);
        g.cells[7] = CellCode::IsolatedMark;
        let svg = String::from_utf8(render(&g, Format::Svg)).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn json_round_trip() {
        let mut g = blank(3, 2);
        g.cells[1] = CellCode::EigenRegion;
        g.cells[4] = CellCode::Ambiguous;
        g.curve = vec![num_complex::Complex::new(0.1, 0.2)];
        let a = render(&g, Format::Json);
        let back: RasterGrid<f64> = serde_json::from_slice(&a).unwrap();
        assert_eq!(back, g);
        assert_eq!(render(&back, Format::Json), a);
    }
}
