//! Pixel classification of a rectangle of the λ-plane.

mod render;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Config, Tolerances};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{
    classify_point, enumerate_lambda, HarmonicSymbol, PointClass, REPORT_SCHEMA,
};

pub use render::{render, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CellCode {
    EssentialBand,
    FilledPositiveWinding,
    EigenRegion,
    Resolvent,
    IsolatedMark,
    Ambiguous,
}

impl CellCode {
    pub const ALL: [CellCode; 6] = [
        CellCode::EssentialBand,
        CellCode::FilledPositiveWinding,
        CellCode::EigenRegion,
        CellCode::Resolvent,
        CellCode::IsolatedMark,
        CellCode::Ambiguous,
    ];

    /// PGM gray level: band 0, isolated 40, filled 96, eigen region 150,
    /// ambiguous 200, resolvent 255.
    pub fn gray(self) -> u8 {
        match self {
            CellCode::EssentialBand => 0,
            CellCode::IsolatedMark => 40,
            CellCode::FilledPositiveWinding => 96,
            CellCode::EigenRegion => 150,
            CellCode::Ambiguous => 200,
            CellCode::Resolvent => 255,
        }
    }

    /// One-letter code used in the JSON rows.
    pub fn letter(self) -> char {
        match self {
            CellCode::EssentialBand => 'E',
            CellCode::FilledPositiveWinding => 'F',
            CellCode::EigenRegion => 'G',
            CellCode::Resolvent => 'R',
            CellCode::IsolatedMark => 'I',
            CellCode::Ambiguous => 'A',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|code| code.letter() == c)
    }

    fn from_class<T>(class: &PointClass<T>) -> Self {
        match class {
            PointClass::Essential => CellCode::EssentialBand,
            PointClass::Resolvent => CellCode::Resolvent,
            PointClass::FilledWinding { winding } if *winding > 0 => {
                CellCode::FilledPositiveWinding
            }
            PointClass::FilledWinding { .. } => CellCode::Ambiguous,
            PointClass::EigenRegionIndexPositive => CellCode::EigenRegion,
            // Pixel centres landing exactly on Λ are stamped separately.
            PointClass::IsolatedEigen { .. } => CellCode::Resolvent,
            PointClass::Ambiguous { .. } => CellCode::Ambiguous,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Bbox<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
}

impl<T: Real> Bbox<T> {
    pub fn new(re_min: T, re_max: T, im_min: T, im_max: T) -> Result<Self> {
        let b = Bbox {
            re_min,
            re_max,
            im_min,
            im_max,
        };
        let finite = [re_min, re_max, im_min, im_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::InvalidParams(format!(
                "degenerate bbox [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(b)
    }

    /// Curve bounding box inflated by 25%.
    pub fn around_curve(s: &HarmonicSymbol<T>, samples: usize) -> Self {
        let (a, b, c, d) = crate::spectral::default_bbox(s, samples);
        Bbox {
            re_min: a,
            re_max: b,
            im_min: c,
            im_max: d,
        }
    }
}

/// Classified pixels, row-major with row 0 at `im_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", into = "GridWire<T>", try_from = "GridWire<T>")]
pub struct RasterGrid<T: Real> {
    pub bbox: Bbox<T>,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<CellCode>,
    pub symbol: HarmonicSymbol<T>,
    pub tolerances: Tolerances<T>,
    pub n_max: usize,
    /// Certified Λ used for stamping.
    pub lambda: Vec<Complex<T>>,
    /// Essential-curve samples for vector output.
    pub curve: Vec<Complex<T>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
struct GridWire<T> {
    schema: String,
    kind: String,
    bbox: Bbox<T>,
    width: usize,
    height: usize,
    legend: Vec<(char, CellCode)>,
    rows: Vec<String>,
    symbol: HarmonicSymbol<T>,
    tolerances: Tolerances<T>,
    n_max: usize,
    #[serde(with = "crate::wire::pairs")]
    lambda: Vec<Complex<T>>,
    #[serde(with = "crate::wire::pairs")]
    curve: Vec<Complex<T>>,
}

impl<T: Real> From<RasterGrid<T>> for GridWire<T> {
    fn from(g: RasterGrid<T>) -> Self {
        let rows = g
            .cells
            .chunks(g.width.max(1))
            .map(|r| r.iter().map(|c| c.letter()).collect())
            .collect();
        GridWire {
            schema: REPORT_SCHEMA.into(),
            kind: "raster".into(),
            bbox: g.bbox,
            width: g.width,
            height: g.height,
            legend: CellCode::ALL.iter().map(|c| (c.letter(), *c)).collect(),
            rows,
            symbol: g.symbol,
            tolerances: g.tolerances,
            n_max: g.n_max,
            lambda: g.lambda,
            curve: g.curve,
        }
    }
}

impl<T: Real> TryFrom<GridWire<T>> for RasterGrid<T> {
    type Error = String;
    fn try_from(w: GridWire<T>) -> Result<Self, String> {
        if w.rows.len() != w.height {
            return Err(format!("expected {} rows, got {}", w.height, w.rows.len()));
        }
        let mut cells = Vec::with_capacity(w.width * w.height);
        for row in &w.rows {
            let before = cells.len();
            for ch in row.chars() {
                cells.push(
                    CellCode::from_letter(ch).ok_or_else(|| format!("unknown cell code {ch:?}"))?,
                );
            }
            if cells.len() - before != w.width {
                return Err(format!(
                    "row of length {} (width {})",
                    cells.len() - before,
                    w.width
                ));
            }
        }
        Ok(RasterGrid {
            bbox: w.bbox,
            width: w.width,
            height: w.height,
            cells,
            symbol: w.symbol,
            tolerances: w.tolerances,
            n_max: w.n_max,
            lambda: w.lambda,
            curve: w.curve,
        })
    }
}

impl<T: Real> RasterGrid<T> {
    pub fn cell(&self, col: usize, row: usize) -> CellCode {
        self.cells[row * self.width + col]
    }

    pub fn pixel_size(&self) -> (T, T) {
        (
            (self.bbox.re_max - self.bbox.re_min) / T::from_usize_lossy(self.width),
            (self.bbox.im_max - self.bbox.im_min) / T::from_usize_lossy(self.height),
        )
    }

    /// λ at the centre of a pixel.
    pub fn center(&self, col: usize, row: usize) -> Complex<T> {
        let (dx, dy) = self.pixel_size();
        let half = T::lit(0.5);
        Complex::new(
            self.bbox.re_min + dx * (T::from_usize_lossy(col) + half),
            self.bbox.im_max - dy * (T::from_usize_lossy(row) + half),
        )
    }

    /// Pixel containing λ, if inside the box.
    pub fn locate(&self, z: Complex<T>) -> Option<(usize, usize)> {
        let (dx, dy) = self.pixel_size();
        let c = ((z.re - self.bbox.re_min) / dx).floor();
        let r = ((self.bbox.im_max - z.im) / dy).floor();
        let (c, r) = (c.to_i64()?, r.to_i64()?);
        if c < 0 || r < 0 || c as usize >= self.width || r as usize >= self.height {
            return None;
        }
        Some((c as usize, r as usize))
    }

    pub fn counts(&self) -> Vec<(CellCode, usize)> {
        CellCode::ALL
            .iter()
            .map(|code| (*code, self.cells.iter().filter(|c| *c == code).count()))
            .collect()
    }
}

/// Classifies every pixel centre of a `width × height` grid and stamps
/// certified Λ points. `ESSENTIAL_BAND` marks centres within the boundary
/// band of the curve; vector output draws the curve itself.
pub fn rasterize<T: Real>(
    s: &HarmonicSymbol<T>,
    bbox: Option<Bbox<T>>,
    width: usize,
    height: usize,
    cfg: &Config<T>,
) -> Result<RasterGrid<T>> {
    if width == 0 || height == 0 || width > 4096 || height > 4096 {
        return Err(Error::InvalidParams(format!(
            "resolution {width}x{height} outside 1..=4096"
        )));
    }
    let bbox = match bbox {
        Some(b) => Bbox::new(b.re_min, b.re_max, b.im_min, b.im_max)?,
        None => Bbox::around_curve(s, cfg.essential_samples),
    };
    let lambda = enumerate_lambda(s, cfg)?.lambdas();
    let mut grid = RasterGrid {
        bbox,
        width,
        height,
        cells: Vec::new(),
        symbol: s.clone(),
        tolerances: cfg.tol,
        n_max: cfg.n_max,
        lambda,
        curve: s.essential_curve(cfg.essential_samples),
    };
    let rows: Vec<Vec<CellCode>> = (0..height)
        .into_par_iter()
        .map(|row| {
            (0..width)
                .map(|col| CellCode::from_class(&classify_point(s, grid.center(col, row), cfg)))
                .collect()
        })
        .collect();
    grid.cells = rows.into_iter().flatten().collect();

    for z in grid.lambda.clone() {
        if let Some((c, r)) = grid.locate(z) {
            grid.cells[r * width + c] = CellCode::IsolatedMark;
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_counterexample;
    use crate::polynomial::ComplexPoly;

    type C = Complex<f64>;

    fn square(r: f64) -> Option<Bbox<f64>> {
        Some(Bbox::new(-r, r, -r, r).unwrap())
    }

    #[test]
    fn conjugate_symbol_picture() {
        let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
        let g = rasterize(&s, square(2.0), 64, 64, &Config::default()).unwrap();
        let (dx, _) = g.pixel_size();
        let diag = dx * std::f64::consts::SQRT_2;
        for row in 0..64 {
            for col in 0..64 {
                let r = g.center(col, row).norm();
                let code = g.cell(col, row);
                if r < 1.0 - diag {
                    assert_eq!(code, CellCode::EigenRegion);
                } else if r > 1.0 + diag {
                    assert_eq!(code, CellCode::Resolvent);
                }
            }
        }
        assert_eq!(g.counts().iter().map(|(_, n)| n).sum::<usize>(), 64 * 64);
    }

    #[test]
    fn isolated_point_is_stamped() {
        let params = build_counterexample::<f64>(3, 1).unwrap();
        let s = params.symbol();
        let cfg = Config {
            n_max: 60,
            ..Config::default()
        };
        let g = rasterize(&s, square(0.5), 41, 41, &cfg).unwrap();
        let marks: Vec<_> = (0..41 * 41)
            .filter(|i| g.cells[*i] == CellCode::IsolatedMark)
            .collect();
        assert_eq!(marks, vec![20 * 41 + 20]);
        assert!(g.lambda.iter().any(|l| l.norm() < 1e-12));
    }

    #[test]
    fn conjugation_symmetry() {
        let s = HarmonicSymbol::new(ComplexPoly::from_reals(&[0.1, 0.0, 0.0, 0.6]));
        let g = rasterize(
            &s,
            square(2.0),
            33,
            33,
            &Config {
                n_max: 20,
                ..Config::default()
            },
        )
        .unwrap();
        for row in 0..33 {
            for col in 0..33 {
                let (a, b) = (g.cell(col, row), g.cell(col, 32 - row));
                if a != CellCode::EssentialBand && b != CellCode::EssentialBand {
                    assert_eq!(a, b, "({col},{row})");
                }
            }
        }
    }

    #[test]
    fn thread_count_independence() {
        let s = HarmonicSymbol::new(ComplexPoly::new(vec![
            C::new(0.2, 0.1),
            C::new(0.0, 0.0),
            C::new(0.5, -0.3),
            C::new(0.0, 0.4),
        ]));
        let cfg = Config {
            n_max: 20,
            ..Config::default()
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| rasterize(&s, None, 48, 40, &cfg).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one, four);
        assert_eq!(render(&one, Format::Json), render(&four, Format::Json));
    }

    #[test]
    fn refinement_is_stable_away_from_boundaries() {
        let params = build_counterexample::<f64>(3, 1).unwrap();
        let s = params.symbol();
        let cfg = Config {
            n_max: 40,
            ..Config::default()
        };
        let bbox = Bbox::around_curve(&s, 1024);
        let coarse = rasterize(&s, Some(bbox), 30, 30, &cfg).unwrap();
        let fine = rasterize(&s, Some(bbox), 60, 60, &cfg).unwrap();
        let (dx, dy) = coarse.pixel_size();
        let diag = (dx * dx + dy * dy).sqrt();
        let boundary = |z: C| {
            // Distance to the nearest coarse pixel centre of a different class.
            let me = coarse.locate(z).map(|(c, r)| coarse.cell(c, r));
            let mut best = f64::INFINITY;
            for r in 0..30 {
                for c in 0..30 {
                    if Some(coarse.cell(c, r)) != me {
                        best = best.min((coarse.center(c, r) - z).norm());
                    }
                }
            }
            best
        };
        for r in 0..30 {
            for c in 0..30 {
                let z = coarse.center(c, r);
                let code = coarse.cell(c, r);
                if code == CellCode::IsolatedMark || boundary(z) <= 2.0 * diag {
                    continue;
                }
                let d = crate::spectral::curve_distance(&s, z, 1e-3);
                if d <= 2.0 * diag {
                    continue;
                }
                for (fc, fr) in [(2 * c, 2 * r), (2 * c + 1, 2 * r + 1)] {
                    let f = fine.cell(fc, fr);
                    if f != CellCode::EssentialBand && f != CellCode::IsolatedMark {
                        assert_eq!(f, code, "coarse ({c},{r})");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
        assert!(rasterize(&s, None, 0, 10, &Config::default()).is_err());
        assert!(Bbox::new(1.0, 1.0, 0.0, 1.0).is_err());
    }
}
