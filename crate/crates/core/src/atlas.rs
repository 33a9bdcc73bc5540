//! Slices and point clouds of the teapot.
//!
//! Outputs are put in a canonical order (row-major pixels, sorted points)
//! before they are returned, so files are byte-identical whatever the
//! schedule.

use std::cmp::Ordering;
use std::io::Write;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::kneading::{itinerary_prefix, GrowthRate};
use crate::membership::{Budget, Certificate, MembershipTester, Method, Verdict};
use crate::parry::{h_series, parry_polynomial, IntPolynomial};
use crate::roots::{all_roots, DEFAULT_TOLERANCE};
use crate::symbolic::enumerate_admissible;

/// An axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Bounds {
    /// `[-1, 1] × [-1, 1]`.
    pub fn unit_square() -> Bounds {
        Bounds { re_min: -1.0, re_max: 1.0, im_min: -1.0, im_max: 1.0 }
    }

    fn validate(&self) -> Result<()> {
        let ok = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite())
            && self.re_min < self.re_max
            && self.im_min < self.im_max;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("empty or non-finite bounds {self:?}")))
        }
    }
}

/// Per-pixel certificates of a slice; row 0 is the top (largest `Im z`).
#[derive(Debug, Clone)]
pub struct SliceRaster {
    pub lambda: GrowthRate,
    pub bounds: Bounds,
    pub resolution: usize,
    pub depth: usize,
    pub mode: PixelMode,
    pub cells: Vec<Certificate>,
    /// Pixels whose test failed with an error; they are stored as
    /// inconclusive.
    pub errors: usize,
}

impl SliceRaster {
    pub fn pixel_size(&self) -> (f64, f64) {
        pixel_size(&self.bounds, self.resolution)
    }

    pub fn center(&self, row: usize, col: usize) -> Complex64 {
        center(&self.bounds, self.resolution, row, col)
    }

    pub fn cell(&self, row: usize, col: usize) -> &Certificate {
        &self.cells[row * self.resolution + col]
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.cells.iter().filter(|c| c.verdict == verdict).count()
    }

    /// Binary PGM: 0 certified out, 128 inconclusive, 255 unit circle.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.resolution, self.resolution)?;
        let bytes: Vec<u8> = self
            .cells
            .iter()
            .map(|c| match c.verdict {
                Verdict::CertifiedOut => 0,
                Verdict::Inconclusive => 128,
                Verdict::Member => 255,
            })
            .collect();
        out.write_all(&bytes)?;
        Ok(())
    }

    /// One line per pixel center: `re,im,lambda,verdict,depth,margin`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "re,im,lambda,verdict,depth,margin")?;
        let lambda = self.lambda.value();
        for row in 0..self.resolution {
            for col in 0..self.resolution {
                let z = self.center(row, col);
                let c = self.cell(row, col);
                writeln!(out, "{},{},{},{},{},{}", z.re, z.im, lambda, c.verdict, c.depth, c.margin)?;
            }
        }
        Ok(())
    }
}

fn pixel_size(bounds: &Bounds, resolution: usize) -> (f64, f64) {
    (
        (bounds.re_max - bounds.re_min) / resolution as f64,
        (bounds.im_max - bounds.im_min) / resolution as f64,
    )
}

fn center(bounds: &Bounds, resolution: usize, row: usize, col: usize) -> Complex64 {
    let (w, h) = pixel_size(bounds, resolution);
    Complex64::new(
        bounds.re_min + (col as f64 + 0.5) * w,
        bounds.im_max - (row as f64 + 0.5) * h,
    )
}

/// What a pixel verdict covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PixelMode {
    /// Only the pixel centre is tested.
    #[default]
    Center,
    /// The disc circumscribing the pixel is tested, so a certified-out
    /// pixel contains no point of the slice.
    Whole,
}

/// Tests every pixel. Pixels whose center is within half a pixel of the
/// unit circle are marked as circle points without testing.
pub fn render_slice_certified(
    lambda: &GrowthRate,
    bounds: Bounds,
    resolution: usize,
    depth: usize,
    mode: PixelMode,
    execution: Execution,
) -> Result<SliceRaster> {
    if resolution == 0 {
        return Err(Error::Domain("resolution must be at least 1".into()));
    }
    bounds.validate()?;
    let budget = Budget { max_depth: depth, ..Budget::default() };
    let tester = MembershipTester::new(lambda, budget)?;
    let (w, h) = pixel_size(&bounds, resolution);
    let half = w.max(h) / 2.0;
    let results = exec::map_range(execution, resolution * resolution, |i| {
        let z = center(&bounds, resolution, i / resolution, i % resolution);
        if (z.norm() - 1.0).abs() <= half {
            return Ok(Certificate {
                verdict: Verdict::Member,
                method: Method::UnitCircle,
                depth: 0,
                margin: 0.0,
                reduction_exponent: 0,
                tested_point: z,
                precision_bits: lambda.precision_bits(),
            });
        }
        match mode {
            PixelMode::Center => tester.test_point(z),
            PixelMode::Whole => tester.test_disk(z, w.hypot(h) / 2.0),
        }
        .map_err(|e| (z, e))
    });
    let mut errors = 0;
    let cells = results
        .into_iter()
        .map(|r| {
            r.unwrap_or_else(|(z, _)| {
                errors += 1;
                Certificate {
                    verdict: Verdict::Inconclusive,
                    method: if z.norm() > 1.0 { Method::OutsideSeries } else { Method::InsideEnumeration },
                    depth: 0,
                    margin: f64::NEG_INFINITY,
                    reduction_exponent: 0,
                    tested_point: z,
                    precision_bits: lambda.precision_bits(),
                }
            })
        })
        .collect();
    Ok(SliceRaster { lambda: lambda.clone(), bounds, resolution, depth, mode, cells, errors })
}

fn cmp_points(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Roots in the closed unit disk of Parry polynomials of admissible words.
#[derive(Debug, Clone)]
pub struct ConstructiveSlice {
    pub points: Vec<Complex64>,
    /// Words contributing points.
    pub words: usize,
    /// Words skipped because root finding failed.
    pub skipped: usize,
}

/// All roots of modulus at most 1 of `P_w` for admissible `w` with
/// `|w| ≤ max_word_length` whose leading root is below `λ`, sorted.
pub fn render_slice_constructive(
    lambda: &GrowthRate,
    max_word_length: usize,
    execution: Execution,
) -> Result<ConstructiveSlice> {
    if max_word_length < 2 {
        return Err(Error::Domain("max word length must be at least 2".into()));
    }
    let words = enumerate_admissible(max_word_length);
    let per_word = exec::map_slice(execution, &words, |w| -> Option<Result<Vec<Complex64>>> {
        let p = match parry_polynomial(w) {
            Ok(p) => p,
            Err(e) => return Some(Err(e)),
        };
        let below = match GrowthRate::leading_root_of(&p) {
            Ok(root) => root.cmp_exact(lambda),
            // no growth rate is realised by this word
            Err(Error::NoLeadingRoot(_)) => return None,
            Err(e) => Err(e),
        };
        match below {
            Ok(Ordering::Less) => {}
            Ok(_) => return None,
            Err(e) => return Some(Err(e)),
        }
        Some(all_roots(&p, DEFAULT_TOLERANCE).map(|set| {
            set.roots.into_iter().filter(|z| z.norm() <= 1.0 + 1e-9).collect()
        }))
    });
    let mut out = ConstructiveSlice { points: Vec::new(), words: 0, skipped: 0 };
    for r in per_word.into_iter().flatten() {
        match r {
            Ok(points) => {
                out.words += 1;
                out.points.extend(points);
            }
            Err(_) => out.skipped += 1,
        }
    }
    out.points.sort_by(cmp_points);
    Ok(out)
}

/// Pixels marked certified out whose square contains a point of `points`:
/// `(row, col, point)`.
pub fn conflicts(raster: &SliceRaster, points: &[Complex64]) -> Vec<(usize, usize, Complex64)> {
    let (w, h) = raster.pixel_size();
    let b = raster.bounds;
    let mut out = Vec::new();
    for &z in points {
        if z.re < b.re_min || z.re > b.re_max || z.im < b.im_min || z.im > b.im_max {
            continue;
        }
        // A point on a pixel edge belongs to both neighbours.
        let col_f = (z.re - b.re_min) / w - 0.5;
        let row_f = (b.im_max - z.im) / h - 0.5;
        let cols = (col_f.floor().max(0.0) as usize)..=(col_f.ceil().max(0.0) as usize).min(raster.resolution - 1);
        let rows = (row_f.floor().max(0.0) as usize)..=(row_f.ceil().max(0.0) as usize).min(raster.resolution - 1);
        for row in rows {
            for col in cols.clone() {
                let c = raster.center(row, col);
                if (z.re - c.re).abs() <= w / 2.0
                    && (z.im - c.im).abs() <= h / 2.0
                    && raster.cell(row, col).verdict == Verdict::CertifiedOut
                {
                    out.push((row, col, z));
                }
            }
        }
    }
    out
}

/// Points `(Re z, Im z, λ)` of the teapot outside the unit cylinder.
#[derive(Debug, Clone)]
pub struct TeapotCloud {
    pub points: Vec<(f64, f64, f64)>,
    pub rate_count: usize,
    pub degree: usize,
    /// Rates skipped because of an error.
    pub skipped: usize,
}

impl TeapotCloud {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "re,im,lambda")?;
        for (re, im, lambda) in &self.points {
            writeln!(out, "{re},{im},{lambda}")?;
        }
        Ok(())
    }
}

/// `count` rates evenly spaced over `[min, max]`, computed exactly.
pub fn rate_grid(min: &BigRational, max: &BigRational, count: usize) -> Result<Vec<GrowthRate>> {
    if count == 0 || min > max {
        return Err(Error::Domain("rate grid needs count ≥ 1 and min ≤ max".into()));
    }
    if count == 1 {
        return Ok(vec![GrowthRate::from_rational(min.clone())?]);
    }
    let step = (max - min) / BigRational::from_integer((count as i64 - 1).into());
    (0..count)
        .map(|i| GrowthRate::from_rational(min + &step * BigRational::from_integer((i as i64).into())))
        .collect()
}

/// For each rate, the roots `z = 1/u` of the degree-`degree` partial sum
/// of `H(It_λ, ·)` as a polynomial in `u = 1/z`, over `|u| < 1`.
pub fn teapot_cloud(rates: &[GrowthRate], degree: usize, execution: Execution) -> Result<TeapotCloud> {
    if rates.is_empty() || degree < 2 {
        return Err(Error::Domain("teapot cloud needs at least one rate and degree ≥ 2".into()));
    }
    let per_rate = exec::map_slice(execution, rates, |rate| -> Result<Vec<(f64, f64, f64)>> {
        let it = itinerary_prefix(rate, degree)?.letters;
        let partial = h_series(it.letters(), degree);
        let p = IntPolynomial::new(partial.coefficients);
        let set = all_roots(&p, DEFAULT_TOLERANCE)?;
        let mut zs: Vec<Complex64> = set.roots.into_iter().filter(|u| u.norm() < 1.0).map(|u| u.inv()).collect();
        zs.sort_by(cmp_points);
        Ok(zs.into_iter().map(|z| (z.re, z.im, rate.value())).collect())
    });
    let mut cloud = TeapotCloud { points: Vec::new(), rate_count: rates.len(), degree, skipped: 0 };
    for r in per_rate {
        match r {
            Ok(points) => cloud.points.extend(points),
            Err(_) => cloud.skipped += 1,
        }
    }
    Ok(cloud)
}

/// Writes a point list as `re,im,lambda`.
pub fn write_points_csv<W: Write>(points: &[Complex64], lambda: &GrowthRate, mut out: W) -> Result<()> {
    writeln!(out, "re,im,lambda")?;
    let l = lambda.value();
    for z in points {
        writeln!(out, "{},{},{}", z.re, z.im, l)?;
    }
    Ok(())
}
