//! The `teapot` command line. Reports are `key=value` lines on stdout.

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::atlas::{
    rate_grid, render_slice_certified, render_slice_constructive, teapot_cloud, write_points_csv, Bounds, PixelMode,
};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::kneading::{itinerary_prefix, parse_decimal, right_limit_itinerary, GrowthRate};
use crate::membership::{certify_inside, Budget, Certificate, MembershipTester, Verdict};
use crate::parry::{parry_polynomial, IntPolynomial};
use crate::roots::{all_roots, leading_root, DEFAULT_TOLERANCE};
use crate::symbolic::Word;

/// Coefficients (constant term first) of the degree-14 polynomial whose
/// leading root lies below 1.82 and which has a root `z` with `-z̄` outside
/// the slice at 1.82.
pub const ASYMMETRY_WITNESS: [i64; 15] = [-1, 0, 1, 0, -1, 0, 1, -2, 3, -4, 3, -2, 1, -2, 1];

/// The conjugate of the witness used in the asymmetry check, to 16 digits.
pub const ASYMMETRY_POINT: (f64, f64) = (-0.5840341196392905, 0.4820600149798202);

#[derive(Debug, Parser)]
#[command(name = "teapot", version, about = "Tent-map itineraries, Parry polynomials and Master Teapot slices")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the itinerary of 1 under the tent map.
    Itinerary {
        /// Growth rate: a decimal in (1, 2] or `poly:c0,c1,...` (leading root).
        #[arg(long, value_parser = parse_lambda)]
        lambda: GrowthRate,
        #[arg(long)]
        length: usize,
        /// Print the limit from the right instead.
        #[arg(long)]
        right_limit: bool,
    },
    /// Print the Parry polynomial of a word with its roots.
    Parry {
        #[arg(long, value_parser = parse_word)]
        word: Word,
    },
    /// Certify a point against a slice.
    TestPoint {
        #[arg(long, value_parser = parse_lambda)]
        lambda: GrowthRate,
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        #[arg(long, default_value_t = 20)]
        max_depth: usize,
        #[arg(long, default_value_t = 200)]
        max_terms: usize,
    },
    /// Render a slice as a certified raster or as Parry roots.
    RenderSlice {
        #[arg(long, value_parser = parse_lambda)]
        lambda: GrowthRate,
        #[arg(long, value_enum, default_value_t = Mode::Certify)]
        mode: Mode,
        /// Pixels per side (certify mode).
        #[arg(long, default_value_t = 100)]
        resolution: usize,
        /// Word length bound of the inside test (certify mode).
        #[arg(long, default_value_t = 14)]
        depth: usize,
        /// Certify the disc around each pixel rather than its centre.
        #[arg(long)]
        whole_pixel: bool,
        /// Word length bound (constructive mode).
        #[arg(long, default_value_t = 12)]
        max_word_length: usize,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        re_min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        re_max: f64,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        im_min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        im_max: f64,
        /// Output file; rasters ending in `.pgm` are written as PGM, anything
        /// else as CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the teapot point cloud as `re,im,lambda` CSV.
    Teapot {
        #[arg(long, default_value_t = 100)]
        rates: usize,
        #[arg(long, default_value_t = 100)]
        degree: usize,
        #[arg(long, default_value = "1.01")]
        min: String,
        #[arg(long, default_value = "2.0")]
        max: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce the asymmetry of the slice at 1.82.
    AsymmetryCheck {
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Certify,
    Constructive,
}

fn parse_lambda(s: &str) -> std::result::Result<GrowthRate, String> {
    GrowthRate::parse(s).map_err(|e| e.to_string())
}

fn parse_word(s: &str) -> std::result::Result<Word, String> {
    s.parse::<Word>().map_err(|e| e.to_string())
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn lambda_lines<W: Write>(out: &mut W, lambda: &GrowthRate) -> Result<()> {
    writeln!(out, "lambda={}", lambda.value())?;
    if let Some(p) = lambda.defining_polynomial() {
        writeln!(out, "lambda_polynomial={p}")?;
    }
    Ok(())
}

fn certificate_lines<W: Write>(out: &mut W, cert: &Certificate) -> Result<()> {
    writeln!(out, "verdict={}", cert.verdict)?;
    writeln!(out, "method={}", cert.method)?;
    writeln!(out, "depth={}", cert.depth)?;
    writeln!(out, "margin={:e}", cert.margin)?;
    writeln!(out, "reduction_exponent={}", cert.reduction_exponent)?;
    writeln!(out, "tested_re={}", cert.tested_point.re)?;
    writeln!(out, "tested_im={}", cert.tested_point.im)?;
    match cert.precision_bits {
        Some(bits) => writeln!(out, "precision_bits={bits}")?,
        None => writeln!(out, "precision_bits=exact")?,
    }
    Ok(())
}

fn indices(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Runs a parsed command, writing the report to `out`.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    if let Some(threads) = cli.threads {
        exec::set_thread_limit(threads);
    }
    let execution = Execution::Parallel;
    match cli.command {
        Command::Itinerary { lambda, length, right_limit } => {
            lambda_lines(out, &lambda)?;
            if right_limit {
                let w = right_limit_itinerary(&lambda, length)?;
                writeln!(out, "right_limit={w}")?;
            } else {
                let it = itinerary_prefix(&lambda, length)?;
                writeln!(out, "prefix={}", it.letters)?;
                writeln!(out, "ambiguity={}", indices(&it.ambiguity_resolved_at))?;
            }
        }
        Command::Parry { word } => {
            let p = parry_polynomial(&word)?;
            writeln!(out, "word={word}")?;
            writeln!(out, "polynomial={p}")?;
            let coeffs: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
            writeln!(out, "coefficients={}", coeffs.join(","))?;
            match leading_root(&p)? {
                Some(r) => writeln!(out, "leading_root={r}")?,
                None => writeln!(out, "leading_root=none")?,
            }
            let set = all_roots(&p, DEFAULT_TOLERANCE)?;
            for ((z, res), clustered) in set.roots.iter().zip(&set.residuals).zip(&set.clustered) {
                writeln!(
                    out,
                    "root={},{} modulus={} residual={:e}{}",
                    z.re,
                    z.im,
                    z.norm(),
                    res,
                    if *clustered { " clustered" } else { "" }
                )?;
            }
        }
        Command::TestPoint { lambda, re, im, max_depth, max_terms } => {
            let budget = Budget { max_depth, max_terms, ..Budget::default() };
            let tester = MembershipTester::new(&lambda, budget)?.with_execution(execution);
            let cert = tester.test_point(Complex64::new(re, im))?;
            lambda_lines(out, &lambda)?;
            writeln!(out, "re={re}")?;
            writeln!(out, "im={im}")?;
            certificate_lines(out, &cert)?;
        }
        Command::RenderSlice {
            lambda,
            mode,
            resolution,
            depth,
            whole_pixel,
            max_word_length,
            re_min,
            re_max,
            im_min,
            im_max,
            out: path,
        } => {
            lambda_lines(out, &lambda)?;
            match mode {
                Mode::Certify => {
                    let bounds = Bounds { re_min, re_max, im_min, im_max };
                    let pixel = if whole_pixel { PixelMode::Whole } else { PixelMode::Center };
                    let raster = render_slice_certified(&lambda, bounds, resolution, depth, pixel, execution)?;
                    let mut file = create(&path)?;
                    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")) {
                        raster.write_pgm(&mut file)?;
                    } else {
                        raster.write_csv(&mut file)?;
                    }
                    file.flush()?;
                    writeln!(out, "pixels={}", raster.cells.len())?;
                    writeln!(out, "certified_out={}", raster.count(Verdict::CertifiedOut))?;
                    writeln!(out, "inconclusive={}", raster.count(Verdict::Inconclusive))?;
                    writeln!(out, "unit_circle={}", raster.count(Verdict::Member))?;
                    writeln!(out, "errors={}", raster.errors)?;
                }
                Mode::Constructive => {
                    let slice = render_slice_constructive(&lambda, max_word_length, execution)?;
                    let mut file = create(&path)?;
                    write_points_csv(&slice.points, &lambda, &mut file)?;
                    file.flush()?;
                    writeln!(out, "points={}", slice.points.len())?;
                    writeln!(out, "words={}", slice.words)?;
                    writeln!(out, "skipped={}", slice.skipped)?;
                }
            }
            writeln!(out, "out={}", path.display())?;
        }
        Command::Teapot { rates, degree, min, max, out: path } => {
            let rates_list = rate_grid(&parse_decimal(&min)?, &parse_decimal(&max)?, rates)?;
            let cloud = teapot_cloud(&rates_list, degree, execution)?;
            let mut file = create(&path)?;
            cloud.write_csv(&mut file)?;
            file.flush()?;
            writeln!(out, "rates={}", cloud.rate_count)?;
            writeln!(out, "degree={}", cloud.degree)?;
            writeln!(out, "points={}", cloud.points.len())?;
            writeln!(out, "skipped={}", cloud.skipped)?;
            writeln!(out, "out={}", path.display())?;
        }
        Command::AsymmetryCheck { depth } => asymmetry_check(depth, out)?,
    }
    Ok(())
}

fn stage<W: Write>(out: &mut W, name: &str, pass: bool, detail: String) -> Result<bool> {
    writeln!(out, "{} {name}: {detail}", if pass { "PASS" } else { "FAIL" })?;
    Ok(pass)
}

/// Checks the witness, then certifies `-z` out of the slice at 1.82 while
/// `z` itself is not.
fn asymmetry_check<W: Write>(depth: usize, out: &mut W) -> Result<()> {
    let p = IntPolynomial::new(ASYMMETRY_WITNESS.to_vec());
    let lambda = GrowthRate::from_decimal("1.82")?;
    let mut ok = true;

    let lead = leading_root(&p)?.unwrap_or(f64::NAN);
    ok &= stage(out, "leading-root", (lead - 1.8149185987640513).abs() < 1e-9, format!("leading_root={lead}"))?;

    let rate = GrowthRate::leading_root_of(&p)?;
    let below = rate.cmp_exact(&lambda)? == Ordering::Less;
    ok &= stage(out, "below-1.82", below, format!("exact comparison with 91/50: {below}"))?;

    let target = Complex64::new(ASYMMETRY_POINT.0, ASYMMETRY_POINT.1);
    let set = all_roots(&p, DEFAULT_TOLERANCE)?;
    let z = *set
        .roots
        .iter()
        .min_by(|a, b| (*a - target).norm().total_cmp(&(*b - target).norm()))
        .ok_or_else(|| Error::Domain("witness has no roots".into()))?;
    ok &= stage(out, "conjugate", (z - target).norm() < 1e-6, format!("z={},{}", z.re, z.im))?;

    let member = certify_inside(z, &lambda, depth)?;
    ok &= stage(
        out,
        "member-not-certified",
        member.verdict != Verdict::CertifiedOut,
        format!("z verdict={} depth={}", member.verdict, member.depth),
    )?;

    let mirror = certify_inside(-z, &lambda, depth)?;
    ok &= stage(
        out,
        "negation-certified-out",
        mirror.verdict == Verdict::CertifiedOut,
        format!("-z verdict={} depth={} margin={:e}", mirror.verdict, mirror.depth, mirror.margin),
    )?;

    writeln!(out, "result={}", if ok { "PASS" } else { "FAIL" })?;
    if ok {
        Ok(())
    } else {
        Err(Error::Domain("asymmetry check failed".into()))
    }
}
