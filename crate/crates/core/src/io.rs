//! File formats: CSV for signals/images/coefficients/sinograms, binary PGM
//! for images, and the versioned `ridgenet-v1` network text format.
//!
//! Floats are written with Rust's shortest round-trip formatting, so output
//! is byte-deterministic and parses back exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::activations::ActivationSpec;
use crate::error::{Error, Result};
use crate::grids::{Grid1D, RidgeletCoefficients, SampledImage, SampledSignal};
use crate::radon::Sinogram;
use crate::ridgelet::NetworkDescription;

pub fn write_signal_csv(path: &Path, signal: &SampledSignal) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,value")?;
    for (i, v) in signal.values.iter().enumerate() {
        writeln!(w, "{},{}", signal.grid.point(i), v)?;
    }
    Ok(())
}

pub fn read_signal_csv(path: &Path) -> Result<SampledSignal> {
    let reader = BufReader::new(File::open(path)?);
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (ln, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if ln == 0 || line.is_empty() {
            continue; // header
        }
        let mut parts = line.split(',');
        let x: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad csv line {}", ln + 1)))?;
        let v: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad csv line {}", ln + 1)))?;
        xs.push(x);
        vs.push(v);
    }
    if xs.len() < 2 {
        return Err(Error::Parse("signal csv needs at least 2 samples".into()));
    }
    let step = xs[1] - xs[0];
    for w in xs.windows(2) {
        if ((w[1] - w[0]) - step).abs() > 1e-9 * step.abs().max(1.0) {
            return Err(Error::Parse("signal csv grid is not uniform".into()));
        }
    }
    SampledSignal::new(Grid1D::new(xs[0], step, xs.len())?, vs)
}

pub fn write_image_csv(path: &Path, image: &SampledImage) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,y,value")?;
    for iy in 0..image.grid_y.count {
        let y = image.grid_y.point(iy);
        for ix in 0..image.grid_x.count {
            writeln!(w, "{},{},{}", image.grid_x.point(ix), y, image.get(ix, iy))?;
        }
    }
    Ok(())
}

fn write_pgm_raw(path: &Path, width: usize, height: usize, values: &[f64]) -> Result<()> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
    }
    let span = max - min;
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "P5\n{width} {height}\n255\n")?;
    let mut bytes = Vec::with_capacity(values.len());
    for &v in values {
        let g = if span > 0.0 { (v - min) / span } else { 0.0 };
        bytes.push((g * 255.0).round().clamp(0.0, 255.0) as u8);
    }
    w.write_all(&bytes)?;
    Ok(())
}

/// 8-bit binary PGM, min-max normalized per file; rows run from low y to
/// high y.
pub fn write_image_pgm(path: &Path, image: &SampledImage) -> Result<()> {
    write_pgm_raw(path, image.grid_x.count, image.grid_y.count, &image.values)
}

pub fn write_sinogram_csv(path: &Path, s: &Sinogram) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "theta,p,value")?;
    for ia in 0..s.angles.count {
        let theta = s.angles.point(ia);
        for ip in 0..s.offsets.count {
            writeln!(w, "{},{},{}", theta, s.offsets.point(ip), s.get(ia, ip))?;
        }
    }
    Ok(())
}

/// Sinogram as a PGM (angles down, offsets across) for visual inspection.
pub fn write_sinogram_pgm(path: &Path, s: &Sinogram) -> Result<()> {
    write_pgm_raw(path, s.offsets.count, s.angles.count, &s.values)
}

/// Coefficients as CSV: `a,b,re,im` (m = 1) or `a1,a2,b,re,im` (m = 2),
/// lexicographic over the a-axes then b.
pub fn write_coefficients_csv(path: &Path, t: &RidgeletCoefficients) -> Result<()> {
    let grid = &t.param_grid;
    let mut w = BufWriter::new(File::create(path)?);
    match grid.dimension() {
        1 => {
            writeln!(w, "a,b,re,im")?;
            let mut i = 0;
            for ia in 0..grid.a_axes[0].count {
                let a = grid.a_axes[0].point(ia);
                for ib in 0..grid.b_axis.count {
                    let v = t.values[i];
                    writeln!(w, "{},{},{},{}", a, grid.b_axis.point(ib), v.re, v.im)?;
                    i += 1;
                }
            }
        }
        2 => {
            writeln!(w, "a1,a2,b,re,im")?;
            let mut i = 0;
            for ia1 in 0..grid.a_axes[0].count {
                let a1 = grid.a_axes[0].point(ia1);
                for ia2 in 0..grid.a_axes[1].count {
                    let a2 = grid.a_axes[1].point(ia2);
                    for ib in 0..grid.b_axis.count {
                        let v = t.values[i];
                        writeln!(
                            w,
                            "{},{},{},{},{}",
                            a1,
                            a2,
                            grid.b_axis.point(ib),
                            v.re,
                            v.im
                        )?;
                        i += 1;
                    }
                }
            }
        }
        d => return Err(Error::invalid(format!("unsupported dimension {d}"))),
    }
    Ok(())
}

/// Versioned network format: header
/// `ridgenet-v1 m=<m> eta=<name> K=<re>,<im>`, then one unit per line,
/// `a_1 ... a_m b c_re c_im`.
pub fn write_network(path: &Path, net: &NetworkDescription) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        "ridgenet-v1 m={} eta={} K={},{}",
        net.m,
        net.eta.name(),
        net.k.re,
        net.k.im
    )?;
    for j in 0..net.unit_count() {
        let (a, b, c) = net.unit(j);
        for ai in a {
            write!(w, "{} ", ai)?;
        }
        writeln!(w, "{} {} {}", b, c.re, c.im)?;
    }
    Ok(())
}

pub fn read_network(path: &Path) -> Result<NetworkDescription> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty network file".into()))??;
    let mut m: Option<usize> = None;
    let mut eta: Option<ActivationSpec> = None;
    let mut k: Option<Complex64> = None;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("ridgenet-v1") {
        return Err(Error::Parse("not a ridgenet-v1 file".into()));
    }
    for field in fields {
        if let Some(v) = field.strip_prefix("m=") {
            m = v.parse().ok();
        } else if let Some(v) = field.strip_prefix("eta=") {
            eta = Some(ActivationSpec::parse(v, 1.0)?);
        } else if let Some(v) = field.strip_prefix("K=") {
            let (re, im) = v
                .split_once(',')
                .ok_or_else(|| Error::Parse("bad K field".into()))?;
            k = Some(Complex64::new(
                re.parse().map_err(|_| Error::Parse("bad K".into()))?,
                im.parse().map_err(|_| Error::Parse("bad K".into()))?,
            ));
        }
    }
    let m = m.ok_or_else(|| Error::Parse("missing m= in header".into()))?;
    let eta = eta.ok_or_else(|| Error::Parse("missing eta= in header".into()))?;
    let k = k.ok_or_else(|| Error::Parse("missing K= in header".into()))?;

    let mut net = NetworkDescription::new(m, eta, k);
    for (ln, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let nums: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(|s| s.parse::<f64>()).collect();
        let nums = nums.map_err(|_| Error::Parse(format!("bad unit on line {}", ln + 2)))?;
        if nums.len() != m + 3 {
            return Err(Error::Parse(format!(
                "unit line {} has {} fields, expected {}",
                ln + 2,
                nums.len(),
                m + 3
            )));
        }
        net.push_unit(
            &nums[..m],
            nums[m],
            Complex64::new(nums[m + 1], nums[m + 2]),
        );
    }
    net.validate()?;
    Ok(net)
}
