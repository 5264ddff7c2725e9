//! Target-function generators: sine signal, Gaussian blobs, and the
//! Shepp-Logan head phantom.

use crate::error::{Error, Result};
use crate::grids::{Grid1D, SampledImage, SampledSignal};

/// An additive ellipse component of a phantom.
#[derive(Debug, Clone, Copy)]
pub struct Ellipse {
    pub center: (f64, f64),
    pub semi_axes: (f64, f64),
    /// Rotation in radians, counter-clockwise.
    pub rotation: f64,
    /// Added to every pixel inside the ellipse.
    pub intensity: f64,
}

impl Ellipse {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let dx = x - self.center.0;
        let dy = y - self.center.1;
        let (s, c) = self.rotation.sin_cos();
        let u = (c * dx + s * dy) / self.semi_axes.0;
        let v = (-s * dx + c * dy) / self.semi_axes.1;
        u * u + v * v <= 1.0
    }
}

/// The ten ellipses of the original Shepp-Logan phantom (1974 head section;
/// intensities 2, -0.98, -0.02, ..., not the contrast-enhanced variant).
pub fn shepp_logan_ellipses() -> Vec<Ellipse> {
    let deg = std::f64::consts::PI / 180.0;
    let e = |a: f64, b: f64, x0: f64, y0: f64, phi_deg: f64, intensity: f64| Ellipse {
        center: (x0, y0),
        semi_axes: (a, b),
        rotation: phi_deg * deg,
        intensity,
    };
    vec![
        e(0.69, 0.92, 0.0, 0.0, 0.0, 2.0),
        e(0.6624, 0.8740, 0.0, -0.0184, 0.0, -0.98),
        e(0.1100, 0.3100, 0.22, 0.0, -18.0, -0.02),
        e(0.1600, 0.4100, -0.22, 0.0, 18.0, -0.02),
        e(0.2100, 0.2500, 0.0, 0.35, 0.0, 0.01),
        e(0.0460, 0.0460, 0.0, 0.1, 0.0, 0.01),
        e(0.0460, 0.0460, 0.0, -0.1, 0.0, 0.01),
        e(0.0460, 0.0230, -0.08, -0.605, 0.0, 0.01),
        e(0.0230, 0.0230, 0.0, -0.605, 0.0, 0.01),
        e(0.0230, 0.0460, 0.06, -0.605, 0.0, 0.01),
    ]
}

/// Pixel-center grid for an n-pixel axis on [-1, 1].
pub fn pixel_grid(n: usize) -> Grid1D {
    Grid1D {
        start: -1.0 + 1.0 / n as f64,
        step: 2.0 / n as f64,
        count: n,
    }
}

/// n x n Shepp-Logan phantom on [-1, 1]^2, raw intensities (the center of
/// the head sums to 1.02; clamping to [0, 1] is left to output paths).
///
/// Pixels are supersampled on a sub-lattice chosen so the effective
/// sub-resolution is constant (2048) across n: block-averaging a
/// higher-resolution render then agrees with a direct lower-resolution one.
pub fn shepp_logan(n: usize) -> Result<SampledImage> {
    if n < 16 {
        return Err(Error::invalid(format!(
            "phantom size {n} too small (min 16)"
        )));
    }
    let ellipses = shepp_logan_ellipses();
    let ss = (2048 / n).clamp(1, 32);
    let grid = pixel_grid(n);
    let sub_pitch = grid.step / ss as f64;
    let mut values = vec![0.0; n * n];
    for iy in 0..n {
        let y0 = grid.point(iy) - grid.step / 2.0;
        for ix in 0..n {
            let x0 = grid.point(ix) - grid.step / 2.0;
            let mut acc = 0.0;
            for sy in 0..ss {
                let y = y0 + (sy as f64 + 0.5) * sub_pitch;
                for sx in 0..ss {
                    let x = x0 + (sx as f64 + 0.5) * sub_pitch;
                    for e in &ellipses {
                        if e.contains(x, y) {
                            acc += e.intensity;
                        }
                    }
                }
            }
            values[iy * n + ix] = acc / (ss * ss) as f64;
        }
    }
    SampledImage::new(grid.clone(), grid, values)
}

/// sin(2 pi x) on the given grid.
pub fn sine_signal(grid: Grid1D) -> SampledSignal {
    SampledSignal::from_fn(grid, |x| (2.0 * std::f64::consts::PI * x).sin())
}

/// Gaussian bump exp(-||x - c||^2 / (2 w^2)).
pub fn gaussian_blob(
    grid_x: Grid1D,
    grid_y: Grid1D,
    center: (f64, f64),
    width: f64,
) -> Result<SampledImage> {
    if !(width > 0.0) {
        return Err(Error::invalid("blob width must be positive"));
    }
    Ok(SampledImage::from_fn(grid_x, grid_y, |x, y| {
        let dx = x - center.0;
        let dy = y - center.1;
        (-(dx * dx + dy * dy) / (2.0 * width * width)).exp()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::linspace;

    #[test]
    fn sine_matches_reference_grid() {
        let grid = linspace(-1.0, 1.0, 0.01).unwrap();
        let f = sine_signal(grid);
        assert_eq!(f.values.len(), 201);
        assert!(f.values[100].abs() < 1e-12); // x = 0
        assert!((f.values[125] - 1.0).abs() < 1e-12); // x = 0.25
    }

    #[test]
    fn phantom_center_and_corner() {
        let img = shepp_logan(64).unwrap();
        // Independent scalar check: which ellipses contain the origin.
        let expected: f64 = shepp_logan_ellipses()
            .iter()
            .filter(|e| e.contains(0.0, 0.0))
            .map(|e| e.intensity)
            .sum();
        assert!((expected - 1.02).abs() < 1e-12);
        let c = img.get(32, 32);
        assert!((c - expected).abs() < 1e-12, "center {c} vs {expected}");
        assert_eq!(img.get(0, 0), 0.0);
        assert_eq!(img.get(63, 63), 0.0);
    }

    #[test]
    fn phantom_size_matches_request() {
        let img = shepp_logan(256).unwrap();
        assert_eq!(img.values.len(), 256 * 256);
        assert!(shepp_logan(8).is_err());
    }

    #[test]
    fn phantom_resolution_consistency() {
        // Block-averaging the 256 render 4x must match the 64 render: the
        // supersampling lattices are aligned, so this is exact up to
        // rounding.
        let hi = shepp_logan(256).unwrap();
        let lo = shepp_logan(64).unwrap();
        let mut down = vec![0.0; 64 * 64];
        for iy in 0..64 {
            for ix in 0..64 {
                let mut acc = 0.0;
                for sy in 0..4 {
                    for sx in 0..4 {
                        acc += hi.get(ix * 4 + sx, iy * 4 + sy);
                    }
                }
                down[iy * 64 + ix] = acc / 16.0;
            }
        }
        let down_img = SampledImage::new(lo.grid_x.clone(), lo.grid_y.clone(), down).unwrap();
        let err = crate::grids::relative_l2_error_image(&down_img, &lo).unwrap();
        assert!(err <= 0.02, "downsample mismatch {err}");
    }

    #[test]
    fn blob_values_and_mass() {
        let g = pixel_grid(128);
        let w = 0.15;
        let img = gaussian_blob(g.clone(), g, (0.0, 0.0), w).unwrap();
        assert!((img.get(64, 64) - 1.0).abs() < 1e-2); // near center pixel
                                                       // half max at distance w sqrt(2 ln 2)
        let r = w * (2.0 * 2.0f64.ln()).sqrt();
        let v = img
            .grid_x
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - r).abs().partial_cmp(&(b.1 - r).abs()).unwrap())
            .unwrap();
        let half = img.get(v.0, 64);
        assert!((half - 0.5).abs() < 0.05, "half-max {half}");
        let mass: f64 = img.values.iter().sum::<f64>() * img.cell_area();
        let expect = 2.0 * std::f64::consts::PI * w * w;
        assert!(
            (mass - expect).abs() <= 0.01 * expect,
            "mass {mass} vs {expect}"
        );
    }
}
