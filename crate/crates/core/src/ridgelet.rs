//! Forward ridgelet transform (direct sum and Fourier-slice paths), dual
//! transform / reconstruction, and backprop-free network synthesis.
//!
//! The pipeline is complex-valued throughout: for odd filter order m the
//! ridgelet `Lambda^m G^(l)` is purely imaginary in the real domain, and the
//! admissibility constant K is complex. The final reconstruction takes the
//! real part of the K-normalized sum.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::activations::ActivationSpec;
use crate::error::{Error, Result};
use crate::grids::{Grid1D, ParamGrid, RidgeletCoefficients, SampledImage, SampledSignal};
use crate::special::{gaussian, gaussian_derivative, hilbert_gaussian, SpectralMultiplier};

const SQRT_2PI: f64 = 2.506628274631000502415765284811;

/// A ridgelet of the form `Lambda^m G^(l)`: the backprojection filter of
/// order `m` applied to the l-th Gaussian derivative.
///
/// Closed forms: for even m this is `G^(m+l)`; for odd m it is the
/// (m+l)-th derivative of the Hilbert transform of the Gaussian, which is
/// purely imaginary on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RidgeletSpec {
    pub m: u32,
    pub base_order: u32,
}

impl RidgeletSpec {
    pub fn new(m: u32, base_order: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("ridgelet dimension m must be >= 1"));
        }
        Ok(RidgeletSpec { m, base_order })
    }

    /// Real-domain value.
    pub fn eval(&self, z: f64) -> Complex64 {
        let n = self.m + self.base_order;
        if self.m % 2 == 0 {
            Complex64::new(gaussian_derivative(n, z), 0.0)
        } else {
            hilbert_gaussian(n, z)
        }
    }

    /// Fourier transform `i^m |w|^m (iw)^l sqrt(2 pi) exp(-w^2/2)`.
    pub fn fourier(&self, w: f64) -> Complex64 {
        SpectralMultiplier::new(self.m).value(w)
            * Complex64::new(0.0, w).powu(self.base_order)
            * (SQRT_2PI * gaussian(w))
    }

    /// CLI name: `lg` for l = 0, `lg1`, `lg2`, ...
    pub fn name(&self) -> String {
        if self.base_order == 0 {
            "lg".into()
        } else {
            format!("lg{}", self.base_order)
        }
    }

    pub fn parse(name: &str, m: u32) -> Result<Self> {
        let rest = name
            .strip_prefix("lg")
            .ok_or_else(|| Error::Parse(format!("unknown ridgelet {name:?}")))?;
        let base_order = if rest.is_empty() {
            0
        } else {
            rest.parse()
                .map_err(|_| Error::Parse(format!("bad ridgelet order in {name:?}")))?
        };
        RidgeletSpec::new(m, base_order)
    }
}

/// Default small-slope cutoff: half of the a-axis step. Cells with
/// `||a|| < a_min` carry a 1/||a|| measure weight that blows up at the
/// lattice point a = 0, so they are skipped by the dual transform.
pub fn default_a_min(grid: &ParamGrid) -> f64 {
    0.5 * grid.a_axes[0].step
}

// ---------------------------------------------------------------------------
// Forward transforms
// ---------------------------------------------------------------------------

/// Direct-sum ridgelet transform of a 1-D signal:
/// `T(a,b) = sum_n f(x_n) conj(psi(a x_n - b)) |a| dx`.
pub fn forward_1d(
    f: &SampledSignal,
    psi: &RidgeletSpec,
    grid: &ParamGrid,
) -> Result<RidgeletCoefficients> {
    if psi.m != 1 || grid.dimension() != 1 {
        return Err(Error::invalid("forward_1d requires m = 1"));
    }
    let a_axis = &grid.a_axes[0];
    let b_axis = &grid.b_axis;
    let nb = b_axis.count;
    let dx = f.grid.step;

    let mut values = vec![Complex64::new(0.0, 0.0); a_axis.count * nb];
    values.par_chunks_mut(nb).enumerate().for_each(|(ia, row)| {
        let a = a_axis.point(ia);
        let weight = a.abs() * dx;
        for (ib, slot) in row.iter_mut().enumerate() {
            let b = b_axis.point(ib);
            let mut acc = Complex64::new(0.0, 0.0);
            for (n, &fv) in f.values.iter().enumerate() {
                let z = a * f.grid.point(n) - b;
                acc += fv * psi.eval(z).conj();
            }
            *slot = acc * weight;
        }
    });
    RidgeletCoefficients::new(grid.clone(), values)
}

/// Fourier-slice evaluation of the same transform:
/// `T(a,b) = (|a| / 2 pi) \int conj(psi^(w)) f^(a w) e^{iwb} dw`,
/// with the frequency integral realized on the DFT lattice of the b-axis.
pub fn forward_fourier_slice(
    f: &SampledSignal,
    psi: &RidgeletSpec,
    grid: &ParamGrid,
) -> Result<RidgeletCoefficients> {
    if psi.m != 1 || grid.dimension() != 1 {
        return Err(Error::invalid("forward_fourier_slice requires m = 1"));
    }
    let a_axis = &grid.a_axes[0];
    let b_axis = &grid.b_axis;
    let nb = b_axis.count;
    let nw = (4 * nb).next_power_of_two();
    let dw = 2.0 * std::f64::consts::PI / (nw as f64 * b_axis.step);
    let freqs = crate::special::dft_frequencies(nw, b_axis.step);
    // psi^ has Gaussian decay; beyond this band the integrand is below 1e-30.
    let w_cut = 14.0;

    let mut values = vec![Complex64::new(0.0, 0.0); a_axis.count * nb];
    values.par_chunks_mut(nb).enumerate().for_each(|(ia, row)| {
        let a = a_axis.point(ia);
        if a == 0.0 {
            return;
        }
        let mut spectrum = vec![Complex64::new(0.0, 0.0); nw];
        for (k, &w) in freqs.iter().enumerate() {
            if w.abs() > w_cut {
                continue;
            }
            // Riemann-sum transform of f at frequency a*w, phase-rotated
            // so the inverse DFT lands on b = b0 + j db.
            let xi = a * w;
            let mut fa = Complex64::new(0.0, 0.0);
            let rot = Complex64::from_polar(1.0, -xi * f.grid.step);
            let mut phase = Complex64::from_polar(1.0, -xi * f.grid.start);
            for &fv in &f.values {
                fa += fv * phase;
                phase *= rot;
            }
            fa *= f.grid.step;
            spectrum[k] = psi.fourier(w).conj() * fa * Complex64::from_polar(1.0, w * b_axis.start);
        }
        crate::special::fft_in_place(&mut spectrum, true);
        let scale = a.abs() * dw * nw as f64 / (2.0 * std::f64::consts::PI);
        for (ib, slot) in row.iter_mut().enumerate() {
            *slot = spectrum[ib] * scale;
        }
    });
    RidgeletCoefficients::new(grid.clone(), values)
}

/// Walk the b-lattice around the point nearest to `s`, handing the callback
/// `(index, z, exp(-z^2/2))` with `z = (s - b_j) / eps`. The Gaussian factors
/// are built by anchored running products (two exp calls per sweep instead of
/// one per lattice point); relative error stays within a few ulps per step.
fn for_each_gaussian_weight(
    s: f64,
    eps: f64,
    b_axis: &Grid1D,
    mut cb: impl FnMut(usize, f64, f64),
) {
    let nb = b_axis.count;
    let inv = 1.0 / eps;
    let jf = ((s - b_axis.start) / b_axis.step).round();
    let j_star = (jf.max(0.0) as usize).min(nb - 1);
    let z_star = (s - b_axis.point(j_star)) * inv;
    let dz = b_axis.step * inv;
    if z_star.abs() > 37.0 {
        return; // every lattice weight underflows
    }
    let a0 = (-0.5 * z_star * z_star).exp();
    if z_star.abs() * dz > 690.0 {
        // Extreme scale ratio: neighbors of the anchor are already dead.
        cb(j_star, z_star, a0);
        return;
    }
    let bfac = (z_star * dz).exp();
    let cr = (-0.5 * dz * dz).exp();
    let cr2 = cr * cr;

    // Upward sweep: j = j*, j*+1, ...; p_k = exp(-(z* - k dz)^2 / 2).
    let mut p = a0;
    let mut edge = bfac * cr;
    let mut z = z_star;
    let mut j = j_star;
    loop {
        cb(j, z, p);
        j += 1;
        if j >= nb {
            break;
        }
        p *= edge;
        edge *= cr2;
        z -= dz;
        if p < 1e-300 {
            break;
        }
    }
    // Downward sweep: j = j*-1, j*-2, ...
    if j_star > 0 {
        let mut p = a0;
        let mut edge = cr / bfac;
        let mut z = z_star;
        let mut j = j_star;
        while j > 0 {
            j -= 1;
            p *= edge;
            edge *= cr2;
            z += dz;
            if p < 1e-300 {
                break;
            }
            cb(j, z, p);
        }
    }
}

/// Hermite polynomial factor of `G^(n)`: `G^(n)(z) = (-1)^n He_n(z) G(z)`.
#[inline]
fn hermite_factor(n: u32, z: f64) -> f64 {
    let mut prev = 1.0;
    let mut cur = z;
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let next = z * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    if n % 2 == 0 {
        cur
    } else {
        -cur
    }
}

/// Direct-sum ridgelet transform of an image:
/// `T(a,b) = sum_px f(x) conj(psi(a.x - b)) ||a|| dx^2`,
/// parallel over slope rows. For even m the ridgelet is a real Gaussian
/// derivative, so the b-sweep reuses anchored Gaussian weights.
pub fn forward_2d(
    f: &SampledImage,
    psi: &RidgeletSpec,
    grid: &ParamGrid,
) -> Result<RidgeletCoefficients> {
    if psi.m != 2 || grid.dimension() != 2 {
        return Err(Error::invalid("forward_2d requires m = 2"));
    }
    let a1_axis = &grid.a_axes[0];
    let a2_axis = &grid.a_axes[1];
    let b_axis = &grid.b_axis;
    let (na2, nb) = (a2_axis.count, b_axis.count);
    let order = psi.m + psi.base_order;
    let area = f.cell_area();

    let mut values = vec![Complex64::new(0.0, 0.0); a1_axis.count * na2 * nb];
    values
        .par_chunks_mut(na2 * nb)
        .enumerate()
        .for_each(|(ia1, plane)| {
            let a1 = a1_axis.point(ia1);
            let mut row = vec![0.0f64; nb];
            for ia2 in 0..na2 {
                let a2 = a2_axis.point(ia2);
                row.fill(0.0);
                for iy in 0..f.grid_y.count {
                    let y = f.grid_y.point(iy);
                    let sy = a2 * y;
                    for ix in 0..f.grid_x.count {
                        let fv = f.values[iy * f.grid_x.count + ix];
                        if fv == 0.0 {
                            continue;
                        }
                        let s = a1 * f.grid_x.point(ix) + sy;
                        for_each_gaussian_weight(s, 1.0, b_axis, |ib, z, g| {
                            row[ib] += fv * hermite_factor(order, z) * g;
                        });
                    }
                }
                let norm_a = (a1 * a1 + a2 * a2).sqrt();
                let weight = norm_a * area;
                for (ib, &v) in row.iter().enumerate() {
                    plane[ia2 * nb + ib] = Complex64::new(v * weight, 0.0);
                }
            }
        });
    RidgeletCoefficients::new(grid.clone(), values)
}

// ---------------------------------------------------------------------------
// Networks, dual transform, synthesis
// ---------------------------------------------------------------------------

/// A finite one-hidden-layer network `g(x) = Re[(1/K) sum_j c_j eta(a_j . x - b_j)]`.
///
/// Units are stored structure-of-arrays in the lexicographic order of the
/// parameter lattice they were synthesized from; evaluation accumulates them
/// in that order, so it reproduces the dual transform bit for bit.
#[derive(Debug, Clone)]
pub struct NetworkDescription {
    pub m: usize,
    a_flat: Vec<f64>,
    b: Vec<f64>,
    c: Vec<Complex64>,
    pub eta: ActivationSpec,
    pub k: Complex64,
}

impl NetworkDescription {
    pub fn new(m: usize, eta: ActivationSpec, k: Complex64) -> Self {
        NetworkDescription {
            m,
            a_flat: Vec::new(),
            b: Vec::new(),
            c: Vec::new(),
            eta,
            k,
        }
    }

    pub fn push_unit(&mut self, a: &[f64], b: f64, c: Complex64) {
        debug_assert_eq!(a.len(), self.m);
        self.a_flat.extend_from_slice(a);
        self.b.push(b);
        self.c.push(c);
    }

    pub fn unit_count(&self) -> usize {
        self.b.len()
    }

    pub fn unit(&self, j: usize) -> (&[f64], f64, Complex64) {
        (
            &self.a_flat[j * self.m..(j + 1) * self.m],
            self.b[j],
            self.c[j],
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.is_empty() {
            return Err(Error::invalid("network has no units"));
        }
        let finite = self
            .a_flat
            .iter()
            .chain(self.b.iter())
            .all(|v| v.is_finite())
            && self.c.iter().all(|c| c.re.is_finite() && c.im.is_finite())
            && self.k.re.is_finite()
            && self.k.im.is_finite();
        if !finite {
            return Err(Error::invalid("network contains non-finite parameters"));
        }
        Ok(())
    }

    /// Evaluate on a 1-D grid; also returns the relative imaginary residue
    /// `||Im|| / ||Re||` that the real-part extraction discards.
    pub fn evaluate_1d_with_residual(&self, points: &Grid1D) -> Result<(SampledSignal, f64)> {
        if self.m != 1 {
            return Err(Error::invalid("network dimension is not 1"));
        }
        let eta = self.eta;
        let cutoff = eta.support_radius().unwrap_or(f64::INFINITY);
        let sums: Vec<Complex64> = (0..points.count)
            .into_par_iter()
            .map(|i| {
                let x = points.point(i);
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.b.len() {
                    let z = self.a_flat[j] * x - self.b[j];
                    if z.abs() > cutoff {
                        continue;
                    }
                    acc += self.c[j] * eta.eval(z);
                }
                acc / self.k
            })
            .collect();
        let (signal, residual) = split_real(sums, points.clone())?;
        Ok((signal, residual))
    }

    pub fn evaluate_1d(&self, points: &Grid1D) -> Result<SampledSignal> {
        Ok(self.evaluate_1d_with_residual(points)?.0)
    }

    /// Evaluate at arbitrary points (m = 1), same unit order as the grid
    /// evaluations.
    pub fn evaluate_points_1d(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if self.m != 1 {
            return Err(Error::invalid("network dimension is not 1"));
        }
        let eta = self.eta;
        let cutoff = eta.support_radius().unwrap_or(f64::INFINITY);
        Ok(xs
            .par_iter()
            .map(|&x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.b.len() {
                    let z = self.a_flat[j] * x - self.b[j];
                    if z.abs() > cutoff {
                        continue;
                    }
                    acc += self.c[j] * eta.eval(z);
                }
                (acc / self.k).re
            })
            .collect())
    }

    /// Evaluate on an image grid (m = 2).
    pub fn evaluate_2d_with_residual(
        &self,
        grid_x: &Grid1D,
        grid_y: &Grid1D,
    ) -> Result<(SampledImage, f64)> {
        if self.m != 2 {
            return Err(Error::invalid("network dimension is not 2"));
        }
        let eta = self.eta;
        let cutoff = eta.support_radius().unwrap_or(f64::INFINITY);
        let nx = grid_x.count;
        let mut sums = vec![Complex64::new(0.0, 0.0); nx * grid_y.count];
        sums.par_chunks_mut(nx).enumerate().for_each(|(iy, row)| {
            let y = grid_y.point(iy);
            for (ix, slot) in row.iter_mut().enumerate() {
                let x = grid_x.point(ix);
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.b.len() {
                    let z = self.a_flat[2 * j] * x + self.a_flat[2 * j + 1] * y - self.b[j];
                    if z.abs() > cutoff {
                        continue;
                    }
                    acc += self.c[j] * eta.eval(z);
                }
                *slot = acc / self.k;
            }
        });
        let re: Vec<f64> = sums.iter().map(|v| v.re).collect();
        let residual = imag_residual(&sums);
        Ok((
            SampledImage::new(grid_x.clone(), grid_y.clone(), re)?,
            residual,
        ))
    }

    pub fn evaluate_2d(&self, grid_x: &Grid1D, grid_y: &Grid1D) -> Result<SampledImage> {
        Ok(self.evaluate_2d_with_residual(grid_x, grid_y)?.0)
    }
}

fn imag_residual(sums: &[Complex64]) -> f64 {
    let im2 = crate::pairwise_sum(sums.iter().map(|v| v.im * v.im));
    let re2 = crate::pairwise_sum(sums.iter().map(|v| v.re * v.re));
    if re2 == 0.0 {
        if im2 == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (im2 / re2).sqrt()
    }
}

fn split_real(sums: Vec<Complex64>, grid: Grid1D) -> Result<(SampledSignal, f64)> {
    let residual = imag_residual(&sums);
    let re: Vec<f64> = sums.iter().map(|v| v.re).collect();
    Ok((SampledSignal::new(grid, re)?, residual))
}

/// Turn a coefficient field into network units: one unit per lattice cell
/// with `||a|| >= a_min`, output weight `c = T(a,b) da db / ||a||`.
pub fn network_from_coefficients(
    t: &RidgeletCoefficients,
    eta: ActivationSpec,
    k: Complex64,
    a_min: f64,
) -> Result<NetworkDescription> {
    let grid = &t.param_grid;
    let measure = grid.cell_measure();
    let m = grid.dimension();
    let mut net = NetworkDescription::new(m, eta, k);
    match m {
        1 => {
            let a_axis = &grid.a_axes[0];
            let b_axis = &grid.b_axis;
            for ia in 0..a_axis.count {
                let a = a_axis.point(ia);
                if a.abs() < a_min {
                    continue;
                }
                let w = measure / a.abs();
                for ib in 0..b_axis.count {
                    let c = t.values[ia * b_axis.count + ib] * w;
                    net.push_unit(&[a], b_axis.point(ib), c);
                }
            }
        }
        2 => {
            let a1_axis = &grid.a_axes[0];
            let a2_axis = &grid.a_axes[1];
            let b_axis = &grid.b_axis;
            let nb = b_axis.count;
            for ia1 in 0..a1_axis.count {
                let a1 = a1_axis.point(ia1);
                for ia2 in 0..a2_axis.count {
                    let a2 = a2_axis.point(ia2);
                    let norm_a = (a1 * a1 + a2 * a2).sqrt();
                    if norm_a < a_min {
                        continue;
                    }
                    let w = measure / norm_a;
                    let base = (ia1 * a2_axis.count + ia2) * nb;
                    for ib in 0..nb {
                        let c = t.values[base + ib] * w;
                        net.push_unit(&[a1, a2], b_axis.point(ib), c);
                    }
                }
            }
        }
        d => return Err(Error::invalid(format!("unsupported dimension {d}"))),
    }
    Ok(net)
}

/// Dual ridgelet transform of a 1-D coefficient field:
/// `g(x) = Re[(1/K) sum T(a,b) eta(a x - b) da db / |a|]`.
pub fn dual_transform_1d_with_residual(
    t: &RidgeletCoefficients,
    eta: ActivationSpec,
    k: Complex64,
    eval_grid: &Grid1D,
    a_min: f64,
) -> Result<(SampledSignal, f64)> {
    if k.norm() == 0.0 {
        return Err(Error::invalid("K = 0: pair is not admissible"));
    }
    let net = network_from_coefficients(t, eta, k, a_min)?;
    net.evaluate_1d_with_residual(eval_grid)
}

pub fn dual_transform_1d(
    t: &RidgeletCoefficients,
    eta: ActivationSpec,
    k: Complex64,
    eval_grid: &Grid1D,
    a_min: f64,
) -> Result<SampledSignal> {
    Ok(dual_transform_1d_with_residual(t, eta, k, eval_grid, a_min)?.0)
}

/// Image counterpart of [`dual_transform_1d`].
pub fn dual_transform_2d_with_residual(
    t: &RidgeletCoefficients,
    eta: ActivationSpec,
    k: Complex64,
    grid_x: &Grid1D,
    grid_y: &Grid1D,
    a_min: f64,
) -> Result<(SampledImage, f64)> {
    if k.norm() == 0.0 {
        return Err(Error::invalid("K = 0: pair is not admissible"));
    }
    let net = network_from_coefficients(t, eta, k, a_min)?;
    net.evaluate_2d_with_residual(grid_x, grid_y)
}

pub fn dual_transform_2d(
    t: &RidgeletCoefficients,
    eta: ActivationSpec,
    k: Complex64,
    grid_x: &Grid1D,
    grid_y: &Grid1D,
    a_min: f64,
) -> Result<SampledImage> {
    Ok(dual_transform_2d_with_residual(t, eta, k, grid_x, grid_y, a_min)?.0)
}

/// Synthesize a network approximating a 1-D signal, without any gradient
/// step: sample the ridgelet transform on the lattice and weight each cell
/// by the dual measure.
/// Band-limited normalization for a synthesized network: the admissibility
/// integral over the frequencies the slope box can pair with the target's
/// spectral content. Plain K overshoots on finite boxes (the band
/// `|w| < centroid / a_max` never enters the lattice sums).
fn synthesis_k(
    psi: &RidgeletSpec,
    eta: ActivationSpec,
    centroid: f64,
    grid: &ParamGrid,
) -> Result<Complex64> {
    let a_max = grid
        .a_axes
        .iter()
        .map(|ax| ax.start.abs().max(ax.last().abs()))
        .fold(f64::INFINITY, f64::min);
    let zeta_min = if a_max > 0.0 && a_max.is_finite() {
        centroid / a_max
    } else {
        0.0
    };
    let band = crate::admissibility::band_limited_k(
        psi,
        &eta.fourier_data()?,
        zeta_min,
        &Default::default(),
    );
    Ok(band.k)
}

fn require_admissible(psi: &RidgeletSpec, eta: ActivationSpec) -> Result<()> {
    let report = crate::admissibility::compute_k(psi, eta, &Default::default())?;
    if report.classification != crate::admissibility::Classification::Admissible {
        return Err(Error::ConstructionFailed {
            reason: format!(
                "pair ({}, {}) classified {}",
                psi.name(),
                eta.name(),
                report.classification.label()
            ),
            trace: vec![],
        });
    }
    Ok(())
}

pub fn synthesize_network_1d(
    f: &SampledSignal,
    eta: ActivationSpec,
    grid: &ParamGrid,
    psi: Option<RidgeletSpec>,
) -> Result<NetworkDescription> {
    let psi = match psi {
        Some(p) => p,
        None => crate::admissibility::construct_admissible(eta, 1, &Default::default())?,
    };
    require_admissible(&psi, eta)?;
    let centroid = crate::special::spectral_centroid_1d(&f.values, f.grid.step);
    let k = synthesis_k(&psi, eta, centroid, grid)?;
    let t = forward_1d(f, &psi, grid)?;
    network_from_coefficients(&t, eta, k, default_a_min(grid))
}

/// Image counterpart of [`synthesize_network_1d`].
pub fn synthesize_network_2d(
    f: &SampledImage,
    eta: ActivationSpec,
    grid: &ParamGrid,
    psi: Option<RidgeletSpec>,
) -> Result<NetworkDescription> {
    let psi = match psi {
        Some(p) => p,
        None => crate::admissibility::construct_admissible(eta, 2, &Default::default())?,
    };
    require_admissible(&psi, eta)?;
    let centroid = crate::special::spectral_centroid_2d(
        &f.values,
        f.grid_x.count,
        f.grid_y.count,
        f.grid_x.step,
        f.grid_y.step,
    );
    let k = synthesis_k(&psi, eta, centroid, grid)?;
    let t = forward_2d(f, &psi, grid)?;
    network_from_coefficients(&t, eta, k, default_a_min(grid))
}

/// Discrete Plancherel check for a self-admissible ridgelet.
///
/// Returns `(||R_psi f|| / sqrt(K_self), ||f||_2)`. The parameter-space norm
/// uses the measure `da db / ||a||^2`: the fixed measure
/// `alpha^{-m} d alpha d beta du` pulls back to the (a, b) chart with
/// Jacobian `||a||^{-2}` for every m (da db = alpha^{-m-2} d alpha d beta du).
pub fn plancherel_check(
    f: &SampledSignal,
    psi: &RidgeletSpec,
    grid: &ParamGrid,
) -> Result<(f64, f64)> {
    if psi.m != 1 || grid.dimension() != 1 {
        return Err(Error::invalid("plancherel_check requires m = 1"));
    }
    let k_self = self_admissibility_constant(psi);
    if !(k_self > 0.0) || !k_self.is_finite() {
        return Err(Error::invalid("ridgelet is not self-admissible"));
    }
    let a_axis = &grid.a_axes[0];
    let b_axis = &grid.b_axis;
    let a_min = default_a_min(grid);
    let measure = grid.cell_measure();
    let dx = f.grid.step;

    // Streamed row sums; T is never materialized (refined grids are large).
    let row_sums: Vec<f64> = (0..a_axis.count)
        .into_par_iter()
        .map(|ia| {
            let a = a_axis.point(ia);
            if a.abs() < a_min {
                return 0.0;
            }
            let weight = a.abs() * dx;
            let mut acc = 0.0;
            for ib in 0..b_axis.count {
                let b = b_axis.point(ib);
                let mut t = Complex64::new(0.0, 0.0);
                for (n, &fv) in f.values.iter().enumerate() {
                    let z = a * f.grid.point(n) - b;
                    t += fv * psi.eval(z).conj();
                }
                t *= weight;
                acc += t.norm_sqr();
            }
            acc * measure / (a * a)
        })
        .collect();
    let lhs = (crate::pairwise_sum(row_sums) / k_self).sqrt();
    let rhs = crate::pairwise_sum(f.values.iter().map(|v| v * v * dx)).sqrt();
    Ok((lhs, rhs))
}

/// `K_{psi,psi} = (2 pi)^{m-1} \int |psi^(w)|^2 / |w|^m dw`, which is real
/// and positive for every `Lambda^m G^(l)`.
pub fn self_admissibility_constant(psi: &RidgeletSpec) -> f64 {
    let p = (psi.m + 2 * psi.base_order) as i32;
    let integral = crate::quad::integrate_real(
        &|w: f64| w.powi(p) * 2.0 * std::f64::consts::PI * (-w * w).exp(),
        0.0,
        50.0,
        1e-14,
        1e-12,
    );
    2.0 * integral * (2.0 * std::f64::consts::PI).powi(psi.m as i32 - 1)
}
