//! Uniform sampling grids, sampled signals/images, and parameter grids.
//!
//! Everything here is immutable after construction and safe to share across
//! worker threads.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform 1-D lattice `point(i) = start + i * step`, `0 <= i < count`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl Grid1D {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::invalid(format!(
                "grid step must be positive and finite, got {step}"
            )));
        }
        if count == 0 {
            return Err(Error::invalid("grid count must be >= 1"));
        }
        Ok(Grid1D { start, step, count })
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    /// Index of the lattice point nearest to `x`.
    pub fn index_of(&self, x: f64) -> usize {
        let i = ((x - self.start) / self.step).round();
        (i.max(0.0) as usize).min(self.count - 1)
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }
}

/// Closed-on-the-left lattice over `[start, stop]`, inclusive of the last
/// point not exceeding `stop` plus a half-step of float slack.
pub fn linspace(start: f64, stop: f64, step: f64) -> Result<Grid1D> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::invalid(format!("non-positive step {step}")));
    }
    if stop < start {
        return Err(Error::invalid(format!(
            "stop {stop} must be >= start {start}"
        )));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    Grid1D::new(start, step, count)
}

/// Uniformly sampled real signal on a [`Grid1D`].
#[derive(Debug, Clone)]
pub struct SampledSignal {
    pub grid: Grid1D,
    pub values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count {
            return Err(Error::invalid(format!(
                "signal length {} does not match grid count {}",
                values.len(),
                grid.count
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("signal contains non-finite values"));
        }
        Ok(SampledSignal { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.iter().map(f).collect();
        SampledSignal { grid, values }
    }

    pub fn zeros(grid: Grid1D) -> Self {
        let values = vec![0.0; grid.count];
        SampledSignal { grid, values }
    }
}

/// Uniformly sampled real image, row-major: `values[iy * nx + ix]`.
#[derive(Debug, Clone)]
pub struct SampledImage {
    pub grid_x: Grid1D,
    pub grid_y: Grid1D,
    pub values: Vec<f64>,
}

impl SampledImage {
    pub fn new(grid_x: Grid1D, grid_y: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid_x.count * grid_y.count {
            return Err(Error::invalid(format!(
                "image length {} does not match {}x{}",
                values.len(),
                grid_x.count,
                grid_y.count
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("image contains non-finite values"));
        }
        Ok(SampledImage {
            grid_x,
            grid_y,
            values,
        })
    }

    pub fn from_fn(grid_x: Grid1D, grid_y: Grid1D, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid_x.count * grid_y.count);
        for iy in 0..grid_y.count {
            let y = grid_y.point(iy);
            for ix in 0..grid_x.count {
                values.push(f(grid_x.point(ix), y));
            }
        }
        SampledImage {
            grid_x,
            grid_y,
            values,
        }
    }

    pub fn zeros(grid_x: Grid1D, grid_y: Grid1D) -> Self {
        let values = vec![0.0; grid_x.count * grid_y.count];
        SampledImage {
            grid_x,
            grid_y,
            values,
        }
    }

    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid_x.count + ix]
    }

    /// Pixel area `dx * dy`.
    pub fn cell_area(&self) -> f64 {
        self.grid_x.step * self.grid_y.step
    }
}

/// Hidden-parameter lattice: one axis per input dimension for the slope
/// vector plus one axis for the offset.
#[derive(Debug, Clone)]
pub struct ParamGrid {
    pub a_axes: Vec<Grid1D>,
    pub b_axis: Grid1D,
}

impl ParamGrid {
    pub fn new(a_axes: Vec<Grid1D>, b_axis: Grid1D) -> Result<Self> {
        if a_axes.is_empty() {
            return Err(Error::invalid("parameter grid needs at least one a-axis"));
        }
        Ok(ParamGrid { a_axes, b_axis })
    }

    pub fn dimension(&self) -> usize {
        self.a_axes.len()
    }

    /// Measure of one lattice cell, `da_1 ... da_m * db`.
    pub fn cell_measure(&self) -> f64 {
        self.a_axes.iter().map(|g| g.step).product::<f64>() * self.b_axis.step
    }

    pub fn cell_count(&self) -> usize {
        self.a_axes.iter().map(|g| g.count).product::<usize>() * self.b_axis.count
    }

    /// Symmetric box `[-a, a]^m x [-b, b]` with the given steps.
    pub fn symmetric(
        m: usize,
        a_range: f64,
        a_step: f64,
        b_range: f64,
        b_step: f64,
    ) -> Result<Self> {
        let a = linspace(-a_range, a_range, a_step)?;
        let b = linspace(-b_range, b_range, b_step)?;
        ParamGrid::new(vec![a; m], b)
    }
}

/// Ridgelet coefficient field on a [`ParamGrid`], lexicographic over the
/// a-axes then the b-axis.
#[derive(Debug, Clone)]
pub struct RidgeletCoefficients {
    pub param_grid: ParamGrid,
    pub values: Vec<Complex64>,
}

impl RidgeletCoefficients {
    pub fn new(param_grid: ParamGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != param_grid.cell_count() {
            return Err(Error::invalid(format!(
                "coefficient length {} does not match grid cell count {}",
                values.len(),
                param_grid.cell_count()
            )));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::invalid("coefficients contain non-finite values"));
        }
        Ok(RidgeletCoefficients { param_grid, values })
    }

    /// Flat index for m=1 coefficients.
    pub fn index_1d(&self, ia: usize, ib: usize) -> usize {
        ia * self.param_grid.b_axis.count + ib
    }

    /// Flat index for m=2 coefficients.
    pub fn index_2d(&self, ia1: usize, ia2: usize, ib: usize) -> usize {
        (ia1 * self.param_grid.a_axes[1].count + ia2) * self.param_grid.b_axis.count + ib
    }
}

fn check_same_grid1d(a: &Grid1D, b: &Grid1D) -> Result<()> {
    if a.count != b.count || (a.start - b.start).abs() > 1e-12 || (a.step - b.step).abs() > 1e-12 {
        return Err(Error::invalid("grid mismatch"));
    }
    Ok(())
}

fn relative_l2(approx: &[f64], reference: &[f64]) -> f64 {
    let diff2 = crate::pairwise_sum((0..approx.len()).map(|i| {
        let d = approx[i] - reference[i];
        d * d
    }));
    let ref2 = crate::pairwise_sum(reference.iter().map(|r| r * r));
    if ref2 == 0.0 {
        diff2.sqrt()
    } else {
        (diff2 / ref2).sqrt()
    }
}

/// `||approx - reference||_2 / ||reference||_2`; plain `||approx||_2` when
/// the reference is identically zero.
pub fn relative_l2_error(approx: &SampledSignal, reference: &SampledSignal) -> Result<f64> {
    check_same_grid1d(&approx.grid, &reference.grid)?;
    Ok(relative_l2(&approx.values, &reference.values))
}

/// Image counterpart of [`relative_l2_error`].
pub fn relative_l2_error_image(approx: &SampledImage, reference: &SampledImage) -> Result<f64> {
    check_same_grid1d(&approx.grid_x, &reference.grid_x)?;
    check_same_grid1d(&approx.grid_y, &reference.grid_y)?;
    Ok(relative_l2(&approx.values, &reference.values))
}

/// Relative L2 over interior pixels, excluding a border fraction on every
/// side (e.g. 0.1 drops 10% of the width/height at each edge).
pub fn relative_l2_error_interior(
    approx: &SampledImage,
    reference: &SampledImage,
    border_frac: f64,
) -> Result<f64> {
    check_same_grid1d(&approx.grid_x, &reference.grid_x)?;
    check_same_grid1d(&approx.grid_y, &reference.grid_y)?;
    let nx = approx.grid_x.count;
    let ny = approx.grid_y.count;
    let bx = (nx as f64 * border_frac).floor() as usize;
    let by = (ny as f64 * border_frac).floor() as usize;
    let mut a = Vec::new();
    let mut r = Vec::new();
    for iy in by..ny - by {
        for ix in bx..nx - bx {
            a.push(approx.get(ix, iy));
            r.push(reference.get(ix, iy));
        }
    }
    Ok(relative_l2(&a, &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linspace_reproduces_reference_grids() {
        let g = linspace(-1.0, 1.0, 0.01).unwrap();
        assert_eq!(g.count, 201);
        assert_eq!(g.start, -1.0);

        let g = linspace(0.0, 0.0, 1.0).unwrap();
        assert_eq!(g.count, 1);

        let g = linspace(-30.0, 30.0, 0.1).unwrap();
        assert_eq!(g.count, 601);
        assert!((g.last() - 30.0).abs() < 1e-9);
    }

    #[test]
    fn linspace_rejects_bad_steps() {
        assert!(linspace(0.0, 1.0, 0.0).is_err());
        assert!(linspace(0.0, 1.0, -0.5).is_err());
        assert!(linspace(1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn last_point_within_half_step_of_stop() {
        let g = linspace(0.0, 0.95, 0.1).unwrap();
        assert!(g.last() <= 0.95 + 0.05 + 1e-12);
    }

    #[test]
    fn relative_l2_identity_and_zero() {
        let g = linspace(-1.0, 1.0, 0.5).unwrap();
        let f = SampledSignal::from_fn(g.clone(), |x| x * x + 1.0);
        let z = SampledSignal::zeros(g);
        assert_eq!(relative_l2_error(&f, &f).unwrap(), 0.0);
        assert!((relative_l2_error(&z, &f).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn relative_l2_zero_reference_returns_absolute_norm() {
        let g = linspace(0.0, 3.0, 1.0).unwrap();
        let f = SampledSignal::new(g.clone(), vec![3.0, 0.0, 4.0, 0.0]).unwrap();
        let z = SampledSignal::zeros(g);
        assert!((relative_l2_error(&f, &z).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn relative_l2_grid_mismatch_is_error() {
        let f = SampledSignal::zeros(linspace(0.0, 1.0, 0.5).unwrap());
        let g = SampledSignal::zeros(linspace(0.0, 2.0, 0.5).unwrap());
        assert!(relative_l2_error(&f, &g).is_err());
    }

    #[test]
    fn param_grid_measure_positive() {
        let pg = ParamGrid::symmetric(2, 30.0, 0.1, 30.0, 0.1).unwrap();
        assert!(pg.cell_measure() > 0.0);
        assert_eq!(pg.dimension(), 2);
        assert_eq!(pg.cell_count(), 601 * 601 * 601);
    }

    proptest! {
        #[test]
        fn grid_round_trip(start in -100.0f64..100.0, step in 1e-3f64..10.0, count in 1usize..500, i in 0usize..500) {
            let i = i % count;
            let g = Grid1D::new(start, step, count).unwrap();
            prop_assert_eq!(g.index_of(g.point(i)), i);
        }

        #[test]
        fn relative_l2_scale_invariant(c in prop::sample::select(vec![-3.0f64, -0.5, 0.25, 2.0, 10.0])) {
            let g = linspace(-1.0, 1.0, 0.25).unwrap();
            let f = SampledSignal::from_fn(g.clone(), |x| (2.0 * x).sin() + 0.3);
            let h = SampledSignal::from_fn(g.clone(), |x| x * x - 0.1);
            let fc = SampledSignal::new(g.clone(), f.values.iter().map(|v| c * v).collect()).unwrap();
            let hc = SampledSignal::new(g, h.values.iter().map(|v| c * v).collect()).unwrap();
            let e1 = relative_l2_error(&h, &f).unwrap();
            let e2 = relative_l2_error(&hc, &fc).unwrap();
            prop_assert!((e1 - e2).abs() < 1e-12 * (1.0 + e1));
        }
    }
}
