//! Admissibility of (ridgelet, activation) pairs.
//!
//! The constant `K = (2 pi)^{m-1} \int conj(psi^) eta^ / |w|^m dw` over
//! `R \ {0}` decides whether the dual transform reconstructs: finite nonzero
//! K means the pair is admissible, K = 0 means the reconstruction vanishes,
//! and a divergent integral means it blows up (or acts as a low-pass filter
//! once truncated to a finite grid).
//!
//! For `psi = Lambda^m G^(l)` the `|w|^m` weight cancels analytically:
//!
//! ```text
//! conj(psi^(w)) / |w|^m = (-i)^{m+l} w^l sqrt(2 pi) exp(-w^2/2)
//! ```
//!
//! so the integrand is smooth except for the pole of `eta^` at the origin.
//! The integral is evaluated on nested annuli with inner cutoffs
//! `eps_n = 10^{-n}`; convergence and divergence are read off the per-decade
//! absolute masses. Signed partial sums alone cannot detect the divergent
//! odd cases (e.g. a `c/w` singularity integrates to zero on symmetric
//! annuli while failing to converge absolutely), so classification uses the
//! absolute integrand.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::activations::{ActivationSpec, FourierData};
use crate::error::{Error, Result};
use crate::quad;
use crate::ridgelet::RidgeletSpec;
use crate::special::gaussian;

const SQRT_2PI: f64 = 2.506628274631000502415765284811;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Admissible,
    Vanishing,
    Divergent,
}

impl Classification {
    /// Cell symbol: '+', '0', or the divergence marker.
    pub fn symbol(&self) -> &'static str {
        match self {
            Classification::Admissible => "+",
            Classification::Vanishing => "0",
            Classification::Divergent => "inf",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Admissible => "admissible",
            Classification::Vanishing => "vanishing",
            Classification::Divergent => "divergent",
        }
    }
}

/// Quadrature controls for [`compute_k`].
#[derive(Debug, Clone)]
pub struct QuadratureParams {
    /// Outer truncation radius; the Gaussian factor makes the tail beyond
    /// ~10 already negligible.
    pub outer_radius: f64,
    /// Relative tolerance of each adaptive panel.
    pub rel_tol: f64,
    /// Vanishing threshold, relative to the absolute-value integral.
    pub tol_zero: f64,
    /// Number of inner cutoff decades to probe (eps down to 10^-(n+1)).
    pub max_decades: u32,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        QuadratureParams {
            outer_radius: 50.0,
            rel_tol: 1e-10,
            tol_zero: 1e-8,
            max_decades: 15,
        }
    }
}

/// Outcome of the cutoff quadrature for one pair.
#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    /// `K` for converged pairs; for divergent pairs, the truncated partial
    /// value at the deepest cutoff reached (the effective gain a finite
    /// parameter grid realizes).
    pub k: Complex64,
    pub classification: Classification,
    /// `(eps, inner partial)` pairs: the absolute-value integral over
    /// `eps <= |w| <= 0.1` for each cutoff probed. Monotone nondecreasing;
    /// grows without bound for divergent pairs.
    pub cutoff_trace: Vec<(f64, f64)>,
    /// Absolute-value integral over the converged region.
    pub abs_integral: f64,
    /// Signed integral over the fixed outer region `0.1 <= |w| <= R` alone.
    pub outer_partial: Complex64,
    /// Origin delta terms of `eta^` pair against a nonzero derivative of
    /// `conj(psi^)/|w|^m` at 0. They are excluded from K by construction
    /// (the integral omits the origin); this flag records that the exclusion
    /// mattered.
    pub delta_pairing_nonzero: bool,
}

/// Integrand of K with the `|w|^m` weight cancelled against `psi^`.
fn integrand<'a>(psi: &RidgeletSpec, fd: &'a FourierData) -> impl Fn(f64) -> Complex64 + 'a {
    let phase = Complex64::new(0.0, -1.0).powu(psi.m + psi.base_order);
    let l = psi.base_order as i32;
    move |w: f64| phase * w.powi(l) * SQRT_2PI * gaussian(w) * (fd.regular)(w)
}

/// Pairing of the origin delta coefficients with derivatives of
/// `conj(psi^)/|w|^m = (-i)^{m+l} w^l sqrt(2pi) G(w)`:
/// `sum_j c_j (-1)^j phi^(j)(0)`, computed from the Taylor expansion of
/// `w^l exp(-w^2/2)`.
fn delta_pairing(psi: &RidgeletSpec, fd: &FourierData) -> Complex64 {
    let phase = Complex64::new(0.0, -1.0).powu(psi.m + psi.base_order);
    let l = psi.base_order as usize;
    let mut total = Complex64::new(0.0, 0.0);
    for (j, &c) in fd.delta_coeffs.iter().enumerate() {
        if c.norm() == 0.0 || j < l || (j - l) % 2 != 0 {
            continue;
        }
        let t = (j - l) / 2;
        let mut coef = 1.0; // (-1/2)^t / t!
        for i in 1..=t {
            coef *= -0.5 / i as f64;
        }
        let factorial: f64 = (1..=j).map(|i| i as f64).product();
        let phi_j = phase * SQRT_2PI * factorial * coef;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += c * sign * phi_j;
    }
    total
}

/// Evaluate and classify K for a ridgelet against explicit Fourier data.
pub fn compute_k_with_fourier(
    psi: &RidgeletSpec,
    fd: &FourierData,
    params: &QuadratureParams,
) -> Result<AdmissibilityReport> {
    let g = integrand(psi, fd);
    let both = |lo: f64, hi: f64| -> Complex64 {
        quad::integrate(&g, lo, hi, 1e-300, params.rel_tol)
            + quad::integrate(&g, -hi, -lo, 1e-300, params.rel_tol)
    };
    let both_abs = |lo: f64, hi: f64| -> f64 {
        quad::integrate_real(&|w| g(w).norm(), lo, hi, 1e-300, params.rel_tol)
            + quad::integrate_real(&|w| g(w).norm(), -hi, -lo, 1e-300, params.rel_tol)
    };

    let eps0 = 0.1;
    let r = params.outer_radius;
    let outer = both(eps0, r);
    let outer_abs = both_abs(eps0, r);

    let mut trace = Vec::new();
    let mut masses: Vec<f64> = Vec::new();
    let mut inner = Complex64::new(0.0, 0.0);
    let mut inner_abs = 0.0f64;
    let mut converged = false;
    let mut overflowed = false;
    let mut quiet = 0;

    for n in 1..=params.max_decades {
        let hi = eps0 * 10f64.powi(1 - n as i32);
        let lo = hi / 10.0;
        let mass = both_abs(lo, hi);
        if !mass.is_finite() {
            // Only genuinely divergent integrands overflow here.
            overflowed = true;
            trace.push((lo, f64::INFINITY));
            break;
        }
        inner += both(lo, hi);
        inner_abs += mass;
        masses.push(mass);
        trace.push((lo, inner_abs));
        if mass <= 1e-13 * (outer_abs + inner_abs) {
            quiet += 1;
            if quiet >= 2 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }

    let scale = (2.0 * std::f64::consts::PI).powi(psi.m as i32 - 1);
    let total = scale * (outer + inner);
    let abs_integral = outer_abs + inner_abs;
    let pairing = delta_pairing(psi, fd);
    let coeff_scale: f64 = fd.delta_coeffs.iter().map(|c| c.norm()).sum();
    let delta_pairing_nonzero = pairing.norm() > 1e-9 * (1.0 + coeff_scale);

    let classification = if converged {
        if total.norm() <= params.tol_zero * scale * abs_integral {
            Classification::Vanishing
        } else {
            Classification::Admissible
        }
    } else if overflowed {
        Classification::Divergent
    } else {
        // Per-decade masses neither died out nor blew up within the budget:
        // divergence shows as trailing decade ratios >= 0.5 (a pole of order
        // one gives constant masses, higher orders grow geometrically).
        let k = masses.len();
        let trailing_growth = k >= 4 && (k - 3..k).all(|i| masses[i] >= 0.5 * masses[i - 1]);
        if trailing_growth {
            Classification::Divergent
        } else if abs_integral <= f64::MIN_POSITIVE {
            // Identically-zero integrand never trips the mass test.
            Classification::Vanishing
        } else {
            return Err(Error::Indeterminate { trace });
        }
    };

    Ok(AdmissibilityReport {
        k: total,
        classification,
        cutoff_trace: trace,
        abs_integral: scale * abs_integral,
        outer_partial: scale * outer,
        delta_pairing_nonzero,
    })
}

/// Evaluate and classify `K_{psi,eta}`.
pub fn compute_k(
    psi: &RidgeletSpec,
    eta: ActivationSpec,
    params: &QuadratureParams,
) -> Result<AdmissibilityReport> {
    compute_k_with_fourier(psi, &eta.fourier_data()?, params)
}

/// Band-limited admissibility constant and its absolute-value companion.
#[derive(Debug, Clone, Copy)]
pub struct BandK {
    pub k: Complex64,
    pub abs: f64,
}

/// The admissibility integral restricted to `zeta_min <= |w| <= R`: the
/// portion of K that a finite slope box realizes.
///
/// A lattice with `||a|| <= A` reconstructs the target's content at
/// frequency `xi` from ridge frequencies `|w| >= xi / A` only, so the
/// discretized composite acts on that band with this constant rather than
/// the full K. It is finite for every pair (for divergent ones it is the
/// gain the truncation realizes) and converges to K as the box grows.
pub fn band_limited_k(
    psi: &RidgeletSpec,
    fd: &FourierData,
    zeta_min: f64,
    params: &QuadratureParams,
) -> BandK {
    let g = integrand(psi, fd);
    let lo = zeta_min.max(1e-12);
    let r = params.outer_radius.max(lo * 2.0);
    let scale = (2.0 * std::f64::consts::PI).powi(psi.m as i32 - 1);
    let v = quad::integrate(&g, lo, r, 1e-300, params.rel_tol)
        + quad::integrate(&g, -r, -lo, 1e-300, params.rel_tol);
    let a = quad::integrate_real(&|w| g(w).norm(), lo, r, 1e-300, params.rel_tol)
        + quad::integrate_real(&|w| g(w).norm(), -r, -lo, 1e-300, params.rel_tol);
    BandK {
        k: v * scale,
        abs: a * scale,
    }
}

/// Construct an admissible ridgelet for an activation: the smallest
/// Gaussian-derivative order `l >= pole_order(eta^)` whose pair with
/// `Lambda^m G^(l)` is admissible. Orders alternate between admissible and
/// vanishing by parity, so the search steps through consecutive orders.
pub fn construct_admissible(
    eta: ActivationSpec,
    m: u32,
    params: &QuadratureParams,
) -> Result<RidgeletSpec> {
    const MAX_ORDER: u32 = 8;
    let fd = eta.fourier_data()?;
    let mut trace = Vec::new();
    for l in fd.pole_order..=MAX_ORDER {
        let psi = RidgeletSpec::new(m, l)?;
        match compute_k_with_fourier(&psi, &fd, params) {
            Ok(report) => {
                if report.classification == Classification::Admissible {
                    return Ok(psi);
                }
                trace.push(format!(
                    "{}: {} (|K| = {:.3e})",
                    psi.name(),
                    report.classification.label(),
                    report.k.norm()
                ));
            }
            Err(Error::Indeterminate { .. }) => {
                trace.push(format!("{}: indeterminate quadrature", psi.name()));
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::ConstructionFailed {
        reason: format!(
            "no admissible Lambda^{m} G^(l) with l in {}..={MAX_ORDER} for eta = {}",
            fd.pole_order,
            eta.name()
        ),
        trace,
    })
}

/// One activation row of the diagnosis table.
#[derive(Debug, Clone)]
pub struct DiagnosisRow {
    pub activation: String,
    /// Cells for psi = Lambda^m G, Lambda^m G', Lambda^m G''.
    pub cells: [(Classification, Complex64); 3],
}

#[derive(Debug, Clone)]
pub struct DiagnosisTable {
    pub m: u32,
    pub rows: Vec<DiagnosisRow>,
}

/// The standard activation rows of the diagnosis table, in display order.
pub fn table_activations() -> Vec<ActivationSpec> {
    vec![
        ActivationSpec::SigmoidDeriv(1),
        ActivationSpec::Sigmoid,
        ActivationSpec::Softplus,
        ActivationSpec::DiracDelta(0.1),
        ActivationSpec::Step,
        ActivationSpec::ReLU,
        ActivationSpec::Linear,
        ActivationSpec::GaussianRBF,
    ]
}

/// Classify the 8 x 3 grid of zoo activations against Lambda^m G^(0..=2).
pub fn diagnose_table(m: u32) -> Result<DiagnosisTable> {
    if m != 1 && m != 2 {
        return Err(Error::invalid(format!(
            "diagnosis table supports m in {{1, 2}}, got {m}"
        )));
    }
    let params = QuadratureParams::default();
    let rows: Result<Vec<DiagnosisRow>> = table_activations()
        .into_par_iter()
        .map(|eta| {
            let mut cells = [(Classification::Vanishing, Complex64::new(0.0, 0.0)); 3];
            for (l, cell) in cells.iter_mut().enumerate() {
                let psi = RidgeletSpec::new(m, l as u32)?;
                let report = compute_k(&psi, eta, &params)?;
                *cell = (report.classification, report.k);
            }
            Ok(DiagnosisRow {
                activation: eta.name(),
                cells,
            })
        })
        .collect();
    Ok(DiagnosisTable { m, rows: rows? })
}
