//! The activation-function zoo: pointwise evaluation plus the
//! Fourier-domain data (regular part away from zero, delta coefficients at
//! the origin, pole order) that admissibility diagnostics consume.
//!
//! Fourier convention: `f^(w) = \int f(z) e^{-izw} dz`, angular frequency.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::special::{gaussian, gaussian_derivative};

const SQRT_2PI: f64 = 2.506628274631000502415765284811;

/// An activation function from the zoo.
///
/// `ReLU` and `Step` are aliases of `TruncatedPower(1)` and
/// `TruncatedPower(0)`; they evaluate identically. Dirac's delta and its
/// derivatives are represented by mollified Gaussians of width `eps` in the
/// real domain while their Fourier data uses the exact sharp limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActivationSpec {
    /// z^k for z > 0, else 0.
    TruncatedPower(u32),
    ReLU,
    Step,
    /// 1 / (1 + e^{-z}).
    Sigmoid,
    /// k-th derivative of the sigmoid, k >= 1.
    SigmoidDeriv(u32),
    /// log(1 + e^z).
    Softplus,
    Tanh,
    /// Unnormalized Gaussian bump exp(-z^2/2).
    GaussianRBF,
    /// k-th derivative of the Gaussian, k >= 1.
    GaussianDeriv(u32),
    /// Unit-mass Gaussian mollifier of width eps.
    DiracDelta(f64),
    /// k-th derivative of the mollified delta.
    DiracDerivApprox(u32, f64),
    /// z itself. A polynomial, hence identically zero as a Lizorkin
    /// distribution; never admissible.
    Linear,
}

/// Fourier transform of an activation, split into the part that is a
/// function on `R \ {0}` and the distributional part supported at the
/// origin, `sum_j delta_coeffs[j] * delta^(j)`.
#[derive(Clone)]
pub struct FourierData {
    pub regular: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    pub delta_coeffs: Vec<Complex64>,
    /// Order p of the |w| -> 0 singularity: |regular(w)| * |w|^p stays
    /// bounded near the origin.
    pub pole_order: u32,
}

impl fmt::Debug for FourierData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierData")
            .field("delta_coeffs", &self.delta_coeffs)
            .field("pole_order", &self.pole_order)
            .finish()
    }
}

// Coefficient tables of S_k with sigma^(k) = S_k(sigma), S_1(y) = y - y^2,
// S_k = S_{k-1}' * S_1.
static SIGMOID_DERIV_POLYS: Lazy<Vec<Vec<f64>>> = Lazy::new(|| {
    let mut polys: Vec<Vec<f64>> = vec![vec![0.0, 1.0]]; // S_0(y) = y
    for _ in 1..=24 {
        let prev = polys.last().unwrap();
        // derivative
        let dprev: Vec<f64> = prev
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| i as f64 * c)
            .collect();
        // multiply by y - y^2
        let mut next = vec![0.0; dprev.len() + 2];
        for (i, c) in dprev.iter().enumerate() {
            next[i + 1] += c;
            next[i + 2] -= c;
        }
        polys.push(next);
    }
    polys
});

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn sigmoid_deriv(k: u32, z: f64) -> f64 {
    let y = sigmoid(z);
    let poly = &SIGMOID_DERIV_POLYS[k as usize];
    let mut acc = 0.0;
    for &c in poly.iter().rev() {
        acc = acc * y + c;
    }
    acc
}

fn truncated_power(k: u32, z: f64) -> f64 {
    if z > 0.0 {
        if k == 0 {
            1.0
        } else {
            z.powi(k as i32)
        }
    } else {
        0.0
    }
}

impl ActivationSpec {
    /// Pointwise value.
    pub fn eval(&self, z: f64) -> f64 {
        match *self {
            ActivationSpec::TruncatedPower(k) => truncated_power(k, z),
            ActivationSpec::ReLU => truncated_power(1, z),
            ActivationSpec::Step => truncated_power(0, z),
            ActivationSpec::Sigmoid => sigmoid(z),
            ActivationSpec::SigmoidDeriv(k) => sigmoid_deriv(k, z),
            ActivationSpec::Softplus => {
                if z > 0.0 {
                    z + (-z).exp().ln_1p()
                } else {
                    z.exp().ln_1p()
                }
            }
            ActivationSpec::Tanh => z.tanh(),
            ActivationSpec::GaussianRBF => gaussian(z),
            ActivationSpec::GaussianDeriv(k) => gaussian_derivative(k, z),
            ActivationSpec::DiracDelta(eps) => gaussian(z / eps) / (eps * SQRT_2PI),
            ActivationSpec::DiracDerivApprox(k, eps) => {
                gaussian_derivative(k, z / eps) / (eps.powi(k as i32 + 1) * SQRT_2PI)
            }
            ActivationSpec::Linear => z,
        }
    }

    /// Fourier-domain data under the e^{-izw} convention.
    pub fn fourier_data(&self) -> Result<FourierData> {
        let data = match *self {
            ActivationSpec::TruncatedPower(_) | ActivationSpec::ReLU | ActivationSpec::Step => {
                let k = match *self {
                    ActivationSpec::TruncatedPower(k) => k,
                    ActivationSpec::ReLU => 1,
                    _ => 0,
                };
                // z_+^k has transform k!/(iw)^{k+1} + pi i^k delta^(k).
                let factorial: f64 = (1..=k).map(|j| j as f64).product();
                let mut delta = vec![Complex64::new(0.0, 0.0); k as usize + 1];
                delta[k as usize] = PI * Complex64::i().powu(k);
                FourierData {
                    regular: Arc::new(move |w| factorial / (Complex64::new(0.0, w)).powu(k + 1)),
                    delta_coeffs: delta,
                    pole_order: k + 1,
                }
            }
            ActivationSpec::Sigmoid => FourierData {
                // sigma = 1/2 + tanh(z/2)/2; the constant carries pi*delta,
                // the odd part gives -i pi / sinh(pi w).
                regular: Arc::new(|w| Complex64::new(0.0, -PI / (PI * w).sinh())),
                delta_coeffs: vec![Complex64::new(PI, 0.0)],
                pole_order: 1,
            },
            ActivationSpec::SigmoidDeriv(k) => FourierData {
                // (iw)^{k-1} * pi w / sinh(pi w); entire.
                regular: Arc::new(move |w| {
                    let base = if w == 0.0 {
                        1.0
                    } else {
                        PI * w / (PI * w).sinh()
                    };
                    Complex64::new(0.0, w).powu(k - 1) * base
                }),
                delta_coeffs: vec![],
                pole_order: 0,
            },
            ActivationSpec::Softplus => FourierData {
                // softplus = z_+ + r with r smooth and integrable, so the
                // delta part equals that of z_+ and the regular part is
                // sigma's regular part divided by iw.
                regular: Arc::new(|w| Complex64::new(-PI / (w * (PI * w).sinh()), 0.0)),
                delta_coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, PI)],
                pole_order: 2,
            },
            ActivationSpec::Tanh => FourierData {
                // tanh(z) = 2 sigma(2z) - 1; the constants cancel.
                regular: Arc::new(|w| Complex64::new(0.0, -PI / (0.5 * PI * w).sinh())),
                delta_coeffs: vec![],
                pole_order: 1,
            },
            ActivationSpec::GaussianRBF => FourierData {
                regular: Arc::new(|w| Complex64::new(SQRT_2PI * gaussian(w), 0.0)),
                delta_coeffs: vec![],
                pole_order: 0,
            },
            ActivationSpec::GaussianDeriv(k) => FourierData {
                regular: Arc::new(move |w| {
                    Complex64::new(0.0, w).powu(k) * (SQRT_2PI * gaussian(w))
                }),
                delta_coeffs: vec![],
                pole_order: 0,
            },
            // Sharp limits: the mollifier width only affects real-domain
            // evaluation.
            ActivationSpec::DiracDelta(_) => FourierData {
                regular: Arc::new(|_| Complex64::new(1.0, 0.0)),
                delta_coeffs: vec![],
                pole_order: 0,
            },
            ActivationSpec::DiracDerivApprox(k, _) => FourierData {
                regular: Arc::new(move |w| Complex64::new(0.0, w).powu(k)),
                delta_coeffs: vec![],
                pole_order: 0,
            },
            ActivationSpec::Linear => FourierData {
                // Pure polynomial: zero in the Lizorkin sense away from 0.
                regular: Arc::new(|_| Complex64::new(0.0, 0.0)),
                delta_coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0 * PI)],
                pole_order: 0,
            },
        };
        Ok(data)
    }

    /// Distributional derivative as a zoo member plus a scalar multiplier,
    /// so that `d/dz eval(self, z) = multiplier * eval(spec, z)`.
    pub fn derivative_spec(&self) -> Result<(ActivationSpec, f64)> {
        match *self {
            ActivationSpec::TruncatedPower(k) if k >= 1 => {
                Ok((ActivationSpec::TruncatedPower(k - 1), k as f64))
            }
            ActivationSpec::ReLU => Ok((ActivationSpec::Step, 1.0)),
            ActivationSpec::Sigmoid => Ok((ActivationSpec::SigmoidDeriv(1), 1.0)),
            ActivationSpec::SigmoidDeriv(k) => Ok((ActivationSpec::SigmoidDeriv(k + 1), 1.0)),
            ActivationSpec::Softplus => Ok((ActivationSpec::Sigmoid, 1.0)),
            ActivationSpec::GaussianRBF => Ok((ActivationSpec::GaussianDeriv(1), 1.0)),
            ActivationSpec::GaussianDeriv(k) => Ok((ActivationSpec::GaussianDeriv(k + 1), 1.0)),
            ActivationSpec::DiracDelta(eps) => Ok((ActivationSpec::DiracDerivApprox(1, eps), 1.0)),
            ActivationSpec::DiracDerivApprox(k, eps) => {
                Ok((ActivationSpec::DiracDerivApprox(k + 1, eps), 1.0))
            }
            ActivationSpec::TruncatedPower(_) | ActivationSpec::Step => Err(Error::NotImplemented(
                "derivative of the step function is Dirac's delta; pick a mollifier width and use DiracDelta directly".into(),
            )),
            ActivationSpec::Tanh => Err(Error::NotImplemented(
                "tanh'(z) = 4 sigma'(2z); the argument scaling has no zoo representation".into(),
            )),
            ActivationSpec::Linear => Err(Error::NotImplemented(
                "derivative of the linear activation is a constant (a polynomial)".into(),
            )),
        }
    }

    /// Radius beyond which the activation is numerically zero (below
    /// ~1e-26), or None for kinds without decay. Evaluation loops may skip
    /// such terms without observable effect at 1e-12 tolerances.
    pub fn support_radius(&self) -> Option<f64> {
        match *self {
            ActivationSpec::GaussianRBF => Some(28.0),
            ActivationSpec::GaussianDeriv(_) => Some(30.0),
            ActivationSpec::DiracDelta(eps) => Some(28.0 * eps),
            ActivationSpec::DiracDerivApprox(_, eps) => Some(30.0 * eps),
            ActivationSpec::SigmoidDeriv(_) => Some(90.0),
            _ => None,
        }
    }

    /// CLI / file name. Mollifier widths are kept in the name so network
    /// files round-trip exactly.
    pub fn name(&self) -> String {
        match *self {
            ActivationSpec::TruncatedPower(k) => format!("tpow:{k}"),
            ActivationSpec::ReLU => "relu".into(),
            ActivationSpec::Step => "step".into(),
            ActivationSpec::Sigmoid => "sigmoid".into(),
            ActivationSpec::SigmoidDeriv(k) => format!("dsigmoid:{k}"),
            ActivationSpec::Softplus => "softplus".into(),
            ActivationSpec::Tanh => "tanh".into(),
            ActivationSpec::GaussianRBF => "rbf".into(),
            ActivationSpec::GaussianDeriv(k) => format!("drbf:{k}"),
            ActivationSpec::DiracDelta(eps) => format!("delta@{eps}"),
            ActivationSpec::DiracDerivApprox(k, eps) => format!("ddelta:{k}@{eps}"),
            ActivationSpec::Linear => "linear".into(),
        }
    }

    /// Parse a CLI name. `delta` and `ddelta:k` take the mollifier width
    /// from `default_eps` unless the name carries an explicit `@eps`.
    pub fn parse(name: &str, default_eps: f64) -> Result<ActivationSpec> {
        let (base, eps) = match name.split_once('@') {
            Some((b, e)) => {
                let eps: f64 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad mollifier width in {name:?}")))?;
                (b, eps)
            }
            None => (name, default_eps),
        };
        if !(eps > 0.0) {
            return Err(Error::invalid(format!(
                "mollifier width must be > 0, got {eps}"
            )));
        }
        let parse_k = |s: &str| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad order in activation name {name:?}")))
        };
        match base {
            "relu" => Ok(ActivationSpec::ReLU),
            "step" => Ok(ActivationSpec::Step),
            "sigmoid" => Ok(ActivationSpec::Sigmoid),
            "softplus" => Ok(ActivationSpec::Softplus),
            "tanh" => Ok(ActivationSpec::Tanh),
            "rbf" => Ok(ActivationSpec::GaussianRBF),
            "delta" => Ok(ActivationSpec::DiracDelta(eps)),
            "linear" => Ok(ActivationSpec::Linear),
            _ => {
                if let Some(k) = base.strip_prefix("tpow:") {
                    Ok(ActivationSpec::TruncatedPower(parse_k(k)?))
                } else if let Some(k) = base.strip_prefix("dsigmoid:") {
                    let k = parse_k(k)?;
                    if k == 0 {
                        return Err(Error::invalid("dsigmoid order must be >= 1"));
                    }
                    Ok(ActivationSpec::SigmoidDeriv(k))
                } else if let Some(k) = base.strip_prefix("drbf:") {
                    let k = parse_k(k)?;
                    if k == 0 {
                        return Err(Error::invalid("drbf order must be >= 1"));
                    }
                    Ok(ActivationSpec::GaussianDeriv(k))
                } else if let Some(k) = base.strip_prefix("ddelta:") {
                    Ok(ActivationSpec::DiracDerivApprox(parse_k(k)?, eps))
                } else {
                    Err(Error::Parse(format!("unknown activation {name:?}")))
                }
            }
        }
    }
}
