//! C ABI for the ridgenet library: admissibility diagnostics and
//! backprop-free network synthesis behind opaque handles.
//!
//! Conventions:
//! - Every fallible call returns an [`RnStatus`]; `RN_STATUS_OK` is 0.
//! - On failure, [`rn_last_error_message`] returns a heap-allocated
//!   description of the most recent error on the calling thread.
//! - Strings returned by this library are freed with [`rn_string_free`],
//!   networks with [`rn_network_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use libc::{c_char, c_double, c_int};

use ridgenet::activations::ActivationSpec;
use ridgenet::admissibility::{compute_k, Classification};
use ridgenet::error::Error;
use ridgenet::grids::{Grid1D, ParamGrid, SampledSignal};
use ridgenet::ridgelet::{synthesize_network_1d, NetworkDescription, RidgeletSpec};

/// Opaque handle to a synthesized one-hidden-layer network.
pub struct RnNetwork(NetworkDescription);

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RnStatus {
    RnStatusOk = 0,
    RnStatusInvalidArgument = 1,
    RnStatusNotImplemented = 2,
    RnStatusConstructionFailed = 3,
    RnStatusIndeterminate = 4,
    RnStatusIo = 5,
    RnStatusParse = 6,
    RnStatusNullPointer = 7,
    RnStatusPanic = 8,
}

/// Classification of an admissibility constant.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RnClassification {
    RnClassificationAdmissible = 0,
    RnClassificationVanishing = 1,
    RnClassificationDivergent = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RnStatus {
    match err {
        Error::InvalidArgument(_) => RnStatus::RnStatusInvalidArgument,
        Error::NotImplemented(_) => RnStatus::RnStatusNotImplemented,
        Error::ConstructionFailed { .. } => RnStatus::RnStatusConstructionFailed,
        Error::Indeterminate { .. } => RnStatus::RnStatusIndeterminate,
        Error::Io(_) => RnStatus::RnStatusIo,
        Error::Parse(_) => RnStatus::RnStatusParse,
    }
}

fn run<F: FnOnce() -> Result<RnStatus, Error>>(f: F) -> RnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => {
            let status = status_of(&err);
            set_error(err.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RnStatus::RnStatusPanic
        }
    }
}

/// # Safety
/// `ptr` must be null or a string previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rn_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Most recent error message on this thread, or null if none. Caller frees
/// with [`rn_string_free`].
#[no_mangle]
pub extern "C" fn rn_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Library version as a heap-allocated string; free with [`rn_string_free`].
#[no_mangle]
pub extern "C" fn rn_version() -> *mut c_char {
    CString::new(env!("CARGO_PKG_VERSION")).unwrap().into_raw()
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, Error> {
    if ptr.is_null() {
        return Err(Error::invalid("null string pointer"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Error::Parse("string is not valid UTF-8".into()))
}

/// Classify the pair (Lambda^m G^(base_order), eta) and report K.
///
/// `eta_name` uses the CLI names (`relu`, `step`, `tpow:k`, `sigmoid`,
/// `dsigmoid:k`, `softplus`, `tanh`, `rbf`, `drbf:k`, `delta`, `ddelta:k`,
/// `linear`). Outputs may be null when not wanted.
///
/// # Safety
/// `eta_name` must be a valid NUL-terminated string; non-null out pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn rn_compute_k(
    m: u32,
    base_order: u32,
    eta_name: *const c_char,
    out_k_re: *mut c_double,
    out_k_im: *mut c_double,
    out_classification: *mut c_int,
) -> RnStatus {
    run(|| {
        let eta = ActivationSpec::parse(cstr(eta_name)?, 0.1)?;
        let psi = RidgeletSpec::new(m, base_order)?;
        let report = compute_k(&psi, eta, &Default::default())?;
        if !out_k_re.is_null() {
            *out_k_re = report.k.re;
        }
        if !out_k_im.is_null() {
            *out_k_im = report.k.im;
        }
        if !out_classification.is_null() {
            *out_classification = match report.classification {
                Classification::Admissible => RnClassification::RnClassificationAdmissible as c_int,
                Classification::Vanishing => RnClassification::RnClassificationVanishing as c_int,
                Classification::Divergent => RnClassification::RnClassificationDivergent as c_int,
            };
        }
        Ok(RnStatus::RnStatusOk)
    })
}

/// The m = 1 diagnosis grid as CSV text
/// (`activation,psi,classification,K_re,K_im`). Free with
/// [`rn_string_free`].
///
/// # Safety
/// `out_csv` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rn_diagnose_csv(m: u32, out_csv: *mut *mut c_char) -> RnStatus {
    run(|| {
        if out_csv.is_null() {
            return Err(Error::invalid("null output pointer"));
        }
        let table = ridgenet::admissibility::diagnose_table(m)?;
        let mut text = String::from("activation,psi,classification,K_re,K_im\n");
        for row in &table.rows {
            for (l, (class, k)) in row.cells.iter().enumerate() {
                let psi = RidgeletSpec::new(m, l as u32)?;
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.activation,
                    psi.name(),
                    class.label(),
                    k.re,
                    k.im
                ));
            }
        }
        *out_csv = CString::new(text)
            .map_err(|_| Error::Parse("table text contained NUL".into()))?
            .into_raw();
        Ok(RnStatus::RnStatusOk)
    })
}

/// Synthesize a network approximating the uniformly sampled signal
/// `values[i]` at `x_start + i * x_step`, without backpropagation. The
/// ridgelet is constructed automatically from the activation. Free the
/// handle with [`rn_network_free`].
///
/// # Safety
/// `values` must point to `len` readable doubles; `eta_name` must be a
/// valid string; `out_network` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rn_synthesize_1d(
    x_start: c_double,
    x_step: c_double,
    values: *const c_double,
    len: usize,
    eta_name: *const c_char,
    a_range: c_double,
    a_step: c_double,
    b_range: c_double,
    b_step: c_double,
    out_network: *mut *mut RnNetwork,
) -> RnStatus {
    run(|| {
        if values.is_null() || out_network.is_null() {
            return Err(Error::invalid("null pointer argument"));
        }
        let eta = ActivationSpec::parse(cstr(eta_name)?, b_step)?;
        let grid = Grid1D::new(x_start, x_step, len)?;
        let samples = std::slice::from_raw_parts(values, len).to_vec();
        let f = SampledSignal::new(grid, samples)?;
        let param = ParamGrid::symmetric(1, a_range, a_step, b_range, b_step)?;
        let net = synthesize_network_1d(&f, eta, &param, None)?;
        *out_network = Box::into_raw(Box::new(RnNetwork(net)));
        Ok(RnStatus::RnStatusOk)
    })
}

/// Number of hidden units, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rn_network_unit_count(net: *const RnNetwork) -> usize {
    if net.is_null() {
        0
    } else {
        (*net).0.unit_count()
    }
}

/// Evaluate the network at `n` arbitrary points.
///
/// # Safety
/// `xs` must point to `n` readable doubles and `out` to `n` writable ones;
/// `net` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rn_network_eval_1d(
    net: *const RnNetwork,
    xs: *const c_double,
    n: usize,
    out: *mut c_double,
) -> RnStatus {
    run(|| {
        if net.is_null() || xs.is_null() || out.is_null() {
            return Err(Error::invalid("null pointer argument"));
        }
        let net = &(*net).0;
        let xs = std::slice::from_raw_parts(xs, n);
        let out = std::slice::from_raw_parts_mut(out, n);
        out.copy_from_slice(&net.evaluate_points_1d(xs)?);
        Ok(RnStatus::RnStatusOk)
    })
}

/// Write the network in the `ridgenet-v1` text format.
///
/// # Safety
/// `net` must be a live handle; `path` a valid string.
#[no_mangle]
pub unsafe extern "C" fn rn_network_save(net: *const RnNetwork, path: *const c_char) -> RnStatus {
    run(|| {
        if net.is_null() {
            return Err(Error::invalid("null network handle"));
        }
        ridgenet::io::write_network(Path::new(cstr(path)?), &(*net).0)?;
        Ok(RnStatus::RnStatusOk)
    })
}

/// Load a `ridgenet-v1` network file into a fresh handle.
///
/// # Safety
/// `path` must be a valid string; `out_network` writable.
#[no_mangle]
pub unsafe extern "C" fn rn_network_load(
    path: *const c_char,
    out_network: *mut *mut RnNetwork,
) -> RnStatus {
    run(|| {
        if out_network.is_null() {
            return Err(Error::invalid("null output pointer"));
        }
        let net = ridgenet::io::read_network(Path::new(cstr(path)?))?;
        *out_network = Box::into_raw(Box::new(RnNetwork(net)));
        Ok(RnStatus::RnStatusOk)
    })
}

/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rn_network_free(net: *mut RnNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}
