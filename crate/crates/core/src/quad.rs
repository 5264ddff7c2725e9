//! Adaptive Gauss–Kronrod quadrature (15-point Kronrod / 7-point Gauss).

use num_complex::Complex64;

// QUADPACK dqk15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Kronrod panel over `[a, b]`; returns (integral, error estimate).
fn gk15_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * fsum;
        // Gauss nodes are the odd-indexed Kronrod nodes.
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }

    kronrod *= half;
    gauss *= half;
    ((kronrod), (kronrod - gauss).norm())
}

/// Adaptively integrate `f` over `[a, b]` to the requested tolerances.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Complex64 {
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        abs_tol: f64,
        rel_tol: f64,
        depth: u32,
    ) -> Complex64 {
        let (value, err) = gk15_panel(f, a, b);
        if depth >= 48 || err <= abs_tol.max(rel_tol * value.norm()) {
            return value;
        }
        let mid = 0.5 * (a + b);
        let half_tol = 0.5 * abs_tol;
        recurse(f, a, mid, half_tol, rel_tol, depth + 1)
            + recurse(f, mid, b, half_tol, rel_tol, depth + 1)
    }
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    recurse(f, a, b, abs_tol, rel_tol, 0)
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    integrate(&|x| Complex64::new(f(x), 0.0), a, b, abs_tol, rel_tol).re
}
