use super::NumericsError;

/// Bracket and stopping rule for [`find_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSpec {
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub x_tol: f64,
    pub max_iter: u32,
}

impl RootSpec {
    pub fn new(bracket_lo: f64, bracket_hi: f64, x_tol: f64) -> Self {
        Self {
            bracket_lo,
            bracket_hi,
            x_tol,
            max_iter: 200,
        }
    }

    pub fn with_max_iter(mut self, max_iter: u32) -> Self {
        self.max_iter = max_iter;
        self
    }
}

/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection whenever an interpolated step is not
/// safely inside the bracket.
///
/// Returns a point from a bracket whose width is at most `x_tol`.
pub fn find_root<G>(g: G, spec: RootSpec) -> Result<f64, NumericsError>
where
    G: Fn(f64) -> f64,
{
    let RootSpec {
        bracket_lo: lo,
        bracket_hi: hi,
        x_tol,
        max_iter,
    } = spec;
    if !(lo < hi) || !(x_tol > 0.0) {
        return Err(NumericsError::InvalidSpec(format!(
            "need lo < hi and x_tol > 0, got [{lo}, {hi}], x_tol = {x_tol}"
        )));
    }

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (g(a), g(b));
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(NumericsError::NonFiniteIntegrand {
            x: if fa.is_finite() { b } else { a },
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::NoSignChange {
            lo,
            hi,
            g_lo: fa,
            g_hi: fb,
        });
    }

    // b: best estimate, a: previous b, c: counterpoint with g(c) of opposite sign
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * x_tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = g(b);
        if !fb.is_finite() {
            return Err(NumericsError::NonFiniteIntegrand { x: b });
        }
    }
    Err(NumericsError::MaxIterExceeded(max_iter))
}

/// Golden-section search for the maximum of a unimodal function on `[lo, hi]`.
pub fn maximize_unimodal<F>(f: F, lo: f64, hi: f64, x_tol: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !(x_tol > 0.0) {
        return Err(NumericsError::InvalidSpec(format!(
            "need lo < hi and x_tol > 0, got [{lo}, {hi}], x_tol = {x_tol}"
        )));
    }
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > x_tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    Ok(0.5 * (a + b))
}
