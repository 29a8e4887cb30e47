use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::NumericsError;

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of bisections applied to any one subinterval.
    pub max_depth: u32,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_depth: u32) -> Result<Self, NumericsError> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_depth,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), NumericsError> {
        if !(self.rel_tol > 0.0) {
            return Err(NumericsError::InvalidSpec(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(NumericsError::InvalidSpec(format!(
                "abs_tol must be >= 0, got {}",
                self.abs_tol
            )));
        }
        if self.max_depth < 1 {
            return Err(NumericsError::InvalidSpec("max_depth must be >= 1".into()));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_depth: 50,
        }
    }
}

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) and weights,
// with the embedded 7-point Gauss weights for the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, NumericsError> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(NumericsError::NonFiniteIntegrand { x })
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), NumericsError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = eval(f, center - dx)? + eval(f, center + dx)?;
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
///
/// The segment with the largest error estimate is bisected until the summed
/// estimate satisfies `err <= max(abs_tol, rel_tol * |I|)`. Integrands must
/// be finite at interior points; the endpoints are never evaluated.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: QuadratureSpec) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(NumericsError::InvalidSpec(format!(
            "need finite a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let (value, error) = gauss_kronrod(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value,
        error,
        depth: 0,
    });
    let mut total = value;
    let mut total_err = error;

    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err <= target {
            // re-sum in interval order so the result does not depend on
            // accumulated update rounding
            let mut segs: Vec<_> = heap.into_vec();
            segs.sort_by(|x, y| x.a.total_cmp(&y.a));
            return Ok(segs.iter().map(|s| s.value).sum());
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= spec.max_depth {
            return Err(NumericsError::MaxDepthExceeded {
                max_depth: spec.max_depth,
                estimate: total,
                error: total_err,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gauss_kronrod(&f, worst.a, mid)?;
        let (rv, re) = gauss_kronrod(&f, mid, worst.b)?;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        for (sa, sb, v, e) in [(worst.a, mid, lv, le), (mid, worst.b, rv, re)] {
            heap.push(Segment {
                a: sa,
                b: sb,
                value: v,
                error: e,
                depth: worst.depth + 1,
            });
        }
    }
}

/// Integral of `f` over `[a, ∞)`.
///
/// Maps the half line onto `[0, 1)` with `x = a + scale·t/(1 − t)`, so
/// `dx = scale/(1 − t)² dt`. `scale` should be the characteristic width of
/// the integrand (e.g. `kT/c` for a Planck spectrum in momentum); the
/// integrand must decay faster than `1/x`.
pub fn integrate_semi_infinite<F>(
    f: F,
    a: f64,
    scale: f64,
    spec: QuadratureSpec,
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(scale.is_finite() && scale > 0.0) {
        return Err(NumericsError::InvalidSpec(format!(
            "scale must be > 0, got {scale}"
        )));
    }
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let x = a + scale * t / s;
        let y = f(x);
        // the tail of a decaying integrand can be 0 · ∞ here
        if y == 0.0 {
            0.0
        } else {
            y * scale / (s * s)
        }
    };
    integrate(mapped, 0.0, 1.0, spec)
}
