//! Numerical kernels shared by the rest of the crate: composite Simpson
//! quadrature with interval doubling, LU determinants, bracketed bisection
//! and central differences.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature did not converge after {refinements} refinements: estimate {estimate}, error bound {error_bound:e}")]
    NotConverged {
        refinements: u32,
        estimate: f64,
        error_bound: f64,
    },
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Tolerance and refinement budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub max_refinements: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_refinements: 24,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, max_refinements: u32) -> Result<Self, NumericsError> {
        let spec = Self {
            abs_tol,
            max_refinements,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(NumericsError::InvalidParameter(format!(
                "quadrature tolerance must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_refinements < 1 {
            return Err(NumericsError::InvalidParameter(
                "max_refinements must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// An interval `[lo, hi]` on which a function is expected to change sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl RootBracket {
    pub const DEFAULT_TOL: f64 = 1e-8;

    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self, NumericsError> {
        if !(lo < hi) {
            return Err(NumericsError::InvalidParameter(format!(
                "bracket requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(tol > 0.0) {
            return Err(NumericsError::InvalidParameter(format!(
                "bracket tolerance must be positive, got {tol}"
            )));
        }
        Ok(Self { lo, hi, tol })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

// Levels below this are never accepted as converged, so that an oscillatory
// integrand sampled at a few coincident nodes cannot fake agreement.
const MIN_LEVELS: u32 = 4;

/// Composite Simpson rule on `[a, b]`, doubling the number of panels until
/// the Richardson estimate `|S_2n - S_n| / 15` drops below `spec.abs_tol`.
///
/// Every refinement reuses the nodes of the previous level, so the total
/// cost is one evaluation per node of the finest grid.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(NumericsError::InvalidInterval { a, b });
    }
    let eval = |x: f64| -> Result<f64, NumericsError> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFiniteIntegrand { x })
        }
    };

    let width = b - a;
    // Endpoint contribution and the running sums of odd/even interior nodes.
    let ends = eval(a)? + eval(b)?;
    let mut n: u64 = 2;
    let mut h = width / n as f64;
    let mut odd = eval(a + h)?;
    let mut even = 0.0;
    let mut previous = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    let mut error_bound = f64::INFINITY;

    for level in 1..=spec.max_refinements {
        even += odd;
        n *= 2;
        h = width / n as f64;
        odd = 0.0;
        let mut k = 1;
        while k < n {
            odd += eval(a + k as f64 * h)?;
            k += 2;
        }
        let current = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        error_bound = (current - previous).abs() / 15.0;
        if level >= MIN_LEVELS.min(spec.max_refinements) && error_bound < spec.abs_tol {
            return Ok(current);
        }
        previous = current;
    }

    Err(NumericsError::NotConverged {
        refinements: spec.max_refinements,
        estimate: previous,
        error_bound,
    })
}

/// Determinant of a square matrix given as rows, via Gaussian elimination
/// with partial pivoting. Singular input yields `0.0`.
///
/// Panics if the rows are not all of length `m.len()`.
pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    assert!(
        m.iter().all(|row| row.len() == n),
        "determinant requires a square matrix"
    );
    if n == 0 {
        return 1.0;
    }
    let mut work: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| work[i][col].abs().total_cmp(&work[j][col].abs()))
            .expect("non-empty pivot range");
        if work[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            work.swap(pivot, col);
            det = -det;
        }
        let diag = work[col][col];
        det *= diag;
        for row in col + 1..n {
            let factor = work[row][col] / diag;
            if factor == 0.0 {
                continue;
            }
            let (upper, lower) = work.split_at_mut(row);
            for (x, &y) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x -= factor * y;
            }
        }
    }
    det
}

/// Bisection on a fallible function. Returns the final bracket, which is
/// narrower than `bracket.tol` and still straddles the root; an exact zero
/// collapses it to a single point.
pub fn try_bisect<F, E>(mut f: F, bracket: RootBracket) -> Result<RootBracket, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumericsError>,
{
    let RootBracket {
        mut lo,
        mut hi,
        tol,
    } = bracket;
    let point = |x: f64| RootBracket { lo: x, hi: x, tol };
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(point(lo));
    }
    if f_hi == 0.0 {
        return Ok(point(hi));
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(NumericsError::InvalidBracket { lo, hi, f_lo, f_hi }.into());
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(point(mid));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootBracket { lo, hi, tol })
}

/// Bisection to `bracket.tol`; returns the midpoint of the final bracket.
pub fn try_find_root<F, E>(f: F, bracket: RootBracket) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumericsError>,
{
    let last = try_bisect(f, bracket)?;
    Ok(0.5 * (last.lo + last.hi))
}

pub fn find_root<F>(f: F, bracket: RootBracket) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    try_find_root(|x| Ok::<_, NumericsError>(f(x)), bracket)
}

/// Samples `f` on `lo, lo + step, ...` up to `hi` (inclusive) and returns the
/// first sub-interval across which the sign changes.
pub fn try_scan_for_bracket<F, E>(
    mut f: F,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> Result<Option<RootBracket>, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumericsError>,
{
    if !(step > 0.0) || !(lo < hi) {
        return Err(NumericsError::InvalidParameter(format!(
            "scan requires lo < hi and step > 0, got [{lo}, {hi}] step {step}"
        ))
        .into());
    }
    let nodes = scan_nodes(lo, hi, step);
    let mut prev_x = nodes[0];
    let mut prev_y = f(prev_x)?;
    for &x in &nodes[1..] {
        let y = f(x)?;
        if prev_y == 0.0 || prev_y.signum() != y.signum() {
            return Ok(Some(RootBracket {
                lo: prev_x,
                hi: x,
                tol,
            }));
        }
        prev_x = x;
        prev_y = y;
    }
    Ok(None)
}

/// Grid `lo, lo + step, ...` with `hi` appended when it is not a node.
pub fn scan_nodes(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step).floor() as usize;
    let mut nodes: Vec<f64> = (0..=count).map(|k| lo + k as f64 * step).collect();
    // Guard against rounding pushing the last node past hi.
    nodes.retain(|&x| x <= hi);
    if nodes.last().is_none_or(|&x| hi - x > step * 1e-9) {
        nodes.push(hi);
    }
    nodes
}

/// `(f(x + h) - f(x - h)) / (2h)` for a fallible `f`.
pub fn try_central_difference<F, E>(mut f: F, x: f64, h: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumericsError>,
{
    if !(h > 0.0) {
        return Err(
            NumericsError::InvalidParameter(format!("step must be positive, got {h}")).into(),
        );
    }
    let forward = f(x + h)?;
    let backward = f(x - h)?;
    Ok((forward - backward) / (2.0 * h))
}

pub fn central_difference<F>(f: F, x: f64, h: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    try_central_difference(|t| Ok::<_, NumericsError>(f(t)), x, h)
}
