//! Thermodynamic-limit ground state of the transverse Ising chain
//! `H = -lambda sum sx_j sx_{j+1} - sum sz_j`.
//!
//! All correlators come from the integral coefficients `G_r`; the x and y
//! correlators at distance `r` are determinants of `r x r` Toeplitz matrices
//! built from them.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::correlations::XState;
use crate::numerics::{determinant, integrate, QuadratureSpec};
use crate::{Error, Result};

/// Tolerance on the physicality of the assembled two-site state.
const POSITIVITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub pair_distance: u32,
}

impl ModelParams {
    pub fn new(lambda: f64, pair_distance: u32) -> Result<Self> {
        let params = Self {
            lambda,
            pair_distance,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidModel(format!(
                "lambda must be a finite non-negative number, got {}",
                self.lambda
            )));
        }
        if self.pair_distance < 1 {
            return Err(Error::InvalidModel(
                "pair distance must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundStateCorrelators {
    pub sz: f64,
    pub cxx: f64,
    pub cyy: f64,
    pub czz: f64,
}

/// Single-particle energy `omega(phi)`.
pub fn dispersion(lambda: f64, phi: f64) -> f64 {
    (lambda * phi.sin()).hypot(1.0 + lambda * phi.cos())
}

// At lambda = 1, phi = pi the gap closes and both integrands are 0/0; their
// limits are cos(phi/2) -> 0 and sin(phi/2) -> 1.
const GAP_FLOOR: f64 = 1e-300;

fn magnetization_integrand(lambda: f64, phi: f64) -> f64 {
    let omega = dispersion(lambda, phi);
    if omega < GAP_FLOOR {
        return 0.0;
    }
    (1.0 + lambda * phi.cos()) / omega
}

fn sine_integrand(lambda: f64, phi: f64) -> f64 {
    let omega = dispersion(lambda, phi);
    if omega < GAP_FLOOR {
        return 1.0;
    }
    phi.sin() / omega
}

/// `<sz> = -(1/pi) int_0^pi (1 + lambda cos phi) / omega dphi`.
///
/// The overall sign makes `<sz> = -1` at `lambda = 0`; correlation measures
/// are unaffected by the global spin flip that would reverse it.
pub fn magnetization(lambda: f64, spec: &QuadratureSpec) -> Result<f64> {
    let integral = integrate(|phi| magnetization_integrand(lambda, phi), 0.0, PI, spec)?;
    Ok(-integral / PI)
}

/// `G_r` for any integer `r` (negative indices appear in the Toeplitz
/// matrices).
pub fn g_coefficient(lambda: f64, r: i64, spec: &QuadratureSpec) -> Result<f64> {
    let r = r as f64;
    let integrand = |phi: f64| {
        (r * phi).cos() * magnetization_integrand(lambda, phi)
            - lambda * (r * phi).sin() * sine_integrand(lambda, phi)
    };
    Ok(integrate(integrand, 0.0, PI, spec)? / PI)
}

fn toeplitz(size: usize, entry: impl Fn(i64, i64) -> f64) -> Vec<Vec<f64>> {
    (0..size as i64)
        .map(|i| (0..size as i64).map(|j| entry(i, j)).collect())
        .collect()
}

pub fn correlators(params: &ModelParams, spec: &QuadratureSpec) -> Result<GroundStateCorrelators> {
    params.validate()?;
    let lambda = params.lambda;
    let r = params.pair_distance as i64;

    let mut g = BTreeMap::new();
    for k in -r..=r {
        g.insert(k, g_coefficient(lambda, k, spec)?);
    }
    let sz = -g[&0];

    // Rows of the x matrix start G_{-1}, G_0, ...; rows of the y matrix start
    // G_1, G_2, ...; each row shifts the previous one right by one.
    let cxx = determinant(&toeplitz(r as usize, |i, j| g[&(i - j - 1)]));
    let cyy = determinant(&toeplitz(r as usize, |i, j| g[&(i - j + 1)]));
    let czz = sz * sz - g[&r] * g[&-r];

    Ok(GroundStateCorrelators { sz, cxx, cyy, czz })
}

/// Two-site reduced density matrix for a pair at distance
/// `params.pair_distance`.
pub fn reduced_density(params: &ModelParams, spec: &QuadratureSpec) -> Result<XState> {
    Ok(GroundState::compute(params, spec)?.state)
}

fn assemble(c: &GroundStateCorrelators) -> Result<XState> {
    let a = 0.25 + 0.5 * c.sz + 0.25 * c.czz;
    let d = 0.25 - 0.5 * c.sz + 0.25 * c.czz;
    let b = 0.25 * (1.0 - c.czz);
    let z = 0.25 * (c.cxx + c.cyy);
    let f = 0.25 * (c.cxx - c.cyy);

    let out_of_range = |x: f64| x < -POSITIVITY_TOL;
    if out_of_range(a) || out_of_range(b) || out_of_range(d) {
        return Err(Error::Unphysical {
            what: "positivity of the ground-state populations",
            detail: format!("a = {a}, b = {b}, d = {d}"),
        });
    }
    if f * f > a * d + POSITIVITY_TOL || z.abs() > b + POSITIVITY_TOL {
        return Err(Error::Unphysical {
            what: "positivity of the ground-state coherences",
            detail: format!("a = {a}, b = {b}, d = {d}, z = {z}, f = {f}"),
        });
    }
    // Rounding inside the tolerance band is pulled back onto the boundary so
    // that the stricter XState check applies to a physical matrix.
    let (a, b, d) = (a.max(0.0), b.max(0.0), d.max(0.0));
    let z = z.clamp(-b, b);
    let f_max = (a * d).sqrt();
    let f = f.clamp(-f_max, f_max);
    XState::new(a, b, d, z, f)
}

/// Correlators and the assembled state for one `(lambda, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub params: ModelParams,
    pub correlators: GroundStateCorrelators,
    pub state: XState,
}

impl GroundState {
    pub fn compute(params: &ModelParams, spec: &QuadratureSpec) -> Result<Self> {
        let correlators = correlators(params, spec)?;
        let state = assemble(&correlators)?;
        Ok(Self {
            params: *params,
            correlators,
            state,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::spectrum;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion(0.0, 1.234), 1.0);
        assert!(dispersion(1.0, PI) < 1e-15);
        assert!((dispersion(0.5, PI / 2.0) - 1.25f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn magnetization_limits() {
        assert!((magnetization(0.0, &spec()).unwrap() + 1.0).abs() < 1e-14);
        assert!((magnetization(1.0, &spec()).unwrap() + 2.0 / PI).abs() < 1e-9);
    }

    #[test]
    fn g_coefficients_at_zero_coupling() {
        assert!((g_coefficient(0.0, 0, &spec()).unwrap() - 1.0).abs() < 1e-14);
        for r in [-3, -1, 1, 2, 5] {
            assert!(
                g_coefficient(0.0, r, &spec()).unwrap().abs() < 1e-12,
                "r = {r}"
            );
        }
    }

    #[test]
    fn g0_is_minus_magnetization() {
        for lambda in [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
            let g0 = g_coefficient(lambda, 0, &spec()).unwrap();
            let m = magnetization(lambda, &spec()).unwrap();
            assert!((g0 + m).abs() < 1e-9, "lambda = {lambda}");
        }
    }

    #[test]
    fn zero_coupling_correlators() {
        let c = correlators(&ModelParams::new(0.0, 1).unwrap(), &spec()).unwrap();
        assert!((c.sz + 1.0).abs() < 1e-14);
        assert!(c.cxx.abs() < 1e-12 && c.cyy.abs() < 1e-12);
        assert!((c.czz - 1.0).abs() < 1e-12);
        let s = reduced_density(&ModelParams::new(0.0, 1).unwrap(), &spec()).unwrap();
        for (x, y) in s.elements().iter().zip([0.0, 0.0, 1.0, 0.0, 0.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn nearest_neighbour_determinants_are_bare_coefficients() {
        let c = correlators(&ModelParams::new(0.5, 1).unwrap(), &spec()).unwrap();
        assert_eq!(c.cxx, g_coefficient(0.5, -1, &spec()).unwrap());
        assert_eq!(c.cyy, g_coefficient(0.5, 1, &spec()).unwrap());
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ModelParams::new(-0.1, 1).is_err());
        assert!(ModelParams::new(0.5, 0).is_err());
        assert!(ModelParams::new(f64::NAN, 1).is_err());
    }

    #[test]
    fn states_are_physical_on_grid() {
        for lambda in [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
            for r in 1..=3 {
                let gs =
                    GroundState::compute(&ModelParams::new(lambda, r).unwrap(), &spec()).unwrap();
                let c = gs.correlators;
                for v in [c.sz, c.cxx, c.cyy, c.czz] {
                    assert!(v.abs() <= 1.0 + 1e-12);
                }
                let sp = spectrum(&gs.state);
                assert!(sp.min() >= -1e-9, "lambda {lambda} r {r}: {sp:?}");
                assert!((sp.sum() - 1.0).abs() < 1e-9);
                let s = gs.state;
                assert!((s.a() + s.d() + 2.0 * s.b() - 1.0).abs() < 1e-12);
            }
        }
    }
}
