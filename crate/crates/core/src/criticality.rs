//! Decay curves in the decoherence parameter `p` and the features that
//! mark the critical point of the chain.
//!
//! * `p_sc`: sudden change, where the optimal measurement on qubit B
//!   changes direction and the decay rates of `C` and `Q` kink.
//! * `p_cr1`, `p_cr2`: points on either side of `p_sc` with `C = Q = I/2`.
//!
//! Their derivatives with respect to `lambda` grow without bound as the
//! coupling approaches 1 from below.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{evolve_pair, project_xstate, ChannelKind};
use crate::correlations::{
    coefficients, discord, Branch, CorrelationBreakdown, MeasurementAxis, XState,
};
use crate::ground_state::{GroundState, ModelParams};
use crate::numerics::{
    scan_nodes, try_central_difference, try_find_root, QuadratureSpec, RootBracket,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub quadrature: QuadratureSpec,
    pub pair_distance: u32,
    pub root_tol: f64,
    /// Spacing of the pre-scan grid in `p`.
    pub scan_step: f64,
    /// Tolerance for narrowing channel output back to an X-state.
    pub xform_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            pair_distance: 1,
            root_tol: 1e-10,
            scan_step: 1e-3,
            xform_tol: 1e-10,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        for (name, v) in [
            ("root tolerance", self.root_tol),
            ("scan step", self.scan_step),
            ("X-form tolerance", self.xform_tol),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "{name} must be positive, got {v}"
                )));
            }
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
pub struct PSweepRow {
    pub p: f64,
    pub mutual: f64,
    pub classical: f64,
    pub quantum: f64,
    pub branch: Branch,
}

impl From<(f64, &CorrelationBreakdown)> for PSweepRow {
    fn from((p, br): (f64, &CorrelationBreakdown)) -> Self {
        Self {
            p,
            mutual: br.mutual,
            classical: br.classical,
            quantum: br.quantum,
            branch: br.branch,
        }
    }
}

/// A fixed initial state followed through one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trajectory {
    pub initial: XState,
    pub kind: ChannelKind,
    xform_tol: f64,
}

impl Trajectory {
    pub fn new(initial: XState, kind: ChannelKind) -> Self {
        Self {
            initial,
            kind,
            xform_tol: SolverSettings::default().xform_tol,
        }
    }

    /// Trajectory starting from the ground-state pair at coupling `lambda`.
    pub fn from_ground_state(
        lambda: f64,
        kind: ChannelKind,
        settings: &SolverSettings,
    ) -> Result<Self> {
        settings.validate()?;
        let params = ModelParams::new(lambda, settings.pair_distance)?;
        let gs = GroundState::compute(&params, &settings.quadrature)?;
        Ok(Self {
            initial: gs.state,
            kind,
            xform_tol: settings.xform_tol,
        })
    }

    pub fn state_at(&self, p: f64) -> Result<XState> {
        project_xstate(&evolve_pair(&self.initial, self.kind, p)?, self.xform_tol)
    }

    pub fn breakdown_at(&self, p: f64) -> Result<CorrelationBreakdown> {
        discord(&self.state_at(p)?)
    }

    pub fn sweep(&self, p_grid: &[f64]) -> Result<Vec<PSweepRow>> {
        validate_p_grid(p_grid)?;
        p_grid
            .iter()
            .map(|&p| Ok(PSweepRow::from((p, &self.breakdown_at(p)?))))
            .collect()
    }

    /// First change of the optimal measurement axis on `(0, 1)`, refined by
    /// bisection. `None` when the axis never changes.
    pub fn sudden_change(&self, settings: &SolverSettings) -> Result<Option<f64>> {
        let nodes = scan_nodes(0.0, 1.0 - settings.scan_step, settings.scan_step);
        let mut prev = (nodes[0], self.breakdown_at(nodes[0])?.axis);
        for &p in &nodes[1..] {
            let axis = self.breakdown_at(p)?.axis;
            if axis != prev.1 {
                let switching = |q: f64| -> Result<f64> {
                    let s = self.state_at(q)?;
                    if axis == MeasurementAxis::Z || prev.1 == MeasurementAxis::Z {
                        let br = discord(&s)?;
                        Ok(br.q1 - br.q2)
                    } else {
                        let c = coefficients(&s);
                        Ok(c.c1.abs() - c.c2.abs())
                    }
                };
                let bracket = RootBracket::new(prev.0, p, settings.root_tol)?;
                return try_find_root(switching, bracket).map(Some);
            }
            prev = (p, axis);
        }
        Ok(None)
    }

    /// `Q(p) - I(p)/2`, zero exactly where `C = Q`.
    fn balance(&self, p: f64) -> Result<f64> {
        let br = self.breakdown_at(p)?;
        Ok(br.quantum - 0.5 * br.mutual)
    }

    fn first_balance_root(&self, nodes: &[f64], settings: &SolverSettings) -> Result<Option<f64>> {
        if nodes.len() < 2 {
            return Ok(None);
        }
        let mut prev = (nodes[0], self.balance(nodes[0])?);
        for &p in &nodes[1..] {
            let value = self.balance(p)?;
            if prev.1 == 0.0 {
                return Ok(Some(prev.0));
            }
            if prev.1.signum() != value.signum() {
                let bracket = RootBracket::new(prev.0, p, settings.root_tol)?;
                return try_find_root(|q| self.balance(q), bracket).map(Some);
            }
            prev = (p, value);
        }
        Ok(None)
    }

    /// Points where `C = Q = I/2`: the first on the scan grid below `p_sc`
    /// and the first above it. The node at `p_sc` itself is excluded so that
    /// a touch without crossing is not reported.
    pub fn crossings(
        &self,
        p_sc: Option<f64>,
        settings: &SolverSettings,
    ) -> Result<(Option<f64>, Option<f64>)> {
        let Some(p_sc) = p_sc else {
            return Ok((None, None));
        };
        let step = settings.scan_step;
        let margin = step * 1e-6;
        let below: Vec<f64> = scan_nodes(0.0, 1.0, step)
            .into_iter()
            .take_while(|&p| p < p_sc - margin)
            .collect();
        let above: Vec<f64> = scan_nodes(0.0, 1.0, step)
            .into_iter()
            .filter(|&p| p > p_sc + margin)
            .collect();
        Ok((
            self.first_balance_root(&below, settings)?,
            self.first_balance_root(&above, settings)?,
        ))
    }

    pub fn signature(&self, lambda: f64, settings: &SolverSettings) -> Result<CriticalSignature> {
        let p_sc = self.sudden_change(settings)?;
        let (p_cr1, p_cr2) = self.crossings(p_sc, settings)?;
        Ok(CriticalSignature::new(lambda, p_sc, p_cr1, p_cr2))
    }
}

fn validate_p_grid(p_grid: &[f64]) -> Result<()> {
    if p_grid.is_empty() {
        return Err(Error::InvalidGrid("p grid is empty".into()));
    }
    if let Some(&p) = p_grid.iter().find(|&&p| !(0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidGrid(format!("p = {p} is outside [0, 1]")));
    }
    if p_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid("p grid must be sorted".into()));
    }
    Ok(())
}

fn validate_lambda_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("lambda grid is empty".into()));
    }
    if let Some(&l) = grid.iter().find(|&&l| !(l > 0.0 && l < 1.0)) {
        return Err(Error::InvalidGrid(format!(
            "lambda = {l} is outside (0, 1)"
        )));
    }
    Ok(())
}

pub fn sweep_p(
    lambda: f64,
    kind: ChannelKind,
    p_grid: &[f64],
    settings: &SolverSettings,
) -> Result<Vec<PSweepRow>> {
    validate_p_grid(p_grid)?;
    Trajectory::from_ground_state(lambda, kind, settings)?.sweep(p_grid)
}

/// Sudden-change point for the channels that show one (phase-flip and
/// bit-phase-flip); `None` for the others.
pub fn find_p_sc(lambda: f64, kind: ChannelKind, settings: &SolverSettings) -> Result<Option<f64>> {
    match kind {
        ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => {
            Trajectory::from_ground_state(lambda, kind, settings)?.sudden_change(settings)
        }
        ChannelKind::AmplitudeDamping | ChannelKind::BitFlip => Ok(None),
    }
}

/// Crossing points under the phase-flip channel.
pub fn find_crossings(
    lambda: f64,
    settings: &SolverSettings,
) -> Result<(Option<f64>, Option<f64>)> {
    let t = Trajectory::from_ground_state(lambda, ChannelKind::PhaseFlip, settings)?;
    let p_sc = t.sudden_change(settings)?;
    t.crossings(p_sc, settings)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSignature {
    pub lambda: f64,
    pub p_sc: Option<f64>,
    pub p_cr1: Option<f64>,
    pub p_cr2: Option<f64>,
    pub delta_p_cr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CriticalSignature {
    pub fn new(lambda: f64, p_sc: Option<f64>, p_cr1: Option<f64>, p_cr2: Option<f64>) -> Self {
        let delta_p_cr = match (p_cr1, p_cr2) {
            (Some(lo), Some(hi)) => Some(hi - lo),
            _ => None,
        };
        Self {
            lambda,
            p_sc,
            p_cr1,
            p_cr2,
            delta_p_cr,
            diagnostic: None,
        }
    }

    fn failed(lambda: f64, err: &Error) -> Self {
        Self {
            diagnostic: Some(err.to_string()),
            ..Self::new(lambda, None, None, None)
        }
    }
}

/// Signature at one coupling. Channels other than phase-flip and
/// bit-phase-flip have no sudden change and therefore no crossings.
pub fn signature(
    lambda: f64,
    kind: ChannelKind,
    settings: &SolverSettings,
) -> Result<CriticalSignature> {
    match kind {
        ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => {
            Trajectory::from_ground_state(lambda, kind, settings)?.signature(lambda, settings)
        }
        ChannelKind::AmplitudeDamping | ChannelKind::BitFlip => {
            Ok(CriticalSignature::new(lambda, None, None, None))
        }
    }
}

fn signature_or_diagnostic(
    lambda: f64,
    kind: ChannelKind,
    settings: &SolverSettings,
) -> CriticalSignature {
    signature(lambda, kind, settings).unwrap_or_else(|e| CriticalSignature::failed(lambda, &e))
}

/// One signature per grid point, evaluated in parallel and returned in grid
/// order. Per-point failures become absent fields with a diagnostic.
pub fn sweep_lambda(
    lambda_grid: &[f64],
    kind: ChannelKind,
    settings: &SolverSettings,
) -> Result<Vec<CriticalSignature>> {
    validate_lambda_grid(lambda_grid)?;
    settings.validate()?;
    Ok(lambda_grid
        .par_iter()
        .map(|&lambda| signature_or_diagnostic(lambda, kind, settings))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignatureQuantity {
    PSc,
    PCr1,
    PCr2,
    DeltaPCr,
}

impl SignatureQuantity {
    pub const ALL: [SignatureQuantity; 4] = [
        SignatureQuantity::PSc,
        SignatureQuantity::PCr1,
        SignatureQuantity::PCr2,
        SignatureQuantity::DeltaPCr,
    ];

    pub fn of(&self, s: &CriticalSignature) -> Option<f64> {
        match self {
            SignatureQuantity::PSc => s.p_sc,
            SignatureQuantity::PCr1 => s.p_cr1,
            SignatureQuantity::PCr2 => s.p_cr2,
            SignatureQuantity::DeltaPCr => s.delta_p_cr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeEstimate {
    pub lambda: f64,
    pub quantity: SignatureQuantity,
    pub value: Option<f64>,
    pub step: f64,
}

/// Shrinks `h` so that `lambda +- h` stays inside `(0, 1)`.
pub fn effective_step(lambda: f64, h: f64) -> f64 {
    h.min(0.5 * (1.0 - lambda)).min(0.5 * lambda)
}

fn derivative(
    quantity: SignatureQuantity,
    lambda: f64,
    step: f64,
    kind: ChannelKind,
    settings: &SolverSettings,
) -> Result<Option<f64>> {
    let value = try_central_difference::<_, Error>(
        |x| {
            Ok(quantity
                .of(&signature(x, kind, settings)?)
                .unwrap_or(f64::NAN))
        },
        lambda,
        step,
    )?;
    Ok(value.is_finite().then_some(value))
}

/// Central-difference derivative of one signature quantity at each grid
/// point, with the step clamped by [`effective_step`].
pub fn derivative_scan(
    quantity: SignatureQuantity,
    lambda_grid: &[f64],
    h: f64,
    kind: ChannelKind,
    settings: &SolverSettings,
) -> Result<Vec<DerivativeEstimate>> {
    validate_lambda_grid(lambda_grid)?;
    settings.validate()?;
    if !(h > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "derivative step must be positive, got {h}"
        )));
    }
    lambda_grid
        .par_iter()
        .map(|&lambda| {
            let step = effective_step(lambda, h);
            Ok(DerivativeEstimate {
                lambda,
                quantity,
                value: derivative(quantity, lambda, step, kind, settings)?,
                step,
            })
        })
        .collect()
}

/// A signature together with the derivatives of all four quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalRow {
    pub signature: CriticalSignature,
    pub d_p_sc: Option<f64>,
    pub d_p_cr1: Option<f64>,
    pub d_p_cr2: Option<f64>,
    pub d_delta: Option<f64>,
    pub step: f64,
}

/// Signatures at `lambda` and `lambda +- h` for every grid point, combined
/// into derivative estimates. Each coupling needs three signatures, so this
/// is cheaper than four separate [`derivative_scan`] calls.
pub fn critical_table(
    lambda_grid: &[f64],
    kind: ChannelKind,
    h: f64,
    settings: &SolverSettings,
) -> Result<Vec<CriticalRow>> {
    validate_lambda_grid(lambda_grid)?;
    settings.validate()?;
    if !(h > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "derivative step must be positive, got {h}"
        )));
    }
    Ok(lambda_grid
        .par_iter()
        .map(|&lambda| {
            let step = effective_step(lambda, h);
            let center = signature_or_diagnostic(lambda, kind, settings);
            let lo = signature_or_diagnostic(lambda - step, kind, settings);
            let hi = signature_or_diagnostic(lambda + step, kind, settings);
            let d = |q: SignatureQuantity| match (q.of(&lo), q.of(&hi)) {
                (Some(a), Some(b)) => Some((b - a) / (2.0 * step)),
                _ => None,
            };
            CriticalRow {
                d_p_sc: d(SignatureQuantity::PSc),
                d_p_cr1: d(SignatureQuantity::PCr1),
                d_p_cr2: d(SignatureQuantity::PCr2),
                d_delta: d(SignatureQuantity::DeltaPCr),
                signature: center,
                step,
            }
        })
        .collect())
}

/// `lo, ..., hi` with `count` evenly spaced points (`count == 1` gives `[lo]`).
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| {
                if k == count - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}
