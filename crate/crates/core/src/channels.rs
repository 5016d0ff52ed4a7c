//! Local Markovian channels acting identically and independently on both
//! qubits, `rho -> sum_{mu,nu} (E_mu (x) E_nu) rho (E_mu (x) E_nu)^dagger`.
//!
//! Evolution runs on a general complex 4x4 matrix; [`project_xstate`]
//! narrows the result back to an [`XState`] and fails loudly if a channel
//! ever leaves the X pattern.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::correlations::XState;
use crate::{Error, Result};

type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    AmplitudeDamping,
    /// Also covers phase damping, whose quantum operation is the same map.
    PhaseFlip,
    BitFlip,
    BitPhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::PhaseFlip => "phase-flip",
            ChannelKind::BitFlip => "bit-flip",
            ChannelKind::BitPhaseFlip => "bit-phase-flip",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        match key.as_str() {
            "amplitude-damping" | "ad" => Ok(ChannelKind::AmplitudeDamping),
            "phase-flip" | "pf" | "phase-damping" | "dephasing" => Ok(ChannelKind::PhaseFlip),
            "bit-flip" | "bf" => Ok(ChannelKind::BitFlip),
            "bit-phase-flip" | "bpf" => Ok(ChannelKind::BitPhaseFlip),
            _ => Err(Error::UnknownChannel(s.to_string())),
        }
    }
}

/// `p = 1 - exp(-gamma t)`.
pub fn parametrized_time(gamma: f64, t: f64) -> f64 {
    -(-gamma * t).exp_m1()
}

/// Single-qubit Kraus operators, written in the `{|0>, |1>}` basis with
/// `|1>` the excited state.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    pub kind: ChannelKind,
    pub p: f64,
    pub operators: Vec<Matrix2<C64>>,
}

impl KrausSet {
    /// `sum_k E_k^dagger E_k`.
    pub fn completeness(&self) -> Matrix2<C64> {
        self.operators.iter().map(|e| e.adjoint() * e).sum()
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidDecoherence(p))
    }
}

pub fn kraus_set(kind: ChannelKind, p: f64) -> Result<KrausSet> {
    check_p(p)?;
    let re = |x: f64| C64::new(x, 0.0);
    let zero = re(0.0);
    let operators = match kind {
        ChannelKind::AmplitudeDamping => {
            let q = 1.0 - p;
            vec![
                Matrix2::new(re(1.0), zero, zero, re(q.sqrt())),
                Matrix2::new(zero, re(p.sqrt()), zero, zero),
            ]
        }
        flip => {
            let keep = (1.0 - 0.5 * p).sqrt();
            let s = (0.5 * p).sqrt();
            let pauli = match flip {
                ChannelKind::BitFlip => Matrix2::new(zero, re(s), re(s), zero),
                ChannelKind::PhaseFlip => Matrix2::new(re(s), zero, zero, re(-s)),
                ChannelKind::BitPhaseFlip => {
                    Matrix2::new(zero, C64::new(0.0, -s), C64::new(0.0, s), zero)
                }
                ChannelKind::AmplitudeDamping => unreachable!(),
            };
            vec![Matrix2::from_diagonal_element(re(keep)), pauli]
        }
    };
    Ok(KrausSet { kind, p, operators })
}

/// A two-qubit density matrix in the `{|11>, |10>, |01>, |00>}` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(pub Matrix4<C64>);

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const EIGEN_TOL: f64 = 1e-9;

impl DensityMatrix4 {
    pub fn from_xstate(s: &XState) -> Self {
        Self(s.to_matrix())
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let herm = (self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        let mut e: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        e.sort_by(f64::total_cmp);
        [e[0], e[1], e[2], e[3]]
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::Unphysical {
                what: "hermiticity",
                detail: format!("max |rho - rho^dagger| = {defect:e}"),
            });
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Unphysical {
                what: "unit trace",
                detail: format!("trace = {tr}"),
            });
        }
        let min = self.eigenvalues()[0];
        if min < -EIGEN_TOL {
            return Err(Error::Unphysical {
                what: "positivity",
                detail: format!("smallest eigenvalue {min:e}"),
            });
        }
        Ok(())
    }
}

/// Reorders a `{|0>, |1>}` operator into `{|1>, |0>}` so that its Kronecker
/// products line up with the `{|11>, |10>, |01>, |00>}` basis.
fn excited_first(m: &Matrix2<C64>) -> Matrix2<C64> {
    Matrix2::new(m[(1, 1)], m[(1, 0)], m[(0, 1)], m[(0, 0)])
}

/// Applies the channel to both qubits of an arbitrary two-qubit matrix.
pub fn evolve_matrix(rho: &DensityMatrix4, kind: ChannelKind, p: f64) -> Result<DensityMatrix4> {
    let set = kraus_set(kind, p)?;
    let local: Vec<Matrix2<C64>> = set.operators.iter().map(excited_first).collect();
    let mut out = Matrix4::<C64>::zeros();
    for e_mu in &local {
        for e_nu in &local {
            let e = e_mu.kronecker(e_nu);
            out += e * rho.0 * e.adjoint();
        }
    }
    let out = DensityMatrix4(out);
    out.validate()?;
    Ok(out)
}

pub fn evolve_pair(initial: &XState, kind: ChannelKind, p: f64) -> Result<DensityMatrix4> {
    evolve_matrix(&DensityMatrix4::from_xstate(initial), kind, p)
}

/// Indices that must vanish in an X-state.
const OFF_PATTERN: [(usize, usize); 8] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (2, 0),
    (1, 3),
    (3, 1),
    (2, 3),
    (3, 2),
];

/// Extracts `(a, b, d, z, f)` after checking that the matrix is real, has
/// the X pattern and equal inner populations, all within `tol`.
pub fn project_xstate(m: &DensityMatrix4, tol: f64) -> Result<XState> {
    let rho = &m.0;
    for &(i, j) in &OFF_PATTERN {
        if rho[(i, j)].norm() >= tol {
            return Err(Error::NotXForm {
                row: i,
                col: j,
                value: rho[(i, j)].to_string(),
            });
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            if rho[(i, j)].im.abs() >= tol {
                return Err(Error::NotXForm {
                    row: i,
                    col: j,
                    value: format!("{} (imaginary part)", rho[(i, j)]),
                });
            }
        }
    }
    let (b1, b2) = (rho[(1, 1)].re, rho[(2, 2)].re);
    if (b1 - b2).abs() >= tol {
        return Err(Error::NotXForm {
            row: 2,
            col: 2,
            value: format!("{b2} differs from ({}, {}) = {b1}", 1, 1),
        });
    }
    for (i, j) in [(0, 3), (1, 2)] {
        if (rho[(i, j)].re - rho[(j, i)].re).abs() >= tol {
            return Err(Error::NotXForm {
                row: j,
                col: i,
                value: format!("{} is not symmetric with ({i}, {j})", rho[(j, i)]),
            });
        }
    }
    XState::new(
        rho[(0, 0)].re,
        0.5 * (b1 + b2),
        rho[(3, 3)].re,
        rho[(1, 2)].re,
        rho[(0, 3)].re,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> XState {
        XState::new(0.1, 0.2, 0.5, 0.15, -0.2).unwrap()
    }

    fn close(x: &XState, y: &XState, tol: f64) -> bool {
        x.elements()
            .iter()
            .zip(y.elements())
            .all(|(u, v)| (u - v).abs() < tol)
    }

    #[test]
    fn parametrized_time_examples() {
        assert_eq!(parametrized_time(1.0, 0.0), 0.0);
        assert!((parametrized_time(1.0, std::f64::consts::LN_2) - 0.5).abs() < 1e-15);
        assert_eq!(parametrized_time(2.0, 1e6), 1.0);
    }

    #[test]
    fn channel_names_and_aliases() {
        for kind in ChannelKind::ALL {
            assert_eq!(kind.name().parse::<ChannelKind>().unwrap(), kind);
        }
        assert_eq!(
            "phase-damping".parse::<ChannelKind>().unwrap(),
            ChannelKind::PhaseFlip
        );
        assert_eq!(
            "Bit_Phase_Flip".parse::<ChannelKind>().unwrap(),
            ChannelKind::BitPhaseFlip
        );
        assert!("depolarizing".parse::<ChannelKind>().is_err());
    }

    #[test]
    fn identity_at_zero() {
        for kind in ChannelKind::ALL {
            let set = kraus_set(kind, 0.0).unwrap();
            assert_eq!(set.operators[0], Matrix2::identity());
            assert_eq!(set.operators[1], Matrix2::zeros());
        }
    }

    #[test]
    fn amplitude_damping_at_full_decay() {
        let set = kraus_set(ChannelKind::AmplitudeDamping, 1.0).unwrap();
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        assert_eq!(set.operators[0], Matrix2::new(one, zero, zero, zero));
        assert_eq!(set.operators[1], Matrix2::new(zero, one, zero, zero));
    }

    #[test]
    fn completeness_on_grid() {
        for kind in ChannelKind::ALL {
            for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let defect = kraus_set(kind, p).unwrap().completeness() - Matrix2::identity();
                assert!(defect.iter().all(|c| c.norm() < 1e-12), "{kind} p={p}");
            }
        }
    }

    #[test]
    fn rejects_p_outside_unit_interval() {
        assert!(matches!(
            kraus_set(ChannelKind::BitFlip, 1.5),
            Err(Error::InvalidDecoherence(_))
        ));
        assert!(kraus_set(ChannelKind::PhaseFlip, -1e-3).is_err());
        assert!(evolve_pair(&sample(), ChannelKind::PhaseFlip, f64::NAN).is_err());
    }

    #[test]
    fn zero_time_is_identity() {
        for kind in ChannelKind::ALL {
            let out = evolve_pair(&sample(), kind, 0.0).unwrap();
            assert_eq!(out, DensityMatrix4::from_xstate(&sample()));
        }
    }

    #[test]
    fn amplitude_damping_drives_to_ground() {
        let out = project_xstate(
            &evolve_pair(&sample(), ChannelKind::AmplitudeDamping, 1.0).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!(close(
            &out,
            &XState::new(0.0, 0.0, 1.0, 0.0, 0.0).unwrap(),
            1e-15
        ));
    }

    #[test]
    fn bit_flip_full_decay_by_hand() {
        // Each qubit ends up in the 50/50 mixture of rho and X rho X; the four
        // Kraus terms average rho, X1 rho X1, X2 rho X2 and X1X2 rho X1X2.
        let s = sample();
        let (z, f) = (s.z(), s.f());
        let out =
            project_xstate(&evolve_pair(&s, ChannelKind::BitFlip, 1.0).unwrap(), 1e-12).unwrap();
        let expected = XState::new(0.25, 0.25, 0.25, 0.5 * (z + f), 0.5 * (z + f)).unwrap();
        assert!(close(&out, &expected, 1e-14), "{out:?}");
    }

    #[test]
    fn projection_round_trip() {
        let s = sample();
        assert_eq!(
            project_xstate(&DensityMatrix4::from_xstate(&s), 1e-12).unwrap(),
            s
        );
    }

    #[test]
    fn projection_rejects_pattern_violation() {
        let mut m = DensityMatrix4::from_xstate(&sample());
        m.0[(0, 1)] = C64::new(1e-3, 0.0);
        m.0[(1, 0)] = C64::new(1e-3, 0.0);
        match project_xstate(&m, 1e-10) {
            Err(Error::NotXForm { row, col, .. }) => assert_eq!((row, col), (0, 1)),
            other => panic!("{other:?}"),
        }
        let mut m = DensityMatrix4::from_xstate(&sample());
        m.0[(1, 1)] += C64::new(1e-6, 0.0);
        m.0[(2, 2)] -= C64::new(1e-6, 0.0);
        assert!(project_xstate(&m, 1e-10).is_err());
    }

    #[test]
    fn phase_flip_keeps_diagonal() {
        let s = sample();
        for p in [0.1, 0.4, 0.9, 1.0] {
            let out = project_xstate(&evolve_pair(&s, ChannelKind::PhaseFlip, p).unwrap(), 1e-12)
                .unwrap();
            assert!((out.a() - s.a()).abs() < 1e-12);
            assert!((out.b() - s.b()).abs() < 1e-12);
            assert!((out.d() - s.d()).abs() < 1e-12);
            let shrink = (1.0 - p).powi(2);
            assert!((out.z() - shrink * s.z()).abs() < 1e-12);
            assert!((out.f() - shrink * s.f()).abs() < 1e-12);
        }
    }

    #[test]
    fn flip_channels_mix_populations_toward_quarter() {
        let s = XState::new(0.05, 0.1, 0.75, 0.08, 0.1).unwrap();
        for kind in [ChannelKind::BitFlip, ChannelKind::BitPhaseFlip] {
            let mut last_gap = f64::INFINITY;
            for k in 1..=10 {
                let p = k as f64 / 10.0;
                let out = project_xstate(&evolve_pair(&s, kind, p).unwrap(), 1e-12).unwrap();
                let gap = (out.a() - 0.25).abs() + (out.d() - 0.25).abs();
                assert!(gap < last_gap, "{kind} p={p}");
                last_gap = gap;
            }
            let end = project_xstate(&evolve_pair(&s, kind, 1.0).unwrap(), 1e-12).unwrap();
            assert!((end.a() - end.d()).abs() < 1e-12);
        }
    }

    #[test]
    fn semigroup_in_time() {
        let gamma = 0.7;
        let (t1, t2) = (0.4, 1.3);
        let rho = DensityMatrix4::from_xstate(&sample());
        for kind in ChannelKind::ALL {
            let stepped = evolve_matrix(
                &evolve_matrix(&rho, kind, parametrized_time(gamma, t1)).unwrap(),
                kind,
                parametrized_time(gamma, t2),
            )
            .unwrap();
            let direct = evolve_matrix(&rho, kind, parametrized_time(gamma, t1 + t2)).unwrap();
            let diff = (stepped.0 - direct.0)
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10, "{kind}: {diff:e}");
        }
    }

    #[test]
    fn validate_flags_unphysical_matrices() {
        let mut m = DensityMatrix4::from_xstate(&sample());
        m.0[(0, 0)] += C64::new(0.1, 0.0);
        assert!(matches!(
            m.validate(),
            Err(Error::Unphysical {
                what: "unit trace",
                ..
            })
        ));
        let mut m = DensityMatrix4::from_xstate(&sample());
        m.0[(0, 3)] = C64::new(0.0, 0.2);
        assert!(matches!(
            m.validate(),
            Err(Error::Unphysical {
                what: "hermiticity",
                ..
            })
        ));
        let mut m = DensityMatrix4::from_xstate(&XState::new(0.5, 0.0, 0.5, 0.0, 0.0).unwrap());
        m.0[(0, 3)] = C64::new(0.9, 0.0);
        m.0[(3, 0)] = C64::new(0.9, 0.0);
        assert!(matches!(
            m.validate(),
            Err(Error::Unphysical {
                what: "positivity",
                ..
            })
        ));
    }
}
