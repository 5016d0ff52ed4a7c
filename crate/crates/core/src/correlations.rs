//! Correlation measures for the real two-qubit X-states
//!
//! ```text
//!        | a  0  0  f |
//!  rho = | 0  b  z  0 |     basis {|11>, |10>, |01>, |00>}
//!        | 0  z  b  0 |
//!        | f  0  0  d |
//! ```
//!
//! Mutual information, classical correlation and discord are all reported
//! in bits. Discord uses the closed-form minimum over the two candidate
//! optimal measurements; [`discord_oracle`] recomputes it by brute-force
//! maximization over projective measurements on qubit B.

use nalgebra::{Complex, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const POSITIVITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-9;
/// Eigenvalues down to `-ENTROPY_DUST` are treated as rounding noise.
pub const ENTROPY_DUST: f64 = 1e-9;

/// Real five-parameter X-state. Construction validates positivity and
/// normalization, so every `XState` in circulation is a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawXState")]
pub struct XState {
    a: f64,
    b: f64,
    d: f64,
    z: f64,
    f: f64,
}

#[derive(Deserialize)]
struct RawXState {
    a: f64,
    b: f64,
    d: f64,
    z: f64,
    f: f64,
}

impl TryFrom<RawXState> for XState {
    type Error = Error;

    fn try_from(raw: RawXState) -> Result<Self> {
        XState::new(raw.a, raw.b, raw.d, raw.z, raw.f)
    }
}

impl XState {
    pub fn new(a: f64, b: f64, d: f64, z: f64, f: f64) -> Result<Self> {
        let state = Self { a, b, d, z, f };
        state.validate()?;
        Ok(state)
    }

    /// `I/4`.
    pub fn maximally_mixed() -> Self {
        Self {
            a: 0.25,
            b: 0.25,
            d: 0.25,
            z: 0.0,
            f: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a, b, d, z, f } = *self;
        if ![a, b, d, z, f].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidState(format!(
                "non-finite element in {self:?}"
            )));
        }
        if a < -POSITIVITY_TOL || b < -POSITIVITY_TOL || d < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "negative population: a = {a}, b = {b}, d = {d}"
            )));
        }
        let trace = a + d + 2.0 * b;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace a + d + 2b = {trace}")));
        }
        if f * f > a * d + POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "outer block not positive: f^2 = {} > ad = {}",
                f * f,
                a * d
            )));
        }
        if z.abs() > b + POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "inner block not positive: |z| = {} > b = {b}",
                z.abs()
            )));
        }
        Ok(())
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn z(&self) -> f64 {
        self.z
    }
    pub fn f(&self) -> f64 {
        self.f
    }

    /// `(a, b, d, z, f)`.
    pub fn elements(&self) -> [f64; 5] {
        [self.a, self.b, self.d, self.z, self.f]
    }

    /// The global spin flip `|0> <-> |1>` on both qubits (swaps a and d).
    pub fn spin_flipped(&self) -> Self {
        Self {
            a: self.d,
            d: self.a,
            ..*self
        }
    }

    /// Dense 4x4 matrix in the `{|11>, |10>, |01>, |00>}` basis.
    pub fn to_matrix(&self) -> Matrix4<Complex<f64>> {
        let c = |x: f64| Complex::new(x, 0.0);
        let zero = c(0.0);
        Matrix4::new(
            c(self.a),
            zero,
            zero,
            c(self.f),
            zero,
            c(self.b),
            c(self.z),
            zero,
            zero,
            c(self.z),
            c(self.b),
            zero,
            c(self.f),
            zero,
            zero,
            c(self.d),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Eigenvalues of an X-state, in the closed-form order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub lam0: f64,
    pub lam1: f64,
    pub lam2: f64,
    pub lam3: f64,
}

impl Spectrum {
    pub fn values(&self) -> [f64; 4] {
        [self.lam0, self.lam1, self.lam2, self.lam3]
    }

    pub fn sum(&self) -> f64 {
        self.values().iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Which closed-form candidate attained the discord minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Q1,
    Q2,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Q1 => "Q1",
            Branch::Q2 => "Q2",
        })
    }
}

/// Direction of the optimal projective measurement on qubit B.
///
/// `Z` corresponds to branch Q1. Branch Q2 measures in the equatorial plane,
/// along `x` when `|c1| >= |c2|` and along `y` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasurementAxis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationBreakdown {
    pub mutual: f64,
    pub classical: f64,
    pub quantum: f64,
    pub branch: Branch,
    pub axis: MeasurementAxis,
    pub q1: f64,
    pub q2: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub gamma_sq: f64,
}

pub fn coefficients(s: &XState) -> CoefficientVector {
    CoefficientVector {
        c1: 2.0 * s.z + 2.0 * s.f,
        c2: 2.0 * s.z - 2.0 * s.f,
        c3: s.a + s.d - 2.0 * s.b,
        c4: s.a - s.d,
    }
}

pub fn spectrum(s: &XState) -> Spectrum {
    let CoefficientVector { c1, c2, c3, c4 } = coefficients(s);
    let root = (4.0 * c4 * c4 + (c1 - c2) * (c1 - c2)).sqrt();
    Spectrum {
        lam0: 0.25 * ((1.0 + c3) + root),
        lam1: 0.25 * ((1.0 + c3) - root),
        lam2: 0.25 * (1.0 - c3 + c1 + c2),
        lam3: 0.25 * (1.0 - c3 - c1 - c2),
    }
}

fn xlog2x(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`. Entries in `[-1e-9, 0)` are clamped
/// to zero; anything more negative is rejected.
pub fn shannon_entropy_bits(p: &[f64]) -> Result<f64> {
    if let Some(&value) = p.iter().find(|&&v| v < -ENTROPY_DUST || v.is_nan()) {
        return Err(Error::NegativeProbability { value });
    }
    Ok(-p.iter().map(|&v| xlog2x(v.max(0.0))).sum::<f64>())
}

fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -(xlog2x(p) + xlog2x(1.0 - p))
}

/// Entropy of either one-qubit marginal (both are `diag((1 +- c4)/2)`).
pub fn single_qubit_entropy(s: &XState) -> f64 {
    binary_entropy(0.5 * (1.0 + coefficients(s).c4))
}

fn joint_entropy(s: &XState) -> Result<f64> {
    shannon_entropy_bits(&spectrum(s).values())
}

pub fn mutual_information(s: &XState) -> Result<f64> {
    Ok(2.0 * single_qubit_entropy(s) - joint_entropy(s)?)
}

/// `x log2(x / (x + y))` with the `0 log 0` convention.
fn conditional_term(x: f64, y: f64) -> f64 {
    let (x, y) = (x.max(0.0), y.max(0.0));
    if x > 0.0 {
        x * (x / (x + y)).log2()
    } else {
        0.0
    }
}

/// Closed-form discord as `min{Q1, Q2}`; ties resolve to `Q2`.
///
/// Only measurements along z and in the equatorial plane are compared. For
/// some states the optimum sits at an intermediate polar angle and this
/// value exceeds [`discord_oracle`] slightly.
pub fn discord(s: &XState) -> Result<CorrelationBreakdown> {
    s.validate()?;
    let XState { a, b, d, z, f } = *s;
    let coeffs = coefficients(s);
    let s_b = single_qubit_entropy(s);
    let s_ab = joint_entropy(s)?;
    let mutual = 2.0 * s_b - s_ab;

    let q1 = s_b
        - s_ab
        - conditional_term(a, b)
        - conditional_term(b, a)
        - conditional_term(d, b)
        - conditional_term(b, d);

    let gamma_sq = (a - d).powi(2) + 4.0 * (z.abs() + f.abs()).powi(2);
    let gamma = gamma_sq.sqrt();
    let delta_plus = 0.5 * (1.0 + gamma);
    let delta_minus = 0.5 * (1.0 - gamma);
    let q2 = s_b - s_ab - xlog2x(delta_plus.clamp(0.0, 1.0)) - xlog2x(delta_minus.clamp(0.0, 1.0));

    let (branch, quantum) = if q1 < q2 {
        (Branch::Q1, q1)
    } else {
        (Branch::Q2, q2)
    };
    let axis = match branch {
        Branch::Q1 => MeasurementAxis::Z,
        Branch::Q2 if coeffs.c1.abs() >= coeffs.c2.abs() => MeasurementAxis::X,
        Branch::Q2 => MeasurementAxis::Y,
    };

    Ok(CorrelationBreakdown {
        mutual,
        classical: mutual - quantum,
        quantum,
        branch,
        axis,
        q1,
        q2,
        delta_plus,
        delta_minus,
        gamma_sq,
    })
}

/// Classical correlation obtained by measuring B along z, `I - Q1`. Depends
/// only on the populations, so it is constant under pure dephasing.
pub fn z_measured_classical(s: &XState) -> f64 {
    let XState { a, b, d, .. } = *s;
    single_qubit_entropy(s)
        + conditional_term(a, b)
        + conditional_term(b, a)
        + conditional_term(d, b)
        + conditional_term(b, d)
}

type C64 = Complex<f64>;

/// Von Neumann entropy of a 2x2 Hermitian matrix from its closed-form
/// eigenvalues.
fn entropy_2x2(m: &Matrix2<C64>) -> f64 {
    let (p, q) = (m[(0, 0)].re, m[(1, 1)].re);
    let off = m[(0, 1)].norm();
    let mean = 0.5 * (p + q);
    let radius = (0.25 * (p - q) * (p - q) + off * off).sqrt();
    -(xlog2x((mean + radius).max(0.0)) + xlog2x((mean - radius).max(0.0)))
}

fn entropy_hermitian4(m: &Matrix4<C64>) -> f64 {
    let eig = m.symmetric_eigenvalues();
    -eig.iter().map(|&v| xlog2x(v.max(0.0))).sum::<f64>()
}

/// Reverse the basis order so that index `2 * bit_A + bit_B` addresses
/// `|bit_A bit_B>`.
fn to_computational_order(m: &Matrix4<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|i, j| m[(3 - i, 3 - j)])
}

fn partial_trace_b(m: &Matrix4<C64>) -> Matrix2<C64> {
    Matrix2::from_fn(|i, k| m[(2 * i, 2 * k)] + m[(2 * i + 1, 2 * k + 1)])
}

fn partial_trace_a(m: &Matrix4<C64>) -> Matrix2<C64> {
    Matrix2::from_fn(|j, l| m[(j, l)] + m[(2 + j, 2 + l)])
}

struct MeasurementProblem {
    rho: Matrix4<C64>,
}

impl MeasurementProblem {
    /// Conditional entropy `sum_i p_i S(rho_i)` after measuring B along the
    /// Bloch direction `(theta, phi)`. The post-measurement state is
    /// `rho_A|i (x) Pi_i`, so `S(rho_i)` equals the entropy of its A marginal.
    fn conditional_entropy(&self, theta: f64, phi: f64) -> f64 {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let n = [st * cp, st * sp, ct];
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            let half = 0.5 * sign;
            // (I + sign * n.sigma) / 2
            let proj = Matrix2::new(
                C64::new(0.5 + half * n[2], 0.0),
                C64::new(half * n[0], -half * n[1]),
                C64::new(half * n[0], half * n[1]),
                C64::new(0.5 - half * n[2], 0.0),
            );
            let lift = Matrix2::<C64>::identity().kronecker(&proj);
            let post = lift * self.rho * lift;
            let p_i = post.trace().re;
            if p_i > 1e-300 {
                let conditional = partial_trace_b(&post) / C64::new(p_i, 0.0);
                total += p_i * entropy_2x2(&conditional);
            }
        }
        total
    }

    /// Compass search from `(theta, phi)` with initial spacing `step`.
    fn refine(&self, mut theta: f64, mut phi: f64, mut step: f64) -> f64 {
        let mut best = self.conditional_entropy(theta, phi);
        while step > 1e-10 {
            let mut moved = false;
            for (dt, dp) in [
                (1.0, 0.0),
                (-1.0, 0.0),
                (0.0, 1.0),
                (0.0, -1.0),
                (1.0, 1.0),
                (1.0, -1.0),
                (-1.0, 1.0),
                (-1.0, -1.0),
            ] {
                let (t, p) = (theta + dt * step, phi + dp * step);
                let value = self.conditional_entropy(t, p);
                if value < best {
                    best = value;
                    theta = t;
                    phi = p;
                    moved = true;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        best
    }
}

/// Discord by direct maximization of the measured classical correlation
/// over projective measurements on B.
///
/// Directions are scanned on an `n x n` grid with `theta` in `[0, pi]` and
/// `phi` in `[0, pi)`, then the best few cells are polished by compass
/// search. Returns `I - max J`.
pub fn discord_oracle(s: &XState, angular_grid: usize) -> Result<f64> {
    if angular_grid < 64 {
        return Err(Error::InvalidGrid(format!(
            "oracle grid must be at least 64, got {angular_grid}"
        )));
    }
    let rho = to_computational_order(&s.to_matrix());
    let s_a = entropy_2x2(&partial_trace_b(&rho));
    let s_b = entropy_2x2(&partial_trace_a(&rho));
    let mutual = s_a + s_b - entropy_hermitian4(&rho);

    let problem = MeasurementProblem { rho };
    let n = angular_grid;
    let pi = std::f64::consts::PI;
    let d_theta = pi / (n - 1) as f64;
    let d_phi = pi / n as f64;
    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(n * n);
    for i in 0..n {
        let theta = i as f64 * d_theta;
        for j in 0..n {
            let phi = j as f64 * d_phi;
            cells.push((problem.conditional_entropy(theta, phi), theta, phi));
        }
    }
    cells.sort_by(|x, y| x.0.total_cmp(&y.0));

    let min_conditional = cells
        .iter()
        .take(4)
        .map(|&(_, theta, phi)| problem.refine(theta, phi, d_theta.max(d_phi)))
        .fold(f64::INFINITY, f64::min);

    let max_j = s_a - min_conditional;
    Ok(mutual - max_j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn corner() -> XState {
        XState::new(0.0, 0.0, 1.0, 0.0, 0.0).unwrap()
    }

    /// Rejection-sample a valid X-state from a box around the valid region.
    fn sample_state(raw: [f64; 5]) -> Option<XState> {
        let [u, v, w, zs, fs] = raw;
        let total = u + 2.0 * v + w;
        if total <= 0.0 {
            return None;
        }
        let (a, b, d) = (u / total, v / total, w / total);
        let z = zs * b;
        let f = fs * (a * d).sqrt();
        XState::new(a, b, d, z, f).ok()
    }

    fn eigen_oracle(s: &XState) -> Vec<f64> {
        let mut e: Vec<f64> = s
            .to_matrix()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn rejects_invalid_states() {
        assert!(XState::new(0.5, 0.0, 0.5, 0.0, 0.6).is_err());
        assert!(XState::new(0.25, 0.25, 0.25, 0.3, 0.0).is_err());
        assert!(XState::new(0.5, 0.25, 0.5, 0.0, 0.0).is_err());
        assert!(XState::new(-0.1, 0.3, 0.5, 0.0, 0.0).is_err());
        assert!(XState::new(f64::NAN, 0.25, 0.25, 0.0, 0.0).is_err());
        // Deserialization goes through the same check.
        let raw = RawXState {
            a: 0.5,
            b: 0.0,
            d: 0.5,
            z: 0.0,
            f: 0.6,
        };
        assert!(XState::try_from(raw).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let c = coefficients(&corner());
        assert_eq!((c.c1, c.c2, c.c3, c.c4), (0.0, 0.0, 1.0, -1.0));
        let c = coefficients(&XState::maximally_mixed());
        assert_eq!((c.c1, c.c2, c.c3, c.c4), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn spectrum_examples() {
        let mut v = spectrum(&corner()).values();
        v.sort_by(f64::total_cmp);
        assert_eq!(v, [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(spectrum(&XState::maximally_mixed()).values(), [0.25; 4]);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy_bits(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!((shannon_entropy_bits(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-15);
        assert!((shannon_entropy_bits(&[0.25; 4]).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(shannon_entropy_bits(&[1.0, -5e-10]).unwrap(), 0.0);
        assert!(matches!(
            shannon_entropy_bits(&[1.1, -0.1]),
            Err(Error::NegativeProbability { .. })
        ));
    }

    #[test]
    fn single_qubit_entropy_limits() {
        assert!((single_qubit_entropy(&XState::maximally_mixed()) - 1.0).abs() < 1e-15);
        assert_eq!(single_qubit_entropy(&corner()), 0.0);
        assert_eq!(single_qubit_entropy(&corner().spin_flipped()), 0.0);
    }

    #[test]
    fn single_qubit_entropy_matches_partial_trace() {
        let s = XState::new(0.1, 0.2, 0.5, 0.15, -0.2).unwrap();
        let rho = to_computational_order(&s.to_matrix());
        let via_trace = entropy_2x2(&partial_trace_b(&rho));
        assert!((single_qubit_entropy(&s) - via_trace).abs() < 1e-12);
        let via_trace_b = entropy_2x2(&partial_trace_a(&rho));
        assert!((single_qubit_entropy(&s) - via_trace_b).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        assert_eq!(mutual_information(&corner()).unwrap(), 0.0);
        // Eigenvalues {1/4, 1/4, 1/2, 0}: S = 3/2, I = 2 - 3/2.
        let s = XState::new(0.25, 0.25, 0.25, 0.25, 0.0).unwrap();
        let rho = to_computational_order(&s.to_matrix());
        let general = entropy_2x2(&partial_trace_b(&rho)) + entropy_2x2(&partial_trace_a(&rho))
            - entropy_hermitian4(&rho);
        assert!((mutual_information(&s).unwrap() - general).abs() < 1e-12);
        assert!((general - 0.5).abs() < 1e-12);
    }

    #[test]
    fn discord_of_product_state_vanishes() {
        let br = discord(&corner()).unwrap();
        assert_eq!(br.quantum, 0.0);
        assert_eq!(br.classical, 0.0);
        assert!(discord_oracle(&corner(), 64).unwrap().abs() < 1e-6);
    }

    #[test]
    fn discord_of_classically_correlated_state_vanishes() {
        let c1 = 0.3;
        let s = XState::new(0.25, 0.25, 0.25, c1 / 8.0, c1 / 8.0).unwrap();
        let br = discord(&s).unwrap();
        assert!(br.quantum.abs() < 1e-9, "{br:?}");
        assert!(discord_oracle(&s, 64).unwrap().abs() < 1e-9);
        assert!(br.classical > 0.0);
    }

    #[test]
    fn tie_resolves_to_q2() {
        // Maximally mixed: Q1 = Q2 = 0.
        let br = discord(&XState::maximally_mixed()).unwrap();
        assert_eq!(br.q1, br.q2);
        assert_eq!(br.branch, Branch::Q2);
    }

    #[test]
    fn oracle_rejects_coarse_grid() {
        assert!(discord_oracle(&corner(), 10).is_err());
    }

    #[test]
    fn bell_state_discord_is_one_bit() {
        // (|00> + |11>)/sqrt 2
        let s = XState::new(0.5, 0.0, 0.5, 0.0, 0.5).unwrap();
        let br = discord(&s).unwrap();
        assert!((br.mutual - 2.0).abs() < 1e-12);
        assert!((br.quantum - 1.0).abs() < 1e-12);
        assert!((br.classical - 1.0).abs() < 1e-12);
        assert!((discord_oracle(&s, 64).unwrap() - 1.0).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn breakdown_bounds(raw in prop::array::uniform5(0.0f64..1.0).prop_map(|mut r| { r[3] = 2.0 * r[3] - 1.0; r[4] = 2.0 * r[4] - 1.0; r })) {
            if let Some(s) = sample_state(raw) {
                let br = discord(&s).unwrap();
                prop_assert!(br.quantum >= -1e-9 && br.quantum <= br.mutual + 1e-9);
                prop_assert!(br.classical >= -1e-9 && br.classical <= br.mutual + 1e-9);
                prop_assert!((br.mutual - br.classical - br.quantum).abs() < 1e-9);
            }
        }

        #[test]
        fn spectrum_matches_eigen_oracle(raw in prop::array::uniform5(0.0f64..1.0).prop_map(|mut r| { r[3] = 2.0 * r[3] - 1.0; r[4] = 2.0 * r[4] - 1.0; r })) {
            if let Some(s) = sample_state(raw) {
                let mut closed = spectrum(&s).values().to_vec();
                closed.sort_by(f64::total_cmp);
                let generic = eigen_oracle(&s);
                for (x, y) in closed.iter().zip(&generic) {
                    prop_assert!((x - y).abs() < 1e-10);
                }
                let sp = spectrum(&s);
                prop_assert!(sp.min() >= -1e-9);
                prop_assert!((sp.sum() - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn spin_flip_symmetry(raw in prop::array::uniform5(0.0f64..1.0).prop_map(|mut r| { r[3] = 2.0 * r[3] - 1.0; r[4] = 2.0 * r[4] - 1.0; r })) {
            if let Some(s) = sample_state(raw) {
                let (x, y) = (discord(&s).unwrap(), discord(&s.spin_flipped()).unwrap());
                prop_assert!((x.mutual - y.mutual).abs() < 1e-10);
                prop_assert!((x.quantum - y.quantum).abs() < 1e-10);
                prop_assert!((x.classical - y.classical).abs() < 1e-10);
            }
        }

        #[test]
        fn diagonal_states_have_no_discord(raw in prop::array::uniform3(0.0f64..1.0)) {
            if let Some(s) = sample_state([raw[0], raw[1], raw[2], 0.0, 0.0]) {
                prop_assert!(discord(&s).unwrap().quantum.abs() < 1e-9);
            }
        }
    }
}
