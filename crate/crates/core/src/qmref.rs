//! Brute-force quantum-mechanical reference values.
//!
//! States live in the z-basis with site 1 as the most significant bit and bit
//! value 0 meaning spin up (`+`). Observables are full Kronecker products of
//! `σ·n` matrices; nothing is simplified analytically.

use std::f64::consts::FRAC_1_SQRT_2;

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga3::{Sign, Vec3};
use crate::tolerances;

const MAX_QUBITS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Named states that [`make_state`] knows how to build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateKind {
    Singlet,
    Hardy { theta: f64 },
    Ghz4,
    Ghz3 { alpha: f64, delta: f64 },
    General { amplitudes: Vec<Complex64> },
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || !(2..=1 << MAX_QUBITS).contains(&len) {
            return Err(Error::DimensionMismatch {
                expected: 1 << MAX_QUBITS,
                got: len,
            });
        }
        if amplitudes.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tolerances::IDENTITY {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    fn real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &[Complex64]) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

pub fn make_state(kind: &StateKind) -> Result<StateVector> {
    match kind {
        StateKind::Singlet => StateVector::real(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]),
        StateKind::Hardy { theta } => {
            if !(0.0..=std::f64::consts::FRAC_PI_2).contains(theta) {
                return Err(Error::InvalidParameter(format!(
                    "hardy θ = {theta} outside [0, π/2]"
                )));
            }
            let (s, c) = theta.sin_cos();
            let k = 1.0 / (1.0 + c * c).sqrt();
            StateVector::real(&[-s * k, c * k, c * k, 0.0])
        }
        StateKind::Ghz4 => {
            let mut amps = [0.0; 16];
            amps[0b0011] = FRAC_1_SQRT_2;
            amps[0b1100] = -FRAC_1_SQRT_2;
            StateVector::real(&amps)
        }
        StateKind::Ghz3 { alpha, delta } => {
            let mut amps = vec![Complex64::new(0.0, 0.0); 8];
            amps[0] = Complex64::new((alpha / 2.0).cos(), 0.0);
            amps[7] = Complex64::from_polar((alpha / 2.0).sin(), -delta);
            StateVector::new(amps)
        }
        StateKind::General { amplitudes } => StateVector::new(amplitudes.clone()),
    }
}

/// `σ·n₁ ⊗ … ⊗ σ·n_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinObservable {
    directions: Vec<Vec3>,
}

impl SpinObservable {
    pub fn new(directions: Vec<Vec3>) -> Result<Self> {
        for d in &directions {
            d.ensure_unit()?;
        }
        Ok(Self { directions })
    }

    pub fn directions(&self) -> &[Vec3] {
        &self.directions
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        self.directions
            .iter()
            .fold(DMatrix::identity(1, 1), |acc, n| acc.kronecker(&pauli_dot(n)))
    }
}

/// The 2×2 matrix `σ·n`.
pub fn pauli_dot(n: &Vec3) -> DMatrix<Complex64> {
    let c = |re, im| Complex64::new(re, im);
    DMatrix::from_row_slice(
        2,
        2,
        &[c(n.z, 0.0), c(n.x, -n.y), c(n.x, n.y), c(-n.z, 0.0)],
    )
}

/// Eigenvector of `σ·n` for the given outcome, phased so that
/// `|n,+⟩ = cos(θ/2)|+⟩ + e^{iφ} sin(θ/2)|−⟩` and `|n,−⟩ = −sin(θ/2)|+⟩ + e^{iφ} cos(θ/2)|−⟩`.
pub fn spin_state(n: &Vec3, outcome: Sign) -> [Complex64; 2] {
    let (theta, phi) = n.to_spherical();
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    match outcome {
        Sign::Plus => [Complex64::new(c, 0.0), e * s],
        Sign::Minus => [Complex64::new(-s, 0.0), e * c],
    }
}

/// `⟨ψ|O|ψ⟩` as a complex number; the imaginary part is numerical residue.
pub fn tensor_expectation_complex(state: &StateVector, obs: &SpinObservable) -> Result<Complex64> {
    if obs.directions.len() != state.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: state.n_qubits,
            got: obs.directions.len(),
        });
    }
    let psi = DVector::from_column_slice(&state.amplitudes);
    let o_psi = obs.matrix() * &psi;
    Ok(psi.dotc(&o_psi))
}

pub fn tensor_expectation(state: &StateVector, obs: &SpinObservable) -> Result<f64> {
    Ok(tensor_expectation_complex(state, obs)?.re)
}

/// Two-site correlation `⟨σ·a ⊗ σ·b⟩`.
pub fn correlation2(state: &StateVector, a: &Vec3, b: &Vec3) -> Result<f64> {
    tensor_expectation(state, &SpinObservable::new(vec![*a, *b])?)
}

/// `E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)`.
pub fn chsh_qm(state: &StateVector, a: &Vec3, a2: &Vec3, b: &Vec3, b2: &Vec3) -> Result<f64> {
    if state.n_qubits != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: state.n_qubits,
        });
    }
    Ok(correlation2(state, a, b)? + correlation2(state, a, b2)? + correlation2(state, a2, b)?
        - correlation2(state, a2, b2)?)
}

/// Coplanar CHSH settings as polar angles in the x–z plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChshAngles {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

impl ChshAngles {
    pub fn from_array(p: [f64; 4]) -> Self {
        Self {
            a: p[0],
            a_prime: p[1],
            b: p[2],
            b_prime: p[3],
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.a_prime, self.b, self.b_prime]
    }

    pub fn directions(&self) -> [Vec3; 4] {
        self.to_array().map(|t| Vec3::spherical(t, 0.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChshOptimum {
    /// Largest |CHSH| found.
    pub value: f64,
    /// Signed CHSH value at the optimum.
    pub signed: f64,
    pub angles: ChshAngles,
}

struct NegAbsChsh<'a> {
    state: &'a StateVector,
}

impl CostFunction for NegAbsChsh<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        let [a, a2, b, b2] = ChshAngles::from_array([p[0], p[1], p[2], p[3]]).directions();
        Ok(-chsh_qm(self.state, &a, &a2, &b, &b2)?.abs())
    }
}

const CHSH_GRID: usize = 8;
const CHSH_POLISH_STARTS: usize = 8;

/// Maximizes |CHSH| over coplanar (x–z plane) settings: a coarse grid scan
/// followed by Nelder–Mead polishing from the best grid points.
pub fn maximize_chsh(state: &StateVector) -> Result<ChshOptimum> {
    let cost = NegAbsChsh { state };
    let step = std::f64::consts::TAU / CHSH_GRID as f64;
    let mut scored = Vec::with_capacity(CHSH_GRID.pow(4));
    for idx in 0..CHSH_GRID.pow(4) {
        let p: Vec<f64> = (0..4)
            .map(|d| ((idx / CHSH_GRID.pow(d as u32)) % CHSH_GRID) as f64 * step)
            .collect();
        let c = cost.cost(&p).map_err(|e| Error::Optimizer(e.to_string()))?;
        scored.push((c, p));
    }
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut best: Option<(f64, Vec<f64>)> = None;
    for (_, start) in scored.into_iter().take(CHSH_POLISH_STARTS) {
        let mut simplex = vec![start.clone()];
        for d in 0..4 {
            let mut v = start.clone();
            v[d] += 0.3;
            simplex.push(v);
        }
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(1e-15)
            .map_err(|e| Error::Optimizer(e.to_string()))?;
        let res = Executor::new(NegAbsChsh { state }, solver)
            .configure(|s| s.max_iters(4000))
            .run()
            .map_err(|e| Error::Optimizer(e.to_string()))?;
        let st = res.state();
        if let Some(p) = st.best_param.clone()
            && best.as_ref().is_none_or(|(c, _)| st.best_cost < *c)
        {
            best = Some((st.best_cost, p));
        }
    }
    let (_, p) = best.ok_or_else(|| Error::Optimizer("no optimum found".into()))?;
    let angles = ChshAngles::from_array([p[0], p[1], p[2], p[3]]);
    let [a, a2, b, b2] = angles.directions();
    let signed = chsh_qm(state, &a, &a2, &b, &b2)?;
    Ok(ChshOptimum {
        value: signed.abs(),
        signed,
        angles,
    })
}

/// One end of a Hardy measurement: unprimed (`a`/`b`, along ẑ) or primed
/// (`a′`/`b′`, polar angle 2θ in the x–z plane), with an outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HardySetting {
    pub primed: bool,
    pub outcome: Sign,
}

impl HardySetting {
    pub const fn new(primed: bool, outcome: Sign) -> Self {
        Self { primed, outcome }
    }

    /// Measurement direction under the Hardy geometry.
    pub fn direction(&self, theta: f64) -> Vec3 {
        if self.primed {
            Vec3::spherical(2.0 * theta, 0.0)
        } else {
            Vec3::Z
        }
    }

    pub fn label(&self, site: char) -> String {
        let prime = if self.primed { "'" } else { "" };
        let sign = match self.outcome {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        format!("{site}{prime}{sign}")
    }
}

/// A joint Hardy outcome for sites 1 and 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HardyPair {
    pub site1: HardySetting,
    pub site2: HardySetting,
}

impl HardyPair {
    pub const fn new(site1: HardySetting, site2: HardySetting) -> Self {
        Self { site1, site2 }
    }

    /// All sixteen combinations.
    pub fn all() -> Vec<HardyPair> {
        let mut out = Vec::with_capacity(16);
        for p1 in [false, true] {
            for o1 in [Sign::Plus, Sign::Minus] {
                for p2 in [false, true] {
                    for o2 in [Sign::Plus, Sign::Minus] {
                        out.push(HardyPair::new(HardySetting::new(p1, o1), HardySetting::new(p2, o2)));
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{},{}", self.site1.label('a'), self.site2.label('b'))
    }
}

/// `⟨Ψ_z| s₁⟩ ⊗ |s₂⟩` for the Hardy state, by explicit basis rotation.
pub fn hardy_amplitude(theta: f64, pair: HardyPair) -> Result<f64> {
    let psi = make_state(&StateKind::Hardy { theta })?;
    let u = spin_state(&pair.site1.direction(theta), pair.site1.outcome);
    let v = spin_state(&pair.site2.direction(theta), pair.site2.outcome);
    let product: Vec<Complex64> = u.iter().flat_map(|ui| v.iter().map(move |vj| ui * vj)).collect();
    Ok(psi.inner(&product).re)
}

/// The printed closed form of the Hardy amplitude for `pair`, written in terms
/// of `s = sinθ`, `c = cosθ` and `N = 1/√(1+c²)`.
pub fn hardy_closed_form(theta: f64, pair: HardyPair) -> f64 {
    let (s, c) = theta.sin_cos();
    let n = 1.0 / (1.0 + c * c).sqrt();
    let (p1, o1, p2, o2) = (pair.site1.primed, pair.site1.outcome, pair.site2.primed, pair.site2.outcome);
    use Sign::{Minus as M, Plus as P};
    match (p1, o1, p2, o2) {
        (true, P, false, P) | (false, P, true, P) | (false, M, false, M) => 0.0,
        (true, P, true, P) => s * c * c * n,
        (true, P, false, M) | (false, M, true, P) => c * c * n,
        (true, P, true, M) | (true, M, true, P) => c * c * c * n,
        (false, P, false, M) | (false, M, false, P) => c * n,
        (true, M, false, P) | (false, P, true, M) => n,
        (true, M, false, M) | (false, M, true, M) => -s * c * n,
        (true, M, true, M) => -s * (1.0 + c * c) * n,
        (false, P, false, P) => -s * n,
    }
}

/// The GHZ-4 correlation `cosθ₁cosθ₂cosθ₃cosθ₄ − sinθ₁sinθ₂sinθ₃sinθ₄ cos(φ₁+φ₂−φ₃−φ₄)`.
pub fn ghz4_closed_form(n: &[Vec3; 4]) -> f64 {
    let sph = n.map(|v| v.to_spherical());
    let cos: f64 = sph.iter().map(|(t, _)| t.cos()).product();
    let sin: f64 = sph.iter().map(|(t, _)| t.sin()).product();
    cos - sin * (sph[0].1 + sph[1].1 - sph[2].1 - sph[3].1).cos()
}

/// The GHZ-3 correlation `cosα Πcosθᵢ + sinα Πsinθᵢ cos(φ₁+φ₂+φ₃+δ)`.
pub fn ghz3_closed_form(n: &[Vec3; 3], alpha: f64, delta: f64) -> f64 {
    let sph = n.map(|v| v.to_spherical());
    let cos: f64 = sph.iter().map(|(t, _)| t.cos()).product();
    let sin: f64 = sph.iter().map(|(t, _)| t.sin()).product();
    let phi: f64 = sph.iter().map(|(_, p)| p).sum();
    alpha.cos() * cos + alpha.sin() * sin * (phi + delta).cos()
}
