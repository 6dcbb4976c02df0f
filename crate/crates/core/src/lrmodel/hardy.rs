//! Hardy's state on the 3-sphere: seven tilt angles, the thirteen constraint
//! residuals and a damped Gauss–Newton solver for them.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use super::decomposition::{DecompositionResult, decompose_s3};
use super::report::{ComparisonReport, ReportRow};
use crate::error::{Error, Result};
use crate::ga3::{HiddenVariable, Multivector3, Sign, handed_product, tilted_point};
use crate::qmref::{HardyPair, HardySetting, hardy_amplitude};
use crate::tolerances;

pub const N_RESIDUALS: usize = 13;
const N_ANGLES: usize = 7;

pub const RESIDUAL_LABELS: [&str; N_RESIDUALS] = [
    "cot γ cot β = 1−2sin²θ",
    "cot α cot δ = 1−2sin²θ",
    "cos(α+β) = −sinθ/√(1+cos²θ)",
    "cos(ρ+ν)+cos(γ+δ) = −sinθ/√(1+cos²θ)",
    "cos(γ+δ) = sinθcos²θ/√(1+cos²θ)",
    "ρ,ν,η ratio = 1−2sin²θ",
    "γ,δ,η ratio = 1−2sin²θ",
    "α,ν,ρ,β ratio = 1−2sin²θ",
    "ρ,ν,η ratio = 1−2sin²θ (restated)",
    "cos(γ−ν) = cos³θ/√(1+cos²θ)",
    "cos(ρ−δ) = cos³θ/√(1+cos²θ)",
    "sin(α+η) = cosθ/√(1+cos²θ)",
    "cos(η−β) = cosθ/√(1+cos²θ)",
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyAngles {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    pub rho: f64,
    pub nu: f64,
    /// Euclidean norm of [`hardy_residuals`] at these angles.
    pub residual_norm: f64,
}

impl HardyAngles {
    /// Builds the angle set and records its residual norm.
    pub fn new(theta: f64, angles: [f64; N_ANGLES]) -> Self {
        let r = residuals(theta, &angles);
        let [alpha, beta, gamma, delta, eta, rho, nu] = angles;
        Self {
            theta,
            alpha,
            beta,
            gamma,
            delta,
            eta,
            rho,
            nu,
            residual_norm: norm(&r),
        }
    }

    /// `[α, β, γ, δ, η, ρ, ν]`.
    pub fn angles(&self) -> [f64; N_ANGLES] {
        [self.alpha, self.beta, self.gamma, self.delta, self.eta, self.rho, self.nu]
    }

    pub fn converged(&self) -> bool {
        self.residual_norm < tolerances::SOLVER_RESIDUAL
    }
}

/// Which expression to use for the `B−` point on direction `b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BMinusVariant {
    /// `sin η − B cos η`, as printed.
    #[default]
    Printed,
    /// `cos η − B sin η`, matching the other three minus points.
    Swapped,
}

fn norm(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residuals(theta: f64, x: &[f64; N_ANGLES]) -> [f64; N_RESIDUALS] {
    let [al, be, ga, de, et, rh, nu] = *x;
    let (s, c) = theta.sin_cos();
    let n = 1.0 / (1.0 + c * c).sqrt();
    let k = 1.0 - 2.0 * s * s;
    let (sa, ca) = al.sin_cos();
    let (sb, cb) = be.sin_cos();
    let (sg, cg) = ga.sin_cos();
    let (sd, cd) = de.sin_cos();
    let (se, ce) = et.sin_cos();
    let (sr, cr) = rh.sin_cos();
    let (sn, cn) = nu.sin_cos();
    let rne = (cr * se - cn * ce) - k * (sr * ce - sn * se);
    [
        cg * cb - k * sg * sb,
        ca * cd - k * sa * sd,
        (al + be).cos() + s * n,
        (rh + nu).cos() + (ga + de).cos() + s * n,
        (ga + de).cos() - s * c * c * n,
        rne,
        (cg * se - cd * ce) - k * (sd * se - sg * ce),
        (ca * cn - cr * cb) - k * (sr * sb - sa * sn),
        rne,
        (ga - nu).cos() - c * c * c * n,
        (rh - de).cos() - c * c * c * n,
        (al + et).sin() - c * n,
        (et - be).cos() - c * n,
    ]
}

/// The thirteen constraint residuals (LHS − RHS), with cotangent and ratio
/// equations multiplied through by their denominators so the system has no
/// poles. Same zero set as [`hardy_residuals_printed`].
pub fn hardy_residuals(angles: &HardyAngles) -> [f64; N_RESIDUALS] {
    residuals(angles.theta, &angles.angles())
}

/// The residuals in the printed form (cotangent products and ratios minus
/// `1−2sin²θ`). Poles are reported as [`Error::ResidualUndefined`].
pub fn hardy_residuals_printed(angles: &HardyAngles) -> Result<[f64; N_RESIDUALS]> {
    let mut r = hardy_residuals(angles);
    let [al, be, ga, de, et, rh, nu] = angles.angles();
    let s = angles.theta.sin();
    let k = 1.0 - 2.0 * s * s;
    let cot = |x: f64, eq: usize, name: &'static str| {
        if x.sin().abs() < tolerances::POLE {
            Err(Error::ResidualUndefined {
                equation: RESIDUAL_LABELS[eq],
                angle: name,
            })
        } else {
            Ok(x.cos() / x.sin())
        }
    };
    let ratio = |num: f64, den: f64, eq: usize| {
        if den.abs() < tolerances::POLE {
            Err(Error::ResidualUndefined {
                equation: RESIDUAL_LABELS[eq],
                angle: "denominator",
            })
        } else {
            Ok(num / den - k)
        }
    };
    r[0] = cot(ga, 0, "γ")? * cot(be, 0, "β")? - k;
    r[1] = cot(al, 1, "α")? * cot(de, 1, "δ")? - k;
    let rne_num = rh.cos() * et.sin() - nu.cos() * et.cos();
    let rne_den = rh.sin() * et.cos() - nu.sin() * et.sin();
    r[5] = ratio(rne_num, rne_den, 5)?;
    r[6] = ratio(
        ga.cos() * et.sin() - de.cos() * et.cos(),
        de.sin() * et.sin() - ga.sin() * et.cos(),
        6,
    )?;
    r[7] = ratio(
        al.cos() * nu.cos() - rh.cos() * be.cos(),
        rh.sin() * be.sin() - al.sin() * nu.sin(),
        7,
    )?;
    r[8] = ratio(rne_num, rne_den, 8)?;
    Ok(r)
}

/// Which end of the apparatus a Hardy point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HardySite {
    A,
    B,
}

/// The 3-sphere point assigned to `setting` at `site`.
pub fn hardy_point(
    angles: &HardyAngles,
    site: HardySite,
    setting: HardySetting,
    lambda: HiddenVariable,
    variant: BMinusVariant,
) -> Result<Multivector3> {
    let dir = setting.direction(angles.theta);
    let (chi, sign) = match (site, setting.primed, setting.outcome) {
        (HardySite::A, false, Sign::Plus) => (angles.alpha, Sign::Plus),
        (HardySite::A, false, Sign::Minus) => (angles.eta, Sign::Minus),
        (HardySite::A, true, Sign::Plus) => (angles.gamma, Sign::Plus),
        (HardySite::A, true, Sign::Minus) => (angles.rho, Sign::Minus),
        (HardySite::B, false, Sign::Plus) => (angles.beta, Sign::Plus),
        (HardySite::B, false, Sign::Minus) => match variant {
            // sin η − B cos η = cos(π/2−η) − B sin(π/2−η)
            BMinusVariant::Printed => (FRAC_PI_2 - angles.eta, Sign::Minus),
            BMinusVariant::Swapped => (angles.eta, Sign::Minus),
        },
        (HardySite::B, true, Sign::Plus) => (angles.delta, Sign::Plus),
        (HardySite::B, true, Sign::Minus) => (angles.nu, Sign::Minus),
    };
    tilted_point(chi, &dir, lambda, sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyJoint {
    /// Scalar part of the product point; independent of λ.
    pub value: f64,
    /// The full product point at λ = +1, for auditing the oriented part.
    pub decomposition: DecompositionResult,
}

/// Model value for a joint Hardy outcome: the scalar part of the product of
/// the two selected 3-sphere points.
pub fn hardy_joint(angles: &HardyAngles, pair: HardyPair, variant: BMinusVariant) -> Result<HardyJoint> {
    let l = HiddenVariable::Right;
    let p = hardy_point(angles, HardySite::A, pair.site1, l, variant)?;
    let q = hardy_point(angles, HardySite::B, pair.site2, l, variant)?;
    let d = decompose_s3(&handed_product(&p, &q, l), l);
    Ok(HardyJoint {
        value: d.f,
        decomposition: d,
    })
}

/// The four joint outcomes the Hardy argument turns on: three vanishing
/// amplitudes and the one that is forced non-zero.
pub fn headline_pairs() -> [HardyPair; 4] {
    let s = HardySetting::new;
    [
        HardyPair::new(s(true, Sign::Plus), s(false, Sign::Plus)),
        HardyPair::new(s(false, Sign::Plus), s(true, Sign::Plus)),
        HardyPair::new(s(false, Sign::Minus), s(false, Sign::Minus)),
        HardyPair::new(s(true, Sign::Plus), s(true, Sign::Plus)),
    ]
}

const MAX_ITERS: usize = 400;
const N_STARTS: usize = 32;
const JACOBIAN_STEP: f64 = 1e-6;
const HALTON_BASES: [u32; N_ANGLES] = [2, 3, 5, 7, 11, 13, 17];

fn halton(mut index: u32, base: u32) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI { y - 2.0 * PI } else { y }
}

fn jacobian(theta: f64, x: &[f64; N_ANGLES]) -> SMatrix<f64, N_RESIDUALS, N_ANGLES> {
    let mut j = SMatrix::<f64, N_RESIDUALS, N_ANGLES>::zeros();
    for col in 0..N_ANGLES {
        let (mut xp, mut xm) = (*x, *x);
        xp[col] += JACOBIAN_STEP;
        xm[col] -= JACOBIAN_STEP;
        let (rp, rm) = (residuals(theta, &xp), residuals(theta, &xm));
        for row in 0..N_RESIDUALS {
            j[(row, col)] = (rp[row] - rm[row]) / (2.0 * JACOBIAN_STEP);
        }
    }
    j
}

/// Levenberg-damped Gauss–Newton from `x0`. Returns the final iterate and its
/// residual norm.
fn descend(theta: f64, x0: [f64; N_ANGLES]) -> ([f64; N_ANGLES], f64) {
    let mut x = x0;
    let mut r = residuals(theta, &x);
    let mut cost = norm(&r);
    let mut mu = 1e-3;
    for _ in 0..MAX_ITERS {
        if !cost.is_finite() || cost < 1e-15 {
            break;
        }
        let j = jacobian(theta, &x);
        let rv = SVector::<f64, N_RESIDUALS>::from_column_slice(&r);
        let jt = j.transpose();
        let jtj = jt * j;
        let g = jt * rv;
        let mut accepted = false;
        for _ in 0..30 {
            let m = jtj + SMatrix::<f64, N_ANGLES, N_ANGLES>::identity() * mu;
            let Some(chol) = m.cholesky() else {
                mu *= 10.0;
                continue;
            };
            let dx = chol.solve(&(-g));
            let mut xn = x;
            for (xi, d) in xn.iter_mut().zip(dx.iter()) {
                *xi += d;
            }
            let rn = residuals(theta, &xn);
            let cn = norm(&rn);
            if cn.is_finite() && cn < cost {
                let step = dx.norm();
                x = xn;
                r = rn;
                cost = cn;
                mu = (mu / 3.0).max(1e-15);
                accepted = true;
                if step < 1e-15 {
                    return (x, cost);
                }
                break;
            }
            mu *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    (x, cost)
}

/// Least-squares solve of the Hardy constraints at `theta`.
///
/// Runs damped Gauss–Newton from `init` (if given) and 32 Halton starts in
/// (0, π)⁷. Among the best residual norms (ties within 1e-12), prefers the
/// solution closest to `init`, then the one of smallest angle norm. The result
/// is returned whatever its residual norm; check [`HardyAngles::converged`].
pub fn solve_hardy(theta: f64, init: Option<&HardyAngles>) -> Result<HardyAngles> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidParameter(format!("hardy θ = {theta} outside [0, π/2]")));
    }
    let mut starts: Vec<[f64; N_ANGLES]> = Vec::with_capacity(N_STARTS + 1);
    if let Some(a) = init {
        starts.push(a.angles());
    }
    for i in 0..N_STARTS as u32 {
        starts.push(std::array::from_fn(|d| PI * halton(i + 1, HALTON_BASES[d])));
    }

    let mut found: Vec<([f64; N_ANGLES], f64)> = starts
        .into_iter()
        .map(|x0| descend(theta, x0))
        .filter(|(x, c)| c.is_finite() && x.iter().all(|v| v.is_finite()))
        .map(|(x, c)| (x.map(wrap), c))
        .collect();
    if found.is_empty() {
        let best = HardyAngles::new(theta, init.map_or([FRAC_PI_2; N_ANGLES], |a| a.angles()));
        return Err(Error::SolverFailure {
            best_residual: best.residual_norm,
            best: Box::new(best),
        });
    }
    let best = found.iter().map(|(_, c)| *c).fold(f64::INFINITY, f64::min);
    found.retain(|(_, c)| *c <= best + 1e-12);
    let key = |x: &[f64; N_ANGLES]| -> f64 {
        match init {
            Some(a) => x
                .iter()
                .zip(a.angles())
                .map(|(p, q)| wrap(p - q).powi(2))
                .sum(),
            None => x.iter().map(|v| v * v).sum(),
        }
    };
    let (x, _) = found
        .into_iter()
        .min_by(|p, q| key(&p.0).total_cmp(&key(&q.0)).then(norm(&p.0).total_cmp(&norm(&q.0))))
        .expect("non-empty");
    Ok(HardyAngles::new(theta, x))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyScanPoint {
    pub theta: f64,
    pub angles: HardyAngles,
    pub converged: bool,
    pub residuals: Vec<f64>,
    /// Labels of the equations whose residual exceeds the solver tolerance.
    pub failing: Vec<String>,
    /// Model vs. amplitude oracle for the headline outcomes.
    pub predictions: Vec<ReportRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardyScan {
    pub variant: BMinusVariant,
    pub points: Vec<HardyScanPoint>,
}

impl HardyScan {
    /// One residual row per θ (informational) plus the headline prediction
    /// rows, which gate only where the solver converged.
    pub fn to_report(&self) -> ComparisonReport {
        let mut report = ComparisonReport::new("hardy", None, None);
        for p in &self.points {
            report.add(
                format!("hardy θ={} residual_norm", p.theta),
                p.angles.residual_norm,
                0.0,
                tolerances::SOLVER_RESIDUAL,
                false,
            );
            for row in &p.predictions {
                report.push(row.clone());
            }
        }
        report
    }
}

/// Solves at each θ in order, continuing from the previous solution.
pub fn scan_hardy(thetas: &[f64], variant: BMinusVariant) -> Result<HardyScan> {
    let mut points = Vec::with_capacity(thetas.len());
    let mut prev: Option<HardyAngles> = None;
    for &theta in thetas {
        let angles = match solve_hardy(theta, prev.as_ref()) {
            Ok(a) => a,
            Err(Error::SolverFailure { best, .. }) => *best,
            Err(e) => return Err(e),
        };
        let residuals = hardy_residuals(&angles);
        let converged = angles.converged();
        let failing = residuals
            .iter()
            .zip(RESIDUAL_LABELS)
            .filter(|(r, _)| r.is_nan() || r.abs() >= tolerances::SOLVER_RESIDUAL)
            .map(|(_, l)| l.to_string())
            .collect();
        let mut predictions = Vec::new();
        for pair in headline_pairs() {
            let model = hardy_joint(&angles, pair, variant)?.value;
            let oracle = hardy_amplitude(theta, pair)?;
            predictions.push(ReportRow::new(
                format!("hardy θ={theta} {}", pair.label()),
                model,
                oracle,
                tolerances::SOLVER_PREDICTION,
                converged,
            ));
        }
        points.push(HardyScanPoint {
            theta,
            angles,
            converged,
            residuals: residuals.to_vec(),
            failing,
            predictions,
        });
        prev = Some(angles);
    }
    Ok(HardyScan { variant, points })
}
