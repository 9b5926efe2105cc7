//! Brute-force verification layer.
//!
//! Reconstructs (a₂, a₃) from Carathéodory parameters through the relation
//! chain the bound proofs rest on, replays those relations through the
//! series engine to check end-to-end consistency, and grid-searches the
//! admissible parameter box to confirm every closed-form bound dominates
//! the observed extremal values.

use crate::bounds::{
    self, a2_bound_f, a2_bound_m, a3_bound_f, a3_bound_m, fs_bound_f, fs_bound_m,
    fs_threshold_f, fs_threshold_m, BoundValue, BracketExponent, DEGENERATE_TOL,
};
use crate::classes::{class_expression, g_expression, ClassSpec, Family};
use crate::error::CoreError;
use crate::qcalc::QParams;
use crate::series::NormalizedFunction;
use crate::targets::MindaTarget;
use crate::Cx;
use rand::Rng;

/// Slack allowed when comparing an observed maximum against its bound.
pub const DOMINANCE_TOL: f64 = 1e-9;

const ADMISSIBLE_TOL: f64 = 1e-9;

/// Carathéodory coefficients (p₁, p₂) and (q₁, q₂) of the two positive-real
/// part functions in the proofs, with |pᵢ|, |qᵢ| ≤ 2 and p₁ = −q₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaratheodoryPoint {
    pub p1: Cx,
    pub p2: Cx,
    pub q1: Cx,
    pub q2: Cx,
}

impl CaratheodoryPoint {
    pub fn new(p1: Cx, p2: Cx, q1: Cx, q2: Cx) -> Result<Self, CoreError> {
        for (name, v) in [("p1", p1), ("p2", p2), ("q1", q1), ("q2", q2)] {
            if v.norm() > 2.0 + ADMISSIBLE_TOL {
                return Err(CoreError::InvalidParameter(format!(
                    "|{name}| must not exceed 2, got {}",
                    v.norm()
                )));
            }
        }
        if (p1 + q1).norm() > ADMISSIBLE_TOL {
            return Err(CoreError::InvalidParameter(
                "the relation chain forces p1 = -q1".into(),
            ));
        }
        Ok(CaratheodoryPoint { p1, p2, q1, q2 })
    }

    /// Point with real p₁, p₂, q₂ and the forced q₁ = −p₁.
    pub fn real(p1: f64, p2: f64, q2: f64) -> Result<Self, CoreError> {
        Self::new(
            Cx::new(p1, 0.0),
            Cx::new(p2, 0.0),
            Cx::new(-p1, 0.0),
            Cx::new(q2, 0.0),
        )
    }
}

fn family_bracket(family: Family, qp: &QParams, b1: f64, b2: f64, exp: BracketExponent) -> f64 {
    match family {
        Family::M { lambda } => bounds::bracket_m(lambda, qp, b1, b2, exp),
        Family::F { mu } => bounds::bracket_f(mu, qp, b1, b2),
    }
}

fn fs_threshold(family: Family, qp: &QParams) -> f64 {
    match family {
        Family::M { lambda } => fs_threshold_m(lambda, qp),
        Family::F { mu } => fs_threshold_f(mu, qp),
    }
}

/// a₂² from the summed second-order relations:
/// B₁³(p₂+q₂) / (4·bracket). `exp` selects the disputed [2]-exponent in the
/// M bracket; the reconciled value is 2k.
pub fn a2sq_from_relations(
    cp: &CaratheodoryPoint,
    family: Family,
    qp: &QParams,
    b1: f64,
    b2: f64,
    exp: BracketExponent,
) -> Result<Cx, CoreError> {
    let br = family_bracket(family, qp, b1, b2, exp);
    if br.abs() < DEGENERATE_TOL {
        return Err(CoreError::Degenerate);
    }
    Ok((cp.p2 + cp.q2) * (b1.powi(3) / (4.0 * br)))
}

/// (a₂², a₃) for the M family: a₂² from the summed relations, a₃ from the
/// subtracted ones, B₁²(p₁²+q₁²)/(8(1+λ)²[2]^{2k}) + B₁(p₂−q₂)/(8(1+2λ)[3]^k).
pub fn derive_a2sq_a3_m(
    cp: &CaratheodoryPoint,
    lambda: f64,
    qp: &QParams,
    b1: f64,
    b2: f64,
    exp: BracketExponent,
) -> Result<(Cx, Cx), CoreError> {
    let a2sq = a2sq_from_relations(cp, Family::M { lambda }, qp, b1, b2, exp)?;
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    let p1_part = (cp.p1 * cp.p1 + cp.q1 * cp.q1)
        * (b1 * b1 / (8.0 * (1.0 + lambda).powi(2) * b2_2k));
    let diff_part = (cp.p2 - cp.q2) * (b1 * fs_threshold_m(lambda, qp));
    Ok((a2sq, p1_part + diff_part))
}

/// (a₂², a₃) for the F family; same shape with the μ coefficients and the
/// (p₂−q₂)/(4(1+2μ)[3]^k) difference term.
pub fn derive_a2sq_a3_f(
    cp: &CaratheodoryPoint,
    mu: f64,
    qp: &QParams,
    b1: f64,
    b2: f64,
) -> Result<(Cx, Cx), CoreError> {
    let a2sq = a2sq_from_relations(cp, Family::F { mu }, qp, b1, b2, BracketExponent::TwoK)?;
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    let p1_part =
        (cp.p1 * cp.p1 + cp.q1 * cp.q1) * (b1 * b1 / (8.0 * (1.0 + mu).powi(2) * b2_2k));
    let diff_part = (cp.p2 - cp.q2) * (b1 * fs_threshold_f(mu, qp));
    Ok((a2sq, p1_part + diff_part))
}

/// |a₃ − τa₂²| as the proofs bound it: the decomposition
/// a₃ = a₂² + B₁(p₂−q₂)·threshold holds on the relation chain, so the
/// functional is (1−τ)a₂² + B₁(p₂−q₂)·threshold.
pub fn fekete_szego_from_relations(
    cp: &CaratheodoryPoint,
    tau: Cx,
    family: Family,
    qp: &QParams,
    b1: f64,
    b2: f64,
    exp: BracketExponent,
) -> Result<Cx, CoreError> {
    let a2sq = a2sq_from_relations(cp, family, qp, b1, b2, exp)?;
    let t = fs_threshold(family, qp);
    Ok((Cx::new(1.0, 0.0) - tau) * a2sq + (cp.p2 - cp.q2) * (b1 * t))
}

/// Draws a Carathéodory point consistent with the full relation chain:
/// p₂, q₂ are free in the radius-2 disk, p₁ is forced (up to sign) by the
/// first-order relation matching a₂² from the second-order ones.
///
/// Returns `None` when the forced p₁ falls outside the admissible disk
/// (the caller resamples).
pub fn sample_consistent_point<R: Rng>(
    rng: &mut R,
    family: Family,
    qp: &QParams,
    b1: f64,
    b2: f64,
    exp: BracketExponent,
) -> Result<Option<CaratheodoryPoint>, CoreError> {
    let draw_disk = |rng: &mut R| loop {
        let z = Cx::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
        if z.norm() <= 2.0 {
            return z;
        }
    };
    let p2 = draw_disk(rng);
    let q2 = draw_disk(rng);
    let stub = CaratheodoryPoint::new(Cx::new(0.0, 0.0), p2, Cx::new(0.0, 0.0), q2)?;
    let a2sq = a2sq_from_relations(&stub, family, qp, b1, b2, exp)?;
    let w = family.weight();
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    let p1 = (a2sq * (4.0 * (1.0 + w).powi(2) * b2_2k / (b1 * b1))).sqrt();
    if p1.norm() > 2.0 {
        return Ok(None);
    }
    Ok(Some(CaratheodoryPoint::new(p1, p2, -p1, q2)?))
}

/// Residuals of the four coefficient relations, computed end to end:
/// (a₂, a₃) are reconstructed from the point, f = z + a₂z² + a₃z³ is pushed
/// through the actual class expressions of the series engine, and the z and
/// z² coefficients on the f and g sides are compared with the
/// φ(u)/φ(v)-expansion values ½B₁p₁ and ½B₁(p₂−p₁²/2)+¼B₂p₁².
pub fn relation_residuals(
    cp: &CaratheodoryPoint,
    family: Family,
    qp: &QParams,
    target: &MindaTarget,
    truncation: usize,
) -> Result<[f64; 4], CoreError> {
    let (b1, b2) = (target.b1(), target.b2());
    let w = family.weight();
    let a2 = cp.p1 * (b1 / (2.0 * (1.0 + w) * qp.bracket_pow_k(2)));
    let a3 = a2 * a2 + (cp.p2 - cp.q2) * (b1 * fs_threshold(family, qp));
    let f = NormalizedFunction::from_tail(&[a2, a3], truncation)?;
    let spec = ClassSpec::new(family, *qp, target.clone())?;
    let ef = class_expression(&f, &spec)?;
    let eg = g_expression(&f, &spec)?;

    let expect = |x1: Cx, x2: Cx| {
        let e1 = x1 * (0.5 * b1);
        let e2 = (x2 - x1 * x1 * 0.5) * (0.5 * b1) + x1 * x1 * (0.25 * b2);
        (e1, e2)
    };
    let (ef1, ef2) = expect(cp.p1, cp.p2);
    let (eg1, eg2) = expect(cp.q1, cp.q2);
    Ok([
        (ef.coeff(1) - ef1).norm(),
        (ef.coeff(2) - ef2).norm(),
        (eg.coeff(1) - eg1).norm(),
        (eg.coeff(2) - eg2).norm(),
    ])
}

/// One quantity's grid-search outcome.
#[derive(Debug, Clone, Copy)]
pub struct QuantityProbe {
    pub observed_max: f64,
    pub argmax: CaratheodoryPoint,
    pub bound: BoundValue,
    /// `None` when the bound (or the observable) is degenerate.
    pub dominated: Option<bool>,
}

impl QuantityProbe {
    fn degenerate() -> Self {
        QuantityProbe {
            observed_max: f64::NAN,
            argmax: CaratheodoryPoint::real(0.0, 0.0, 0.0).unwrap(),
            bound: BoundValue::Degenerate,
            dominated: None,
        }
    }

    fn close(observed_max: f64, argmax: CaratheodoryPoint, bound: BoundValue) -> Self {
        let dominated = bound.value().map(|b| observed_max <= b + DOMINANCE_TOL);
        QuantityProbe { observed_max, argmax, bound, dominated }
    }
}

/// Full grid-search outcome for one class spec.
#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub a2: QuantityProbe,
    pub a3: QuantityProbe,
    pub fs: Vec<(Cx, QuantityProbe)>,
    pub grid_points: usize,
    pub grid_step: f64,
}

impl ProbeResult {
    /// True iff every non-degenerate quantity stayed within its bound.
    pub fn all_dominated(&self) -> bool {
        self.a2.dominated.unwrap_or(true)
            && self.a3.dominated.unwrap_or(true)
            && self.fs.iter().all(|(_, p)| p.dominated.unwrap_or(true))
    }
}

fn grid_axis(step: f64) -> Vec<f64> {
    let n = ((4.0 / step).round() as usize).max(1);
    (0..=n).map(|i| -2.0 + 4.0 * i as f64 / n as f64).collect()
}

/// Sweeps real p₁, p₂, q₂ over [−2,2]³ (q₁ = −p₁ forced), computes |a₂|,
/// |a₃| and |a₃ − τa₂²| through the relation-chain formulas, and compares
/// the observed maxima against the closed-form bounds.
pub fn probe_bounds(
    spec: &ClassSpec,
    taus: &[Cx],
    grid_step: f64,
    exp: BracketExponent,
) -> Result<ProbeResult, CoreError> {
    if !(grid_step > 0.0 && grid_step <= 2.0) {
        return Err(CoreError::InvalidParameter(format!(
            "grid step must lie in (0, 2], got {grid_step}"
        )));
    }
    let (b1, b2) = (spec.target.b1(), spec.target.b2());
    let qp = &spec.qp;
    let family = spec.family;
    let w = family.weight();
    let axis = grid_axis(grid_step);

    let br = family_bracket(family, qp, b1, b2, exp);
    let bracket_ok = br.abs() >= DEGENERATE_TOL;
    // a2^2 = c_a2 * (p2 + q2) on the real grid.
    let c_a2 = if bracket_ok { b1.powi(3) / (4.0 * br) } else { f64::NAN };
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    // a3 = c_a3 * (p1^2 + q1^2) + b1 * thr * (p2 - q2), with q1 = -p1.
    let c_a3 = b1 * b1 / (8.0 * (1.0 + w).powi(2) * b2_2k);
    let thr = fs_threshold(family, qp);

    let mut max_a2 = (f64::NEG_INFINITY, (0.0, 0.0, 0.0));
    let mut max_a3 = (f64::NEG_INFINITY, (0.0, 0.0, 0.0));
    let one_minus: Vec<Cx> = taus.iter().map(|&t| Cx::new(1.0, 0.0) - t).collect();
    let mut max_fs: Vec<(f64, (f64, f64, f64))> =
        vec![(f64::NEG_INFINITY, (0.0, 0.0, 0.0)); taus.len()];

    for &p2 in &axis {
        for &q2 in &axis {
            if bracket_ok {
                let a2sq = c_a2 * (p2 + q2);
                let a2_abs = a2sq.abs().sqrt();
                if a2_abs > max_a2.0 {
                    max_a2 = (a2_abs, (0.0, p2, q2));
                }
                let diff_term = b1 * thr * (p2 - q2);
                for (i, om) in one_minus.iter().enumerate() {
                    let v = (om * a2sq + diff_term).norm();
                    if v > max_fs[i].0 {
                        max_fs[i] = (v, (0.0, p2, q2));
                    }
                }
            }
            let diff_term = b1 * thr * (p2 - q2);
            for &p1 in &axis {
                let a3 = c_a3 * 2.0 * p1 * p1 + diff_term;
                if a3.abs() > max_a3.0 {
                    max_a3 = (a3.abs(), (p1, p2, q2));
                }
            }
        }
    }

    let point = |(p1, p2, q2): (f64, f64, f64)| CaratheodoryPoint::real(p1, p2, q2).unwrap();
    let (a2_bound, a3_bound) = match family {
        Family::M { lambda } => (a2_bound_m(lambda, qp, b1, b2), a3_bound_m(lambda, qp, b1)),
        Family::F { mu } => (a2_bound_f(mu, qp, b1, b2), a3_bound_f(mu, qp, b1)),
    };
    let a2 = if bracket_ok {
        QuantityProbe::close(max_a2.0, point(max_a2.1), a2_bound)
    } else {
        QuantityProbe::degenerate()
    };
    let a3 = QuantityProbe::close(max_a3.0, point(max_a3.1), BoundValue::Finite(a3_bound));
    let fs = taus
        .iter()
        .zip(max_fs)
        .map(|(&tau, (obs, arg))| {
            let bound = match family {
                Family::M { lambda } => fs_bound_m(tau, lambda, qp, b1, b2),
                Family::F { mu } => fs_bound_f(tau, mu, qp, b1, b2),
            };
            let probe = if bracket_ok {
                QuantityProbe::close(obs, point(arg), bound)
            } else {
                QuantityProbe::degenerate()
            };
            (tau, probe)
        })
        .collect();

    Ok(ProbeResult {
        a2,
        a3,
        fs,
        grid_points: axis.len().pow(3),
        grid_step,
    })
}

/// One row of a classical-limit scan.
#[derive(Debug, Clone, Copy)]
pub struct LimitRow {
    pub q: f64,
    pub bracket2: f64,
    pub bracket3: f64,
    pub a2_bound: BoundValue,
    pub a3_bound: f64,
}

/// Bound values along a q-ladder at k = 0, for comparison against the
/// classical q -> 1 estimates.
pub fn classical_limit_scan(
    family: Family,
    target: &MindaTarget,
    q_ladder: &[f64],
) -> Result<Vec<LimitRow>, CoreError> {
    let (b1, b2) = (target.b1(), target.b2());
    q_ladder
        .iter()
        .map(|&q| {
            let qp = QParams::new(q, 0)?;
            let (a2_bound, a3_bound) = match family {
                Family::M { lambda } => {
                    (a2_bound_m(lambda, &qp, b1, b2), a3_bound_m(lambda, &qp, b1))
                }
                Family::F { mu } => (a2_bound_f(mu, &qp, b1, b2), a3_bound_f(mu, &qp, b1)),
            };
            Ok(LimitRow {
                q,
                bracket2: qp.bracket(2),
                bracket3: qp.bracket(3),
                a2_bound,
                a3_bound,
            })
        })
        .collect()
}
