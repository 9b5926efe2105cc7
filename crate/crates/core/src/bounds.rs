//! Closed-form coefficient bounds for both class families: |a₂|, |a₃|, and
//! the Fekete–Szegő functional |a₃ − τa₂²| with its piecewise weight
//! functions Θ(τ) and Φ(τ).
//!
//! A vanishing radicand or denominator is reported as [`BoundValue::Degenerate`],
//! never raised, so parameter sweeps can skip and count such points.

use crate::classes::{ClassSpec, Family};
use crate::qcalc::QParams;
use crate::Cx;

/// Tolerance below which a radicand/denominator counts as vanished.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// A bound evaluation: a finite non-negative value, or a degenerate formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Finite(f64),
    Degenerate,
}

impl BoundValue {
    pub fn value(&self) -> Option<f64> {
        match *self {
            BoundValue::Finite(v) => Some(v),
            BoundValue::Degenerate => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, BoundValue::Degenerate)
    }

    /// Unwraps the finite value; panics on a degenerate bound.
    pub fn expect_finite(&self) -> f64 {
        self.value().expect("bound is degenerate")
    }
}

/// Exponent of [2]_q in the a₂² bracket's second term.
///
/// The correct exponent is 2k ([`BracketExponent::TwoK`]); the alternative
/// reading with exponent k is kept only so the oracle's consistency tests
/// can demonstrate that it breaks the coefficient relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BracketExponent {
    K,
    #[default]
    TwoK,
}

impl BracketExponent {
    fn apply(&self, qp: &QParams) -> f64 {
        let e = match self {
            BracketExponent::K => qp.k(),
            BracketExponent::TwoK => 2 * qp.k(),
        };
        qp.bracket(2).powi(e as i32)
    }
}

/// The M-family bracket
/// (2(1+2λ)[3]_q^k − (1+3λ)[2]_q^{2k})B₁² + (1+λ)²(B₁−B₂)[2]_q^{2k}.
pub fn bracket_m(lambda: f64, qp: &QParams, b1: f64, b2: f64, exp: BracketExponent) -> f64 {
    let b3k = qp.bracket_pow_k(3);
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    (2.0 * (1.0 + 2.0 * lambda) * b3k - (1.0 + 3.0 * lambda) * exp.apply(qp)) * b1 * b1
        + (1.0 + lambda).powi(2) * (b1 - b2) * b2_2k
}

/// The F-family bracket (1+2μ)[3]_q^k B₁² + (1+μ)²[2]_q^{2k}(B₁−B₂).
pub fn bracket_f(mu: f64, qp: &QParams, b1: f64, b2: f64) -> f64 {
    let b3k = qp.bracket_pow_k(3);
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    (1.0 + 2.0 * mu) * b3k * b1 * b1 + (1.0 + mu).powi(2) * b2_2k * (b1 - b2)
}

/// |a₂| bound for the M family: B₁√B₁ / √|bracket|.
pub fn a2_bound_m(lambda: f64, qp: &QParams, b1: f64, b2: f64) -> BoundValue {
    let br = bracket_m(lambda, qp, b1, b2, BracketExponent::TwoK);
    if br.abs() < DEGENERATE_TOL {
        return BoundValue::Degenerate;
    }
    BoundValue::Finite(b1 * b1.sqrt() / br.abs().sqrt())
}

/// |a₃| bound for the M family:
/// B₁/(2(1+2λ)[3]_q^k) + (B₁/((1+λ)[2]_q^k))².
pub fn a3_bound_m(lambda: f64, qp: &QParams, b1: f64) -> f64 {
    b1 / (2.0 * (1.0 + 2.0 * lambda) * qp.bracket_pow_k(3))
        + (b1 / ((1.0 + lambda) * qp.bracket_pow_k(2))).powi(2)
}

/// |a₂| bound for the F family.
pub fn a2_bound_f(mu: f64, qp: &QParams, b1: f64, b2: f64) -> BoundValue {
    let br = bracket_f(mu, qp, b1, b2);
    if br.abs() < DEGENERATE_TOL {
        return BoundValue::Degenerate;
    }
    BoundValue::Finite(b1 * b1.sqrt() / br.abs().sqrt())
}

/// |a₃| bound for the F family:
/// B₁(B₁/((1+μ)²[2]_q^{2k}) + 1/((1+2μ)[3]_q^k)).
pub fn a3_bound_f(mu: f64, qp: &QParams, b1: f64) -> f64 {
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    b1 * (b1 / ((1.0 + mu).powi(2) * b2_2k) + 1.0 / ((1.0 + 2.0 * mu) * qp.bracket_pow_k(3)))
}

/// Θ(τ) = B₁²(1−τ) / (4·bracket_m).
pub fn theta(tau: Cx, lambda: f64, qp: &QParams, b1: f64, b2: f64) -> Result<Cx, BoundValue> {
    let br = bracket_m(lambda, qp, b1, b2, BracketExponent::TwoK);
    if br.abs() < DEGENERATE_TOL {
        return Err(BoundValue::Degenerate);
    }
    Ok((Cx::new(1.0, 0.0) - tau) * (b1 * b1 / (4.0 * br)))
}

/// Switching threshold of the M-family Fekete–Szegő bound.
pub fn fs_threshold_m(lambda: f64, qp: &QParams) -> f64 {
    1.0 / (8.0 * (1.0 + 2.0 * lambda) * qp.bracket_pow_k(3))
}

/// Fekete–Szegő bound for the M family:
/// B₁/(2(1+2λ)[3]_q^k) while |Θ(τ)| stays below the threshold, 4B₁|Θ(τ)| beyond.
pub fn fs_bound_m(tau: Cx, lambda: f64, qp: &QParams, b1: f64, b2: f64) -> BoundValue {
    let th = match theta(tau, lambda, qp, b1, b2) {
        Ok(v) => v,
        Err(d) => return d,
    };
    let t = fs_threshold_m(lambda, qp);
    if th.norm() < t {
        BoundValue::Finite(4.0 * b1 * t)
    } else {
        BoundValue::Finite(4.0 * b1 * th.norm())
    }
}

/// Φ(τ) = B₁²(1−τ) / (4·bracket_f).
pub fn phi_fs(tau: Cx, mu: f64, qp: &QParams, b1: f64, b2: f64) -> Result<Cx, BoundValue> {
    let br = bracket_f(mu, qp, b1, b2);
    if br.abs() < DEGENERATE_TOL {
        return Err(BoundValue::Degenerate);
    }
    Ok((Cx::new(1.0, 0.0) - tau) * (b1 * b1 / (4.0 * br)))
}

/// Switching threshold of the F-family Fekete–Szegő bound.
pub fn fs_threshold_f(mu: f64, qp: &QParams) -> f64 {
    1.0 / (4.0 * (1.0 + 2.0 * mu) * qp.bracket_pow_k(3))
}

/// Fekete–Szegő bound for the F family, by the same max argument:
/// the extremal value of |(Φ+s)p₂ + (Φ−s)q₂| over |p₂|,|q₂| ≤ 2 is
/// 2(|Φ+s| + |Φ−s|), i.e. 4B₁s below the threshold s and 4B₁|Φ| beyond.
pub fn fs_bound_f(tau: Cx, mu: f64, qp: &QParams, b1: f64, b2: f64) -> BoundValue {
    let ph = match phi_fs(tau, mu, qp, b1, b2) {
        Ok(v) => v,
        Err(d) => return d,
    };
    let s = fs_threshold_f(mu, qp);
    if ph.norm() < s {
        BoundValue::Finite(4.0 * b1 * s)
    } else {
        BoundValue::Finite(4.0 * b1 * ph.norm())
    }
}

/// Bound values for one class spec, with Fekete–Szegő entries per τ.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub a2: BoundValue,
    pub a3: f64,
    pub fs: Vec<(Cx, BoundValue)>,
}

/// Evaluates every bound of the spec's family at its target coefficients.
pub fn bound_report(spec: &ClassSpec, taus: &[Cx]) -> BoundReport {
    let (b1, b2) = (spec.target.b1(), spec.target.b2());
    match spec.family {
        Family::M { lambda } => BoundReport {
            a2: a2_bound_m(lambda, &spec.qp, b1, b2),
            a3: a3_bound_m(lambda, &spec.qp, b1),
            fs: taus
                .iter()
                .map(|&t| (t, fs_bound_m(t, lambda, &spec.qp, b1, b2)))
                .collect(),
        },
        Family::F { mu } => BoundReport {
            a2: a2_bound_f(mu, &spec.qp, b1, b2),
            a3: a3_bound_f(mu, &spec.qp, b1),
            fs: taus
                .iter()
                .map(|&t| (t, fs_bound_f(t, mu, &spec.qp, b1, b2)))
                .collect(),
        },
    }
}

/// B₂ value making the M bracket vanish for the given B₁ (used to exercise
/// the degenerate path).
pub fn degenerate_b2_m(lambda: f64, qp: &QParams, b1: f64) -> f64 {
    let b3k = qp.bracket_pow_k(3);
    let b2_2k = qp.bracket(2).powi(2 * qp.k() as i32);
    let lead = (2.0 * (1.0 + 2.0 * lambda) * b3k - (1.0 + 3.0 * lambda) * b2_2k) * b1 * b1;
    b1 + lead / ((1.0 + lambda).powi(2) * b2_2k)
}
