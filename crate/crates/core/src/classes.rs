//! The two bi-univalent subordination classes: their defining expressions,
//! the inverse-function (g-side) expressions, and sampled membership
//! verdicts against a target's image region.
//!
//! The first family combines the starlike and convex quantities of
//! D_q^k f with weight λ; the second mixes D_q^k f(z)/z with the ordinary
//! derivative (D_q^k f)′ with weight μ. Both expressions expand as
//! 1 + (1+·)[2]_q^k a₂ z + … which is what the coefficient relations in
//! [`crate::oracle`] verify end to end.

use crate::error::CoreError;
use crate::qcalc::{ordinary_derivative, salagean_q, QParams};
use crate::series::{NormalizedFunction, Series};
use crate::targets::MindaTarget;
use crate::Cx;

/// Default sampling rings for subordination checks.
pub const DEFAULT_RINGS: [f64; 6] = [0.1, 0.3, 0.5, 0.7, 0.9, 0.95];
/// Default number of sample points per ring.
pub const DEFAULT_POINTS_PER_RING: usize = 64;

/// Which class family, with its mixing parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// λ-combination of the starlike and convex quantities of D_q^k f.
    M { lambda: f64 },
    /// μ-combination of D_q^k f(z)/z and (D_q^k f)′.
    F { mu: f64 },
}

impl Family {
    pub fn weight(&self) -> f64 {
        match *self {
            Family::M { lambda } => lambda,
            Family::F { mu } => mu,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Family::M { .. } => "M",
            Family::F { .. } => "F",
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let w = self.weight();
        if !(0.0..=1.0).contains(&w) {
            return Err(CoreError::InvalidParameter(format!(
                "family weight must lie in [0,1], got {w}"
            )));
        }
        Ok(())
    }
}

/// A complete class description: family, operator parameters, and target.
#[derive(Debug, Clone)]
pub struct ClassSpec {
    pub family: Family,
    pub qp: QParams,
    pub target: MindaTarget,
}

impl ClassSpec {
    pub fn new(family: Family, qp: QParams, target: MindaTarget) -> Result<Self, CoreError> {
        family.validate()?;
        Ok(ClassSpec { family, qp, target })
    }
}

/// Defining expression of the first family:
/// (1−λ)·z(D_q^k f)′/D_q^k f + λ·(1 + z(D_q^k f)″/(D_q^k f)′).
///
/// Expands as 1 + (1+λ)[2]_q^k a₂ z
/// + [2(1+2λ)[3]_q^k a₃ − (1+3λ)[2]_q^{2k} a₂²] z² + …
pub fn m_expression(
    f: &NormalizedFunction,
    lambda: f64,
    qp: &QParams,
) -> Result<Series, CoreError> {
    let s = salagean_q(f, qp);
    let starlike = starlike_quantity(&s)?;
    let convex = convex_quantity(&s)?;
    Ok(starlike
        .scale(Cx::new(1.0 - lambda, 0.0))
        .add(&convex.scale(Cx::new(lambda, 0.0))))
}

/// z·h′/h for a normalized series h (both numerator and denominator share
/// the factor z, which is divided out before the series division).
pub fn starlike_quantity(h: &Series) -> Result<Series, CoreError> {
    ordinary_derivative(h).div(&h.shift_down())
}

/// 1 + z·h″/h′ for a normalized series h.
pub fn convex_quantity(h: &Series) -> Result<Series, CoreError> {
    let h1 = ordinary_derivative(h);
    let h2 = ordinary_derivative(&h1);
    Ok(Series::one(h1.order()).add(&h2.shift_up().div(&h1)?))
}

/// Defining expression of the second family:
/// (1−μ)·D_q^k f(z)/z + μ·(D_q^k f)′(z).
///
/// Expands as 1 + (1+μ)[2]_q^k a₂ z + (1+2μ)[3]_q^k a₃ z² + …
pub fn f_expression(f: &NormalizedFunction, mu: f64, qp: &QParams) -> Series {
    let s = salagean_q(f, qp);
    s.shift_down()
        .scale(Cx::new(1.0 - mu, 0.0))
        .add(&ordinary_derivative(&s).scale(Cx::new(mu, 0.0)))
}

/// Class expression of `spec.family` applied to f itself.
pub fn class_expression(f: &NormalizedFunction, spec: &ClassSpec) -> Result<Series, CoreError> {
    match spec.family {
        Family::M { lambda } => m_expression(f, lambda, &spec.qp),
        Family::F { mu } => Ok(f_expression(f, mu, &spec.qp)),
    }
}

/// Class expression applied to the inverse g = f⁻¹ (truncated).
pub fn g_expression(f: &NormalizedFunction, spec: &ClassSpec) -> Result<Series, CoreError> {
    let g = NormalizedFunction::new(f.comp_inverse())?;
    class_expression(&g, spec)
}

/// Outcome of sampling one side of the subordination condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideVerdict {
    pub pass: bool,
    /// Smallest signed margin seen; negative at a failing witness.
    pub worst_margin: f64,
    /// Sample point realizing the worst margin.
    pub worst_point: Cx,
    pub samples_used: usize,
}

/// Samples `expr` on the given rings and tests the values against the
/// target's image region. A failing witness is conclusive; a pass is a
/// sampled verdict, not a proof.
pub fn subordination_check(
    expr: &Series,
    target: &MindaTarget,
    rings: &[f64],
    points_per_ring: usize,
) -> Result<SideVerdict, CoreError> {
    if !target.has_region_oracle() {
        return Err(CoreError::NoRegionOracle);
    }
    let mut worst_margin = f64::INFINITY;
    let mut worst_point = Cx::new(0.0, 0.0);
    let mut samples = 0;
    for &r in rings {
        for j in 0..points_per_ring {
            let z = Cx::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / points_per_ring as f64);
            let w = expr.evaluate(z);
            let m = target.region_margin(w).expect("oracle presence checked");
            samples += 1;
            if m < worst_margin {
                worst_margin = m;
                worst_point = z;
            }
        }
    }
    Ok(SideVerdict {
        pass: worst_margin > 0.0,
        worst_margin,
        worst_point,
        samples_used: samples,
    })
}

/// Combined two-sided membership verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipVerdict {
    pub f_side: bool,
    pub g_side: bool,
    pub worst_margin: f64,
    /// Sample realizing the worst margin (a failure witness when negative).
    pub worst_point: Cx,
    pub samples_used: usize,
    /// Truncation order of the series the verdict was computed at.
    pub truncation: usize,
}

impl MembershipVerdict {
    pub fn pass(&self) -> bool {
        self.f_side && self.g_side
    }
}

/// Runs [`subordination_check`] on both the f-side and g-side expressions
/// with the default sampling grid.
pub fn membership(f: &NormalizedFunction, spec: &ClassSpec) -> Result<MembershipVerdict, CoreError> {
    membership_with(f, spec, &DEFAULT_RINGS, DEFAULT_POINTS_PER_RING)
}

pub fn membership_with(
    f: &NormalizedFunction,
    spec: &ClassSpec,
    rings: &[f64],
    points_per_ring: usize,
) -> Result<MembershipVerdict, CoreError> {
    let ef = class_expression(f, spec)?;
    let eg = g_expression(f, spec)?;
    let vf = subordination_check(&ef, &spec.target, rings, points_per_ring)?;
    let vg = subordination_check(&eg, &spec.target, rings, points_per_ring)?;
    let (worst_margin, worst_point) = if vf.worst_margin <= vg.worst_margin {
        (vf.worst_margin, vf.worst_point)
    } else {
        (vg.worst_margin, vg.worst_point)
    };
    Ok(MembershipVerdict {
        f_side: vf.pass,
        g_side: vg.pass,
        worst_margin,
        worst_point,
        samples_used: vf.samples_used + vg.samples_used,
        truncation: f.order(),
    })
}
