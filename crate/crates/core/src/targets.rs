//! Ma–Minda target functions φ: series expansions, the coefficients B₁, B₂,
//! and analytic membership predicates for the image regions of the two
//! built-in families (a sector for the strongly-starlike power map, a
//! half-plane for the shifted Cayley map).

use crate::error::CoreError;
use crate::series::Series;
use crate::{Cx, DEFAULT_ORDER};

const REAL_TOL: f64 = 1e-12;

/// Which target family a [`MindaTarget`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetKind {
    /// φ(z) = ((1+z)/(1−z))^α, image the sector |arg w| < απ/2.
    StronglyStarlike { alpha: f64 },
    /// φ(z) = (1 + (1−2β)z)/(1−z), image the half-plane Re w > β.
    StarlikeOrder { beta: f64 },
    /// User-supplied series; bound evaluation only, no region oracle.
    Custom,
}

/// A Ma–Minda function: φ(0) = 1, φ′(0) = B₁ > 0, positive real part,
/// image symmetric about the real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct MindaTarget {
    kind: TargetKind,
    series: Series,
    b_coeffs: Vec<f64>,
}

impl MindaTarget {
    /// Strongly-starlike target of order α ∈ (0,1].
    pub fn strongly_starlike(alpha: f64) -> Result<Self, CoreError> {
        Self::strongly_starlike_with_order(alpha, DEFAULT_ORDER)
    }

    pub fn strongly_starlike_with_order(alpha: f64, order: usize) -> Result<Self, CoreError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CoreError::InvalidParameter(format!(
                "strongly-starlike order must lie in (0,1], got {alpha}"
            )));
        }
        // phi = exp(alpha * log((1+z)/(1-z))); the log has the odd expansion
        // 2(z + z^3/3 + z^5/5 + ...).
        let mut log_coeffs = vec![Cx::new(0.0, 0.0); order + 1];
        for (n, c) in log_coeffs.iter_mut().enumerate().skip(1).step_by(2) {
            *c = Cx::new(2.0 / n as f64, 0.0);
        }
        let log_series = Series::new(log_coeffs).scale(Cx::new(alpha, 0.0));
        let mut exp_coeffs = vec![Cx::new(0.0, 0.0); order + 1];
        let mut fact = 1.0;
        for (n, c) in exp_coeffs.iter_mut().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            *c = Cx::new(1.0 / fact, 0.0);
        }
        let series = Series::new(exp_coeffs)
            .compose(&log_series)
            .expect("log series vanishes at 0");
        Ok(MindaTarget {
            kind: TargetKind::StronglyStarlike { alpha },
            b_coeffs: real_tail(&series),
            series,
        })
    }

    /// Starlike target of order β ∈ [0,1).
    pub fn starlike_order(beta: f64) -> Result<Self, CoreError> {
        Self::starlike_order_with_order(beta, DEFAULT_ORDER)
    }

    pub fn starlike_order_with_order(beta: f64, order: usize) -> Result<Self, CoreError> {
        if !(0.0..1.0).contains(&beta) {
            return Err(CoreError::InvalidParameter(format!(
                "starlike order must lie in [0,1), got {beta}"
            )));
        }
        // (1 + (1-2b)z)/(1-z) = 1 + 2(1-b)(z + z^2 + ...).
        let mut coeffs = vec![Cx::new(2.0 * (1.0 - beta), 0.0); order + 1];
        coeffs[0] = Cx::new(1.0, 0.0);
        let series = Series::new(coeffs);
        Ok(MindaTarget {
            kind: TargetKind::StarlikeOrder { beta },
            b_coeffs: real_tail(&series),
            series,
        })
    }

    /// Target read off an arbitrary series with c₀ = 1 and c₁ > 0 real.
    ///
    /// Bounds remain computable; membership verdicts are unavailable.
    pub fn custom(series: Series) -> Result<Self, CoreError> {
        if (series.coeff(0) - Cx::new(1.0, 0.0)).norm() > REAL_TOL {
            return Err(CoreError::BadNormalization("c0 must equal 1".into()));
        }
        let c1 = series.coeff(1);
        if c1.im.abs() > REAL_TOL || c1.re <= 0.0 {
            return Err(CoreError::BadNormalization(
                "c1 must be a positive real (B1 > 0)".into(),
            ));
        }
        for n in 2..=series.order() {
            if series.coeff(n).im.abs() > REAL_TOL {
                return Err(CoreError::BadNormalization(format!(
                    "coefficient B{n} must be real"
                )));
            }
        }
        Ok(MindaTarget {
            kind: TargetKind::Custom,
            b_coeffs: real_tail(&series),
            series,
        })
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    /// Series expansion of φ around 0.
    pub fn series(&self) -> &Series {
        &self.series
    }

    /// Bₙ for n ≥ 1; zero beyond the stored order.
    pub fn b(&self, n: usize) -> f64 {
        assert!(n >= 1);
        self.b_coeffs.get(n - 1).copied().unwrap_or(0.0)
    }

    pub fn b1(&self) -> f64 {
        self.b(1)
    }

    pub fn b2(&self) -> f64 {
        self.b(2)
    }

    /// Whether an analytic image-region predicate is available.
    pub fn has_region_oracle(&self) -> bool {
        !matches!(self.kind, TargetKind::Custom)
    }

    /// Signed distance of `w` to the image-region boundary: positive inside.
    ///
    /// Sector margin is απ/2 − |arg w| (with w = 0 counted outside);
    /// half-plane margin is Re w − β. `None` for custom targets.
    pub fn region_margin(&self, w: Cx) -> Option<f64> {
        match self.kind {
            TargetKind::StronglyStarlike { alpha } => {
                if w.norm() == 0.0 {
                    return Some(f64::NEG_INFINITY);
                }
                Some(alpha * std::f64::consts::FRAC_PI_2 - w.arg().abs())
            }
            TargetKind::StarlikeOrder { beta } => Some(w.re - beta),
            TargetKind::Custom => None,
        }
    }

    /// Membership predicate for the image region.
    pub fn region_contains(&self, w: Cx) -> Option<bool> {
        self.region_margin(w).map(|m| m > 0.0)
    }
}

fn real_tail(series: &Series) -> Vec<f64> {
    (1..=series.order()).map(|n| series.coeff(n).re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strongly_starlike_alpha_one_is_cayley() {
        let t = MindaTarget::strongly_starlike(1.0).unwrap();
        assert!((t.b1() - 2.0).abs() < 1e-13);
        assert!((t.b2() - 2.0).abs() < 1e-13);
        // (1+z)/(1-z) = 1 + 2z + 2z^2 + ...
        for n in 1..=8 {
            assert!((t.b(n) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn strongly_starlike_half() {
        let t = MindaTarget::strongly_starlike(0.5).unwrap();
        assert!((t.b1() - 1.0).abs() < 1e-13);
        assert!((t.b2() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn strongly_starlike_matches_binomial_product_oracle() {
        // (1+z)^a * (1-z)^(-a) via generalized binomial coefficients.
        let alpha = 0.5;
        let order = DEFAULT_ORDER;
        let mut plus = vec![Cx::new(1.0, 0.0); order + 1];
        let mut minus = vec![Cx::new(1.0, 0.0); order + 1];
        for n in 1..=order {
            let nf = n as f64;
            plus[n] = plus[n - 1] * ((alpha - nf + 1.0) / nf);
            minus[n] = minus[n - 1] * ((-alpha - nf + 1.0) / nf) * (-1.0);
        }
        let oracle = Series::new(plus).mul(&Series::new(minus));
        let t = MindaTarget::strongly_starlike(alpha).unwrap();
        assert!(t.series().max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn starlike_order_coefficients() {
        let t = MindaTarget::starlike_order(0.25).unwrap();
        assert!((t.b1() - 1.5).abs() < 1e-15);
        assert!((t.b2() - 1.5).abs() < 1e-15);
        for n in 1..=DEFAULT_ORDER {
            assert!((t.b(n) - 1.5).abs() < 1e-15);
        }

        let t0 = MindaTarget::starlike_order(0.0).unwrap();
        assert!((t0.b1() - 2.0).abs() < 1e-15);
        assert!((t0.b2() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn starlike_order_matches_division_oracle() {
        let beta = 0.25;
        let numer = Series::from_real(
            &[&[1.0, 1.0 - 2.0 * beta][..], &[0.0; DEFAULT_ORDER - 1]].concat(),
        );
        let denom =
            Series::from_real(&[&[1.0, -1.0][..], &[0.0; DEFAULT_ORDER - 1]].concat());
        let oracle = numer.div(&denom).unwrap();
        let t = MindaTarget::starlike_order(beta).unwrap();
        assert!(t.series().max_abs_diff(&oracle) < 1e-14);
    }

    #[test]
    fn custom_round_trip_and_read_off() {
        let base = MindaTarget::strongly_starlike(0.5).unwrap();
        let t = MindaTarget::custom(base.series().clone()).unwrap();
        assert!((t.b1() - base.b1()).abs() < 1e-15);
        assert!((t.b2() - base.b2()).abs() < 1e-15);
        assert!(!t.has_region_oracle());

        let t = MindaTarget::custom(Series::from_real(&[1.0, 1.0])).unwrap();
        assert_eq!((t.b1(), t.b2()), (1.0, 0.0));
        let t = MindaTarget::custom(Series::from_real(&[1.0, 2.0, 1.0])).unwrap();
        assert_eq!((t.b1(), t.b2()), (2.0, 1.0));
    }

    #[test]
    fn custom_rejects_bad_normalization() {
        assert!(MindaTarget::custom(Series::from_real(&[0.5, 1.0])).is_err());
        assert!(MindaTarget::custom(Series::from_real(&[1.0, -1.0])).is_err());
        assert!(MindaTarget::custom(Series::new(vec![
            Cx::new(1.0, 0.0),
            Cx::new(1.0, 0.5),
        ]))
        .is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(MindaTarget::strongly_starlike(0.0).is_err());
        assert!(MindaTarget::strongly_starlike(1.2).is_err());
        assert!(MindaTarget::starlike_order(1.0).is_err());
        assert!(MindaTarget::starlike_order(-0.1).is_err());
    }

    #[test]
    fn image_lands_inside_its_own_region() {
        let mut targets = Vec::new();
        for alpha in [0.25, 0.5, 1.0] {
            targets.push(MindaTarget::strongly_starlike(alpha).unwrap());
        }
        for beta in [0.0, 0.25, 0.5] {
            targets.push(MindaTarget::starlike_order(beta).unwrap());
        }
        for t in &targets {
            assert_eq!(t.region_contains(Cx::new(1.0, 0.0)), Some(true));
            for i in 0..24 {
                for j in 1..=8 {
                    // Stay at radii where the order-16 tail is far below the
                    // region margin, otherwise truncation noise can cross the
                    // boundary even though the exact image never does.
                    let r = 0.7 * j as f64 / 8.0;
                    let th = 2.0 * std::f64::consts::PI * i as f64 / 24.0;
                    let z = Cx::from_polar(r, th);
                    let w = t.series().evaluate(z);
                    assert!(
                        t.region_contains(w).unwrap(),
                        "image point {w} left the region of {:?} at z = {z}",
                        t.kind()
                    );
                }
            }
        }
    }
}
