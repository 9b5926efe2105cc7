//! q-calculus primitives: the q-bracket, the Jackson q-derivative, the
//! Sălăgean q-difference operator, and the ordinary derivative used by the
//! second class family.

use crate::error::CoreError;
use crate::series::{NormalizedFunction, Series};
use crate::Cx;

/// Operator parameters: the deformation q ∈ (0,1) and the iteration count k.
///
/// q = 1 is rejected; the Jackson quotient degenerates there and classical
/// limits are taken at q = 1 − ε instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParams {
    q: f64,
    k: u32,
}

impl QParams {
    pub fn new(q: f64, k: u32) -> Result<Self, CoreError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(CoreError::InvalidParameter(format!(
                "q must lie strictly inside (0,1), got {q}"
            )));
        }
        Ok(QParams { q, k })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// [n]_q for this parameter set.
    pub fn bracket(&self, n: u32) -> f64 {
        q_bracket(n, self.q)
    }

    /// [n]_q^k, the coefficient multiplier of the k-fold operator.
    pub fn bracket_pow_k(&self, n: u32) -> f64 {
        self.bracket(n).powi(self.k as i32)
    }
}

/// The basic number [n]_q = (1 − qⁿ)/(1 − q).
pub fn q_bracket(n: u32, q: f64) -> f64 {
    debug_assert!(n >= 1);
    (1.0 - q.powi(n as i32)) / (1.0 - q)
}

/// Jackson q-derivative at the series level: (D_q f)_{n−1} = [n]_q f_n.
pub fn jackson_derivative(f: &Series, q: f64) -> Series {
    let n = f.order();
    if n == 0 {
        return Series::zero(0);
    }
    Series::new(
        (1..=n)
            .map(|i| f.coeff(i) * q_bracket(i as u32, q))
            .collect(),
    )
}

/// Ordinary derivative: c_n ↦ n·c_n shifted down one degree.
pub fn ordinary_derivative(f: &Series) -> Series {
    let n = f.order();
    if n == 0 {
        return Series::zero(0);
    }
    Series::new((1..=n).map(|i| f.coeff(i) * i as f64).collect())
}

/// Sălăgean q-operator D_q^k f = z + Σ_{n≥2} [n]_q^k aₙ zⁿ.
///
/// Closed coefficient form; the iterated form is
/// [`salagean_q_iterated`], kept as an independent oracle.
pub fn salagean_q(f: &NormalizedFunction, qp: &QParams) -> Series {
    let n = f.order();
    let mut coeffs: Vec<Cx> = Vec::with_capacity(n + 1);
    coeffs.push(Cx::new(0.0, 0.0));
    coeffs.push(Cx::new(1.0, 0.0));
    for i in 2..=n {
        coeffs.push(f.a(i) * qp.bracket_pow_k(i as u32));
    }
    Series::new(coeffs)
}

/// k-fold application of f ↦ z·D_q f, the defining iteration of the operator.
pub fn salagean_q_iterated(f: &NormalizedFunction, qp: &QParams) -> Series {
    let mut s = f.series().clone();
    for _ in 0..qp.k() {
        s = jackson_derivative(&s, qp.q()).shift_up();
    }
    s.resized(f.order())
}
