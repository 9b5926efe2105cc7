//! Truncated formal power series over complex coefficients.
//!
//! A [`Series`] stores the coefficients c₀..c_N of a polynomial truncation.
//! Arithmetic never grows the truncation order silently: binary operations
//! carry `order = min` of the operand orders. All values are immutable and
//! all operations are pure, so they are freely shareable across threads.

use crate::error::CoreError;
use crate::Cx;

/// Absolute tolerance below which a divisor's constant term counts as zero.
pub const DIV_TOL: f64 = 1e-12;

/// A power series truncated at some order N, holding exactly N+1 coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Cx>,
}

impl Series {
    /// Builds a series from its coefficients c₀..c_N.
    ///
    /// Panics if `coeffs` is empty (a series has at least a constant term).
    pub fn new(coeffs: Vec<Cx>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    /// Series with the given real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Series::new(coeffs.iter().map(|&x| Cx::new(x, 0.0)).collect())
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Cx::new(0.0, 0.0); order + 1] }
    }

    /// The constant series `c` of the given order.
    pub fn constant(c: Cx, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        Series::constant(Cx::new(1.0, 0.0), order)
    }

    /// The identity series z.
    pub fn identity(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Cx::new(1.0, 0.0);
        }
        s
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient c_n; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Cx {
        self.coeffs.get(n).copied().unwrap_or_else(|| Cx::new(0.0, 0.0))
    }

    /// All stored coefficients c₀..c_N.
    pub fn coeffs(&self) -> &[Cx] {
        &self.coeffs
    }

    /// Copy truncated (or zero-padded) to the given order.
    pub fn resized(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Cx::new(0.0, 0.0));
        Series { coeffs }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Cx) -> Series {
        Series { coeffs: self.coeffs.iter().map(|&a| a * c).collect() }
    }

    /// Coefficient-wise sum, truncated at the smaller order.
    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| self.coeffs[i] + other.coeffs[i]).collect(),
        }
    }

    /// Coefficient-wise difference, truncated at the smaller order.
    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| self.coeffs[i] - other.coeffs[i]).collect(),
        }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Cx::new(0.0, 0.0); n + 1];
        for i in 0..=n.min(self.order()) {
            let a = self.coeffs[i];
            for j in 0..=(n - i).min(other.order()) {
                coeffs[i + j] += a * other.coeffs[j];
            }
        }
        Series { coeffs }
    }

    /// Series quotient q with `q * other = self` to the smaller order.
    ///
    /// Fails with [`CoreError::ZeroConstantTerm`] when `other` has constant
    /// term below [`DIV_TOL`] in modulus.
    pub fn div(&self, other: &Series) -> Result<Series, CoreError> {
        let b0 = other.coeffs[0];
        if b0.norm() < DIV_TOL {
            return Err(CoreError::ZeroConstantTerm(b0.norm()));
        }
        let n = self.order().min(other.order());
        let mut q = vec![Cx::new(0.0, 0.0); n + 1];
        for i in 0..=n {
            let mut acc = self.coeff(i);
            for (j, qj) in q.iter().enumerate().take(i) {
                acc -= qj * other.coeff(i - j);
            }
            q[i] = acc / b0;
        }
        Ok(Series { coeffs: q })
    }

    /// Composition `self ∘ inner`, truncated at the smaller order.
    ///
    /// The inner series must vanish at 0.
    pub fn compose(&self, inner: &Series) -> Result<Series, CoreError> {
        if inner.coeffs[0] != Cx::new(0.0, 0.0) {
            return Err(CoreError::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.resized(n);
        // Horner on series: r <- r * inner + c_k, from the top coefficient down.
        let mut r = Series::constant(self.coeff(n), n);
        for k in (0..n).rev() {
            r = r.mul(&inner);
            r.coeffs[0] += self.coeff(k);
        }
        Ok(r)
    }

    /// Multiplication by z; exact, so the order grows by one.
    pub fn shift_up(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Cx::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Series { coeffs }
    }

    /// Division by z, dropping the constant term (which must be ≈ 0 by use).
    pub fn shift_down(&self) -> Series {
        if self.coeffs.len() == 1 {
            return Series::zero(0);
        }
        Series { coeffs: self.coeffs[1..].to_vec() }
    }

    /// Horner evaluation of the truncated polynomial at `z`.
    pub fn evaluate(&self, z: Cx) -> Cx {
        let mut acc = Cx::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Largest coefficient-wise distance to `other`, over the common order.
    pub fn max_abs_diff(&self, other: &Series) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|i| (self.coeffs[i] - other.coeffs[i]).norm())
            .fold(0.0, f64::max)
    }
}

/// A function of class 𝒜: f(z) = z + a₂z² + a₃z³ + …, i.e. a series with
/// c₀ = 0 and c₁ = 1 exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedFunction {
    series: Series,
}

impl NormalizedFunction {
    pub fn new(series: Series) -> Result<Self, CoreError> {
        if series.order() < 1
            || series.coeff(0) != Cx::new(0.0, 0.0)
            || series.coeff(1) != Cx::new(1.0, 0.0)
        {
            return Err(CoreError::NotNormalized);
        }
        Ok(NormalizedFunction { series })
    }

    /// z + a₂z² + a₃z³ + … from the tail coefficients a₂, a₃, …,
    /// zero-padded to `order`.
    pub fn from_tail(tail: &[Cx], order: usize) -> Result<Self, CoreError> {
        let mut coeffs = vec![Cx::new(0.0, 0.0); (order.max(tail.len() + 1)) + 1];
        coeffs[1] = Cx::new(1.0, 0.0);
        for (i, &a) in tail.iter().enumerate() {
            coeffs[i + 2] = a;
        }
        NormalizedFunction::new(Series::new(coeffs))
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Coefficient a_n of the normalized expansion.
    pub fn a(&self, n: usize) -> Cx {
        self.series.coeff(n)
    }

    /// Compositional inverse g with f(g(w)) = w to the truncation order.
    ///
    /// Solved coefficient-by-coefficient: with g known below degree n and
    /// f₁ = 1, the degree-n coefficient of f∘g is g_n plus terms already
    /// determined, so g_n is read off directly. In particular
    /// g₂ = −a₂ and g₃ = 2a₂² − a₃.
    pub fn comp_inverse(&self) -> Series {
        let n = self.series.order();
        let mut g = Series::identity(n);
        for m in 2..=n {
            // f∘g is correct below degree m; its degree-m coefficient is
            // g_m + (known terms), currently with g_m = 0.
            let h = self
                .series
                .compose(&g)
                .expect("inverse iterate keeps zero constant term");
            g.coeffs[m] = -h.coeff(m);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn cx(re: f64, im: f64) -> Cx {
        Cx::new(re, im)
    }

    fn random_series(rng: &mut StdRng, order: usize) -> Series {
        Series::new(
            (0..=order)
                .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn add_cancellation_and_identity() {
        let a = Series::from_real(&[1.0, 1.0]);
        let b = Series::from_real(&[1.0, -1.0]);
        assert_eq!(a.add(&b), Series::from_real(&[2.0, 0.0]));

        let mut rng = StdRng::seed_from_u64(1);
        let s = random_series(&mut rng, 7);
        assert_eq!(s.add(&Series::zero(7)), s);
    }

    #[test]
    fn add_matches_elementwise_oracle() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..50 {
            let a = random_series(&mut rng, 9);
            let b = random_series(&mut rng, 9);
            let sum = a.add(&b);
            for i in 0..=9 {
                assert_eq!(sum.coeff(i), a.coeff(i) + b.coeff(i));
            }
        }
    }

    #[test]
    fn mul_basic() {
        let a = Series::from_real(&[1.0, 1.0, 0.0]);
        let b = Series::from_real(&[1.0, -1.0, 0.0]);
        assert_eq!(a.mul(&b), Series::from_real(&[1.0, 0.0, -1.0]));

        let mut rng = StdRng::seed_from_u64(3);
        let s = random_series(&mut rng, 6);
        assert!(s.mul(&Series::one(6)).max_abs_diff(&s) == 0.0);
    }

    #[test]
    fn mul_matches_naive_convolution() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..50 {
            let a = random_series(&mut rng, 8);
            let b = random_series(&mut rng, 8);
            let p = a.mul(&b);
            for n in 0..=8usize {
                let mut acc = cx(0.0, 0.0);
                for i in 0..=n {
                    acc += a.coeff(i) * b.coeff(n - i);
                }
                assert!((p.coeff(n) - acc).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn div_geometric_series() {
        let one = Series::one(6);
        let denom = Series::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let q = one.div(&denom).unwrap();
        for i in 0..=6 {
            assert!((q.coeff(i) - cx(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn div_self_is_one() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut a = random_series(&mut rng, 8);
        a = a.add(&Series::one(8)); // keep c0 away from zero
        let q = a.div(&a).unwrap();
        assert!(q.max_abs_diff(&Series::one(8)) < 1e-13);
    }

    #[test]
    fn div_rejects_zero_constant_term() {
        let a = Series::one(4);
        let b = Series::identity(4);
        assert!(matches!(a.div(&b), Err(CoreError::ZeroConstantTerm(_))));
    }

    #[test]
    fn compose_identity_and_substitution() {
        let mut rng = StdRng::seed_from_u64(6);
        let f = random_series(&mut rng, 8);
        let id = Series::identity(8);
        assert!(f.compose(&id).unwrap().max_abs_diff(&f) < 1e-14);

        // 1/(1-z) composed with z^2 is the even geometric series.
        let geo = Series::one(8)
            .div(&Series::from_real(&[1.0, -1.0, 0., 0., 0., 0., 0., 0., 0.]))
            .unwrap();
        let z2 = {
            let mut s = Series::zero(8);
            s.coeffs[2] = cx(1.0, 0.0);
            s
        };
        let even = geo.compose(&z2).unwrap();
        for i in 0..=8 {
            let want = if i % 2 == 0 { 1.0 } else { 0.0 };
            assert!((even.coeff(i) - cx(want, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let f = Series::one(4);
        let g = Series::one(4);
        assert_eq!(f.compose(&g), Err(CoreError::NonzeroInnerConstant));
    }

    #[test]
    fn compose_matches_power_accumulation_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let outer = random_series(&mut rng, 8);
            let mut inner = random_series(&mut rng, 8);
            inner.coeffs[0] = cx(0.0, 0.0);
            let fast = outer.compose(&inner).unwrap();
            // Oracle: accumulate outer_n * inner^n by repeated multiplication.
            let mut acc = Series::constant(outer.coeff(0), 8);
            let mut pw = Series::one(8);
            for k in 1..=8 {
                pw = pw.mul(&inner);
                acc = acc.add(&pw.scale(outer.coeff(k)));
            }
            assert!(fast.max_abs_diff(&acc) < 1e-12);
        }
    }

    #[test]
    fn evaluate_basics() {
        assert_eq!(Series::from_real(&[1.0, 1.0]).evaluate(cx(0.0, 0.0)), cx(1.0, 0.0));

        let geo = {
            let mut c = vec![cx(1.0, 0.0); 31];
            c[0] = cx(1.0, 0.0);
            Series::new(c)
        };
        assert!((geo.evaluate(cx(0.5, 0.0)) - cx(2.0, 0.0)).norm() < 1e-8);

        let mut rng = StdRng::seed_from_u64(8);
        let f = random_series(&mut rng, 9);
        assert_eq!(f.evaluate(cx(0.0, 0.0)), f.coeff(0));
    }

    #[test]
    fn identity_is_self_inverse() {
        let f = NormalizedFunction::new(Series::identity(6)).unwrap();
        assert!(f.comp_inverse().max_abs_diff(&Series::identity(6)) == 0.0);
    }

    #[test]
    fn inverse_matches_closed_form_cubic() {
        // f = z + a2 z^2 + a3 z^3  =>  g = w - a2 w^2 + (2 a2^2 - a3) w^3.
        let a2 = cx(0.3, -0.2);
        let a3 = cx(-0.1, 0.4);
        let f = NormalizedFunction::from_tail(&[a2, a3], 6).unwrap();
        let g = f.comp_inverse();
        assert!((g.coeff(2) + a2).norm() < 1e-15);
        assert!((g.coeff(3) - (2.0 * a2 * a2 - a3)).norm() < 1e-15);
    }

    #[test]
    fn inverse_round_trip_random() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..30 {
            let tail: Vec<Cx> = (0..7)
                .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let f = NormalizedFunction::from_tail(&tail, 8).unwrap();
            let g = f.comp_inverse();
            let round = f.series().compose(&g).unwrap();
            assert!(round.max_abs_diff(&Series::identity(8)) < 1e-12);
        }
    }

    #[test]
    fn not_normalized_is_rejected() {
        assert_eq!(
            NormalizedFunction::new(Series::from_real(&[0.0, 2.0])).unwrap_err(),
            CoreError::NotNormalized
        );
        assert_eq!(
            NormalizedFunction::new(Series::from_real(&[1.0, 1.0])).unwrap_err(),
            CoreError::NotNormalized
        );
    }
}
