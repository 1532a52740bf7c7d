//! Dense univariate complex polynomials and a simultaneous all-roots finder.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{Complex, Real};

/// Iteration cap of the root finder.
pub const MAX_ROOT_ITERATIONS: usize = 500;
/// Default residual tolerance of [`Poly::all_roots`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("NonConvergence: residual {residual:e} after {iterations} iterations")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("DegreeTooLow: root finding needs degree >= 1")]
    DegreeTooLow,
    #[error("NonFinite: coefficient or argument is NaN or infinite")]
    NonFinite,
}

/// Polynomial `sum coeffs[k] z^k`. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Poly<T> {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself, `z`.
    pub fn identity() -> Self {
        Self::new(vec![Complex::zero(), Complex::one()])
    }

    /// `c z^k`.
    pub fn monomial(c: Complex<T>, k: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        let mut coeffs = vec![Complex::one()];
        for &r in roots {
            let mut next = vec![Complex::zero(); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex<T>> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::from_usize_lossy(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => Self::new(self.coeffs.iter().map(|&c| c / lead).collect()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Complex::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest coefficient modulus, zero for the zero polynomial.
    pub fn coeff_norm(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// `sum |c_k| |z|^k`, the rounding scale of Horner evaluation at `z`.
    fn abs_eval(&self, z: Complex<T>) -> T {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    /// All roots, with multiplicity, by Aberth–Ehrlich simultaneous iteration.
    ///
    /// The polynomial is made monic first. Initial guesses sit on the circle of
    /// radius `1 + max |c_k / c_n|` at angles `2 pi k / n + 0.7`, so the result
    /// is a deterministic function of the coefficients and `tol`. A root is
    /// accepted once `|p(z)| <= tol * max_k |c_k|` (or once the residual is at
    /// the rounding floor); after every root is accepted the iteration keeps
    /// polishing while the corrections still shrink.
    pub fn all_roots(&self, tol: T) -> Result<Vec<Complex<T>>, PolyError> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(PolyError::DegreeTooLow),
        };
        if self.coeffs.iter().any(|c| !crate::scalar::is_finite(*c)) {
            return Err(PolyError::NonFinite);
        }
        let p = self.monic();
        if n == 1 {
            return Ok(vec![-p.coeffs[0]]);
        }
        let cauchy = T::one()
            + p.coeffs[..n]
                .iter()
                .map(|c| c.norm())
                .fold(T::zero(), T::max);
        p.aberth(n, cauchy, tol).or_else(|err| {
            // A tiny leading coefficient makes the Cauchy circle so large that
            // the iterates overflow; retry from the Fujiwara bound.
            let fujiwara = T::lit(2.0)
                * (0..n)
                    .map(|k| p.coeffs[k].norm().powf(T::one() / T::from_usize_lossy(n - k)))
                    .fold(T::zero(), T::max);
            if fujiwara > T::zero() && fujiwara < cauchy {
                p.aberth(n, fujiwara, tol).map_err(|_| err)
            } else {
                Err(err)
            }
        })
    }

    /// Aberth–Ehrlich iteration for a monic `self` of degree `n >= 2`.
    fn aberth(&self, n: usize, radius: T, tol: T) -> Result<Vec<Complex<T>>, PolyError> {
        let p = self;
        let dp = p.derivative();
        let scale = p.coeff_norm();
        let two_pi = T::PI() + T::PI();
        let mut z: Vec<Complex<T>> = (0..n)
            .map(|k| {
                let theta = two_pi * T::from_usize_lossy(k) / T::from_usize_lossy(n) + T::lit(0.7);
                Complex::from_polar(radius, theta)
            })
            .collect();

        let eps = T::epsilon();
        let floor_factor = T::lit(8.0) * eps;
        let accepted = |z: Complex<T>| {
            let r = p.eval(z).norm();
            r <= tol * scale || r <= floor_factor * p.abs_eval(z)
        };

        let mut polishing = false;
        let mut last_step = T::infinity();
        for _ in 0..MAX_ROOT_ITERATIONS {
            let mut max_step = T::zero();
            for k in 0..n {
                let zk = z[k];
                let (pv, _) = p.eval_with_derivative(zk);
                if pv.is_zero() {
                    continue;
                }
                let dpv = dp.eval(zk);
                let mut sum = Complex::zero();
                for (j, &zj) in z.iter().enumerate() {
                    if j != k {
                        let d = zk - zj;
                        if !d.is_zero() {
                            sum += d.inv();
                        }
                    }
                }
                let denom = dpv - pv * sum;
                let step = if denom.is_zero() || !crate::scalar::is_finite(denom) {
                    if dpv.is_zero() {
                        // Nudge off a critical point.
                        Complex::new(tol.sqrt() * radius, tol.sqrt() * radius)
                    } else {
                        pv / dpv
                    }
                } else {
                    pv / denom
                };
                if crate::scalar::is_finite(step) {
                    z[k] = zk - step;
                    max_step = max_step.max(step.norm());
                }
            }
            let all_accepted = z.iter().all(|&r| accepted(r));
            if all_accepted {
                let tiny = z
                    .iter()
                    .zip(std::iter::repeat(max_step))
                    .all(|(r, s)| s <= eps * (T::one() + r.norm()));
                if tiny || (polishing && max_step >= T::lit(0.9) * last_step) {
                    return Ok(z);
                }
                polishing = true;
            }
            last_step = max_step;
        }
        if z.iter().all(|&r| accepted(r)) {
            return Ok(z);
        }
        let residual = z
            .iter()
            .map(|&r| p.eval(r).norm())
            .fold(T::zero(), T::max);
        Err(PolyError::NonConvergence {
            iterations: MAX_ROOT_ITERATIONS,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Smallest pairwise distance. Infinite for fewer than two points.
pub fn min_separation<T: Real>(roots: &[Complex<T>]) -> T {
    let mut best = T::infinity();
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

impl<T: Real> Default for Poly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl<'a, T: Real> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, T: Real> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, T: Real> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T: Real> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn assert_root_set(mut got: Vec<C>, mut want: Vec<C>, tol: f64) {
        assert_eq!(got.len(), want.len());
        while let Some(w) = want.pop() {
            let (idx, d) = got
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - w).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < tol, "missing root {w}: nearest at distance {d}");
            got.swap_remove(idx);
        }
    }

    #[test]
    fn eval_examples() {
        let p = Poly::from_real(&[0.0, -2.0, 1.0]);
        assert_eq!(p.eval(c(0.0, 0.0)), c(0.0, 0.0));
        let p = Poly::from_real(&[2.0, -3.0, 0.0, 1.0]);
        assert_eq!(p.eval(c(1.0, 0.0)), c(0.0, 0.0));
        let p = Poly::from_real(&[4.0, -5.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(p.eval(c(1.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let a = 0.75;
        let p = Poly::from_real(&[a, -3.0, 0.0, 1.0]);
        assert_eq!(p.derivative(), Poly::from_real(&[-3.0, 0.0, 3.0]));
        assert!(Poly::from_real(&[5.0]).derivative().is_zero());
        let p = Poly::from_real(&[0.0, -5.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(p.derivative(), Poly::from_real(&[-5.0, 0.0, 0.0, 0.0, 5.0]));
    }

    #[test]
    fn new_trims_leading_zeros() {
        let p = Poly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::<f64>::from_real(&[0.0]).degree(), None);
    }

    #[test]
    fn roots_of_examples() {
        let r = Poly::from_real(&[-1.0, 0.0, 1.0]).all_roots(1e-12).unwrap();
        assert_root_set(r, vec![c(1.0, 0.0), c(-1.0, 0.0)], 1e-12);

        let s3 = 3f64.sqrt();
        let r = Poly::from_real(&[0.0, -3.0, 0.0, 1.0]).all_roots(1e-12).unwrap();
        assert_root_set(r, vec![c(0.0, 0.0), c(s3, 0.0), c(-s3, 0.0)], 1e-12);

        let q = 5f64.powf(0.25);
        let r = Poly::from_real(&[0.0, -5.0, 0.0, 0.0, 0.0, 1.0])
            .all_roots(1e-12)
            .unwrap();
        assert_root_set(
            r,
            vec![c(0.0, 0.0), c(q, 0.0), c(-q, 0.0), c(0.0, q), c(0.0, -q)],
            1e-12,
        );
    }

    #[test]
    fn roots_of_exact_multiple_root_are_polished() {
        let r = Poly::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
            .all_roots(1e-12)
            .unwrap();
        assert!(r.iter().all(|z| z.norm() < 1e-6), "{r:?}");
        // Double root of z^3 - 3z + 2 at 1.
        let r = Poly::from_real(&[2.0, -3.0, 0.0, 1.0]).all_roots(1e-12).unwrap();
        assert!(min_separation(&r) < 1e-4);
    }

    #[test]
    fn degree_zero_rejected() {
        assert_eq!(
            Poly::from_real(&[3.0]).all_roots(1e-12),
            Err(PolyError::DegreeTooLow)
        );
        assert_eq!(Poly::<f64>::zero().all_roots(1e-12), Err(PolyError::DegreeTooLow));
    }

    #[test]
    fn linear_and_non_monic() {
        let r = Poly::new(vec![c(2.0, 2.0), c(0.0, 2.0)]).all_roots(1e-12).unwrap();
        assert_root_set(r, vec![c(-1.0, 1.0)], 1e-14);
        let r = Poly::from_real(&[-2.0, 0.0, 2.0]).all_roots(1e-12).unwrap();
        assert_root_set(r, vec![c(1.0, 0.0), c(-1.0, 0.0)], 1e-12);
    }

    #[test]
    fn f32_roots() {
        let p: Poly<f32> = Poly::from_real(&[-2.0, 0.0, 1.0]);
        let r = p.all_roots(1e-5).unwrap();
        let s = 2f32.sqrt();
        assert!(r.iter().any(|z| (z.re - s).abs() < 1e-4 && z.im.abs() < 1e-4));
        assert!(r.iter().any(|z| (z.re + s).abs() < 1e-4 && z.im.abs() < 1e-4));
    }

    #[test]
    fn min_separation_examples() {
        assert_eq!(min_separation(&[c(0.0, 0.0), c(1.0, 0.0)]), 1.0);
        let s3 = 3f64.sqrt();
        let roots = [c(0.0, 0.0), c(s3, 0.0), c(-s3, 0.0)];
        // Oracle: direct pairwise differences 0-s3, 0+s3, 2 s3.
        let oracle = [s3, s3, 2.0 * s3].into_iter().fold(f64::INFINITY, f64::min);
        assert_eq!(min_separation(&roots), oracle);
        assert_eq!(min_separation(&[c(1.0, 0.0), c(1.0, 0.0)]), 0.0);
    }

    #[test]
    fn from_roots_and_mul_agree() {
        let r = [c(1.0, 0.0), c(0.0, 2.0)];
        let lhs = Poly::from_roots(&r);
        let a = Poly::new(vec![-r[0], C::one()]);
        let b = Poly::new(vec![-r[1], C::one()]);
        assert_eq!(lhs, &a * &b);
        assert_eq!(&(&lhs - &lhs) + &Poly::zero(), Poly::zero());
    }
}
