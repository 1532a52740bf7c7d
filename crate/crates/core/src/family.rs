//! One-parameter families `p_a(z)` with coefficients polynomial in `a`, their
//! discriminants and branch points.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::{self, Expr, ParseError, Symbol};
use crate::poly::{min_separation, PolyError, DEFAULT_ROOT_TOL};
use crate::{Complex, ComplexPoly};

/// Default clustering tolerance of [`PolyFamily::branch_points`].
pub const DEFAULT_BRANCH_TOL: f64 = 1e-7;
/// Modulus below which `dp/dz` counts as vanishing.
pub const SINGULAR_EPS: f64 = 1e-12;
/// Relative modulus below which the leading coefficient counts as vanishing.
const LEADING_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("DegreeTooLow: family must have degree >= {needed} in z")]
    DegreeTooLow { needed: usize },
    #[error("DegenerateLeadingCoeff: leading z-coefficient vanishes at a = {a}")]
    DegenerateLeadingCoeff { a: Complex },
    #[error("InterpolationIllConditioned: {0}")]
    InterpolationIllConditioned(String),
    #[error("SingularPoint: dp/dz vanishes at a = {a}, z = {z}")]
    SingularPoint { a: Complex, z: Complex },
    #[error(transparent)]
    Root(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `p_a(z) = sum_k coeffs[k](a) z^k`.
#[derive(Clone, PartialEq)]
pub struct PolyFamily {
    coeffs: Vec<ComplexPoly>,
}

/// Parameter values where `p_a` has a multiple root.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSet {
    pub points: Vec<Complex>,
    /// Largest relative discriminant modulus at the reported points.
    pub residual: f64,
    /// Roots of the discriminant where the leading coefficient vanishes.
    pub degenerate: Vec<Complex>,
}

impl BranchSet {
    /// Branch points together with degree-drop points; every loop generator
    /// has to go around each of these.
    pub fn excluded(&self) -> Vec<Complex> {
        let mut all = self.points.clone();
        all.extend_from_slice(&self.degenerate);
        all
    }
}

impl PolyFamily {
    /// `coeffs[k]` is the coefficient of `z^k` as a polynomial in `a`.
    pub fn new(mut coeffs: Vec<ComplexPoly>) -> Result<Self, FamilyError> {
        while coeffs.last().is_some_and(|p| p.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(FamilyError::DegreeTooLow { needed: 1 });
        }
        Ok(PolyFamily { coeffs })
    }

    /// Parses a literal such as `z^5 - 5*z + a`.
    pub fn parse(s: &str) -> Result<Self, FamilyError> {
        let e = expr::parse_with(s, &|sym| matches!(sym, Symbol::Z | Symbol::A))?;
        Self::new(e.expand_bivariate()?)
    }

    /// `z^n - a`.
    pub fn root_of_parameter(n: usize) -> Self {
        let mut coeffs = vec![ComplexPoly::zero(); n + 1];
        coeffs[0] = ComplexPoly::monomial(-Complex::one(), 1);
        coeffs[n] = ComplexPoly::constant(Complex::one());
        Self::new(coeffs).expect("n >= 1")
    }

    /// Family with coefficients constant in `a` except `coeffs[0] += a`.
    pub fn with_parameter_offset(p: &ComplexPoly) -> Result<Self, FamilyError> {
        let mut coeffs: Vec<ComplexPoly> =
            p.coeffs().iter().map(|&c| ComplexPoly::constant(c)).collect();
        if coeffs.is_empty() {
            return Err(FamilyError::DegreeTooLow { needed: 1 });
        }
        coeffs[0] = &coeffs[0] + &ComplexPoly::identity();
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs_in_a(&self) -> &[ComplexPoly] {
        &self.coeffs
    }

    /// Highest power of `a` appearing in any coefficient.
    pub fn degree_in_a(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(&self, s: Complex) -> Self {
        PolyFamily {
            coeffs: self.coeffs.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// Coefficients at `a` without degree trimming.
    fn formal_coeffs(&self, a: Complex) -> Vec<Complex> {
        self.coeffs.iter().map(|p| p.eval(a)).collect()
    }

    fn leading_vanishes(&self, a: Complex) -> bool {
        let lead = &self.coeffs[self.degree()];
        let scale = lead
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * a.norm().powi(k as i32))
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        lead.eval(a).norm() <= LEADING_EPS * scale
    }

    /// `p_a` at a fixed parameter value.
    pub fn at_parameter(&self, a: Complex) -> Result<ComplexPoly, FamilyError> {
        if self.leading_vanishes(a) {
            return Err(FamilyError::DegenerateLeadingCoeff { a });
        }
        Ok(ComplexPoly::new(self.formal_coeffs(a)))
    }

    /// `p_a(z)`.
    pub fn eval(&self, a: Complex, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, p| acc * z + p.eval(a))
    }

    /// `sum_k sum_j |c_kj| |a|^j |z|^k`, the scale of rounding error in
    /// [`Self::eval`].
    pub fn eval_magnitude(&self, a: Complex, z: Complex) -> f64 {
        let (ra, rz) = (a.norm(), z.norm());
        self.coeffs.iter().rev().fold(0.0, |acc, p| {
            acc * rz + p.coeffs().iter().rev().fold(0.0, |m, c| m * ra + c.norm())
        })
    }

    /// `(p, dp/dz, dp/da)` at `(a, z)`.
    pub fn eval_partials(&self, a: Complex, z: Complex) -> (Complex, Complex, Complex) {
        let mut p = Complex::zero();
        let mut pz = Complex::zero();
        let mut pa = Complex::zero();
        for c in self.coeffs.iter().rev() {
            let (v, dv) = c.eval_with_derivative(a);
            pz = pz * z + p;
            p = p * z + v;
            pa = pa * z + dv;
        }
        (p, pz, pa)
    }

    /// Root velocity `dz/da = -(dp/da)/(dp/dz)`.
    pub fn implicit_velocity(&self, a: Complex, z: Complex) -> Result<Complex, FamilyError> {
        let (_, pz, pa) = self.eval_partials(a, z);
        if pz.norm() <= SINGULAR_EPS {
            return Err(FamilyError::SingularPoint { a, z });
        }
        Ok(-pa / pz)
    }

    /// Resultant of `p_a` and `dp_a/dz` at one parameter value, formal degrees.
    ///
    /// The resultant is invariant under `z -> z + c` and picks up a factor
    /// `s^(n^2)` under `z -> s z`, so the determinant is taken for the
    /// polynomial recentred on its root centroid and scaled to unit root
    /// radius, which keeps the Sylvester matrix well conditioned.
    fn resultant_at(&self, a: Complex) -> Complex {
        let p = self.formal_coeffs(a);
        let n = p.len() - 1;
        let (q, s) = normalize_roots(&p).unwrap_or((p, 1.0));
        let dq: Vec<Complex> = q
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        sylvester_resultant(&q, &dq) / s.powi((n * n) as i32)
    }

    /// Samples the resultant on `n_nodes` points of the circle of radius
    /// `radius`, rotated by `phase` node spacings, and inverts the discrete
    /// Fourier transform. Also returns the largest sample modulus.
    fn interpolate_discriminant(
        &self,
        n_nodes: usize,
        radius: f64,
        phase: f64,
    ) -> Result<(Vec<Complex>, f64), FamilyError> {
        let step = 2.0 * std::f64::consts::PI / n_nodes as f64;
        let values: Vec<Complex> = (0..n_nodes)
            .map(|j| self.resultant_at(Complex::from_polar(radius, step * (j as f64 + phase))))
            .collect();
        let vmax = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !vmax.is_finite() {
            return Err(FamilyError::InterpolationIllConditioned(
                "non-finite resultant samples".into(),
            ));
        }
        if vmax == 0.0 {
            return Err(FamilyError::InterpolationIllConditioned(
                "resultant vanishes at every node: p_a has a multiple root for all a".into(),
            ));
        }
        let coeffs = (0..n_nodes)
            .map(|k| {
                let mut acc = Complex::zero();
                for (j, &v) in values.iter().enumerate() {
                    let angle = step * (((j * k) % n_nodes) as f64 + phase * k as f64);
                    acc += v * Complex::from_polar(1.0, -angle);
                }
                acc / n_nodes as f64 / radius.powi(k as i32)
            })
            .collect();
        Ok((coeffs, vmax))
    }

    /// Two interpolations on interleaved node sets. The spread between them
    /// estimates the evaluation noise, returned relative to the sample modulus.
    fn sampled_pass(&self, n_nodes: usize, radius: f64) -> Result<Pass, FamilyError> {
        let (a, va) = self.interpolate_discriminant(n_nodes, radius, 0.0)?;
        let (b, vb) = self.interpolate_discriminant(n_nodes, radius, 0.5)?;
        let vmax = va.max(vb);
        let diff = a
            .iter()
            .zip(&b)
            .enumerate()
            .map(|(k, (x, y))| (x - y).norm() * radius.powi(k as i32))
            .fold(0.0, f64::max);
        let coeffs = a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect();
        Ok(Pass {
            coeffs,
            radius,
            vmax,
            noise: diff / vmax,
        })
    }

    /// Discriminant-like polynomial `D(a) = Res_z(p_a, dp_a/dz)`, computed by
    /// evaluation on scaled roots of unity and interpolation. Its roots are the
    /// parameter values where `p_a` and `dp_a/dz` share a root (plus those where
    /// the leading coefficient vanishes).
    pub fn discriminant_in_a(&self) -> Result<ComplexPoly, FamilyError> {
        Ok(self.discriminant_with_noise()?.0)
    }

    /// [`Self::discriminant_in_a`] together with an absolute noise estimate
    /// for each coefficient.
    fn discriminant_with_noise(&self) -> Result<(ComplexPoly, Vec<f64>), FamilyError> {
        let n = self.degree();
        if n < 2 {
            return Err(FamilyError::DegreeTooLow { needed: 2 });
        }
        let n_nodes = self.degree_in_a() * (2 * n - 1) + 1;
        let first = self.sampled_pass(n_nodes, 1.0)?;
        // Resample on circles matching the largest and smallest nonzero root
        // scales of the first estimate, ignoring coefficients at its noise level.
        let trimmed = first.trimmed();
        let large = root_scale(&ComplexPoly::new(trimmed.clone()));
        let small = {
            let low: Vec<Complex> = trimmed.iter().copied().skip_while(|c| c.is_zero()).collect();
            1.0 / root_scale(&ComplexPoly::new(low.into_iter().rev().collect()))
        };
        let mut passes = vec![first];
        for radius in [large, small] {
            if radius.is_finite() && radius > 0.0 && !(0.67..=1.5).contains(&radius) {
                passes.push(self.sampled_pass(n_nodes, radius)?);
            }
        }
        // Coefficient k of a pass carries noise of about vmax / R^k; keep the quieter one.
        let mut coeffs = Vec::with_capacity(n_nodes);
        let mut noise = Vec::with_capacity(n_nodes);
        for k in 0..n_nodes {
            let best = passes
                .iter()
                .min_by(|x, y| x.noise_at(k).total_cmp(&y.noise_at(k)))
                .expect("at least one pass");
            let (c, delta) = (best.coeffs[k], best.noise_at(k));
            coeffs.push(if c.norm() <= delta { Complex::zero() } else { c });
            noise.push((2.5 * delta).max(DISC_NOISE * c.norm()));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(FamilyError::InterpolationIllConditioned(
                "interpolated discriminant is numerically zero".into(),
            ));
        }
        Ok((ComplexPoly::new(coeffs), noise))
    }

    /// Branch points: clustered roots of [`Self::discriminant_in_a`], each
    /// confirmed by a pair of roots of `p_b` that nearly coincide.
    ///
    /// A root of `D` of multiplicity `m` comes back from the root finder as a
    /// ring of `m` nearby points. Roots are merged agglomeratively, nearest
    /// pairs first, while the merged ring is no wider than the perturbation
    /// radius `(eta S(c) m! / |D^(m)(c)|)^(1/m)` predicted by the noise level of
    /// the interpolated coefficients; the centre `c` is the root of `D^(m-1)`
    /// the ring surrounds.
    pub fn branch_points(&self, tol: f64) -> Result<BranchSet, FamilyError> {
        if self.degree() < 2 {
            return Ok(BranchSet {
                points: Vec::new(),
                residual: 0.0,
                degenerate: Vec::new(),
            });
        }
        let (disc, noise) = self.discriminant_with_noise()?;
        if disc.degree().unwrap_or(0) == 0 {
            return Ok(BranchSet {
                points: Vec::new(),
                residual: 0.0,
                degenerate: Vec::new(),
            });
        }
        let raw = disc.all_roots(DEFAULT_ROOT_TOL)?;
        let clusters = cluster_roots(&disc, &noise, &raw, tol);

        let mut points = Vec::new();
        let mut degenerate = Vec::new();
        for cluster in &clusters {
            let b = snap(cluster.center, tol);
            match self.verify(b, tol, cluster.members.len())? {
                Verdict::Branch => points.push(b),
                Verdict::Degenerate => degenerate.push(b),
                Verdict::Spurious => {}
            }
        }
        sort_points(&mut points);
        sort_points(&mut degenerate);
        let residual = points
            .iter()
            .map(|&b| relative_residual(&disc, b))
            .fold(0.0, f64::max);
        Ok(BranchSet {
            points,
            residual,
            degenerate,
        })
    }

    /// Root-pair check at a candidate. A candidate that is an `m`-fold root of
    /// the discriminant is located only to about `tol^(1/m)`, and the roots of
    /// `p` split like a fractional power of that error, so the pair threshold
    /// is `tol^(1/(2m))`.
    fn verify(&self, b: Complex, tol: f64, multiplicity: usize) -> Result<Verdict, FamilyError> {
        if self.leading_vanishes(b) {
            return Ok(Verdict::Degenerate);
        }
        let p = self.at_parameter(b)?;
        let roots = p.all_roots(DEFAULT_ROOT_TOL)?;
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        let threshold = tol.powf(1.0 / (2 * multiplicity.max(1)) as f64);
        Ok(if min_separation(&roots) < threshold * scale {
            Verdict::Branch
        } else {
            Verdict::Spurious
        })
    }

    /// Expression tree of the family, used for printing.
    pub fn to_expr(&self) -> Expr {
        let mut terms: Vec<(Complex, usize, usize)> = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate().rev() {
            for (j, &c) in p.coeffs().iter().enumerate().rev() {
                if !c.is_zero() {
                    terms.push((c, k, j));
                }
            }
        }
        let monomial = |k: usize, j: usize| -> Option<Expr> {
            let pw = |s: Symbol, e: usize| match e {
                0 => None,
                1 => Some(Expr::var(s)),
                e => Some(Expr::Pow(Box::new(Expr::var(s)), e as i32)),
            };
            match (pw(Symbol::A, j), pw(Symbol::Z, k)) {
                (None, None) => None,
                (Some(x), None) | (None, Some(x)) => Some(x),
                (Some(x), Some(y)) => Some(Expr::Mul(Box::new(x), Box::new(y))),
            }
        };
        let term = |c: Complex, k: usize, j: usize| -> Expr {
            match monomial(k, j) {
                None => Expr::Const(c),
                Some(m) if c == Complex::one() => m,
                Some(m) => Expr::Mul(Box::new(Expr::Const(c)), Box::new(m)),
            }
        };
        let mut acc: Option<Expr> = None;
        for (c, k, j) in terms {
            let negative_real = c.im == 0.0 && c.re < 0.0;
            acc = Some(match acc {
                None => term(c, k, j),
                Some(e) if negative_real => Expr::Sub(Box::new(e), Box::new(term(-c, k, j))),
                Some(e) => Expr::Add(Box::new(e), Box::new(term(c, k, j))),
            });
        }
        acc.unwrap_or(Expr::real(0.0))
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl fmt::Debug for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFamily({self})")
    }
}

/// Floor on the relative noise level of interpolated discriminant coefficients.
const DISC_NOISE: f64 = 1e-11;

/// Floor on coefficient noise relative to the sample modulus.
const COEFF_NOISE: f64 = 1e-13;

/// One interpolation of the discriminant on a circle of radius `radius`.
struct Pass {
    coeffs: Vec<Complex>,
    radius: f64,
    vmax: f64,
    noise: f64,
}

impl Pass {
    /// Absolute noise on coefficient `k`.
    fn noise_at(&self, k: usize) -> f64 {
        COEFF_NOISE.max(4.0 * self.noise) * self.vmax / self.radius.powi(k as i32)
    }

    fn trimmed(&self) -> Vec<Complex> {
        let level = DISC_NOISE.max(10.0 * self.noise) * self.vmax;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                if c.norm() * self.radius.powi(k as i32) <= level {
                    Complex::zero()
                } else {
                    c
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Verdict {
    Branch,
    Degenerate,
    Spurious,
}

struct Cluster {
    members: Vec<Complex>,
    center: Complex,
}

fn cluster_roots(disc: &ComplexPoly, noise: &[f64], roots: &[Complex], tol: f64) -> Vec<Cluster> {
    let mut clusters: Vec<Cluster> = roots
        .iter()
        .map(|&r| Cluster {
            members: vec![r],
            center: r,
        })
        .collect();
    let mut owner: Vec<usize> = (0..roots.len()).collect();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            pairs.push(((roots[i] - roots[j]).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (d, i, j) in pairs {
        let (ci, cj) = (owner[i], owner[j]);
        if ci == cj {
            continue;
        }
        let mut members = clusters[ci].members.clone();
        members.extend_from_slice(&clusters[cj].members);
        let center = refine_center(disc, &members);
        let scale = center.norm().max(1.0);
        let spread = members
            .iter()
            .map(|m| (m - center).norm())
            .fold(0.0, f64::max);
        let centroid = members.iter().sum::<Complex>() / members.len() as f64;
        // A scattered multiple root keeps its centroid; the centre may not drift.
        let centred = (center - centroid).norm() <= 0.1 * spread;
        let merge = d <= tol * scale || (centred && looks_multiple(disc, noise, center, members.len(), spread));
        if merge {
            let (keep, drop) = (ci.min(cj), ci.max(cj));
            clusters[keep] = Cluster { members, center };
            clusters[drop].members.clear();
            for o in owner.iter_mut() {
                if *o == drop {
                    *o = keep;
                }
            }
        }
    }
    clusters.retain(|c| !c.members.is_empty());
    clusters
}

/// Root of `D^(m-1)` near the centroid of an `m`-member cluster.
fn refine_center(disc: &ComplexPoly, members: &[Complex]) -> Complex {
    let centroid = members.iter().sum::<Complex>() / members.len() as f64;
    let mut deriv = disc.clone();
    for _ in 1..members.len() {
        deriv = deriv.derivative();
    }
    let spread = members
        .iter()
        .map(|m| (m - centroid).norm())
        .fold(0.0, f64::max);
    let mut c = centroid;
    for _ in 0..50 {
        let (v, dv) = deriv.eval_with_derivative(c);
        if dv.is_zero() {
            break;
        }
        let step = v / dv;
        c -= step;
        if step.norm() <= 1e-15 * c.norm().max(1.0) {
            break;
        }
    }
    if c.re.is_finite() && c.im.is_finite() && (c - centroid).norm() <= 0.5 * spread + 1e-12 * centroid.norm().max(1.0) {
        c
    } else {
        centroid
    }
}

/// Whether `m` roots within `spread` of `c` are consistent with one `m`-fold
/// root of `disc` scattered by coefficient noise. With `T_j` the Taylor
/// coefficients of `disc` at `c` and `N_j` their propagated noise, the terms
/// below order `m` must be at noise level and the ring no wider than the
/// Newton-polygon radius `max_j (N_j / |T_m|)^(1/(m-j))`.
fn looks_multiple(disc: &ComplexPoly, noise: &[f64], c: Complex, m: usize, spread: f64) -> bool {
    let r = c.norm();
    let mut deriv = disc.clone();
    let mut noise_deriv: Vec<f64> = noise.to_vec();
    let mut factorial = 1.0;
    let mut binomial = 1.0;
    let mut taylor_noise = Vec::with_capacity(m);
    for j in 0..m {
        if j > 0 {
            deriv = deriv.derivative();
            noise_deriv = noise_deriv
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, d)| d * k as f64)
                .collect();
            factorial *= j as f64;
            binomial *= (m + 1 - j) as f64 / j as f64;
        }
        let n_j = noise_deriv.iter().rev().fold(0.0, |acc, d| acc * r + d) / factorial;
        if deriv.eval(c).norm() / factorial > 100.0 * binomial * n_j {
            return false;
        }
        taylor_noise.push(n_j);
    }
    let top = deriv.derivative().eval(c).norm() / (factorial * m as f64);
    if top == 0.0 {
        return false;
    }
    let radius = taylor_noise
        .iter()
        .enumerate()
        .map(|(j, n_j)| (n_j / top).powf(1.0 / (m - j) as f64))
        .fold(0.0, f64::max);
    spread <= 4.0 * radius
}

/// Zeroes parts that are below `tol` relative to the modulus.
fn snap(b: Complex, tol: f64) -> Complex {
    let scale = b.norm().max(1.0);
    let re = if b.re.abs() <= tol * scale * 1e-3 { 0.0 } else { b.re };
    let im = if b.im.abs() <= tol * scale * 1e-3 { 0.0 } else { b.im };
    Complex::new(re, im)
}

fn relative_residual(p: &ComplexPoly, z: Complex) -> f64 {
    let scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * z.norm().powi(k as i32))
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        p.eval(z).norm() / scale
    }
}

/// `p(s z + c)` with `c` the root centroid and `s` a root-radius bound of the
/// shifted polynomial; `None` when the leading coefficient is nearly zero.
fn normalize_roots(p: &[Complex]) -> Option<(Vec<Complex>, f64)> {
    let n = p.len() - 1;
    let lead = p[n];
    let c = -p[n - 1] / (lead * n as f64);
    if c.norm().is_nan() || c.norm() > 1e6 {
        return None;
    }
    // Taylor shift by repeated synthetic division.
    let mut q = p.to_vec();
    for i in 0..n {
        for k in (i..n).rev() {
            let hi = q[k + 1];
            q[k] += c * hi;
        }
    }
    let s = (0..n)
        .map(|k| (q[k].norm() / lead.norm()).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max);
    if !(s > 0.0 && s.is_finite()) {
        return None;
    }
    let mut sk = 1.0;
    for coeff in q.iter_mut() {
        *coeff *= sk;
        sk *= s;
    }
    Some((q, s))
}

/// Largest root-modulus scale `max_k (|c_k| / |c_d|)^(1/(d-k))`.
fn root_scale(p: &ComplexPoly) -> f64 {
    let Some(d) = p.degree() else { return 1.0 };
    if d == 0 {
        return 1.0;
    }
    let lead = p.coeff(d).norm();
    (0..d)
        .map(|k| (p.coeff(k).norm() / lead).powf(1.0 / (d - k) as f64))
        .fold(0.0, f64::max)
}

/// Orders points by real part, then imaginary part, after rounding to 1e-9.
pub fn sort_points(points: &mut [Complex]) {
    points.sort_by_key(|z| rounded_key(*z));
}

pub(crate) fn rounded_key(z: Complex) -> (i64, i64) {
    let r = |x: f64| {
        let v = (x / 1e-9).round();
        if v == 0.0 {
            0
        } else {
            v as i64
        }
    };
    (r(z.re), r(z.im))
}

/// Determinant of the Sylvester matrix of `p` and `q` (ascending coefficients,
/// formal degrees `len - 1`).
pub fn sylvester_resultant(p: &[Complex], q: &[Complex]) -> Complex {
    let m = p.len().saturating_sub(1);
    let k = q.len().saturating_sub(1);
    let size = m + k;
    if size == 0 {
        return Complex::one();
    }
    let mut mat = vec![vec![Complex::zero(); size]; size];
    for row in 0..k {
        for (j, &c) in p.iter().rev().enumerate() {
            mat[row][row + j] = c;
        }
    }
    for row in 0..m {
        for (j, &c) in q.iter().rev().enumerate() {
            mat[k + row][row + j] = c;
        }
    }
    determinant(mat)
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(mut mat: Vec<Vec<Complex>>) -> Complex {
    let n = mat.len();
    let mut det = Complex::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| mat[a][col].norm().total_cmp(&mat[b][col].norm()))
            .expect("nonempty range");
        if mat[pivot][col].is_zero() {
            return Complex::zero();
        }
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let pv = mat[col][col];
        det *= pv;
        let (upper, lower) = mat.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = row[col] / pv;
            if factor.is_zero() {
                continue;
            }
            for (x, &v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * v;
            }
        }
    }
    det
}
