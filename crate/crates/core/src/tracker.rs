//! Continuation of all roots of `p_a` along a parameter path.

use std::fmt::Write as _;

use thiserror::Error;

use crate::family::{sort_points, FamilyError, PolyFamily};
use crate::format;
use crate::path::PathError;
use crate::permgroup::Permutation;
use crate::poly::{min_separation, DEFAULT_ROOT_TOL};
use crate::{Complex, ParamPath, PathSegment};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrackError {
    #[error("BranchPointHit: root separation {separation:e} at t = {t}")]
    BranchPointHit { t: f64, separation: f64 },
    #[error("StepFailure: step size halved {halvings} times at t = {t}")]
    StepFailure { t: f64, halvings: usize },
    #[error("StartRootMismatch: start root {index} is not a simple root of p at the path start")]
    StartRootMismatch { index: usize },
    #[error("InvalidOptions: {0}")]
    InvalidOptions(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackOptions {
    /// Largest step, as a fraction of the total path length.
    pub initial_step: f64,
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub safety_factor: f64,
    pub max_halvings: usize,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            initial_step: 1e-2,
            newton_tol: 1e-12,
            max_newton_iters: 20,
            safety_factor: 0.5,
            max_halvings: 40,
        }
    }
}

impl TrackOptions {
    pub fn validate(&self) -> Result<(), TrackError> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.initial_step) || self.initial_step > 1.0 {
            return Err(TrackError::InvalidOptions("initial_step must lie in (0, 1]".into()));
        }
        if !positive(self.newton_tol) {
            return Err(TrackError::InvalidOptions("newton_tol must be positive".into()));
        }
        if self.max_newton_iters == 0 || self.max_halvings == 0 {
            return Err(TrackError::InvalidOptions(
                "max_newton_iters and max_halvings must be positive".into(),
            ));
        }
        if !(self.safety_factor > 0.0 && self.safety_factor < 1.0) {
            return Err(TrackError::InvalidOptions("safety_factor must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrackResult {
    /// For a closed path, `perm[i]` is the start slot where root `i` ends.
    pub perm: Option<Permutation>,
    /// Path parameters of the accepted steps, shared by all trajectories.
    pub params: Vec<f64>,
    /// `trajectories[i][k]` is root `i` at `params[k]`.
    pub trajectories: Vec<Vec<Complex>>,
    pub min_separation_seen: f64,
    pub steps_taken: usize,
}

impl TrackResult {
    pub fn trajectory(&self, i: usize) -> impl Iterator<Item = (f64, Complex)> + '_ {
        self.params.iter().copied().zip(self.trajectories[i].iter().copied())
    }

    pub fn final_roots(&self) -> Vec<Complex> {
        self.trajectories
            .iter()
            .map(|tr| *tr.last().expect("trajectories are nonempty"))
            .collect()
    }

    /// Rows `root_index,t,re,im` under a header line, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("root_index,t,re,im\n");
        for i in 0..self.trajectories.len() {
            for (t, z) in self.trajectory(i) {
                let _ = writeln!(out, "{i},{},{},{}", format::real(t), format::real(z.re), format::real(z.im));
            }
        }
        out
    }
}

/// Roots sorted by `(re, im)` after rounding to 1e-9.
pub fn canonical_numbering(roots: &[Complex]) -> Vec<Complex> {
    let mut out = roots.to_vec();
    sort_points(&mut out);
    out
}

/// Start roots of `f` at `a`, canonically numbered.
pub fn roots_at(f: &PolyFamily, a: Complex) -> Result<Vec<Complex>, TrackError> {
    let p = f.at_parameter(a)?;
    let roots = p.all_roots(DEFAULT_ROOT_TOL).map_err(FamilyError::Root)?;
    Ok(canonical_numbering(&roots))
}

fn newton(f: &PolyFamily, a: Complex, mut z: Complex, opts: &TrackOptions) -> Option<Complex> {
    for _ in 0..opts.max_newton_iters {
        let (p, pz, _) = f.eval_partials(a, z);
        if pz.norm() == 0.0 || !pz.is_finite() {
            return None;
        }
        // Residual at rounding level: further steps only chase noise.
        if p.norm() <= 64.0 * f64::EPSILON * f.eval_magnitude(a, z) {
            return Some(z);
        }
        let dz = p / pz;
        z -= dz;
        if !z.is_finite() {
            return None;
        }
        if dz.norm() <= opts.newton_tol * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

// Relaxed match of caller-supplied start roots against a fresh root solve.
const START_MATCH_TOL: f64 = 1e-6;

fn polish_start(
    f: &PolyFamily,
    a0: Complex,
    start_roots: &[Complex],
    opts: &TrackOptions,
) -> Result<Vec<Complex>, TrackError> {
    let fresh = f
        .at_parameter(a0)?
        .all_roots(DEFAULT_ROOT_TOL)
        .map_err(FamilyError::Root)?;
    if fresh.len() != start_roots.len() {
        return Err(TrackError::StartRootMismatch {
            index: start_roots.len().min(fresh.len()),
        });
    }
    let mut used = vec![false; fresh.len()];
    let mut out = Vec::with_capacity(start_roots.len());
    for (i, &z) in start_roots.iter().enumerate() {
        let polished = newton(f, a0, z, opts).unwrap_or(z);
        let (j, d) = fresh
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, w)| (j, (w - polished).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .ok_or(TrackError::StartRootMismatch { index: i })?;
        if d > START_MATCH_TOL * polished.norm().max(1.0) {
            return Err(TrackError::StartRootMismatch { index: i });
        }
        used[j] = true;
        out.push(polished);
    }
    Ok(out)
}

struct Stepper<'a> {
    f: &'a PolyFamily,
    opts: &'a TrackOptions,
    roots: Vec<Complex>,
    result: TrackResult,
}

impl Stepper<'_> {
    fn separation(&self, t: f64) -> Result<f64, TrackError> {
        let sep = min_separation(&self.roots);
        if sep < 10.0 * self.opts.newton_tol {
            return Err(TrackError::BranchPointHit { t, separation: sep });
        }
        Ok(sep)
    }

    /// One predictor-corrector step from `a0` to `a1`; `None` if rejected.
    fn try_step(&self, a0: Complex, a1: Complex, sep: f64) -> Result<Option<Vec<Complex>>, TrackError> {
        let da = a1 - a0;
        let limit = self.opts.safety_factor * sep / 2.0;
        let mut predicted = Vec::with_capacity(self.roots.len());
        let mut corrected = Vec::with_capacity(self.roots.len());
        for &z in &self.roots {
            let pred = z + self.f.implicit_velocity(a0, z)? * da;
            let Some(corr) = newton(self.f, a1, pred, self.opts) else {
                return Ok(None);
            };
            if (corr - pred).norm() > limit {
                return Ok(None);
            }
            predicted.push(pred);
            corrected.push(corr);
        }
        // Each prediction must be closest to its own correction.
        for (i, pred) in predicted.iter().enumerate() {
            let own = (corrected[i] - pred).norm();
            if corrected
                .iter()
                .enumerate()
                .any(|(j, c)| j != i && (c - pred).norm() <= own)
            {
                return Ok(None);
            }
        }
        Ok(Some(corrected))
    }

    fn record(&mut self, t: f64, sep: f64) {
        self.result.params.push(t);
        for (tr, &z) in self.result.trajectories.iter_mut().zip(&self.roots) {
            tr.push(z);
        }
        self.result.min_separation_seen = self.result.min_separation_seen.min(sep);
    }

    fn segment(&mut self, k: usize, seg: &PathSegment, max_step: f64) -> Result<(), TrackError> {
        let len = seg.length();
        if len == 0.0 {
            return Ok(());
        }
        let mut h = max_step;
        let mut s = 0.0;
        let kt = k as f64;
        while s < 1.0 {
            let sep = self.separation(kt + s)?;
            let mut halvings = 0;
            loop {
                let mut s1 = s + h / len;
                if s1 > 1.0 - 1e-12 {
                    s1 = 1.0;
                }
                if let Some(next) = self.try_step(seg.point(s), seg.point(s1), sep)? {
                    self.roots = next;
                    s = s1;
                    self.result.steps_taken += 1;
                    let sep = self.separation(kt + s)?;
                    self.record(kt + s, sep);
                    h = (2.0 * h).min(max_step);
                    break;
                }
                halvings += 1;
                if halvings > self.opts.max_halvings {
                    return Err(TrackError::StepFailure { t: kt + s, halvings });
                }
                h /= 2.0;
            }
        }
        Ok(())
    }
}

/// Continues `start_roots` (the roots of `p_a` at the start of `path`) along
/// the path by Euler prediction and Newton correction.
pub fn track(
    f: &PolyFamily,
    path: &ParamPath,
    start_roots: &[Complex],
    opts: &TrackOptions,
) -> Result<TrackResult, TrackError> {
    opts.validate()?;
    let a0 = path.start().ok_or(PathError::EmptyPath)?;
    let roots = polish_start(f, a0, start_roots, opts)?;
    let n = roots.len();
    let mut stepper = Stepper {
        f,
        opts,
        result: TrackResult {
            perm: None,
            params: Vec::new(),
            trajectories: vec![Vec::new(); n],
            min_separation_seen: f64::INFINITY,
            steps_taken: 0,
        },
        roots,
    };
    let sep0 = stepper.separation(0.0)?;
    stepper.record(0.0, sep0);
    let max_step = opts.initial_step * path.length();
    for (k, seg) in path.segments().iter().enumerate() {
        stepper.segment(k, seg, max_step)?;
    }
    let mut result = stepper.result;
    if path.is_closed() {
        result.perm = Some(match_final(&result, sep0, path.segments().len() as f64)?);
    }
    Ok(result)
}

fn match_final(result: &TrackResult, sep0: f64, t_end: f64) -> Result<Permutation, TrackError> {
    let starts: Vec<Complex> = result.trajectories.iter().map(|tr| tr[0]).collect();
    let mut images = Vec::with_capacity(starts.len());
    for z in result.final_roots() {
        let (j, d) = starts
            .iter()
            .enumerate()
            .map(|(j, w)| (j, (w - z).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("at least one root");
        if d > sep0 / 4.0 {
            return Err(TrackError::BranchPointHit {
                t: t_end,
                separation: d,
            });
        }
        images.push(j);
    }
    Permutation::new(images).map_err(|_| TrackError::BranchPointHit {
        t: t_end,
        separation: 0.0,
    })
}

/// The path permutation of the closed loop `lp`, with roots numbered by
/// `numbering` at its base point.
pub fn monodromy_perm(
    f: &PolyFamily,
    lp: &ParamPath,
    numbering: &[Complex],
    opts: &TrackOptions,
) -> Result<Permutation, TrackError> {
    if !lp.is_closed() {
        return Err(PathError::NotClosed.into());
    }
    Ok(track(f, lp, numbering, opts)?
        .perm
        .expect("closed paths yield a permutation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Lasso;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn fam(s: &str) -> PolyFamily {
        PolyFamily::parse(s).unwrap()
    }

    fn t(n: usize, i: usize, j: usize) -> Permutation {
        Permutation::transposition(n, i, j).unwrap()
    }

    #[test]
    fn quadratic_lasso_swaps() {
        let f = fam("z^2 - 2 z + a");
        let lp = Lasso::new(c(0.0, 0.0), c(1.0, 0.0), 0.01, 1).compile().unwrap();
        let r = track(&f, &lp, &[c(0.0, 0.0), c(2.0, 0.0)], &TrackOptions::default()).unwrap();
        assert_eq!(r.perm, Some(t(2, 0, 1)));
        assert_eq!(r.params.len(), r.steps_taken + 1);
        assert!(r.trajectories.iter().all(|tr| tr.len() == r.params.len()));
    }

    #[test]
    fn null_path_is_identity() {
        let f = fam("z^3 - 3 z + a");
        let start = roots_at(&f, c(0.0, 0.0)).unwrap();
        let r = track(&f, &ParamPath::stationary(c(0.0, 0.0)), &start, &TrackOptions::default()).unwrap();
        assert!(r.perm.unwrap().is_identity());
        let out_and_back = Lasso::new(c(0.0, 0.0), c(2.0, 0.0), 0.1, 0).compile().unwrap();
        assert!(monodromy_perm(&f, &out_and_back, &start, &TrackOptions::default())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn cubic_lassos() {
        let f = fam("z^3 - 3 z + a");
        let s3 = 3f64.sqrt();
        let start = [c(0.0, 0.0), c(s3, 0.0), c(-s3, 0.0)];
        let opts = TrackOptions::default();
        let around2 = Lasso::new(c(0.0, 0.0), c(2.0, 0.0), 0.5, 1).compile().unwrap();
        assert_eq!(monodromy_perm(&f, &around2, &start, &opts).unwrap(), t(3, 0, 1));
        let around_m2 = Lasso::new(c(0.0, 0.0), c(-2.0, 0.0), 0.5, 1).compile().unwrap();
        assert_eq!(monodromy_perm(&f, &around_m2, &start, &opts).unwrap(), t(3, 0, 2));
    }

    #[test]
    fn root_of_parameter_cycles() {
        for n in 2..=6 {
            let f = PolyFamily::root_of_parameter(n);
            let start: Vec<Complex> = (0..n)
                .map(|k| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
                .collect();
            let circle = ParamPath::circle(c(0.0, 0.0), 1.0, 0.0, 1);
            let perm = monodromy_perm(&f, &circle, &start, &TrackOptions::default()).unwrap();
            let expected: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
            assert_eq!(perm.images(), &expected[..]);
        }
    }

    #[test]
    fn quintic_lasso_around_four() {
        let f = fam("z^5 - 5 z + a");
        let start = roots_at(&f, c(0.0, 0.0)).unwrap();
        let lp = Lasso::new(c(0.0, 0.0), c(4.0, 0.0), 1.0, 1).compile().unwrap();
        let perm = monodromy_perm(&f, &lp, &start, &TrackOptions::default()).unwrap();
        let zero = start.iter().position(|z| z.norm() < 1e-9).unwrap();
        let r4 = start.iter().position(|z| (z - c(5f64.powf(0.25), 0.0)).norm() < 1e-9).unwrap();
        assert_eq!(perm, t(5, zero, r4));
    }

    #[test]
    fn csv_and_errors() {
        let f = fam("z^2 - a");
        let line = ParamPath::line(c(1.0, 0.0), c(4.0, 0.0));
        let r = track(&f, &line, &[c(1.0, 0.0), c(-1.0, 0.0)], &TrackOptions::default()).unwrap();
        assert!(r.perm.is_none());
        let last = r.final_roots();
        assert!((last[0] - c(2.0, 0.0)).norm() < 1e-10);
        let csv = r.to_csv();
        assert!(csv.starts_with("root_index,t,re,im\n0,0,1,0\n"));
        assert_eq!(csv.lines().count(), 1 + 2 * r.params.len());

        let through = ParamPath::line(c(1.0, 0.0), c(-1.0, 0.0));
        assert!(matches!(
            track(&f, &through, &[c(1.0, 0.0), c(-1.0, 0.0)], &TrackOptions::default()),
            Err(TrackError::BranchPointHit { .. }) | Err(TrackError::StepFailure { .. })
        ));
        assert!(matches!(
            track(&f, &line, &[c(1.0, 0.0), c(1.5, 0.0)], &TrackOptions::default()),
            Err(TrackError::StartRootMismatch { index: 1 })
        ));
        assert!(matches!(
            monodromy_perm(&f, &line, &[c(1.0, 0.0), c(-1.0, 0.0)], &TrackOptions::default()),
            Err(TrackError::Path(PathError::NotClosed))
        ));
        let bad = TrackOptions {
            safety_factor: 1.0,
            ..TrackOptions::default()
        };
        assert!(matches!(bad.validate(), Err(TrackError::InvalidOptions(_))));
    }

    #[test]
    fn canonical_numbering_examples() {
        let s3 = 3f64.sqrt();
        assert_eq!(
            canonical_numbering(&[c(s3, 0.0), c(0.0, 0.0), c(-s3, 0.0)]),
            vec![c(-s3, 0.0), c(0.0, 0.0), c(s3, 0.0)]
        );
        let r = 5f64.powf(0.25);
        let roots = roots_at(&fam("z^5 - 5 z"), c(0.0, 0.0)).unwrap();
        let expected = [c(-r, 0.0), c(0.0, -r), c(0.0, 0.0), c(0.0, r), c(r, 0.0)];
        for (x, y) in roots.iter().zip(&expected) {
            assert!((x - y).norm() < 1e-12);
        }
        assert_eq!(canonical_numbering(&[c(2.0, 1.0)]), vec![c(2.0, 1.0)]);
    }
}
