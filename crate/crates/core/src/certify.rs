//! Monodromy reports and the commutator-closure obstruction to solving a
//! family by radicals.

use serde_json::{json, Value};
use thiserror::Error;

use crate::family::{FamilyError, PolyFamily, DEFAULT_BRANCH_TOL};
use crate::format;
use crate::path::{default_lasso_radius, PathError};
use crate::permgroup::{GroupName, PermError, PermSet, Permutation};
use crate::tracker::{monodromy_perm, roots_at, TrackError, TrackOptions};
use crate::{Complex, ComplexPoly, Lasso, ParamPath};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_DEPTH: usize = 10;

/// Bases closer than this (relative) to an excluded point are rejected.
const BASE_CLEARANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("BaseIsBranchPoint: base {base} is at or next to a branch point")]
    BaseIsBranchPoint { base: Complex },
    #[error("InvalidCycleType: {0}")]
    InvalidCycleType(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LassoPerm {
    pub target: Complex,
    pub radius: f64,
    pub perm: Permutation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyReport {
    pub family: String,
    pub base: Complex,
    /// Roots at the base, in the numbering used by every permutation.
    pub numbering: Vec<Complex>,
    pub branch_points: Vec<Complex>,
    /// Points where the degree in `z` drops; they are encircled as well.
    pub degenerate_points: Vec<Complex>,
    pub lassos: Vec<LassoPerm>,
    pub group: PermSet,
}

impl MonodromyReport {
    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn group_name(&self) -> GroupName {
        self.group.name()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "family": self.family,
            "base": format::complex(self.base),
            "root_numbering": self.numbering.iter().map(|&z| format::complex(z)).collect::<Vec<_>>(),
            "branch_points": self.branch_points.iter().map(|&z| format::complex(z)).collect::<Vec<_>>(),
            "degenerate_points": self.degenerate_points.iter().map(|&z| format::complex(z)).collect::<Vec<_>>(),
            "lassos": self.lassos.iter().map(|l| json!({
                "target": format::complex(l.target),
                "radius": format::real(l.radius),
                "permutation_cycles": l.perm.to_string(),
            })).collect::<Vec<_>>(),
            "group_order": self.group_order(),
            "group_name": self.group_name().as_str(),
        })
    }
}

fn scale_of(points: &[Complex]) -> f64 {
    points.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// Tracks one lasso around every branch point and degree-drop point from
/// `base` and generates the monodromy group. Lassos run in parallel.
pub fn monodromy_report(
    f: &PolyFamily,
    base: Complex,
    opts: &TrackOptions,
) -> Result<MonodromyReport, CertifyError> {
    let branch = f.branch_points(DEFAULT_BRANCH_TOL)?;
    let excluded = branch.excluded();
    let scale = scale_of(&excluded).max(base.norm());
    if excluded.iter().any(|b| (b - base).norm() <= BASE_CLEARANCE * scale) {
        return Err(CertifyError::BaseIsBranchPoint { base });
    }
    let numbering = roots_at(f, base)?;
    let n = numbering.len();

    let jobs: Vec<(Complex, f64, ParamPath)> = excluded
        .iter()
        .map(|&target| {
            let radius = default_lasso_radius(base, target, &excluded);
            lasso_avoiding(base, target, &excluded, radius, 1).map(|p| (target, radius, p))
        })
        .collect::<Result<_, _>>()?;

    let perms: Vec<Result<Permutation, TrackError>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(_, _, lp)| s.spawn(|| monodromy_perm(f, lp, &numbering, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("tracking thread panicked"))
            .collect()
    });
    let mut lassos = Vec::with_capacity(jobs.len());
    for ((target, radius, _), perm) in jobs.into_iter().zip(perms) {
        lassos.push(LassoPerm {
            target,
            radius,
            perm: perm?,
        });
    }
    let gens = lassos
        .iter()
        .map(|l| l.perm.clone())
        .chain(std::iter::once(Permutation::identity(n)));
    let group = PermSet::new(n, gens)?.generate()?;
    Ok(MonodromyReport {
        family: f.to_string(),
        base,
        numbering,
        branch_points: branch.points,
        degenerate_points: branch.degenerate,
        lassos,
        group,
    })
}

/// Lasso from `base` around `target` whose approach detours around every
/// other point of `excluded`, keeping each at its default lasso clearance.
pub fn lasso_avoiding(
    base: Complex,
    target: Complex,
    excluded: &[Complex],
    radius: f64,
    turns: i32,
) -> Result<ParamPath, PathError> {
    let obstacles: Vec<(Complex, f64)> = excluded
        .iter()
        .filter(|&&b| (b - target).norm() > 1e-12 * target.norm().max(1.0))
        .map(|&b| (b, default_lasso_radius(base, b, excluded)))
        .collect();
    Lasso::new(base, target, radius, turns).compile_avoiding(&obstacles)
}

/// A base point well away from every excluded point: the first candidate
/// of a fixed list whose distance to them is at least a tenth of their spread.
pub fn default_base(f: &PolyFamily) -> Result<Complex, CertifyError> {
    let excluded = f.branch_points(DEFAULT_BRANCH_TOL)?.excluded();
    let scale = scale_of(&excluded);
    let candidates = [
        Complex::new(0.0, 0.0),
        Complex::new(0.0, 0.37),
        Complex::new(-0.29, -0.43),
        Complex::new(0.53, 0.11),
        Complex::new(0.17, -0.61),
    ];
    let clearance = |b: Complex| {
        excluded
            .iter()
            .map(|e| (e - b).norm())
            .fold(f64::INFINITY, f64::min)
    };
    for c in candidates {
        let b = c * scale;
        if clearance(b) >= 0.1 * scale {
            return Ok(b);
        }
    }
    let best = candidates
        .iter()
        .map(|&c| c * scale)
        .max_by(|x, y| clearance(*x).total_cmp(&clearance(*y)))
        .expect("candidates are nonempty");
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelVerdict {
    /// The closure series stabilized at a nontrivial group.
    Unsolvable,
    /// The series reached the trivial group after this many steps, so any
    /// radical formula needs at least this many root levels.
    MinDepthLowerBound(usize),
    /// The monodromy group is trivial.
    NoObstruction,
    /// Neither triviality nor stabilization within `max_depth` steps.
    Inconclusive,
}

impl std::fmt::Display for AbelVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AbelVerdict::Unsolvable => f.write_str("Unsolvable-at-all-depths"),
            AbelVerdict::MinDepthLowerBound(d) => write!(f, "MinDepthLowerBound({d})"),
            AbelVerdict::NoObstruction => f.write_str("NoObstruction"),
            AbelVerdict::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbelCertificate {
    pub report: MonodromyReport,
    /// Orders of the monodromy group and its iterated commutator closures.
    pub closure_orders: Vec<usize>,
    pub verdict: AbelVerdict,
}

impl AbelCertificate {
    pub fn to_json(&self) -> Value {
        let mut v = self.report.to_json();
        v["closure_orders"] = json!(self.closure_orders);
        v["verdict"] = json!(self.verdict.to_string());
        v
    }
}

pub fn verdict_from_orders(orders: &[usize]) -> AbelVerdict {
    match orders {
        [1] => AbelVerdict::NoObstruction,
        [.., 1] => AbelVerdict::MinDepthLowerBound(orders.len() - 1),
        [.., x, y] if x == y => AbelVerdict::Unsolvable,
        _ => AbelVerdict::Inconclusive,
    }
}

pub fn abel_certificate_at(
    f: &PolyFamily,
    base: Complex,
    max_depth: usize,
    opts: &TrackOptions,
) -> Result<AbelCertificate, CertifyError> {
    let report = monodromy_report(f, base, opts)?;
    let closure_orders = report.group.closure_orders(max_depth)?;
    let verdict = verdict_from_orders(&closure_orders);
    Ok(AbelCertificate {
        report,
        closure_orders,
        verdict,
    })
}

/// [`abel_certificate_at`] from [`default_base`] with default options.
pub fn abel_certificate(f: &PolyFamily, max_depth: usize) -> Result<AbelCertificate, CertifyError> {
    abel_certificate_at(f, default_base(f)?, max_depth, &TrackOptions::default())
}

/// `prod_s ((z - c_s)^{n_s} - a)` with `c_s = n_s + i j`, where `j` counts
/// earlier parts equal to `n_s`. A small loop around `a = 0` permutes the
/// roots with the given cycle type.
pub fn product_family(cycle_type: &[usize]) -> Result<PolyFamily, CertifyError> {
    let total: usize = cycle_type.iter().sum();
    if cycle_type.is_empty() || cycle_type.contains(&0) || total > 9 {
        return Err(CertifyError::InvalidCycleType(format!(
            "{cycle_type:?}: parts must be positive with sum at most 9"
        )));
    }
    let mut product: Vec<ComplexPoly> = vec![ComplexPoly::constant(Complex::new(1.0, 0.0))];
    for (s, &ns) in cycle_type.iter().enumerate() {
        let repeat = cycle_type[..s].iter().filter(|&&m| m == ns).count();
        let center = Complex::new(ns as f64, repeat as f64);
        let shifted = ComplexPoly::from_roots(&vec![center; ns]);
        let mut factor: Vec<ComplexPoly> = shifted
            .coeffs()
            .iter()
            .map(|&c| ComplexPoly::constant(c))
            .collect();
        factor[0] = &factor[0] - &ComplexPoly::identity();
        product = bivariate_mul(&product, &factor);
    }
    Ok(PolyFamily::new(product)?)
}

fn bivariate_mul(p: &[ComplexPoly], q: &[ComplexPoly]) -> Vec<ComplexPoly> {
    let mut out = vec![ComplexPoly::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Counterclockwise loop around `a = 0` for [`product_family`]. Roots of
/// different factors stay apart while every `|a|^(1/n_s)` is below `1/2`,
/// so the circle of radius `2^-(max n_s + 1)` encloses no other branch point.
pub fn product_loop(cycle_type: &[usize]) -> ParamPath {
    let top = cycle_type.iter().copied().max().unwrap_or(1);
    ParamPath::circle(Complex::new(0.0, 0.0), 0.5f64.powi(top as i32 + 1), 0.0, 1)
}

/// Counterclockwise circle around `a = 0` whose radius is half the distance
/// to the nearest other excluded point; it starts on the positive real axis.
pub fn zero_loop(f: &PolyFamily) -> Result<ParamPath, CertifyError> {
    let excluded = f.branch_points(DEFAULT_BRANCH_TOL)?.excluded();
    let nearest = excluded
        .iter()
        .map(|b| b.norm())
        .filter(|&r| r > BASE_CLEARANCE)
        .fold(f64::INFINITY, f64::min);
    let radius = if nearest.is_finite() { 0.5 * nearest } else { 1.0 };
    Ok(ParamPath::circle(Complex::new(0.0, 0.0), radius, 0.0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> PolyFamily {
        PolyFamily::parse(s).unwrap()
    }

    #[test]
    fn cubic_report() {
        let r = monodromy_report(&fam("z^3 - 3 z + a"), Complex::new(0.0, 0.0), &TrackOptions::default()).unwrap();
        assert_eq!(r.lassos.len(), 2);
        assert!(r.lassos.iter().all(|l| l.perm.cycle_type() == vec![2, 1]));
        assert_eq!(r.group_order(), 6);
        assert_eq!(r.group_name(), GroupName::Symmetric);
        let v = r.to_json();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["group_order"], 6);
        assert_eq!(v["branch_points"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn base_on_branch_point_is_rejected() {
        assert!(matches!(
            monodromy_report(&fam("z^3 - 3 z + a"), Complex::new(2.0, 0.0), &TrackOptions::default()),
            Err(CertifyError::BaseIsBranchPoint { .. })
        ));
    }

    #[test]
    fn verdicts_from_orders() {
        assert_eq!(verdict_from_orders(&[120, 60, 60]), AbelVerdict::Unsolvable);
        assert_eq!(verdict_from_orders(&[24, 12, 4, 1]), AbelVerdict::MinDepthLowerBound(3));
        assert_eq!(verdict_from_orders(&[2, 1]), AbelVerdict::MinDepthLowerBound(1));
        assert_eq!(verdict_from_orders(&[1]), AbelVerdict::NoObstruction);
        assert_eq!(verdict_from_orders(&[24, 12]), AbelVerdict::Inconclusive);
        assert_eq!(AbelVerdict::Unsolvable.to_string(), "Unsolvable-at-all-depths");
    }

    #[test]
    fn quadratic_certificate() {
        let cert = abel_certificate(&fam("z^2 - 2 z + a"), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(cert.closure_orders, vec![2, 1]);
        assert_eq!(cert.verdict, AbelVerdict::MinDepthLowerBound(1));
        assert_eq!(cert.to_json()["verdict"], "MinDepthLowerBound(1)");
    }

    #[test]
    fn product_families() {
        let f = product_family(&[4]).unwrap();
        assert_eq!(f.to_string(), fam("(z - 4)^4 - a").to_string());
        let f = product_family(&[1]).unwrap();
        assert_eq!(f.degree(), 1);
        let f = product_family(&[2, 3]).unwrap();
        assert_eq!(f.degree(), 5);
        for lp in [zero_loop(&f).unwrap(), product_loop(&[2, 3])] {
            let start = roots_at(&f, lp.start().unwrap()).unwrap();
            let perm = monodromy_perm(&f, &lp, &start, &TrackOptions::default()).unwrap();
            assert_eq!(perm.cycle_type(), vec![3, 2]);
        }
        let f = product_family(&[2, 2]).unwrap();
        assert_eq!(f.degree(), 4);
        assert!(product_family(&[5, 5]).is_err());
        assert!(product_family(&[0]).is_err());
    }
}
