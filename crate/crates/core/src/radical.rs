//! Radical formulas `z_j^{k_j} = p_j(a0, .., an, z1, .., z_{j-1})`, their
//! multivalued evaluation, and continuation of every branch value along a
//! parameter loop.

use std::fmt;

use thiserror::Error;

use crate::expr::{self, EvalError, Expr, ParseError, Symbol};
use crate::path::PathError;
use crate::permgroup::Permutation;
use crate::tracker::TrackOptions;
use crate::{Complex, ParamPath, PathSegment};

/// Radicand modulus below which `evaluate_tower` collapses a level's branches.
pub const ZERO_RADICAND_EPS: f64 = 1e-12;
/// Radicand modulus below which continuation along a path fails.
pub const PATH_RADICAND_EPS: f64 = 1e-8;
/// Tolerance for branch tuples returning to their starting values.
pub const RETURN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadicalError {
    #[error("DivisionByZero: at level {level}")]
    DivisionByZero { level: usize },
    #[error("RadicandVanishes: level {level} radicand modulus {modulus:e} at t = {t}")]
    RadicandVanishes { level: usize, t: f64, modulus: f64 },
    #[error("StepFailure: step size halved {halvings} times at t = {t}")]
    StepFailure { t: f64, halvings: usize },
    #[error("ReturnMismatch: branch {branch} of level {level} does not return to a starting value")]
    ReturnMismatch { level: usize, branch: usize },
    #[error("IdenticallyZeroDivisor: a divisor at level {level} vanishes at every test point")]
    IdenticallyZeroDivisor { level: usize },
    #[error("MissingCoefficient: a{0} has no value")]
    MissingCoefficient(usize),
    #[error("EmptyFormula: formula has no levels")]
    EmptyFormula,
    #[error("FormulaSyntax: {0}")]
    FormulaSyntax(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub expr: Expr,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadicalFormula {
    levels: Vec<Level>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Difference,
    Product,
    Quotient,
}

impl RadicalFormula {
    /// Checks that level `j` (1-based) refers only to coefficients and to
    /// levels below `j`, and that every `k` is at least 1.
    pub fn new(levels: Vec<Level>) -> Result<Self, RadicalError> {
        for (j, level) in levels.iter().enumerate() {
            if level.k == 0 {
                return Err(RadicalError::FormulaSyntax(format!(
                    "level {} has root index 0",
                    j + 1
                )));
            }
            for s in level.expr.symbols() {
                match s {
                    Symbol::Coeff(_) => {}
                    Symbol::Level(m) if m <= j => {}
                    other => return Err(ParseError::DisallowedSymbol { symbol: other }.into()),
                }
            }
        }
        Ok(RadicalFormula { levels })
    }

    /// Parses lines such as `z2^3 = (-a0 + z1)/2`, separated by newlines or
    /// `;`. A missing exponent means `k = 1`; `#` starts a comment.
    pub fn parse(s: &str) -> Result<Self, RadicalError> {
        let mut levels = Vec::new();
        for line in s.lines().map(|l| l.split('#').next().unwrap_or("")) {
            for stmt in line.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                let (lhs, rhs) = stmt
                    .split_once('=')
                    .ok_or_else(|| RadicalError::FormulaSyntax(format!("missing '=' in {stmt:?}")))?;
                let j = levels.len() + 1;
                let k = parse_lhs(lhs.trim(), j)?;
                let expr = expr::parse(rhs)?;
                levels.push(Level { expr, k });
            }
        }
        Self::new(levels)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Number of root levels with `k > 1`.
    pub fn root_levels(&self) -> usize {
        self.levels.iter().filter(|l| l.k > 1).count()
    }

    /// One more than the largest coefficient index used.
    pub fn coeff_count(&self) -> usize {
        self.levels
            .iter()
            .flat_map(|l| l.expr.symbols())
            .filter_map(|s| match s {
                Symbol::Coeff(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Levels of `self`, then of `other`, then `z = top(self) op top(other)`.
    pub fn compose(&self, other: &RadicalFormula, op: Combine) -> Result<RadicalFormula, RadicalError> {
        if self.levels.is_empty() || other.levels.is_empty() {
            return Err(RadicalError::EmptyFormula);
        }
        let s = self.levels.len();
        let t = other.levels.len();
        let mut levels = self.levels.clone();
        levels.extend(other.levels.iter().map(|l| Level {
            expr: l.expr.map_symbols(&|sym| match sym {
                Symbol::Level(m) => Symbol::Level(m + s),
                other => other,
            }),
            k: l.k,
        }));
        let x = Expr::var(Symbol::Level(s));
        let y = Expr::var(Symbol::Level(s + t));
        let top = match op {
            Combine::Sum => Expr::add(x, y),
            Combine::Difference => Expr::sub(x, y),
            Combine::Product => Expr::mul(x, y),
            Combine::Quotient => Expr::div(x, y),
        };
        levels.push(Level { expr: top, k: 1 });
        Self::new(levels)
    }

    /// Appends the level `z_{s+1}^k = z_s`.
    pub fn adjoin_root(&self, k: u32) -> Result<RadicalFormula, RadicalError> {
        let s = self.levels.len();
        if s == 0 {
            return Err(RadicalError::EmptyFormula);
        }
        let mut levels = self.levels.clone();
        levels.push(Level {
            expr: Expr::var(Symbol::Level(s)),
            k,
        });
        Self::new(levels)
    }

    /// Fails if some divisor vanishes at every one of a few fixed generic
    /// coefficient vectors.
    pub fn validate_divisors(&self) -> Result<(), RadicalError> {
        let n = self.coeff_count();
        let samples = [
            Complex::new(0.37, 0.61),
            Complex::new(-1.13, 0.29),
            Complex::new(0.83, -0.97),
        ];
        let mut failures = Vec::new();
        for (i, &base) in samples.iter().enumerate() {
            let coeffs: Vec<Complex> = (0..n)
                .map(|j| base * Complex::new(1.0 + 0.17 * j as f64, 0.11 * (i + j) as f64))
                .collect();
            match evaluate_tower(self, &coeffs) {
                Err(RadicalError::DivisionByZero { level }) => failures.push(level),
                Err(e) => return Err(e),
                Ok(_) => return Ok(()),
            }
        }
        let level = failures.into_iter().min().unwrap_or(1);
        Err(RadicalError::IdenticallyZeroDivisor { level })
    }
}

fn parse_lhs(lhs: &str, j: usize) -> Result<u32, RadicalError> {
    let bad = || RadicalError::FormulaSyntax(format!("left side {lhs:?} should be z{j} or z{j}^k"));
    let (var, k) = match lhs.split_once('^') {
        Some((v, k)) => (v.trim(), k.trim().parse::<u32>().map_err(|_| bad())?),
        None => (lhs, 1),
    };
    if var != format!("z{j}") {
        return Err(bad());
    }
    Ok(k)
}

impl fmt::Display for RadicalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, level) in self.levels.iter().enumerate() {
            if j > 0 {
                f.write_str("; ")?;
            }
            if level.k == 1 {
                write!(f, "z{} = {}", j + 1, level.expr)?;
            } else {
                write!(f, "z{}^{} = {}", j + 1, level.k, level.expr)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for RadicalFormula {
    type Err = RadicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// All attained branch values. Branch `b` of level `j` extends the tuple of
/// branch `parents[j][b]` of level `j - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTower {
    values: Vec<Vec<Complex>>,
    parents: Vec<Vec<usize>>,
    collapsed: Vec<bool>,
}

impl ValueTower {
    pub fn depth(&self) -> usize {
        self.values.len()
    }

    /// Values of level `j` (0-based), one per branch.
    pub fn values(&self, j: usize) -> &[Complex] {
        &self.values[j]
    }

    pub fn top_values(&self) -> &[Complex] {
        self.values.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether level `j` had a zero radicand on some branch.
    pub fn collapsed(&self, j: usize) -> bool {
        self.collapsed[j]
    }

    pub fn any_collapsed(&self) -> bool {
        self.collapsed.iter().any(|&c| c)
    }

    /// `(z1, .., z_{j+1})` of branch `b` at level `j`.
    pub fn tuple(&self, j: usize, b: usize) -> Vec<Complex> {
        let mut out = vec![Complex::new(0.0, 0.0); j + 1];
        let mut idx = b;
        for level in (0..=j).rev() {
            out[level] = self.values[level][idx];
            if level > 0 {
                idx = self.parents[level][idx];
            }
        }
        out
    }
}

fn eval_level(
    level: &Level,
    j: usize,
    coeffs: &[Complex],
    tuple: &[Complex],
) -> Result<Complex, RadicalError> {
    level
        .expr
        .eval(&|s| match s {
            Symbol::Coeff(i) => coeffs.get(i).copied(),
            Symbol::Level(m) => tuple.get(m - 1).copied(),
            _ => None,
        })
        .map_err(|e| match e {
            EvalError::DivisionByZero { .. } => RadicalError::DivisionByZero { level: j + 1 },
            EvalError::UnboundVariable(Symbol::Coeff(i)) => RadicalError::MissingCoefficient(i),
            EvalError::UnboundVariable(_) => unreachable!("formula levels are validated"),
        })
}

fn kth_roots(r: Complex, k: u32) -> Vec<Complex> {
    if k == 1 {
        return vec![r];
    }
    let principal = r.powf(1.0 / k as f64);
    let step = 2.0 * std::f64::consts::PI / k as f64;
    (0..k)
        .map(|m| principal * Complex::from_polar(1.0, step * m as f64))
        .collect()
}

/// Evaluates every branch of every level at the coefficient values `coeffs`.
pub fn evaluate_tower(rf: &RadicalFormula, coeffs: &[Complex]) -> Result<ValueTower, RadicalError> {
    let mut tower = ValueTower {
        values: Vec::new(),
        parents: Vec::new(),
        collapsed: Vec::new(),
    };
    for (j, level) in rf.levels.iter().enumerate() {
        let parent_count = if j == 0 { 1 } else { tower.values[j - 1].len() };
        let mut values = Vec::new();
        let mut parents = Vec::new();
        let mut collapsed = false;
        for p in 0..parent_count {
            let tuple = if j == 0 { Vec::new() } else { tower.tuple(j - 1, p) };
            let r = eval_level(level, j, coeffs, &tuple)?;
            let roots = if level.k > 1 && r.norm() <= ZERO_RADICAND_EPS {
                collapsed = true;
                vec![Complex::new(0.0, 0.0)]
            } else {
                kth_roots(r, level.k)
            };
            for z in roots {
                values.push(z);
                parents.push(p);
            }
        }
        tower.values.push(values);
        tower.parents.push(parents);
        tower.collapsed.push(collapsed);
    }
    Ok(tower)
}

/// Coefficients `a0, .., an` as expressions in the parameter `a`, together
/// with a path for `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffPath {
    coeffs: Vec<Expr>,
    path: ParamPath,
}

impl CoeffPath {
    pub fn new(coeffs: Vec<Expr>, path: ParamPath) -> Result<Self, RadicalError> {
        for e in &coeffs {
            if let Some(symbol) = e.symbols().into_iter().find(|s| *s != Symbol::A) {
                return Err(ParseError::DisallowedSymbol { symbol }.into());
            }
        }
        Ok(CoeffPath { coeffs, path })
    }

    /// Coefficient expressions given as text, e.g. `["a", "a^2 - 1"]`.
    pub fn parse<S: AsRef<str>>(coeffs: &[S], path: ParamPath) -> Result<Self, RadicalError> {
        let exprs = coeffs
            .iter()
            .map(|s| expr::parse_with(s.as_ref(), &|sym| sym == Symbol::A))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(exprs, path)
    }

    /// `a0 = a`.
    pub fn identity(path: ParamPath) -> Self {
        CoeffPath {
            coeffs: vec![Expr::var(Symbol::A)],
            path,
        }
    }

    pub fn path(&self) -> &ParamPath {
        &self.path
    }

    pub fn coeff_exprs(&self) -> &[Expr] {
        &self.coeffs
    }

    pub fn with_path(&self, path: ParamPath) -> Self {
        CoeffPath {
            coeffs: self.coeffs.clone(),
            path,
        }
    }

    pub fn coeffs_at(&self, a: Complex) -> Result<Vec<Complex>, RadicalError> {
        self.coeffs
            .iter()
            .map(|e| {
                e.eval(&|s| (s == Symbol::A).then_some(a))
                    .map_err(|_| RadicalError::DivisionByZero { level: 0 })
            })
            .collect()
    }
}

struct Continuation<'a> {
    rf: &'a RadicalFormula,
    cp: &'a CoeffPath,
    opts: &'a TrackOptions,
    tower: ValueTower,
}

impl Continuation<'_> {
    /// Values at `a` continuing the current ones, or `None` if some branch
    /// moved too far relative to its root spacing.
    fn try_step(&self, a: Complex, t: f64) -> Result<Option<Vec<Vec<Complex>>>, RadicalError> {
        let coeffs = self.cp.coeffs_at(a)?;
        let mut next: Vec<Vec<Complex>> = Vec::with_capacity(self.tower.depth());
        for (j, level) in self.rf.levels.iter().enumerate() {
            let old = &self.tower.values[j];
            let mut row = Vec::with_capacity(old.len());
            for (b, &z_old) in old.iter().enumerate() {
                let mut tuple = vec![Complex::new(0.0, 0.0); j];
                let mut idx = b;
                for m in (0..j).rev() {
                    idx = self.tower.parents[m + 1][idx];
                    tuple[m] = next[m][idx];
                }
                let r = eval_level(level, j, &coeffs, &tuple)?;
                if level.k == 1 {
                    row.push(r);
                    continue;
                }
                if r.norm() <= PATH_RADICAND_EPS {
                    return Err(RadicalError::RadicandVanishes {
                        level: j + 1,
                        t,
                        modulus: r.norm(),
                    });
                }
                let z = nearest_root(r, level.k, z_old);
                let k = level.k as f64;
                let spacing = 2.0 * z_old.norm() * (std::f64::consts::PI / k).sin();
                if (z - z_old).norm() > self.opts.safety_factor * spacing / 2.0 {
                    return Ok(None);
                }
                row.push(z);
            }
            next.push(row);
        }
        Ok(Some(next))
    }

    fn segment(&mut self, k: usize, seg: &PathSegment, max_step: f64) -> Result<(), RadicalError> {
        let len = seg.length();
        if len == 0.0 {
            return Ok(());
        }
        let (mut s, mut h) = (0.0, max_step);
        while s < 1.0 {
            let mut halvings = 0;
            loop {
                let mut s1 = s + h / len;
                if s1 > 1.0 - 1e-12 {
                    s1 = 1.0;
                }
                if let Some(values) = self.try_step(seg.point(s1), k as f64 + s1)? {
                    self.tower.values = values;
                    s = s1;
                    h = (2.0 * h).min(max_step);
                    break;
                }
                halvings += 1;
                if halvings > self.opts.max_halvings {
                    return Err(RadicalError::StepFailure {
                        t: k as f64 + s,
                        halvings,
                    });
                }
                h /= 2.0;
            }
        }
        Ok(())
    }
}

fn nearest_root(r: Complex, k: u32, target: Complex) -> Complex {
    let principal = r.powf(1.0 / k as f64);
    let step = 2.0 * std::f64::consts::PI / k as f64;
    let m = ((target / principal).arg() / step).round();
    principal * Complex::from_polar(1.0, step * m)
}

/// Continues every branch value of every level along the closed path of
/// `cp` and returns, per level, the induced permutation of branches:
/// entry `b` is the starting branch whose tuple branch `b` ends on.
pub fn track_tower(
    rf: &RadicalFormula,
    cp: &CoeffPath,
    opts: &TrackOptions,
) -> Result<Vec<Permutation>, RadicalError> {
    opts.validate().map_err(|e| RadicalError::FormulaSyntax(e.to_string()))?;
    let path = &cp.path;
    if !path.is_closed() {
        return Err(PathError::NotClosed.into());
    }
    let a0 = path.start().ok_or(PathError::EmptyPath)?;
    let start = evaluate_tower(rf, &cp.coeffs_at(a0)?)?;
    for (j, level) in rf.levels.iter().enumerate() {
        if level.k > 1 && start.collapsed(j) {
            return Err(RadicalError::RadicandVanishes {
                level: j + 1,
                t: 0.0,
                modulus: 0.0,
            });
        }
    }
    let mut cont = Continuation {
        rf,
        cp,
        opts,
        tower: start.clone(),
    };
    // Check the start against the vanishing-radicand bound too.
    if cont.try_step(a0, 0.0)?.is_none() {
        return Err(RadicalError::StepFailure { t: 0.0, halvings: 0 });
    }
    let max_step = opts.initial_step * path.length();
    for (k, seg) in path.segments().iter().enumerate() {
        cont.segment(k, seg, max_step)?;
    }
    let end = cont.tower;
    (0..rf.depth())
        .map(|j| match_level(&start, &end, j))
        .collect()
}

fn tuple_distance(x: &[Complex], y: &[Complex]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm() / a.norm().max(1.0))
        .fold(0.0, f64::max)
}

fn match_level(start: &ValueTower, end: &ValueTower, j: usize) -> Result<Permutation, RadicalError> {
    let count = start.values(j).len();
    let starts: Vec<Vec<Complex>> = (0..count).map(|b| start.tuple(j, b)).collect();
    let mut images = Vec::with_capacity(count);
    for b in 0..count {
        let fin = end.tuple(j, b);
        let mut dists: Vec<(usize, f64)> = starts
            .iter()
            .enumerate()
            .map(|(i, s)| (i, tuple_distance(s, &fin)))
            .collect();
        dists.sort_by(|x, y| x.1.total_cmp(&y.1));
        let unambiguous = dists.get(1).is_none_or(|d| d.1 > 2.0 * RETURN_TOL);
        if dists[0].1 > RETURN_TOL || !unambiguous {
            return Err(RadicalError::ReturnMismatch { level: j + 1, branch: b });
        }
        images.push(dists[0].0);
    }
    Permutation::new(images).map_err(|_| RadicalError::ReturnMismatch { level: j + 1, branch: 0 })
}

/// Whether every branch value of every level returns to itself.
pub fn is_cautious(rf: &RadicalFormula, cp: &CoeffPath, opts: &TrackOptions) -> Result<bool, RadicalError> {
    Ok(track_tower(rf, cp, opts)?.iter().all(Permutation::is_identity))
}
