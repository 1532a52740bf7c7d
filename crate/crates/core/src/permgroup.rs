//! Permutations of `{0, .., n-1}` and small permutation groups.
//!
//! Labels are 0-based in the API and 1-based in cycle notation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("SizeMismatch: permutations on {0} and {1} points")]
    SizeMismatch(usize, usize),
    #[error("NotBijection: images are not a permutation of 0..{0}")]
    NotBijection(usize),
    #[error("SizeLimit: closure exceeds {0} elements")]
    SizeLimit(usize),
    #[error("EmptySet: at least one generator required")]
    EmptySet,
    #[error("BadCycleNotation: {0}")]
    BadCycleNotation(String),
}

pub const MAX_GROUP_SIZE: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The cycle `c[0] -> c[1] -> .. -> c[0]`.
    pub fn cycle(n: usize, c: &[usize]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = BTreeSet::new();
        for (k, &x) in c.iter().enumerate() {
            if x >= n || !seen.insert(x) {
                return Err(PermError::NotBijection(n));
            }
            images[x] = c[(k + 1) % c.len()];
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, PermError> {
        Self::cycle(n, &[i, j])
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ t`: applies `t` first.
    pub fn compose(&self, t: &Permutation) -> Result<Permutation, PermError> {
        if self.len() != t.len() {
            return Err(PermError::SizeMismatch(self.len(), t.len()));
        }
        Ok(self.compose_unchecked(t))
    }

    fn compose_unchecked(&self, t: &Permutation) -> Permutation {
        Permutation {
            images: t.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `s ∘ t ∘ s⁻¹ ∘ t⁻¹`.
    pub fn commutator(s: &Permutation, t: &Permutation) -> Result<Permutation, PermError> {
        let st = s.compose(t)?;
        Ok(st
            .compose_unchecked(&s.inverse())
            .compose_unchecked(&t.inverse()))
    }

    /// `α ∘ self ∘ α⁻¹`.
    pub fn conjugate_by(&self, alpha: &Permutation) -> Result<Permutation, PermError> {
        Ok(alpha.compose(self)?.compose_unchecked(&alpha.inverse()))
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.len());
        for _ in 0..k.unsigned_abs() {
            out = base.compose_unchecked(&out);
        }
        out
    }

    /// Disjoint cycles of length at least 2, each starting at its smallest
    /// element, sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                c.push(j);
                j = self.images[j];
            }
            if c.len() >= 2 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.len() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)`; `()` is the
    /// identity. Cycles compose right to left, so they need not be disjoint.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation, PermError> {
        let bad = |m: &str| PermError::BadCycleNotation(m.to_string());
        let mut out = Permutation::identity(n);
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad("empty input"));
        }
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let labels = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                    _ => Err(bad(&format!("label '{t}' outside 1..{n}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let c = Permutation::cycle(n, &labels).map_err(|_| bad("repeated label in a cycle"))?;
            cycles.push(c);
            rest = body[close + 1..].trim_start();
        }
        for c in cycles.iter().rev() {
            out = c.compose_unchecked(&out);
        }
        Ok(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A deduplicated set of permutations on a common number of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSet {
    n: usize,
    elements: BTreeSet<Permutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupName {
    Trivial,
    Symmetric,
    Alternating,
    Cyclic,
    Other,
}

impl GroupName {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupName::Trivial => "trivial",
            GroupName::Symmetric => "symmetric",
            GroupName::Alternating => "alternating",
            GroupName::Cyclic => "cyclic",
            GroupName::Other => "other",
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl PermSet {
    pub fn new(n: usize, elements: impl IntoIterator<Item = Permutation>) -> Result<Self, PermError> {
        let mut set = BTreeSet::new();
        for p in elements {
            if p.len() != n {
                return Err(PermError::SizeMismatch(n, p.len()));
            }
            set.insert(p);
        }
        Ok(PermSet { n, elements: set })
    }

    pub fn trivial(n: usize) -> Self {
        PermSet {
            n,
            elements: BTreeSet::from([Permutation::identity(n)]),
        }
    }

    pub fn symmetric(n: usize) -> Result<Self, PermError> {
        let mut gens = vec![Permutation::identity(n)];
        if n >= 2 {
            gens.push(Permutation::transposition(n, 0, 1)?);
            gens.push(Permutation::cycle(n, &(0..n).collect::<Vec<_>>())?);
        }
        PermSet::new(n, gens)?.generate()
    }

    pub fn alternating(n: usize) -> Result<Self, PermError> {
        let mut gens = vec![Permutation::identity(n)];
        for k in 2..n {
            gens.push(Permutation::cycle(n, &[0, 1, k])?);
        }
        PermSet::new(n, gens)?.generate()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.iter().all(Permutation::is_identity)
    }

    /// The group generated by the set, by breadth-first multiplication.
    pub fn generate(&self) -> Result<PermSet, PermError> {
        if self.elements.is_empty() {
            return Err(PermError::EmptySet);
        }
        let gens: Vec<&Permutation> = self.elements.iter().filter(|g| !g.is_identity()).collect();
        let id = Permutation::identity(self.n);
        let mut group = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose_unchecked(&x);
                if !group.contains(&y) {
                    if group.len() >= MAX_GROUP_SIZE {
                        return Err(PermError::SizeLimit(MAX_GROUP_SIZE));
                    }
                    group.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(PermSet {
            n: self.n,
            elements: group,
        })
    }

    /// A small generating set of the group, chosen greedily in element order.
    pub fn generators(&self) -> Result<Vec<Permutation>, PermError> {
        let mut gens = Vec::new();
        let mut span = PermSet::trivial(self.n);
        for p in &self.elements {
            if !span.contains(p) {
                gens.push(p.clone());
                span = PermSet::new(self.n, gens.iter().cloned())?.generate()?;
            }
        }
        Ok(gens)
    }

    /// The subgroup generated by all commutators of the group's elements.
    ///
    /// Computed as the normal closure of the commutators of a generating set.
    pub fn commutator_closure_step(&self) -> Result<PermSet, PermError> {
        let gens = self.generators()?;
        let mut sub_gens = vec![Permutation::identity(self.n)];
        for s in &gens {
            for t in &gens {
                sub_gens.push(Permutation::commutator(s, t)?);
            }
        }
        let mut sub = PermSet::new(self.n, sub_gens.iter().cloned())?.generate()?;
        loop {
            let conj: Vec<Permutation> = gens
                .iter()
                .flat_map(|g| sub_gens.iter().map(move |h| h.conjugate_by(g)))
                .collect::<Result<_, _>>()?;
            let fresh: Vec<Permutation> = conj.into_iter().filter(|c| !sub.contains(c)).collect();
            if fresh.is_empty() {
                return Ok(sub);
            }
            sub_gens.extend(fresh);
            sub = PermSet::new(self.n, sub_gens.iter().cloned())?.generate()?;
        }
    }

    /// Orders of the group and its iterated commutator closures, stopping at
    /// the trivial group, at two equal consecutive orders, or after
    /// `max_depth` steps.
    pub fn closure_orders(&self, max_depth: usize) -> Result<Vec<usize>, PermError> {
        let mut g = self.generate()?;
        let mut orders = vec![g.len()];
        for _ in 0..max_depth {
            if g.len() == 1 {
                break;
            }
            g = g.commutator_closure_step()?;
            let stable = orders.last() == Some(&g.len());
            orders.push(g.len());
            if stable {
                break;
            }
        }
        Ok(orders)
    }

    /// Smallest number of commutator closure steps reaching the trivial group.
    pub fn derived_depth_to_trivial(&self, max_depth: usize) -> Result<Option<usize>, PermError> {
        let orders = self.closure_orders(max_depth)?;
        Ok(orders.iter().position(|&k| k == 1))
    }

    pub fn name(&self) -> GroupName {
        let order = self.len() as u64;
        if order == 1 {
            GroupName::Trivial
        } else if order == factorial(self.n) {
            GroupName::Symmetric
        } else if self.n >= 3
            && order == factorial(self.n) / 2
            && self.elements.iter().all(Permutation::is_even)
        {
            GroupName::Alternating
        } else if self.elements.iter().any(|p| p.order() == order) {
            GroupName::Cyclic
        } else {
            GroupName::Other
        }
    }
}

/// A product of commutators `[x1, y1] ∘ [x2, y2] ∘ ..`; empty for the identity.
pub type CommutatorWord = Vec<(Permutation, Permutation)>;

pub fn evaluate_word(n: usize, word: &CommutatorWord) -> Result<Permutation, PermError> {
    let mut out = Permutation::identity(n);
    for (x, y) in word {
        out = out.compose(&Permutation::commutator(x, y)?)?;
    }
    Ok(out)
}

/// Writes every even permutation of `n` points as a product of commutators
/// of even permutations, found by breadth-first search over word length.
///
/// Every returned word is checked by evaluation. Elements with no such
/// expression (possible for n < 5) are absent from the map.
pub fn even_as_commutators_certificate(
    n: usize,
) -> Result<BTreeMap<Permutation, CommutatorWord>, PermError> {
    let alt = PermSet::alternating(n)?;
    let mut witness: BTreeMap<Permutation, (Permutation, Permutation)> = BTreeMap::new();
    for x in alt.iter() {
        for y in alt.iter() {
            let c = Permutation::commutator(x, y)?;
            witness.entry(c).or_insert_with(|| (x.clone(), y.clone()));
        }
    }
    let id = Permutation::identity(n);
    let mut words: BTreeMap<Permutation, CommutatorWord> = BTreeMap::from([(id.clone(), Vec::new())]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        let word = words[&p].clone();
        for (c, pair) in &witness {
            let q = p.compose(c)?;
            if !words.contains_key(&q) {
                let mut w = word.clone();
                w.push(pair.clone());
                words.insert(q.clone(), w);
                queue.push_back(q);
            }
        }
    }
    for (p, w) in &words {
        assert_eq!(&evaluate_word(n, w)?, p, "certificate word does not evaluate to its target");
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_examples() {
        let a = Permutation::transposition(3, 0, 1).unwrap();
        let b = Permutation::transposition(3, 0, 2).unwrap();
        // 0 -> 2 -> 1 -> 0
        assert_eq!(a.compose(&b).unwrap().images(), &[2, 0, 1]);
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4)),
            Err(PermError::SizeMismatch(3, 4))
        );
    }

    #[test]
    fn commutator_examples() {
        let a = Permutation::transposition(3, 0, 1).unwrap();
        let b = Permutation::transposition(3, 0, 2).unwrap();
        let c = Permutation::commutator(&a, &b).unwrap();
        assert_eq!(c, Permutation::cycle(3, &[0, 1, 2]).unwrap());
        assert!(Permutation::commutator(&c, &c).unwrap().is_identity());
        assert!(Permutation::commutator(&c, &Permutation::identity(3)).unwrap().is_identity());
    }

    #[test]
    fn cycles_and_parity() {
        assert!(Permutation::identity(4).cycles().is_empty());
        let v = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(v.cycles(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(v, Permutation::cycle(4, &[0, 1, 2, 3]).unwrap().pow(2).conjugate_by(&p("(2 3)", 4)).unwrap());
        let five = Permutation::cycle(5, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(five.cycles().len(), 1);
        assert_eq!(five.order(), 5);
        assert!(Permutation::cycle(3, &[0, 1, 2]).unwrap().is_even());
        assert!(!Permutation::transposition(3, 0, 1).unwrap().is_even());
        assert!(Permutation::identity(3).is_even());
        assert_eq!(p("(1 2)(3 4 5)", 6).cycle_type(), vec![3, 2, 1]);
    }

    #[test]
    fn cycle_notation_round_trip() {
        for s in ["()", "(1 2)", "(1 3 2)(4 5)", "(1 2 3 4 5)"] {
            assert_eq!(p(s, 5).to_string(), s);
        }
        // Non-disjoint cycles compose right to left.
        assert_eq!(p("(1 2)(1 3)", 3), p("(1 3 2)", 3));
        assert!(Permutation::parse_cycles("(1 6)", 5).is_err());
        assert!(Permutation::parse_cycles("(1 1)", 5).is_err());
        assert!(Permutation::parse_cycles("1 2", 5).is_err());
    }

    #[test]
    fn generate_examples() {
        let gens: Vec<_> = (1..5).map(|k| Permutation::transposition(5, 0, k).unwrap()).collect();
        assert_eq!(PermSet::new(5, gens).unwrap().generate().unwrap().len(), 120);
        let gens = vec![p("(1 2)", 3), p("(1 3)", 3)];
        assert_eq!(PermSet::new(3, gens).unwrap().generate().unwrap().len(), 6);
        assert_eq!(PermSet::trivial(4).generate().unwrap().len(), 1);
        assert_eq!(PermSet::new(3, []).unwrap().generate(), Err(PermError::EmptySet));
    }

    #[test]
    fn closure_examples() {
        let s5 = PermSet::symmetric(5).unwrap();
        let a5 = s5.commutator_closure_step().unwrap();
        assert_eq!(a5.len(), 60);
        assert_eq!(a5.commutator_closure_step().unwrap(), a5);
        let cyclic = PermSet::new(4, [p("(1 2 3 4)", 4)]).unwrap().generate().unwrap();
        assert!(cyclic.commutator_closure_step().unwrap().is_trivial());
        assert_eq!(PermSet::symmetric(4).unwrap().derived_depth_to_trivial(10).unwrap(), Some(3));
        assert_eq!(s5.derived_depth_to_trivial(10).unwrap(), None);
        assert_eq!(PermSet::symmetric(2).unwrap().derived_depth_to_trivial(10).unwrap(), Some(1));
        assert_eq!(s5.closure_orders(10).unwrap(), vec![120, 60, 60]);
        assert_eq!(PermSet::symmetric(4).unwrap().closure_orders(10).unwrap(), vec![24, 12, 4, 1]);
    }

    #[test]
    fn names() {
        assert_eq!(PermSet::symmetric(5).unwrap().name(), GroupName::Symmetric);
        assert_eq!(PermSet::alternating(5).unwrap().name(), GroupName::Alternating);
        assert_eq!(PermSet::trivial(3).name(), GroupName::Trivial);
        let c4 = PermSet::new(4, [p("(1 2 3 4)", 4)]).unwrap().generate().unwrap();
        assert_eq!(c4.name(), GroupName::Cyclic);
        let v4 = PermSet::new(4, [p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap().generate().unwrap();
        assert_eq!(v4.name(), GroupName::Other);
    }

    #[test]
    fn certificate_examples() {
        let cert = even_as_commutators_certificate(5).unwrap();
        assert_eq!(cert.len(), 60);
        assert!(cert[&Permutation::identity(5)].is_empty());
        assert_eq!(cert[&p("(1 2 3)", 5)].len(), 1);
        let five = p("(1 2 3 4 5)", 5);
        assert_eq!(evaluate_word(5, &cert[&five]).unwrap(), five);
        for (x, y) in cert.values().flatten() {
            assert!(x.is_even() && y.is_even());
        }
    }
}
