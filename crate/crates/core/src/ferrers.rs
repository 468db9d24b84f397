//! Ferrers graphs and ideals, Alexander duals of graph complements, the
//! closed-form primary decomposition of the LCM-dual of a Ferrers ideal,
//! generalized Ferrers ideals and their specialization to strongly stable
//! ideals.
//!
//! Bipartite ideals live in the joint ring `K[x1..xm, y1..yn]` with the
//! x-variables first: variable `x_i` has index `i-1` and `y_j` has index
//! `m+j-1`. Partition rows and columns are 1-based throughout, matching the
//! tableau pictures.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::monomial::{Monomial, MonomialError, MonomialIdeal};
use crate::text::VarNames;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FerrersError {
    #[error("a partition needs at least one part")]
    EmptyPartition,
    #[error("partition parts must be positive and weakly decreasing, got {0:?}")]
    NotPartition(Vec<usize>),
    #[error("shift {mu:?} must have {m} entries with 0 <= mu_1 <= ... <= mu_m < lambda_m = {last}")]
    InvalidShift { mu: Vec<usize>, m: usize, last: usize },
    #[error("generalized Ferrers ideals need n >= m, got n = {n}, m = {m}")]
    TooFewColumns { m: usize, n: usize },
    #[error("strongly stable ideals need lambda_m >= m, got lambda = {0:?}")]
    NotStronglyStableShape(Vec<usize>),
    #[error("ideal has {found} variables, expected {expected} for the x/y split")]
    SplitMismatch { expected: usize, found: usize },
    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),
    #[error("ideal is not strongly stable")]
    NotStronglyStable,
    #[error("ideal is not generated in degree 2")]
    NotDegreeTwo,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// A partition `λ_1 >= ... >= λ_m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, FerrersError> {
        if parts.is_empty() {
            return Err(FerrersError::EmptyPartition);
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(FerrersError::NotPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Row count.
    pub fn m(&self) -> usize {
        self.parts.len()
    }

    /// Column count, `λ_1`.
    pub fn n(&self) -> usize {
        self.parts[0]
    }

    /// `λ_i` for 1-based `i`.
    pub fn part(&self, i: usize) -> usize {
        self.parts[i - 1]
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Whether `λ_m >= m`, i.e. the shift `(0, 1, ..., m-1)` is admissible.
    pub fn supports_strongly_stable(&self) -> bool {
        self.parts[self.m() - 1] >= self.m()
    }

    /// Every partition with at most `max_m` rows and largest part at most
    /// `max_n`.
    pub fn all_within(max_m: usize, max_n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (1..=max_n).map(|p| vec![p]).collect();
        while let Some(parts) = stack.pop() {
            if parts.len() < max_m {
                let last = *parts.last().unwrap();
                for p in 1..=last {
                    let mut next = parts.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
            out.push(Partition { parts });
        }
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// A shift vector `0 <= μ_1 <= ... <= μ_m < λ_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift {
    mu: Vec<usize>,
}

impl Shift {
    pub fn new(mu: Vec<usize>, lambda: &Partition) -> Result<Self, FerrersError> {
        let last = lambda.parts[lambda.m() - 1];
        let ok = mu.len() == lambda.m() && mu.windows(2).all(|w| w[0] <= w[1]) && mu.last().is_some_and(|&l| l < last);
        if ok {
            Ok(Self { mu })
        } else {
            Err(FerrersError::InvalidShift { mu, m: lambda.m(), last })
        }
    }

    /// `(0, 1, ..., m-1)`.
    pub fn staircase(lambda: &Partition) -> Result<Self, FerrersError> {
        Self::new((0..lambda.m()).collect(), lambda)
    }

    pub fn values(&self) -> &[usize] {
        &self.mu
    }
}

/// A simple graph on vertices `0..vertex_count`; edges stored with the
/// smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .inspect(|&(_, b)| assert!(b < vertex_count, "edge endpoint out of range"))
            .collect();
        Self { vertex_count, edges }
    }

    /// The graph whose edges are the supports of a squarefree degree-2 ideal.
    pub fn from_edge_ideal(ideal: &MonomialIdeal) -> Result<Self, FerrersError> {
        let mut edges = Vec::new();
        for g in ideal.generators() {
            let s = g.support();
            if !g.is_squarefree() || s.len() != 2 {
                return Err(FerrersError::NotDegreeTwo);
            }
            edges.push((s[0], s[1]));
        }
        Ok(Self::new(ideal.n(), edges))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_ideal(&self) -> MonomialIdeal {
        let gens = self.edges.iter().map(|&(a, b)| Monomial::from_support(self.vertex_count, [a, b])).collect();
        MonomialIdeal::new(self.vertex_count.max(1), gens).expect("edge monomials match the ambient")
    }

    pub fn complement(&self) -> SimpleGraph {
        let edges = (0..self.vertex_count).tuple_combinations().filter(|e| !self.edges.contains(e)).collect();
        SimpleGraph { vertex_count: self.vertex_count, edges }
    }
}

/// A bipartite graph between `x1..xm` and `y1..yn`; edges are 1-based
/// `(i, j)` pairs meaning `{x_i, y_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    x_count: usize,
    y_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(x_count: usize, y_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        assert!(
            edges.iter().all(|&(i, j)| (1..=x_count).contains(&i) && (1..=y_count).contains(&j)),
            "bipartite edge out of range"
        );
        Self { x_count, y_count, edges }
    }

    pub fn ferrers(lambda: &Partition) -> Self {
        let edges = (1..=lambda.m()).flat_map(|i| (1..=lambda.part(i)).map(move |j| (i, j)));
        Self::new(lambda.m(), lambda.n(), edges)
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn names(&self) -> VarNames {
        VarNames::Bipartite { m: self.x_count, n: self.y_count }
    }

    /// The same graph on the joint vertex list `x1..xm, y1..yn`.
    pub fn to_simple(&self) -> SimpleGraph {
        let m = self.x_count;
        SimpleGraph::new(m + self.y_count, self.edges.iter().map(|&(i, j)| (i - 1, m + j - 1)))
    }

    pub fn edge_ideal(&self) -> MonomialIdeal {
        self.to_simple().edge_ideal()
    }
}

/// A prime `(x_i : i ∈ σ)` given by its variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeComponent {
    vars: BTreeSet<usize>,
}

impl PrimeComponent {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        assert!(!vars.is_empty(), "a prime component needs a variable");
        Self { vars }
    }

    pub fn variables(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    pub fn to_ideal(&self, n: usize) -> MonomialIdeal {
        MonomialIdeal::prime(n, self.vars.iter().copied())
    }

    pub fn contains_component(&self, other: &PrimeComponent) -> bool {
        other.vars.is_subset(&self.vars)
    }

    /// Sorted variable names, e.g. `["x1", "y3"]`.
    pub fn names(&self, names: &VarNames) -> Vec<String> {
        self.vars.iter().map(|&v| names.name(v)).collect()
    }
}

/// Whether no component contains another.
pub fn is_irredundant(components: &[PrimeComponent]) -> bool {
    components
        .iter()
        .enumerate()
        .all(|(a, p)| components.iter().enumerate().all(|(b, q)| a == b || !p.contains_component(q)))
}

/// Intersection of the given primes; the empty intersection is the unit
/// ideal.
pub fn intersect_components(components: &[PrimeComponent], n: usize) -> Result<MonomialIdeal, MonomialError> {
    components.iter().try_fold(MonomialIdeal::unit(n), |acc, p| acc.intersect(&p.to_ideal(n)))
}

pub fn ferrers_ideal(lambda: &Partition) -> MonomialIdeal {
    BipartiteGraph::ferrers(lambda).edge_ideal()
}

/// Edge ideal of the complement, over every vertex pair of the graph.
pub fn complement_edge_ideal(graph: &SimpleGraph) -> MonomialIdeal {
    graph.complement().edge_ideal()
}

/// Alexander dual of a squarefree ideal: the intersection of the primes
/// spanned by each generator's support.
pub fn alexander_dual(ideal: &MonomialIdeal) -> Result<MonomialIdeal, FerrersError> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_squarefree()) {
        return Err(FerrersError::NotSquarefree(g.to_string()));
    }
    let n = ideal.n();
    let mut acc = MonomialIdeal::unit(n);
    for g in ideal.generators() {
        acc = acc.intersect(&MonomialIdeal::prime(n, g.support()))?;
    }
    Ok(acc)
}

/// The closed-form decomposition of the LCM-dual of `I_λ`:
/// every `(x_i, x_j)`, every `(y_i, y_j)` with `i < j`, and `(x_i, y_j)` for
/// each non-edge. Indices are into the joint ring.
pub fn ferrers_dual_primary_decomposition(lambda: &Partition) -> Vec<PrimeComponent> {
    let (m, n) = (lambda.m(), lambda.n());
    let graph = BipartiteGraph::ferrers(lambda);
    let x_pairs = (0..m).tuple_combinations().map(|(a, b)| PrimeComponent::new([a, b]));
    let y_pairs = (0..n).tuple_combinations().map(|(a, b)| PrimeComponent::new([m + a, m + b]));
    let non_edges = (1..=m)
        .cartesian_product(1..=n)
        .filter(|&(i, j)| !graph.has_edge(i, j))
        .map(|(i, j)| PrimeComponent::new([i - 1, m + j - 1]));
    x_pairs.chain(y_pairs).chain(non_edges).collect()
}

/// `(x_i y_j : μ_i < j <= λ_i)`.
pub fn generalized_ferrers_ideal(lambda: &Partition, mu: &Shift) -> Result<MonomialIdeal, FerrersError> {
    let (m, n) = (lambda.m(), lambda.n());
    if n < m {
        return Err(FerrersError::TooFewColumns { m, n });
    }
    if mu.values().len() != m {
        return Err(FerrersError::InvalidShift { mu: mu.values().to_vec(), m, last: lambda.part(m) });
    }
    let gens = (1..=m)
        .flat_map(|i| (mu.values()[i - 1] + 1..=lambda.part(i)).map(move |j| (i, j)))
        .map(|(i, j)| Monomial::from_support(m + n, [i - 1, m + j - 1]))
        .collect();
    Ok(MonomialIdeal::new(m + n, gens)?)
}

/// Substitutes `y_i ↦ x_i` in an ideal of `K[x1..xm, y1..yn]`, landing in
/// `K[x1..xk]` with `k = max(m, n)`.
pub fn specialize(ideal: &MonomialIdeal, m: usize, n: usize) -> Result<MonomialIdeal, FerrersError> {
    if ideal.n() != m + n {
        return Err(FerrersError::SplitMismatch { expected: m + n, found: ideal.n() });
    }
    let k = m.max(n).max(1);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut exps = vec![0; k];
            for (v, &e) in g.exponents().iter().enumerate() {
                let target = if v < m { v } else { v - m };
                exps[target] += e;
            }
            Monomial::new(exps)
        })
        .collect();
    Ok(MonomialIdeal::new(k, gens)?)
}

/// The strongly stable degree-2 ideal `(x_i x_j : i <= j <= λ_i)`, obtained by
/// specializing `I_{λ-μ}` with `μ = (0, 1, ..., m-1)`.
pub fn strongly_stable_from_partition(lambda: &Partition) -> Result<MonomialIdeal, FerrersError> {
    if !lambda.supports_strongly_stable() {
        return Err(FerrersError::NotStronglyStableShape(lambda.parts().to_vec()));
    }
    let mu = Shift::staircase(lambda)?;
    specialize(&generalized_ferrers_ideal(lambda, &mu)?, lambda.m(), lambda.n())
}

/// Reads `λ_i = max{j : x_i x_j ∈ I}` off a strongly stable ideal generated
/// in degree 2.
pub fn partition_from_strongly_stable(ideal: &MonomialIdeal) -> Result<Partition, FerrersError> {
    if ideal.equigenerated_degree() != Some(2) {
        return Err(FerrersError::NotDegreeTwo);
    }
    if !ideal.is_strongly_stable() {
        return Err(FerrersError::NotStronglyStable);
    }
    let mut parts = Vec::new();
    for i in 0..ideal.n() {
        let row_max = ideal
            .generators()
            .iter()
            .filter_map(|g| {
                let s = g.support();
                (s[0] == i).then(|| s.last().copied().unwrap())
            })
            .max();
        match row_max {
            Some(j) => parts.push(j + 1),
            None => break,
        }
    }
    Partition::new(parts)
}
