//! The labeled grid complex `X_λ` supporting the minimal free resolution of
//! the LCM-dual of a strongly stable degree-2 ideal, its cellular free
//! complex, and the acyclicity checks that certify it.
//!
//! Ordering conventions:
//! - vertices `(i, j)` with `i <= j <= λ_i`, row-major;
//! - edges: the horizontal edges of row 1 left to right, then the vertical
//!   edges from row 1 to row 2 left to right, then row 2 horizontal, and so on;
//! - faces: row-major by their upper-left corner, each traversed
//!   `(i,j) -> (i,j+1) -> (i+1,j+1) -> (i+1,j)`, so the top and right edges
//!   enter with `+1` and the bottom and left edges with `-1`.
//!
//! Under these conventions the incidence matrix puts `+1` at the tail of an
//! edge and `-1` at its head, and it equals the sign pattern of `d1`; the face
//! cycle matrix equals the sign pattern of `d2`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;
use thiserror::Error;

use crate::exactlinalg::{compose_is_zero, rank, LinalgError, RationalMatrix};
use crate::ferrers::{strongly_stable_from_partition, FerrersError, Partition};
use crate::monomial::{Monomial, MonomialError, MonomialIdeal};
use crate::text::{format_monomial, VarNames};

/// Environment variable bounding the oracle's input size.
pub const MAX_SCALE_ENV: &str = "MONOMIDEAL_MAX_SCALE";
const DEFAULT_MAX_GENERATORS: usize = 24;
const MAX_LATTICE: usize = 1 << 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CellresError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("d1 * d2 is nonzero at ({row}, {col})")]
    NotAComplex { row: usize, col: usize },
    #[error("restriction to b = {b} has reduced homology {homology:?} in dimensions -1..2")]
    NotAcyclic { b: Monomial, homology: [usize; 4] },
    #[error("{matrix} has a unit entry at ({row}, {col})")]
    UnitEntry { matrix: &'static str, row: usize, col: usize },
    #[error("entry ({row}, {col}) is not a signed variable")]
    NonLinearEntry { row: usize, col: usize },
    #[error("oracle scale guard: {what} = {size} exceeds {limit}")]
    ScaleExceeded { what: &'static str, size: usize, limit: usize },
    #[error(transparent)]
    Ferrers(#[from] FerrersError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A 1-based grid position `(i, j)`.
pub type Position = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub position: Position,
    pub label: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub label: Monomial,
}

/// A 2-cell given by its oriented boundary: edge indices with signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corner: Position,
    pub boundary: Vec<(usize, i8)>,
    pub label: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    m_i: Monomial,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
}

impl LabeledComplex {
    /// Builds a complex from vertex labels; edge and face labels are the lcm
    /// of their boundary labels. Each face boundary must be a signed cycle.
    pub fn new(
        m_i: Monomial,
        vertices: Vec<(Position, Monomial)>,
        edges: Vec<(usize, usize)>,
        faces: Vec<(Position, Vec<(usize, i8)>)>,
    ) -> Result<Self, CellresError> {
        let vertices: Vec<Vertex> = vertices.into_iter().map(|(position, label)| Vertex { position, label }).collect();
        let edges = edges
            .into_iter()
            .map(|(tail, head)| {
                if tail >= vertices.len() || head >= vertices.len() || tail == head {
                    return Err(CellresError::Malformed(format!("edge ({tail}, {head})")));
                }
                let label = vertices[tail].label.lcm(&vertices[head].label);
                Ok(Edge { tail, head, label })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let faces = faces
            .into_iter()
            .map(|(corner, boundary)| {
                let mut balance = vec![0i64; vertices.len()];
                for &(e, s) in &boundary {
                    let edge = edges
                        .get(e)
                        .filter(|_| s == 1 || s == -1)
                        .ok_or_else(|| CellresError::Malformed(format!("face at {corner:?}")))?;
                    balance[edge.tail] += i64::from(s);
                    balance[edge.head] -= i64::from(s);
                }
                if boundary.is_empty() || balance.iter().any(|&b| b != 0) {
                    return Err(CellresError::Malformed(format!("face at {corner:?} is not a cycle")));
                }
                let label = boundary.iter().fold(Monomial::one(m_i.n()), |acc, &(e, _)| acc.lcm(&edges[e].label));
                Ok(Face { corner, boundary, label })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { m_i, vertices, edges, faces })
    }

    pub fn m_i(&self) -> &Monomial {
        &self.m_i
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// `(ν, ε, f)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn vertex_index(&self, position: Position) -> Option<usize> {
        self.vertices.iter().position(|v| v.position == position)
    }

    /// Connected components of the underlying graph.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertices.len();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components
    }
}

/// The complex `X_λ` for the strongly stable ideal of `λ`.
pub fn build_complex(lambda: &Partition) -> Result<LabeledComplex, CellresError> {
    let ideal = strongly_stable_from_partition(lambda)?;
    let n = ideal.n();
    let m_i = ideal.lcm()?;
    let m = lambda.m();
    let present = |(i, j): Position| i >= 1 && i <= m && i <= j && j <= lambda.part(i);

    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    for i in 1..=m {
        for j in i..=lambda.part(i) {
            let quad = Monomial::var(n, i - 1).mul(&Monomial::var(n, j - 1));
            index.insert((i, j), vertices.len());
            vertices.push(((i, j), m_i.checked_div(&quad).expect("x_i x_j divides m_I")));
        }
    }

    let mut edges = Vec::new();
    let mut edge_index = HashMap::new();
    let mut push_edge = |from: Position, to: Position, edges: &mut Vec<(usize, usize)>| {
        edge_index.insert((from, to), edges.len());
        edges.push((index[&from], index[&to]));
    };
    for i in 1..=m {
        for j in i..lambda.part(i) {
            push_edge((i, j), (i, j + 1), &mut edges);
        }
        for j in i..=lambda.part(i) {
            if present((i + 1, j)) {
                push_edge((i, j), (i + 1, j), &mut edges);
            }
        }
    }

    let mut faces = Vec::new();
    for i in 1..m {
        for j in i + 1..lambda.part(i + 1) {
            let boundary = vec![
                (edge_index[&((i, j), (i, j + 1))], 1),
                (edge_index[&((i, j + 1), (i + 1, j + 1))], 1),
                (edge_index[&((i + 1, j), (i + 1, j + 1))], -1),
                (edge_index[&((i, j), (i + 1, j))], -1),
            ];
            faces.push(((i, j), boundary));
        }
    }
    LabeledComplex::new(m_i, vertices, edges, faces)
}

/// `A(G)`: `+1` at the tail and `-1` at the head of every edge.
pub fn incidence_matrix(x: &LabeledComplex) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(x.vertices.len(), x.edges.len());
    for (c, e) in x.edges.iter().enumerate() {
        a.set(e.tail, c, int(1));
        a.set(e.head, c, int(-1));
    }
    a
}

/// `C_f`: the signed edge membership of every face cycle.
pub fn face_cycle_matrix(x: &LabeledComplex) -> RationalMatrix {
    let mut c = RationalMatrix::zeros(x.edges.len(), x.faces.len());
    for (col, face) in x.faces.iter().enumerate() {
        for &(e, s) in &face.boundary {
            c.set(e, col, int(i64::from(s)));
        }
    }
    c
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedMonomial {
    pub sign: i8,
    pub monomial: Monomial,
}

/// A sparse-by-`Option` matrix whose entries are signed monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Option<SignedMonomial>>,
}

/// Wire form of a differential. Indices are 1-based; every entry is
/// `sign * x_{variable_index}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i8, usize)>,
}

impl MonomialMatrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![None; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&SignedMonomial> {
        self.entries[r * self.cols + c].as_ref()
    }

    fn set(&mut self, r: usize, c: usize, value: SignedMonomial) {
        self.entries[r * self.cols + c] = Some(value);
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &SignedMonomial)> + '_ {
        self.entries.iter().enumerate().filter_map(|(k, e)| e.as_ref().map(|e| (k / self.cols, k % self.cols, e)))
    }

    /// The `-1/0/+1` matrix of entry signs.
    pub fn sign_pattern(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for (r, c, e) in self.nonzero() {
            out.set(r, c, int(i64::from(e.sign)));
        }
        out
    }

    /// First entry that is `±1`.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        self.nonzero().find(|(_, _, e)| e.monomial.is_one()).map(|(r, c, _)| (r, c))
    }

    /// Substitutes `values[k]` for `x_{k+1}`.
    pub fn evaluate(&self, values: &[BigInt]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for (r, c, e) in self.nonzero() {
            let v = e
                .monomial
                .exponents()
                .iter()
                .zip(values)
                .fold(BigInt::one(), |acc, (&k, base)| acc * Pow::pow(base, k));
            out.set(r, c, BigRational::from_integer(v * BigInt::from(e.sign)));
        }
        out
    }

    /// First entry of `self * other` that does not cancel, comparing the
    /// polynomial products term by term.
    pub fn product_nonzero_at(&self, other: &MonomialMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        (0..self.rows).cartesian_product(0..other.cols).find(|&(r, c)| {
            let mut terms: HashMap<Monomial, i64> = HashMap::new();
            for k in 0..self.cols {
                if let (Some(a), Some(b)) = (self.get(r, k), other.get(k, c)) {
                    *terms.entry(a.monomial.mul(&b.monomial)).or_default() += i64::from(a.sign * b.sign);
                }
            }
            terms.values().any(|&v| v != 0)
        })
    }

    pub fn to_json(&self) -> Result<DifferentialJson, CellresError> {
        let entries = self
            .nonzero()
            .map(|(r, c, e)| match e.monomial.support().as_slice() {
                [v] if e.monomial.degree() == 1 => Ok((r + 1, c + 1, e.sign, v + 1)),
                _ => Err(CellresError::NonLinearEntry { row: r + 1, col: c + 1 }),
            })
            .collect::<Result<_, _>>()?;
        Ok(DifferentialJson { rows: self.rows, cols: self.cols, entries })
    }

    pub fn format(&self, names: &VarNames) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| match self.get(r, c) {
                        None => "0".to_string(),
                        Some(e) => {
                            let m = format_monomial(&e.monomial, names);
                            if e.sign < 0 {
                                format!("-{m}")
                            } else {
                                m
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `0 <- R <-d0- R^ν <-d1- R^ε <-d2- R^f <- 0` with basis elements in degrees
/// given by the cell labels.
#[derive(Clone, Debug)]
pub struct CellularFreeComplex {
    pub betti: [usize; 3],
    /// Distinct label degrees at homological positions 1, 2, 3.
    pub shifts: [Vec<u32>; 3],
    pub d0: Vec<Monomial>,
    pub d1: MonomialMatrix,
    pub d2: MonomialMatrix,
}

impl CellularFreeComplex {
    pub fn first_primes_substitution(&self) -> Vec<BigInt> {
        first_primes(self.d0.first().map_or(0, Monomial::n))
    }

    /// `d1 * d2 == 0` after substituting `values` for the variables.
    pub fn vanishes_numerically(&self, values: &[BigInt]) -> Result<bool, LinalgError> {
        compose_is_zero(&self.d1.evaluate(values), &self.d2.evaluate(values))
    }
}

fn degrees(labels: impl Iterator<Item = u32>) -> Vec<u32> {
    labels.collect::<BTreeSet<_>>().into_iter().collect()
}

/// The cellular free complex of `x`; coefficients are label quotients.
/// Fails if `d1 * d2` does not vanish symbolically.
pub fn boundary_maps(x: &LabeledComplex) -> Result<CellularFreeComplex, CellresError> {
    let (nu, eps, f) = x.counts();
    let quotient = |outer: &Monomial, inner: &Monomial| outer.checked_div(inner).expect("boundary label divides");
    let mut d1 = MonomialMatrix::zeros(nu, eps);
    for (c, e) in x.edges.iter().enumerate() {
        d1.set(e.tail, c, SignedMonomial { sign: 1, monomial: quotient(&e.label, &x.vertices[e.tail].label) });
        d1.set(e.head, c, SignedMonomial { sign: -1, monomial: quotient(&e.label, &x.vertices[e.head].label) });
    }
    let mut d2 = MonomialMatrix::zeros(eps, f);
    for (c, face) in x.faces.iter().enumerate() {
        for &(e, s) in &face.boundary {
            d2.set(e, c, SignedMonomial { sign: s, monomial: quotient(&face.label, &x.edges[e].label) });
        }
    }
    if let Some((row, col)) = d1.product_nonzero_at(&d2) {
        return Err(CellresError::NotAComplex { row, col });
    }
    Ok(CellularFreeComplex {
        betti: [nu, eps, f],
        shifts: [
            degrees(x.vertices.iter().map(|v| v.label.degree())),
            degrees(x.edges.iter().map(|e| e.label.degree())),
            degrees(x.faces.iter().map(|s| s.label.degree())),
        ],
        d0: x.vertices.iter().map(|v| v.label.clone()).collect(),
        d1,
        d2,
    })
}

pub fn first_primes(count: usize) -> Vec<BigInt> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes.into_iter().map(BigInt::from).collect()
}

/// `X_{<= b}`: the cells whose labels divide `b`.
pub fn restrict_complex(x: &LabeledComplex, b: &Monomial) -> LabeledComplex {
    let mut vertex_map = HashMap::new();
    let vertices: Vec<Vertex> = x
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.label.divides(b))
        .map(|(k, v)| {
            vertex_map.insert(k, vertex_map.len());
            v.clone()
        })
        .collect();
    let mut edge_map = HashMap::new();
    let edges: Vec<Edge> = x
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.label.divides(b))
        .map(|(k, e)| {
            edge_map.insert(k, edge_map.len());
            Edge { tail: vertex_map[&e.tail], head: vertex_map[&e.head], label: e.label.clone() }
        })
        .collect();
    let faces = x
        .faces
        .iter()
        .filter(|s| s.label.divides(b))
        .map(|s| Face {
            corner: s.corner,
            boundary: s.boundary.iter().map(|&(e, sign)| (edge_map[&e], sign)).collect(),
            label: s.label.clone(),
        })
        .collect();
    LabeledComplex { m_i: x.m_i.clone(), vertices, edges, faces }
}

/// Reduced homology ranks over the rationals in dimensions `-1, 0, 1, 2`,
/// using the augmentation that sends every vertex to the empty face. A
/// complex with no vertices has no augmentation term.
pub fn reduced_homology(x: &LabeledComplex) -> [usize; 4] {
    let (nu, eps, f) = x.counts();
    if nu == 0 {
        return [0, 0, 0, 0];
    }
    let r1 = rank(&incidence_matrix(x));
    let r2 = rank(&face_cycle_matrix(x));
    [0, nu - 1 - r1, eps - r1 - r2, f - r2]
}

pub fn is_acyclic(x: &LabeledComplex) -> bool {
    reduced_homology(x).iter().all(|&h| h == 0)
}

/// All labels of `x` closed under pairwise lcm. These index every distinct
/// restriction `X_{<= b}`.
pub fn label_lcm_closure(x: &LabeledComplex) -> BTreeSet<Monomial> {
    let labels: BTreeSet<Monomial> = x
        .vertices
        .iter()
        .map(|v| v.label.clone())
        .chain(x.edges.iter().map(|e| e.label.clone()))
        .chain(x.faces.iter().map(|s| s.label.clone()))
        .collect();
    lcm_closure(labels)
}

fn lcm_closure(seed: BTreeSet<Monomial>) -> BTreeSet<Monomial> {
    let base: Vec<Monomial> = seed.iter().cloned().collect();
    let mut closure = seed;
    let mut frontier: Vec<Monomial> = closure.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &base {
                let l = a.lcm(g);
                if closure.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    closure
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub betti: [usize; 3],
    pub shifts: [Vec<u32>; 3],
    /// `max(shift - i)` over the nonzero positions `i >= 1`.
    pub regularity: i64,
    pub projective_dimension: usize,
    pub is_linear: bool,
}

impl ResolutionSummary {
    pub fn from_complex(c: &CellularFreeComplex) -> Self {
        let nonzero: Vec<usize> = (0..3).filter(|&k| c.betti[k] > 0).collect();
        let regularity = nonzero
            .iter()
            .flat_map(|&k| c.shifts[k].iter().map(move |&d| i64::from(d) - (k as i64 + 1)))
            .max()
            .unwrap_or(0);
        let single: Option<Vec<u32>> =
            nonzero.iter().map(|&k| (c.shifts[k].len() == 1).then(|| c.shifts[k][0])).collect();
        let is_linear = single.is_some_and(|d| d.windows(2).all(|w| w[1] == w[0] + 1));
        Self { betti: c.betti, shifts: c.shifts.clone(), regularity, projective_dimension: nonzero.len(), is_linear }
    }
}

/// Checks that `X_λ` supports a minimal free resolution: `d1 d2 = 0`
/// symbolically and under a prime substitution, every restriction over the
/// label-lcm closure is acyclic, and no differential has a unit entry.
pub fn verify_resolution(lambda: &Partition) -> Result<ResolutionSummary, CellresError> {
    let x = build_complex(lambda)?;
    let complex = boundary_maps(&x)?;
    if !complex.vanishes_numerically(&complex.first_primes_substitution())? {
        return Err(CellresError::NotAComplex { row: 0, col: 0 });
    }
    for b in label_lcm_closure(&x) {
        let homology = reduced_homology(&restrict_complex(&x, &b));
        if homology.iter().any(|&h| h > 0) {
            return Err(CellresError::NotAcyclic { b, homology });
        }
    }
    for (name, d) in [("d1", &complex.d1), ("d2", &complex.d2)] {
        if let Some((row, col)) = d.unit_entry() {
            return Err(CellresError::UnitEntry { matrix: name, row, col });
        }
    }
    Ok(ResolutionSummary::from_complex(&complex))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiFormulas {
    pub betti: [usize; 3],
    /// The closed form for `β₃` before clamping at zero.
    pub beta3_closed_form: i64,
    pub clamped: bool,
}

/// `β₁ = Σλ_i - C(m,2)`, `β₂ = λ₁ + 2(λ₂+…+λ_m) - m²`,
/// `β₃ = (λ₂+…+λ_m) - C(m+1,2) + 1`, each clamped at zero.
pub fn betti_formulas(lambda: &Partition) -> BettiFormulas {
    let m = lambda.m() as i64;
    let parts: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
    let tail: i64 = parts[1..].iter().sum();
    let b1 = parts.iter().sum::<i64>() - m * (m - 1) / 2;
    let b2 = parts[0] + 2 * tail - m * m;
    let b3 = tail - m * (m + 1) / 2 + 1;
    let clamp = |v: i64| v.max(0) as usize;
    BettiFormulas {
        betti: [clamp(b1), clamp(b2), clamp(b3)],
        beta3_closed_form: b3,
        clamped: b1 < 0 || b2 < 0 || b3 < 0,
    }
}

/// Checks `β₁ = μ`, `β₂ = 2μ - g - n`, `β₃ = μ - g - n + 1` against the
/// closed forms, with `μ` the generator count, `g` the height and `n = λ₁`.
/// For `m = 1` the height is 1 and `β₃` is read as 0.
pub fn betti_identities(lambda: &Partition) -> Result<bool, CellresError> {
    let ideal = strongly_stable_from_partition(lambda)?;
    let mu = ideal.len() as i64;
    let g = ideal.height()?.height as i64;
    let n = lambda.n() as i64;
    let formulas = betti_formulas(lambda);
    let expected = [mu, 2 * mu - g - n, (mu - g - n + 1).max(0)];
    Ok(g == lambda.m() as i64 && formulas.betti.iter().zip(expected).all(|(&b, e)| b as i64 == e))
}

/// Multigraded Betti numbers of `R/I` keyed by `(i, b)` for `i >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultigradedBetti {
    pub entries: BTreeMap<(usize, Monomial), usize>,
}

impl MultigradedBetti {
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, &v)| v).sum()
    }

    /// `β_i` for `i = 1..=max`, trailing zeros dropped.
    pub fn totals(&self) -> Vec<usize> {
        let top = self.entries.keys().map(|(k, _)| *k).max().unwrap_or(0);
        (1..=top).map(|i| self.total(i)).collect()
    }

    /// Distinct total degrees carrying `β_i`.
    pub fn shifts(&self, i: usize) -> Vec<u32> {
        degrees(self.entries.keys().filter(|(k, _)| *k == i).map(|(_, b)| b.degree()))
    }

    /// Graded Betti numbers `β_{i,d}`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, b), &v) in &self.entries {
            *out.entry((*i, b.degree())).or_insert(0) += v;
        }
        out
    }
}

fn max_generators() -> usize {
    std::env::var(MAX_SCALE_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_GENERATORS)
}

/// Betti numbers of `R/I` from the upper Koszul simplicial complexes
/// `K^b = {τ ⊆ supp(b) squarefree : x^b / x^τ ∈ I}`, using
/// `β_{i,b}(R/I) = dim H̃_{i-2}(K^b)` for `b` in the lcm lattice.
pub fn multigraded_betti_oracle(ideal: &MonomialIdeal) -> Result<MultigradedBetti, CellresError> {
    if ideal.is_zero() {
        return Err(MonomialError::ZeroIdeal.into());
    }
    let limit = max_generators();
    if ideal.len() > limit {
        return Err(CellresError::ScaleExceeded { what: "generators", size: ideal.len(), limit });
    }
    let lattice = lcm_closure(ideal.generators().iter().cloned().collect());
    if lattice.len() > MAX_LATTICE {
        return Err(CellresError::ScaleExceeded { what: "lcm lattice", size: lattice.len(), limit: MAX_LATTICE });
    }
    let mut out = MultigradedBetti::default();
    for b in lattice {
        let support = b.support();
        let faces: Vec<Vec<usize>> = (0..=support.len())
            .flat_map(|k| support.iter().copied().combinations(k))
            .filter(|tau| {
                let x_tau = Monomial::from_support(b.n(), tau.iter().copied());
                b.checked_div(&x_tau).is_some_and(|q| ideal.contains_unchecked(&q))
            })
            .collect();
        for (dim, h) in simplicial_reduced_homology(&faces) {
            if h > 0 {
                out.entries.insert(((dim + 2) as usize, b.clone()), h);
            }
        }
    }
    Ok(out)
}

/// Reduced homology of a simplicial complex given by all of its faces
/// (including the empty face), as `(dimension, rank)` pairs from `-1` up.
fn simplicial_reduced_homology(faces: &[Vec<usize>]) -> Vec<(i64, usize)> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    // by_size[k] holds the faces with k vertices, i.e. dimension k - 1
    let by_size: Vec<Vec<&Vec<usize>>> = (0..=top).map(|k| faces.iter().filter(|f| f.len() == k).collect()).collect();
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > top || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let index: HashMap<&Vec<usize>, usize> = by_size[k - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut d = RationalMatrix::zeros(by_size[k - 1].len(), by_size[k].len());
        for (c, face) in by_size[k].iter().enumerate() {
            for drop in 0..face.len() {
                let mut facet = (*face).clone();
                facet.remove(drop);
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                d.set(index[&facet], c, int(sign));
            }
        }
        rank(&d)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(boundary_rank).collect();
    (0..=top).map(|k| (k as i64 - 1, by_size[k].len() - ranks[k] - ranks[k + 1])).collect()
}

/// Graphviz rendering of the directed graph of `x`.
pub fn to_dot(x: &LabeledComplex, names: &VarNames) -> String {
    let mut out = String::from("digraph X {\n");
    for (k, v) in x.vertices.iter().enumerate() {
        let (i, j) = v.position;
        let _ = writeln!(out, "  v{k} [label=\"({i},{j})\\n{}\"];", format_monomial(&v.label, names));
    }
    for e in &x.edges {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.tail, e.head, format_monomial(&e.label, names));
    }
    out.push_str("}\n");
    out
}
