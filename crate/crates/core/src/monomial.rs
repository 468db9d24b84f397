//! Monomials, monomial ideals with canonical minimal generators, and the
//! LCM-dual.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("monomial has {found} exponents but the ambient ring has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ambient rings differ: {left} vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },
    #[error("the ambient ring needs at least one variable")]
    NoVariables,
    #[error("operation undefined on the zero ideal")]
    ZeroIdeal,
    #[error("operation undefined on the unit ideal")]
    UnitIdeal,
}

/// A monomial stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn var(n: usize, index: usize) -> Self {
        let mut exps = vec![0; n];
        exps[index] = 1;
        Self { exps }
    }

    /// Squarefree product of the listed variables.
    pub fn from_support(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; n];
        for v in vars {
            exps[v] = 1;
        }
        Self { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().positions(|&e| e > 0).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::new(self.exps.iter().map(|&e| e * k).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a - b).collect()))
    }

    /// The canonical generator order: lower degree first, then lexicographic
    /// with the larger power of `x1` first (so `x1^2 < x1*x2 < x2^2`).
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

/// Witness for the height of a monomial ideal: a smallest set of variables
/// whose prime contains every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightCertificate {
    pub height: usize,
    pub witness_prime: Vec<usize>,
}

/// A monomial ideal, always stored by its minimal generators in canonical
/// order. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts `gens`.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self, MonomialError> {
        if n == 0 {
            return Err(MonomialError::NoVariables);
        }
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(MonomialError::LengthMismatch { expected: n, found: bad.n() });
        }
        Ok(Self { n, gens: minimal_generators(gens) })
    }

    pub fn from_exponents(n: usize, exps: Vec<Vec<u32>>) -> Result<Self, MonomialError> {
        Self::new(n, exps.into_iter().map(Monomial::new).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self { n, gens: vec![Monomial::one(n)] }
    }

    /// The ideal generated by the listed variables.
    pub fn prime(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars.into_iter().map(|v| Monomial::var(n, v)).collect();
        Self { n, gens: minimal_generators(gens) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<(), MonomialError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(MonomialError::AmbientMismatch { left: self.n, right: other.n })
        }
    }

    /// `m_I`: the componentwise maximum of the generator exponents.
    pub fn lcm(&self) -> Result<Monomial, MonomialError> {
        let mut gens = self.gens.iter();
        let first = gens.next().ok_or(MonomialError::ZeroIdeal)?;
        Ok(gens.fold(first.clone(), |acc, g| acc.lcm(g)))
    }

    /// `m_I / f_i` for each generator, in the order of `generators()`.
    ///
    /// This positional order is what pairs a generator with its dual; the
    /// dual ideal itself re-sorts its generators canonically.
    pub fn dual_generators(&self) -> Result<Vec<Monomial>, MonomialError> {
        let m = self.lcm()?;
        Ok(self.gens.iter().map(|f| m.checked_div(f).expect("every generator divides the lcm")).collect())
    }

    /// The LCM-dual, generated by `m_I / f_i`.
    ///
    /// Divisibility between the duals reverses divisibility between the
    /// originals, so the dual generators are already minimal.
    pub fn lcm_dual(&self) -> Result<MonomialIdeal, MonomialError> {
        let gens = self.dual_generators()?;
        MonomialIdeal::new(self.n, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let gens = self.gens.iter().cartesian_product(&other.gens).map(|(f, g)| f.mul(g)).collect();
        MonomialIdeal::new(self.n, gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let gens = self.gens.iter().cartesian_product(&other.gens).map(|(f, g)| f.lcm(g)).collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        MonomialIdeal::new(self.n, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool, MonomialError> {
        if m.n() != self.n {
            return Err(MonomialError::LengthMismatch { expected: self.n, found: m.n() });
        }
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Ideal containment `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && other.gens.iter().all(|g| self.contains_unchecked(g))
    }

    /// Minimum number of variables generating a prime that contains `I`,
    /// found by trying variable subsets in order of increasing size.
    pub fn height(&self) -> Result<HeightCertificate, MonomialError> {
        if self.is_zero() {
            return Err(MonomialError::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(MonomialError::UnitIdeal);
        }
        let supports: Vec<Vec<usize>> = self.gens.iter().map(Monomial::support).collect();
        for size in 1..=self.n {
            for subset in (0..self.n).combinations(size) {
                if supports.iter().all(|s| s.iter().any(|v| subset.contains(v))) {
                    return Ok(HeightCertificate { height: size, witness_prime: subset });
                }
            }
        }
        unreachable!("the maximal ideal contains every proper monomial ideal")
    }

    /// The common degree of the minimal generators, if there is one.
    pub fn equigenerated_degree(&self) -> Option<u32> {
        let first = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == first).then_some(first)
    }

    /// Exchange property `x_j * f / x_i ∈ I` for every generator `f`,
    /// every `x_i | f` and every `j < i`.
    pub fn is_strongly_stable(&self) -> bool {
        self.gens.iter().all(|f| {
            f.support().into_iter().all(|i| {
                (0..i).all(|j| {
                    let mut exps = f.exponents().to_vec();
                    exps[i] -= 1;
                    exps[j] += 1;
                    self.contains_unchecked(&Monomial::new(exps))
                })
            })
        })
    }
}

/// Drops duplicates and every monomial divisible by another one, then sorts
/// canonically.
pub fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    // after sorting by degree, a divisor always precedes its multiples
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_monomial(self, &crate::text::VarNames::Plain))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_ideal(self, &crate::text::VarNames::Plain))
    }
}
