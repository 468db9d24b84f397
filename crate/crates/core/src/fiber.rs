//! Binomial relations among monomial generators, the degree-bounded check
//! that an ideal and its LCM-dual have the same special fiber relations, and
//! the symmetric-matrix minors presenting the fiber of a strongly stable
//! degree-2 ideal.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::exactlinalg::{rank, RationalMatrix};
use crate::ferrers::{strongly_stable_from_partition, FerrersError, Partition};
use crate::monomial::{Monomial, MonomialError, MonomialIdeal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("hypothesis violated: height {0} < 2")]
    HeightTooSmall(usize),
    #[error("hypothesis violated: ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("relation degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Ferrers(#[from] FerrersError),
}

/// A binomial `T_β - T_α` with `f_α = f_β`, stored by zero-based sorted
/// index multisets with `alpha < beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationPair {
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

impl RelationPair {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a.len(), b.len(), "relation sides must have the same degree");
        assert_ne!(a, b, "a relation needs two distinct multisets");
        if a < b {
            Self { alpha: a, beta: b }
        } else {
            Self { alpha: b, beta: a }
        }
    }

    /// Builds from 1-based index lists, as they are written out.
    pub fn from_one_based(a: &[usize], b: &[usize]) -> Self {
        Self::new(a.iter().map(|i| i - 1).collect(), b.iter().map(|i| i - 1).collect())
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn degree(&self) -> usize {
        self.alpha.len()
    }

    /// Whether the two sides multiply out to the same monomial.
    pub fn holds_for(&self, gens: &[Monomial]) -> bool {
        product_of(gens, &self.alpha) == product_of(gens, &self.beta)
    }
}

impl Serialize for RelationPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.alpha.iter().map(|i| i + 1).collect::<Vec<_>>())?;
        seq.serialize_element(&self.beta.iter().map(|i| i + 1).collect::<Vec<_>>())?;
        seq.end()
    }
}

fn product_of(gens: &[Monomial], indices: &[usize]) -> Monomial {
    indices.iter().fold(Monomial::one(gens[0].n()), |acc, &i| acc.mul(&gens[i]))
}

/// Every degree-`r` relation among `gens`: r-multisets of indices are
/// bucketed by their product, and every pair inside a bucket is emitted.
pub fn relations_among(gens: &[Monomial], r: usize) -> BTreeSet<RelationPair> {
    if gens.is_empty() || r == 0 {
        return BTreeSet::new();
    }
    let mut buckets: HashMap<Monomial, Vec<Vec<usize>>> = HashMap::new();
    for multiset in (0..gens.len()).combinations_with_replacement(r) {
        buckets.entry(product_of(gens, &multiset)).or_default().push(multiset);
    }
    buckets
        .into_values()
        .filter(|b| b.len() > 1)
        .flat_map(|bucket| {
            bucket.into_iter().tuple_combinations().map(|(a, b)| RelationPair::new(a, b)).collect::<Vec<_>>()
        })
        .collect()
}

/// Degree-`r` relations among the minimal generators of `ideal`.
pub fn toric_relations(ideal: &MonomialIdeal, r: usize) -> BTreeSet<RelationPair> {
    relations_among(ideal.generators(), r)
}

/// Relation counts for one degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub ideal_relations: usize,
    pub dual_relations: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiberComparison {
    pub r_max: usize,
    pub degrees: Vec<DegreeComparison>,
}

impl FiberComparison {
    pub fn is_isomorphic(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }

    pub fn first_mismatch(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.equal).map(|d| d.degree)
    }
}

/// Compares the relations of `I` and of its LCM-dual degree by degree up to
/// `r_max`, pairing `f_i` with `m_I / f_i` positionally.
pub fn verify_fiber_isomorphism(ideal: &MonomialIdeal, r_max: usize) -> Result<FiberComparison, FiberError> {
    if r_max == 0 {
        return Err(FiberError::ZeroDegree);
    }
    let height = ideal.height()?.height;
    if height < 2 {
        return Err(FiberError::HeightTooSmall(height));
    }
    if ideal.equigenerated_degree().is_none() {
        return Err(FiberError::NotEquigenerated);
    }
    let dual = ideal.dual_generators()?;
    let degrees = (1..=r_max)
        .map(|r| {
            let mine = toric_relations(ideal, r);
            let theirs = relations_among(&dual, r);
            DegreeComparison {
                degree: r,
                ideal_relations: mine.len(),
                dual_relations: theirs.len(),
                equal: mine == theirs,
            }
        })
        .collect();
    Ok(FiberComparison { r_max, degrees })
}

/// Krull dimension of `K[f_1 t, ..., f_ν t]`: the rank of the exponent
/// vectors `(a_i, 1)`. For generators of a common positive degree the extra
/// coordinate does not change the rank.
pub fn fiber_dimension(ideal: &MonomialIdeal) -> Result<usize, FiberError> {
    if ideal.is_zero() {
        return Err(MonomialError::ZeroIdeal.into());
    }
    if ideal.equigenerated_degree().is_none() {
        return Err(FiberError::NotEquigenerated);
    }
    Ok(exponent_rank(ideal.generators()))
}

fn exponent_rank(gens: &[Monomial]) -> usize {
    let cols = gens[0].n() + 1;
    let entries = gens
        .iter()
        .flat_map(|g| g.exponents().iter().map(|&e| e as i64).chain([1]))
        .map(|v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    rank(&RationalMatrix::new(gens.len(), cols, entries).expect("rows have n+1 entries"))
}

/// A 1-based position `(i, j)` with `i <= j` of the symmetric matrix.
pub type Position = (usize, usize);

fn canonical(a: usize, b: usize) -> Position {
    (a.min(b), a.max(b))
}

/// The 2x2 minor on rows `i < k` and columns `j < l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Minor {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl Minor {
    /// `((i,j), (i,l), (k,j), (k,l))`, each canonicalized.
    pub fn entries(&self) -> [Position; 4] {
        let ((i, k), (j, l)) = (self.rows, self.cols);
        [canonical(i, j), canonical(i, l), canonical(k, j), canonical(k, l)]
    }

    /// The binomial `T_ij T_kl - T_il T_kj` as a canonical pair of position
    /// multisets.
    pub fn relation(&self) -> PositionRelation {
        let [ij, il, kj, kl] = self.entries();
        PositionRelation::new([ij, kl], [il, kj])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionRelation {
    pub left: [Position; 2],
    pub right: [Position; 2],
}

impl PositionRelation {
    pub fn new(mut a: [Position; 2], mut b: [Position; 2]) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        if a <= b {
            Self { left: a, right: b }
        } else {
            Self { left: b, right: a }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.left == self.right
    }
}

/// The symmetric matrix `S_λ` of a strongly stable degree-2 ideal and its
/// 2x2 minors whose entries are all variables.
#[derive(Clone, Debug)]
pub struct SymmetricPresentation {
    pub lambda: Partition,
    pub variable_positions: BTreeSet<Position>,
    pub minors: Vec<Minor>,
    /// Minors dropped because an entry is a structural zero.
    pub skipped: usize,
}

impl SymmetricPresentation {
    /// Distinct nontrivial binomials among the minors.
    pub fn relations(&self) -> BTreeSet<PositionRelation> {
        self.minors.iter().map(Minor::relation).filter(|r| !r.is_trivial()).collect()
    }

    /// The minor binomials rewritten in generator indices of `ideal`, which
    /// must contain every `x_i x_j` of the presentation.
    pub fn index_relations(&self, ideal: &MonomialIdeal) -> Option<BTreeSet<RelationPair>> {
        let n = ideal.n();
        let index_of = |(i, j): Position| {
            ideal.generators().iter().position(|g| *g == Monomial::var(n, i - 1).mul(&Monomial::var(n, j - 1)))
        };
        self.relations()
            .into_iter()
            .map(|rel| {
                let a = rel.left.iter().map(|&p| index_of(p)).collect::<Option<Vec<_>>>()?;
                let b = rel.right.iter().map(|&p| index_of(p)).collect::<Option<Vec<_>>>()?;
                Some(RelationPair::new(a, b))
            })
            .collect()
    }

    /// Substitutes generator monomials for the variables `T_ij` and checks
    /// that both monomials of every minor agree.
    pub fn minors_vanish_under(&self, value: impl Fn(Position) -> Monomial) -> bool {
        self.minors.iter().all(|minor| {
            let [ij, il, kj, kl] = minor.entries();
            value(ij).mul(&value(kl)) == value(il).mul(&value(kj))
        })
    }
}

pub fn symmetric_minors(lambda: &Partition) -> Result<SymmetricPresentation, FiberError> {
    let ideal = strongly_stable_from_partition(lambda)?;
    let n = lambda.n();
    let variable_positions: BTreeSet<Position> = ideal
        .generators()
        .iter()
        .map(|g| {
            let s = g.support();
            (s[0] + 1, s[s.len() - 1] + 1)
        })
        .collect();
    let mut minors = Vec::new();
    let mut skipped = 0;
    for rows in (1..=n).tuple_combinations::<(usize, usize)>() {
        for cols in (1..=n).tuple_combinations::<(usize, usize)>() {
            let minor = Minor { rows, cols };
            if minor.entries().iter().all(|p| variable_positions.contains(p)) {
                minors.push(minor);
            } else {
                skipped += 1;
            }
        }
    }
    Ok(SymmetricPresentation { lambda: lambda.clone(), variable_positions, minors, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ferrers::ferrers_ideal;
    use crate::text::{parse_ideal, VarNames};

    fn plain(s: &str) -> MonomialIdeal {
        parse_ideal(s, None, &VarNames::Plain).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Independent route: compare every pair of multisets directly.
    fn relations_pairwise(gens: &[Monomial], r: usize) -> BTreeSet<RelationPair> {
        let multisets: Vec<Vec<usize>> = (0..gens.len()).combinations_with_replacement(r).collect();
        let mut out = BTreeSet::new();
        for (a, b) in multisets.iter().tuple_combinations() {
            let pa = a.iter().fold(Monomial::one(gens[0].n()), |acc, &i| acc.mul(&gens[i]));
            let pb = b.iter().fold(Monomial::one(gens[0].n()), |acc, &i| acc.mul(&gens[i]));
            if pa == pb {
                out.insert(RelationPair::new(a.clone(), b.clone()));
            }
        }
        out
    }

    #[test]
    fn veronese_quadric_relation() {
        let i = plain("x1^2, x1*x2, x2^2");
        let rels = toric_relations(&i, 2);
        assert_eq!(rels, BTreeSet::from([RelationPair::from_one_based(&[1, 3], &[2, 2])]));
        assert_eq!(serde_json::to_string(rels.first().unwrap()).unwrap(), "[[1,3],[2,2]]");
    }

    #[test]
    fn no_linear_relations() {
        let i = plain("x1^3, x1*x2, x2^2, x1*x3");
        assert!(toric_relations(&i, 1).is_empty());
    }

    #[test]
    fn ferrers_square_relation() {
        let i = ferrers_ideal(&p(&[2, 2]));
        let g = i.generators();
        let idx = |s: &str| {
            let m = parse_ideal(s, None, &VarNames::Bipartite { m: 2, n: 2 }).unwrap();
            g.iter().position(|x| *x == m.generators()[0]).unwrap()
        };
        let expected = RelationPair::new(vec![idx("x1*y1"), idx("x2*y2")], vec![idx("x1*y2"), idx("x2*y1")]);
        assert_eq!(toric_relations(&i, 2), BTreeSet::from([expected]));
    }

    #[test]
    fn bucketing_agrees_with_pairwise_comparison() {
        for lambda in [p(&[4, 4, 3]), p(&[3, 3]), p(&[4, 2])] {
            let i = strongly_stable_from_partition(&lambda).unwrap();
            for r in 1..=3 {
                assert_eq!(toric_relations(&i, r), relations_pairwise(i.generators(), r));
            }
        }
        let i = plain("x1^3, x1^2*x2, x2^3, x1*x2*x3, x3^3");
        assert_eq!(toric_relations(&i, 3), relations_pairwise(i.generators(), 3));
    }

    #[test]
    fn fiber_isomorphism_checks() {
        let i = strongly_stable_from_partition(&p(&[4, 4, 3])).unwrap();
        assert!(verify_fiber_isomorphism(&i, 3).unwrap().is_isomorphic());
        let v = plain("x1^2, x1*x2, x2^2");
        let cmp = verify_fiber_isomorphism(&v, 3).unwrap();
        assert!(cmp.is_isomorphic());
        assert_eq!(cmp.degrees[1].ideal_relations, 1);
        assert_eq!(verify_fiber_isomorphism(&plain("x1^2, x1*x2, x1*x3"), 2), Err(FiberError::HeightTooSmall(1)));
        assert_eq!(verify_fiber_isomorphism(&plain("x1^3, x1*x2, x2^2"), 2), Err(FiberError::NotEquigenerated));
    }

    #[test]
    fn fiber_dimensions() {
        let i = strongly_stable_from_partition(&p(&[4, 4, 3])).unwrap();
        assert_eq!(fiber_dimension(&i).unwrap(), 4);
        assert_eq!(fiber_dimension(&i.lcm_dual().unwrap()).unwrap(), 4);
        assert_eq!(fiber_dimension(&plain("x1^2, x1*x2, x2^2")).unwrap(), 2);
        assert_eq!(fiber_dimension(&plain("x1*x2^3")).unwrap(), 1);
        assert_eq!(fiber_dimension(&MonomialIdeal::unit(2)).unwrap(), 1);
        assert_eq!(fiber_dimension(&plain("x1^3, x1*x2")), Err(FiberError::NotEquigenerated));
    }

    #[test]
    fn minors_for_small_shapes() {
        let pres = symmetric_minors(&p(&[2, 2])).unwrap();
        assert_eq!(pres.variable_positions, BTreeSet::from([(1, 1), (1, 2), (2, 2)]));
        assert_eq!(pres.relations(), BTreeSet::from([PositionRelation::new([(1, 1), (2, 2)], [(1, 2), (1, 2)])]));
        let i = strongly_stable_from_partition(&p(&[2, 2])).unwrap();
        assert_eq!(pres.index_relations(&i).unwrap(), toric_relations(&i, 2));

        let single = symmetric_minors(&p(&[1])).unwrap();
        assert!(single.minors.is_empty());
        assert!(matches!(symmetric_minors(&p(&[2, 1])), Err(FiberError::Ferrers(_))));
    }

    #[test]
    fn minors_vanish_on_generators_and_duals() {
        let lambda = p(&[4, 4, 3]);
        let pres = symmetric_minors(&lambda).unwrap();
        let i = strongly_stable_from_partition(&lambda).unwrap();
        let n = i.n();
        let m_i = i.lcm().unwrap();
        let gen = |(a, b): Position| Monomial::var(n, a - 1).mul(&Monomial::var(n, b - 1));
        assert!(pres.minors_vanish_under(gen));
        assert!(pres.minors_vanish_under(|pos| m_i.checked_div(&gen(pos)).unwrap()));
        assert!(!pres.minors.is_empty());
        for minor in &pres.minors {
            assert!(minor.entries().iter().all(|e| pres.variable_positions.contains(e)));
        }
    }
}
