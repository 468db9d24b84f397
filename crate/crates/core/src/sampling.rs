//! Seeded random monomial ideals for property checks.

use rand::Rng;

use crate::monomial::{Monomial, MonomialIdeal};

/// Shape of a random ideal: ambient size, exponent bound and generator
/// count, each drawn uniformly from `1..=max`.
#[derive(Clone, Copy, Debug)]
pub struct IdealShape {
    pub max_vars: usize,
    pub max_exponent: u32,
    pub max_generators: usize,
}

/// A random nonzero monomial ideal. Drawn generators are nonconstant, so the
/// ideal is proper.
pub fn random_ideal<R: Rng + ?Sized>(rng: &mut R, shape: IdealShape) -> MonomialIdeal {
    let n = rng.gen_range(1..=shape.max_vars);
    let count = rng.gen_range(1..=shape.max_generators);
    let gens = (0..count).map(|_| random_nonconstant(rng, n, shape.max_exponent)).collect();
    MonomialIdeal::new(n, gens).expect("n >= 1")
}

fn random_nonconstant<R: Rng + ?Sized>(rng: &mut R, n: usize, max_exponent: u32) -> Monomial {
    loop {
        let m = Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exponent)).collect());
        if !m.is_one() {
            return m;
        }
    }
}

/// A random ideal in `n` variables generated in degree `d >= 1`.
pub fn random_equigenerated<R: Rng + ?Sized>(rng: &mut R, n: usize, d: u32, max_generators: usize) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_generators);
    let gens = (0..count).map(|_| random_of_degree(rng, n, d)).collect();
    MonomialIdeal::new(n, gens).expect("n >= 1")
}

fn random_of_degree<R: Rng + ?Sized>(rng: &mut R, n: usize, d: u32) -> Monomial {
    let mut exps = vec![0; n];
    for _ in 0..d {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = IdealShape { max_vars: 5, max_exponent: 5, max_generators: 8 };
        for _ in 0..200 {
            let i = random_ideal(&mut rng, shape);
            assert!(i.n() <= 5 && i.len() <= 8 && !i.is_unit() && !i.is_zero());
            assert!(i.generators().iter().all(|g| g.exponents().iter().all(|&e| e <= 5)));
        }
        for _ in 0..50 {
            let i = random_equigenerated(&mut rng, 3, 4, 5);
            assert_eq!(i.equigenerated_degree(), Some(4));
        }
    }

    #[test]
    fn seeds_reproduce() {
        let shape = IdealShape { max_vars: 4, max_exponent: 3, max_generators: 6 };
        let a = random_ideal(&mut ChaCha8Rng::seed_from_u64(11), shape);
        let b = random_ideal(&mut ChaCha8Rng::seed_from_u64(11), shape);
        assert_eq!(a, b);
    }
}
