//! Seeded random instances for property checks and the `reservoir` mode.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::family::MapFamily;
use crate::graded::{GradedVectorSpace, MultilinearMap, Space};
use crate::lincomb::{integer, LinComb};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A homogeneous map with small integer coefficients; each admissible
/// output coefficient is nonzero with probability `density`.
pub fn random_map(rng: &mut impl Rng, space: &Space, arity: usize, degree: i64, density: f64) -> MultilinearMap {
    MultilinearMap::from_fn(space, arity, degree, |t| {
        let target = space.tuple_degree(t) + degree;
        space
            .basis_of_degree(target)
            .into_iter()
            .filter_map(|o| {
                if rng.gen_bool(density) {
                    let c = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    Some((o, integer(c)))
                } else {
                    None
                }
            })
            .collect::<LinComb<usize>>()
    })
    .expect("outputs chosen in the target degree")
}

/// Components of arities `1..=truncation`.
pub fn random_family(rng: &mut impl Rng, space: &Space, degree: i64, truncation: usize, density: f64) -> MapFamily {
    let maps = (1..=truncation)
        .map(|n| random_map(rng, space, n, degree, density))
        .collect();
    MapFamily::new(space, degree, maps).expect("components have matching shapes")
}

/// A space of the given dimension with degrees drawn from `degrees`.
pub fn random_space(rng: &mut impl Rng, dim: usize, degrees: &[i64]) -> Space {
    GradedVectorSpace::from_pairs((0..dim).map(|i| (format!("v{}", i + 1), degrees[rng.gen_range(0..degrees.len())])))
        .expect("labels are distinct")
}
