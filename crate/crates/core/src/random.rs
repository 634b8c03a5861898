//! Seeded sampling of elements, cone points and derivations.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::Algebra;
use crate::element::Element;
use crate::linop::LinOp;

/// Derives an independent seed for trial `index` of a run seeded with `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn normal_vec(&mut self, n: usize) -> DVector<f64> {
        DVector::from_fn(n, |_, _| self.normal())
    }

    /// Coordinates i.i.d. `N(0, scale²)`.
    pub fn element(&mut self, alg: &Algebra, scale: f64) -> Element {
        let c = self.normal_vec(alg.dim()) * scale;
        Element::from_parts(alg.clone(), c)
    }

    /// `exp` of a random element.
    pub fn positive(&mut self, alg: &Algebra, scale: f64) -> Element {
        self.element(alg, scale)
            .exp()
            .expect("Jacobi converges on finite symmetric input")
    }

    /// Random inner derivation `Σ [L_a, L_b]` with `terms` brackets.
    pub fn derivation(&mut self, alg: &Algebra, terms: usize, scale: f64) -> LinOp {
        let mut d = LinOp::zeros(alg);
        for _ in 0..terms {
            let a = self.element(alg, scale.sqrt());
            let b = self.element(alg, scale.sqrt());
            d += &LinOp::l_op(&a).commutator(&LinOp::l_op(&b));
        }
        d
    }

    pub fn operator(&mut self, alg: &Algebra, scale: f64) -> LinOp {
        let d = alg.dim();
        LinOp::from_matrix(alg, nalgebra::DMatrix::from_fn(d, d, |_, _| scale * self.normal()))
            .expect("square matrix of algebra dimension")
    }
}

pub fn random_element(alg: &Algebra, seed: u64, scale: f64) -> Element {
    Sampler::new(seed).element(alg, scale)
}

pub fn random_positive(alg: &Algebra, seed: u64, scale: f64) -> Element {
    Sampler::new(seed).positive(alg, scale)
}
