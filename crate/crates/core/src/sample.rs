//! Seeded random inputs for the randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::RingValue;
use crate::operad::{Instance, MonoidElement, Multiplicative};
use crate::series::{Carrier, Embedding, GradedSeries};
use crate::tree::{enumerate_trees, Tree};

/// All randomness goes through one of these, so a seed fixes every draw.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An integer in `-3..=3`.
    pub fn small(&mut self) -> RingValue {
        RingValue::from(self.rng.random_range(-3i64..=3))
    }

    /// A polynomial in `a, b, c` with up to three small terms.
    pub fn poly(&mut self) -> RingValue {
        let mut out = RingValue::zero();
        for _ in 0..self.rng.random_range(0..=3) {
            let mut term = self.small();
            for v in ["a", "b", "c"] {
                let e = self.rng.random_range(0..=2u32);
                term = &term * &RingValue::var(v).pow(e);
            }
            out = &out + &term;
        }
        out
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    pub fn tree(&mut self, order: usize) -> Tree {
        let all = enumerate_trees(order);
        let i = self.index(all.len());
        all[i].clone()
    }

    /// A series with every non-unit element of grading `1..=n` drawn at
    /// random, and unit coefficient one.
    pub fn group_series(&mut self, carrier: &Carrier, n: usize) -> GradedSeries {
        let mut s = GradedSeries::one(carrier.clone(), n);
        for d in 1..=n {
            for k in carrier.elements(d) {
                let v = self.small();
                s.insert(k, v).expect("element of the carrier");
            }
        }
        s
    }

    /// Like [`Sampler::group_series`], with a random constant term too.
    pub fn monoid_series(&mut self, m: &Multiplicative, n: usize) -> GradedSeries {
        let carrier = Carrier::Monoid(m.clone());
        let mut s = self.group_series(&carrier, n);
        let c = self.small();
        s.insert(MonoidElement::Unit, c).expect("unit key");
        s
    }

    /// `λ_f` or `ρ_f` for a random invertible `f`.
    pub fn embedded(&mut self, m: &Multiplicative, side: Embedding, n: usize) -> GradedSeries {
        let f = self.group_series(&Carrier::Monoid(m.clone()), n);
        f.embed(side).expect("monoid series")
    }

    /// A random member of the alpha subgroup, with diffeomorphism grading `n`.
    pub fn alpha_member(&mut self, n: usize) -> GradedSeries {
        let m = Multiplicative::dup_over();
        let f = self.monoid_series(&m, n.saturating_sub(1));
        let f = GradedSeries::from_terms(Carrier::Monoid(m), n, f.terms().map(|(k, v)| (k.clone(), v.clone())))
            .expect("same carrier");
        GradedSeries::alpha_from(&f).expect("tree monoid series")
    }

    pub fn operad_series(&mut self, instance: Instance, n: usize) -> GradedSeries {
        self.group_series(&Carrier::Operad(instance), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let c = Carrier::Operad(Instance::Dup);
        let a = Sampler::new(7).group_series(&c, 3);
        let b = Sampler::new(7).group_series(&c, 3);
        assert_eq!(a, b);
        assert!(a.is_group_element());
    }

    #[test]
    fn alpha_members_are_members() {
        let mut s = Sampler::new(1);
        for _ in 0..5 {
            let a = s.alpha_member(4);
            assert_eq!(a.truncation(), 4);
            assert!(a.alpha_membership());
        }
    }
}
