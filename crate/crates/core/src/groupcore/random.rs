use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::GroupElement;

/// Product replacement with an accumulator ("rattle"), seeded.
pub struct ProductReplacement<E> {
    state: Vec<E>,
    acc: E,
    rng: ChaCha8Rng,
}

const SLOTS: usize = 10;
const BURN_IN: usize = 60;

impl<E: GroupElement> ProductReplacement<E> {
    /// `gens` must be nonempty.
    pub fn new(gens: &[E], seed: u64) -> Self {
        assert!(!gens.is_empty(), "product replacement needs a generator");
        let mut state: Vec<E> = gens.iter().cycle().take(SLOTS.max(gens.len())).cloned().collect();
        if state.len() < 2 {
            state.push(gens[0].clone());
        }
        let acc = gens[0].one_like();
        let mut pr = ProductReplacement { state, acc, rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..BURN_IN {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> E {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) { self.state[j].clone() } else { self.state[j].inv() };
        self.state[i] = if self.rng.gen_bool(0.5) { self.state[i].mul(&other) } else { other.mul(&self.state[i]) };
        self.acc = self.acc.mul(&self.state[i]);
        self.acc.clone()
    }
}
