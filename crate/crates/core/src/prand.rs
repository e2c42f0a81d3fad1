//! Product-replacement random elements.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::Result;
use crate::group::{GroupElement, GroupSpec};

const MIN_SLOTS: usize = 10;
const BURN_IN: usize = 100;

/// Product replacement with an accumulator ("rattle").
#[derive(Debug, Clone)]
pub struct ProductReplacement {
    slots: Vec<GroupElement>,
    acc: GroupElement,
}

impl ProductReplacement {
    pub fn new<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> Result<Self> {
        let gens = spec.generators();
        let len = MIN_SLOTS.max(gens.len() + 1);
        let slots = (0..len).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacement {
            slots,
            acc: spec.identity(),
        };
        for _ in 0..BURN_IN {
            pr.step(spec, rng);
        }
        Ok(pr)
    }

    fn step<R: Rng + ?Sized>(&mut self, spec: &GroupSpec, rng: &mut R) {
        let len = self.slots.len();
        let i = rng.gen_range(0..len);
        let mut j = rng.gen_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.gen() {
            spec.inv(&self.slots[j])
        } else {
            self.slots[j].clone()
        };
        self.slots[i] = if rng.gen() {
            spec.mul(&self.slots[i], &other)
        } else {
            spec.mul(&other, &self.slots[i])
        };
        self.acc = spec.mul(&self.acc, &self.slots[i]);
    }

    /// The next pseudo-random element.
    pub fn next<R: Rng + ?Sized>(&mut self, spec: &GroupSpec, rng: &mut R) -> GroupElement {
        self.step(spec, rng);
        self.acc.clone()
    }
}
