//! Simulation of k independent truly-random hash functions over a finite
//! universe with deterministic seeded replay.
//!
//! A truly random function cannot be stored, so each item's k-tuple of
//! positions is generated on first query from a ChaCha stream keyed on
//! (family seed, item) and memoized. The memo guarantees function semantics:
//! repeated queries always return the same tuple, in any query order.

use std::cell::RefCell;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub struct HashFamily {
    k: usize,
    n: usize,
    seed: u64,
    memo: RefCell<HashMap<u64, Box<[u32]>>>,
}

impl HashFamily {
    pub fn new(k: usize, n: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain("hash family needs at least 2 functions"));
        }
        if n < 1 {
            return Err(Error::Domain("table size must be at least 1"));
        }
        if n > u32::MAX as usize {
            return Err(Error::Domain("table size exceeds u32 range"));
        }
        Ok(HashFamily {
            k,
            n,
            seed,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn item_key(seed: u64, item: u64) -> [u8; 32] {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&item.to_le_bytes());
        key[16..24].copy_from_slice(b"cuckoo-h");
        key
    }

    fn materialize(&self, item: u64) {
        if self.memo.borrow().contains_key(&item) {
            return;
        }
        let mut rng = ChaCha8Rng::from_seed(Self::item_key(self.seed, item));
        let tuple: Box<[u32]> = (0..self.k)
            .map(|_| rng.gen_range(0..self.n as u32))
            .collect();
        self.memo.borrow_mut().insert(item, tuple);
    }

    /// The ordered k-tuple `(h_1(item), ..., h_k(item))`. Repeats within a
    /// tuple are permitted; position `i` is the value of the `i`th function.
    pub fn positions(&self, item: u64) -> Vec<u32> {
        self.materialize(item);
        self.memo.borrow()[&item].to_vec()
    }

    /// Single coordinate `h_{i+1}(item)` without cloning the whole tuple.
    pub fn position(&self, item: u64, i: usize) -> u32 {
        debug_assert!(i < self.k);
        self.materialize(item);
        self.memo.borrow()[&item][i]
    }
}
