//! The cuckoo hash table with random-walk insertion.
//!
//! Each stored item sits at the slot addressed by its active hash index. An
//! insertion walks the table: it writes the carried item into a uniformly
//! chosen candidate slot and, if that slot was occupied, carries the evicted
//! item onward, never re-choosing the hash index the evicted item was just
//! using. The walk runs until it writes into a free slot or a step cap fires;
//! a capped walk hands the carried item back to the caller and leaves every
//! other item consistently placed.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hashspace::HashFamily;
use crate::hypergraph::{Hypergraph, Orientation};

pub struct CuckooTable {
    slots: Vec<Option<u64>>,
    /// Active hash index per stored item (plus the carried item mid-walk).
    active: HashMap<u64, u8>,
    /// Stored items in insertion order; doubles as the edge order of
    /// [`CuckooTable::choice_hypergraph`].
    order: Vec<u64>,
    family: HashFamily,
    walk_rng: ChaCha8Rng,
}

/// What one call to [`CuckooTable::insert`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertionOutcome {
    /// Loop iterations executed (= slots written).
    pub steps: u64,
    pub success: bool,
    /// Evictions performed; equals `steps - 1` on success.
    pub displaced: u64,
    /// The item left holding no slot when the cap fired.
    pub unplaced: Option<u64>,
}

/// Uniform choice over `{0, ..., k-1} \ excluded`.
pub(crate) fn choose_index(rng: &mut ChaCha8Rng, k: usize, excluded: Option<u8>) -> u8 {
    match excluded {
        None => rng.gen_range(0..k as u8),
        Some(j) => {
            let r = rng.gen_range(0..k as u8 - 1);
            if r >= j {
                r + 1
            } else {
                r
            }
        }
    }
}

impl CuckooTable {
    /// The walk's randomness is seeded independently of the hash family so
    /// experiments can vary one against a fixed realization of the other.
    pub fn new(family: HashFamily, walk_seed: u64) -> Self {
        let n = family.n();
        CuckooTable {
            slots: vec![None; n],
            active: HashMap::new(),
            order: Vec::new(),
            family,
            walk_rng: ChaCha8Rng::seed_from_u64(walk_seed),
        }
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn k(&self) -> usize {
        self.family.k()
    }

    /// Number of stored items.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn load(&self) -> f64 {
        self.len() as f64 / self.n() as f64
    }

    pub fn family(&self) -> &HashFamily {
        &self.family
    }

    /// Default walk cap: `ceil(log2(n)^4)`, comfortably above the
    /// polylogarithmic bound at desk scale.
    pub fn default_step_cap(n: usize) -> u64 {
        ((n.max(2) as f64).log2().powi(4)).ceil() as u64
    }

    /// Random-walk insertion.
    ///
    /// Iteration: choose a hash index uniformly among the admissible ones
    /// (all k on the first step, k-1 afterwards, excluding the index the
    /// last evicted item was stored under), point the carried item's active
    /// index there, and write it into that slot. A free slot ends the walk;
    /// an occupied one evicts its resident, which becomes the carried item.
    pub fn insert(&mut self, item: u64, step_cap: u64) -> Result<InsertionOutcome> {
        if step_cap < 1 {
            return Err(Error::Domain("step cap must be at least 1"));
        }
        if self.active.contains_key(&item) {
            return Err(Error::DuplicateInsert(item));
        }
        let k = self.family.k();
        let mut carried = item;
        let mut excluded: Option<u8> = None;
        for step in 1..=step_cap {
            let i = choose_index(&mut self.walk_rng, k, excluded);
            self.active.insert(carried, i);
            let slot = self.family.position(carried, i as usize) as usize;
            match self.slots[slot] {
                Some(resident) => {
                    excluded = Some(self.active[&resident]);
                    self.slots[slot] = Some(carried);
                    carried = resident;
                }
                None => {
                    self.slots[slot] = Some(carried);
                    self.order.push(item);
                    return Ok(InsertionOutcome {
                        steps: step,
                        success: true,
                        displaced: step - 1,
                        unplaced: None,
                    });
                }
            }
        }
        // Cap fired: the carried item lost its slot to the walk. Hand it
        // back and forget its stale active index; everything else is placed.
        self.active.remove(&carried);
        self.order.push(item);
        self.order.retain(|&x| x != carried);
        Ok(InsertionOutcome {
            steps: step_cap,
            success: false,
            displaced: step_cap,
            unplaced: Some(carried),
        })
    }

    /// True iff `item` occupies one of its k hashed slots. Examines at most
    /// k slots.
    pub fn lookup(&self, item: u64) -> bool {
        let positions = self.family.positions(item);
        positions
            .iter()
            .any(|&p| self.slots[p as usize] == Some(item))
    }

    /// Stored items in insertion order.
    pub fn stored_items(&self) -> &[u64] {
        &self.order
    }

    /// The choice structure of the stored items as a hypergraph, edges in
    /// insertion order.
    pub fn choice_hypergraph(&self) -> Hypergraph {
        let edges = self
            .order
            .iter()
            .map(|&item| self.family.positions(item))
            .collect();
        Hypergraph::new(self.n(), self.k(), edges).expect("positions are always in range")
    }

    /// The orientation induced by the current placement: each stored item's
    /// edge maps to the slot the item occupies.
    pub fn orientation_snapshot(&self) -> Orientation {
        let h = self.choice_hypergraph();
        let assignment = self
            .order
            .iter()
            .map(|&item| self.family.position(item, self.active[&item] as usize))
            .collect();
        Orientation::new(&h, assignment).expect("slot invariant guarantees a valid orientation")
    }

    /// Verify every structural invariant; true iff all hold.
    pub fn audit(&self) -> bool {
        let occupied: Vec<(usize, u64)> = self
            .slots
            .iter()
            .enumerate()
            .filter_map(|(s, &it)| it.map(|it| (s, it)))
            .collect();
        if occupied.len() != self.order.len() || occupied.len() != self.active.len() {
            return false;
        }
        for &(slot, item) in &occupied {
            let Some(&i) = self.active.get(&item) else {
                return false;
            };
            if (i as usize) >= self.k() {
                return false;
            }
            if self.family.position(item, i as usize) as usize != slot {
                return false;
            }
        }
        let mut ordered = self.order.clone();
        ordered.sort_unstable();
        ordered.dedup();
        if ordered.len() != self.order.len() {
            return false;
        }
        self.order.iter().all(|it| self.active.contains_key(it))
    }

    #[cfg(test)]
    fn corrupt_slot_for_test(&mut self, slot: usize, item: u64) {
        self.slots[slot] = Some(item);
    }
}
