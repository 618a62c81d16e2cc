//! Brute-force subgroup lattice of a small group.
//!
//! Elements are indexed once, products come from a Cayley table, and each
//! subgroup is a bitset over the element indices. Starting from the closure
//! of the seed, every subgroup is extended by one element at a time; every
//! subgroup containing the seed is reached this way.

use std::collections::{HashMap, HashSet};

use crate::error::{ensure_consistent, Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Largest group whose lattice will be enumerated.
pub const MAX_LATTICE_GROUP: usize = 1024;
/// Largest number of subgroups returned.
pub const MAX_SUBGROUPS: usize = 50_000;

struct Table {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    identity: usize,
}

impl Table {
    fn new(h: &PermutationGroup) -> Result<Self> {
        let elements = h.enumerate_elements_capped(MAX_LATTICE_GROUP as u64)?;
        let n = elements.len();
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)] as u32;
            }
        }
        let identity = elements.iter().position(|e| e.is_identity()).expect("identity present");
        Ok(Table { elements, index, mul, identity })
    }

    fn n(&self) -> usize {
        self.elements.len()
    }

    fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Closure of `gens` as a bitset plus its element list.
    fn closure(&self, gens: &[usize]) -> Vec<u64> {
        let n = self.n();
        let mut bits = vec![0u64; n.div_ceil(64)];
        let mut list = vec![self.identity];
        bits[self.identity / 64] |= 1 << (self.identity % 64);
        let mut head = 0;
        while head < list.len() {
            let a = list[head];
            head += 1;
            for &s in gens {
                let c = self.mul[a * n + s] as usize;
                if bits[c / 64] & (1 << (c % 64)) == 0 {
                    bits[c / 64] |= 1 << (c % 64);
                    list.push(c);
                }
            }
        }
        bits
    }
}

fn members(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
    })
}

fn has(bits: &[u64], i: usize) -> bool {
    bits[i / 64] & (1 << (i % 64)) != 0
}

/// All subgroups of `h` containing every element of `seed`, ordered by
/// order and then by element set.
pub fn subgroups_containing(h: &PermutationGroup, seed: &[Permutation]) -> Result<Vec<PermutationGroup>> {
    let table = Table::new(h)?;
    let mut seed_idx = Vec::new();
    for s in seed {
        match table.index_of(s) {
            Some(i) => seed_idx.push(i),
            None => return Err(Error::precondition(format!("seed element {s} is not in the group"))),
        }
    }
    let start = table.closure(&seed_idx);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
    let mut found: Vec<(Vec<u64>, Vec<usize>)> = vec![(start, seed_idx)];
    let mut head = 0;
    while head < found.len() {
        let (bits, gens) = found[head].clone();
        head += 1;
        for e in 0..table.n() {
            if has(&bits, e) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(e);
            let next = table.closure(&g2);
            if seen.insert(next.clone()) {
                if found.len() >= MAX_SUBGROUPS {
                    return Err(Error::Capacity {
                        what: format!("subgroup lattice of a group of order {}", table.n()),
                        cap: MAX_SUBGROUPS as u64,
                    });
                }
                found.push((next, g2));
            }
        }
    }
    let mut keyed: Vec<(usize, Vec<usize>, Vec<usize>)> = found
        .into_iter()
        .map(|(bits, gens)| {
            let m: Vec<usize> = members(&bits).collect();
            (m.len(), m, gens)
        })
        .collect();
    keyed.sort();
    keyed
        .into_iter()
        .map(|(size, _, gens)| {
            let g = PermutationGroup::new(
                h.degree(),
                gens.iter().map(|&i| table.elements[i].clone()).collect(),
            )?;
            ensure_consistent!(g.order() == size as u64, "subgroup closure size mismatch");
            Ok(g)
        })
        .collect()
}

/// All subgroups of `h`.
pub fn all_subgroups(h: &PermutationGroup) -> Result<Vec<PermutationGroup>> {
    subgroups_containing(h, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic, dihedral, symmetric};

    #[test]
    fn lattice_sizes() {
        // S3: 1, three of order 2, A3, S3.
        assert_eq!(all_subgroups(&symmetric(3).unwrap()).unwrap().len(), 6);
        // S4 has 30 subgroups, D8 has 10, Z12 has 6.
        assert_eq!(all_subgroups(&symmetric(4).unwrap()).unwrap().len(), 30);
        assert_eq!(all_subgroups(&dihedral(8).unwrap()).unwrap().len(), 10);
        assert_eq!(all_subgroups(&cyclic(12).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn seeded_and_ordered() {
        let s4 = symmetric(4).unwrap();
        let t = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        let subs = subgroups_containing(&s4, std::slice::from_ref(&t)).unwrap();
        assert!(subs.iter().all(|g| g.contains(&t).unwrap()));
        assert!(subs.windows(2).all(|w| w[0].order() <= w[1].order()));
        assert_eq!(subs.first().unwrap().order(), 2);
        assert_eq!(subs.last().unwrap().order(), 24);
        // <(0 1)>, <(0 1),(2 3)>, two point stabilizers, one D8, S4.
        assert_eq!(subs.len(), 6);
        let mut orders: Vec<u64> = subs.iter().map(|g| g.order()).collect();
        orders.dedup();
        assert_eq!(orders, vec![2, 4, 6, 8, 24]);
    }

    #[test]
    fn foreign_seed_rejected() {
        let c = cyclic(4).unwrap();
        let t = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        assert!(matches!(subgroups_containing(&c, &[t]), Err(Error::Precondition(_))));
    }
}
