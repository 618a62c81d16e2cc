//! Right coset spaces `[G:H]`.
//!
//! A coset `Hx` is keyed by its lexicographically least element, so two
//! elements `x, y` land on the same key iff `x·y⁻¹ ∈ H`. Representatives
//! are the first elements reached breadth-first from the seeds over the
//! generators of `G`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits;
use crate::perm::Permutation;
use crate::group::PermutationGroup;

/// Canonical label of a right coset: its least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey(pub Permutation);

impl CosetKey {
    /// Key of `Hx`, given the elements of `H`.
    pub fn of(subgroup_elements: &[Permutation], x: &Permutation) -> CosetKey {
        let mut best = x.clone();
        for h in subgroup_elements {
            if Permutation::cmp_product(h, x, &best).is_lt() {
                best = h.compose(x);
            }
        }
        CosetKey(best)
    }
}

#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: PermutationGroup,
    subgroup_elements: Arc<Vec<Permutation>>,
    reps: Vec<Permutation>,
    index: HashMap<CosetKey, usize>,
    /// `gen_action[j][v]` is the coset `rep(v)·s_j` for generator `s_j` of `G`.
    gen_action: Vec<Vec<u32>>,
}

impl CosetSpace {
    /// Enumerates `[G:H]` breadth-first. `seeds` (after the identity) get
    /// the next indices in order, so a flip `g ∉ H` passed as the only seed
    /// becomes coset 1.
    pub fn new(group: &PermutationGroup, subgroup: &PermutationGroup, seeds: &[Permutation]) -> Result<Self> {
        Self::with_cap(group, subgroup, seeds, limits::max_vertices())
    }

    pub fn with_cap(
        group: &PermutationGroup,
        subgroup: &PermutationGroup,
        seeds: &[Permutation],
        cap: u64,
    ) -> Result<Self> {
        if !subgroup.is_subgroup_of(group) {
            return Err(Error::precondition("coset space: subgroup not contained in group"));
        }
        let index_size = group.order() / subgroup.order();
        if index_size > cap {
            return Err(Error::Capacity {
                what: format!("coset count {index_size}"),
                cap,
            });
        }
        let subgroup_elements = subgroup.elements()?;
        let mut space = CosetSpace {
            subgroup: subgroup.clone(),
            subgroup_elements,
            reps: Vec::with_capacity(index_size as usize),
            index: HashMap::with_capacity(index_size as usize),
            gen_action: vec![Vec::with_capacity(index_size as usize); group.generators().len()],
        };
        let id = Permutation::identity(group.degree());
        space.insert(id);
        for s in seeds {
            space.insert(s.clone());
        }
        let mut head = 0;
        while head < space.reps.len() {
            let x = space.reps[head].clone();
            for (j, s) in group.generators().iter().enumerate() {
                let v = space.insert(x.compose(s));
                space.gen_action[j].push(v as u32);
            }
            head += 1;
        }
        if space.reps.len() as u64 != index_size {
            return Err(Error::consistency(format!(
                "coset enumeration found {} cosets, Lagrange predicts {index_size}",
                space.reps.len()
            )));
        }
        Ok(space)
    }

    fn insert(&mut self, x: Permutation) -> usize {
        let key = self.key(&x);
        if let Some(&v) = self.index.get(&key) {
            return v;
        }
        let v = self.reps.len();
        self.index.insert(key, v);
        self.reps.push(x);
        v
    }

    pub fn key(&self, x: &Permutation) -> CosetKey {
        CosetKey::of(&self.subgroup_elements, x)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn subgroup(&self) -> &PermutationGroup {
        &self.subgroup
    }

    pub fn subgroup_elements(&self) -> &[Permutation] {
        &self.subgroup_elements
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn rep(&self, v: usize) -> &Permutation {
        &self.reps[v]
    }

    /// Index of the coset `Hx`.
    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(&self.key(x)).copied()
    }

    /// Index of `H·rep(v)·w`.
    pub fn act(&self, v: usize, w: &Permutation) -> usize {
        self.index_of(&self.reps[v].compose(w))
            .expect("coset space is closed under the group")
    }

    /// The permutation of coset indices induced by the `j`-th group generator.
    pub fn generator_action(&self, j: usize) -> Permutation {
        Permutation::from_images_unchecked(self.gen_action[j].clone())
    }

    /// The permutation of coset indices induced by `w`.
    pub fn action_of(&self, w: &Permutation) -> Permutation {
        Permutation::from_images_unchecked((0..self.len()).map(|v| self.act(v, w) as u32).collect())
    }

    /// Orbit of coset `v` under the subgroup generated by `gens`.
    pub fn orbit(&self, v: usize, gens: &[Permutation]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[v] = true;
        let mut out = vec![v];
        let mut head = 0;
        while head < out.len() {
            let u = out[head];
            head += 1;
            for s in gens {
                let w = self.act(u, s);
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out
    }

    /// Same-coset test by membership of `x·y⁻¹` in `H`.
    pub fn same_coset(&self, x: &Permutation, y: &Permutation) -> bool {
        self.subgroup.has(&x.compose(&y.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn keys_agree_with_membership() {
        let s4 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        let z3 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1, 2]])]).unwrap();
        let space = CosetSpace::new(&s4, &z3, &[cyc(4, &[&[0, 3]])]).unwrap();
        assert_eq!(space.len(), 8);
        assert_eq!(space.index_of(&cyc(4, &[&[0, 3]])), Some(1));
        let elems = s4.enumerate_elements().unwrap();
        for x in &elems {
            for y in &elems {
                assert_eq!(
                    space.key(x) == space.key(y),
                    space.same_coset(x, y),
                    "{x} {y}"
                );
            }
        }
    }

    #[test]
    fn vertex_cap() {
        let s4 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        let triv = PermutationGroup::trivial(4);
        assert!(matches!(
            CosetSpace::with_cap(&s4, &triv, &[], 10),
            Err(Error::Capacity { cap: 10, .. })
        ));
    }

    #[test]
    fn generator_action_is_a_permutation() {
        let s4 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        let s3 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2]])]).unwrap();
        let space = CosetSpace::new(&s4, &s3, &[]).unwrap();
        for j in 0..2 {
            let p = space.generator_action(j);
            assert!(Permutation::from_images(p.images().collect()).is_ok());
            assert_eq!(p, space.action_of(&s4.generators()[j]));
        }
    }
}
