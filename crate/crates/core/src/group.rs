//! Permutation groups given by generators.
//!
//! Order and membership go through a stabilizer chain built on first use.
//! Element enumeration is a separate breadth-first path, capped by
//! [`crate::limits::max_elements`], and feeds intersections, cores and
//! coset keys.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::limits;
use crate::perm::Permutation;
use crate::schreier::StabChain;

#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Arc<StabChain>>,
    elements: OnceLock<Arc<Vec<Permutation>>>,
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermutationGroup {
    /// An empty generator list yields the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Domain(format!(
                "generator {bad} has degree {} but the group has degree {degree}",
                bad.degree()
            )));
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, Vec::new()).expect("positive degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| Arc::new(StabChain::new(self.degree, &self.generators)))
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn order(&self) -> u64 {
        self.chain().order() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// Exact membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::Domain(format!(
                "permutation of degree {} tested against group of degree {}",
                p.degree(),
                self.degree
            )));
        }
        Ok(self.chain().contains(p))
    }

    pub(crate) fn has(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &PermutationGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Group generated by these generators plus `extra`.
    pub fn with_generators(&self, extra: &[Permutation]) -> Result<PermutationGroup> {
        let mut gens: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        gens.extend(extra.iter().cloned());
        PermutationGroup::new(self.degree, gens)
    }

    /// Smallest set containing `point` closed under every generator.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::Domain(format!(
                "point {point} out of range for degree {}",
                self.degree
            )));
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let a = orbit[head];
            head += 1;
            for g in &self.generators {
                let b = g.image(a);
                if !seen[b] {
                    seen[b] = true;
                    orbit.push(b);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orb = self.orbit(p).expect("in range");
                for &q in &orb {
                    seen[q] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// All elements, breadth-first by generator word length with each layer
    /// sorted lexicographically by image sequence. Cached on first success.
    pub fn elements(&self) -> Result<Arc<Vec<Permutation>>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        let list = Arc::new(self.enumerate_elements_capped(limits::max_elements())?);
        Ok(self.elements.get_or_init(|| list).clone())
    }

    pub fn enumerate_elements(&self) -> Result<Vec<Permutation>> {
        Ok(self.elements()?.as_ref().clone())
    }

    pub fn enumerate_elements_capped(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::Capacity {
                what: format!("group order {order}"),
                cap,
            });
        }
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::with_capacity(order as usize);
        seen.insert(id.clone());
        let mut out = vec![id.clone()];
        let mut layer = vec![id];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for e in &layer {
                for s in &self.generators {
                    let f = e.compose(s);
                    if !seen.contains(&f) {
                        seen.insert(f.clone());
                        next.push(f);
                    }
                }
            }
            next.sort_unstable();
            out.extend(next.iter().cloned());
            layer = next;
        }
        if out.len() as u64 != order {
            return Err(Error::consistency(format!(
                "stabilizer chain order {order} but closure found {} elements",
                out.len()
            )));
        }
        Ok(out)
    }

    /// Builds a group from a set known to be closed under multiplication,
    /// choosing generators greedily in the given order.
    pub(crate) fn from_closed_set(degree: usize, elements: &[Permutation]) -> Result<Self> {
        let mut group = PermutationGroup::trivial(degree);
        let mut gens = Vec::new();
        for e in elements {
            if !group.has(e) {
                gens.push(e.clone());
                group = PermutationGroup::new(degree, gens.clone())?;
            }
        }
        if group.order() != elements.len() as u64 {
            return Err(Error::consistency(format!(
                "set of {} elements is not a subgroup (generates order {})",
                elements.len(),
                group.order()
            )));
        }
        Ok(group)
    }

    /// `{x : x ∈ self and x ∈ other}`, by filtering the smaller group's
    /// elements through the other's membership test.
    pub fn intersect(&self, other: &PermutationGroup) -> Result<PermutationGroup> {
        if self.degree != other.degree {
            return Err(Error::Domain("intersection of groups of different degree".into()));
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_subgroup_of(large) {
            return Ok(small.clone());
        }
        let elems = small.elements()?;
        let common: Vec<Permutation> = elems.iter().filter(|e| large.has(e)).cloned().collect();
        PermutationGroup::from_closed_set(self.degree, &common)
    }

    /// `self^g = g⁻¹ self g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<PermutationGroup> {
        if g.degree() != self.degree {
            return Err(Error::Domain("conjugating element has wrong degree".into()));
        }
        let gens = self.generators.iter().map(|s| s.conjugate_by(g)).collect();
        PermutationGroup::new(self.degree, gens)
    }

    /// Minimal block containing `0` and `i` for every `i`: primitive iff each
    /// is the whole domain. Requires a transitive group.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::Domain(
                "primitivity test needs a transitive group".into(),
            ));
        }
        let n = self.degree;
        for i in 1..n {
            if minimal_block(&self.generators, n, 0, i).len() < n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest block of imprimitivity containing both `a` and `b`.
    pub fn minimal_block(&self, a: usize, b: usize) -> Vec<usize> {
        minimal_block(&self.generators, self.degree, a, b)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn minimal_block(gens: &[Permutation], n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    if ra != rb {
        parent[rb] = ra;
        queue.push_back((a, b));
    }
    while let Some((x, y)) = queue.pop_front() {
        for g in gens {
            let (gx, gy) = (g.image(x), g.image(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[ry] = rx;
                queue.push_back((gx, gy));
            }
        }
    }
    let root = find(&mut parent, a);
    (0..n).filter(|&v| find(&mut parent, v) == root).collect()
}

/// Largest normal subgroup of `g` inside `h`: the intersection of the
/// conjugates `h^t` over a right transversal of `h` in `g`.
pub fn core(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::precondition("core: h is not a subgroup of g"));
    }
    let mut acc = h.clone();
    for t in right_transversal(g, h)? {
        if acc.order() == 1 {
            break;
        }
        acc = acc.intersect(&h.conjugate(&t)?)?;
    }
    Ok(acc)
}

/// One representative per right coset `hx` of `h` in `g`, first reached in
/// breadth-first order over the generators of `g`.
pub fn right_transversal(g: &PermutationGroup, h: &PermutationGroup) -> Result<Vec<Permutation>> {
    let space = crate::cosets::CosetSpace::new(g, h, &[])?;
    Ok(space.representatives().to_vec())
}

/// The right cosets `h·g·h'` (`h'` ranging over `h`), keyed canonically.
/// Its size is `|h : h ∩ h^g|`.
pub fn double_coset_cosets(
    h: &PermutationGroup,
    g: &Permutation,
    within: &PermutationGroup,
) -> Result<Vec<crate::cosets::CosetKey>> {
    if !h.is_subgroup_of(within) || !within.contains(g)? {
        return Err(Error::precondition(
            "double_coset_cosets: need h ≤ within and g ∈ within",
        ));
    }
    let helems = h.elements()?;
    let key = |x: &Permutation| crate::cosets::CosetKey::of(&helems, x);
    let start = key(g);
    let mut seen: HashMap<crate::cosets::CosetKey, Permutation> = HashMap::new();
    seen.insert(start.clone(), g.clone());
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let rep = seen[&order[head]].clone();
        head += 1;
        for s in h.generators() {
            let y = rep.compose(s);
            let k = key(&y);
            if !seen.contains_key(&k) {
                seen.insert(k.clone(), y);
                order.push(k);
            }
        }
    }
    order.sort();
    Ok(order)
}

/// A homomorphic image of `source`, given by the images of its generators.
#[derive(Clone, Debug)]
pub struct GroupActionImage {
    pub source: PermutationGroup,
    pub domain_size: usize,
    pub images: Vec<Permutation>,
}

impl GroupActionImage {
    pub fn new(source: PermutationGroup, domain_size: usize, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Domain("one image per source generator required".into()));
        }
        if images.iter().any(|p| p.degree() != domain_size) {
            return Err(Error::Domain("image degree differs from domain size".into()));
        }
        Ok(GroupActionImage {
            source,
            domain_size,
            images,
        })
    }

    pub fn image_group(&self) -> PermutationGroup {
        PermutationGroup::new(self.domain_size, self.images.clone()).expect("valid images")
    }

    /// Pairs `(element, image)` by simultaneous breadth-first closure.
    fn paired_closure(&self) -> Result<Vec<(Permutation, Permutation)>> {
        let order = self.source.order();
        let cap = limits::max_elements();
        if order > cap {
            return Err(Error::Capacity {
                what: format!("group order {order}"),
                cap,
            });
        }
        let id = Permutation::identity(self.source.degree());
        let idim = Permutation::identity(self.domain_size);
        let mut seen: HashMap<Permutation, Permutation> = HashMap::new();
        seen.insert(id.clone(), idim.clone());
        let mut out = vec![(id, idim)];
        let mut head = 0;
        while head < out.len() {
            let (e, im) = out[head].clone();
            head += 1;
            for (s, t) in self.source.generators().iter().zip(&self.images) {
                let f = e.compose(s);
                let fim = im.compose(t);
                match seen.get(&f) {
                    Some(prev) => {
                        if *prev != fim {
                            return Err(Error::consistency(format!(
                                "action is not a homomorphism: {f} has images {prev} and {fim}"
                            )));
                        }
                    }
                    None => {
                        seen.insert(f.clone(), fim.clone());
                        out.push((f, fim));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks `img(a·b) = img(a)·img(b)` on all generator pairs.
    pub fn spot_check(&self) -> Result<bool> {
        let pairs = self.paired_closure()?;
        let map: HashMap<_, _> = pairs.into_iter().collect();
        for (a, ia) in self.source.generators().iter().zip(&self.images) {
            for (b, ib) in self.source.generators().iter().zip(&self.images) {
                if map[&a.compose(b)] != ia.compose(ib) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Elements of the source acting trivially.
    pub fn kernel(&self) -> Result<PermutationGroup> {
        let pairs = self.paired_closure()?;
        let mut kernel: Vec<Permutation> = pairs
            .into_iter()
            .filter(|(_, im)| im.is_identity())
            .map(|(e, _)| e)
            .collect();
        kernel.sort_unstable();
        PermutationGroup::from_closed_set(self.source.degree(), &kernel)
    }

    /// Image of an arbitrary source element.
    pub fn image_of(&self, p: &Permutation) -> Result<Permutation> {
        self.paired_closure()?
            .into_iter()
            .find(|(e, _)| e == p)
            .map(|(_, im)| im)
            .ok_or_else(|| Error::Domain(format!("{p} is not in the source group")))
    }
}
