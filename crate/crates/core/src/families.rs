//! Named groups and graph families.
//!
//! The Praeger–Xu group `Z_p^r : D_2r` is carried faithfully on the points
//! `(i, j) ∈ Z_r × Z_p`, numbered `i·p + j`: `a_i` adds 1 mod p on fiber
//! `i`, `x` shifts fibers `i ↦ i+1 mod r`, and `y` maps `(i, j) ↦ (r−1−i, j)`.

use serde::{Deserialize, Serialize};

use crate::cosetgraph::CosetGraph;
use crate::error::{ensure_consistent, Error, Result};
use crate::graph::{cycle_graph, lexicographic_blowup, Graph};
use crate::group::PermutationGroup;
use crate::limits;
use crate::perm::Permutation;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PxParameters {
    pub p: u64,
    pub r: usize,
    pub s: usize,
}

impl PxParameters {
    pub fn new(p: u64, r: usize, s: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::precondition(format!("p = {p} is not prime")));
        }
        if r < 3 {
            return Err(Error::precondition(format!("r = {r} must be at least 3")));
        }
        if s < 1 || s >= r {
            return Err(Error::precondition(format!("s = {s} must satisfy 1 ≤ s < r = {r}")));
        }
        Ok(PxParameters { p, r, s })
    }
}

/// `G = M:T` with its named generators.
#[derive(Clone, Debug)]
pub struct PxGroup {
    pub p: u64,
    pub r: usize,
    pub group: PermutationGroup,
    /// `a_0 … a_{r−1}`, generating `M ≅ Z_p^r`.
    pub a: Vec<Permutation>,
    pub x: Permutation,
    pub y: Permutation,
}

impl PxGroup {
    pub fn degree(&self) -> usize {
        self.r * self.p as usize
    }

    /// The normal subgroup `M = ⟨a_0, …, a_{r−1}⟩`.
    pub fn translations(&self) -> PermutationGroup {
        PermutationGroup::new(self.degree(), self.a.clone()).expect("valid")
    }

    /// The dihedral complement `⟨x, y⟩ ≅ D_2r`.
    pub fn dihedral_part(&self) -> PermutationGroup {
        PermutationGroup::new(self.degree(), vec![self.x.clone(), self.y.clone()]).expect("valid")
    }

    fn a_range(&self, lo: usize, hi: usize) -> Vec<Permutation> {
        (lo..hi).map(|i| self.a[i].clone()).collect()
    }

    /// `H_s`: for even `s`, `⟨a_i | s/2 ≤ i < r − s/2⟩ : ⟨y⟩`; for odd `s`,
    /// `⟨a_i | (s−1)/2 ≤ i < r − (s+1)/2⟩ : ⟨xy⟩`.
    pub fn subgroup_h(&self, s: usize) -> Result<PermutationGroup> {
        PxParameters::new(self.p, self.r, s)?;
        let r = self.r;
        let mut gens = if s.is_multiple_of(2) {
            self.a_range(s / 2, r - s / 2)
        } else {
            self.a_range((s - 1) / 2, r - s.div_ceil(2))
        };
        gens.push(if s.is_multiple_of(2) {
            self.y.clone()
        } else {
            self.x.compose(&self.y)
        });
        let h = PermutationGroup::new(self.degree(), gens)?;
        let expected = 2 * self.p.pow((r - s) as u32);
        ensure_consistent!(h.order() == expected, "|H_{s}| = {} but expected {expected}", h.order());
        Ok(h)
    }

    /// `g_s = xy` for even `s`, `y` for odd `s`.
    pub fn flip(&self, s: usize) -> Result<Permutation> {
        PxParameters::new(self.p, self.r, s)?;
        Ok(if s.is_multiple_of(2) {
            self.x.compose(&self.y)
        } else {
            self.y.clone()
        })
    }

    /// `T = (⟨a_0 a_{r−1}⟩ × ⟨a_1, …, a_{r−2}⟩) : ⟨y⟩`, of order `2p^{r−1}`,
    /// containing `H_2`.
    pub fn cover_witness_subgroup(&self) -> Result<PermutationGroup> {
        let r = self.r;
        let mut gens = vec![self.a[0].compose(&self.a[r - 1])];
        gens.extend(self.a_range(1, r - 1));
        gens.push(self.y.clone());
        let t = PermutationGroup::new(self.degree(), gens)?;
        let expected = 2 * self.p.pow((r - 1) as u32);
        ensure_consistent!(t.order() == expected, "|T| = {} but expected {expected}", t.order());
        Ok(t)
    }

    /// Checks the defining relations: the `a_i` commute and have order `p`,
    /// `a_i^x = a_{i+1}`, `a_i^y = a_{r−1−i}`, `x^y = x⁻¹`, `x^r = y² = 1`.
    pub fn check_relations(&self) -> bool {
        let r = self.r;
        let p = self.p;
        let ok_a = self.a.iter().enumerate().all(|(i, ai)| {
            ai.order() == p
                && ai.conjugate_by(&self.x) == self.a[(i + 1) % r]
                && ai.conjugate_by(&self.y) == self.a[r - 1 - i]
                && self.a.iter().all(|aj| ai.compose(aj) == aj.compose(ai))
        });
        ok_a && self.x.conjugate_by(&self.y) == self.x.inverse()
            && self.x.order() == r as u64
            && self.y.order() == 2
    }
}

pub fn px_group(p: u64, r: usize) -> Result<PxGroup> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("p = {p} is not prime")));
    }
    if r < 3 {
        return Err(Error::precondition(format!("r = {r} must be at least 3")));
    }
    let order = p
        .checked_pow(r as u32)
        .and_then(|m| m.checked_mul(2 * r as u64))
        .unwrap_or(u64::MAX);
    let cap = limits::max_elements();
    if order > cap {
        return Err(Error::Capacity {
            what: format!("px_group({p},{r}) of order {order}"),
            cap,
        });
    }
    let pu = p as usize;
    let n = r * pu;
    let pt = |i: usize, j: usize| i * pu + j;
    let a = (0..r)
        .map(|i| {
            let mut img: Vec<usize> = (0..n).collect();
            for j in 0..pu {
                img[pt(i, j)] = pt(i, (j + 1) % pu);
            }
            Permutation::from_images(img)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ximg = vec![0; n];
    let mut yimg = vec![0; n];
    for i in 0..r {
        for j in 0..pu {
            ximg[pt(i, j)] = pt((i + 1) % r, j);
            yimg[pt(i, j)] = pt(r - 1 - i, j);
        }
    }
    let x = Permutation::from_images(ximg)?;
    let y = Permutation::from_images(yimg)?;
    let mut gens = a.clone();
    gens.push(x.clone());
    gens.push(y.clone());
    let group = PermutationGroup::new(n, gens)?;
    let pxg = PxGroup { p, r, group, a, x, y };
    ensure_consistent!(pxg.check_relations(), "px_group({p},{r}) relations fail");
    ensure_consistent!(
        pxg.group.order() == order,
        "px_group({p},{r}) has order {} but p^r·2r = {order}",
        pxg.group.order()
    );
    Ok(pxg)
}

pub fn px_subgroup_hs(pxg: &PxGroup, s: usize) -> Result<PermutationGroup> {
    pxg.subgroup_h(s)
}

pub fn px_flip_gs(pxg: &PxGroup, s: usize) -> Result<Permutation> {
    pxg.flip(s)
}

pub fn px_cover_witness_subgroup(pxg: &PxGroup) -> Result<PermutationGroup> {
    pxg.cover_witness_subgroup()
}

/// `C(p, r, s) = Cos(G, H_s, H_s g_s H_s)`, checked for order `r·p^s`,
/// valency `2p`, connectivity, and `M ∩ H_s ≠ 1`.
pub fn px_graph(p: u64, r: usize, s: usize) -> Result<CosetGraph> {
    PxParameters::new(p, r, s)?;
    let pxg = px_group(p, r)?;
    px_graph_in(&pxg, s)
}

pub fn px_graph_in(pxg: &PxGroup, s: usize) -> Result<CosetGraph> {
    let (p, r) = (pxg.p, pxg.r);
    let h = pxg.subgroup_h(s)?;
    let cg = CosetGraph::new(&pxg.group, &h, &pxg.flip(s)?)?;
    let n = r as u64 * p.pow(s as u32);
    ensure_consistent!(cg.vertex_count() as u64 == n, "C({p},{r},{s}) has {} vertices, expected {n}", cg.vertex_count());
    ensure_consistent!(cg.valency()? as u64 == 2 * p, "C({p},{r},{s}) valency is not 2p");
    ensure_consistent!(cg.is_connected()?, "C({p},{r},{s}) is disconnected");
    ensure_consistent!(
        pxg.translations().intersect(&h)?.order() > 1,
        "M is semiregular on C({p},{r},{s})"
    );
    Ok(cg)
}

/// `W(r, p) = C_r[K̄_p]`.
pub fn wreath_graph(r: usize, p: usize) -> Result<Graph> {
    if r < 3 || p == 0 {
        return Err(Error::precondition("wreath graph needs r ≥ 3 and p ≥ 1"));
    }
    Ok(lexicographic_blowup(&cycle_graph(r), p)?.0)
}

fn cycles_perm(n: usize, cycles: &[Vec<usize>]) -> Permutation {
    Permutation::from_cycles(n, cycles).expect("valid cycles")
}

pub fn symmetric(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::precondition("symmetric(0)"));
    }
    if n == 1 {
        return Ok(PermutationGroup::trivial(1));
    }
    PermutationGroup::new(n, vec![cycles_perm(n, &[vec![0, 1]]), cycles_perm(n, &[(0..n).collect()])])
}

pub fn alternating(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::precondition("alternating(0)"));
    }
    if n < 3 {
        return Ok(PermutationGroup::trivial(n));
    }
    PermutationGroup::new(n, (2..n).map(|i| cycles_perm(n, &[vec![0, 1, i]])).collect())
}

/// Dihedral group of the given order `2n` on `n` points: rotation `i ↦ i+1`
/// and reflection `i ↦ −i`.
pub fn dihedral(order: usize) -> Result<PermutationGroup> {
    let (a, b) = dihedral_generators(order)?;
    PermutationGroup::new(order / 2, vec![a, b])
}

/// The rotation `a` (order `n`) and reflection `b` with `a^b = a⁻¹`.
pub fn dihedral_generators(order: usize) -> Result<(Permutation, Permutation)> {
    if !order.is_multiple_of(2) || order < 6 {
        return Err(Error::precondition(format!("dihedral order {order} must be even and ≥ 6")));
    }
    let n = order / 2;
    let a = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let b = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Ok((a, b))
}

pub fn cyclic(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::precondition("cyclic(0)"));
    }
    PermutationGroup::new(n, vec![cycles_perm(n, &[(0..n).collect()])])
}

/// `PSL(2, p)` on the projective line `{0, …, p−1, ∞ = p}` generated by
/// `t ↦ t+1` and `t ↦ −1/t`.
pub fn psl2(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) || p < 3 {
        return Err(Error::precondition(format!("psl2 needs an odd prime, got {p}")));
    }
    let pu = p as usize;
    let inf = pu;
    let shift: Vec<usize> = (0..pu).map(|t| (t + 1) % pu).chain([inf]).collect();
    let inv = |t: usize| -> usize {
        // t^(p−2) mod p
        let mut acc = 1u64;
        let mut base = t as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as usize
    };
    let neg_inv: Vec<usize> = (0..=pu)
        .map(|t| {
            if t == inf {
                0
            } else if t == 0 {
                inf
            } else {
                (pu - inv(t)) % pu
            }
        })
        .collect();
    let g = PermutationGroup::new(
        pu + 1,
        vec![Permutation::from_images(shift)?, Permutation::from_images(neg_inv)?],
    )?;
    let expected = p * (p * p - 1) / 2;
    ensure_consistent!(g.order() == expected, "|PSL(2,{p})| = {} but expected {expected}", g.order());
    Ok(g)
}
